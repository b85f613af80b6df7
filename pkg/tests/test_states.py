"""State construction, norms, evaluation, and the spin-component expectation."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cdent.errors import DegenerateStateError, DomainError, PreconditionError, StructureError
from cdent.overlaps import QuadratureSpec, quadrature_overlap
from cdent.states import (
    ComponentSum,
    GaussianSum,
    GaussianTerm,
    HermiteExpansion,
    HybridState,
    combine_components,
    evaluate,
    norm,
    normalize,
    spin_expectation,
)
from conftest import random_gaussian_component, random_state


def packet(amp, center, width, d=1, **kw):
    return GaussianSum((GaussianTerm(amp, np.full(d, float(center)), width, **kw),))


class TestNorm:
    def test_single_unit_amplitude(self):
        state = HybridState((packet(1.0, 0.0, 1.0),))
        assert norm(state) == pytest.approx(1.0, abs=1e-14)

    def test_pythagorean_far_packets(self):
        state = HybridState((packet(0.6, -50.0, 1.0), packet(0.8, 50.0, 1.0)))
        assert norm(state) == pytest.approx(1.0, abs=1e-12)

    def test_coherent_doubling_of_identical_terms(self):
        # two identical terms of amplitude 0.5 add coherently to amplitude 1
        t = GaussianTerm(0.5, [0.0], 1.0)
        comp = GaussianSum((t, t))
        state = HybridState((comp,))
        assert norm(state) == pytest.approx(1.0, abs=1e-12)
        # independent check: quadrature of |phi|^2
        quad = quadrature_overlap(comp, comp, QuadratureSpec(64)).real
        assert quad == pytest.approx(1.0, abs=1e-10)

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(StructureError):
            HybridState((packet(1.0, 0.0, 1.0, d=1), packet(1.0, 0.0, 1.0, d=2)))

    def test_hermite_norm_is_coefficient_norm(self):
        comp = HermiteExpansion(1.3, [0.2, -0.1], {(0, 1): 0.6, (2, 3): 0.8j})
        assert norm(HybridState((comp,))) == pytest.approx(1.0, abs=1e-14)

    def test_closed_form_matches_quadrature_on_random_sums(self, rng):
        spec = QuadratureSpec(64)
        for _ in range(25):
            d = int(rng.integers(1, 3))
            comp = random_gaussian_component(
                rng, d, max_terms=3, width_range=(0.1, 10.0), center_scale=10.0,
                phase_scale=1.0, quad_scale=0.3,
            )
            state = HybridState((comp,))
            analytic = norm(state) ** 2
            numeric = quadrature_overlap(comp, comp, spec).real
            assert analytic == pytest.approx(numeric, abs=1e-10)


class TestNormalize:
    def test_idempotent(self):
        state = normalize(HybridState((packet(2.0, 0.0, 1.0),)))
        again = normalize(state)
        assert norm(state) == pytest.approx(1.0, abs=1e-12)
        a = state.components[0].terms[0].amplitude
        b = again.components[0].terms[0].amplitude
        assert a == pytest.approx(b, abs=1e-14)

    def test_equal_amplitudes_on_orthogonal_packets(self):
        state = normalize(HybridState((packet(1.0, -80.0, 1.0), packet(1.0, 80.0, 1.0))))
        for comp in state.components:
            assert abs(comp.terms[0].amplitude) == pytest.approx(1 / np.sqrt(2), abs=1e-12)

    def test_three_four_five(self):
        state = normalize(HybridState((packet(3.0, -80.0, 1.0), packet(4.0, 80.0, 1.0))))
        assert abs(state.components[0].terms[0].amplitude) == pytest.approx(0.6, abs=1e-12)
        assert abs(state.components[1].terms[0].amplitude) == pytest.approx(0.8, abs=1e-12)

    def test_zero_norm_rejected(self):
        with pytest.raises(DegenerateStateError):
            normalize(HybridState((packet(0.0, 0.0, 1.0),)))

    def test_random_states_normalize_to_unit(self, rng):
        for _ in range(20):
            state = random_state(rng)
            assert abs(norm(state) - 1.0) < 1e-12


class TestEvaluate:
    def test_peak_of_unit_std_packet(self):
        # width 2 means Gaussian std 1, so the normalized peak is pi^(-1/4)
        state = HybridState((packet(1.0, 0.0, 2.0),))
        assert evaluate(state, 0, [0.0]) == pytest.approx(np.pi ** -0.25, abs=1e-12)

    def test_peak_matches_quadrature_normalized_height(self):
        # oracle: rescale by the numerically integrated norm, then the peak
        # of a width-sigma packet must be (pi (sigma/2)^2)^(-1/4)
        sigma = 1.0
        comp = packet(1.0, 0.0, sigma).terms
        comp = GaussianSum(comp)
        nrm = np.sqrt(quadrature_overlap(comp, comp, QuadratureSpec(64)).real)
        peak = comp.eval_many(np.zeros((1, 1)))[0] / nrm
        assert peak.real == pytest.approx((np.pi * (sigma / 2) ** 2) ** -0.25, abs=1e-10)

    def test_even_symmetry(self):
        state = HybridState((packet(1.0, 0.0, 1.0),))
        p = 0.73
        assert evaluate(state, 0, [p]) == pytest.approx(evaluate(state, 0, [-p]), abs=1e-14)

    def test_odd_hermite_mode_vanishes_at_origin(self):
        comp = HermiteExpansion(1.0, [0.4], {(1,): 1.0})
        state = HybridState((comp,))
        assert evaluate(state, 0, [0.4]) == pytest.approx(0.0, abs=1e-14)

    def test_index_and_dimension_errors(self):
        state = HybridState((packet(1.0, 0.0, 1.0),))
        with pytest.raises(StructureError):
            evaluate(state, 1, [0.0])
        with pytest.raises(StructureError):
            evaluate(state, 0, [0.0, 0.0])

    @settings(max_examples=40, deadline=None)
    @given(scale=st.floats(-3, 3), imag=st.floats(-3, 3))
    def test_linear_in_amplitude(self, scale, imag):
        factor = complex(scale, imag)
        base = packet(0.7 - 0.2j, 0.4, 1.3, quad_phase=0.2)
        scaled = base.scaled(factor)
        p = np.array([[0.31]])
        assert scaled.eval_many(p)[0] == pytest.approx(factor * base.eval_many(p)[0], abs=1e-12)

    def test_component_sum_evaluates_linearly(self):
        g = packet(0.5, 0.0, 1.0)
        h = HermiteExpansion(1.0, [0.0], {(2,): 0.5})
        cs = ComponentSum(((0.3 + 0.1j, g), (0.7j, h)))
        p = np.array([[0.11]])
        expected = (0.3 + 0.1j) * g.eval_many(p)[0] + 0.7j * h.eval_many(p)[0]
        assert cs.eval_many(p)[0] == pytest.approx(expected, abs=1e-14)


class TestSpinExpectation:
    def test_balanced_two_level(self):
        c = 1 / np.sqrt(2)
        state = HybridState((packet(c, -60.0, 1.0), packet(c, 60.0, 1.0)))
        assert spin_expectation(state) == pytest.approx(0.0, abs=1e-12)

    def test_polarized(self):
        state = HybridState((packet(1.0, 0.0, 1.0), packet(0.0, 0.0, 1.0)))
        assert spin_expectation(state) == pytest.approx(0.5, abs=1e-12)

    def test_three_levels_symmetric(self):
        c = 1 / np.sqrt(3)
        comps = tuple(packet(c, 60.0 * (i - 1), 1.0) for i in range(3))
        assert spin_expectation(HybridState(comps)) == pytest.approx(0.0, abs=1e-12)

    def test_unnormalized_rejected(self):
        with pytest.raises(PreconditionError):
            spin_expectation(HybridState((packet(0.5, 0.0, 1.0),)))

    def test_within_spin_range(self, rng):
        for _ in range(15):
            state = random_state(rng)
            val = spin_expectation(state)
            bound = (state.n - 1) / 2 + 1e-12
            assert -bound <= val <= bound


class TestConstruction:
    def test_width_must_be_positive(self):
        with pytest.raises(DomainError):
            GaussianTerm(1.0, [0.0], 0.0)
        with pytest.raises(DomainError):
            GaussianTerm(1.0, [0.0], -1.0)

    def test_hermite_scale_must_be_positive(self):
        with pytest.raises(DomainError):
            HermiteExpansion(0.0, [0.0], {(0,): 1.0})

    def test_hermite_index_dimension_checked(self):
        with pytest.raises(StructureError):
            HermiteExpansion(1.0, [0.0, 0.0], {(1,): 1.0})
        with pytest.raises(StructureError):
            HermiteExpansion(1.0, [0.0], {(-1,): 1.0})

    def test_terms_share_dimension(self):
        with pytest.raises(StructureError):
            GaussianSum((GaussianTerm(1.0, [0.0], 1.0), GaussianTerm(1.0, [0.0, 0.0], 1.0)))

    def test_combine_components_merges_gaussians(self):
        a = packet(1.0, -1.0, 1.0)
        b = packet(1.0, 1.0, 2.0)
        merged = combine_components([0.5, 0.5j], [a, b])
        assert isinstance(merged, GaussianSum)
        assert len(merged.terms) == 2
        assert merged.terms[1].amplitude == pytest.approx(0.5j)

    def test_combine_components_merges_same_frame_hermite(self):
        a = HermiteExpansion(1.0, [0.0], {(0,): 1.0})
        b = HermiteExpansion(1.0, [0.0], {(0,): 1.0, (2,): 1.0})
        merged = combine_components([1.0, -1.0], [a, b])
        assert isinstance(merged, HermiteExpansion)
        assert merged.coefficients[(0,)] == pytest.approx(0.0)
        assert merged.coefficients[(2,)] == pytest.approx(-1.0)

    def test_combine_components_mixed_becomes_sum(self):
        a = packet(1.0, 0.0, 1.0)
        b = HermiteExpansion(1.0, [0.0], {(1,): 1.0})
        merged = combine_components([0.6, 0.8], [a, b])
        assert isinstance(merged, ComponentSum)
