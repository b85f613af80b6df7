"""Reduced density objects of a pure hybrid state.

Tracing out the continuous factor leaves the overlap matrix h acting on
C^n; tracing out the discrete factor leaves an integral operator with
kernel f(p, p') = sum_chi phi_chi(p) conj(phi_chi(p')).  Both share the
same non-zero spectrum, which carries all the entanglement content; the
Schmidt construction below makes the shared modes explicit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, StructureError, UnsupportedError
from .linalg import hermitian_eigensystem
from .overlaps import (
    DEFAULT_QUADRATURE,
    OverlapMatrix,
    QuadratureSpec,
    overlap_matrix,
)
from .states import HybridState, WaveComponent, combine_components

RANK_TOL = 1e-10


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of a reduced density matrix, sorted descending.

    Validated to lie in [-1e-10, 1+1e-10] with unit sum (within 1e-10),
    then clamped to [0, 1]."""

    eigenvalues: np.ndarray

    def __post_init__(self):
        vals = np.array(self.eigenvalues, dtype=float).reshape(-1)
        if vals.size == 0:
            raise DomainError("empty spectrum")
        if np.min(vals) < -1e-10 or np.max(vals) > 1.0 + 1e-10:
            raise DomainError(f"eigenvalues outside [0,1]: {vals}")
        if abs(np.sum(vals) - 1.0) > 1e-10:
            raise DomainError(f"eigenvalues must sum to 1, got {np.sum(vals)!r}")
        vals = np.clip(vals, 0.0, 1.0)
        vals = np.sort(vals)[::-1].copy()
        vals.setflags(write=False)
        object.__setattr__(self, "eigenvalues", vals)

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]


@dataclass(frozen=True)
class SchmidtData:
    """Schmidt form of a pure hybrid state.

    coefficients: the shared spectrum; discrete_modes: all n orthonormal
    eigenvectors of h (columns); continuous_modes: the matched continuous
    wave functions for eigenvalues above the rank tolerance.
    """

    coefficients: Spectrum
    discrete_modes: np.ndarray
    continuous_modes: tuple[WaveComponent, ...]


def reduced_spin_density(
    state: HybridState, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> OverlapMatrix:
    """Reduced density matrix of the discrete factor.  For pure states this
    is the overlap matrix itself."""
    return overlap_matrix(state, spec)


def _two_level_closed_form(m: np.ndarray) -> np.ndarray:
    # trace/2 +- sqrt(((h00-h11)/2)^2 + |h01|^2): algebraically identical to
    # 1/2 +- sqrt(1/4 - det) under the unit-trace invariant, but written as a
    # sum of non-negative terms so nothing cancels; the naive form loses half
    # the mantissa to sqrt amplification near the degenerate point
    half_tr = 0.5 * (m[0, 0].real + m[1, 1].real)
    root = np.hypot(0.5 * (m[0, 0].real - m[1, 1].real), abs(m[0, 1]))
    return np.array([half_tr + root, half_tr - root])


def spectrum(rho) -> Spectrum:
    """Eigenvalues of a reduced density matrix, descending.

    Accepts an OverlapMatrix or a raw Hermitian array.  n = 2 uses the
    closed form 1/2 +- sqrt(1/4 - det) in a cancellation-free arrangement;
    larger n uses the cyclic Jacobi eigensolver.
    """
    if not isinstance(rho, OverlapMatrix):
        rho = OverlapMatrix(rho)
    m = rho.matrix
    if rho.n == 1:
        return Spectrum(np.array([m[0, 0].real]))
    if rho.n == 2:
        return Spectrum(_two_level_closed_form(m))
    values, _ = hermitian_eigensystem(m)
    return Spectrum(values)


def kernel_eval(state: HybridState, p, p2) -> complex:
    """Kernel f(p, p') = sum_chi phi_chi(p) conj(phi_chi(p')) of the
    reduced continuous density operator."""
    pa = np.array(p, dtype=float).reshape(-1)
    pb = np.array(p2, dtype=float).reshape(-1)
    if pa.shape[0] != state.d or pb.shape[0] != state.d:
        raise StructureError(f"momentum vectors must have length {state.d}")
    total = 0.0 + 0.0j
    for comp in state.components:
        va = comp.eval_many(pa[None, :])[0]
        vb = comp.eval_many(pb[None, :])[0]
        total += va * np.conj(vb)
    return complex(total)


def schmidt_decomposition(
    state: HybridState, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> SchmidtData:
    """Diagonalize h = U Lambda U^dagger and build the continuous Schmidt
    modes psi_i = lambda_i^{-1/2} sum_chi conj(U_{chi,i}) phi_chi for every
    eigenvalue above the rank tolerance."""
    rho = overlap_matrix(state, spec)
    values, vectors = hermitian_eigensystem(rho.matrix)
    coefficients = Spectrum(values)
    modes: list[WaveComponent] = []
    for i, lam in enumerate(coefficients.eigenvalues):
        if lam <= RANK_TOL:
            continue
        weights = np.conj(vectors[:, i]) / np.sqrt(lam)
        modes.append(combine_components(weights, state.components))
    vectors = vectors.copy()
    vectors.setflags(write=False)
    return SchmidtData(coefficients, vectors, tuple(modes))


def _poly_eval(coeffs: np.ndarray, t: np.ndarray) -> np.ndarray:
    out = np.zeros_like(t)
    for c in coeffs[::-1]:
        out = out * t + c
    return out


def trace_function_check(
    state: HybridState,
    poly,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> tuple[float, float]:
    """Evaluate Tr g(rho) on both reduced sides for a polynomial g.

    ``poly`` lists real coefficients in ascending powers, constant term
    first; the constant term must be zero (on the continuous side its
    trace diverges), otherwise UnsupportedError.  Returns (lhs, rhs): lhs
    sums g over the discrete-side spectrum, rhs sums g over the Schmidt
    coefficients, i.e. the non-zero spectrum shared with the continuous
    side.
    """
    coeffs = np.array(poly, dtype=float).reshape(-1)
    if coeffs.size and coeffs[0] != 0.0:
        raise UnsupportedError(
            "constant term is not supported: its trace diverges on the continuous side"
        )
    rho = reduced_spin_density(state, spec)
    lam_s = spectrum(rho).eigenvalues
    lhs = float(np.sum(_poly_eval(coeffs, lam_s)))
    sd = schmidt_decomposition(state, spec)
    lam_shared = sd.coefficients.eigenvalues
    lam_shared = lam_shared[lam_shared > RANK_TOL]
    rhs = float(np.sum(_poly_eval(coeffs, lam_shared)))
    return lhs, rhs
