"""Hybrid discrete-continuous pure states.

A state is a vector in C^n tensor L^2(R^d), stored as n component wave
functions over d momentum dimensions.  Components belong to parametric
families with exact overlap integrals:

* ``GaussianSum`` -- a finite sum of phased Gaussian packets,
* ``HermiteExpansion`` -- a truncated expansion in orthonormal Hermite
  modes sharing one scale and origin,
* ``ComponentSum`` -- a formal linear combination of the above (produced
  internally, e.g. by Schmidt modes of mixed-representation states).

Width convention: a packet of ``width`` sigma centered at k has amplitude
proportional to exp(-2(p-k)^2 / sigma^2), so two equal-width packets whose
centers are separated by q overlap by exp(-q^2/sigma^2).  Equivalently the
underlying Gaussian standard deviation is sigma/2 per axis.  The same rule
applies to ``HermiteExpansion``: mode 0 at scale sigma equals the unit
Gaussian packet of width sigma.  Natural units, hbar = 1.

Everything here is an immutable value; all operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np

from .errors import DegenerateStateError, DomainError, PreconditionError, StructureError

NORM_TOL = 1e-12         # guaranteed after normalize()
NORM_PRECONDITION = 1e-9  # gate for operations that require a normalized state


def _frozen_vector(x, d: int | None = None, name: str = "vector") -> np.ndarray:
    v = np.array(x, dtype=float).reshape(-1)
    if d is not None and v.shape != (d,):
        raise StructureError(f"{name} must have length {d}, got {v.shape[0]}")
    v.setflags(write=False)
    return v


@dataclass(frozen=True)
class GaussianTerm:
    """One phased Gaussian packet.

    amplitude * (pi sigma^2 / 4)^(-d/4)
        * exp(-2|p-center|^2/sigma^2)
        * exp(-i linear_phase . p) * exp(i quad_phase |p|^2)

    The prefactor makes the squared L2 norm equal |amplitude|^2; the phase
    factors do not change the norm.
    """

    amplitude: complex
    center: np.ndarray
    width: float
    linear_phase: np.ndarray | None = None
    quad_phase: float = 0.0

    def __post_init__(self):
        center = _frozen_vector(self.center, name="center")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "amplitude", complex(self.amplitude))
        object.__setattr__(self, "width", float(self.width))
        object.__setattr__(self, "quad_phase", float(self.quad_phase))
        if not self.width > 0.0:
            raise DomainError(f"width must be positive, got {self.width}")
        if self.linear_phase is None:
            lp = np.zeros(center.shape[0])
            lp.setflags(write=False)
            object.__setattr__(self, "linear_phase", lp)
        else:
            object.__setattr__(
                self,
                "linear_phase",
                _frozen_vector(self.linear_phase, center.shape[0], "linear_phase"),
            )

    @property
    def dimension(self) -> int:
        return self.center.shape[0]

    def scaled(self, factor: complex) -> "GaussianTerm":
        return GaussianTerm(
            self.amplitude * factor, self.center, self.width, self.linear_phase, self.quad_phase
        )

    def conjugate_term(self) -> "GaussianTerm":
        """Term whose values are the complex conjugate of this one (real p)."""
        return GaussianTerm(
            np.conj(self.amplitude),
            self.center,
            self.width,
            -self.linear_phase,
            -self.quad_phase,
        )

    def eval_many(self, pts: np.ndarray) -> np.ndarray:
        """Values at an (N, d) array of points (complex points allowed;
        the expression is the analytic continuation)."""
        gamma = 2.0 / self.width**2
        d = self.dimension
        pref = (2.0 * gamma / np.pi) ** (0.25 * d)
        dp = pts - self.center
        expo = (
            -gamma * np.sum(dp * dp, axis=-1)
            - 1j * (pts @ self.linear_phase)
            + 1j * self.quad_phase * np.sum(pts * pts, axis=-1)
        )
        return self.amplitude * pref * np.exp(expo)


@dataclass(frozen=True)
class GaussianSum:
    """A wave-function component: finite sum of phased Gaussian packets."""

    terms: tuple[GaussianTerm, ...]

    def __post_init__(self):
        terms = tuple(self.terms)
        if not terms:
            raise StructureError("GaussianSum needs at least one term")
        d = terms[0].dimension
        for t in terms:
            if t.dimension != d:
                raise StructureError("all terms of a component must share one dimension")
        object.__setattr__(self, "terms", terms)

    @property
    def dimension(self) -> int:
        return self.terms[0].dimension

    def scaled(self, factor: complex) -> "GaussianSum":
        return GaussianSum(tuple(t.scaled(factor) for t in self.terms))

    def eval_many(self, pts: np.ndarray) -> np.ndarray:
        out = self.terms[0].eval_many(pts)
        for t in self.terms[1:]:
            out = out + t.eval_many(pts)
        return out


def _normalized_hermite_table(mmax: int, u: np.ndarray) -> np.ndarray:
    """psi_m(u) for m = 0..mmax, orthonormal Hermite functions.

    Recurrence: psi_{m+1} = sqrt(2/(m+1)) u psi_m - sqrt(m/(m+1)) psi_{m-1}.
    Works elementwise on arrays (complex u allowed).
    """
    table = np.empty((mmax + 1,) + u.shape, dtype=complex)
    table[0] = np.pi ** (-0.25) * np.exp(-0.5 * u * u)
    if mmax >= 1:
        table[1] = np.sqrt(2.0) * u * table[0]
    for m in range(1, mmax):
        table[m + 1] = np.sqrt(2.0 / (m + 1)) * u * table[m] - np.sqrt(m / (m + 1)) * table[m - 1]
    return table


@dataclass(frozen=True)
class HermiteExpansion:
    """Component expanded in orthonormal Hermite modes.

    Basis functions factor per axis: products of psi_m((p_i - origin_i)/s)
    with s = scale/2 (see the module width convention), normalized so the
    squared L2 norm equals the squared norm of the coefficient vector.
    Coefficients map d-dimensional multi-indices to complex numbers.
    """

    scale: float
    origin: np.ndarray
    coefficients: Mapping[tuple[int, ...], complex]

    def __post_init__(self):
        object.__setattr__(self, "scale", float(self.scale))
        if not self.scale > 0.0:
            raise DomainError(f"scale must be positive, got {self.scale}")
        origin = _frozen_vector(self.origin, name="origin")
        object.__setattr__(self, "origin", origin)
        d = origin.shape[0]
        coeffs: dict[tuple[int, ...], complex] = {}
        for key, val in dict(self.coefficients).items():
            idx = tuple(int(m) for m in (key if isinstance(key, (tuple, list)) else (key,)))
            if len(idx) != d:
                raise StructureError(f"multi-index {idx} does not match dimension {d}")
            if any(m < 0 for m in idx):
                raise StructureError(f"multi-index {idx} has a negative entry")
            coeffs[idx] = coeffs.get(idx, 0.0) + complex(val)
        if not coeffs:
            raise StructureError("HermiteExpansion needs at least one coefficient")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def dimension(self) -> int:
        return self.origin.shape[0]

    @property
    def gaussian_std(self) -> float:
        return 0.5 * self.scale

    def same_frame(self, other: "HermiteExpansion") -> bool:
        return self.scale == other.scale and np.array_equal(self.origin, other.origin)

    def scaled(self, factor: complex) -> "HermiteExpansion":
        return HermiteExpansion(
            self.scale, self.origin, {k: v * factor for k, v in self.coefficients.items()}
        )

    def eval_many(self, pts: np.ndarray) -> np.ndarray:
        s = self.gaussian_std
        u = (pts - self.origin) / s
        mmax = max(max(idx) for idx in self.coefficients)
        table = _normalized_hermite_table(mmax, u)  # (mmax+1, N, d)
        out = np.zeros(pts.shape[0], dtype=complex)
        for idx, c in self.coefficients.items():
            factor = table[idx[0], :, 0].copy()
            for axis in range(1, len(idx)):
                factor *= table[idx[axis], :, axis]
            out += c * factor
        return out * s ** (-0.5 * self.dimension)


@dataclass(frozen=True)
class ComponentSum:
    """Formal linear combination of components; overlaps stay exact by
    bilinearity.  Produced by Schmidt modes of mixed-representation states."""

    parts: tuple[tuple[complex, "WaveComponent"], ...]

    def __post_init__(self):
        flat: list[tuple[complex, WaveComponent]] = []
        for weight, comp in self.parts:
            w = complex(weight)
            if isinstance(comp, ComponentSum):
                flat.extend((w * w2, c2) for w2, c2 in comp.parts)
            else:
                flat.append((w, comp))
        if not flat:
            raise StructureError("ComponentSum needs at least one part")
        d = flat[0][1].dimension
        for _, comp in flat:
            if comp.dimension != d:
                raise StructureError("all parts of a component must share one dimension")
        object.__setattr__(self, "parts", tuple(flat))

    @property
    def dimension(self) -> int:
        return self.parts[0][1].dimension

    def scaled(self, factor: complex) -> "ComponentSum":
        return ComponentSum(tuple((w * factor, c) for w, c in self.parts))

    def eval_many(self, pts: np.ndarray) -> np.ndarray:
        out = np.zeros(pts.shape[0], dtype=complex)
        for w, comp in self.parts:
            out += w * comp.eval_many(pts)
        return out


WaveComponent = Union[GaussianSum, HermiteExpansion, ComponentSum]


def combine_components(weights, components) -> WaveComponent:
    """Linear combination of components, merged into a single representation
    when the families allow it (all Gaussian sums, or Hermite expansions on
    one frame); otherwise a ComponentSum."""
    pairs = [(complex(w), c) for w, c in zip(weights, components) if w != 0.0]
    if not pairs:
        pairs = [(complex(weights[0]), components[0])]
    if all(isinstance(c, GaussianSum) for _, c in pairs):
        terms: list[GaussianTerm] = []
        for w, c in pairs:
            terms.extend(c.scaled(w).terms)
        return GaussianSum(tuple(terms))
    if all(isinstance(c, HermiteExpansion) for _, c in pairs) and all(
        pairs[0][1].same_frame(c) for _, c in pairs[1:]
    ):
        merged: dict[tuple[int, ...], complex] = {}
        for w, c in pairs:
            for idx, val in c.coefficients.items():
                merged[idx] = merged.get(idx, 0.0) + w * val
        return HermiteExpansion(pairs[0][1].scale, pairs[0][1].origin, merged)
    return ComponentSum(tuple(pairs))


@dataclass(frozen=True)
class HybridState:
    """Pure state on C^n tensor L^2(R^d): one wave component per discrete
    level chi = 0..n-1.  The spin-component eigenvalue attached to level chi
    is (n-1)/2 - chi."""

    components: tuple[WaveComponent, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise StructureError("state needs at least one component")
        d = comps[0].dimension
        for c in comps:
            if c.dimension != d:
                raise StructureError(
                    f"components disagree on dimension: {c.dimension} != {d}"
                )
        object.__setattr__(self, "components", comps)

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def d(self) -> int:
        return self.components[0].dimension


def norm(state: HybridState) -> float:
    """sqrt(sum_chi integral |phi_chi|^2), via exact per-representation
    overlaps (pairwise closed forms for Gaussian sums, coefficient norms
    for Hermite expansions)."""
    from . import overlaps  # deferred: overlaps imports the types above

    total = 0.0
    for comp in state.components:
        total += overlaps.component_norm_sq(comp)
    return float(np.sqrt(total))


def normalize(state: HybridState) -> HybridState:
    """Same state scaled to unit norm.  Raises DegenerateStateError on a
    zero-norm state."""
    n = norm(state)
    if n < 1e-300:
        raise DegenerateStateError("cannot normalize a zero-norm state")
    factor = 1.0 / n
    return HybridState(tuple(c.scaled(factor) for c in state.components))


def check_normalized(state: HybridState, tol: float = NORM_PRECONDITION) -> None:
    dev = abs(norm(state) - 1.0)
    if dev > tol:
        raise PreconditionError(f"state is not normalized: |norm-1| = {dev:.3e} > {tol:g}")


def evaluate(state: HybridState, chi: int, p) -> complex:
    """Pointwise value phi_chi(p)."""
    chi = int(chi)
    if not 0 <= chi < state.n:
        raise StructureError(f"component index {chi} out of range for n={state.n}")
    pt = np.array(p, dtype=float).reshape(-1)
    if pt.shape[0] != state.d:
        raise StructureError(f"momentum vector has length {pt.shape[0]}, expected {state.d}")
    return complex(state.components[chi].eval_many(pt[None, :])[0])


def spin_expectation(state: HybridState) -> float:
    """Expectation of the discrete level observable with eigenvalues
    (n-1)/2 - chi, from the diagonal overlaps.  Requires a normalized state."""
    from . import overlaps

    check_normalized(state)
    n = state.n
    total = 0.0
    for chi, comp in enumerate(state.components):
        total += ((n - 1) / 2.0 - chi) * overlaps.component_norm_sq(comp)
    return total
