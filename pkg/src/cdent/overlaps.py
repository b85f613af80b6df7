"""Overlap integrals h_{chi,chi'} = integral phi_chi conj(phi_chi').

Two independent routes:

* closed forms (``gaussian_term_overlap``, Hermite coefficient inner
  products), used by everything downstream;
* ``quadrature_overlap``, a tensor-product Gauss-Hermite integrator that
  only ever samples the integrand pointwise, kept as the certification
  oracle for the closed forms.

Closed form for two phased Gaussian packets (bilinear in the complex
exponents; gamma_i = 2/sigma_i^2):

    integrand = c1 conj(c2) N1 N2 exp(-A|p|^2 + b.p + C0)
    A  = gamma1 + gamma2 - i(beta1 - beta2)          (Re A > 0)
    b  = 2 gamma1 k1 + 2 gamma2 k2 - i(a1 - a2)
    C0 = -(gamma1 |k1|^2 + gamma2 |k2|^2)
    result = c1 conj(c2) (4 gamma1 gamma2)^(d/4) A^(-d/2) exp(b.b/(4A) + C0)

with b.b the bilinear (unconjugated) dot product and A^(-d/2) on the
principal branch, single-valued because Re A > 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, StructureError, UnsupportedError
from .linalg import hermitian_eigenvalues
from .states import (
    ComponentSum,
    GaussianSum,
    GaussianTerm,
    HermiteExpansion,
    HybridState,
    WaveComponent,
    check_normalized,
)

MAX_TENSOR_DIM = 4
OFFDIAG_BOUND = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True)
class QuadratureSpec:
    """Tensor-product Gauss-Hermite settings.

    centering selects the affine map:

    * "saddle" (default): grid centered on the integrand's envelope peak,
      scaled to the combined width; phased Gaussian pairs additionally tilt
      the integration contour into the complex plane by -arg(A)/2, which
      turns the chirped integrand into exp(-t^2) times a slow factor
      (legitimate by Cauchy's theorem: the integrand is entire with
      Gaussian decay inside the sector).
    * "midpoint": real grid at the midpoint of the two effective centers,
      scaled by the larger effective width.  Kept for comparison; fails for
      strongly unequal widths or large phase differences.
    """

    nodes_per_axis: int = 64
    centering: str = "saddle"

    def __post_init__(self):
        if int(self.nodes_per_axis) < 2:
            raise DomainError("nodes_per_axis must be >= 2")
        object.__setattr__(self, "nodes_per_axis", int(self.nodes_per_axis))
        if self.centering not in ("saddle", "midpoint"):
            raise DomainError(f"unknown centering rule {self.centering!r}")


DEFAULT_QUADRATURE = QuadratureSpec()


@lru_cache(maxsize=8)
def _hermgauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.hermite.hermgauss(n)
    # scaled weights w*exp(x^2): quadrature of a bare integrand f is
    # sum w_j e^{x_j^2} f(x_j); stays O(1) per node for n <= ~180
    return nodes, weights * np.exp(nodes**2)


def gaussian_term_overlap(t1: GaussianTerm, t2: GaussianTerm, d: int | None = None) -> complex:
    """integral t1(p) conj(t2(p)) d^d p, exactly.

    For phase-free unit-amplitude packets this reduces to
    (2 s1 s2/(s1^2+s2^2))^(d/2) exp(-2 q^2/(s1^2+s2^2)) with q = |k1-k2|.
    """
    if d is None:
        d = t1.dimension
    if t1.dimension != d or t2.dimension != d:
        raise StructureError("terms disagree on dimension")
    if not (t1.width > 0.0 and t2.width > 0.0):
        raise DomainError("widths must be positive")
    g1 = 2.0 / t1.width**2
    g2 = 2.0 / t2.width**2
    a_coef = g1 + g2 - 1j * (t1.quad_phase - t2.quad_phase)
    b_vec = 2.0 * g1 * t1.center + 2.0 * g2 * t2.center - 1j * (t1.linear_phase - t2.linear_phase)
    c0 = -(g1 * np.dot(t1.center, t1.center) + g2 * np.dot(t2.center, t2.center))
    log_pref = 0.25 * d * np.log(4.0 * g1 * g2) - 0.5 * d * np.log(a_coef)
    expo = np.sum(b_vec * b_vec) / (4.0 * a_coef) + c0
    return complex(t1.amplitude * np.conj(t2.amplitude) * np.exp(log_pref + expo))


def _primitive_pieces(comp: WaveComponent) -> list[tuple[complex, object]]:
    """Split a component into weighted primitives (GaussianTerm or whole
    HermiteExpansion); quadrature then works pair-by-pair by bilinearity."""
    if isinstance(comp, GaussianSum):
        return [(1.0 + 0.0j, t) for t in comp.terms]
    if isinstance(comp, HermiteExpansion):
        return [(1.0 + 0.0j, comp)]
    if isinstance(comp, ComponentSum):
        out: list[tuple[complex, object]] = []
        for w, part in comp.parts:
            out.extend((w * w2, p) for w2, p in _primitive_pieces(part))
        return out
    raise StructureError(f"unknown component type {type(comp).__name__}")


def _envelope(piece) -> tuple[np.ndarray, float]:
    """(center, envelope precision gamma) with |piece| ~ exp(-gamma(p-c)^2)."""
    if isinstance(piece, GaussianTerm):
        return piece.center, 2.0 / piece.width**2
    # Hermite: Gaussian factor exp(-(p-k0)^2/(2 s^2))
    return piece.origin, 0.5 / piece.gaussian_std**2


def _tensor_grid(nodes: np.ndarray, d: int) -> np.ndarray:
    grids = np.meshgrid(*([nodes] * d), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=-1)


def _tensor_weights(w: np.ndarray, d: int) -> np.ndarray:
    out = w
    for _ in range(d - 1):
        out = np.multiply.outer(out, w)
    return out.ravel()


def _quad_gaussian_pair(t1: GaussianTerm, t2: GaussianTerm, spec: QuadratureSpec) -> complex:
    """Gauss-Hermite integration of a phased Gaussian pair on the tilted,
    saddle-centered contour p_i(t) = mu_i + e^{i phi} alpha t."""
    d = t1.dimension
    n = spec.nodes_per_axis
    nodes, wts = _hermgauss(n)
    g1 = 2.0 / t1.width**2
    g2 = 2.0 / t2.width**2
    t2c = t2.conjugate_term()

    if spec.centering == "midpoint":
        mu = 0.5 * (t1.center + t2.center)
        alpha = max(t1.width, t2.width) / 2.0
        rot = 1.0 + 0.0j
    else:
        a_coef = g1 + g2 - 1j * (t1.quad_phase - t2.quad_phase)
        b_vec = (
            2.0 * g1 * t1.center
            + 2.0 * g2 * t2.center
            - 1j * (t1.linear_phase - t2.linear_phase)
        )
        mu = (b_vec / (2.0 * a_coef)).real
        alpha = 1.0 / np.sqrt(abs(a_coef))
        rot = np.exp(-0.5j * np.angle(a_coef))

    step = rot * alpha
    if d >= MAX_TENSOR_DIM:
        # chunk the leading axis to bound memory
        sub = _tensor_grid(nodes, d - 1)
        wsub = _tensor_weights(wts, d - 1)
        total = 0.0 + 0.0j
        for i in range(n):
            pts = np.empty((sub.shape[0], d), dtype=complex)
            pts[:, 0] = mu[0] + step * nodes[i]
            pts[:, 1:] = mu[1:] + step * sub
            total += wts[i] * np.sum(wsub * (t1.eval_many(pts) * t2c.eval_many(pts)))
        return complex(step**d * total)
    pts = mu[None, :] + step * _tensor_grid(nodes, d)
    weights = _tensor_weights(wts, d)
    vals = t1.eval_many(pts) * t2c.eval_many(pts)
    return complex(step**d * np.sum(weights * vals))


def _quad_general_pair(p1, p2, spec: QuadratureSpec) -> complex:
    """Real-line tensor Gauss-Hermite for pairs involving a Hermite
    expansion (no quadratic phases there, so no contour tilt is needed)."""
    d = p1.dimension if isinstance(p1, HermiteExpansion) else p1.center.shape[0]
    n = spec.nodes_per_axis
    nodes, wts = _hermgauss(n)
    c1, g1 = _envelope(p1)
    c2, g2 = _envelope(p2)
    if spec.centering == "midpoint":
        mu = 0.5 * (c1 + c2)
        alpha = max(1.0 / np.sqrt(2.0 * g1), 1.0 / np.sqrt(2.0 * g2))
    else:
        mu = (g1 * c1 + g2 * c2) / (g1 + g2)
        alpha = 1.0 / np.sqrt(g1 + g2)

    total = 0.0 + 0.0j
    if d >= MAX_TENSOR_DIM:
        # chunk the leading axis to bound memory
        sub = _tensor_grid(nodes, d - 1)
        wsub = _tensor_weights(wts, d - 1)
        for i in range(n):
            pts = np.empty((sub.shape[0], d))
            pts[:, 0] = mu[0] + alpha * nodes[i]
            pts[:, 1:] = mu[1:] + alpha * sub
            total += wts[i] * np.sum(wsub * (p1.eval_many(pts) * np.conj(p2.eval_many(pts))))
    else:
        pts = mu[None, :] + alpha * _tensor_grid(nodes, d)
        weights = _tensor_weights(wts, d)
        total = np.sum(weights * (p1.eval_many(pts) * np.conj(p2.eval_many(pts))))
    return complex(alpha**d * total)


def quadrature_overlap(
    a: WaveComponent, b: WaveComponent, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> complex:
    """integral a(p) conj(b(p)) d^d p by numerical quadrature.

    Components are split bilinearly into primitive pieces and every piece
    pair is integrated on its own affine Gauss-Hermite grid.  Independent
    of the closed forms (only pointwise integrand samples are used);
    converges to them as nodes_per_axis grows.
    """
    if a.dimension != b.dimension:
        raise StructureError("components disagree on dimension")
    if a.dimension > MAX_TENSOR_DIM:
        raise UnsupportedError(
            f"tensor-grid quadrature supports d <= {MAX_TENSOR_DIM}, got d={a.dimension}"
        )
    total = 0.0 + 0.0j
    for wa, pa in _primitive_pieces(a):
        for wb, pb in _primitive_pieces(b):
            w = wa * np.conj(wb)
            if isinstance(pa, GaussianTerm) and isinstance(pb, GaussianTerm):
                total += w * _quad_gaussian_pair(pa, pb, spec)
            else:
                total += w * _quad_general_pair(pa, pb, spec)
    return complex(total)


def component_overlap(
    a: WaveComponent, b: WaveComponent, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> complex:
    """integral a(p) conj(b(p)) d^d p, closed form where available.

    Gaussian x Gaussian goes through the exact pairwise term overlaps;
    Hermite x Hermite on a shared frame is the coefficient inner product;
    every other combination falls back to quadrature.
    """
    if a.dimension != b.dimension:
        raise StructureError("components disagree on dimension")
    if isinstance(a, GaussianSum) and isinstance(b, GaussianSum):
        total = 0.0 + 0.0j
        for t1 in a.terms:
            for t2 in b.terms:
                total += gaussian_term_overlap(t1, t2)
        return complex(total)
    if isinstance(a, HermiteExpansion) and isinstance(b, HermiteExpansion) and a.same_frame(b):
        total = 0.0 + 0.0j
        for idx, c in a.coefficients.items():
            c2 = b.coefficients.get(idx)
            if c2 is not None:
                total += c * np.conj(c2)
        return complex(total)
    if isinstance(a, ComponentSum) or isinstance(b, ComponentSum):
        pa = a.parts if isinstance(a, ComponentSum) else ((1.0 + 0.0j, a),)
        pb = b.parts if isinstance(b, ComponentSum) else ((1.0 + 0.0j, b),)
        total = 0.0 + 0.0j
        for wa, ca in pa:
            for wb, cb in pb:
                total += wa * np.conj(wb) * component_overlap(ca, cb, spec)
        return complex(total)
    return quadrature_overlap(a, b, spec)


def component_norm_sq(comp: WaveComponent) -> float:
    """Exact squared L2 norm of one component."""
    if isinstance(comp, HermiteExpansion):
        return float(sum(abs(c) ** 2 for c in comp.coefficients.values()))
    return float(component_overlap(comp, comp).real)


def state_inner(a: HybridState, b: HybridState, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> complex:
    """sum_chi integral a_chi(p) conj(b_chi(p)) d^d p."""
    if a.n != b.n or a.d != b.d:
        raise StructureError("states disagree on (n, d)")
    return complex(
        sum(component_overlap(ca, cb, spec) for ca, cb in zip(a.components, b.components))
    )


@dataclass(frozen=True)
class OverlapMatrix:
    """The n x n Hermitian matrix h of component overlaps; for a pure state
    this is the reduced density matrix of the discrete factor.

    Construction validates: hermiticity (within 1e-10, then symmetrized
    exactly), unit trace within 1e-10, Cauchy-Schwarz |h_ij|^2 <= h_ii h_jj
    + 1e-12, off-diagonal magnitudes <= 1/sqrt(2) + 1e-12, and positive
    semidefiniteness down to eigenvalue -1e-10.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        n = m.shape[0]
        if m.ndim != 2 or m.shape != (n, n):
            raise DomainError(f"expected a square matrix, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > 1e-10:
            raise DomainError("overlap matrix is not Hermitian within 1e-10")
        m = 0.5 * (m + m.conj().T)
        if abs(np.trace(m).real - 1.0) > 1e-10:
            raise DomainError(f"trace must be 1, got {np.trace(m).real!r}")
        diag = m.diagonal().real
        for i in range(n):
            for j in range(i + 1, n):
                if abs(m[i, j]) ** 2 > diag[i] * diag[j] + 1e-12:
                    raise DomainError(f"Cauchy-Schwarz violated at ({i},{j})")
                if abs(m[i, j]) > OFFDIAG_BOUND + 1e-12:
                    raise DomainError(f"off-diagonal bound violated at ({i},{j})")
        if n > 1 and hermitian_eigenvalues(m)[-1] < -1e-10:
            raise DomainError("overlap matrix is not positive semidefinite")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def overlap_matrix(state: HybridState, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> OverlapMatrix:
    """Assemble h_{chi,chi'} = component_overlap(phi_chi, phi_chi') for a
    normalized state.  Hermitian by construction (upper triangle computed,
    mirrored by conjugation)."""
    check_normalized(state)
    n = state.n
    h = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i, n):
            val = component_overlap(state.components[i], state.components[j], spec)
            h[i, j] = val
            if j > i:
                h[j, i] = np.conj(val)
    return OverlapMatrix(h)
