"""Entanglement measures for diffracted biphoton pure states.

A biphoton state sum_l c_l |psi_l>|psi_-l> built on non-orthogonal
diffracted modes is characterized entirely by its input coefficients c
and the Gram matrix b of mode overlaps.  This module computes the
renormalization constant, the reduced density matrix, the purity
Tr rho^2, and the pure-state concurrence C = sqrt(2 (1 - Tr rho^2)),
each with two independent verification routes:

* ``schmidt_oracle`` orthonormalizes the mode bases by factoring their
  Gram matrices and reads the Schmidt spectrum off a singular value
  decomposition;
* ``grid_oracle`` leaves mode space entirely, sampling the position-space
  wavefunctions on an angular quadrature grid and diagonalizing the
  one-photon correlation matrix.

Sign conventions: ``b_neg`` denotes the Gram matrix with both OAM indices
negated (idler side of an anti-correlated pair).  For a single aperture
centered at zero offset, b is real symmetric and b_neg == b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .apertures import TWO_PI, ApertureMask, OverlapMatrix

__all__ = [
    "BiphotonState",
    "EntanglementReport",
    "PositionMode",
    "NumericalDegeneracyError",
    "TruncationInsufficientError",
    "normalization_constant",
    "reduced_density",
    "purity",
    "purity_symmetric",
    "concurrence",
    "rescaled_concurrence",
    "schmidt_oracle",
    "grid_oracle",
    "quadrature_gram",
    "oam_position_modes",
    "oam_coefficient_matrix",
    "max_concurrence",
]

GRAM_EIGENVALUE_FLOOR = 1e-12


class NumericalDegeneracyError(ArithmeticError):
    """Normalization or trace left the numerically trustworthy regime."""


class TruncationInsufficientError(ArithmeticError):
    """A truncated sum produced a value outside its physical range."""


@dataclass
class BiphotonState:
    """Complex coefficient matrix over (signal l', idler l'') OAM ladders.

    ``coeffs[i, j]`` is the amplitude on |l'>|l''> with l' = i - l_trunc,
    l'' = j - l_trunc.  ``input_coeffs`` optionally records the
    pre-diffraction Schmidt weights c_l; ``normalized`` asserts unit
    Frobenius norm (valid as the state norm when the underlying basis is
    orthonormal, as it is for the plain OAM ladder).
    """

    coeffs: np.ndarray
    l_trunc: int
    input_coeffs: np.ndarray | None = None
    normalized: bool = False

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        n = 2 * self.l_trunc + 1
        if self.coeffs.shape != (n, n):
            raise ValueError("coeffs must be square with side 2*l_trunc + 1")
        if self.input_coeffs is not None:
            self.input_coeffs = np.asarray(self.input_coeffs, dtype=complex)
            total = float(np.sum(np.abs(self.input_coeffs) ** 2))
            if abs(total - 1.0) > 1e-12:
                raise ValueError("input_coeffs must be normalized to unit probability")
        if self.normalized:
            fro = float(np.linalg.norm(self.coeffs))
            if abs(fro - 1.0) > 1e-12:
                raise ValueError("normalized state must have unit Frobenius norm")


@dataclass
class EntanglementReport:
    """Purity, concurrence and Schmidt spectrum of a pure biphoton state."""

    purity: float
    concurrence: float
    schmidt_spectrum: np.ndarray
    truncation_used: int
    converged: bool
    deflated_modes: int = 0
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def schmidt_rank_effective(self) -> int:
        """Number of Schmidt weights above 1e-10 (spectrum sums to 1)."""
        return int(np.sum(self.schmidt_spectrum > 1e-10))


def _as_gram(b) -> np.ndarray:
    if isinstance(b, OverlapMatrix):
        return b.entries
    return np.asarray(b, dtype=complex)


def _negated(b: np.ndarray) -> np.ndarray:
    """Gram matrix with both OAM indices negated (idler convention)."""
    return b[::-1, ::-1]


def normalization_constant(c, b, negate_idler_indices: bool = True) -> float:
    """Renormalization sum N = sum_{l,k} c*_l c_k b_{lk} b_{-l,-k}.

    Compensates for the non-orthogonality of the diffracted modes so that
    c / sqrt(N) normalizes the biphoton state.  With
    ``negate_idler_indices=False`` the idler factor uses b_{lk} directly;
    the two conventions coincide for the symmetric single-aperture family.
    """
    c = np.asarray(c, dtype=complex)
    b = _as_gram(b)
    idler = _negated(b) if negate_idler_indices else b
    val = complex(np.einsum("l,k,lk,lk->", c.conj(), c, b, idler))
    if abs(val.imag) > 1e-10:
        raise NumericalDegeneracyError(f"normalization constant has imaginary part {val.imag:.3e}")
    if val.real <= 0.0:
        raise NumericalDegeneracyError("normalization constant is not positive")
    return float(val.real)


def reduced_density(c, b, negate_idler_indices: bool = True) -> np.ndarray:
    """One-photon reduced density matrix in the diffracted-mode basis.

    Entry (l, k) is ct*_l ct_k b_{-l,-k} with ct = c / sqrt(N); the matrix
    represents rho over the non-orthogonal modes {|psi_l>}, so its physical
    trace sum_{lk} rho_{lk} b_{lk} (the overlap-weighted contraction that
    reduces to sum rho_{lk} b_{kl} for real symmetric overlaps) must be 1,
    checked here.
    """
    c = np.asarray(c, dtype=complex)
    b = _as_gram(b)
    norm = normalization_constant(c, b, negate_idler_indices)
    ct = c / math.sqrt(norm)
    idler = _negated(b) if negate_idler_indices else b
    rho = np.outer(ct.conj(), ct) * idler
    trace = complex(np.sum(rho * b))
    if abs(trace - 1.0) > 1e-9:
        raise NumericalDegeneracyError(f"physical trace deviates from 1 by {abs(trace - 1.0):.3e}")
    return rho


def purity(c, b, negate_idler_indices: bool = True) -> float:
    """Purity Tr rho^2 of the reduced state via the quadruple overlap sum.

    Tr rho^2 = sum_{lkpq} ct*_l ct_k ct*_p ct_q
               b_{-l,-k} b_{-p,-q} b_{pk} b_{lq}
    where ct = c / sqrt(N).  O(D^4); intended for D <= 31 (route larger
    states through ``schmidt_oracle``).
    """
    c = np.asarray(c, dtype=complex)
    b = _as_gram(b)
    norm = normalization_constant(c, b, negate_idler_indices)
    ct = c / math.sqrt(norm)
    idler = _negated(b) if negate_idler_indices else b
    val = complex(
        np.einsum("l,k,p,q,lk,pq,pk,lq->", ct.conj(), ct, ct.conj(), ct,
                  idler, idler, b, b, optimize=True)
    )
    p = val.real
    if p < 0.0 or p > 1.0 + 1e-9:
        raise TruncationInsufficientError(f"purity {p!r} outside [0, 1 + 1e-9]")
    return float(p)


def purity_symmetric(b, dimension: int | None = None) -> float:
    """Purity for a uniformly weighted state over a symmetric Gram family.

    Valid when b is real symmetric with b_{lk} = b_{-l,-k} (single centered
    aperture); then
    Tr rho^2 = sum_{lkpq} b_{lk} b_{pq} b_{lp} b_{kq} / (sum_{lk} b_{lk}^2)^2.
    """
    b = _as_gram(b)
    if dimension is not None and b.shape != (dimension, dimension):
        raise ValueError("gram matrix does not match the requested dimension")
    if np.abs(b.imag).max() > 1e-12:
        raise ValueError("symmetric purity requires a real overlap matrix")
    br = b.real
    if np.abs(br - br.T).max() > 1e-12:
        raise ValueError("symmetric purity requires a symmetric overlap matrix")
    if np.abs(br - br[::-1, ::-1]).max() > 1e-12:
        raise ValueError("symmetric purity requires b_{lk} == b_{-l,-k}")
    num = float(np.einsum("lk,pq,lp,kq->", br, br, br, br, optimize=True))
    den = float(np.sum(br * br)) ** 2
    p = num / den
    if p < 0.0 or p > 1.0 + 1e-9:
        raise TruncationInsufficientError(f"purity {p!r} outside [0, 1 + 1e-9]")
    return p


def concurrence(purity_value: float) -> float:
    """Pure-state concurrence sqrt(2 (1 - Tr rho^2)).

    Zero for product states; sqrt(2 (D-1)/D) for maximally entangled
    rank-D states.  Values in (1, 1 + 1e-9] are clamped to 1 before the
    square root.
    """
    if purity_value > 1.0 + 1e-9:
        raise ValueError(f"purity {purity_value!r} exceeds 1 beyond tolerance")
    if purity_value < 0.0:
        raise ValueError("purity must be nonnegative")
    return math.sqrt(2.0 * (1.0 - min(purity_value, 1.0)))


def max_concurrence(dimension: int) -> float:
    """Concurrence of a maximally entangled rank-D state, sqrt(2(D-1)/D)."""
    if dimension < 1:
        raise ValueError("dimension must be positive")
    return math.sqrt(2.0 * (dimension - 1) / dimension)


def rescaled_concurrence(value: float, dimension: int) -> float:
    """Presentation-only rescaling of the concurrence to the range [0, 1]."""
    return value / max_concurrence(dimension)


def _gram_root(g: np.ndarray, floor: float = GRAM_EIGENVALUE_FLOOR):
    """Factor g = W^H W with W of full row rank; eigenvalues below the
    floor are deflated (dimension reduced) rather than inverted."""
    g = np.asarray(g, dtype=complex)
    lam, u = np.linalg.eigh((g + g.conj().T) / 2.0)
    keep = lam > floor
    w = np.sqrt(lam[keep])[:, None] * u[:, keep].conj().T
    return w, int(np.sum(~keep))


def schmidt_oracle(
    state,
    b_signal=None,
    b_idler=None,
    truncation_used: int = 0,
    converged: bool = True,
) -> EntanglementReport:
    """Schmidt spectrum of a pure state in (possibly non-orthogonal) bases.

    ``state`` is a coefficient matrix (or :class:`BiphotonState`) over the
    signal x idler mode labels; ``b_signal`` / ``b_idler`` are the Gram
    matrices of those bases (identity if omitted).  Each Gram matrix is
    factored by Hermitian eigendecomposition, the coefficient matrix is
    mapped to orthonormal bases, and the squared singular values give the
    Schmidt spectrum, the purity, and the concurrence.
    """
    if isinstance(state, BiphotonState):
        if truncation_used == 0:
            truncation_used = state.l_trunc
        coeffs = state.coeffs
    else:
        coeffs = np.asarray(state, dtype=complex)
    deflated = 0
    if b_signal is not None:
        ws, d = _gram_root(_as_gram(b_signal))
        coeffs = ws @ coeffs
        deflated += d
    if b_idler is not None:
        wi, d = _gram_root(_as_gram(b_idler))
        coeffs = coeffs @ wi.T
        deflated += d
    sigma = np.linalg.svd(coeffs, compute_uv=False)
    total = float(np.sum(sigma**2))
    if total <= 0.0:
        raise ValueError("state has zero norm; Schmidt spectrum undefined")
    spectrum = np.sort(sigma**2 / total)[::-1]
    p = float(np.sum(spectrum**2))
    return EntanglementReport(
        purity=min(p, 1.0),
        concurrence=concurrence(p),
        schmidt_spectrum=spectrum,
        truncation_used=truncation_used,
        converged=converged,
        deflated_modes=deflated,
    )


# ---------------------------------------------------------------------------
# Position-space (angular grid) verification route
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PositionMode:
    """A helical mode e^{i l phi} / sqrt(2pi) restricted to angular intervals."""

    oam_l: int
    intervals: tuple[tuple[float, float], ...]

    def sample(self, phi: np.ndarray) -> np.ndarray:
        inside = np.zeros(phi.shape, dtype=bool)
        for lo, hi in self.intervals:
            inside |= (phi >= lo - 1e-15) & (phi <= hi + 1e-15)
        return np.where(inside, np.exp(1j * self.oam_l * phi), 0.0) / math.sqrt(TWO_PI)


def _mask_intervals(mask: ApertureMask) -> tuple[tuple[float, float], ...]:
    out: list[tuple[float, float]] = []
    for k in mask.slit_indices:
        out.extend(mask.slit_intervals(k))
    return tuple(sorted(out))


def oam_position_modes(dimension: int, mask) -> list[PositionMode]:
    """Position-space modes for l in [-N, N] sharing one mask's support.

    ``mask`` may be an :class:`ApertureMask` or an explicit interval list.
    """
    if dimension < 1 or dimension % 2 == 0:
        raise ValueError("dimension must be a positive odd integer (2N+1)")
    if isinstance(mask, ApertureMask):
        intervals = _mask_intervals(mask)
    else:
        intervals = tuple((float(lo), float(hi)) for lo, hi in mask)
    n = (dimension - 1) // 2
    return [PositionMode(l, intervals) for l in range(-n, n + 1)]


def oam_coefficient_matrix(c) -> np.ndarray:
    """Coefficient matrix of sum_l c_l |l>|-l> over the (signal, idler) grid."""
    c = np.asarray(c, dtype=complex)
    return np.fliplr(np.diag(c))


def _composite_grid(modes: list[PositionMode], n_points: int):
    """Midpoint quadrature nodes aligned with every interval edge.

    The circle is partitioned at all interval endpoints, and each
    elementary arc covered by at least one mode receives nodes in
    proportion to its length, so the piecewise-smooth integrands are
    sampled without straddling a support discontinuity.
    """
    edges: set[float] = set()
    for mode in modes:
        for lo, hi in mode.intervals:
            edges.add(float(lo))
            edges.add(float(hi))
    cuts = sorted(edges)
    arcs = []
    for a, b in zip(cuts, cuts[1:]):
        if b - a > 1e-14:
            arcs.append((a, b))

    def covered(a, b):
        mid = (a + b) / 2.0
        return any(lo - 1e-15 <= mid <= hi + 1e-15
                   for mode in modes for lo, hi in mode.intervals)

    arcs = [arc for arc in arcs if covered(*arc)]
    if not arcs:
        raise ValueError("modes have empty support")
    total = sum(b - a for a, b in arcs)
    phis, weights = [], []
    for a, b in arcs:
        length = b - a
        n = max(1, int(round(n_points * length / total)))
        h = length / n
        phis.append(a + (np.arange(n) + 0.5) * h)
        weights.append(np.full(n, h))
    return np.concatenate(phis), np.concatenate(weights)


def quadrature_gram(modes: list[PositionMode], n_points: int) -> np.ndarray:
    """Gram matrix of position modes by midpoint quadrature on the circle."""
    phi, w = _composite_grid(modes, n_points)
    v = np.array([mode.sample(phi) for mode in modes])
    return (v.conj() * w) @ v.T


def grid_oracle(
    coeffs,
    signal_modes: list[PositionMode],
    idler_modes: list[PositionMode],
    grid_points: int,
    doubling_check: bool = True,
) -> EntanglementReport:
    """Schmidt spectrum from position space, independent of mode-space sums.

    Builds the joint wavefunction psi(phi_s, phi_i) implicitly from the
    sampled modes, computes the one-photon correlation matrix by
    quadrature, and takes its eigenvalues as the Schmidt spectrum.  The
    convergence flag compares the concurrence against a doubled grid.
    """
    if grid_points < 4096 or (grid_points & (grid_points - 1)) != 0:
        raise ValueError("grid_points must be a power of two >= 4096")
    coeffs = np.asarray(coeffs, dtype=complex)

    def spectrum_at(n):
        gs = quadrature_gram(signal_modes, n)
        gi = quadrature_gram(idler_modes, n)
        corr = coeffs @ gi.T @ coeffs.conj().T
        ws, deflated = _gram_root(gs)
        lam = np.linalg.eigvalsh(ws @ corr @ ws.conj().T)
        lam = np.clip(lam, 0.0, None)
        total = lam.sum()
        if total <= 0.0:
            raise ValueError("state has zero norm on the grid")
        return np.sort(lam / total)[::-1], deflated

    spectrum, deflated = spectrum_at(grid_points)
    p = float(np.sum(spectrum**2))
    conc = concurrence(p)
    converged = True
    if doubling_check:
        spectrum2, _ = spectrum_at(2 * grid_points)
        conc2 = concurrence(float(np.sum(spectrum2**2)))
        converged = abs(conc - conc2) < 1e-6
    return EntanglementReport(
        purity=min(p, 1.0),
        concurrence=conc,
        schmidt_spectrum=spectrum,
        truncation_used=grid_points,
        converged=converged,
        deflated_modes=deflated,
    )
