"""Angular-slit masks and the diffraction of OAM modes through them.

An orbital-angular-momentum (OAM) eigenmode of order ``l`` has the helical
phase profile e^{i l phi} on the unit circle.  A mask of ``n_slits`` binary
wedge apertures (width ``alpha``, center-to-center separation ``beta``)
truncates that profile, and the transmitted field redistributes over the
OAM ladder with sinc-shaped amplitudes.  This module builds the diffracted
modes on a truncated ladder ``l' in [-l_trunc, l_trunc]`` and computes
their mutual overlaps, both by truncated mode sums and in closed form for
a single aperture.

Slits are indexed on a centered grid k = -(n-1)/2 ... (n-1)/2 in unit
steps (half-integers when ``n_slits`` is even), so slit k is the wedge
``offset + k*beta +- alpha/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi

__all__ = [
    "ApertureMask",
    "ModeVector",
    "OverlapMatrix",
    "sinc",
    "aperture_transmission",
    "diffracted_mode",
    "mode_overlap_general",
    "single_aperture_overlap_closed",
    "overlap_matrix",
    "oam_overlap_matrix",
    "recommended_l_trunc",
    "wrap_angle",
]


def sinc(x):
    """Unnormalized sinc, sin(x)/x, with sinc(0) = 1.

    Accepts scalars or arrays.  Raises ValueError on non-finite input.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("sinc requires finite input")
    out = np.sinc(arr / np.pi)
    return float(out) if np.isscalar(x) or arr.ndim == 0 else out


def wrap_angle(phi):
    """Reduce an angle (or array of angles) to [-pi, pi)."""
    return (np.asarray(phi) + np.pi) % TWO_PI - np.pi


def recommended_l_trunc(alpha: float, base_l: int = 0) -> int:
    """Default OAM truncation bound for aperture width ``alpha``.

    The sinc tails decay only like 1/l', so the bound scales as 1/alpha;
    2000/alpha keeps the neglected tail of the mode norm below ~1e-3.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    return abs(int(base_l)) + math.ceil(2000.0 / alpha)


@dataclass(frozen=True)
class ApertureMask:
    """Geometry of an n-slit angular mask.

    Slit k (on the centered grid) spans
    ``[offset + k*beta - alpha/2, offset + k*beta + alpha/2]`` mod 2pi.
    Slits may touch (alpha == beta) but not overlap, and the whole comb
    must fit on the circle (n_slits * beta <= 2pi).
    """

    n_slits: int
    alpha: float
    beta: float | None = None
    offset: float = 0.0

    def __post_init__(self):
        if int(self.n_slits) != self.n_slits or self.n_slits < 1:
            raise ValueError("n_slits must be a positive integer")
        object.__setattr__(self, "n_slits", int(self.n_slits))
        if self.beta is None:
            object.__setattr__(self, "beta", TWO_PI / self.n_slits)
        if not (self.alpha > 0.0):
            raise ValueError("alpha must be positive (empty apertures are undefined)")
        if self.alpha > self.beta + 1e-12:
            raise ValueError("alpha must not exceed the slit separation beta")
        if self.n_slits * self.beta > TWO_PI + 1e-12:
            raise ValueError("n_slits * beta must not exceed 2pi")

    @property
    def slit_indices(self) -> np.ndarray:
        """Centered slit grid; half-integers when n_slits is even."""
        return np.arange(self.n_slits) - (self.n_slits - 1) / 2.0

    def slit_center(self, k: float) -> float:
        self._check_slit(k)
        return self.offset + self.beta * k

    def slit_intervals(self, k: float) -> list[tuple[float, float]]:
        """Support of slit k as one or two intervals inside [-pi, pi)."""
        center = self.slit_center(k)
        lo = wrap_angle(center - self.alpha / 2.0)
        hi = lo + self.alpha
        if hi <= np.pi:
            return [(float(lo), float(hi))]
        return [(float(lo), math.pi), (-math.pi, float(hi - TWO_PI))]

    def _check_slit(self, k: float) -> None:
        if not np.any(np.abs(self.slit_indices - k) < 1e-9):
            raise ValueError(f"slit index {k} not on the centered grid of {self.n_slits} slits")


@dataclass
class ModeVector:
    """Truncated coefficient vector of a diffracted single-photon state.

    ``coeffs[i]`` is the amplitude on the OAM mode l' = i - l_trunc.  The
    unnormalized convention carries the alpha/2pi prefactor and has squared
    norm -> alpha/2pi as l_trunc grows; the normalized convention rescales
    to unit norm.
    """

    base_l: int
    slit_k: float
    coeffs: np.ndarray
    l_trunc: int
    normalized: bool = False

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.shape != (2 * self.l_trunc + 1,):
            raise ValueError("coeffs length must be 2*l_trunc + 1")

    @property
    def l_values(self) -> np.ndarray:
        return np.arange(-self.l_trunc, self.l_trunc + 1)

    def squared_norm(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def inner(self, other: "ModeVector") -> complex:
        """<self|other> over the shared truncated ladder."""
        if self.l_trunc != other.l_trunc:
            raise ValueError("mismatched truncation bounds")
        return complex(np.vdot(self.coeffs, other.coeffs))


@dataclass
class OverlapMatrix:
    """Hermitian Gram matrix of mutual overlaps between diffracted modes."""

    entries: np.ndarray
    labels: list[tuple[int, float]] = field(default_factory=list)

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=complex)
        if self.entries.ndim != 2 or self.entries.shape[0] != self.entries.shape[1]:
            raise ValueError("overlap matrix must be square")

    def hermiticity_defect(self) -> float:
        return float(np.abs(self.entries - self.entries.conj().T).max())

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh((self.entries + self.entries.conj().T) / 2.0)[0])

    def validate(self, herm_tol: float = 1e-12, psd_tol: float = 1e-10) -> None:
        if self.hermiticity_defect() > herm_tol:
            raise ValueError("overlap matrix is not Hermitian within tolerance")
        if self.min_eigenvalue() < -psd_tol:
            raise ValueError("overlap matrix is not positive semidefinite within tolerance")


def aperture_transmission(mask: ApertureMask, k: float, phi: float) -> int:
    """Binary transmission of slit k at angle phi (wrap-aware), 1 or 0."""
    mask._check_slit(k)
    phi = float(wrap_angle(phi))
    for lo, hi in mask.slit_intervals(k):
        if lo - 1e-12 <= phi <= hi + 1e-12:
            return 1
    return 0


def diffracted_mode(
    mask: ApertureMask,
    k: float,
    l: int,
    l_trunc: int,
    normalize: bool = False,
) -> ModeVector:
    """Diffract the OAM mode ``l`` through slit ``k`` of ``mask``.

    The amplitude on mode l' is
    (alpha/2pi) * exp(-i (l'-l) c_k) * sinc(alpha (l'-l) / 2)
    with c_k = offset + beta*k the slit center.
    """
    mask._check_slit(k)
    if mask.alpha <= 0:
        raise ValueError("alpha must be positive")
    if l_trunc < abs(l):
        raise ValueError("l_trunc must be at least |l|")
    center = mask.slit_center(k)
    dl = np.arange(-l_trunc, l_trunc + 1) - l
    coeffs = (mask.alpha / TWO_PI) * np.exp(-1j * dl * center) * sinc(mask.alpha * dl / 2.0)
    if normalize:
        coeffs = coeffs / np.linalg.norm(coeffs)
    return ModeVector(base_l=l, slit_k=float(k), coeffs=coeffs, l_trunc=l_trunc,
                      normalized=normalize)


def mode_overlap_general(
    mask: ApertureMask,
    j: float,
    m: int,
    k: float,
    l: int,
    l_trunc: int,
) -> complex:
    """Overlap <psi_m^j | psi_l^k> as a truncated single sum over l'.

    Orthogonality of the OAM basis collapses the double mode sum, leaving
    (alpha/2pi)^2 sum_{l'} e^{-i(l'-l) c_k} e^{+i(l'-m) c_j}
                            sinc(alpha(l'-l)/2) sinc(alpha(l'-m)/2),
    summed in ascending l' for deterministic results.
    """
    if l_trunc < max(abs(l), abs(m)):
        raise ValueError("l_trunc must cover both base OAM orders")
    c_k = mask.slit_center(k)
    c_j = mask.slit_center(j)
    lp = np.arange(-l_trunc, l_trunc + 1)
    pref = (mask.alpha / TWO_PI) ** 2
    terms = (np.exp(-1j * (lp - l) * c_k) * np.exp(1j * (lp - m) * c_j)
             * sinc(mask.alpha * (lp - l) / 2.0) * sinc(mask.alpha * (lp - m) / 2.0))
    return complex(pref * np.sum(terms))


def single_aperture_overlap_closed(l: int, m: int, alpha: float) -> float:
    """Closed-form overlap sinc((l-m) alpha / 2) of two normalized modes
    diffracted by the same single aperture centered at zero offset."""
    if not (0.0 < alpha <= TWO_PI + 1e-12):
        raise ValueError("alpha must lie in (0, 2pi]")
    return float(sinc((l - m) * alpha / 2.0))


def overlap_matrix(modes: list[ModeVector]) -> OverlapMatrix:
    """Gram matrix of pairwise inner products of the given modes."""
    if not modes:
        raise ValueError("overlap_matrix requires at least one mode")
    l_trunc = modes[0].l_trunc
    norm_flag = modes[0].normalized
    for mv in modes[1:]:
        if mv.l_trunc != l_trunc:
            raise ValueError("all modes must share the same truncation bound")
        if mv.normalized != norm_flag:
            raise ValueError("all modes must share the same normalization convention")
    stack = np.array([mv.coeffs for mv in modes])
    entries = stack.conj() @ stack.T
    return OverlapMatrix(entries=entries, labels=[(mv.base_l, mv.slit_k) for mv in modes])


def oam_overlap_matrix(dimension: int, alpha: float) -> np.ndarray:
    """Gram matrix b[l, k] = sinc((l-k) alpha / 2) over l, k in [-N, N].

    This is the closed-form overlap family of a single centered aperture,
    real and symmetric, with b equal to the identity at alpha = 2pi.
    """
    if dimension < 1 or dimension % 2 == 0:
        raise ValueError("dimension must be a positive odd integer (2N+1)")
    if not (0.0 < alpha <= TWO_PI + 1e-12):
        raise ValueError("alpha must lie in (0, 2pi]")
    n = (dimension - 1) // 2
    ls = np.arange(-n, n + 1)
    return np.asarray(sinc((ls[:, None] - ls[None, :]) * alpha / 2.0), dtype=float)
