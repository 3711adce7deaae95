"""Wave multivectors, dispersion, plane-wave checks and Dirac-type relations."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .algebra import DEFAULT_ATOL, Multivector, as_vec3, reverse, star
from .errors import ArgumentError, InvariantError, UnitError
from .spacetime import Event, MomentumMultivector, _check_c, _check_orthogonal

__all__ = [
    "Current",
    "GridSpec",
    "WaveMultivector",
    "current",
    "dirac_equation_residual",
    "dirac_factorization_residual",
    "dispersion_residual",
    "kg_residual",
    "phase",
    "wave_from_momentum",
]


@dataclass(frozen=True)
class WaveMultivector:
    """``K = k + i w / c`` with wave vector ``k`` and angular-frequency vector ``w``."""

    k: tuple[float, float, float]
    w: tuple[float, float, float]
    c: float = 1.0

    def __post_init__(self):
        k, w = as_vec3(self.k), as_vec3(self.w)
        object.__setattr__(self, "k", tuple(float(a) for a in k))
        object.__setattr__(self, "w", tuple(float(a) for a in w))
        object.__setattr__(self, "c", _check_c(self.c))
        _check_orthogonal(k, w, "wave vector and frequency vector")

    @property
    def k_vec(self) -> np.ndarray:
        return np.array(self.k)

    @property
    def w_vec(self) -> np.ndarray:
        return np.array(self.w)

    def as_multivector(self) -> Multivector:
        return Multivector(v=self.k, b=self.w_vec / self.c)


def wave_from_momentum(P: MomentumMultivector, hbar: float) -> WaveMultivector:
    """de Broglie wave ``K = P / hbar``: ``k = p / hbar`` and ``w = E / hbar``."""
    if not hbar > 0:
        raise ArgumentError(f"hbar must be positive, got {hbar!r}")
    return WaveMultivector(tuple(P.p_vec / hbar), tuple(P.E_vec / hbar), P.c)


def dispersion_residual(K: WaveMultivector, m: float, hbar: float) -> float:
    """``<K^2>_0 + (m c / hbar)^2``, zero for an on-shell wave."""
    Km = K.as_multivector()
    inv_compton = m * K.c / hbar
    return (Km * Km).s + inv_compton * inv_compton


def phase(K: WaveMultivector, X: Event) -> float:
    """Plane-wave phase ``k . x - w . t``."""
    if K.c != X.c:
        raise UnitError(f"wave uses c = {K.c!r} but event uses c = {X.c!r}")
    return float(np.dot(K.k_vec, X.x_vec) - np.dot(K.w_vec, X.t_vec))


@dataclass(frozen=True)
class GridSpec:
    """Sample points and finite-difference spacings for :func:`kg_residual`.

    The six-dimensional domain is sampled on a ``samples x samples`` slice
    spanned by one space axis and one time axis through ``origin``; the other
    four coordinates stay fixed.
    """

    h_space: float
    h_time: float
    samples: int = 9
    extent_space: float = 1.0
    extent_time: float = 1.0
    space_axis: int = 0
    time_axis: int = 0
    origin_space: tuple[float, float, float] = (0.0, 0.0, 0.0)
    origin_time: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if not (self.h_space > 0 and self.h_time > 0):
            raise ArgumentError("grid spacings must be positive")
        if self.samples < 1:
            raise ArgumentError("grid needs at least one sample per axis")
        if self.space_axis not in (0, 1, 2) or self.time_axis not in (0, 1, 2):
            raise ArgumentError("grid axes must be 0, 1 or 2")

    def halved(self) -> "GridSpec":
        return replace(self, h_space=self.h_space / 2, h_time=self.h_time / 2)

    def points(self) -> tuple[np.ndarray, np.ndarray]:
        """Space and time coordinates of every sample, each of shape (N, 3)."""
        s = np.linspace(-self.extent_space / 2, self.extent_space / 2, self.samples)
        r = np.linspace(-self.extent_time / 2, self.extent_time / 2, self.samples)
        S, R = np.meshgrid(s, r, indexing="ij")
        xs = np.tile(np.asarray(self.origin_space, dtype=float), (S.size, 1))
        ts = np.tile(np.asarray(self.origin_time, dtype=float), (S.size, 1))
        xs[:, self.space_axis] += S.ravel()
        ts[:, self.time_axis] += R.ravel()
        return xs, ts


def _plane_wave(K: WaveMultivector, xs: np.ndarray, ts: np.ndarray) -> np.ndarray:
    # Complex values stand for the scalar + trivector pair a + i b; i commutes
    # with everything so the arithmetic is identical.
    return np.exp(1j * (xs @ K.k_vec - ts @ K.w_vec))


def kg_residual(K: WaveMultivector, m: float, hbar: float, grid: GridSpec) -> float:
    """Max-norm of ``(grad_t^2 - grad_x^2) psi + (m c / hbar)^2 psi`` for ``psi = exp(i K . X)``.

    Second derivatives are central differences in each of the three space and
    three time coordinates, with ``grad_t = (1/c) sum_j e_j d/dt_j``.
    """
    xs, ts = grid.points()
    psi = _plane_wave(K, xs, ts)
    lap_x = np.zeros_like(psi)
    lap_t = np.zeros_like(psi)
    for j in range(3):
        dx = np.zeros(3)
        dx[j] = grid.h_space
        lap_x += (_plane_wave(K, xs + dx, ts) - 2 * psi + _plane_wave(K, xs - dx, ts)) / grid.h_space**2
        dt = np.zeros(3)
        dt[j] = grid.h_time
        lap_t += (_plane_wave(K, xs, ts + dt) - 2 * psi + _plane_wave(K, xs, ts - dt)) / grid.h_time**2
    mass_term = (m * K.c / hbar) ** 2
    residual = lap_t / K.c**2 - lap_x + mass_term * psi
    return float(np.max(np.abs(residual)))


def _imc(m: float, c: float) -> Multivector:
    return Multivector(p=m * c)


def dirac_factorization_residual(P: MomentumMultivector, m: float) -> Multivector:
    """``(P + i m c)(P - i m c)``, which vanishes when ``P^2 = -m^2 c^2``."""
    Pm = P.as_multivector()
    imc = _imc(m, P.c)
    return (Pm + imc) * (Pm - imc)


def dirac_equation_residual(
    psi: Multivector,
    P: MomentumMultivector,
    M: Multivector,
    hbar: float = 1.0,
    involution: Callable[[Multivector], Multivector] = star,
    atol: float = 1e-10,
) -> Multivector:
    """Residual ``K psi - psi* M`` of the first-order equation, ``K = P / hbar``.

    ``M`` must square to the scalar ``<K^2>_0 = -(m c / hbar)^2``.  The
    chaining identity ``K^2 psi = psi M^2`` is checked on the way.
    """
    K = P.as_multivector() / hbar
    K2 = K * K
    M2 = M * M
    scale = max(1.0, abs(K2.s))
    if np.abs(M2.coeffs[1:]).max() > atol * scale:
        raise ArgumentError("M must square to a scalar")
    if abs(M2.s - K2.s) > atol * scale:
        raise ArgumentError(f"M^2 = {M2.s!r} does not match -(m c / hbar)^2 = {K2.s!r}")
    lhs = K2 * psi
    rhs = psi * M2
    if (lhs - rhs).max_abs() > atol * max(1.0, psi.max_abs()) * scale:
        raise InvariantError("chaining identity K^2 psi = psi M^2 failed")
    return K * psi - involution(psi) * M


@dataclass(frozen=True)
class Current:
    """Density ``rho`` and current ``J`` from ``psi ~psi``."""

    rho: float
    J: tuple[float, float, float]

    def __post_init__(self):
        if self.rho < 0:
            raise InvariantError(f"density must be non-negative, got {self.rho!r}")


def current(psi: Multivector) -> Current:
    Jm = psi * reverse(psi)
    if np.abs(Jm.coeffs[4:]).max() > DEFAULT_ATOL * max(1.0, Jm.s):
        raise InvariantError("psi ~psi has bivector or trivector parts")
    return Current(Jm.s, tuple(float(a) for a in Jm.v))
