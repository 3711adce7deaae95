"""Free Gaussian wave packets with the bivector ``iota = e1 e2`` as imaginary unit.

The packet is the superposition

    psi(x, t) = C * integral exp(-(k - k0)^2 / (2 sigma^2)) exp(iota (k x - hbar k^2 t / (2 m))) dk

with ``C`` chosen so that it equals the closed form returned by
:func:`closed_form`, whose amplitude carries the normalisation factor

    N(t) = sigma^(3/2) sqrt(m / k0) / (pi^(1/4) (m^2 + sigma^4 hbar^2 t^2)^(1/4)).

Neither is normalised to unit probability; only ratios and time dependence
are physical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson, trapezoid
from scipy.special import erfc

from .algebra import E12, Multivector
from .errors import AccuracyError, ArgumentError

__all__ = [
    "ComplexLike",
    "QuadratureSpec",
    "WavePacketParams",
    "closed_form",
    "closed_form_values",
    "fit_spread",
    "norm_integral",
    "phase_rotation_rate",
    "propagate_quadrature",
    "quadrature_values",
    "spread",
]

NARROW_PACKET_RATIO = 5.0
TAIL_MASS_LIMIT = 1e-10


@dataclass(frozen=True)
class WavePacketParams:
    sigma: float
    k0: float
    m: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("sigma", "m", "hbar"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ArgumentError(f"{name} must be positive, got {value!r}")
        if not (math.isfinite(self.k0) and self.k0 > 0):
            raise ArgumentError(f"k0 must be positive, got {self.k0!r}")

    @property
    def A_ratio(self) -> float:
        return self.k0 / self.sigma

    @property
    def narrow(self) -> bool:
        return self.A_ratio >= NARROW_PACKET_RATIO

    @property
    def group_velocity(self) -> float:
        return self.hbar * self.k0 / self.m

    @property
    def w0(self) -> float:
        """Rotation rate ``hbar k0^2 / (2 m)`` of the packet phase at its centre."""
        return self.hbar * self.k0**2 / (2 * self.m)

    def scaled(self, x, t):
        """Dimensionless ``(x', t')`` used in the compact form of the packet."""
        return self.sigma**2 * np.asarray(x) / self.k0, self.sigma**2 * self.hbar * np.asarray(t) / self.m


@dataclass(frozen=True)
class ComplexLike:
    """``re + im * iota`` with ``iota = e1 e2``; arithmetic mirrors complex numbers."""

    re: float
    im: float

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexLike":
        return cls(float(z.real), float(z.imag))

    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    def to_multivector(self) -> Multivector:
        return Multivector(self.re) + E12 * self.im

    @classmethod
    def from_multivector(cls, M: Multivector, atol: float = 1e-12) -> "ComplexLike":
        rest = M - Multivector(M.s) - E12 * M.b[2]
        if rest.max_abs() > atol * max(1.0, M.max_abs()):
            raise ArgumentError("multivector is not of the form a + b e12")
        return cls(M.s, float(M.b[2]))

    def __add__(self, other: "ComplexLike") -> "ComplexLike":
        return ComplexLike(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexLike") -> "ComplexLike":
        return ComplexLike(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "ComplexLike") -> "ComplexLike":
        return ComplexLike(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conjugate(self) -> "ComplexLike":
        return ComplexLike(self.re, -self.im)

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)

    @property
    def arg(self) -> float:
        return math.atan2(self.im, self.re)


@dataclass(frozen=True)
class QuadratureSpec:
    """How to evaluate the momentum integral.

    ``half_width`` is the integration half-range in units of ``sigma`` for the
    Simpson rule; Gauss-Hermite covers the range set by its outermost node.
    ``method='auto'`` uses Gauss-Hermite and switches to Simpson when the
    integrand oscillates too often for the node count.
    """

    method: str = "auto"
    nodes: int = 200
    half_width: float = 10.0

    def __post_init__(self):
        if self.method not in ("auto", "hermite", "simpson"):
            raise ArgumentError(f"unknown quadrature method {self.method!r}")


def _normalisation(params: WavePacketParams, t):
    s, m, hb = params.sigma, params.m, params.hbar
    return s**1.5 * math.sqrt(m / params.k0) / (math.pi**0.25 * (m * m + s**4 * hb * hb * np.asarray(t) ** 2) ** 0.25)


def closed_form_values(params: WavePacketParams, x, t) -> np.ndarray:
    """Closed-form packet on arrays ``x``, ``t`` (broadcast), as complex values."""
    s, k0, m, hb = params.sigma, params.k0, params.m, params.hbar
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    D = m * m + s**4 * hb * hb * t * t
    xm = x - hb * k0 * t / m
    envelope = np.exp(-(s**2) * m * m * xm * xm / (2 * D))
    ph = (
        hb * k0 * k0 * t / (2 * m)
        + k0 * xm
        + m * hb * t * s**4 * xm * xm / (2 * D)
        - 0.5 * np.arctan(hb * s * s * t / m)
    )
    return _normalisation(params, t) * envelope * np.exp(1j * ph)


def closed_form(params: WavePacketParams, x: float, t: float) -> ComplexLike:
    return ComplexLike.from_complex(complex(closed_form_values(params, x, t)))


def spread(params: WavePacketParams, t: float) -> float:
    """Width ``s(t)`` of the envelope ``exp(-x_m^2 / s^2)``."""
    s, m, hb = params.sigma, params.m, params.hbar
    return math.sqrt(2 * (m * m + s**4 * hb * hb * t * t)) / (s * m)


# Ratio between the closed-form amplitude and the raw integral.
def _integral_prefactor(params: WavePacketParams) -> float:
    return math.sqrt(params.sigma) / (math.pi**0.25 * math.sqrt(params.k0) * math.sqrt(2 * math.pi))


def _oscillations(params: WavePacketParams, x, t, half_width: float) -> float:
    """Rough count of integrand phase turns across ``k0 +/- half_width sigma``."""
    s, m, hb = params.sigma, params.m, params.hbar
    xm = np.abs(np.asarray(x) - hb * params.k0 * np.asarray(t) / m)
    slope = xm + hb * half_width * s * np.abs(np.asarray(t)) / m
    return float(np.max(slope * 2 * half_width * s / (2 * math.pi)))


def _phase_factor(params: WavePacketParams, k: np.ndarray, x: np.ndarray, t: np.ndarray) -> np.ndarray:
    return np.exp(1j * (np.multiply.outer(x, k) - params.hbar * np.multiply.outer(t, k * k) / (2 * params.m)))


def _hermite(params: WavePacketParams, x, t, nodes: int) -> np.ndarray:
    y, w = np.polynomial.hermite.hermgauss(nodes)
    k = params.k0 + math.sqrt(2) * params.sigma * y
    vals = _phase_factor(params, k, x, t) @ w
    return math.sqrt(2) * params.sigma * vals


def _simpson(params: WavePacketParams, x, t, points: int, half_width: float) -> np.ndarray:
    points += 1 - points % 2
    k = np.linspace(params.k0 - half_width * params.sigma, params.k0 + half_width * params.sigma, points)
    weight = np.exp(-((k - params.k0) ** 2) / (2 * params.sigma**2))
    return simpson(_phase_factor(params, k, x, t) * weight, x=k, axis=-1)


def quadrature_values(params: WavePacketParams, x, t, quad: QuadratureSpec | None = None) -> np.ndarray:
    """Numerical packet on arrays ``x``, ``t`` (broadcast), as complex values."""
    quad = quad or QuadratureSpec()
    if quad.nodes < 64:
        raise AccuracyError(f"at least 64 quadrature nodes are required, got {quad.nodes}")
    x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    method = quad.method
    if method in ("auto", "hermite"):
        reach = float(np.max(np.polynomial.hermite.hermgauss(quad.nodes)[0])) * math.sqrt(2)
        turns = _oscillations(params, x, t, min(reach, 8.0))
        if method == "auto" and turns > quad.nodes / 8:
            method = "simpson"
        else:
            method, half_width = "hermite", reach
    if method == "simpson":
        half_width = quad.half_width
        turns = _oscillations(params, x, t, half_width)
        points = max(quad.nodes, int(math.ceil(32 * turns)) + 1)
    if half_width < 6.0 or erfc(half_width / math.sqrt(2)) > TAIL_MASS_LIMIT:
        raise AccuracyError(
            f"integration range of {half_width:.3g} sigma leaves a Gaussian tail above {TAIL_MASS_LIMIT:g}"
        )
    if method == "hermite":
        raw = _hermite(params, x, t, quad.nodes)
    else:
        raw = _simpson(params, x, t, points, half_width)
    return _integral_prefactor(params) * raw


def propagate_quadrature(
    params: WavePacketParams, x: float, t: float, quad: QuadratureSpec | None = None
) -> ComplexLike:
    return ComplexLike.from_complex(complex(quadrature_values(params, x, t, quad)))


def fit_spread(params: WavePacketParams, t: float, samples: int = 101, quad: QuadratureSpec | None = None) -> float:
    """Least-squares Gaussian width of ``|psi|^2`` computed by quadrature.

    ``log|psi|^2`` is fitted with a parabola over two spreads either side of
    the packet centre; ``|psi|^2 ~ exp(-2 x_m^2 / s^2)`` gives ``s``.
    """
    centre = params.group_velocity * t
    half = 2 * spread(params, t)
    x = np.linspace(centre - half, centre + half, samples)
    dens = np.abs(quadrature_values(params, x, t, quad)) ** 2
    curvature = np.polyfit(x - centre, np.log(dens), 2)[0]
    if curvature >= 0:
        raise AccuracyError("packet density is not peaked")
    return math.sqrt(-2.0 / curvature)


def norm_integral(params: WavePacketParams, t: float, samples: int = 2001, width: float = 8.0,
                  quad: QuadratureSpec | None = None) -> float:
    """Trapezoid estimate of ``integral |psi|^2 dx`` over ``width`` spreads around the centre."""
    centre = params.group_velocity * t
    half = width * spread(params, t)
    x = np.linspace(centre - half, centre + half, samples)
    dens = np.abs(quadrature_values(params, x, t, quad)) ** 2
    return float(trapezoid(dens, x))


def phase_rotation_rate(params: WavePacketParams, t_window: tuple[float, float], samples: int | None = None) -> float:
    """Slope of the unwrapped phase of ``psi`` at the packet centre over ``t_window``.

    Approaches ``hbar k0^2 / (2 m)`` once the ``arctan`` transient near
    ``t = 0`` has died away.
    """
    if not params.narrow:
        raise ArgumentError(f"narrow-packet regime needs k0/sigma >= {NARROW_PACKET_RATIO}, got {params.A_ratio:.3g}")
    t0, t1 = (float(a) for a in t_window)
    if not 0 <= t0 < t1:
        raise ArgumentError(f"invalid time window {t_window!r}")
    if (t1 - t0) * params.w0 < 2 * math.pi:
        raise ArgumentError("time window is shorter than one phase rotation")
    if samples is None:
        # Keep consecutive phase steps well below pi so unwrapping is unambiguous.
        samples = max(64, int(math.ceil(8 * params.w0 * (t1 - t0) / math.pi)) + 1)
    t = np.linspace(t0, t1, samples)
    psi = closed_form_values(params, params.group_velocity * t, t)
    ph = np.unwrap(np.angle(psi))
    return float(np.polyfit(t, ph, 1)[0])
