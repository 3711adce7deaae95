"""Exponential maps of multivectors.

``exp_general`` sums the Taylor series with scaling and squaring and works for
any multivector, including mixed vector + bivector generators.  The closed
forms ``exp_vector`` (boosts) and ``exp_bivector`` (rotors) are what the rest
of the package uses in production.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import Multivector, as_vec3
from .errors import ArgumentError, ConvergenceError, SuperluminalError

__all__ = [
    "AXIS_TOL",
    "Rapidity",
    "exp_bivector",
    "exp_general",
    "exp_vector",
    "rapidity_from_speed",
    "unit_axis",
]

AXIS_TOL = 1e-12
DEFAULT_TOL = 1e-14
MAX_TERMS = 200


def unit_axis(axis, name: str = "axis") -> np.ndarray:
    """Return ``axis`` as an array after checking it has unit length."""
    a = as_vec3(axis)
    if abs(float(np.linalg.norm(a)) - 1.0) > AXIS_TOL:
        raise ArgumentError(f"{name} must be a unit vector, |{name}| = {np.linalg.norm(a)!r}")
    return a


@dataclass(frozen=True)
class Rapidity:
    """Boost rapidity ``phi`` along the unit direction ``axis``."""

    phi: float
    axis: tuple[float, float, float]

    def __post_init__(self):
        if not math.isfinite(self.phi):
            raise ArgumentError("rapidity must be finite")
        object.__setattr__(self, "axis", tuple(float(x) for x in unit_axis(self.axis)))

    @classmethod
    def from_velocity(cls, v, c: float = 1.0) -> "Rapidity":
        v = as_vec3(v)
        speed = float(np.linalg.norm(v))
        if speed == 0.0:
            return cls(0.0, (1.0, 0.0, 0.0))
        return cls(rapidity_from_speed(speed / c), tuple(v / speed))

    def exp(self) -> Multivector:
        return exp_vector(self.phi, self.axis)


def _series(M: Multivector, tol: float, max_terms: int) -> Multivector:
    total = np.zeros(8)
    total[0] = 1.0
    term = Multivector(1.0)
    for n in range(1, max_terms + 1):
        term = (term * M) / n
        total = total + term.coeffs
        if term.max_abs() < tol * np.max(np.abs(total)):
            return Multivector.from_coeffs(total)
    raise ConvergenceError(f"exponential series did not converge in {max_terms} terms")


def exp_general(M: Multivector, tol: float = DEFAULT_TOL, max_terms: int = MAX_TERMS) -> Multivector:
    """Exponential of an arbitrary multivector by its Taylor series.

    The argument is halved until its largest coefficient is below 0.5, the
    series is summed, and the result squared back up the same number of times.
    """
    if not tol > 0:
        raise ArgumentError(f"tol must be positive, got {tol!r}")
    size = M.max_abs()
    if size == 0.0:
        return Multivector(1.0)
    halvings = 0
    while size / 2.0**halvings >= 0.5:
        halvings += 1
    result = _series(M / 2.0**halvings, tol, max_terms)
    for _ in range(halvings):
        result = result * result
    return result


def exp_vector(phi: float, axis) -> Multivector:
    """``exp(phi * axis) = cosh(phi) + axis sinh(phi)`` for a unit vector axis."""
    a = unit_axis(axis)
    return Multivector(math.cosh(phi), a * math.sinh(phi))


def exp_bivector(theta: float, axis) -> Multivector:
    """``exp(i axis theta) = cos(theta) + i axis sin(theta)``."""
    a = unit_axis(axis)
    return Multivector(math.cos(theta), b=a * math.sin(theta))


def rapidity_from_speed(speed_ratio: float) -> float:
    """Rapidity ``atanh(|v|/c)``; its cosh is the Lorentz factor."""
    if not 0.0 <= speed_ratio:
        raise ArgumentError(f"speed ratio must be non-negative, got {speed_ratio!r}")
    if speed_ratio >= 1.0:
        raise SuperluminalError(f"speed ratio {speed_ratio!r} is not below 1")
    return math.atanh(speed_ratio)
