"""Events, intervals and momentum multivectors.

An event is the multivector ``X = x + i c t`` built from a position vector and
an orthogonal time vector.  Its square is the scalar ``x^2 - c^2 t^2``.
Momentum follows the same pattern, ``P = p + i E / c`` with ``p . E = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .algebra import DEFAULT_ATOL, Multivector, as_vec3
from .errors import ArgumentError, InvariantError, SuperluminalError, UnitError
from .exponential import unit_axis

__all__ = [
    "ORTHOGONALITY_RTOL",
    "Event",
    "MomentumMultivector",
    "default_time_direction",
    "event_from_proper_time",
    "gamma",
    "interval_squared",
    "momentum",
    "photon_momentum",
    "project_orthogonal",
    "proper_velocity",
    "spacetime_multivector",
]

#: Relative tolerance on ``|a . b| / (|a| |b|)`` for orthogonality checks.
ORTHOGONALITY_RTOL = 1e-9


def _direction(a: np.ndarray) -> np.ndarray:
    """Unit vector along ``a`` (zero for zero); rescales first so tiny inputs do not underflow."""
    big = float(np.max(np.abs(a)))
    if big == 0.0:
        return np.zeros(3)
    a = a / big
    return a / np.linalg.norm(a)


def _check_orthogonal(a: np.ndarray, b: np.ndarray, what: str, exc=InvariantError) -> None:
    cos = float(np.dot(_direction(a), _direction(b)))
    if abs(cos) > ORTHOGONALITY_RTOL:
        raise exc(f"{what} must be orthogonal (dot = {float(np.dot(a, b))!r})")


def _check_c(c: float) -> float:
    c = float(c)
    if not (math.isfinite(c) and c > 0):
        raise UnitError(f"speed of light must be positive and finite, got {c!r}")
    return c


def spacetime_multivector(space, time, c: float = 1.0) -> Multivector:
    """``space + i c time`` with no orthogonality check."""
    return Multivector(v=as_vec3(space), b=c * as_vec3(time))


def project_orthogonal(x, t) -> np.ndarray:
    """Component of the time vector ``t`` orthogonal to ``x``.

    Events never project silently; callers who want this must ask for it.
    """
    x, t = as_vec3(x), as_vec3(t)
    xx = float(np.dot(x, x))
    if xx == 0.0:
        return t
    return t - (np.dot(x, t) / xx) * x


@dataclass(frozen=True)
class Event:
    """Spacetime point with position ``x``, time vector ``t`` and light speed ``c``."""

    x: tuple[float, float, float]
    t: tuple[float, float, float]
    c: float = 1.0

    def __post_init__(self):
        x, t = as_vec3(self.x), as_vec3(self.t)
        object.__setattr__(self, "x", tuple(float(a) for a in x))
        object.__setattr__(self, "t", tuple(float(a) for a in t))
        object.__setattr__(self, "c", _check_c(self.c))
        _check_orthogonal(x, t, "position and time vectors")

    @property
    def x_vec(self) -> np.ndarray:
        return np.array(self.x)

    @property
    def t_vec(self) -> np.ndarray:
        return np.array(self.t)

    def as_multivector(self) -> Multivector:
        return spacetime_multivector(self.x, self.t, self.c)

    @classmethod
    def from_multivector(cls, X: Multivector, c: float = 1.0, atol: float = DEFAULT_ATOL) -> "Event":
        """Read ``x`` from the vector part and ``t`` from the bivector part."""
        scale = max(1.0, X.max_abs())
        if abs(X.s) > atol * scale or abs(X.p) > atol * scale:
            raise InvariantError(f"event multivector has scalar/trivector parts: {X!r}")
        return cls(tuple(X.v), tuple(X.b / c), c)

    def to_dict(self) -> dict:
        return {"x": list(self.x), "t": list(self.t), "c": self.c}

    @classmethod
    def from_dict(cls, data: Mapping) -> "Event":
        if not isinstance(data, Mapping):
            raise ArgumentError("event JSON must be an object")
        unknown = set(data) - {"x", "t", "c"}
        if unknown:
            raise ArgumentError(f"unknown event field(s): {sorted(unknown)}")
        for key in ("x", "t"):
            if key not in data:
                raise ArgumentError(f"event field '{key}' is required")
            value = data[key]
            if not isinstance(value, list) or len(value) != 3 or not all(
                isinstance(a, (int, float)) and not isinstance(a, bool) for a in value
            ):
                raise ArgumentError(f"event field '{key}' must be a list of 3 numbers")
        c = data.get("c", 1.0)
        if isinstance(c, bool) or not isinstance(c, (int, float)):
            raise ArgumentError("event field 'c' must be a number")
        return cls(tuple(data["x"]), tuple(data["t"]), float(c))


def interval_squared(X: Event, atol: float = DEFAULT_ATOL) -> float:
    """``x^2 - c^2 t^2`` evaluated as the square of the event multivector."""
    M = X.as_multivector()
    sq = M * M
    scale = max(1.0, abs(sq.s), float(np.dot(X.x_vec, X.x_vec)), X.c**2 * float(np.dot(X.t_vec, X.t_vec)))
    rest = np.abs(sq.coeffs[1:]).max()
    if rest > max(atol, 2 * ORTHOGONALITY_RTOL) * scale:
        raise InvariantError(f"event square is not a scalar (non-scalar residue {rest!r})")
    return sq.s


def gamma(v, c: float = 1.0) -> float:
    """Lorentz factor ``1 / sqrt(1 - v^2 / c^2)``."""
    c = _check_c(c)
    speed2 = float(np.dot(as_vec3(v), as_vec3(v)))
    if speed2 >= c * c:
        raise SuperluminalError(f"|v| = {math.sqrt(speed2)!r} is not below c = {c!r}")
    return 1.0 / math.sqrt(1.0 - speed2 / (c * c))


def default_time_direction(v) -> np.ndarray:
    """Unit time direction orthogonal to ``v``.

    Uses the normalised part of e3 orthogonal to ``v``, or e2 when ``v`` is
    parallel to e3.  This is a gauge choice.
    """
    v = as_vec3(v)
    v_hat = _direction(v)
    for candidate in (np.array([0.0, 0.0, 1.0]), np.array([0.0, 1.0, 0.0])):
        perp = candidate - np.dot(candidate, v_hat) * v_hat
        n = float(np.linalg.norm(perp))
        if n > 1e-12:
            perp = perp / n
            # A second projection removes the error left by cancellation when
            # v is nearly parallel to the candidate.
            perp = perp - np.dot(perp, v_hat) * v_hat
            return perp / np.linalg.norm(perp)
    raise AssertionError("unreachable: e2 and e3 cannot both be parallel to v")


def proper_velocity(v, t_hat, c: float = 1.0) -> Multivector:
    """``U = gamma (v + i c t_hat)``, whose square is ``-c^2``."""
    v = as_vec3(v)
    t_hat = unit_axis(t_hat, "t_hat")
    _check_orthogonal(v, t_hat, "velocity and time direction", ArgumentError)
    g = gamma(v, c)
    return Multivector(v=g * v, b=g * c * t_hat)


@dataclass(frozen=True)
class MomentumMultivector:
    """``P = p + i E / c`` with relativistic momentum ``p`` and energy vector ``E``."""

    p: tuple[float, float, float]
    E: tuple[float, float, float]
    c: float = 1.0

    def __post_init__(self):
        p, E = as_vec3(self.p), as_vec3(self.E)
        object.__setattr__(self, "p", tuple(float(a) for a in p))
        object.__setattr__(self, "E", tuple(float(a) for a in E))
        object.__setattr__(self, "c", _check_c(self.c))
        _check_orthogonal(p, E, "momentum and energy vectors")

    @property
    def p_vec(self) -> np.ndarray:
        return np.array(self.p)

    @property
    def E_vec(self) -> np.ndarray:
        return np.array(self.E)

    @property
    def energy(self) -> float:
        return float(np.linalg.norm(self.E))

    def as_multivector(self) -> Multivector:
        return Multivector(v=self.p, b=self.E_vec / self.c)

    @classmethod
    def from_multivector(cls, P: Multivector, c: float = 1.0, atol: float = DEFAULT_ATOL) -> "MomentumMultivector":
        scale = max(1.0, P.max_abs())
        if abs(P.s) > atol * scale or abs(P.p) > atol * scale:
            raise InvariantError(f"momentum multivector has scalar/trivector parts: {P!r}")
        return cls(tuple(P.v), tuple(P.b * c), c)

    def square(self) -> Multivector:
        P = self.as_multivector()
        return P * P

    def mass(self) -> float:
        """Invariant mass from ``P^2 = -m^2 c^2`` (zero for null momenta)."""
        sq = -self.square().s
        return math.sqrt(max(sq, 0.0)) / self.c


def momentum(m: float, v, t_hat, c: float = 1.0) -> MomentumMultivector:
    """Momentum multivector of a particle of mass ``m`` moving at ``v``."""
    if not m > 0:
        raise ArgumentError(f"mass must be positive, got {m!r}")
    c = _check_c(c)
    v = as_vec3(v)
    t_hat = unit_axis(t_hat, "t_hat")
    _check_orthogonal(v, t_hat, "velocity and time direction", ArgumentError)
    g = gamma(v, c)
    return MomentumMultivector(tuple(g * m * v), tuple(g * m * c * c * t_hat), c)


def photon_momentum(p, c_hat, c: float = 1.0) -> MomentumMultivector:
    """Null momentum ``p + i |p| c_hat`` of a photon (energy ``|p| c``)."""
    p = as_vec3(p)
    c_hat = unit_axis(c_hat, "c_hat")
    _check_orthogonal(p, c_hat, "photon momentum and energy direction", ArgumentError)
    c = _check_c(c)
    return MomentumMultivector(tuple(p), tuple(float(np.linalg.norm(p)) * c * c_hat), c)


def event_from_proper_time(tau: float, v, c: float = 1.0, t_hat=None) -> Event:
    """Event reached after proper time ``tau`` moving with constant ``v`` from the origin.

    The coordinate time vector has length ``gamma * tau``.
    """
    v = as_vec3(v)
    t_hat = default_time_direction(v) if t_hat is None else unit_axis(t_hat, "t_hat")
    g = gamma(v, c)
    elapsed = g * tau
    return Event(tuple(v * elapsed), tuple(t_hat * elapsed), c)
