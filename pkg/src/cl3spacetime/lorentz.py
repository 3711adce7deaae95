"""Lorentz operators, field and coordinate boosts, reflections and rotations.

Every transformation here is a conjugation ``X -> L X L_dagger`` with
``L L_dagger = 1``.  Public functions take the full rapidity and the full
rotation angle; the half-angle factors are applied internally, so that

* a pure rotation by ``theta`` about ``w`` turns vectors anticlockwise by
  ``theta`` about ``w``;
* a pure boost by rapidity ``phi`` along ``v`` maps fields and events into
  the frame moving with velocity ``c tanh(phi) v``.

Fields are boosted along the velocity itself.  Events are boosted along the
unit vector ``v_perp`` obtained from the position's component orthogonal to
the velocity, which is what reproduces the textbook coordinate boost.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .algebra import DEFAULT_ATOL, Multivector, as_vec3, vector
from .errors import ArgumentError, DegenerateGeometryError, InvariantError
from .exponential import exp_bivector, exp_general, exp_vector, unit_axis
from .spacetime import ORTHOGONALITY_RTOL, Event, _check_c, gamma

__all__ = [
    "FieldMultivector",
    "LorentzOperator",
    "aligned_event",
    "boost_event",
    "boost_event_components",
    "boost_field",
    "boost_perpendicular_axis",
    "make_operator",
    "reflect",
    "rotate",
    "thomas_operator",
]


@dataclass(frozen=True)
class LorentzOperator:
    """Conjugation operator with ``L * L_dagger == 1``."""

    L: Multivector
    L_dagger: Multivector

    def __post_init__(self):
        err = (self.L * self.L_dagger - 1.0).max_abs()
        if err > DEFAULT_ATOL * max(1.0, self.L.max_abs() * self.L_dagger.max_abs()):
            raise InvariantError(f"L L_dagger differs from 1 by {err!r}")

    def apply(self, X: Multivector) -> Multivector:
        return self.L * X * self.L_dagger

    def apply_event(self, X: Event) -> Event:
        return Event.from_multivector(self.apply(X.as_multivector()), X.c, atol=1e-10)

    def compose(self, other: "LorentzOperator") -> "LorentzOperator":
        """Operator equal to applying ``other`` first and then ``self``."""
        return LorentzOperator(self.L * other.L, other.L_dagger * self.L_dagger)


def make_operator(phi: float, v_hat, theta: float, w_hat) -> LorentzOperator:
    """Boost with rapidity ``phi`` along ``v_hat`` after a rotation by ``theta`` about ``w_hat``."""
    v_hat = unit_axis(v_hat, "v_hat")
    w_hat = unit_axis(w_hat, "w_hat")
    L = exp_vector(-phi / 2, v_hat) * exp_bivector(-theta / 2, w_hat)
    L_dagger = exp_bivector(theta / 2, w_hat) * exp_vector(phi / 2, v_hat)
    return LorentzOperator(L, L_dagger)


def thomas_operator(phi: float, v_hat, theta: float, w_hat) -> LorentzOperator:
    """Single exponential of the mixed generator ``phi v_hat + i w_hat theta``.

    The generator commutes with its own negative, so ``exp(-G/2)`` and
    ``exp(G/2)`` are exact inverses even though the factors do not split.
    """
    v_hat = unit_axis(v_hat, "v_hat")
    w_hat = unit_axis(w_hat, "w_hat")
    G = Multivector(v=phi * v_hat, b=theta * w_hat)
    return LorentzOperator(exp_general(-G / 2.0), exp_general(G / 2.0))


@dataclass(frozen=True)
class FieldMultivector:
    """Electromagnetic field ``F = E + i c B``."""

    E: tuple[float, float, float]
    B: tuple[float, float, float]
    c: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "E", tuple(float(a) for a in as_vec3(self.E)))
        object.__setattr__(self, "B", tuple(float(a) for a in as_vec3(self.B)))
        object.__setattr__(self, "c", _check_c(self.c))

    def as_multivector(self) -> Multivector:
        return Multivector(v=self.E, b=self.c * np.array(self.B))

    @classmethod
    def from_multivector(cls, F: Multivector, c: float = 1.0, atol: float = 1e-10) -> "FieldMultivector":
        scale = max(1.0, F.max_abs())
        if abs(F.s) > atol * scale or abs(F.p) > atol * scale:
            raise InvariantError(f"field multivector acquired scalar/trivector parts: {F!r}")
        return cls(tuple(F.v), tuple(F.b / c), c)

    def to_dict(self) -> dict:
        return {"E": list(self.E), "B": list(self.B), "c": self.c}

    @classmethod
    def from_dict(cls, data: Mapping) -> "FieldMultivector":
        if not isinstance(data, Mapping):
            raise ArgumentError("field JSON must be an object")
        unknown = set(data) - {"E", "B", "c"}
        if unknown:
            raise ArgumentError(f"unknown field key(s): {sorted(unknown)}")
        vals = {}
        for key in ("E", "B"):
            value = data.get(key, [0.0, 0.0, 0.0])
            if not isinstance(value, list) or len(value) != 3 or not all(
                isinstance(a, (int, float)) and not isinstance(a, bool) for a in value
            ):
                raise ArgumentError(f"field key '{key}' must be a list of 3 numbers")
            vals[key] = tuple(float(a) for a in value)
        c = data.get("c", 1.0)
        if isinstance(c, bool) or not isinstance(c, (int, float)):
            raise ArgumentError("field key 'c' must be a number")
        return cls(vals["E"], vals["B"], float(c))


def boost_field(F: FieldMultivector, phi: float, v_hat) -> FieldMultivector:
    """Fields seen from the frame moving with rapidity ``phi`` along ``v_hat``."""
    v_hat = unit_axis(v_hat, "v_hat")
    Fm = F.as_multivector()
    out = exp_vector(-phi / 2, v_hat) * Fm * exp_vector(phi / 2, v_hat)
    return FieldMultivector.from_multivector(out, F.c)


def boost_perpendicular_axis(x, v_hat) -> tuple[np.ndarray, np.ndarray]:
    """Unit vectors ``v_perp`` and ``t_hat`` used by the coordinate boost.

    ``v_perp`` is the normalised component of ``x`` orthogonal to ``v_hat`` and
    ``t_hat = v_perp x v_hat`` is the time direction the event must carry.
    """
    x = as_vec3(x)
    v_hat = unit_axis(v_hat, "v_hat")
    x_perp = x - np.dot(x, v_hat) * v_hat
    n = float(np.linalg.norm(x_perp))
    if n <= 1e-12 * max(1.0, float(np.linalg.norm(x))):
        raise DegenerateGeometryError(
            "position is parallel to the boost direction so v_perp is undefined; "
            "use boost_event_components for this case"
        )
    v_perp = x_perp / n
    return v_perp, np.cross(v_perp, v_hat)


def aligned_event(x, t: float, v_hat, c: float = 1.0) -> Event:
    """Event at ``x`` whose time vector is ``t`` times the boost time direction."""
    _, t_hat = boost_perpendicular_axis(x, v_hat)
    return Event(tuple(as_vec3(x)), tuple(t * t_hat), c)


def boost_event(X: Event, phi: float, v_hat) -> Event:
    """Coordinates of ``X`` in the frame moving with rapidity ``phi`` along ``v_hat``.

    The time vector of ``X`` must lie along ``t_hat`` from
    :func:`boost_perpendicular_axis` (any sign, including zero length);
    its signed length along ``t_hat`` is the ordinary coordinate time.
    """
    v_perp, t_hat = boost_perpendicular_axis(X.x, v_hat)
    t = X.t_vec
    off_axis = t - np.dot(t, t_hat) * t_hat
    if np.linalg.norm(off_axis) > ORTHOGONALITY_RTOL * max(1.0, float(np.linalg.norm(t))):
        raise ArgumentError(
            "event time vector must lie along v_perp x v_hat for a coordinate boost; "
            "build the event with aligned_event"
        )
    out = exp_vector(-phi / 2, v_perp) * X.as_multivector() * exp_vector(phi / 2, v_perp)
    return Event.from_multivector(out, X.c, atol=1e-10)


def boost_event_components(x, t: float, v, c: float = 1.0) -> tuple[np.ndarray, float]:
    """Textbook boost of position ``x`` and scalar time ``t`` by velocity ``v``.

    Works for every geometry, including ``x`` parallel to ``v``.
    """
    x, v = as_vec3(x), as_vec3(v)
    g = gamma(v, c)
    speed = float(np.linalg.norm(v))
    if speed == 0.0:
        return x.copy(), float(t)
    n = v / speed
    x_par = float(np.dot(x, n))
    x_new = x + ((g - 1.0) * x_par - g * speed * t) * n
    t_new = g * (t - speed * x_par / (c * c))
    return x_new, t_new


def reflect(I, n) -> Multivector:
    """Reflect the vector ``I`` in the plane with unit normal ``n``: ``-n I n``."""
    n = vector(unit_axis(n, "n"))
    I = vector(as_vec3(I))
    return (-(n * I * n)).grade(1)


def rotate(v, theta: float, u_hat) -> Multivector:
    """Rotate ``v`` anticlockwise by ``theta`` about the unit axis ``u_hat``."""
    u_hat = unit_axis(u_hat, "u_hat")
    v = vector(as_vec3(v))
    out = exp_bivector(-theta / 2, u_hat) * v * exp_bivector(theta / 2, u_hat)
    return out.grade(1)

