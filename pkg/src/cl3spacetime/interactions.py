"""Conservation of momentum multivectors and Compton scattering."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import Multivector
from .errors import ArgumentError, InvariantError, UnitError
from .spacetime import MomentumMultivector, photon_momentum

__all__ = [
    "InteractionLedger",
    "compton_solve_multivector",
    "compton_wavelength_shift",
    "conservation_residual",
]


@dataclass(frozen=True)
class InteractionLedger:
    initial: tuple[MomentumMultivector, ...]
    final: tuple[MomentumMultivector, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "initial", tuple(self.initial))
        object.__setattr__(self, "final", tuple(self.final))

    def residual(self) -> Multivector:
        return conservation_residual(self)

    def is_conserved(self, atol: float = 1e-10) -> bool:
        return self.residual().max_abs() <= atol


def conservation_residual(ledger: InteractionLedger) -> Multivector:
    """``sum(initial) - sum(final)``; the zero multivector when conserved."""
    if not ledger.initial or not ledger.final:
        raise ArgumentError("an interaction needs at least one initial and one final state")
    speeds = {P.c for P in ledger.initial + ledger.final}
    if len(speeds) != 1:
        raise UnitError(f"momenta carry different values of c: {sorted(speeds)}")
    total = Multivector()
    for P in ledger.initial:
        total = total + P.as_multivector()
    for P in ledger.final:
        total = total - P.as_multivector()
    return total


def _check_compton_args(lambda_i, m, h, c):
    for name, value in (("lambda_i", lambda_i), ("m", m), ("h", h), ("c", c)):
        if not (math.isfinite(value) and value > 0):
            raise ArgumentError(f"{name} must be positive, got {value!r}")


def compton_wavelength_shift(lambda_i: float, theta: float, m: float, h: float, c: float) -> float:
    """Compton's ``lambda_f - lambda_i = h / (m c) (1 - cos theta)``."""
    _check_compton_args(lambda_i, m, h, c)
    return h / (m * c) * (1.0 - math.cos(theta))


_E1 = np.array([1.0, 0.0, 0.0])
_E3 = np.array([0.0, 0.0, 1.0])


def _scattered_photon(q: float, theta: float, c: float) -> MomentumMultivector:
    return photon_momentum(q * np.array([math.cos(theta), math.sin(theta), 0.0]), _E3, c)


def compton_solve_multivector(
    lambda_i: float, theta: float, m: float, h: float, c: float
) -> tuple[float, InteractionLedger]:
    """Solve Compton scattering from ``Gamma_i + P_i = Gamma_f + P_f``.

    The incoming photon travels along e1, the scattering plane is e1-e2 and
    both photon energy vectors point along e3, as does the rest energy of the
    target electron.  Squaring the conservation law and using
    ``P_f^2 = -m^2 c^2`` leaves a relation that is affine in the scattered
    photon momentum ``q``; it is evaluated with the multivector product at two
    values of ``q`` and solved.  The final electron is whatever the ledger
    requires, and its on-shell condition is checked afterwards.
    """
    _check_compton_args(lambda_i, m, h, c)
    p_i = h / lambda_i
    photon_in = photon_momentum(p_i * _E1, _E3, c)
    electron_in = MomentumMultivector((0.0, 0.0, 0.0), tuple(m * c * c * _E3), c)
    Gi = photon_in.as_multivector()
    Pi = electron_in.as_multivector()
    target = -((m * c) ** 2)

    def mismatch(q: float) -> float:
        D = Gi - _scattered_photon(q, theta, c).as_multivector()
        sq = D * D + Pi * D + D * Pi + Pi * Pi
        return sq.s - target

    f0, f1 = mismatch(0.0), mismatch(p_i)
    slope = (f1 - f0) / p_i
    if slope <= 0:
        raise InvariantError("conservation relation has no positive root")
    q = -f0 / slope
    # The relation must be affine in q for the two-point solve to be exact.
    if abs(mismatch(q)) > 1e-9 * max(abs(f0), abs(target)):
        raise InvariantError("conservation relation is not affine in the photon momentum")

    photon_out = _scattered_photon(q, theta, c)
    Pf = Gi + Pi - photon_out.as_multivector()
    scale = Pf.max_abs()
    if abs(Pf.s) > 1e-12 * scale or abs(Pf.p) > 1e-12 * scale:
        raise InvariantError(f"final electron multivector has scalar/trivector parts: {Pf!r}")
    electron_out = MomentumMultivector(tuple(Pf.v), tuple(Pf.b * c), c)
    sq = electron_out.square()
    on_shell = abs(sq.s - target) + np.abs(sq.coeffs[1:]).max()
    if on_shell > 1e-9 * max(abs(target), float(np.dot(Pf.coeffs, Pf.coeffs))):
        raise InvariantError(f"final electron is off shell by {on_shell!r}")
    ledger = InteractionLedger((photon_in, electron_in), (photon_out, electron_out))
    return h / q, ledger
