"""Seeded numerical self-checks behind the ``check`` CLI subcommand.

Each suite returns a list of :class:`CheckResult`.  Residuals are maxima over
randomly drawn inputs; the draw order is fixed by the seed so reports are
reproducible byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import algebra as ga
from .exponential import exp_bivector, exp_general, exp_vector, rapidity_from_speed
from .interactions import compton_solve_multivector, compton_wavelength_shift
from .errors import CliffordError
from .lorentz import (
    FieldMultivector,
    aligned_event,
    boost_event,
    boost_event_components,
    boost_field,
    boost_perpendicular_axis,
    make_operator,
    rotate,
    thomas_operator,
)
from .schrodinger import (
    WavePacketParams,
    closed_form_values,
    fit_spread,
    phase_rotation_rate,
    quadrature_values,
    spread,
)
from .spacetime import (
    Event,
    default_time_direction,
    interval_squared,
    momentum,
    photon_momentum,
    proper_velocity,
)
from .waves import (
    GridSpec,
    WaveMultivector,
    current,
    dirac_equation_residual,
    dirac_factorization_residual,
    dispersion_residual,
    kg_residual,
    wave_from_momentum,
)

__all__ = ["CheckResult", "DEFAULT_TOLERANCES", "SUITES", "run_suites"]


@dataclass(frozen=True)
class CheckResult:
    check_name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)

    def to_dict(self) -> dict:
        return {
            "check_name": self.check_name,
            "residual": float(self.residual),
            "tolerance": float(self.tolerance),
            "pass": self.passed,
        }


DEFAULT_TOLERANCES = {
    "algebra.associativity": 1e-12,
    "algebra.generators": 0.0,
    "algebra.vector_product": 1e-12,
    "exponential.vector": 1e-12,
    "exponential.bivector": 1e-12,
    "exponential.gamma_0.6": 1e-15,
    "lorentz.rotation": 1e-10,
    "lorentz.field_boost": 1e-10,
    "lorentz.event_boost": 1e-10,
    "lorentz.interval": 1e-10,
    "kinematics.proper_velocity": 1e-12,
    "kinematics.momentum": 1e-12,
    "kinematics.photon": 1e-12,
    "compton.shift": 1e-12,
    "dispersion.on_shell": 1e-12,
    "kg.convergence_ratio": 0.3,
    "dirac.factorization": 1e-10,
    "dirac.chaining": 1e-10,
    "dirac.current": 1e-12,
    "schrodinger.quadrature": 1e-8,
    "schrodinger.spread": 1e-3,
    "schrodinger.phase_rate": 1e-2,
}


def _unit(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def _random_mv(rng: np.random.Generator) -> ga.Multivector:
    return ga.Multivector.from_coeffs(rng.uniform(-1, 1, 8))


def _rodrigues(v, theta, u):
    K = np.array([[0, -u[2], u[1]], [u[2], 0, -u[0]], [-u[1], u[0], 0]])
    R = np.eye(3) + math.sin(theta) * K + (1 - math.cos(theta)) * K @ K
    return R @ v


def suite_algebra(rng, n=200):
    assoc = 0.0
    vec = 0.0
    for _ in range(n):
        A, B, C = (_random_mv(rng) for _ in range(3))
        assoc = max(assoc, ((A * B) * C - A * (B * C)).max_abs())
        u, v = rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 3)
        uv = ga.vector(u) * ga.vector(v)
        expected = ga.Multivector(float(np.dot(u, v)), b=np.cross(u, v))
        vec = max(vec, (uv - expected).max_abs())
    gens = (ga.E1, ga.E2, ga.E3)
    axiom = 0.0
    for i, a in enumerate(gens):
        for j, b in enumerate(gens):
            target = ga.Multivector(1.0) if i == j else -(b * a)
            axiom = max(axiom, (a * b - target).max_abs())
    for blade in ga.BASIS:
        axiom = max(axiom, (ga.I * blade - blade * ga.I).max_abs())
    axiom = max(axiom, (ga.I * ga.I + 1.0).max_abs())
    return [
        ("algebra.associativity", assoc),
        ("algebra.generators", axiom),
        ("algebra.vector_product", vec),
    ]


def suite_exponential(rng, n=200):
    ev = eb = 0.0
    for _ in range(n):
        phi, axis = rng.uniform(-2, 2), _unit(rng)
        ev = max(ev, (exp_general(ga.vector(axis) * phi) - exp_vector(phi, axis)).max_abs())
        theta, axis = rng.uniform(-math.pi, math.pi), _unit(rng)
        gen = ga.Multivector(b=axis * theta)
        eb = max(eb, (exp_general(gen) - exp_bivector(theta, axis)).max_abs())
    g = abs(math.cosh(rapidity_from_speed(0.6)) - 1.25)
    return [("exponential.vector", ev), ("exponential.bivector", eb), ("exponential.gamma_0.6", g)]


def suite_lorentz(rng, n=200):
    rot = fb = eb = inter = 0.0
    for _ in range(n):
        v, theta, u = rng.uniform(-1, 1, 3), rng.uniform(-2 * math.pi, 2 * math.pi), _unit(rng)
        rot = max(rot, float(np.max(np.abs(rotate(v, theta, u).v - _rodrigues(v, theta, u)))))

        beta = rng.uniform(0.0, 0.9)
        axis = np.eye(3)[rng.integers(3)]
        E, B = rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 3)
        out = boost_field(FieldMultivector(E, B), rapidity_from_speed(beta), axis)
        vel = beta * axis
        g = 1 / math.sqrt(1 - beta**2)
        E_par, B_par = np.dot(E, axis) * axis, np.dot(B, axis) * axis
        E_ref = E_par + g * (E - E_par + np.cross(vel, B))
        B_ref = B_par + g * (B - B_par - np.cross(vel, E))
        fb = max(fb, float(np.max(np.abs(np.concatenate([out.E - E_ref, out.B - B_ref])))))

        x, t, v_hat = rng.uniform(-1, 1, 3), rng.uniform(-1, 1), _unit(rng)
        X = aligned_event(x, t, v_hat)
        Xb = boost_event(X, rapidity_from_speed(beta), v_hat)
        x_ref, t_ref = boost_event_components(x, t, beta * v_hat)
        _, t_hat = boost_perpendicular_axis(Xb.x, v_hat)
        eb = max(eb, float(np.max(np.abs(Xb.x_vec - x_ref))), abs(float(np.dot(Xb.t_vec, t_hat)) - t_ref),
                 abs(float(np.dot(Xb.x_vec, Xb.t_vec))))

        t_vec = rng.uniform(-1, 1, 3)
        t_vec -= np.dot(t_vec, x) / np.dot(x, x) * x
        Y = Event(x, t_vec)
        base = interval_squared(Y)
        for op in (
            make_operator(rng.uniform(-1, 1), _unit(rng), rng.uniform(-3, 3), _unit(rng)),
            thomas_operator(rng.uniform(-1, 1), _unit(rng), rng.uniform(-3, 3), _unit(rng)),
        ):
            Ym = op.apply(Y.as_multivector())
            sq = Ym * Ym
            dev = max(abs(sq.s - base), float(np.abs(sq.coeffs[1:]).max()))
            inter = max(inter, dev / max(abs(base), 1e-300))
    return [
        ("lorentz.rotation", rot),
        ("lorentz.field_boost", fb),
        ("lorentz.event_boost", eb),
        ("lorentz.interval", inter),
    ]


def _random_state(rng):
    speed = rng.uniform(0, 0.95)
    v = speed * _unit(rng)
    return v, default_time_direction(v)


def suite_kinematics(rng, n=200):
    pu = pm = pg = 0.0
    for _ in range(n):
        c = rng.uniform(0.5, 3.0)
        v, t_hat = _random_state(rng)
        v = v * c
        U = proper_velocity(v, t_hat, c)
        sq = U * U
        pu = max(pu, (abs(sq.s + c * c) + float(np.abs(sq.coeffs[1:]).max())) / (c * c))
        m = rng.uniform(0.1, 5.0)
        P = momentum(m, v, t_hat, c).square()
        pm = max(pm, (abs(P.s + (m * c) ** 2) + float(np.abs(P.coeffs[1:]).max())) / (m * c) ** 2)
        p = rng.uniform(-2, 2, 3)
        G = photon_momentum(p, default_time_direction(p), c).square()
        pg = max(pg, G.max_abs())
    return [("kinematics.proper_velocity", pu), ("kinematics.momentum", pm), ("kinematics.photon", pg)]


def suite_compton(rng, n=100):
    h, m, c = 2 * math.pi, 1.0, 1.0
    lam = h / (m * c)
    worst = 0.0
    for theta in np.linspace(math.pi / n, math.pi, n):
        lam_f, _ = compton_solve_multivector(lam, theta, m, h, c)
        ref = compton_wavelength_shift(lam, theta, m, h, c)
        worst = max(worst, abs((lam_f - lam) - ref) / ref)
    return [("compton.shift", worst)]


def suite_dispersion(rng, n=200):
    worst = 0.0
    for _ in range(n):
        m, hbar = rng.uniform(0.2, 3.0), rng.uniform(0.5, 2.0)
        v, t_hat = _random_state(rng)
        K = wave_from_momentum(momentum(m, v, t_hat), hbar)
        target = (m / hbar) ** 2
        worst = max(worst, abs(dispersion_residual(K, m, hbar)) / target)
    return [("dispersion.on_shell", worst)]


def suite_kg(rng):
    v, t_hat = _random_state(rng)
    m, hbar = 1.0, 1.0
    K = wave_from_momentum(momentum(m, v, t_hat), hbar)
    grid = GridSpec(h_space=0.02, h_time=0.02, samples=7)
    coarse = kg_residual(K, m, hbar, grid)
    fine = kg_residual(K, m, hbar, grid.halved())
    return [("kg.convergence_ratio", abs(coarse / fine - 4.0))]


def suite_dirac(rng, n=200):
    fac = chain = cur = 0.0
    for _ in range(n):
        m = rng.uniform(0.2, 3.0)
        v, t_hat = _random_state(rng)
        P = momentum(m, v, t_hat)
        fac = max(fac, dirac_factorization_residual(P, m).max_abs())
        psi = _random_mv(rng)
        M = ga.Multivector(b=m * _unit(rng))
        try:
            dirac_equation_residual(psi, P, M)
        except CliffordError:
            chain = math.inf
        K = P.as_multivector()
        chain = max(chain, ((K * K) * psi - psi * (M * M)).max_abs())
        J = current(psi)
        cur = max(cur, abs(J.rho - float(np.dot(psi.coeffs, psi.coeffs))))
    return [("dirac.factorization", fac), ("dirac.chaining", chain), ("dirac.current", cur)]


def suite_schrodinger(rng):
    params = WavePacketParams(sigma=1.0, k0=10.0, m=1.0, hbar=1.0)
    worst = 0.0
    for t in np.linspace(0.0, 2.0, 10):
        s = spread(params, t)
        x = np.linspace(params.group_velocity * t - 2 * s, params.group_velocity * t + 2 * s, 50)
        q, c = quadrature_values(params, x, t), closed_form_values(params, x, t)
        worst = max(worst, float(np.max(np.abs(np.abs(q) - np.abs(c)) / np.abs(c))))
    sp = max(abs(fit_spread(params, t) / spread(params, t) - 1) for t in (0.0, 1.0, 3.0))
    rate = phase_rotation_rate(params, (5.0, 10.0))
    return [
        ("schrodinger.quadrature", worst),
        ("schrodinger.spread", sp),
        ("schrodinger.phase_rate", abs(rate / params.w0 - 1)),
    ]


SUITES: dict[str, Callable] = {
    "algebra": suite_algebra,
    "exponential": suite_exponential,
    "lorentz": suite_lorentz,
    "kinematics": suite_kinematics,
    "compton": suite_compton,
    "dispersion": suite_dispersion,
    "kg": suite_kg,
    "dirac": suite_dirac,
    "schrodinger": suite_schrodinger,
}


def run_suites(names, seed: int, tolerances: dict[str, float] | None = None) -> list[CheckResult]:
    """Run the named suites, each with a generator derived from ``seed`` and the suite name."""
    tol = dict(DEFAULT_TOLERANCES)
    tol.update(tolerances or {})
    results = []
    order = list(SUITES)
    for name in names:
        rng = np.random.default_rng([seed, order.index(name)])
        for check_name, residual in SUITES[name](rng):
            results.append(CheckResult(check_name, float(residual), tol[check_name]))
    return results
