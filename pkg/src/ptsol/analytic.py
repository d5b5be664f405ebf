"""Closed-form Gaussian modes, their diagnostics, and the residual check.

1D mode:  phi(x) = phi0 exp(-a^2 x^2/m) exp(i c erf(a x)),
2D mode:  phi(x, y) = phi0 exp(-a^2 r^2/m) exp(i c [erf(a x) + erf(a y)]),
with c = m W0 sqrt(pi) / (4 a^3 (m+2)).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BoundaryLeak, SignConditionViolated
from .model import ModelSpec, PotentialParams1D, PotentialParams2D, potential_on_grid
from .spectral import boundary_modulus, first_derivative, second_derivative
from .special import erf

LEAK_TOLERANCE = 1e-8


def phase_coefficient(m, a, W0):
    return m * W0 * math.sqrt(math.pi) / (4 * a ** 3 * (m + 2))


def phase_potential(m, a, W0):
    """Strength m^2 W0^2 / (4 a^4 (m+2)^2) of the exp(-2a^2x^2) term the phase induces."""
    return m ** 2 * W0 ** 2 / (4 * a ** 4 * (m + 2) ** 2)


def beta_2d_candidates(m, a):
    return {"printed": -4 * a ** 4 / m, "derived": -4 * a ** 2 / m}


@dataclass(frozen=True)
class AnalyticSoliton1D:
    phi0: float
    a: float
    m: int
    sigma: int
    W0: float
    phase_coeff: float
    beta: float
    V1: float
    notes: tuple = field(default=(), compare=False)

    dimension = 1


@dataclass(frozen=True)
class AnalyticSoliton2D:
    phi0: float
    a: float
    m: int
    sigma: int
    W0: float
    phase_coeff: float
    beta: float
    V1: float
    V2: float
    notes: tuple = field(default=(), compare=False)

    dimension = 2


def _check_common(m, sigma, a):
    if int(m) != m or m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    if sigma not in (-1, 1):
        raise ValueError(f"sigma must be +1 or -1, got {sigma}")
    if not a > 0:
        raise ValueError(f"a must be positive, got {a}")


def construct_soliton_1d(m, sigma, a, V1, W0):
    _check_common(m, sigma, a)
    V2 = phase_potential(m, a, W0)
    amp = (V2 - V1) / sigma
    if amp <= 0:
        raise SignConditionViolated(
            f"sigma*phi0^(2m) = {V2 - V1:.6g} has the wrong sign for sigma={sigma:+d}; "
            f"no Gaussian mode exists (need sign(V2 - V1) = sign(sigma), V2={V2:.6g})"
        )
    V0 = -4 * a ** 4 / m ** 2
    sol = AnalyticSoliton1D(
        phi0=amp ** (1.0 / (2 * m)),
        a=a,
        m=int(m),
        sigma=int(sigma),
        W0=W0,
        phase_coeff=phase_coefficient(m, a, W0),
        beta=-2 * a ** 2 / m,
        V1=V1,
        notes=(f"V0 set to -4a^4/m^2 = {V0:.12g}",),
    )
    return sol, PotentialParams1D(V0=V0, V1=V1, W0=W0, a=a)


def construct_soliton_2d(m, sigma, a, V1, W0, beta="derived"):
    """2D mode; `beta` picks the propagation-constant candidate by name.

    Only "derived" (-4a^2/m) satisfies the stationary equation; "printed"
    (-4a^4/m) is kept so the residual check can show it failing.
    """
    _check_common(m, sigma, a)
    if V1 == 0 or math.copysign(1, V1) != sigma:
        raise SignConditionViolated(
            f"2D mode needs sign(V1) = sign(sigma); got V1={V1}, sigma={sigma:+d}"
        )
    V0 = -4 * a ** 4 / m ** 2
    V2 = phase_potential(m, a, W0)
    sol = AnalyticSoliton2D(
        phi0=abs(V1) ** (1.0 / (2 * m)),
        a=a,
        m=int(m),
        sigma=int(sigma),
        W0=W0,
        phase_coeff=phase_coefficient(m, a, W0),
        beta=beta_2d_candidates(m, a)[beta],
        V1=V1,
        V2=V2,
        notes=(f"V0 set to {V0:.12g}", f"V2 set to {V2:.12g}", f"beta candidate: {beta}"),
    )
    return sol, PotentialParams2D(V0=V0, V1=V1, V2=V2, W0=W0, a=a)


def exact_mode(dimension, m, sigma, a, V1, W0):
    """Construct the closed-form mode and its ModelSpec in one call."""
    if dimension == 1:
        sol, pot = construct_soliton_1d(m, sigma, a, V1, W0)
    else:
        sol, pot = construct_soliton_2d(m, sigma, a, V1, W0)
    return sol, ModelSpec(dimension, int(m), int(sigma), pot, notes=sol.notes)


def eval_soliton_1d(s, x):
    x = np.asarray(x, dtype=float)
    return s.phi0 * np.exp(-s.a ** 2 * x ** 2 / s.m + 1j * s.phase_coeff * erf(s.a * x))


def eval_soliton_2d(s, x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    envelope = np.exp(-s.a ** 2 * (x ** 2 + y ** 2) / s.m)
    return s.phi0 * envelope * np.exp(1j * s.phase_coeff * (erf(s.a * x) + erf(s.a * y)))


def sample(s, grid):
    """Mode sampled on the grid nodes."""
    if s.dimension == 1:
        return eval_soliton_1d(s, grid.x)
    X, Y = grid.mesh
    return eval_soliton_2d(s, X, Y)


def power_1d(s):
    return math.sqrt(s.m * math.pi / 2) * s.phi0 ** 2 / s.a


def power_2d(s):
    return math.pi * s.m * s.phi0 ** 2 / (2 * s.a ** 2)


def power(s):
    return power_1d(s) if s.dimension == 1 else power_2d(s)


def _flow_amplitude(s):
    return s.m * s.W0 * s.phi0 ** 2 / (2 * s.a ** 2 * (s.m + 2))


def flow_density_1d(s, x):
    x = np.asarray(x, dtype=float)
    return _flow_amplitude(s) * np.exp(-(s.m + 2) / s.m * s.a ** 2 * x ** 2)


def flow_density_2d(s, x, y):
    """(Sx, Sy) of the 2D mode.

    Each component carries the Gaussian envelope of the other coordinate;
    on the axes (y = 0 for Sx, x = 0 for Sy) it reduces to the 1D-like
    profile amp * exp(-((m+2)/m) a^2 x^2).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    k = (s.m + 2) / s.m * s.a ** 2
    cross = 2 * s.a ** 2 / s.m
    amp = _flow_amplitude(s)
    return (amp * np.exp(-k * x ** 2 - cross * y ** 2),
            amp * np.exp(-k * y ** 2 - cross * x ** 2))


def flow_density_from_field(u, grid):
    """(i/2)(u u_x* - u* u_x) with spectral derivatives; a tuple per axis in 2D."""
    def one(ux):
        return np.real(0.5j * (u * np.conj(ux) - np.conj(u) * ux))

    if grid.ndim == 1:
        return one(first_derivative(u, grid))
    u = np.asarray(u).reshape(grid.shape)
    return one(first_derivative(u, grid, 0)), one(first_derivative(u, grid, 1))


def residual_field(spec, u, beta, grid):
    """Pointwise defect of the stationary equation (no leak check)."""
    u = np.asarray(u, dtype=complex).reshape(grid.shape)
    V, W = potential_on_grid(spec, grid)
    nonlinear = spec.sigma * np.abs(u) ** (2 * spec.m) * u
    return second_derivative(u, grid) + (V + 1j * W) * u + nonlinear - beta * u


def residual_stationary(spec, u, beta, grid):
    """Max-norm defect of phi'' + (V+iW)phi + sigma|phi|^2m phi - beta phi.

    Raises BoundaryLeak when the field is not negligible at the periodic
    seam, since the spectral derivative would then see a jump.
    """
    edge = boundary_modulus(u, grid)
    if edge > LEAK_TOLERANCE:
        raise BoundaryLeak(f"|field| = {edge:.3g} at the domain boundary exceeds {LEAK_TOLERANCE:g}")
    return float(np.max(np.abs(residual_field(spec, u, beta, grid))))


def resolve_beta_2d(m, sigma, a, V1, W0, grid):
    """Residual of the 2D mode under each propagation-constant candidate."""
    sol, pot = construct_soliton_2d(m, sigma, a, V1, W0)
    spec = ModelSpec(2, int(m), int(sigma), pot)
    u = sample(sol, grid)
    out = {}
    for name, beta in beta_2d_candidates(m, a).items():
        out[name] = (beta, residual_stationary(spec, u, beta, grid))
    winner = min(out, key=lambda k: out[k][1])
    return winner, out
