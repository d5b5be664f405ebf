"""Problem definition: PT-symmetric potentials and model parameters."""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AsymmetricGrid


@dataclass(frozen=True)
class PotentialParams1D:
    """V(x) = V0 x^2 + V1 exp(-2a^2x^2),  W(x) = W0 x exp(-a^2x^2)."""

    V0: float
    V1: float
    W0: float
    a: float

    def __post_init__(self):
        _check_finite(self)


@dataclass(frozen=True)
class PotentialParams2D:
    """V = V0 r^2 - V1 exp(-2a^2 r^2) + V2 (exp(-2a^2x^2) + exp(-2a^2y^2)),
    W = W0 (x exp(-a^2x^2) + y exp(-a^2y^2))."""

    V0: float
    V1: float
    V2: float
    W0: float
    a: float

    def __post_init__(self):
        _check_finite(self)


def _check_finite(p):
    for name, value in vars(p).items():
        if not math.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value}")
    if not p.a > 0:
        raise ValueError(f"a must be positive, got {p.a}")


@dataclass(frozen=True)
class ModelSpec:
    dimension: int
    m: int
    sigma: float
    potential: PotentialParams1D | PotentialParams2D
    notes: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.dimension not in (1, 2):
            raise ValueError("dimension must be 1 or 2")
        if int(self.m) != self.m or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m}")
        # sigma = 0 is admitted as a linear-problem fixture
        if self.sigma not in (-1, 0, 1):
            raise ValueError(f"sigma must be +1 or -1, got {self.sigma}")
        want = PotentialParams1D if self.dimension == 1 else PotentialParams2D
        if not isinstance(self.potential, want):
            raise TypeError(f"dimension {self.dimension} needs {want.__name__}")


def eval_potential_1d(p, x):
    x = np.asarray(x, dtype=float)
    g = np.exp(-p.a ** 2 * x ** 2)
    V = p.V0 * x ** 2 + p.V1 * g ** 2
    W = p.W0 * x * g
    return V, W


def eval_potential_2d(p, x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    a2 = p.a ** 2
    gx = np.exp(-a2 * x ** 2)
    gy = np.exp(-a2 * y ** 2)
    V = p.V0 * (x ** 2 + y ** 2) - p.V1 * (gx * gy) ** 2 + p.V2 * (gx ** 2 + gy ** 2)
    W = p.W0 * (x * gx + y * gy)
    return V, W


def potential_on_grid(spec, grid):
    """(V, W) sampled at every grid node, shaped like the grid."""
    if spec.dimension == 1:
        return eval_potential_1d(spec.potential, grid.x)
    X, Y = grid.mesh
    return eval_potential_2d(spec.potential, X, Y)


def check_pt_symmetry(spec, grid, potential=None):
    """Largest even/odd violations of V and W under x -> -x on the grid.

    `potential` may be a pointwise callable ``(x) -> (V, W)`` in 1D or
    ``(x, y) -> (V, W)`` in 2D, to test an arbitrary profile.
    """
    if not grid.is_reflection_closed():
        raise AsymmetricGrid("grid nodes are not closed under x -> -x")
    if potential is None:
        if spec.dimension == 1:
            potential = lambda x: eval_potential_1d(spec.potential, x)  # noqa: E731
        else:
            potential = lambda x, y: eval_potential_2d(spec.potential, x, y)  # noqa: E731
    if grid.ndim == 1:
        V, W = potential(grid.x)
        Vr, Wr = potential(-grid.x)
    else:
        X, Y = grid.mesh
        V, W = potential(X, Y)
        Vr, Wr = potential(-X, -Y)
    return {
        "even_violation": float(np.max(np.abs(V - Vr))),
        "odd_violation": float(np.max(np.abs(W + Wr))),
    }
