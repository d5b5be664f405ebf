"""Uniform periodic grids and Fourier spectral calculus on them."""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import SizeExceeded

DENSE_LIMIT = 1024
DENSE_LIMIT_2D = 64 * 64


@dataclass(frozen=True)
class Grid1D:
    xmin: float
    xmax: float
    n: int

    def __post_init__(self):
        # even n keeps the Nyquist mode well defined; 48 per axis is a 2D default
        if int(self.n) != self.n or self.n < 2 or self.n % 2:
            raise ValueError(f"grid size must be a positive even integer, got {self.n}")
        if not self.xmax > self.xmin:
            raise ValueError("xmax must exceed xmin")

    ndim = 1

    @property
    def length(self):
        return self.xmax - self.xmin

    @property
    def dx(self):
        return self.length / self.n

    @cached_property
    def x(self):
        return self.xmin + self.dx * np.arange(self.n)

    @cached_property
    def k(self):
        return 2 * np.pi * np.fft.fftfreq(self.n, d=self.dx)

    @property
    def shape(self):
        return (self.n,)

    @property
    def size(self):
        return self.n

    @property
    def cell(self):
        return self.dx

    def is_reflection_closed(self, tol=1e-9):
        """True when -x_j is again a node (modulo the period) for every node."""
        pos = (-self.x - self.xmin) / self.dx
        return bool(np.all(np.abs(pos - np.rint(pos)) <= tol))


@dataclass(frozen=True)
class Grid2D:
    """Tensor product of two axes; arrays are indexed [ix, iy]."""

    gx: Grid1D
    gy: Grid1D

    ndim = 2

    @classmethod
    def square(cls, xmin, xmax, n):
        g = Grid1D(xmin, xmax, n)
        return cls(g, g)

    @property
    def shape(self):
        return (self.gx.n, self.gy.n)

    @property
    def size(self):
        return self.gx.n * self.gy.n

    @property
    def cell(self):
        return self.gx.dx * self.gy.dx

    @cached_property
    def mesh(self):
        return np.meshgrid(self.gx.x, self.gy.x, indexing="ij")

    def is_reflection_closed(self, tol=1e-9):
        return self.gx.is_reflection_closed(tol) and self.gy.is_reflection_closed(tol)


def second_derivative(u, grid):
    """Spectral d^2/dx^2 (1D) or Laplacian (2D) of samples on a periodic grid."""
    u = np.asarray(u)
    if grid.ndim == 1:
        return np.fft.ifft(-(grid.k ** 2) * np.fft.fft(u))
    kx2 = grid.gx.k[:, None] ** 2
    ky2 = grid.gy.k[None, :] ** 2
    return np.fft.ifft2(-(kx2 + ky2) * np.fft.fft2(u.reshape(grid.shape)))


def first_derivative(u, grid, axis=0):
    """Spectral first derivative; the Nyquist mode is dropped (odd operator)."""
    u = np.asarray(u)
    if grid.ndim == 1:
        k = grid.k.copy()
        k[grid.n // 2] = 0.0
        return np.fft.ifft(1j * k * np.fft.fft(u))
    ax = grid.gx if axis == 0 else grid.gy
    k = ax.k.copy()
    k[ax.n // 2] = 0.0
    shape = [1, 1]
    shape[axis] = ax.n
    u2 = u.reshape(grid.shape)
    return np.fft.ifft(1j * k.reshape(shape) * np.fft.fft(u2, axis=axis), axis=axis)


def spectral_matrix_d2(grid, limit=DENSE_LIMIT):
    """Dense second-derivative collocation matrix.

    Built from the closed-form periodic sinc-interpolant entries rather than
    from FFTs, so comparing it with `second_derivative` is a genuine check.
    For a 2D grid the Kronecker sum of the axis matrices is returned
    (row-major flattening, matching ``u.ravel()``).
    """
    if grid.ndim == 2:
        if grid.size > DENSE_LIMIT_2D:
            raise SizeExceeded(f"dense 2D Laplacian requested for {grid.shape}")
        dx = spectral_matrix_d2(grid.gx, limit)
        dy = spectral_matrix_d2(grid.gy, limit)
        return np.kron(dx, np.eye(grid.gy.n)) + np.kron(np.eye(grid.gx.n), dy)
    n = grid.n
    if n > limit:
        raise SizeExceeded(f"dense D2 requested for n={n} > {limit}")
    h = 2 * np.pi / n
    j = np.arange(1, n)
    col = np.empty(n)
    col[0] = -np.pi ** 2 / (3 * h ** 2) - 1.0 / 6.0
    col[1:] = -0.5 * (-1.0) ** j / np.sin(j * h / 2) ** 2
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    scale = (2 * np.pi / grid.length) ** 2
    return scale * col[idx]


def quadrature(u, grid):
    """Discrete integral of |u|^2 (rectangle rule, exact for trig polynomials)."""
    return float(grid.cell * np.sum(np.abs(np.asarray(u)) ** 2))


def boundary_modulus(u, grid):
    """Largest |u| on the first/last node rows, i.e. at the periodic seam."""
    u = np.abs(np.asarray(u).reshape(grid.shape))
    if grid.ndim == 1:
        return float(max(u[0], u[-1]))
    return float(max(u[0, :].max(), u[-1, :].max(), u[:, 0].max(), u[:, -1].max()))
