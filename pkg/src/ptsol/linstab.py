"""Linear-stability spectra of the exact modes and W0 thresholds.

Perturbations are written as
    Psi = {phi + (f+g) e^{delta z} + (f*-g*) e^{delta* z}} e^{i beta z}
and the growth rates delta are eigenvalues of a 2N x 2N collocation matrix
i [[A, L1], [L2, B]]. Three assemblies are available:

``published``
    A = P, B = -P, with V+iW inside L1 and L2 and the nonlinear coupling
    taken with (phi^2 + phi*^2)/2, so that at W0 = 0 the blocks reduce to the
    usual L-/L+ pair. This is the operator behind the published stability
    thresholds and is the default.
``literal``
    Same layout but (phi^2 - phi*^2)/2 inside L1/L2, exactly as typeset.
    Even at W0 = 0 it has no zero mode; kept only to document the misprint.
``consistent``
    The linearisation that follows from substituting the ansatz into the
    evolution equation: A = iW + P, B = iW - P, and only V inside L1/L2.
    It carries the phase-invariance zero mode for every W0 and agrees with
    direct propagation.

Here P = (sigma m / 2)(phi^2 - phi*^2)|phi|^(2m-2).
"""

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import analytic
from .eig import eigenvalues, eigenvectors
from .errors import BracketInvalid, SignConditionViolated
from .model import potential_on_grid
from .spectral import Grid1D, Grid2D, spectral_matrix_d2

log = logging.getLogger(__name__)

FORMS = ("published", "literal", "consistent")
DEFAULT_TOLERANCE = 1e-3
# eigenvectors with more than this share of energy in the top third of the
# wavenumber band are grid modes, not discretised continuum modes
RESOLUTION_LIMIT = 1e-2


def default_grid(dimension, purpose="sweep"):
    if dimension == 1:
        return Grid1D(-20.0, 20.0, 256 if purpose == "sweep" else 512)
    return Grid2D.square(-8.0, 8.0, 48)


def _operator_diagonals(spec, phi, beta, grid, form):
    V, W = potential_on_grid(spec, grid)
    V = V.ravel()
    W = W.ravel()
    phi = np.asarray(phi, dtype=complex).ravel()
    s, m = spec.sigma, spec.m
    mod2 = np.abs(phi) ** 2
    mod2m2 = mod2 ** (m - 1)
    diff = phi ** 2 - np.conj(phi) ** 2
    summ = phi ** 2 + np.conj(phi) ** 2
    P = 0.5 * s * m * diff * mod2m2
    base = -beta + s * mod2 ** m + s * m * mod2m2 * mod2
    if form == "published":
        coupling = 0.5 * s * m * mod2m2 * summ
        return P, -P, V + 1j * W + base - coupling, V + 1j * W + base + coupling
    if form == "literal":
        coupling = 0.5 * s * m * mod2m2 * diff
        return P, -P, V + 1j * W + base - coupling, V + 1j * W + base + coupling
    if form == "consistent":
        coupling = 0.5 * s * m * mod2m2 * summ
        return 1j * W + P, 1j * W - P, V + base - coupling, V + base + coupling
    raise ValueError(f"unknown operator form {form!r}; expected one of {FORMS}")


def assemble_linearization(spec, phi, beta, grid, form="published"):
    """Dense 2N x 2N stability matrix on the collocation grid."""
    D2 = spectral_matrix_d2(grid)
    a_diag, b_diag, l1_diag, l2_diag = _operator_diagonals(spec, phi, beta, grid, form)
    n = D2.shape[0]
    M = np.zeros((2 * n, 2 * n), dtype=complex)
    M[:n, n:] = D2
    M[n:, :n] = D2
    idx = np.arange(n)
    M[idx, idx] = a_diag
    M[n + idx, n + idx] = b_diag
    M[idx, n + idx] += l1_diag
    M[n + idx, idx] += l2_diag
    M *= 1j
    return M


def apply_linearization(spec, phi, beta, grid, f, g, form="published"):
    """Matrix-free action of the stability operator, using FFT derivatives."""
    from .spectral import second_derivative

    a_diag, b_diag, l1_diag, l2_diag = _operator_diagonals(spec, phi, beta, grid, form)
    f = np.asarray(f, dtype=complex).ravel()
    g = np.asarray(g, dtype=complex).ravel()
    d2f = second_derivative(f.reshape(grid.shape), grid).ravel()
    d2g = second_derivative(g.reshape(grid.shape), grid).ravel()
    top = a_diag * f + d2g + l1_diag * g
    bottom = d2f + l2_diag * f + b_diag * g
    return 1j * top, 1j * bottom


@dataclass
class Spectrum:
    """Stability eigenvalues; `max_growth` ignores grid-scale (unresolved) modes.

    `raw_max_growth` is the plain maximum over every eigenvalue, and
    `unresolved` lists the eigenvalues excluded by the resolution test.
    """

    eigenvalues: np.ndarray
    max_growth: float
    grid: object
    spec: object
    beta: float
    form: str
    raw_max_growth: float = float("nan")
    unresolved: np.ndarray = field(default_factory=lambda: np.empty(0, complex))
    eigenvectors: np.ndarray | None = None

    def __len__(self):
        return len(self.eigenvalues)


@dataclass(frozen=True)
class StabilityVerdict:
    stable: bool
    max_growth: float
    tolerance: float


@dataclass
class ThresholdResult:
    m: int
    sigma: int
    a: float
    V1: float
    dimension: int
    threshold: float
    bracket: tuple
    tol: float
    form: str
    probes: list = field(default_factory=list)


def high_band_fraction(vec, grid):
    """Share of a (f, g) eigenvector's spectral energy above 2/3 of the cutoff."""
    vec = np.asarray(vec).reshape(2, *grid.shape)
    if grid.ndim == 1:
        spec_ = np.abs(np.fft.fft(vec, axis=-1)) ** 2
        k = np.abs(grid.k)
        high = k > (2 / 3) * k.max()
    else:
        spec_ = np.abs(np.fft.fft2(vec, axes=(-2, -1))) ** 2
        kx = np.abs(grid.gx.k)[:, None]
        ky = np.abs(grid.gy.k)[None, :]
        high = (kx > (2 / 3) * kx.max()) | (ky > (2 / 3) * ky.max())
    total = spec_.sum()
    return float(spec_[:, high].sum() / total) if total > 0 else 0.0


def compute_spectrum(spec, soliton, grid, form="published", backend=None, vectors=False,
                     tolerance=DEFAULT_TOLERANCE, resolution_limit=RESOLUTION_LIMIT):
    """Stability spectrum of `soliton` (an analytic mode) for model `spec`.

    Eigenvalues with Re > `tolerance` are screened: their eigenvectors are
    computed and, if dominated by near-cutoff wavenumbers, excluded from
    `max_growth`. Pass ``resolution_limit=None`` to skip the screen.
    """
    if backend is None:
        backend = "qr" if grid.ndim == 1 else "lapack"
    phi = analytic.sample(soliton, grid)
    M = assemble_linearization(spec, phi, soliton.beta, grid, form)
    res = eigenvalues(M, backend=backend)
    w = res.values
    raw = float(np.max(w.real))
    keep = np.ones(len(w), dtype=bool)
    if resolution_limit is not None:
        cand = np.nonzero(w.real > tolerance)[0]
        if len(cand):
            vecs_c = eigenvectors(M, w[cand], backend=backend)
            for j, i in enumerate(cand):
                if high_band_fraction(vecs_c[:, j], grid) > resolution_limit:
                    keep[i] = False
    vecs = eigenvectors(M, w, backend=backend) if vectors else None
    return Spectrum(
        eigenvalues=w,
        max_growth=float(np.max(w[keep].real)),
        grid=grid,
        spec=spec,
        beta=soliton.beta,
        form=form,
        raw_max_growth=raw,
        unresolved=w[~keep],
        eigenvectors=vecs,
    )


def classify(spectrum, tolerance=DEFAULT_TOLERANCE):
    growth = spectrum.max_growth if isinstance(spectrum, Spectrum) else float(spectrum)
    return StabilityVerdict(stable=growth <= tolerance, max_growth=growth, tolerance=tolerance)


def probe(W0, m, sigma, a, V1, dimension=1, grid=None, form="published", backend=None,
          tolerance=DEFAULT_TOLERANCE):
    """Build the exact mode at this W0 and classify it.

    Returns a dict with ``status`` in {"stable", "unstable", "infeasible"}.
    Infeasible probes (no mode exists) count as the unstable side.
    """
    grid = grid or default_grid(dimension)
    try:
        sol, spec = analytic.exact_mode(dimension, m, sigma, a, V1, W0)
    except SignConditionViolated as exc:
        log.info("W0=%g infeasible: %s", W0, exc)
        return {"W0": float(W0), "max_growth": None, "status": "infeasible", "stable": False}
    spectrum = compute_spectrum(spec, sol, grid, form=form, backend=backend, tolerance=tolerance)
    verdict = classify(spectrum, tolerance)
    return {
        "W0": float(W0),
        "max_growth": verdict.max_growth,
        "raw_max_growth": spectrum.raw_max_growth,
        "unresolved": int(len(spectrum.unresolved)),
        "status": "stable" if verdict.stable else "unstable",
        "stable": verdict.stable,
    }


def find_threshold(m, sigma=-1, a=0.5, V1=3.0, dimension=1, lo=0.0, hi=1.5, tol=0.01,
                   grid=None, form="published", backend=None, tolerance=DEFAULT_TOLERANCE):
    """Bisect on W0 between a stable `lo` and an unstable `hi`."""
    kw = dict(m=m, sigma=sigma, a=a, V1=V1, dimension=dimension, grid=grid, form=form,
              backend=backend, tolerance=tolerance)
    probes = [probe(lo, **kw), probe(hi, **kw)]
    if not probes[0]["stable"] or probes[1]["stable"]:
        raise BracketInvalid(
            f"bracket [{lo}, {hi}] does not straddle a threshold: "
            f"lo is {probes[0]['status']}, hi is {probes[1]['status']}"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        p = probe(mid, **kw)
        probes.append(p)
        if p["stable"]:
            lo = mid
        else:
            hi = mid
    return ThresholdResult(m=int(m), sigma=int(sigma), a=a, V1=V1, dimension=dimension,
                           threshold=0.5 * (lo + hi), bracket=(lo, hi), tol=tol, form=form,
                           probes=probes)


def ladder_scan(W0_values, m, sigma=-1, a=0.5, V1=-3.0, dimension=2, grid=None,
                form="published", backend=None, tolerance=DEFAULT_TOLERANCE):
    """Classify on a fixed W0 ladder (the cheap substitute for bisection in 2D)."""
    return [probe(w, m, sigma, a, V1, dimension, grid, form, backend, tolerance)
            for w in W0_values]


def first_unstable(probes):
    for p in probes:
        if not p["stable"]:
            return p["W0"]
    return None


def _threshold_or_none(kwargs):
    try:
        return find_threshold(**kwargs)
    except (BracketInvalid, SignConditionViolated) as exc:
        log.warning("threshold for m=%s failed: %s", kwargs.get("m"), exc)
        return None


def threshold_curve(ms, jobs=None, **template):
    """find_threshold for each m, in input order; failed points come back as None."""
    jobs = jobs or int(os.environ.get("PTSOL_JOBS", "1"))
    tasks = [dict(template, m=m) for m in ms]
    if jobs <= 1 or len(tasks) == 1:
        return [_threshold_or_none(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_threshold_or_none, tasks))
