"""JSON run configuration.

Only free parameters are accepted. V0, V2, beta and phi0 are always derived
from (m, sigma, a, V1, W0) so an input file cannot carry an inconsistent set.
"""

import json
import math
from dataclasses import dataclass, field

from .errors import ConfigError
from .linstab import DEFAULT_TOLERANCE, FORMS
from .spectral import Grid1D, Grid2D

_TOP_KEYS = {"dimension", "m", "sigma", "potential", "grid", "propagation", "output", "sweep",
             "stability", "schema_version"}
_DERIVED = {"V0", "V2", "beta", "phi0"}


@dataclass(frozen=True)
class GridSettings:
    xmin: float
    xmax: float
    n: int

    def build(self, dimension):
        try:
            if dimension == 1:
                return Grid1D(self.xmin, self.xmax, self.n)
            return Grid2D.square(self.xmin, self.xmax, self.n)
        except ValueError as exc:
            raise ConfigError(f"grid: {exc}") from None


@dataclass(frozen=True)
class PropagationSettings:
    z_end: float = 50.0
    dz: float = 1e-3
    save_every: int = 100
    perturb: float = 0.0
    seed: int = 0


@dataclass(frozen=True)
class SweepSettings:
    w0_min: float = 0.0
    w0_max: float = 1.5
    tol: float = 0.01
    m_list: tuple = (1, 2, 3, 4)


@dataclass(frozen=True)
class RunConfig:
    dimension: int
    m: int
    sigma: int
    a: float
    V1: float
    W0: float
    grid: GridSettings
    propagation: PropagationSettings = field(default_factory=PropagationSettings)
    sweep: SweepSettings = field(default_factory=SweepSettings)
    form: str = "published"
    tolerance: float = DEFAULT_TOLERANCE
    output_dir: str = "."

    def build_grid(self):
        return self.grid.build(self.dimension)


def _number(obj, key, where, kind=float, required=True, default=None):
    if key not in obj:
        if required:
            raise ConfigError(f"{where}: missing key {key!r}")
        return default
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{where}.{key}: expected a number, got {v!r}")
    if kind is int:
        if int(v) != v:
            raise ConfigError(f"{where}.{key}: expected an integer, got {v!r}")
        return int(v)
    v = float(v)
    if not math.isfinite(v):
        raise ConfigError(f"{where}.{key}: must be finite")
    return v


def _section(obj, key, required):
    sec = obj.get(key)
    if sec is None:
        if required:
            raise ConfigError(f"missing section {key!r}")
        return {}
    if not isinstance(sec, dict):
        raise ConfigError(f"{key}: expected an object")
    return sec


def parse_config(obj):
    """Validate a decoded JSON object and return a RunConfig."""
    if not isinstance(obj, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(obj) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown top-level keys: {sorted(unknown)}")
    dim = _number(obj, "dimension", "config", int)
    if dim not in (1, 2):
        raise ConfigError(f"dimension must be 1 or 2, got {dim}")
    m = _number(obj, "m", "config", int)
    if m < 1:
        raise ConfigError(f"m must be >= 1, got {m}")
    sigma = _number(obj, "sigma", "config", int)
    if sigma not in (-1, 1):
        raise ConfigError(f"sigma must be +1 or -1, got {sigma}")

    pot = _section(obj, "potential", True)
    derived = _DERIVED & set(pot)
    if derived:
        raise ConfigError(f"potential: {sorted(derived)} are derived and may not be supplied")
    a = _number(pot, "a", "potential")
    if a <= 0:
        raise ConfigError("potential.a must be positive")
    V1 = _number(pot, "V1", "potential")
    W0 = _number(pot, "W0", "potential")

    g = _section(obj, "grid", True)
    if not g:
        raise ConfigError("grid: section is empty")
    grid = GridSettings(_number(g, "xmin", "grid"), _number(g, "xmax", "grid"),
                        _number(g, "n", "grid", int))
    if grid.n <= 0:
        raise ConfigError("grid.n must be positive")
    grid.build(dim)

    p = _section(obj, "propagation", False)
    prop = PropagationSettings(
        z_end=_number(p, "z_end", "propagation", required=False, default=50.0),
        dz=_number(p, "dz", "propagation", required=False, default=1e-3),
        save_every=_number(p, "save_every", "propagation", int, required=False, default=100),
        perturb=_number(p, "perturb", "propagation", required=False, default=0.0),
        seed=_number(p, "seed", "propagation", int, required=False, default=0),
    )
    if prop.z_end < 0 or prop.dz <= 0 or prop.save_every < 1 or prop.perturb < 0:
        raise ConfigError("propagation: need z_end >= 0, dz > 0, save_every >= 1, perturb >= 0")

    s = _section(obj, "sweep", False)
    m_list = s.get("m_list", [1, 2, 3, 4])
    if not isinstance(m_list, list) or not all(isinstance(v, int) and v >= 1 for v in m_list):
        raise ConfigError("sweep.m_list must be a list of positive integers")
    sweep = SweepSettings(
        w0_min=_number(s, "w0_min", "sweep", required=False, default=0.0),
        w0_max=_number(s, "w0_max", "sweep", required=False, default=1.5),
        tol=_number(s, "tol", "sweep", required=False, default=0.01),
        m_list=tuple(m_list),
    )

    st = _section(obj, "stability", False)
    form = st.get("form", "published")
    if form not in FORMS:
        raise ConfigError(f"stability.form must be one of {FORMS}")
    tolerance = _number(st, "tolerance", "stability", required=False, default=DEFAULT_TOLERANCE)

    out = _section(obj, "output", False)
    out_dir = out.get("dir", ".")
    if not isinstance(out_dir, str) or not out_dir:
        raise ConfigError("output.dir must be a non-empty string")

    return RunConfig(dim, m, sigma, a, V1, W0, grid, prop, sweep, form, tolerance, out_dir)


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from None
    if "schema_version" in obj:
        from .store import check_schema

        check_schema(obj, str(path))
    return parse_config(obj)
