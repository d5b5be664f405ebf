"""On-disk formats: atomic writes, fixed-header CSV, versioned JSON, raw field snapshots."""

import csv
import io
import json
import math
import os
import tempfile

import numpy as np

from .errors import ConfigError

SCHEMA_VERSION = "1.0"
SUPPORTED_MAJOR = 1

SPECTRUM_HEADER = ("re", "im")
DIAGNOSTICS_HEADER = ("z", "power", "peak_intensity", "deviation")
CURVE_HEADER = ("m", "w0_threshold")
THRESHOLDS_HEADER = ("m", "sigma", "w0_threshold", "lo", "hi", "tol")


def atomic_write(path, data):
    """Write bytes or text to `path` via a temp file in the same directory, then rename."""
    path = os.fspath(path)
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    if isinstance(data, str):
        data = data.encode("utf-8")
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def fmt(x):
    # shortest repr that round-trips; nan spelled the same everywhere
    x = float(x)
    if math.isnan(x):
        return "nan"
    return repr(x)


def csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, (int, str)) and not isinstance(v, bool) else fmt(v) for v in row])
    return buf.getvalue()


def write_csv(path, header, rows):
    atomic_write(path, csv_text(header, rows))


def append_csv(path, header, rows):
    """Append rows, creating the file with its header if needed (still via rename)."""
    existing = ""
    if os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            existing = fh.read()
        first = existing.split("\n", 1)[0]
        if first != ",".join(header):
            raise ConfigError(f"{path} has header {first!r}, expected {','.join(header)!r}")
        body = csv_text(header, rows).split("\n", 1)[1]
        atomic_write(path, existing + body)
    else:
        write_csv(path, header, rows)


def read_csv(path):
    with open(path, encoding="utf-8", newline="") as fh:
        r = csv.reader(fh)
        header = tuple(next(r))
        rows = [tuple(float(v) for v in row) for row in r]
    return header, rows


def write_json(path, obj):
    payload = {"schema_version": SCHEMA_VERSION}
    payload.update(obj)
    atomic_write(path, json.dumps(payload, indent=2, sort_keys=True, allow_nan=True) + "\n")


def check_schema(obj, source="document"):
    version = obj.get("schema_version")
    if version is None:
        raise ConfigError(f"{source} has no schema_version")
    try:
        major = int(str(version).split(".")[0])
    except ValueError:
        raise ConfigError(f"{source}: malformed schema_version {version!r}") from None
    if major != SUPPORTED_MAJOR:
        raise ConfigError(f"{source}: unsupported schema major {major} (reader understands {SUPPORTED_MAJOR})")
    return obj


def read_json(path):
    with open(path, encoding="utf-8") as fh:
        return check_schema(json.load(fh), str(path))


def _grid_meta(grid):
    if grid.ndim == 1:
        return {"dimension": 1, "xmin": grid.xmin, "xmax": grid.xmax, "n": grid.n}
    return {
        "dimension": 2,
        "xmin": grid.gx.xmin, "xmax": grid.gx.xmax, "nx": grid.gx.n,
        "ymin": grid.gy.xmin, "ymax": grid.gy.xmax, "ny": grid.gy.n,
    }


def write_snapshot(stem, u, grid, z, extra=None):
    """`stem`.f64 holds interleaved little-endian (re, im) in C order; `stem`.json describes it."""
    u = np.asarray(u, dtype=complex).reshape(grid.shape)
    raw = np.empty(u.shape + (2,), dtype="<f8")
    raw[..., 0] = u.real
    raw[..., 1] = u.imag
    atomic_write(f"{stem}.f64", raw.tobytes(order="C"))
    meta = {"z": float(z), "shape": list(grid.shape), "dtype": "<f8", "layout": "re,im interleaved, C order"}
    meta.update(_grid_meta(grid))
    if extra:
        meta.update(extra)
    write_json(f"{stem}.json", meta)
    return f"{stem}.f64", f"{stem}.json"


def read_snapshot(stem):
    meta = read_json(f"{stem}.json")
    raw = np.fromfile(f"{stem}.f64", dtype="<f8")
    shape = tuple(meta["shape"])
    if raw.size != 2 * int(np.prod(shape)):
        raise ConfigError(f"{stem}.f64 holds {raw.size} values, sidecar expects {2 * int(np.prod(shape))}")
    raw = raw.reshape(shape + (2,))
    u = np.empty(shape, dtype=complex)
    u.real = raw[..., 0]
    u.imag = raw[..., 1]
    return u, meta
