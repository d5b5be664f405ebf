"""Self-contained SVG figures.

Everything is inline: styling lives in attributes and heatmaps are embedded
as base64 PNG data URIs, so a figure is a single portable file. No timestamp
or random id is emitted, which keeps output byte-stable across runs.
"""

import base64
import math
import struct
import zlib
from xml.sax.saxutils import escape

import numpy as np

from .store import atomic_write

W, H = 520, 380
MARGIN = dict(left=64, right=20, top=30, bottom=50)

# anchor colours of a perceptually ordered dark-to-light map
_CMAP = np.array([
    [0.267, 0.005, 0.329],
    [0.230, 0.322, 0.546],
    [0.128, 0.567, 0.551],
    [0.369, 0.789, 0.383],
    [0.993, 0.906, 0.144],
])


def colormap(t):
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    pos = t * (len(_CMAP) - 1)
    i = np.minimum(pos.astype(int), len(_CMAP) - 2)
    f = (pos - i)[..., None]
    rgb = _CMAP[i] * (1 - f) + _CMAP[i + 1] * f
    return np.rint(255 * rgb).astype(np.uint8)


def png_bytes(rgb):
    """Minimal truecolour PNG encoder (8-bit RGB, no interlace)."""
    rgb = np.ascontiguousarray(rgb, dtype=np.uint8)
    h, w, _ = rgb.shape
    rows = b"".join(b"\x00" + rgb[r].tobytes() for r in range(h))

    def chunk(tag, data):
        body = tag + data
        return struct.pack(">I", len(data)) + body + struct.pack(">I", zlib.crc32(body) & 0xFFFFFFFF)

    return (b"\x89PNG\r\n\x1a\n"
            + chunk(b"IHDR", struct.pack(">IIBBBBB", w, h, 8, 2, 0, 0, 0))
            + chunk(b"IDAT", zlib.compress(rows, 9))
            + chunk(b"IEND", b""))


def _num(v):
    if v == 0:
        return "0"
    if abs(v) >= 1e4 or abs(v) < 1e-3:
        return f"{v:.1e}"
    return f"{v:.4g}"


def _ticks(lo, hi, count=5):
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        return [lo]
    raw = (hi - lo) / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((s * mag for s in (1, 2, 5, 10) if s * mag >= raw), default=10 * mag)
    start = math.ceil(lo / step) * step
    out = []
    v = start
    while v <= hi + 1e-12 * step:
        out.append(round(v, 12))
        v += step
    return out


class _Axes:
    def __init__(self, xlim, ylim, box):
        self.x0, self.x1 = xlim
        self.y0, self.y1 = ylim
        self.left, self.top, self.width, self.height = box

    def px(self, x):
        return self.left + (np.asarray(x) - self.x0) / (self.x1 - self.x0) * self.width

    def py(self, y):
        return self.top + (1 - (np.asarray(y) - self.y0) / (self.y1 - self.y0)) * self.height

    def frame(self, xlabel, ylabel, title=None):
        parts = [f'<rect x="{self.left:.2f}" y="{self.top:.2f}" width="{self.width:.2f}" '
                 f'height="{self.height:.2f}" fill="none" stroke="#222" stroke-width="1"/>']
        for t in _ticks(self.x0, self.x1):
            X = self.px(t)
            parts.append(f'<line x1="{X:.2f}" y1="{self.top + self.height:.2f}" x2="{X:.2f}" '
                         f'y2="{self.top + self.height + 4:.2f}" stroke="#222"/>')
            parts.append(f'<text x="{X:.2f}" y="{self.top + self.height + 16:.2f}" font-size="11" '
                         f'text-anchor="middle" font-family="sans-serif">{_num(t)}</text>')
        for t in _ticks(self.y0, self.y1):
            Y = self.py(t)
            parts.append(f'<line x1="{self.left - 4:.2f}" y1="{Y:.2f}" x2="{self.left:.2f}" '
                         f'y2="{Y:.2f}" stroke="#222"/>')
            parts.append(f'<text x="{self.left - 6:.2f}" y="{Y + 4:.2f}" font-size="11" '
                         f'text-anchor="end" font-family="sans-serif">{_num(t)}</text>')
        cx = self.left + self.width / 2
        parts.append(f'<text x="{cx:.2f}" y="{self.top + self.height + 36:.2f}" font-size="13" '
                     f'text-anchor="middle" font-family="sans-serif">{escape(xlabel)}</text>')
        cy = self.top + self.height / 2
        parts.append(f'<text x="{self.left - 46:.2f}" y="{cy:.2f}" font-size="13" text-anchor="middle" '
                     f'font-family="sans-serif" transform="rotate(-90 {self.left - 46:.2f} {cy:.2f})">'
                     f'{escape(ylabel)}</text>')
        if title:
            parts.append(f'<text x="{cx:.2f}" y="{self.top - 10:.2f}" font-size="13" '
                         f'text-anchor="middle" font-family="sans-serif">{escape(title)}</text>')
        return parts


def _document(width, height, parts):
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">\n<rect width="100%" height="100%" fill="white"/>\n')
    return head + "\n".join(parts) + "\n</svg>\n"


def _pad(lo, hi, frac=0.06):
    if hi <= lo:
        d = abs(lo) * 0.1 or 1.0
        return lo - d, hi + d
    d = (hi - lo) * frac
    return lo - d, hi + d


def _default_box():
    return (MARGIN["left"], MARGIN["top"], W - MARGIN["left"] - MARGIN["right"],
            H - MARGIN["top"] - MARGIN["bottom"])


def spectrum_svg(eigs, title=None, tolerance=None):
    """Scatter of eigenvalues in the complex plane (Re horizontal)."""
    eigs = np.asarray(eigs, dtype=complex)
    ax = _Axes(_pad(eigs.real.min(), eigs.real.max()), _pad(eigs.imag.min(), eigs.imag.max()),
               _default_box())
    parts = ax.frame("Re δ", "Im δ", title)
    if tolerance is not None and ax.x0 < tolerance < ax.x1:
        X = ax.px(tolerance)
        parts.append(f'<line x1="{X:.2f}" y1="{ax.top:.2f}" x2="{X:.2f}" y2="{ax.top + ax.height:.2f}" '
                     f'stroke="#c33" stroke-dasharray="4 3"/>')
    for e in eigs:
        parts.append(f'<circle cx="{ax.px(e.real):.2f}" cy="{ax.py(e.imag):.2f}" r="2" fill="#1f4e9c"/>')
    return _document(W, H, parts)


def curve_svg(ms, values, title=None):
    """Threshold versus order as a step-and-marker plot; nan points are skipped."""
    ms = np.asarray(ms, dtype=float)
    v = np.asarray(values, dtype=float)
    ok = np.isfinite(v)
    ylim = _pad(0.0, float(v[ok].max()) if ok.any() else 1.0)
    ax = _Axes(_pad(ms.min() - 0.5, ms.max() + 0.5, 0.0), (0.0, ylim[1]), _default_box())
    parts = ax.frame("m", "|W0| threshold", title)
    pts = [(m, y) for m, y in zip(ms, v) if math.isfinite(y)]
    if pts:
        path = []
        for i, (m, y) in enumerate(pts):
            xl, xr = ax.px(m - 0.5), ax.px(m + 0.5)
            Y = ax.py(y)
            path.append(("M" if i == 0 else "L") + f"{xl:.2f},{Y:.2f} L{xr:.2f},{Y:.2f}")
        parts.append(f'<path d="{" ".join(path)}" fill="none" stroke="#1f4e9c" stroke-width="1.5"/>')
        for m, y in pts:
            parts.append(f'<circle cx="{ax.px(m):.2f}" cy="{ax.py(y):.2f}" r="3.5" fill="#c33"/>')
    parts.append(f'<text x="{ax.left + 8:.2f}" y="{ax.top + 16:.2f}" font-size="12" '
                 f'font-family="sans-serif">stable below the curve</text>')
    return _document(W, H, parts)


def _image_tag(values, box, vmax=None):
    # values indexed [row(top->bottom), col(left->right)]
    v = np.asarray(values, dtype=float)
    vmax = vmax or (float(v.max()) if v.size and v.max() > 0 else 1.0)
    rgb = colormap(v / vmax)
    uri = "data:image/png;base64," + base64.b64encode(png_bytes(rgb)).decode("ascii")
    left, top, width, height = box
    return (f'<image x="{left:.2f}" y="{top:.2f}" width="{width:.2f}" height="{height:.2f}" '
            f'preserveAspectRatio="none" style="image-rendering:pixelated" href="{uri}"/>')


def heatmap_xz_svg(x, z, intensity, title=None):
    """|Psi|^2 over (x, z); `intensity` has one row per z sample."""
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    box = _default_box()
    ax = _Axes((x[0], x[-1]), (z[0], z[-1] if z[-1] > z[0] else z[0] + 1), box)
    rows = np.asarray(intensity, dtype=float)[::-1]
    parts = [_image_tag(rows, box)]
    parts += ax.frame("x", "z", title)
    return _document(W, H, parts)


def panels_xy_svg(x, y, frames, zs, title=None):
    """Row of x-y intensity panels sharing one colour scale."""
    n = len(frames)
    side = 200
    gap = 30
    width = MARGIN["left"] + n * side + (n - 1) * gap + MARGIN["right"]
    height = MARGIN["top"] + side + MARGIN["bottom"]
    vmax = max(float(np.max(f)) for f in frames) or 1.0
    parts = []
    for i, (f, z) in enumerate(zip(frames, zs)):
        left = MARGIN["left"] + i * (side + gap)
        box = (left, MARGIN["top"], side, side)
        ax = _Axes((x[0], x[-1]), (y[0], y[-1]), box)
        # arrays are [ix, iy]; image rows run from high y to low y
        parts.append(_image_tag(np.asarray(f).T[::-1], box, vmax))
        parts += ax.frame("x", "y" if i == 0 else "", f"z = {_num(z)}")
    if title:
        parts.append(f'<text x="{width / 2:.2f}" y="14" font-size="13" text-anchor="middle" '
                     f'font-family="sans-serif">{escape(title)}</text>')
    return _document(width, height, parts)


def save(path, svg_text):
    atomic_write(path, svg_text)
