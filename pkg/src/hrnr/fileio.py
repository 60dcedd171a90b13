"""Matrix files, region JSON, and SVG rendering for the CLI.

Matrix files are JSON: ``{"dim": n, "data": [[[re, im], ...], ...]}``
with ``data`` an n x n grid of [real, imaginary] pairs in decimal text.
Region files serialise a range report with a fixed key order so that
parsing and re-dumping a file reproduces it byte for byte.
"""

from __future__ import annotations

import json

import numpy as np

from .geometry import ConvexRegion
from .ranges import RangeReport


class MatrixFileError(ValueError):
    """Malformed matrix file."""


def matrix_to_obj(t: np.ndarray) -> dict:
    n = t.shape[0]
    data = [[[float(t[i, j].real), float(t[i, j].imag)] for j in range(n)]
            for i in range(n)]
    return {"dim": n, "data": data}


def obj_to_matrix(obj) -> np.ndarray:
    if not isinstance(obj, dict) or "dim" not in obj or "data" not in obj:
        raise MatrixFileError("matrix file needs 'dim' and 'data' keys")
    n = obj["dim"]
    data = obj["data"]
    if not isinstance(n, int) or n < 1:
        raise MatrixFileError(f"bad dimension {n!r}")
    if not isinstance(data, list) or len(data) != n:
        raise MatrixFileError(f"expected {n} rows")
    out = np.zeros((n, n), dtype=np.complex128)
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != n:
            raise MatrixFileError(f"row {i} is not a list of {n} entries")
        for j, entry in enumerate(row):
            if (not isinstance(entry, list) or len(entry) != 2
                    or not all(isinstance(x, (int, float)) for x in entry)):
                raise MatrixFileError(f"entry ({i},{j}) is not an [re, im] pair")
            out[i, j] = complex(entry[0], entry[1])
    if not np.isfinite(out.view(np.float64)).all():
        raise MatrixFileError("matrix entries must be finite")
    return out


def load_matrix(path) -> np.ndarray:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MatrixFileError(f"cannot read matrix file {path}: {exc}") from exc
    return obj_to_matrix(obj)


def save_matrix(path, t: np.ndarray) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_json(matrix_to_obj(t)))


def region_to_obj(report: RangeReport) -> dict:
    region = report.region
    return {
        "tag": region.kind,
        "k": report.k,
        "angles": report.angles,
        "outer_error_bound": float(report.outer_error_bound),
        "vertices": [[float(z.real), float(z.imag)] for z in region.vertices],
        "support_samples": [[float(t), float(b)] for t, b in report.support_samples],
    }


def dumps_json(obj) -> str:
    """Deterministic JSON text: fixed key order, two-space indent."""
    return json.dumps(obj, indent=2) + "\n"


def save_region(path, report: RangeReport) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_json(region_to_obj(report)))


# ---------------------------------------------------------------------------
# SVG

SVG_SIZE = 640


def _mapper(world: float):
    half = SVG_SIZE / 2.0

    def to_px(z: complex):
        return (half + half * z.real / world, half - half * z.imag / world)

    return to_px


def region_svg(region: ConvexRegion, ref_radius: float | None = None) -> str:
    """Standalone SVG: the region, coordinate axes, optional dashed circle.

    The view box pads 20% beyond the largest modulus drawn.
    """
    moduli = [abs(z) for z in region.vertices]
    if ref_radius:
        moduli.append(abs(ref_radius))
    world = 1.2 * max(moduli + [0.1])
    to_px = _mapper(world)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" '
        f'height="{SVG_SIZE}" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
        f'<rect width="{SVG_SIZE}" height="{SVG_SIZE}" fill="white"/>',
        f'<line x1="0" y1="{SVG_SIZE/2}" x2="{SVG_SIZE}" y2="{SVG_SIZE/2}" '
        'stroke="#999" stroke-width="1"/>',
        f'<line x1="{SVG_SIZE/2}" y1="0" x2="{SVG_SIZE/2}" y2="{SVG_SIZE}" '
        'stroke="#999" stroke-width="1"/>',
    ]
    for tick in (-1.0, 1.0):
        if abs(tick) <= world:
            x, y = to_px(complex(tick, 0.0))
            parts.append(f'<line x1="{x:.2f}" y1="{SVG_SIZE/2-4}" x2="{x:.2f}" '
                         f'y2="{SVG_SIZE/2+4}" stroke="#999" stroke-width="1"/>')
            x, y = to_px(complex(0.0, tick))
            parts.append(f'<line x1="{SVG_SIZE/2-4}" y1="{y:.2f}" '
                         f'x2="{SVG_SIZE/2+4}" y2="{y:.2f}" stroke="#999" stroke-width="1"/>')
    if ref_radius:
        cx, cy = to_px(0j)
        r_px = abs(ref_radius) / world * (SVG_SIZE / 2.0)
        parts.append(f'<circle cx="{cx}" cy="{cy}" r="{r_px:.3f}" fill="none" '
                     'stroke="#c00" stroke-width="1.5" stroke-dasharray="6 4"/>')
    if region.kind == "polygon":
        pts = " ".join(f"{x:.3f},{y:.3f}" for x, y in map(to_px, region.vertices))
        parts.append(f'<polygon points="{pts}" fill="#4a90d9" fill-opacity="0.15" '
                     'stroke="#1a5296" stroke-width="1.5"/>')
    elif region.kind == "segment":
        (x1, y1), (x2, y2) = map(to_px, region.vertices)
        parts.append(f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" '
                     'stroke="#1a5296" stroke-width="2"/>')
    elif region.kind == "point":
        x, y = to_px(region.vertices[0])
        parts.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="3" fill="#1a5296"/>')
    else:
        parts.append(f'<text x="{SVG_SIZE/2-30}" y="{SVG_SIZE/2-10}" '
                     'fill="#666" font-size="16">empty</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def save_svg(path, region: ConvexRegion, ref_radius: float | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(region_svg(region, ref_radius))
