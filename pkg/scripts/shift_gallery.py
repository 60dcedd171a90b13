"""Render the rank-k ranges of shift matrices as SVG files.

Writes one figure per (n, k) with the closed-form disc overlaid as a
dashed circle, so approximation quality is visible at a glance.

Usage: python scripts/shift_gallery.py [outdir]
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from hrnr.fileio import save_svg
from hrnr.ranges import rank_k_range
from hrnr.shifts import closed_form_shift_range, shift_matrix

CASES = [(3, 1), (5, 1), (5, 2), (8, 2), (8, 3), (12, 4)]
ANGLES = 720


def main():
    outdir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "gallery")
    outdir.mkdir(parents=True, exist_ok=True)
    for n, k in CASES:
        report = rank_k_range(shift_matrix(n), k, ANGLES)
        closed = closed_form_shift_range(n, k)
        ref = closed.radius if closed.tag == "disc" else None
        path = outdir / f"shift_n{n}_k{k}.svg"
        save_svg(path, report.region, ref_radius=ref)
        print(f"{path}  tag={report.region.kind:8s} closed-form={closed.tag}"
              + (f" radius={closed.radius:.6f}" if closed.tag == "disc" else ""))


if __name__ == "__main__":
    main()
