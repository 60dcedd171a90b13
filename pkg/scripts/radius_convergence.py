"""Tabulate the numerical radius of shifts against cos(pi/(n+1)).

Shows two things: the radius is independent of the angle count for
shifts (their pencil spectrum does not depend on the direction), and it
climbs toward 1 as the dimension grows.

Usage: python scripts/radius_convergence.py [max_n]
"""

import math
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from hrnr.ranges import numerical_radius
from hrnr.shifts import shift_matrix


def main():
    max_n = int(sys.argv[1]) if len(sys.argv) > 1 else 24
    print(f"{'n':>4} {'radius(m=16)':>16} {'radius(m=64)':>16} {'cos(pi/(n+1))':>16} {'deviation':>12}")
    for n in range(2, max_n + 1):
        s = shift_matrix(n)
        r16 = numerical_radius(s, 16)
        r64 = numerical_radius(s, 64)
        exact = math.cos(math.pi / (n + 1))
        print(f"{n:>4} {r16:>16.12f} {r64:>16.12f} {exact:>16.12f} {abs(r64 - exact):>12.2e}")


if __name__ == "__main__":
    main()
