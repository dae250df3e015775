"""Seeded case generators shared by the test modules."""

import numpy as np

from windcount import Circle, ConvexPolygon, Polynomial, Rectangle
from windcount.oracle import check_isolation, estimate_min_modulus, find_all_roots

UNIT_CIRCLE = Circle(0j, 1.0)
UNIT_SQUARE = Rectangle(-1 - 1j, 1 + 1j)
PENTAGON = ConvexPolygon(tuple(1.1 * np.exp(2j * np.pi * (k / 5 + 0.05)) for k in range(5)))


def roots_in_disc(rng, d, radius=2.0):
    return radius * np.sqrt(rng.uniform(0, 1, d)) * np.exp(2j * np.pi * rng.uniform(0, 1, d))


def isolated_case(rng, contour, degree, max_tries=100_000):
    """Monic polynomial with roots in the radius-2 disc that passes the
    oracle isolation check against ``contour`` with its own measured r.

    Roots are redrawn until the check passes. The constructed roots give a
    cheap pre-filter; the oracle check decides.
    """
    for _ in range(max_tries):
        roots = roots_in_disc(rng, degree)
        dist = contour.boundary_distance(roots)
        if dist.min() < 1e-9:
            continue
        p = Polynomial.from_roots(roots)
        r = estimate_min_modulus(p, contour)
        if dist.min() < 2 * r / 3:
            continue
        rs = find_all_roots(p)
        if not check_isolation(p, contour, r, rs):
            continue
        return p, r, roots, rs
    raise RuntimeError("no isolated configuration found")


def separated_roots(rng, d, sep, lo=-1.9, hi=1.9):
    roots = []
    while len(roots) < d:
        z = complex(rng.uniform(lo, hi), rng.uniform(lo, hi))
        if all(abs(z - w) >= sep for w in roots):
            roots.append(z)
    return np.array(roots)
