"""Shared test utilities: independent oracles and random geometry builders.

Everything here is deliberately written as straight-line brute force so it
can serve as an oracle for the fast library implementations.
"""

from __future__ import annotations

import random
from fractions import Fraction as F
from itertools import combinations

from polysect import convex_hull
from polysect.geometry import solve_linear, vadd, vdot, vscale, vsub


def rand_fraction(rng: random.Random, lo: int = -4, hi: int = 4, den: int = 8) -> F:
    return F(rng.randint(lo * den, hi * den), den)


def random_points(rng, dim, count, lo=-4, hi=4, den=8):
    return [
        tuple(rand_fraction(rng, lo, hi, den) for _ in range(dim))
        for _ in range(count)
    ]


def centered_polytope(rng, dim, base_points, lo=-4, hi=4, den=8):
    """Random full-dimensional polytope translated so the origin is interior."""
    while True:
        pts = random_points(rng, dim, base_points, lo, hi, den)
        poly = convex_hull(pts)
        if poly.dim != dim:
            continue
        c = poly.interior_point()
        return convex_hull([vsub(v, c) for v in poly.vertices])


def in_hull_exact(points, x) -> bool:
    """Is x in conv(points)?  Barycentric search over small affine subsets."""
    pts = list(points)
    d = len(x)
    if tuple(x) in {tuple(p) for p in pts}:
        return True
    for size in range(2, d + 2):
        for combo in combinations(pts, size):
            matrix = [[p[i] for p in combo] for i in range(d)]
            matrix.append([F(1)] * size)
            rhs = list(x) + [F(1)]
            sol = solve_linear(matrix, rhs)
            if sol.status == "unique" and all(l >= 0 for l in sol.values):
                return True
    return False


def is_extreme_oracle(points, x) -> bool:
    """Extreme point test by definition: x not in the hull of the others."""
    others = [p for p in points if tuple(p) != tuple(x)]
    if not others:
        return True
    return not in_hull_exact(others, x)


CUBE_VERTICES = tuple(
    (F(sx), F(sy), F(sz)) for sx in (-1, 1) for sy in (-1, 1) for sz in (-1, 1)
)

# The 12 edges of the cube, listed by hand as vertex pairs differing in one
# coordinate.  An independent enumeration for section oracles.
CUBE_EDGES = tuple(
    (a, b)
    for a, b in combinations(CUBE_VERTICES, 2)
    if sum(1 for i in range(3) if a[i] != b[i]) == 1
)


def edge_plane_crossings(edges, normal, offset):
    """Exact crossings of segment list with the hyperplane normal.x = offset."""
    out = []
    for a, b in edges:
        va = vdot(normal, a) - offset
        vb = vdot(normal, b) - offset
        if va == 0:
            out.append(tuple(a))
        if vb == 0:
            out.append(tuple(b))
        if (va < 0 < vb) or (vb < 0 < va):
            t = va / (va - vb)
            out.append(vadd(a, vscale(vsub(b, a), t)))
    return sorted(set(out))
