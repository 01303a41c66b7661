"""Incremental convex hull over integer coordinates, dimensions 2 to 4.

This is the package's only hot loop, so it works on denominator-cleared
integer points (the caller scales each axis independently, which is a
linear bijection and preserves the whole face lattice).  Orientation
predicates are exact integer determinants; degenerate inserts produce
coplanar simplicial facets that get merged at the end.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Sequence

IntVec = tuple[int, ...]


class HullError(ValueError):
    pass


class DegenerateInput(HullError):
    """Points do not affinely span the requested dimension."""


def det2(m) -> int:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def det3(m) -> int:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def det4(m) -> int:
    total = 0
    sign = 1
    for c in range(4):
        minor = [[m[r][cc] for cc in range(4) if cc != c] for r in (1, 2, 3)]
        total += sign * m[0][c] * det3(minor)
        sign = -sign
    return total


_DETS = {2: det2, 3: det3, 4: det4}


def int_rank(rows: Sequence[IntVec]) -> int:
    """Rank of small integer matrices via fraction-free elimination."""
    mat = [list(r) for r in rows if any(r)]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for c in range(cols):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pr = mat[rank]
        for i in range(rank + 1, len(mat)):
            if mat[i][c] != 0:
                f, g = pr[c], mat[i][c]
                mat[i] = [f * x - g * y for x, y in zip(mat[i], pr)]
        rank += 1
        if rank == len(mat):
            break
    return rank


def facet_normal(diffs: Sequence[IntVec], k: int) -> IntVec:
    """Integer vector orthogonal to k-1 difference vectors in dimension k."""
    if k == 2:
        (dx, dy), = diffs
        return (dy, -dx)
    if k == 3:
        a, b = diffs
        return (
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        )
    if k == 4:
        # cofactor expansion of the 3x4 difference matrix
        rows = list(diffs)
        out = []
        sign = 1
        for c in range(4):
            minor = [[rows[r][cc] for cc in range(4) if cc != c] for r in range(3)]
            out.append(sign * det3(minor))
            sign = -sign
        return tuple(out)
    raise HullError(f"unsupported hull dimension {k}")


def _dot(a: IntVec, b: IntVec) -> int:
    return sum(x * y for x, y in zip(a, b))


@dataclass
class _Facet:
    vertices: tuple[int, ...]
    normal: IntVec
    offset: int


@dataclass(frozen=True)
class IntHull:
    """Full-dimensional hull: true vertices and merged (irredundant) facets.

    facets are (normal, offset, vertex index tuple) with normal·x <= offset
    inside and normal·v == offset exactly on the facet's vertices.
    """

    vertex_indices: tuple[int, ...]
    facets: tuple[tuple[IntVec, int, tuple[int, ...]], ...]


def _initial_simplex(points: Sequence[IntVec], k: int) -> list[int]:
    chosen = [0]
    diffs: list[IntVec] = []
    for i in range(1, len(points)):
        cand = tuple(a - b for a, b in zip(points[i], points[chosen[0]]))
        if int_rank(diffs + [cand]) > len(diffs):
            diffs.append(cand)
            chosen.append(i)
            if len(diffs) == k:
                return chosen
    raise DegenerateInput(f"points span only {len(diffs)} of {k} dimensions")


def hull_full_dim(points: Sequence[IntVec]) -> IntHull:
    """Convex hull of integer points that affinely span their space."""
    if not points:
        raise HullError("no points")
    k = len(points[0])
    if k not in (2, 3, 4):
        raise HullError(f"unsupported hull dimension {k}")

    simplex = _initial_simplex(points, k)
    # Strictly interior reference point, kept as (sum, count) to stay integral.
    ref_sum = tuple(sum(points[i][c] for i in simplex) for c in range(k))
    ref_den = k + 1

    facets: dict[int, _Facet] = {}
    ridge_owners: dict[frozenset[int], list[int]] = {}
    next_id = 0

    def oriented(verts: tuple[int, ...]) -> _Facet:
        p0 = points[verts[0]]
        diffs = [tuple(a - b for a, b in zip(points[v], p0)) for v in verts[1:]]
        n = facet_normal(diffs, k)
        c = _dot(n, p0)
        side = _dot(n, ref_sum) - c * ref_den
        if side > 0:
            n = tuple(-x for x in n)
            c = -c
        elif side == 0:
            raise HullError("reference point landed on a facet hyperplane")
        return _Facet(verts, n, c)

    def add_facet(f: _Facet) -> None:
        nonlocal next_id
        fid = next_id
        next_id += 1
        facets[fid] = f
        for drop in range(k):
            ridge = frozenset(f.vertices[:drop] + f.vertices[drop + 1:])
            ridge_owners.setdefault(ridge, []).append(fid)

    def remove_facet(fid: int) -> None:
        f = facets.pop(fid)
        for drop in range(k):
            ridge = frozenset(f.vertices[:drop] + f.vertices[drop + 1:])
            owners = ridge_owners[ridge]
            owners.remove(fid)
            if not owners:
                del ridge_owners[ridge]

    for drop in range(k + 1):
        verts = tuple(simplex[:drop] + simplex[drop + 1:])
        add_facet(oriented(verts))

    in_simplex = set(simplex)
    for ip, p in enumerate(points):
        if ip in in_simplex:
            continue
        visible = [fid for fid, f in facets.items() if _dot(f.normal, p) > f.offset]
        if not visible:
            continue
        visible_set = set(visible)
        horizon: list[frozenset[int]] = []
        for fid in visible:
            f = facets[fid]
            for drop in range(k):
                ridge = frozenset(f.vertices[:drop] + f.vertices[drop + 1:])
                owners = ridge_owners[ridge]
                if len(owners) != 2:
                    raise HullError("hull boundary lost ridge pairing")
                other = owners[0] if owners[1] == fid else owners[1]
                if other not in visible_set:
                    horizon.append(ridge)
        for fid in visible:
            remove_facet(fid)
        for ridge in horizon:
            add_facet(oriented(tuple(sorted(ridge)) + (ip,)))

    # Merge coplanar simplicial facets by canonical oriented hyperplane.
    merged: dict[tuple[IntVec, int], set[int]] = {}
    for f in facets.values():
        g = 0
        for x in f.normal:
            g = gcd(g, abs(x))
        g = gcd(g, abs(f.offset)) or 1
        key = (tuple(x // g for x in f.normal), f.offset // g)
        merged.setdefault(key, set()).update(f.vertices)

    candidates = sorted(set().union(*merged.values()))
    hyperplanes = list(merged.keys())
    true_vertices = []
    for v in candidates:
        active = [n for (n, c) in hyperplanes if _dot(n, points[v]) == c]
        if len(active) >= k and int_rank(active) == k:
            true_vertices.append(v)
    vert_set = set(true_vertices)

    out_facets = []
    for (n, c) in hyperplanes:
        fverts = tuple(v for v in true_vertices if _dot(n, points[v]) == c)
        if len(fverts) < k or not set(fverts) <= vert_set:
            raise HullError("merged facet lost its vertices")
        out_facets.append((n, c, fverts))
    out_facets.sort(key=lambda t: (t[0], t[1]))

    return IntHull(tuple(true_vertices), tuple(out_facets))


def brute_force_facets(points: Sequence[IntVec]) -> list[tuple[IntVec, int]]:
    """Independent O(n^k) facet oracle for tests: every supporting hyperplane
    through k affinely independent points with all points on one side."""
    k = len(points[0])
    seen = set()
    out = []
    for combo in combinations(range(len(points)), k):
        p0 = points[combo[0]]
        diffs = [tuple(a - b for a, b in zip(points[i], p0)) for i in combo[1:]]
        if int_rank(diffs) < k - 1:
            continue
        n = facet_normal(diffs, k)
        if not any(n):
            continue
        c = _dot(n, p0)
        sides = {(_dot(n, q) > c) - (_dot(n, q) < c) for q in points}
        sides.discard(0)
        if len(sides) != 1:
            continue
        if 1 in sides:
            n, c = tuple(-x for x in n), -c
        g = 0
        for x in n:
            g = gcd(g, abs(x))
        g = gcd(g, abs(c)) or 1
        key = (tuple(x // g for x in n), c // g)
        if key not in seen:
            seen.add(key)
            out.append(key)
    return sorted(out)
