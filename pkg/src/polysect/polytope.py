"""Exact polytope representations and operations.

A `Polytope` carries both forms at once: extreme vertices in ambient
coordinates, plus irredundant halfspaces in the coordinates of its own
affine span chart (for a full-dimensional polytope the chart is the
identity, so those halfspaces are ambient).  sections, projections and
boundary tests all stay in rational arithmetic.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence

from .geometry import (
    ZERO,
    AffineFlat,
    DimensionMismatch,
    GeometryError,
    Point,
    Vector,
    as_point,
    identity_flat,
    is_zero_vector,
    norm2,
    nullspace,
    orthogonalize,
    solve_linear,
    vadd,
    vdot,
    vscale,
    vsub,
)
from . import hull as _hull


class PolytopeError(GeometryError):
    pass


class UnboundedPolyhedron(PolytopeError):
    """Halfspace data admits a recession direction; no vertex form exists."""


class DiamondConfigError(PolytopeError):
    """Segment/face configuration violates the crossing precondition."""


@dataclass(frozen=True)
class Halfspace:
    """Closed halfspace {x : normal . x <= offset} with rational data."""

    normal: Vector
    offset: Fraction

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        """normal . point - offset; <= 0 inside, == 0 on the boundary."""
        return vdot(self.normal, tuple(point)) - self.offset

    def canonical(self) -> "Halfspace":
        return _canonical_halfspace(self.normal, self.offset)


def _canonical_halfspace(normal: Sequence[Fraction], offset: Fraction) -> Halfspace:
    if is_zero_vector(tuple(normal)):
        raise PolytopeError("halfspace needs a nonzero normal")
    scale = lcm(*[x.denominator for x in normal], offset.denominator)
    ints = [int(x * scale) for x in normal]
    c = int(offset * scale)
    g = 0
    for x in ints:
        g = _hull.gcd(g, abs(x))
    g = _hull.gcd(g, abs(c)) or 1
    return Halfspace(tuple(Fraction(x // g) for x in ints), Fraction(c // g))


@dataclass(frozen=True)
class VPolytope:
    """Vertex form: the extreme points only."""

    vertices: tuple[Point, ...]

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0]) if self.vertices else 0


@dataclass(frozen=True)
class HPolytope:
    """Halfspace form: an irredundant intersection of closed halfspaces."""

    halfspaces: tuple[Halfspace, ...]

    @property
    def ambient_dim(self) -> int:
        return len(self.halfspaces[0].normal) if self.halfspaces else 0


class Polytope:
    """Immutable exact polytope with vertex form, halfspace form, incidence.

    `span` is the affine hull with an orthogonal chart basis; halfspaces and
    chart_vertices live in that chart.  Face-lattice queries beyond facets
    (edges) are computed lazily under a lock.
    """

    __slots__ = (
        "vertices",
        "chart_vertices",
        "span",
        "halfspaces",
        "facet_vertices",
        "_edge_lock",
        "_edges",
    )

    def __init__(self, vertices, chart_vertices, span, halfspaces, facet_vertices):
        self.vertices: tuple[Point, ...] = vertices
        self.chart_vertices: tuple[Point, ...] = chart_vertices
        self.span: AffineFlat | None = span
        self.halfspaces: tuple[Halfspace, ...] = halfspaces
        self.facet_vertices: tuple[frozenset[int], ...] = facet_vertices
        self._edge_lock = threading.Lock()
        self._edges: tuple[tuple[int, int], ...] | None = None

    # -- basic geometry -----------------------------------------------------

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    @property
    def dim(self) -> int:
        return len(self.chart_vertices[0])

    @property
    def vpolytope(self) -> VPolytope:
        return VPolytope(self.vertices)

    @property
    def hpolytope(self) -> HPolytope:
        """Halfspace form in chart coordinates (ambient when full-dimensional)."""
        return HPolytope(self.halfspaces)

    def __repr__(self):
        return f"Polytope(dim={self.dim}, ambient={self.ambient_dim}, vertices={len(self.vertices)})"

    def to_chart(self, point: Point) -> Point | None:
        if self.dim == 0:
            return () if tuple(point) == self.vertices[0] else None
        if self.span is None or self.dim == self.ambient_dim:
            return tuple(point)
        return self.span.coordinates(tuple(point))

    def to_ambient(self, chart_point: Sequence[Fraction]) -> Point:
        if self.dim == 0:
            return self.vertices[0]
        if self.span is None or self.dim == self.ambient_dim:
            return tuple(chart_point)
        return self.span.point_at(tuple(chart_point))

    def chart_contains(self, chart_point: Sequence[Fraction]) -> str:
        """Relative classification in the span chart: interior/boundary/outside."""
        if self.dim == 0:
            return "interior"
        boundary = False
        for hs in self.halfspaces:
            v = hs.evaluate(chart_point)
            if v > 0:
                return "outside"
            if v == 0:
                boundary = True
        return "boundary" if boundary else "interior"

    def contains(self, point: Point) -> str:
        """Relative classification of an ambient point (interior = rel. interior)."""
        cv = self.to_chart(as_point(point))
        if cv is None:
            return "outside"
        return self.chart_contains(cv)

    def interior_point(self) -> Point:
        """A relative-interior point (vertex centroid)."""
        n = Fraction(len(self.vertices))
        acc = self.vertices[0]
        for v in self.vertices[1:]:
            acc = vadd(acc, v)
        return vscale(acc, 1 / n)

    def support(self, direction: Vector) -> tuple[Fraction, int]:
        """Exact support value and the index of a vertex attaining it."""
        best = None
        best_i = -1
        for i, v in enumerate(self.vertices):
            val = vdot(direction, v)
            if best is None or val > best:
                best, best_i = val, i
        return best, best_i

    # -- faces ---------------------------------------------------------------

    def active_facets(self, chart_point: Sequence[Fraction]) -> tuple[int, ...]:
        return tuple(
            i for i, hs in enumerate(self.halfspaces) if hs.evaluate(chart_point) == 0
        )

    def facet(self, index: int) -> "FaceRef":
        return FaceRef(self, frozenset((index,)))

    def face_of(self, point: Point) -> "FaceRef":
        """Smallest face containing an ambient point of the polytope."""
        cv = self.to_chart(as_point(point))
        if cv is None or self.chart_contains(cv) == "outside":
            raise PolytopeError("point lies outside the polytope")
        return FaceRef(self, frozenset(self.active_facets(cv)))

    def edges(self) -> tuple[tuple[int, int], ...]:
        """Vertex index pairs forming 1-faces (computed once, thread-safe)."""
        if self._edges is not None:
            return self._edges
        with self._edge_lock:
            if self._edges is None:
                self._edges = self._compute_edges()
        return self._edges

    def _compute_edges(self):
        k = self.dim
        if k <= 0:
            return ()
        if k == 1:
            return ((0, 1),) if len(self.vertices) == 2 else ()
        out = []
        for i, j in combinations(range(len(self.vertices)), 2):
            common = [
                f for f, verts in enumerate(self.facet_vertices) if i in verts and j in verts
            ]
            if len(common) < k - 1:
                continue
            rows = [
                tuple(int(x) for x in self.halfspaces[f].normal) for f in common
            ]
            if _hull.int_rank(rows) == k - 1:
                out.append((i, j))
        return tuple(out)

    def boundary_cycle(self) -> tuple[int, ...]:
        """Counterclockwise vertex order for a 2-dimensional chart polytope."""
        if self.dim != 2:
            raise PolytopeError("boundary cycle needs a 2-dimensional polytope")
        n = Fraction(len(self.chart_vertices))
        ox = sum((v[0] for v in self.chart_vertices), ZERO) / n
        oy = sum((v[1] for v in self.chart_vertices), ZERO) / n

        def half(i):
            dx, dy = self.chart_vertices[i][0] - ox, self.chart_vertices[i][1] - oy
            return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

        import functools

        def cmp(a, b):
            ha, hb = half(a), half(b)
            if ha != hb:
                return -1 if ha < hb else 1
            ax, ay = self.chart_vertices[a][0] - ox, self.chart_vertices[a][1] - oy
            bx, by = self.chart_vertices[b][0] - ox, self.chart_vertices[b][1] - oy
            cr = ax * by - ay * bx
            if cr == 0:
                raise PolytopeError("distinct extreme points collinear with centroid")
            return -1 if cr > 0 else 1

        return tuple(sorted(range(len(self.chart_vertices)), key=functools.cmp_to_key(cmp)))


@dataclass(frozen=True)
class FaceRef:
    """A face named by its active halfspace set (empty set = whole polytope)."""

    polytope: Polytope
    active: frozenset[int]

    @property
    def vertex_indices(self) -> tuple[int, ...]:
        verts = set(range(len(self.polytope.vertices)))
        for f in self.active:
            verts &= self.polytope.facet_vertices[f]
        return tuple(sorted(verts))

    @property
    def vertices(self) -> tuple[Point, ...]:
        return tuple(self.polytope.vertices[i] for i in self.vertex_indices)

    def to_polytope(self) -> Polytope:
        return convex_hull(self.vertices)


# ---------------------------------------------------------------------------
# construction


def _dim0_polytope(point: Point) -> Polytope:
    return Polytope((point,), ((),), None, (), ())


def convex_hull(points: Iterable[Sequence]) -> Polytope:
    """Exact convex hull of rational points (ambient dimension 2 to 4).

    Lower-dimensional input is handled inside its affine span: the span is
    reported on the result and the halfspace form lives in the span chart.
    """
    pts = list(dict.fromkeys(as_point(p) for p in points))
    if not pts:
        raise PolytopeError("convex hull of no points")
    d = len(pts[0])
    for p in pts:
        if len(p) != d:
            raise DimensionMismatch("points live in different dimensions")
    if d not in (2, 3, 4):
        raise PolytopeError(f"ambient dimension {d} unsupported (need 2..4)")

    base = pts[0]
    ortho: list[Vector] = []
    for p in pts[1:]:
        w = vsub(p, base)
        for b in ortho:
            w = vsub(w, vscale(b, vdot(w, b) / norm2(b)))
        if not is_zero_vector(w):
            ortho.append(w)
        if len(ortho) == d:
            break
    k = len(ortho)

    if k == 0:
        return _dim0_polytope(base)

    if k == d:
        span = identity_flat(d)
        chart_pts = pts
    else:
        span = AffineFlat(base, tuple(ortho))
        chart_pts = [span.projected_coordinates(p) for p in pts]

    if k == 1:
        coords = [(cv[0], i) for i, cv in enumerate(chart_pts)]
        lo = min(coords)
        hi = max(coords)
        vert_idx = [lo[1], hi[1]]
        halfspaces = (
            _canonical_halfspace((Fraction(-1),), -lo[0]),
            _canonical_halfspace((Fraction(1),), hi[0]),
        )
    else:
        scales = [
            lcm(*[cv[j].denominator for cv in chart_pts]) for j in range(k)
        ]
        int_pts = [
            tuple(int(cv[j] * scales[j]) for j in range(k)) for cv in chart_pts
        ]
        data = _hull.hull_full_dim(int_pts)
        vert_idx = list(data.vertex_indices)
        halfspaces = tuple(
            _canonical_halfspace(
                tuple(Fraction(n[j] * scales[j]) for j in range(k)), Fraction(c)
            )
            for (n, c, _) in data.facets
        )

    order = sorted(vert_idx, key=lambda i: pts[i])
    vertices = tuple(pts[i] for i in order)
    chart_vertices = tuple(chart_pts[i] for i in order)
    halfspaces = tuple(sorted(halfspaces, key=lambda h: (h.normal, h.offset)))
    facet_vertices = tuple(
        frozenset(
            i for i, cv in enumerate(chart_vertices) if hs.evaluate(cv) == 0
        )
        for hs in halfspaces
    )
    return Polytope(vertices, chart_vertices, span, halfspaces, facet_vertices)


# ---------------------------------------------------------------------------
# vertex enumeration from halfspace data


def _as_halfspace_list(h) -> list[Halfspace]:
    if isinstance(h, HPolytope):
        items = list(h.halfspaces)
    elif isinstance(h, Polytope):
        items = list(h.halfspaces)
    else:
        items = list(h)
    if not items:
        raise PolytopeError("no halfspaces")
    return [hs.canonical() for hs in items]


def vertices_of(halfspace_data) -> Polytope | None:
    """Enumerate the vertex form of a bounded halfspace intersection.

    Basic points come from d-subsets of halfspace boundaries (classical
    basic-solution enumeration); returns None for an empty intersection and
    raises UnboundedPolyhedron when a recession direction exists.
    """
    hss = _as_halfspace_list(halfspace_data)
    d = len(hss[0].normal)
    for hs in hss:
        if len(hs.normal) != d:
            raise DimensionMismatch("halfspace dimensions disagree")

    normals = [hs.normal for hs in hss]
    rank = _hull.int_rank([tuple(int(x) for x in n) for n in normals])
    if rank < d:
        # Directions orthogonal to every normal are free lines of the set,
        # so a nonempty intersection is unbounded.  Substituting
        # x = sum_i s_i b_i over a basis of the normal span keeps emptiness.
        ortho = orthogonalize(normals)
        chart = [
            Halfspace(tuple(vdot(hs.normal, b) for b in ortho), hs.offset).canonical()
            for hs in hss
        ]
        if vertices_of(chart) is None:
            return None
        raise UnboundedPolyhedron("halfspace normals do not span the space")

    if d == 1:
        for cand in ((Fraction(1),), (Fraction(-1),)):
            if all(vdot(hs.normal, cand) <= 0 for hs in hss):
                raise UnboundedPolyhedron("recession direction found")
    else:
        # A pointed nonzero recession cone has an extreme ray tight on d-1
        # independent constraints, so scanning those subsets is complete.
        for combo in combinations(range(len(hss)), d - 1):
            rows = [tuple(int(x) for x in hss[i].normal) for i in combo]
            if _hull.int_rank(rows) != d - 1:
                continue
            null = nullspace([hss[i].normal for i in combo])
            if not null:
                continue
            u = null[0]
            for cand in (u, tuple(-x for x in u)):
                if all(vdot(hs.normal, cand) <= 0 for hs in hss):
                    raise UnboundedPolyhedron("recession direction found")

    found: dict[Point, None] = {}
    for combo in combinations(range(len(hss)), d):
        sol = solve_linear(
            [hss[i].normal for i in combo], [hss[i].offset for i in combo]
        )
        if sol.status != "unique":
            continue
        x = sol.values
        if all(hs.evaluate(x) <= 0 for hs in hss):
            found.setdefault(tuple(x))
    if not found:
        return None
    if d == 1:
        return convex_hull_interval(list(found))
    return convex_hull(list(found))


def convex_hull_interval(pts: list[Point]) -> Polytope:
    """Hull of 1-dimensional points (kept separate: the engine starts at 2)."""
    lo = min(pts)
    hi = max(pts)
    if lo == hi:
        return _dim0_polytope(lo)
    span = identity_flat(1)
    halfspaces = (
        _canonical_halfspace((Fraction(-1),), -lo[0]),
        _canonical_halfspace((Fraction(1),), hi[0]),
    )
    verts = (lo, hi)
    facet_vertices = tuple(
        frozenset(i for i, v in enumerate(verts) if hs.evaluate(v) == 0)
        for hs in halfspaces
    )
    return Polytope(verts, verts, span, halfspaces, facet_vertices)


# ---------------------------------------------------------------------------
# sections and projections


@dataclass(frozen=True)
class Section:
    """Exact intersection body ∩ flat, presented in the flat's chart.

    polytope lives in chart coordinates; ambient_vertices are the same
    vertices embedded back in the ambient space (index-aligned).
    """

    polytope: Polytope
    flat: AffineFlat
    ambient_vertices: tuple[Point, ...]
    meets_interior: bool


def _hyperplane_slice_points(body: Polytope, normal: Vector, offset: Fraction) -> list[Point]:
    vals = [vdot(normal, v) - offset for v in body.vertices]
    pts = [v for v, val in zip(body.vertices, vals) if val == 0]
    for i, j in body.edges():
        a, b = vals[i], vals[j]
        if (a < 0 < b) or (b < 0 < a):
            t = a / (a - b)
            pts.append(vadd(body.vertices[i], vscale(vsub(body.vertices[j], body.vertices[i]), t)))
    return pts


def section(body: Polytope, flat: AffineFlat) -> Section | None:
    """Exact section of a polytope by an affine flat (None when disjoint).

    The flat is intersected one bounding hyperplane at a time; at each stage
    new vertices are edge crossings or on-plane vertices of the current
    polytope, so everything stays rational.
    """
    if flat.ambient_dim != body.ambient_dim:
        raise DimensionMismatch("flat and body dimensions disagree")
    if flat.dim >= body.ambient_dim:
        raise PolytopeError("section flat must be a proper flat")

    current = body
    for n in flat.normal_directions():
        c = vdot(n, flat.base)
        pts = _hyperplane_slice_points(current, n, c)
        if not pts:
            return None
        current = convex_hull(pts) if len(pts[0]) > 1 else convex_hull_interval(pts)

    chart_pts = []
    for v in current.vertices:
        cv = flat.coordinates(v)
        if cv is None:
            raise PolytopeError("section vertex fell off the flat")
        chart_pts.append(cv)
    if len(chart_pts[0]) == 1:
        sec_poly = convex_hull_interval(chart_pts)
    else:
        sec_poly = convex_hull(chart_pts)
    ambient = tuple(flat.point_at(cv) for cv in sec_poly.vertices)

    probe = flat.point_at(sec_poly.interior_point())
    meets_interior = body.contains(probe) == "interior"
    return Section(sec_poly, flat, ambient, meets_interior)


@dataclass(frozen=True)
class Projection:
    """Orthogonal shadow of a polytope on a flat, in the flat's chart."""

    polytope: Polytope
    subspace: AffineFlat
    ambient_vertices: tuple[Point, ...]


def project(body: Polytope, subspace: AffineFlat) -> Projection:
    """Orthogonal projection: project every vertex, then hull in the chart."""
    if subspace.ambient_dim != body.ambient_dim:
        raise DimensionMismatch("subspace and body dimensions disagree")
    chart_pts = [subspace.projected_coordinates(v) for v in body.vertices]
    if subspace.dim == 1:
        poly = convex_hull_interval(chart_pts)
    else:
        poly = convex_hull(chart_pts)
    ambient = tuple(subspace.point_at(cv) for cv in poly.vertices)
    return Projection(poly, subspace, ambient)


def restrict_halfspaces(halfspaces, flat: AffineFlat) -> tuple[Halfspace, ...] | None:
    """Rewrite ambient halfspaces in a flat's chart coordinates.

    Substituting x = base + sum_j s_j b_j into n.x <= c gives the chart
    constraint (n.b_j)_j . s <= c - n.base.  Constraints with zero chart
    normal are either vacuous or prove the flat misses the set entirely, in
    which case None is returned.  Together with vertices_of this is an
    independent route to sections of full-dimensional bodies.
    """
    out = []
    for hs in halfspaces:
        n = tuple(vdot(hs.normal, b) for b in flat.basis)
        c = hs.offset - vdot(hs.normal, flat.base)
        if all(x == 0 for x in n):
            if c < 0:
                return None
            continue
        out.append(_canonical_halfspace(n, c))
    return tuple(out)


# ---------------------------------------------------------------------------
# extremeness and boundary tests


def is_extreme(point, body) -> bool:
    """Is the point an extreme point of the body (which must contain it)?"""
    poly = body if isinstance(body, Polytope) else convex_hull(body)
    p = as_point(point)
    if poly.contains(p) == "outside":
        raise PolytopeError("point lies outside the body")
    return p in poly.vertices


def _interval_clip(halfspaces, base, direction):
    """Parameter interval of {base + t*direction} inside the halfspaces.

    Returns (lo, hi) with None for an unbounded end, or None when empty.
    """
    lo: Fraction | None = None
    hi: Fraction | None = None
    for hs in halfspaces:
        a = vdot(hs.normal, direction)
        b = hs.offset - vdot(hs.normal, base)
        if a == 0:
            if b < 0:
                return None
        elif a > 0:
            t = b / a
            hi = t if hi is None or t < hi else hi
        else:
            t = b / a
            lo = t if lo is None or t > lo else lo
    if lo is not None and hi is not None and lo > hi:
        return None
    return (lo, hi)


def supporting_line_test(line: AffineFlat, body: Polytope) -> bool:
    """Does the line meet the body only in boundary points?

    False when the line misses the body or passes through the (relative)
    interior; true exactly when the nonempty intersection sits inside the
    boundary.
    """
    if line.dim != 1:
        raise PolytopeError("supporting_line_test needs a 1-dimensional flat")
    if line.ambient_dim != body.ambient_dim:
        raise DimensionMismatch("line and body dimensions disagree")
    u = line.basis[0]

    if body.dim < body.ambient_dim:
        if body.dim == 0:
            # A single point is all relative interior, so no line supports it.
            return False
        span = body.span
        cons = []
        for n in span.normal_directions():
            a = vdot(n, u)
            b = vdot(n, vsub(span.base, line.base))
            cons.append((a, b))
        nonzero = [(a, b) for a, b in cons if a != 0]
        if not nonzero:
            if any(b != 0 for _, b in cons):
                return False
            # line lies inside the body's span: clip in the chart
            cb = span.coordinates(line.base)
            cd = tuple(vdot(u, bb) / norm2(bb) for bb in span.basis)
            return _classify_line_interval(body, cb, cd)
        t0 = nonzero[0][1] / nonzero[0][0]
        if any(a * t0 != b for a, b in cons):
            return False
        pt = line.point_at((t0,))
        return body.contains(pt) == "boundary"

    return _classify_line_interval(body, tuple(line.base), u)


def _classify_line_interval(body: Polytope, chart_base, chart_dir) -> bool:
    result = _interval_clip(body.halfspaces, chart_base, chart_dir)
    if result is None:
        return False
    lo, hi = result
    if lo is None or hi is None:
        raise UnboundedPolyhedron("line clipping hit an unbounded polytope")
    if lo == hi:
        return True
    mid = (lo + hi) / 2
    pt = vadd(tuple(chart_base), vscale(chart_dir, mid))
    return body.chart_contains(pt) != "interior"


# ---------------------------------------------------------------------------
# diamond construction and boundary check


def _face_polytope(face) -> Polytope:
    if isinstance(face, Polytope):
        return face
    if isinstance(face, FaceRef):
        return face.to_polytope()
    return convex_hull(face)


def diamond_hull(face, p, q) -> Polytope:
    """Hull of a boundary face with a segment crossing it exactly once.

    The open segment (p q) must meet the face in a single point; every other
    configuration (miss, endpoint contact, overlap in a segment) raises
    DiamondConfigError.
    """
    Q = _face_polytope(face)
    p = as_point(p)
    q = as_point(q)
    if p == q:
        raise DiamondConfigError("segment endpoints coincide")
    if len(p) != Q.ambient_dim or len(q) != Q.ambient_dim:
        raise DimensionMismatch("segment and face dimensions disagree")

    u = vsub(q, p)
    if Q.dim == 0:
        target = Q.vertices[0]
        # p + t*u == target must have a solution with 0 < t < 1
        ts = {(target[i] - p[i]) / u[i] for i in range(len(u)) if u[i] != 0}
        consistent = len(ts) == 1 and all(
            p[i] == target[i] for i in range(len(u)) if u[i] == 0
        )
        if not consistent:
            raise DiamondConfigError("segment misses the face")
        (t,) = ts
        if t == 0 or t == 1:
            raise DiamondConfigError("segment meets the face at an endpoint")
        if not (0 < t < 1):
            raise DiamondConfigError("segment misses the face")
        return convex_hull(Q.vertices + (p, q))

    span = Q.span
    cons = []
    for n in span.normal_directions():
        cons.append((vdot(n, u), vdot(n, vsub(span.base, p))))
    nonzero = [(a, b) for a, b in cons if a != 0]
    if not nonzero:
        if any(b != 0 for _, b in cons):
            raise DiamondConfigError("segment misses the face's affine hull")
        # segment inside the affine hull: clip its parameter range against Q
        cb = span.coordinates(p)
        cd = tuple(vdot(u, bb) / norm2(bb) for bb in span.basis)
        clipped = _interval_clip(Q.halfspaces, cb, cd)
        if clipped is None:
            raise DiamondConfigError("segment misses the face")
        lo, hi = clipped
        lo = max(lo, Fraction(0)) if lo is not None else Fraction(0)
        hi = min(hi, Fraction(1)) if hi is not None else Fraction(1)
        if lo > hi:
            raise DiamondConfigError("segment misses the face")
        if lo != hi:
            raise DiamondConfigError("segment overlaps the face in more than a point")
        if lo == 0 or lo == 1:
            raise DiamondConfigError("segment meets the face at an endpoint")
        return convex_hull(Q.vertices + (p, q))

    t = nonzero[0][1] / nonzero[0][0]
    if any(a * t != b for a, b in cons):
        raise DiamondConfigError("segment misses the face's affine hull")
    if t == 0 or t == 1:
        raise DiamondConfigError("segment meets the face at an endpoint")
    if not (0 < t < 1):
        raise DiamondConfigError("segment misses the face")
    x = vadd(p, vscale(u, t))
    if Q.contains(x) == "outside":
        raise DiamondConfigError("segment crosses the face's hull off the face")
    return convex_hull(Q.vertices + (p, q))


def check_diamond_boundary(body: Polytope, diamond) -> bool:
    """Is the diamond contained in the body's boundary?

    For a polytope this is exact: a convex subset lies in the boundary iff
    one facet halfspace is tight at every diamond vertex.  The diamond must
    be contained in the body (anything else raises).
    """
    if body.dim != body.ambient_dim:
        raise PolytopeError("boundary check needs a full-dimensional body")
    verts = diamond.vertices if isinstance(diamond, Polytope) else tuple(
        as_point(v) for v in diamond
    )
    for v in verts:
        if body.contains(v) == "outside":
            raise PolytopeError("diamond is not contained in the body")
    return any(
        all(hs.evaluate(v) == 0 for v in verts) for hs in body.halfspaces
    )
