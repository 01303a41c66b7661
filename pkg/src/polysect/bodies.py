"""Convex bodies behind support/membership oracles.

Every body answers two queries in floating point: support(u) -> (value,
support point) and member(x) -> bool (membership within the body's
tolerance).  Balls, ellipsoids and exact polytopes have closed forms; the
cap body conv(polytope ∪ ball) evaluates membership through the identity
conv(A ∪ B) = union over t of (t·A + (1-t)·B), which turns the question
into a one-dimensional convex minimization over t.

Planar sections of a body are sampled by ray bisection from an interior
point of the section; the resulting boundary points (ordered by polar
angle) feed the polygonality detector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .geometry import AffineFlat, DimensionMismatch, GeometryError, vdot, vsub
from .polytope import Polytope, convex_hull


class BodyError(GeometryError):
    pass


@dataclass(frozen=True)
class SectionSample:
    """Boundary points of a planar section, ordered by polar angle.

    Points are 2-dimensional chart coordinates; angles[i] is the polar
    angle of points[i] around the interior chart point used for sampling.
    flat is None when the sample came from a synthetic chart (cone scans).
    """

    flat: AffineFlat | None
    points: tuple[tuple[float, float], ...]
    angles: tuple[float, ...]

    @property
    def count(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class BodyOracle:
    """A convex body seen through support and membership queries.

    support(u) returns (h(u), p) with h the support function and p a point
    of the body attaining it.  member(x) answers membership within `tau`.
    `exact` marks bodies whose answers carry no floating-point error beyond
    the query encoding; `polytope` is set when the body wraps one.
    """

    dim: int
    support: Callable[[Sequence[float]], tuple[float, tuple[float, ...]]]
    member: Callable[[Sequence[float]], bool]
    interior_hint: tuple[float, ...]
    tau: float = 1e-9
    exact: bool = False
    name: str = "body"
    polytope: Polytope | None = None


def _fdot(a, b) -> float:
    return sum(float(x) * float(y) for x, y in zip(a, b))


def _fnorm(v) -> float:
    return math.sqrt(sum(float(x) ** 2 for x in v))


def make_ball(center, radius) -> BodyOracle:
    c = tuple(float(x) for x in center)
    r = float(radius)
    if r <= 0:
        raise BodyError("ball radius must be positive")

    def support(u):
        nu = _fnorm(u)
        if nu == 0:
            raise BodyError("support direction must be nonzero")
        point = tuple(ci + r * ui / nu for ci, ui in zip(c, u))
        return _fdot(u, c) + r * nu, point

    def member(x):
        return _fnorm(tuple(xi - ci for xi, ci in zip(x, c))) <= r + 1e-12

    return BodyOracle(len(c), support, member, c, 1e-12, False, "ball")


def make_ellipsoid(center, semi_axes) -> BodyOracle:
    c = tuple(float(x) for x in center)
    a = tuple(float(x) for x in semi_axes)
    if len(a) != len(c):
        raise DimensionMismatch("center and semi-axes dimensions disagree")
    if any(x <= 0 for x in a):
        raise BodyError("semi-axes must be positive")

    def support(u):
        s = math.sqrt(sum((ai * ui) ** 2 for ai, ui in zip(a, u)))
        if s == 0:
            raise BodyError("support direction must be nonzero")
        point = tuple(ci + ai * ai * ui / s for ci, ai, ui in zip(c, a, u))
        return _fdot(u, c) + s, point

    def member(x):
        return (
            sum(((xi - ci) / ai) ** 2 for xi, ci, ai in zip(x, c, a))
            <= 1.0 + 1e-12
        )

    return BodyOracle(len(c), support, member, c, 1e-12, False, "ellipsoid")


def wrap_polytope(poly: Polytope, name: str = "polytope") -> BodyOracle:
    verts = [tuple(float(x) for x in v) for v in poly.vertices]
    hint = tuple(float(x) for x in poly.interior_point())

    def support(u):
        best = None
        best_pt = None
        for v in verts:
            val = _fdot(u, v)
            if best is None or val > best:
                best, best_pt = val, v
        return best, best_pt

    def member(x):
        xq = tuple(Fraction(float(xi)) for xi in x)
        return poly.contains(xq) != "outside"

    return BodyOracle(
        poly.ambient_dim, support, member, hint, 0.0, True, name, poly
    )


def _closest_point_on_polytope(poly: Polytope, p) -> tuple[float, ...]:
    """Float closest point of a full-dimensional 3-polytope (outside case)."""
    verts = [tuple(float(x) for x in v) for v in poly.vertices]
    best = None
    best_pt = None

    def consider(q):
        nonlocal best, best_pt
        d = _fnorm(tuple(a - b for a, b in zip(p, q)))
        if best is None or d < best:
            best, best_pt = d, q

    for hs, face in zip(poly.halfspaces, poly.facet_vertices):
        n = tuple(float(x) for x in hs.normal)
        c = float(hs.offset)
        nn = _fdot(n, n)
        t = (_fdot(n, p) - c) / nn
        proj = tuple(pi - t * ni for pi, ni in zip(p, n))
        pts = [verts[i] for i in face]
        # inside the facet polygon iff on the inner side of every edge plane
        inside = True
        centroid = tuple(sum(q[i] for q in pts) / len(pts) for i in range(3))
        m = len(pts)
        order = _order_polygon(pts, centroid, n)
        for k in range(m):
            a = pts[order[k]]
            b = pts[order[(k + 1) % m]]
            e = tuple(bi - ai for ai, bi in zip(a, b))
            out = _cross3f(e, n)
            if _fdot(out, tuple(pi - ai for pi, ai in zip(proj, a))) > 1e-12:
                inside = False
            # edge segment candidate
            ee = _fdot(e, e)
            if ee > 0:
                s = max(0.0, min(1.0, _fdot(tuple(pi - ai for pi, ai in zip(p, a)), e) / ee))
                consider(tuple(ai + s * ei for ai, ei in zip(a, e)))
        if inside:
            consider(proj)
    for v in verts:
        consider(v)
    return best_pt


def _cross3f(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _order_polygon(pts, centroid, normal):
    """Indices of coplanar points in rotational order around the centroid."""
    ref = tuple(a - b for a, b in zip(pts[0], centroid))
    e1 = _funit(ref) or (1.0, 0.0, 0.0)
    e2 = _funit(_cross3f(normal, e1))
    ang = []
    for i, q in enumerate(pts):
        d = tuple(a - b for a, b in zip(q, centroid))
        ang.append((math.atan2(_fdot(d, e2), _fdot(d, e1)), i))
    return [i for _, i in sorted(ang)]


def _funit(v):
    n = _fnorm(v)
    return tuple(x / n for x in v) if n > 1e-15 else None


def glue_cap(poly: Polytope, center, radius) -> BodyOracle:
    """conv(polytope ∪ ball): an exact polytope with one round bump glued on."""
    if poly.ambient_dim != 3:
        raise BodyError("cap bodies are supported in dimension 3 only")
    if poly.dim != 3:
        raise BodyError("cap bodies need a full-dimensional polytope")
    c = tuple(float(x) for x in center)
    r = float(radius)
    if r <= 0:
        raise BodyError("ball radius must be positive")
    ball = make_ball(c, r)
    pwrap = wrap_polytope(poly)

    def support(u):
        hp, pp = pwrap.support(u)
        hb, pb = ball.support(u)
        return (hp, pp) if hp >= hb else (hb, pb)

    def member(x):
        if pwrap.member(x) or ball.member(x):
            return True
        # conv(K ∪ B) = ∪_t (t·K + (1-t)·B); membership minimizes
        # f(t) = dist(x, t·K + (1-t)·c) - (1-t)·r, which is convex in t.
        def f(t):
            scaled = tuple(
                (xi - (1.0 - t) * ci) / t for xi, ci in zip(x, c)
            )
            xq = tuple(Fraction(v) for v in scaled)
            if poly.contains(xq) != "outside":
                d = 0.0
            else:
                q = _closest_point_on_polytope(poly, scaled)
                d = _fnorm(tuple(a - b for a, b in zip(scaled, q)))
            return t * d - (1.0 - t) * r

        lo, hi = 1e-9, 1.0
        for _ in range(80):
            m1 = lo + (hi - lo) / 3
            m2 = hi - (hi - lo) / 3
            if f(m1) <= f(m2):
                hi = m2
            else:
                lo = m1
        return f(0.5 * (lo + hi)) <= 1e-9

    return BodyOracle(3, support, member, pwrap.interior_hint, 1e-9, False, "cap")


def sample_section_boundary(
    body: BodyOracle, flat: AffineFlat, count: int
) -> SectionSample:
    """Sample the boundary of body ∩ flat at `count` polar angles.

    The flat must be 2-dimensional and meet the body's interior; boundary
    points come from 60-step ray bisection of the membership oracle and are
    returned in chart coordinates of the flat's orthonormalized basis.
    """
    if flat.dim != 2:
        raise BodyError("section sampling needs a 2-dimensional flat")
    if flat.ambient_dim != body.dim:
        raise DimensionMismatch("flat and body dimensions disagree")
    if count < 8:
        raise BodyError("need at least 8 boundary points")
    base = tuple(float(x) for x in flat.base)
    u1 = _funit(tuple(float(x) for x in flat.basis[0]))
    u2 = _funit(tuple(float(x) for x in flat.basis[1]))

    def at(cx, cy):
        return tuple(b + cx * a1 + cy * a2 for b, a1, a2 in zip(base, u1, u2))

    x0 = _interior_chart_point(body, at)
    if x0 is None:
        raise BodyError("flat misses the body's interior")
    pts, angles = _radial_sweep(body, at, x0, count)
    # recenter once: the centroid is better-conditioned than the first hit
    cx = sum(p[0] for p in pts) / count
    cy = sum(p[1] for p in pts) / count
    if body.member(at(cx, cy)):
        pts, angles = _radial_sweep(body, at, (cx, cy), count)
    return SectionSample(flat, tuple(pts), tuple(angles))


def _interior_chart_point(body: BodyOracle, at):
    # project the body's interior hint onto the chart, then spiral outward
    hint = body.interior_hint
    base = at(0.0, 0.0)
    u1 = tuple(at(1.0, 0.0)[i] - base[i] for i in range(body.dim))
    u2 = tuple(at(0.0, 1.0)[i] - base[i] for i in range(body.dim))
    d = tuple(h - b for h, b in zip(hint, base))
    c0 = (_fdot(d, u1), _fdot(d, u2))
    scale = max(1.0, _fnorm(d))
    candidates = [c0, (0.0, 0.0)]
    for ring in range(1, 9):
        rad = scale * ring / 4.0
        for k in range(8 * ring):
            th = 2 * math.pi * k / (8 * ring)
            candidates.append((c0[0] + rad * math.cos(th), c0[1] + rad * math.sin(th)))
    for cand in candidates:
        if body.member(at(*cand)):
            return cand
    return None


def _radial_sweep(body: BodyOracle, at, x0, count):
    pts = []
    angles = []
    for j in range(count):
        th = 2.0 * math.pi * j / count
        ct, st = math.cos(th), math.sin(th)

        def inside(t):
            return body.member(at(x0[0] + t * ct, x0[1] + t * st))

        lo, hi = 0.0, 1.0
        while inside(hi):
            lo = hi
            hi *= 2.0
            if hi > 2.0**40:
                raise BodyError("section boundary ray never left the body")
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if inside(mid):
                lo = mid
            else:
                hi = mid
        t = 0.5 * (lo + hi)
        pts.append((x0[0] + t * ct, x0[1] + t * st))
        angles.append(th)
    return pts, angles


# ---------------------------------------------------------------------------
# body descriptions (JSON-friendly)


def _num(x) -> Fraction:
    if isinstance(x, bool):
        raise BodyError("booleans are not numbers")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise BodyError(f"cannot interpret {x!r} as a number")


def body_from_spec(spec: dict, base_dir: str = ".") -> BodyOracle:
    """Build a body oracle from a JSON-style description.

    kinds: ball {center, radius}, ellipsoid {center, semi_axes},
    polytope {vertices | off}, cap {polytope, center, radius}.
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise BodyError("body description needs a 'kind' field")
    kind = spec["kind"]
    if kind == "ball":
        center = [_num(x) for x in spec["center"]]
        return make_ball(center, _num(spec["radius"]))
    if kind == "ellipsoid":
        center = [_num(x) for x in spec["center"]]
        return make_ellipsoid(center, [_num(x) for x in spec["semi_axes"]])
    if kind == "polytope":
        return wrap_polytope(_polytope_from_spec(spec, base_dir))
    if kind == "cap":
        poly = _polytope_from_spec(spec["polytope"], base_dir)
        center = [_num(x) for x in spec["center"]]
        return glue_cap(poly, center, _num(spec["radius"]))
    raise BodyError(f"unknown body kind {kind!r}")


def _polytope_from_spec(spec: dict, base_dir: str) -> Polytope:
    import os

    if "off" in spec:
        from .offio import load_polytope

        path = spec["off"]
        if not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        with open(path, "r", encoding="utf-8") as fh:
            poly, _warnings = load_polytope(fh.read())
        return poly
    if "vertices" in spec:
        pts = [tuple(_num(x) for x in row) for row in spec["vertices"]]
        return convex_hull(pts)
    raise BodyError("polytope description needs 'vertices' or 'off'")
