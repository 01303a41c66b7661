"""Executable polytope criteria for convex bodies.

Four one-sided testers decide "is this body a polytope?" from different
angles: planar sections through a chosen point family (K1 and its offset
variant), orthogonal shadows (K2), and visual cones from outside apexes.
Exact polytope inputs are decided exactly; oracle bodies are sampled, so a
witness refutes but a clean run only reports "polytope-consistent".

The module also builds exclusion certificates: given two points of a
polytope, an angle/distance radius ε such that no extreme point can sit
within distance ε of p inside the ε-cone around the ray p -> q, plus the
drift-inequality evaluator used to sanity-check the angle bookkeeping on
real configurations.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .bodies import (
    BodyError,
    BodyOracle,
    SectionSample,
    sample_section_boundary,
)
from .geometry import (
    AffineFlat,
    GeometryError,
    Point,
    Vector,
    as_point,
    as_vector,
    dist2,
    is_zero_vector,
    norm2,
    nullspace,
    solve_particular,
    vadd,
    vdot,
    vscale,
    vsub,
)
from .polytope import (
    Polytope,
    convex_hull,
    is_extreme,
    project,
    section,
)


class CriterionError(GeometryError):
    pass


# ---------------------------------------------------------------------------
# polygonality detection


@dataclass(frozen=True)
class PolygonalityVerdict:
    kind: str  # "polygon" | "curved"
    edges: int | None
    witness_triple: tuple[int, int, int] | None
    witness_area: float
    tau_area: float
    diameter: float


def _triple_area(a, b, c) -> float:
    return 0.5 * abs(
        (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    )


def polygonality_detect(sample: SectionSample, tau: float = 1e-9) -> PolygonalityVerdict:
    """Decide whether angularly-ordered boundary points trace a polygon.

    Corners are consecutive triples whose triangle area exceeds
    tau * diameter^2; cyclically adjacent corners collapse into one vertex
    group.  The points form a polygon when corners are scarce (< n/3) and
    every stretch between vertex groups hugs its chord; otherwise the
    verdict is "curved" with the highest-area triple as witness.  Repeated
    consecutive points (support-point plateaus) are naturally zero-area.
    """
    pts = sample.points
    n = len(pts)
    if n < 8:
        raise CriterionError("polygonality detection needs at least 8 points")
    diam = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            d = math.hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1])
            if d > diam:
                diam = d
    tau_area = tau * diam * diam
    if diam == 0.0:
        return PolygonalityVerdict("polygon", 0, None, 0.0, tau_area, 0.0)

    areas = [
        _triple_area(pts[i - 1], pts[i], pts[(i + 1) % n]) for i in range(n)
    ]
    best = max(range(n), key=lambda i: areas[i])
    witness = ((best - 1) % n, best, (best + 1) % n)
    corners = [i for i in range(n) if areas[i] > tau_area]
    if not corners:
        return PolygonalityVerdict("polygon", 1, None, areas[best], tau_area, diam)
    if len(corners) >= n / 3:
        return PolygonalityVerdict(
            "curved", None, witness, areas[best], tau_area, diam
        )

    # collapse cyclically-adjacent corner indices into vertex groups
    corner_set = set(corners)
    groups: list[list[int]] = []
    for i in corners:
        if groups and (i - 1) in corner_set and groups[-1][-1] == i - 1:
            groups[-1].append(i)
        else:
            groups.append([i])
    if len(groups) > 1 and groups[0][0] == 0 and groups[-1][-1] == n - 1:
        groups[0] = groups.pop() + groups[0]

    # every stretch between vertex groups must hug its chord
    tau_chord = math.sqrt(tau) * diam
    g = len(groups)
    for t in range(g):
        a_idx = groups[t][-1]
        b_idx = groups[(t + 1) % g][0]
        a, b = pts[a_idx], pts[b_idx]
        ab = math.hypot(b[0] - a[0], b[1] - a[1])
        i = (a_idx + 1) % n
        while i != b_idx:
            if ab > 0:
                sag = 2.0 * _triple_area(a, pts[i], b) / ab
                if sag > tau_chord:
                    w = ((i - 1) % n, i, (i + 1) % n)
                    return PolygonalityVerdict(
                        "curved", None, w, areas[i], tau_area, diam
                    )
            i = (i + 1) % n
    return PolygonalityVerdict("polygon", g, None, areas[best], tau_area, diam)


# ---------------------------------------------------------------------------
# shared report plumbing


@dataclass(frozen=True)
class KleeWitness:
    sample_index: int
    kind: str  # "section" | "projection" | "visual-cone"
    normals: tuple[tuple[float, ...], ...]
    offsets: tuple[float, ...]
    points: tuple[tuple[float, float], ...]
    triple: tuple[int, int, int] | None
    triple_area: float
    reverified: bool
    apex: tuple[float, ...] | None = None


@dataclass(frozen=True)
class CriterionReport:
    criterion: str  # "K1" | "K2" | "T1.1" | "T1.2"
    verdict: str  # "polytope-consistent" | "non-polytope"
    body_name: str
    exact: bool
    budget: int
    samples_used: int
    boundary_points: int
    tau: float
    seed: int
    witness: KleeWitness | None
    notes: tuple[str, ...] = ()


RATIONALIZE_DENOMINATOR = 2**20


def _rationalize(v, den: int = RATIONALIZE_DENOMINATOR) -> Vector:
    return tuple(Fraction(round(float(x) * den), den) for x in v)


def _gauss_unit(rng: random.Random, d: int) -> tuple[float, ...]:
    while True:
        v = [rng.gauss(0.0, 1.0) for _ in range(d)]
        n = math.sqrt(sum(x * x for x in v))
        if n > 1e-9:
            return tuple(x / n for x in v)


def _resolve_body(body) -> tuple[Polytope | None, BodyOracle | None, str, bool]:
    """Split the input into (exact polytope, oracle, name, exactness)."""
    if isinstance(body, Polytope):
        return body, None, "polytope", True
    if isinstance(body, BodyOracle):
        if body.polytope is not None:
            return body.polytope, body, body.name, True
        return None, body, body.name, False
    raise CriterionError("body must be a Polytope or a BodyOracle")


def _delta_value(delta, direction) -> float:
    if delta is None:
        return 0.0
    if callable(delta):
        return float(delta(direction))
    return float(delta)


# ---------------------------------------------------------------------------
# K1 / T1.1: sections


def klee_section_test(
    body,
    flats: int,
    seed: int = 0,
    *,
    k: int = 2,
    delta=None,
    boundary_points: int = 48,
    tau: float = 1e-9,
    criterion: str | None = None,
) -> CriterionReport:
    """Sample k-dimensional sections and test each for polygonality.

    Flats are intersections of hyperplanes {x . xi = delta(xi)} over seeded
    random directions xi; delta=None means central sections.  Exact
    polytopes get exact sections (always polygons, so the run checks the
    flat family's interior coverage); oracle bodies are boundary-sampled
    and a curved section, re-verified at 4x density, refutes.  Flats that
    miss the interior are reported as coverage violations, never silently
    skipped.
    """
    poly, oracle, name, exact = _resolve_body(body)
    if criterion is None:
        criterion = "K1" if delta is None else "T1.1"
    if flats < 0:
        raise CriterionError("flat budget must be nonnegative")
    d = poly.ambient_dim if poly is not None else oracle.dim
    if not 2 <= k <= d - 1:
        raise CriterionError("section dimension k must satisfy 2 <= k <= d-1")
    if poly is None and k != 2:
        raise CriterionError("oracle bodies support k = 2 only")
    if poly is None and d != 3:
        raise CriterionError("oracle section sampling supports dimension 3 only")
    rng = random.Random(seed)
    notes: list[str] = []
    if flats == 0:
        notes.append("zero-budget")
    used = 0
    witness = None
    for i in range(flats):
        if poly is not None:
            outcome = _exact_section_sample(poly, rng, d, k, delta)
            used += 1
            if outcome is not None:
                notes.append(f"sample {i}: {outcome}")
            continue
        flat, xi, dv = _oracle_flat(rng, d, delta)
        used += 1
        try:
            samp = sample_section_boundary(oracle, flat, boundary_points)
        except BodyError:
            notes.append(f"sample {i}: coverage violation (flat misses interior)")
            continue
        verdict = polygonality_detect(samp, tau)
        if verdict.kind != "curved":
            continue
        try:
            samp4 = sample_section_boundary(oracle, flat, 4 * boundary_points)
            verdict4 = polygonality_detect(samp4, tau)
        except BodyError:
            verdict4 = None
        if verdict4 is not None and verdict4.kind == "curved":
            witness = KleeWitness(
                i,
                "section",
                (xi,),
                (dv,),
                samp4.points,
                verdict4.witness_triple,
                verdict4.witness_area,
                True,
            )
            break
        notes.append(f"sample {i}: witness failed 4x re-verification")
    verdict_str = "non-polytope" if witness is not None else "polytope-consistent"
    return CriterionReport(
        criterion, verdict_str, name, exact, flats, used,
        boundary_points, tau, seed, witness, tuple(notes),
    )


def _exact_section_sample(poly, rng, d, k, delta) -> str | None:
    """One exact section; returns a coverage-violation note or None."""
    while True:
        normals_f = [_gauss_unit(rng, d) for _ in range(d - k)]
        normals = [_rationalize(f) for f in normals_f]
        offsets = [Fraction(0)] * len(normals)
        for j, f in enumerate(normals_f):
            offsets[j] = _rationalize((_delta_value(delta, f),))[0]
        base = solve_particular(normals, offsets)
        if base is None:
            continue
        try:
            flat = AffineFlat.spanning(base, nullspace(normals))
        except GeometryError:
            continue
        if flat.dim != k:
            continue
        break
    sec = section(poly, flat)
    if sec is None:
        return "coverage violation (flat misses the body)"
    if not sec.meets_interior:
        return "coverage violation (flat misses the interior)"
    # exact sections are polytopes by construction; nothing to refute
    return None


def _oracle_flat(rng, d, delta):
    while True:
        xi = _gauss_unit(rng, d)
        xr = _rationalize(xi)
        if is_zero_vector(xr):
            continue
        dv = _delta_value(delta, xi)
        dr = _rationalize((dv,))[0]
        j = next(i for i, x in enumerate(xr) if x != 0)
        base = tuple(
            dr / xr[j] if i == j else Fraction(0) for i in range(d)
        )
        try:
            flat = AffineFlat.spanning(base, nullspace([xr]))
        except GeometryError:
            continue
        if flat.dim == d - 1:
            return flat, xi, dv


# ---------------------------------------------------------------------------
# K2: projections


def klee_projection_test(
    body,
    subspaces: int,
    seed: int = 0,
    *,
    k: int = 2,
    boundary_points: int = 64,
    tau: float = 1e-9,
) -> CriterionReport:
    """Sample k-dimensional orthogonal shadows and test each for polygonality.

    Exact polytopes: the shadow is hulled exactly and cross-checked against
    the hull of the independently extreme-filtered projected vertices.
    Oracle bodies: the shadow's support function is the restriction of the
    body's (h_{K|E}(u) = h_K(u) for u in E), so support points traced
    around the direction circle sample the shadow boundary; piecewise
    linearity shows up as support-point plateaus, curvature as a moving
    point.
    """
    poly, oracle, name, exact = _resolve_body(body)
    if subspaces < 0:
        raise CriterionError("subspace budget must be nonnegative")
    d = poly.ambient_dim if poly is not None else oracle.dim
    if not 2 <= k <= d - 1:
        raise CriterionError("projection dimension k must satisfy 2 <= k <= d-1")
    if poly is None and k != 2:
        raise CriterionError("oracle bodies support k = 2 only")
    rng = random.Random(seed)
    notes: list[str] = []
    if subspaces == 0:
        notes.append("zero-budget")
    used = 0
    witness = None
    origin = tuple(Fraction(0) for _ in range(d))
    for i in range(subspaces):
        if poly is not None:
            E = _random_subspace_exact(rng, origin, d, k)
            used += 1
            _exact_projection_check(poly, E)
            continue
        frame = _orthonormal_frame(rng, d, 2)
        used += 1
        pts = _support_shadow(oracle, frame, boundary_points)
        verdict = polygonality_detect(SectionSample(None, pts, ()), tau)
        if verdict.kind != "curved":
            continue
        pts4 = _support_shadow(oracle, frame, 4 * boundary_points)
        verdict4 = polygonality_detect(SectionSample(None, pts4, ()), tau)
        if verdict4.kind == "curved":
            witness = KleeWitness(
                i, "projection", frame, (), pts4,
                verdict4.witness_triple, verdict4.witness_area, True,
            )
            break
        notes.append(f"sample {i}: witness failed 4x re-verification")
    verdict_str = "non-polytope" if witness is not None else "polytope-consistent"
    return CriterionReport(
        "K2", verdict_str, name, exact, subspaces, used,
        boundary_points, tau, seed, witness, tuple(notes),
    )


def _random_subspace_exact(rng, origin, d, k) -> AffineFlat:
    while True:
        dirs = [_rationalize(_gauss_unit(rng, d)) for _ in range(k)]
        try:
            E = AffineFlat.spanning(origin, dirs)
        except GeometryError:
            continue
        if E.dim == k:
            return E


def _exact_projection_check(poly: Polytope, E: AffineFlat) -> None:
    """Shadow via project() must equal the hull of extreme projected vertices."""
    proj = project(poly, E)
    pts = [E.projected_coordinates(v) for v in poly.vertices]
    hull = convex_hull(pts) if E.dim > 1 else None
    if hull is None:
        from .polytope import convex_hull_interval

        hull = convex_hull_interval(pts)
    ext = [p for p in dict.fromkeys(pts) if is_extreme(p, hull)]
    rehull = convex_hull(ext) if E.dim > 1 else hull
    if proj.polytope.vertices != rehull.vertices:
        raise CriterionError("projection disagrees with the extreme-point hull")
    if proj.polytope.halfspaces != rehull.halfspaces:
        raise CriterionError("projection facets disagree with the extreme-point hull")


def _orthonormal_frame(rng, d, k):
    while True:
        vecs = []
        for _ in range(k):
            v = list(_gauss_unit(rng, d))
            for u in vecs:
                dot = sum(a * b for a, b in zip(v, u))
                v = [a - dot * b for a, b in zip(v, u)]
            n = math.sqrt(sum(x * x for x in v))
            if n < 1e-6:
                break
            vecs.append(tuple(x / n for x in v))
        if len(vecs) == k:
            return tuple(vecs)


def _support_shadow(oracle: BodyOracle, frame, count):
    e1, e2 = frame
    pts = []
    for j in range(count):
        th = 2.0 * math.pi * j / count
        u = tuple(
            math.cos(th) * a + math.sin(th) * b for a, b in zip(e1, e2)
        )
        _, s = oracle.support(u)
        pts.append((
            sum(si * ai for si, ai in zip(s, e1)),
            sum(si * bi for si, bi in zip(s, e2)),
        ))
    return tuple(pts)


# ---------------------------------------------------------------------------
# T1.2: visual cones


def sphere_apexes(center, radius: float, count: int, rng: random.Random):
    c = tuple(float(x) for x in center)
    out = []
    for _ in range(count):
        u = _gauss_unit(rng, len(c))
        out.append(tuple(ci + radius * ui for ci, ui in zip(c, u)))
    return out


def visual_cone_test(
    body,
    apex_source,
    seed: int = 0,
    *,
    budget: int = 8,
    sections_per_apex: int = 2,
    boundary_points: int = 32,
    tau: float = 1e-9,
) -> CriterionReport:
    """Build visual cones from outside apexes and test them for polyhedrality.

    apex_source is either an iterable of apex points or a tuple
    ("sphere", center, radius) sampled `budget` times.  Exact bodies give
    exact cones (polyhedral by construction, so the run validates apex
    placement); oracle bodies get a ray-hit membership cone scanned by
    mirkil_scan's cross-section sampler.  An apex inside or on the body is
    an error, per the outside-apex precondition.
    """
    from .cones import mirkil_scan, visual_cone

    poly, oracle, name, exact = _resolve_body(body)
    rng = random.Random(seed)
    if isinstance(apex_source, tuple) and apex_source and apex_source[0] == "sphere":
        _, center, radius = apex_source
        apexes = sphere_apexes(center, float(radius), budget, rng)
    else:
        apexes = [tuple(float(x) for x in a) for a in apex_source]
    notes: list[str] = []
    if not apexes:
        notes.append("zero-budget")
    used = 0
    witness = None
    for i, apex in enumerate(apexes):
        used += 1
        if poly is not None:
            cone = visual_cone(_rationalize(apex), poly)
            notes.append(f"apex {i}: exact cone, {cone.extreme_ray_count} extreme rays")
            continue
        cone_oracle = _ray_hit_cone_oracle(oracle, apex)
        report = mirkil_scan(
            cone_oracle, sections_per_apex, seed=seed + i,
            boundary_points=boundary_points, tau=tau,
        )
        if report.verdict == "non-polyhedral":
            w = report.witness
            witness = KleeWitness(
                i, "visual-cone", (), (), w.points, w.triple,
                w.triple_area, True, apex=apex,
            )
            break
    verdict_str = "non-polytope" if witness is not None else "polytope-consistent"
    return CriterionReport(
        "T1.2", verdict_str, name, exact, len(apexes), used,
        boundary_points, tau, seed, witness, tuple(notes),
    )


def _ray_hit_cone_oracle(body: BodyOracle, apex):
    """Directional membership for the visual cone of an oracle body.

    A direction is in the cone iff the ray from the apex meets the body:
    the Minkowski gauge of the body (anchored at its interior hint) is
    convex along the ray, so a ternary search finds its minimum and the
    comparison with 1 decides the hit.
    """
    from .cones import ConeError, ConeOracle

    z = tuple(float(x) for x in apex)
    if body.member(z):
        raise ConeError("apex must lie strictly outside the body")
    hint = body.interior_hint
    reach = math.sqrt(sum((h - a) ** 2 for h, a in zip(hint, z)))
    spread = 0.0
    for axis in range(body.dim):
        e = tuple(1.0 if i == axis else 0.0 for i in range(body.dim))
        hi, _ = body.support(e)
        lo, _ = body.support(tuple(-x for x in e))
        spread = max(spread, hi + lo)
    tmax = 4.0 * (reach + spread)

    def gauge(x) -> float:
        # Minkowski functional of the body anchored at the interior hint
        lo, hi = 0.0, 1.0
        probe = lambda s: tuple(h + s * (xi - h) for h, xi in zip(hint, x))
        if body.member(x):
            return 1.0
        for _ in range(30):
            mid = 0.5 * (lo + hi)
            if body.member(probe(mid)):
                lo = mid
            else:
                hi = mid
        s = 0.5 * (lo + hi)
        return 1.0 / max(s, 1e-30)

    def member(u):
        nu = math.sqrt(sum(x * x for x in u))
        if nu == 0:
            return True
        uu = tuple(x / nu for x in u)
        at = lambda t: tuple(zi + t * ui for zi, ui in zip(z, uu))
        # cheap pass: any coarse sample inside decides immediately
        for j in range(1, 33):
            if body.member(at(tmax * j / 32.0)):
                return True
        # near-miss/near-tangent: minimize the convex gauge along the ray
        g = lambda t: gauge(at(t))
        lo, hi = 1e-9, tmax
        for _ in range(30):
            m1 = lo + (hi - lo) / 3
            m2 = hi - (hi - lo) / 3
            if g(m1) <= g(m2):
                hi = m2
            else:
                lo = m1
        return g(0.5 * (lo + hi)) <= 1.0 + 1e-7

    axis_hint = tuple(h - a for h, a in zip(hint, z))
    return ConeOracle(body.dim, z, member, axis_hint, None, f"visual-cone({body.name})")


# ---------------------------------------------------------------------------
# exclusion certificates


@dataclass(frozen=True)
class EpsilonCert:
    p: Point
    q: Point
    case: str  # "interior-crossing" | "boundary-segment"
    epsilon: float
    midpoint: Point
    bound_branches: tuple[float, ...]
    radius: float | None = None
    flat_normal: Vector | None = None
    flat_offset: Fraction | None = None
    vertex_set: tuple[Point, ...] = ()
    distance: float | None = None
    interior_point: Point | None = None


def default_normal_family(dim: int, count: int = 24, seed: int = 0):
    """Axis directions plus seeded rationalized random normals."""
    rng = random.Random(seed)
    family = [
        tuple(Fraction(1 if i == a else 0) for i in range(dim))
        for a in range(dim)
    ]
    while len(family) < count:
        v = _rationalize(_gauss_unit(rng, dim))
        if not is_zero_vector(v):
            family.append(v)
    return tuple(family)


def epsilon_certificate(
    body: Polytope, p, q, family: Iterable[Vector] | None = None, seed: int = 0
) -> EpsilonCert:
    """Exclusion radius around p for the segment [p q] inside a polytope.

    Case "interior-crossing" (the open segment meets the interior): around
    the midpoint x an inscribed ball of radius R gives
    ε = ½·min{sqrt(|p-x|² − R²), arcsin(R/|p-x|)}.  Case
    "boundary-segment" ([p q] lies in the boundary): a transversal flat
    through x is chosen from the family (most transverse wins), the facets
    of the section at x supply vertices x_j, and
    ε = ½·min{dist(p, flat), min_j angle(x_j, p, q)}.  The midpoint decides
    the case exactly: for a convex body, the open segment meets the
    interior iff its midpoint does.
    """
    p = as_point(p)
    q = as_point(q)
    if p == q:
        raise CriterionError("certificate needs two distinct points")
    if body.contains(p) == "outside" or body.contains(q) == "outside":
        raise CriterionError("both points must lie in the body")
    mid = vscale(vadd(p, q), Fraction(1, 2))
    d = body.ambient_dim
    full_dim = body.dim == d

    if full_dim and body.contains(mid) == "interior":
        # inscribed ball at the midpoint; exact distances, float trig
        r2_min = None
        for hs in body.halfspaces:
            num = hs.offset - vdot(hs.normal, mid)
            val = float(num) / math.sqrt(float(norm2(hs.normal)))
            if r2_min is None or val < r2_min:
                r2_min = val
        dist_px = math.sqrt(float(dist2(p, mid)))
        radius = min(r2_min, 0.99 * dist_px)
        branch1 = math.sqrt(max(dist_px * dist_px - radius * radius, 0.0))
        branch2 = math.asin(min(radius / dist_px, 1.0))
        eps = 0.5 * min(branch1, branch2)
        return EpsilonCert(
            p, q, "interior-crossing", eps, mid,
            (branch1, branch2), radius=radius,
        )

    # boundary segment: most transverse family flat through the midpoint
    u = vsub(q, p)
    if family is None:
        family = default_normal_family(d, seed=seed)
    best = None
    best_score = None
    for nu in family:
        nu = as_vector(nu)
        dot = vdot(u, nu)
        if dot == 0:
            continue
        score = dot * dot / (norm2(u) * norm2(nu))
        if best_score is None or score > best_score:
            best, best_score = nu, score
    if best is None:
        raise CriterionError(
            "family-coverage failure: no flat transversal to the segment"
        )
    flat = AffineFlat.spanning(mid, nullspace([best]))
    sec = section(body, flat)
    if sec is None:
        raise CriterionError("transversal flat unexpectedly missed the body")
    spoly = sec.polytope
    x_chart = spoly.to_chart(flat.coordinates(mid))
    if x_chart is None:
        raise CriterionError("midpoint fell off its own section")
    vertex_ids: set[int] = set()
    for hs, face in zip(spoly.halfspaces, spoly.facet_vertices):
        if hs.evaluate(x_chart) == 0:
            vertex_ids.update(face)
    xs = [
        sec.ambient_vertices[i]
        for i in sorted(vertex_ids)
        if sec.ambient_vertices[i] != mid
    ]
    delta = abs(float(vdot(best, vsub(p, mid)))) / math.sqrt(float(norm2(best)))
    branches = [delta]
    for xj in xs:
        branches.append(_angle(vsub(xj, p), vsub(q, p)))
    eps = 0.5 * min(branches)
    interior_pt = flat.point_at(spoly.interior_point())
    return EpsilonCert(
        p, q, "boundary-segment", eps, mid, tuple(branches),
        flat_normal=best, flat_offset=vdot(best, mid),
        vertex_set=tuple(xs), distance=delta, interior_point=interior_pt,
    )


def _angle(a: Vector, b: Vector) -> float:
    num = float(vdot(a, b))
    den = math.sqrt(float(norm2(a)) * float(norm2(b)))
    if den == 0:
        raise CriterionError("angle of a zero vector is undefined")
    return math.acos(max(-1.0, min(1.0, num / den)))


def _angle_below(dot_: Fraction, a2: Fraction, b2: Fraction, cos_bound: Fraction) -> bool:
    """Exact test: is the angle between vectors (dot, |a|², |b|²) < bound?

    Compares cos(angle) > cos_bound via squared quantities only.
    """
    ab = a2 * b2
    if cos_bound <= 0:
        if dot_ >= 0:
            return dot_ > 0 or cos_bound < 0
        return dot_ * dot_ < cos_bound * cos_bound * ab
    if dot_ <= 0:
        return False
    return dot_ * dot_ > cos_bound * cos_bound * ab


def no_extreme_in_cone(body, p, q, epsilon: float) -> bool:
    """No vertex y ≠ p with |p-y| < ε and angle(y, p, q) < ε (exact).

    The angle comparison uses the exactly-representable rationalization of
    cos(ε); since certificates halve a strict bound, the sub-ulp slack
    cannot flip a certified verdict.
    """
    if epsilon <= 0:
        raise CriterionError("epsilon must be positive")
    poly = body if isinstance(body, Polytope) else convex_hull(body)
    p = as_point(p)
    q = as_point(q)
    u = vsub(q, p)
    if is_zero_vector(u):
        raise CriterionError("p and q must differ")
    eps2 = Fraction(epsilon) ** 2
    cos_bound = Fraction(math.cos(min(epsilon, math.pi)))
    u2 = norm2(u)
    for y in poly.vertices:
        if y == p:
            continue
        w = vsub(y, p)
        if norm2(w) >= eps2:
            continue
        if _angle_below(vdot(w, u), norm2(w), u2, cos_bound):
            return False
    return True


# ---------------------------------------------------------------------------
# drift inequality


@dataclass(frozen=True)
class DriftConfig:
    """Angle bookkeeping for a segment drifting toward a limit ray.

    gamma: angle between the boundary segment and the limit ray;
    xi, phi: angles splitting the drifting point's offset between the
    section plane and its normal; eps1: distance from p to the drifting
    point; eps2: its angle from the limit ray.
    """

    gamma: float
    xi: float
    phi: float
    eps1: float
    eps2: float
    realized: bool = False


@dataclass(frozen=True)
class DriftResult:
    lhs: float
    rhs: float
    holds: bool
    lengths: dict
    chain_lhs: float
    chain_rhs: float
    chain_holds: bool


def drift_inequality_eval(cfg: DriftConfig) -> DriftResult:
    """Evaluate tan γ ≤ tan ε₂ (cos ξ cot φ + sin ξ) plus its length chain.

    The five derived lengths come from right-triangle identities of the
    configuration; the inequality is the triangle inequality
    |a-b| ≤ |a-t| + |t-b| divided by |b-p|.  Realized configurations
    (built from actual points) always satisfy it; synthetic angle tuples
    may not, and the report says which side failed.
    """
    if not 0 <= cfg.gamma < math.pi / 2:
        raise CriterionError("gamma must lie in [0, pi/2)")
    if not 0 < cfg.phi <= math.pi / 2:
        raise CriterionError("phi must lie in (0, pi/2] (phi = 0 degenerate)")
    if not 0 <= cfg.xi <= math.pi / 2:
        raise CriterionError("xi must lie in [0, pi/2]")
    if not 0 <= cfg.eps2 < math.pi / 2:
        raise CriterionError("eps2 must lie in [0, pi/2)")
    if cfg.eps1 <= 0:
        raise CriterionError("eps1 must be positive")
    l_bq = cfg.eps1 * math.sin(cfg.eps2)
    l_bp = cfg.eps1 * math.cos(cfg.eps2)
    l_ab = l_bp * math.tan(cfg.gamma)
    l_at = l_bq * math.cos(cfg.xi) * (math.cos(cfg.phi) / math.sin(cfg.phi))
    l_bt = l_bq * math.sin(cfg.xi)
    lengths = {
        "b-q": l_bq,
        "b-p": l_bp,
        "a-b": l_ab,
        "a-t": l_at,
        "b-t": l_bt,
    }
    lhs = math.tan(cfg.gamma)
    rhs = math.tan(cfg.eps2) * (
        math.cos(cfg.xi) * (math.cos(cfg.phi) / math.sin(cfg.phi))
        + math.sin(cfg.xi)
    )
    guard = 1e-12 * (1.0 + abs(rhs))
    holds = lhs <= rhs + guard
    chain_holds = l_ab <= l_at + l_bt + 1e-12 * (1.0 + l_at + l_bt)
    return DriftResult(lhs, rhs, holds, lengths, l_ab, l_at + l_bt, chain_holds)


def drift_config_from_geometry(
    p, q, q_n, gamma: float = 0.15, tilt: float = math.pi / 4
) -> tuple[DriftConfig, dict]:
    """Measure a DriftConfig from actual 3-dimensional points.

    p, q span the boundary segment; q_n is the drifting point (off the
    line through p and q).  The section plane holds the segment and a
    direction tilted between q_n's offset and its normal; the limit ray is
    the segment direction rotated by gamma inside that plane.  All aux
    points (feet of perpendiculars a, b, t) are real, so the measured
    lengths obey the inequality by the plain triangle inequality.
    """
    p = tuple(float(x) for x in p)
    q = tuple(float(x) for x in q)
    qn = tuple(float(x) for x in q_n)
    if len(p) != 3 or len(q) != 3 or len(qn) != 3:
        raise CriterionError("geometric drift configurations live in dimension 3")
    if not 0 <= gamma < math.pi / 2:
        raise CriterionError("gamma must lie in [0, pi/2)")
    u = tuple(b - a for a, b in zip(p, q))
    w = tuple(b - a for a, b in zip(p, qn))
    un = math.sqrt(sum(x * x for x in u))
    if un == 0:
        raise CriterionError("p and q must differ")
    uh = tuple(x / un for x in u)
    w_par = sum(a * b for a, b in zip(w, uh))
    w_perp = tuple(a - w_par * b for a, b in zip(w, uh))
    wn = math.sqrt(sum(x * x for x in w_perp))
    if wn < 1e-12:
        raise CriterionError("q_n must lie off the segment's line")
    wp = tuple(x / wn for x in w_perp)
    nrm = (
        uh[1] * wp[2] - uh[2] * wp[1],
        uh[2] * wp[0] - uh[0] * wp[2],
        uh[0] * wp[1] - uh[1] * wp[0],
    )
    # section-plane direction: tilt between the offset and its normal
    h2 = tuple(
        math.cos(tilt) * a + math.sin(tilt) * b for a, b in zip(wp, nrm)
    )
    h3 = (
        uh[1] * h2[2] - uh[2] * h2[1],
        uh[2] * h2[0] - uh[0] * h2[2],
        uh[0] * h2[1] - uh[1] * h2[0],
    )
    l_hat = tuple(
        math.cos(gamma) * a + math.sin(gamma) * b for a, b in zip(uh, h2)
    )
    w_l = sum(a * b for a, b in zip(w, l_hat))
    if w_l <= 0:
        raise CriterionError("drifting point must lie forward of the limit ray")
    b_pt = tuple(a + w_l * lh for a, lh in zip(p, l_hat))
    w_u = sum(a * b for a, b in zip(w, uh))
    w_h2 = sum(a * b for a, b in zip(w, h2))
    t_pt = tuple(a + w_u * x + w_h2 * y for a, x, y in zip(p, uh, h2))
    tau_a = w_u + math.tan(gamma) * w_h2
    if not 0 <= tau_a <= un:
        raise CriterionError("perpendicular foot falls outside the segment")
    a_pt = tuple(a + tau_a * x for a, x in zip(p, uh))
    eps1 = math.sqrt(sum(x * x for x in w))
    eps2 = _fangle(w, l_hat)
    l_bt = math.dist(b_pt, t_pt)
    l_tq = math.dist(t_pt, qn)
    l_at = math.dist(a_pt, t_pt)
    if l_tq < 1e-12 or l_at < 1e-12:
        raise CriterionError("degenerate configuration: coincident aux points")
    xi = math.atan2(l_bt, l_tq)
    phi = math.atan2(l_tq, l_at)
    points = {"p": p, "q": q, "q_n": qn, "a": a_pt, "b": b_pt, "t": t_pt}
    return DriftConfig(gamma, xi, phi, eps1, eps2, realized=True), points


def _fangle(a, b) -> float:
    num = sum(x * y for x, y in zip(a, b))
    den = math.sqrt(sum(x * x for x in a) * sum(y * y for y in b))
    return math.acos(max(-1.0, min(1.0, num / den)))
