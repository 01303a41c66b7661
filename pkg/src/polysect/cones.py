"""Pointed polyhedral cones and the subspace polyhedrality scan.

A cone is stored as apex + primitive extreme-ray directions together with a
functional that is strictly positive on every ray.  Scaling the rays onto
the hyperplane {positive_normal . y = 1} gives a bounded base polytope; ray
reduction, halfspace forms, membership, and sections through the apex all
reduce to exact polytope operations on that base.

Cones that are only known through a directional membership oracle (round
visual cones and the like) are scanned: random 3-dimensional subspaces
through the apex, a 2-dimensional cross-section of each, and a polygonality
verdict per section.  The scan refutes polyhedrality or stays consistent;
it never proves it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Sequence

from .geometry import (
    AffineFlat,
    DimensionMismatch,
    GeometryError,
    Point,
    Vector,
    as_point,
    as_vector,
    is_zero_vector,
    norm2,
    nullspace,
    vadd,
    vdot,
    vneg,
    vscale,
    vsub,
)
from .polytope import (
    Halfspace,
    Polytope,
    _canonical_halfspace,
    convex_hull,
    convex_hull_interval,
    section as _polytope_section,
    vertices_of,
)


class ConeError(GeometryError):
    pass


def primitive_direction(v: Vector) -> Vector:
    """Scale a rational direction to coprime integers (same orientation)."""
    v = as_vector(v)
    if is_zero_vector(v):
        raise ConeError("zero vector has no direction")
    scale = lcm(*[x.denominator for x in v])
    ints = [int(x * scale) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    return tuple(Fraction(x // g) for x in ints)


@dataclass(frozen=True)
class PolyCone:
    """Pointed polyhedral cone: apex plus primitive extreme-ray directions.

    halfspaces (when full-dimensional) are apex-relative:
    cone = {apex + y : normal . y <= 0 for every halfspace}.
    positive_normal is strictly positive on every generator; base is the
    hull of the generators scaled onto {positive_normal . y = 1}.
    """

    apex: Point
    generators: tuple[Vector, ...]
    span_dim: int
    halfspaces: tuple[Halfspace, ...] | None
    positive_normal: Vector
    base: Polytope | None

    @property
    def ambient_dim(self) -> int:
        return len(self.apex)

    @property
    def extreme_ray_count(self) -> int:
        return len(self.generators)

    def contains_direction(self, direction) -> bool:
        """Exact: does the ray apex + t*direction (t >= 0) stay in the cone?"""
        u = as_vector(direction)
        if len(u) != self.ambient_dim:
            raise DimensionMismatch("direction dimension differs from the cone")
        if is_zero_vector(u):
            return True
        if self.base is None:
            return False
        t = vdot(self.positive_normal, u)
        if t <= 0:
            return False
        return self.base.contains(vscale(u, 1 / t)) != "outside"

    def contains_point(self, point) -> bool:
        return self.contains_direction(vsub(as_point(point), self.apex))


@dataclass(frozen=True)
class ConeSection:
    """Intersection of a cone with a flat through its apex, in chart form.

    `cone` lives in the flat's chart with its apex at the chart origin.
    """

    apex: Point
    flat: AffineFlat
    cone: PolyCone


def _lift_base_facets(base: Polytope, w: Vector) -> tuple[Halfspace, ...]:
    """Homogenize the base polytope's chart facets into cone halfspaces.

    A chart constraint a.s <= b on {w.y = 1} becomes m.y <= b + m.base0 with
    m = sum_j (a_j/|b_j|^2) b_j, and homogenizing against w.y = 1 yields
    (m - c*w).y <= 0 on the whole cone.
    """
    span = base.span
    d = len(w)
    out = []
    for hs in base.halfspaces:
        m = tuple(Fraction(0) for _ in range(d))
        for a_j, b_j in zip(hs.normal, span.basis):
            m = vadd(m, vscale(b_j, a_j / norm2(b_j)))
        c = hs.offset + vdot(m, span.base)
        n = vsub(m, vscale(w, c))
        out.append(_canonical_halfspace(n, Fraction(0)))
    return tuple(sorted(out, key=lambda h: (h.normal, h.offset)))


def _cone_from_rays(apex: Point, directions, w: Vector) -> PolyCone:
    gens = [as_vector(g) for g in directions]
    gens = [g for g in gens if not is_zero_vector(g)]
    if not gens:
        return PolyCone(tuple(apex), (), 0, None, tuple(w), None)
    for g in gens:
        if vdot(w, g) <= 0:
            raise ConeError("functional is not strictly positive on a generator")
    base_pts = [vscale(g, 1 / vdot(w, g)) for g in gens]
    d = len(apex)
    base = convex_hull_interval(base_pts) if d == 1 else convex_hull(base_pts)
    rays = tuple(sorted(primitive_direction(v) for v in base.vertices))
    if d == 1:
        halfspaces = (_canonical_halfspace(vneg(rays[0]), Fraction(0)),)
    elif base.dim == d - 1:
        halfspaces = _lift_base_facets(base, tuple(w))
    else:
        halfspaces = None
    return PolyCone(tuple(apex), rays, base.dim + 1, halfspaces, tuple(w), base)


def _positive_functional(gens: list[Vector]) -> Vector:
    """A w with w.g > 0 for every generator; raises when the cone is not pointed.

    w is a relative-interior point of the dual {w : w.g >= 0} clipped to the
    unit box; strict positivity on every generator certifies pointedness.
    """
    d = len(gens[0])
    if d == 1:
        signs = {1 if g[0] > 0 else -1 for g in gens}
        if len(signs) > 1:
            raise ConeError("generators span a line: the cone is not pointed")
        return (Fraction(next(iter(signs))),)
    hss = [Halfspace(vneg(primitive_direction(g)), Fraction(0)) for g in gens]
    for axis in range(d):
        for sign in (1, -1):
            n = tuple(Fraction(sign if i == axis else 0) for i in range(d))
            hss.append(Halfspace(n, Fraction(1)))
    dual = vertices_of(hss)
    w = dual.interior_point()
    for g in gens:
        if vdot(w, g) <= 0:
            raise ConeError("cone has a lineality direction (not pointed)")
    return w


def from_generators(apex, directions) -> PolyCone:
    """Cone from arbitrary generators, reduced to its extreme rays.

    Requires a pointed cone; a lineality direction is detected and rejected.
    """
    apex = as_point(apex)
    gens = [as_vector(g) for g in directions]
    for g in gens:
        if len(g) != len(apex):
            raise DimensionMismatch("generator dimension differs from the apex")
    gens = [g for g in gens if not is_zero_vector(g)]
    if not gens:
        zero = tuple(Fraction(0) for _ in apex)
        return PolyCone(apex, (), 0, None, zero, None)
    w = _positive_functional(gens)
    return _cone_from_rays(apex, gens, w)


def _separating_functional(z: Point, poly: Polytope) -> Vector:
    """A w with w.(v - z) > 0 for every vertex v of the body (z outside)."""
    if poly.dim < poly.ambient_dim:
        zp = poly.span.project_point(z) if poly.span is not None else poly.vertices[0]
        if zp != z:
            return vsub(zp, z)
        cz = poly.to_chart(z)
        for hs in poly.halfspaces:
            if hs.evaluate(cz) > 0:
                m = tuple(Fraction(0) for _ in range(poly.ambient_dim))
                for n_j, b_j in zip(hs.normal, poly.span.basis):
                    m = vadd(m, vscale(b_j, n_j / norm2(b_j)))
                return vneg(m)
    else:
        for hs in poly.halfspaces:
            if hs.evaluate(z) > 0:
                return vneg(hs.normal)
    raise ConeError("no separating halfspace found for an outside point")


def visual_cone(apex, body) -> PolyCone:
    """Cone of rays from an exterior apex through the body, reduced.

    The apex must be strictly outside (inside or boundary is rejected).
    """
    if isinstance(body, Polytope):
        poly = body
    else:
        poly = convex_hull(list(getattr(body, "vertices", body)))
    z = as_point(apex)
    if len(z) != poly.ambient_dim:
        raise DimensionMismatch("apex dimension differs from the body")
    if poly.contains(z) != "outside":
        raise ConeError("apex must lie strictly outside the body")
    w = _separating_functional(z, poly)
    gens = [vsub(v, z) for v in poly.vertices]
    return _cone_from_rays(z, gens, w)


def cone_section(cone: PolyCone, flat: AffineFlat) -> ConeSection | None:
    """Intersect a cone with a flat through its apex (None = only the apex).

    The result cone lives in the flat's chart, re-anchored so the apex is
    the chart origin.  The nonzero part of the intersection corresponds to
    the section of the cone's base polytope by the flat, so everything is
    exact.
    """
    if flat.ambient_dim != cone.ambient_dim:
        raise DimensionMismatch("flat and cone dimensions disagree")
    if not flat.contains(cone.apex):
        raise ConeError("flat must pass through the apex")
    anchored = AffineFlat(cone.apex, flat.basis)
    if cone.base is None:
        return None
    w = cone.positive_normal
    w_chart = tuple(vdot(w, b) for b in anchored.basis)
    if all(x == 0 for x in w_chart):
        return None

    if anchored.dim == 1:
        y0 = vscale(anchored.basis[0], 1 / w_chart[0])
        if cone.base.contains(y0) == "outside":
            return None
        ray_points = [y0]
    else:
        j = next(i for i, x in enumerate(w_chart) if x != 0)
        y0 = vscale(anchored.basis[j], 1 / w_chart[j])
        dirs = []
        for coeffs in nullspace([w_chart]):
            v = tuple(Fraction(0) for _ in range(cone.ambient_dim))
            for c, b in zip(coeffs, anchored.basis):
                v = vadd(v, vscale(b, c))
            dirs.append(v)
        sub = AffineFlat.spanning(y0, dirs)
        sec = _polytope_section(cone.base, sub)
        if sec is None:
            return None
        ray_points = list(sec.ambient_vertices)

    chart_rays = [
        tuple(vdot(r, b) / norm2(b) for b in anchored.basis) for r in ray_points
    ]
    origin = tuple(Fraction(0) for _ in range(anchored.dim))
    chart_cone = _cone_from_rays(origin, chart_rays, w_chart)
    return ConeSection(cone.apex, anchored, chart_cone)


def is_polyhedral_exact(cone: PolyCone) -> bool:
    """A cone in generator form is polyhedral; kept for interface symmetry."""
    return True


# ---------------------------------------------------------------------------
# oracle cones and the subspace scan


@dataclass(frozen=True)
class ConeOracle:
    """Directional membership oracle for a cone with a known apex.

    member(u) answers whether the ray apex + t*u (t >= 0) stays in the cone;
    axis_hint is a roughly-interior direction.  When `exact` is set the scan
    uses exact sections instead of sampling.
    """

    dim: int
    apex: tuple[float, ...]
    member: Callable[[Sequence[float]], bool]
    axis_hint: tuple[float, ...]
    exact: PolyCone | None = None
    name: str = "cone"


@dataclass(frozen=True)
class MirkilWitness:
    sample_index: int
    frame: tuple[tuple[float, ...], ...]
    points: tuple[tuple[float, float], ...]
    triple: tuple[int, int, int]
    triple_area: float


@dataclass(frozen=True)
class MirkilReport:
    verdict: str  # "polyhedral-consistent" | "non-polyhedral"
    samples_requested: int
    samples_used: int
    seed: int
    zero_budget: bool
    witness: MirkilWitness | None
    notes: tuple[str, ...] = ()


def _to_floats(v) -> tuple[float, ...]:
    return tuple(float(x) for x in v)


def _fnorm(v) -> float:
    return math.sqrt(sum(x * x for x in v))


def _funit(v):
    n = _fnorm(v)
    return tuple(x / n for x in v) if n > 0 else None


def _fdot(a, b) -> float:
    return sum(x * y for x, y in zip(a, b))


def cone_oracle_from_exact(cone: PolyCone, name: str = "exact-cone") -> ConeOracle:
    def member(u):
        return cone.contains_direction(tuple(Fraction(float(x)) for x in u))

    if cone.generators:
        acc = [0.0] * cone.ambient_dim
        for g in cone.generators:
            gu = _funit(_to_floats(g))
            for i, x in enumerate(gu):
                acc[i] += x
        hint = _funit(acc) or _to_floats(cone.generators[0])
    else:
        hint = tuple(0.0 for _ in range(cone.ambient_dim))
    return ConeOracle(
        cone.ambient_dim, _to_floats(cone.apex), member, hint, cone, name
    )


def exact_cone_oracle_sampling_only(cone: PolyCone, name: str = "cone") -> ConeOracle:
    """Same membership oracle, but scanned by sampling (for testing the scan)."""
    full = cone_oracle_from_exact(cone, name)
    return ConeOracle(full.dim, full.apex, full.member, full.axis_hint, None, name)


def ball_visual_cone_oracle(apex, center, radius: float) -> ConeOracle:
    """The round cone of directions from `apex` that hit the ball (closed)."""
    z = _to_floats(apex)
    c = _to_floats(center)
    if len(z) != len(c):
        raise DimensionMismatch("apex and center dimensions disagree")
    axis = tuple(b - a for a, b in zip(z, c))
    dist = _fnorm(axis)
    if dist <= radius:
        raise ConeError("apex must lie strictly outside the ball")
    cos_half = math.sqrt(1.0 - (radius / dist) ** 2)

    def member(u):
        nu = _fnorm(u)
        if nu == 0:
            return True
        return _fdot(u, axis) / (nu * dist) >= cos_half - 1e-12

    return ConeOracle(len(z), z, member, tuple(a / dist for a in axis), None, "ball-visual-cone")


def _random_float_frame(rng: random.Random, dim: int, k: int):
    while True:
        vecs = []
        for _ in range(k):
            v = [rng.gauss(0.0, 1.0) for _ in range(dim)]
            for u in vecs:
                d = _fdot(v, u)
                v = [x - d * y for x, y in zip(v, u)]
            n = _fnorm(v)
            if n < 1e-6:
                break
            vecs.append(tuple(x / n for x in v))
        if len(vecs) == k:
            return tuple(vecs)


RATIONALIZE_DENOMINATOR = 2**20


def rationalize(v, den: int = RATIONALIZE_DENOMINATOR) -> Vector:
    return tuple(Fraction(round(float(x) * den), den) for x in v)


def _random_exact_subspace(rng: random.Random, apex: Point, dim: int, k: int) -> AffineFlat:
    while True:
        frame = _random_float_frame(rng, dim, k)
        dirs = [rationalize(f) for f in frame]
        try:
            flat = AffineFlat.spanning(apex, dirs)
        except GeometryError:
            continue
        if flat.dim == k:
            return flat


def _orthonormal_complement_3d(w):
    # any vector not parallel to w, then two Gram-Schmidt steps
    pick = (1.0, 0.0, 0.0) if abs(w[0]) <= 0.9 else (0.0, 1.0, 0.0)
    e1 = _funit(tuple(p - _fdot(pick, w) * x for p, x in zip(pick, w)))
    e2 = (
        w[1] * e1[2] - w[2] * e1[1],
        w[2] * e1[0] - w[0] * e1[2],
        w[0] * e1[1] - w[1] * e1[0],
    )
    return e1, e2


def _fibonacci_directions(n: int):
    out = []
    golden = (1 + 5**0.5) / 2
    for i in range(n):
        z = 1 - 2 * (i + 0.5) / n
        r = math.sqrt(max(0.0, 1 - z * z))
        th = 2 * math.pi * i / golden
        out.append((r * math.cos(th), r * math.sin(th), z))
    return out


def _find_interior_direction(member, hint):
    cands = []
    h = _funit(hint) if hint is not None else None
    if h is not None and member(h):
        cands.append(h)
    if not cands:
        cands = [u for u in _fibonacci_directions(96) if member(u)]
        if not cands:
            return None
    acc = [0.0] * 3
    for u in cands:
        for i, x in enumerate(u):
            acc[i] += x
    w = _funit(acc)
    if w is None or not member(w):
        w = cands[0]
    if member(tuple(-x for x in w)):
        return None  # opposite direction inside too: unbounded cross-section
    return w


def _boundary_radius(member, w, e1, e2, theta):
    c, s = math.cos(theta), math.sin(theta)

    def direction(r):
        return tuple(wi + r * (c * ai + s * bi) for wi, ai, bi in zip(w, e1, e2))

    lo, hi = 0.0, 1.0
    while member(direction(hi)):
        lo = hi
        hi *= 2.0
        if hi > 2.0**30:
            return None
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if member(direction(mid)):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _scan_three_dim(member, hint, rng: random.Random, n: int, tau: float):
    """One cross-section scan; returns (points, triple, area) when curved."""
    w = _find_interior_direction(member, hint)
    offset = rng.uniform(0.0, 2.0 * math.pi / n)
    if w is None:
        return None
    e1, e2 = _orthonormal_complement_3d(w)
    pts = []
    angles = []
    for j in range(n):
        th = offset + 2.0 * math.pi * j / n
        rad = _boundary_radius(member, w, e1, e2, th)
        if rad is None:
            return None
        pts.append((rad * math.cos(th), rad * math.sin(th)))
        angles.append(th)
    from .bodies import SectionSample
    from .criteria import polygonality_detect

    sample = SectionSample(None, tuple(pts), tuple(angles))
    verdict = polygonality_detect(sample, tau)
    if verdict.kind == "curved":
        return pts, verdict.witness_triple, verdict.witness_area
    return None


def mirkil_scan(
    oracle: ConeOracle,
    samples: int,
    seed: int = 0,
    *,
    boundary_points: int = 64,
    tau: float = 1e-9,
) -> MirkilReport:
    """Scan a cone oracle for polyhedrality via 3-dimensional subspaces.

    For ambient dimension 3 the full cone's 2-dimensional cross-section is
    scanned directly; for dimension 4 random 3-subspaces through the apex
    are drawn first.  Exact cones short-circuit: their sections are
    polyhedral by construction.  The verdict is one-sided: a witness
    refutes, "polyhedral-consistent" only reports the surviving budget.
    """
    if samples < 0:
        raise ConeError("sample budget must be nonnegative")
    if oracle.dim < 3:
        raise ConeError("scan needs ambient dimension 3 or higher")
    if samples == 0:
        return MirkilReport(
            "polyhedral-consistent", 0, 0, seed, True, None, ("zero-budget",)
        )
    rng = random.Random(seed)
    notes: list[str] = []
    if oracle.exact is not None:
        for _ in range(samples):
            if oracle.dim == 3:
                rng.random()
                continue
            flat = _random_exact_subspace(
                rng, oracle.exact.apex, oracle.dim, 3
            )
            cone_section(oracle.exact, flat)
        notes.append("exact cone: every section is polyhedral by construction")
        return MirkilReport(
            "polyhedral-consistent", samples, samples, seed, False, None, tuple(notes)
        )

    for i in range(samples):
        if oracle.dim == 3:
            frame: tuple = ()
            member3 = oracle.member
            hint3 = oracle.axis_hint
        else:
            frame = _random_float_frame(rng, oracle.dim, 3)
            member3 = lambda s, fr=frame: oracle.member(
                tuple(
                    sum(si * fi[j] for si, fi in zip(s, fr))
                    for j in range(oracle.dim)
                )
            )
            hint3 = tuple(_fdot(oracle.axis_hint, f) for f in frame)
        found = _scan_three_dim(member3, hint3, rng, boundary_points, tau)
        if found is not None:
            # soundness: the witness must survive a doubled sampling density
            confirm = _scan_three_dim(member3, hint3, rng, 2 * boundary_points, tau)
            if confirm is None:
                notes.append(f"sample {i}: witness failed doubled-density re-verification")
                continue
            pts, triple, area = confirm
            witness = MirkilWitness(i, frame, tuple(pts), triple, area)
            notes.append("witness re-verified at doubled sampling density")
            return MirkilReport(
                "non-polyhedral", samples, i + 1, seed, False, witness, tuple(notes)
            )
    return MirkilReport(
        "polyhedral-consistent", samples, samples, seed, False, None, tuple(notes)
    )
