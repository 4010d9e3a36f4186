"""
Spatial module for linking numbers of PL spatial graphs.

Linking numbers are read off a projected diagram: for a generic direction
``d`` every crossing between the two cycles contributes
``sign((h2 - h1) det[t1, t2, d])`` where ``t`` are the segment directions and
``h`` the heights along ``d``; the linking number is half the sum.
Everything is exact over the rationals.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix, Rational

from vk.config import Config
from vk.core.complexes import HAT_OFFSET, bowtie, delta62
from vk.core.exactlinalg import det3
from vk.core.vankampen import GenericMap4, pair_index, validate_map
from vk.entities.complex import SimplicialComplex
from vk.entities.spatial_graph import OrientedCycle, Point3, Segment, SpatialGraph, to_point
from vk.exceptions import DegenerateProjection, GenericPositionError, InputError, InvariantViolation
from vk.utils.logger import get_logger
from vk.utils.seeding import derive_rng

logger = get_logger(__name__)

K6_VERTICES = (1, 2, 3, 4, 5, 6)


# ---------------------------------------------------------------------------
# Vector helpers
# ---------------------------------------------------------------------------

def _sub(p: Sequence, q: Sequence) -> Tuple:
    return tuple(a - b for a, b in zip(p, q))


def _add(p: Sequence, q: Sequence) -> Tuple:
    return tuple(a + b for a, b in zip(p, q))


def _scale(p: Sequence, s) -> Tuple:
    return tuple(a * s for a in p)


def _dot(p: Sequence, q: Sequence):
    return sum(a * b for a, b in zip(p, q))


def _cross(p: Sequence, q: Sequence) -> Tuple:
    return (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )


def _orient(a: Sequence, b: Sequence, c: Sequence):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _max_abs(p: Sequence) -> Fraction:
    return max(abs(Fraction(x)) for x in p)


def _perpendiculars(u: Sequence) -> Tuple[Tuple, Tuple]:
    """Two vectors spanning the plane orthogonal to ``u``."""
    axis_index = min(range(3), key=lambda i: abs(u[i]))
    axis = tuple(Fraction(int(i == axis_index)) for i in range(3))
    n1 = _cross(u, axis)
    return n1, _cross(u, n1)


# ---------------------------------------------------------------------------
# Projections
# ---------------------------------------------------------------------------

@dataclass
class Crossing:
    first: int
    second: int
    point: Tuple[Fraction, Fraction]
    sign: int


@dataclass
class ProjectionReport:
    """Result of checking a projection direction."""

    direction: Point3
    problems: List[str] = field(default_factory=list)
    crossings: List[Crossing] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems


def _on_segment(a: Sequence, b: Sequence, c: Sequence) -> bool:
    """``c`` collinear with ``ab`` lies on the closed segment."""
    return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])


def analyze_projection(segments: Sequence[Segment], direction: Sequence) -> ProjectionReport:
    """
    Project segments along ``direction`` and classify every pair.

    Problems are segments parallel to the direction, overlapping or touching
    projections away from shared endpoints, crossings at equal height
    (segments meeting in space) and several crossings at one point.
    """
    d = to_point(direction)
    if not any(d):
        raise InputError("Projection direction must be nonzero")
    e1, e2 = _perpendiculars(d)
    report = ProjectionReport(d)

    flat = []
    for a, b in segments:
        pa = (_dot(a, e1), _dot(a, e2))
        pb = (_dot(b, e1), _dot(b, e2))
        flat.append((pa, pb, _dot(a, d), _dot(b, d)))
        if pa == pb:
            report.problems.append(f"segment {a}-{b} is parallel to the direction")
    if report.problems:
        return report

    seen_points: Dict[Tuple[Fraction, Fraction], Tuple[int, int]] = {}
    for i, j in combinations(range(len(segments)), 2):
        a, b, ha, hb = flat[i]
        c, dd, hc, hd = flat[j]
        shared = set(segments[i]) & set(segments[j])
        o1, o2 = _orient(a, b, c), _orient(a, b, dd)
        if shared:
            if len(shared) == 2:
                report.problems.append(f"segment {segments[i]} appears twice")
                continue
            common = next(iter(shared))
            pi = a if segments[i][0] == common else b
            qi = b if segments[i][0] == common else a
            qj = dd if segments[j][0] == common else c
            if _orient(pi, qi, qj) == 0 and _dot(_sub(qi, pi), _sub(qj, pi)) > 0:
                report.problems.append(f"adjacent segments {segments[i]} and {segments[j]} overlap in projection")
            continue
        o3, o4 = _orient(c, dd, a), _orient(c, dd, b)
        if o1 == 0 and o2 == 0:
            if _on_segment(a, b, c) or _on_segment(a, b, dd) or _on_segment(c, dd, a) or _on_segment(c, dd, b):
                report.problems.append(f"segments {segments[i]} and {segments[j]} overlap in projection")
            continue
        if ((o1 == 0 and _on_segment(a, b, c)) or (o2 == 0 and _on_segment(a, b, dd))
                or (o3 == 0 and _on_segment(c, dd, a)) or (o4 == 0 and _on_segment(c, dd, b))):
            report.problems.append(f"an endpoint of {segments[i]} or {segments[j]} projects onto the other")
            continue
        if _sign(o1) * _sign(o2) < 0 and _sign(o3) * _sign(o4) < 0:
            ab = _sub(b, a)
            cd = _sub(dd, c)
            ac = _sub(c, a)
            denom = ab[0] * cd[1] - ab[1] * cd[0]
            lam = Fraction(ac[0] * cd[1] - ac[1] * cd[0]) / denom
            mu = Fraction(ac[0] * ab[1] - ac[1] * ab[0]) / denom
            h1 = ha + lam * (hb - ha)
            h2 = hc + mu * (hd - hc)
            if h1 == h2:
                report.problems.append(f"segments {segments[i]} and {segments[j]} meet in space")
                continue
            point = (a[0] + lam * ab[0], a[1] + lam * ab[1])
            if point in seen_points:
                report.problems.append(f"several crossings project to {point}")
                continue
            seen_points[point] = (i, j)
            t1 = _sub(segments[i][1], segments[i][0])
            t2 = _sub(segments[j][1], segments[j][0])
            sign = _sign(h2 - h1) * _sign(det3([t1, t2, d]))
            report.crossings.append(Crossing(i, j, point, sign))
    return report


def validate_projection(graph: SpatialGraph, direction: Sequence) -> ProjectionReport:
    """Check that ``direction`` gives a generic diagram of the whole graph."""
    return analyze_projection(graph.all_segments(), direction)


def random_direction(rng, bound: int = 1000) -> Point3:
    while True:
        values = [int(x) for x in rng.integers(-bound, bound + 1, size=3)]
        if any(values):
            return to_point(values)


def is_embedded(graph: SpatialGraph, seed: int = 0, attempts: int = 20) -> bool:
    """True when some random direction yields a generic diagram; segments meeting in space never do."""
    rng = derive_rng(seed, "spatial.embedded")
    for _ in range(attempts):
        if validate_projection(graph, random_direction(rng)).ok:
            return True
    return False


# ---------------------------------------------------------------------------
# Linking numbers
# ---------------------------------------------------------------------------

def linking_number(graph: SpatialGraph, c1: OrientedCycle, c2: OrientedCycle,
                   direction: Optional[Sequence] = None, seed: int = 0,
                   max_attempts: Optional[int] = None) -> int:
    """
    Linking number of two vertex-disjoint cycles.

    Args:
        graph: The spatial graph.
        c1: First cycle.
        c2: Second cycle.
        direction: Projection direction; a random generic one when omitted.
        seed: Seed for random directions.
        max_attempts: Number of random directions to try.

    Returns:
        int: ``Lk(c1, c2)``.

    Raises:
        DegenerateProjection: If the given direction, or every sampled one, is not generic.
    """
    graph.check_cycle(c1)
    graph.check_cycle(c2)
    if set(c1.vertices) & set(c2.vertices):
        raise InputError(f"Cycles {c1} and {c2} share a vertex")
    first = graph.cycle_segments(c1)
    segments = first + graph.cycle_segments(c2)
    split = len(first)

    if direction is not None:
        report = analyze_projection(segments, direction)
        if not report.ok:
            raise DegenerateProjection(report.problems[0])
    else:
        attempts = max_attempts if max_attempts is not None else Config().get("spatial.max_attempts")
        rng = derive_rng(seed, "spatial.direction")
        for _ in range(attempts):
            report = analyze_projection(segments, random_direction(rng))
            if report.ok:
                break
        else:
            raise DegenerateProjection(f"No generic direction in {attempts} attempts: {report.problems[0]}")

    total = sum(c.sign for c in report.crossings if (c.first < split) != (c.second < split))
    if total % 2:
        raise InvariantViolation(f"Odd crossing sum {total} between {c1} and {c2}")
    return total // 2


def disjoint_cycle_pairs(graph: SpatialGraph) -> List[Tuple[OrientedCycle, OrientedCycle]]:
    """The ten pairs of vertex-disjoint triangles of a K6, each in increasing vertex order."""
    if not graph.is_complete(6):
        raise InputError("disjoint_cycle_pairs expects a complete graph on six vertices")
    vertices = graph.vertices()
    pairs = []
    for rest in combinations(vertices[1:], 2):
        first = (vertices[0],) + rest
        second = tuple(v for v in vertices if v not in first)
        pairs.append((OrientedCycle(first), OrientedCycle(second)))
    return pairs


@dataclass
class OmegaResult:
    """Sum of the ten linking numbers of an embedded K6."""

    profile: Dict[str, int]

    @property
    def total(self) -> int:
        return sum(self.profile.values())

    @property
    def parity(self) -> int:
        return self.total % 2

    def linked_pairs(self) -> List[str]:
        return [name for name, lk in self.profile.items() if lk]

    def to_dict(self) -> Dict[str, object]:
        return {"omega": self.total, "parity": self.parity, "linking_numbers": dict(self.profile)}


def conway_gordon_omega(graph: SpatialGraph, seed: int = 0) -> OmegaResult:
    """Linking numbers over all disjoint triangle pairs of an embedded K6."""
    profile = {
        f"{c1.name()}|{c2.name()}": linking_number(graph, c1, c2, seed=seed)
        for c1, c2 in disjoint_cycle_pairs(graph)
    }
    result = OmegaResult(profile)
    logger.debug(f"omega = {result.total}, linked pairs {result.linked_pairs()}")
    return result


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def _coplanar(points: Sequence[Point3]) -> bool:
    p0 = points[0]
    return det3([_sub(p, p0) for p in points[1:4]]) == 0


def random_straight_k6(seed: int = 0, coordinate_range: Optional[int] = None,
                       max_attempts: Optional[int] = None) -> SpatialGraph:
    """
    Straight-line K6 on random integer points with no four coplanar.

    Vertices are ``1 .. 6`` labelled ``x1 .. x6``.
    """
    config = Config()
    bound = coordinate_range if coordinate_range is not None else config.get("spatial.coordinate_range")
    attempts = max_attempts if max_attempts is not None else config.get("spatial.max_attempts")
    for attempt in range(attempts):
        rng = derive_rng(seed, f"spatial.k6.{attempt}")
        coords = rng.integers(-bound, bound + 1, size=(6, 3))
        points = [to_point([int(x) for x in row]) for row in coords]
        if any(_coplanar(quad) for quad in combinations(points, 4)):
            continue
        return SpatialGraph.complete(
            dict(zip(K6_VERTICES, points)),
            labels={v: f"x{v}" for v in K6_VERTICES},
        )
    raise InvariantViolation(f"No K6 in general position after {attempts} attempts")


def add_meridian_loop(graph: SpatialGraph, edge: Sequence[int], around: Sequence[int], multiplicity: int,
                      radius: Fraction = Fraction(1, 100)) -> SpatialGraph:
    """
    Reroute ``edge`` through a small helix winding ``multiplicity`` times around ``around``.

    The detour leaves the first segment of ``edge`` at its midpoint, runs
    straight to the helix around the midpoint of the first segment of
    ``around`` and comes straight back. For two disjoint cycles through the
    two edges the linking number changes by ``+-multiplicity``; no other
    pair changes.
    """
    e = tuple(sorted(edge))
    f = tuple(sorted(around))
    if not graph.has_edge(*e) or not graph.has_edge(*f):
        raise InputError(f"Edges {e} and {f} must both be in the graph")
    if set(e) & set(f):
        raise InputError(f"Edges {e} and {f} must be vertex-disjoint")
    if multiplicity == 0:
        return graph
    radius = Fraction(radius)

    x, y = graph.polyline(f[0], f[1])[:2]
    u = _sub(y, x)
    centre = _add(x, _scale(u, Fraction(1, 2)))
    n1, n2 = _perpendiculars(u)
    n1 = _scale(n1, radius / _max_abs(n1))
    n2 = _scale(n2, radius / _max_abs(n2))
    turns = abs(multiplicity)
    step = _scale(u, radius / (8 * turns * _max_abs(u)))
    if multiplicity > 0:
        corners = [n1, n2, _scale(n1, -1), _scale(n2, -1)]
    else:
        corners = [n1, _scale(n2, -1), _scale(n1, -1), n2]
    helix = []
    for i in range(turns):
        for c, corner in enumerate(corners):
            helix.append(_add(_add(centre, _scale(step, 4 * i + c)), corner))
    helix.append(_add(_add(centre, _scale(step, 4 * turns)), corners[0]))

    path = graph.polyline(e[0], e[1])
    p0, p1 = path[0], path[1]
    along = _sub(p1, p0)
    gap = min(Fraction(1, 4), radius / _max_abs(along))
    leave = _add(p0, _scale(along, Fraction(1, 2)))
    rejoin = _add(p0, _scale(along, Fraction(1, 2) + gap))
    waypoints = [leave] + helix + [rejoin] + path[1:-1]
    return graph.with_waypoints(e, waypoints)


def _linked_base(seed: int, config: Config) -> Optional[SpatialGraph]:
    """
    A straight K6 whose only linked pair is ``123|456`` with linking number +1.

    Only bases that :func:`embed_map_to_R4` can cone are accepted.
    """
    graph = random_straight_k6(seed, config.get("spatial.coordinate_range"), config.get("spatial.max_attempts"))
    omega = conway_gordon_omega(graph, seed)
    linked = omega.linked_pairs()
    if len(linked) != 1 or abs(omega.profile[linked[0]]) != 1:
        return None
    try:
        _lift_heights([graph.points[v] for v in K6_VERTICES])
    except GenericPositionError:
        return None
    left, right = linked[0].split("|")
    order = [int(ch) for ch in left] + [int(ch) for ch in right]
    mapping = {old: new for new, old in zip(K6_VERTICES, order)}
    graph = graph.relabel(mapping)
    if linking_number(graph, OrientedCycle((1, 2, 3)), OrientedCycle((4, 5, 6)), seed=seed) < 0:
        graph = graph.relabel({1: 2, 2: 1, 3: 3, 4: 4, 5: 5, 6: 6})
    return graph


# edge, edge it winds around, multiplicity per unit of m
TWIST_MOVES = (((5, 6), (1, 2), 1), ((3, 5), (1, 4), 1), ((4, 6), (2, 3), -1))


def _twist(graph: SpatialGraph, m: int) -> SpatialGraph:
    for edge, around, factor in TWIST_MOVES:
        graph = add_meridian_loop(graph, edge, around, factor * m)
    return graph


def twisted_K6(k: int, seed: int = 0, config: Optional[Config] = None) -> SpatialGraph:
    """
    Embedded K6 with ``Lk(123, 456) = k`` and the other nine linking numbers zero.

    Starts from a straight K6 with a single linked pair and adds meridian
    loops on ``56`` around ``12``, ``35`` around ``14`` and ``46`` around
    ``23``; the second and third cancel the side effects of the first on the
    pairs ``124|356`` and ``146|235``. ``k = +-1`` stays straight.

    Raises:
        InputError: For even ``k``; the ten linking numbers have odd sum.
        InvariantViolation: If no seed yields a verified embedding.
    """
    if k % 2 == 0:
        raise InputError(f"twisted_K6 needs odd k, got {k}")
    config = config or Config()
    attempts = config.get("spatial.max_attempts")
    for attempt in range(attempts):
        base = _linked_base(seed + attempt, config)
        if base is None:
            continue
        if k < 0:
            base = base.relabel({1: 2, 2: 1, 3: 3, 4: 4, 5: 5, 6: 6})
        m = (k - (1 if k > 0 else -1)) // 2
        for candidate_m in ((m, -m) if m else (0,)):
            graph = _twist(base, candidate_m)
            if not is_embedded(graph, seed + attempt):
                continue
            profile = conway_gordon_omega(graph, seed + attempt).profile
            if profile.pop("123|456") == k and not any(profile.values()):
                graph.labels = {v: f"x{v}" for v in K6_VERTICES}
                logger.info(f"twisted K6 with linking number {k} from attempt {attempt + 1}")
                return graph
    raise InvariantViolation(f"Could not build a twisted K6 with linking number {k}")


# ---------------------------------------------------------------------------
# Coning into R^4
# ---------------------------------------------------------------------------

def _to_rational(x: Fraction) -> Rational:
    return Rational(x.numerator, x.denominator)


def _to_fraction(x) -> Fraction:
    x = Rational(x)
    return Fraction(int(x.p), int(x.q))


def _affine_dependencies(points: Sequence[Point3]) -> List[List[Fraction]]:
    """Basis of ``{w : sum w_i = 0, sum w_i p_i = 0}``."""
    rows = [[_to_rational(p[c]) for p in points] for c in range(3)]
    rows.append([Rational(1)] * len(points))
    return [[_to_fraction(x) for x in vec] for vec in Matrix(rows).nullspace()]


def _piercing_dependencies(points: Sequence[Point3]) -> List[List[Fraction]]:
    """
    For each five-point subset whose Radon partition splits two against
    three, the dependency with the two-point side positive. These are the
    places where an edge passes through a disjoint triangle.
    """
    result = []
    for omitted in range(len(points)):
        keep = [i for i in range(len(points)) if i != omitted]
        basis = _affine_dependencies([points[i] for i in keep])
        if len(basis) != 1:
            raise GenericPositionError("Four of the points are coplanar")
        w = basis[0]
        if any(x == 0 for x in w):
            raise GenericPositionError("Four of the points are coplanar")
        positives = sum(1 for x in w if x > 0)
        if positives not in (2, 3):
            continue
        if positives == 3:
            w = [-x for x in w]
        full = [Fraction(0)] * len(points)
        for i, x in zip(keep, w):
            full[i] = x
        result.append(full)
    return result


def _open_halfplane_normal(vectors: Sequence[Tuple[Fraction, Fraction]]) -> Optional[Tuple[Fraction, Fraction]]:
    """A vector with positive inner product against every input, if one exists."""
    if not vectors:
        return (Fraction(1), Fraction(0))
    for u in vectors:
        cross = [u[0] * v[1] - u[1] * v[0] for v in vectors]
        dots = [u[0] * v[0] + u[1] * v[1] for v in vectors]
        if not all(c > 0 or (c == 0 and d > 0) for c, d in zip(cross, dots)):
            continue
        limits = [c / -d for c, d in zip(cross, dots) if d < 0]
        t = min(limits) / 2 if limits else Fraction(1)
        return (-u[1] + t * u[0], u[0] + t * u[1])
    return None


def _lift_heights(points: Sequence[Point3]) -> List[Fraction]:
    """
    Heights making each edge pass above every disjoint triangle it pierces.

    Heights matter only modulo affine functions, i.e. through the
    two-dimensional space of affine dependencies of the six points.
    """
    b1, b2 = _affine_dependencies(points)
    piercings = _piercing_dependencies(points)
    projected = [(_dot(w, b1), _dot(w, b2)) for w in piercings]
    normal = _open_halfplane_normal(projected)
    if normal is None:
        raise GenericPositionError("No lift separates the edges from the triangles they pierce")
    return [normal[0] * x + normal[1] * y for x, y in zip(b1, b2)]


def _straight_k6_points(graph: SpatialGraph) -> List[Point3]:
    if not graph.is_complete(6) or graph.vertices() != list(K6_VERTICES):
        raise InputError("Expected a K6 on vertices 1 .. 6")
    if graph.waypoints:
        raise InputError("Coning into R^4 needs a straight-line K6")
    return [graph.points[v] for v in K6_VERTICES]


def _cone_images(points: Sequence[Point3], apex_height: Fraction) -> Tuple[List[Tuple], Tuple]:
    heights = _lift_heights(points)
    lifted = [tuple(p) + (h,) for p, h in zip(points, heights)]
    centre = tuple(sum(p[c] for p in points) / 6 for c in range(3))
    scale = 1 + max(abs(h) for h in heights)
    return lifted, centre + (apex_height * scale,)


def embed_map_to_R4(k6: SpatialGraph, hat: Optional[SpatialGraph] = None,
                    max_doublings: int = 64) -> Tuple[SimplicialComplex, GenericMap4]:
    """
    Map the 2-skeleton of the 6-simplex, or the bowtie, into R^4 from straight K6 embeddings.

    Each K6 vertex ``p`` goes to ``(p, h)`` so that the filled 3-cycles sit
    below the edges they are pierced by; the cone vertex goes to
    ``(centre, T)`` with ``T`` doubled until no cone triangle meets a filled
    triangle. A pair of filled triangles then meets exactly when their
    boundaries link.

    Args:
        k6: Straight K6 on vertices ``1 .. 6``.
        hat: Second straight K6 for the bowtie; it is moved away from ``k6``.

    Returns:
        Tuple[SimplicialComplex, GenericMap4]: The complex and a generic map of it.
    """
    copies = [_straight_k6_points(k6)]
    complex_ = delta62()
    if hat is not None:
        second = _straight_k6_points(hat)
        width = max(_max_abs(p) for p in copies[0] + second)
        copies.append([_add(p, (3 * width + 1, 0, 0)) for p in second])
        complex_ = bowtie()

    pairs = pair_index(complex_)
    apexes = [0, HAT_OFFSET][:len(copies)]
    apex_height = Fraction(1)
    for _ in range(max_doublings):
        images: Dict[int, Tuple] = {}
        for offset, pts in zip(apexes, copies):
            lifted, apex = _cone_images(pts, apex_height)
            images[offset] = apex
            for v, point in zip(K6_VERTICES, lifted):
                images[offset + v] = point
        map_ = GenericMap4(images)
        try:
            validate_map(complex_, map_, pairs)
        except GenericPositionError:
            apex_height *= 2
            continue
        cone_hits = [p for p in pairs if (set(p[0]) | set(p[1])) & set(apexes) and map_.sign(p)]
        if not cone_hits:
            return complex_, map_
        apex_height *= 2
    raise GenericPositionError("Cone triangles keep meeting the filled triangles")
