"""
Van Kampen module for generic maps of 2-complexes into R^4.

A map is linear on simplices and given by its vertex images. Its van Kampen
vector records the signed intersection of every pair of vertex-disjoint
triangles; the obstruction vanishes when that vector lies in the lattice
spanned by the finger-move vectors.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from vk.config import Config
from vk.core.exactlinalg import IntegerLattice, IntMatrix, MembershipCertificate, MembershipResult, det4
from vk.entities.complex import Edge, SimplicialComplex, Triangle
from vk.exceptions import GenericPositionError, InputError
from vk.utils.logger import get_logger
from vk.utils.seeding import derive_rng

logger = get_logger(__name__)

Point4 = Tuple  # int or Fraction coordinates
Pair = Tuple[Triangle, Triangle]

RINGS = ("Z", "Z2")


def pair_index(complex_: SimplicialComplex) -> List[Pair]:
    """All unordered pairs of vertex-disjoint triangles, sorted."""
    triangles = complex_.sorted_triangles()
    pairs = []
    for a, b in combinations(triangles, 2):
        if not set(a) & set(b):
            pairs.append((a, b))
    return pairs


def _sub(p: Sequence, q: Sequence) -> List:
    return [x - y for x, y in zip(p, q)]


def _status(n1, n2, d) -> int:
    """Position of ``(n1/d, n2/d)`` relative to the open standard triangle: 1 inside, 0 boundary, -1 outside."""
    if d < 0:
        n1, n2, d = -n1, -n2, -d
    if n1 < 0 or n2 < 0 or n1 + n2 > d:
        return -1
    if n1 == 0 or n2 == 0 or n1 + n2 == d:
        return 0
    return 1


def intersect_triangles(p: Sequence[Sequence], q: Sequence[Sequence]) -> Optional[int]:
    """
    Signed intersection of two triangles in R^4, or None when degenerate.

    Solves ``p0 + s1 a1 + s2 a2 = q0 + t1 b1 + t2 b2`` by Cramer's rule
    with ``a_i = p_i - p0`` and ``b_i = q_i - q0``; the sign is that of
    ``det[a1, a2, b1, b2]``.
    """
    a1, a2 = _sub(p[1], p[0]), _sub(p[2], p[0])
    b1, b2 = _sub(q[1], q[0]), _sub(q[2], q[0])
    rhs = _sub(q[0], p[0])
    columns = [a1, a2, [-x for x in b1], [-x for x in b2]]

    def det_of(cols: Sequence[Sequence]) -> object:
        return det4([[cols[c][r] for c in range(4)] for r in range(4)])

    d = det_of(columns)
    if d == 0:
        return None
    numerators = []
    for i in range(4):
        replaced = list(columns)
        replaced[i] = rhs
        numerators.append(det_of(replaced))
    first = _status(numerators[0], numerators[1], d)
    second = _status(numerators[2], numerators[3], d)
    if first < 0 or second < 0:
        return 0
    if first == 0 or second == 0:
        return None
    return 1 if d > 0 else -1


@dataclass
class GenericMap4:
    """
    Vertex images in Q^4 of a map linear on simplices.

    Pair signs are computed once, at validation, and cached.
    """

    points: Dict[int, Point4]
    seed: Optional[int] = None
    coordinate_range: Optional[int] = None
    _signs: Dict[Pair, int] = field(default_factory=dict, repr=False)

    def image(self, simplex: Sequence[int]) -> List[Point4]:
        try:
            return [self.points[v] for v in simplex]
        except KeyError as e:
            raise InputError(f"Map has no image for vertex {e.args[0]}") from e

    def degeneracies(self, pairs: Sequence[Pair], limit: int = 1) -> List[str]:
        """Check general position on the given pairs, caching their signs."""
        problems: List[str] = []
        if len(set(self.points.values())) != len(self.points):
            problems.append("vertex images are not distinct")
            return problems
        for pair in pairs:
            if pair in self._signs:
                continue
            sign = intersect_triangles(self.image(pair[0]), self.image(pair[1]))
            if sign is None:
                problems.append(f"triangles {pair[0]} and {pair[1]} are not in general position")
                if len(problems) >= limit:
                    break
                continue
            self._signs[pair] = sign
        return problems

    def sign(self, pair: Pair) -> int:
        if pair not in self._signs:
            problems = self.degeneracies([pair])
            if problems:
                raise GenericPositionError(problems[0])
        return self._signs[pair]

    def mirrored(self) -> "GenericMap4":
        """Compose with the reflection of the last coordinate."""
        return GenericMap4({v: p[:3] + (-p[3],) for v, p in self.points.items()}, self.seed, self.coordinate_range)

    def to_dict(self) -> Dict[str, object]:
        return {
            "seed": self.seed,
            "coordinate_range": self.coordinate_range,
            "points": {str(v): [str(x) for x in p] for v, p in sorted(self.points.items())},
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "GenericMap4":
        try:
            points = {int(v): tuple(Fraction(x) for x in p) for v, p in data["points"].items()}  # type: ignore[union-attr]
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise InputError(f"Malformed map data: {e}") from e
        for v, p in points.items():
            if len(p) != 4:
                raise InputError(f"Vertex {v} image has {len(p)} coordinates")
        return cls(points, data.get("seed"), data.get("coordinate_range"))  # type: ignore[arg-type]


def validate_map(complex_: SimplicialComplex, map_: GenericMap4,
                 pairs: Optional[Sequence[Pair]] = None) -> GenericMap4:
    """Raise GenericPositionError unless ``map_`` is generic on ``complex_``."""
    missing = complex_.vertices - set(map_.points)
    if missing:
        raise InputError(f"Map misses vertices {sorted(missing)}")
    problems = map_.degeneracies(pairs if pairs is not None else pair_index(complex_))
    if problems:
        raise GenericPositionError(problems[0])
    return map_


def random_generic_map(complex_: SimplicialComplex, seed: int = 0, coordinate_range: Optional[int] = None,
                       max_retries: Optional[int] = None, pairs: Optional[Sequence[Pair]] = None) -> GenericMap4:
    """
    Sample integer vertex images until the map is generic.

    Args:
        complex_: Complex to map.
        seed: Seed of the run; attempt ``a`` uses the label ``vankampen.map.a``.
        coordinate_range: Initial half-width of the coordinate box; doubled after each failure.
        max_retries: Number of attempts.
        pairs: Precomputed pair index.

    Returns:
        GenericMap4: A validated map.

    Raises:
        GenericPositionError: When every attempt is degenerate.
    """
    config = Config()
    radius = coordinate_range if coordinate_range is not None else config.get("vankampen.coordinate_range")
    retries = max_retries if max_retries is not None else config.get("vankampen.max_retries")
    pairs = pairs if pairs is not None else pair_index(complex_)
    vertices = complex_.sorted_vertices()
    last_problem = "no attempt made"
    for attempt in range(retries):
        rng = derive_rng(seed, f"vankampen.map.{attempt}")
        coords = rng.integers(-radius, radius + 1, size=(len(vertices), 4))
        points = {v: tuple(int(x) for x in row) for v, row in zip(vertices, coords)}
        candidate = GenericMap4(points, seed, radius)
        problems = candidate.degeneracies(pairs)
        if not problems:
            logger.debug(f"Generic map found on attempt {attempt + 1} with range {radius}")
            return candidate
        last_problem = problems[0]
        logger.debug(f"Attempt {attempt + 1} degenerate: {last_problem}")
        radius *= 2
    raise GenericPositionError(f"No generic map after {retries} attempts: {last_problem}")


def triangle_intersection_sign(map_: GenericMap4, sigma: Sequence[int], tau: Sequence[int]) -> int:
    """Intersection sign of two vertex-disjoint triangles, oriented by sorted vertex order."""
    s, t = tuple(sorted(sigma)), tuple(sorted(tau))
    if len(s) != 3 or len(t) != 3:
        raise InputError("triangle_intersection_sign expects two triangles")
    if set(s) & set(t):
        raise InputError(f"Triangles {s} and {t} share a vertex")
    pair = (s, t) if s < t else (t, s)
    return map_.sign(pair)  # type: ignore[arg-type]


def van_kampen_vector(complex_: SimplicialComplex, map_: GenericMap4,
                      pairs: Optional[Sequence[Pair]] = None) -> List[int]:
    """Intersection signs indexed by the pair index."""
    pairs = pairs if pairs is not None else pair_index(complex_)
    validate_map(complex_, map_, pairs)
    return [map_.sign(p) for p in pairs]


def boundary_incidence(triangle: Triangle, edge: Edge) -> int:
    """``(-1)^i`` where ``i`` is the position of the vertex of ``triangle`` missing from ``edge``."""
    missing = [i for i, v in enumerate(triangle) if v not in edge]
    if len(missing) != 1:
        raise InputError(f"{edge} is not an edge of {triangle}")
    return -1 if missing[0] % 2 else 1


def finger_move_matrix(complex_: SimplicialComplex,
                       pairs: Optional[Sequence[Pair]] = None) -> Tuple[IntMatrix, List[Tuple[Triangle, Edge]]]:
    """
    Finger-move vectors as matrix columns.

    The column for a triangle ``F`` and a disjoint edge ``E`` has the entry
    ``[F' : E]`` at every pair ``{F, F'}`` with ``E`` in ``F'``. Columns
    without entries are left out.

    Returns:
        Tuple[IntMatrix, List]: The matrix and the ``(F, E)`` label of each column.
    """
    pairs = pairs if pairs is not None else pair_index(complex_)
    row_of = {p: i for i, p in enumerate(pairs)}
    incidence = complex_.edge_triangles()
    columns: List[Dict[int, int]] = []
    labels: List[Tuple[Triangle, Edge]] = []
    for f in complex_.sorted_triangles():
        fs = set(f)
        for e in complex_.sorted_edges():
            if fs.intersection(e):
                continue
            column: Dict[int, int] = {}
            for g in incidence[e]:
                if fs.intersection(g):
                    continue
                pair = (f, g) if f < g else (g, f)
                column[row_of[pair]] = boundary_incidence(g, e)
            if column:
                columns.append(column)
                labels.append((f, e))
    return IntMatrix.from_columns(len(pairs), columns), labels


@dataclass
class ObstructionResult:
    """Verdict of one obstruction computation."""

    ring: str
    vanishes: bool
    vector: List[int]
    pairs: List[Pair]
    seed: int
    witness: Optional[List[int]] = None
    certificate: Optional[MembershipCertificate] = None
    map: Optional[GenericMap4] = None

    @property
    def pair_count(self) -> int:
        return len(self.pairs)

    @property
    def nonzero_entries(self) -> int:
        return sum(1 for v in self.vector if v)

    @property
    def witness_norm(self) -> Optional[int]:
        return sum(abs(x) for x in self.witness) if self.witness is not None else None

    def to_dict(self) -> Dict[str, object]:
        return {
            "ring": self.ring,
            "vanishes": self.vanishes,
            "seed": self.seed,
            "pair_count": self.pair_count,
            "nonzero_entries": self.nonzero_entries,
            "witness_norm": self.witness_norm,
            "vector": {f"{list(a)}|{list(b)}": v for (a, b), v in zip(self.pairs, self.vector) if v},
            "witness": self.witness,
            "certificate": (
                {"functional": {str(k): v for k, v in sorted(self.certificate.functional.items())},
                 "modulus": self.certificate.modulus}
                if self.certificate else None
            ),
            "map": self.map.to_dict() if self.map else None,
        }


class VanKampenSolver:
    """
    Pair index, finger-move matrix and lattices of one complex.

    The eliminations are built on first use and shared by every vector
    tested afterwards.
    """

    def __init__(self, complex_: SimplicialComplex, config: Optional[Config] = None):
        self.complex = complex_
        self.config = config or Config()
        self.logger = get_logger(__name__)
        self.pairs = pair_index(complex_)
        self.matrix, self.column_labels = finger_move_matrix(complex_, self.pairs)
        self._lattices: Dict[str, IntegerLattice] = {}
        self.logger.debug(f"{len(self.pairs)} disjoint pairs, {self.matrix.ncols} finger moves")

    def lattice(self, ring: str) -> IntegerLattice:
        if ring not in RINGS:
            raise InputError(f"Unknown ring {ring!r}; expected one of {RINGS}")
        if ring not in self._lattices:
            self._lattices[ring] = IntegerLattice(self.matrix, modulus=2 if ring == "Z2" else None)
        return self._lattices[ring]

    def random_map(self, seed: int) -> GenericMap4:
        return random_generic_map(
            self.complex,
            seed,
            self.config.get("vankampen.coordinate_range"),
            self.config.get("vankampen.max_retries"),
            self.pairs,
        )

    def vector(self, map_: GenericMap4) -> List[int]:
        return van_kampen_vector(self.complex, map_, self.pairs)

    def contains(self, vector: Sequence[int], ring: str = "Z") -> MembershipResult:
        """Membership of ``vector`` in the finger-move lattice."""
        return self.lattice(ring).solve(vector)

    def obstruction(self, ring: str = "Z", seed: int = 0, map_: Optional[GenericMap4] = None) -> ObstructionResult:
        """
        Decide whether the obstruction vanishes over ``ring``.

        The GF(2) test runs first; failing it settles both rings.
        """
        if ring not in RINGS:
            raise InputError(f"Unknown ring {ring!r}; expected one of {RINGS}")
        map_ = map_ or self.random_map(seed)
        vector = self.vector(map_)
        mod2 = self.contains(vector, "Z2")
        result = mod2
        if mod2.member and ring == "Z":
            result = self.contains(vector, "Z")
        verdict = ObstructionResult(
            ring=ring,
            vanishes=result.member,
            vector=vector,
            pairs=list(self.pairs),
            seed=seed,
            witness=result.solution,
            certificate=result.certificate,
            map=map_,
        )
        self.logger.info(
            f"Obstruction over {ring} {'vanishes' if verdict.vanishes else 'does not vanish'} "
            f"({verdict.pair_count} pairs, {verdict.nonzero_entries} nonzero entries)"
        )
        return verdict

    def map_independence(self, seeds: Optional[int] = None) -> Dict[str, int]:
        """
        Sample generic maps and check that their vectors agree modulo the
        finger-move lattice, and that twice each vector lies in it.

        Args:
            seeds: Number of maps; ``vankampen.seeds`` by default.

        Returns:
            Dict[str, int]: Numbers of maps, membership tests and failures.
        """
        count = seeds if seeds is not None else int(self.config.get("vankampen.seeds"))
        if count < 1:
            raise InputError(f"Need at least one map, got {count}")
        vectors = [self.vector(self.random_map(seed)) for seed in range(count)]
        base = vectors[0]
        candidates = [[a - b for a, b in zip(v, base)] for v in vectors[1:]]
        candidates += [[2 * a for a in v] for v in vectors]
        failures = sum(1 for c in candidates if not self.contains(c, "Z").member)
        if failures:
            self.logger.warning(f"{failures} of {len(candidates)} lattice memberships failed")
        return {"maps": count, "checked": len(candidates), "failures": failures}


def obstruction(complex_: SimplicialComplex, ring: str = "Z", seed: int = 0,
                config: Optional[Config] = None) -> ObstructionResult:
    """One-shot obstruction computation for ``complex_``."""
    return VanKampenSolver(complex_, config).obstruction(ring, seed)


def verify_obstruction(complex_: SimplicialComplex, data: Dict[str, object]) -> bool:
    """
    Re-check a serialised verdict: recompute the vector from the stored map,
    then check the witness by multiplication or the certificate by pairing.
    """
    try:
        map_ = GenericMap4.from_dict(data["map"])  # type: ignore[arg-type]
        ring = str(data["ring"])
        vanishes = bool(data["vanishes"])
    except (KeyError, TypeError) as e:
        raise InputError(f"Malformed obstruction record: {e}") from e
    solver = VanKampenSolver(complex_)
    vector = solver.vector(map_)
    stored = data.get("vector") or {}
    expected = {f"{list(a)}|{list(b)}": v for (a, b), v in zip(solver.pairs, vector) if v}
    if stored != expected:
        return False
    modulus = 2 if ring == "Z2" else None
    if vanishes:
        witness = data.get("witness")
        if not isinstance(witness, list) or len(witness) != solver.matrix.ncols:
            return False
        image = solver.matrix.matvec(witness)
        if modulus:
            return [x % 2 for x in image] == [x % 2 for x in vector]
        return image == vector
    cert = data.get("certificate")
    if not isinstance(cert, dict):
        return False
    try:
        functional = {int(k): int(v) for k, v in cert["functional"].items()}
        certificate = MembershipCertificate(functional, int(cert["modulus"]))
    except (KeyError, TypeError, ValueError, AttributeError):
        return False
    return certificate.check(solver.matrix, vector)
