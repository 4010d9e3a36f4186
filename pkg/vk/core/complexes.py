"""
Constructions and combinatorial queries for simplicial 2-complexes.

Vertex ids of the standard pieces:

* ``delta62``: ``x0 .. x6`` are ids ``0 .. 6``.
* ``bowtie``: the hat copy ``x̂0 .. x̂6`` uses ids ``7 .. 13``.
* pseudo-projective planes put the singular circle ``a0 .. a{m-1}`` first.
"""

from itertools import combinations
from typing import Any, Dict, List, Sequence, Set, Tuple

import networkx as nx

from vk.core.exactlinalg import HomologyGroups, IntMatrix, homology_via_snf
from vk.entities.complex import EdgeLoop, SimplicialComplex, Triangle, is_loop_tag
from vk.entities.words import FreeWord
from vk.exceptions import InputError, InvariantViolation
from vk.utils.logger import get_logger

logger = get_logger(__name__)

HAT_OFFSET = 7
# loop x6 x4 x5 x6 x̂6 x̂4 x̂5 x̂6, closing back at x6
GAMMA = (6, 4, 5, 6, 13, 11, 12, 13)
# generator paths from the base vertex x6, each returning to x6
GENERATOR_PATHS = {
    0: (6, 4, 5),
    1: (6, 13, 11, 12, 13),
}


# ---------------------------------------------------------------------------
# Validation and algebraic invariants
# ---------------------------------------------------------------------------

def validate(complex_: SimplicialComplex) -> List[str]:
    """
    Check that a complex is a genuine simplicial complex.

    Args:
        complex_: Complex to check.

    Returns:
        List[str]: Human-readable problems; empty when the complex is valid.
    """
    problems: List[str] = []
    for t in complex_.sorted_triangles():
        if len(set(t)) != 3:
            problems.append(f"degenerate triangle {t}")
            continue
        for e in combinations(t, 2):
            if e not in complex_.edges:
                problems.append(f"triangle {t} is missing face {e}")
    for e in complex_.sorted_edges():
        if e[0] == e[1]:
            problems.append(f"degenerate edge {e}")
        for v in e:
            if v not in complex_.vertices:
                problems.append(f"edge {e} is missing vertex {v}")
    for name, value in complex_.tags.items():
        if is_loop_tag(value):
            try:
                complex_.loop(name)
            except (InputError, InvariantViolation) as e:
                problems.append(str(e))
        else:
            for s in value:
                if not set(s) <= complex_.vertices:
                    problems.append(f"tag {name!r} mentions unknown simplex {s}")
                elif len(s) == 3 and tuple(s) not in complex_.triangles:
                    problems.append(f"tag {name!r} mentions missing triangle {s}")
    return problems


def ensure_valid(complex_: SimplicialComplex, context: str = "complex") -> SimplicialComplex:
    problems = validate(complex_)
    if problems:
        raise InvariantViolation(f"{context} failed validation: {'; '.join(problems[:5])}")
    return complex_


def boundary_matrices(complex_: SimplicialComplex) -> Tuple[IntMatrix, IntMatrix]:
    """
    Simplicial boundary maps with the sorted-vertex orientation.

    Returns:
        Tuple[IntMatrix, IntMatrix]: ``d1`` (vertices x edges) and ``d2``
        (edges x triangles), indexed in sorted order.
    """
    vertex_index = {v: i for i, v in enumerate(complex_.sorted_vertices())}
    edges = complex_.sorted_edges()
    edge_index = {e: i for i, e in enumerate(edges)}
    d1: Dict[Tuple[int, int], int] = {}
    for j, (u, v) in enumerate(edges):
        d1[(vertex_index[u], j)] = -1
        d1[(vertex_index[v], j)] = 1
    d2: Dict[Tuple[int, int], int] = {}
    for j, (a, b, c) in enumerate(complex_.sorted_triangles()):
        d2[(edge_index[(b, c)], j)] = 1
        d2[(edge_index[(a, c)], j)] = -1
        d2[(edge_index[(a, b)], j)] = 1
    return (
        IntMatrix(len(vertex_index), len(edges), d1),
        IntMatrix(len(edges), len(complex_.triangles), d2),
    )


def homology(complex_: SimplicialComplex) -> HomologyGroups:
    """Integral homology in degrees 0 to 2."""
    return homology_via_snf(*boundary_matrices(complex_))


def euler_characteristic(complex_: SimplicialComplex) -> int:
    return complex_.euler_characteristic()


# ---------------------------------------------------------------------------
# Standard complexes
# ---------------------------------------------------------------------------

def skeleton_of_simplex(n: int, k: int) -> SimplicialComplex:
    """
    The ``k``-skeleton of the ``n``-simplex on vertices ``x0 .. xn``.

    Args:
        n: Dimension of the simplex.
        k: Skeleton dimension, at most 2.

    Returns:
        SimplicialComplex: All faces of dimension at most ``k``.
    """
    if n < 0 or not 0 <= k <= n:
        raise InputError(f"Invalid skeleton dimensions n={n}, k={k}")
    if k > 2:
        raise InputError("Only skeleta of dimension at most 2 are supported")
    ids = range(n + 1)
    return SimplicialComplex(
        triangles=combinations(ids, 3) if k >= 2 else (),
        edges=combinations(ids, 2) if k >= 1 else (),
        vertices=ids,
        labels={i: f"x{i}" for i in ids},
    )


def delta62() -> SimplicialComplex:
    """The 2-skeleton of the 6-simplex, with the cone-base K6 on ``x1 .. x6`` tagged."""
    base = skeleton_of_simplex(6, 2)
    return base.with_tags(K6=_k6_tag(range(1, 7)))


def _k6_tag(vertices: Sequence[int]) -> List[List[int]]:
    return [list(e) for e in combinations(vertices, 2)]


def bowtie() -> SimplicialComplex:
    """Two copies of the 2-skeleton of the 6-simplex joined by the edge x6 x̂6."""
    base = skeleton_of_simplex(6, 2)
    hat = base.relabel(
        {v: v + HAT_OFFSET for v in base.vertices},
        {v + HAT_OFFSET: f"x̂{v}" for v in base.vertices},
    )
    joined = SimplicialComplex(
        triangles=base.triangles | hat.triangles,
        edges=base.edges | hat.edges | {(6, 6 + HAT_OFFSET)},
        labels={**base.labels, **hat.labels},
    )
    removed = joined.without_triangles([(4, 5, 6), (4 + HAT_OFFSET, 5 + HAT_OFFSET, 6 + HAT_OFFSET)])
    return ensure_valid(
        removed.with_tags(
            gamma=list(GAMMA),
            K6=_k6_tag(range(1, 7)),
            K6hat=_k6_tag(range(1 + HAT_OFFSET, 7 + HAT_OFFSET)),
        ),
        "bowtie",
    )


def _collar_ring_triangles(alpha: Sequence[int], ring: Sequence[int], m: int) -> List[Triangle]:
    """Triangulate the band between the degree-k cover of ``alpha`` and ``ring``."""
    n = len(ring)
    triangles = []
    for j in range(n):
        a0, a1 = alpha[j % m], alpha[(j + 1) % m]
        triangles.append((a0, a1, ring[j]))
        triangles.append((a1, ring[j], ring[(j + 1) % n]))
    return triangles


def _zipper(outer: Sequence[int], inner: Sequence[int]) -> List[Triangle]:
    """Triangulate the annulus between two cycles of possibly different lengths."""
    n, m = len(outer), len(inner)
    triangles = []
    i = j = 0
    while i < n or j < m:
        if j >= m or (i < n and (i + 1) * m <= (j + 1) * n):
            triangles.append((outer[i % n], outer[(i + 1) % n], inner[j % m]))
            i += 1
        else:
            triangles.append((outer[i % n], inner[j % m], inner[(j + 1) % m]))
            j += 1
    return triangles


def pseudo_projective_plane(k: int, boundary_subdivision: int = 3) -> SimplicialComplex:
    """
    A triangulated pseudo-projective plane P_k.

    A disk whose boundary has ``k*m`` edges is glued to the circle ``alpha``
    of ``m`` edges by the degree-``k`` cover. The disk is a collar ring
    coned to a centre, which keeps the quotient simplicial for every
    ``m >= 3``.

    Args:
        k: Degree of the boundary identification.
        boundary_subdivision: Number ``m`` of edges on ``alpha``.

    Returns:
        SimplicialComplex: P_k with the singular circle tagged ``alpha``.
    """
    m = boundary_subdivision
    if k < 1:
        raise InputError(f"P_k needs k >= 1, got {k}")
    if m < 3:
        raise InputError(f"Boundary subdivision must be at least 3, got {m}")
    alpha = list(range(m))
    ring = list(range(m, m + k * m))
    centre = m + k * m
    triangles = _collar_ring_triangles(alpha, ring, m)
    triangles += [(centre, ring[j], ring[(j + 1) % len(ring)]) for j in range(len(ring))]
    labels = {v: f"a{v}" for v in alpha}
    labels.update({v: f"c{j}" for j, v in enumerate(ring)})
    labels[centre] = "z"
    complex_ = SimplicialComplex(triangles=triangles, labels=labels, tags={"alpha": alpha})
    return ensure_valid(complex_, f"P_{k}")


def punctured_pseudo_projective_plane(k: int, boundary_subdivision: int = 3,
                                      boundary_length: int = 8) -> SimplicialComplex:
    """
    P_k with an open disk removed; the new boundary circle is tagged ``beta``.

    Args:
        k: Degree of the boundary identification.
        boundary_subdivision: Number of edges on ``alpha``.
        boundary_length: Number of edges on ``beta``.
    """
    m, length = boundary_subdivision, boundary_length
    if k < 1 or m < 3 or length < 3:
        raise InputError(f"Invalid punctured P_k parameters k={k}, m={m}, L={length}")
    alpha = list(range(m))
    ring = list(range(m, m + k * m))
    beta = list(range(m + k * m, m + k * m + length))
    triangles = _collar_ring_triangles(alpha, ring, m) + _zipper(ring, beta)
    labels = {v: f"a{v}" for v in alpha}
    labels.update({v: f"c{j}" for j, v in enumerate(ring)})
    labels.update({v: f"b{j}" for j, v in enumerate(beta)})
    complex_ = SimplicialComplex(triangles=triangles, labels=labels, tags={"alpha": alpha, "beta": beta})
    return ensure_valid(complex_, f"P_{k} - D2")


def cone_disk(length: int) -> SimplicialComplex:
    """A disk triangulated as the cone over a cycle; boundary tagged ``boundary``."""
    if length < 3:
        raise InputError(f"Disk boundary needs at least 3 edges, got {length}")
    ring = list(range(length))
    triangles = [(length, ring[i], ring[(i + 1) % length]) for i in range(length)]
    return SimplicialComplex(triangles=triangles, tags={"boundary": ring})


# ---------------------------------------------------------------------------
# Attaching
# ---------------------------------------------------------------------------

def add_collar(piece: SimplicialComplex, boundary: EdgeLoop) -> Tuple[SimplicialComplex, EdgeLoop]:
    """
    Glue an annulus onto a boundary loop and return the new outer loop.

    The old boundary vertices become interior, so every simplex that touches
    the new boundary also contains an interior vertex.
    """
    start = piece.next_vertex_id()
    inner = list(boundary.vertices)
    outer = list(range(start, start + len(inner)))
    n = len(inner)
    triangles = []
    for i in range(n):
        triangles.append((outer[i], outer[(i + 1) % n], inner[i]))
        triangles.append((outer[(i + 1) % n], inner[i], inner[(i + 1) % n]))
    collared = piece.union(SimplicialComplex(triangles=triangles))
    return collared, EdgeLoop(outer)


def _quotient_problems(base: SimplicialComplex, piece: SimplicialComplex,
                       mapping: Dict[int, int], boundary: EdgeLoop) -> List[str]:
    problems: List[str] = []
    boundary_edges = set(boundary.edges())
    seen: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
    for simplex in list(piece.sorted_edges()) + list(piece.sorted_triangles()):
        image = tuple(sorted(mapping[v] for v in simplex))
        if len(set(image)) != len(image):
            problems.append(f"{simplex} collapses to {image}")
            continue
        on_boundary = len(simplex) == 2 and simplex in boundary_edges
        if on_boundary:
            continue
        if image in seen:
            problems.append(f"{simplex} and {seen[image]} both map to {image}")
        seen[image] = simplex
        if image in base.edges or image in base.triangles:
            problems.append(f"{simplex} lands on existing simplex {image}")
    return problems


def attach_along_loop(base: SimplicialComplex, target: Sequence[int], piece: SimplicialComplex,
                      piece_boundary: EdgeLoop, max_collars: int = 4) -> SimplicialComplex:
    """
    Glue ``piece`` to ``base`` by identifying ``piece_boundary`` with a closed edge path.

    When the naive quotient is not simplicial a collar is added around the
    piece's boundary and the gluing retried. The base complex, its labels
    and its tags are carried over unchanged.

    Args:
        base: Complex receiving the piece.
        target: Closed edge path in ``base`` as a vertex sequence.
        piece: Complex to attach.
        piece_boundary: Loop of ``piece`` identified with ``target`` vertex by vertex.
        max_collars: Number of collars to try before giving up.

    Returns:
        SimplicialComplex: The validated quotient complex.
    """
    path = EdgeLoop(target)
    if len(path) != len(piece_boundary):
        raise InputError(
            f"Attaching path has {len(path)} edges but the piece boundary has {len(piece_boundary)}"
        )
    if not path.lies_in(base):
        raise InputError("Attaching path is not an edge path of the base complex")
    if not piece_boundary.lies_in(piece):
        raise InputError("Piece boundary is not an edge loop of the piece")

    for collars in range(max_collars + 1):
        start = base.next_vertex_id()
        interior = sorted(piece.vertices - set(piece_boundary.vertices))
        mapping = {v: start + i for i, v in enumerate(interior)}
        mapping.update({b: t for b, t in zip(piece_boundary.vertices, path.vertices)})
        problems = _quotient_problems(base, piece, mapping, piece_boundary)
        if not problems:
            break
        logger.debug(f"Attachment not simplicial ({problems[0]}); adding collar {collars + 1}")
        piece, piece_boundary = add_collar(piece, piece_boundary)
    else:
        raise InvariantViolation(f"Attachment still not simplicial after {max_collars} collars")

    boundary_set = set(piece_boundary.vertices)
    labels = dict(base.labels)
    labels.update({mapping[v]: s for v, s in piece.labels.items() if v not in boundary_set})
    piece_tags = {}
    for name, value in piece.tags.items():
        if is_loop_tag(value) and set(value) <= piece.vertices:
            piece_tags[name] = [mapping[v] for v in value]
    glued = SimplicialComplex(
        triangles=base.triangles | {tuple(mapping[v] for v in t) for t in piece.triangles},
        edges=base.edges | {tuple(mapping[v] for v in e) for e in piece.edges},
        vertices=base.vertices,
        labels=labels,
        tags={**piece_tags, **base.tags},
    )
    return ensure_valid(glued, "attached complex")


def complex_Xk(k: int, boundary_subdivision: int = 3, max_collars: int = 4) -> SimplicialComplex:
    """
    The bowtie with a punctured P_k glued along ``gamma``.

    Returns:
        SimplicialComplex: X_k carrying the tags ``gamma``, ``K6``, ``K6hat`` and ``alpha``.
    """
    if k < 1:
        raise InputError(f"X_k needs k >= 1, got {k}")
    base = bowtie()
    piece = punctured_pseudo_projective_plane(k, boundary_subdivision, len(GAMMA))
    result = attach_along_loop(base, GAMMA, piece, piece.loop("beta"), max_collars)
    logger.debug(f"Built X_{k}: {result}")
    return result


def _cyclic_path_reduce(path: List[int]) -> List[int]:
    """Remove backtracks ``u v u`` from a closed vertex path, cyclically."""
    closed = list(path)
    while len(closed) >= 3:
        n = len(closed)
        spot = next((i for i in range(n) if closed[i - 1] == closed[(i + 1) % n]), None)
        if spot is None:
            break
        drop = {spot, (spot + 1) % n}
        closed = [v for j, v in enumerate(closed) if j not in drop]
    return closed if len(closed) >= 3 else []


def word_to_path(word: FreeWord) -> List[int]:
    """Expand a word in two generators to a closed edge path in the bowtie."""
    if word.rank != 2:
        raise InputError(f"Bowtie paths need a word in 2 generators, got rank {word.rank}")
    path: List[int] = []
    for gen, sign in word.letters():
        step = list(GENERATOR_PATHS[gen])
        if sign < 0:
            step = [step[0]] + step[1:][::-1]
        path.extend(step)
    return _cyclic_path_reduce(path)


def complex_FKT(word: FreeWord, max_collars: int = 4) -> SimplicialComplex:
    """
    The bowtie with a 2-cell attached along ``word``.

    Args:
        word: Nontrivial word in the commutator subgroup of F_2.
    """
    if word.is_empty():
        raise InputError("The attaching word must be nontrivial")
    sums = word.exponent_sums()
    if any(sums):
        raise InputError(f"Word {word} is not in the commutator subgroup (exponent sums {sums})")
    path = word_to_path(word)
    if len(path) < 3:
        raise InputError(f"Word {word} gives a degenerate attaching path")
    disk = cone_disk(len(path))
    result = attach_along_loop(bowtie(), path, disk, disk.loop("boundary"), max_collars)
    return result.with_tags(attaching_path=path)


# ---------------------------------------------------------------------------
# Subdivision
# ---------------------------------------------------------------------------

def barycentric_subdivision(complex_: SimplicialComplex) -> SimplicialComplex:
    """
    First barycentric subdivision; original vertices keep their ids.

    Loop tags follow the subdivided edges; subcomplex tags are replaced by
    their subdivisions.
    """
    next_id = complex_.next_vertex_id()
    centre: Dict[Tuple[int, ...], int] = {}
    labels = dict(complex_.labels)
    for simplex in complex_.sorted_edges() + complex_.sorted_triangles():
        centre[simplex] = next_id
        labels[next_id] = "b(" + ",".join(complex_.label(v) for v in simplex) + ")"
        next_id += 1

    def subdivide(simplex: Tuple[int, ...]) -> List[Tuple[int, ...]]:
        if len(simplex) == 1:
            return [simplex]
        if len(simplex) == 2:
            return [(v, centre[simplex]) for v in simplex]
        out = []
        for e in combinations(simplex, 2):
            for v in e:
                out.append((v, centre[e], centre[simplex]))
        return out

    triangles = [s for t in complex_.triangles for s in subdivide(t)]
    edges = [s for e in complex_.edges for s in subdivide(e)]
    tags = {}
    for name, value in complex_.tags.items():
        if is_loop_tag(value):
            loop: List[int] = []
            for a, b in EdgeLoop(value).steps():
                loop.extend([a, centre[(min(a, b), max(a, b))]])
            tags[name] = loop
        else:
            tags[name] = [list(s) for simplex in value for s in subdivide(tuple(simplex))]
    return SimplicialComplex(triangles, edges, complex_.vertices, labels, tags)


def stellar_subdivide(complex_: SimplicialComplex, triangles: Sequence[Sequence[int]]) -> SimplicialComplex:
    """
    Cone each listed triangle from a new interior vertex.

    Loop tags are unchanged; subcomplex tags trade each subdivided triangle
    for its three cone triangles.
    """
    chosen = {tuple(sorted(t)) for t in triangles}
    missing = chosen - complex_.triangles
    if missing:
        raise InputError(f"Triangles not in complex: {sorted(missing)}")
    next_id = complex_.next_vertex_id()
    new_triangles = set(complex_.triangles - chosen)
    labels = dict(complex_.labels)
    cones: Dict[Tuple[int, ...], List[Tuple[int, ...]]] = {}
    for t in sorted(chosen):
        cones[t] = [tuple(sorted(e + (next_id,))) for e in combinations(t, 2)]
        new_triangles.update(cones[t])
        labels[next_id] = "s(" + ",".join(complex_.label(v) for v in t) + ")"
        next_id += 1
    tags: Dict[str, Any] = {}
    for name, value in complex_.tags.items():
        if is_loop_tag(value):
            tags[name] = list(value)
        else:
            tags[name] = [list(s) for simplex in value for s in cones.get(tuple(simplex), [simplex])]
    return SimplicialComplex(new_triangles, complex_.edges, complex_.vertices, labels, tags)


# ---------------------------------------------------------------------------
# Singular set, regions and neighbourhoods
# ---------------------------------------------------------------------------

def link_graph(complex_: SimplicialComplex, v: int) -> nx.Graph:
    """Link of a vertex: a node per edge ``vw`` and an edge per triangle ``vwu``."""
    graph = nx.Graph()
    graph.add_nodes_from(w for e in complex_.edges if v in e for w in e if w != v)
    for t in complex_.triangles:
        if v in t:
            a, b = (w for w in t if w != v)
            graph.add_edge(a, b)
    return graph


def _is_path_or_cycle(graph: nx.Graph) -> bool:
    if graph.number_of_nodes() == 0 or not nx.is_connected(graph):
        return False
    return all(d <= 2 for _, d in graph.degree())


def singular_set(complex_: SimplicialComplex) -> SimplicialComplex:
    """
    Edges not in exactly two triangles and vertices whose link is not a path or cycle.

    Returns:
        SimplicialComplex: The singular subcomplex (edges and vertices only).
    """
    incidence = complex_.edge_triangles()
    edges = [e for e in complex_.sorted_edges() if len(incidence[e]) != 2]
    vertices = [v for v in complex_.sorted_vertices() if not _is_path_or_cycle(link_graph(complex_, v))]
    return SimplicialComplex(edges=edges, vertices=vertices, labels=complex_.labels)


def regular_regions(complex_: SimplicialComplex) -> List[List[Triangle]]:
    """Partition the triangles into classes connected across edges of degree two."""
    graph = nx.Graph()
    graph.add_nodes_from(complex_.triangles)
    for e, tris in complex_.edge_triangles().items():
        if len(tris) == 2:
            graph.add_edge(*tris)
    regions = [sorted(c) for c in nx.connected_components(graph)]
    return sorted(regions)


def neighborhoods(complex_: SimplicialComplex, v: int, radius: int = 1) -> SimplicialComplex:
    """
    Iterated closed star of a vertex.

    ``radius=1`` gives the closed star; each further round takes the closed
    star of everything reached so far.
    """
    if v not in complex_.vertices:
        raise InputError(f"Vertex {v} not in complex")
    if radius < 1:
        raise InputError(f"Neighbourhood radius must be positive, got {radius}")
    reached: Set[int] = {v}
    current = complex_.simplices_containing(reached)
    for _ in range(radius - 1):
        reached = set(current.vertices)
        current = complex_.simplices_containing(reached)
    return current
