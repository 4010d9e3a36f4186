"""
Octa module for octahedralization, flag checks and K44 minors.

A vertex ``v`` of ``L`` becomes the signed pair ``v+`` (id ``2v``) and ``v-``
(id ``2v + 1``) of ``OL``; a ``k``-simplex becomes all ``2^(k+1)`` choices of
signs on its vertices.
"""

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, FrozenSet, Hashable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from vk.config import Config
from vk.core.complexes import link_graph, neighborhoods, singular_set
from vk.entities.complex import SimplicialComplex, map_tag
from vk.exceptions import BudgetExceeded, InputError
from vk.utils.logger import get_logger

logger = get_logger(__name__)

SIGNS = (1, -1)
MAX_MINOR_STATES = 100_000


@dataclass(frozen=True)
class SignedVertex:
    """One of the two copies of a base vertex in an octahedralization."""

    base: int
    sign: int

    def __post_init__(self):
        if self.base < 0:
            raise InputError(f"Base vertex ids must be non-negative, got {self.base}")
        if self.sign not in SIGNS:
            raise InputError(f"Sign must be +1 or -1, got {self.sign}")

    @property
    def id(self) -> int:
        return 2 * self.base + (0 if self.sign > 0 else 1)

    @classmethod
    def from_id(cls, vertex_id: int) -> "SignedVertex":
        return cls(vertex_id // 2, 1 if vertex_id % 2 == 0 else -1)

    def label(self, base_label: Optional[str] = None) -> str:
        return f"{base_label if base_label is not None else self.base}{'+' if self.sign > 0 else '-'}"

    def __repr__(self) -> str:
        return f"SignedVertex({self.label()})"


def _signed_copies(simplex: Sequence[int]) -> List[Tuple[int, ...]]:
    return [tuple(SignedVertex(v, s).id for v, s in zip(simplex, signs))
            for signs in product(SIGNS, repeat=len(simplex))]


def octahedralize(complex_: SimplicialComplex) -> SimplicialComplex:
    """
    Octahedralization ``OL``.

    Labels get a ``+`` or ``-`` suffix. Every tag ``t`` is carried to the
    two copies ``t+`` and ``t-`` on the correspondingly signed vertices.
    """
    triangles = [c for t in complex_.triangles for c in _signed_copies(t)]
    edges = [c for e in complex_.edges for c in _signed_copies(e)]
    vertices = [SignedVertex(v, s).id for v in complex_.vertices for s in SIGNS]
    labels = {SignedVertex(v, s).id: SignedVertex(v, s).label(complex_.label(v))
              for v in complex_.vertices for s in SIGNS}
    tags = {}
    for name, value in complex_.tags.items():
        for s in SIGNS:
            mapping = {v: SignedVertex(v, s).id for v in complex_.vertices}
            tags[f"{name}{'+' if s > 0 else '-'}"] = map_tag(value, mapping)
    return SimplicialComplex(triangles, edges, vertices, labels, tags)


def octahedralize_graph(graph: nx.Graph) -> nx.Graph:
    """Octahedralization of a graph on non-negative integer nodes."""
    result = nx.Graph()
    result.add_nodes_from(SignedVertex(v, s).id for v in graph.nodes for s in SIGNS)
    result.add_edges_from(c for e in graph.edges for c in _signed_copies(e))
    return result


def one_skeleton(complex_: SimplicialComplex) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(complex_.vertices)
    graph.add_edges_from(complex_.edges)
    return graph


# ---------------------------------------------------------------------------
# Flag complexes and links
# ---------------------------------------------------------------------------

@dataclass
class FlagCheck:
    flag: bool
    clique: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.flag

    def to_dict(self) -> Dict[str, object]:
        return {"flag": self.flag, "clique": list(self.clique) if self.clique else None}


def is_flag(complex_: SimplicialComplex) -> FlagCheck:
    """
    Check that every clique of the 1-skeleton spans a simplex.

    In dimension two this means every 3-clique is a triangle and there are
    no 4-cliques. The first offending clique in sorted order is returned.
    """
    cliques = sorted(tuple(sorted(c)) for c in nx.find_cliques(one_skeleton(complex_)))
    for clique in cliques:
        if len(clique) >= 4:
            return FlagCheck(False, clique[:4])
    for clique in cliques:
        if len(clique) == 3 and clique not in complex_.triangles:
            return FlagCheck(False, clique)
    return FlagCheck(True)


def vertex_link_graph(complex_: SimplicialComplex, v: int) -> nx.Graph:
    """A node per edge ``vw`` and an edge per triangle ``vwu``."""
    if v not in complex_.vertices:
        raise InputError(f"Vertex {v} not in complex")
    return link_graph(complex_, v)


def cycle_graph(n: int) -> nx.Graph:
    if n < 3:
        raise InputError(f"A cycle needs at least 3 vertices, got {n}")
    return nx.cycle_graph(n)


def octahedralized_cycle(n: int) -> nx.Graph:
    """``O(C_n)``: ``2n`` vertices and ``4n`` edges."""
    return octahedralize_graph(cycle_graph(n))


def k44_isomorphism(graph: nx.Graph) -> Optional[Dict[Hashable, int]]:
    """
    An explicit isomorphism onto ``K_{4,4}``, or None.

    Nodes ``0 .. 3`` of the target form one side and ``4 .. 7`` the other.
    """
    target = nx.complete_bipartite_graph(4, 4)
    if graph.number_of_nodes() != 8 or graph.number_of_edges() != 16:
        return None
    matcher = nx.algorithms.isomorphism.GraphMatcher(graph, target)
    if not matcher.is_isomorphic():
        return None
    return dict(matcher.mapping)


# ---------------------------------------------------------------------------
# K44 minors
# ---------------------------------------------------------------------------

@dataclass
class MinorWitness:
    """Branch sets realising ``K_{4,4}`` as a minor."""

    left: List[FrozenSet[Hashable]]
    right: List[FrozenSet[Hashable]]
    contracted: List[Tuple[Hashable, Hashable]] = field(default_factory=list)

    @property
    def branch_sets(self) -> List[FrozenSet[Hashable]]:
        return self.left + self.right

    def verify(self, graph: nx.Graph) -> bool:
        """Disjoint connected branch sets with an edge between every left and right set."""
        sets = self.branch_sets
        if len(self.left) != 4 or len(self.right) != 4 or not all(sets):
            return False
        if len(frozenset().union(*sets)) != sum(len(s) for s in sets):
            return False
        if not all(graph.has_node(v) for s in sets for v in s):
            return False
        if not all(nx.is_connected(graph.subgraph(s)) for s in sets):
            return False
        return all(
            any(graph.has_edge(x, y) for x in a for y in b)
            for a in self.left for b in self.right
        )

    def to_dict(self) -> Dict[str, object]:
        return {
            "left": [sorted(s) for s in self.left],
            "right": [sorted(s) for s in self.right],
            "contracted": [list(e) for e in self.contracted],
        }


class _Quotient:
    """A graph with some edges contracted, remembering the branch set of each node."""

    def __init__(self, graph: nx.Graph):
        self.graph = graph.copy()
        self.branches: Dict[Hashable, Set[Hashable]] = {v: {v} for v in graph.nodes}
        self.contracted: List[Tuple[Hashable, Hashable]] = []

    def copy(self) -> "_Quotient":
        other = _Quotient.__new__(_Quotient)
        other.graph = self.graph.copy()
        other.branches = {v: set(b) for v, b in self.branches.items()}
        other.contracted = list(self.contracted)
        return other

    def contract(self, u: Hashable, v: Hashable) -> None:
        self.graph = nx.contracted_nodes(self.graph, u, v, self_loops=False)
        self.branches[u] |= self.branches.pop(v)
        self.contracted.append((u, v))

    def delete(self, v: Hashable) -> None:
        self.graph.remove_node(v)
        del self.branches[v]

    def state(self) -> FrozenSet[FrozenSet[Hashable]]:
        return frozenset(frozenset(b) for b in self.branches.values())

    def suppress_low_degree(self) -> None:
        """Delete nodes of degree at most one and contract nodes of degree two; neither can carry a K44 branch."""
        changed = True
        while changed:
            changed = False
            for v in sorted(self.graph.nodes):
                degree = self.graph.degree(v)
                if degree <= 1:
                    self.delete(v)
                    changed = True
                    break
                if degree == 2:
                    self.contract(min(self.graph[v]), v)
                    changed = True
                    break

    def witness(self) -> Optional[MinorWitness]:
        found = _k44_subgraph(self.graph)
        if found is None:
            return None
        left, right = found
        return MinorWitness(
            [frozenset(self.branches[v]) for v in left],
            [frozenset(self.branches[v]) for v in right],
            list(self.contracted),
        )

    def twin_pairs(self) -> List[Tuple[Hashable, Hashable]]:
        """Pairs of nodes with the same neighbours apart from each other."""
        nodes = sorted(self.graph.nodes)
        neighbours = {v: set(self.graph[v]) for v in nodes}
        return [(a, b) for a, b in combinations(nodes, 2) if neighbours[a] - {b} == neighbours[b] - {a}]


def _k44_subgraph(graph: nx.Graph) -> Optional[Tuple[Tuple[Hashable, ...], Tuple[Hashable, ...]]]:
    candidates = sorted(v for v in graph.nodes if graph.degree(v) >= 4)
    for left in combinations(candidates, 4):
        common = set(graph[left[0]])
        for v in left[1:]:
            common &= set(graph[v])
        common -= set(left)
        if len(common) >= 4:
            return left, tuple(sorted(common)[:4])
    return None


def _twin_contractions(quotient: _Quotient) -> Optional[MinorWitness]:
    """
    Contract matching edges between two twin pairs until K44 appears.

    Octahedralized cycles shrink ``O(C_n)`` to ``O(C_(n-1))`` plus an edge at
    each step, two contracted edges at a time.
    """
    while quotient.graph.number_of_nodes() >= 8:
        witness = quotient.witness()
        if witness is not None:
            return witness
        step = None
        twins = quotient.twin_pairs()
        for (a, a2), (b, b2) in combinations(twins, 2):
            if len({a, a2, b, b2}) < 4:
                continue
            if quotient.graph.has_edge(a, b) and quotient.graph.has_edge(a2, b2):
                step = ((a, b), (a2, b2))
                break
        if step is None:
            return None
        for u, v in step:
            quotient.contract(u, v)
    return None


def _exhaustive(quotient: _Quotient, max_states: int) -> Optional[MinorWitness]:
    """Depth-first search over contraction sequences."""
    seen = {quotient.state()}
    stack = [quotient]
    while stack:
        current = stack.pop()
        witness = current.witness()
        if witness is not None:
            return witness
        for u, v in sorted(current.graph.edges):
            nxt = current.copy()
            nxt.contract(u, v)
            if nxt.graph.number_of_nodes() < 8 or nxt.graph.number_of_edges() < 16:
                continue
            state = nxt.state()
            if state in seen:
                continue
            seen.add(state)
            if len(seen) > max_states:
                raise BudgetExceeded(f"K44 minor search visited more than {max_states} contraction states")
            stack.append(nxt)
    return None


def has_K44_minor(graph: nx.Graph, max_vertices: Optional[int] = None,
                  max_states: int = MAX_MINOR_STATES) -> Optional[MinorWitness]:
    """
    Search for a ``K_{4,4}`` minor.

    A minor of a 2-connected graph lives in one block, so blocks are
    searched separately. Each block is reduced, tried with paired twin
    contractions first and then with an exhaustive contraction search.

    Args:
        graph: Graph to search.
        max_vertices: Size budget, ``octa.max_minor_vertices`` by default.
        max_states: Budget for the exhaustive search.

    Returns:
        Optional[MinorWitness]: Branch sets in ``graph``, or None.

    Raises:
        BudgetExceeded: If the graph or the search exceeds its budget.
    """
    budget = max_vertices if max_vertices is not None else Config().get("octa.max_minor_vertices")
    if graph.number_of_nodes() > budget:
        raise BudgetExceeded(f"Graph has {graph.number_of_nodes()} vertices, minor search budget is {budget}")

    blocks = sorted((sorted(b) for b in nx.biconnected_components(graph)), key=lambda b: (-len(b), b))
    for block in blocks:
        sub = graph.subgraph(block)
        if sub.number_of_nodes() < 8 or sub.number_of_edges() < 16:
            continue
        quotient = _Quotient(sub)
        quotient.suppress_low_degree()
        if quotient.graph.number_of_nodes() < 8 or quotient.graph.number_of_edges() < 16:
            continue
        witness = _twin_contractions(quotient.copy()) or _exhaustive(quotient, max_states)
        if witness is not None:
            logger.debug(f"K44 minor after {len(witness.contracted)} contractions")
            return witness
    return None


# ---------------------------------------------------------------------------
# Disjoint neighbourhoods
# ---------------------------------------------------------------------------

@dataclass
class Prop52Evidence:
    """Two vertices whose closed neighbourhoods avoid each other and the singular set."""

    v: int
    v_hat: int
    radius: int
    neighborhood: SimplicialComplex
    neighborhood_hat: SimplicialComplex
    singular_vertices: FrozenSet[int]
    link_sizes: Tuple[int, int]

    def verify(self) -> bool:
        a, b = self.neighborhood.vertices, self.neighborhood_hat.vertices
        return not (a & b) and not (a & self.singular_vertices) and not (b & self.singular_vertices)

    def to_dict(self) -> Dict[str, object]:
        return {
            "v": self.v,
            "v_hat": self.v_hat,
            "radius": self.radius,
            "neighborhood_vertices": sorted(self.neighborhood.vertices),
            "neighborhood_hat_vertices": sorted(self.neighborhood_hat.vertices),
            "singular_vertices": sorted(self.singular_vertices),
            "link_sizes": list(self.link_sizes),
        }


def prop52_hypothesis(complex_: SimplicialComplex, radius: int = 2) -> Optional[Prop52Evidence]:
    """
    Find ``v``, ``v_hat`` whose ``radius``-neighbourhoods are disjoint and miss the singular set.

    The singular set is the combinatorial one together with the tagged loop
    ``alpha`` when present. Vertices are tried in increasing order.

    Returns:
        Optional[Prop52Evidence]: The first pair found, or None when the triangulation is too coarse.
    """
    singular: Set[int] = set(singular_set(complex_).vertices)
    if "alpha" in complex_.tags:
        singular |= complex_.tag_vertices("alpha")

    cache: Dict[int, Optional[SimplicialComplex]] = {}

    def clean(v: int) -> Optional[SimplicialComplex]:
        if v not in cache:
            if v in singular:
                cache[v] = None
            else:
                hood = neighborhoods(complex_, v, radius)
                cache[v] = None if hood.vertices & singular else hood
        return cache[v]

    vertices = complex_.sorted_vertices()
    for i, v in enumerate(vertices):
        hood = clean(v)
        if hood is None:
            continue
        for w in vertices[i + 1:]:
            other = clean(w)
            if other is None or hood.vertices & other.vertices:
                continue
            sizes = (link_graph(complex_, v).number_of_nodes(), link_graph(complex_, w).number_of_nodes())
            logger.info(f"Disjoint {radius}-neighbourhoods at vertices {v} and {w}")
            return Prop52Evidence(v, w, radius, hood, other, frozenset(singular), sizes)
    logger.info(f"No pair of disjoint {radius}-neighbourhoods avoiding the singular set")
    return None
