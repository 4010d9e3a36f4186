"""
Tests for octahedralization, flag checks, K_{4,4} minors and disjoint neighbourhoods.
"""

import networkx as nx
import pytest

from vk.core.complexes import barycentric_subdivision
from vk.core.octa import (
    MinorWitness,
    SignedVertex,
    cycle_graph,
    has_K44_minor,
    is_flag,
    k44_isomorphism,
    octahedralize,
    octahedralized_cycle,
    prop52_hypothesis,
    vertex_link_graph,
)
from vk.exceptions import BudgetExceeded, InputError


@pytest.fixture(scope="module")
def fine_p3(p3):
    """Fixture for P_3 subdivided twice."""
    return barycentric_subdivision(barycentric_subdivision(p3))


def test_signed_vertex_ids():
    """Test the encoding 2v for v+ and 2v+1 for v-."""
    assert SignedVertex(3, 1).id == 6
    assert SignedVertex(3, -1).id == 7
    assert SignedVertex.from_id(7) == SignedVertex(3, -1)
    assert SignedVertex(3, -1).label("x") == "x-"
    with pytest.raises(InputError):
        SignedVertex(0, 2)
    with pytest.raises(InputError):
        SignedVertex(-1, 1)


def test_octahedralized_c4_is_k44():
    """Test that O(C_4) is K_{4,4} via an explicit isomorphism."""
    graph = octahedralized_cycle(4)
    mapping = k44_isomorphism(graph)
    assert mapping is not None
    target = nx.complete_bipartite_graph(4, 4)
    assert all(target.has_edge(mapping[u], mapping[v]) for u, v in graph.edges)
    assert k44_isomorphism(octahedralized_cycle(5)) is None


def test_octahedralized_cycle_size():
    """Test that O(C_n) has 2n vertices and 4n edges."""
    graph = octahedralized_cycle(5)
    assert graph.number_of_nodes() == 10
    assert graph.number_of_edges() == 20
    with pytest.raises(InputError):
        cycle_graph(2)


@pytest.mark.parametrize("n", range(4, 13))
def test_k44_minor_of_octahedralized_cycles(n):
    """Test that every O(C_n) with n >= 4 has a verified K_{4,4} minor."""
    graph = octahedralized_cycle(n)
    witness = has_K44_minor(graph)
    assert witness is not None
    assert witness.verify(graph)


def test_k44_minor_absent_and_budget():
    """Test graphs without the minor and the size budget."""
    assert has_K44_minor(nx.balanced_tree(2, 3)) is None
    assert has_K44_minor(nx.complete_bipartite_graph(3, 5)) is None
    with pytest.raises(BudgetExceeded):
        has_K44_minor(nx.path_graph(50))


def test_minor_witness_verification():
    """Test that broken branch sets are rejected."""
    graph = nx.complete_bipartite_graph(4, 4)
    good = MinorWitness([frozenset({i}) for i in range(4)], [frozenset({i}) for i in range(4, 8)])
    assert good.verify(graph)
    overlapping = MinorWitness([frozenset({0, 4})] + [frozenset({i}) for i in range(1, 4)],
                               [frozenset({i}) for i in range(4, 8)])
    assert not overlapping.verify(graph)
    same_side = MinorWitness([frozenset({i}) for i in (0, 1, 2, 4)], [frozenset({i}) for i in (3, 5, 6, 7)])
    assert not same_side.verify(graph)


def test_flag_checks(delta, p3):
    """Test non-flag complexes and their subdivisions."""
    check = is_flag(delta)
    assert not check
    assert check.clique == (0, 1, 2, 3)
    assert not is_flag(p3)
    sub = barycentric_subdivision(p3)
    assert is_flag(sub)
    assert is_flag(octahedralize(sub))
    assert is_flag(barycentric_subdivision(delta))


def test_octahedralize_counts(delta, bow, p3):
    """Test that each k-simplex has 2^(k+1) signed copies."""
    for complex_ in (delta, bow, p3):
        v, e, t = complex_.f_vector()
        assert octahedralize(complex_).f_vector() == (2 * v, 4 * e, 8 * t)


def test_octahedralize_tags(p3):
    """Test that tags are carried to both signed copies."""
    o = octahedralize(p3)
    assert {"alpha+", "alpha-"} <= set(o.tags)
    assert o.tag_vertices("alpha+") == {2 * v for v in p3.tag_vertices("alpha")}
    assert o.tag_vertices("alpha-") == {2 * v + 1 for v in p3.tag_vertices("alpha")}


def test_vertex_link_graph(p3):
    """Test links of vertices and missing vertices."""
    centre = max(p3.vertices)
    assert vertex_link_graph(p3, centre).number_of_nodes() == 9
    with pytest.raises(InputError):
        vertex_link_graph(p3, 999)


def test_prop52_needs_fine_triangulation(p3, fine_p3):
    """Test that disjoint neighbourhoods appear after subdividing."""
    assert prop52_hypothesis(p3) is None
    evidence = prop52_hypothesis(fine_p3)
    assert evidence is not None
    assert evidence.verify()
    assert evidence.to_dict()["radius"] == 2
