"""
Tests for complex constructions, homology and combinatorial queries.
"""

import pytest

from vk.core.catalog import catalog
from vk.core.complexes import (
    GAMMA,
    HAT_OFFSET,
    barycentric_subdivision,
    complex_FKT,
    complex_Xk,
    homology,
    link_graph,
    neighborhoods,
    pseudo_projective_plane,
    punctured_pseudo_projective_plane,
    regular_regions,
    singular_set,
    skeleton_of_simplex,
    stellar_subdivide,
    validate,
    word_to_path,
)
from vk.core.freegroup import parse_word
from vk.entities.complex import SimplicialComplex
from vk.exceptions import InputError


def _homology_strings(complex_):
    groups = homology(complex_)
    return [groups.describe(d) for d in range(3)]


def test_skeleton_of_simplex():
    """Test skeleta of small simplices."""
    assert skeleton_of_simplex(3, 1).f_vector() == (4, 6, 0)
    assert skeleton_of_simplex(3, 2).f_vector() == (4, 6, 4)
    with pytest.raises(InputError):
        skeleton_of_simplex(4, 3)
    with pytest.raises(InputError):
        skeleton_of_simplex(2, 3)


def test_delta62(delta):
    """Test the 2-skeleton of the 6-simplex."""
    assert delta.f_vector() == (7, 21, 35)
    assert delta.euler_characteristic() == 21
    assert _homology_strings(delta) == ["Z", "0", "Z^20"]
    assert len(delta.tag_vertices("K6")) == 6
    assert 0 not in delta.tag_vertices("K6")


def test_bowtie(bow):
    """Test the bowtie: two punctured copies joined by an edge."""
    assert bow.f_vector() == (14, 43, 68)
    assert (6, 6 + HAT_OFFSET) in bow.edges
    assert (4, 5, 6) not in bow.triangles
    assert list(bow.loop("gamma").vertices) == list(GAMMA)
    assert set(bow.tags) == {"gamma", "K6", "K6hat"}
    assert _homology_strings(bow) == ["Z", "0", "Z^38"]
    assert validate(bow) == []


@pytest.mark.parametrize("k", [2, 3, 5])
def test_pseudo_projective_plane_homology(k):
    """Test H1(P_k) = Z/k and H2(P_k) = 0."""
    pk = pseudo_projective_plane(k)
    assert _homology_strings(pk) == ["Z", f"Z/{k}", "0"]
    assert pk.euler_characteristic() == 1
    assert validate(pk) == []


def test_pseudo_projective_plane_degenerate_cases():
    """Test that P_1 is a disk and bad parameters are rejected."""
    assert _homology_strings(pseudo_projective_plane(1)) == ["Z", "0", "0"]
    with pytest.raises(InputError):
        pseudo_projective_plane(0)
    with pytest.raises(InputError):
        pseudo_projective_plane(3, boundary_subdivision=2)


def test_punctured_pseudo_projective_plane():
    """Test that the punctured P_k retracts to a circle."""
    piece = punctured_pseudo_projective_plane(3)
    assert _homology_strings(piece) == ["Z", "Z", "0"]
    assert len(piece.loop("beta")) == 8
    assert len(piece.loop("alpha")) == 3


def test_singular_set_of_p3(p3):
    """Test that the singular set of P_3 is the circle alpha."""
    singular = singular_set(p3)
    assert singular.vertices == frozenset({0, 1, 2})
    assert singular.edges == frozenset({(0, 1), (0, 2), (1, 2)})
    assert len(regular_regions(p3)) == 1


def test_singular_set_of_delta62(delta):
    """Test that every edge of the 6-simplex skeleton is singular."""
    assert singular_set(delta).edges == delta.edges


def test_links_and_neighborhoods(p3):
    """Test the link of the cone point and iterated stars."""
    centre = max(p3.vertices)
    link = link_graph(p3, centre)
    assert link.number_of_nodes() == 9
    assert all(d == 2 for _, d in link.degree())
    star = neighborhoods(p3, centre, 1)
    assert star.vertices == frozenset(range(3, 13))
    assert neighborhoods(p3, centre, 2).vertices == p3.vertices
    with pytest.raises(InputError):
        neighborhoods(p3, centre, 0)
    with pytest.raises(InputError):
        neighborhoods(p3, 999, 1)


def test_barycentric_subdivision_preserves_homology(p3):
    """Test that subdivision keeps the homology and the alpha loop."""
    sub = barycentric_subdivision(p3)
    v, e, t = p3.f_vector()
    assert sub.f_vector() == (v + e + t, 2 * e + 6 * t, 6 * t)
    assert _homology_strings(sub) == _homology_strings(p3)
    assert len(sub.loop("alpha")) == 6
    assert validate(sub) == []


def test_stellar_subdivide(p3):
    """Test stellar subdivision of chosen triangles."""
    triangle = p3.sorted_triangles()[0]
    sub = stellar_subdivide(p3, [triangle])
    assert sub.f_vector()[2] == p3.f_vector()[2] + 2
    assert _homology_strings(sub) == _homology_strings(p3)
    with pytest.raises(InputError):
        stellar_subdivide(p3, [(100, 101, 102)])


def test_stellar_subdivide_updates_subcomplex_tags(p3):
    """Test that a tagged triangle is replaced by its cone triangles."""
    first, second = p3.sorted_triangles()[:2]
    tagged = p3.with_tags(patch=[list(first), list(second)])
    sub = stellar_subdivide(tagged, [first])
    centre = max(sub.vertices)
    patch = set(sub.tags["patch"])
    assert tuple(first) not in patch
    assert tuple(second) in patch
    assert len(patch) == 4
    assert centre in sub.tag_vertices("patch")
    assert sub.loop("alpha") == p3.loop("alpha")
    assert validate(sub) == []
    stale = sub.with_tags(patch=[list(first)])
    assert any("missing triangle" in problem for problem in validate(stale))


@pytest.mark.slow
@pytest.mark.parametrize("k", [2, 3])
def test_xk_homology(k):
    """Test H1(X_k) = Z/k."""
    xk = complex_Xk(k)
    assert homology(xk).describe(1) == f"Z/{k}"
    assert {"gamma", "alpha", "K6", "K6hat"} <= set(xk.tags)
    assert validate(xk) == []


def test_word_to_path():
    """Test expansion of words into closed bowtie paths."""
    path = word_to_path(parse_word("[a,b]"))
    assert len(path) == 16
    assert path[0] == 6
    assert word_to_path(parse_word("a A")) == []


def test_fkt_complex():
    """Test the bowtie with a disk attached along [a,b]."""
    fkt = complex_FKT(parse_word("[a,b]"))
    assert _homology_strings(fkt) == ["Z", "0", "Z^39"]
    assert "attaching_path" in fkt.tags
    with pytest.raises(InputError):
        complex_FKT(parse_word("a b"))
    with pytest.raises(InputError):
        complex_FKT(parse_word("1"))


def test_validate_reports_bad_tags():
    """Test that tags on unknown vertices are reported."""
    broken = SimplicialComplex(triangles=[(0, 1, 2)], tags={"extra": [[0, 5]]})
    problems = validate(broken)
    assert problems
    assert "extra" in problems[0]


def test_json_round_trip(p3):
    """Test that the JSON form reproduces the complex and its tags."""
    again = SimplicialComplex.from_json(p3.to_json())
    assert again == p3
    assert again.tags == p3.tags
    assert again.labels == p3.labels


def test_catalog_names(config):
    """Test the catalog of named complexes."""
    assert catalog("delta62", config).f_vector() == (7, 21, 35)
    assert catalog("pk:2", config) == pseudo_projective_plane(2)
    with pytest.raises(InputError):
        catalog("pk:x", config)
    with pytest.raises(InputError):
        catalog("torus", config)
