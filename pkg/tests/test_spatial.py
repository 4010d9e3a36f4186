"""
Tests for spatial graphs, linking numbers and the coned maps into R^4.
"""

import pytest

from vk.core.spatial import (
    add_meridian_loop,
    analyze_projection,
    conway_gordon_omega,
    disjoint_cycle_pairs,
    embed_map_to_R4,
    is_embedded,
    linking_number,
    random_straight_k6,
    twisted_K6,
    validate_projection,
)
from vk.core.vankampen import VanKampenSolver, van_kampen_vector
from vk.entities.spatial_graph import OrientedCycle, SpatialGraph
from vk.exceptions import DegenerateProjection, InputError

TRIANGLE_A = {1: (0, 0, 0), 2: (4, 0, 0), 3: (0, 4, 0)}
TRIANGLE_B = {4: (1, 1, -2), 5: (1, 1, 2), 6: (-5, 1, 1)}
EDGES = [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]
A, B = OrientedCycle((1, 2, 3)), OrientedCycle((4, 5, 6))


@pytest.fixture
def hopf():
    """Fixture for two triangles forming a Hopf link."""
    return SpatialGraph({**TRIANGLE_A, **TRIANGLE_B}, EDGES)


@pytest.fixture(scope="module")
def linked_k6():
    """Fixture for a K6 whose only linked pair is 123|456."""
    return twisted_K6(1)


@pytest.fixture
def unlinked():
    """Fixture for the same triangles moved apart."""
    far = {v: (x + 100, y, z) for v, (x, y, z) in TRIANGLE_B.items()}
    return SpatialGraph({**TRIANGLE_A, **far}, EDGES)


def test_hopf_link(hopf):
    """Test that the Hopf triangles have linking number +-1."""
    lk = linking_number(hopf, A, B)
    assert abs(lk) == 1
    assert linking_number(hopf, B, A) == lk


def test_linking_number_symmetries(hopf):
    """Test orientation reversal and mirroring."""
    lk = linking_number(hopf, A, B)
    assert linking_number(hopf, A.reversed(), B) == -lk
    assert linking_number(hopf.mirrored(), A, B) == -lk


def test_linking_number_independent_of_direction(hopf):
    """Test that several generic directions agree."""
    values = {linking_number(hopf, A, B, seed=seed) for seed in range(5)}
    assert len(values) == 1


def test_unlinked_triangles(unlinked):
    """Test that separated triangles do not link."""
    assert linking_number(unlinked, A, B) == 0


def test_linking_number_errors(hopf):
    """Test shared vertices, missing edges and degenerate directions."""
    with pytest.raises(InputError):
        linking_number(hopf, A, OrientedCycle((1, 5, 6)))
    with pytest.raises(InputError):
        linking_number(hopf, OrientedCycle((1, 2, 4)), OrientedCycle((3, 5, 6)))
    with pytest.raises(DegenerateProjection):
        linking_number(hopf, A, B, direction=(0, 0, 1))
    with pytest.raises(InputError):
        analyze_projection(hopf.all_segments(), (0, 0, 0))


def test_projection_reports_meeting_segments():
    """Test that segments meeting in space never give a generic diagram."""
    crossing = SpatialGraph({1: (0, 0, 0), 2: (2, 0, 0), 3: (1, -1, 0), 4: (1, 1, 0)}, [(1, 2), (3, 4)])
    assert not validate_projection(crossing, (0, 0, 1)).ok
    assert not is_embedded(crossing, attempts=5)


def test_meridian_loop_changes_linking(unlinked):
    """Test that a double meridian loop links the triangles twice."""
    looped = add_meridian_loop(unlinked, (4, 5), (1, 2), 2)
    assert abs(linking_number(looped, A, B)) == 2
    assert add_meridian_loop(unlinked, (4, 5), (1, 2), 0) is unlinked
    with pytest.raises(InputError):
        add_meridian_loop(unlinked, (1, 3), (1, 2), 1)


def test_random_straight_k6_has_odd_omega():
    """Test that every straight K6 has an odd sum of linking numbers."""
    for seed in range(100):
        graph = random_straight_k6(seed)
        omega = conway_gordon_omega(graph, seed)
        assert omega.parity == 1
        assert len(omega.profile) == 10


def test_disjoint_cycle_pairs():
    """Test the ten triangle pairs of K6."""
    pairs = disjoint_cycle_pairs(random_straight_k6(0))
    assert len(pairs) == 10
    assert all(not set(a.vertices) & set(b.vertices) for a, b in pairs)
    with pytest.raises(InputError):
        disjoint_cycle_pairs(SpatialGraph({**TRIANGLE_A, **TRIANGLE_B}, EDGES))


@pytest.mark.parametrize("k", [1, -1, 3])
def test_twisted_k6(k):
    """Test that only the pair 123|456 links, with linking number k."""
    profile = conway_gordon_omega(twisted_K6(k)).profile
    assert profile.pop("123|456") == k
    assert not any(profile.values())


@pytest.mark.slow
def test_twisted_k6_five():
    """Test a larger twist."""
    assert conway_gordon_omega(twisted_K6(5)).profile["123|456"] == 5


def test_twisted_k6_rejects_even_k():
    """Test that even linking numbers are impossible."""
    with pytest.raises(InputError):
        twisted_K6(2)


def test_spatial_graph_json(hopf):
    """Test serialisation of spatial graphs with waypoints."""
    looped = add_meridian_loop(hopf, (4, 5), (1, 2), 1)
    again = SpatialGraph.from_json(looped.to_json())
    assert again.points == looped.points
    assert again.waypoints == looped.waypoints
    with pytest.raises(InputError):
        SpatialGraph.from_json("{")


def test_embed_map_from_linked_k6(delta_solver, linked_k6):
    """Test that the coned map of a K6 with one linked pair has a single intersection."""
    complex_, map_ = embed_map_to_R4(linked_k6)
    vector = van_kampen_vector(complex_, map_, delta_solver.pairs)
    nonzero = {pair: v for pair, v in zip(delta_solver.pairs, vector) if v}
    assert list(nonzero) == [((1, 2, 3), (4, 5, 6))]
    assert abs(nonzero[((1, 2, 3), (4, 5, 6))]) == 1
    assert not delta_solver.contains(vector, "Z").member


def test_embed_map_bowtie(bow, linked_k6):
    """Test that two coned K6 copies give the zero vector on the bowtie."""
    k6 = linked_k6
    complex_, map_ = embed_map_to_R4(k6, hat=k6)
    assert complex_ == bow
    solver = VanKampenSolver(complex_)
    assert not any(solver.vector(map_))
