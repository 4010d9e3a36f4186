"""
SpatialGraph - A graph embedded in R^3 by polylines with rational coordinates.
"""

import json
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from vk.exceptions import InputError

Point3 = Tuple[Fraction, Fraction, Fraction]
Edge = Tuple[int, int]
Segment = Tuple[Point3, Point3]


def to_point(values: Sequence[Any]) -> Point3:
    """Parse three coordinates given as numbers or ``"p/q"`` strings."""
    if len(values) != 3:
        raise InputError(f"Expected 3 coordinates, got {len(values)}")
    try:
        return tuple(Fraction(v) for v in values)  # type: ignore[return-value]
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"Invalid coordinate in {list(values)}: {e}") from e


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class OrientedCycle:
    """A cycle of distinct vertices, traversed ``v0 -> v1 -> ... -> v0``."""

    def __init__(self, vertices: Sequence[int]):
        self.vertices: Tuple[int, ...] = tuple(int(v) for v in vertices)
        if len(self.vertices) < 3:
            raise InputError(f"A cycle needs at least 3 vertices, got {self.vertices}")
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError(f"Cycle {self.vertices} repeats a vertex")

    def steps(self) -> List[Tuple[int, int]]:
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def reversed(self) -> "OrientedCycle":
        return OrientedCycle(self.vertices[::-1])

    def name(self) -> str:
        return "".join(str(v) for v in self.vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrientedCycle):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"OrientedCycle({list(self.vertices)})"


class SpatialGraph:
    """
    Vertices placed in Q^3, edges drawn as polylines.

    Each edge ``(u, v)`` with ``u < v`` stores its interior waypoints in the
    direction from ``u`` to ``v``; no waypoints means a straight segment.
    """

    def __init__(self,
                 points: Dict[int, Sequence[Any]],
                 edges: Iterable[Sequence[int]],
                 waypoints: Optional[Dict[Edge, Sequence[Sequence[Any]]]] = None,
                 labels: Optional[Dict[int, str]] = None):
        self.points: Dict[int, Point3] = {int(v): to_point(p) for v, p in points.items()}
        self.edges: List[Edge] = sorted({_edge(int(e[0]), int(e[1])) for e in edges})
        for u, v in self.edges:
            if u == v:
                raise InputError(f"Loop edge at vertex {u}")
            if u not in self.points or v not in self.points:
                raise InputError(f"Edge {(u, v)} has an unplaced endpoint")
        self.waypoints: Dict[Edge, List[Point3]] = {}
        for e, pts in (waypoints or {}).items():
            key = _edge(*e)
            if key not in self.edges:
                raise InputError(f"Waypoints given for missing edge {key}")
            if pts:
                self.waypoints[key] = [to_point(p) for p in pts]
        self.labels: Dict[int, str] = dict(labels or {})

    @classmethod
    def complete(cls, points: Dict[int, Sequence[Any]], labels: Optional[Dict[int, str]] = None) -> "SpatialGraph":
        """Straight-line complete graph on the given points."""
        return cls(points, combinations(sorted(points), 2), labels=labels)

    def vertices(self) -> List[int]:
        return sorted(self.points)

    def has_edge(self, u: int, v: int) -> bool:
        return _edge(u, v) in self.edges

    def is_complete(self, n: int) -> bool:
        return len(self.points) == n and len(self.edges) == n * (n - 1) // 2

    def polyline(self, u: int, v: int) -> List[Point3]:
        """Points of edge ``uv`` in the direction ``u -> v``."""
        key = _edge(u, v)
        if key not in self.edges:
            raise InputError(f"No edge {key}")
        inner = self.waypoints.get(key, [])
        path = [self.points[key[0]]] + inner + [self.points[key[1]]]
        return path if u < v else path[::-1]

    def edge_segments(self, u: int, v: int) -> List[Segment]:
        path = self.polyline(u, v)
        return list(zip(path, path[1:]))

    def cycle_segments(self, cycle: OrientedCycle) -> List[Segment]:
        segments: List[Segment] = []
        for u, v in cycle.steps():
            segments.extend(self.edge_segments(u, v))
        return segments

    def all_segments(self) -> List[Segment]:
        segments: List[Segment] = []
        for u, v in self.edges:
            segments.extend(self.edge_segments(u, v))
        return segments

    def check_cycle(self, cycle: OrientedCycle) -> None:
        for u, v in cycle.steps():
            if not self.has_edge(u, v):
                raise InputError(f"Cycle {cycle} uses missing edge {(u, v)}")

    # -- transformations --------------------------------------------------

    def with_waypoints(self, edge: Sequence[int], points: Sequence[Point3]) -> "SpatialGraph":
        """Replace the waypoints of one edge, given in its ``min -> max`` direction."""
        waypoints: Dict[Edge, Sequence[Sequence[Any]]] = dict(self.waypoints)
        waypoints[_edge(edge[0], edge[1])] = list(points)
        return SpatialGraph(self.points, self.edges, waypoints, self.labels)

    def relabel(self, mapping: Dict[int, int]) -> "SpatialGraph":
        """Rename vertices; waypoint lists flip when an edge changes direction."""
        if sorted(mapping) != self.vertices() or len(set(mapping.values())) != len(mapping):
            raise InputError("relabel expects a bijection on the vertices")
        waypoints: Dict[Edge, Sequence[Sequence[Any]]] = {}
        for (u, v), pts in self.waypoints.items():
            a, b = mapping[u], mapping[v]
            waypoints[_edge(a, b)] = pts if a < b else pts[::-1]
        return SpatialGraph(
            {mapping[v]: p for v, p in self.points.items()},
            [(mapping[u], mapping[v]) for u, v in self.edges],
            waypoints,
            {mapping[v]: s for v, s in self.labels.items()},
        )

    def transformed(self, scale: Sequence[Any] = (1, 1, 1), offset: Sequence[Any] = (0, 0, 0)) -> "SpatialGraph":
        """Apply ``p -> scale * p + offset`` coordinate-wise."""
        s, o = to_point(scale), to_point(offset)

        def move(p: Point3) -> Point3:
            return (p[0] * s[0] + o[0], p[1] * s[1] + o[1], p[2] * s[2] + o[2])

        return SpatialGraph(
            {v: move(p) for v, p in self.points.items()},
            self.edges,
            {e: [move(p) for p in pts] for e, pts in self.waypoints.items()},
            self.labels,
        )

    def mirrored(self) -> "SpatialGraph":
        """Reflect in the plane ``z = 0``."""
        return self.transformed(scale=(1, 1, -1))

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        """JSON form with coordinates as ``"p/q"`` strings."""
        return {
            "vertices": [
                {"id": v, "point": [str(x) for x in self.points[v]],
                 **({"label": self.labels[v]} if v in self.labels else {})}
                for v in self.vertices()
            ],
            "edges": [
                {"ends": [u, v], "waypoints": [[str(x) for x in p] for p in self.waypoints.get((u, v), [])]}
                for u, v in self.edges
            ],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SpatialGraph":
        try:
            points = {int(v["id"]): v["point"] for v in data["vertices"]}
            labels = {int(v["id"]): v["label"] for v in data["vertices"] if "label" in v}
            edges = [tuple(e["ends"]) for e in data["edges"]]
            waypoints = {
                _edge(int(e["ends"][0]), int(e["ends"][1])): e.get("waypoints", []) for e in data["edges"]
            }
        except (KeyError, TypeError, IndexError) as e:
            raise InputError(f"Malformed spatial graph: {e}") from e
        return cls(points, edges, waypoints, labels)

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "SpatialGraph":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as e:
            raise InputError(f"Invalid spatial graph JSON: {e}") from e

    def __repr__(self) -> str:
        bends = sum(len(p) for p in self.waypoints.values())
        return f"SpatialGraph(vertices={len(self.points)}, edges={len(self.edges)}, waypoints={bends})"
