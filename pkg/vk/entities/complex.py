"""
SimplicialComplex - A finite simplicial 2-complex with labeled vertices and tags.
"""

import json
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence, Set, Tuple

from vk.exceptions import InputError, InvariantViolation

Edge = Tuple[int, int]
Triangle = Tuple[int, int, int]
Tag = Tuple[Any, ...]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _normalize_tag(value: Sequence[Any]) -> Tag:
    """A tag is either a vertex sequence (a loop) or a list of simplices."""
    if all(isinstance(x, int) for x in value):
        return tuple(int(x) for x in value)
    return tuple(sorted(tuple(sorted(int(v) for v in s)) for s in value))


def is_loop_tag(value: Tag) -> bool:
    return all(isinstance(x, int) for x in value)


def map_tag(value: Tag, mapping: Dict[int, int]) -> Tag:
    if is_loop_tag(value):
        return tuple(mapping[v] for v in value)
    return _normalize_tag([[mapping[v] for v in s] for s in value])


class EdgeLoop:
    """
    A closed edge path, stored as its cyclic vertex sequence.

    The loop ``(v0, ..., v_{m-1})`` traverses the edges ``v_i v_{i+1}`` and
    finally ``v_{m-1} v0``.
    """

    def __init__(self, vertices: Sequence[int]):
        self.vertices: Tuple[int, ...] = tuple(int(v) for v in vertices)
        if len(self.vertices) < 3:
            raise InputError(f"Edge loop needs at least 3 vertices, got {len(self.vertices)}")
        for a, b in self.steps():
            if a == b:
                raise InputError(f"Edge loop repeats vertex {a} on consecutive steps")

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, index: int) -> int:
        return self.vertices[index % len(self.vertices)]

    def steps(self) -> List[Tuple[int, int]]:
        """Oriented steps ``(v_i, v_{i+1})`` including the closing step."""
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def edges(self) -> List[Edge]:
        return [_edge(a, b) for a, b in self.steps()]

    def reversed(self) -> "EdgeLoop":
        return EdgeLoop(self.vertices[::-1])

    def rotated(self, shift: int) -> "EdgeLoop":
        shift %= len(self.vertices)
        return EdgeLoop(self.vertices[shift:] + self.vertices[:shift])

    def lies_in(self, complex_: "SimplicialComplex") -> bool:
        return all(e in complex_.edges for e in self.edges())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeLoop):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"EdgeLoop({list(self.vertices)})"


class SimplicialComplex:
    """
    Finite simplicial complex of dimension at most 2.

    Simplices are stored as sorted vertex-id tuples and the complex is closed
    under faces at construction. Tags name distinguished vertex sequences:
    loops such as ``alpha`` or ``gamma`` and subcomplexes such as ``K6``
    given as simplex lists.
    Instances are treated as immutable; every transformation returns a new
    complex.
    """

    def __init__(self,
                 triangles: Iterable[Sequence[int]] = (),
                 edges: Iterable[Sequence[int]] = (),
                 vertices: Iterable[int] = (),
                 labels: Optional[Dict[int, str]] = None,
                 tags: Optional[Dict[str, Sequence[Any]]] = None):
        """
        Initialize a complex from its maximal simplices.

        Args:
            triangles: Triangles as vertex triples.
            edges: Additional edges.
            vertices: Additional isolated vertices.
            labels: Optional display labels per vertex id.
            tags: Named loops (vertex sequences) or subcomplexes (simplex lists).
        """
        tri: Set[Triangle] = {tuple(sorted(int(v) for v in t)) for t in triangles}  # type: ignore[misc]
        edg: Set[Edge] = {tuple(sorted(int(v) for v in e)) for e in edges}  # type: ignore[misc]
        for t in tri:
            edg.update(combinations(t, 2))
        vert: Set[int] = {int(v) for v in vertices}
        for e in edg:
            vert.update(e)

        self.triangles = frozenset(tri)
        self.edges = frozenset(edg)
        self.vertices = frozenset(vert)
        self.labels: Dict[int, str] = {v: s for v, s in (labels or {}).items() if v in vert}
        self.tags: Dict[str, Tag] = {k: _normalize_tag(v) for k, v in (tags or {}).items()}
        self._edge_triangles: Optional[Dict[Edge, List[Triangle]]] = None

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SimplicialComplex":
        """
        Create a complex from its JSON-compatible dictionary.

        Args:
            data: Dictionary with ``vertices``, ``edges``, ``triangles`` and ``tags``.

        Returns:
            SimplicialComplex: The decoded complex.
        """
        try:
            vertices = [v["id"] for v in data.get("vertices", [])]
            labels = {v["id"]: v["label"] for v in data.get("vertices", []) if v.get("label") is not None}
            return cls(
                triangles=data.get("triangles", []),
                edges=data.get("edges", []),
                vertices=vertices,
                labels=labels,
                tags=data.get("tags", {}),
            )
        except (KeyError, TypeError) as e:
            raise InputError(f"Malformed complex data: {e}") from e

    @classmethod
    def from_json(cls, text: str) -> "SimplicialComplex":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as e:
            raise InputError(f"Invalid complex JSON: {e}") from e

    # -- queries ----------------------------------------------------------

    def f_vector(self) -> Tuple[int, int, int]:
        return (len(self.vertices), len(self.edges), len(self.triangles))

    def euler_characteristic(self) -> int:
        v, e, t = self.f_vector()
        return v - e + t

    def sorted_vertices(self) -> List[int]:
        return sorted(self.vertices)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def sorted_triangles(self) -> List[Triangle]:
        return sorted(self.triangles)

    def label(self, v: int) -> str:
        return self.labels.get(v, str(v))

    def vertex_by_label(self, label: str) -> int:
        for v, s in self.labels.items():
            if s == label:
                return v
        raise InputError(f"No vertex labeled {label!r}")

    def edge_triangles(self) -> Dict[Edge, List[Triangle]]:
        """Map every edge to the triangles containing it."""
        if self._edge_triangles is None:
            incidence: Dict[Edge, List[Triangle]] = {e: [] for e in self.edges}
            for t in self.sorted_triangles():
                for e in combinations(t, 2):
                    incidence[e].append(t)
            self._edge_triangles = incidence
        return self._edge_triangles

    def neighbors(self, v: int) -> Set[int]:
        return {w for e in self.edges if v in e for w in e if w != v}

    def loop(self, tag: str) -> EdgeLoop:
        """Return a tagged loop, checking that it runs along edges."""
        if tag not in self.tags:
            raise InputError(f"Complex has no tag {tag!r}")
        if not is_loop_tag(self.tags[tag]):
            raise InputError(f"Tag {tag!r} is a subcomplex, not a loop")
        loop = EdgeLoop(self.tags[tag])
        if not loop.lies_in(self):
            raise InvariantViolation(f"Tag {tag!r} is not an edge loop of the complex")
        return loop

    def tag_vertices(self, tag: str) -> Set[int]:
        """Vertices touched by a tag of either kind."""
        if tag not in self.tags:
            raise InputError(f"Complex has no tag {tag!r}")
        value = self.tags[tag]
        if is_loop_tag(value):
            return set(value)
        return {v for s in value for v in s}

    def simplices_containing(self, vertices: Iterable[int]) -> "SimplicialComplex":
        """Closed star of a vertex set: all simplices meeting it, with faces."""
        vs = set(vertices)
        return SimplicialComplex(
            triangles=[t for t in self.triangles if vs.intersection(t)],
            edges=[e for e in self.edges if vs.intersection(e)],
            vertices=vs & self.vertices,
            labels=self.labels,
        )

    # -- transformations --------------------------------------------------

    def relabel(self, mapping: Dict[int, int], label_map: Optional[Dict[int, str]] = None) -> "SimplicialComplex":
        """
        Apply an injective vertex renaming.

        Args:
            mapping: Old id to new id for every vertex.
            label_map: Optional labels keyed by new ids; defaults to carrying old labels.
        """
        if len(set(mapping.values())) != len(mapping):
            raise InputError("relabel expects an injective mapping")
        labels = label_map if label_map is not None else {mapping[v]: s for v, s in self.labels.items()}
        return SimplicialComplex(
            triangles=[[mapping[v] for v in t] for t in self.triangles],
            edges=[[mapping[v] for v in e] for e in self.edges],
            vertices=[mapping[v] for v in self.vertices],
            labels=labels,
            tags={k: map_tag(seq, mapping) for k, seq in self.tags.items()},
        )

    def shifted(self, offset: int) -> "SimplicialComplex":
        """Add ``offset`` to every vertex id."""
        return self.relabel({v: v + offset for v in self.vertices})

    def union(self, other: "SimplicialComplex") -> "SimplicialComplex":
        """Union on shared vertex ids; tags of ``other`` win on name clashes."""
        return SimplicialComplex(
            triangles=self.triangles | other.triangles,
            edges=self.edges | other.edges,
            vertices=self.vertices | other.vertices,
            labels={**self.labels, **other.labels},
            tags={**self.tags, **other.tags},
        )

    def without_triangles(self, removed: Iterable[Sequence[int]]) -> "SimplicialComplex":
        """Remove triangle interiors, keeping their edges."""
        drop = {tuple(sorted(t)) for t in removed}
        missing = drop - self.triangles
        if missing:
            raise InputError(f"Triangles not in complex: {sorted(missing)}")
        return SimplicialComplex(
            triangles=self.triangles - drop,
            edges=self.edges,
            vertices=self.vertices,
            labels=self.labels,
            tags=self.tags,
        )

    def with_tags(self, **tags: Sequence[Any]) -> "SimplicialComplex":
        return SimplicialComplex(
            triangles=self.triangles,
            edges=self.edges,
            vertices=self.vertices,
            labels=self.labels,
            tags={**self.tags, **tags},
        )

    def next_vertex_id(self) -> int:
        return max(self.vertices) + 1 if self.vertices else 0

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert the complex to its canonical JSON-compatible dictionary.

        Returns:
            Dict[str, Any]: Vertices, edges and triangles in sorted order plus tags.
        """
        vertices: List[Dict[str, Any]] = []
        for v in self.sorted_vertices():
            entry: Dict[str, Any] = {"id": v}
            if v in self.labels:
                entry["label"] = self.labels[v]
            vertices.append(entry)
        return {
            "vertices": vertices,
            "edges": [list(e) for e in self.sorted_edges()],
            "triangles": [list(t) for t in self.sorted_triangles()],
            "tags": {
                k: list(v) if is_loop_tag(v) else [list(s) for s in v]
                for k, v in sorted(self.tags.items())
            },
        }

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_dict(), indent=indent, ensure_ascii=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.edges == other.edges
            and self.triangles == other.triangles
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges, self.triangles))

    def __repr__(self) -> str:
        v, e, t = self.f_vector()
        return f"SimplicialComplex(vertices={v}, edges={e}, triangles={t}, tags={sorted(self.tags)})"
