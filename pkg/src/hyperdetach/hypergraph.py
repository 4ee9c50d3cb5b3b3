"""Edge-colored multiset hypergraphs.

An edge is a multiset of vertices: the same vertex may occur several times
in one edge.  Every edge instance carries a stable integer id (assigned at
construction, preserved by every transformation in the package) and a color
in ``0..k`` where 0 means "uncolored" and ``1..k`` are the color classes.

A *hinge* is one occurrence of a vertex in one edge instance; hinges are
the unit objects moved around by detachments.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple

from .errors import DomainError

# Canonical multiset encoding: sorted ((vertex, multiplicity), ...) with
# every multiplicity >= 1.  Used as dict key throughout.
Occ = tuple[tuple[int, int], ...]


def canon_occ(occ: Mapping[int, int] | Iterable[int]) -> Occ:
    """Canonicalize a multiset given as mapping or as an iterable of vertices."""
    if isinstance(occ, Mapping):
        items = [(int(v), int(m)) for v, m in occ.items() if m]
    else:
        counts: dict[int, int] = {}
        for v in occ:
            counts[int(v)] = counts.get(int(v), 0) + 1
        items = list(counts.items())
    for v, m in items:
        if m < 0:
            raise DomainError(f"negative multiplicity {m} for vertex {v}")
    return tuple(sorted((v, m) for v, m in items if m > 0))


def occ_size(occ: Occ) -> int:
    return sum(m for _, m in occ)


class Hinge(NamedTuple):
    """One occurrence of `vertex` in edge instance `edge_id`.

    Slots are numbered 1..mult within the edge; the ordering key for any
    deterministic hinge iteration is (edge_id, slot).
    """

    edge_id: int
    slot: int
    vertex: int


@dataclass(frozen=True)
class EdgeInstance:
    id: int
    occ: Occ
    color: int = 0

    def mult_of(self, v: int) -> int:
        for u, m in self.occ:
            if u == v:
                return m
        return 0

    @property
    def size(self) -> int:
        return occ_size(self.occ)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.occ)


class Hypergraph:
    """Immutable multiset hypergraph with k color classes.

    ``vertices`` may include isolated vertices; edge occurrences must stay
    inside the vertex set.  Edge ids must be pairwise distinct.
    """

    __slots__ = ("vertices", "edges", "k", "_by_id")

    def __init__(self, vertices: Iterable[int], edges: Iterable[EdgeInstance], k: int = 0):
        self.vertices: frozenset[int] = frozenset(int(v) for v in vertices)
        self.edges: tuple[EdgeInstance, ...] = tuple(edges)
        self.k = int(k)
        if self.k < 0:
            raise DomainError("k must be >= 0")
        by_id: dict[int, EdgeInstance] = {}
        for e in self.edges:
            if e.id in by_id:
                raise DomainError(f"duplicate edge id {e.id}")
            by_id[e.id] = e
            if not 0 <= e.color <= self.k:
                raise DomainError(f"edge {e.id}: color {e.color} outside 0..{self.k}")
            for v, m in e.occ:
                if v not in self.vertices:
                    raise DomainError(f"edge {e.id}: vertex {v} not in vertex set")
                if m <= 0:
                    raise DomainError(f"edge {e.id}: nonpositive multiplicity")
        self._by_id = by_id

    # ---------------------------------------------------------------- basics

    def edge(self, edge_id: int) -> EdgeInstance:
        try:
            return self._by_id[edge_id]
        except KeyError:
            raise DomainError(f"no edge with id {edge_id}") from None

    def __len__(self) -> int:
        return len(self.edges)

    def _check_color(self, color: int | None) -> None:
        if color is not None and not 0 <= color <= self.k:
            raise DomainError(f"color {color} outside 0..{self.k}")

    def _edges_of(self, color: int | None) -> Iterator[EdgeInstance]:
        if color is None:
            return iter(self.edges)
        return (e for e in self.edges if e.color == color)

    def degree(self, v: int, color: int | None = None) -> int:
        """Number of hinges at v (occurrences counted with multiplicity)."""
        if v not in self.vertices:
            raise DomainError(f"vertex {v} not in vertex set")
        self._check_color(color)
        return sum(e.mult_of(v) for e in self._edges_of(color))

    def mult(self, signature: Mapping[int, int] | Iterable[int], color: int | None = None) -> int:
        """Number of edge instances whose multiset equals `signature`."""
        self._check_color(color)
        key = canon_occ(signature)
        return sum(1 for e in self._edges_of(color) if e.occ == key)

    def color_class(self, i: int) -> "Hypergraph":
        """Spanning sub-hypergraph holding exactly the edges of color i."""
        self._check_color(i)
        return Hypergraph(self.vertices, (e for e in self.edges if e.color == i), self.k)

    # ---------------------------------------------------------- connectivity

    def components(self, color: int | None = None) -> list[frozenset[int]]:
        """Vertex sets of the connected components (spanning: isolated
        vertices are their own components).  With `color`, only edges of
        that color class are used, over the full vertex set."""
        self._check_color(color)
        parent = {v: v for v in self.vertices}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self._edges_of(color):
            sup = e.support
            if len(sup) > 1:
                r = find(sup[0])
                for v in sup[1:]:
                    parent[find(v)] = r
        comps: dict[int, set[int]] = {}
        for v in self.vertices:
            comps.setdefault(find(v), set()).add(v)
        return sorted((frozenset(c) for c in comps.values()), key=min)

    def is_connected(self, color: int | None = None) -> bool:
        return len(self.components(color)) <= 1

    # --------------------------------------------------------- modifications

    def remove_vertices(self, vs: Iterable[int]) -> "Hypergraph":
        """Delete the vertices and every edge *incident* to any of them."""
        drop = frozenset(vs)
        if not drop <= self.vertices:
            raise DomainError("remove_vertices: unknown vertex")
        keep = [e for e in self.edges if not any(v in drop for v, _ in e.occ)]
        return Hypergraph(self.vertices - drop, keep, self.k)

    def strip_contained(self, vs: Iterable[int]) -> "Hypergraph":
        """Delete the vertices and only the edges contained entirely in them;
        other incident edges lose their occurrences there (edge shrinks,
        id and color kept)."""
        drop = frozenset(vs)
        if not drop <= self.vertices:
            raise DomainError("strip_contained: unknown vertex")
        out = []
        for e in self.edges:
            occ = tuple((v, m) for v, m in e.occ if v not in drop)
            if occ:
                out.append(EdgeInstance(e.id, occ, e.color))
        return Hypergraph(self.vertices - drop, out, self.k)

    def amalgamate(self, psi: Mapping[int, int]) -> "Hypergraph":
        """Identify vertices under the surjection psi (total on V).  Edge
        ids and colors are preserved; occurrences at identified vertices
        accumulate."""
        if set(psi) != set(self.vertices):
            raise DomainError("amalgamate: psi must be total on the vertex set")
        image = frozenset(int(x) for x in psi.values())
        out = []
        for e in self.edges:
            acc: dict[int, int] = {}
            for v, m in e.occ:
                w = psi[v]
                acc[w] = acc.get(w, 0) + m
            out.append(EdgeInstance(e.id, canon_occ(acc), e.color))
        return Hypergraph(image, out, self.k)

    def recolor(self, colors: Mapping[int, int], k: int | None = None) -> "Hypergraph":
        """Return a copy with edge ids in `colors` recolored."""
        kk = self.k if k is None else k
        out = [
            EdgeInstance(e.id, e.occ, colors.get(e.id, e.color))
            for e in self.edges
        ]
        return Hypergraph(self.vertices, out, kk)

    # ---------------------------------------------------------------- hinges

    def hinges_at(self, v: int, color: int | None = None) -> list[Hinge]:
        """All hinges at v, ordered by (edge_id, slot)."""
        if v not in self.vertices:
            raise DomainError(f"vertex {v} not in vertex set")
        self._check_color(color)
        out = []
        for e in sorted(self._edges_of(color), key=lambda e: e.id):
            m = e.mult_of(v)
            for s in range(1, m + 1):
                out.append(Hinge(e.id, s, v))
        return out

    # ------------------------------------------------------------------ JSON

    def to_json_dict(self) -> dict:
        return {
            "vertices": sorted(self.vertices),
            "k": self.k,
            "edges": [
                {
                    "id": e.id,
                    "occ": {str(v): m for v, m in e.occ},
                    "color": e.color,
                }
                for e in sorted(self.edges, key=lambda e: e.id)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, d: Mapping) -> "Hypergraph":
        try:
            vertices = [int(v) for v in d["vertices"]]
            k = int(d.get("k", 0))
            edges = []
            for ed in d["edges"]:
                occ = {int(v): int(m) for v, m in ed["occ"].items()}
                edges.append(EdgeInstance(int(ed["id"]), canon_occ(occ), int(ed.get("color", 0))))
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise DomainError(f"malformed hypergraph JSON: {exc}") from None
        return cls(vertices, edges, k)

    @classmethod
    def from_json(cls, s: str) -> "Hypergraph":
        try:
            d = json.loads(s)
        except json.JSONDecodeError as exc:
            raise DomainError(f"invalid JSON: {exc}") from None
        return cls.from_json_dict(d)

    # ------------------------------------------------------------- equality

    def same_as(self, other: "Hypergraph") -> bool:
        """Equality of vertex set, k, and the id -> (occ, color) mapping."""
        return (
            self.vertices == other.vertices
            and self.k == other.k
            and {e.id: (e.occ, e.color) for e in self.edges}
            == {e.id: (e.occ, e.color) for e in other.edges}
        )

    def __repr__(self) -> str:
        return f"Hypergraph(|V|={len(self.vertices)}, |E|={len(self.edges)}, k={self.k})"


def build_edges(specs: Iterable[tuple[Mapping[int, int] | Iterable[int], int]],
                start_id: int = 0) -> list[EdgeInstance]:
    """Convenience: build instances from (multiset, color) pairs with
    consecutive ids starting at `start_id`."""
    return [
        EdgeInstance(start_id + i, canon_occ(occ), color)
        for i, (occ, color) in enumerate(specs)
    ]
