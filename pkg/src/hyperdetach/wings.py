"""Wing decompositions at a vertex.

Fix a hypergraph G and a vertex alpha.  The edges of alpha's component
split into *wings*: every edge whose occurrences all sit at alpha forms a
wing on its own (a *small* wing), and every connected component C of
(alpha's component) - alpha yields one *large* wing consisting of C, alpha
and all edges meeting C.

A wing W is *slim* when it holds exactly one hinge at alpha and *wide*
when it holds at least two.  alpha is a cut vertex of its component
exactly when there are >= 2 wings, and the count

    omega(G, alpha) = number of wings

is the quantity whose margin  degree - omega  governs how far alpha can be
split without disconnecting anything.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .hypergraph import Hypergraph


@dataclass(frozen=True)
class Wing:
    edge_ids: tuple[int, ...]       # sorted
    vertices: frozenset[int]        # includes alpha
    alpha_degree: int               # hinges at alpha inside the wing

    @property
    def small(self) -> bool:
        return len(self.vertices) == 1

    @property
    def wide(self) -> bool:
        return self.alpha_degree >= 2


def wing_decomposition(g: Hypergraph, alpha: int, color: int | None = None) -> list[Wing]:
    """Wings of alpha in g (restricted to one color class if given).

    Deterministic order: small wings by edge id, then large wings by their
    smallest edge id.
    """
    if alpha not in g.vertices:
        raise DomainError(f"vertex {alpha} not in vertex set")
    edges = list(g.edges) if color is None else [e for e in g.edges if e.color == color]

    # Union-find over vertices other than alpha, joined by all edges.
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        sup = [v for v in e.support if v != alpha]
        for v in sup[1:]:
            ra, rb = find(sup[0]), find(v)
            if ra != rb:
                parent[rb] = ra

    small: list[Wing] = []
    by_root: dict[int, list] = {}   # root -> [edge ids, alpha hinge count]
    for e in sorted(edges, key=lambda e: e.id):
        am = e.mult_of(alpha)
        sup = [v for v in e.support if v != alpha]
        if not sup:
            if am:
                small.append(Wing((e.id,), frozenset((alpha,)), am))
            continue
        r = find(sup[0])
        rec = by_root.setdefault(r, [[], 0])
        rec[0].append(e.id)
        rec[1] += am

    large: list[Wing] = []
    for r, (eids, adeg) in by_root.items():
        if adeg == 0:
            continue  # component of G - alpha not adjacent to alpha: not a wing
        verts = {alpha}
        for eid in eids:
            verts.update(v for v in g.edge(eid).support)
        large.append(Wing(tuple(eids), frozenset(verts), adeg))
    large.sort(key=lambda w: w.edge_ids[0])
    return small + large


def omega(g: Hypergraph, alpha: int, color: int | None = None) -> int:
    """Number of wings of alpha (0 when alpha is isolated in the class)."""
    return len(wing_decomposition(g, alpha, color))


def connectivity_margin(g: Hypergraph, alpha: int, color: int | None = None) -> int:
    """degree(alpha) - omega(alpha); a split of alpha into n parts can keep
    the class connected only while this margin is >= n - 1."""
    return g.degree(alpha, color) - omega(g, alpha, color)


def is_cut_vertex(g: Hypergraph, alpha: int, color: int | None = None) -> bool:
    """True when alpha separates its component: >= 2 wings."""
    return omega(g, alpha, color) >= 2
