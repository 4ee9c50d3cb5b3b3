"""The detachment engine.

`detach(h, alpha, n)` splits alpha into n parts, distributing the hinges at
alpha so that degrees, per-color degrees and all signature multiplicities
land within floor/ceil of their fair share, the result is alpha-simple,
and every color class whose connectivity margin (degree - wing count)
allows it stays connected.

One part is split off per step.  At step l (divisor m = n - l + 1) a fair
split of the hinges at alpha across two laminar families decides which
hinges move to the new part.  The engine never materializes individual
hinges: edges are grouped by (color, alpha multiplicity, rest-of-edge
signature); within a group edges are interchangeable, so every hinge-set
constraint collapses onto a per-group flow arc:

  * per-edge sets force at most one hinge of an edge to move (and exactly
    one when the edge carries m hinges at alpha) -- bounds [c*floor(p/m),
    c*ceil(p/m)] on a group of c edges;
  * the per-color signature sets force [floor(cp/m), ceil(cp/m)], which is
    tighter and implies the per-edge aggregate;
  * color classes, wide-wing unions, wings and the colorless signature
    sets become internal tree nodes.

Fairness of one step relative to the *current* hypergraph is not enough:
floor/ceil windows do not compose across steps, so a locally fair split can
drift a degree or a multiplicity outside its fair share of the *original*
hypergraph.  Every arc bound is therefore intersected with the window the
final result must satisfy relative to the input (part share and remainder
share).  The fractional point assigning 1/m to every hinge satisfies all
of these windows simultaneously, and the constraint matrix stays a network
matrix, so an integral solution always exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import DomainError, InternalConsistencyError, PreconditionError
from .flows import feasible_flow
from .hypergraph import EdgeInstance, Hinge, Hypergraph, Occ
from .laminar import SplitRequest
from .wings import wing_decomposition

GroupKey = tuple[int, Occ]  # (alpha multiplicity, rest-of-edge signature)


@dataclass(frozen=True)
class StepRecord:
    """One split-off step: each listed edge sent exactly one hinge at alpha
    to the new part."""

    part: int
    divisor: int
    moved_edge_ids: tuple[int, ...]


@dataclass
class DetachmentResult:
    source: Hypergraph
    detached: Hypergraph
    alpha: int
    parts: tuple[int, ...]          # alpha itself first
    steps: tuple[StepRecord, ...]

    def psi(self) -> dict[int, int]:
        """Amalgamation map sending every part back to alpha."""
        ps = set(self.parts)
        return {v: (self.alpha if v in ps else v) for v in self.detached.vertices}


def _window(count: int, denom: int) -> tuple[int, int]:
    """[floor, ceil] of count/denom."""
    return count // denom, -((-count) // denom)


class _State:
    """Grouped working state for one detachment run of n parts."""

    def __init__(self, h: Hypergraph, alpha: int, n: int):
        self.alpha = alpha
        self.n = n
        self.k = h.k
        # color -> {(p, rest): sorted edge ids}
        self.groups: dict[int, dict[GroupKey, list[int]]] = {}
        self.passthrough: list[EdgeInstance] = []
        self.retired: list[tuple[int, Occ, int]] = []
        self.parts_seen: set[int] = set()
        # signature counts of the input, driving the fair-to-source windows
        self.base_all: dict[tuple[int, Occ], int] = {}
        self.base_color: dict[int, dict[tuple[int, Occ], int]] = {}
        self.deg_all = 0
        self.deg_color: dict[int, int] = {}
        # per color union-find over non-alpha vertices, joined by every
        # edge's rest-support; merges are monotone so it persists across steps
        self.uf: dict[int, dict[int, int]] = {}
        for e in sorted(h.edges, key=lambda e: e.id):
            rest = tuple((v, m) for v, m in e.occ if v != alpha)
            p = e.mult_of(alpha)
            self._union_support(e.color, [v for v, _ in rest])
            if p == 0:
                self.passthrough.append(e)
                continue
            self.groups.setdefault(e.color, {}).setdefault((p, rest), []).append(e.id)
            key = (p, rest)
            self.base_all[key] = self.base_all.get(key, 0) + 1
            bc = self.base_color.setdefault(e.color, {})
            bc[key] = bc.get(key, 0) + 1
            self.deg_all += p
            self.deg_color[e.color] = self.deg_color.get(e.color, 0) + p

    def _source_key(self, p: int, rest: Occ) -> tuple[int, Occ]:
        """Signature this group had in the input: previously split-off parts
        inside `rest` fold back onto alpha."""
        t = p
        x = []
        for v, m in rest:
            if v in self.parts_seen:
                t += m
            else:
                x.append((v, m))
        return t, tuple(x)

    # -- union-find -------------------------------------------------------

    def _find(self, color: int, v: int) -> int:
        parent = self.uf.setdefault(color, {})
        parent.setdefault(v, v)
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def _union_support(self, color: int, sup: list[int]) -> None:
        if len(sup) < 2:
            if sup:
                self._find(color, sup[0])
            return
        r = self._find(color, sup[0])
        for v in sup[1:]:
            rv = self._find(color, v)
            if rv != r:
                self.uf[color][rv] = r

    # -- one step ---------------------------------------------------------

    def _degree_bounds(self, m: int, current: int, source: int) -> tuple[int, int]:
        """Window for the hinges a degree-type set gives to the new part:
        fair share of the current size, intersected with the fair-to-source
        windows for the part and for what stays behind."""
        n = self.n
        lo, hi = _window(current, m)
        plo, phi = _window(source, n)
        # what stays behind must still be dividable into m - 1 fair parts
        return (
            max(lo, plo, current - (m - 1) * phi),
            min(hi, phi, current - (m - 1) * plo),
        )

    def _group_bounds(self, m: int, p: int, count: int, source: int, t: int
                      ) -> tuple[int, int]:
        """Window for the edges a signature group sends to the new part:
        fair share of its current hinges, intersected with the fair-to-source
        windows for the moved signature and the remaining signature."""
        ylo, yhi = _window(source, comb(self.n, t))
        lo, hi = _window(count * p, m)
        cm, cr = comb(m - 1, p - 1), comb(m - 1, p)
        return (
            max(lo, cm * ylo, count - cr * yhi),
            min(hi, cm * yhi, count - cr * ylo),
        )

    def split_step(self, m: int, beta: int) -> tuple[int, ...]:
        """Move a fair 1/m share of the hinges at alpha onto the new vertex
        beta.  Returns the ids of the edges that lost a hinge to beta."""
        arcs: list[tuple[int, int, int, int]] = []
        S, T, ground_a, ground_b = 0, 1, 2, 3
        nxt = 4
        total = sum(
            p * len(ids)
            for cg in self.groups.values()
            for (p, _), ids in cg.items()
        )
        if total == 0:
            self.parts_seen.add(beta)
            return ()

        def bounds(size: int) -> tuple[int, int]:
            return size // m, -((-size) // m)

        arcs.append((S, ground_a, *self._degree_bounds(m, total, self.deg_all)))
        group_arcs: list[tuple[int, GroupKey, int]] = []  # (color, key, arc index)
        b_nodes: dict[GroupKey, int] = {}
        b_sizes: dict[GroupKey, int] = {}
        b_counts: dict[GroupKey, int] = {}
        pending_b: list[tuple[int, GroupKey, int]] = []   # (gnode, key, size)

        for color in sorted(self.groups):
            cg = self.groups[color]
            if not cg:
                continue
            deg = sum(p * len(ids) for (p, _), ids in cg.items())
            cnode = nxt
            nxt += 1
            arcs.append((ground_a, cnode,
                         *self._degree_bounds(m, deg, self.deg_color[color])))

            # wings of this color class: union-find roots of rest supports,
            # plus each alpha-only edge as its own (small) wing
            root_hinges: dict[int, int] = {}
            small_wide = 0
            for (p, rest), ids in cg.items():
                if rest:
                    r = self._find(color, rest[0][0])
                    root_hinges[r] = root_hinges.get(r, 0) + p * len(ids)
                elif p >= 2:
                    small_wide += p * len(ids)
            wide_total = small_wide + sum(h for h in root_hinges.values() if h >= 2)
            wnode = None
            if wide_total:
                wnode = nxt
                nxt += 1
                arcs.append((cnode, wnode, *bounds(wide_total)))
            wing_nodes: dict[int, int] = {}

            for key in sorted(cg):
                p, rest = key
                ids = cg[key]
                c = len(ids)
                if rest:
                    r = self._find(color, rest[0][0])
                    if root_hinges[r] >= 2:
                        wn = wing_nodes.get(r)
                        if wn is None:
                            wn = wing_nodes[r] = nxt
                            nxt += 1
                            arcs.append((wnode, wn, *bounds(root_hinges[r])))
                        parent = wn
                    else:
                        parent = cnode
                else:
                    parent = wnode if p >= 2 else cnode
                gnode = nxt
                nxt += 1
                t, x = self._source_key(p, rest)
                src = self.base_color[color].get((t, x), 0)
                group_arcs.append((color, key, len(arcs)))
                arcs.append((parent, gnode, *self._group_bounds(m, p, c, src, t)))
                pending_b.append((gnode, key, c * p))
                b_sizes[key] = b_sizes.get(key, 0) + c * p
                b_counts[key] = b_counts.get(key, 0) + c

        for gnode, key, size in pending_b:
            bn = b_nodes.get(key)
            if bn is None:
                bn = b_nodes[key] = nxt
                nxt += 1
            arcs.append((gnode, bn, 0, size))
        for key in sorted(b_nodes):
            p, rest = key
            t, x = self._source_key(p, rest)
            arcs.append((b_nodes[key], ground_b,
                         *self._group_bounds(m, p, b_counts[key],
                                             self.base_all.get((t, x), 0), t)))
        arcs.append((ground_b, T, *self._degree_bounds(m, total, self.deg_all)))
        arcs.append((T, S, 0, total))

        flows = feasible_flow(nxt, arcs)
        if flows is None:
            raise InternalConsistencyError("fair split network infeasible")

        moved: list[int] = []
        for color, key, aidx in group_arcs:
            z = flows[aidx]
            if z == 0:
                continue
            p, rest = key
            cg = self.groups[color]
            ids = cg[key]
            mv, stay = ids[:z], ids[z:]
            if stay:
                cg[key] = stay
            else:
                del cg[key]
            new_rest: Occ = tuple(sorted(rest + ((beta, 1),)))
            if p == 1:
                self.retired.extend((eid, new_rest, color) for eid in mv)
            else:
                cg.setdefault((p - 1, new_rest), []).extend(mv)
            self._union_support(color, [v for v, _ in new_rest])
            moved.extend(mv)
        self.parts_seen.add(beta)
        moved.sort()
        return tuple(moved)

    # -- materialization ----------------------------------------------------

    def edges(self) -> list[EdgeInstance]:
        out = list(self.passthrough)
        out.extend(EdgeInstance(eid, occ, color) for eid, occ, color in self.retired)
        for color in self.groups:
            for (p, rest), ids in self.groups[color].items():
                occ = tuple(sorted(rest + ((self.alpha, p),)))
                out.extend(EdgeInstance(eid, occ, color) for eid in ids)
        out.sort(key=lambda e: e.id)
        return out


def _part_names(h: Hypergraph, count: int, part_names) -> list[int]:
    if part_names is not None:
        names = [int(v) for v in part_names]
        if len(names) != count:
            raise DomainError(f"expected {count} part names, got {len(names)}")
        if len(set(names)) != count or any(v in h.vertices for v in names):
            raise DomainError("part names must be fresh and distinct")
        return names
    start = max(h.vertices) + 1 if h.vertices else 0
    return list(range(start, start + count))


def detach(
    h: Hypergraph,
    alpha: int,
    n: int,
    part_names=None,
    verify_steps: bool = False,
) -> DetachmentResult:
    """alpha-simple (alpha, n)-detachment with fair degrees, fair signature
    multiplicities and maximal connectivity preservation.

    `part_names` optionally fixes the ids of the n-1 new vertices.  With
    `verify_steps`, the invariants of every intermediate hypergraph are
    re-checked against the input (slow; intended for small instances).
    """
    if alpha not in h.vertices:
        raise DomainError(f"vertex {alpha} not in vertex set")
    if n < 1:
        raise DomainError("n must be >= 1")
    worst = max((e.mult_of(alpha) for e in h.edges), default=0)
    if worst > n:
        raise PreconditionError(
            "mult(alpha^t) = 0 for t > n",
            f"an edge holds {worst} > n = {n} occurrences of alpha",
        )
    names = _part_names(h, n - 1, part_names)
    state = _State(h, alpha, n)
    margins = None
    if verify_steps:
        from .verify import step_margins
        margins = step_margins(h, alpha)

    steps = []
    for ell in range(1, n):
        m = n - ell + 1
        beta = names[ell - 1]
        moved = state.split_step(m, beta)
        steps.append(StepRecord(beta, m, moved))
        if verify_steps:
            from .verify import check_step_invariants
            current = Hypergraph(
                h.vertices | set(names[:ell]), state.edges(), h.k
            )
            check_step_invariants(h, current, alpha, names[:ell], n, margins)

    f = Hypergraph(h.vertices | set(names), state.edges(), h.k)
    return DetachmentResult(h, f, alpha, (alpha, *names), tuple(steps))


def detach_step(g: Hypergraph, alpha: int, beta: int, m: int) -> Hypergraph:
    """One (alpha, 2)-detachment moving a fair 1/m share of the hinges at
    alpha onto the fresh vertex beta."""
    if alpha not in g.vertices:
        raise DomainError(f"vertex {alpha} not in vertex set")
    if beta in g.vertices:
        raise DomainError(f"part name {beta} already in vertex set")
    if m < 1:
        raise DomainError("divisor m must be >= 1")
    worst = max((e.mult_of(alpha) for e in g.edges), default=0)
    if worst > m:
        raise PreconditionError(
            "mult(alpha^t) = 0 for t > m",
            f"an edge holds {worst} > m = {m} occurrences of alpha",
        )
    state = _State(g, alpha, m)
    state.split_step(m, beta)
    return Hypergraph(g.vertices | {beta}, state.edges(), g.k)


def build_split_request(g: Hypergraph, alpha: int, m: int) -> SplitRequest:
    """Explicit hinge-level split request for one step with divisor m: the
    ground set of hinges at alpha and the two laminar families (color
    classes, wide-wing unions, wings, per-edge sets; colorless and
    per-color signature sets)."""
    if alpha not in g.vertices:
        raise DomainError(f"vertex {alpha} not in vertex set")
    ground = frozenset(g.hinges_at(alpha))

    def edge_hinges(e: EdgeInstance) -> frozenset[Hinge]:
        return frozenset(Hinge(e.id, s, alpha) for s in range(1, e.mult_of(alpha) + 1))

    fam_a: list[frozenset[Hinge]] = []
    fam_b: list[frozenset[Hinge]] = []
    colors = sorted({e.color for e in g.edges})
    for color in colors:
        class_hinges: set[Hinge] = set()
        for e in g.edges:
            if e.color == color and e.mult_of(alpha):
                class_hinges |= edge_hinges(e)
        if class_hinges:
            fam_a.append(frozenset(class_hinges))
        wide_union: set[Hinge] = set()
        for w in wing_decomposition(g, alpha, color):
            if w.wide:
                wh: set[Hinge] = set()
                for eid in w.edge_ids:
                    wh |= edge_hinges(g.edge(eid))
                fam_a.append(frozenset(wh))
                wide_union |= wh
        if wide_union:
            fam_a.append(frozenset(wide_union))

    by_sig: dict[GroupKey, set[Hinge]] = {}
    by_sig_color: dict[tuple[int, int, Occ], set[Hinge]] = {}
    for e in g.edges:
        p = e.mult_of(alpha)
        if p == 0:
            continue
        fam_a.append(edge_hinges(e))
        rest = tuple((v, mm) for v, mm in e.occ if v != alpha)
        by_sig.setdefault((p, rest), set()).update(edge_hinges(e))
        by_sig_color.setdefault((e.color, p, rest), set()).update(edge_hinges(e))
    fam_b.extend(frozenset(s) for _, s in sorted(by_sig.items()))
    fam_b.extend(frozenset(s) for _, s in sorted(by_sig_color.items()))
    return SplitRequest(ground, tuple(fam_a), tuple(fam_b), m)
