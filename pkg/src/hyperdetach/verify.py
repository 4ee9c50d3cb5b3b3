"""Independent checkers for detachments, factorizations and extensions.

Everything here recounts from the plain data model (ids, occurrence maps,
colors) with its own degree / multiplicity / component / wing logic, on
purpose sharing no code with the engine or the constructors: a bug in a
constructor should not be able to hide behind the same bug here.

All checkers return a list of human-readable problem strings; an empty
list means the object verifies.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

from .errors import InternalConsistencyError
from .hypergraph import Hypergraph


# --------------------------------------------------------------- primitives


def _fair(count: int, share: Fraction | int) -> bool:
    s = Fraction(share)
    lo = s.numerator // s.denominator
    hi = -((-s.numerator) // s.denominator)
    return lo <= count <= hi


def _degree(edges, v: int) -> int:
    return sum(dict(e.occ).get(v, 0) for e in edges)


class _UF:
    def __init__(self):
        self.p: dict[int, int] = {}

    def find(self, x: int) -> int:
        p = self.p
        p.setdefault(x, x)
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[rb] = ra


def _component_count(vertices: Iterable[int], edges) -> int:
    uf = _UF()
    vs = set(vertices)
    for v in vs:
        uf.find(v)
    for e in edges:
        sup = [v for v, _ in e.occ]
        for v in sup[1:]:
            uf.union(sup[0], v)
    return len({uf.find(v) for v in vs})


def _wing_count(edges, alpha: int) -> int:
    """Wings of alpha among `edges`: each edge supported only at alpha is
    its own wing; otherwise wings are classes of rest-supports joined by
    every edge, counted when they carry a hinge at alpha."""
    uf = _UF()
    small = 0
    touched: list[int] = []
    for e in edges:
        sup = [v for v, _ in e.occ if v != alpha]
        am = dict(e.occ).get(alpha, 0)
        if not sup:
            if am:
                small += 1
            continue
        for v in sup[1:]:
            uf.union(sup[0], v)
        if am:
            touched.append(sup[0])
    return small + len({uf.find(v) for v in touched})


def _margin(edges, alpha: int) -> int:
    return _degree(edges, alpha) - _wing_count(edges, alpha)


# ----------------------------------------------------------- verify detach


def verify_detachment(result) -> list[str]:
    """Full audit of a DetachmentResult: round trip, alpha-simplicity,
    fair degrees (overall and per color), fair signature multiplicities
    (overall and per color, both grouped and, for small n, by exhaustive
    enumeration of part subsets), and the connectivity criterion in both
    directions."""
    return verify_detachment_parts(
        result.source, result.detached, result.alpha, result.parts
    )


def verify_detachment_parts(
    h: Hypergraph, f: Hypergraph, alpha: int, parts: tuple[int, ...]
) -> list[str]:
    problems: list[str] = []
    n = len(parts)
    part_set = set(parts)
    if alpha not in part_set:
        return [f"alpha {alpha} not among the parts"]
    if not part_set <= f.vertices:
        return ["parts missing from the detached vertex set"]

    # round trip: collapsing the parts must reproduce the source exactly
    src = {e.id: (e.occ, e.color) for e in h.edges}
    if set(src) != {e.id for e in f.edges}:
        problems.append("edge id sets differ")
        return problems
    collapsed_sig: dict[int, tuple] = {}
    for e in f.edges:
        back: dict[int, int] = {}
        u = []
        for v, m in e.occ:
            if v in part_set:
                back[alpha] = back.get(alpha, 0) + m
                if m > 1:
                    problems.append(f"edge {e.id}: part {v} occurs {m} times")
                u.append(v)
            else:
                back[v] = back.get(v, 0) + m
        occ, color = src[e.id]
        if tuple(sorted(back.items())) != occ or color != e.color:
            problems.append(f"edge {e.id}: does not collapse back to its source edge")
        collapsed_sig[e.id] = (tuple(sorted(u)), tuple(p for p in e.occ if p[0] not in part_set))
    if problems:
        return problems

    colors = sorted({e.color for e in h.edges})

    # fair degrees, overall and per color
    dh = _degree(h.edges, alpha)
    for ai in parts:
        if not _fair(_degree(f.edges, ai), Fraction(dh, n)):
            problems.append(f"degree of part {ai} outside fair share of {dh}/{n}")
    for j in colors:
        dj = _degree([e for e in h.edges if e.color == j], alpha)
        for ai in parts:
            da = _degree([e for e in f.edges if e.color == j], ai)
            if not _fair(da, Fraction(dj, n)):
                problems.append(f"color {j}: degree of part {ai} outside {dj}/{n}")

    # fair multiplicities per collapsed signature (overall and per color)
    problems += _check_fair_mults(h, f, alpha, parts, collapsed_sig, color=None)
    for j in colors:
        problems += _check_fair_mults(h, f, alpha, parts, collapsed_sig, color=j)

    # connectivity criterion, both directions
    for j in colors:
        he = [e for e in h.edges if e.color == j]
        fe = [e for e in f.edges if e.color == j]
        ch = _component_count(h.vertices, he)
        cf = _component_count(f.vertices, fe)
        margin = _margin(he, alpha)
        if margin >= n - 1 and cf != ch:
            problems.append(
                f"color {j}: margin {margin} >= {n - 1} but components {ch} -> {cf}"
            )
        if margin < n - 1 and cf == ch and n > 1 and _degree(he, alpha) > 0:
            problems.append(
                f"color {j}: margin {margin} < {n - 1} yet component count survived"
            )
    return problems


def _check_fair_mults(h, f, alpha, parts, collapsed_sig, color) -> list[str]:
    problems = []
    n = len(parts)
    tag = "" if color is None else f"color {color}: "

    base: dict[tuple[int, tuple], int] = {}
    for e in h.edges:
        if color is not None and e.color != color:
            continue
        t = dict(e.occ).get(alpha, 0)
        if t == 0:
            continue
        x = tuple(p for p in e.occ if p[0] != alpha)
        base[(t, x)] = base.get((t, x), 0) + 1

    counts: dict[tuple[tuple, tuple], int] = {}
    for e in f.edges:
        if color is not None and e.color != color:
            continue
        u, x = collapsed_sig[e.id]
        if u:
            counts[(u, x)] = counts.get((u, x), 0) + 1

    seen_u: dict[tuple[int, tuple], set] = {}
    for (u, x), c in counts.items():
        t = len(u)
        share = Fraction(base.get((t, x), 0), comb(n, t))
        if not _fair(c, share):
            problems.append(f"{tag}signature {u}|{x}: count {c} not ~ {share}")
        seen_u.setdefault((t, x), set()).add(u)
    for (t, x), b in base.items():
        share = Fraction(b, comb(n, t))
        if share.numerator // share.denominator >= 1:
            present = len(seen_u.get((t, x), ()))
            if present != comb(n, t):
                problems.append(
                    f"{tag}base signature alpha^{t}|{x}: only {present}/{comb(n, t)}"
                    f" part subsets reached"
                )
    return problems


# --------------------------------------------------- verify factorizations


def verify_complete(f: Hypergraph, n: int, h: int, lam: int) -> list[str]:
    """Underlying multiset must be exactly lam copies of every h-subset of
    the n vertices (no repeated vertices inside an edge)."""
    problems = []
    if len(f.vertices) != n:
        problems.append(f"expected {n} vertices, found {len(f.vertices)}")
        return problems
    counts: dict[tuple, int] = {}
    for e in f.edges:
        if any(m != 1 for _, m in e.occ) or len(e.occ) != h:
            problems.append(f"edge {e.id} is not a plain {h}-subset")
            return problems
        counts[e.support] = counts.get(e.support, 0) + 1
    expected = comb(n, h)
    if len(counts) != expected or any(c != lam for c in counts.values()):
        problems.append(f"edge multiset is not {lam} x all {h}-subsets")
    return problems


def verify_factorization(
    f: Hypergraph,
    degrees: Mapping[int, object],
    connected: Mapping[int, bool],
) -> list[str]:
    """Per-color degree and connectivity audit.  `degrees[j]` is an exact
    int or an inclusive (lo, hi) pair applying to every vertex; colors not
    listed are not checked."""
    problems = []
    by_color: dict[int, list] = {}
    for e in f.edges:
        by_color.setdefault(e.color, []).append(e)
    for j, want in degrees.items():
        edges = by_color.get(j, [])
        lo, hi = (want, want) if isinstance(want, int) else want
        for v in sorted(f.vertices):
            d = _degree(edges, v)
            if not lo <= d <= hi:
                problems.append(f"color {j}: degree {d} of vertex {v} not in [{lo},{hi}]")
    for j, want in connected.items():
        got = _component_count(f.vertices, by_color.get(j, [])) == 1
        if got != want:
            problems.append(
                f"color {j}: expected {'connected' if want else 'disconnected'}"
            )
    return problems


def verify_extension(original: Hypergraph, extended: Hypergraph,
                     rename: Mapping[int, int] | None = None) -> list[str]:
    """Every original edge instance must reappear in the extension with the
    same id, the same color and the same occurrences (after the optional
    vertex rename)."""
    problems = []
    ext = {e.id: e for e in extended.edges}
    for e in original.edges:
        occ = e.occ
        if rename:
            occ = tuple(sorted((rename.get(v, v), m) for v, m in occ))
        other = ext.get(e.id)
        if other is None:
            problems.append(f"edge {e.id} missing from the extension")
        elif other.occ != occ or other.color != e.color:
            problems.append(f"edge {e.id} altered by the extension")
    return problems


# ------------------------------------------------- per-step engine checks


def step_margins(h: Hypergraph, alpha: int) -> dict[int, int]:
    out = {}
    for j in sorted({e.color for e in h.edges}):
        out[j] = _margin([e for e in h.edges if e.color == j], alpha)
    return out


def check_step_invariants(
    h: Hypergraph,
    current: Hypergraph,
    alpha: int,
    parts_so_far: list[int],
    n: int,
    margins: Mapping[int, int],
) -> None:
    """Invariants of the intermediate hypergraph after splitting off
    `parts_so_far`; raises InternalConsistencyError on any failure."""
    ell = len(parts_so_far) + 1
    colors = sorted({e.color for e in h.edges})
    eligible = [j for j in colors if margins[j] >= n - 1]

    worst = max((dict(e.occ).get(alpha, 0) for e in current.edges), default=0)
    if worst > n - ell + 1:
        raise InternalConsistencyError(f"step {ell}: alpha multiplicity {worst}")

    dh = _degree(h.edges, alpha)
    checks = [(alpha, Fraction((n - ell + 1) * dh, n))]
    checks += [(b, Fraction(dh, n)) for b in parts_so_far]
    for v, share in checks:
        if not _fair(_degree(current.edges, v), share):
            raise InternalConsistencyError(f"step {ell}: unfair degree at {v}")
    for j in colors:
        dj = _degree([e for e in h.edges if e.color == j], alpha)
        cur = [e for e in current.edges if e.color == j]
        if not _fair(_degree(cur, alpha), Fraction((n - ell + 1) * dj, n)):
            raise InternalConsistencyError(f"step {ell}: unfair color degree at alpha")
        for b in parts_so_far:
            if not _fair(_degree(cur, b), Fraction(dj, n)):
                raise InternalConsistencyError(f"step {ell}: unfair color degree at {b}")

    for color in [None, *colors]:
        _check_step_mults(h, current, alpha, parts_so_far, n, ell, color)

    for j in eligible:
        he = [e for e in h.edges if e.color == j]
        cur = [e for e in current.edges if e.color == j]
        if _component_count(current.vertices, cur) != _component_count(h.vertices, he):
            raise InternalConsistencyError(f"step {ell}: color {j} lost connectivity")
        if _margin(cur, alpha) < n - ell:
            raise InternalConsistencyError(f"step {ell}: color {j} margin dropped")


def _check_step_mults(h, current, alpha, parts, n, ell, color) -> None:
    from itertools import combinations

    base: dict[tuple[int, tuple], int] = {}
    for e in h.edges:
        if color is not None and e.color != color:
            continue
        t = dict(e.occ).get(alpha, 0)
        if t:
            x = tuple(p for p in e.occ if p[0] != alpha)
            base[(t, x)] = base.get((t, x), 0) + 1

    counts: dict[tuple[int, tuple, tuple], int] = {}
    pset = set(parts)
    for e in current.edges:
        occ = dict(e.occ)
        if color is not None and e.color != color:
            continue
        r = occ.get(alpha, 0)
        u = tuple(sorted(v for v in occ if v in pset))
        x = tuple(sorted((v, m) for v, m in occ.items() if v != alpha and v not in pset))
        if r or u:
            counts[(r, u, x)] = counts.get((r, u, x), 0) + 1

    for (t, x), b in base.items():
        y = Fraction(b, comb(n, t))
        for usize in range(0, min(t, ell - 1) + 1):
            r = t - usize
            if r > n - ell + 1:
                continue
            c_r = comb(n - ell + 1, r)
            for u in combinations(sorted(parts), usize):
                cnt = counts.pop((r, u, x), 0)
                lo = (y.numerator // y.denominator) * c_r
                hi = (-((-y.numerator) // y.denominator)) * c_r
                if not lo <= cnt <= hi:
                    raise InternalConsistencyError(
                        f"step {ell}: mult alpha^{r},{u},{x} = {cnt} not in [{lo},{hi}]"
                    )
    if counts:
        raise InternalConsistencyError(f"step {ell}: unexpected signatures {counts}")
