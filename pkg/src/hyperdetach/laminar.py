"""Fair splits across two laminar families of hinge sets.

A split request asks for Z subseteq ground with

    floor(|P| / m) <= |Z ∩ P| <= ceil(|P| / m)

for every P in two laminar families A and B over the same ground set.
Such a Z always exists when both families are laminar: put the fractional
value 1/m on every hinge, observe the constraint matrix of two laminar
forests is a network matrix, and round via an integral feasible flow.

`fair_split` is the flow-based solver; `fair_split_bruteforce` enumerates
subsets (ground <= 20) and serves as an independent oracle in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, InfeasibleSplitError
from .flows import feasible_flow
from .hypergraph import Hinge


@dataclass(frozen=True)
class SplitRequest:
    ground: frozenset[Hinge]
    family_a: tuple[frozenset[Hinge], ...]
    family_b: tuple[frozenset[Hinge], ...]
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise DomainError("split divisor m must be >= 1")
        for fam in (self.family_a, self.family_b):
            for s in fam:
                if not s <= self.ground:
                    raise DomainError("family set not contained in ground")


def is_laminar(sets: Iterable[frozenset]) -> bool:
    """Every pair nested or disjoint."""
    ss = [s for s in sets if s]
    for i, a in enumerate(ss):
        for b in ss[i + 1:]:
            inter = a & b
            if inter and not (a <= b or b <= a):
                return False
    return True


def _forest(ground: frozenset[Hinge], family: Sequence[frozenset[Hinge]]):
    """Dedupe, add ground, order by (size desc, smallest hinge), and compute
    the parent of each set in the laminar forest.  Returns (sets, parents)
    where parents[i] indexes into sets and sets[0] is the ground."""
    uniq = {frozenset(ground)}
    for s in family:
        if s:
            uniq.add(frozenset(s))
    sets = sorted(uniq, key=lambda s: (-len(s), min(s)))
    if sets[0] != ground:
        raise DomainError("a family set is not contained in the ground set")
    if not is_laminar(sets):
        raise DomainError("family is not laminar")
    parents = [0] * len(sets)
    for i in range(1, len(sets)):
        # smallest strict superset (exists and is unique under laminarity)
        for j in range(i - 1, -1, -1):
            if len(sets[j]) > len(sets[i]) and sets[i] <= sets[j]:
                parents[i] = j
                break
    return sets, parents


def _bounds(size: int, m: int) -> tuple[int, int]:
    return size // m, -((-size) // m)


def fair_split(req: SplitRequest) -> frozenset[Hinge]:
    """Deterministic integral fair split, raising InfeasibleSplitError when
    (for hand-built, possibly non-laminar-compatible bounds) none exists."""
    ground = req.ground
    m = req.m
    if not ground:
        return frozenset()
    sets_a, par_a = _forest(ground, req.family_a)
    sets_b, par_b = _forest(ground, req.family_b)

    # node layout: 0 = source-side terminal S, 1 = sink-side terminal T,
    # then A nodes, then B nodes.
    base_a = 2
    base_b = 2 + len(sets_a)
    nn = base_b + len(sets_b)

    arcs: list[tuple[int, int, int, int]] = []
    lo, hi = _bounds(len(ground), m)
    arcs.append((0, base_a, lo, hi))                      # S -> root A
    for i in range(1, len(sets_a)):
        l, h = _bounds(len(sets_a[i]), m)
        arcs.append((base_a + par_a[i], base_a + i, l, h))
    for i in range(1, len(sets_b)):
        l, h = _bounds(len(sets_b[i]), m)
        arcs.append((base_b + i, base_b + par_b[i], l, h))
    arcs.append((base_b, 1, lo, hi))                      # root B -> T
    arcs.append((1, 0, 0, len(ground)))                   # close the circulation

    def minimal_index(sets, h):
        best = 0
        for i in range(1, len(sets)):
            if h in sets[i] and len(sets[i]) < len(sets[best]):
                best = i
        return best

    hinges = sorted(ground)
    hinge_arc_start = len(arcs)
    for h in hinges:
        ia = minimal_index(sets_a, h)
        ib = minimal_index(sets_b, h)
        arcs.append((base_a + ia, base_b + ib, 0, 1))

    flows = feasible_flow(nn, arcs)
    if flows is None:
        raise InfeasibleSplitError(f"no fair split for divisor m={m}")
    z = frozenset(
        h for off, h in enumerate(hinges) if flows[hinge_arc_start + off] == 1
    )
    _check_split(req, z)
    return z


def _check_split(req: SplitRequest, z: frozenset[Hinge]) -> None:
    for fam in (req.family_a, req.family_b, (req.ground,)):
        for s in fam:
            lo, hi = _bounds(len(s), req.m)
            if not lo <= len(z & s) <= hi:
                raise InfeasibleSplitError("solver produced an unfair split")


def split_is_fair(req: SplitRequest, z: frozenset[Hinge]) -> bool:
    try:
        _check_split(req, z)
    except InfeasibleSplitError:
        return False
    return True


def fair_split_bruteforce(req: SplitRequest) -> frozenset[Hinge] | None:
    """Exhaustive search over subsets of the ground set (|ground| <= 20).
    Independent of the flow machinery on purpose."""
    hinges = sorted(req.ground)
    g = len(hinges)
    if g > 20:
        raise DomainError("brute force limited to |ground| <= 20")
    idx = {h: i for i, h in enumerate(hinges)}
    constraints = []
    seen = set()
    for s in (req.ground, *req.family_a, *req.family_b):
        mask = 0
        for h in s:
            mask |= 1 << idx[h]
        if mask in seen:
            continue
        seen.add(mask)
        lo, hi = _bounds(len(s), req.m)
        constraints.append((mask, lo, hi))
    for cand in range(1 << g):
        ok = True
        for mask, lo, hi in constraints:
            c = (cand & mask).bit_count()
            if c < lo or c > hi:
                ok = False
                break
        if ok:
            return frozenset(hinges[i] for i in range(g) if cand >> i & 1)
    return None
