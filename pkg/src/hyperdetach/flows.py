"""Integral feasible flow with lower bounds.

All fair splits in this package reduce to one primitive: given a digraph
whose arcs carry integer bounds [lo, hi], find an integral circulation-like
flow respecting them (the networks built by callers already contain the
source and sink arcs, so conservation holds at every node except the two
designated terminals, which the callers connect with a closing arc).

The standard transformation is used: each lower bound is pushed into node
imbalances, a super source/sink absorbs the imbalances, and a single max
flow (scipy's C implementation, deterministic for a fixed CSR input)
decides feasibility.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

Arc = tuple[int, int, int, int]  # (u, v, lo, hi)


def feasible_flow(num_nodes: int, arcs: list[Arc]) -> list[int] | None:
    """Find integral flows f_a in [lo_a, hi_a] with conservation at every
    node.  Returns one flow value per input arc (same order), or None when
    the bounds are infeasible.

    Parallel arcs are allowed; they are merged for the solver and the
    merged flow is redistributed greedily in input order.
    """
    for u, v, lo, hi in arcs:
        if lo > hi or lo < 0:
            return None

    # Merge parallel arcs (scipy works on a capacity matrix).
    merged: dict[tuple[int, int], list[int]] = {}
    members: dict[tuple[int, int], list[int]] = {}
    for idx, (u, v, lo, hi) in enumerate(arcs):
        b = merged.setdefault((u, v), [0, 0])
        b[0] += lo
        b[1] += hi
        members.setdefault((u, v), []).append(idx)

    excess = np.zeros(num_nodes + 2, dtype=np.int64)
    ss, tt = num_nodes, num_nodes + 1
    rows, cols, caps = [], [], []
    keys = sorted(merged)
    for (u, v) in keys:
        lo, hi = merged[(u, v)]
        if hi > lo:
            rows.append(u)
            cols.append(v)
            caps.append(hi - lo)
        excess[v] += lo
        excess[u] -= lo
    need = 0
    for node in range(num_nodes):
        if excess[node] > 0:
            rows.append(ss)
            cols.append(node)
            caps.append(int(excess[node]))
            need += int(excess[node])
        elif excess[node] < 0:
            rows.append(node)
            cols.append(tt)
            caps.append(int(-excess[node]))

    if need == 0 and not rows:
        return [lo for _, _, lo, _ in arcs]

    n = num_nodes + 2
    cap_mat = csr_matrix(
        (np.asarray(caps, dtype=np.int32), (np.asarray(rows), np.asarray(cols))),
        shape=(n, n),
    )
    res = maximum_flow(cap_mat, ss, tt)
    if res.flow_value != need:
        return None
    flow = res.flow

    out = [0] * len(arcs)
    for (u, v) in keys:
        lo, hi = merged[(u, v)]
        f = lo + (int(flow[u, v]) if hi > lo else 0)
        # redistribute to the parallel members in input order
        for idx in members[(u, v)]:
            alo = arcs[idx][2]
            out[idx] = alo
            f -= alo
        for idx in members[(u, v)]:
            give = min(f, arcs[idx][3] - out[idx])
            out[idx] += give
            f -= give
            if f == 0:
                break
    return out
