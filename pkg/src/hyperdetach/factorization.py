"""Factorizations of complete (multi-)hypergraphs built by detachment.

Everything here follows the same recipe: describe the wanted factorization
on a single amalgamated vertex, where each color class is just a count of
loop-edges, then split that vertex into n parts.  Fairness of the split
turns the counts into degrees; the connectivity margin decides which
classes come out connected.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .engine import detach
from .errors import DomainError, PreconditionError
from .hypergraph import EdgeInstance, Hypergraph


def baranyai_connected(n: int, h: int, lam: int, sizes: Sequence[int],
             verify_steps: bool = False) -> Hypergraph:
    """Partition the edges of lam*K_n^h (vertices 1..n) into classes of the
    given sizes, every vertex meeting class j floor/ceil((h*a_j)/n) times.

    Class j comes out connected exactly when a_j * (h - 1) >= n - 1 (and
    spans all n vertices exactly when additionally h * a_j >= n).
    """
    if not (1 <= h <= n):
        raise DomainError("need 1 <= h <= n")
    if lam < 1:
        raise DomainError("lam must be >= 1")
    sizes = [int(a) for a in sizes]
    if any(a < 0 for a in sizes):
        raise DomainError("class sizes must be >= 0")
    total = lam * comb(n, h)
    if sum(sizes) != total:
        raise PreconditionError(
            "class sizes partition the edge set",
            f"sum(sizes) = {sum(sizes)} but lam*C(n,h) = {total}",
        )
    specs = []
    for j, a in enumerate(sizes, start=1):
        specs.extend(({1: h}, j) for _ in range(a))
    amalgam = Hypergraph(
        {1},
        [EdgeInstance(i, ((1, h),), color) for i, (_, color) in enumerate(specs)],
        k=len(sizes),
    )
    res = detach(amalgam, 1, n, part_names=range(2, n + 1),
                 verify_steps=verify_steps)
    return res.detached


@dataclass(frozen=True)
class FactorPlan:
    """Edge-type matrix behind a non-uniform factorization.

    ``matrix[i][j]`` is the number of edges of size ``edge_sizes[j]`` that
    color class i+1 receives.  Row i then has degree sum n * d_i with
    low[i] <= d_i <= high[i], and the class is connected exactly when
    sum_j matrix[i][j] * (edge_sizes[j] - 1) >= n - 1.
    """

    n: int
    edge_sizes: tuple[int, ...]
    multiplicities: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    def row_connected(self, i: int) -> bool:
        return sum(a * (hj - 1) for a, hj in
                   zip(self.matrix[i], self.edge_sizes)) >= self.n - 1


def solve_edge_type_matrix(
    n: int,
    edge_sizes: Sequence[int],
    multiplicities: Sequence[int],
    low: Sequence[int],
    high: Sequence[int],
    connected: Sequence[bool],
) -> FactorPlan | None:
    """Find a nonnegative integer matrix A with column sums
    mult_j * C(n, h_j), row degree sums n*low_i <= sum_j A[i][j]*h_j <=
    n*high_i, and sum_j A[i][j]*(h_j - 1) >= n - 1 on rows flagged
    connected.  Returns the lexicographically first solution (rows in
    order, each row enumerated lexicographically), or None.
    """
    hs = [int(h) for h in edge_sizes]
    lams = [int(x) for x in multiplicities]
    if len(hs) != len(lams) or len(low) != len(high) or len(low) != len(connected):
        raise DomainError("mismatched specification lengths")
    if any(not 1 <= h <= n for h in hs):
        raise DomainError("edge sizes must lie in 1..n")
    if len(set(hs)) != len(hs):
        raise DomainError("edge sizes must be distinct")
    if any(x < 1 for x in lams):
        raise DomainError("edge multiplicities must be >= 1")
    k, m = len(low), len(hs)
    cols = [lams[j] * comb(n, hs[j]) for j in range(m)]

    def row_vectors(i: int, rem: list[int]) -> list[tuple[int, ...]]:
        out: list[tuple[int, ...]] = []
        vec = [0] * m

        def rec(j: int, dsum: int) -> None:
            if j == m:
                if n * low[i] <= dsum <= n * high[i] and (
                    not connected[i]
                    or sum(vec[t] * (hs[t] - 1) for t in range(m)) >= n - 1
                ):
                    out.append(tuple(vec))
                return
            cap = min(rem[j], (n * high[i] - dsum) // hs[j])
            for a in range(cap + 1):
                vec[j] = a
                rec(j + 1, dsum + a * hs[j])
            vec[j] = 0

        rec(0, 0)
        return out

    rows: list[tuple[int, ...]] = []
    rem = list(cols)

    def search(i: int) -> bool:
        if i == k:
            return all(x == 0 for x in rem)
        # remaining rows must be able to absorb the leftover hinges
        left = sum(rem[j] * hs[j] for j in range(m))
        lo = sum(n * low[t] for t in range(i, k))
        hi = sum(n * high[t] for t in range(i, k))
        if not lo <= left <= hi:
            return False
        for vec in row_vectors(i, rem):
            for j in range(m):
                rem[j] -= vec[j]
            rows.append(vec)
            if search(i + 1):
                return True
            rows.pop()
            for j in range(m):
                rem[j] += vec[j]
        return False

    if not search(0):
        return None
    return FactorPlan(n, tuple(hs), tuple(lams), tuple(rows))


def factorize_nonuniform(
    n: int,
    edge_sizes: Sequence[int],
    multiplicities: Sequence[int],
    degrees: Sequence[int | tuple[int, int]],
    connected: Sequence[bool] | bool = True,
    verify_steps: bool = False,
) -> tuple[Hypergraph, FactorPlan]:
    """Color the edges of the complete hypergraph on 1..n holding
    multiplicities[j] copies of every edge_sizes[j]-subset, so that class i
    is d_i-regular (``degrees[i]`` an int d_i) or has all degrees in
    [q_i, r_i] (``degrees[i]`` a pair), connected where requested.
    """
    k = len(degrees)
    low, high = [], []
    for d in degrees:
        if isinstance(d, tuple):
            q, r = int(d[0]), int(d[1])
        else:
            q = r = int(d)
        if not 0 <= q <= r:
            raise DomainError("factor degrees must satisfy 0 <= q <= r")
        low.append(q)
        high.append(r)
    if isinstance(connected, bool):
        connected = [connected] * k
    if len(connected) != k:
        raise DomainError("mismatched specification lengths")

    # every vertex of the complete hypergraph has the same degree, which
    # the factor degrees must add up to
    deg = sum(
        int(lam) * comb(n - 1, int(h) - 1)
        for h, lam in zip(edge_sizes, multiplicities)
    )
    if not sum(low) <= deg <= sum(high):
        raise PreconditionError(
            "factor degrees sum to the vertex degree",
            f"vertex degree is {deg}, factor degrees allow "
            f"[{sum(low)}, {sum(high)}]",
        )
    plan = solve_edge_type_matrix(n, edge_sizes, multiplicities, low, high, connected)
    if plan is None:
        raise PreconditionError(
            "edge-type matrix exists",
            "no nonnegative integer edge-type matrix meets the degree, "
            "edge-count and connectivity constraints",
        )
    edges = []
    eid = 0
    for i, row in enumerate(plan.matrix):
        for j, a in enumerate(row):
            for _ in range(a):
                edges.append(EdgeInstance(eid, ((1, plan.edge_sizes[j]),), i + 1))
                eid += 1
    amalgam = Hypergraph({1}, edges, k=k)
    res = detach(amalgam, 1, n, part_names=range(2, n + 1),
                 verify_steps=verify_steps)
    return res.detached, plan
