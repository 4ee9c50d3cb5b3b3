"""Shared random-instance generators for the test suite."""

from __future__ import annotations

import random
from itertools import combinations
from math import comb

from hyperdetach import EdgeInstance, Hypergraph, build_edges


def random_hypergraph(
    rng: random.Random,
    max_vertices: int = 8,
    max_edges: int = 20,
    max_k: int = 4,
    alpha: int = 1,
    max_alpha_mult: int = 5,
) -> Hypergraph:
    """A random colored multiset hypergraph touching `alpha`, with the
    multiplicity of alpha capped per edge."""
    nv = rng.randint(2, max_vertices)
    verts = list(range(1, nv + 1))
    k = rng.randint(1, max_k)
    ne = rng.randint(1, max_edges)
    specs = []
    for _ in range(ne):
        occ: dict[int, int] = {}
        if rng.random() < 0.8:
            occ[alpha] = rng.randint(1, max_alpha_mult)
        others = [v for v in verts if v != alpha]
        extra = rng.randint(0 if occ else 1, 3)
        for _ in range(extra):
            v = rng.choice(others)
            occ[v] = occ.get(v, 0) + rng.randint(1, 2)
        color = rng.randint(0, k)
        specs.append((occ, color))
    return Hypergraph(verts, build_edges(specs), k)


def complete_graph_edges(m: int, h: int, lam: int) -> list[EdgeInstance]:
    """All lam copies of each h-subset of [m], uncolored, ids 0.."""
    out = []
    eid = 0
    for sub in combinations(range(1, m + 1), h):
        occ = tuple((v, 1) for v in sub)
        for _ in range(lam):
            out.append(EdgeInstance(eid, occ, 0))
            eid += 1
    return out


def random_partial_factorization(
    rng: random.Random, m: int, h: int, lam: int, r: int, k: int
) -> Hypergraph | None:
    """Color every edge of lam*K_m^h with colors 1..k keeping every class
    degree at most r; None when the random greedy gets stuck."""
    edges = complete_graph_edges(m, h, lam)
    deg = [dict.fromkeys(range(1, m + 1), 0) for _ in range(k + 1)]
    out = []
    for e in edges:
        options = [
            j for j in range(1, k + 1)
            if all(deg[j][v] < r for v, _ in e.occ)
        ]
        if not options:
            return None
        j = rng.choice(options)
        for v, _ in e.occ:
            deg[j][v] += 1
        out.append(EdgeInstance(e.id, e.occ, j))
    return Hypergraph(range(1, m + 1), out, k)


def random_sizes(rng: random.Random, total: int, max_classes: int = 12) -> list[int]:
    """A random composition of `total` into at most max_classes positive parts."""
    k = rng.randint(1, min(total, max_classes))
    cuts = sorted(rng.sample(range(1, total), k - 1)) if k > 1 else []
    return [b - a for a, b in zip([0] + cuts, cuts + [total])]


def r_factorization(n: int, h: int, lam: int, r: int) -> Hypergraph:
    """A connected r-factorization of lam*K_n^h built by the library itself
    (callers must not rely on its internals beyond the checked contract)."""
    from hyperdetach import baranyai_connected

    a = r * n // h
    k = lam * comb(n, h) // a
    return baranyai_connected(n, h, lam, [a] * k)
