"""Wing decomposition and the connectivity margin."""

import random

from hyperdetach import (
    Hypergraph,
    build_edges,
    connectivity_margin,
    is_cut_vertex,
    omega,
    wing_decomposition,
)
from conftest import random_hypergraph


def test_star_is_one_wing_per_leaf():
    g = Hypergraph([1, 2, 3, 4], build_edges([
        ({1: 1, 2: 1}, 1), ({1: 1, 3: 1}, 1), ({1: 1, 4: 1}, 1),
    ]), 1)
    assert omega(g, 1) == 3
    assert is_cut_vertex(g, 1)
    assert connectivity_margin(g, 1) == 0


def test_cycle_is_single_wing():
    g = Hypergraph([1, 2, 3], build_edges([
        ({1: 1, 2: 1}, 1), ({2: 1, 3: 1}, 1), ({1: 1, 3: 1}, 1),
    ]), 1)
    assert omega(g, 1) == 1
    assert not is_cut_vertex(g, 1)
    assert connectivity_margin(g, 1) == 1


def test_loops_are_small_wings():
    g = Hypergraph([1, 2], build_edges([({1: 3}, 1), ({1: 1, 2: 1}, 1)]), 1)
    wings = wing_decomposition(g, 1)
    assert len(wings) == 2
    # the loop-only wing is wide iff it carries degree >= 2
    loop_wing = next(w for w in wings if 0 in w.edge_ids)
    assert loop_wing.wide


def test_glued_rests_merge_wings():
    # two alpha-edges whose rests are joined by a non-alpha edge: one wing
    g = Hypergraph([1, 2, 3], build_edges([
        ({1: 1, 2: 1}, 1), ({1: 1, 3: 1}, 1), ({2: 1, 3: 1}, 1),
    ]), 1)
    assert omega(g, 1) == 1


def _brute_omega(g: Hypergraph, alpha: int, color=None) -> int:
    """Independent wing count: alpha-only edges each form a wing; other
    wings biject with the components of the rest of the hypergraph that
    touch an alpha-edge."""
    edges = [e for e in g.edges if color is None or e.color == color]
    small = sum(1 for e in edges if set(e.support) == {alpha})
    parent = {v: v for v in g.vertices if v != alpha}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        rest = sorted(set(e.support) - {alpha})
        for a, b in zip(rest, rest[1:]):
            parent[find(a)] = find(b)
    anchored = {
        find(min(set(e.support) - {alpha}))
        for e in edges
        if alpha in e.support and set(e.support) != {alpha}
    }
    return small + len(anchored)


def test_omega_matches_bruteforce_on_random_instances():
    rng = random.Random(3)
    for _ in range(200):
        g = random_hypergraph(rng, max_vertices=6, max_edges=12)
        for color in [None] + list(range(1, g.k + 1)):
            assert omega(g, 1, color) == _brute_omega(g, 1, color)


def test_wings_partition_incident_edges():
    rng = random.Random(4)
    for _ in range(100):
        g = random_hypergraph(rng, max_vertices=6, max_edges=12)
        wings = wing_decomposition(g, 1)
        seen = [i for w in wings for i in w.edge_ids]
        assert len(seen) == len(set(seen))
        incident = {e.id for e in g.edges if alpha_in(e)}
        assert incident <= set(seen)


def alpha_in(e) -> bool:
    return any(v == 1 for v, _ in e.occ)
