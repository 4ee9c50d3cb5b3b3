"""Acceptance gate: one test per criterion, exact tolerances.

Each test prints a single summary line; the pytest verdict for the test is
the criterion's pass/fail line.
"""

import random
import time
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np
from scipy.optimize import LinearConstraint, milp

from hyperdetach import (
    Hypergraph,
    InfeasibleSplitError,
    PreconditionError,
    baranyai_connected,
    build_split_request,
    detach,
    embed_friendly,
    embed_minus_v,
    embed_partial_r,
    factorize_nonuniform,
    fair_split,
    fair_split_bruteforce,
    is_admissible,
    minus_v_obstructions,
    solve_edge_type_matrix,
    verify_complete,
    verify_detachment,
    verify_detachment_parts,
    verify_extension,
    verify_factorization,
)
from conftest import (
    r_factorization,
    random_hypergraph,
    random_partial_factorization,
    random_sizes,
)
from test_verify import _move_one_hinge


def _stamp(name: str, t0: float, detail: str = "") -> None:
    extra = f" — {detail}" if detail else ""
    print(f"{name}: PASS in {time.time() - t0:.1f}s{extra}")


# ---------------------------------------------------------------- criterion 1


def test_criterion_1_fair_split_exactness():
    t0 = time.time()
    rng = random.Random(101)
    checked = brute_checked = 0
    while checked < 1000:
        g = random_hypergraph(rng, max_vertices=8, max_edges=20, max_k=4,
                              max_alpha_mult=5)
        m = rng.randint(2, 5)
        req = build_split_request(g, 1, m)
        try:
            z = fair_split(req)
        except InfeasibleSplitError:
            z = None
        if z is not None:
            for p in (req.ground,) + tuple(req.family_a) + tuple(req.family_b):
                c = len(z & p)
                assert len(p) // m <= c <= -(-len(p) // m), \
                    f"unfair split on a set of {len(p)} hinges"
        checked += 1
        if len(req.ground) <= 14:
            brute = fair_split_bruteforce(req)
            assert (brute is not None) == (z is not None)
            brute_checked += 1
    assert brute_checked >= 200
    _stamp("CRITERION 1 (fair-split exactness)", t0,
           f"{checked} requests, {brute_checked} brute-force cross-checks")


# ---------------------------------------------------------------- criterion 2


def test_criterion_2_main_theorem_full_check():
    t0 = time.time()
    rng = random.Random(102)
    for i in range(500):
        n = rng.randint(1, 5)
        g = random_hypergraph(rng, max_vertices=8, max_edges=20, max_k=4,
                              max_alpha_mult=n)
        res = detach(g, 1, n)
        problems = verify_detachment(res)
        assert not problems, f"instance {i}: {problems[:3]}"
    _stamp("CRITERION 2 (fair detachment, F1-F4 and C1)", t0, "500 instances")


# ---------------------------------------------------------------- criterion 3


def test_criterion_3_connected_baranyai():
    t0 = time.time()
    rng = random.Random(103)
    runs = 0
    for n in range(3, 10):
        for h in range(2, n):
            for lam in (1, 2):
                total = lam * comb(n, h)
                for _ in range(20):
                    sizes = random_sizes(rng, total)
                    f = baranyai_connected(n, h, lam, sizes)
                    assert not verify_complete(f, n, h, lam)
                    degrees = {}
                    conn = {}
                    for j, a in enumerate(sizes, start=1):
                        assert sum(1 for e in f.edges if e.color == j) == a
                        degrees[j] = (h * a // n, -(-h * a // n))
                        conn[j] = a * (h - 1) >= n - 1
                    assert not verify_factorization(f, degrees, conn)
                    runs += 1
    _stamp("CRITERION 3 (connected Baranyai)", t0, f"{runs} decompositions")


# ---------------------------------------------------------------- criterion 4


def _h2_conditions(g, n, r, lam):
    """Independent re-derivation of the exact h=2 embedding conditions."""
    m = len(g.vertices)
    if (r * n) % 2 or (lam * (n - 1)) % r:
        return False
    k = lam * (n - 1) // r
    if g.k > k:
        return False
    for j in range(1, g.k + 1):
        edges = [e for e in g.edges if e.color == j]
        deg = dict.fromkeys(g.vertices, 0)
        adj = {v: set() for v in g.vertices}
        for e in edges:
            for v, mm in e.occ:
                deg[v] += mm
            sup = [v for v, _ in e.occ]
            for a in sup:
                adj[a].update(sup)
        # components and r-regularity
        seen = set()
        comps = []
        for v in sorted(g.vertices):
            if v in seen:
                continue
            stack, comp = [v], set()
            while stack:
                x = stack.pop()
                if x in comp:
                    continue
                comp.add(x)
                stack.extend(adj[x] - comp)
            seen |= comp
            comps.append(comp)
        for comp in comps:
            if any(deg[v] > 0 for v in comp) and all(deg[v] == r for v in comp):
                return False
        cj = len(comps)
        ej = len(edges)
        if not (r * m - r * n // 2 <= ej <= r * n // 2 - n + m - cj + 1):
            return False
    # classes beyond g.k are empty: E_j = 0, c_j = m
    if g.k < k and not (r * m - r * n // 2 <= 0 <= r * n // 2 - n + 1):
        return False
    return True


def test_criterion_4_h2_embedding_sweep():
    t0 = time.time()
    rng = random.Random(104)
    successes = refusals = 0
    for m in range(2, 7):
        for n in range(m + 1, 14):
            for lam in (1, 2):
                for r in range(1, 5):
                    k = max(1, lam * (n - 1) // r)
                    for _ in range(3):
                        g = random_partial_factorization(rng, m, 2, lam, r, k)
                        if g is None:
                            continue
                        expect = _h2_conditions(g, n, r, lam)
                        try:
                            f = embed_partial_r(g, n, r)
                        except PreconditionError:
                            assert not expect, (m, n, lam, r)
                            refusals += 1
                            continue
                        assert expect, (m, n, lam, r)
                        assert not verify_extension(g, f)
                        assert not verify_complete(f, n, 2, lam)
                        kk = lam * (n - 1) // r
                        assert not verify_factorization(
                            f, {j: r for j in range(1, kk + 1)},
                            {j: True for j in range(1, kk + 1)})
                        successes += 1
    assert successes >= 50 and refusals >= 50
    _stamp("CRITERION 4 (h=2 embedding, exact iff)", t0,
           f"{successes} embeddings, {refusals} refusals")


# ---------------------------------------------------------------- criterion 5


def _partial_ok(g, n, r, h, lam):
    try:
        f = embed_partial_r(g, n, r, h=h, lam=lam)
    except PreconditionError:
        return None
    return f


def _sweep_partial(h, want=5):
    """Smallest parameter tuples (by target edge count) accepted by the
    h in {3,4,5} embedding, each output fully verified."""
    cands = []
    for lam in (1, 2):
        for m in (2, 3):
            for n in range(h + 1, 26):
                for r in range(2, 7):
                    if not is_admissible(n, r, lam, h):
                        continue
                    cands.append((lam * comb(n, h), lam, m, n, r))
    cands.sort()
    done = []
    rng = random.Random(105)
    for _, lam, m, n, r in cands:
        if len(done) >= want:
            break
        if m < h:
            g = Hypergraph(range(1, m + 1), [], 0)
        else:
            k = lam * comb(n - 1, h - 1) // r
            g = random_partial_factorization(rng, m, h, lam, r, k)
            if g is None:
                continue
        f = _partial_ok(g, n, r, h, lam)
        if f is None:
            continue
        k = lam * comb(n - 1, h - 1) // r
        assert not verify_extension(g, f)
        assert not verify_complete(f, n, h, lam)
        assert not verify_factorization(
            f, {j: r for j in range(1, k + 1)},
            {j: True for j in range(1, k + 1)})
        done.append((lam, m, n, r))
    assert len(done) >= want, f"h={h}: only {done}"
    return done


def _edge(sub, color, eid):
    from hyperdetach import EdgeInstance
    return EdgeInstance(eid, tuple((v, 1) for v in sorted(sub)), color)


def test_criterion_5a_partial_h3():
    t0 = time.time()
    tuples = _sweep_partial(3)
    # necessity: single violations refuse with the named condition
    g = Hypergraph([1, 2], [], 0)
    try:
        embed_partial_r(g, 7, 2, h=3, lam=1)  # 3 does not divide 14
        raise AssertionError("non-admissible accepted")
    except PreconditionError as exc:
        assert "admissible" in str(exc)
    g = Hypergraph([1, 2, 3], [_edge((1, 2, 3), 1, 0), _edge((1, 2, 3), 1, 1)], 1)
    try:
        embed_partial_r(g, 9, 2)  # both copies color 1: a 2-regular component
        raise AssertionError("regular component accepted")
    except PreconditionError as exc:
        assert "regular" in str(exc)
    g = Hypergraph([1, 2, 3], [_edge((1, 2, 3), 1, 0)], 1)
    try:
        embed_partial_r(g, 7, 3)  # n=7 below 2m + (gamma-1)/2 for m=3
        raise AssertionError("small n accepted")
    except PreconditionError as exc:
        assert "gamma" in str(exc)
    _stamp("CRITERION 5a (h=3 embedding)", t0, f"tuples {tuples}")


def test_criterion_5b_partial_h4():
    t0 = time.time()
    tuples = _sweep_partial(4)
    g = Hypergraph([1, 2], [], 0)
    try:
        embed_partial_r(g, 11, 2, h=4, lam=1)  # 4 does not divide 22
        raise AssertionError("non-admissible accepted")
    except PreconditionError as exc:
        assert "admissible" in str(exc)
    g = Hypergraph([1, 2, 3], [], 0)
    try:
        embed_partial_r(g, 14, 2, h=4, lam=1)  # 14 < 4.847323 * 3
        raise AssertionError("small n accepted")
    except PreconditionError as exc:
        assert "4.847323" in str(exc)
    ed = [_edge((1, 2, 3, 4), 1, 0), _edge((1, 2, 3, 4), 1, 1)]
    g = Hypergraph([1, 2, 3, 4], ed, 1)
    try:
        embed_partial_r(g, 20, 2)
        raise AssertionError("regular component accepted")
    except PreconditionError as exc:
        assert "regular" in str(exc)
    _stamp("CRITERION 5b (h=4 embedding)", t0, f"tuples {tuples}")


def test_criterion_5c_partial_h5():
    t0 = time.time()
    tuples = _sweep_partial(5)
    g = Hypergraph([1, 2], [], 0)
    try:
        embed_partial_r(g, 14, 2, h=5, lam=1)  # 5 does not divide 28
        raise AssertionError("non-admissible accepted")
    except PreconditionError as exc:
        assert "admissible" in str(exc)
    g = Hypergraph([1, 2, 3], [], 0)
    try:
        # admissible (5 | 7*15, 7 | C(14,4) = 1001) yet 15 < 6.285214 * 3
        embed_partial_r(g, 15, 7, h=5, lam=1)
        raise AssertionError("small n accepted")
    except PreconditionError as exc:
        assert "6.285214" in str(exc)
    ed = [_edge((1, 2, 3, 4, 5), 1, 0), _edge((1, 2, 3, 4, 5), 1, 1)]
    g = Hypergraph([1, 2, 3, 4, 5], ed, 1)
    try:
        embed_partial_r(g, 35, 2)
        raise AssertionError("regular component accepted")
    except PreconditionError as exc:
        assert "regular" in str(exc)
    _stamp("CRITERION 5c (h=5 embedding)", t0, f"tuples {tuples}")


def test_criterion_5d_minus_v():
    t0 = time.time()
    # smallest (n, h, lam, r, removed) tuples accepted by the sweep
    done = []
    cands = []
    for h in (2, 3):
        for lam in (1, 2):
            for n in range(h + 2, 12):
                deg = lam * comb(n - 1, h - 1)
                for r in range(2, 7):
                    if deg % r or (r * n) % h:
                        continue
                    cands.append((lam * comb(n, h), n, h, lam, r))
    cands.sort()
    for _, n, h, lam, r in cands:
        if len(done) >= 5:
            break
        f0 = r_factorization(n, h, lam, r)
        for mrem in (1, 2):
            drop = set(range(n - mrem + 1, n + 1))
            g = f0.strip_contained(drop)
            if minus_v_obstructions(g, n, r, lam):
                continue
            f = embed_minus_v(g, n, r, lam, new_vertices=sorted(drop))
            ext = {e.id: e for e in f.edges}
            for e in g.edges:
                assert ext[e.id].color == e.color
                assert tuple((v, m) for v, m in ext[e.id].occ
                             if v in g.vertices) == e.occ
            k = lam * comb(n - 1, h - 1) // r
            assert not verify_complete(f, n, h, lam)
            assert not verify_factorization(
                f, {j: r for j in range(1, k + 1)},
                {j: True for j in range(1, k + 1)})
            done.append((n, h, lam, r, mrem))
            break
    assert len(done) >= 5, done

    # necessity: r = 1 refused; broken regularity refused; broken shape refused
    f0 = r_factorization(6, 2, 1, 5)
    g = f0.strip_contained({6})
    assert "r >= 2" in minus_v_obstructions(g, 6, 1, 1)
    f0 = r_factorization(5, 2, 2, 2)
    g = f0.strip_contained({5})
    bad = g.recolor({g.edges[0].id: g.edges[0].color % g.k + 1})
    assert any("regular" in o for o in minus_v_obstructions(bad, 5, 2, 2))
    broken = Hypergraph(g.vertices, g.edges[1:], g.k)
    assert any("complete" in o for o in minus_v_obstructions(broken, 5, 2, 2))
    for case, nn, rr, ll in ((bad, 5, 2, 2), (broken, 5, 2, 2)):
        try:
            embed_minus_v(case, nn, rr, ll)
            raise AssertionError("violated input accepted")
        except PreconditionError:
            pass
    _stamp("CRITERION 5d (minus-V embedding)", t0, f"tuples {done}")


def test_criterion_5e_strip_v_friendly():
    t0 = time.time()
    done = []
    cands = []
    for h in (2, 3):
        for lam in (1, 2):
            for n in range(h + 2, 12):
                deg = lam * comb(n - 1, h - 1)
                for r in range(2, 7):
                    if deg % r or (r * n) % h:
                        continue
                    cands.append((lam * comb(n, h), n, h, lam, r))
    cands.sort()
    for _, n, h, lam, r in cands:
        if len(done) >= 5:
            break
        f0 = r_factorization(n, h, lam, r)
        drop = {n - 1, n}
        kept = [e for e in f0.edges if not set(e.support) <= drop]
        p = Hypergraph(f0.vertices, kept, f0.k)
        stripped = p.strip_contained(drop)
        if minus_v_obstructions(stripped, n, r, lam):
            continue
        f = embed_friendly(p, drop, r)
        k = lam * comb(n - 1, h - 1) // r
        assert not verify_complete(f, n, h, lam)
        assert not verify_factorization(
            f, {j: r for j in range(1, k + 1)},
            {j: True for j in range(1, k + 1)})
        # friendliness: type-0 edges keep colors; per-(type, color) counts kept
        by_id = {e.id: e for e in f.edges}
        cin, cout = {}, {}
        for e in p.edges:
            t = sum(1 for v in e.support if v in drop)
            if t == 0:
                assert by_id[e.id].color == e.color
            cin[(t, e.color)] = cin.get((t, e.color), 0) + 1
            cout[(t, by_id[e.id].color)] = cout.get((t, by_id[e.id].color), 0) + 1
        for key in {k2 for k2 in cin if 1 <= k2[0] < h} | \
                   {k2 for k2 in cout if 1 <= k2[0] < h}:
            assert cin.get(key, 0) == cout.get(key, 0), key
        done.append((n, h, lam, r))
    assert len(done) >= 5, done

    # necessity: an edge inside the removed set, and an over-full class
    f0 = r_factorization(6, 2, 2, 2)
    kept = [e for e in f0.edges if not set(e.support) <= {5, 6}]
    swap = next(e for e in kept if e.support == (1, 2))
    inside = [e for e in kept if e.id != swap.id]
    inside.append(_edge((5, 6), swap.color, swap.id))
    try:
        embed_friendly(Hypergraph(f0.vertices, inside, f0.k), {5, 6}, 2)
        raise AssertionError("bad shape accepted")
    except PreconditionError as exc:
        assert "removed" in str(exc)
    over = Hypergraph(f0.vertices, kept, f0.k)
    try:
        embed_friendly(over, {5, 6}, 1)  # degrees exceed r = 1
        raise AssertionError("over-degree accepted")
    except PreconditionError as exc:
        assert "partial" in str(exc)
    _stamp("CRITERION 5e (strip-V friendly embedding)", t0, f"tuples {done}")


# ---------------------------------------------------------------- criterion 6


def _milp_feasible(n, hs, lams, low, high, conn):
    """Independent integer-feasibility oracle for the edge-type matrix."""
    k, m = len(low), len(hs)
    nvar = k * m
    cons = []
    for j in range(m):
        row = np.zeros(nvar)
        row[[i * m + j for i in range(k)]] = 1
        c = lams[j] * comb(n, hs[j])
        cons.append(LinearConstraint(row, c, c))
    for i in range(k):
        row = np.zeros(nvar)
        row[i * m:(i + 1) * m] = hs
        cons.append(LinearConstraint(row, n * low[i], n * high[i]))
        if conn[i]:
            row2 = np.zeros(nvar)
            row2[i * m:(i + 1) * m] = [h - 1 for h in hs]
            cons.append(LinearConstraint(row2, n - 1, np.inf))
    res = milp(c=np.zeros(nvar), constraints=cons,
               integrality=np.ones(nvar),
               bounds=(0, np.inf))
    return res.status == 0


def test_criterion_6_nonuniform_factorization():
    t0 = time.time()
    rng = random.Random(106)
    checked = built = 0
    size_menus = {
        n: [hh for mm in (1, 2, 3)
            for hh in combinations(range(1, min(n, 4) + 1), mm)]
        for n in range(3, 9)
    }
    for n in range(3, 9):
        for hs in size_menus[n]:
            lams = [rng.choice((1, 2)) for _ in hs]
            deg = sum(l * comb(n - 1, h - 1) for h, l in zip(hs, lams))
            for k in range(1, 6):
                if deg < k:
                    continue
                for variant in range(3):
                    # random degree vector, exact or windowed
                    cuts = sorted(rng.sample(range(1, deg), k - 1)) if k > 1 else []
                    rs = [b - a for a, b in zip([0] + cuts, cuts + [deg])]
                    if variant == 2:
                        low = [max(0, r - 1) for r in rs]
                    else:
                        low = list(rs)
                    conn = [variant == 1] * k
                    plan = solve_edge_type_matrix(n, hs, lams, low, rs, conn)
                    assert (plan is not None) == _milp_feasible(
                        n, hs, lams, low, rs, conn), (n, hs, lams, low, rs, conn)
                    checked += 1
                    if plan is not None and built < 150:
                        f, used = factorize_nonuniform(
                            n, hs, lams,
                            [r if variant != 2 else (l, r)
                             for l, r in zip(low, rs)],
                            connected=conn)
                        degrees = {i + 1: (low[i], rs[i]) for i in range(k)}
                        connectivity = {
                            i + 1: used.row_connected(i) for i in range(k)
                        }
                        assert not verify_factorization(f, degrees, connectivity)
                        # eq (3): connected exactly when the class stays
                        # below the wing budget
                        for i in range(k):
                            lhs = sum(used.matrix[i])
                            wsum = sum(a * (h - 1) for a, h in
                                       zip(used.matrix[i], hs))
                            assert (wsum >= n - 1) == used.row_connected(i)
                        built += 1
    assert checked >= 400
    _stamp("CRITERION 6 (non-uniform factorization)", t0,
           f"{checked} feasibility checks, {built} built and verified")


# ---------------------------------------------------------------- criterion 7


def test_criterion_7_mutation_detection():
    t0 = time.time()
    rng = random.Random(107)
    caught = 0
    while caught < 100:
        g = random_hypergraph(rng, max_alpha_mult=3)
        res = detach(g, 1, 3)
        assert not verify_detachment(res)
        mutated = _move_one_hinge(rng, res)
        if mutated is None:
            continue
        assert verify_detachment_parts(g, mutated, res.alpha, list(res.parts)), \
            "corruption went undetected"
        caught += 1
    _stamp("CRITERION 7 (mutation detection)", t0, "100 corruptions caught")
