"""Extending edge colorings of complete hypergraphs to connected,
regular colorings of larger ones.

Inputs are partial r-factorizations (every vertex meets each class at most
r times) or full r-factorizations of a complete hypergraph; outputs are
edge colorings of ``lam * K_n^h`` in which every class is a connected
r-factor (or s-factor) and the input reappears untouched, edge ids and
colors included.

All constructions run through the same funnel: color the new edges on an
amalgamated stand-in for the new vertices so that each class gets degree
r * (number of new vertices) there while keeping at most
(r - 1) * (number of new vertices) + 1 wings, then split the stand-in
fairly with `detach`.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb, floor
from typing import Iterable, Sequence

from .engine import detach
from .errors import DomainError, InternalConsistencyError, PreconditionError
from .hypergraph import EdgeInstance, Hypergraph
from .verify import verify_complete


def is_admissible(n: int, r: int, lam: int, h: int) -> bool:
    """Divisibility needed for lam*K_n^h to split into r-factors."""
    return (r * n) % h == 0 and (lam * comb(n - 1, h - 1)) % r == 0


# --------------------------------------------------------------- inspection


def _as_complete(g: Hypergraph) -> tuple[int, int, int]:
    """Check g is a plain lam*K_m^h and return (m, h, lam)."""
    m = len(g.vertices)
    sizes = {e.size for e in g.edges}
    if len(sizes) != 1:
        raise DomainError("expected a uniform complete hypergraph")
    h = sizes.pop()
    if not 1 <= h <= m or len(g.edges) % comb(m, h):
        raise DomainError("edge count does not fit any lam*K_m^h")
    lam = len(g.edges) // comb(m, h)
    problems = verify_complete(g, m, h, lam)
    if problems:
        raise DomainError(f"not a complete hypergraph: {problems[0]}")
    return m, h, lam


def _is_partial(g: Hypergraph, r: int) -> bool:
    """Every edge colored and no vertex over degree r in any class."""
    deg: dict[tuple[int, int], int] = {}
    for e in g.edges:
        if e.color == 0:
            return False
        for v, mm in e.occ:
            key = (e.color, v)
            deg[key] = deg.get(key, 0) + mm
            if deg[key] > r:
                return False
    return True


def _class_edges(g: Hypergraph, k: int) -> list[list[EdgeInstance]]:
    """Edges per color 1..k (index 0 unused); colors above g.k are empty."""
    out: list[list[EdgeInstance]] = [[] for _ in range(k + 1)]
    for e in g.edges:
        if e.color:
            out[e.color].append(e)
    return out


def _components(vertices: Iterable[int], edges: Sequence[EdgeInstance]
                ) -> list[set[int]]:
    parent = {v: v for v in vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        sup = e.support
        for v in sup[1:]:
            rv, r0 = find(v), find(sup[0])
            if rv != r0:
                parent[rv] = r0
    comps: dict[int, set[int]] = {}
    for v in vertices:
        comps.setdefault(find(v), set()).add(v)
    return list(comps.values())


def _has_regular_component(vertices, edges: Sequence[EdgeInstance], r: int) -> bool:
    deg: dict[int, int] = {v: 0 for v in vertices}
    for e in edges:
        for v, mm in e.occ:
            deg[v] += mm
    for comp in _components(vertices, edges):
        if any(deg[v] for v in comp) and all(deg[v] == r for v in comp):
            return True
    return False


def check_partial_necessary(g: Hypergraph, n: int, r: int) -> list[str]:
    """Conditions every extension of the given partial r-factorization of
    lam*K_m^h to a connected r-factorization of lam*K_n^h must satisfy;
    returns the violated ones.  Empty for h = 2 means extendable."""
    m, h, lam = _as_complete(g)
    if not n > m:
        return ["n > m"]
    if r < 1 or not _is_partial(g, r):
        return ["input is a partial r-factorization"]
    if not is_admissible(n, r, lam, h):
        return ["(n, r, lam) is h-admissible"]
    k = lam * comb(n - 1, h - 1) // r
    if g.k > k:
        return ["at most lam*C(n-1,h-1)/r colors are used"]
    out = []
    classes = _class_edges(g, k)
    if any(_has_regular_component(g.vertices, classes[j], r)
           for j in range(1, k + 1)):
        out.append("no color class has an r-regular component")
    for j in range(1, k + 1):
        ej = len(classes[j])
        cj = len(_components(g.vertices, classes[j]))
        lo = Fraction(r * m) - Fraction(r * n * (h - 1), h)
        hi = Fraction(r * n, h) - Fraction(n - m + cj - 1, h - 1)
        if not lo <= ej <= hi:
            out.append("class sizes fit the edge-count window")
            break
    return out


# ---------------------------------------------------- shared building blocks


def _fill_window(total: int, lows: Sequence[int], caps: Sequence[int],
                 what: str) -> list[int]:
    """Distribute `total` over the classes, at least lows[j], at most
    caps[j], piling the surplus onto the earliest classes."""
    vals = list(lows)
    rem = total - sum(vals)
    if rem < 0:
        raise InternalConsistencyError(f"{what}: window lower bounds exceed supply")
    for i in range(len(vals)):
        room = caps[i] - vals[i]
        if room < 0:
            raise InternalConsistencyError(f"{what}: empty window")
        add = min(rem, room)
        vals[i] += add
        rem -= add
    if rem:
        raise InternalConsistencyError(f"{what}: window upper bounds too small")
    return vals


def _check_amalgam(edges: Sequence[EdgeInstance], alpha: int, k: int,
                   r: int, parts: int) -> None:
    """Every class must put degree r*parts on alpha and keep at most
    (r-1)*parts + 1 wings there; one pass over all classes."""
    deg = [0] * (k + 1)
    loops = [0] * (k + 1)
    parent: list[dict[int, int]] = [dict() for _ in range(k + 1)]
    marked: list[set[int]] = [set() for _ in range(k + 1)]

    def find(j: int, v: int) -> int:
        p = parent[j]
        p.setdefault(v, v)
        while p[v] != v:
            p[v] = p[p[v]]
            v = p[v]
        return v

    for e in edges:
        j = e.color
        pa = e.mult_of(alpha)
        deg[j] += pa
        rest = [v for v, _ in e.occ if v != alpha]
        if not rest:
            if pa:
                loops[j] += 1
            continue
        root = find(j, rest[0])
        for v in rest[1:]:
            rv = find(j, v)
            if rv != root:
                parent[j][rv] = root
        if pa:
            marked[j].add(rest[0])
    for j in range(1, k + 1):
        if deg[j] != r * parts:
            raise InternalConsistencyError(
                f"class {j}: degree {deg[j]} at the amalgam, wanted {r * parts}"
            )
        om = loops[j] + len({find(j, v) for v in marked[j]})
        if om > (r - 1) * parts + 1:
            raise InternalConsistencyError(
                f"class {j}: {om} wings exceed the connectivity budget"
            )


def _next_id(g: Hypergraph) -> int:
    return max((e.id for e in g.edges), default=-1) + 1


def _fresh_names(g: Hypergraph, count: int) -> list[int]:
    start = max(g.vertices) + 1 if g.vertices else 1
    return list(range(start, start + count))


# -------------------------------------------- partial colorings, h = 2..5


def _greedy_fill(deg: list[dict[int, int]], r: int, k: int,
                 supports: Iterable[tuple[int, ...]], copies: int,
                 alpha_mult: int, alpha: int, out: list, eid: int,
                 per: list[int]) -> int:
    """Color `copies` instances of (support + alpha^alpha_mult) per support
    so no listed vertex exceeds degree r in any class.  Copies go one at a
    time to the least filled feasible class (`per` tracks class sizes);
    feasibility does not depend on the choice rule, but balanced totals keep
    the final per-class loop counts nonnegative."""
    for sup in supports:
        base = tuple((v, 1) for v in sup)
        occ = tuple(sorted(base + ((alpha, alpha_mult),)))
        for _ in range(copies):
            best = 0
            for j in range(1, k + 1):
                if (best == 0 or per[j] < per[best]) and \
                        all(deg[j][v] < r for v in sup):
                    best = j
            if best == 0:
                raise InternalConsistencyError(
                    f"greedy coloring stalled: every class saturated at {sup}"
                )
            for v in sup:
                deg[best][v] += 1
            per[best] += 1
            out.append(EdgeInstance(eid, occ, best))
            eid += 1
    return eid


def _check_partial_guard(g: Hypergraph, n: int, r: int,
                         m: int, h: int, lam: int) -> None:
    if not n > m:
        raise PreconditionError("n > m", f"n = {n}, m = {m}")
    if r < 1 or not _is_partial(g, r):
        raise PreconditionError("input is a partial r-factorization",
                                "some vertex exceeds degree r in a class")
    if not is_admissible(n, r, lam, h):
        raise PreconditionError(
            f"(n, r, lam) is {h}-admissible",
            f"h | rn and r | lam*C(n-1,h-1) fails for n={n}, r={r}, lam={lam}",
        )
    k = lam * comb(n - 1, h - 1) // r
    if g.k > k:
        raise PreconditionError("at most lam*C(n-1,h-1)/r colors are used",
                                f"{g.k} > {k}")
    classes = _class_edges(g, k)
    if any(_has_regular_component(g.vertices, classes[j], r)
           for j in range(1, k + 1)):
        raise PreconditionError(
            "no color class has an r-regular component",
            "an r-regular component cannot reach the new vertices",
        )
    # a connected class needs rn/h edges >= (n-1)/(h-1); rules out the
    # degenerate empty-input cases the size thresholds do not reach
    if r * n * (h - 1) < h * (n - 1):
        raise PreconditionError(
            "rn/h >= (n-1)/(h-1) so a class can be connected",
            f"classes of rn/h = {r * n // h} edges cannot span {n} vertices",
        )
    if h == 3:
        # n must exceed 2m + (gamma - 1)/2, gamma = sqrt(8m^2 - 16m - 7)
        gam2 = 8 * m * m - 16 * m - 7
        L = 2 * (n - 2 * m) + 1
        if L <= 0 or L * L <= gam2:
            raise PreconditionError(
                "n exceeds 2m + (gamma - 1)/2 with gamma = sqrt(8m^2 - 16m - 7)",
                f"n = {n} too small for m = {m}",
            )
        if r == 2 and 2 * n < 7 * m - 6:
            # fall back: every class must have few components
            for j in range(1, k + 1):
                cj = len(_components(g.vertices, classes[j]))
                R = 5 * cj - 5 - 2 * m
                if R > 0 and R * R > gam2:
                    raise PreconditionError(
                        "for r = 2: n >= 3.5m - 3 or every class has at most "
                        "(2m + gamma)/5 + 1 components",
                        f"class {j} has {cj} components",
                    )
    elif h == 4:
        if 1000000 * n < 4847323 * m:
            raise PreconditionError("n >= 4.847323 m",
                                    f"n = {n} too small for m = {m}")
    elif h == 5:
        if 1000000 * n < 6285214 * m:
            raise PreconditionError("n >= 6.285214 m",
                                    f"n = {n} too small for m = {m}")


def embed_partial_r(g: Hypergraph, n: int, r: int,
                  h: int | None = None, lam: int | None = None,
                  verify_steps: bool = False) -> Hypergraph:
    """Extend a partial r-factorization of lam*K_m^h (h in 2..5) to a
    connected r-factorization of lam*K_n^h on the first n - m fresh vertex
    names.  For h = 2 the stated conditions are exact; for h >= 3 a size
    threshold on n/m must hold for the construction to apply.

    `h` and `lam` are inferred from the edges; they must be passed
    explicitly when the input has none (m < h, an empty partial coloring).
    """
    if g.edges:
        m, h2, lam2 = _as_complete(g)
        if h is not None and h != h2:
            raise DomainError(f"edges have size {h2}, not {h}")
        if lam is not None and lam != lam2:
            raise DomainError(f"multiplicity is {lam2}, not {lam}")
        h, lam = h2, lam2
    else:
        m = len(g.vertices)
        if h is None or lam is None:
            raise DomainError("h and lam are required for an edgeless input")
        if m >= h:
            raise DomainError(
                f"an edgeless lam*K_{m}^{h} needs m < h; got m = {m}")
    if h == 2:
        obs = check_partial_necessary(g, n, r)
        if obs:
            raise PreconditionError(obs[0], "required for any extension")
    elif h in (3, 4, 5):
        _check_partial_guard(g, n, r, m, h, lam)
    else:
        raise DomainError("constructions cover edge sizes 2..5 only")

    k = lam * comb(n - 1, h - 1) // r
    verts = sorted(g.vertices)
    names = _fresh_names(g, n - m)
    alpha = names[0]
    a = n - m

    deg: list[dict[int, int]] = [dict.fromkeys(verts, 0) for _ in range(k + 1)]
    counts = [0] * (k + 1)
    for e in g.edges:
        counts[e.color] += 1
        for v, mm in e.occ:
            deg[e.color][v] += mm
    out = list(g.edges)
    eid = _next_id(g)

    # greedy rounds: edge types with h-1 down to 2 old vertices
    for t in range(h - 1, 1, -1):
        eid = _greedy_fill(deg, r, k, combinations(verts, t),
                           lam * comb(a, h - t), h - t, alpha, out, eid,
                           counts)

    # exactly r - deg_j(v) edges (v, alpha^(h-1)) per vertex and class
    supply = lam * comb(a, h - 1)
    for v in verts:
        need = [r - deg[j][v] for j in range(1, k + 1)]
        if any(x < 0 for x in need) or sum(need) != supply:
            raise InternalConsistencyError(
                f"vertex top-up: prescribed counts off at {v}"
            )
        occ = tuple(sorted(((v, 1), (alpha, h - 1))))
        for j, z in enumerate(need, start=1):
            deg[j][v] += z
            for _ in range(z):
                out.append(EdgeInstance(eid, occ, j))
                eid += 1

    # loop edges bring every class up to its rn/h edges
    per = [0] * (k + 1)
    for e in out:
        per[e.color] += 1
    rn_h = r * n // h
    loop_counts = [rn_h - per[j] for j in range(1, k + 1)]
    if any(c < 0 for c in loop_counts) or sum(loop_counts) != lam * comb(a, h):
        raise InternalConsistencyError("class size balance: loop counts off")
    for j, z in enumerate(loop_counts, start=1):
        for _ in range(z):
            out.append(EdgeInstance(eid, ((alpha, h),), j))
            eid += 1

    _check_amalgam(out, alpha, k, r, a)
    big = Hypergraph(set(verts) | {alpha}, out, k)
    res = detach(big, alpha, a, part_names=names[1:], verify_steps=verify_steps)
    return res.detached


# ------------------------------------------------ removed-vertex colorings


def _minus_shape(g: Hypergraph, m: int, h: int, lam: int) -> list[str]:
    """g must hold lam*C(m, h-t) copies of every t-subset of its vertices
    for t = 1..h (the shape of a complete hypergraph minus m vertices)."""
    wrong = ["edge multiset matches a complete hypergraph minus "
             "the removed vertices"]
    if h < 1 or lam < 1:
        return wrong
    counts: dict[tuple[int, ...], int] = {}
    for e in g.edges:
        if any(mm != 1 for _, mm in e.occ):
            return wrong
        counts[e.support] = counts.get(e.support, 0) + 1
    w = sorted(g.vertices)
    for t in range(1, h + 1):
        want = lam * comb(m, h - t)
        for sup in combinations(w, t):
            if counts.pop(sup, 0) != want:
                return wrong
    if counts:
        return wrong
    return []


def minus_v_obstructions(g: Hypergraph, n: int, r: int, lam: int) -> list[str]:
    """Violated conditions for extending a partial r-factorization of a
    complete hypergraph with some vertices removed (edges shrunk) back to
    a connected r-factorization of lam*K_n^h.  Empty means extendable."""
    w = sorted(g.vertices)
    m = n - len(w)
    if not 1 <= m < n:
        return ["0 < number of removed vertices < n"]
    h = max((e.size for e in g.edges), default=0)
    shape = _minus_shape(g, m, h, lam)
    if shape:
        return shape
    if not is_admissible(n, r, lam, h):
        return ["(n, r, lam) is h-admissible"]
    if r < 2:
        return ["r >= 2"]
    k = lam * comb(n - 1, h - 1) // r
    if g.k != k or not _is_partial(g, r):
        return ["every color class is r-regular"]
    deg: dict[tuple[int, int], int] = {}
    for e in g.edges:
        for v, mm in e.occ:
            deg[(e.color, v)] = deg.get((e.color, v), 0) + mm
    if any(deg.get((j, v), 0) != r for j in range(1, k + 1) for v in w):
        return ["every color class is r-regular"]
    out = []
    classes = _class_edges(g, k)
    for j in range(1, k + 1):
        for comp in _components(w, classes[j]):
            ce = [e for e in classes[j] if e.support[0] in comp]
            if ce and all(e.size == h for e in ce):
                out.append("no color class has a full-size-edges-only component")
                break
        else:
            continue
        break
    if any(len(classes[j]) > r * n // h for j in range(1, k + 1)):
        out.append("class sizes do not exceed rn/h")
    for j in range(1, k + 1):
        cj = len(_components(w, classes[j]))
        # the weighted short-edge count sums (size - 1) over the class
        deficit = sum(e.size - 1 for e in classes[j])
        bound = Fraction(r * n * (h - 1), h) - deficit - m + 1
        if cj > bound:
            out.append("class component counts fit the connectivity budget")
            break
    return out


def embed_minus_v(g: Hypergraph, n: int, r: int, lam: int,
                  new_vertices: Sequence[int] | None = None,
                  verify_steps: bool = False) -> Hypergraph:
    """Extend a partial r-factorization of lam*K_n^h with m vertices
    removed (edges shrunk to their kept part) to a connected
    r-factorization of lam*K_n^h, growing every short edge back to size h.
    The stated conditions are exact."""
    obs = minus_v_obstructions(g, n, r, lam)
    if obs:
        raise PreconditionError(obs[0], "required for any extension")
    w = sorted(g.vertices)
    m = n - len(w)
    h = max(e.size for e in g.edges)
    k = lam * comb(n - 1, h - 1) // r
    if new_vertices is None:
        new_vertices = _fresh_names(g, m)
    names = [int(v) for v in new_vertices]
    if len(names) != m or set(names) & g.vertices or len(set(names)) != m:
        raise DomainError(f"need {m} fresh new vertex names")
    alpha = names[0]

    out = []
    per = [0] * (k + 1)
    for e in g.edges:
        occ = e.occ
        if e.size < h:
            occ = tuple(sorted(occ + ((alpha, h - e.size),)))
        out.append(EdgeInstance(e.id, occ, e.color))
        per[e.color] += 1
    eid = _next_id(g)
    rn_h = r * n // h
    loop_counts = [rn_h - per[j] for j in range(1, k + 1)]
    if any(c < 0 for c in loop_counts) or sum(loop_counts) != lam * comb(m, h):
        raise InternalConsistencyError("class size balance: loop counts off")
    for j, z in enumerate(loop_counts, start=1):
        for _ in range(z):
            out.append(EdgeInstance(eid, ((alpha, h),), j))
            eid += 1
    _check_amalgam(out, alpha, k, r, m)
    big = Hypergraph(set(w) | {alpha}, out, k)
    res = detach(big, alpha, m, part_names=names[1:], verify_steps=verify_steps)
    return res.detached


def embed_friendly(g: Hypergraph, removed: Iterable[int], r: int,
                  verify_steps: bool = False) -> Hypergraph:
    """Given a partial r-factorization of lam*K_n^h with the edges inside
    `removed` missing, produce a connected r-factorization of lam*K_n^h
    whose restriction is friendly to the input: edges not touching
    `removed` keep their colors, and every (touched-count, color) pair
    keeps its number of edges."""
    drop = frozenset(int(v) for v in removed)
    if not drop or not drop < g.vertices:
        raise DomainError("removed must be a nonempty proper subset of the vertices")
    n = len(g.vertices)
    m = len(drop)
    sizes = {e.size for e in g.edges}
    if len(sizes) != 1:
        raise DomainError("expected a uniform hypergraph")
    h = sizes.pop()
    denom = comb(n, h) - comb(m, h)
    if denom <= 0 or len(g.edges) % denom:
        raise DomainError("edge count does not fit any stripped complete hypergraph")
    lam = len(g.edges) // denom
    counts: dict[tuple[int, ...], int] = {}
    for e in g.edges:
        if any(mm != 1 for _, mm in e.occ):
            raise DomainError("edges must be plain subsets")
        counts[e.support] = counts.get(e.support, 0) + 1
    for sup in combinations(sorted(g.vertices), h):
        want = 0 if set(sup) <= drop else lam
        if counts.get(sup, 0) != want:
            raise PreconditionError(
                "edge multiset is the complete hypergraph minus the edges "
                "inside the removed set",
                f"support {sup} appears {counts.get(sup, 0)} times, wanted {want}",
            )
    if not _is_partial(g, r):
        raise PreconditionError("input is a partial r-factorization",
                                "some vertex exceeds degree r in a class")
    stripped = g.strip_contained(drop)
    if stripped.k != g.k:
        stripped = Hypergraph(stripped.vertices, stripped.edges, g.k)
    return embed_minus_v(stripped, n, r, lam, new_vertices=sorted(drop),
                         verify_steps=verify_steps)


# --------------------------------------------- regular into regular, h = 2..5


def _as_factorization(g: Hypergraph) -> tuple[int, int, int, int]:
    """Check g is an r-factorization of lam*K_m^h, return (m, h, lam, r)."""
    m, h, lam = _as_complete(g)
    q = lam * comb(m - 1, h - 1)
    if g.k < 1 or q % g.k:
        raise DomainError("class count does not divide the vertex degree")
    r = q // g.k
    deg: dict[tuple[int, int], int] = {}
    for e in g.edges:
        if e.color == 0:
            raise DomainError("every edge must be colored")
        for v, _ in e.occ:
            deg[(e.color, v)] = deg.get((e.color, v), 0) + 1
    if any(deg.get((j, v), 0) != r
           for j in range(1, g.k + 1) for v in g.vertices):
        raise DomainError("classes are not all r-regular")
    return m, h, lam, r


def _check_rs_conditions(m: int, h: int, lam: int, r: int, n: int, s: int) -> None:
    if not n > m:
        raise PreconditionError("n > m", f"n = {n}, m = {m}")
    if not (is_admissible(m, r, lam, h) and is_admissible(n, s, lam, h)):
        raise PreconditionError(
            f"(m, r, lam) and (n, s, lam) are {h}-admissible",
            f"divisibility fails for m={m}, r={r}, n={n}, s={s}, lam={lam}",
        )
    if not (s > r and s * comb(m - 1, h - 1) <= r * comb(n - 1, h - 1)):
        raise PreconditionError(
            "1 < s/r <= C(n-1,h-1)/C(m-1,h-1)",
            f"s/r = {s}/{r} out of range",
        )
    if h == 2:
        if r * (n - 1) > s * (m - 1) and n < 2 * m:
            raise PreconditionError(
                "n >= 2m when s/r < (n-1)/(m-1)",
                f"n = {n} < 2m = {2 * m}",
            )
    elif h == 3:
        if r * comb(n - 1, 2) > s * comb(m - 1, 2) and 2 * n < 3 * m:
            raise PreconditionError(
                "n >= 3m/2 when s/r < C(n-1,2)/C(m-1,2)",
                f"n = {n} < 3m/2",
            )
        lhs = Fraction((n - m) * comb(m, 2))
        rhs = (Fraction(m) - Fraction(n, 3)) * (
            Fraction(comb(n - 1, 2)) - Fraction(s, r) * comb(m - 1, 2)
        )
        if lhs < rhs:
            raise PreconditionError(
                "(n-m)C(m,2) >= (m - n/3)(C(n-1,2) - (s/r)C(m-1,2))",
                "not enough two-old-vertex edges for the middle classes",
            )
    elif h == 4:
        if n < 4 * m:
            raise PreconditionError("n >= 4m", f"n = {n} < {4 * m}")
    elif h == 5:
        if n < 5 * m:
            raise PreconditionError("n >= 5m", f"n = {n} < {5 * m}")
    else:
        raise DomainError("constructions cover edge sizes 2..5 only")


def embed_r_to_s(g: Hypergraph, n: int, s: int,
                 verify_steps: bool = False) -> Hypergraph:
    """Extend an r-factorization of lam*K_m^h (h in 2..5) to a connected
    s-factorization of lam*K_n^h on the first n - m fresh vertex names.
    Exact for h = 2, 3; for h = 4, 5 a size threshold (n >= hm) must hold."""
    m, h, lam, r = _as_factorization(g)
    _check_rs_conditions(m, h, lam, r, n, s)
    if h == 2:
        # an r-factorization is a partial s-factorization; the graph-case
        # construction needs no two-vertex stand-in
        kk = lam * (n - 1) // s
        gg = g if g.k == kk else Hypergraph(g.vertices, g.edges, kk)
        return embed_partial_r(gg, n, s, verify_steps=verify_steps)

    q = g.k
    k = lam * comb(n - 1, h - 1) // s
    a = n - m
    verts = sorted(g.vertices)
    names = _fresh_names(g, a)
    alpha = names[0]
    u = verts[0]

    # two-vertex stand-in: all old vertices fused into u, all new into
    # alpha.  assign[i][j] = edges (u^(h-i) alpha^i) of class j.
    assign: list[list[int]] = [[0] * (k + 1) for _ in range(h + 1)]

    def used_degree(i: int, j: int) -> int:
        """Hinges already placed on u in class j by types thicker than i."""
        return sum((h - t) * assign[t][j] for t in range(1, i))

    for i in range(1, h - 1):  # types u^(h-1) alpha .. u^2 alpha^(h-2)
        total = lam * comb(m, h - i) * comb(a, i)
        caps, lows = [], []
        for j in range(1, k + 1):
            rr = r if j <= q else 0
            caps.append(floor(Fraction(s * m - rr * m - used_degree(i, j),
                                       h - i)))
            if h == 3:
                # lower end keeps the later loop count nonnegative
                io = Fraction(s * m) - Fraction(s * n, 3) - Fraction(2 * rr * m, 3)
                if io.denominator != 1:
                    raise InternalConsistencyError("loop window not integral")
                lows.append(max(0, int(io)))
            else:
                lows.append(0)
        vals = _fill_window(total, lows, caps, f"type u^{h - i} alpha^{i}")
        for j, z in enumerate(vals, start=1):
            assign[i][j] = z

    # type u alpha^(h-1): forced by the degree of u in each class
    for j in range(1, k + 1):
        rr = r if j <= q else 0
        z = s * m - rr * m - used_degree(h - 1, j)
        if z < 0:
            raise InternalConsistencyError("degree of u overshot")
        assign[h - 1][j] = z
    # type alpha^h: forced by the degree of alpha in each class
    for j in range(1, k + 1):
        da = sum(t * assign[t][j] for t in range(1, h))
        z, remmod = divmod(s * a - da, h)
        if remmod or z < 0:
            raise InternalConsistencyError("degree of alpha overshot")
        assign[h][j] = z
    for i in range(1, h + 1):
        total = lam * comb(m, h - i) * comb(a, i)
        if sum(assign[i][1:]) != total:
            raise InternalConsistencyError(
                f"type u^{h - i} alpha^{i}: counts do not add up"
            )

    edges = []
    eid = _next_id(g)
    for i in range(1, h + 1):
        occ: tuple = ((alpha, h),) if i == h else tuple(
            sorted(((u, h - i), (alpha, i)))
        )
        for j in range(1, k + 1):
            for _ in range(assign[i][j]):
                edges.append(EdgeInstance(eid, occ, j))
                eid += 1
    two = Hypergraph({u, alpha}, edges, k)
    resu = detach(two, u, m, part_names=verts[1:], verify_steps=verify_steps)
    big = Hypergraph(set(verts) | {alpha},
                     tuple(g.edges) + resu.detached.edges, k)
    _check_amalgam(big.edges, alpha, k, s, a)
    res = detach(big, alpha, a, part_names=names[1:], verify_steps=verify_steps)
    return res.detached
