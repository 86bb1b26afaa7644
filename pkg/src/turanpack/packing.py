"""Exact search for disjoint independent sets, plus equitable colorings.

The searches are exact and deterministic: backtracking over sets ordered so
that set minima increase (symmetry breaking), with supply pruning from
per-component independence capacities. Hosts whose components are all
cliques or isolated vertices take an analytic path that works at any n;
everything else is guarded by a configurable size cap.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError, SizeGuardError, SoundnessAlarm
from .graphs import Graph, VertexSet, bits, complement, components

DEFAULT_GUARD_N = 64
DEFAULT_EXACT_COLORING_GUARD = 20


@dataclass(frozen=True)
class PackingWitness:
    """k pairwise disjoint vertex sets, independent or cliques per mode."""

    sets: tuple[VertexSet, ...]

    def masks(self) -> tuple[int, ...]:
        return tuple(s.mask for s in self.sets)


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class EquitableColoring:
    """Proper coloring whose class sizes differ by at most one."""

    classes: tuple[VertexSet, ...]


@dataclass(frozen=True)
class ExactColoringResult:
    coloring: EquitableColoring | None
    certificate: tuple[VertexSet, VertexSet] | None = None


# -- independence number -----------------------------------------------------


def _alpha_mask(adj: tuple[int, ...], mask: int, memo: dict) -> int:
    if mask == 0:
        return 0
    cached = memo.get(mask)
    if cached is not None:
        return cached
    best_v = -1
    best_deg = -1
    for v in bits(mask):
        deg = (adj[v] & mask).bit_count()
        if deg > best_deg:
            best_deg = deg
            best_v = v
    if best_deg == 0:
        result = mask.bit_count()
    else:
        without = _alpha_mask(adj, mask & ~(1 << best_v), memo)
        taking = 1 + _alpha_mask(adj, mask & ~(adj[best_v] | (1 << best_v)), memo)
        result = max(without, taking)
    memo[mask] = result
    return result


def independence_number(g: Graph, guard_n: int | None = None) -> int:
    """Exact independence number via branch and bound over components."""
    guard = DEFAULT_GUARD_N if guard_n is None else guard_n
    if g.n > guard:
        raise SizeGuardError(f"independence_number guard: n={g.n} > {guard}")
    memo: dict = {}
    return sum(_alpha_mask(g.adj, comp, memo) for comp in components(g))


# -- exact disjoint-set search ------------------------------------------------


def _clique_union_profile(g: Graph) -> tuple[list[int], int] | None:
    """If every component is a clique, return (clique masks sorted by
    descending size, pool mask of singletons); otherwise None."""
    cliques: list[int] = []
    pool = 0
    for comp in components(g):
        size = comp.bit_count()
        if size == 1:
            pool |= comp
            continue
        if not g.is_clique(comp):
            return None
        cliques.append(comp)
    cliques.sort(key=lambda m: (-m.bit_count(), m & -m))
    return cliques, pool


def _clique_union_search(g: Graph, sizes: tuple[int, ...],
                         cliques: list[int], pool: int) -> list[int] | None:
    """Analytic packing on a union of cliques plus isolated vertices.

    Feasible iff for every a, the a largest set sizes fit into one slot per
    clique per set (a cut argument on the allocation flow); the greedy
    most-needy-first dealing then realizes a witness.
    """
    k = len(sizes)
    t = pool.bit_count()
    caps = [m.bit_count() for m in cliques]
    for a in range(1, k + 1):
        if sum(sizes[:a]) > sum(min(c, a) for c in caps) + t:
            return None
    need = list(sizes)
    sets = [0] * k
    for mask in cliques:
        vertices = list(bits(mask))
        takers = sorted((i for i in range(k) if need[i] > 0),
                        key=lambda i: (-need[i], i))[: len(vertices)]
        for v, i in zip(vertices, takers):
            sets[i] |= 1 << v
            need[i] -= 1
    pool_bits = bits(pool)
    while any(need):
        i = min(range(k), key=lambda i: (-need[i], i))
        v = next(pool_bits, None)
        if v is None:  # pragma: no cover - the cut condition rules this out
            raise SoundnessAlarm("clique-union dealing failed a feasible instance")
        sets[i] |= 1 << v
        need[i] -= 1
    return sets


def _supply_bound(avail: int, k_rem: int,
                  comp_info: list[tuple[int, int]]) -> int:
    total = 0
    for comp_mask, alpha in comp_info:
        inside = (avail & comp_mask).bit_count()
        if inside:
            total += min(inside, k_rem * alpha)
    return total


def _greedy_attempt(g: Graph, sizes: tuple[int, ...]) -> list[int] | None:
    """One cheap pass in degree order; a hit skips the full search."""
    order = sorted(range(g.n), key=lambda v: (g.degree(v), v))
    avail = g.full_mask()
    sets = []
    for size in sizes:
        mask = 0
        count = 0
        blocked = 0
        for v in order:
            bit = 1 << v
            if not avail & bit or blocked & bit:
                continue
            mask |= bit
            blocked |= g.adj[v]
            count += 1
            if count == size:
                break
        if count < size:
            return None
        sets.append(mask)
        avail &= ~mask
    return sets


def _find_disjoint_sets(g: Graph, sizes: tuple[int, ...],
                        guard_n: int | None) -> list[int] | None:
    """Find pairwise disjoint independent sets of the given sizes
    (descending); returns masks in that order or None."""
    if any(size < 1 for size in sizes):
        raise PreconditionError("set sizes must be positive")
    sizes = tuple(sorted(sizes, reverse=True))
    if sum(sizes) > g.n:
        return None
    profile = _clique_union_profile(g)
    if profile is not None:
        return _clique_union_search(g, sizes, *profile)
    guard = DEFAULT_GUARD_N if guard_n is None else guard_n
    if g.n > guard:
        raise SizeGuardError(
            f"exact packing guard: n={g.n} > {guard} and host is not a clique union")
    greedy = _greedy_attempt(g, sizes)
    if greedy is not None:
        return greedy
    memo: dict = {}
    comp_info = [(comp, _alpha_mask(g.adj, comp, memo)) for comp in components(g)]
    adj = g.adj
    k = len(sizes)
    totals = [sum(sizes[i:]) for i in range(k + 1)]

    def place(idx: int, avail: int, floor: int) -> list[int] | None:
        if idx == k:
            return []
        if _supply_bound(avail, k - idx, comp_info) < totals[idx]:
            return None
        need = sizes[idx]
        same_group = idx > 0 and sizes[idx - 1] == need
        start = floor if same_group else 0
        first_candidates = avail >> start << start

        def grow(set_mask: int, count: int, cand: int, first: int) -> list[int] | None:
            if count == need:
                rest = place(idx + 1, avail & ~set_mask, first + 1)
                if rest is not None:
                    return [set_mask] + rest
                return None
            while cand:
                low = cand & -cand
                v = low.bit_length() - 1
                cand ^= low
                if cand.bit_count() < need - count - 1:
                    return None
                result = grow(set_mask | low, count + 1, cand & ~adj[v], first)
                if result is not None:
                    return result
            return None

        rem = first_candidates
        while rem:
            low = rem & -rem
            first = low.bit_length() - 1
            rem ^= low
            above = avail >> (first + 1) << (first + 1)
            result = grow(low, 1, above & ~adj[first], first)
            if result is not None:
                return result
        return None

    return place(0, g.full_mask(), 0)


def find_disjoint_independent_sets(g: Graph, k: int, p: int,
                                   guard_n: int | None = None) -> PackingWitness | None:
    """Exact: k pairwise disjoint independent p-sets in g, or None."""
    if k < 1 or p < 1:
        raise PreconditionError("requires k >= 1 and p >= 1")
    masks = _find_disjoint_sets(g, (p,) * k, guard_n)
    if masks is None:
        return None
    ordered = sorted(masks, key=lambda m: m & -m)
    return PackingWitness(tuple(VertexSet(g.n, m) for m in ordered))


def find_clique_packing(g: Graph, k: int, p: int,
                        guard_n: int | None = None) -> PackingWitness | None:
    """Exact: k pairwise disjoint p-cliques in g, or None (searches the
    complement for independent sets; same witness sets)."""
    return find_disjoint_independent_sets(complement(g), k, p, guard_n)


def verify_witness(g: Graph, witness: PackingWitness, k: int, p: int,
                   mode: str = "independent") -> VerificationReport:
    """Re-check a witness from scratch; reports the first violation."""
    if mode not in ("independent", "clique"):
        raise PreconditionError(f"unknown mode {mode!r}")
    if len(witness.sets) != k:
        return VerificationReport(False, f"expected {k} sets, got {len(witness.sets)}")
    seen = 0
    for i, vs in enumerate(witness.sets):
        if vs.n != g.n:
            return VerificationReport(False, f"set {i} bound to n={vs.n}, graph has n={g.n}")
        if vs.mask & ~g.full_mask():
            return VerificationReport(False, f"set {i} has vertices outside the graph")
        if len(vs) != p:
            return VerificationReport(False, f"set {i} has {len(vs)} vertices, expected {p}")
        if vs.mask & seen:
            return VerificationReport(False, f"set {i} overlaps an earlier set")
        seen |= vs.mask
        if mode == "independent" and not g.is_independent(vs.mask):
            return VerificationReport(False, f"set {i} is not independent")
        if mode == "clique" and not g.is_clique(vs.mask):
            return VerificationReport(False, f"set {i} is not a clique")
    return VerificationReport(True)


# -- equitable coloring -------------------------------------------------------


def verify_equitable_coloring(g: Graph, coloring: EquitableColoring) -> VerificationReport:
    union = 0
    sizes = []
    for i, vs in enumerate(coloring.classes):
        if vs.n != g.n:
            return VerificationReport(False, f"class {i} bound to a different graph")
        if vs.mask & union:
            return VerificationReport(False, f"class {i} overlaps an earlier class")
        union |= vs.mask
        if not g.is_independent(vs.mask):
            return VerificationReport(False, f"class {i} is not independent")
        sizes.append(len(vs))
    if union != g.full_mask():
        return VerificationReport(False, "classes do not cover every vertex")
    if sizes and max(sizes) - min(sizes) > 1:
        return VerificationReport(False, "class sizes differ by more than one")
    return VerificationReport(True)


def _movable_vertex(g: Graph, source_mask: int, target_mask: int) -> int | None:
    for v in bits(source_mask):
        if g.adj[v] & target_mask == 0:
            return v
    return None


def _balance_by_shifts(g: Graph, classes: list[int], limit: int) -> bool:
    """Shift movable vertices along class paths until sizes differ by at
    most one. Returns False when stuck before reaching balance."""
    q = len(classes)
    for _ in range(limit):
        sizes = [m.bit_count() for m in classes]
        spread = max(sizes) - min(sizes)
        if spread <= 1:
            return True
        moved = False
        for src in sorted(range(q), key=lambda i: (-sizes[i], i)):
            if sizes[src] - min(sizes) < 2:
                break
            # BFS over movability arcs from src to any class 2 smaller.
            prev: dict[int, int] = {src: -1}
            frontier = [src]
            goal = -1
            while frontier and goal < 0:
                nxt = []
                for i in frontier:
                    for j in range(q):
                        if j in prev or j == i:
                            continue
                        if _movable_vertex(g, classes[i], classes[j]) is None:
                            continue
                        prev[j] = i
                        if sizes[j] <= sizes[src] - 2:
                            goal = j
                            break
                        nxt.append(j)
                    if goal >= 0:
                        break
                frontier = nxt
            if goal < 0:
                continue
            path = [goal]
            while path[-1] != src:
                path.append(prev[path[-1]])
            path.reverse()
            for i, j in zip(path, path[1:]):
                v = _movable_vertex(g, classes[i], classes[j])
                classes[i] &= ~(1 << v)
                classes[j] |= 1 << v
            moved = True
            break
        if not moved:
            return False
    return False


def _networkx_equitable(g: Graph, num_classes: int) -> list[int]:
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    assignment = nx.equitable_color(h, num_classes)
    classes = [0] * num_classes
    for v, c in assignment.items():
        classes[c] |= 1 << v
    classes.sort(key=lambda m: (-m.bit_count(), m & -m if m else 1 << g.n))
    return classes


def equitable_coloring(g: Graph, num_classes: int) -> EquitableColoring:
    """Equitable proper coloring with num_classes >= max degree + 1 classes.

    Greedy seed, then shift vertices along movability paths (lowest class,
    lowest vertex first); a budgeted stuck state falls back to a library
    routine. The result is re-verified either way.
    """
    if num_classes < 1:
        raise PreconditionError("need at least one class")
    if g.max_degree() >= num_classes:
        raise PreconditionError(
            f"equitable_coloring needs max degree < classes "
            f"(degree {g.max_degree()}, classes {num_classes})")
    classes = [0] * num_classes
    sizes = [0] * num_classes
    for v in range(g.n):
        row = g.adj[v]
        best = min((i for i in range(num_classes) if row & classes[i] == 0),
                   key=lambda i: (sizes[i], i))
        classes[best] |= 1 << v
        sizes[best] += 1
    if not _balance_by_shifts(g, classes, limit=2 * g.n + 2):
        classes = _networkx_equitable(g, num_classes)
    coloring = EquitableColoring(tuple(VertexSet(g.n, m) for m in classes))
    report = verify_equitable_coloring(g, coloring)
    if not report.ok:
        raise SoundnessAlarm(f"equitable coloring failed verification: {report.violation}")
    return coloring


def _color_with_capacities(g: Graph, caps: list[int]) -> list[int] | None:
    """Backtracking proper coloring with per-class size caps; vertices are
    placed in descending-degree order, empty equal-cap classes deduplicated."""
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    q = len(caps)
    classes = [0] * q
    used = [0] * q

    def place(i: int) -> bool:
        if i == g.n:
            return True
        v = order[i]
        row = g.adj[v]
        tried_empty_caps = set()
        for c in range(q):
            if used[c] >= caps[c] or row & classes[c]:
                continue
            if used[c] == 0:
                if caps[c] in tried_empty_caps:
                    continue
                tried_empty_caps.add(caps[c])
            classes[c] |= 1 << v
            used[c] += 1
            if place(i + 1):
                return True
            classes[c] &= ~(1 << v)
            used[c] -= 1
        return False

    return classes if place(0) else None


def _find_biclique(g: Graph, r: int) -> tuple[VertexSet, VertexSet] | None:
    """First K_(r,r) subgraph (two disjoint r-sets, all cross edges)."""
    from itertools import combinations

    for a_tuple in combinations(range(g.n), r):
        common = g.full_mask()
        for v in a_tuple:
            common &= g.adj[v]
        for v in a_tuple:
            common &= ~(1 << v)
        if common.bit_count() >= r:
            b_mask = 0
            taken = 0
            for v in bits(common):
                b_mask |= 1 << v
                taken += 1
                if taken == r:
                    break
            a_mask = 0
            for v in a_tuple:
                a_mask |= 1 << v
            return VertexSet(g.n, a_mask), VertexSet(g.n, b_mask)
    return None


def equitable_coloring_exact(g: Graph, r: int,
                             guard_n: int | None = None) -> ExactColoringResult:
    """Exhaustively decide whether an equitable r-coloring exists.

    When none exists and the instance matches the known dichotomy
    conditions (odd r <= 4 with max degree <= r and an ordinary r-coloring
    available), a K_(r,r) subgraph certificate is attached.
    """
    if r < 1:
        raise PreconditionError("need at least one class")
    guard = DEFAULT_EXACT_COLORING_GUARD if guard_n is None else guard_n
    if g.n > guard:
        raise SizeGuardError(f"equitable_coloring_exact guard: n={g.n} > {guard}")
    hi, extra = divmod(g.n, r)
    caps = [hi + 1] * extra + [hi] * (r - extra)
    classes = _color_with_capacities(g, caps)
    if classes is not None:
        coloring = EquitableColoring(tuple(VertexSet(g.n, m) for m in classes))
        report = verify_equitable_coloring(g, coloring)
        if not report.ok:  # pragma: no cover - search output is correct by construction
            raise SoundnessAlarm(f"exact coloring failed verification: {report.violation}")
        return ExactColoringResult(coloring)
    certificate = None
    if r <= 4 and r % 2 == 1 and g.max_degree() <= r:
        if _color_with_capacities(g, [g.n] * r) is not None:
            certificate = _find_biclique(g, r)
    return ExactColoringResult(None, certificate)
