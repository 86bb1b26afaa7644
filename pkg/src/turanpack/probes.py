"""Randomized and sweep-based probes for the two open generalizations.

Probe "5.1" samples sparse bounded-degree hosts and checks the dichotomy
"k disjoint independent p-sets, or rigid small-clique union" for general k.
Probe "5.2" sweeps the conjectured piecewise extremal values for k >= 4 and
confirms that the matching constructions realize them and avoid the
pattern. Neither probe proves anything; each either reports consistency or
emits a concrete counterexample.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .codec import to_graph6
from .errors import PreconditionError, SizeGuardError
from .formulas import binom2, ex_4_cliques, hub_join_edges
from .constructions import hub_join, rigid_clique_union
from .graphs import Graph, complement, components, from_edge_list
from .packing import find_clique_packing, find_disjoint_independent_sets, verify_witness

SAMPLER_ATTEMPTS = 5000


def random_bounded_graph(n: int, m: int, max_deg: int,
                         rng: random.Random) -> Graph:
    """Uniform-ish random graph with exactly m edges and maximum degree at
    most max_deg: shuffle all vertex pairs, place edges greedily skipping
    saturated endpoints, retry the whole draw when stranded."""
    if n < 0 or m < 0 or max_deg < 0:
        raise PreconditionError("need n, m, max_deg >= 0")
    if m > n * (n - 1) // 2 or 2 * m > n * max_deg:
        raise PreconditionError(
            f"no graph on {n} vertices has {m} edges with max degree {max_deg}")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for _ in range(SAMPLER_ATTEMPTS):
        rng.shuffle(pairs)
        degree = [0] * n
        chosen = []
        for i, j in pairs:
            if degree[i] == max_deg or degree[j] == max_deg:
                continue
            chosen.append((i, j))
            degree[i] += 1
            degree[j] += 1
            if len(chosen) == m:
                return from_edge_list(n, chosen)
        if m == 0:
            return from_edge_list(n, [])
    raise RuntimeError(
        f"sampler gave up after {SAMPLER_ATTEMPTS} draws for n={n}, m={m}, "
        f"max_deg={max_deg}")


def is_rigid_small_clique_union(g: Graph, k: int, s: int) -> bool:
    """Whether g is exactly (s/(k-1)) copies of the (2k-1)-clique plus
    isolated vertices, with the forced edge count."""
    if s < 1 or s % (k - 1) != 0:
        return False
    cliques = 0
    for comp in components(g):
        size = comp.bit_count()
        if size == 1:
            continue
        if size != 2 * k - 1 or not g.is_clique(comp):
            return False
        cliques += 1
    return cliques == s // (k - 1) and g.edge_count() == (2 * k - 1) * s


@dataclass
class DichotomyProbeReport:
    k: int
    p: int
    trials: int
    seed: int
    witnessed: int = 0
    rigid: int = 0
    skipped: int = 0
    counterexample: str | None = None  # graph6
    counterexample_params: dict | None = None

    @property
    def consistent(self) -> bool:
        return self.counterexample is None


def probe_dichotomy(k: int, p: int, trials: int = 200, seed: int = 0,
                    guard_n: int | None = None) -> DichotomyProbeReport:
    """Sample hosts with n = kp-1+s, at most (2k-1)s edges and max degree
    at most 2k-2, then test the conjectured dichotomy: k disjoint
    independent p-sets exist, or the host is the rigid small-clique union.
    """
    if p < 3 or k < 2 or trials < 1:
        raise PreconditionError("need p >= 3, k >= 2, trials >= 1")
    rng = random.Random(seed)
    report = DichotomyProbeReport(k=k, p=p, trials=trials, seed=seed)
    for _ in range(trials):
        s = rng.randint(1, (k - 1) * p - 1)
        n = k * p - 1 + s
        m = rng.randint(0, min((2 * k - 1) * s, n * (2 * k - 2) // 2))
        g = random_bounded_graph(n, m, 2 * k - 2, rng)
        try:
            witness = find_disjoint_independent_sets(g, k, p, guard_n=guard_n)
        except SizeGuardError:
            report.skipped += 1
            continue
        if witness is not None:
            check = verify_witness(g, witness, k, p, "independent")
            if not check.ok:
                raise AssertionError(f"search returned a bad witness: {check.violation}")
            report.witnessed += 1
        elif is_rigid_small_clique_union(g, k, s):
            report.rigid += 1
        else:
            report.counterexample = to_graph6(g)
            report.counterexample_params = {"n": n, "s": s, "edges": m}
            break
    return report


@dataclass
class ValueSweepRow:
    n: int
    branch: str
    value: int
    construction: str
    construction_edges: int
    pattern_free: bool

    @property
    def consistent(self) -> bool:
        return self.value == self.construction_edges and self.pattern_free


@dataclass
class ValueSweepReport:
    k: int
    p: int
    rows: list[ValueSweepRow] = field(default_factory=list)
    boundary_consistent: bool = True
    matches_four_block_values: bool | None = None  # k = 4 only

    @property
    def consistent(self) -> bool:
        ok = all(row.consistent for row in self.rows) and self.boundary_consistent
        if self.matches_four_block_values is not None:
            ok = ok and self.matches_four_block_values
        return ok


def probe_value_sweep(k: int, p: int, window: int | None = None,
                      guard_n: int | None = None) -> ValueSweepReport:
    """Sweep the conjectured two-branch extremal values for k disjoint
    p-cliques (k >= 4): middle branch C(n,2) - (2k-1)(n-kp+1) realized by
    the complement of the rigid clique union, large branch realized by the
    hub join. Checks edge counts and pattern freeness; for k = 4 also
    checks agreement with the proved values."""
    if p < 3 or k < 4:
        raise PreconditionError("need p >= 3 and k >= 4")
    if (k - 1) * p - k * k + 3 * k - 3 < 0:
        raise PreconditionError(
            f"conjecture needs (k-1)p >= k^2-3k+3; p={p} is too small for k={k}")
    if window is None:
        window = p + 2
    report = ValueSweepReport(k=k, p=p)
    first_lo = k * p + k * k - 3 * k + 1
    first_hi = (2 * k - 1) * p - 2
    second_lo = (2 * k - 1) * p - 1
    four_block_ok = True
    for n in range(first_lo, second_lo + window):
        if n <= first_hi:
            branch = "middle"
            value = binom2(n) - (2 * k - 1) * (n - k * p + 1)
            built = complement(rigid_clique_union(k, p, n - k * p + 1))
            construction = "rigid-union complement"
        else:
            branch = "hub-join"
            value = hub_join_edges(k, n, p)
            built = hub_join(k, n, p)
            construction = "hub join"
        packing = find_clique_packing(built, k, p, guard_n=guard_n)
        row = ValueSweepRow(n=n, branch=branch, value=value,
                            construction=construction,
                            construction_edges=built.edge_count(),
                            pattern_free=packing is None)
        report.rows.append(row)
        if k == 4:
            four_block_ok = four_block_ok and ex_4_cliques(n, p).value == value
    # At the last middle-branch point both closed forms agree.
    seam = binom2(first_hi) - (2 * k - 1) * (first_hi - k * p + 1)
    report.boundary_consistent = seam == hub_join_edges(k, first_hi, p)
    report.matches_four_block_values = four_block_ok if k == 4 else None
    return report
