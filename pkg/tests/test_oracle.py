"""Exhaustive small-host oracle against a from-scratch reference."""

import itertools

import pytest

from turanpack import (PreconditionError, SizeGuardError, binom2,
                       exhaustive_ex, exhaustive_ex_sizes, from_edge_list,
                       naive_contains_clique_union,
                       naive_disjoint_independent_sets,
                       naive_independent_sets, union_of_cliques,
                       verify_witness)
from turanpack.oracle import _placement_masks


def reference_ex(n, sizes):
    """Pure-itertools recount: max edges over all graphs on n labeled
    vertices containing no disjoint union of cliques of the given sizes."""
    pairs = list(itertools.combinations(range(n), 2))
    placements = []
    for groups in distinct_placements(n, sizes):
        mask = 0
        for i, (u, v) in enumerate(pairs):
            take = any(u in grp and v in grp for grp in groups)
            if take:
                mask |= 1 << i
        placements.append(mask)
    best = -1
    for mask in range(1 << len(pairs)):
        if any(mask & pl == pl for pl in placements):
            continue
        best = max(best, bin(mask).count("1"))
    if best < 0:
        raise PreconditionError("pattern unavoidable")
    return best


def distinct_placements(n, sizes):
    """All ways to pick disjoint vertex sets of the given sizes."""
    def rec(rest, used):
        if not rest:
            yield ()
            return
        size, tail = rest[0], rest[1:]
        for grp in itertools.combinations(sorted(set(range(n)) - used), size):
            for more in rec(tail, used | set(grp)):
                yield (set(grp),) + more
    seen = set()
    for choice in rec(tuple(sizes), set()):
        key = frozenset(frozenset(grp) for grp in choice)
        if key not in seen:
            seen.add(key)
            yield choice


def test_matches_reference_on_tiny_hosts():
    for n in range(0, 6):
        for k, p in [(1, 2), (1, 3), (2, 2)]:
            if k * p > n:
                continue
            got, extremal = exhaustive_ex(n, k, p)
            assert got == reference_ex(n, (p,) * k), (n, k, p)
            assert extremal.n == n and extremal.edge_count() == got
            assert naive_contains_clique_union(extremal, k, p) is False


def test_spec_level_values():
    assert exhaustive_ex(6, 3, 2)[0] == 10
    assert exhaustive_ex(4, 2, 2)[0] == 3
    assert exhaustive_ex(5, 1, 3)[0] == 6
    assert exhaustive_ex(6, 2, 3)[0] == 12
    assert exhaustive_ex(7, 2, 3)[0] == 15
    assert exhaustive_ex_sizes(7, (3, 4))[0] == 18


def test_extremal_graph_is_pattern_free_but_saturated():
    value, extremal = exhaustive_ex(6, 2, 3)
    assert value == 12
    assert naive_contains_clique_union(extremal, 2, 3) is False
    # adding any missing edge must create the pattern
    present = set(extremal.edges())
    for u in range(6):
        for v in range(u + 1, 6):
            if (u, v) in present:
                continue
            bigger = from_edge_list(6, list(present | {(u, v)}))
            assert naive_contains_clique_union(bigger, 2, 3), (u, v)


def test_unavoidable_pattern_is_an_error():
    with pytest.raises(PreconditionError, match="contains the pattern"):
        exhaustive_ex(3, 1, 1)  # K1 sits in every nonempty graph
    with pytest.raises(PreconditionError):
        exhaustive_ex_sizes(2, (1, 1))


def test_no_placement_branch_returns_complete_graph():
    value, extremal = exhaustive_ex(4, 2, 3)  # 2K3 cannot fit in 4 vertices
    assert value == binom2(4)
    assert extremal.edge_count() == binom2(4)


def test_placement_masks():
    masks = _placement_masks(4, (2, 2))
    assert len(masks) == 3  # perfect matchings of K4
    singles = _placement_masks(4, (3,))
    assert len(singles) == 4  # C(4,3) triangles
    assert len(_placement_masks(5, (2, 3))) == 10


def test_guard_refusal():
    with pytest.raises(SizeGuardError, match="n=8"):
        exhaustive_ex(8, 1, 3)
    with pytest.raises(SizeGuardError):
        exhaustive_ex(6, 2, 2, guard=5)
    assert exhaustive_ex(6, 2, 2, guard=6)[0] == ex_value_check()


def ex_value_check():
    # independent recount of ex(6, 2K2) via the matching formula shape
    return max(binom2(3), 1 + 4)  # K3 plus isolated vs star K_(1,5)


def test_naive_searches():
    g = union_of_cliques([3, 3], 0)
    sets = list(naive_independent_sets(g, 2))
    assert len(sets) == 9  # one vertex from each triangle
    w = naive_disjoint_independent_sets(g, 3, 2)
    assert w is not None
    assert verify_witness(g, w, 3, 2).ok
    assert naive_disjoint_independent_sets(g, 4, 2) is None
    assert naive_contains_clique_union(g, 2, 3) is True
    assert naive_contains_clique_union(g, 3, 3) is False
