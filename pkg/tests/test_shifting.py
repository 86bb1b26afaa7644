"""Five-class partition engine: state, aux digraph, moves, resolution."""

import random

import pytest

from turanpack import (AuxDigraph, EngineTrace, PackingWitness,
                       PartitionState, PreconditionError,
                       StructureCertificate, accessible_path, apply_shift,
                       build_aux_digraph, certify_k7_structure,
                       check_blocked_domination, check_preconditions,
                       from_edge_list, init_partition, naive_disjoint_independent_sets,
                       propose_moves, resolve, solo_neighbor, union_of_cliques,
                       verify_certificate, verify_witness)
from turanpack.shifting import _apply_witness_move

EMPTY14 = from_edge_list(14, [])


def minus_edge(g, edge):
    return from_edge_list(g.n, [e for e in g.edges() if e != edge])


def sparse_random(n, m, rng, max_deg=6):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    adj = [0] * n
    edges = []
    for u, v in pairs:
        if len(edges) == m:
            break
        if bin(adj[u]).count("1") < max_deg and bin(adj[v]).count("1") < max_deg:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            edges.append((u, v))
    return from_edge_list(n, edges)


# The double-solo scenario: class 1 holds the shared solo neighbor of two
# nonadjacent leftover vertices, class 0 is inaccessible, and the only
# route to the destination (class 4 = {9, 10}) leaves from class 1.
#
# solo=2 variant: the path mover (vertex 0) differs from the solo.
DOUBLE_SOLO_EDGES = [
    (11, 2), (12, 2),              # shared solo neighbor in class 1
    (13, 1),                       # blocks arc (0, 1)
    (3, 0), (4, 1), (5, 0),        # class 2 dominated by class 1
    (6, 1), (7, 0), (8, 1),        # class 3 dominated by class 1
    (3, 9), (4, 10), (5, 9),       # class 2 dominated by class 4
    (6, 10), (7, 9), (8, 10),      # class 3 dominated by class 4
    (11, 9), (12, 10), (13, 9),    # class 0 dominated by class 4
]
DOUBLE_SOLO_CLASSES = (
    0b11100000000000,  # class 0: {11, 12, 13}
    0b00000000000111,  # class 1: {0, 1, 2}
    0b00000000111000,  # class 2: {3, 4, 5}
    0b00000111000000,  # class 3: {6, 7, 8}
    0b00011000000000,  # class 4: {9, 10}, deficient
)


def double_solo_state():
    g = from_edge_list(14, DOUBLE_SOLO_EDGES)
    return PartitionState(g, 3, DOUBLE_SOLO_CLASSES)


def test_state_validation():
    st = double_solo_state()
    assert st.destination == 4
    assert st.class_of(11) == 0
    assert st.class_of(9) == 4
    assert st.witness() is None
    with pytest.raises(PreconditionError, match="five classes"):
        PartitionState(st.graph, 3, st.classes[:4])
    with pytest.raises(PreconditionError, match="overlap"):
        PartitionState(st.graph, 3, (st.classes[0] | 1, *st.classes[1:]))
    with pytest.raises(PreconditionError, match="cover"):
        PartitionState(st.graph, 3, (st.classes[0] & ~(1 << 11), *st.classes[1:]))
    with pytest.raises(PreconditionError, match="not independent"):
        bad = from_edge_list(14, DOUBLE_SOLO_EDGES + [(0, 1)])
        PartitionState(bad, 3, DOUBLE_SOLO_CLASSES)
    with pytest.raises(PreconditionError, match="deficient"):
        # shrink classes 3 and 4 both to p-1; vertex 8 goes to class 0
        PartitionState(st.graph, 3, (st.classes[0] | (1 << 8),
                                     st.classes[1], st.classes[2],
                                     st.classes[3] & ~(1 << 8), st.classes[4]))


def test_init_partition_empty_graph():
    st = init_partition(EMPTY14, 3)
    assert st.classes == (
        0b11100000000000,  # leftover {11, 12, 13}
        0b00000000000111,
        0b00000000111000,
        0b00000111000000,
        0b00011000000000,
    )
    with pytest.raises(PreconditionError, match="init_partition needs"):
        init_partition(EMPTY14, 2)
    with pytest.raises(PreconditionError):
        init_partition(from_edge_list(11, []), 3)  # s = 0


def test_aux_digraph_matches_brute_force():
    rng = random.Random(23)
    checked = 0
    while checked < 40:
        n = rng.choice([14, 15, 16, 17])
        g = sparse_random(n, rng.randrange(0, 25), rng)
        st = init_partition(g, 3)
        if st is None or st.destination is None:
            continue
        aux = build_aux_digraph(st)
        expect = {}
        for i in range(5):
            for j in range(1, 5):
                if i == j:
                    continue
                for v in sorted(range(n)):
                    if st.classes[i] >> v & 1 and g.adj[v] & st.classes[j] == 0:
                        expect[(i, j)] = v
                        break
        assert aux.arcs == expect
        # accessibility: closure of arcs into the growing destination set
        reach = {aux.destination}
        changed = True
        while changed:
            changed = False
            for (i, j) in expect:
                if j in reach and i not in reach:
                    reach.add(i)
                    changed = True
        assert aux.accessible == frozenset(reach)
        checked += 1


def test_aux_digraph_of_crafted_state():
    st = double_solo_state()
    aux = build_aux_digraph(st)
    assert aux.destination == 4
    assert aux.accessible == frozenset({1, 4})
    assert aux.arcs[(1, 4)] == 0
    assert (0, 4) not in aux.arcs and (2, 4) not in aux.arcs
    assert all(j != 0 for (_, j) in aux.arcs)
    path, movers = accessible_path(aux, 1)
    assert path == (1, 4) and movers == (0,)
    with pytest.raises(PreconditionError, match="not accessible"):
        accessible_path(aux, 0)


def test_solo_neighbor():
    st = double_solo_state()
    assert solo_neighbor(st, 11, 1) == 2
    assert solo_neighbor(st, 13, 1) == 1
    assert solo_neighbor(st, 11, 2) is None  # no neighbors there
    assert solo_neighbor(st, 3, 1) == 0
    with pytest.raises(PreconditionError, match="lies in class"):
        solo_neighbor(st, 0, 1)
    with pytest.raises(PreconditionError, match="out of range"):
        solo_neighbor(st, 11, 9)


def test_apply_shift():
    st = double_solo_state()
    shifted = apply_shift(st, (1, 4), (0,))
    assert shifted.classes[4] == st.classes[4] | 1
    assert shifted.destination == 1
    with pytest.raises(PreconditionError, match="not in class"):
        apply_shift(st, (1, 4), (3,))
    with pytest.raises(PreconditionError, match="has neighbors"):
        apply_shift(st, (2, 4), (3,))  # 3 is adjacent to 9
    with pytest.raises(PreconditionError, match="distinct"):
        apply_shift(st, (1, 4, 1), (0, 0))
    with pytest.raises(PreconditionError, match="one mover per"):
        apply_shift(st, (1, 4), (0, 1))


def test_blocked_domination():
    st = double_solo_state()
    aux = build_aux_digraph(st)
    assert check_blocked_domination(st, aux)
    # falsely marking class 2 accessible breaks domination: leftover
    # vertices have no neighbors inside class 2
    corrupt = AuxDigraph(aux.arcs, aux.destination,
                         aux.accessible | frozenset({2}))
    assert not check_blocked_domination(st, corrupt)


def test_double_solo_distinct_mover():
    st = double_solo_state()
    aux = build_aux_digraph(st)
    moves = propose_moves(st, aux)
    assert moves and moves[0].kind == "double-solo"
    move = moves[0]
    assert move.solo == 2
    assert move.leftovers == (11, 12)
    assert move.movers == (0,)
    ended = _apply_witness_move(st, move)
    witness = ended.witness()
    assert witness is not None
    assert verify_witness(st.graph, witness, 4, 3).ok


def test_double_solo_mover_is_solo():
    # same layout but the shared solo neighbor is vertex 0, which is also
    # the lowest class-1 vertex without neighbors in the destination
    edges = [
        (11, 0), (12, 0),
        (13, 1),
        (3, 1), (4, 2), (5, 1),
        (6, 2), (7, 1), (8, 2),
        (3, 9), (4, 10), (5, 9),
        (6, 10), (7, 9), (8, 10),
        (11, 9), (12, 10), (13, 9),
    ]
    g = from_edge_list(14, edges)
    st = PartitionState(g, 3, DOUBLE_SOLO_CLASSES)
    aux = build_aux_digraph(st)
    assert aux.arcs[(1, 4)] == 0
    moves = propose_moves(st, aux)
    assert moves and moves[0].kind == "double-solo"
    move = moves[0]
    assert move.solo == 0 and move.movers == (0,)
    ended = _apply_witness_move(st, move)
    witness = ended.witness()
    assert witness is not None
    assert verify_witness(g, witness, 4, 3).ok


def test_path_shift_has_priority_when_class0_is_accessible():
    g = from_edge_list(14, [(11, 9)])  # nearly empty host
    st = init_partition(g, 3)
    aux = build_aux_digraph(st)
    moves = propose_moves(st, aux)
    assert moves[0].kind == "path-shift"
    ended = _apply_witness_move(st, moves[0])
    assert ended.witness() is not None


def test_certify_k7_structure():
    g = union_of_cliques([7, 7], 7)  # n=21
    cert = certify_k7_structure(g, 4)
    assert cert is not None
    assert cert.s == 6 and cert.edges == 42 and cert.max_degree == 6
    assert verify_certificate(g, cert, 4).ok

    assert certify_k7_structure(union_of_cliques([7, 7], 9), 4) is None  # s=8
    assert certify_k7_structure(EMPTY14, 3) is None  # no cliques at all
    assert certify_k7_structure(union_of_cliques([6], 8), 3) is None


def test_verify_certificate_rejects_mismatches():
    g = union_of_cliques([7], 7)
    cert = certify_k7_structure(g, 3)
    assert verify_certificate(g, cert, 3).ok
    assert not verify_certificate(g, cert, 4).ok  # wrong regime offset
    other = minus_edge(g, list(g.edges())[0])
    report = verify_certificate(other, cert, 3)
    assert not report.ok


def test_check_preconditions_diagnostics():
    ok = check_preconditions(union_of_cliques([7], 7), 3)
    assert ok == []
    problems = check_preconditions(union_of_cliques([9], 5), 3)
    assert len(problems) == 2
    assert any("exceeds 7s" in msg for msg in problems)
    assert any("max degree" in msg for msg in problems)
    assert check_preconditions(EMPTY14, 2) == ["p=2 must be at least 3"]


def test_resolve_rigid_host():
    g = union_of_cliques([7], 7)
    trace = EngineTrace()
    out = resolve(g, 3, trace=trace)
    assert isinstance(out, StructureCertificate)
    assert out.s == 3
    # clique unions skip the heuristic and go straight to the exact search
    assert trace.used_exact_fallback
    assert trace.moves == []


def test_resolve_near_rigid_host():
    g = minus_edge(union_of_cliques([7], 7), (0, 1))
    out = resolve(g, 3)
    assert isinstance(out, PackingWitness)
    assert verify_witness(g, out, 4, 3).ok


def test_resolve_empty_host():
    out = resolve(EMPTY14, 3)
    assert isinstance(out, PackingWitness)
    assert verify_witness(EMPTY14, out, 4, 3).ok


def test_resolve_rejects_out_of_regime_hosts():
    with pytest.raises(PreconditionError, match="max degree 7"):
        resolve(union_of_cliques([8], 7), 3)  # n=15, s=4, e=28=7s but deg 7
    with pytest.raises(PreconditionError, match="exceeds 7s"):
        resolve(union_of_cliques([9], 5), 3)
    with pytest.raises(PreconditionError, match="1 <= s <= 3p-1"):
        resolve(from_edge_list(25, []), 3)


def test_resolve_agrees_with_naive_search():
    rng = random.Random(41)
    for _ in range(50):
        s = rng.randrange(3, 9)
        n = 11 + s
        m = rng.randrange(0, 7 * s + 1)
        g = sparse_random(n, m, rng)
        out = resolve(g, 3)
        naive = naive_disjoint_independent_sets(g, 4, 3)
        if isinstance(out, PackingWitness):
            assert naive is not None
            assert verify_witness(g, out, 4, 3).ok
        else:
            assert naive is None
            assert verify_certificate(g, out, 3).ok


def test_resolve_with_zero_budget_falls_back():
    g = minus_edge(union_of_cliques([7], 7), (0, 1))
    trace = EngineTrace()
    out = resolve(g, 3, budget=0, trace=trace)
    assert isinstance(out, PackingWitness)
    assert trace.used_exact_fallback


def test_trace_records_heuristic_activity():
    g = minus_edge(union_of_cliques([7], 7), (0, 1))
    trace = EngineTrace()
    out = resolve(g, 3, trace=trace)
    assert isinstance(out, PackingWitness)
    assert trace.moves or trace.used_exact_fallback
    if trace.moves:
        assert len(trace.inaccessible_sizes) >= len(trace.moves)
