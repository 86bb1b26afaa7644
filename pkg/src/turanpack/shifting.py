"""Partition-shifting engine for the four-block dichotomy.

Given a sparse host (n = 4p-1+s vertices, at most 7s edges, max degree at
most 6), `resolve` either exhibits four disjoint independent p-sets or
certifies that the host is a disjoint union of 7-cliques plus isolated
vertices. The engine keeps a five-class partition: class 0 holds the s
leftover vertices, classes 1..4 are independent with sizes (p, p, p, p-1);
class 4 (or whichever class is currently one short) is the destination.
Vertices move along accessible paths of the class digraph; budgeted repair
moves stir stuck states; an exact packing search settles whatever is left.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PreconditionError, SoundnessAlarm
from .graphs import Graph, VertexSet, bits, components
from .packing import (PackingWitness, VerificationReport,
                      find_disjoint_independent_sets, verify_witness)

CLASS_COUNT = 5


@dataclass(frozen=True)
class PartitionState:
    """Five-class partition; classes[1..4] independent, at most one of them
    one vertex short of p (the destination)."""

    graph: Graph
    p: int
    classes: tuple[int, ...]  # vertex masks

    def __post_init__(self):
        if len(self.classes) != CLASS_COUNT:
            raise PreconditionError("partition needs exactly five classes")
        union = 0
        for mask in self.classes:
            if mask & union:
                raise PreconditionError("classes overlap")
            union |= mask
        if union != self.graph.full_mask():
            raise PreconditionError("classes do not cover every vertex")
        deficient = 0
        for i in range(1, CLASS_COUNT):
            size = self.classes[i].bit_count()
            if size == self.p - 1:
                deficient += 1
            elif size != self.p:
                raise PreconditionError(
                    f"class {i} has size {size}, expected {self.p - 1} or {self.p}")
            if not self.graph.is_independent(self.classes[i]):
                raise PreconditionError(f"class {i} is not independent")
        if deficient > 1:
            raise PreconditionError("more than one deficient class")

    @property
    def destination(self) -> int | None:
        """Index of the deficient class, or None if classes 1..4 all have
        size p (a witness state)."""
        for i in range(1, CLASS_COUNT):
            if self.classes[i].bit_count() == self.p - 1:
                return i
        return None

    def class_of(self, v: int) -> int:
        for i, mask in enumerate(self.classes):
            if mask >> v & 1:
                return i
        raise PreconditionError(f"vertex {v} not in any class")

    def witness(self) -> PackingWitness | None:
        if self.destination is not None:
            return None
        n = self.graph.n
        masks = sorted(self.classes[1:], key=lambda m: m & -m)
        return PackingWitness(tuple(VertexSet(n, m) for m in masks))


@dataclass(frozen=True)
class AuxDigraph:
    """Movability digraph on the five classes: arc (i, j) iff some vertex
    of class i has no neighbor in class j; the witness is the lowest such
    vertex. Accessible classes are those with a directed path to the
    destination."""

    arcs: dict[tuple[int, int], int]
    destination: int
    accessible: frozenset[int]

    @property
    def inaccessible(self) -> frozenset[int]:
        return frozenset(range(CLASS_COUNT)) - self.accessible


@dataclass(frozen=True)
class StructureCertificate:
    """The rigid outcome: the host is a union of 7-cliques plus isolated
    vertices, with the bookkeeping facts re-checked at construction."""

    cliques: tuple[VertexSet, ...]
    isolated: VertexSet
    s: int
    edges: int
    max_degree: int


@dataclass(frozen=True)
class Move:
    kind: str
    path: tuple[int, ...] = ()
    movers: tuple[int, ...] = ()
    leftovers: tuple[int, ...] = ()  # class-0 vertices entering a class
    solo: int | None = None
    target_class: int | None = None


@dataclass
class EngineTrace:
    """Optional per-rebuild observations, kept for empirical study."""

    inaccessible_sizes: list[int] = field(default_factory=list)
    moves: list[str] = field(default_factory=list)
    used_exact_fallback: bool = False


# -- construction of the initial partition ------------------------------------


def _greedy_fill(g: Graph, order: list[int], sizes: tuple[int, ...]) -> list[int] | None:
    used = 0
    masks = []
    for size in sizes:
        mask = 0
        count = 0
        for v in order:
            bit = 1 << v
            if used & bit or g.adj[v] & mask:
                continue
            mask |= bit
            count += 1
            if count == size:
                break
        if count < size:
            return None
        masks.append(mask)
        used |= mask
    return masks


def init_partition(g: Graph, p: int) -> PartitionState | None:
    """Greedy seed: three independent p-sets and one (p-1)-set by lowest
    index, retried in ascending-degree order; None when both passes fail."""
    s = g.n - (4 * p - 1)
    if p < 3 or not 1 <= s <= 3 * p - 1:
        raise PreconditionError(
            f"init_partition needs p >= 3 and n = 4p-1+s with 1 <= s <= 3p-1 "
            f"(n={g.n}, p={p})")
    for order in (list(range(g.n)),
                  sorted(range(g.n), key=lambda v: (g.degree(v), v))):
        masks = _greedy_fill(g, order, (p, p, p, p - 1))
        if masks is not None:
            leftover = g.full_mask() & ~(masks[0] | masks[1] | masks[2] | masks[3])
            return PartitionState(g, p, (leftover, *masks))
    return None


# -- aux digraph ---------------------------------------------------------------


def build_aux_digraph(st: PartitionState) -> AuxDigraph:
    g = st.graph
    dest = st.destination
    if dest is None:
        raise PreconditionError("witness state has no destination class")
    arcs: dict[tuple[int, int], int] = {}
    # Arcs never target class 0: vertices shift between independent classes
    # only, while class 0 serves as a source.
    for i in range(CLASS_COUNT):
        for j in range(1, CLASS_COUNT):
            if i == j:
                continue
            for v in bits(st.classes[i]):
                if g.adj[v] & st.classes[j] == 0:
                    arcs[(i, j)] = v
                    break
    accessible = {dest}
    frontier = [dest]
    while frontier:
        nxt = []
        for j in frontier:
            for i in range(CLASS_COUNT):
                if i not in accessible and (i, j) in arcs:
                    accessible.add(i)
                    nxt.append(i)
        frontier = nxt
    return AuxDigraph(arcs, dest, frozenset(accessible))


def _next_hops(aux: AuxDigraph) -> dict[int, int]:
    """For each accessible class, the next class on a shortest path to the
    destination (lowest-index tie break)."""
    dist = {aux.destination: 0}
    hops: dict[int, int] = {}
    frontier = [aux.destination]
    while frontier:
        nxt = []
        for j in sorted(frontier):
            for i in range(CLASS_COUNT):
                if i not in dist and (i, j) in aux.arcs:
                    dist[i] = dist[j] + 1
                    hops[i] = j
                    nxt.append(i)
        frontier = nxt
    return hops


def accessible_path(aux: AuxDigraph, start: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Shortest class path from start to the destination plus the arc
    witnesses as movers."""
    if start not in aux.accessible:
        raise PreconditionError(f"class {start} is not accessible")
    hops = _next_hops(aux)
    path = [start]
    while path[-1] != aux.destination:
        path.append(hops[path[-1]])
    movers = tuple(aux.arcs[(i, j)] for i, j in zip(path, path[1:]))
    return tuple(path), movers


def solo_neighbor(st: PartitionState, v: int, j: int) -> int | None:
    """The unique neighbor of v inside class j, or None if v has zero or
    several neighbors there. v must not itself lie in class j."""
    if not 0 <= j < CLASS_COUNT:
        raise PreconditionError(f"class index {j} out of range")
    if st.classes[j] >> v & 1:
        raise PreconditionError(f"vertex {v} lies in class {j}")
    inside = st.graph.adj[v] & st.classes[j]
    if inside.bit_count() == 1:
        return inside.bit_length() - 1
    return None


def apply_shift(st: PartitionState, path: tuple[int, ...],
                movers: tuple[int, ...]) -> PartitionState:
    """Move movers[i] from class path[i] to class path[i+1], front to back,
    checking movability against the classes as they evolve."""
    if len(path) < 2 or len(set(path)) != len(path):
        raise PreconditionError("path must visit at least two distinct classes")
    if len(movers) != len(path) - 1:
        raise PreconditionError("need exactly one mover per path arc")
    classes = list(st.classes)
    for step, (i, j) in enumerate(zip(path, path[1:])):
        v = movers[step]
        bit = 1 << v
        if not classes[i] & bit:
            raise PreconditionError(f"mover {v} is not in class {i}")
        if st.graph.adj[v] & classes[j]:
            raise PreconditionError(f"mover {v} has neighbors in class {j}")
        classes[i] &= ~bit
        classes[j] |= bit
    return PartitionState(st.graph, st.p, tuple(classes))


def check_blocked_domination(st: PartitionState, aux: AuxDigraph) -> bool:
    """Every vertex of every inaccessible class must have at least one
    neighbor in every accessible class (recomputed from the graph; a
    corrupted aux digraph makes this fail)."""
    g = st.graph
    for b in aux.inaccessible:
        for a in aux.accessible:
            if a == b:
                continue
            for v in bits(st.classes[b]):
                if g.adj[v] & st.classes[a] == 0:
                    return False
    return True


# -- move proposals ------------------------------------------------------------


def propose_moves(st: PartitionState, aux: AuxDigraph,
                  last_swap: tuple[int, int] | None = None) -> list[Move]:
    """Candidate moves in priority order. The first three kinds produce a
    witness immediately; the last two stir a stuck state."""
    g = st.graph
    moves: list[Move] = []
    if 0 in aux.accessible:
        path, movers = accessible_path(aux, 0)
        moves.append(Move("path-shift", path=path, movers=movers))
    class0 = st.classes[0]
    # Two nonadjacent leftover vertices sharing a solo neighbor in an
    # accessible class: swap them in after routing the shared neighbor away.
    for j in sorted(aux.accessible - {0, aux.destination}):
        by_solo: dict[int, list[int]] = {}
        for x in bits(class0):
            v = solo_neighbor(st, x, j)
            if v is not None:
                by_solo.setdefault(v, []).append(x)
        for v in sorted(by_solo):
            xs = by_solo[v]
            pair = next(((a, b) for ai, a in enumerate(xs) for b in xs[ai + 1:]
                         if not g.has_edge(a, b)), None)
            if pair is None:
                continue
            path, movers = accessible_path(aux, j)
            moves.append(Move("double-solo", path=path, movers=movers,
                              leftovers=pair, solo=v, target_class=j))
            break
    # One leftover vertex whose solo neighbor can move straight to the
    # destination: re-root in a single compound move.
    dest_mask = st.classes[aux.destination]
    for j in range(1, CLASS_COUNT):
        if j == aux.destination:
            continue
        for x in bits(class0):
            v = solo_neighbor(st, x, j)
            if v is not None and g.adj[v] & dest_mask == 0:
                moves.append(Move("solo-reroot", leftovers=(x,), solo=v,
                                  target_class=j))
                break
        else:
            continue
        break
    # Stirring moves: re-root the destination, or swap a leftover vertex
    # with its solo neighbor in an accessible class.
    for j in range(1, CLASS_COUNT):
        if j != aux.destination and (j, aux.destination) in aux.arcs:
            mover = aux.arcs[(j, aux.destination)]
            if last_swap != (mover, j):
                moves.append(Move("re-root", path=(j, aux.destination),
                                  movers=(mover,), target_class=j))
                break
    for j in sorted(aux.accessible - {0, aux.destination}):
        done = False
        for x in bits(class0):
            v = solo_neighbor(st, x, j)
            if v is not None and last_swap != (x, j):
                moves.append(Move("solo-swap", leftovers=(x,), solo=v,
                                  target_class=j))
                done = True
                break
        if done:
            break
    return moves


def _apply_witness_move(st: PartitionState, move: Move) -> PartitionState:
    """Execute one of the witness-producing move kinds."""
    if move.kind == "path-shift":
        return apply_shift(st, move.path, move.movers)
    if move.kind == "double-solo":
        x, x2 = move.leftovers
        j = move.target_class
        classes = list(st.classes)
        if move.movers[0] == move.solo:
            shifted = apply_shift(st, move.path, move.movers)
            classes = list(shifted.classes)
            classes[0] &= ~(1 << x)
            classes[j] |= 1 << x
            return PartitionState(st.graph, st.p, tuple(classes))
        # Swap the solo neighbor out for both leftovers, then route the
        # path mover onward to refill the destination.
        classes[j] = (classes[j] & ~(1 << move.solo)) | (1 << x) | (1 << x2)
        classes[0] = (classes[0] & ~((1 << x) | (1 << x2))) | (1 << move.solo)
        bulged = _RawState(st.graph, st.p, classes)
        for step, (a, b) in enumerate(zip(move.path, move.path[1:])):
            v = move.movers[step]
            bit = 1 << v
            if not bulged.classes[a] & bit or st.graph.adj[v] & bulged.classes[b]:
                raise PreconditionError("double-solo move no longer applies")
            bulged.classes[a] &= ~bit
            bulged.classes[b] |= bit
        return PartitionState(st.graph, st.p, tuple(bulged.classes))
    if move.kind == "solo-reroot":
        x = move.leftovers[0]
        j = move.target_class
        dest = st.destination
        classes = list(st.classes)
        classes[j] &= ~(1 << move.solo)
        classes[dest] |= 1 << move.solo
        classes[j] |= 1 << x
        classes[0] &= ~(1 << x)
        return PartitionState(st.graph, st.p, tuple(classes))
    raise PreconditionError(f"not a witness move: {move.kind}")


class _RawState:
    """Mutable scratch copy used while a compound move is in flight."""

    def __init__(self, graph: Graph, p: int, classes: list[int]):
        self.graph = graph
        self.p = p
        self.classes = classes


def _apply_stir_move(st: PartitionState, move: Move) -> tuple[PartitionState, tuple[int, int]]:
    classes = list(st.classes)
    if move.kind == "re-root":
        j, dest = move.path
        v = move.movers[0]
        classes[j] &= ~(1 << v)
        classes[dest] |= 1 << v
        # Class j is now the deficient one; remember the move so the next
        # proposal round does not immediately undo it.
        return PartitionState(st.graph, st.p, tuple(classes)), (v, dest)
    if move.kind == "solo-swap":
        x = move.leftovers[0]
        v = move.solo
        j = move.target_class
        classes[j] = (classes[j] & ~(1 << v)) | (1 << x)
        classes[0] = (classes[0] & ~(1 << x)) | (1 << v)
        return PartitionState(st.graph, st.p, tuple(classes)), (v, j)
    raise PreconditionError(f"not a stirring move: {move.kind}")


# -- certificate ---------------------------------------------------------------


def certify_k7_structure(g: Graph, p: int) -> StructureCertificate | None:
    """Certificate that g is exactly (s/3) disjoint 7-cliques plus isolated
    vertices for s = n - (4p-1); None when g is not of this form."""
    if p < 1:
        raise PreconditionError("p must be positive")
    s = g.n - (4 * p - 1)
    cliques = []
    isolated = 0
    for comp in components(g):
        size = comp.bit_count()
        if size == 1:
            isolated |= comp
        elif size == 7 and g.is_clique(comp):
            cliques.append(comp)
        else:
            return None
    if s < 1 or s % 3 != 0 or len(cliques) != s // 3:
        return None
    return StructureCertificate(
        cliques=tuple(VertexSet(g.n, m) for m in cliques),
        isolated=VertexSet(g.n, isolated),
        s=s,
        edges=g.edge_count(),
        max_degree=g.max_degree(),
    )


def verify_certificate(g: Graph, cert: StructureCertificate, p: int) -> VerificationReport:
    """Re-check a structure certificate from scratch."""
    s = g.n - (4 * p - 1)
    if cert.s != s:
        return VerificationReport(False, f"certificate s={cert.s} but n-(4p-1)={s}")
    if s % 3 != 0 or len(cert.cliques) != s // 3:
        return VerificationReport(False, "clique count does not match s/3")
    union = 0
    for i, vs in enumerate(cert.cliques):
        if len(vs) != 7 or not g.is_clique(vs.mask):
            return VerificationReport(False, f"component {i} is not a 7-clique")
        if vs.mask & union:
            return VerificationReport(False, f"component {i} overlaps")
        union |= vs.mask
    if union & cert.isolated.mask or (union | cert.isolated.mask) != g.full_mask():
        return VerificationReport(False, "cliques plus isolated set do not partition")
    for v in cert.isolated:
        if g.adj[v]:
            return VerificationReport(False, f"vertex {v} is not isolated")
    if cert.edges != g.edge_count() or cert.edges != 7 * s:
        return VerificationReport(False, "edge count mismatch")
    if cert.max_degree != g.max_degree() or cert.max_degree > 6:
        return VerificationReport(False, "max degree mismatch")
    return VerificationReport(True)


# -- driver --------------------------------------------------------------------


def check_preconditions(g: Graph, p: int) -> list[str]:
    """Diagnostics for the resolve preconditions; empty when satisfied."""
    problems = []
    if p < 3:
        problems.append(f"p={p} must be at least 3")
        return problems
    s = g.n - (4 * p - 1)
    if not 1 <= s <= 3 * p - 1:
        problems.append(
            f"n={g.n} must equal 4p-1+s with 1 <= s <= 3p-1 (got s={s})")
    else:
        if g.edge_count() > 7 * s:
            problems.append(f"edge count {g.edge_count()} exceeds 7s = {7 * s}")
    if g.max_degree() > 6:
        problems.append(f"max degree {g.max_degree()} exceeds 6")
    return problems


def resolve(g: Graph, p: int, budget: int | None = None,
            guard_n: int | None = None,
            trace: EngineTrace | None = None) -> PackingWitness | StructureCertificate:
    """Witness four disjoint independent p-sets or certify the rigid form.

    Raises PreconditionError when the host is outside the covered regime
    and SoundnessAlarm if neither outcome can be established (which would
    contradict the dichotomy the engine is built on).
    """
    problems = check_preconditions(g, p)
    if problems:
        raise PreconditionError("; ".join(problems))
    if budget is None:
        budget = 10 * g.n

    witness = None
    all_cliques = all(
        g.is_clique(comp) for comp in components(g))
    if not all_cliques:
        witness = _heuristic_phase(g, p, budget, trace)
    if witness is None:
        witness = find_disjoint_independent_sets(g, 4, p, guard_n=guard_n)
        if trace is not None:
            trace.used_exact_fallback = True
    if witness is not None:
        report = verify_witness(g, witness, 4, p, "independent")
        if not report.ok:
            raise SoundnessAlarm(f"engine produced a bad witness: {report.violation}")
        return witness
    cert = certify_k7_structure(g, p)
    if cert is None:
        raise SoundnessAlarm(
            "no witness found and host is not the rigid clique union; "
            "this contradicts the engine's dichotomy")
    report = verify_certificate(g, cert, p)
    if not report.ok:
        raise SoundnessAlarm(f"bad structure certificate: {report.violation}")
    return cert


def _heuristic_phase(g: Graph, p: int, budget: int,
                     trace: EngineTrace | None) -> PackingWitness | None:
    st = init_partition(g, p)
    if st is None:
        return None
    last_swap: tuple[int, int] | None = None
    for _ in range(budget):
        aux = build_aux_digraph(st)
        if trace is not None:
            trace.inaccessible_sizes.append(len(aux.inaccessible))
        moves = propose_moves(st, aux, last_swap)
        if not moves:
            return None
        move = moves[0]
        if trace is not None:
            trace.moves.append(move.kind)
        if move.kind in ("path-shift", "double-solo", "solo-reroot"):
            ended = _apply_witness_move(st, move)
            return ended.witness()
        st, last_swap = _apply_stir_move(st, move)
    return None
