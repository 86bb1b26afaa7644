"""Extremal construction families.

Families that serve as complement-side witnesses (rigid clique unions,
tight families, the near-tight blocks G1..G5) are built directly with a
fixed component labeling: cliques first in descending size, then stars and
matchings, then isolated vertices. Dense families (turan, hub-join) build
the extremal graph itself; TuranValue references resolve them with
complemented=True so that e(complement(built)) always equals the value.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError
from .formulas import ConstructionRef, binom2, hub_join_edges, turan_edges
from .graphs import Graph, complement, complete_graph, disjoint_union, empty_graph, from_edge_list, join


@dataclass(frozen=True)
class ConstructionDescriptor:
    """What was built and which freeness claim it carries.

    claim is a (k, p) pattern; claim_side says which graph avoids k
    disjoint p-cliques: "self" for the built graph, "complement" for its
    complement. Either way the claim is machine-checkable by the packing
    search (k disjoint p-cliques in X = k disjoint independent p-sets in
    the complement of X).
    """

    family: str
    parameters: dict
    expected_edges: int
    claim: tuple[int, int] | None
    claim_side: str | None


def turan_graph(n: int, p: int) -> Graph:
    """Balanced complete p-partite graph; vertex v sits in part v mod p."""
    if p < 1:
        raise PreconditionError("part count must be at least 1")
    if n < 0:
        raise PreconditionError("vertex count must be nonnegative")
    full = (1 << n) - 1
    part_masks = [0] * p
    for v in range(n):
        part_masks[v % p] |= 1 << v
    return Graph(n, [full & ~part_masks[v % p] for v in range(n)])


def hub_join(k: int, n: int, p: int) -> Graph:
    """K_(k-1) joined to the balanced (p-1)-partite graph on the remaining
    n-k+1 vertices; hub vertices come first."""
    if k < 1 or p < 2:
        raise PreconditionError("requires k >= 1 and p >= 2")
    if n < k - 1:
        raise PreconditionError("host smaller than the hub")
    return join(complete_graph(k - 1), turan_graph(n - k + 1, p - 1))


def union_of_cliques(sizes: list[int], isolated: int) -> Graph:
    """Disjoint cliques in descending size order, then isolated vertices."""
    parts = [complete_graph(size) for size in sorted(sizes, reverse=True)]
    parts.append(empty_graph(isolated))
    return disjoint_union(*parts)


def star_graph(leaves: int) -> Graph:
    """K_(1,leaves): hub is vertex 0."""
    return from_edge_list(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def rigid_clique_union(k: int, p: int, s: int) -> Graph:
    """The minimum-edge blocker of k disjoint independent p-sets on
    n = kp-1+s vertices: cliques on 2k-1 (and up to k-2 cliques on 2k)
    vertices carrying (2k-1)s edges, plus isolated vertices.

    Undefined offsets (those needing a negative component count) are
    rejected; for k=4 these are exactly s in {1, 2, 5}.
    """
    if k < 2 or p < 2:
        raise PreconditionError("requires k >= 2 and p >= 2")
    if not 1 <= s <= (k - 1) * p - 1:
        raise PreconditionError(f"offset s={s} outside 1..{(k - 1) * p - 1}")
    big = s % (k - 1)  # count of (2k)-cliques; each covers k units of s
    small, rem = divmod(s - big * k, k - 1)
    if rem or small < 0:
        raise PreconditionError(f"undefined here (k={k}, s={s})")
    n = k * p - 1 + s
    used = small * (2 * k - 1) + big * 2 * k
    if used > n:
        raise PreconditionError(f"undefined here (k={k}, p={p}, s={s})")
    sizes = [2 * k] * big + [2 * k - 1] * small
    return union_of_cliques(sizes, n - used)


def tight_family_a(k: int, p: int) -> Graph:
    """K_(k+1) plus isolated vertices on kp vertices; blocker for k
    disjoint independent p-sets when k <= 2p-2."""
    if k < 1 or p < 3:
        raise PreconditionError("requires k >= 1 and p >= 3")
    if k > 2 * p - 2:
        raise PreconditionError("family A needs k <= 2p-2")
    return union_of_cliques([k + 1], k * p - k - 1)


def tight_family_b(k: int, p: int, x: int) -> Graph:
    """Star K_(1,x), a matching, and isolated vertices on kp vertices;
    blocker for k disjoint independent p-sets when k >= 2p-2."""
    if p < 3:
        raise PreconditionError("requires p >= 3")
    if k < 2 * p - 2:
        raise PreconditionError("family B needs k >= 2p-2")
    lo, hi = k * p - 2 * p + 3, k * p - p + 1
    if not lo <= x <= hi:
        raise PreconditionError(f"star size x={x} outside {lo}..{hi}")
    pairs = k * p - p - x + 1
    singles = 2 * p - k * p + x - 3
    parts = [star_graph(x)]
    parts.extend(complete_graph(2) for _ in range(pairs))
    parts.append(empty_graph(singles))
    return disjoint_union(*parts)


_NEAR_TIGHT = {
    # name -> (clique size, edge count); all live on 4p-5 extra vertices
    "G1": (6, 15),
    "G2": (7, 21),
    "G3": (8, 28),
    "G5": (9, 36),
}


def near_tight_witness(name: str, p: int) -> Graph:
    """The five blocker graphs for hosts just above 4p vertices: G1, G2,
    G3, G5 are a single clique plus isolated vertices; G4 (p=3 only) is
    K_8 plus a star on 8 vertices."""
    if p < 3:
        raise PreconditionError("requires p >= 3")
    if name == "G4":
        if p != 3:
            raise PreconditionError("G4 exists only for p=3")
        return disjoint_union(complete_graph(8), star_graph(7))
    if name not in _NEAR_TIGHT:
        raise PreconditionError(f"unknown witness name {name!r}")
    size, _ = _NEAR_TIGHT[name]
    return union_of_cliques([size], 4 * p - 5)


# -- descriptor plumbing -----------------------------------------------------


def _build_base(family: str, params: dict) -> tuple[Graph, tuple[int, int] | None, str | None]:
    """Return (base graph, claim pattern, claim side for the base graph)."""
    if family == "turan":
        n, p = params["n"], params["p"]
        return turan_graph(n, p), (1, p + 1), "self"
    if family == "hub-join":
        k, n, p = params["k"], params["n"], params["p"]
        return hub_join(k, n, p), (k, p), "self"
    if family == "J":
        p, s = params["p"], params["s"]
        return rigid_clique_union(4, p, s), (4, p), "complement"
    if family == "rigid-union":
        k, p, s = params["k"], params["p"], params["s"]
        return rigid_clique_union(k, p, s), (k, p), "complement"
    if family == "tight-A":
        k, p = params["k"], params["p"]
        return tight_family_a(k, p), (k, p), "complement"
    if family == "tight-B":
        k, p, x = params["k"], params["p"], params["x"]
        return tight_family_b(k, p, x), (k, p), "complement"
    if family in ("G1", "G2", "G3", "G4", "G5"):
        p = params["p"]
        return near_tight_witness(family, p), (4, p), "complement"
    if family == "clique-block":
        r, n = params["r"], params["n"]
        if not 0 <= r <= n:
            raise PreconditionError("clique block larger than host")
        claim = ((r + 1) // 2, 2) if r % 2 == 1 else None
        return union_of_cliques([r], n - r), claim, "self" if claim else None
    if family == "empty":
        n = params["n"]
        k, p = params.get("k"), params.get("p")
        claim = (k, p) if k is not None and p is not None and n < k * p else None
        return empty_graph(n), claim, "complement" if claim else None
    if family == "complete":
        return complete_graph(params["n"]), None, None
    raise PreconditionError(f"unknown construction family {family!r}")


def _flip_side(side: str | None) -> str | None:
    if side is None:
        return None
    return "complement" if side == "self" else "self"


def build_ref(ref: ConstructionRef) -> tuple[Graph, ConstructionDescriptor]:
    """Resolve a ConstructionRef into a graph plus its descriptor."""
    base, claim, side = _build_base(ref.family, ref.params)
    g = complement(base) if ref.complemented else base
    if ref.complemented:
        side = _flip_side(side)
    desc = ConstructionDescriptor(
        family=ref.family,
        parameters=dict(ref.params),
        expected_edges=_expected_edges(ref),
        claim=claim,
        claim_side=side,
    )
    if g.edge_count() != desc.expected_edges:
        raise PreconditionError(
            f"construction {ref.family} edge count {g.edge_count()} != "
            f"expected {desc.expected_edges}")
    return g, desc


def _expected_edges(ref: ConstructionRef) -> int:
    """Closed-form edge count of the graph build_ref returns."""
    family, params = ref.family, ref.params
    if family == "turan":
        base = turan_edges(params["n"], params["p"])
        total = binom2(params["n"])
    elif family == "hub-join":
        base = hub_join_edges(params["k"], params["n"], params["p"])
        total = binom2(params["n"])
    elif family in ("J", "rigid-union"):
        k = 4 if family == "J" else params["k"]
        base = (2 * k - 1) * params["s"]
        total = binom2(k * params["p"] - 1 + params["s"])
    elif family == "tight-A":
        base = binom2(params["k"] + 1)
        total = binom2(params["k"] * params["p"])
    elif family == "tight-B":
        base = params["k"] * params["p"] - params["p"] + 1
        total = binom2(params["k"] * params["p"])
    elif family in ("G1", "G2", "G3", "G5"):
        base = _NEAR_TIGHT[family][1]
        total = binom2(_NEAR_TIGHT[family][0] + 4 * params["p"] - 5)
    elif family == "G4":
        base = 35
        total = binom2(16)
    elif family == "clique-block":
        base = binom2(params["r"])
        total = binom2(params["n"])
    elif family == "empty":
        base = 0
        total = binom2(params["n"])
    elif family == "complete":
        base = binom2(params["n"])
        total = base
    else:  # pragma: no cover - _build_base already rejected it
        raise PreconditionError(f"unknown construction family {family!r}")
    return total - base if ref.complemented else base


# CLI-facing family registry: which parameters each family takes.
CLI_FAMILIES = {
    "turan": ("n", "p"),
    "hub-join": ("k", "n", "p"),
    "J": ("p", "s"),
    "rigid-union": ("k", "p", "s"),
    "tight-A": ("k", "p"),
    "tight-B": ("k", "p", "x"),
    "G1": ("p",),
    "G2": ("p",),
    "G3": ("p",),
    "G4": ("p",),
    "G5": ("p",),
    "clique-block": ("r", "n"),
    "empty": ("n",),
    "complete": ("n",),
}


def build_family(family: str, params: dict) -> tuple[Graph, ConstructionDescriptor]:
    """CLI entry: build the family's base graph (never complemented)."""
    if family not in CLI_FAMILIES:
        raise PreconditionError(f"unknown construction family {family!r}")
    missing = [name for name in CLI_FAMILIES[family] if name not in params]
    if missing:
        raise PreconditionError(
            f"family {family} needs parameters: {', '.join(missing)}")
    try:
        return build_ref(ConstructionRef(family, params))
    except PreconditionError as exc:
        raise PreconditionError(f"{family}: {exc}") from None


def claim_holds(g: Graph, desc: ConstructionDescriptor,
                guard_n: int | None = None) -> bool | None:
    """Check the descriptor's freeness claim by exact packing search.

    Returns None when the descriptor carries no claim. May raise
    SizeGuardError on hosts past the packing guard.
    """
    from .packing import find_clique_packing

    if desc.claim is None:
        return None
    k, p = desc.claim
    side = g if desc.claim_side == "self" else complement(g)
    return find_clique_packing(side, k, p, guard_n=guard_n) is None
