"""Hypergraphs with special vertices, and independence systems.

A hypergraph on vertices 1..n is a family of nonempty edges (vertex sets,
stored as sorted tuples) together with a set of special vertices.  Special
vertices are the ones allowed to repeat colors in marked colorings; they play
no role in plain independence.

An independence system is a downward-closed family of subsets of 1..n
containing the empty set.  Its members are exactly the independent sets of
the hypergraph whose edges are the minimal non-members.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .budget import charge
from .series import ONE, TruncatedSeries

Edge = tuple[int, ...]


def _canon_vertex_sets(n: int, sets: Iterable[Iterable[int]], what: str) -> tuple[Edge, ...]:
    out: set[Edge] = set()
    for raw in sets:
        members = sorted(set(int(v) for v in raw))
        if any(v < 1 or v > n for v in members):
            raise ValueError(f"{what} {tuple(raw)} has vertices outside 1..{n}")
        out.add(tuple(members))
    return tuple(sorted(out, key=lambda e: (len(e), e)))


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[Edge, ...]
    special: tuple[int, ...]


class ShapeFlags(NamedTuple):
    simple: bool
    even: bool


def hypergraph(
    n: int, edges: Iterable[Iterable[int]] = (), special: Iterable[int] = ()
) -> Hypergraph:
    """Build a hypergraph, normalizing edges to canonical sorted form.

    Edges of size 1 are accepted; the empty edge is rejected (it would make
    every coloring count zero by fiat rather than by arithmetic).
    """
    if n < 0:
        raise ValueError("need n >= 0")
    canon = _canon_vertex_sets(n, edges, "edge")
    if any(len(e) == 0 for e in canon):
        raise ValueError("empty edges are not allowed")
    sp = sorted(set(int(v) for v in special))
    if any(v < 1 or v > n for v in sp):
        raise ValueError(f"special vertices {sp} outside 1..{n}")
    return Hypergraph(n, canon, tuple(sp))


def validate(g: Hypergraph) -> ShapeFlags:
    """Shape flags: simple (edges >= 2 and inclusion-free) and even sizes."""
    simple = all(len(e) >= 2 for e in g.edges)
    if simple:
        sets = [frozenset(e) for e in g.edges]
        for a, b in itertools.combinations(sets, 2):
            if a <= b or b <= a:
                simple = False
                break
    even = all(len(e) % 2 == 0 for e in g.edges)
    return ShapeFlags(simple=simple, even=even)


def is_simple(g: Hypergraph) -> bool:
    return validate(g).simple


def is_even(g: Hypergraph) -> bool:
    return validate(g).even


def independent_sets(g: Hypergraph) -> list[Edge]:
    """All edge-free vertex subsets, as sorted tuples in graded lex order."""
    charge(1 << g.n, f"independent-set enumeration over {g.n} vertices")
    edge_sets = [frozenset(e) for e in g.edges]
    verts = range(1, g.n + 1)
    found: list[Edge] = []
    for size in range(g.n + 1):
        for combo in itertools.combinations(verts, size):
            s = frozenset(combo)
            if all(not e <= s for e in edge_sets):
                found.append(combo)
    return found


def _is_independent(edge_sets: Sequence[frozenset[int]], s: frozenset[int]) -> bool:
    return all(not e <= s for e in edge_sets)


def independence_polynomial(g: Hypergraph, trunc: Sequence[int]) -> TruncatedSeries:
    """I(G, x): one squarefree term per independent set, within trunc."""
    trunc = tuple(int(t) for t in trunc)
    if len(trunc) != g.n:
        raise ValueError("truncation vector length must equal vertex count")
    allowed = [v for v in range(1, g.n + 1) if trunc[v - 1] >= 1]
    edge_sets = [frozenset(e) for e in g.edges]
    charge(1 << len(allowed), "independent-set enumeration")
    terms = {}
    for size in range(len(allowed) + 1):
        for combo in itertools.combinations(allowed, size):
            if _is_independent(edge_sets, frozenset(combo)):
                e = [0] * g.n
                for v in combo:
                    e[v - 1] = 1
                terms[tuple(e)] = ONE
    return TruncatedSeries(g.n, trunc, terms)


def is_marked_independent(g: Hypergraph, m: Sequence[int]) -> bool:
    """Whether the multiset with multiplicity vector m is marked independent:
    support independent, and multiplicity <= 1 off the special set."""
    m = tuple(int(v) for v in m)
    if len(m) != g.n or any(v < 0 for v in m):
        raise ValueError(f"bad multiplicity vector {m} for n={g.n}")
    sp = set(g.special)
    if any(mult > 1 and (v + 1) not in sp for v, mult in enumerate(m)):
        return False
    supp = frozenset(v + 1 for v, mult in enumerate(m) if mult > 0)
    return _is_independent([frozenset(e) for e in g.edges], supp)


def marked_independence_series(g: Hypergraph, trunc: Sequence[int]) -> TruncatedSeries:
    """I^mark(G, x): coefficient 1 at exactly the marked-independent vectors.

    Equivalent to summing, over independent sets S, the product of x_v for
    plain v in S and x_v/(1-x_v) for special v in S, truncated at trunc.
    """
    trunc = tuple(int(t) for t in trunc)
    if len(trunc) != g.n:
        raise ValueError("truncation vector length must equal vertex count")
    size = 1
    for t in trunc:
        size *= t + 1
    charge(size, "truncation-window enumeration")
    edge_sets = [frozenset(e) for e in g.edges]
    sp = set(g.special)
    terms = {}
    for e in itertools.product(*(range(t + 1) for t in trunc)):
        if any(mult > 1 and (v + 1) not in sp for v, mult in enumerate(e)):
            continue
        supp = frozenset(v + 1 for v, mult in enumerate(e) if mult > 0)
        if _is_independent(edge_sets, supp):
            terms[e] = ONE
    return TruncatedSeries(g.n, trunc, terms)


def induced_subhypergraph(g: Hypergraph, vertices: Iterable[int]) -> tuple[Hypergraph, tuple[int, ...]]:
    """Restriction to a vertex subset, relabeled 1..|U|.

    Returns (subhypergraph, kept) where kept[i-1] is the original name of new
    vertex i.  Only edges entirely inside the subset survive.
    """
    kept = tuple(sorted(set(int(v) for v in vertices)))
    if any(v < 1 or v > g.n for v in kept):
        raise ValueError(f"vertices {kept} outside 1..{g.n}")
    rename = {old: new + 1 for new, old in enumerate(kept)}
    keep = set(kept)
    edges = [tuple(rename[v] for v in e) for e in g.edges if set(e) <= keep]
    special = [rename[v] for v in g.special if v in keep]
    return hypergraph(len(kept), edges, special), kept


# ---------------------------------------------------------------------------
# independence systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IndependenceSystem:
    n: int
    members: tuple[Edge, ...]


def independence_system(n: int, members: Iterable[Iterable[int]]) -> IndependenceSystem:
    if n < 0:
        raise ValueError("need n >= 0")
    return IndependenceSystem(n, _canon_vertex_sets(n, members, "member"))


class SystemFlags(NamedTuple):
    simple: bool


def system_validate(a: IndependenceSystem) -> SystemFlags:
    """Check downward closure and the empty member; report simplicity.

    Simple means every singleton belongs to the family.
    """
    members = set(frozenset(m) for m in a.members)
    if frozenset() not in members:
        raise ValueError("independence system must contain the empty set")
    for m in a.members:
        for v in m:
            below = frozenset(set(m) - {v})
            if below not in members:
                raise ValueError(
                    f"not downward closed: {m} is a member but {tuple(sorted(below))} is not"
                )
    simple = all(frozenset((v,)) in members for v in range(1, a.n + 1))
    return SystemFlags(simple=simple)


def hypergraph_from_system(
    a: IndependenceSystem, special: Iterable[int] = ()
) -> Hypergraph:
    """The hypergraph whose edges are the minimal non-members of the family.

    Its independent sets are exactly the members; the special set is carried
    through unchanged.
    """
    system_validate(a)
    charge(1 << a.n, f"subset enumeration over {a.n} ground elements")
    members = set(frozenset(m) for m in a.members)
    edges = []
    for size in range(1, a.n + 1):
        for combo in itertools.combinations(range(1, a.n + 1), size):
            s = frozenset(combo)
            if s in members:
                continue
            if all(s - {v} in members for v in combo):
                edges.append(combo)
    return hypergraph(a.n, edges, special)


def system_series(
    a: IndependenceSystem, special: Iterable[int], trunc: Sequence[int]
) -> TruncatedSeries:
    """I_S(A, x): sum over members, x_i per plain element and the truncated
    geometric series x_i + ... + x_i^trunc[i] per special element.

    Warns when some ground element appears in no member (it can then never
    receive a color and every coefficient touching it is zero).
    """
    trunc = tuple(int(t) for t in trunc)
    if len(trunc) != a.n:
        raise ValueError("truncation vector length must equal n")
    sp = sorted(set(int(v) for v in special))
    if any(v < 1 or v > a.n for v in sp):
        raise ValueError(f"special elements {sp} outside 1..{a.n}")
    system_validate(a)
    covered = set(itertools.chain.from_iterable(a.members))
    missing = sorted(set(range(1, a.n + 1)) - covered)
    if missing:
        warnings.warn(
            f"ground elements {missing} appear in no member; "
            "their variables cannot occur",
            stacklevel=2,
        )
    sp_set = set(sp)
    terms: dict[tuple[int, ...], Fraction] = {}
    for member in a.members:
        ranges = []
        ok = True
        for v in member:
            top = trunc[v - 1]
            if top < 1:
                ok = False
                break
            ranges.append(range(1, top + 1) if v in sp_set else range(1, 2))
        if not ok:
            continue
        for mults in itertools.product(*ranges):
            e = [0] * a.n
            for v, mult in zip(member, mults):
                e[v - 1] = mult
            terms[tuple(e)] = ONE
    direct = TruncatedSeries(a.n, trunc, terms)
    # the same series through the minimal-non-member hypergraph, asserted
    via_graph = marked_independence_series(hypergraph_from_system(a, sp), trunc)
    assert direct == via_graph, "system series disagrees with its hypergraph route"
    return direct


# ---------------------------------------------------------------------------
# JSON round-trip
# ---------------------------------------------------------------------------


def hypergraph_to_json(g: Hypergraph) -> dict:
    return {
        "n": g.n,
        "edges": [list(e) for e in g.edges],
        "special": list(g.special),
    }


def hypergraph_from_json(obj: Mapping) -> Hypergraph:
    try:
        n = int(obj["n"])
        edges = obj["edges"]
        special = obj.get("special", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed hypergraph object: {exc}") from exc
    return hypergraph(n, edges, special)


def system_to_json(a: IndependenceSystem) -> dict:
    return {"n": a.n, "members": [list(m) for m in a.members]}


def system_from_json(obj: Mapping) -> IndependenceSystem:
    try:
        n = int(obj["n"])
        members = obj["members"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed independence-system object: {exc}") from exc
    return independence_system(n, members)
