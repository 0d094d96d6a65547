"""r-sets, colex order and r-uniform hypergraphs on the vertex set [n].

An r-set is a plain tuple of strictly increasing positive ints. Vertex
labels are 1-based everywhere.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InvalidArgument, PreconditionViolation


def rset(elements: Iterable[int]) -> tuple[int, ...]:
    """Validate and sort an iterable of vertex labels into an r-set."""
    out = tuple(sorted(int(v) for v in elements))
    if any(v < 1 for v in out):
        raise InvalidArgument(f"vertex labels must be positive: {out}")
    if len(set(out)) != len(out):
        raise InvalidArgument(f"repeated vertex in {out}")
    return out


# ---------------------------------------------------------------- colex order


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def colex_compare(a: Sequence[int], b: Sequence[int]) -> Ordering:
    """A < B in colex iff the largest element of A ^ B lies in B."""
    sa, sb = set(a), set(b)
    if len(sa) != len(sb):
        raise InvalidArgument("colex comparison needs sets of equal size")
    diff = sa ^ sb
    if not diff:
        return Ordering.EQUAL
    return Ordering.LESS if max(diff) in sb else Ordering.GREATER


def colex_rank(a: Sequence[int]) -> int:
    a = rset(a)
    return sum(comb(v - 1, k) for k, v in enumerate(a, start=1))


def colex_unrank(r: int, k: int) -> tuple[int, ...]:
    if r < 1:
        raise InvalidArgument("r must be positive")
    if k < 0:
        raise InvalidArgument("rank must be nonnegative")
    out = []
    for s in range(r, 0, -1):
        # largest v with comb(v - 1, s) <= k
        v = s
        while comb(v, s) <= k:
            v += 1
        out.append(v)
        k -= comb(v - 1, s)
    return tuple(reversed(out))


def colex_sorted(sets: Iterable[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted((rset(s) for s in sets), key=colex_rank))


# ---------------------------------------------------------------- hypergraphs


@dataclass(frozen=True)
class Hypergraph:
    """An r-uniform hypergraph on [n].

    ``edges`` is normalised on construction: each edge sorted ascending,
    the family sorted by colex rank, duplicates rejected.
    """

    r: int
    n: int
    edges: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        if self.r < 1:
            raise InvalidArgument(f"uniformity must be positive, got {self.r}")
        if self.n < 0:
            raise InvalidArgument(f"vertex count must be nonnegative, got {self.n}")
        edges = colex_sorted(self.edges)
        for e in edges:
            if len(e) != self.r:
                raise InvalidArgument(f"edge {e} does not have {self.r} vertices")
            if e[-1] > self.n:
                raise InvalidArgument(f"edge {e} leaves the vertex set [{self.n}]")
        if len(set(edges)) != len(edges):
            raise InvalidArgument("duplicate edges")
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    @cached_property
    def edge_array(self) -> np.ndarray:
        """0-based (m, r) integer array of edges."""
        return np.array(self.edges, dtype=np.intp).reshape(-1, self.r) - 1

    def __contains__(self, e) -> bool:
        return tuple(sorted(e)) in self.edge_set

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def with_edges(self, edges, n: int | None = None) -> "Hypergraph":
        return Hypergraph(self.r, self.n if n is None else n, tuple(edges))

    def relabel(self, perm: Sequence[int]) -> "Hypergraph":
        """Apply ``v -> perm[v - 1]`` to every edge."""
        return self.with_edges(tuple(rset(perm[v - 1] for v in e) for e in self.edges))

    def is_subgraph_of(self, other: "Hypergraph") -> bool:
        return self.r == other.r and self.edge_set <= other.edge_set

    # text format: one JSON object per line
    def to_record(self) -> dict:
        return {"r": self.r, "n": self.n, "edges": [list(e) for e in self.edges]}

    def dumps(self) -> str:
        return json.dumps(self.to_record())

    @classmethod
    def from_record(cls, rec: dict) -> "Hypergraph":
        try:
            return cls(int(rec["r"]), int(rec["n"]), tuple(tuple(e) for e in rec["edges"]))
        except (KeyError, TypeError) as exc:
            raise InvalidArgument(f"malformed hypergraph record: {exc}") from exc

    @classmethod
    def loads(cls, line: str) -> "Hypergraph":
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise InvalidArgument(f"malformed hypergraph line: {exc}") from exc
        if not isinstance(rec, dict):
            raise InvalidArgument("hypergraph line must be a JSON object")
        return cls.from_record(rec)


def read_hypergraphs(stream) -> Iterator[Hypergraph]:
    for line in stream:
        if line.strip():
            yield Hypergraph.loads(line)


def write_hypergraphs(graphs: Iterable[Hypergraph], stream) -> None:
    for g in graphs:
        stream.write(g.dumps() + "\n")


def make_colex_graph(r: int, m: int) -> Hypergraph:
    """The first m r-sets in colex order (C_{r,m})."""
    if m < 0:
        raise InvalidArgument("edge count must be nonnegative")
    edges = tuple(colex_unrank(r, k) for k in range(m))
    n = edges[-1][-1] if edges else r
    return Hypergraph(r, n, edges)


def make_complete(t: int, r: int) -> Hypergraph:
    if t < r:
        raise InvalidArgument(f"complete {r}-graph needs at least {r} vertices")
    return Hypergraph(r, t, tuple(itertools.combinations(range(1, t + 1), r)))


# ---------------------------------------------------------------- neighborhoods


def _check_vertex(G: Hypergraph, v: int) -> None:
    if not 1 <= v <= G.n:
        raise InvalidArgument(f"vertex {v} outside [{G.n}]")


def link(G: Hypergraph, i: int) -> tuple[tuple[int, ...], ...]:
    """E_i: the (r-1)-sets A with A + {i} an edge."""
    _check_vertex(G, i)
    return colex_sorted(tuple(v for v in e if v != i) for e in G.edges if i in e)


def pair_link(G: Hypergraph, i: int, j: int) -> tuple[tuple[int, ...], ...]:
    """E_ij: the (r-2)-sets B with B + {i, j} an edge."""
    _check_vertex(G, i)
    _check_vertex(G, j)
    if i == j:
        raise InvalidArgument("pair link needs distinct vertices")
    return colex_sorted(
        tuple(v for v in e if v not in (i, j)) for e in G.edges if i in e and j in e
    )


def link_complement(G: Hypergraph, i: int) -> tuple[tuple[int, ...], ...]:
    """E_i^c: (r-1)-sets A avoiding i with A + {i} a non-edge."""
    _check_vertex(G, i)
    others = [v for v in range(1, G.n + 1) if v != i]
    return colex_sorted(
        A for A in itertools.combinations(others, G.r - 1) if rset(A + (i,)) not in G.edge_set
    )


def pair_link_complement(G: Hypergraph, i: int, j: int) -> tuple[tuple[int, ...], ...]:
    _check_vertex(G, i)
    _check_vertex(G, j)
    if i == j:
        raise InvalidArgument("pair link needs distinct vertices")
    others = [v for v in range(1, G.n + 1) if v not in (i, j)]
    return colex_sorted(
        B for B in itertools.combinations(others, G.r - 2) if rset(B + (i, j)) not in G.edge_set
    )


def link_difference(G: Hypergraph, i: int, j: int) -> tuple[tuple[int, ...], ...]:
    """E_{i minus j} = E_i intersected with E_j^c.

    Members avoid both i and j: A + {i} is an edge and A + {j} is not.
    """
    if i == j:
        raise InvalidArgument("link difference needs distinct vertices")
    comp = set(link_complement(G, j))
    return tuple(A for A in link(G, i) if A in comp)


def neighborhoods(G: Hypergraph, i: int, j: int | None = None, kind: str = "link"):
    """Dispatch to the neighborhood families.

    kind is one of ``link`` (E_i, or E_ij when j is given), ``complement``
    (E_i^c / E_ij^c) or ``difference`` (E_{i minus j}, needs j).
    """
    if kind == "link":
        return link(G, i) if j is None else pair_link(G, i, j)
    if kind == "complement":
        return link_complement(G, i) if j is None else pair_link_complement(G, i, j)
    if kind == "difference":
        if j is None:
            raise InvalidArgument("difference neighborhood needs a second vertex")
        return link_difference(G, i, j)
    raise InvalidArgument(f"unknown neighborhood kind {kind!r}")


# ---------------------------------------------------------------- compression


def unit_shifts(e: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """r-sets obtained from e by lowering one coordinate by one."""
    for s, v in enumerate(e):
        lower = e[s - 1] if s else 0
        if v - 1 > lower:
            yield e[:s] + (v - 1,) + e[s + 1 :]


def is_left_compressed(G: Hypergraph) -> bool:
    # unit decrements generate coordinatewise domination among sorted r-sets
    edges = G.edge_set
    return all(d in edges for e in G.edges for d in unit_shifts(e))


def compress(G: Hypergraph, i: int, j: int) -> Hypergraph:
    """Shift j to i in every edge where that produces a new edge."""
    _check_vertex(G, i)
    _check_vertex(G, j)
    if not i < j:
        raise InvalidArgument("compression needs i < j")
    edges = G.edge_set
    out = []
    for e in G.edges:
        if j in e and i not in e:
            img = rset([i if v == j else v for v in e])
            out.append(e if img in edges else img)
        else:
            out.append(e)
    return G.with_edges(out)


def compress_sweep(G: Hypergraph) -> Hypergraph:
    """One pass of compress(i, j) over all pairs i < j in lexicographic order."""
    for i, j in itertools.combinations(range(1, G.n + 1), 2):
        G = compress(G, i, j)
    return G


def compress_to_fixpoint(G: Hypergraph) -> Hypergraph:
    while True:
        H = compress_sweep(G)
        if H.edge_set == G.edge_set:
            return H
        G = H


# ---------------------------------------------------------------- descendants


class Relation(enum.Enum):
    NONE = "none"
    DESCENDANT = "descendant"
    DIRECT_DESCENDANT = "direct-descendant"
    ANCESTOR = "ancestor"
    DIRECT_ANCESTOR = "direct-ancestor"
    EQUAL = "equal"


def descendant_relation(e: Sequence[int], f: Sequence[int]) -> Relation:
    """How e relates to f: e is a descendant of f when it is coordinatewise
    no larger and has a strictly smaller sum (direct when the sums differ by 1).
    """
    e, f = rset(e), rset(f)
    if len(e) != len(f):
        raise InvalidArgument("descendant relation needs sets of equal size")
    if e == f:
        return Relation.EQUAL
    if all(a <= b for a, b in zip(e, f)):
        return Relation.DIRECT_DESCENDANT if sum(f) == sum(e) + 1 else Relation.DESCENDANT
    if all(a >= b for a, b in zip(e, f)):
        return Relation.DIRECT_ANCESTOR if sum(e) == sum(f) + 1 else Relation.ANCESTOR
    return Relation.NONE


def descendants(e: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All proper descendants of e."""
    e = rset(e)

    def rec(prefix, s):
        if s == len(e):
            if prefix != e:
                yield prefix
            return
        lo = prefix[-1] + 1 if prefix else 1
        for v in range(lo, e[s] + 1):
            yield from rec(prefix + (v,), s + 1)

    yield from rec((), 0)


def _lowest_missing_descendant(e, edges, forbidden):
    missing = [d for d in descendants(e) if d not in edges and d != forbidden]
    if not missing:
        return None
    # minimal elements of the descendant order, ties by colex rank
    minimal = [
        d for d in missing
        if not any(descendant_relation(c, d) in (Relation.DESCENDANT, Relation.DIRECT_DESCENDANT)
                   for c in missing)
    ]
    return min(minimal, key=colex_rank)


def normalize_left_compressed(G: Hypergraph, t: int | None = None) -> Hypergraph:
    """Push edges down the descendant order while keeping (t-r)...(t-1) out.

    Step one swaps the r-set (t-r)...(t-1), if present, for the colex-first
    missing r-set of [t-1]. Step two repeatedly replaces an edge having a
    missing descendant (other than that r-set) by a lowest such descendant.
    """
    t = G.n if t is None else t
    r = G.r
    if G.n > t:
        raise InvalidArgument(f"graph has {G.n} vertices, more than t={t}")
    if t - 1 < r:
        raise InvalidArgument("need t - 1 >= r")
    inner = list(itertools.combinations(range(1, t), r))
    edges = set(G.edges)
    if all(e in edges for e in inner):
        raise PreconditionViolation(f"graph contains the clique [{t - 1}]^({r})")
    top = tuple(range(t - r, t))
    if top in edges:
        spare = min((e for e in inner if e not in edges), key=colex_rank)
        edges.remove(top)
        edges.add(spare)
    while True:
        for e in sorted(edges, key=colex_rank, reverse=True):
            d = _lowest_missing_descendant(e, edges, top)
            if d is not None:
                edges.remove(e)
                edges.add(d)
                break
        else:
            return Hypergraph(r, t, tuple(edges))
