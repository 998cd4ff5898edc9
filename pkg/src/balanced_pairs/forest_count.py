"""Exact extension counting in O(n^2) when the cover graph is a forest.

Each cover tree is rooted anywhere; a bottom-up pass computes, per
subtree, how many of its linear arrangements put the subtree's root at
each position.  Merging a child into its parent is a binomial-weighted
interleaving in which the cover edge's orientation only constrains the
parent/child relative position.  Components interleave freely, hence
the closing multinomial factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .errors import HypothesisViolatedError, NotForestError, NotUpwardForestError
from .poset import Poset, iter_bits


class OpCounter:
    """Tallies arbitrary-precision multiplications and additions."""

    __slots__ = ("mults", "adds")

    def __init__(self) -> None:
        self.mults = 0
        self.adds = 0

    @property
    def total(self) -> int:
        return self.mults + self.adds

    def __repr__(self) -> str:
        return f"OpCounter(mults={self.mults}, adds={self.adds})"


@dataclass
class RankVector:
    """counts[k-1] = arrangements of the processed subtree with element at k."""

    element: int
    counts: list[int]


def _cycle_witness(parent: dict[int, int], u: int, v: int) -> list[int]:
    # Non-tree edge u-v closes a cycle through the tree paths to their
    # lowest common ancestor.
    up_u = [u]
    while parent[up_u[-1]] != -1:
        up_u.append(parent[up_u[-1]])
    anc_u = set(up_u)
    path_v = [v]
    while path_v[-1] not in anc_u:
        path_v.append(parent[path_v[-1]])
    lca = path_v[-1]
    cycle = up_u[:up_u.index(lca) + 1]
    cycle.extend(reversed(path_v[:-1]))
    return cycle


def _pascal_rows(n: int, ops: OpCounter) -> list[list[int]]:
    rows = [[1]]
    for i in range(1, n + 1):
        prev = rows[-1]
        row = [1]
        for j in range(1, i):
            row.append(prev[j - 1] + prev[j])
            ops.adds += 1
        row.append(1)
        rows.append(row)
    return rows


def _component_vectors(P: Poset, ops: OpCounter,
                       pascal: list[list[int]]) -> list[RankVector]:
    n = P.n
    adj = P._cover_adj
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        parent = {start: -1}
        order = [start]
        seen[start] = True
        stack = [start]
        while stack:
            u = stack.pop()
            for v in iter_bits(adj[u]):
                if not seen[v]:
                    seen[v] = True
                    parent[v] = u
                    order.append(v)
                    stack.append(v)
                elif v != parent[u]:
                    raise NotForestError(_cycle_witness(parent, u, v))

        rank: dict[int, list[int]] = {}
        size: dict[int, int] = {}
        for u in reversed(order):
            acc = [1]
            p = 1
            for v in iter_bits(adj[u]):
                if parent.get(v) != u:
                    continue
                child = rank.pop(v)
                s = size.pop(v)
                # cumulative child counts admissible for each split t =
                # number of child elements placed before u
                cum = [0] * (s + 1)
                if P.is_less(u, v):
                    for t in range(s - 1, -1, -1):
                        cum[t] = cum[t + 1] + child[t]
                        ops.adds += 1
                else:
                    for t in range(1, s + 1):
                        cum[t] = cum[t - 1] + child[t - 1]
                        ops.adds += 1
                merged = [0] * (p + s)
                for a in range(1, p + 1):
                    weight = acc[a - 1]
                    if not weight:
                        continue
                    for t in range(s + 1):
                        if not cum[t]:
                            continue
                        term = (weight * cum[t]
                                * pascal[a - 1 + t][t]
                                * pascal[p - a + s - t][s - t])
                        ops.mults += 3
                        merged[a + t - 1] += term
                        ops.adds += 1
                acc = merged
                p += s
            rank[u] = acc
            size[u] = p
        out.append(RankVector(start, rank[start]))
    return out


def count_extensions_forest(P: Poset, ops: OpCounter | None = None) -> int:
    """Number of linear extensions of P; requires a forest cover graph."""
    if ops is None:
        ops = OpCounter()
    if P.n == 0:
        return 1
    pascal = _pascal_rows(P.n, ops)
    total = 1
    placed = 0
    for vector in _component_vectors(P, ops, pascal):
        count = 0
        for entry in vector.counts:
            count += entry
            ops.adds += 1
        placed += len(vector.counts)
        total = total * count * pascal[placed][len(vector.counts)]
        ops.mults += 2
    return total


def component_rank_vectors(P: Poset) -> list[RankVector]:
    """One RankVector per cover-graph component, rooted at its least id."""
    ops = OpCounter()
    if P.n == 0:
        return []
    return _component_vectors(P, ops, _pascal_rows(P.n, ops))


def count_rooted_forest_hook(P: Poset) -> int:
    """Hook-style count for posets where no element has two lower covers."""
    n = P.n
    den = 1
    for x in range(n):
        if len(P.lower_covers(x)) > 1:
            raise NotUpwardForestError(
                f"element {x} has more than one lower cover")
        den *= 1 + P.up_row(x).bit_count()
    quotient, remainder = divmod(factorial(n), den)
    if remainder:
        raise HypothesisViolatedError(
            f"hook product {den} does not divide {n}!")
    return quotient
