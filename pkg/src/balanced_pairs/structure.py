"""Fences, crowns, diamonds, forest cover graphs, semiorders.

The searches here are exact and deterministic: every "find" walks
candidates in ascending id order and returns the lexicographically
least witness among those of the winning size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (BadIdError, HypothesisViolatedError,
                     PreconditionFailedError)
from .poset import Poset, iter_bits


@dataclass(frozen=True)
class FenceWitness:
    """An induced alternating path f_0..f_n.

    Consecutive elements are comparable, all other pairs incomparable,
    so comparability directions alternate.  starts_low records whether
    f_0 sits at the bottom of its first comparability (even indices
    minimal within the fence) or at the top.
    """

    elements: tuple[int, ...]
    starts_low: bool

    @property
    def length(self) -> int:
        return len(self.elements) - 1

    def is_min_index(self, i: int) -> bool:
        return (i % 2 == 0) == self.starts_low

    @property
    def minimal_indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self.elements))
                     if self.is_min_index(i))

    @property
    def maximal_indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self.elements))
                     if not self.is_min_index(i))

    def reversed_(self) -> "FenceWitness":
        return FenceWitness(tuple(reversed(self.elements)),
                            self.is_min_index(self.length))

    def in_dual(self) -> "FenceWitness":
        """The same sequence viewed in the dual poset."""
        return FenceWitness(self.elements, not self.starts_low)


@dataclass(frozen=True)
class CrownWitness:
    """c_1..c_{2n}, comparable exactly at i=j, |i-j|=1, or {1,2n}."""

    elements: tuple[int, ...]

    @property
    def half_length(self) -> int:
        return len(self.elements) // 2


@dataclass(frozen=True)
class DiamondWitness:
    """d1 < d2 < d4 and d1 < d3 < d4 induced covers, d2 and d3 incomparable."""

    d1: int
    d2: int
    d3: int
    d4: int


def is_fence(P: Poset, elements: Sequence[int]) -> bool:
    """True iff the sequence is an induced fence (alternating path)."""
    k = len(elements)
    if k == 0 or len(set(elements)) != k:
        return False
    for e in elements:
        P._check(e)
    for i in range(k):
        for j in range(i + 1, k):
            comparable = P.is_comparable(elements[i], elements[j])
            if comparable != (j == i + 1):
                return False
    return True


def fence_witness(P: Poset, elements: Sequence[int]) -> FenceWitness:
    """Wrap a sequence as a FenceWitness, checking the fence property."""
    if not is_fence(P, elements):
        raise PreconditionFailedError(f"{list(elements)} is not a fence")
    elements = tuple(elements)
    starts_low = len(elements) < 2 or P.is_less(elements[0], elements[1])
    return FenceWitness(elements, starts_low)


def _as_mask(P: Poset, members: Iterable[int] | int | None) -> int:
    if members is None:
        return P._full
    if isinstance(members, int):
        if members < 0 or members >> P.n:
            raise BadIdError(f"mask {members:#x} out of range for n={P.n}")
        return members
    mask = 0
    for e in members:
        P._check(e)
        mask |= 1 << e
    return mask


def _search_fences(P: Poset, starts: Iterable[int], allowed: int,
                   collect_all: bool):
    up = P._up
    down = P._down
    inc = [P.incomparable_row(v) for v in range(P.n)]

    best_seq: list[int] | None = None
    best_len = 0
    all_seqs: list[tuple[int, ...]] = []
    seq: list[int] = []

    def note() -> None:
        nonlocal best_seq, best_len
        if len(seq) > best_len:
            best_len = len(seq)
            best_seq = seq.copy()
            if collect_all:
                all_seqs.clear()
                all_seqs.append(tuple(seq))
        elif collect_all and len(seq) == best_len:
            all_seqs.append(tuple(seq))

    def rec(last: int, last_is_min: bool, minc: int) -> None:
        cand = (up[last] if last_is_min else down[last]) & minc & allowed
        for y in iter_bits(cand):
            nxt = minc & inc[last]
            reach = len(seq) + 1 + (nxt & allowed).bit_count()
            if reach < best_len or (reach == best_len and not collect_all):
                continue
            seq.append(y)
            note()
            rec(y, not last_is_min, nxt)
            seq.pop()

    for start in starts:
        if not (allowed >> start & 1):
            continue
        seq.append(start)
        note()
        for y in iter_bits((up[start] | down[start]) & allowed):
            start_is_min = bool(up[start] >> y & 1)
            seq.append(y)
            note()
            rec(y, not start_is_min, inc[start])
            seq.pop()
        seq.pop()

    return best_seq, all_seqs


def _witness(P: Poset, seq: Sequence[int]) -> FenceWitness:
    starts_low = len(seq) < 2 or P.is_less(seq[0], seq[1])
    return FenceWitness(tuple(seq), starts_low)


def find_max_fence(P: Poset) -> FenceWitness:
    """A maximum-length induced fence; lex-least sequence among ties.

    A poset with no comparabilities has only single-element fences of
    length 0.
    """
    if P.n == 0:
        raise BadIdError("empty poset has no fence")
    best, _ = _search_fences(P, range(P.n), P._full, collect_all=False)
    return _witness(P, best)


def find_max_fence_from(P: Poset, x: int,
                        within: Iterable[int] | int | None = None) -> FenceWitness:
    """Maximum-length fence with f_0 = x, optionally inside a subset.

    `within` restricts every fence element (including x) to the given
    subset.
    """
    P._check(x)
    allowed = _as_mask(P, within)
    if not (allowed >> x & 1):
        raise BadIdError(f"start {x} is not in the allowed subset")
    best, _ = _search_fences(P, [x], allowed, collect_all=False)
    return _witness(P, best)


def all_max_fences(P: Poset, start: int | None = None,
                   within: Iterable[int] | int | None = None) -> list[FenceWitness]:
    """Every maximum-length fence (as id sequences), lex-sorted."""
    if P.n == 0:
        raise BadIdError("empty poset has no fence")
    allowed = _as_mask(P, within)
    starts: Iterable[int]
    if start is None:
        starts = range(P.n)
    else:
        P._check(start)
        starts = [start]
    _, seqs = _search_fences(P, starts, allowed, collect_all=True)
    return [_witness(P, s) for s in sorted(seqs)]


def normalize_fence(P: Poset, F: FenceWitness) -> FenceWitness:
    """Push fence-minimal elements down to P-minimal ones and dually.

    Preserves the fence length.  Requires a forest cover graph (the
    crown-free and diamond-free hypothesis).
    """
    if not is_cover_forest(P):
        raise PreconditionFailedError(
            "fence normalization requires a crown-free and diamond-free "
            "poset (equivalently, a forest cover graph)")
    if not is_fence(P, F.elements):
        raise PreconditionFailedError(f"{list(F.elements)} is not a fence")
    seq = list(F.elements)
    for i, f in enumerate(seq):
        if F.is_min_index(i):
            pool = P._down[f]
        else:
            pool = P._up[f]
        if not pool:
            continue
        if F.is_min_index(i):
            seq[i] = next(v for v in iter_bits(pool) if not P._down[v])
        else:
            seq[i] = next(v for v in iter_bits(pool) if not P._up[v])
    if not is_fence(P, seq):
        raise HypothesisViolatedError(
            f"fence replacement broke the fence property: {seq}")
    return FenceWitness(tuple(seq), F.starts_low)


def unique_min_join(P: Poset, F: FenceWitness | Sequence[int],
                    n: int) -> int:
    """The unique minimal element of U(f_{n-2}) & U(f_n), at most f_{n-1}.

    The fence must turn downward at index n (f_{n-2} and f_n both below
    f_{n-1}).
    """
    elements = F.elements if isinstance(F, FenceWitness) else tuple(F)
    if n < 2 or n >= len(elements):
        raise PreconditionFailedError(
            f"index {n} needs two predecessors in a fence of "
            f"{len(elements)} elements")
    a, mid, c = elements[n - 2], elements[n - 1], elements[n]
    if not (P.is_less(a, mid) and P.is_less(c, mid)):
        raise PreconditionFailedError(
            f"fence does not turn downward at index {n}")
    meet = P._up[a] & P._up[c]
    mins = [v for v in iter_bits(meet) if not (P._down[v] & meet)]
    if len(mins) != 1:
        raise HypothesisViolatedError(
            f"U({a}) & U({c}) has minimal elements {mins}, expected one")
    m = mins[0]
    if m != mid and not P.is_less(m, mid):
        raise HypothesisViolatedError(
            f"minimal join {m} is not below fence element {mid}")
    return m


def find_crown(P: Poset, min_half_length: int = 2) -> CrownWitness | None:
    """Least induced crown with half-length >= min_half_length, if any."""
    if min_half_length < 2:
        raise BadIdError("crowns need half-length at least 2")
    for h in range(min_half_length, P.n // 2 + 1):
        seq = _crown_search(P, h)
        if seq is not None:
            return CrownWitness(tuple(seq))
    return None


def _crown_search(P: Poset, h: int) -> list[int] | None:
    up = P._up
    down = P._down
    inc = [P.incomparable_row(v) for v in range(P.n)]
    size = 2 * h
    seq: list[int] = []

    # minc_all: incomparable to every element of seq[:-1]
    # minc_tail: same but ignoring seq[0], for the closing element
    def rec(minc_all: int, minc_tail: int) -> list[int] | None:
        k = len(seq)
        last = seq[-1]
        if k == size - 1:
            cand = down[last] & down[seq[0]] & minc_tail
        elif k % 2 == 1:  # next position is even: minimal, below last
            cand = down[last] & minc_all
        else:
            cand = up[last] & minc_all
        for y in iter_bits(cand):
            if k == size - 1:
                return seq + [y]
            seq.append(y)
            skip_first = inc[last] if last != seq[0] else P._full
            got = rec(minc_all & inc[last], minc_tail & skip_first)
            if got is not None:
                return got
            seq.pop()
        return None

    for c1 in range(P.n):
        if not down[c1]:
            continue
        seq = [c1]
        got = rec(P._full, P._full)
        if got is not None:
            return got
    return None


def _two_crowns_have_middles(P: Poset) -> bool:
    up = P._up
    down = P._down
    for l1 in range(P.n):
        rest = P.incomparable_row(l1)
        for l2 in iter_bits(rest):
            if l2 <= l1:
                continue
            shared = up[l1] & up[l2]
            if not shared:
                continue
            for u1 in iter_bits(shared):
                for u2 in iter_bits(shared & P.incomparable_row(u1)):
                    if u2 <= u1:
                        continue
                    if not (up[l1] & up[l2] & down[u1] & down[u2]):
                        return False
    return True


def is_crown_free(P: Poset) -> bool:
    """No induced crown of half-length 3 or more, and every induced
    2-crown has a middle element z with c2 < z < c1 and c4 < z < c3."""
    return find_crown(P, 3) is None and _two_crowns_have_middles(P)


def find_diamond(P: Poset) -> DiamondWitness | None:
    """Least induced diamond (d1; incomparable d2 < d3; d4), if any."""
    up = P._up
    for d1 in range(P.n):
        candidates = up[d1]
        for d2 in iter_bits(candidates):
            others = candidates & P.incomparable_row(d2)
            for d3 in iter_bits(others):
                if d3 <= d2:
                    continue
                tops = up[d2] & up[d3]
                if tops:
                    return DiamondWitness(d1, d2, d3,
                                          next(iter_bits(tops)))
    return None


def is_diamond_free(P: Poset) -> bool:
    return find_diamond(P) is None


def find_cover_cycle(P: Poset) -> list[int] | None:
    """Vertices of one cycle in the undirected cover graph, or None."""
    n = P.n
    adj = P._cover_adj
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        parent = {start: -1}
        seen[start] = True
        stack = [start]
        while stack:
            u = stack.pop()
            for v in iter_bits(adj[u]):
                if not seen[v]:
                    seen[v] = True
                    parent[v] = u
                    stack.append(v)
                elif v != parent[u]:
                    up_u = [u]
                    while parent[up_u[-1]] != -1:
                        up_u.append(parent[up_u[-1]])
                    anc = set(up_u)
                    path_v = [v]
                    while path_v[-1] not in anc:
                        path_v.append(parent[path_v[-1]])
                    lca = path_v[-1]
                    cycle = up_u[:up_u.index(lca) + 1]
                    cycle.extend(reversed(path_v[:-1]))
                    return cycle
    return None


def is_cover_forest(P: Poset) -> bool:
    """True iff the undirected cover graph is acyclic."""
    return find_cover_cycle(P) is None


def is_semiorder(P: Poset) -> bool:
    """No induced 2+2 and no induced 3+1."""
    down = P._down
    up = P._up
    n = P.n
    for x in range(n):
        dx = down[x]
        for y in range(x + 1, n):
            if dx & ~down[y] and down[y] & ~dx:
                return False
    for b in range(n):
        if not down[b] or not up[b]:
            continue
        free_b = P.incomparable_row(b)
        if not free_b:
            continue
        for a in iter_bits(down[b]):
            free_ab = free_b & P.incomparable_row(a)
            if not free_ab:
                continue
            for c in iter_bits(up[b]):
                if free_ab & P.incomparable_row(c):
                    return False
    return True
