"""Exact linear extension counting and order probabilities.

Counting runs a dynamic program over down-closed subsets, so it is
exponential in memory for wide posets; the caps keep accidental blowups
loud instead of slow.  All probabilities are Fraction values, never
floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import (BadIdError, EmptyChainError, NotGoodPairError,
                     SizeError, WouldCycleError)
from .poset import Poset, iter_bits

DEFAULT_ENUMERATION_CAP = 12
DEFAULT_DP_CAP = 24


def enumerate_extensions(P: Poset, cap: int | None = None) -> Iterator[tuple[int, ...]]:
    """All linear extensions of P as id tuples, in lexicographic order.

    Raises SizeError up front when P.n exceeds the cap (default 12).
    """
    limit = DEFAULT_ENUMERATION_CAP if cap is None else cap
    if P.n > limit:
        raise SizeError(
            f"refusing to enumerate extensions of {P.n} elements (cap {limit})")
    return _extensions(P.n, P._down)


def _extensions(n: int, down: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    full = (1 << n) - 1
    prefix: list[int] = []

    def rec(placed: int) -> Iterator[tuple[int, ...]]:
        if placed == full:
            yield tuple(prefix)
            return
        remaining = full & ~placed
        for x in iter_bits(remaining):
            if down[x] & ~placed:
                continue
            prefix.append(x)
            yield from rec(placed | (1 << x))
            prefix.pop()

    return rec(0)


def _count_rows(n: int, up: tuple[int, ...] | list[int]) -> int:
    full = (1 << n) - 1
    memo = {0: 1}

    def f(s: int) -> int:
        r = memo.get(s)
        if r is None:
            r = 0
            m = s
            while m:
                low = m & -m
                if not (up[low.bit_length() - 1] & s):
                    r += f(s ^ low)
                m ^= low
            memo[s] = r
        return r

    return f(full)


def count_extensions(P: Poset, dp_cap: int | None = None) -> int:
    """Number of linear extensions of P, exactly."""
    limit = DEFAULT_DP_CAP if dp_cap is None else dp_cap
    if P.n > limit:
        raise SizeError(
            f"refusing to count extensions of {P.n} elements (cap {limit})")
    cached = getattr(P, "_extension_count", None)
    if cached is None:
        cached = _count_rows(P.n, P._up)
        P._extension_count = cached
    return cached


def add_relation(P: Poset, a: int, b: int) -> Poset:
    """The least order containing P and a<b.

    Adds every pair (u, v) with u <= a and b <= v.  Raises WouldCycleError
    when b <= a already holds.
    """
    P._check(a)
    P._check(b)
    if a == b:
        raise WouldCycleError([a], f"cannot add {a}<{a}")
    if P.is_less(b, a):
        raise WouldCycleError([a, b], f"adding {a}<{b} contradicts {b}<{a}")
    if P.is_less(a, b):
        return P
    rows = _refined_rows(P, a, b)
    return Poset._from_rows(P.n, rows, P.labels)


def _refined_rows(P: Poset, a: int, b: int) -> list[int] | None:
    """Rows of P plus a<b, or None when b <= a (no such order exists)."""
    up = P._up
    if a == b or up[b] >> a & 1:
        return None
    addmask = (1 << b) | up[b]
    rows = list(up)
    rows[a] |= addmask
    for u in iter_bits(P._down[a]):
        rows[u] |= addmask
    return rows


def prob_before(P: Poset, x: int, y: int, dp_cap: int | None = None) -> Fraction:
    """Probability that x precedes y in a uniform random linear extension."""
    P._check(x)
    P._check(y)
    if x == y:
        raise BadIdError("prob_before needs two distinct elements")
    if P.is_less(x, y):
        return Fraction(1)
    if P.is_less(y, x):
        return Fraction(0)
    limit = DEFAULT_DP_CAP if dp_cap is None else dp_cap
    if P.n > limit:
        raise SizeError(
            f"refusing to count extensions of {P.n} elements (cap {limit})")
    rows = _refined_rows(P, x, y)
    return Fraction(_count_rows(P.n, rows), count_extensions(P, dp_cap))


def prob_sandwich(P: Poset, x: int, z: int, y: int,
                  dp_cap: int | None = None) -> Fraction:
    """Probability that x precedes z and z precedes y in a random extension."""
    for e in (x, z, y):
        P._check(e)
    if len({x, z, y}) != 3:
        raise BadIdError("prob_sandwich needs three distinct elements")
    limit = DEFAULT_DP_CAP if dp_cap is None else dp_cap
    if P.n > limit:
        raise SizeError(
            f"refusing to count extensions of {P.n} elements (cap {limit})")
    total = count_extensions(P, dp_cap)
    rows = P._up
    if not (rows[x] >> z & 1):
        if rows[z] >> x & 1:
            return Fraction(0)
        Q = Poset._from_rows(P.n, _refined_rows(P, x, z))
        rows = Q._up
        refined = Q
    else:
        refined = P
    if not (rows[z] >> y & 1):
        if rows[y] >> z & 1:
            return Fraction(0)
        rows = _refined_rows(refined, z, y)
    return Fraction(_count_rows(P.n, rows), total)


def is_balanced(P: Poset, x: int, y: int, dp_cap: int | None = None) -> bool:
    """True iff the order probability of (x, y) lies in [1/3, 2/3]."""
    p = prob_before(P, x, y, dp_cap)
    return Fraction(1, 3) <= p <= Fraction(2, 3)


def sort_chain(P: Poset, members) -> list[int]:
    """The given pairwise comparable elements in ascending order."""
    elems = list(members)
    for e in elems:
        P._check(e)
    elems.sort(key=lambda e: P._down[e].bit_count())
    for lo, hi in zip(elems, elems[1:]):
        if not P.is_less(lo, hi):
            raise BadIdError(f"elements {lo} and {hi} are not comparable")
    return elems


@dataclass(frozen=True)
class QDistribution:
    """Where a lands relative to a chain, as exact probabilities.

    q has one more entry than chain: q[0] is the probability that a
    precedes chain[0], q[j] that a falls between chain[j-1] and
    chain[j], and q[-1] that a follows chain[-1].
    """

    a: int
    chain: tuple[int, ...]
    q: tuple[Fraction, ...]


def q_distribution(P: Poset, a: int, b: int,
                   dp_cap: int | None = None) -> QDistribution:
    """Position distribution of a against the chain over b.

    Requires that D(a) is contained in D(b), that U(b)\\U(a) is a
    nonempty chain, and that a precedes b with probability at most 1/2.
    The walked chain is b followed by U(b)\\U(a) in ascending order.
    """
    P._check(a)
    P._check(b)
    if a == b:
        raise BadIdError("q_distribution needs two distinct elements")
    if P._down[a] & ~P._down[b]:
        raise NotGoodPairError(f"D({a}) is not contained in D({b})")
    diff = P._up[b] & ~P._up[a]
    if not P.is_chain_subset(diff):
        raise NotGoodPairError(f"U({b})\\U({a}) is not a chain")
    if prob_before(P, a, b, dp_cap) > Fraction(1, 2):
        raise NotGoodPairError(
            f"({a}, {b}) has order probability above 1/2")
    if not diff:
        raise EmptyChainError(
            f"({a}, {b}) is a critical pair; there is no chain to walk")
    chain = [b] + sort_chain(P, iter_bits(diff))
    q = [prob_before(P, a, chain[0], dp_cap)]
    for lo, hi in zip(chain, chain[1:]):
        q.append(prob_sandwich(P, lo, a, hi, dp_cap))
    q.append(prob_before(P, chain[-1], a, dp_cap))
    return QDistribution(a=a, chain=tuple(chain), q=tuple(q))


def find_balanced_pair_exhaustive(P: Poset, dp_cap: int | None = None):
    """First lexicographic ordered pair with probability in [1/3, 2/3].

    Returns a PairReport, or None when no incomparable pair qualifies
    (chains have no incomparable pairs at all).
    """
    lo, hi = Fraction(1, 3), Fraction(2, 3)
    for x, y in P.incomparable_pairs():
        p = prob_before(P, x, y, dp_cap)
        if lo <= p <= hi:
            from .pairs import classify_pair
            return classify_pair(P, x, y, provenance="exhaustive",
                                 dp_cap=dp_cap)
    return None
