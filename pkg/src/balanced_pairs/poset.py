"""Immutable finite posets stored as bitmask relation rows.

Elements are dense integer ids 0..n-1.  The strict order is kept as one
integer bitmask per element: bit y of the row for x is set exactly when
x < y.  All predicates reduce to a handful of mask operations, which is
what keeps the pair scans in the finder modules cheap.

Display labels are optional metadata and never participate in equality.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import BadIdError, CycleError


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _closure_rows(n: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    """Transitive closure of the given x<y assertions as bitmask rows.

    Raises CycleError when the assertions are not acyclic; the witness
    lists the vertices of one directed cycle in order.
    """
    adj = [0] * n
    for a, b in pairs:
        if not (0 <= a < n) or not (0 <= b < n):
            raise BadIdError(f"relation ({a}, {b}) out of range for n={n}")
        if a == b:
            raise CycleError([a])
        adj[a] |= 1 << b

    # Iterative DFS: topological finish order doubles as cycle detection.
    color = [0] * n  # 0 unvisited, 1 on stack, 2 done
    finish: list[int] = []
    for root in range(n):
        if color[root]:
            continue
        color[root] = 1
        path = [root]
        stack = [(root, iter_bits(adj[root]))]
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == 0:
                    color[nxt] = 1
                    path.append(nxt)
                    stack.append((nxt, iter_bits(adj[nxt])))
                    advanced = True
                    break
                if color[nxt] == 1:
                    raise CycleError(path[path.index(nxt):])
            if not advanced:
                color[node] = 2
                finish.append(node)
                path.pop()
                stack.pop()

    rows = [0] * n
    for node in finish:  # successors of node finish before it
        acc = 0
        for nxt in iter_bits(adj[node]):
            acc |= (1 << nxt) | rows[nxt]
        rows[node] = acc
    return rows


class Poset:
    """A finite strict partial order on elements 0..n-1."""

    def __init__(self, n: int, relations: Iterable[tuple[int, int]] = (),
                 labels: Sequence[str] | None = None):
        if n < 0:
            raise BadIdError(f"element count must be nonnegative, got {n}")
        self._init_fields(n, tuple(_closure_rows(n, relations)), labels)

    def _init_fields(self, n: int, up_rows: tuple[int, ...],
                     labels: Sequence[str] | None) -> None:
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise BadIdError(
                    f"got {len(labels)} labels for {n} elements")
        self.n = n
        self._up = up_rows
        self.labels = labels

    @classmethod
    def from_relations(cls, n: int, pairs: Iterable[tuple[int, int]],
                       labels: Sequence[str] | None = None) -> "Poset":
        """Build a poset from arbitrary x<y assertions (not only covers)."""
        return cls(n, pairs, labels)

    @classmethod
    def _from_rows(cls, n: int, up_rows: Sequence[int],
                   labels: Sequence[str] | None = None) -> "Poset":
        # Trusted constructor: rows must already be a strict closed order.
        self = object.__new__(cls)
        self._init_fields(n, tuple(up_rows), labels)
        return self

    # -- raw row access (package internal, but stable) --

    def up_row(self, x: int) -> int:
        self._check(x)
        return self._up[x]

    def down_row(self, x: int) -> int:
        self._check(x)
        return self._down[x]

    def comparable_row(self, x: int) -> int:
        """Mask of elements comparable to x, excluding x itself."""
        self._check(x)
        return self._up[x] | self._down[x]

    def incomparable_row(self, x: int) -> int:
        self._check(x)
        return self._full & ~(self._up[x] | self._down[x]) & ~(1 << x)

    def _check(self, x: int) -> None:
        if not (0 <= x < self.n):
            raise BadIdError(f"element {x} out of range for n={self.n}")

    @property
    def _full(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def _down(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for x, up in enumerate(self._up):
            bit = 1 << x
            for y in iter_bits(up):
                rows[y] |= bit
        return tuple(rows)

    @cached_property
    def _cover_up(self) -> tuple[int, ...]:
        # y covers x iff x < y with nothing in between.
        down = self._down
        rows = []
        for x, up in enumerate(self._up):
            row = 0
            for y in iter_bits(up):
                if not (up & down[y]):
                    row |= 1 << y
            rows.append(row)
        return tuple(rows)

    @cached_property
    def _cover_down(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for x, row in enumerate(self._cover_up):
            bit = 1 << x
            for y in iter_bits(row):
                rows[y] |= bit
        return tuple(rows)

    @cached_property
    def _cover_adj(self) -> tuple[int, ...]:
        up = self._cover_up
        down = self._cover_down
        return tuple(up[x] | down[x] for x in range(self.n))

    # -- basic queries --

    def is_less(self, x: int, y: int) -> bool:
        self._check(x)
        self._check(y)
        return bool(self._up[x] >> y & 1)

    def is_comparable(self, x: int, y: int) -> bool:
        return self.is_less(x, y) or self.is_less(y, x)

    def up_set(self, x: int) -> frozenset[int]:
        """Strict up set {y : x < y}."""
        return frozenset(iter_bits(self.up_row(x)))

    def down_set(self, x: int) -> frozenset[int]:
        """Strict down set {y : y < x}."""
        return frozenset(iter_bits(self.down_row(x)))

    def covers(self) -> list[tuple[int, int]]:
        """All cover pairs (lower, upper), sorted."""
        return [(x, y) for x in range(self.n)
                for y in iter_bits(self._cover_up[x])]

    def upper_covers(self, x: int) -> list[int]:
        self._check(x)
        return list(iter_bits(self._cover_up[x]))

    def lower_covers(self, x: int) -> list[int]:
        self._check(x)
        return list(iter_bits(self._cover_down[x]))

    def cover_graph(self) -> list[list[int]]:
        """Undirected cover adjacency, one ascending list per element."""
        return [list(iter_bits(row)) for row in self._cover_adj]

    def minimal_elements(self) -> list[int]:
        return [x for x in range(self.n) if not self._down[x]]

    def maximal_elements(self) -> list[int]:
        return [x for x in range(self.n) if not self._up[x]]

    def incomparable_pairs(self) -> list[tuple[int, int]]:
        """All ordered pairs (x, y), x != y, with x and y incomparable."""
        out = []
        for x in range(self.n):
            row = self.incomparable_row(x)
            out.extend((x, y) for y in iter_bits(row))
        return out

    def is_critical_pair(self, x: int, y: int) -> bool:
        """True iff x and y are incomparable, U(y) within U(x), D(x) within D(y)."""
        self._check(x)
        self._check(y)
        if x == y or self.is_comparable(x, y):
            return False
        return (not (self._up[y] & ~self._up[x])
                and not (self._down[x] & ~self._down[y]))

    def is_autonomous(self, members: Iterable[int]) -> bool:
        """True iff every outside element relates identically to all members."""
        amask = 0
        for a in members:
            self._check(a)
            amask |= 1 << a
        if not amask:
            raise BadIdError("autonomous test requires a nonempty subset")
        for v in range(self.n):
            if amask >> v & 1:
                continue
            below = self._up[v] & amask   # members above v
            if below and below != amask:
                return False
            above = self._down[v] & amask  # members below v
            if above and above != amask:
                return False
        return True

    def is_chain_subset(self, members: Iterable[int]) -> bool:
        """True iff the given elements are pairwise comparable (empty ok)."""
        if isinstance(members, int):
            mask = members
            if mask >> self.n:
                raise BadIdError(f"mask {mask:#x} out of range for n={self.n}")
        else:
            mask = 0
            for a in members:
                self._check(a)
                mask |= 1 << a
        for x in iter_bits(mask):
            others = mask & ~(1 << x)
            if (self._up[x] | self._down[x]) & others != others:
                return False
        return True

    def is_chain(self) -> bool:
        return self.is_chain_subset(self._full)

    @cached_property
    def heights(self) -> tuple[int, ...]:
        """Longest-chain-below length per element (0 for minimal)."""
        order = sorted(range(self.n), key=lambda x: self._down[x].bit_count())
        h = [0] * self.n
        for x in order:
            lows = self._cover_down[x]
            if lows:
                h[x] = 1 + max(h[y] for y in iter_bits(lows))
        return tuple(h)

    # -- derived posets --

    def dual(self) -> "Poset":
        """The same elements with all relations reversed."""
        return Poset._from_rows(self.n, self._down, self.labels)

    def restrict(self, members: Iterable[int]) -> "Poset":
        """Induced suborder on the given elements, relabeled in sorted order."""
        keep = sorted(set(members))
        if not keep:
            raise BadIdError("restriction to an empty subset")
        for a in keep:
            self._check(a)
        index = {old: new for new, old in enumerate(keep)}
        rows = []
        for old in keep:
            row = 0
            up = self._up[old]
            for other in keep:
                if up >> other & 1:
                    row |= 1 << index[other]
            rows.append(row)
        labels = None
        if self.labels is not None:
            labels = tuple(self.labels[old] for old in keep)
        return Poset._from_rows(len(keep), rows, labels)

    def relation_pairs(self) -> list[tuple[int, int]]:
        """All strict pairs (x, y) with x < y, sorted."""
        return [(x, y) for x in range(self.n)
                for y in iter_bits(self._up[x])]

    def validate(self) -> None:
        """Check the representation invariants; raises CycleError/BadIdError."""
        n = self.n
        if len(self._up) != n:
            raise BadIdError("row count does not match element count")
        for x, row in enumerate(self._up):
            if row >> n:
                raise BadIdError(f"row of {x} mentions elements >= {n}")
            if row >> x & 1:
                raise CycleError([x], f"element {x} is below itself")
            for y in iter_bits(row):
                if self._up[y] >> x & 1:
                    raise CycleError([x, y])
                if self._up[y] & ~row:
                    missing = next(iter_bits(self._up[y] & ~row))
                    raise CycleError(
                        [x, y, missing],
                        f"transitivity fails: {x}<{y}<{missing} but not "
                        f"{x}<{missing}")

    # -- value semantics --

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.n == other.n and self._up == other._up

    def __hash__(self) -> int:
        return hash((self.n, self._up))

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, covers={self.covers()!r})"
