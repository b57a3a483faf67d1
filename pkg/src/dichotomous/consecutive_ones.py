"""Consecutive-ones property for the columns of a 0-1 matrix.

The decider works on overlap components.  Two rows overlap when they
intersect and neither contains the other.  Inside one overlap-connected
component the column arrangement is forced up to reversal, so rows can be
added one at a time (each new row overlapping an already placed one) while
refining an ordered list of column blocks.  The unions of different
components form a laminar family in which a nested component always sits
inside a single block of its parent, so the per-component arrangements are
assembled by recursive substitution.

Total work is dominated by overlap detection, which is linear in the sum
over columns of (column degree)^2; that is fine for sparse inputs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence


@dataclass(frozen=True)
class BinaryMatrix:
    """Sparse 0-1 matrix: ``row_sets[i]`` holds the columns of row ``i`` set to 1."""

    rows: int
    cols: int
    row_sets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if len(self.row_sets) != self.rows:
            raise ValueError("row count does not match row_sets")
        for r in self.row_sets:
            for c in r:
                if not 0 <= c < self.cols:
                    raise ValueError(f"column {c} out of range")

    @classmethod
    def from_rows(cls, cols: int, rows: Iterable[Iterable[int]]) -> "BinaryMatrix":
        rs = tuple(frozenset(r) for r in rows)
        return cls(len(rs), cols, rs)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]], cols: int | None = None) -> "BinaryMatrix":
        if cols is None:
            cols = len(dense[0]) if dense else 0
        rs = []
        for row in dense:
            if len(row) != cols:
                raise ValueError("ragged matrix")
            rs.append(frozenset(j for j, x in enumerate(row) if x))
        return cls(len(rs), cols, tuple(rs))

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "BinaryMatrix":
        return cls.from_dense([[int(ch) for ch in r] for r in rows])

    @property
    def entries(self) -> list[int]:
        """Row-major dense bit list."""
        out = [0] * (self.rows * self.cols)
        for i, r in enumerate(self.row_sets):
            for c in r:
                out[i * self.cols + c] = 1
        return out

    def transpose(self) -> "BinaryMatrix":
        cols: list[set[int]] = [set() for _ in range(self.cols)]
        for i, r in enumerate(self.row_sets):
            for c in r:
                cols[c].add(i)
        return BinaryMatrix(self.cols, self.rows, tuple(frozenset(c) for c in cols))

    def with_complements(self) -> "BinaryMatrix":
        """Stack every row with its complement."""
        full = frozenset(range(self.cols))
        rs = self.row_sets + tuple(full - r for r in self.row_sets)
        return BinaryMatrix(len(rs), self.cols, rs)


def _check_perm(perm: Sequence[int], cols: int) -> None:
    if sorted(perm) != list(range(cols)):
        raise ValueError("not a permutation of the columns")


def verify_c1p(m: BinaryMatrix, perm: Sequence[int]) -> bool:
    """True iff every row's 1s are contiguous when columns are read in ``perm`` order."""
    _check_perm(perm, m.cols)
    pos = [0] * m.cols
    for i, c in enumerate(perm):
        pos[c] = i
    for r in m.row_sets:
        if len(r) <= 1:
            continue
        ps = [pos[c] for c in r]
        if max(ps) - min(ps) + 1 != len(r):
            return False
    return True


def c1p_exhaustive(m: BinaryMatrix) -> tuple[int, ...] | None:
    """Brute-force oracle: first permutation (lexicographic) with the property."""
    for perm in permutations(range(m.cols)):
        if verify_c1p(m, perm):
            return perm
    return None


class _Block:
    __slots__ = ("cols", "prev", "next")

    def __init__(self, cols: set[int]) -> None:
        self.cols = cols
        self.prev: _Block | None = None
        self.next: _Block | None = None


class _Arrangement:
    """Ordered blocks of columns for one overlap component."""

    def __init__(self, first_row: frozenset[int]) -> None:
        b = _Block(set(first_row))
        self.head = self.tail = b
        self.where: dict[int, _Block] = {c: b for c in first_row}

    def _insert_after(self, b: _Block, new: _Block) -> None:
        new.prev, new.next = b, b.next
        if b.next is not None:
            b.next.prev = new
        else:
            self.tail = new
        b.next = new

    def _insert_before(self, b: _Block, new: _Block) -> None:
        new.next, new.prev = b, b.prev
        if b.prev is not None:
            b.prev.next = new
        else:
            self.head = new
        b.prev = new

    def _split(self, b: _Block, part: set[int], part_first: bool) -> _Block:
        """Move ``part`` (a proper subset of ``b.cols``) into a new adjacent block."""
        new = _Block(part)
        b.cols -= part
        for c in part:
            self.where[c] = new
        if part_first:
            self._insert_before(b, new)
        else:
            self._insert_after(b, new)
        return new

    def add(self, row: frozenset[int]) -> bool:
        """Place ``row``; it must overlap a row already placed.  False if impossible."""
        inside: dict[_Block, set[int]] = {}
        fresh = set()
        for c in row:
            b = self.where.get(c)
            if b is None:
                fresh.add(c)
            else:
                inside.setdefault(b, set()).add(c)
        if not inside:
            return False
        start = next(iter(inside))
        left = start
        while left.prev is not None and left.prev in inside:
            left = left.prev
        right = start
        while right.next is not None and right.next in inside:
            right = right.next
        count = 1
        b = left
        while b is not right:
            b = b.next
            count += 1
        if count != len(inside):
            return False
        full = {b: len(cs) == len(b.cols) for b, cs in inside.items()}
        b = left
        while b is not right:
            b = b.next
            if b is not right and not full[b]:
                return False

        if not fresh:
            if left is right:
                # Impossible for a row overlapping a placed row.
                return False
            if not full[left]:
                self._split(left, left.cols - inside[left], part_first=True)
            if not full[right]:
                self._split(right, right.cols - inside[right], part_first=False)
            return True

        # Fresh columns hang off one end, next to the row's old part.
        if left is right:
            if right is self.tail:
                if not full[right]:
                    self._split(right, right.cols - inside[right], part_first=True)
                side = "tail"
            elif left is self.head:
                if not full[left]:
                    self._split(left, left.cols - inside[left], part_first=False)
                side = "head"
            else:
                return False
        elif right is self.tail and full[right]:
            if not full[left]:
                self._split(left, left.cols - inside[left], part_first=True)
            side = "tail"
        elif left is self.head and full[left]:
            if not full[right]:
                self._split(right, right.cols - inside[right], part_first=False)
            side = "head"
        else:
            return False
        new = _Block(set(fresh))
        if side == "tail":
            self._insert_after(self.tail, new)
        else:
            self._insert_before(self.head, new)
        for c in fresh:
            self.where[c] = new
        return True

    def blocks(self) -> list[_Block]:
        out = []
        b = self.head
        while b is not None:
            out.append(b)
            b = b.next
        return out


def _overlap_adjacency(rows: list[frozenset[int]], cols: int) -> list[list[int]]:
    by_col: list[list[int]] = [[] for _ in range(cols)]
    for i, r in enumerate(rows):
        for c in r:
            by_col[c].append(i)
    adj: list[list[int]] = [[] for _ in rows]
    for i, r in enumerate(rows):
        shared: dict[int, int] = {}
        for c in r:
            for j in by_col[c]:
                if j > i:
                    shared[j] = shared.get(j, 0) + 1
        li = len(r)
        for j in sorted(shared):
            s = shared[j]
            if s < li and s < len(rows[j]):
                adj[i].append(j)
                adj[j].append(i)
    return adj


def c1p_column_order(m: BinaryMatrix) -> tuple[int, ...] | None:
    """A column permutation making every row's 1s contiguous, or ``None``.

    >>> c1p_column_order(BinaryMatrix.from_strings(["1100", "1010", "1001"])) is None
    True
    """
    full = m.cols
    # Rows with at most one 1 or all 1s never constrain the order.
    seen = set()
    rows: list[frozenset[int]] = []
    for r in m.row_sets:
        if 1 < len(r) < full and r not in seen:
            seen.add(r)
            rows.append(r)
    if not rows:
        return tuple(range(m.cols))

    adj = _overlap_adjacency(rows, m.cols)
    comp_of = [-1] * len(rows)
    components: list[list[int]] = []
    for s in range(len(rows)):
        if comp_of[s] != -1:
            continue
        cid = len(components)
        order = [s]
        comp_of[s] = cid
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if comp_of[y] == -1:
                    comp_of[y] = cid
                    order.append(y)
                    queue.append(y)
        components.append(order)

    arrangements: list[list[set[int]]] = []
    unions: list[frozenset[int]] = []
    for order in components:
        arr = _Arrangement(rows[order[0]])
        for ri in order[1:]:
            if not arr.add(rows[ri]):
                return None
        arrangements.append([b.cols for b in arr.blocks()])
        unions.append(frozenset(arr.where))

    # Nest components: biggest unions first; multi-row components before
    # single rows of the same size (a lone row equal to a union is implied).
    idx = sorted(range(len(components)), key=lambda i: (-len(unions[i]), len(components[i]) == 1, i))
    owner: dict[int, tuple[int, int]] = {}
    children: dict[tuple[int, int] | None, list[int]] = {}
    for ci in idx:
        u = unions[ci]
        owners = {owner.get(c) for c in u}
        if len(owners) != 1:
            parents = {o[0] if o else None for o in owners}
            if len(components[ci]) == 1 and len(parents) == 1 and None not in parents:
                (pc,) = parents
                if unions[pc] == u:
                    continue
            # The laminar structure guarantees a single owner otherwise.
            raise AssertionError("overlap components are not laminar")
        (parent,) = owners
        children.setdefault(parent, []).append(ci)
        for bi, block in enumerate(arrangements[ci]):
            for c in block:
                owner[c] = (ci, bi)

    placed: set[int] = set()
    out: list[int] = []

    def emit_component(ci: int) -> None:
        for bi, block in enumerate(arrangements[ci]):
            for child in children.get((ci, bi), ()):
                emit_component(child)
            for c in sorted(block):
                if c not in placed:
                    placed.add(c)
                    out.append(c)

    # Iterative emission would be needed only for absurd nesting depths.
    import sys

    limit = sys.getrecursionlimit()
    if len(components) + 100 > limit:
        sys.setrecursionlimit(len(components) + 100)
    try:
        for ci in children.get(None, ()):
            emit_component(ci)
    finally:
        sys.setrecursionlimit(limit)
    for c in range(m.cols):
        if c not in placed:
            out.append(c)
    return tuple(out)
