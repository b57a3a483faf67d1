"""Approval profiles, committees, weight schemes and exact scoring primitives.

Votes are stored twice: as frozensets of candidate indices (convenient for
reasoning) and as integer bitmasks (cheap intersections and popcounts in the
solvers).  All scores are ``fractions.Fraction``; nothing here touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple, Sequence


class ProfileError(ValueError):
    """Raised for malformed profiles, committees or weight schemes."""


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def mask_to_indices(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class ApprovalProfile:
    """A list of approval votes over ``m`` named candidates.

    Vote order matters: witness orders and CLI output refer to positions.
    """

    candidate_labels: tuple[str, ...]
    votes: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        labels = tuple(self.candidate_labels)
        votes = tuple(frozenset(v) for v in self.votes)
        object.__setattr__(self, "candidate_labels", labels)
        object.__setattr__(self, "votes", votes)
        if not labels:
            raise ProfileError("a profile needs at least one candidate")
        if not votes:
            raise ProfileError("a profile needs at least one vote")
        if len(set(labels)) != len(labels):
            raise ProfileError("duplicate candidate label")
        m = len(labels)
        for i, v in enumerate(votes):
            for c in v:
                if not isinstance(c, int) or not 0 <= c < m:
                    raise ProfileError(f"vote {i} refers to unknown candidate {c!r}")

    @property
    def m(self) -> int:
        return len(self.candidate_labels)

    @property
    def n(self) -> int:
        return len(self.votes)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(_mask(v) for v in self.votes)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.m) - 1

    @cached_property
    def approvers(self) -> tuple[frozenset[int], ...]:
        """For each candidate, the set of voters approving it."""
        acc: list[set[int]] = [set() for _ in range(self.m)]
        for i, v in enumerate(self.votes):
            for c in v:
                acc[c].add(i)
        return tuple(frozenset(a) for a in acc)

    def complement(self, i: int) -> frozenset[int]:
        return frozenset(range(self.m)) - self.votes[i]

    def is_trivial(self, i: int) -> bool:
        return len(self.votes[i]) in (0, self.m)

    def labels_of(self, indices: Iterable[int]) -> list[str]:
        return [self.candidate_labels[c] for c in sorted(indices)]

    def index_of(self, label: str) -> int:
        try:
            return self.candidate_labels.index(label)
        except ValueError:
            raise ProfileError(f"unknown candidate label {label!r}") from None

    def subprofile(self, voters: Sequence[int]) -> "ApprovalProfile":
        return ApprovalProfile(self.candidate_labels, tuple(self.votes[i] for i in voters))


def build_profile(labels: Sequence[str], votes: Iterable[Iterable[str]]) -> ApprovalProfile:
    """Build a profile from candidate labels and label-set votes.

    >>> p = build_profile(["a", "b", "c"], [{"a", "b"}, {"b", "c"}])
    >>> (p.m, p.n, p.votes[1] == frozenset({1, 2}))
    (3, 2, True)
    """
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise ProfileError("duplicate candidate label")
    index = {lab: i for i, lab in enumerate(labels)}
    converted = []
    for vote in votes:
        s = set()
        for lab in vote:
            if lab not in index:
                raise ProfileError(f"unknown candidate label {lab!r} in vote")
            s.add(index[lab])
        converted.append(frozenset(s))
    return ApprovalProfile(labels, tuple(converted))


def profile_from_indices(m: int, votes: Iterable[Iterable[int]]) -> ApprovalProfile:
    """Profile with default labels ``c0 .. c{m-1}``."""
    return ApprovalProfile(tuple(f"c{i}" for i in range(m)), tuple(frozenset(v) for v in votes))


def weak_order_equal(u: Iterable[int], v: Iterable[int], m: int) -> bool:
    """True iff ``u`` and ``v`` induce the same dichotomous weak order.

    The empty vote and the full vote both induce the empty relation.
    """
    u, v = frozenset(u), frozenset(v)
    if u == v:
        return True
    return len(u) in (0, m) and len(v) in (0, m)


def weak_order_key(v: frozenset[int], m: int) -> frozenset[int] | None:
    """Canonical key of the weak order of ``v``; ``None`` for trivial votes."""
    return None if len(v) in (0, m) else v


@dataclass(frozen=True)
class Committee:
    members: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", frozenset(self.members))

    @property
    def k(self) -> int:
        return len(self.members)

    @property
    def mask(self) -> int:
        return _mask(self.members)

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)


def as_committee(w: Committee | Iterable[int], m: int) -> Committee:
    c = w if isinstance(w, Committee) else Committee(frozenset(w))
    for x in c.members:
        if not isinstance(x, int) or not 0 <= x < m:
            raise ProfileError(f"committee member {x!r} out of range")
    return c


@dataclass(frozen=True)
class WeightScheme:
    """Non-increasing weight sequence ``w`` with ``w_1 = 1``.

    ``harmonic`` is (1, 1/2, 1/3, ...).  ``truncated`` lists its non-zero
    prefix and is zero afterwards.  ``explicit`` repeats its last entry
    forever.
    """

    kind: str
    entries: tuple[Fraction, ...] = ()
    _cache: list = field(default_factory=lambda: [Fraction(0)], compare=False, repr=False, hash=False)

    def __post_init__(self) -> None:
        if self.kind not in ("harmonic", "truncated", "explicit"):
            raise ProfileError(f"unknown weight scheme kind {self.kind!r}")
        entries = tuple(Fraction(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if self.kind == "harmonic":
            if entries:
                raise ProfileError("harmonic scheme takes no entries")
            return
        if not entries:
            raise ProfileError(f"{self.kind} scheme needs at least one entry")
        if entries[0] != 1:
            raise ProfileError("the first weight must be 1")
        for a, b in zip(entries, entries[1:]):
            if b > a:
                raise ProfileError("weights must be non-increasing")
        if entries[-1] < 0:
            raise ProfileError("weights must be non-negative")

    @classmethod
    def harmonic(cls) -> "WeightScheme":
        return cls("harmonic")

    @classmethod
    def truncated(cls, entries: Sequence) -> "WeightScheme":
        return cls("truncated", tuple(entries))

    @classmethod
    def chamberlin_courant(cls) -> "WeightScheme":
        return cls("truncated", (1,))

    @classmethod
    def explicit(cls, entries: Sequence) -> "WeightScheme":
        return cls("explicit", tuple(entries))

    def weight(self, j: int) -> Fraction:
        """The ``j``-th weight, 1-based."""
        if j < 1:
            raise ValueError("weights are indexed from 1")
        if self.kind == "harmonic":
            return Fraction(1, j)
        if j <= len(self.entries):
            return self.entries[j - 1]
        return Fraction(0) if self.kind == "truncated" else self.entries[-1]

    @property
    def cutoff(self) -> int | None:
        """``i0`` such that ``w_i = 0`` for all ``i > i0``, if one exists."""
        if self.kind == "harmonic":
            return None
        if self.kind == "explicit" and self.entries[-1] != 0:
            return None
        i0 = len(self.entries)
        while i0 > 0 and self.entries[i0 - 1] == 0:
            i0 -= 1
        return i0

    def utilities(self, upto: int) -> list[Fraction]:
        """``[u(0), u(1), ..., u(upto)]``."""
        cache = self._cache
        while len(cache) <= upto:
            cache.append(cache[-1] + self.weight(len(cache)))
        return cache[: upto + 1]


HARMONIC = WeightScheme.harmonic()
CHAMBERLIN_COURANT = WeightScheme.chamberlin_courant()


def cumulative_weight(scheme: WeightScheme, p: int) -> Fraction:
    """``u_w(p) = w_1 + ... + w_p`` as an exact rational."""
    if p < 0:
        raise ValueError("p must be non-negative")
    return scheme.utilities(p)[p]


@lru_cache(maxsize=None)
def _lcm_upto(denominators: tuple[int, ...]) -> int:
    from math import lcm

    return lcm(*denominators) if denominators else 1


def integer_utilities(scheme: WeightScheme, upto: int) -> tuple[list[int], int]:
    """Utilities scaled to integers: ``(U, D)`` with ``u(p) == U[p] / D``.

    The dynamic programs add millions of utilities; integer arithmetic keeps
    them exact without paying for ``Fraction`` normalisation each time.
    """
    us = scheme.utilities(upto)
    den = _lcm_upto(tuple(sorted({u.denominator for u in us})))
    return [int(u * den) for u in us], den


class ProfileStats(NamedTuple):
    max_vote_size: int
    max_degree: int
    distinct_votes: int


def profile_stats(p: ApprovalProfile) -> ProfileStats:
    s = max(len(v) for v in p.votes)
    d = max((len(a) for a in p.approvers), default=0)
    return ProfileStats(s, d, len(set(p.votes)))
