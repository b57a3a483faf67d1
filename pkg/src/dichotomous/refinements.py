"""Total-order refinements of approval profiles.

Builds single-peaked and one-dimensional Euclidean refinements from interval
witnesses and checks the usual total-order domain conditions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Sequence

from .detection import (
    UNKNOWN,
    EuclideanEmbedding,
    StructureProperty,
    WitnessError,
    _ssc_ok,
    verify_embedding,
    verify_witness,
)
from .profile_core import ApprovalProfile


@dataclass(frozen=True)
class TotalOrderProfile:
    """``rankings[i]`` lists candidate indices from most to least preferred."""

    rankings: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rs = tuple(tuple(r) for r in self.rankings)
        object.__setattr__(self, "rankings", rs)
        if not rs:
            raise ValueError("no rankings")
        m = len(rs[0])
        for r in rs:
            if sorted(r) != list(range(m)):
                raise ValueError("each ranking must permute the candidates")

    @property
    def n(self) -> int:
        return len(self.rankings)

    @property
    def m(self) -> int:
        return len(self.rankings[0])

    def ranks(self, i: int) -> list[int]:
        pos = [0] * self.m
        for r, c in enumerate(self.rankings[i]):
            pos[c] = r
        return pos


def verify_refinement(p: ApprovalProfile, t: TotalOrderProfile) -> bool:
    """Every approved candidate is ranked above every disapproved one."""
    if p.n != t.n or p.m != t.m:
        raise ValueError("profile and rankings differ in size")
    for v, r in zip(p.votes, t.rankings):
        if set(r[: len(v)]) != v:
            return False
    return True


def _axis_pos(axis: Sequence[int], m: int) -> list[int]:
    if sorted(axis) != list(range(m)):
        raise ValueError("axis must permute the candidates")
    pos = [0] * m
    for i, c in enumerate(axis):
        pos[c] = i
    return pos


def single_peaked_triples(t: TotalOrderProfile, axis: Sequence[int]) -> bool:
    """No voter ranks the middle of an axis triple below both outer candidates."""
    axis = list(axis)
    _axis_pos(axis, t.m)
    m = t.m
    for i in range(t.n):
        rank = t.ranks(i)
        for x in range(m):
            for y in range(x + 1, m):
                for z in range(y + 1, m):
                    a, b, c = axis[x], axis[y], axis[z]
                    if rank[a] < rank[b] and rank[c] < rank[b]:
                        return False
    return True


def single_peaked_prefixes(t: TotalOrderProfile, axis: Sequence[int]) -> bool:
    """Every top segment of every ranking is contiguous on the axis."""
    pos = _axis_pos(axis, t.m)
    for r in t.rankings:
        lo = hi = pos[r[0]]
        for c in r[1:]:
            x = pos[c]
            if x == lo - 1:
                lo = x
            elif x == hi + 1:
                hi = x
            else:
                return False
    return True


def verify_single_peaked(t: TotalOrderProfile, axis: Sequence[int], method: str = "prefix") -> bool:
    if method == "prefix":
        return single_peaked_prefixes(t, axis)
    if method == "triple":
        return single_peaked_triples(t, axis)
    raise ValueError(f"unknown method {method!r}")


def _order_masks(ranking: Sequence[int], m: int) -> tuple[int, int]:
    rank = [0] * m
    for r, c in enumerate(ranking):
        rank[c] = r
    a_mask = b_mask = 0
    bit = 1
    for a in range(m):
        for b in range(a + 1, m):
            if rank[a] < rank[b]:
                a_mask |= bit
            else:
                b_mask |= bit
            bit <<= 1
    return a_mask, b_mask


def verify_single_crossing(t: TotalOrderProfile, order: Sequence[int]) -> bool:
    """Along ``order`` each pair of candidates changes relative rank at most once."""
    if sorted(order) != list(range(t.n)):
        raise ValueError("order must permute the voters")
    return _ssc_ok([_order_masks(t.rankings[i], t.m) for i in order])


def refine_psp(p: ApprovalProfile, ci_axis: Sequence[int]) -> TotalOrderProfile:
    """Sweep each interval vote left to right, then rightwards, then leftwards."""
    if not verify_witness(p, StructureProperty.CI, tuple(ci_axis)):
        raise WitnessError("axis does not witness CI")
    axis = list(ci_axis)
    pos = _axis_pos(axis, p.m)
    out = []
    for v in p.votes:
        if not v:
            out.append(tuple(axis))
            continue
        ps = [pos[c] for c in v]
        lo, hi = min(ps), max(ps)
        seq = list(range(lo, hi + 1)) + list(range(hi + 1, p.m)) + list(range(lo - 1, -1, -1))
        out.append(tuple(axis[x] for x in seq))
    return TotalOrderProfile(tuple(out))


def _distance_ranking(x: Fraction, cand: Sequence[Fraction]) -> tuple[int, ...]:
    return tuple(sorted(range(len(cand)), key=lambda c: (abs(x - cand[c]), cand[c])))


def verify_one_euclidean(t: TotalOrderProfile, emb: EuclideanEmbedding) -> bool:
    """Each ranking lists candidates by strictly increasing distance from its voter."""
    if len(emb.voter_pos) != t.n or len(emb.candidate_pos) != t.m:
        return False
    for x, r in zip(emb.voter_pos, t.rankings):
        ds = [abs(x - emb.candidate_pos[c]) for c in r]
        if any(a >= b for a, b in zip(ds, ds[1:])):
            return False
    return True


def refine_pe(p: ApprovalProfile, emb: EuclideanEmbedding) -> tuple[TotalOrderProfile, EuclideanEmbedding]:
    """Rank by distance, ties toward the smaller coordinate, then nudge voters left.

    Every voter moves left by the same concrete ``eps``, a quarter of the
    smallest positive gap between any two voter-candidate distances (or
    between a distance and zero).  That keeps strict comparisons intact and
    breaks each tie in favour of the left candidate, so the nudged
    embedding realises the rankings with strict inequalities.  Radii are
    recomputed for the nudged positions.
    """
    if not verify_embedding(p, emb, uniform=False):
        raise WitnessError("embedding does not realise the profile")
    cand = emb.candidate_pos
    if len(set(cand)) != len(cand):
        raise WitnessError("candidate positions must be distinct")
    rankings = tuple(_distance_ranking(x, cand) for x in emb.voter_pos)
    gaps = set()
    for x in emb.voter_pos:
        ds = sorted({abs(x - y) for y in cand} | {Fraction(0)})
        gaps.update(b - a for a, b in zip(ds, ds[1:]))
    eps = min(gaps) / 4 if gaps else Fraction(1)
    voters = tuple(x - eps for x in emb.voter_pos)
    radii = []
    for x, v in zip(voters, p.votes):
        if v:
            radii.append(max(abs(x - cand[c]) for c in v))
        else:
            radii.append(min(abs(x - y) for y in cand) / 2)
    nudged = EuclideanEmbedding(voters, cand, radii=tuple(radii))
    t = TotalOrderProfile(rankings)
    if not (verify_one_euclidean(t, nudged) and verify_embedding(p, nudged, uniform=False)):
        raise AssertionError("perturbation failed to separate distances")
    return t, nudged


def voters_by_position(emb: EuclideanEmbedding) -> tuple[int, ...]:
    return tuple(sorted(range(len(emb.voter_pos)), key=lambda i: (emb.voter_pos[i], i)))


def _refinements(v: frozenset[int], m: int) -> list[tuple[int, ...]]:
    top = sorted(v)
    bottom = [c for c in range(m) if c not in v]
    return [a + b for a in permutations(top) for b in permutations(bottom)]


def psc_exhaustive(p: ApprovalProfile, budget: int = 10**6):
    """Search refinements and voter orders for a single-crossing refinement.

    Returns True/False, or ``UNKNOWN`` once ``budget`` search nodes are spent.
    """
    m, n = p.m, p.n
    options = []
    for v in p.votes:
        if factorial(len(v)) * factorial(m - len(v)) > budget:
            return UNKNOWN
        options.append([_order_masks(r, m) for r in _refinements(v, m)])
    # Identical votes are interchangeable, so they are placed in index order.
    earlier_twin = [max((j for j in range(i) if p.votes[j] == p.votes[i]), default=-1) for i in range(n)]
    used = [False] * n
    spent = 0

    class _OutOfBudget(Exception):
        pass

    def search(depth: int, sa: int, sb: int, ca: int, cb: int) -> bool:
        nonlocal spent
        if depth == n:
            return True
        for i in range(n):
            if used[i] or (earlier_twin[i] >= 0 and not used[earlier_twin[i]]):
                continue
            used[i] = True
            for am, bm in options[i]:
                spent += 1
                if spent > budget:
                    raise _OutOfBudget
                if am & ca or bm & cb:
                    continue
                if search(depth + 1, sa | am, sb | bm, ca | (bm & sa), cb | (am & sb)):
                    return True
            used[i] = False
        return False

    try:
        return search(0, 0, 0, 0, 0)
    except _OutOfBudget:
        return UNKNOWN
