"""Exact committee selection under w-PAV and MAV.

Scores are exact.  The dynamic programs run on integers: utilities are
scaled by a common denominator (see ``integer_utilities``) and the final
optimum is turned back into a ``Fraction``.  Infeasible table cells are simply
absent from the per-layer dictionaries.

Every DP works on a witness order supplied by the caller (or found by
``solve``) and returns one optimal committee recovered from backpointers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .detection import (
    StructureProperty,
    WitnessError,
    _as_partition,
    detect,
    verify_witness,
    wsc_characterize,
)
from .profile_core import (
    HARMONIC,
    ApprovalProfile,
    Committee,
    ProfileError,
    WeightScheme,
    as_committee,
    integer_utilities,
    mask_to_indices,
    profile_stats,
)

S = StructureProperty


class NoApplicableAlgorithm(Exception):
    pass


class BudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class Rule:
    kind: str  # "wpav" or "mav"
    scheme: WeightScheme | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("wpav", "mav"):
            raise ValueError(f"unknown rule {self.kind!r}")
        if self.kind == "wpav" and self.scheme is None:
            object.__setattr__(self, "scheme", HARMONIC)
        if self.kind == "mav" and self.scheme is not None:
            raise ValueError("MAV takes no weights")

    @classmethod
    def pav(cls) -> "Rule":
        return cls("wpav", HARMONIC)

    @classmethod
    def mav(cls) -> "Rule":
        return cls("mav")

    @classmethod
    def wpav(cls, scheme: WeightScheme) -> "Rule":
        return cls("wpav", scheme)

    @property
    def is_mav(self) -> bool:
        return self.kind == "mav"


@dataclass(frozen=True)
class Solution:
    score: Fraction | int
    committee: Committee
    algorithm: str
    optimal_set: tuple[Committee, ...] | None = None


# ---------------------------------------------------------------- scoring


def score_wpav(p: ApprovalProfile, scheme: WeightScheme, w: Committee | Iterable[int]) -> Fraction:
    c = as_committee(w, p.m)
    us = scheme.utilities(c.k)
    return sum((us[len(c.members & v)] for v in p.votes), Fraction(0))


def score_mav(p: ApprovalProfile, w: Committee | Iterable[int]) -> int:
    c = as_committee(w, p.m)
    return max(len(c.members ^ v) for v in p.votes)


def score(p: ApprovalProfile, rule: Rule, w: Committee | Iterable[int]) -> Fraction | int:
    return score_mav(p, w) if rule.is_mav else score_wpav(p, rule.scheme, w)


def _check_k(p: ApprovalProfile, k: int) -> None:
    if not isinstance(k, int) or not 0 <= k <= p.m:
        raise ProfileError(f"committee size {k} must lie in [0, {p.m}]")


def _require(p: ApprovalProfile, prop: StructureProperty, witness) -> None:
    if not verify_witness(p, prop, witness):
        raise WitnessError(f"witness does not certify {prop.value}")


def _pad(members: Iterable[int], k: int, p: ApprovalProfile) -> Committee:
    """Fill up to ``k`` members, never-approved candidates first."""
    chosen = set(members)
    if len(chosen) > k:
        raise AssertionError("committee larger than k")
    spare = [c for c in range(p.m) if c not in chosen and not p.approvers[c]]
    spare += [c for c in range(p.m) if c not in chosen and p.approvers[c]]
    chosen.update(spare[: k - len(chosen)])
    return Committee(frozenset(chosen))


def _vote_groups(p: ApprovalProfile) -> list[tuple[int, int, int]]:
    """Distinct votes as (mask, multiplicity, size)."""
    cnt = Counter(p.masks)
    return [(mask, c, mask.bit_count()) for mask, c in cnt.items()]


# ---------------------------------------------------------------- oracle


def brute_force(p: ApprovalProfile, k: int, rule: Rule, budget: int = 10**7) -> Solution:
    """Enumerate every size-``k`` committee and keep all optimal ones."""
    _check_k(p, k)
    if comb(p.m, k) > budget:
        raise BudgetExceeded(f"C({p.m},{k}) committees exceed the budget {budget}")
    groups = _vote_groups(p)
    if rule.is_mav:
        best, opt = None, []
        for members in combinations(range(p.m), k):
            w = 0
            for c in members:
                w |= 1 << c
            val = max(k + size - 2 * (w & mask).bit_count() for mask, _, size in groups)
            if best is None or val < best:
                best, opt = val, [members]
            elif val == best:
                opt.append(members)
        score_val: Fraction | int = best
    else:
        U, D = integer_utilities(rule.scheme, k)
        best, opt = None, []
        for members in combinations(range(p.m), k):
            w = 0
            for c in members:
                w |= 1 << c
            val = sum(mult * U[(w & mask).bit_count()] for mask, mult, _ in groups)
            if best is None or val > best:
                best, opt = val, [members]
            elif val == best:
                opt.append(members)
        score_val = Fraction(best, D)
    committees = tuple(Committee(frozenset(o)) for o in opt)
    return Solution(score_val, committees[0], "oracle", committees)


# ---------------------------------------------------------------- VI, small votes


def _submasks(mask: int) -> list[int]:
    out = []
    sub = mask
    while True:
        out.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    out.reverse()
    return out


def pav_vi_bounded_s(p: ApprovalProfile, vi_order: Sequence[int], k: int, scheme: WeightScheme = HARMONIC) -> Solution:
    """w-PAV on a VI profile; cost grows like 4^s for votes of size at most s.

    Walking voters in VI order, the committee members a voter approves are
    the ones it shares with its predecessor plus candidates that appear for
    the first time.  The table is keyed by (W & v_i, committee members seen
    so far).
    """
    _check_k(p, k)
    vi_order = tuple(vi_order)
    _require(p, S.VI, vi_order)
    U, D = integer_utilities(scheme, k)
    layers: list[dict] = []
    cur: dict[tuple[int, int], tuple[int, object, int]] = {(0, 0): (0, None, 0)}
    prev = 0
    for i in vi_order:
        v = p.masks[i]
        grouped: dict[tuple[int, int], tuple[int, tuple[int, int]]] = {}
        for key, (val, _, _) in cur.items():
            g = (key[0] & v, key[1])
            if g not in grouped or val > grouped[g][0]:
                grouped[g] = (val, key)
        subs = [(n, n.bit_count()) for n in _submasks(v & ~prev)]
        nxt: dict[tuple[int, int], tuple[int, object, int]] = {}
        for (x, ell), (val, key) in grouped.items():
            for n, size in subs:
                if ell + size > k:
                    continue
                a = x | n
                val2 = val + U[a.bit_count()]
                key2 = (a, ell + size)
                old = nxt.get(key2)
                if old is None or val2 > old[0]:
                    nxt[key2] = (val2, key, n)
        layers.append(nxt)
        cur = nxt
        prev = v
    best_key = max(cur, key=lambda key: cur[key][0])
    members = 0
    key = best_key
    for layer in reversed(layers):
        _, back, n = layer[key]
        members |= n
        key = back
    return Solution(Fraction(cur[best_key][0], D), _pad(mask_to_indices(members), k, p), "pav-vi-s")


# ---------------------------------------------------------------- CI, small votes


def _axis_intervals(p: ApprovalProfile, axis: Sequence[int]) -> list[tuple[int, int] | None]:
    pos = [0] * p.m
    for j, c in enumerate(axis):
        pos[c] = j
    out = []
    for v in p.votes:
        if v:
            ps = [pos[c] for c in v]
            out.append((min(ps), max(ps)))
        else:
            out.append(None)
    return out


def _backtrace_bits(back: list[dict], key) -> list[int]:
    """Walk per-position backpointers ``key -> (prev_key, took)``; return taken positions."""
    taken = []
    for j in range(len(back) - 1, -1, -1):
        key, took = back[j][key]
        if took:
            taken.append(j)
    return taken


def pav_ci_bounded_s(p: ApprovalProfile, ci_order: Sequence[int], k: int, scheme: WeightScheme = HARMONIC) -> Solution:
    """w-PAV on a CI profile with votes of at most s candidates.

    Scanning the axis, the state is the set of chosen candidates among the
    last s - 1 positions (as a bitmask, bit t = t positions back) plus the
    committee size so far.  A voter is scored at its right end, where its
    whole interval lies in the current window of s positions.
    """
    _check_k(p, k)
    axis = tuple(ci_order)
    _require(p, S.CI, axis)
    U, D = integer_utilities(scheme, k)
    s = max(1, profile_stats(p).max_vote_size)
    enders: list[Counter] = [Counter() for _ in range(p.m)]
    for iv in _axis_intervals(p, axis):
        if iv is not None:
            enders[iv[1]][iv[1] - iv[0] + 1] += 1
    keep = (1 << (s - 1)) - 1
    cur = {(0, 0): 0}
    back: list[dict] = []
    for j in range(p.m):
        nxt: dict[tuple[int, int], int] = {}
        bp: dict = {}
        ends = [((1 << length) - 1, cnt) for length, cnt in enders[j].items()]
        for (a, ell), val in cur.items():
            for x in (0, 1):
                if ell + x > k or k - ell - x > p.m - j - 1:
                    continue
                win = (a << 1) | x
                gain = sum(cnt * U[(win & low).bit_count()] for low, cnt in ends)
                key = (win & keep, ell + x)
                if key not in nxt or val + gain > nxt[key]:
                    nxt[key] = val + gain
                    bp[key] = ((a, ell), x)
        back.append(bp)
        cur = nxt
    finals = [key for key in cur if key[1] == k]
    best = max(finals, key=lambda key: cur[key])
    members = [axis[j] for j in _backtrace_bits(back, best)]
    return Solution(Fraction(cur[best], D), Committee(frozenset(members)), "pav-ci-s")


# ---------------------------------------------------------------- CI, small degree


def pav_ci_bounded_d(p: ApprovalProfile, ci_order: Sequence[int], k: int, scheme: WeightScheme = HARMONIC) -> Solution:
    """w-PAV on a CI profile where each candidate has at most d approvers.

    The voters whose interval covers axis position j are exactly the
    approvers of that candidate, so the state records, for each of them that
    has not ended yet, how many committee members it has seen (at most
    (k+1)^d vectors), plus the committee size.
    """
    _check_k(p, k)
    axis = tuple(ci_order)
    _require(p, S.CI, axis)
    U, D = integer_utilities(scheme, k)
    ivs = _axis_intervals(p, axis)
    end_of = {i: iv[1] for i, iv in enumerate(ivs) if iv is not None}
    cur: dict[tuple[tuple[int, ...], int], int] = {((), 0): 0}
    carry_prev: list[int] = []
    back: list[dict] = []
    for j, c in enumerate(axis):
        active = sorted(p.approvers[c])
        carry = [i for i in active if end_of[i] > j]
        ending = [i for i in active if end_of[i] == j]
        nxt: dict = {}
        bp: dict = {}
        for (rs, ell), val in cur.items():
            seen = dict(zip(carry_prev, rs))
            for x in (0, 1):
                if ell + x > k or k - ell - x > p.m - j - 1:
                    continue
                counts = {i: seen.get(i, 0) + x for i in active}
                gain = sum(U[counts[i]] for i in ending)
                key = (tuple(counts[i] for i in carry), ell + x)
                if key not in nxt or val + gain > nxt[key]:
                    nxt[key] = val + gain
                    bp[key] = ((rs, ell), x)
        back.append(bp)
        cur = nxt
        carry_prev = carry
    finals = [key for key in cur if key[1] == k]
    best = max(finals, key=lambda key: cur[key])
    members = [axis[j] for j in _backtrace_bits(back, best)]
    return Solution(Fraction(cur[best], D), Committee(frozenset(members)), "pav-ci-d")


# ---------------------------------------------------------------- VI, small degree


def _vi_classes(p: ApprovalProfile, order: Sequence[int]) -> tuple[dict[int, list[tuple[int, list[int]]]], int]:
    """Group approved candidates by their voter interval; keyed by start position."""
    pos = [0] * p.n
    for t, i in enumerate(order):
        pos[i] = t
    by_interval: dict[tuple[int, int], list[int]] = {}
    for c, appr in enumerate(p.approvers):
        if appr:
            ps = [pos[i] for i in appr]
            by_interval.setdefault((min(ps), max(ps)), []).append(c)
    starts: dict[int, list[tuple[int, list[int]]]] = {}
    longest = 0
    for (b, e), members in sorted(by_interval.items()):
        starts.setdefault(b, []).append((e, sorted(members)))
        longest = max(longest, e - b + 1)
    return starts, longest


def _count_vectors(caps: Sequence[int], total: int):
    """All vectors q with 0 <= q_i <= caps_i and sum(q) <= total."""
    if not caps:
        yield ()
        return
    head, rest = caps[0], caps[1:]
    for q in range(min(head, total) + 1):
        for tail in _count_vectors(rest, total - q):
            yield (q,) + tail


def pav_vi_bounded_d(p: ApprovalProfile, vi_order: Sequence[int], k: int, scheme: WeightScheme = HARMONIC) -> Solution:
    """w-PAV on a VI profile where each candidate has at most d approvers.

    Candidates sharing a voter interval are interchangeable, so at the first
    voter of each interval class the DP chooses how many members to take
    from it.  Rather than the full matrix of per-class counts, the state
    keeps ``x[t]`` = number of chosen candidates still approved ``t+1``
    voters ahead, which is all the later voters can observe.
    """
    _check_k(p, k)
    order = tuple(vi_order)
    _require(p, S.VI, order)
    U, D = integer_utilities(scheme, k)
    starts, longest = _vi_classes(p, order)
    width = max(longest - 1, 0)
    zero = (0,) * width
    cur: dict[tuple[tuple[int, ...], int], int] = {(zero, 0): 0}
    back: list[dict] = []
    for t in range(p.n):
        classes = starts.get(t, [])
        caps = [len(members) for _, members in classes]
        nxt: dict = {}
        bp: dict = {}
        for (x, ell), val in cur.items():
            old = x[0] if width else 0
            for q in _count_vectors(caps, k - ell):
                cov = old + sum(q)
                new_x = tuple(
                    (x[d + 1] if d + 1 < width else 0)
                    + sum(qi for qi, (e, _) in zip(q, classes) if e >= t + d + 1)
                    for d in range(width)
                )
                key = (new_x, ell + sum(q))
                val2 = val + U[cov]
                if key not in nxt or val2 > nxt[key]:
                    nxt[key] = val2
                    bp[key] = ((x, ell), q)
        back.append(bp)
        cur = nxt
    best = max(cur, key=lambda key: cur[key])
    members: list[int] = []
    key = best
    for t in range(p.n - 1, -1, -1):
        key, q = back[t][key]
        for qi, (_, cls) in zip(q, starts.get(t, [])):
            members.extend(cls[:qi])
    return Solution(Fraction(cur[best], D), _pad(members, k, p), "pav-vi-d")


# ---------------------------------------------------------------- truncated weights


def _truncation(scheme: WeightScheme) -> int:
    i0 = scheme.cutoff
    if i0 is None:
        raise ValueError("the weight scheme is not truncated")
    return i0


def _wpav_trunc_vi(p: ApprovalProfile, order: tuple[int, ...], k: int, scheme: WeightScheme, i0: int) -> Solution:
    # Only the i0 chosen candidates approved longest into the future matter:
    # key each candidate by the position of its last approver.
    pos = [0] * p.n
    for t, i in enumerate(order):
        pos[i] = t
    last = {c: max(pos[i] for i in appr) for c, appr in enumerate(p.approvers) if appr}

    def rank(c: int) -> tuple[int, int]:
        return (-last[c], c)

    U, D = integer_utilities(scheme, k)
    cur: dict[tuple[tuple[int, ...], int], int] = {((), 0): 0}
    back: list[dict] = []
    prev: frozenset[int] = frozenset()
    for i in order:
        v = p.votes[i]
        fresh = sorted(v - prev, key=rank)
        nxt: dict = {}
        bp: dict = {}
        for (top, ell), val in cur.items():
            old = [c for c in top if c in v]
            for q in range(min(len(fresh), k - ell) + 1):
                merged = tuple(sorted(old + fresh[:q], key=rank)[:i0])
                val2 = val + U[min(len(old) + q, i0)]
                key = (merged, ell + q)
                if key not in nxt or val2 > nxt[key]:
                    nxt[key] = val2
                    bp[key] = ((top, ell), fresh[:q])
        back.append(bp)
        cur = nxt
        prev = v
    best = max(cur, key=lambda key: cur[key])
    members: list[int] = []
    key = best
    for bp in reversed(back):
        key, took = bp[key]
        members.extend(took)
    return Solution(Fraction(cur[best], D), _pad(members, k, p), "wpav-trunc-vi")


def _wpav_trunc_ci(p: ApprovalProfile, axis: tuple[int, ...], k: int, scheme: WeightScheme, i0: int) -> Solution:
    # The state keeps the positions of the last i0 chosen candidates, pruned
    # to positions some still-open voter can see.
    U, D = integer_utilities(scheme, k)
    ivs = [iv for iv in _axis_intervals(p, axis) if iv is not None]
    ending: list[Counter] = [Counter() for _ in range(p.m)]
    for b, e in ivs:
        ending[e][b] += 1
    inf = p.m
    low = [inf] * p.m
    # low[j] = smallest left end among voters ending after j.
    best_b = [inf] * (p.m + 1)
    for b, e in ivs:
        best_b[e] = min(best_b[e], b)
    running = inf
    for j in range(p.m - 1, -1, -1):
        low[j] = running
        running = min(running, best_b[j])
    cur: dict[tuple[tuple[int, ...], int], int] = {((), 0): 0}
    back: list[dict] = []
    for j in range(p.m):
        nxt: dict = {}
        bp: dict = {}
        for (recent, ell), val in cur.items():
            for x in (0, 1):
                if ell + x > k or k - ell - x > p.m - j - 1:
                    continue
                r2 = (recent + (j,))[-i0:] if x and i0 else recent
                gain = 0
                for b, cnt in ending[j].items():
                    gain += cnt * U[min(i0, sum(1 for q in r2 if q >= b))]
                key = (tuple(q for q in r2 if q >= low[j]), ell + x)
                if key not in nxt or val + gain > nxt[key]:
                    nxt[key] = val + gain
                    bp[key] = ((recent, ell), x)
        back.append(bp)
        cur = nxt
    finals = [key for key in cur if key[1] == k]
    best = max(finals, key=lambda key: cur[key])
    members = [axis[j] for j in _backtrace_bits(back, best)]
    return Solution(Fraction(cur[best], D), Committee(frozenset(members)), "wpav-trunc-ci")


def wpav_truncated(
    p: ApprovalProfile, order: Sequence[int], axis_kind: str, scheme: WeightScheme, k: int
) -> Solution:
    """w-PAV for weights that vanish after position i0, on VI or CI profiles."""
    _check_k(p, k)
    i0 = _truncation(scheme)
    order = tuple(order)
    kind = axis_kind.upper()
    if kind == "VI":
        _require(p, S.VI, order)
        return _wpav_trunc_vi(p, order, k, scheme, i0)
    if kind == "CI":
        _require(p, S.CI, order)
        return _wpav_trunc_ci(p, order, k, scheme, i0)
    raise ValueError("axis_kind must be VI or CI")


# ---------------------------------------------------------------- VEI / CEI / WSC / PART


def _best_of(p: ApprovalProfile, rule: Rule, candidates: Iterable[Iterable[int]], algorithm: str) -> Solution:
    best = None
    for members in candidates:
        c = Committee(frozenset(members))
        val = score(p, rule, c)
        if best is None or (val < best[0] if rule.is_mav else val > best[0]):
            best = (val, c)
    assert best is not None
    return Solution(best[0], best[1], algorithm)


def vei_committee(p: ApprovalProfile, vei_order: Sequence[int], k: int, rule: Rule) -> Solution:
    """Optimal committee on a VEI profile, for w-PAV or MAV.

    Candidates split into those approved by everyone, by a proper prefix of
    voters, by a proper suffix, or by nobody.  A candidate whose approver set
    contains another's is at least as good for both rules, so only how many
    to take from the prefix side versus the suffix side is left to choose.
    """
    _check_k(p, k)
    order = tuple(vei_order)
    _require(p, S.VEI, order)
    first, last = p.votes[order[0]], p.votes[order[-1]]
    everyone = sorted(first & last)
    by_size = lambda c: (-len(p.approvers[c]), c)  # noqa: E731
    left = sorted(first - last, key=by_size)
    right = sorted(last - first, key=by_size)
    nobody = [c for c in range(p.m) if not p.approvers[c]]
    base = everyone[:k]
    rest = k - len(base)
    pad = max(0, rest - len(left) - len(right))
    budget = rest - pad
    splits = []
    for a in range(min(budget, len(left)) + 1):
        b = budget - a
        if b <= len(right):
            splits.append(base + left[:a] + right[:b] + nobody[:pad])
    return _best_of(p, rule, splits, "vei")


def cei_committee(p: ApprovalProfile, cei_axis: Sequence[int], k: int, rule: Rule) -> Solution:
    """Optimal committee on a CEI profile via a DP over the axis.

    Cell (j, l): l members among the first j axis candidates.  A prefix vote
    ending at the j-th candidate sees exactly l members; a suffix vote
    starting right after it sees k - l.  For MAV the corresponding distances
    are k + j - 2l and (m - j) - k + 2l; the printed suffix recurrence is off
    by one against these and is not used.
    """
    _check_k(p, k)
    axis = tuple(cei_axis)
    _require(p, S.CEI, axis)
    m = p.m
    prefix_at: list[int] = [0] * (m + 1)
    suffix_at: list[int] = [0] * (m + 1)
    empty = 0
    for iv in _axis_intervals(p, axis):
        if iv is None:
            empty += 1
        elif iv[0] == 0:
            prefix_at[iv[1] + 1] += 1
        else:
            suffix_at[iv[0]] += 1
    if rule.is_mav:

        def attach(j: int, ell: int) -> int:
            worst = -1
            if prefix_at[j]:
                worst = max(worst, k + j - 2 * ell)
            if suffix_at[j]:
                worst = max(worst, m - j - k + 2 * ell)
            return worst

        def better(a: int, b: int) -> bool:
            return a < b

    else:
        U, D = integer_utilities(rule.scheme, k)

        def attach(j: int, ell: int) -> int:
            return prefix_at[j] * U[ell] + suffix_at[j] * U[k - ell]

        def better(a: int, b: int) -> bool:
            return a > b

    def combine(prev: int, j: int, ell: int) -> int:
        return max(prev, attach(j, ell)) if rule.is_mav else prev + attach(j, ell)

    start = (k if empty else -1) if rule.is_mav else 0
    cur = {0: combine(start, 0, 0)}
    back: list[dict] = []
    for j in range(1, m + 1):
        nxt: dict[int, int] = {}
        bp: dict = {}
        for ell, val in cur.items():
            for x in (0, 1):
                e2 = ell + x
                if e2 > k or k - e2 > m - j:
                    continue
                v2 = combine(val, j, e2)
                if e2 not in nxt or better(v2, nxt[e2]):
                    nxt[e2] = v2
                    bp[e2] = (ell, x)
        back.append(bp)
        cur = nxt
    members = [axis[j] for j in _backtrace_bits(back, k)]
    val = cur[k]
    committee = Committee(frozenset(members))
    if rule.is_mav:
        return Solution(val, committee, "cei")
    return Solution(Fraction(val, D), committee, "cei")


def wsc_committee(p: ApprovalProfile, k: int, rule: Rule) -> Solution:
    """Optimal committee on a WSC profile: only per-block counts matter."""
    _check_k(p, k)
    triple = wsc_characterize(p)
    if triple is None:
        raise WitnessError("profile is not WSC")
    blocks = [sorted(b) for b in triple.blocks(p.m)]
    sizes = [len(b) for b in blocks]
    groups = Counter(p.votes)
    # Each vote is a union of blocks; record which.
    shapes = [(tuple(bool(blocks[t]) and set(blocks[t]) <= v for t in range(4)), len(v), mult) for v, mult in groups.items()]
    if not rule.is_mav:
        U, D = integer_utilities(rule.scheme, k)
    best = None
    for k1 in range(min(k, sizes[0]) + 1):
        for k2 in range(min(k - k1, sizes[1]) + 1):
            for k3 in range(min(k - k1 - k2, sizes[2]) + 1):
                k4 = k - k1 - k2 - k3
                if k4 > sizes[3]:
                    continue
                ks = (k1, k2, k3, k4)
                if rule.is_mav:
                    val = max(k + size - 2 * sum(q for q, inside in zip(ks, shape) if inside) for shape, size, _ in shapes)
                    good = best is None or val < best[0]
                else:
                    val = sum(mult * U[sum(q for q, inside in zip(ks, shape) if inside)] for shape, _, mult in shapes)
                    good = best is None or val > best[0]
                if good:
                    best = (val, ks)
    val, ks = best
    members = [c for block, q in zip(blocks, ks) for c in block[:q]]
    committee = Committee(frozenset(members))
    return Solution(val if rule.is_mav else Fraction(val, D), committee, "wsc")


def _ceil_half(x: int) -> int:
    return -((-x) // 2)


def part_committee(p: ApprovalProfile, k: int, rule: Rule) -> Solution:
    """Optimal committee when the distinct votes partition the candidates."""
    _check_k(p, k)
    res = detect(p, S.PART)
    if not res.holds:
        raise WitnessError("profile is not PART")
    parts = [sorted(part) for part in _as_partition(res.witness, p.m)]
    mult = Counter(p.votes)
    weight = [mult[frozenset(part)] for part in parts]
    if rule.is_mav:
        # Smallest t such that every part can get its quota within k seats.
        for t in range(0, k + p.m + 1):
            quota = [max(0, _ceil_half(len(part) + k - t)) for part in parts]
            if all(q <= len(part) for q, part in zip(quota, parts)) and sum(quota) <= k:
                members = [c for q, part in zip(quota, parts) for c in part[:q]]
                spare = [c for q, part in zip(quota, parts) for c in part[q:]]
                members += spare[: k - len(members)]
                committee = Committee(frozenset(members))
                return Solution(t, committee, "part")
        raise AssertionError("no feasible MAV threshold")
    scheme = rule.scheme
    taken = [0] * len(parts)
    for _ in range(k):
        best_j, best_gain = None, None
        for j, part in enumerate(parts):
            if taken[j] < len(part):
                gain = weight[j] * scheme.weight(taken[j] + 1)
                if best_gain is None or gain > best_gain:
                    best_j, best_gain = j, gain
        taken[best_j] += 1
    members = [c for q, part in zip(taken, parts) for c in part[:q]]
    us = scheme.utilities(k)
    total = sum((weight[j] * us[taken[j]] for j in range(len(parts))), Fraction(0))
    return Solution(total, Committee(frozenset(members)), "part")


# ---------------------------------------------------------------- dispatch


@dataclass(frozen=True)
class SolveConfig:
    max_s: int = 8  # largest vote size for the 4^s / 2^s tables
    max_states: int = 10**5  # cap on (k+1)^d style state counts
    oracle_budget: int = 10**7


ALGORITHMS = (
    "part",
    "wsc",
    "vei",
    "cei",
    "pav-vi-s",
    "pav-ci-s",
    "pav-ci-d",
    "pav-vi-d",
    "wpav-trunc-vi",
    "wpav-trunc-ci",
    "oracle",
)


def _witness(p: ApprovalProfile, prop: StructureProperty):
    res = detect(p, prop)
    if not res.holds:
        raise NoApplicableAlgorithm(f"profile is not {prop.value}")
    return res.witness


def run_algorithm(p: ApprovalProfile, k: int, rule: Rule, name: str, config: SolveConfig = SolveConfig()) -> Solution:
    """Run one named algorithm, detecting the structure it needs first."""
    if name == "oracle":
        return brute_force(p, k, rule, config.oracle_budget)
    if name == "part":
        _witness(p, S.PART)
        return part_committee(p, k, rule)
    if name == "wsc":
        _witness(p, S.WSC)
        return wsc_committee(p, k, rule)
    if name == "vei":
        return vei_committee(p, _witness(p, S.VEI), k, rule)
    if name == "cei":
        return cei_committee(p, _witness(p, S.CEI), k, rule)
    if name not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {name!r}")
    if rule.is_mav:
        raise NoApplicableAlgorithm(f"{name} solves w-PAV only")
    if name == "pav-vi-s":
        return pav_vi_bounded_s(p, _witness(p, S.VI), k, rule.scheme)
    if name == "pav-ci-s":
        return pav_ci_bounded_s(p, _witness(p, S.CI), k, rule.scheme)
    if name == "pav-ci-d":
        return pav_ci_bounded_d(p, _witness(p, S.CI), k, rule.scheme)
    if name == "pav-vi-d":
        return pav_vi_bounded_d(p, _witness(p, S.VI), k, rule.scheme)
    if name == "wpav-trunc-vi":
        return wpav_truncated(p, _witness(p, S.VI), "VI", rule.scheme, k)
    return wpav_truncated(p, _witness(p, S.CI), "CI", rule.scheme, k)


def solve(p: ApprovalProfile, k: int, rule: Rule, strategy: str = "auto", config: SolveConfig = SolveConfig()) -> Solution:
    """Pick the most specific applicable algorithm, or run the named one."""
    _check_k(p, k)
    if strategy != "auto":
        return run_algorithm(p, k, rule, strategy, config)
    if detect(p, S.PART).holds:
        return part_committee(p, k, rule)
    if detect(p, S.WSC).holds:
        return wsc_committee(p, k, rule)
    for prop, fn in ((S.VEI, vei_committee), (S.CEI, cei_committee)):
        res = detect(p, prop)
        if res.holds:
            return fn(p, res.witness, k, rule)
    if not rule.is_mav:
        stats = profile_stats(p)
        vi, ci = detect(p, S.VI), detect(p, S.CI)
        i0 = rule.scheme.cutoff
        if i0 is not None and (vi.holds or ci.holds):
            small = sum(comb(stats.max_vote_size, t) for t in range(min(i0, stats.max_vote_size) + 1))
            if small * (k + 1) <= config.max_states:
                if vi.holds:
                    return wpav_truncated(p, vi.witness, "VI", rule.scheme, k)
                return wpav_truncated(p, ci.witness, "CI", rule.scheme, k)
        if stats.max_vote_size <= config.max_s:
            if ci.holds:
                return pav_ci_bounded_s(p, ci.witness, k, rule.scheme)
            if vi.holds:
                return pav_vi_bounded_s(p, vi.witness, k, rule.scheme)
        if (k + 1) ** stats.max_degree <= config.max_states:
            if ci.holds:
                return pav_ci_bounded_d(p, ci.witness, k, rule.scheme)
            if vi.holds:
                return pav_vi_bounded_d(p, vi.witness, k, rule.scheme)
    if comb(p.m, k) <= config.oracle_budget:
        return brute_force(p, k, rule, config.oracle_budget)
    raise NoApplicableAlgorithm("no structured algorithm applies and the oracle budget is exceeded")
