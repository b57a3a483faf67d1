"""Seeded generators for profiles with a prescribed structure.

Randomness comes from ``random.Random(seed)`` (Mersenne Twister), which gives
identical streams for a given seed on every platform and Python 3 release.
Voters and axes are shuffled, so a generated profile never hands its witness
to the detector for free.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .profile_core import ApprovalProfile, profile_from_indices

STRUCTURES = ("2PART", "PART", "VEI", "VI", "CEI", "CI", "WSC", "DUE", "UNRESTRICTED")


@dataclass(frozen=True)
class GenSpec:
    structure: str
    n: int
    m: int
    seed: int = 0
    s: int | None = None  # largest vote
    d: int | None = None  # largest candidate degree
    spread: int | None = None  # coordinate range for DUE

    def __post_init__(self) -> None:
        name = getattr(self.structure, "value", self.structure)
        name = str(name).upper()
        if name not in STRUCTURES:
            raise ValueError(f"cannot generate {self.structure!r}")
        object.__setattr__(self, "structure", name)
        if self.n < 1 or self.m < 1:
            raise ValueError("n and m must be positive")


def _interval(rng: random.Random, size: int, cap: int) -> tuple[int, int]:
    """Random [lo, hi) with at most ``cap`` elements inside ``range(size)``."""
    length = rng.randint(0, min(cap, size))
    lo = rng.randint(0, size - length)
    return lo, lo + length


def _capped_interval(rng: random.Random, size: int, cap: int, load: list[int], limit: int | None) -> range:
    """Random interval that stops before any position reaches ``limit``."""
    length = rng.randint(0, min(cap, size))
    lo = rng.randint(0, size - length)
    hi = lo
    while hi < lo + length and (limit is None or load[hi] < limit):
        hi += 1
    for x in range(lo, hi):
        load[x] += 1
    return range(lo, hi)


def _sides(rng: random.Random, size: int, cap: int) -> range:
    length = rng.randint(0, min(cap, size))
    return range(length) if rng.random() < 0.5 else range(size - length, size)


def _from_approvers(n: int, m: int, approvers: list[set[int]]) -> list[set[int]]:
    votes: list[set[int]] = [set() for _ in range(n)]
    for c, appr in enumerate(approvers):
        for i in appr:
            votes[i].add(c)
    return votes


def generate(spec: GenSpec) -> ApprovalProfile:
    rng = random.Random(spec.seed)
    n, m = spec.n, spec.m
    kind = spec.structure
    voter_slot = list(range(n))
    rng.shuffle(voter_slot)  # hidden voter order: position t is voter voter_slot[t]
    axis = list(range(m))
    rng.shuffle(axis)  # hidden candidate order

    if kind == "2PART":
        if m < 2 or n < 2:
            raise ValueError("2PART needs at least two voters and two candidates")
        cut = rng.randint(1, m - 1)
        a, b = set(axis[:cut]), set(axis[cut:])
        votes = [a, b] + [rng.choice((a, b)) for _ in range(n - 2)]
        rng.shuffle(votes)
    elif kind == "PART":
        parts_n = rng.randint(1, min(m, n))
        cuts = sorted(rng.sample(range(1, m), parts_n - 1))
        bounds = [0] + cuts + [m]
        parts = [set(axis[x:y]) for x, y in zip(bounds, bounds[1:])]
        votes = parts + [rng.choice(parts) for _ in range(n - parts_n)]
        rng.shuffle(votes)
    elif kind in ("VI", "VEI"):
        cap = spec.d if spec.d is not None else n
        load = [0] * n
        approvers = []
        for _ in range(m):
            if kind == "VI":
                span = _capped_interval(rng, n, cap, load, spec.s)
            else:
                span = _sides(rng, n, cap)
            approvers.append({voter_slot[t] for t in span})
        votes = _from_approvers(n, m, approvers)
    elif kind in ("CI", "CEI"):
        cap = spec.s if spec.s is not None else m
        load = [0] * m
        votes = []
        for _ in range(n):
            if kind == "CI":
                span = _capped_interval(rng, m, cap, load, spec.d)
            else:
                span = _sides(rng, m, cap)
            votes.append({axis[x] for x in span})
    elif kind == "WSC":
        u = {c for c in range(m) if rng.random() < 0.5}
        w = {c for c in range(m) if rng.random() < 0.5}
        mid = rng.choice((None, u & w, u | w))
        pool = [u, w] if mid is None else [u, mid, w]
        votes = [u, w][: min(n, 2)] + [rng.choice(pool) for _ in range(n - 2)]
        rng.shuffle(votes)
    elif kind == "DUE":
        spread = spec.spread if spec.spread is not None else 2 * max(n, m)
        while True:
            vpos = [rng.randint(0, spread) for _ in range(n)]
            cpos = [rng.randint(0, spread) for _ in range(m)]
            r = rng.randint(0, max(1, spread // 4))
            votes = [{c for c in range(m) if abs(x - cpos[c]) <= r} for x in vpos]
            if any(votes):
                break
    else:
        density = rng.random()
        votes = [{c for c in range(m) if rng.random() < density} for _ in range(n)]
    return profile_from_indices(m, votes)
