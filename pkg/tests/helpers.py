"""Shared builders and strategies for the test suite."""

from itertools import combinations_with_replacement, permutations

from hypothesis import strategies as st

from dichotomous.profile_core import build_profile, profile_from_indices


def prof(*votes: str, cands: str | None = None):
    """Profile over one-letter labels, e.g. ``prof("ab", "", "bc")``."""
    if cands is None:
        cands = "".join(sorted(set("".join(votes)))) or "a"
    return build_profile(list(cands), [set(v) for v in votes])


def committee(p, labels: str) -> frozenset[int]:
    return frozenset(p.index_of(c) for c in labels)


@st.composite
def profiles(draw, max_n: int = 6, max_m: int = 6, min_m: int = 1):
    m = draw(st.integers(min_m, max_m))
    n = draw(st.integers(1, max_n))
    votes = draw(st.lists(st.frozensets(st.integers(0, m - 1)), min_size=n, max_size=n))
    return profile_from_indices(m, votes)


def all_vote_multisets(m: int, n: int):
    subsets = [frozenset(c for c in range(m) if b >> c & 1) for b in range(1 << m)]
    yield from combinations_with_replacement(subsets, n)


def canonical_multiset(votes, m: int):
    """Representative of a vote multiset up to renaming candidates."""
    best = None
    for perm in permutations(range(m)):
        key = tuple(sorted(tuple(sorted(perm[c] for c in v)) for v in votes))
        if best is None or key < best:
            best = key
    return best
