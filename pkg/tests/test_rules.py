from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dichotomous.detection import StructureProperty as S, WitnessError, detect
from dichotomous.generators import GenSpec, generate
from dichotomous.profile_core import CHAMBERLIN_COURANT, HARMONIC, ProfileError, WeightScheme, profile_from_indices
from dichotomous.rules import (
    BudgetExceeded,
    NoApplicableAlgorithm,
    Rule,
    brute_force,
    cei_committee,
    part_committee,
    pav_ci_bounded_d,
    pav_ci_bounded_s,
    pav_vi_bounded_d,
    pav_vi_bounded_s,
    run_algorithm,
    score,
    score_mav,
    score_wpav,
    solve,
    vei_committee,
    wpav_truncated,
    wsc_committee,
)

from helpers import committee, prof, profiles

PAV = Rule.pav()
MAV = Rule.mav()


def labels_of(p, c):
    return "".join(p.candidate_labels[x] for x in c.sorted())


def test_score_examples():
    p = prof("ab", "ac", "bc")
    assert score_wpav(p, HARMONIC, committee(p, "ab")) == Fraction(7, 2)
    q = prof("a")
    assert score_wpav(q, HARMONIC, committee(q, "a")) == 1
    r = prof("a", "b", cands="abc")
    assert score_wpav(r, HARMONIC, committee(r, "c")) == 0


def test_mav_score_examples():
    p = prof("ab", "cd")
    assert score_mav(p, committee(p, "ac")) == 2
    assert score_mav(prof("ab"), {0, 1}) == 0
    assert score_mav(prof("", cands="abc"), {0, 2}) == 2


def test_score_rejects_out_of_range_committee():
    with pytest.raises(ProfileError):
        score_mav(prof("ab"), {5})


@given(profiles(max_m=6), st.data())
def test_mav_identity(p, data):
    w = frozenset(data.draw(st.sets(st.integers(0, p.m - 1))))
    assert score_mav(p, w) == max(len(w) + len(v) - 2 * len(w & v) for v in p.votes)


@given(profiles(max_m=6), st.data())
def test_padding_with_unapproved_candidate_is_neutral(p, data):
    idle = [c for c in range(p.m) if not p.approvers[c]]
    if not idle:
        return
    w = frozenset(data.draw(st.sets(st.sampled_from([c for c in range(p.m) if c != idle[0]] or [idle[0]]))))
    w -= {idle[0]}
    # Harmonic utilities depend only on |W & v|, never on |W|.
    assert score_wpav(p, HARMONIC, w | {idle[0]}) == score_wpav(p, HARMONIC, w)


def test_brute_force_examples():
    p = prof("ab", "ac", "bc")
    sol = brute_force(p, 2, PAV)
    assert sol.score == Fraction(7, 2) and len(sol.optimal_set) == 3
    q = prof("ab", "cd")
    sol = brute_force(q, 2, MAV)
    assert sol.score == 2
    assert {labels_of(q, c) for c in sol.optimal_set} == {"ac", "ad", "bc", "bd"}
    full = brute_force(p, 3, PAV)
    assert full.optimal_set == (full.committee,) and full.committee.k == 3


def test_brute_force_budget_and_k():
    p = profile_from_indices(30, [{0}])
    with pytest.raises(BudgetExceeded):
        brute_force(p, 15, PAV, budget=1000)
    with pytest.raises(ProfileError):
        brute_force(prof("ab"), 3, PAV)


def test_pav_vi_examples():
    p = prof("ab", "ac", "ad")
    assert pav_vi_bounded_s(p, (0, 1, 2), 2).score == Fraction(7, 2)
    assert pav_vi_bounded_s(prof("ab"), (0,), 2).score == Fraction(3, 2)
    assert pav_vi_bounded_d(p, (0, 1, 2), 2).score == Fraction(7, 2)
    q = prof("ab", cands="abcd")
    sol = pav_vi_bounded_d(q, (0,), 3)
    assert sol.score == Fraction(3, 2) and sol.committee.k == 3


def test_pav_ci_examples():
    p = prof("abc", "a", "b", "c")
    assert pav_ci_bounded_s(p, (0, 1, 2), 2).score == Fraction(7, 2)
    sol = pav_ci_bounded_s(p, (0, 1, 2), 0)
    assert sol.score == 0 and sol.committee.k == 0
    q = prof("ab", "bc")
    sol = pav_ci_bounded_d(q, (0, 1, 2), 1)
    assert sol.score == 2 and labels_of(q, sol.committee) == "b"


def test_pav_ci_degree_one():
    p = prof("ab", "cd", "e", "ab", cands="abcdef")
    axis = detect(p, S.CI).witness
    for k in range(7):
        assert pav_ci_bounded_d(p, axis, k).score == brute_force(p, k, PAV).score


def test_truncated_examples():
    p = prof("ab", "ac", "ad")
    assert wpav_truncated(p, (0, 1, 2), "VI", CHAMBERLIN_COURANT, 2).score == 3
    q = prof("abc", "a", "b", "c")
    assert wpav_truncated(q, (0, 1, 2), "CI", CHAMBERLIN_COURANT, 2).score == 3
    with pytest.raises(ValueError):
        wpav_truncated(p, (0, 1, 2), "VI", HARMONIC, 2)
    with pytest.raises(ValueError):
        wpav_truncated(p, (0, 1, 2), "XI", CHAMBERLIN_COURANT, 2)


def test_truncation_at_m_matches_plain_dp():
    p = prof("ab", "bc", "c", "abc", cands="abcd")
    axis = detect(p, S.CI).witness
    for k in range(5):
        scheme = WeightScheme.truncated([1, Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)])
        assert wpav_truncated(p, axis, "CI", scheme, k).score == pav_ci_bounded_s(p, axis, k).score


def test_vei_examples():
    p = prof("ab", "ad", "cd")
    sol = vei_committee(p, (0, 1, 2), 2, PAV)
    assert sol.score == Fraction(7, 2) and labels_of(p, sol.committee) == "ad"
    assert vei_committee(p, (0, 1, 2), 2, MAV).score == brute_force(p, 2, MAV).score == 2
    q = prof("abc", "abc", "abc")
    assert vei_committee(q, (0, 1, 2), 2, PAV).score == 3 * Fraction(3, 2)


def test_cei_examples():
    p = prof("ab", "a", "c", "bc")
    sol = cei_committee(p, (0, 1, 2), 1, MAV)
    assert sol.score == 2 and labels_of(p, sol.committee) == "b"
    assert cei_committee(p, (0, 1, 2), 2, PAV).score == brute_force(p, 2, PAV).score
    q = prof("abc")
    for k in range(4):
        assert cei_committee(q, (0, 1, 2), k, PAV).score == HARMONIC.utilities(k)[k]


def test_wsc_examples():
    p = prof("ab", "b", "bc")
    sol = wsc_committee(p, 1, PAV)
    assert sol.score == 3 and labels_of(p, sol.committee) == "b"
    assert wsc_committee(p, 1, MAV).score == brute_force(p, 1, MAV).score == 1
    q = prof("a", "b")
    assert wsc_committee(q, 1, PAV).score == 1
    with pytest.raises(WitnessError):
        wsc_committee(prof("a", "b", "c"), 1, PAV)


def test_part_examples():
    p = prof("a", "a", "b", "c")
    sol = part_committee(p, 1, PAV)
    assert sol.score == 2 and labels_of(p, sol.committee) == "a"
    assert part_committee(prof("a", "b", "c"), 1, MAV).score == 2
    q = prof("a", "b", "c", "d")
    assert part_committee(q, 4, MAV).score == brute_force(q, 4, MAV).score == 3
    with pytest.raises(WitnessError):
        part_committee(prof("ab", "bc"), 1, PAV)


def test_structured_algorithms_reject_bad_witnesses():
    p = prof("ab", "ac", "ad")
    with pytest.raises(WitnessError):
        pav_ci_bounded_s(p, (0, 1, 2, 3), 2)
    with pytest.raises(WitnessError):
        vei_committee(prof("a", "b", "c"), (0, 1, 2), 1, PAV)


def test_solve_dispatch():
    assert solve(prof("a", "b", "c"), 2, PAV).algorithm == "part"
    assert solve(prof("ab", "b", "bc"), 2, PAV).algorithm == "wsc"
    rng_profile = prof("abc", "bd", "ace", "def", "af", "be")
    assert solve(rng_profile, 3, PAV).algorithm == "oracle"


def test_solve_reports_missing_algorithm():
    votes = [set(range(i, i + 10)) for i in range(31)]
    p = profile_from_indices(40, votes)
    assert detect(p, S.CI).holds
    with pytest.raises(NoApplicableAlgorithm):
        solve(p, 10, PAV)


def test_run_algorithm_errors():
    p = prof("ab", "ac", "bc")
    with pytest.raises(NoApplicableAlgorithm):
        run_algorithm(p, 1, PAV, "vei")
    with pytest.raises(NoApplicableAlgorithm):
        run_algorithm(prof("ab", "bc"), 1, MAV, "pav-ci-s")
    with pytest.raises(ValueError):
        run_algorithm(p, 1, PAV, "magic")


def test_rule_validation():
    assert Rule("wpav").scheme == HARMONIC
    with pytest.raises(ValueError):
        Rule("mav", HARMONIC)
    with pytest.raises(ValueError):
        Rule("borda")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(["VI", "CI", "DUE"]), st.sampled_from([HARMONIC, CHAMBERLIN_COURANT, WeightScheme.truncated([1, 1])]))
def test_interval_dps_match_oracle(seed, structure, scheme):
    import random

    rng = random.Random(seed)
    p = generate(GenSpec(structure, rng.randint(1, 8), rng.randint(1, 8), seed, s=3, d=3))
    k = rng.randint(0, min(4, p.m))
    rule = Rule.wpav(scheme)
    best = brute_force(p, k, rule).score
    runs = []
    vi, ci = detect(p, S.VI), detect(p, S.CI)
    if vi.holds:
        runs += [pav_vi_bounded_s(p, vi.witness, k, scheme), pav_vi_bounded_d(p, vi.witness, k, scheme)]
        if scheme.cutoff is not None:
            runs.append(wpav_truncated(p, vi.witness, "VI", scheme, k))
    if ci.holds:
        runs += [pav_ci_bounded_s(p, ci.witness, k, scheme), pav_ci_bounded_d(p, ci.witness, k, scheme)]
        if scheme.cutoff is not None:
            runs.append(wpav_truncated(p, ci.witness, "CI", scheme, k))
    for sol in runs:
        assert sol.score == best, sol.algorithm
        assert sol.committee.k == k
        assert score(p, rule, sol.committee) == sol.score


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(["2PART", "PART", "WSC", "VEI", "CEI"]), st.sampled_from([PAV, MAV]))
def test_set_structure_algorithms_match_oracle(seed, structure, rule):
    import random

    rng = random.Random(seed)
    lo = 2 if structure == "2PART" else 1
    p = generate(GenSpec(structure, rng.randint(lo, 8), rng.randint(lo, 8), seed))
    k = rng.randint(0, min(4, p.m))
    best = brute_force(p, k, rule).score
    sol = solve(p, k, rule)
    assert sol.score == best
    assert score(p, rule, sol.committee) == sol.score


@pytest.mark.parametrize("seed", range(30))
def test_vei_and_cei_agree_on_two_partitions(seed):
    p = generate(GenSpec("2PART", 2 + seed % 5, 2 + seed % 6, seed))
    vei, cei = detect(p, S.VEI).witness, detect(p, S.CEI).witness
    for k in range(p.m + 1):
        for rule in (PAV, MAV):
            assert vei_committee(p, vei, k, rule).score == cei_committee(p, cei, k, rule).score
