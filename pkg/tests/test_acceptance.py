"""Acceptance checks, one test per criterion.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary lists one
PASS/FAIL line per criterion.
"""

import random
import time
from fractions import Fraction

import pytest

from dichotomous.cli import main
from dichotomous.consecutive_ones import BinaryMatrix, c1p_column_order, verify_c1p
from dichotomous.detection import (
    StructureProperty as S,
    detect,
    detect_ssc_exhaustive,
    embed_from_witness,
    enumerate_witness_orders,
    verify_witness,
    wsc_characterize,
)
from dichotomous.fileformat import parse_profile, serialize_profile
from dichotomous.generators import GenSpec, generate
from dichotomous.profile_core import CHAMBERLIN_COURANT, HARMONIC, WeightScheme, profile_from_indices
from dichotomous.refinements import (
    TotalOrderProfile,
    psc_exhaustive,
    refine_pe,
    refine_psp,
    verify_one_euclidean,
    verify_refinement,
    verify_single_crossing,
    verify_single_peaked,
    voters_by_position,
)
from dichotomous.rules import (
    Rule,
    brute_force,
    cei_committee,
    part_committee,
    pav_ci_bounded_d,
    pav_ci_bounded_s,
    pav_vi_bounded_d,
    pav_vi_bounded_s,
    score,
    vei_committee,
    wpav_truncated,
    wsc_committee,
)

from helpers import all_vote_multisets, canonical_multiset, committee, prof

PAV = Rule.pav()
MAV = Rule.mav()


# ---------------------------------------------------------------- 1

GOLDEN = [
    (("abc", "a", "b", "c"), "abc", {S.CI: True, S.VI: False}),
    (("ab", "ac", "ad"), "abcd", {S.VI: True, S.CI: False}),
    (("ab", "ad", "cd"), "abcd", {S.VEI: True, S.CEI: False}),
    (("ab", "a", "c", "bc"), "abc", {S.CEI: True, S.VEI: False}),
    (("a", "b", "c"), "abc", {S.PART: True, S.VEI: False, S.CEI: False, S.WSC: False}),
    (("ab", "", "bc"), "abc", {S.WSC: True, S.VEI: False}),
    (("ab", "bc"), "abcd", {S.WSC: True, S.CEI: False}),
    (("ab", "b", "bc"), "abc", {S.WSC: True, S.CEI: False}),
    (("abc", "bcd", "b", "c"), "abcd", {S.VI: True, S.CI: True}),
    (("ab", "ac", "bc"), "abc", {S.SSC: True, S.CI: False, S.PSP: False, S.PE: False}),
]


@pytest.mark.criterion(1, "golden detection table")
def test_golden_detection_table():
    start = time.perf_counter()
    wrong = []
    for votes, cands, expected in GOLDEN:
        p = prof(*votes, cands=cands)
        for prop, holds in expected.items():
            res = detect(p, prop)
            ok = res.holds is holds and (not holds or verify_witness(p, prop, res.witness))
            if prop is S.SSC:
                ok = ok and res.method == "exhaustive"
            if not ok:
                wrong.append((votes, prop.value, res.holds))
    elapsed = time.perf_counter() - start
    print(f"golden table: {sum(len(e) for _, _, e in GOLDEN)} verdicts, {len(wrong)} wrong, {elapsed:.3f} s")
    assert not wrong, wrong
    assert elapsed < 1.0


# ---------------------------------------------------------------- 2


def _no_trivial_votes(p):
    return all(0 < len(v) < p.m for v in p.votes)


def _every_candidate_split(p):
    return all(0 < len(a) < p.n for a in p.approvers)


def _lattice_violations(p, structure):
    """Yield a description of every lattice edge the instance breaks."""
    res = {prop: detect(p, prop) for prop in (S.TWO_PART, S.PART, S.VEI, S.VI, S.CEI, S.CI, S.WSC)}
    holds = {prop: r.holds for prop, r in res.items()}
    if structure == "DUE" and not (holds[S.VI] and holds[S.CI]):
        yield "DUE -> VI and CI"
    if holds[S.TWO_PART]:
        for prop in (S.VEI, S.CEI, S.WSC, S.PART):
            if not holds[prop]:
                yield f"2PART -> {prop.value}"
    for prop in (S.PART, S.VEI, S.CEI, S.WSC):
        if holds[prop]:
            emb = embed_from_witness(p, prop, res[prop].witness)
            if not verify_witness(p, S.DUE, emb):
                yield f"{prop.value} -> DUE"
    if holds[S.VEI] and not holds[S.VI]:
        yield "VEI -> VI"
    if holds[S.CEI] and not holds[S.CI]:
        yield "CEI -> CI"
    if holds[S.VI] and not verify_witness(p, S.SSC, res[S.VI].witness):
        yield "VI -> SSC"
    if holds[S.CI]:
        for alias in (S.PSP, S.PE, S.DE):
            r = detect(p, alias)
            if not r.holds or r.witness != res[S.CI].witness:
                yield f"CI -> {alias.value}"
        emb = embed_from_witness(p, S.CI, res[S.CI].witness)
        if not verify_witness(p, S.DE, emb):
            yield "CI -> DE embedding"
    if holds[S.WSC]:
        triple = res[S.WSC].witness
        if _no_trivial_votes(p) and not verify_witness(p, S.VEI, triple.order):
            yield "WSC without trivial votes -> VEI"
        if _every_candidate_split(p) and not holds[S.CEI]:
            yield "WSC with every candidate split -> CEI"
    triple_and = holds[S.WSC] and holds[S.VEI] and holds[S.CEI]
    if holds[S.TWO_PART] and not triple_and:
        yield "2PART -> WSC and VEI and CEI"
    if triple_and and _no_trivial_votes(p) and _every_candidate_split(p) and not holds[S.TWO_PART]:
        yield "WSC and VEI and CEI -> 2PART"


@pytest.mark.criterion(2, "containment lattice on 1000 instances per structure")
def test_lattice():
    start = time.perf_counter()
    violations = []
    per_structure = 1000
    for structure in ("2PART", "PART", "VEI", "VI", "CEI", "CI", "WSC", "DUE"):
        rng = random.Random(f"lattice-{structure}")
        for _ in range(per_structure):
            lo = 2 if structure == "2PART" else 1
            spec = GenSpec(structure, rng.randint(lo, 12), rng.randint(lo, 12), rng.getrandbits(64))
            p = generate(spec)
            for v in _lattice_violations(p, structure):
                violations.append((spec, v))
    elapsed = time.perf_counter() - start
    print(f"lattice: {8 * per_structure} instances, {len(violations)} violations, {elapsed:.1f} s")
    assert not violations, violations[:5]
    assert elapsed < 60


@pytest.mark.xfail(strict=True, reason="the unconditional equivalence has counterexamples with trivial or unanimous votes")
def test_equivalence_without_side_conditions():
    bad = []
    for p in (prof("ab", "ab"), prof("a", "ab"), prof("a", "", "b")):
        triple_and = all(detect(p, prop).holds for prop in (S.WSC, S.VEI, S.CEI))
        if triple_and != bool(detect(p, S.TWO_PART).holds):
            bad.append(p.votes)
    print("counterexamples:", bad)
    assert not bad


@pytest.mark.xfail(strict=True, reason="a full vote in the middle block breaks the WSC -> VEI implication")
def test_wsc_to_vei_with_only_empty_votes_excluded():
    p = prof("a", "abc", "b")
    t = wsc_characterize(p)
    assert t is not None and all(p.votes)
    print("emitted order:", t.order, "counterexample:", p.votes)
    assert detect(p, S.VEI).holds


# ---------------------------------------------------------------- 3


@pytest.mark.criterion(3, "uniqueness of VEI and CEI orders")
def test_uniqueness():
    found = {"VEI": 0, "CEI": 0}
    failures = []
    rng = random.Random("uniqueness")
    while min(found.values()) < 200:
        n, m = rng.randint(1, 7), rng.randint(1, 7)
        seed = rng.getrandbits(64)
        for structure in ("VEI", "CEI"):
            if found[structure] >= 200:
                continue
            p = generate(GenSpec(structure, n, m, seed))
            distinct = len(set(p.votes)) == p.n if structure == "VEI" else len(set(p.approvers)) == p.m
            if not distinct:
                continue
            found[structure] += 1
            orders = enumerate_witness_orders(p, structure, limit=7)
            sigma = orders[0]
            if set(orders) != {sigma, sigma[::-1]}:
                failures.append((structure, p.votes, len(orders)))
    print(f"uniqueness: {found} instances, {len(failures)} failures")
    assert not failures


# ---------------------------------------------------------------- 4


def _structured_runs(p, k, structure):
    if structure == "VI":
        w = detect(p, S.VI).witness
        yield "pav_vi_bounded_s", PAV, pav_vi_bounded_s(p, w, k)
        yield "pav_vi_bounded_d", PAV, pav_vi_bounded_d(p, w, k)
        for name, scheme in (("(1,0,...)", CHAMBERLIN_COURANT), ("(1,1,0,...)", WeightScheme.truncated([1, 1]))):
            yield f"wpav_truncated VI {name}", Rule.wpav(scheme), wpav_truncated(p, w, "VI", scheme, k)
    elif structure == "CI":
        w = detect(p, S.CI).witness
        yield "pav_ci_bounded_s", PAV, pav_ci_bounded_s(p, w, k)
        yield "pav_ci_bounded_d", PAV, pav_ci_bounded_d(p, w, k)
        for name, scheme in (("(1,0,...)", CHAMBERLIN_COURANT), ("(1,1,0,...)", WeightScheme.truncated([1, 1]))):
            yield f"wpav_truncated CI {name}", Rule.wpav(scheme), wpav_truncated(p, w, "CI", scheme, k)
    elif structure == "VEI":
        w = detect(p, S.VEI).witness
        yield "vei_committee PAV", PAV, vei_committee(p, w, k, PAV)
        yield "vei_committee MAV", MAV, vei_committee(p, w, k, MAV)
    elif structure == "CEI":
        w = detect(p, S.CEI).witness
        yield "cei_committee PAV", PAV, cei_committee(p, w, k, PAV)
        yield "cei_committee MAV", MAV, cei_committee(p, w, k, MAV)
    elif structure == "WSC":
        yield "wsc_committee PAV", PAV, wsc_committee(p, k, PAV)
        yield "wsc_committee MAV", MAV, wsc_committee(p, k, MAV)
    else:
        yield "part_committee PAV", PAV, part_committee(p, k, PAV)
        yield "part_committee MAV", MAV, part_committee(p, k, MAV)


@pytest.mark.criterion(4, "oracle equivalence of every structured algorithm")
def test_oracle_equivalence():
    start = time.perf_counter()
    counts: dict[str, int] = {}
    mismatches = []
    rng = random.Random("oracle")
    for structure in ("VI", "CI", "VEI", "CEI", "WSC", "PART"):
        for _ in range(520):
            n, m = rng.randint(1, 8), rng.randint(1, 8)
            p = generate(GenSpec(structure, n, m, rng.getrandbits(64), s=3, d=3))
            k = rng.randint(0, min(4, m))
            oracle = {}
            for name, rule, sol in _structured_runs(p, k, structure):
                if rule not in oracle:
                    oracle[rule] = brute_force(p, k, rule).score
                counts[name] = counts.get(name, 0) + 1
                if sol.score != oracle[rule] or score(p, rule, sol.committee) != sol.score or sol.committee.k != k:
                    mismatches.append((name, p.votes, k, sol.score, oracle[rule]))
    elapsed = time.perf_counter() - start
    for name in sorted(counts):
        print(f"  {name}: {counts[name]} instances")
    print(f"oracle equivalence: {len(mismatches)} mismatches, {elapsed:.1f} s")
    assert not mismatches, mismatches[:5]
    assert min(counts.values()) >= 500
    assert elapsed < 300


# ---------------------------------------------------------------- 5


@pytest.mark.criterion(5, "hand-derived spot values")
def test_spot_values():
    p = prof("ab", "ac", "bc")
    sol = brute_force(p, 2, PAV)
    assert sol.score == Fraction(7, 2) and len(sol.optimal_set) == 3
    q = prof("ab", "cd")
    sol = brute_force(q, 2, MAV)
    assert sol.score == 2 and len(sol.optimal_set) == 4
    r = prof("ab", "a", "c", "bc")
    sol = cei_committee(r, detect(r, S.CEI).witness, 1, MAV)
    assert sol.score == 2 and sol.committee.members == committee(r, "b")
    t = prof("ab", "ad", "cd")
    sol = vei_committee(t, detect(t, S.VEI).witness, 2, PAV)
    assert sol.score == Fraction(7, 2) and sol.committee.members == committee(t, "ad")


# ---------------------------------------------------------------- 6


@pytest.mark.criterion(6, "single-peaked and 1-Euclidean refinements of CI profiles")
def test_refinement_pipeline():
    failures = []
    rng = random.Random("refinement-pipeline")
    for _ in range(500):
        spec = GenSpec("CI", rng.randint(1, 10), rng.randint(1, 10), rng.getrandbits(64))
        p = generate(spec)
        axis = detect(p, S.CI).witness
        t = refine_psp(p, axis)
        ok = verify_refinement(p, t) and verify_single_peaked(t, axis)
        t2, nudged = refine_pe(p, embed_from_witness(p, S.CI, axis))
        ok = ok and verify_refinement(p, t2) and verify_single_crossing(t2, voters_by_position(nudged))
        ok = ok and verify_one_euclidean(t2, nudged)
        if not ok:
            failures.append(spec)
    print(f"refinement pipeline: 500 instances, {len(failures)} failures")
    assert not failures


# ---------------------------------------------------------------- 7


@pytest.mark.criterion(7, "single-crossing refinement vs seemingly single-crossing")
def test_psc_equals_ssc_small():
    seen = set()
    disagreements = []
    for m in range(1, 4):
        for n in range(1, 5):
            for votes in all_vote_multisets(m, n):
                key = (m, canonical_multiset(votes, m))
                if key in seen:
                    continue
                seen.add(key)
                p = profile_from_indices(m, votes)
                if psc_exhaustive(p) != (detect_ssc_exhaustive(p) is not None):
                    disagreements.append(votes)
    example = prof("ab", "ac", "bc")
    a, b, c = 0, 1, 2
    witness = TotalOrderProfile(((a, b, c), (c, a, b), (c, b, a)))
    assert verify_refinement(example, witness) and verify_single_crossing(witness, (0, 1, 2))
    assert psc_exhaustive(example) is True and detect_ssc_exhaustive(example) is not None
    print(f"PSC vs SSC: {len(seen)} profiles up to renaming, {len(disagreements)} disagreements")
    assert not disagreements


# ---------------------------------------------------------------- 8


@pytest.mark.criterion(8, "scaling sanity")
def test_scaling():
    p = generate(GenSpec("VI", 2000, 2000, 8, s=3, d=4))
    start = time.perf_counter()
    order = detect(p, S.VI).witness
    sol = pav_vi_bounded_s(p, order, 20)
    dp_secs = time.perf_counter() - start
    assert sol.committee.k == 20 and score(p, PAV, sol.committee) == sol.score

    rng = random.Random("c1p")
    cols = 5000
    hidden = list(range(cols))
    rng.shuffle(hidden)
    rows = []
    for _ in range(5000):
        lo = rng.randrange(cols)
        rows.append({hidden[x] for x in range(lo, min(cols, lo + rng.randint(1, 8)))})
    matrix = BinaryMatrix.from_rows(cols, rows)
    start = time.perf_counter()
    perm = c1p_column_order(matrix)
    c1p_secs = time.perf_counter() - start
    assert perm is not None and verify_c1p(matrix, perm)
    bad = BinaryMatrix.from_rows(cols, rows + [{hidden[0], hidden[100]}, {hidden[0], hidden[200]}, {hidden[0], hidden[300]}])
    start = time.perf_counter()
    assert c1p_column_order(bad) is None
    c1p_secs = max(c1p_secs, time.perf_counter() - start)
    print(f"scaling: VI n=m=2000 s=3 k=20 in {dp_secs:.2f} s; 5000x5000 C1P in {c1p_secs:.2f} s")
    assert dp_secs < 10 and c1p_secs < 10


# ---------------------------------------------------------------- 9


@pytest.mark.criterion(9, "command-line contract")
def test_cli_contract(tmp_path, capsys):
    import json

    for seed in range(50):
        p = generate(GenSpec("UNRESTRICTED", 1 + seed % 6, 1 + seed % 5, seed))
        assert parse_profile(serialize_profile(p)) == p
    path = tmp_path / "ci.txt"
    path.write_text("candidates: a,b,c\nvote: a,b,c\nvote: a\nvote: b\nvote: c\n")
    assert main(["detect", str(path), "--property", "ci", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert set(out) == {"property", "holds", "witness", "method"} and out["witness"] == ["a", "b", "c"]
    assert main(["detect", str(path), "--property", "vi"]) == 1
    assert main(["detect", str(path), "--property", "due"]) == 2
    capsys.readouterr()
    tri = tmp_path / "tri.txt"
    tri.write_text("candidates: a,b,c\nvote: a,b\nvote: a,c\nvote: b,c\n")
    assert main(["solve", str(tri), "--rule", "pav", "-k", "2", "--algo", "oracle", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert set(out) == {"committee", "score", "algorithm"} and out["score"] == {"num": 7, "den": 2}
    assert main(["detect", str(tmp_path / "missing"), "--property", "ci"]) == 66
    broken = tmp_path / "broken.txt"
    broken.write_text("candidates: a\nvote: q\n")
    assert main(["detect", str(broken), "--property", "ci"]) == 65
    capsys.readouterr()
    for structure in ("2part", "part", "vei", "vi", "cei", "ci", "wsc", "due", "unrestricted"):
        assert main(["crosscheck", "--structure", structure, "--trials", "100", "--seed", "1"]) == 0
    summary = capsys.readouterr().out
    print(summary)
    assert summary.count("0 mismatches") == 9
