"""Command-line front end.

Exit codes: 0 success / property holds, 1 property fails or a crosscheck
mismatch, 2 undecided or unsupported, 64 usage error, 65 malformed input
file, 66 input file missing.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Any, Sequence

from .detection import (
    EuclideanEmbedding,
    StructureProperty,
    UnsupportedProperty,
    WitnessError,
    WscTriple,
    detect,
    embed_from_witness,
    resolve,
)
from .fileformat import ParseError, parse_profile, serialize_profile
from .generators import STRUCTURES, GenSpec, generate
from .profile_core import ApprovalProfile, ProfileError, WeightScheme
from .refinements import refine_pe, refine_psp, voters_by_position
from .rules import ALGORITHMS, BudgetExceeded, NoApplicableAlgorithm, Rule, run_algorithm, score, solve

EX_FAIL = 1
EX_UNKNOWN = 2
EX_USAGE = 64
EX_DATAERR = 65
EX_NOINPUT = 66

S = StructureProperty


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


# ---------------------------------------------------------------- helpers


def _load(path: str) -> ApprovalProfile:
    with open(path, encoding="utf-8") as fh:
        return parse_profile(fh.read())


def _rat(x: Fraction | int) -> str:
    return str(Fraction(x))


def _weights(text: str) -> WeightScheme:
    key = text.strip().lower()
    if key in ("harmonic", "pav"):
        return WeightScheme.harmonic()
    if key in ("cc", "chamberlin-courant"):
        return WeightScheme.chamberlin_courant()
    try:
        entries = [Fraction(x.strip()) for x in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad weight list {text!r}") from None
    # A list ending in 0 stops there; otherwise its last weight repeats.
    if entries[-1] == 0:
        return WeightScheme.truncated(entries)
    return WeightScheme.explicit(entries)


def _rule(args) -> Rule:
    if args.rule == "mav":
        return Rule.mav()
    if args.rule == "pav":
        return Rule.pav()
    return Rule.wpav(_weights(args.weights))


def _labels(p: ApprovalProfile, cs) -> list[str]:
    return [p.candidate_labels[c] for c in cs]


def _witness_json(p: ApprovalProfile, prop: StructureProperty, w: Any) -> Any:
    if w is None:
        return None
    if isinstance(w, WscTriple):
        return {
            "u": _labels(p, sorted(w.u)),
            "w": _labels(p, sorted(w.w)),
            "middle": w.middle_kind,
            "order": [i + 1 for i in w.order],
        }
    base = resolve(prop)
    if base in (S.PART, S.TWO_PART):
        return [_labels(p, sorted(part)) for part in w]
    if base in (S.CI, S.CEI):
        return _labels(p, w)
    return [i + 1 for i in w]


def _witness_text(p: ApprovalProfile, prop: StructureProperty, w: Any) -> str:
    j = _witness_json(p, prop, w)
    if isinstance(w, WscTriple):
        return "u={%s} w={%s} middle=%s order=%s" % (
            ",".join(j["u"]),
            ",".join(j["w"]),
            j["middle"],
            ",".join(map(str, j["order"])),
        )
    if resolve(prop) in (S.PART, S.TWO_PART):
        return " | ".join("{" + ",".join(part) + "}" for part in j)
    return ",".join(map(str, j))


def _embedding_json(p: ApprovalProfile, e: EuclideanEmbedding) -> dict:
    out: dict[str, Any] = {
        "candidates": {lab: _rat(x) for lab, x in zip(p.candidate_labels, e.candidate_pos)},
        "voters": [_rat(x) for x in e.voter_pos],
    }
    if e.uniform:
        out["radius"] = _rat(e.radius)
    else:
        out["radii"] = [_rat(r) for r in e.radii]
    return out


def _print_embedding(p: ApprovalProfile, e: EuclideanEmbedding) -> None:
    if e.uniform:
        print(f"radius: {_rat(e.radius)}")
    for lab, x in zip(p.candidate_labels, e.candidate_pos):
        print(f"candidate {lab}: {_rat(x)}")
    for i, x in enumerate(e.voter_pos):
        extra = "" if e.uniform else f" radius {_rat(e.radii[i])}"
        print(f"voter {i + 1}: {_rat(x)}{extra}")


# ---------------------------------------------------------------- commands


def cmd_detect(args) -> int:
    p = _load(args.file)
    if args.property.lower() == "all":
        rows = []
        for prop in S:
            try:
                res = detect(p, prop)
                rows.append({"property": prop.value, "holds": res.holds, "witness": _witness_json(p, prop, res.witness), "method": res.method, "_w": res.witness})
            except UnsupportedProperty:
                rows.append({"property": prop.value, "holds": None, "witness": None, "method": "unsupported", "_w": None})
        if args.json:
            print(json.dumps([{k: v for k, v in r.items() if k != "_w"} for r in rows]))
        else:
            for r in rows:
                verdict = {True: "holds", False: "fails", None: "unknown"}[r["holds"]]
                if r["method"] == "unsupported":
                    verdict = "unsupported"
                line = f"{r['property']}: {verdict}"
                if r["holds"]:
                    line += "  " + _witness_text(p, S.parse(r["property"]), r["_w"])
                print(line)
        return 0
    try:
        prop = S.parse(args.property)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        res = detect(p, prop)
    except UnsupportedProperty as exc:
        if args.json:
            print(json.dumps({"property": prop.value, "holds": None, "witness": None, "method": "unsupported"}))
        else:
            print(f"{prop.value}: unsupported ({exc})")
        return EX_UNKNOWN
    if args.json:
        print(json.dumps({"property": prop.value, "holds": res.holds, "witness": _witness_json(p, prop, res.witness), "method": res.method}))
    else:
        verdict = {True: "holds", False: "fails", None: "unknown"}[res.holds]
        print(f"{prop.value}: {verdict}")
        if res.holds:
            print("witness: " + _witness_text(p, prop, res.witness))
    return {True: 0, False: EX_FAIL, None: EX_UNKNOWN}[res.holds]


def _score_json(x: Fraction | int) -> dict:
    f = Fraction(x)
    return {"num": f.numerator, "den": f.denominator}


def cmd_solve(args) -> int:
    p = _load(args.file)
    rule = _rule(args)
    if args.algo != "auto" and args.algo not in ALGORITHMS:
        raise UsageError(f"unknown algorithm {args.algo!r}")
    try:
        sol = solve(p, args.k, rule, args.algo)
    except (NoApplicableAlgorithm, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_UNKNOWN
    labels = _labels(p, sol.committee.sorted())
    if args.json:
        print(json.dumps({"committee": labels, "score": _score_json(sol.score), "algorithm": sol.algorithm}))
    else:
        print("committee: " + ",".join(labels))
        print("score: " + _rat(sol.score))
        print("algorithm: " + sol.algorithm)
    return 0


def cmd_score(args) -> int:
    p = _load(args.file)
    rule = _rule(args)
    members = [lab.strip() for lab in args.committee.split(",") if lab.strip()]
    try:
        committee = [p.index_of(lab) for lab in members]
    except ProfileError as exc:
        raise UsageError(str(exc)) from None
    if len(set(committee)) != len(committee):
        raise UsageError("committee lists a candidate twice")
    val = score(p, rule, committee)
    if args.json:
        print(json.dumps({"committee": members, "score": _score_json(val)}))
    else:
        print(_rat(val))
    return 0


def cmd_generate(args) -> int:
    try:
        p = generate(GenSpec(args.structure, args.n, args.m, args.seed, s=args.s, d=args.d))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = serialize_profile(p)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# Algorithms exercised per generated structure, with the rules each supports.
_CROSS = {
    "2PART": ["part", "wsc", "vei", "cei"],
    "PART": ["part"],
    "WSC": ["wsc"],
    "VEI": ["vei"],
    "CEI": ["cei"],
    "VI": ["pav-vi-s", "pav-vi-d", "wpav-trunc-vi"],
    "CI": ["pav-ci-s", "pav-ci-d", "wpav-trunc-ci"],
    "DUE": ["pav-vi-s", "pav-ci-s", "pav-ci-d", "pav-vi-d"],
    "UNRESTRICTED": ["auto"],
}
_PAV_ONLY = {"pav-vi-s", "pav-vi-d", "pav-ci-s", "pav-ci-d", "wpav-trunc-vi", "wpav-trunc-ci"}


def cmd_crosscheck(args) -> int:
    from .rules import brute_force

    structure = args.structure.upper()
    if structure not in STRUCTURES:
        raise UsageError(f"unknown structure {args.structure!r}")
    rng = random.Random(args.seed)
    lo = 2 if structure == "2PART" else 1
    if args.max_n < lo or args.max_m < lo:
        raise UsageError("sizes too small for this structure")
    comparisons = 0
    for trial in range(args.trials):
        n = rng.randint(lo, args.max_n)
        m = rng.randint(lo, args.max_m)
        k = rng.randint(0, min(args.max_k, m))
        seed = rng.getrandbits(64)
        p = generate(GenSpec(structure, n, m, seed, s=3, d=3))
        for algo in _CROSS[structure]:
            if algo.startswith("wpav-trunc"):
                rules = [Rule.wpav(WeightScheme.chamberlin_courant()), Rule.wpav(WeightScheme.truncated((1, 1)))]
            elif algo in _PAV_ONLY:
                rules = [Rule.pav()]
            else:
                rules = [Rule.pav(), Rule.mav()]
            for rule in rules:
                sol = solve(p, k, rule) if algo == "auto" else run_algorithm(p, k, rule, algo)
                ref = brute_force(p, k, rule)
                comparisons += 1
                recomputed = score(p, rule, sol.committee)
                if sol.score != ref.score or recomputed != sol.score or sol.committee.k != k:
                    print(f"MISMATCH trial {trial} algorithm {sol.algorithm} rule {rule.kind} k={k}")
                    print(f"  reported {_rat(sol.score)}, recomputed {_rat(recomputed)}, oracle {_rat(ref.score)}")
                    print("  profile:")
                    for line in serialize_profile(p).splitlines():
                        print("    " + line)
                    return EX_FAIL
    print(f"{args.trials} trials, {comparisons} comparisons, 0 mismatches")
    return 0


_EMBED_FROM = {"cei": S.CEI, "vei": S.VEI, "wsc": S.WSC, "part": S.PART, "ci": S.CI}


def cmd_embed(args) -> int:
    p = _load(args.file)
    prop = _EMBED_FROM[args.source]
    res = detect(p, prop)
    if not res.holds:
        print(f"profile is not {prop.value}", file=sys.stderr)
        return EX_FAIL
    emb = embed_from_witness(p, prop, res.witness)
    if args.json:
        print(json.dumps(_embedding_json(p, emb)))
    else:
        _print_embedding(p, emb)
    return 0


def cmd_refine(args) -> int:
    p = _load(args.file)
    res = detect(p, S.CI)
    if not res.holds:
        print("profile is not CI, so it has no single-peaked or 1-Euclidean refinement", file=sys.stderr)
        return EX_FAIL
    out: dict[str, Any] = {}
    if args.target == "psp":
        t = refine_psp(p, res.witness)
        out["axis"] = _labels(p, res.witness)
    else:
        emb = embed_from_witness(p, S.CI, res.witness)
        t, nudged = refine_pe(p, emb)
        out["embedding"] = _embedding_json(p, nudged)
        out["voter_order"] = [i + 1 for i in voters_by_position(nudged)]
    out["rankings"] = [_labels(p, r) for r in t.rankings]
    if args.json:
        print(json.dumps(out))
        return 0
    if "axis" in out:
        print("axis: " + ",".join(out["axis"]))
    else:
        _print_embedding(p, nudged)
        print("voter order: " + ",".join(map(str, out["voter_order"])))
    for i, r in enumerate(out["rankings"]):
        print(f"voter {i + 1}: " + " > ".join(r))
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dichotomous", description="Structured approval profiles and exact committee selection.")
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("detect", help="test a structural property")
    d.add_argument("file")
    d.add_argument("--property", required=True, help="property name or 'all'")
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_detect)

    def rule_args(sp):
        sp.add_argument("--rule", choices=("pav", "mav", "wpav"), default="pav")
        sp.add_argument("--weights", default="harmonic", help="harmonic, cc, or a list such as 1,1/2,0")

    s = sub.add_parser("solve", help="compute an optimal committee")
    s.add_argument("file")
    rule_args(s)
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--algo", default="auto", help="auto, oracle, or one of: " + ", ".join(ALGORITHMS))
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_solve)

    sc = sub.add_parser("score", help="score a given committee")
    sc.add_argument("file")
    rule_args(sc)
    sc.add_argument("--committee", required=True, help="comma-separated labels")
    sc.add_argument("--json", action="store_true")
    sc.set_defaults(func=cmd_score)

    g = sub.add_parser("generate", help="write a random structured profile")
    g.add_argument("--structure", required=True, type=str.upper, choices=STRUCTURES)
    g.add_argument("-n", type=int, required=True)
    g.add_argument("-m", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--s", type=int, default=None, help="largest vote size (VI, CI, CEI)")
    g.add_argument("--d", type=int, default=None, help="largest candidate degree (VI, VEI, CI)")
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("crosscheck", help="compare structured algorithms with the oracle")
    c.add_argument("--structure", required=True)
    c.add_argument("--trials", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--max-n", type=int, default=8)
    c.add_argument("--max-m", type=int, default=8)
    c.add_argument("--max-k", type=int, default=4)
    c.set_defaults(func=cmd_crosscheck)

    e = sub.add_parser("embed", help="print a one-dimensional embedding")
    e.add_argument("file")
    e.add_argument("--from", dest="source", required=True, choices=sorted(_EMBED_FROM))
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_embed)

    r = sub.add_parser("refine", help="print a single-peaked or 1-Euclidean refinement")
    r.add_argument("file")
    r.add_argument("--target", required=True, choices=("psp", "pe"))
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_refine)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EX_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EX_DATAERR
    except FileNotFoundError as exc:
        print(f"cannot read {exc.filename}", file=sys.stderr)
        return EX_NOINPUT
    except (ProfileError, WitnessError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_USAGE


run = main


def entry() -> None:
    sys.exit(main())
