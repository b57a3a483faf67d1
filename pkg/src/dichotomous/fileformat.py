"""Plain-text profile files.

::

    # comment
    candidates: a, b, c
    vote: a, b
    vote:
    vote: c

A bare ``vote:`` line is an empty vote.
"""

from __future__ import annotations

import re

from .profile_core import ApprovalProfile

LABEL = re.compile(r"[A-Za-z0-9_]+")


class ParseError(ValueError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


def _labels(text: str, line: int) -> list[str]:
    text = text.strip()
    if not text:
        return []
    out = []
    for raw in text.split(","):
        lab = raw.strip()
        if not LABEL.fullmatch(lab):
            raise ParseError(line, f"bad label {lab!r}")
        out.append(lab)
    return out


def parse_profile(text: str) -> ApprovalProfile:
    labels: list[str] | None = None
    index: dict[str, int] = {}
    votes: list[frozenset[int]] = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(no, "expected 'candidates:' or 'vote:'")
        key = key.strip()
        if key == "candidates":
            if labels is not None:
                raise ParseError(no, "second candidates line")
            labels = _labels(rest, no)
            if not labels:
                raise ParseError(no, "no candidates")
            if len(set(labels)) != len(labels):
                raise ParseError(no, "duplicate candidate label")
            index = {lab: i for i, lab in enumerate(labels)}
        elif key == "vote":
            if labels is None:
                raise ParseError(no, "vote before candidates line")
            vote = set()
            for lab in _labels(rest, no):
                if lab not in index:
                    raise ParseError(no, f"unknown candidate {lab!r}")
                if index[lab] in vote:
                    raise ParseError(no, f"candidate {lab!r} listed twice")
                vote.add(index[lab])
            votes.append(frozenset(vote))
        else:
            raise ParseError(no, f"unknown line type {key!r}")
    if labels is None:
        raise ParseError(0, "missing candidates line")
    if not votes:
        raise ParseError(0, "no vote lines")
    return ApprovalProfile(tuple(labels), tuple(votes))


def serialize_profile(p: ApprovalProfile) -> str:
    lines = ["candidates: " + ",".join(p.candidate_labels)]
    for v in p.votes:
        body = ",".join(p.candidate_labels[c] for c in sorted(v))
        lines.append(f"vote: {body}" if body else "vote:")
    return "\n".join(lines) + "\n"
