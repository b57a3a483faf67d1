"""Recognition of structured dichotomous profiles, with checkable witnesses.

Witness shapes:

* voter order (VI, VEI, SSC, WSC): tuple of voter indices, first to last;
* candidate order (CI, CEI): tuple of candidate indices, left to right;
* :class:`WscTriple` (WSC): the three weak-order classes plus a voter order;
* partition (PART, 2PART): tuple of disjoint frozensets covering the candidates;
* :class:`EuclideanEmbedding` (DUE, DE).

Orders are canonicalised: of an order and its reverse the lexicographically
smaller one is reported.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Any, Sequence

from .consecutive_ones import BinaryMatrix, c1p_column_order
from .profile_core import ApprovalProfile, weak_order_equal, weak_order_key


class StructureProperty(str, enum.Enum):
    TWO_PART = "2PART"
    PART = "PART"
    VEI = "VEI"
    VI = "VI"
    CEI = "CEI"
    CI = "CI"
    WSC = "WSC"
    SSC = "SSC"
    PSC = "PSC"
    PSP = "PSP"
    PE = "PE"
    DE = "DE"
    DUE = "DUE"

    @classmethod
    def parse(cls, name: str) -> "StructureProperty":
        key = name.strip().upper()
        for prop in cls:
            if prop.value == key or prop.name == key:
                return prop
        raise ValueError(f"unknown structure property {name!r}")


# PSP = PE = DE = CI, and PSC = SSC.
ALIASES = {
    StructureProperty.PSP: StructureProperty.CI,
    StructureProperty.PE: StructureProperty.CI,
    StructureProperty.DE: StructureProperty.CI,
    StructureProperty.PSC: StructureProperty.SSC,
}


def resolve(prop: StructureProperty) -> StructureProperty:
    return ALIASES.get(prop, prop)


class _Unknown:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNKNOWN"

    def __bool__(self) -> bool:
        raise TypeError("UNKNOWN has no truth value")


UNKNOWN = _Unknown()


class UnsupportedProperty(Exception):
    """Recognition of the requested property is not implemented (DUE)."""


class WitnessError(ValueError):
    """Witness has the wrong shape for the property, or is invalid where required."""


class SizeLimitExceeded(ValueError):
    pass


@dataclass(frozen=True)
class WscTriple:
    u: frozenset[int]
    w: frozenset[int]
    middle_kind: str  # "absent", "intersection" or "union"
    order: tuple[int, ...]

    def blocks(self, m: int) -> tuple[frozenset[int], frozenset[int], frozenset[int], frozenset[int]]:
        """``(u & w, u - w, w - u, rest)``."""
        everything = frozenset(range(m))
        return (self.u & self.w, self.u - self.w, self.w - self.u, everything - (self.u | self.w))


@dataclass(frozen=True)
class EuclideanEmbedding:
    voter_pos: tuple[Fraction, ...]
    candidate_pos: tuple[Fraction, ...]
    radius: Fraction | None = None
    radii: tuple[Fraction, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "voter_pos", tuple(Fraction(x) for x in self.voter_pos))
        object.__setattr__(self, "candidate_pos", tuple(Fraction(x) for x in self.candidate_pos))
        if (self.radius is None) == (self.radii is None):
            raise ValueError("give exactly one of radius / radii")
        if self.radius is not None:
            object.__setattr__(self, "radius", Fraction(self.radius))
            if self.radius < 0:
                raise ValueError("negative radius")
        else:
            radii = tuple(Fraction(r) for r in self.radii)
            if len(radii) != len(self.voter_pos):
                raise ValueError("one radius per voter")
            if any(r < 0 for r in radii):
                raise ValueError("negative radius")
            object.__setattr__(self, "radii", radii)

    @property
    def uniform(self) -> bool:
        return self.radius is not None

    def radius_of(self, i: int) -> Fraction:
        return self.radius if self.radius is not None else self.radii[i]

    def approved(self, i: int) -> frozenset[int]:
        x, r = self.voter_pos[i], self.radius_of(i)
        return frozenset(c for c, y in enumerate(self.candidate_pos) if abs(x - y) <= r)


@dataclass(frozen=True)
class DetectionResult:
    property: StructureProperty
    holds: bool | None  # None: undecided (search skipped for size)
    witness: Any = None
    method: str = ""


def canonical_order(order: Sequence[int]) -> tuple[int, ...]:
    order = tuple(order)
    rev = order[::-1]
    return min(order, rev)


# ---------------------------------------------------------------- verifiers


def _positions(order: Sequence[int], size: int) -> list[int]:
    if sorted(order) != list(range(size)):
        raise WitnessError("order is not a permutation")
    pos = [0] * size
    for i, x in enumerate(order):
        pos[x] = i
    return pos


def _contiguous(ps: list[int]) -> bool:
    return not ps or max(ps) - min(ps) + 1 == len(ps)


def _extremal(ps: list[int], size: int) -> bool:
    return not ps or (_contiguous(ps) and (min(ps) == 0 or max(ps) == size - 1))


def _check_sets(sets: Sequence[frozenset[int]], order: Sequence[int], size: int, extremal: bool) -> bool:
    pos = _positions(order, size)
    for s in sets:
        ps = [pos[x] for x in s]
        if not (_extremal(ps, size) if extremal else _contiguous(ps)):
            return False
    return True


def _pair_masks(v: frozenset[int], m: int) -> tuple[int, int]:
    """Bitmasks over candidate pairs (a < b): where ``v`` strictly prefers a, resp. b."""
    a_mask = b_mask = 0
    bit = 1
    for a in range(m):
        ina = a in v
        for b in range(a + 1, m):
            inb = b in v
            if ina and not inb:
                a_mask |= bit
            elif inb and not ina:
                b_mask |= bit
            bit <<= 1
    return a_mask, b_mask


def _ssc_ok(seq: Sequence[tuple[int, int]]) -> bool:
    """Each pair's strict preferences switch direction at most once along ``seq``."""
    seen_a = seen_b = closed_a = closed_b = 0
    for am, bm in seq:
        if am & closed_a or bm & closed_b:
            return False
        closed_a |= bm & seen_a
        closed_b |= am & seen_b
        seen_a |= am
        seen_b |= bm
    return True


def _verify_ssc(p: ApprovalProfile, order: Sequence[int]) -> bool:
    _positions(order, p.n)
    cache: dict[frozenset[int], tuple[int, int]] = {}
    seq = []
    for i in order:
        v = p.votes[i]
        if v not in cache:
            cache[v] = _pair_masks(v, p.m)
        seq.append(cache[v])
    return _ssc_ok(seq)


def _verify_wsc(p: ApprovalProfile, order: Sequence[int]) -> bool:
    _positions(order, p.n)
    votes = [p.votes[i] for i in order]
    for a in range(p.m):
        for b in range(a + 1, p.m):
            runs: list[int] = []
            for v in votes:
                ina, inb = a in v, b in v
                label = 1 if ina and not inb else 2 if inb and not ina else 3
                if not runs or runs[-1] != label:
                    runs.append(label)
            if len(runs) != len(set(runs)):
                return False
            if len(runs) == 3 and runs[1] != 3:
                return False
    return True


def _as_partition(witness: Any, m: int) -> tuple[frozenset[int], ...]:
    if isinstance(witness, (str, bytes, EuclideanEmbedding, WscTriple)):
        raise WitnessError("expected a partition of the candidates")
    try:
        parts = tuple(frozenset(part) for part in witness)
    except TypeError:
        raise WitnessError("expected a partition of the candidates") from None
    return parts


def _verify_partition(p: ApprovalProfile, parts: tuple[frozenset[int], ...]) -> bool:
    if any(not part for part in parts):
        return False
    covered: set[int] = set()
    for part in parts:
        if covered & part:
            return False
        covered |= part
    if covered != set(range(p.m)):
        return False
    return set(p.votes) == set(parts)


def verify_embedding(p: ApprovalProfile, emb: EuclideanEmbedding, uniform: bool) -> bool:
    if len(emb.voter_pos) != p.n or len(emb.candidate_pos) != p.m:
        return False
    if uniform and not emb.uniform and len(set(emb.radii)) > 1:
        return False
    return all(emb.approved(i) == p.votes[i] for i in range(p.n))


def _as_order(witness: Any) -> tuple[int, ...]:
    if isinstance(witness, WscTriple):
        return witness.order
    if isinstance(witness, (EuclideanEmbedding, str, bytes)) or witness is None:
        raise WitnessError("expected an order")
    try:
        order = tuple(witness)
    except TypeError:
        raise WitnessError("expected an order") from None
    if not all(isinstance(x, int) for x in order):
        raise WitnessError("expected an order of indices")
    return order


def verify_witness(p: ApprovalProfile, prop: StructureProperty, witness: Any) -> bool:
    """Check the defining condition of ``prop`` literally against ``witness``."""
    if prop in (StructureProperty.DUE, StructureProperty.DE) and isinstance(witness, EuclideanEmbedding):
        return verify_embedding(p, witness, uniform=prop is StructureProperty.DUE)
    if prop is StructureProperty.DUE:
        raise WitnessError("DUE needs an embedding witness")
    prop = resolve(prop)
    if prop is StructureProperty.PART:
        return _verify_partition(p, _as_partition(witness, p.m))
    if prop is StructureProperty.TWO_PART:
        parts = _as_partition(witness, p.m)
        return len(parts) == 2 and _verify_partition(p, parts)
    if isinstance(witness, WscTriple) and prop is not StructureProperty.WSC:
        raise WitnessError("a WSC triple only witnesses WSC")
    order = _as_order(witness)
    try:
        if prop is StructureProperty.CI:
            return _check_sets(p.votes, order, p.m, extremal=False)
        if prop is StructureProperty.CEI:
            return _check_sets(p.votes, order, p.m, extremal=True)
        if prop is StructureProperty.VI:
            return _check_sets(p.approvers, order, p.n, extremal=False)
        if prop is StructureProperty.VEI:
            return _check_sets(p.approvers, order, p.n, extremal=True)
        if prop is StructureProperty.SSC:
            return _verify_ssc(p, order)
        if prop is StructureProperty.WSC:
            if isinstance(witness, WscTriple) and not _triple_consistent(p, witness):
                return False
            return _verify_wsc(p, order)
    except WitnessError:
        return False
    raise WitnessError(f"no order witness for {prop.value}")


def _triple_consistent(p: ApprovalProfile, t: WscTriple) -> bool:
    allowed = [t.u, t.w]
    if t.middle_kind == "intersection":
        allowed.append(t.u & t.w)
    elif t.middle_kind == "union":
        allowed.append(t.u | t.w)
    elif t.middle_kind != "absent":
        return False
    return all(any(weak_order_equal(v, a, p.m) for a in allowed) for v in p.votes)


# ---------------------------------------------------------------- detection


def _order_via_c1p(matrix: BinaryMatrix) -> tuple[int, ...] | None:
    perm = c1p_column_order(matrix)
    return None if perm is None else canonical_order(perm)


def _vote_matrix(p: ApprovalProfile) -> BinaryMatrix:
    return BinaryMatrix(p.n, p.m, p.votes)


def _detect_two_part(p: ApprovalProfile) -> DetectionResult:
    distinct = sorted(set(p.votes), key=lambda s: (min(s, default=-1), len(s)))
    prop = StructureProperty.TWO_PART
    if len(distinct) == 2:
        a, b = distinct
        # Both parts non-empty, so that every 2-partition is also a partition.
        if a and b and not a & b and len(a | b) == p.m:
            return DetectionResult(prop, True, (a, b), "direct")
    return DetectionResult(prop, False, None, "direct")


def _detect_part(p: ApprovalProfile) -> DetectionResult:
    distinct = sorted(set(p.votes), key=lambda s: min(s, default=-1))
    ok = _verify_partition(p, tuple(distinct))
    return DetectionResult(StructureProperty.PART, ok, tuple(distinct) if ok else None, "direct")


def detect(p: ApprovalProfile, prop: StructureProperty | str, ssc_limit: int = 9) -> DetectionResult:
    """Decide whether ``p`` has ``prop`` and return a witness when it does."""
    if isinstance(prop, str) and not isinstance(prop, StructureProperty):
        prop = StructureProperty.parse(prop)
    asked = prop
    if prop is StructureProperty.DUE:
        raise UnsupportedProperty("DUE recognition is not supported; use verify_witness on an embedding")
    prop = resolve(prop)
    if prop is StructureProperty.TWO_PART:
        return _detect_two_part(p)
    if prop is StructureProperty.PART:
        return _detect_part(p)
    if prop is StructureProperty.WSC:
        t = wsc_characterize(p)
        return DetectionResult(asked, t is not None, t, "weak-order classes")
    if prop is StructureProperty.SSC:
        vi = detect(p, StructureProperty.VI)
        if vi.holds:
            return DetectionResult(asked, True, vi.witness, "vi-order")
        found = detect_ssc_exhaustive(p, ssc_limit)
        if found is UNKNOWN:
            return DetectionResult(asked, None, None, "exhaustive-skipped")
        return DetectionResult(asked, found is not None, found, "exhaustive")

    matrix = _vote_matrix(p)
    if prop is StructureProperty.CI:
        pass
    elif prop is StructureProperty.CEI:
        matrix = matrix.with_complements()
    elif prop is StructureProperty.VI:
        matrix = matrix.transpose()
    elif prop is StructureProperty.VEI:
        matrix = matrix.transpose().with_complements()
    else:  # pragma: no cover
        raise UnsupportedProperty(prop.value)
    order = _order_via_c1p(matrix)
    return DetectionResult(asked, order is not None, order, "consecutive-ones")


# ---------------------------------------------------------------- WSC


def wsc_characterize(p: ApprovalProfile) -> WscTriple | None:
    """Weak-order class decomposition: at most three classes, middle = u&w or u|w."""
    m = p.m
    classes: dict[frozenset[int] | None, list[int]] = {}
    for i, v in enumerate(p.votes):
        classes.setdefault(weak_order_key(v, m), []).append(i)
    keys = list(classes)
    if len(keys) > 3:
        return None

    def rep(key):
        if key is not None:
            return key
        members = classes[None]
        full = [i for i in members if len(p.votes[i]) == m]
        return p.votes[full[0]] if full else frozenset()

    if len(keys) == 3:
        for mid in (1, 0, 2):
            ends = [k for j, k in enumerate(keys) if j != mid]
            if None in ends:
                continue
            u, w = ends
            v = rep(keys[mid]) if keys[mid] is not None else frozenset()
            if weak_order_equal(v, u & w, m):
                kind = "intersection"
            elif weak_order_equal(v, u | w, m):
                kind = "union"
            else:
                continue
            order = tuple(classes[u]) + tuple(classes[keys[mid]]) + tuple(classes[w])
            break
        else:
            return None
    else:
        kind = "absent"
        order = tuple(i for k in keys for i in classes[k])

    order_c = canonical_order(order)
    first = weak_order_key(p.votes[order_c[0]], m)
    last = weak_order_key(p.votes[order_c[-1]], m)
    return WscTriple(rep(first), rep(last), kind, order_c)


# ---------------------------------------------------------------- embeddings

_FAR = Fraction(-1000)


def _embed_cei(p: ApprovalProfile, axis: Sequence[int]) -> EuclideanEmbedding:
    m = p.m
    pos = _positions(axis, m)
    cand = [Fraction(pos[c] + 1) for c in range(m)]
    voters = []
    for v in p.votes:
        if not v:
            voters.append(Fraction(-2 * m))
            continue
        ps = sorted(pos[c] + 1 for c in v)
        if ps[0] == 1:
            voters.append(Fraction(ps[-1] - m))
        else:
            voters.append(Fraction(ps[0] + m))
    return EuclideanEmbedding(tuple(voters), tuple(cand), radius=Fraction(m))


def _embed_vei(p: ApprovalProfile, order: Sequence[int]) -> EuclideanEmbedding:
    n = p.n
    pos = _positions(order, n)
    voters = [Fraction(pos[i] + 1) for i in range(n)]
    cand = []
    for appr in p.approvers:
        if not appr:
            cand.append(Fraction(-2 * n))
            continue
        ps = sorted(pos[i] + 1 for i in appr)
        cand.append(Fraction(ps[-1] - n) if ps[0] == 1 else Fraction(ps[0] + n))
    return EuclideanEmbedding(tuple(voters), tuple(cand), radius=Fraction(n))


def _embed_wsc(p: ApprovalProfile, t: WscTriple) -> EuclideanEmbedding:
    m = p.m
    c1, c2, c3, c4 = t.blocks(m)
    u, w = t.u, t.w
    everything = frozenset(range(m))
    has_full = any(len(v) == m for v in p.votes)
    union_votes = any(v == u | w and v not in (u, w) for v in p.votes)
    if has_full and c4:
        # Full votes beside a trivial middle class: then u & w is empty.
        radius, u_at, w_at, mid_at, full_at = 2, 0, 6, 3, 3
        block_pos = {2: 1, 1: 3, 3: 5, 4: 3}
    elif union_votes or has_full:
        radius, u_at, w_at, mid_at, full_at = 2, 0, 4, 2, 2
        block_pos = {2: 0, 1: 2, 3: 4, 4: 100}
    else:
        radius, u_at, w_at, mid_at, full_at = 1, 1, 3, 2, 2
        block_pos = {2: 0, 1: 2, 3: 4, 4: 100}
    cand = [Fraction(0)] * m
    for b, block in ((1, c1), (2, c2), (3, c3), (4, c4)):
        for c in block:
            cand[c] = Fraction(block_pos[b])
    voters = []
    for v in p.votes:
        if v == u:
            x = u_at
        elif v == w:
            x = w_at
        elif not v:
            x = _FAR
        elif v == everything:
            x = full_at
        else:
            x = mid_at
        voters.append(Fraction(x))
    return EuclideanEmbedding(tuple(voters), tuple(cand), radius=Fraction(radius))


def _embed_part(p: ApprovalProfile, parts: tuple[frozenset[int], ...]) -> EuclideanEmbedding:
    longest = max(len(part) for part in parts)
    radius = Fraction(longest - 1, 2)
    cand = [Fraction(0)] * p.m
    centre: dict[frozenset[int], Fraction] = {}
    base = 0
    for part in parts:
        for j, c in enumerate(sorted(part)):
            cand[c] = Fraction(base + j)
        centre[part] = Fraction(2 * base + len(part) - 1, 2)
        base += len(part) + 2 * longest
    voters = tuple(centre[v] for v in p.votes)
    return EuclideanEmbedding(voters, tuple(cand), radius=radius)


def _embed_ci(p: ApprovalProfile, axis: Sequence[int]) -> EuclideanEmbedding:
    pos = _positions(axis, p.m)
    cand = tuple(Fraction(pos[c] + 1) for c in range(p.m))
    voters, radii = [], []
    for v in p.votes:
        if not v:
            voters.append(Fraction(0))
            radii.append(Fraction(1, 2))
            continue
        ps = [pos[c] + 1 for c in v]
        lo, hi = min(ps), max(ps)
        voters.append(Fraction(lo + hi, 2))
        radii.append(Fraction(hi - lo, 2))
    return EuclideanEmbedding(tuple(voters), cand, radii=tuple(radii))


def embed_from_witness(p: ApprovalProfile, prop: StructureProperty | str, witness: Any) -> EuclideanEmbedding:
    """Realise a structural witness as a one-dimensional embedding.

    CEI, VEI, WSC and PART give a common radius (DUE); CI gives per-voter
    radii (DE).
    """
    if isinstance(prop, str) and not isinstance(prop, StructureProperty):
        prop = StructureProperty.parse(prop)
    prop = resolve(prop)
    builders = {
        StructureProperty.CEI: _embed_cei,
        StructureProperty.VEI: _embed_vei,
        StructureProperty.WSC: _embed_wsc,
        StructureProperty.PART: _embed_part,
        StructureProperty.TWO_PART: _embed_part,
        StructureProperty.CI: _embed_ci,
    }
    if prop not in builders:
        raise WitnessError(f"cannot embed from a {prop.value} witness")
    if prop is StructureProperty.WSC and not isinstance(witness, WscTriple):
        raise WitnessError("WSC embeddings need a WscTriple witness")
    if not verify_witness(p, prop, witness):
        raise WitnessError(f"invalid {prop.value} witness")
    if prop in (StructureProperty.PART, StructureProperty.TWO_PART):
        witness = _as_partition(witness, p.m)
    return builders[prop](p, witness)


# ---------------------------------------------------------------- exhaustive


def detect_ssc_exhaustive(p: ApprovalProfile, limit: int = 9):
    """Search all orders of the distinct non-trivial votes for an SSC order.

    Returns a voter order, ``None`` when none exists, or ``UNKNOWN`` when the
    number of distinct non-trivial votes exceeds ``limit``.  Identical votes can
    always be made adjacent, and trivial votes never express a strict
    preference, so only orders of distinct votes need to be tried.
    """
    m = p.m
    groups: dict[frozenset[int], list[int]] = {}
    trivial: list[int] = []
    for i, v in enumerate(p.votes):
        if len(v) in (0, m):
            trivial.append(i)
        else:
            groups.setdefault(v, []).append(i)
    keys = list(groups)
    if len(keys) > limit:
        return UNKNOWN
    masks = [_pair_masks(k, m) for k in keys]
    n = len(keys)
    chosen: list[int] = []
    used = [False] * n

    def search(sa: int, sb: int, ca: int, cb: int) -> bool:
        if len(chosen) == n:
            return True
        for j in range(n):
            if used[j]:
                continue
            am, bm = masks[j]
            if am & ca or bm & cb:
                continue
            used[j] = True
            chosen.append(j)
            if search(sa | am, sb | bm, ca | (bm & sa), cb | (am & sb)):
                return True
            chosen.pop()
            used[j] = False
        return False

    if not search(0, 0, 0, 0):
        return None
    order = [i for j in chosen for i in groups[keys[j]]] + trivial
    return canonical_order(order)


def enumerate_witness_orders(p: ApprovalProfile, prop: StructureProperty | str, limit: int = 8) -> list[tuple[int, ...]]:
    """Every voter (VI, VEI) or candidate (CI, CEI) order that witnesses ``prop``."""
    if isinstance(prop, str) and not isinstance(prop, StructureProperty):
        prop = StructureProperty.parse(prop)
    prop = resolve(prop)
    if prop in (StructureProperty.VI, StructureProperty.VEI):
        size = p.n
    elif prop in (StructureProperty.CI, StructureProperty.CEI):
        size = p.m
    else:
        raise WitnessError(f"order enumeration is not defined for {prop.value}")
    if size > limit:
        raise SizeLimitExceeded(f"{size} items exceed the enumeration limit {limit}")
    return [perm for perm in permutations(range(size)) if verify_witness(p, prop, perm)]
