"""
Equivalence engine: decide zero and pairwise equivalence of operator
compositions by brute force over the provably sufficient flattened domain
S_m x [m-1] (m the support size), enumerate equivalence classes per
degree/support, filter minimal relations by congruence rewriting over
lower-degree equivalences, and persist the results.

>>> eng = Engine()
>>> is_zero_equivalent(((1, 2), (1, 2)), eng).kind
'zero'
>>> are_equivalent(((1, 2), (4, 3)), ((4, 3), (1, 2)), eng).kind
'nonzero-equal'
"""

__all__ = [
    "EquivalenceVerdict", "RelationRecord", "RelationDB", "Classification",
    "Engine", "action_domain", "is_zero_equivalent", "are_equivalent",
    "enumerate_classes", "is_consequence", "verify_support_bound_lemmas",
    "minimal_relations", "DB_VERSION",
]

import json
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Optional

from .perms import Perm, all_perms
from .qalgebra import ActionResult, QElement, ZERO, Zero, zero_exponent
from .operators import (Word, apply_op_raw, apply_word, flatten_word,
                        cyclic_shift, horizontal_flip, vertical_flip,
                        support)

DB_VERSION = "relations-v1"


# ---------------------------------------------------------------------------
# domains and verdicts

def action_domain(m: int) -> list[tuple[Perm, int]]:
    """
    The sufficient test domain S_m x [m-1], ordered by (u lex, k).

    >>> action_domain(2)
    [((1, 2), 1), ((2, 1), 1)]
    """
    return [(u, k) for u in all_perms(m) for k in range(1, m)]


@dataclass(frozen=True)
class EquivalenceVerdict:
    """Outcome of an equivalence test, with a distinguishing witness."""
    kind: str  # "zero" | "nonzero-equal" | "not-equivalent"
    # (u, k, lhs result, rhs result) on the flattened comparison domain
    witness: Optional[tuple[Perm, int, ActionResult, ActionResult]] = None


@dataclass(frozen=True)
class RelationRecord:
    """A certified equivalence; rhs None encodes a zero relation."""
    lhs: Word
    rhs: Optional[Word]
    degree: int
    support_size: int
    minimal: bool
    orbit_id: str
    provenance: str
    orbit_size: int = 1


@dataclass
class RelationDB:
    """Mined relations plus per-(degree, support) statistics."""
    records: list[RelationRecord] = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    version: str = DB_VERSION

    def select(self, degree: int = None, support_size: int = None,
               zero: bool = None) -> list[RelationRecord]:
        out = []
        for r in self.records:
            if degree is not None and r.degree != degree:
                continue
            if support_size is not None and r.support_size != support_size:
                continue
            if zero is not None and (r.rhs is None) != zero:
                continue
            out.append(r)
        return out

    def to_json(self) -> dict:
        return {
            "version": self.version,
            "records": [
                {
                    "lhs": [list(op) for op in r.lhs],
                    "rhs": None if r.rhs is None
                    else [list(op) for op in r.rhs],
                    "degree": r.degree,
                    "support_size": r.support_size,
                    "minimal": r.minimal,
                    "orbit_id": r.orbit_id,
                    "provenance": r.provenance,
                    "orbit_size": r.orbit_size,
                }
                for r in self.records
            ],
            "stats": self.stats,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RelationDB":
        if obj.get("version") != DB_VERSION:
            raise ValueError(
                f"relation DB version {obj.get('version')!r} does not "
                f"match {DB_VERSION!r}")
        records = [
            RelationRecord(
                lhs=tuple((a, b) for a, b in r["lhs"]),
                rhs=None if r["rhs"] is None
                else tuple((a, b) for a, b in r["rhs"]),
                degree=r["degree"],
                support_size=r["support_size"],
                minimal=r["minimal"],
                orbit_id=r["orbit_id"],
                provenance=r["provenance"],
                orbit_size=r.get("orbit_size", 1),
            )
            for r in obj["records"]
        ]
        return cls(records=records, stats=obj.get("stats", {}))

    def save(self, path: str):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=1, sort_keys=True)

    @classmethod
    def load(cls, path: str) -> "RelationDB":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


# ---------------------------------------------------------------------------
# exhaustive classification of words of fixed degree and support

@dataclass(frozen=True)
class Classification:
    """Partition of the words of one degree with support exactly [m]."""
    degree: int
    support: int
    # non-zero classes, each sorted, ordered by their least member
    classes: tuple[tuple[Word, ...], ...]
    # zero words without a zero proper prefix (the rest are counted below)
    zero_words: tuple[Word, ...]
    prefix_zero_count: int
    class_of: dict

    @property
    def total_words(self) -> int:
        return _words_with_full_support(self.degree, self.support)

    @property
    def zero_total(self) -> int:
        return len(self.zero_words) + self.prefix_zero_count


def _ops(m: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(1, m + 1) for b in range(1, m + 1)
            if a != b]


def _words_with_full_support(d: int, m: int) -> int:
    # inclusion-exclusion over forbidden values
    return sum((-1) ** t * comb(m, t) * ((m - t) * (m - t - 1)) ** d
               for t in range(m + 1))


def _covering_suffix_count(m: int, missing: int, r: int) -> int:
    # suffixes of length r over the [m] alphabet covering `missing` values
    if missing > 2 * r:
        return 0
    return sum((-1) ** t * comb(missing, t)
               * ((m - t) * (m - t - 1)) ** r
               for t in range(missing + 1))


def _classify_span(d: int, m: int, first_ops: list[tuple[int, int]],
                   collect_classes: bool):
    """Classify all degree-d words over [m] starting with one of first_ops."""
    ops = _ops(m)
    domain = action_domain(m)
    ks = [k for _, k in domain]
    zero_alpha = zero_exponent(m)
    init = [(idx, zero_alpha, u) for idx, (u, _) in enumerate(domain)]
    full = frozenset(range(1, m + 1))
    classes: dict = {}
    zero_words: list[Word] = []
    prefix_zero = 0

    def explore(word: Word, live, supp):
        nonlocal prefix_zero
        depth = len(word)
        rest = d - depth
        use = first_ops if depth == 0 else ops
        for op in use:
            a, b = op
            nsupp = supp | {a, b}
            missing = m - len(nsupp)
            if missing > 2 * (rest - 1):
                continue
            nlive = []
            for idx, alpha, perm in live:
                res = apply_op_raw(alpha, perm, ks[idx], a, b)
                if res is not None:
                    nlive.append((idx, res[0], res[1]))
            word2 = word + (op,)
            if rest - 1 == 0:
                if len(nsupp) == m:
                    if nlive:
                        if collect_classes:
                            classes.setdefault(tuple(nlive), []).append(word2)
                    else:
                        zero_words.append(word2)
                continue
            if nlive:
                explore(word2, nlive, nsupp)
            else:
                # the prefix word2 acts as zero everywhere, hence all of
                # its support-covering extensions are zero words with a
                # zero proper prefix
                prefix_zero += _covering_suffix_count(m, missing, rest - 1)

    explore((), init, frozenset())
    return classes, zero_words, prefix_zero


def _classify_worker(args):
    return _classify_span(*args)


def classify_words(d: int, m: int, collect_classes: bool = True,
                   jobs: int = 1) -> Classification:
    """
    Exhaustively classify the degree-d words with support exactly [m].

    >>> c = classify_words(1, 2)
    >>> [cls for cls in c.classes]
    [(((1, 2),),), (((2, 1),),)]
    """
    ops = _ops(m)
    if jobs > 1 and len(ops) > 1:
        chunks = [(d, m, [op], collect_classes) for op in ops]
        classes: dict = {}
        zero_words: list[Word] = []
        prefix_zero = 0
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for cls, zw, pz in pool.map(_classify_worker, chunks):
                for sig, words in cls.items():
                    classes.setdefault(sig, []).extend(words)
                zero_words.extend(zw)
                prefix_zero += pz
    else:
        classes, zero_words, prefix_zero = _classify_span(
            d, m, ops, collect_classes)
    sorted_classes = tuple(
        sorted((tuple(sorted(ws)) for ws in classes.values()),
               key=lambda ws: ws[0]))
    class_of = {w: i for i, ws in enumerate(sorted_classes) for w in ws}
    return Classification(d, m, sorted_classes, tuple(sorted(zero_words)),
                          prefix_zero, class_of)


# ---------------------------------------------------------------------------
# the engine: caches classifications and zero checks

class Engine:
    """Shared caches for classification, zero tests, and class lookup."""

    def __init__(self, max_support: int = 8, jobs: int = 1):
        self.max_support = max_support
        self.jobs = jobs
        self._classifications: dict = {}
        self._zero_cache: dict = {}

    def classification(self, d: int, m: int,
                       collect_classes: bool = True) -> Classification:
        if m > self.max_support:
            raise ValueError(
                f"support {m} exceeds configured cap {self.max_support}")
        full = self._classifications.get((d, m, True))
        if full is not None:
            return full
        if not collect_classes:
            partial = self._classifications.get((d, m, False))
            if partial is not None:
                return partial
        heavy = d >= 4 or (d == 3 and m >= 5)
        jobs = self.jobs if heavy else 1
        c = classify_words(d, m, collect_classes=collect_classes, jobs=jobs)
        self._classifications[(d, m, collect_classes)] = c
        return c

    def is_zero_flat(self, word: Word) -> bool:
        """Zero test for a word, decided on its own flattened domain."""
        flat = flatten_word(word)
        hit = self._zero_cache.get(flat)
        if hit is not None:
            return hit
        m = len(support(flat))
        if m > self.max_support:
            raise ValueError(
                f"support {m} exceeds configured cap {self.max_support}")
        res = True
        for u, k in action_domain(m):
            if not isinstance(apply_word(flat, u, k), Zero):
                res = False
                break
        self._zero_cache[flat] = res
        return res

    def class_members(self, flat_word: Word) -> Optional[tuple[Word, ...]]:
        """All words equivalent to a flattened non-zero word, or None."""
        d = len(flat_word)
        m = len(support(flat_word))
        c = self.classification(d, m)
        idx = c.class_of.get(flat_word)
        if idx is None:
            return None
        return c.classes[idx]


# ---------------------------------------------------------------------------
# verdicts

def _first_nonzero(word: Word, m: int):
    for u, k in action_domain(m):
        res = apply_word(word, u, k)
        if not isinstance(res, Zero):
            return u, k, res
    return None


def is_zero_equivalent(word: Word, engine: Optional[Engine] = None
                       ) -> EquivalenceVerdict:
    """
    Zero test over the flattened domain, with a non-zero witness otherwise.

    >>> is_zero_equivalent(((2, 3), (1, 2), (2, 3))).kind
    'zero'
    """
    if not word:
        raise ValueError("empty composition")
    engine = engine or Engine()
    flat = flatten_word(word)
    if engine.is_zero_flat(flat):
        return EquivalenceVerdict("zero")
    m = len(support(flat))
    u, k, res = _first_nonzero(flat, m)
    return EquivalenceVerdict("not-equivalent", (u, k, res, ZERO))


def _relabel(word: Word, mapping: dict) -> Word:
    return tuple((mapping[a], mapping[b]) for a, b in word)


def _witness_over(w1: Word, w2: Word, m: int):
    for u, k in action_domain(m):
        r1 = apply_word(w1, u, k)
        r2 = apply_word(w2, u, k)
        if r1 != r2:
            return (u, k, r1, r2)
    return None


def are_equivalent(v1: Word, v2: Word,
                   engine: Optional[Engine] = None) -> EquivalenceVerdict:
    """
    Decide equivalence of two compositions.

    >>> are_equivalent(((1, 2), (2, 1), (1, 2)), ((2, 1), (1, 2), (2, 1))).kind
    'not-equivalent'
    """
    if not v1 or not v2:
        raise ValueError("empty composition")
    engine = engine or Engine()
    z1 = engine.is_zero_flat(v1)
    z2 = engine.is_zero_flat(v2)
    if z1 and z2:
        return EquivalenceVerdict("zero")
    union = sorted(support(v1) | support(v2))
    mapping = {t: i + 1 for i, t in enumerate(union)}
    f1, f2 = _relabel(v1, mapping), _relabel(v2, mapping)
    if z1 != z2 or len(v1) != len(v2) or support(v1) != support(v2):
        # unequal class for structural reasons; hunt down a witness on the
        # union-support domain, escalating once as a safety net
        for m in (len(union), len(union) + 1):
            wit = _witness_over(f1, f2, m)
            if wit is not None:
                return EquivalenceVerdict("not-equivalent", wit)
        raise RuntimeError("structurally distinct words with no witness "
                           "found on the escalated domain")
    wit = _witness_over(f1, f2, len(union))
    if wit is not None:
        return EquivalenceVerdict("not-equivalent", wit)
    return EquivalenceVerdict("nonzero-equal")


def enumerate_classes(d: int, m: int,
                      engine: Optional[Engine] = None) -> Classification:
    """
    Partition of the degree-d words with support exactly [m].

    >>> len(enumerate_classes(1, 2).classes)
    2
    """
    engine = engine or Engine()
    return engine.classification(d, m)


# ---------------------------------------------------------------------------
# consequence testing via congruence rewriting

def _subword_rewrites(word: Word, engine: Engine):
    d = len(word)
    for l in range(2, d):
        for i in range(d - l + 1):
            sub = word[i:i + l]
            vals = sorted(support(sub))
            mapping = {t: r + 1 for r, t in enumerate(vals)}
            inv = {r + 1: t for r, t in enumerate(vals)}
            fsub = _relabel(sub, mapping)
            members = engine.class_members(fsub)
            if members is None:
                continue
            for mem in members:
                if mem == fsub:
                    continue
                yield word[:i] + _relabel(mem, inv) + word[i + l:]


def _has_zero_proper_subword(word: Word, engine: Engine) -> bool:
    d = len(word)
    for l in range(2, d):
        for i in range(d - l + 1):
            if engine.is_zero_flat(word[i:i + l]):
                return True
    return False


def is_consequence(lhs: Word, rhs: Optional[Word], engine: Engine,
                   max_nodes: int = 500_000) -> bool:
    """
    Whether the relation lhs = rhs (rhs None meaning lhs = 0) follows from
    strictly lower-degree equivalences applied to contiguous subwords.

    A zero relation is a consequence when rewriting reaches a word with a
    zero-equivalent proper subword; a pair relation is a consequence when
    rhs is reachable by such rewrites alone.

    >>> eng = Engine()
    >>> is_consequence(((1, 2), (1, 2), (3, 4)), None, eng)
    True
    """
    if rhs is not None and lhs == rhs:
        return True
    seen = {lhs}
    queue = deque([lhs])
    while queue:
        w = queue.popleft()
        if rhs is None:
            if _has_zero_proper_subword(w, engine):
                return True
        elif w == rhs:
            return True
        for nb in _subword_rewrites(w, engine):
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)
                if len(seen) > max_nodes:
                    raise RuntimeError("rewrite search exceeded node cap")
    return False


def verify_support_bound_lemmas(d: int, engine: Engine,
                                supports: Optional[list[int]] = None) -> dict:
    """
    Confirm that every zero word of degree d at the listed support sizes
    (default 2d and 2d-1, adding 2d-2 for d >= 4) is a consequence of a
    lower-degree zero equivalence.
    """
    if supports is None:
        supports = [2 * d, 2 * d - 1] + ([2 * d - 2] if d >= 4 else [])
    report = {"degree": d, "supports": {}}
    for m in sorted(supports):
        c = engine.classification(d, m, collect_classes=False)
        bad = [w for w in c.zero_words if not is_consequence(w, None, engine)]
        report["supports"][m] = {
            "zero_words_checked": len(c.zero_words),
            "zero_with_zero_prefix": c.prefix_zero_count,
            "non_consequences": bad,
        }
    return report


# ---------------------------------------------------------------------------
# minimal relation mining

def _components(members: tuple[Word, ...], engine: Engine) -> list[list[Word]]:
    """Rewrite-reachability components within one equivalence class."""
    index = {w: i for i, w in enumerate(members)}
    parent = list(range(len(members)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for w in members:
        for nb in _subword_rewrites(w, engine):
            j = index.get(nb)
            if j is not None:
                union(index[w], j)
    groups: dict[int, list[Word]] = {}
    for w, i in index.items():
        groups.setdefault(find(i), []).append(w)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def _orbit_of_pair(pair: tuple[Word, Word]) -> frozenset:
    start = frozenset(pair)
    seen = {start}
    stack = [start]
    while stack:
        p = stack.pop()
        for g in (cyclic_shift, horizontal_flip, vertical_flip):
            img = frozenset(g(w) for w in p)
            if img not in seen:
                seen.add(img)
                stack.append(img)
    return frozenset(seen)


def _orbit_of_word(word: Word) -> frozenset:
    from .operators import orbit
    return orbit(word)


def _canonical_pair(p: frozenset) -> tuple[Word, Word]:
    a, b = sorted(p) if len(p) == 2 else (min(p), min(p))
    return a, b


def minimal_relations(max_degree: int, max_support: int,
                      engine: Optional[Engine] = None,
                      provenance: str = "brute-force") -> RelationDB:
    """
    Mine all minimal relations up to the caps, deduplicated by
    transformation orbit, with canonical lexicographically-least
    representatives.

    >>> db = minimal_relations(2, 3)
    >>> [r.lhs for r in db.select(zero=False)]
    []
    """
    engine = engine or Engine(max_support=max_support)
    db = RelationDB()
    for d in range(2, max_degree + 1):
        bound = min(2 * d, max_support)
        if d >= 4:
            bound = min(bound, 2 * d - 3)
            lemma_support = min(2 * d - 2, max_support)
            if lemma_support > bound:
                rep = verify_support_bound_lemmas(
                    d, engine, supports=[lemma_support])
                db.stats[f"d{d}-support-lemma"] = {
                    str(m): {
                        "zero_words_checked": v["zero_words_checked"],
                        "zero_with_zero_prefix": v["zero_with_zero_prefix"],
                        "non_consequences": len(v["non_consequences"]),
                    }
                    for m, v in rep["supports"].items()
                }
                for m, v in rep["supports"].items():
                    for w in v["non_consequences"]:
                        # honest fallout: a zero word at the pruned support
                        # that is not a consequence is itself minimal
                        db.records.append(RelationRecord(
                            w, None, d, m, True,
                            f"d{d}m{m}-lemma-outlier", provenance))
        for m in range(2, bound + 1):
            _mine_level(d, m, engine, db, provenance)
    db.records.sort(key=lambda r: (r.degree, r.support_size,
                                   r.rhs is not None, r.lhs))
    return db


def _mine_level(d: int, m: int, engine: Engine, db: RelationDB,
                provenance: str):
    c = engine.classification(d, m)
    minimal_zero = [w for w in c.zero_words
                    if not is_consequence(w, None, engine)]
    min_set = set(minimal_zero)
    zero_orbits: dict[Word, set[Word]] = {}
    for w in minimal_zero:
        orb = _orbit_of_word(w)
        zero_orbits.setdefault(min(orb), set()).update(
            x for x in orb if x in min_set)
    pair_candidates: list[tuple[Word, Word]] = []
    for members in c.classes:
        if len(members) < 2:
            continue
        comps = _components(members, engine)
        for i in range(len(comps)):
            for j in range(i + 1, len(comps)):
                pair_candidates.append((comps[i][0], comps[j][0]))
    pair_orbits: dict[tuple[Word, Word], int] = {}
    for pair in pair_candidates:
        orb = _orbit_of_pair(pair)
        key = min(_canonical_pair(p) for p in orb)
        pair_orbits[key] = len(orb)
    nz_counts = [len(ws) for ws in c.classes]
    db.stats[f"d{d}m{m}"] = {
        "total_words": c.total_words,
        "zero_words": c.zero_total,
        "nonzero_words": sum(nz_counts),
        "nonzero_classes": len(c.classes),
        "nontrivial_classes": sum(1 for x in nz_counts if x > 1),
        "minimal_zero_words": len(minimal_zero),
        "minimal_zero_orbits": len(zero_orbits),
        "minimal_pairs": len(pair_candidates),
        "minimal_pair_orbits": len(pair_orbits),
    }
    for i, (rep, found) in enumerate(sorted(zero_orbits.items())):
        db.records.append(RelationRecord(
            rep, None, d, m, True, f"d{d}m{m}-z{i}", provenance,
            orbit_size=len(found)))
    for i, ((lhs, rhs), osize) in enumerate(sorted(pair_orbits.items())):
        db.records.append(RelationRecord(
            lhs, rhs, d, m, True, f"d{d}m{m}-p{i}", provenance,
            orbit_size=osize))
