"""
End-to-end acceptance checks: golden actions, full classifications at
degrees 2-4, the arbitrary-degree families, the transformation duality
property suite, the classical baseline, poset reproduction, and the
closing generating-set scan.  Each test asserts its runtime budget.
"""

import random
import time

import pytest

from qkbruhat.perms import (all_perms, compose, length, inverse,
                            conjugate_by_longest, reverse_positions,
                            cyclic_value_shift, truncate_value,
                            delete_and_flatten)
from qkbruhat.qalgebra import (QElement, Zero, zero_exponent,
                               reverse_exponent, exponent_delete,
                               signed_q_interval, extended_length)
from qkbruhat.operators import (apply_word, apply_op_raw, support,
                                quantum_count, truncate_word, orbit,
                                cyclic_shift, flatten_word)
from qkbruhat.orders import (build_poset, classical_leq_k,
                             classical_monoid_relation_check, interval,
                             maximal_chains, CoverLabel, TruncatedPoset)
from qkbruhat.equiv import (Engine, minimal_relations,
                            verify_support_bound_lemmas, _orbit_of_pair)
from qkbruhat.catalog import (degree_two_zero_case, arblength_zero_word,
                              arblength_nonzero_pair, instantiate_family,
                              verify_family, verify_minimality,
                              conjecture_scan)


def timed(budget):
    """Context manager asserting the block finishes within budget seconds."""
    class _Timer:
        def __enter__(self):
            self.t0 = time.perf_counter()
            return self

        def __exit__(self, *exc):
            if exc[0] is None:
                assert time.perf_counter() - self.t0 < budget
    return _Timer()


# --- criterion 1: composite action golden set -----------------------------

W8 = (7, 1, 6, 3, 5, 4, 2, 8)

GOLDEN_ACTIONS = {
    "a": (((5, 4), (1, 2)), (0, 0, 0, 0, 1, 0, 0), (7, 2, 6, 3, 4, 5, 1, 8)),
    "j": (((5, 4), (6, 2)), (0, 0, 1, 1, 2, 1, 0), (7, 1, 2, 3, 4, 5, 6, 8)),
    "k": (((5, 2), (2, 4)), (0, 0, 0, 0, 1, 1, 0), (7, 1, 6, 3, 4, 2, 5, 8)),
    "m": (((5, 4), (4, 5)), (0, 0, 0, 0, 1, 0, 0), (7, 1, 6, 3, 5, 4, 2, 8)),
    "q": (((6, 2), (3, 4)), (0, 0, 1, 1, 1, 1, 0), (7, 1, 2, 4, 5, 3, 6, 8)),
    "r": (((6, 2), (5, 4)), (0, 0, 1, 1, 2, 1, 0), (7, 1, 2, 3, 4, 5, 6, 8)),
    "s": (((6, 2), (5, 6)), (0, 0, 1, 1, 1, 1, 0), (7, 1, 2, 3, 6, 4, 5, 8)),
    "y": (((5, 4), (7, 8)), (0, 0, 0, 0, 1, 0, 0), (8, 1, 6, 3, 4, 5, 2, 7)),
}


def test_criterion_1_action_golden_set():
    with timed(1.0):
        for tag, (word, q, perm) in GOLDEN_ACTIONS.items():
            assert apply_word(word, W8, 5) == QElement(q, perm), tag


# --- criterion 2: worked three-operator example and its truncation --------

def test_criterion_2_worked_example():
    with timed(1.0):
        word = ((5, 3), (7, 8), (6, 1))
        u = (7, 6, 2, 5, 3, 4, 1, 8)
        res = apply_word(word, u, 4)
        assert res == QElement((0, 1, 1, 2, 1, 1, 0),
                               (8, 1, 2, 3, 5, 4, 6, 7))
        # deleting the untouched value 2 commutes with the action
        t = u.index(2) + 1
        small = apply_word(truncate_word(word, 2),
                           delete_and_flatten(u, t), truncate_value(4, t))
        assert small == QElement(exponent_delete(res.q, t),
                                 delete_and_flatten(res.w, t))


# --- criterion 3: complete degree-2 classification ------------------------

DEG2_PATTERNS = [
    lambda a, b, c, d: ((a, b), (c, d)),   # disjoint, both classical
    lambda a, b, c, d: ((a, b), (d, c)),   # disjoint, one quantum
    lambda a, b, c, d: ((b, a), (c, d)),
    lambda a, b, c, d: ((a, d), (b, c)),   # nested, classical outer
    lambda a, b, c, d: ((b, c), (d, a)),   # nested, quantum outer
    lambda a, b, c, d: ((c, b), (d, a)),
]


def test_criterion_3_degree_two_complete():
    with timed(5.0):
        engine = Engine(max_support=8)
        for m in (2, 3, 4):
            c = engine.classification(2, m)
            zero = set(c.zero_words)
            nonzero = {w for cl in c.classes for w in cl}
            for w in zero | nonzero:
                (a, b), (cc, d) = w
                predicted = degree_two_zero_case(a, b, cc, d) is not None
                assert predicted == (w in zero), w
            if m < 4:
                assert all(len(cl) == 1 for cl in c.classes)
        # at support 4 the nonzero classes are exactly the six commuting
        # patterns, each a two-element class
        c = engine.classification(2, 4)
        expected = set()
        for pat in DEG2_PATTERNS:
            x, y = pat(1, 2, 3, 4)
            expected.add(frozenset({(x, y), (y, x)}))
        got = {frozenset(cl) for cl in c.classes}
        assert got == expected


# --- criterion 4: complete degree-3 classification ------------------------

def test_criterion_4_degree_three_complete(engine, db4):
    with timed(120.0):
        for fid in ("three0e", "d3nz"):
            rep = verify_family(fid, engine, db=db4)
            assert rep["failures"] == [], rep
        report = verify_support_bound_lemmas(3, engine)
        assert sorted(report["supports"]) == [5, 6]
        for sub in report["supports"].values():
            assert sub["non_consequences"] == []


# --- criterion 5: degree-4 minimal relations ------------------------------

def test_criterion_5_degree_four(engine, db4):
    recs = db4.select(degree=4)
    assert [r.orbit_id for r in recs] == ["d4m4-p0", "d4m5-z0"]
    pair, zero = recs
    # the nonzero pair is the degree-4 instance of the arbitrary-length
    # pair family, up to transformations
    family = _orbit_of_pair(arblength_nonzero_pair((1, 2, 3, 4)))
    assert frozenset({pair.lhs, pair.rhs}) in family
    assert pair.orbit_size == 8
    # the zero word is the degree-4 instance of the zero family, up to
    # transformations
    assert zero.lhs in orbit(arblength_zero_word((1, 2, 3, 4, 5)))
    assert zero.rhs is None and zero.orbit_size == 10
    assert db4.stats["d4m4"]["minimal_pair_orbits"] == 1
    assert db4.stats["d4m5"]["minimal_zero_orbits"] == 1
    # support-bound lemmas checked at support 6 during mining
    lemma = db4.stats["d4-support-lemma"]["6"]
    assert lemma["non_consequences"] == 0
    assert lemma["zero_words_checked"] == 10800


# --- criterion 6: arbitrary-degree families -------------------------------

def test_criterion_6_arbitrary_degree(engine):
    with timed(120.0):
        for fid in ("arblength-zero", "arblength-nonzero"):
            rep = verify_family(fid, engine)  # instantiates n = 4..7
            assert rep["failures"] == [], rep
            rep = verify_minimality(fid, engine, ns=(4, 5))
            assert rep["failures"] == [], rep
        # the shifted families are the cyclic-shift orbits of the two
        # base families
        base = arblength_zero_word((1, 2, 3, 4))
        shifts = []
        w = base
        for _ in range(3):
            w = cyclic_shift(w)
            shifts.append(w)
        got = [r.lhs for r in instantiate_family("pathovercs", (1, 2, 3, 4))]
        assert got == shifts
        for fid in ("pathovercs", "cycofnew"):
            rep = verify_family(fid, engine)
            assert rep["failures"] == [], rep


# --- criterion 7: transformation duality property suite -------------------

def _full_hflip(v, n):
    return tuple((n + 1 - b, n + 1 - a) for a, b in v)


def _full_cycle(v, n):
    shift = lambda x: 1 if x == n else x + 1
    return tuple((shift(a), shift(b)) for a, b in v)


def _random_case(rng):
    n = rng.randint(3, 7)
    u = list(range(1, n + 1))
    rng.shuffle(u)
    u = tuple(u)
    k = rng.randint(1, n - 1)
    d = rng.randint(1, 5)
    if rng.random() < 0.5:
        word = tuple(tuple(rng.sample(range(1, n + 1), 2)) for _ in range(d))
    else:
        # guided: extend by operators applicable to the running result,
        # so that non-zero actions are well represented
        word = []
        state = (zero_exponent(n), u)
        for _ in range(d):
            options = []
            for a in range(1, n + 1):
                for b in range(1, n + 1):
                    if a != b and apply_op_raw(*state, k, a, b) is not None:
                        options.append((a, b))
            if not options:
                break
            op = rng.choice(options)
            word.append(op)
            state = apply_op_raw(*state, k, *op)
        if not word:
            word = [tuple(rng.sample(range(1, n + 1), 2))]
        word = tuple(word)
    return word, u, k, n


def _check_dualities(rng, word, u, k, n):
    res = apply_word(word, u, k)
    # horizontal duality
    hres = apply_word(_full_hflip(word, n), conjugate_by_longest(u), n - k)
    if isinstance(res, Zero):
        assert isinstance(hres, Zero)
    else:
        assert hres == QElement(reverse_exponent(res.q),
                                conjugate_by_longest(res.w))
    # cyclic duality
    cres = apply_word(_full_cycle(word, n), cyclic_value_shift(u), k)
    if isinstance(res, Zero):
        assert isinstance(cres, Zero)
        return 0
    assert not isinstance(cres, Zero)
    i, j = u.index(n) + 1, res.w.index(n) + 1
    if j < i:
        beta = signed_q_interval(j, i, n, +1)
    elif i < j:
        beta = signed_q_interval(i, j, n, -1)
    else:
        beta = zero_exponent(n)
    assert cres == QElement(tuple(x + y for x, y in zip(res.q, beta)),
                            cyclic_value_shift(res.w))
    # vertical duality: the reversed word undoes the action from the
    # position-reversed side
    vres = apply_word(tuple(reversed(word)), reverse_positions(res.w), n - k)
    assert vres == QElement(reverse_exponent(res.q), reverse_positions(u))
    # exponent and length laws
    assert res.q[k - 1] == quantum_count(word)
    assert extended_length(res) == length(u) + len(word)
    # truncation at an untouched value
    outside = [p for p in range(1, n + 1) if p not in support(word)]
    if outside:
        p = rng.choice(outside)
        t = u.index(p) + 1
        tk = truncate_value(k, t)
        if tk >= 1:
            small = apply_word(truncate_word(word, p),
                               delete_and_flatten(u, t), tk)
            assert small == QElement(
                exponent_delete(res.q, min(t, n - 1)),
                delete_and_flatten(res.w, t))
    return 1


def test_criterion_7_duality_property_suite():
    rng = random.Random(20260823)
    nonzero = 0
    for _ in range(10_000):
        word, u, k, n = _random_case(rng)
        nonzero += _check_dualities(rng, word, u, k, n)
    # the guided half keeps live actions well represented
    assert nonzero > 1000


# --- criterion 8: classical baseline --------------------------------------

def _reachability(p: TruncatedPoset) -> dict:
    succ = {node[1]: set() for node in p.nodes}
    for lo, up, _ in p.edges:
        succ[lo[1]].add(up[1])
    closed = {w: set(outs) for w, outs in succ.items()}
    changed = True
    while changed:
        changed = False
        for acc in closed.values():
            for v in list(acc):
                extra = closed[v] - acc
                if extra:
                    acc |= extra
                    changed = True
    return closed


def _grassmannian_interval(lo, hi):
    """Hasse diagram of a bracket of the Grassmannian order, labelled."""
    from qkbruhat.orders import grassmannian_leq
    n = len(lo)
    nodes = [e for e in all_perms(n)
             if grassmannian_leq(lo, e) and grassmannian_leq(e, hi)]
    leq = {(x, y) for x in nodes for y in nodes
           if x != y and grassmannian_leq(x, y)}
    edges = []
    for x, y in leq:
        if any((x, z) in leq and (z, y) in leq for z in nodes):
            continue
        diff = [i for i in range(n) if x[i] != y[i]]
        assert len(diff) == 2
        a, b = sorted((x[diff[0]], x[diff[1]]))
        edges.append((x, y, CoverLabel(a, b, "classical", zero_exponent(n))))
    return nodes, edges


def _grassmannian_chains(nodes, edges, lo, hi):
    chains = []

    def walk(x, acc):
        if x == hi:
            chains.append(acc)
        for src, dst, lab in edges:
            if src == x:
                walk(dst, acc + (lab,))

    walk(lo, ())
    return chains


def test_criterion_8_classical_baseline():
    with timed(60.0):
        # comparison criterion matches cover-reachability up to S_5
        for n in (2, 3, 4, 5):
            for k in range(1, n):
                p = build_poset(n, k, 0)
                closed = _reachability(p)
                for u in all_perms(n):
                    for w in all_perms(n):
                        expect = w == u or w in closed.get(u, set())
                        assert classical_leq_k(u, w, k) == expect
        # the defining monoid relations hold as action equalities
        for n in (4, 5):
            assert classical_monoid_relation_check(n)["violations"] == []
        # three isomorphic intervals share their chain-label multisets
        z5 = zero_exponent(5)
        p5 = build_poset(5, 2, 0)
        chains_a = maximal_chains(p5, (z5, (1, 3, 4, 2, 5)),
                                  (z5, (2, 5, 3, 1, 4)))
        z6 = zero_exponent(6)
        p6 = build_poset(6, 3, 0)
        chains_b = maximal_chains(p6, (z6, (6, 1, 3, 4, 2, 5)),
                                  (z6, (6, 2, 5, 3, 1, 4)))
        glo, ghi = (1, 2, 3, 4, 5), (2, 1, 5, 3, 4)
        nodes, edges = _grassmannian_interval(glo, ghi)
        assert len(nodes) == 6 and len(edges) == 7
        chains_c = _grassmannian_chains(nodes, edges, glo, ghi)
        labelset = lambda chains: sorted(
            tuple(sorted((min(l.a, l.b), max(l.a, l.b)) for l in ch))
            for ch in chains)
        assert len(chains_a) == len(chains_b) == len(chains_c) == 3
        # the prepended fixed value in (b) leaves the moved values, and
        # hence the left-transposition labels, untouched
        assert labelset(chains_a) == labelset(chains_b) == labelset(chains_c)
        assert labelset(chains_a)[0] == ((1, 2), (3, 4), (4, 5))
        # the chain count equals the number of degree-3 words realizing
        # the interval as a classical action
        ops = [(a, b) for a in range(1, 6) for b in range(1, 6) if a != b]
        count = 0
        for x in ops:
            for y in ops:
                for zz in ops:
                    res = apply_word((x, y, zz), (1, 3, 4, 2, 5), 2)
                    if isinstance(res, QElement) \
                            and res.w == (2, 5, 3, 1, 4) \
                            and res.q == z5:
                        count += 1
        assert count == 3


# --- criterion 9: quantum poset reproduction ------------------------------

# displayed portion of the quantum 2-Bruhat diagram at n = 3, cap 2
Z = (0, 0)
QUANTUM_EDGES_32 = {
    ((Z, (1, 2, 3)), (Z, (1, 3, 2))),
    ((Z, (1, 3, 2)), ((0, 1), (1, 2, 3))),
    (((0, 1), (1, 2, 3)), ((0, 1), (1, 3, 2))),
    (((0, 1), (1, 3, 2)), ((0, 1), (2, 3, 1))),
    (((0, 1), (2, 1, 3)), ((0, 1), (2, 3, 1))),
    (((0, 1), (2, 1, 3)), ((0, 1), (3, 1, 2))),
    ((Z, (3, 2, 1)), ((0, 1), (3, 1, 2))),
    ((Z, (3, 1, 2)), (Z, (3, 2, 1))),
    ((Z, (2, 1, 3)), (Z, (3, 1, 2))),
    ((Z, (2, 1, 3)), (Z, (2, 3, 1))),
    ((Z, (1, 3, 2)), (Z, (2, 3, 1))),
    ((Z, (2, 3, 1)), ((0, 1), (2, 1, 3))),
    (((0, 1), (1, 3, 2)), ((0, 2), (1, 2, 3))),
    ((Z, (3, 2, 1)), ((1, 1), (1, 2, 3))),
}


def test_criterion_9_poset_reproduction():
    with timed(1.0):
        p = build_poset(3, 2, 2)
        nodes = set(p.nodes)
        edges = {(lo, up) for lo, up, lab in p.edges}
        for lo, up in QUANTUM_EDGES_32:
            assert lo in nodes and up in nodes and (lo, up) in edges


# --- criterion 10: generating-set scan over all mined minimal relations ---

def test_criterion_10_conjecture_scan():
    with timed(1200.0):
        engine = Engine(max_support=8)
        rep = conjecture_scan(4, 6, engine)
        assert rep["outliers"] == []
        assert rep["records"] == 13
