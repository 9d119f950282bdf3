import pytest

from qkbruhat.qalgebra import Zero
from qkbruhat.equiv import (RelationRecord, RelationDB, action_domain,
                            is_zero_equivalent, are_equivalent,
                            enumerate_classes, is_consequence,
                            verify_support_bound_lemmas, minimal_relations,
                            DB_VERSION)

# minimal degree-2 relations through support 4, frozen from a full
# brute-force classification over the flattened comparison domains
DEGREE2_RECORDS = [
    RelationRecord(((1, 2), (1, 2)), None, 2, 2, True, "d2m2-z0",
                   "brute-force", 2),
    RelationRecord(((1, 2), (1, 3)), None, 2, 3, True, "d2m3-z0",
                   "brute-force", 12),
    RelationRecord(((1, 3), (2, 1)), None, 2, 3, True, "d2m3-z1",
                   "brute-force", 6),
    RelationRecord(((1, 3), (2, 4)), None, 2, 4, True, "d2m4-z0",
                   "brute-force", 8),
    RelationRecord(((1, 4), (3, 2)), None, 2, 4, True, "d2m4-z1",
                   "brute-force", 4),
    RelationRecord(((1, 2), (3, 4)), ((3, 4), (1, 2)), 2, 4, True,
                   "d2m4-p0", "brute-force", 2),
    RelationRecord(((1, 2), (4, 3)), ((4, 3), (1, 2)), 2, 4, True,
                   "d2m4-p1", "brute-force", 4),
]


def test_action_domain():
    dom = action_domain(2)
    assert dom == [((1, 2), 1), ((2, 1), 1)]
    dom3 = action_domain(3)
    assert len(dom3) == 12  # 3! permutations times 2 columns
    assert all(1 <= k <= 2 for _, k in dom3)


def test_zero_verdicts(engine):
    assert is_zero_equivalent(((1, 2), (1, 3)), engine).kind == "zero"
    v = is_zero_equivalent(((1, 2), (2, 3)), engine)
    assert v.kind == "not-equivalent"
    u, k, left, right = v.witness
    assert left != right


def test_equivalence_verdicts(engine):
    v = are_equivalent(((1, 2), (3, 4)), ((3, 4), (1, 2)), engine)
    assert v.kind == "nonzero-equal"
    # a word blocked by an intermediate value is not the plain swap
    v2 = are_equivalent(((1, 2),), ((1, 3),), engine)
    assert v2.kind == "not-equivalent"
    u, k, left, right = v2.witness
    assert u == (1, 2, 3) and k == 1
    assert left.w == (2, 1, 3)
    assert isinstance(right, Zero)


def test_classification_counts(engine):
    c = engine.classification(2, 2)
    assert (c.total_words, c.zero_total) == (4, 2)
    assert len(c.classes) == 2
    c = engine.classification(2, 3)
    assert (c.total_words, c.zero_total) == (24, 18)
    assert all(len(cl) == 1 for cl in c.classes)
    c = engine.classification(2, 4)
    assert (c.total_words, c.zero_total) == (24, 12)
    assert len(c.classes) == 6
    assert all(len(cl) == 2 for cl in c.classes)
    c = engine.classification(3, 3)
    assert (c.total_words, c.zero_total) == (192, 174)


def test_enumerate_classes(engine):
    c = enumerate_classes(2, 4, engine)
    members = {w for cl in c.classes for w in cl}
    assert ((1, 2), (3, 4)) in members
    assert c.class_of[((1, 2), (3, 4))] == c.class_of[((3, 4), (1, 2))]


def test_minimal_relations_degree2(engine):
    db = minimal_relations(2, 4, engine)
    assert list(db.records) == DEGREE2_RECORDS
    s = db.stats["d2m4"]
    assert s["nontrivial_classes"] == 6
    assert s["minimal_pair_orbits"] == 2
    assert db.stats["d2m3"]["minimal_zero_orbits"] == 2


def test_db_select_and_roundtrip(tmp_path, engine):
    db = minimal_relations(2, 4, engine)
    zeros = db.select(zero=True)
    assert all(r.rhs is None for r in zeros) and len(zeros) == 5
    assert len(db.select(support_size=4)) == 4
    path = tmp_path / "rel.json"
    db.save(path)
    back = RelationDB.load(path)
    assert back.records == db.records
    assert back.stats == db.stats
    assert back.version == DB_VERSION


def test_db_version_refusal(tmp_path, engine):
    db = minimal_relations(2, 4, engine)
    obj = db.to_json()
    obj["version"] = "relations-v0"
    with pytest.raises(ValueError):
        RelationDB.from_json(obj)


def test_is_consequence(engine):
    # a zero word with a zero sub-block rewrites to zero
    assert is_consequence(((1, 2), (1, 2), (3, 4)), None, engine)
    # a minimal zero word does not
    assert not is_consequence(((1, 2), (2, 3), (1, 2)), None, engine)
    # zero sub-block after a degree-2 commutation
    assert is_consequence(((1, 3), (2, 1), (4, 5)), None, engine)
    # reordering three disjoint factors is derivable from pair commutations
    assert is_consequence(((1, 2), (3, 4), (5, 6)),
                          ((5, 6), (3, 4), (1, 2)), engine)
    # a minimal degree-2 commutation is not a consequence of anything lower
    assert not is_consequence(((1, 2), (3, 4)), ((3, 4), (1, 2)), engine)


def test_support_bound_lemmas(engine):
    report = verify_support_bound_lemmas(3, engine)
    assert sorted(report["supports"]) == [5, 6]
    for m, sub in report["supports"].items():
        assert sub["non_consequences"] == []
        assert sub["zero_words_checked"] > 0
        assert sub["zero_with_zero_prefix"] > 0


def test_db4_fixture_stats(db4):
    assert db4.stats["d4m4"]["minimal_pairs"] == 8
    assert db4.stats["d4m5"]["minimal_zero_words"] == 10
    assert db4.stats["d3m3"]["minimal_zero_orbits"] == 1
