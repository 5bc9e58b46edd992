import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_force_metrics, random_instance
from personindex.core import (
    AlgorithmOutput,
    AmbiguityEntry,
    GroundTruth,
    MentionRelation,
    Person,
    ShortText,
    ValidationError,
)
from personindex.evaluator import (
    METRIC_COLUMNS,
    MetricTriple,
    ambiguity_metrics,
    evaluate,
    format_metric,
    fscore,
    index_metrics,
    match_persons,
    relation_metrics,
)


def test_fscore_examples():
    assert fscore(0.63, 0.85) == pytest.approx(0.72, abs=0.005)
    assert fscore(1.0, 1.0) == 1.0
    assert fscore(0.0, 0.0) is None
    assert fscore(None, 1.0) is None


def test_match_persons(worked_example):
    gt = worked_example.index
    assert len(match_persons(gt, gt)) == 4
    assert match_persons(gt, gt[:3]) == [(1, 1), (2, 2), (3, 3)]
    assert match_persons(gt, [(0, Person("Zed", None, None))]) == []


def test_match_persons_rejects_duplicates():
    dup = [(0, Person("Ann", None, None)), (1, Person("Ann", None, None))]
    with pytest.raises(ValidationError):
        match_persons(dup, [])


def test_index_metrics():
    one = [(0, Person("Ann", None, "Lee"))]
    assert index_metrics(one, one) == MetricTriple(1.0, 1.0, 1.0)
    m = index_metrics(one, [])
    assert m.precision is None and m.recall == 0.0 and m.fscore is None


def test_relation_metrics_hand_computed():
    gt = {MentionRelation(0, 5), MentionRelation(1, 5)}
    algo = {MentionRelation(0, 9), MentionRelation(1, 9), MentionRelation(2, 9)}
    m = relation_metrics(gt, algo, [(5, 9)])
    assert m.precision == pytest.approx(2 / 3)
    assert m.recall == 1.0
    assert m.fscore == pytest.approx(0.8)


def test_relation_metrics_without_output_relations():
    gt = {MentionRelation(0, 5)}
    m = relation_metrics(gt, set(), [(5, 9)])
    assert m.precision is None and m.recall == 0.0 and m.fscore is None
    assert format_metric(m.fscore) == "-"


def test_ambiguity_metrics(worked_example):
    a = worked_example.ambiguities
    matched = [(p, p) for p, _ in worked_example.index]
    assert ambiguity_metrics(a, a, matched) == MetricTriple(1.0, 1.0, 1.0)
    spurious = list(a) + [AmbiguityEntry(2, "Baker", {1, 4})]
    m = ambiguity_metrics(a, spurious, matched)
    assert m.recall == 1.0 and m.precision == 0.5
    empty = ambiguity_metrics([], [], matched)
    assert empty == MetricTriple(None, None, None)


def test_ambiguity_unmatched_persons_count_in_denominator():
    gt = [AmbiguityEntry(0, "Lee", {1, 2})]
    out = [AmbiguityEntry(0, "Lee", {11, 12, 99})]
    m = ambiguity_metrics(gt, out, [(1, 11), (2, 12)])
    assert m.precision == pytest.approx(2 / 3) and m.recall == 1.0


def test_evaluate_identity(worked_example):
    report = evaluate(worked_example, worked_example.as_output())
    assert set(report.values().values()) == {1.0}
    assert report.matched_person_count == 4


def test_evaluate_missing_person(worked_example):
    gt = worked_example
    out = AlgorithmOutput(gt.index[:3], {r for r in gt.relations if r.person_id != 4}, [])
    report = evaluate(gt, out)
    assert report.index_metrics.recall == 0.75
    assert report.index_metrics.precision == 1.0


def test_evaluate_empty_output(worked_example):
    report = evaluate(worked_example, AlgorithmOutput())
    assert report.index_metrics.recall == 0.0
    assert report.index_metrics.precision is None


def test_evaluate_rejects_unknown_texts(worked_example):
    out = AlgorithmOutput(worked_example.index, {MentionRelation(42, 1)}, [])
    with pytest.raises(ValidationError, match="42"):
        evaluate(worked_example, out)


def test_identity_leaves_a_undefined_without_ambiguity():
    gt = GroundTruth([ShortText(0, "Ann Lee")], [(0, Person("Ann", None, "Lee"))],
                     {MentionRelation(0, 0)}, [])
    values = evaluate(gt, gt.as_output()).values()
    assert [values[c] for c in METRIC_COLUMNS] == [1.0] * 6 + [None] * 3


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False))
def test_matches_brute_force(rng):
    gt, out = random_instance(rng)
    values = evaluate(gt, out).values()
    assert [values[c] for c in METRIC_COLUMNS] == brute_force_metrics(gt, out)


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_metric_properties(rng):
    gt, out = random_instance(rng)
    base = evaluate(gt, out)
    for v in base.values().values():
        assert v is None or 0.0 <= v <= 1.0

    shuffled_gt = GroundTruth(rng.sample(gt.texts, len(gt.texts)),
                              rng.sample(gt.index, len(gt.index)),
                              gt.relations, gt.ambiguities)
    shuffled_out = AlgorithmOutput(rng.sample(out.index, len(out.index)),
                                   out.relations, tuple(reversed(out.ambiguities)))
    assert evaluate(shuffled_gt, shuffled_out) == base

    spurious = Person("Spurious", None, "Person")
    bigger = AlgorithmOutput(out.index + ((1000, spurious),), out.relations, out.ambiguities)
    more = evaluate(gt, bigger)
    assert more.index_metrics.recall == base.index_metrics.recall
    if base.index_metrics.precision is not None:
        assert more.index_metrics.precision <= base.index_metrics.precision


def test_fixed_seed_instances_match_oracle():
    for seed in range(20):
        gt, out = random_instance(random.Random(seed))
        values = evaluate(gt, out).values()
        assert [values[c] for c in METRIC_COLUMNS] == brute_force_metrics(gt, out)
