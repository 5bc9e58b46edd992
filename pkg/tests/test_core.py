import pytest
from hypothesis import given, strategies as st

from personindex.core import (
    AlgorithmOutput,
    AmbiguityEntry,
    GroundTruth,
    MentionRelation,
    Person,
    ShortText,
    ValidationError,
    person_subsumes,
    persons_equal,
)

names = st.one_of(st.none(), st.sampled_from(["John", "Kennedy", "Fitzgerald", "Ann"]))
persons = st.tuples(names, names, names).filter(any).map(lambda t: Person(*t))


def test_persons_equal_examples():
    assert persons_equal(Person("John", None, "Kennedy"), Person("John", None, "Kennedy"))
    assert not persons_equal(Person("Robert", None, "Baker"), Person("Susan", "Lea", "Baker"))
    assert not persons_equal(Person("John", None, "Kennedy"),
                             Person("John", "Fitzgerald", "Kennedy"))


def test_persons_equal_is_case_sensitive():
    assert not persons_equal(Person(None, None, "Baker"), Person(None, None, "baker"))


def test_person_subsumes_examples():
    assert person_subsumes(Person("John", None, "Kennedy"), Person(None, None, "Kennedy"))
    assert not person_subsumes(Person("John", None, "Kennedy"), Person("John", None, "Kennedy"))
    assert not person_subsumes(Person("Susan", "Lea", "Baker"), Person(None, None, "Thompson"))


@pytest.mark.parametrize("fields", [(None, None, None), ("", None, "X"), (" John", None, None)])
def test_invalid_persons(fields):
    with pytest.raises(ValidationError):
        Person(*fields)


@given(persons, persons, persons)
def test_persons_equal_is_an_equivalence(a, b, c):
    assert persons_equal(a, a)
    assert persons_equal(a, b) == persons_equal(b, a)
    if persons_equal(a, b) and persons_equal(b, c):
        assert persons_equal(a, c)


@given(persons, persons)
def test_subsumption_is_strict(a, b):
    assert not person_subsumes(a, a)
    if person_subsumes(a, b):
        assert not person_subsumes(b, a)
        assert not persons_equal(a, b)


def test_ambiguity_entry_needs_two_persons():
    with pytest.raises(ValidationError):
        AmbiguityEntry(0, "Baker", {1})


def test_worked_example_is_valid(worked_example):
    assert len(worked_example.texts) == 3
    assert len(worked_example.relations) == 5
    assert worked_example.ambiguities[0].flatten() == [(1, "Baker", 1), (1, "Baker", 4)]


def test_ground_truth_rejects_reason_not_in_text():
    with pytest.raises(ValidationError, match="does not occur"):
        GroundTruth([ShortText(0, "Baker")], [(0, Person(None, None, "Baker")),
                                              (1, Person("Ann", None, "Baker"))],
                    set(), [AmbiguityEntry(0, "Smith", {0, 1})])


def test_ground_truth_rejects_pair_in_both_r_and_a():
    index = [(0, Person(None, None, "Baker")), (1, Person("Ann", None, "Baker"))]
    with pytest.raises(ValidationError, match="both"):
        GroundTruth([ShortText(0, "Baker")], index, {MentionRelation(0, 0)},
                    [AmbiguityEntry(0, "Baker", {0, 1})])


def test_ground_truth_requires_coverage():
    index = [(0, Person(None, None, "Baker")), (1, Person("Ann", None, "Lee"))]
    with pytest.raises(ValidationError, match="never mentioned"):
        GroundTruth([ShortText(0, "Baker")], index, {MentionRelation(0, 0)}, [])


def test_ground_truth_rejects_unknown_references():
    index = [(0, Person(None, None, "Baker"))]
    with pytest.raises(ValidationError):
        GroundTruth([ShortText(0, "Baker")], index, {MentionRelation(5, 0)}, [])
    with pytest.raises(ValidationError):
        AlgorithmOutput(index, {MentionRelation(0, 9)}, [])


def test_duplicate_ids_rejected():
    with pytest.raises(ValidationError):
        AlgorithmOutput([(0, Person(None, None, "A" + "b")), (0, Person(None, None, "Cd"))])
    with pytest.raises(ValidationError):
        GroundTruth([ShortText(0, "x"), ShortText(0, "y")])
