"""Domain types for person indexes and the name comparison primitives."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

NAME_FIELDS = ("first_name", "middle_name", "last_name")


class ValidationError(ValueError):
    """Raised when a record bundle breaks a structural invariant."""


@dataclass(frozen=True)
class Person:
    first_name: Optional[str] = None
    middle_name: Optional[str] = None
    last_name: Optional[str] = None

    def __post_init__(self):
        names = self.names()
        if all(n is None for n in names):
            raise ValidationError("a person needs at least one name")
        for n in names:
            if n is None:
                continue
            if not isinstance(n, str) or not n or n != n.strip():
                raise ValidationError(f"invalid name field {n!r}")

    def names(self) -> Tuple[Optional[str], Optional[str], Optional[str]]:
        return (self.first_name, self.middle_name, self.last_name)

    def present_count(self) -> int:
        return sum(n is not None for n in self.names())

    def __str__(self):
        return " ".join("∅" if n is None else n for n in self.names())


@dataclass(frozen=True)
class ShortText:
    id: int
    content: str

    def __post_init__(self):
        if not isinstance(self.id, int) or self.id < 0:
            raise ValidationError(f"text id must be a non-negative int, got {self.id!r}")
        if not self.content:
            raise ValidationError(f"text {self.id} has empty content")


@dataclass(frozen=True, order=True)
class MentionRelation:
    text_id: int
    person_id: int


@dataclass(frozen=True)
class AmbiguityEntry:
    text_id: int
    reason: str
    person_ids: frozenset

    def __post_init__(self):
        object.__setattr__(self, "person_ids", frozenset(self.person_ids))
        if len(self.person_ids) < 2:
            raise ValidationError(
                f"ambiguity entry for text {self.text_id} needs >= 2 persons")
        if not self.reason:
            raise ValidationError(f"ambiguity entry for text {self.text_id} has no reason")

    def flatten(self):
        return [(self.text_id, self.reason, pid) for pid in sorted(self.person_ids)]


def persons_equal(a: Person, b: Person) -> bool:
    """All three name fields identical; an absent name equals only an absent name."""
    return a.names() == b.names()


def person_subsumes(fuller: Person, partial: Person) -> bool:
    """True when `fuller` agrees with every name `partial` has and carries more names."""
    for f, p in zip(fuller.names(), partial.names()):
        if p is not None and f != p:
            return False
    return fuller.present_count() > partial.present_count()


def _check_index(index) -> dict:
    by_id = {}
    for pid, person in index:
        if pid in by_id:
            raise ValidationError(f"duplicate person id {pid}")
        if not isinstance(person, Person):
            raise ValidationError(f"index entry {pid} is not a Person")
        by_id[pid] = person
    return by_id


def _check_links(by_id, relations, ambiguities, text_ids=None):
    for rel in relations:
        if rel.person_id not in by_id:
            raise ValidationError(f"relation {rel} references unknown person")
        if text_ids is not None and rel.text_id not in text_ids:
            raise ValidationError(f"relation {rel} references unknown text")
    for amb in ambiguities:
        missing = [p for p in amb.person_ids if p not in by_id]
        if missing:
            raise ValidationError(f"ambiguity {amb} references unknown persons {missing}")
        if text_ids is not None and amb.text_id not in text_ids:
            raise ValidationError(f"ambiguity {amb} references unknown text")


@dataclass(frozen=True)
class AlgorithmOutput:
    """What an extractor hands to the evaluator: index, relations, ambiguity list.

    Only referential integrity is checked here. Outputs of arbitrary extractors
    must stay scoreable, so coverage and R/A disjointness are not enforced.
    """

    index: Tuple[Tuple[int, Person], ...] = ()
    relations: frozenset = frozenset()
    ambiguities: Tuple[AmbiguityEntry, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "index", tuple((pid, p) for pid, p in self.index))
        object.__setattr__(self, "relations", frozenset(self.relations))
        object.__setattr__(self, "ambiguities", tuple(self.ambiguities))
        _check_links(_check_index(self.index), self.relations, self.ambiguities)

    def persons(self) -> dict:
        return dict(self.index)

    def text_ids(self) -> set:
        ids = {r.text_id for r in self.relations}
        ids.update(a.text_id for a in self.ambiguities)
        return ids


@dataclass(frozen=True)
class GroundTruth:
    texts: Tuple[ShortText, ...] = ()
    index: Tuple[Tuple[int, Person], ...] = ()
    relations: frozenset = frozenset()
    ambiguities: Tuple[AmbiguityEntry, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "texts", tuple(self.texts))
        object.__setattr__(self, "index", tuple((pid, p) for pid, p in self.index))
        object.__setattr__(self, "relations", frozenset(self.relations))
        object.__setattr__(self, "ambiguities", tuple(self.ambiguities))
        self.validate()

    def validate(self):
        contents = {}
        for t in self.texts:
            if t.id in contents:
                raise ValidationError(f"duplicate text id {t.id}")
            contents[t.id] = t.content
        by_id = _check_index(self.index)
        _check_links(by_id, self.relations, self.ambiguities, set(contents))
        for amb in self.ambiguities:
            if amb.reason not in contents[amb.text_id]:
                raise ValidationError(
                    f"reason {amb.reason!r} does not occur in text {amb.text_id}")
        related = {(r.text_id, r.person_id) for r in self.relations}
        expanded = {(a.text_id, p) for a in self.ambiguities for p in a.person_ids}
        both = related & expanded
        if both:
            raise ValidationError(f"pairs in both relations and ambiguities: {sorted(both)}")
        mentioned = {p for _, p in related | expanded}
        unmentioned = sorted(set(by_id) - mentioned)
        if unmentioned:
            raise ValidationError(f"persons never mentioned: {unmentioned}")

    def persons(self) -> dict:
        return dict(self.index)

    def as_output(self) -> AlgorithmOutput:
        return AlgorithmOutput(self.index, self.relations, self.ambiguities)


def flatten_ambiguities(entries: Iterable[AmbiguityEntry]) -> set:
    return {triple for entry in entries for triple in entry.flatten()}
