"""CSV files for texts, person index, relations and ambiguity lists."""
from __future__ import annotations

import csv
import os
from typing import List

from .core import (
    AlgorithmOutput,
    AmbiguityEntry,
    GroundTruth,
    MentionRelation,
    Person,
    ShortText,
    ValidationError,
)

TEXTS_FILE = "texts.csv"
PERSONS_FILE = "persons.csv"
RELATIONS_FILE = "relations.csv"
AMBIGUITIES_FILE = "ambiguities.csv"

TEXTS_HEADER = ["text_id", "text"]
PERSONS_HEADER = ["person_id", "first_name", "middle_name", "last_name"]
RELATIONS_HEADER = ["text_id", "person_id"]
AMBIGUITIES_HEADER = ["text_id", "reason", "person_ids"]
ID_SEPARATOR = "|"


class CsvFormatError(ValidationError):
    def __init__(self, path, line, message):
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line


def _write(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
        writer.writerow(header)
        writer.writerows(rows)


def _read(path, header) -> List[tuple]:
    """Rows as (line_number, fields), header checked and stripped."""
    rows = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, strict=True)
        try:
            first = next(reader, None)
            if first != header:
                raise CsvFormatError(path, 1, f"expected header {header}, got {first}")
            line = reader.line_num + 1
            for fields in reader:
                if len(fields) != len(header):
                    raise CsvFormatError(path, line,
                                         f"expected {len(header)} fields, got {len(fields)}")
                rows.append((line, fields))
                line = reader.line_num + 1
        except csv.Error as exc:
            raise CsvFormatError(path, reader.line_num, str(exc)) from exc
    return rows


def _int(path, line, value):
    try:
        number = int(value)
    except ValueError:
        raise CsvFormatError(path, line, f"not an integer id: {value!r}") from None
    if number < 0:
        raise CsvFormatError(path, line, f"negative id: {number}")
    return number


def _opt(value):
    return value if value != "" else None


def write_texts(texts, path):
    _write(path, TEXTS_HEADER, [(t.id, t.content) for t in texts])


def read_texts(path) -> List[ShortText]:
    out = []
    for line, (tid, content) in _read(path, TEXTS_HEADER):
        try:
            out.append(ShortText(_int(path, line, tid), content))
        except ValidationError as exc:
            if isinstance(exc, CsvFormatError):
                raise
            raise CsvFormatError(path, line, str(exc)) from None
    return out


def write_persons(index, path):
    _write(path, PERSONS_HEADER,
           [(pid, p.first_name or "", p.middle_name or "", p.last_name or "")
            for pid, p in index])


def read_persons(path):
    out = []
    for line, (pid, first, middle, last) in _read(path, PERSONS_HEADER):
        try:
            person = Person(_opt(first), _opt(middle), _opt(last))
        except ValidationError as exc:
            raise CsvFormatError(path, line, str(exc)) from None
        out.append((_int(path, line, pid), person))
    return out


def write_relations(relations, path):
    _write(path, RELATIONS_HEADER, [(r.text_id, r.person_id) for r in sorted(relations)])


def read_relations(path):
    return {MentionRelation(_int(path, line, tid), _int(path, line, pid))
            for line, (tid, pid) in _read(path, RELATIONS_HEADER)}


def write_ambiguities(ambiguities, path):
    _write(path, AMBIGUITIES_HEADER,
           [(a.text_id, a.reason, ID_SEPARATOR.join(str(p) for p in sorted(a.person_ids)))
            for a in ambiguities])


def read_ambiguities(path):
    out = []
    for line, (tid, reason, ids) in _read(path, AMBIGUITIES_HEADER):
        pids = [_int(path, line, p) for p in ids.split(ID_SEPARATOR)]
        try:
            out.append(AmbiguityEntry(_int(path, line, tid), reason, frozenset(pids)))
        except ValidationError as exc:
            raise CsvFormatError(path, line, str(exc)) from None
    return out


def write_output(out: AlgorithmOutput, directory):
    os.makedirs(directory, exist_ok=True)
    write_persons(out.index, os.path.join(directory, PERSONS_FILE))
    write_relations(out.relations, os.path.join(directory, RELATIONS_FILE))
    write_ambiguities(out.ambiguities, os.path.join(directory, AMBIGUITIES_FILE))


def write_ground_truth(gt: GroundTruth, directory):
    write_output(gt.as_output(), directory)
    write_texts(gt.texts, os.path.join(directory, TEXTS_FILE))


def read_output(directory) -> AlgorithmOutput:
    return AlgorithmOutput(
        read_persons(os.path.join(directory, PERSONS_FILE)),
        read_relations(os.path.join(directory, RELATIONS_FILE)),
        read_ambiguities(os.path.join(directory, AMBIGUITIES_FILE)),
    )


def read_ground_truth(directory) -> GroundTruth:
    return GroundTruth(
        read_texts(os.path.join(directory, TEXTS_FILE)),
        read_persons(os.path.join(directory, PERSONS_FILE)),
        read_relations(os.path.join(directory, RELATIONS_FILE)),
        read_ambiguities(os.path.join(directory, AMBIGUITIES_FILE)),
    )
