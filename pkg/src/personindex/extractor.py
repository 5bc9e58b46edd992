"""Unsupervised baseline that builds a person index from short texts.

Pipeline: tokenize, detect name spans, assign name roles, filter improper
names, optionally swap first/last via a first-name gazetteer, consolidate the
index, then link tokens of every text back to index persons.
"""
from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .core import (
    AlgorithmOutput,
    AmbiguityEntry,
    MentionRelation,
    Person,
    ShortText,
    person_subsumes,
)

CONFIDENCE_THRESHOLD = 0.5
MAX_SPAN_TOKENS = 3

_PROPER_NAME = re.compile(r"[A-Z][a-z]+")
_INITIAL = re.compile(r"[A-Za-z]\.")
WRAPPER_CHARS = "[](){}\"'<>"
EDGE_PUNCTUATION = ".-"
SEPARATORS = ",;"


def is_proper_name(token: str) -> bool:
    return _PROPER_NAME.fullmatch(token) is not None


def _split_edges(piece: str) -> List[str]:
    lead, trail = [], []
    while piece and piece[0] in WRAPPER_CHARS + EDGE_PUNCTUATION:
        if piece[0] in EDGE_PUNCTUATION:
            lead.append(piece[0])
        piece = piece[1:]
    while piece and piece[-1] in WRAPPER_CHARS + EDGE_PUNCTUATION:
        if _INITIAL.fullmatch(piece):
            break
        if piece[-1] in EDGE_PUNCTUATION:
            trail.append(piece[-1])
        piece = piece[:-1]
    return lead + ([piece] if piece else []) + trail[::-1]


def tokenize(content: str) -> List[str]:
    """Split a short text into name candidates and punctuation tokens.

    Whitespace separates chunks; ',' and ';' are always tokens of their own.
    Wrapper characters are dropped at chunk edges, and '.'/'-' at chunk edges
    become separate tokens unless the chunk is an initial like "J.".
    """
    tokens = []
    for chunk in content.split():
        for piece in re.split(r"([,;])", chunk):
            if not piece:
                continue
            if piece in SEPARATORS:
                tokens.append(piece)
            else:
                tokens.extend(_split_edges(piece))
    return tokens


@dataclass(frozen=True)
class DetectionSpan:
    text_id: int
    token_range: Tuple[int, int]  # half-open [start, end)
    tokens: Tuple[str, ...]
    confidence: float

    def __post_init__(self):
        if not 1 <= len(self.tokens) <= MAX_SPAN_TOKENS:
            raise ValueError(f"span must have 1-{MAX_SPAN_TOKENS} tokens: {self.tokens}")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence out of range: {self.confidence}")


@dataclass(frozen=True)
class ExtractorConfig:
    reset_state_per_text: bool = False
    confidence_threshold_enabled: bool = False
    gazetteer: Optional[frozenset] = None

    def __post_init__(self):
        if self.gazetteer is not None:
            object.__setattr__(self, "gazetteer", frozenset(self.gazetteer))


def span_confidence(tokens: Sequence[str], gazetteer=None) -> float:
    t = len(tokens)
    s = sum(is_proper_name(tok) for tok in tokens)
    g = 1 if gazetteer and any(tok in gazetteer for tok in tokens) else 0
    return (g + s) / (t + 1)


class HeuristicDetector:
    """Capitalization-based person-name detector.

    Any detector used by `extract` needs `reset()` and `detect(tokens, text_id)`
    and must report confidences in [0, 1]. This one keeps no state, so `reset`
    does nothing.
    """

    def __init__(self, gazetteer=None):
        self.gazetteer = gazetteer

    def reset(self):
        pass

    def detect(self, tokens: Sequence[str], text_id: int = 0) -> List[DetectionSpan]:
        spans = []
        i = 0
        while i < len(tokens):
            if not is_proper_name(tokens[i]):
                i += 1
                continue
            j = i
            while j < len(tokens) and is_proper_name(tokens[j]):
                j += 1
            for start in range(i, j, MAX_SPAN_TOKENS):
                end = min(start + MAX_SPAN_TOKENS, j)
                run = tuple(tokens[start:end])
                spans.append(DetectionSpan(text_id, (start, end), run,
                                           span_confidence(run, self.gazetteer)))
            i = j
        return spans


def detect_name_spans(tokens: Sequence[str], config: ExtractorConfig,
                      text_id: int = 0, detector=None) -> List[DetectionSpan]:
    if detector is None:
        detector = HeuristicDetector(config.gazetteer)
    spans = detector.detect(tokens, text_id)
    if config.confidence_threshold_enabled:
        spans = [s for s in spans if s.confidence >= CONFIDENCE_THRESHOLD]
    return spans


def assign_name_roles(span: DetectionSpan) -> Person:
    toks = span.tokens
    if len(toks) == 1:
        return Person(None, None, toks[0])
    if len(toks) == 2:
        return Person(toks[1], None, toks[0])
    return Person(toks[0], toks[1], toks[2])


def gazetteer_swap(person: Person, gazetteer) -> Person:
    """Swap first and last name when only the assumed last name is a known first name."""
    last_known = person.last_name is not None and person.last_name in gazetteer
    first_known = person.first_name is not None and person.first_name in gazetteer
    if last_known and not first_known:
        return Person(person.last_name, person.middle_name, person.first_name)
    return person


def _all_names_proper(person: Person) -> bool:
    return all(n is None or is_proper_name(n) for n in person.names())


def consolidate_index(candidates: Iterable[Person]) -> List[Tuple[int, Person]]:
    # keyed on names(): the same test as persons_equal, in first-occurrence order
    first_seen = {}
    for cand in candidates:
        first_seen.setdefault(cand.names(), cand)
    unique = list(first_seen.values())
    # any subsumer shares the partial's first present name in the same field
    by_field = defaultdict(list)
    for p in unique:
        for field, name in enumerate(p.names()):
            if name is not None:
                by_field[field, name].append(p)

    def subsumer_count(p):
        field, name = next((f, n) for f, n in enumerate(p.names()) if n is not None)
        return sum(person_subsumes(other, p) for other in by_field[field, name])

    return list(enumerate(p for p in unique if subsumer_count(p) != 1))


def link_mentions(texts: Sequence[ShortText], index):
    """Relate every text to the index persons whose first or last name is one of its tokens."""
    by_name = defaultdict(set)
    for pid, p in index:
        for name in (p.first_name, p.last_name):
            if name is not None:
                by_name[name].add(pid)
    relations = set()
    ambiguities: List[AmbiguityEntry] = []
    seen = set()
    for text in sorted(texts, key=lambda t: t.id):
        for token in tokenize(text.content):
            matched = frozenset(by_name.get(token, ()))
            if len(matched) == 1:
                relations.add(MentionRelation(text.id, next(iter(matched))))
            elif len(matched) > 1:
                key = (text.id, token, matched)
                if key not in seen:
                    seen.add(key)
                    ambiguities.append(AmbiguityEntry(text.id, token, matched))
    return relations, ambiguities


def extract(texts: Sequence[ShortText], config: Optional[ExtractorConfig] = None,
            detector=None) -> AlgorithmOutput:
    config = config or ExtractorConfig()
    if detector is None:
        detector = HeuristicDetector(config.gazetteer)
    texts = sorted(texts, key=lambda t: t.id)

    candidates = []
    for text in texts:
        if config.reset_state_per_text:
            detector.reset()
        tokens = tokenize(text.content)
        for span in detect_name_spans(tokens, config, text.id, detector):
            person = assign_name_roles(span)
            if not _all_names_proper(person):
                continue
            if config.gazetteer is not None:
                person = gazetteer_swap(person, config.gazetteer)
            candidates.append(person)

    index = consolidate_index(candidates)
    relations, ambiguities = link_mentions(texts, index)
    return AlgorithmOutput(index, relations, ambiguities)
