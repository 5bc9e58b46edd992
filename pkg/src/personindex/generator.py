"""Synthetic ground truth: a person index, messy short texts and the R/A records.

All randomness flows through one ``random.Random`` (MT19937) seeded from the
config, and only through ``random()``, ``randrange``/``randint``, ``choice``,
``sample`` and ``shuffle``, whose outputs are stable for integer seeds.
"""
from __future__ import annotations

import random
import string
from dataclasses import dataclass
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

from .core import (
    AmbiguityEntry,
    GroundTruth,
    MentionRelation,
    Person,
    ShortText,
)
from .extractor import is_proper_name

FN, MN, LN = "FN", "MN", "LN"
FIELD_ATTR = {FN: "first_name", MN: "middle_name", LN: "last_name"}

# Table of fully-mentioned names per pattern.
PATTERN_NAMES: Dict[int, frozenset] = {
    1: frozenset({FN}),
    2: frozenset({LN}),
    3: frozenset({FN, LN}),
    4: frozenset({FN, LN}),
    5: frozenset({FN, LN}),
    6: frozenset({LN}),
    7: frozenset({LN}),
    8: frozenset({FN, LN}),
    9: frozenset({FN, LN}),
    10: frozenset({FN, LN}),
    11: frozenset({FN, MN, LN}),
    12: frozenset({FN, LN}),
    13: frozenset({LN}),
    14: frozenset({LN}),
}
PLAIN_PATTERNS = tuple(range(1, 11))
MIDDLE_PATTERNS = tuple(range(11, 15))
FIRST_MIDDLE_PATTERN = 11

# fields each pattern reads from the person, initials included
_PATTERN_NEEDS = {
    1: {FN}, 2: {LN}, 3: {FN, LN}, 4: {FN, LN}, 5: {FN, LN}, 6: {FN, LN},
    7: {LN}, 8: {FN, LN}, 9: {FN, LN}, 10: {FN, LN},
    11: {FN, MN, LN}, 12: {FN, MN, LN}, 13: {FN, MN, LN}, 14: {FN, MN, LN},
}

NOTES = ("old", "TODO", "remember", "new")
ROLES = ("Executive", "CEO", "Chief", "Admin")
DELIMITERS = ("; ", ";", " - ")
WRAPPERS = (("[", "]"), ("{", "}"), ("(", ")"), ('"', '"'))
WRAP_PROBABILITY = 0.3


class ConfigError(ValueError):
    pass


class PatternError(ValueError):
    """A mention pattern needs a name the person does not have."""


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    num_persons: int = 1
    num_texts: int = 10
    max_mentions_per_text: int = 0
    num_middle_names: int = 0
    ambiguity_degree: int = 0
    ambiguity_group_size: Optional[int] = None

    def __post_init__(self):
        if self.ambiguity_group_size is None:
            object.__setattr__(self, "ambiguity_group_size", max(2, self.ambiguity_degree))
        for name in ("seed", "max_mentions_per_text", "num_middle_names", "ambiguity_degree"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be >= 0")
        if self.num_persons < 1:
            raise ConfigError("num_persons must be >= 1")
        if self.num_texts < 1:
            raise ConfigError("num_texts must be >= 1")
        if self.ambiguity_group_size < 2:
            raise ConfigError("ambiguity_group_size must be >= 2")
        if self.num_middle_names > self.num_persons:
            raise ConfigError("num_middle_names exceeds num_persons")
        if self.ambiguous_persons > self.num_persons:
            raise ConfigError(
                f"2 x ambiguity_degree x group size = {self.ambiguous_persons} "
                f"exceeds num_persons = {self.num_persons}")

    @property
    def ambiguous_persons(self) -> int:
        return 2 * self.ambiguity_degree * self.ambiguity_group_size

    @property
    def mention_cap(self) -> int:
        return max(1, self.max_mentions_per_text)


@dataclass(frozen=True)
class NameCatalogs:
    first_names: Tuple[str, ...]
    last_names: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "first_names", tuple(self.first_names))
        object.__setattr__(self, "last_names", tuple(self.last_names))
        for label, names in (("first-name", self.first_names), ("last-name", self.last_names)):
            if not names:
                raise ConfigError(f"{label} catalog is empty")
            if len(set(names)) != len(names):
                raise ConfigError(f"{label} catalog has duplicate entries")
            bad = [n for n in names if not is_proper_name(n)]
            if bad:
                raise ConfigError(f"{label} catalog has improper names: {bad[:5]}")

    @classmethod
    def from_files(cls, first_path, last_path) -> "NameCatalogs":
        return cls(read_name_list(first_path), read_name_list(last_path))

    @classmethod
    def default(cls) -> "NameCatalogs":
        data = resources.files("personindex") / "data"
        return cls(
            _split_names(data.joinpath("first_names.txt").read_text(encoding="utf-8")),
            _split_names(data.joinpath("last_names.txt").read_text(encoding="utf-8")),
        )


def _split_names(text: str) -> Tuple[str, ...]:
    return tuple(line.strip() for line in text.splitlines() if line.strip())


def read_name_list(path) -> Tuple[str, ...]:
    with open(path, encoding="utf-8") as fh:
        return _split_names(fh.read())


@dataclass(frozen=True)
class MentionPlan:
    person_id: Optional[int]
    pattern_id: int
    rendered: str
    fully_mentioned: frozenset
    # (field, start, end) offsets of fully-mentioned names inside `rendered`
    spans: Tuple[Tuple[str, int, int], ...] = ()

    @property
    def reason(self) -> str:
        start = min(s for _, s, _ in self.spans)
        end = max(e for _, _, e in self.spans)
        return self.rendered[start:end]


@dataclass(frozen=True)
class Unambiguous:
    person_id: int


@dataclass(frozen=True)
class Ambiguous:
    reason: str
    person_ids: frozenset


# -- lexical helpers ---------------------------------------------------------

def letter(name: str) -> str:
    return name[0]


def lc(name: str) -> str:
    return name.lower()


def department(rng: random.Random) -> str:
    segments = []
    for _ in range(rng.randint(2, 5)):
        segments.append("".join(rng.choice(string.ascii_uppercase)
                                for _ in range(rng.randint(1, 2))))
    return "-".join(segments)


def rnd(n: int, rng: random.Random) -> str:
    return "".join(rng.choice(string.ascii_lowercase) for _ in range(n))


def note(rng: random.Random) -> str:
    return rng.choice(NOTES)


def role(rng: random.Random) -> str:
    return rng.choice(ROLES)


def lexical_helper(kind: str, arg=None, rng: Optional[random.Random] = None) -> str:
    """Dispatch to one of the pattern helpers by name."""
    if kind in ("letter", "lc"):
        if not isinstance(arg, str) or not arg:
            raise ValueError(f"{kind}() needs a name argument")
        return letter(arg) if kind == "letter" else lc(arg)
    if rng is None:
        raise ValueError(f"{kind}() needs a random source")
    if kind == "rnd":
        if not isinstance(arg, int) or arg < 0:
            raise ValueError("rnd() needs a non-negative length")
        return rnd(arg, rng)
    helpers = {"department": department, "note": note, "role": role}
    if kind not in helpers:
        raise ValueError(f"unknown helper {kind!r}")
    return helpers[kind](rng)


# -- mentions ----------------------------------------------------------------

def _pattern_pieces(p: Person, pattern_id: int, rng: random.Random):
    fn, mn, ln = p.first_name, p.middle_name, p.last_name
    F, M, L = (fn, FN), (mn, MN), (ln, LN)
    if pattern_id == 1:
        return [F]
    if pattern_id == 2:
        return [L]
    if pattern_id == 3:
        return [F, " ", L]
    if pattern_id == 4:
        return [L, " ", F]
    if pattern_id == 5:
        return [L, ", ", F]
    if pattern_id == 6:
        return [L, ", ", letter(fn), "."]
    if pattern_id == 7:
        return [L, " ", department(rng)]
    if pattern_id == 8:
        return [department(rng), "\n", L, " ", F]
    if pattern_id == 9:
        return [L, " ", F, " <", lc(ln), "@", rnd(5, rng), ".", rnd(2, rng), ">"]
    if pattern_id == 10:
        return [note(rng), " ", role(rng), " ", L, " ", F]
    if pattern_id == 11:
        return [F, " ", M, " ", L]
    if pattern_id == 12:
        return [F, " ", letter(mn), ". ", L]
    if pattern_id == 13:
        return [letter(fn), ". ", letter(mn), ". ", L]
    if pattern_id == 14:
        return [L, ", ", letter(fn), ". ", letter(mn), "."]
    raise PatternError(f"unknown pattern {pattern_id}")


def render_mention(person: Person, pattern_id: int, rng: random.Random,
                   person_id: Optional[int] = None) -> MentionPlan:
    if pattern_id not in PATTERN_NAMES:
        raise PatternError(f"unknown pattern {pattern_id}")
    missing = [f for f in sorted(_PATTERN_NEEDS[pattern_id])
               if getattr(person, FIELD_ATTR[f]) is None]
    if missing:
        raise PatternError(f"pattern {pattern_id} needs {missing} for {person}")

    out, spans, pos = [], [], 0
    for piece in _pattern_pieces(person, pattern_id, rng):
        if isinstance(piece, tuple):
            piece, name_field = piece
            spans.append((name_field, pos, pos + len(piece)))
        out.append(piece)
        pos += len(piece)
    return MentionPlan(person_id, pattern_id, "".join(out),
                       PATTERN_NAMES[pattern_id], tuple(spans))


def classify_mention(plan: MentionPlan, index):
    """Resolve a mention to its person, or to the set of persons it cannot tell apart."""
    persons = index if isinstance(index, dict) else dict(index)
    target = persons[plan.person_id]
    candidates = frozenset(
        pid for pid, p in persons.items()
        if all(getattr(p, FIELD_ATTR[f]) == getattr(target, FIELD_ATTR[f])
               for f in plan.fully_mentioned)
    )
    if not candidates:
        raise RuntimeError(f"mention {plan.rendered!r} matches no person")
    if len(candidates) == 1:
        return Unambiguous(next(iter(candidates)))
    return Ambiguous(plan.reason, candidates)


def compose_text(plans: Sequence[MentionPlan], rng: random.Random,
                 p_wrap: float = WRAP_PROBABILITY, delimiter: Optional[str] = None,
                 wrappers: Optional[Sequence] = None) -> str:
    """Join rendered mentions into one short text.

    `delimiter` and `wrappers` (one wrapper pair or None per plan) bypass the
    random draws when given.
    """
    if not plans:
        raise ValueError("compose_text needs at least one mention")
    if len(plans) > 1 and delimiter is None:
        delimiter = rng.choice(DELIMITERS)
    parts = []
    for i, plan in enumerate(plans):
        if wrappers is not None:
            wrap = wrappers[i]
        else:
            wrap = rng.choice(WRAPPERS) if rng.random() < p_wrap else None
        parts.append(plan.rendered if wrap is None else wrap[0] + plan.rendered + wrap[1])
    return parts[0] if len(parts) == 1 else delimiter.join(parts)


# -- index and corpus --------------------------------------------------------

def build_person_index(config: GeneratorConfig, catalogs: NameCatalogs,
                       rng: random.Random) -> List[Tuple[int, Person]]:
    n, g = config.ambiguity_degree, config.ambiguity_group_size
    rest = config.num_persons - config.ambiguous_persons
    used = set()

    def take(pool, k, label):
        avail = [name for name in pool if name not in used]
        if len(avail) < k:
            raise ConfigError(
                f"{label} catalog exhausted: need {k} more unused names, {len(avail)} left")
        picked = rng.sample(avail, k)
        used.update(picked)
        return picked

    shared_last = take(catalogs.last_names, n, "last-name")
    shared_first = take(catalogs.first_names, n, "first-name")
    group_firsts = take(catalogs.first_names, n * g, "first-name")
    group_lasts = take(catalogs.last_names, n * g, "last-name")
    rest_firsts = take(catalogs.first_names, rest, "first-name")
    rest_lasts = take(catalogs.last_names, rest, "last-name")

    names = []
    for i in range(n):
        names += [(group_firsts[i * g + j], shared_last[i]) for j in range(g)]
    for i in range(n):
        names += [(shared_first[i], group_lasts[i * g + j]) for j in range(g)]
    names += list(zip(rest_firsts, rest_lasts))

    with_middle = set(rng.sample(range(len(names)), config.num_middle_names))
    middles = iter(take(catalogs.first_names, config.num_middle_names, "first-name"))
    index = []
    for pid, (first, last) in enumerate(names):
        middle = next(middles) if pid in with_middle else None
        index.append((pid, Person(first, middle, last)))
    return index


def ambiguity_classes(index) -> Dict[int, tuple]:
    """Map each person id to its ambiguity group key (or a singleton key)."""
    persons = dict(index)
    last_count: Dict[str, int] = {}
    first_count: Dict[str, int] = {}
    for p in persons.values():
        last_count[p.last_name] = last_count.get(p.last_name, 0) + 1
        first_count[p.first_name] = first_count.get(p.first_name, 0) + 1
    classes = {}
    for pid, p in persons.items():
        if last_count[p.last_name] > 1:
            classes[pid] = (LN, p.last_name)
        elif first_count[p.first_name] > 1:
            classes[pid] = (FN, p.first_name)
        else:
            classes[pid] = ("solo", pid)
    return classes


@dataclass(frozen=True)
class GenerationTrace:
    ground_truth: GroundTruth
    # mentions[i] are the plans composed into text i, in text order
    mentions: Tuple[Tuple[MentionPlan, ...], ...]


def _schedule(config: GeneratorConfig, classes: Dict[int, tuple], rng: random.Random):
    """Assign persons to texts; at most one member of an ambiguity group per text."""
    num_classes = len(set(classes.values()))
    cap = min(config.mention_cap, num_classes)
    pids = sorted(classes)
    if config.num_texts * cap < len(pids):
        raise ConfigError(
            f"{config.num_texts} texts with at most {cap} persons each cannot "
            f"mention all {len(pids)} persons")
    if config.ambiguity_degree and config.num_texts < config.ambiguity_group_size:
        raise ConfigError("num_texts is smaller than the ambiguity group size")

    if config.max_mentions_per_text <= 1:
        counts = [1] * config.num_texts
    else:
        counts = [min(rng.randint(1, config.max_mentions_per_text), cap)
                  for _ in range(config.num_texts)]

    slots: List[List[int]] = [[] for _ in range(config.num_texts)]
    taken: List[set] = [set() for _ in range(config.num_texts)]

    order = list(pids)
    rng.shuffle(order)
    # grouped persons first: they are the constrained ones
    order.sort(key=lambda pid: classes[pid][0] == "solo")
    for pid in order:
        eligible = [t for t in range(config.num_texts)
                    if len(slots[t]) < cap and classes[pid] not in taken[t]]
        if not eligible:
            raise ConfigError(f"cannot place a first mention of person {pid}")
        t = rng.choice(eligible)
        slots[t].append(pid)
        taken[t].add(classes[pid])

    for t in range(config.num_texts):
        target = max(counts[t], len(slots[t]))
        while len(slots[t]) < target:
            pid = rng.choice([p for p in pids if classes[p] not in taken[t]])
            slots[t].append(pid)
            taken[t].add(classes[pid])
        rng.shuffle(slots[t])
    return slots


def generate_trace(config: GeneratorConfig, catalogs: NameCatalogs) -> GenerationTrace:
    rng = random.Random(config.seed)
    index = build_person_index(config, catalogs, rng)
    persons = dict(index)
    slots = _schedule(config, ambiguity_classes(index), rng)

    pools: Dict[int, list] = {}
    resolved = {}  # (person, fully mentioned fields) -> classification
    texts, mentions = [], []
    relations, ambiguities = set(), []
    for text_id, pids in enumerate(slots):
        plans = []
        for pid in pids:
            person = persons[pid]
            legal = MIDDLE_PATTERNS if person.middle_name else PLAIN_PATTERNS
            if pid not in pools and person.middle_name:
                pattern_id = FIRST_MIDDLE_PATTERN
                pools[pid] = [p for p in legal if p != FIRST_MIDDLE_PATTERN]
            else:
                pool = pools.get(pid)
                if not pool:
                    pool = pools[pid] = list(legal)
                pattern_id = pool.pop(rng.randrange(len(pool)))
            plans.append(render_mention(person, pattern_id, rng, person_id=pid))

        if config.max_mentions_per_text == 0:
            content = plans[0].rendered
        else:
            content = compose_text(plans, rng)
        texts.append(ShortText(text_id, content))
        mentions.append(tuple(plans))

        for plan in plans:
            key = (plan.person_id, plan.fully_mentioned)
            if key not in resolved:
                resolved[key] = classify_mention(plan, persons)
            result = resolved[key]
            if isinstance(result, Unambiguous):
                relations.add(MentionRelation(text_id, result.person_id))
            else:
                ambiguities.append(AmbiguityEntry(text_id, plan.reason, result.person_ids))

    gt = GroundTruth(texts, index, relations, ambiguities)
    return GenerationTrace(gt, tuple(mentions))


def generate(config: GeneratorConfig, catalogs: NameCatalogs) -> GroundTruth:
    return generate_trace(config, catalogs).ground_truth
