"""Precision, recall and F-score of an extractor's output against ground truth.

Undefined values (zero denominators) are ``None`` and print as "-". Ratios
and averages are computed exactly and rounded to float once, so results do not
depend on summation order.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .core import AlgorithmOutput, GroundTruth, ValidationError

METRIC_COLUMNS = (
    "prec_P", "recall_P", "f_P",
    "prec_R", "recall_R", "f_R",
    "prec_A", "recall_A", "f_A",
)


@dataclass(frozen=True)
class MetricTriple:
    precision: Optional[float]
    recall: Optional[float]
    fscore: Optional[float]

    @classmethod
    def of(cls, precision, recall):
        f = fscore(precision, recall)
        return cls(*(None if v is None else float(v) for v in (precision, recall, f)))


@dataclass(frozen=True)
class EvaluationReport:
    index_metrics: MetricTriple
    relation_metrics: MetricTriple
    ambiguity_metrics: MetricTriple
    matched_person_count: int

    def values(self) -> Dict[str, Optional[float]]:
        out = {}
        for prefix, triple in (("P", self.index_metrics), ("R", self.relation_metrics),
                               ("A", self.ambiguity_metrics)):
            out[f"prec_{prefix}"] = triple.precision
            out[f"recall_{prefix}"] = triple.recall
            out[f"f_{prefix}"] = triple.fscore
        return out


def format_metric(value: Optional[float], digits: int = 2) -> str:
    return "-" if value is None else f"{value:.{digits}f}"


def fscore(precision: Optional[float], recall: Optional[float]) -> Optional[float]:
    if precision is None or recall is None or precision + recall == 0:
        return None
    return 2 * precision * recall / (precision + recall)


def _ratio(num: int, den: int) -> Optional[Fraction]:
    return Fraction(num, den) if den else None


def _mean(values) -> Optional[Fraction]:
    return sum(values, Fraction(0)) / len(values) if values else None


def match_persons(gt_index, algo_index) -> List[Tuple[int, int]]:
    """Pairs (gt_id, algo_id) of persons whose three names are identical."""
    gt_index, algo_index = list(gt_index), list(algo_index)
    for label, index in (("ground truth", gt_index), ("output", algo_index)):
        seen = set()
        for pid, p in index:
            if p.names() in seen:
                raise ValidationError(f"{label} index lists {p} twice")
            seen.add(p.names())
    by_names = {p.names(): pid for pid, p in algo_index}
    pairs = []
    for gt_id, p in gt_index:
        algo_id = by_names.get(p.names())
        if algo_id is not None:
            pairs.append((gt_id, algo_id))
    return pairs


def index_metrics(gt_index, algo_index, matched=None) -> MetricTriple:
    gt_index, algo_index = list(gt_index), list(algo_index)
    if matched is None:
        matched = match_persons(gt_index, algo_index)
    return MetricTriple.of(_ratio(len(matched), len(algo_index)),
                           _ratio(len(matched), len(gt_index)))


def relation_metrics(relations, algo_relations, matched) -> MetricTriple:
    """Per matched person precision/recall of text links, averaged without weights.

    Persons with an empty denominator are left out of the respective average.
    """
    to_gt = {algo_id: gt_id for gt_id, algo_id in matched}
    gt_texts: Dict[int, set] = {gt_id: set() for gt_id, _ in matched}
    algo_texts: Dict[int, set] = {gt_id: set() for gt_id, _ in matched}
    for rel in relations:
        if rel.person_id in gt_texts:
            gt_texts[rel.person_id].add(rel.text_id)
    for rel in algo_relations:
        if rel.person_id in to_gt:
            algo_texts[to_gt[rel.person_id]].add(rel.text_id)

    precisions, recalls = [], []
    for gt_id, _ in matched:
        hits = len(gt_texts[gt_id] & algo_texts[gt_id])
        if algo_texts[gt_id]:
            precisions.append(Fraction(hits, len(algo_texts[gt_id])))
        if gt_texts[gt_id]:
            recalls.append(Fraction(hits, len(gt_texts[gt_id])))
    return MetricTriple.of(_mean(precisions), _mean(recalls))


def ambiguity_metrics(ambiguities, algo_ambiguities, matched) -> MetricTriple:
    to_gt = {algo_id: gt_id for gt_id, algo_id in matched}
    gt_triples = {(a.text_id, a.reason, pid) for a in ambiguities for pid in a.person_ids}
    # unmatched output persons keep a tagged id so they never equal a ground-truth id
    algo_triples = {
        (a.text_id, a.reason, to_gt.get(pid, ("unmatched", pid)))
        for a in algo_ambiguities for pid in a.person_ids
    }
    hits = len(gt_triples & algo_triples)
    return MetricTriple.of(_ratio(hits, len(algo_triples)), _ratio(hits, len(gt_triples)))


def evaluate(gt: GroundTruth, out: AlgorithmOutput) -> EvaluationReport:
    known = {t.id for t in gt.texts}
    unknown = sorted(out.text_ids() - known)
    if unknown:
        raise ValidationError(f"output references unknown text ids {unknown}")
    matched = match_persons(gt.index, out.index)
    return EvaluationReport(
        index_metrics(gt.index, out.index, matched),
        relation_metrics(gt.relations, out.relations, matched),
        ambiguity_metrics(gt.ambiguities, out.ambiguities, matched),
        len(matched),
    )
