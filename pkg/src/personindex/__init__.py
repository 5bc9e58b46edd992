"""Build and score person indexes extracted from messy short texts."""
from .core import (
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
from .evaluator import EvaluationReport, MetricTriple, evaluate, fscore
from .extractor import ExtractorConfig, extract
from .generator import GeneratorConfig, NameCatalogs, generate

__version__ = "0.1.0"
