"""Command line entry point: ``personindex generate|extract|evaluate``.

Exit codes: 0 success, 1 usage or configuration error, 2 data validation
error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import logging
import sys

from . import csvio
from .core import ValidationError
from .evaluator import METRIC_COLUMNS, evaluate, format_metric
from .extractor import ExtractorConfig, extract
from .generator import ConfigError, GeneratorConfig, NameCatalogs, generate, read_name_list

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_IO = 0, 1, 2, 3

log = logging.getLogger("personindex")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="personindex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    gen = sub.add_parser("generate", help="write a ground truth corpus as four CSV files")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--persons", type=int, required=True)
    gen.add_argument("--texts", type=int, required=True)
    gen.add_argument("--max-mentions", type=int, default=0)
    gen.add_argument("--middle-names", type=int, default=0)
    gen.add_argument("--ambiguity", type=int, default=0)
    gen.add_argument("--ambiguity-group-size", type=int, default=None)
    gen.add_argument("--first-names", help="first-name catalog, one name per line "
                                           "(default: bundled catalog)")
    gen.add_argument("--last-names", help="last-name catalog (default: bundled catalog)")
    gen.add_argument("--out", required=True)

    ext = sub.add_parser("extract", help="run the baseline extractor on texts.csv")
    ext.add_argument("--texts", required=True)
    ext.add_argument("--out", required=True)
    ext.add_argument("--gazetteer", help="first-name list, one per line")
    ext.add_argument("--reset-state", action="store_true")
    ext.add_argument("--confidence-threshold", action="store_true")

    ev = sub.add_parser("evaluate", help="score an output directory against ground truth")
    ev.add_argument("--ground-truth", required=True)
    ev.add_argument("--output", required=True)
    ev.add_argument("--report", help="write a one-row CSV with the nine metrics")
    return parser


def _catalogs(args) -> NameCatalogs:
    default = NameCatalogs.default()
    first = read_name_list(args.first_names) if args.first_names else default.first_names
    last = read_name_list(args.last_names) if args.last_names else default.last_names
    return NameCatalogs(first, last)


def cmd_generate(args) -> int:
    config = GeneratorConfig(
        seed=args.seed,
        num_persons=args.persons,
        num_texts=args.texts,
        max_mentions_per_text=args.max_mentions,
        num_middle_names=args.middle_names,
        ambiguity_degree=args.ambiguity,
        ambiguity_group_size=args.ambiguity_group_size,
    )
    gt = generate(config, _catalogs(args))
    csvio.write_ground_truth(gt, args.out)
    log.info("wrote %d texts, %d persons to %s", len(gt.texts), len(gt.index), args.out)
    return EXIT_OK


def cmd_extract(args) -> int:
    gazetteer = read_name_list(args.gazetteer) if args.gazetteer else None
    config = ExtractorConfig(
        reset_state_per_text=args.reset_state,
        confidence_threshold_enabled=args.confidence_threshold,
        gazetteer=gazetteer,
    )
    out = extract(csvio.read_texts(args.texts), config)
    csvio.write_output(out, args.out)
    return EXIT_OK


def cmd_evaluate(args, stdout=None) -> int:
    stdout = stdout or sys.stdout
    report = evaluate(csvio.read_ground_truth(args.ground_truth),
                      csvio.read_output(args.output))
    values = report.values()
    for column in METRIC_COLUMNS:
        print(f"{column}: {format_metric(values[column])}", file=stdout)
    if args.report:
        with open(args.report, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(METRIC_COLUMNS)
            writer.writerow(["-" if values[c] is None else repr(values[c])
                             for c in METRIC_COLUMNS])
    return EXIT_OK


COMMANDS = {"generate": cmd_generate, "extract": cmd_extract, "evaluate": cmd_evaluate}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
