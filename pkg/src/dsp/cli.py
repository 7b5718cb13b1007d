"""Command-line entry point: ``dsp <command> <file> [options]``.

Exit status is 0 on success, 1 on input errors and 2 when a budget ran
out; partial reports are still written in the last case.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Optional

from dsp.abelianization import abelian_invariants
from dsp.coset_enum import enumerate_cosets, is_normal
from dsp.derived_series import BUDGET_EXHAUSTED, DerivedStep, Limits, explore_derived_series
from dsp.errors import BudgetExhausted, OrderTooLarge, PresentationError
from dsp.finite_quotients import (
    conjugacy_class_size,
    corollary_check,
    galois_closure,
    is_binary_icosahedral,
    low_index_subgroups,
)
from dsp.presentation import Presentation, format_word, parse_presentation
from dsp.report import dumps, envelope, explore_to_json, limits_to_json, step_to_json, to_text
from dsp.subgroup_rewriting import subgroup_generators

COMMANDS = ("explore", "abelianize", "low-index", "galois-audit")

EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: str
    max_depth: int = 8
    max_cosets: int = 10**5
    max_index: int = 6
    letter_budget: int = 10**7
    torsion_cap: int = 10**4
    output_format: str = "json"
    trivial_subgroup: bool = False
    node_budget: int = 10**6

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.output_format not in ("json", "text"):
            raise ValueError(f"unknown format {self.output_format!r}")
        for name in ("max_depth", "max_cosets", "max_index", "letter_budget", "torsion_cap", "node_budget"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    @property
    def limits(self) -> Limits:
        return Limits(self.max_depth, self.max_cosets, self.letter_budget, self.torsion_cap)


def _subgroup_entry(k, p: Presentation, t):
    gens = subgroup_generators(t)
    return {
        "class": k,
        "index": t.index,
        "normal": is_normal(t, gens),
        "conjugates": conjugacy_class_size(t),
        "generators": [format_word(w, p.generator_names) for w in gens],
    }


def _audit_entry(key, p: Presentation, t, config: RunConfig):
    entry = {"class": key, "index": t.index}
    try:
        datum = galois_closure(p, t, letter_budget=config.letter_budget)
    except (OrderTooLarge, BudgetExhausted) as exc:
        entry["verdict"] = "budget-exhausted"
        entry["error"] = str(exc)
        return entry, False
    entry.update(
        {
            "normal": datum.core_table.index == t.index,
            "deck_order": datum.deck.order,
            "core_index": datum.core_table.index,
            "cover_betti": datum.cover_invariants.betti,
            "cover_torsion": list(datum.cover_invariants.torsion),
            "binary_icosahedral": is_binary_icosahedral(datum.deck),
            "verdict": corollary_check(datum),
        }
    )
    return entry, True


def _low_index(p, config):
    try:
        tables, ok = low_index_subgroups(p, config.max_index, config.node_budget), True
    except BudgetExhausted as exc:
        tables, ok = exc.partial, False
    order = sorted(range(len(tables)), key=lambda i: (tables[i].index, i))
    return [tables[i] for i in order], ok


def run(config: RunConfig, p: Presentation) -> tuple:
    """Execute one command; returns (report dict, exit status)."""
    status = EXIT_OK
    if config.command == "explore":
        report = explore_derived_series(p, config.limits)
        doc = explore_to_json(report, config.input_path, config.max_index)
        if report.outcome.kind == BUDGET_EXHAUSTED:
            status = EXIT_BUDGET
        return doc, status

    doc = envelope(config.command, config.input_path, limits_to_json(config.limits, config.max_index))
    if config.command == "abelianize":
        doc["steps"] = [step_to_json(DerivedStep(0, p, abelian_invariants(p), 1))]
        return doc, status

    tables, ok = _low_index(p, config)
    if not ok:
        status = EXIT_BUDGET
        doc["error"] = "low-index search ran out of nodes; subgroup list is partial"
    doc["subgroups"] = [_subgroup_entry(k, p, t) for k, t in enumerate(tables)]
    if config.command == "low-index":
        return doc, status

    for k, t in enumerate(tables):
        entry, ok = _audit_entry(k, p, t, config)
        doc["verdicts"].append(entry)
        if not ok:
            status = EXIT_BUDGET
    if config.trivial_subgroup:
        try:
            t = enumerate_cosets(p, [], config.max_cosets)
        except BudgetExhausted as exc:
            doc["verdicts"].append(
                {"class": "trivial", "index": None, "verdict": "budget-exhausted", "error": str(exc)}
            )
            status = EXIT_BUDGET
        else:
            entry, ok = _audit_entry("trivial", p, t, config)
            doc["verdicts"].append(entry)
            if not ok:
                status = EXIT_BUDGET
    return doc, status


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dsp", description="Derived series and finite cover audits for presented groups."
    )
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("file", help="presentation file ('gens:' / 'rel:' lines)")
    ap.add_argument("--max-depth", type=int, default=8)
    ap.add_argument("--max-cosets", type=int, default=10**5)
    ap.add_argument("--max-index", type=int, default=6)
    ap.add_argument("--letter-budget", type=int, default=10**7)
    ap.add_argument("--torsion-cap", type=int, default=10**4)
    ap.add_argument("--node-budget", type=int, default=10**6,
                    help="search-node limit for the low-index backtracker")
    ap.add_argument("--trivial-subgroup", action="store_true",
                    help="galois-audit: also enumerate the trivial subgroup (regular cover)")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    return ap


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            args.command,
            args.file,
            max_depth=args.max_depth,
            max_cosets=args.max_cosets,
            max_index=args.max_index,
            letter_budget=args.letter_budget,
            torsion_cap=args.torsion_cap,
            output_format=args.format,
            trivial_subgroup=args.trivial_subgroup,
            node_budget=args.node_budget,
        )
    except ValueError as exc:
        print(f"dsp: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        with open(config.input_path, encoding="utf-8") as fh:
            text = fh.read()
        p = parse_presentation(text, config.letter_budget)
    except OSError as exc:
        print(f"dsp: cannot read {config.input_path}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    except PresentationError as exc:
        print(f"dsp: {config.input_path}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExhausted as exc:
        print(f"dsp: {config.input_path}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if p.dropped:
        print(f"dsp: warning: dropped {p.dropped} relator(s) reducing to the identity", file=sys.stderr)
    doc, status = run(config, p)
    sys.stdout.write(dumps(doc) if config.output_format == "json" else to_text(doc))
    return status


if __name__ == "__main__":
    sys.exit(main())
