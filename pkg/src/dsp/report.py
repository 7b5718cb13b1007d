"""JSON and plain-text rendering of command results.

Presentations are embedded as generator-name lists plus relator strings in
the input file syntax, so every recorded step can be fed back to the CLI.
"""

from __future__ import annotations

import json

from dsp.abelianization import AbelianInvariants
from dsp.derived_series import (
    DerivedSeriesReport,
    DerivedStep,
    Limits,
    Outcome,
    classify_outcome,
)
from dsp.presentation import Presentation, format_word, parse_word

SCHEMA_VERSION = 1


def presentation_to_json(p: Presentation) -> dict:
    return {
        "generators": list(p.generator_names),
        "relators": [format_word(r, p.generator_names) for r in p.relators],
    }


def presentation_from_json(d: dict) -> Presentation:
    names = d["generators"]
    return Presentation(tuple(names), tuple(parse_word(r, names) for r in d["relators"]))


def step_to_json(s: DerivedStep) -> dict:
    return {
        "level": s.level,
        **presentation_to_json(s.presentation),
        "betti": s.invariants.betti,
        "torsion": list(s.invariants.torsion),
        "index_in_root": s.index_in_root,
    }


def step_from_json(d: dict) -> DerivedStep:
    return DerivedStep(
        d["level"],
        presentation_from_json(d),
        AbelianInvariants(d["betti"], tuple(d["torsion"])),
        d["index_in_root"],
    )


def limits_to_json(limits: Limits, max_index=None) -> dict:
    out = {
        "max_depth": limits.max_depth,
        "max_cosets": limits.max_cosets,
        "letter_budget": limits.letter_budget,
        "torsion_cap": limits.torsion_cap,
    }
    if max_index is not None:
        out["max_index"] = max_index
    return out


def limits_from_json(d: dict) -> Limits:
    return Limits(d["max_depth"], d["max_cosets"], d["letter_budget"], d["torsion_cap"])


def outcome_to_json(report: DerivedSeriesReport) -> dict:
    o = report.outcome
    out = {"kind": o.kind, "level": o.level}
    if o.resource is not None:
        out["resource"] = o.resource
    out["verdict"] = classify_outcome(report)
    return out


def envelope(command: str, input_path: str, limits: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input": input_path,
        "limits": limits,
        "steps": [],
        "outcome": None,
        "verdicts": [],
    }


def explore_to_json(report: DerivedSeriesReport, input_path: str, max_index=None) -> dict:
    doc = envelope("explore", input_path, limits_to_json(report.limits, max_index))
    doc["steps"] = [step_to_json(s) for s in report.steps]
    doc["outcome"] = outcome_to_json(report)
    return doc


def explore_from_json(doc: dict) -> DerivedSeriesReport:
    o = doc["outcome"]
    return DerivedSeriesReport(
        tuple(step_from_json(s) for s in doc["steps"]),
        Outcome(o["kind"], o["level"], o.get("resource")),
        limits_from_json(doc["limits"]),
    )


def invariants_from_json(doc: dict) -> AbelianInvariants:
    s = doc["steps"][0]
    return AbelianInvariants(s["betti"], tuple(s["torsion"]))


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


# -- text rendering ----------------------------------------------------------


def _table(headers, rows):
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for r in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines)


def _torsion_str(torsion):
    return "[" + ", ".join(str(d) for d in torsion) + "]"


def to_text(doc: dict) -> str:
    out = [f"{doc['command']}: {doc['input']}"]
    if doc["steps"]:
        rows = [
            (s["level"], len(s["generators"]), len(s["relators"]), s["betti"],
             _torsion_str(s["torsion"]), s["index_in_root"])
            for s in doc["steps"]
        ]
        out.append(_table(["level", "gens", "rels", "betti", "torsion", "index"], rows))
    if doc["outcome"]:
        o = doc["outcome"]
        extra = f" ({o['resource']})" if "resource" in o else ""
        out.append(f"outcome: {o['kind']} at level {o['level']}{extra} -> {o['verdict']}")
    if doc.get("subgroups"):
        rows = [(s["class"], s["index"], "yes" if s["normal"] else "no", s["conjugates"])
                for s in doc["subgroups"]]
        out.append(_table(["class", "index", "normal", "conjugates"], rows))
    if doc["verdicts"]:
        rows = [
            (v["class"], v["index"], v.get("deck_order", "-"), v.get("cover_betti", "-"),
             _torsion_str(v["cover_torsion"]) if "cover_torsion" in v else "-", v["verdict"])
            for v in doc["verdicts"]
        ]
        out.append(_table(["class", "index", "deck", "betti", "torsion", "verdict"], rows))
    if doc.get("error"):
        out.append(f"error: {doc['error']}")
    return "\n".join(out) + "\n"
