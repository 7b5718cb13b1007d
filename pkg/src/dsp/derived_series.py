"""Walking down the derived series G = G^0 > G^1 > G^2 > ...

Each level is handled by abelianizing the current presentation.  A level
with infinite abelianization gives a finite-index subgroup with positive
first Betti number; a perfect level means the series has stabilized; while
quotients stay finite and nontrivial we descend by rewriting a presentation
of the commutator subgroup.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from dsp.abelianization import AbelianInvariants, abelian_invariants, abelian_quotient_map
from dsp.coset_enum import CosetTable, column
from dsp.errors import BudgetExhausted, PreconditionViolated
from dsp.presentation import DEFAULT_LETTER_BUDGET, Presentation
from dsp.subgroup_rewriting import (
    DEFAULT_SIMPLIFY_BUDGET,
    rewrite_subgroup_presentation,
    simplify_presentation,
)

POSITIVE_BETTI = "PositiveBetti"
STABILIZED = "Stabilized"
BUDGET_EXHAUSTED = "BudgetExhausted"

VERDICTS = {
    POSITIVE_BETTI: "virtual-betti-witness",
    STABILIZED: "stabilized",
    BUDGET_EXHAUSTED: "undetermined",
}


@dataclass(frozen=True)
class Limits:
    max_depth: int = 8
    max_cosets: int = 10**5
    letter_budget: int = DEFAULT_LETTER_BUDGET
    torsion_cap: int = 10**4
    simplify_budget: int = DEFAULT_SIMPLIFY_BUDGET

    def __post_init__(self):
        for name in ("max_depth", "max_cosets", "letter_budget", "torsion_cap", "simplify_budget"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class DerivedStep:
    level: int
    presentation: Presentation
    invariants: AbelianInvariants
    index_in_root: int


@dataclass(frozen=True)
class Outcome:
    """``kind`` is PositiveBetti, Stabilized or BudgetExhausted.

    For BudgetExhausted, ``level`` is the deepest recorded level and
    ``resource`` names the limit that tripped.
    """

    kind: str
    level: int
    resource: Optional[str] = None


@dataclass(frozen=True)
class DerivedSeriesReport:
    steps: tuple
    outcome: Outcome
    limits: Limits = field(default_factory=Limits)


def abelian_kernel_table(p: Presentation, torsion_cap: Optional[int] = None) -> CosetTable:
    """Coset table of [G, G] when G^ab is finite.

    Cosets are the elements of G^ab, numbered in breadth-first order from 0
    along the generators; a generator acts by translation by its image.
    """
    inv, evaluate = abelian_quotient_map(p)
    if inv.betti > 0:
        raise PreconditionViolated("abelianization is infinite")
    if torsion_cap is not None and inv.order > torsion_cap:
        raise BudgetExhausted(
            f"|G^ab| = {inv.order} exceeds torsion cap {torsion_cap}", "torsion_cap", inv.order
        )
    mods = inv.torsion
    images = [evaluate((g,)) for g in range(1, p.ngens + 1)]

    def shift(a, b, sign):
        return tuple((x + sign * y) % d for x, y, d in zip(a, b, mods))

    zero = tuple(0 for _ in mods)
    ids = {zero: 0}
    order = [zero]
    queue = deque([zero])
    while queue:
        a = queue.popleft()
        for img in images:
            b = shift(a, img, 1)
            if b not in ids:
                ids[b] = len(order)
                order.append(b)
                queue.append(b)
    rows = []
    for a in order:
        row = [0] * (2 * p.ngens)
        for g, img in enumerate(images, 1):
            row[column(g)] = ids[shift(a, img, 1)]
            row[column(-g)] = ids[shift(a, img, -1)]
        rows.append(tuple(row))
    return CosetTable(p.ngens, tuple(rows))


def derived_subgroup_presentation(
    p: Presentation, limits: Limits = Limits(), invariants: Optional[AbelianInvariants] = None
) -> Presentation:
    """Simplified presentation of the commutator subgroup of a group with
    finite, nontrivial abelianization."""
    inv = invariants or abelian_invariants(p)
    if inv.betti > 0:
        raise PreconditionViolated("abelianization is infinite; [G,G] has infinite index")
    if inv.is_perfect:
        raise PreconditionViolated("group is perfect; [G,G] = G")
    table = abelian_kernel_table(p, limits.torsion_cap)
    if table.index > limits.max_cosets:
        raise BudgetExhausted(
            f"kernel table needs {table.index} cosets", "max_cosets", table.index
        )
    rewritten = rewrite_subgroup_presentation(p, table, limits.letter_budget)
    return simplify_presentation(rewritten, limits.simplify_budget).presentation


def explore_derived_series(p: Presentation, limits: Limits = Limits()) -> DerivedSeriesReport:
    steps = []
    current = p
    index = 1
    level = 0
    while True:
        inv = abelian_invariants(current)
        steps.append(DerivedStep(level, current, inv, index))
        if inv.betti > 0:
            return DerivedSeriesReport(tuple(steps), Outcome(POSITIVE_BETTI, level), limits)
        if inv.is_perfect:
            return DerivedSeriesReport(tuple(steps), Outcome(STABILIZED, level), limits)
        if level >= limits.max_depth:
            return DerivedSeriesReport(
                tuple(steps), Outcome(BUDGET_EXHAUSTED, level, "max_depth"), limits
            )
        try:
            current = derived_subgroup_presentation(current, limits, inv)
        except BudgetExhausted as exc:
            return DerivedSeriesReport(
                tuple(steps), Outcome(BUDGET_EXHAUSTED, level, exc.resource), limits
            )
        index *= inv.order
        level += 1


def classify_outcome(report: DerivedSeriesReport) -> str:
    return VERDICTS[report.outcome.kind]
