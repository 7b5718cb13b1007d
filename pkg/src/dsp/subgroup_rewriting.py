"""Reidemeister-Schreier rewriting and conservative Tietze simplification."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

from dsp.coset_enum import CosetTable
from dsp.errors import LetterBudgetExceeded
from dsp.presentation import DEFAULT_LETTER_BUDGET, Presentation, inverse, normalize_relator

DEFAULT_SIMPLIFY_BUDGET = 10**5


@dataclass(frozen=True)
class SchreierData:
    """Schreier transversal of a complete coset table.

    ``generator_map[c][g-1]`` is the 1-based index of the Schreier generator
    for edge ``(c, g)``, or 0 when the edge lies on the spanning tree and the
    generator is trivial.
    """

    transversal: tuple
    generator_map: tuple
    ngens: int

    @property
    def rank(self) -> int:
        return sum(1 for row in self.generator_map for s in row if s)

    def generator_words(self, t: CosetTable) -> list:
        """The nontrivial Schreier generators as words in the parent group."""
        words = [None] * self.rank
        for c, row in enumerate(self.generator_map):
            for g, s in enumerate(row, 1):
                if s:
                    d = t.act(c, g)
                    words[s - 1] = self.transversal[c] + (g,) + inverse(self.transversal[d])
        return words


def schreier_transversal(t: CosetTable) -> SchreierData:
    """Shortlex BFS from coset 0 over the letters a, a^-1, b, b^-1, ..."""
    n = t.index
    transversal = [None] * n
    transversal[0] = ()
    tree = set()
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for g in range(1, t.ngens + 1):
            for x in (g, -g):
                d = t.act(c, x)
                if transversal[d] is None:
                    transversal[d] = transversal[c] + (x,)
                    # the tree edge, oriented along the positive generator
                    tree.add((c, g) if x > 0 else (d, g))
                    queue.append(d)
    if any(w is None for w in transversal):
        raise ValueError("coset table is not transitive")
    gmap = []
    k = 0
    for c in range(n):
        row = []
        for g in range(1, t.ngens + 1):
            if (c, g) in tree:
                row.append(0)
            else:
                k += 1
                row.append(k)
        gmap.append(tuple(row))
    return SchreierData(tuple(transversal), tuple(gmap), t.ngens)


def subgroup_generators(t: CosetTable) -> list:
    """Schreier generators of the subgroup whose cosets ``t`` enumerates."""
    return schreier_transversal(t).generator_words(t)


def rewrite_word(t: CosetTable, data: SchreierData, w, c: int = 0):
    """Rewrite ``w`` read from coset ``c`` in Schreier generators.

    Returns the rewritten letters and the coset reached.
    """
    out = []
    gmap = data.generator_map
    for x in w:
        if x > 0:
            s = gmap[c][x - 1]
            if s:
                out.append(s)
            c = t.act(c, x)
        else:
            c = t.act(c, x)
            s = gmap[c][-x - 1]
            if s:
                out.append(-s)
    return out, c


def rewrite_subgroup_presentation(
    p: Presentation, t: CosetTable, letter_budget: int = DEFAULT_LETTER_BUDGET
) -> Presentation:
    """Presentation of the subgroup on its nontrivial Schreier generators.

    One relator per (coset, relator) pair, in coset order then relator
    order.  Rewrites that reduce to the identity are counted in ``dropped``.
    """
    if not t.complete:
        raise ValueError("coset table must be complete")
    data = schreier_transversal(t)
    names = [f"x{i}" for i in range(1, data.rank + 1)]
    relators = []
    total = 0
    for c in range(t.index):
        for r in p.relators:
            w, _ = rewrite_word(t, data, r, c)
            total += len(w)
            if total > letter_budget:
                raise LetterBudgetExceeded(
                    f"rewritten relators exceed {letter_budget} letters", high_water=total
                )
            relators.append(w)
    return Presentation.from_words(names, relators)


@dataclass(frozen=True)
class SimplifyResult:
    presentation: Presentation
    moves: int
    exhausted: bool


def _substitute(relators, gen, image):
    """Replace generator ``gen`` by word ``image`` and renormalize."""
    inv = inverse(image)
    out = []
    for r in relators:
        if gen in r or -gen in r:
            new = []
            for x in r:
                if x == gen:
                    new.extend(image)
                elif x == -gen:
                    new.extend(inv)
                else:
                    new.append(x)
            r = normalize_relator(new)
        if r:
            out.append(r)
    return out


def _remove_generator(names, relators, gen):
    del names[gen - 1]
    shifted = []
    for r in relators:
        shifted.append(tuple(x if abs(x) < gen else (x - 1 if x > 0 else x + 1) for x in r))
    return shifted


def _find_move(relators):
    # substitution from a relator of length <= 2
    for i, r in enumerate(relators):
        if len(r) == 1:
            return i, abs(r[0]), ()
        if len(r) == 2 and abs(r[0]) != abs(r[1]):
            x, y = r
            # eliminate the later generator: x y = 1  =>  y = x^-1
            if abs(x) > abs(y):
                x, y = y, x
            # now |y| > |x| and y = x^-1 as an element (relator is a conjugate of x y)
            image = (-x,) if y > 0 else (x,)
            return i, abs(y), image
    # generator occurring exactly once overall
    counts = Counter(abs(x) for r in relators for x in r)
    for i, r in enumerate(relators):
        for x in r:
            if counts[abs(x)] == 1:
                return i, abs(x), None
    return None


def simplify_presentation(p: Presentation, budget: int = DEFAULT_SIMPLIFY_BUDGET) -> SimplifyResult:
    """Apply Tietze moves until none applies or ``budget`` moves are spent.

    Moves: drop identity relators; eliminate a generator defined by a
    relator of length at most two; eliminate a generator that occurs once
    in a single relator together with that relator.
    """
    names = list(p.generator_names)
    relators = [normalize_relator(r) for r in p.relators]
    relators = [r for r in relators if r]
    moves = 0
    while True:
        move = _find_move(relators)
        if move is None:
            break
        if moves >= budget:
            return SimplifyResult(Presentation(names, relators), moves, True)
        i, gen, image = move
        del relators[i]
        if image is not None:
            relators = _substitute(relators, gen, image)
        relators = _remove_generator(names, relators, gen)
        moves += 1
    return SimplifyResult(Presentation(names, relators), moves, False)
