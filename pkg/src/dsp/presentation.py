"""Finitely presented groups and words over their generators.

A word is a tuple of nonzero ints: ``k`` stands for generator ``k`` (1-based)
and ``-k`` for its inverse.  Presentations store freely and cyclically
reduced, nonempty relators.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import groupby
from typing import Iterable, Sequence

from dsp.errors import (
    DuplicateGenerator,
    LetterBudgetExceeded,
    MalformedExponent,
    PresentationError,
    UnknownGenerator,
)

Word = tuple  # tuple[int, ...]

DEFAULT_LETTER_BUDGET = 10**7
MAX_EXPONENT = 2**31 - 1

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_TERM = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^(.*))?\Z")


def free_reduce(letters: Iterable[int]) -> Word:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclically_reduce(w: Sequence[int]) -> Word:
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return tuple(w[i : j + 1])


def inverse(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def commutator(u: Sequence[int], v: Sequence[int]) -> Word:
    """Freely reduced ``u v u^-1 v^-1``."""
    return free_reduce((*u, *v, *inverse(u), *inverse(v)))


def exponent_sums(w: Sequence[int], ngens: int) -> list[int]:
    sums = [0] * ngens
    for x in w:
        if x > 0:
            sums[x - 1] += 1
        else:
            sums[-x - 1] -= 1
    return sums


def normalize_relator(w: Iterable[int]) -> Word:
    return cyclically_reduce(free_reduce(w))


@dataclass(frozen=True)
class Presentation:
    generator_names: tuple
    relators: tuple
    # relators that reduced to the identity and were discarded
    dropped: int = field(default=0, compare=False)

    def __post_init__(self):
        names = tuple(self.generator_names)
        object.__setattr__(self, "generator_names", names)
        object.__setattr__(self, "relators", tuple(tuple(r) for r in self.relators))
        seen = set()
        for name in names:
            if not _NAME.match(name):
                raise PresentationError(f"invalid generator name {name!r}")
            if name in seen:
                raise DuplicateGenerator(f"duplicate generator {name!r}")
            seen.add(name)
        n = len(names)
        for r in self.relators:
            if not r:
                raise PresentationError("empty relator")
            if normalize_relator(r) != r:
                raise PresentationError(f"relator {r} is not cyclically reduced")
            for x in r:
                if not (isinstance(x, int) and x != 0 and abs(x) <= n):
                    raise UnknownGenerator(f"letter {x} outside 1..{n}")

    @classmethod
    def from_words(cls, generator_names, relators) -> Presentation:
        """Build a presentation, reducing relators and dropping trivial ones."""
        kept, dropped = [], 0
        for r in relators:
            r = normalize_relator(r)
            if r:
                kept.append(r)
            else:
                dropped += 1
        return cls(tuple(generator_names), tuple(kept), dropped)

    @property
    def ngens(self) -> int:
        return len(self.generator_names)

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def word_str(self, w: Sequence[int]) -> str:
        return format_word(w, self.generator_names)

    def __str__(self):
        rels = ", ".join(self.word_str(r) for r in self.relators)
        return f"< {' '.join(self.generator_names)} | {rels} >"


def format_word(w: Sequence[int], names: Sequence[str]) -> str:
    terms = []
    for x, run in groupby(w):
        e = len(list(run)) * (1 if x > 0 else -1)
        name = names[abs(x) - 1]
        terms.append(name if e == 1 else f"{name}^{e}")
    return " ".join(terms)


def serialize_presentation(p: Presentation) -> str:
    lines = ["gens: " + " ".join(p.generator_names)]
    lines += ["rel: " + p.word_str(r) for r in p.relators]
    return "\n".join(lines) + "\n"


def parse_word(text: str, names: Sequence[str], line=None, budget=DEFAULT_LETTER_BUDGET) -> Word:
    index = {name: i + 1 for i, name in enumerate(names)}
    letters: list[int] = []
    for term in text.split():
        m = _TERM.match(term)
        if not m:
            raise PresentationError(f"cannot parse term {term!r}", line)
        name, exp = m.group(1), m.group(2)
        if name not in index:
            raise UnknownGenerator(f"unknown generator {name!r}", line)
        if exp is None:
            e = 1
        else:
            if not re.fullmatch(r"[+-]?[0-9]+", exp):
                raise MalformedExponent(f"bad exponent in {term!r}", line)
            e = int(exp)
            if abs(e) > MAX_EXPONENT:
                raise MalformedExponent(f"exponent {e} out of range", line)
        if len(letters) + abs(e) > budget:
            raise LetterBudgetExceeded(
                f"word exceeds letter budget {budget}", high_water=len(letters) + abs(e)
            )
        g = index[name]
        letters.extend([g if e > 0 else -g] * abs(e))
    return tuple(letters)


def parse_presentation(text: str, letter_budget: int = DEFAULT_LETTER_BUDGET) -> Presentation:
    """Parse the ``gens:`` / ``rel:`` line format.

    Relators that reduce to the identity are dropped and counted in
    ``Presentation.dropped``.
    """
    names = None
    raw = []
    total = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("gens", "rel"):
            raise PresentationError(f"expected 'gens:' or 'rel:', got {line!r}", lineno)
        if key == "gens":
            if names is not None:
                raise PresentationError("second 'gens:' line", lineno)
            names = rest.split()
            seen = set()
            for name in names:
                if not _NAME.match(name):
                    raise PresentationError(f"invalid generator name {name!r}", lineno)
                if name in seen:
                    raise DuplicateGenerator(f"duplicate generator {name!r}", lineno)
                seen.add(name)
        else:
            if names is None:
                raise PresentationError("'rel:' before 'gens:'", lineno)
            w = parse_word(rest, names, lineno, letter_budget - total)
            total += len(w)
            raw.append(w)
    if names is None:
        raise PresentationError("missing 'gens:' line")
    return Presentation.from_words(names, raw)
