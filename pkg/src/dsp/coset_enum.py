"""Todd-Coxeter coset enumeration.

Columns of a coset table are indexed by signed letters: generator ``g``
(1-based) lives in column ``2*(g-1)`` and its inverse in ``2*(g-1)+1``, so
the inverse column of ``x`` is ``x ^ 1``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from dsp.errors import BudgetExhausted
from dsp.presentation import Presentation, Word, free_reduce

UNDEF = -1


def column(letter: int) -> int:
    return 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1


def column_letter(col: int) -> int:
    g = col // 2 + 1
    return -g if col & 1 else g


@dataclass(frozen=True)
class CosetTable:
    """Right action of the generators on the cosets of a subgroup.

    ``rows[c][column(x)]`` is the coset ``c . x``.  Coset 0 is the subgroup.
    """

    ngens: int
    rows: tuple
    complete: bool = True

    @property
    def index(self) -> int:
        return len(self.rows)

    def act(self, c: int, letter: int) -> int:
        return self.rows[c][column(letter)]

    def permutation(self, g: int) -> tuple:
        """Action of generator ``g`` (1-based) as a tuple image list."""
        col = 2 * (g - 1)
        return tuple(row[col] for row in self.rows)

    @classmethod
    def from_permutations(cls, perms: Sequence[Sequence[int]], degree: int) -> CosetTable:
        inverses = []
        for p in perms:
            inv = [0] * degree
            for i, j in enumerate(p):
                inv[j] = i
            inverses.append(inv)
        rows = []
        for c in range(degree):
            row = []
            for p, inv in zip(perms, inverses):
                row += [p[c], inv[c]]
            rows.append(tuple(row))
        return cls(len(perms), tuple(rows))


def coset_action(t: CosetTable, w: Sequence[int], c: int) -> int:
    rows = t.rows
    for x in w:
        c = rows[c][2 * x - 2 if x > 0 else -2 * x - 1]
    return c


def is_normal(t: CosetTable, subgroup_gens: Sequence[Word]) -> bool:
    """True iff every subgroup generator fixes every coset.

    Checked as closure under conjugation: each ``x^-1 h x`` for a subgroup
    generator ``h`` and a signed group generator ``x`` must fix coset 0.
    This is the same condition at a fraction of the cost.
    """
    if any(coset_action(t, h, 0) != 0 for h in subgroup_gens):
        return False
    for h in subgroup_gens:
        for g in range(1, t.ngens + 1):
            for x in (g, -g):
                if coset_action(t, (-x, *h, x), 0) != 0:
                    return False
    return True


def verify_table(p: Presentation, subgroup_gens: Sequence[Word], t: CosetTable) -> bool:
    """Check a complete table by direct scanning."""
    n = t.index
    if not t.complete or n < 1 or t.ngens != p.ngens:
        return False
    ncols = 2 * p.ngens
    for row in t.rows:
        if len(row) != ncols:
            return False
        for d in row:
            if not (isinstance(d, int) and 0 <= d < n):
                return False
    for g in range(1, p.ngens + 1):
        fwd, back = 2 * (g - 1), 2 * (g - 1) + 1
        for c in range(n):
            if t.rows[t.rows[c][fwd]][back] != c or t.rows[t.rows[c][back]][fwd] != c:
                return False
    for r in p.relators:
        for c in range(n):
            if coset_action(t, r, c) != c:
                return False
    for h in subgroup_gens:
        if coset_action(t, h, 0) != 0:
            return False
    seen = {0}
    stack = [0]
    while stack:
        c = stack.pop()
        for d in t.rows[c]:
            if d not in seen:
                seen.add(d)
                stack.append(d)
    return len(seen) == n


class _Enumerator:
    def __init__(self, ngens, relators, subgroup_gens, max_cosets):
        self.ncols = 2 * ngens
        self.max_cosets = max_cosets
        self.table = [[UNDEF] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.high_water = 1
        self.deductions = deque()
        self.subgroup_words = [[column(x) for x in h] for h in subgroup_gens if h]

        # cyclic conjugates of relators and their inverses, keyed by first column
        self.by_col = [[] for _ in range(self.ncols)]
        seen = set()
        for r in relators:
            for w in (r, tuple(-x for x in reversed(r))):
                for i in range(len(w)):
                    conj = w[i:] + w[:i]
                    if conj in seen:
                        continue
                    seen.add(conj)
                    cols = [column(x) for x in conj]
                    self.by_col[cols[0]].append(cols)

    def find(self, c):
        parent = self.parent
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def new_coset(self):
        if self.live >= self.max_cosets:
            raise BudgetExhausted(
                f"coset enumeration exceeded {self.max_cosets} cosets",
                "max_cosets",
                self.high_water,
            )
        d = len(self.table)
        self.table.append([UNDEF] * self.ncols)
        self.parent.append(d)
        self.live += 1
        self.high_water = max(self.high_water, self.live)
        return d

    def define(self, c, x):
        d = self.new_coset()
        self.table[c][x] = d
        self.table[d][x ^ 1] = c
        self.deductions.append((c, x))

    def scan_and_fill(self, c, word):
        table = self.table
        f, i = c, 0
        b, j = c, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] != UNDEF:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][word[j] ^ 1] != UNDEF:
                b = table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                self.deductions.append((f, word[i]))
                return
            self.define(f, word[i])

    def scan(self, c, word):
        table = self.table
        f, i, n = c, 0, len(word)
        while i < n and table[f][word[i]] != UNDEF:
            f = table[f][word[i]]
            i += 1
        if i == n:
            if f != c:
                self.coincidence(f, c)
            return
        b, j = c, n - 1
        while j >= i and table[b][word[j] ^ 1] != UNDEF:
            b = table[b][word[j] ^ 1]
            j -= 1
        if j < i:
            self.coincidence(f, b)
        elif j == i:
            table[f][word[i]] = b
            table[b][word[i] ^ 1] = f
            self.deductions.append((f, word[i]))

    def merge(self, k, l, queue):
        k, l = self.find(k), self.find(l)
        if k == l:
            return
        if k > l:
            k, l = l, k
        self.parent[l] = k
        queue.append(l)

    def coincidence(self, a, b):
        table = self.table
        queue = []
        self.merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            self.live -= 1
            row = table[e]
            for x in range(self.ncols):
                f = row[x]
                if f == UNDEF:
                    continue
                if table[f][x ^ 1] == e:
                    table[f][x ^ 1] = UNDEF
                e1, f1 = self.find(e), self.find(f)
                if table[e1][x] != UNDEF:
                    self.merge(f1, table[e1][x], queue)
                elif table[f1][x ^ 1] != UNDEF:
                    self.merge(e1, table[f1][x ^ 1], queue)
                else:
                    table[e1][x] = f1
                    table[f1][x ^ 1] = e1
                    self.deductions.append((e1, x))

    def is_live(self, c):
        return self.parent[c] == c

    def process_deductions(self):
        while self.deductions:
            c, x = self.deductions.popleft()
            if self.is_live(c):
                for w in self.by_col[x]:
                    if not self.is_live(c):
                        break
                    self.scan(c, w)
            if self.is_live(c):
                d = self.table[c][x]
                if d != UNDEF and self.is_live(d):
                    for w in self.by_col[x ^ 1]:
                        if not self.is_live(d):
                            break
                        self.scan(d, w)
            for w in self.subgroup_words:
                self.scan(0, w)

    def lookahead(self):
        """Scan every relator at every live coset; True if nothing changed."""
        before = (self.live, sum(row.count(UNDEF) for row in self.table))
        for c in range(len(self.table)):
            for ws in self.by_col:
                for w in ws:
                    if self.is_live(c):
                        self.scan(c, w)
            self.process_deductions()
        return before == (self.live, sum(row.count(UNDEF) for row in self.table))

    def run(self):
        for w in self.subgroup_words:
            self.scan_and_fill(0, w)
            self.process_deductions()
        while True:
            c = 0
            while c < len(self.table):
                for x in range(self.ncols):
                    if not self.is_live(c):
                        break
                    if self.table[c][x] == UNDEF:
                        self.define(c, x)
                        self.process_deductions()
                c += 1
            if all(
                UNDEF not in self.table[c] for c in range(len(self.table)) if self.is_live(c)
            ) and self.lookahead():
                break
        return self.compact()

    def compact(self):
        live = [c for c in range(len(self.table)) if self.is_live(c)]
        relabel = {c: i for i, c in enumerate(live)}
        rows = tuple(tuple(relabel[self.find(d)] for d in self.table[c]) for c in live)
        return rows


def enumerate_cosets(
    p: Presentation, subgroup_gens: Sequence[Word] = (), max_cosets: int = 10**5
) -> CosetTable:
    """Enumerate the cosets of the subgroup generated by ``subgroup_gens``.

    Raises BudgetExhausted (carrying the live-coset high-water mark) when the
    enumeration needs more than ``max_cosets`` live cosets.  That is not a
    proof of infinite index.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    gens = [free_reduce(h) for h in subgroup_gens]
    enum = _Enumerator(p.ngens, p.relators, gens, max_cosets)
    rows = enum.run()
    return CosetTable(p.ngens, rows, True)
