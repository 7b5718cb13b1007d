"""Finite quotients: permutation images, low-index subgroups, Galois closures
and the homology-sphere obstruction checks on deck groups.

Permutations are tuples of images.  Products read left to right, matching
the right action on cosets: ``mul(p, q)[i] == q[p[i]]``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from dsp.abelianization import AbelianInvariants, abelian_invariants
from dsp.coset_enum import CosetTable, UNDEF, column, is_normal
from dsp.errors import BudgetExhausted, OrderTooLarge
from dsp.presentation import DEFAULT_LETTER_BUDGET, Presentation
from dsp.subgroup_rewriting import (
    rewrite_subgroup_presentation,
    simplify_presentation,
    subgroup_generators,
)

EXPLICIT_CAP = 10**6
BINARY_ICOSAHEDRAL_ORDER = 120

COROLLARY_VIOLATION = "corollary-violation"
LEMMA_WINDOW = "lemma-window"
LEMMA_ANOMALY = "lemma-anomaly"
NO_CLAIM = "no-claim"


def mul(p, q):
    return tuple(q[i] for i in p)


def invert(p):
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def perm_commutator(x, y):
    return mul(mul(x, y), mul(invert(x), invert(y)))


def closure(generators, degree, cap=EXPLICIT_CAP):
    """All products of ``generators``, identity first, in BFS order."""
    identity = tuple(range(degree))
    seen = {identity}
    elements = [identity]
    queue = deque([identity])
    while queue:
        a = queue.popleft()
        for g in generators:
            b = mul(a, g)
            if b not in seen:
                if len(elements) >= cap:
                    raise OrderTooLarge(f"group order exceeds explicit cap {cap}")
                seen.add(b)
                elements.append(b)
                queue.append(b)
    return elements


@dataclass(frozen=True)
class FiniteGroupRep:
    degree: int
    generators: tuple
    order: int
    elements: Optional[tuple] = None

    @classmethod
    def generated_by(cls, generators: Sequence[Sequence[int]], degree: int, cap=EXPLICIT_CAP):
        gens = tuple(tuple(g) for g in generators)
        for g in gens:
            if sorted(g) != list(range(degree)):
                raise ValueError(f"{g} is not a permutation of range({degree})")
        elements = closure(gens, degree, cap)
        return cls(degree, gens, len(elements), tuple(elements))

    def _require_elements(self):
        if self.elements is None:
            raise OrderTooLarge("group elements were not enumerated")
        return self.elements


def permutation_image(t: CosetTable, explicit_cap: int = EXPLICIT_CAP) -> FiniteGroupRep:
    """The group generated by the generators' actions on the cosets of ``t``."""
    perms = [t.permutation(g) for g in range(1, t.ngens + 1)]
    return FiniteGroupRep.generated_by(perms, t.index, explicit_cap)


def derived_subgroup_elements(g: FiniteGroupRep) -> set:
    """Commutator subgroup, as the normal closure of generator commutators."""
    g._require_elements()
    gens = g.generators
    seeds = {perm_commutator(x, y) for i, x in enumerate(gens) for y in gens[i + 1 :]}
    identity = tuple(range(g.degree))
    seeds.discard(identity)
    sub_gens = sorted(seeds)
    members = set(closure(sub_gens, g.degree))
    while True:
        new = None
        for s in sub_gens:
            for x in gens:
                c = mul(mul(invert(x), s), x)
                if c not in members:
                    new = c
                    break
            if new is not None:
                break
        if new is None:
            return members
        sub_gens.append(new)
        members = set(closure(sub_gens, g.degree))


def is_perfect_finite(g: FiniteGroupRep) -> bool:
    return len(derived_subgroup_elements(g)) == g.order


def is_binary_icosahedral(g: FiniteGroupRep) -> bool:
    """Exact: the binary icosahedral group is the only perfect group of order 120."""
    g._require_elements()
    return g.order == BINARY_ICOSAHEDRAL_ORDER and is_perfect_finite(g)


# -- low-index subgroups ---------------------------------------------------


class _LowIndex:
    def __init__(self, p: Presentation, max_index: int, node_budget: int):
        self.ngens = p.ngens
        self.ncols = 2 * p.ngens
        self.n = max_index
        self.node_budget = node_budget
        self.nodes = 0
        self.results = []
        self.by_col = [[] for _ in range(self.ncols)]
        seen = set()
        for r in p.relators:
            for w in (r, tuple(-x for x in reversed(r))):
                for i in range(len(w)):
                    conj = w[i:] + w[:i]
                    if conj not in seen:
                        seen.add(conj)
                        cols = [column(x) for x in conj]
                        self.by_col[cols[0]].append(cols)

    def scan(self, table, c, word, pending):
        f, i, n = c, 0, len(word)
        while i < n and table[f][word[i]] != UNDEF:
            f = table[f][word[i]]
            i += 1
        if i == n:
            return f == c
        b, j = c, n - 1
        while j >= i and table[b][word[j] ^ 1] != UNDEF:
            b = table[b][word[j] ^ 1]
            j -= 1
        if j < i:
            return f == b
        if j == i:
            table[f][word[i]] = b
            table[b][word[i] ^ 1] = f
            pending.append((f, word[i]))
        return True

    def deduce(self, table, pending):
        while pending:
            c, x = pending.pop()
            for w in self.by_col[x]:
                if not self.scan(table, c, w, pending):
                    return False
            d = table[c][x]
            for w in self.by_col[x ^ 1]:
                if not self.scan(table, d, w, pending):
                    return False
        return True

    @staticmethod
    def relabel_compare(table, base):
        """Compare the table re-rooted at ``base`` with the table itself.

        Returns -1 if re-rooting gives a smaller table, 1 if larger, 0 if equal
        and None if undefined entries leave it undecided.
        """
        ncols = len(table[0])
        label = {base: 0}
        order = [base]
        row = 0
        while row < len(order):
            old = order[row]
            for x in range(ncols):
                tgt = table[old][x]
                orig = table[row][x]
                if tgt == UNDEF or orig == UNDEF:
                    return None
                if tgt not in label:
                    label[tgt] = len(order)
                    order.append(tgt)
                val = label[tgt]
                if val != orig:
                    return -1 if val < orig else 1
            row += 1
        return 0

    def canonical(self, table):
        return all(self.relabel_compare(table, b) != -1 for b in range(1, len(table)))

    def search(self, table):
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise BudgetExhausted(
                f"low-index search exceeded {self.node_budget} nodes", "nodes", self.nodes
            )
        for c in range(len(table)):
            for x in range(self.ncols):
                if table[c][x] == UNDEF:
                    break
            else:
                continue
            break
        else:
            self.results.append(CosetTable(self.ngens, tuple(tuple(r) for r in table)))
            return
        count = len(table)
        targets = [d for d in range(count) if table[d][x ^ 1] == UNDEF]
        if count < self.n:
            targets.append(count)
        for d in targets:
            new = [list(r) for r in table]
            if d == count:
                new.append([UNDEF] * self.ncols)
            new[c][x] = d
            new[d][x ^ 1] = c
            if self.deduce(new, [(c, x)]) and self.canonical(new):
                self.search(new)


def low_index_subgroups(
    p: Presentation, max_index: int, node_budget: int = 10**6
) -> list:
    """One complete coset table per conjugacy class of subgroups of index
    at most ``max_index``, in depth-first discovery order."""
    if max_index < 1:
        raise ValueError("max_index must be positive")
    search = _LowIndex(p, max_index, node_budget)
    start = [[UNDEF] * search.ncols]
    if search.deduce(start, []):
        if p.ngens == 0:
            search.results.append(CosetTable(0, ((),)))
        else:
            try:
                search.search(start)
            except BudgetExhausted as exc:
                exc.partial = list(search.results)
                raise
    return search.results


def normalizer_index(t: CosetTable) -> int:
    """Number of cosets c whose re-rooted table equals ``t``: [N(H) : H]."""
    rows = [list(r) for r in t.rows]
    return sum(1 for b in range(t.index) if _LowIndex.relabel_compare(rows, b) == 0)


def conjugacy_class_size(t: CosetTable) -> int:
    return t.index // normalizer_index(t)


# -- Galois closures -------------------------------------------------------


@dataclass(frozen=True)
class GaloisCoverDatum:
    base: Presentation
    core_table: CosetTable
    deck: FiniteGroupRep
    cover_invariants: AbelianInvariants
    core_generators: tuple = ()


def regular_table(g: FiniteGroupRep) -> CosetTable:
    """Right regular action of ``g`` on its own elements (identity = coset 0)."""
    elements = g._require_elements()
    ids = {e: i for i, e in enumerate(elements)}
    perms = [tuple(ids[mul(e, s)] for e in elements) for s in g.generators]
    return CosetTable.from_permutations(perms, len(elements))


def galois_closure(
    p: Presentation,
    t: CosetTable,
    explicit_cap: int = EXPLICIT_CAP,
    letter_budget: int = DEFAULT_LETTER_BUDGET,
) -> GaloisCoverDatum:
    """Normal core of the subgroup behind ``t`` as a Galois cover of ``p``.

    The core is the kernel of the coset action, so its cosets are the
    elements of the permutation image.
    """
    deck = permutation_image(t, explicit_cap)
    core = regular_table(deck)
    gens = tuple(subgroup_generators(core))
    if not is_normal(core, gens):
        raise AssertionError("core subgroup failed the normality check")
    cover = simplify_presentation(rewrite_subgroup_presentation(p, core, letter_budget)).presentation
    return GaloisCoverDatum(p, core, deck, abelian_invariants(cover), gens)


def corollary_check(d: GaloisCoverDatum) -> str:
    cover_trivial = d.cover_invariants.is_perfect
    if not cover_trivial:
        return NO_CLAIM
    if d.deck.order > BINARY_ICOSAHEDRAL_ORDER:
        return COROLLARY_VIOLATION
    if d.deck.order == 1 or is_binary_icosahedral(d.deck):
        return LEMMA_WINDOW
    if abelian_invariants(d.base).is_perfect:
        return LEMMA_ANOMALY
    return NO_CLAIM
