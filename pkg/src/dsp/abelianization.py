"""Abelian invariants of finitely presented groups via Smith normal form.

All arithmetic is on Python ints, so there is no overflow however large the
elimination intermediates get.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Optional, Sequence

from dsp.presentation import Presentation, exponent_sums


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major, length rows * cols

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> IntegerMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        return cls(len(rows), cols, tuple(e for r in rows for e in r))

    def to_rows(self) -> list:
        c = self.cols
        return [list(self.entries[i * c : (i + 1) * c]) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]


@dataclass(frozen=True)
class SmithForm:
    """Invariant factors ``d1 | d2 | ... | dk`` of an integer matrix.

    When computed with transforms, ``left_transform @ M @ right_transform``
    is the diagonal matrix with the invariant factors.
    """

    invariant_factors: tuple
    left_transform: Optional[tuple] = None
    right_transform: Optional[tuple] = None

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


@dataclass(frozen=True)
class AbelianInvariants:
    betti: int
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.betti < 0 or any(d <= 1 for d in self.torsion):
            raise ValueError("invalid abelian invariants")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion is not a divisibility chain")

    @property
    def is_perfect(self) -> bool:
        return self.betti == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.betti == 0

    @property
    def order(self) -> Optional[int]:
        """Group order, or None when the group is infinite."""
        return prod(self.torsion) if self.betti == 0 else None

    def __str__(self):
        parts = ["Z"] * self.betti + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def abelianized_relation_matrix(p: Presentation) -> IntegerMatrix:
    """Exponent-sum matrix: one row per relator, one column per generator."""
    rows = [exponent_sums(r, p.ngens) for r in p.relators]
    return IntegerMatrix.from_rows(rows, p.ngens)


def _axpy(target: dict, source: dict, q: int):
    """target -= q * source, on sparse dicts."""
    for k, v in source.items():
        nv = target.get(k, 0) - q * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


class _SparseSmith:
    def __init__(self, m: IntegerMatrix, track: bool):
        self.nrows, self.ncols = m.rows, m.cols
        self.track = track
        self.R = [dict() for _ in range(m.rows)]
        self.colidx = [set() for _ in range(m.cols)]
        for i in range(m.rows):
            for j in range(m.cols):
                v = m[i, j]
                if v:
                    self.R[i][j] = v
                    self.colidx[j].add(i)
        if track:
            self.U = [{i: 1} for i in range(m.rows)]
            self.V = [{j: 1} for j in range(m.cols)]  # columns of V

    def row_op(self, k, i, q):
        """row k -= q * row i"""
        Rk = self.R[k]
        for j, v in self.R[i].items():
            nv = Rk.get(j, 0) - q * v
            if nv:
                if j not in Rk:
                    self.colidx[j].add(k)
                Rk[j] = nv
            elif j in Rk:
                del Rk[j]
                self.colidx[j].discard(k)
        if self.track:
            _axpy(self.U[k], self.U[i], q)

    def col_op_on_pivot_row(self, i, l, j, q):
        """col l -= q * col j, valid when col j is nonzero only in row i."""
        Ri = self.R[i]
        nv = Ri.get(l, 0) - q * Ri[j]
        if nv:
            Ri[l] = nv
        else:
            Ri.pop(l, None)
            self.colidx[l].discard(i)
        if self.track:
            _axpy(self.V[l], self.V[j], q)

    def pick_pivot(self, active_rows):
        best = None
        for i in active_rows:
            for j, v in self.R[i].items():
                key = (abs(v), i, j)
                if best is None or key < best:
                    best = key
        return best

    def run(self):
        active = set(range(self.nrows))
        pivots = []
        while True:
            best = self.pick_pivot(sorted(active))
            if best is None:
                break
            _, i, j = best
            while True:
                p = self.R[i][j]
                residue = False
                for k in sorted(self.colidx[j]):
                    if k != i:
                        self.row_op(k, i, self.R[k][j] // p)
                        if j in self.R[k]:
                            residue = True
                if residue:
                    i = min(self.colidx[j], key=lambda k: (abs(self.R[k][j]), k))
                    continue
                for l in sorted(self.R[i]):
                    if l != j:
                        self.col_op_on_pivot_row(i, l, j, self.R[i][l] // p)
                        if l in self.R[i]:
                            residue = True
                if residue:
                    j = min(self.R[i], key=lambda l: (abs(self.R[i][l]), l))
                    continue
                break
            pivots.append((i, j, self.R[i][j]))
            active.discard(i)
            self.colidx[j].discard(i)
            self.R[i] = {}
        return pivots


def _dense(sparse_rows, n):
    return [[r.get(j, 0) for j in range(n)] for r in sparse_rows]


def smith_normal_form(m: IntegerMatrix, want_transforms: bool = False) -> SmithForm:
    s = _SparseSmith(m, want_transforms)
    pivots = s.run()
    diag = [v for _, _, v in pivots]
    k = len(diag)
    if want_transforms:
        prow = [i for i, _, _ in pivots]
        pcol = [j for _, j, _ in pivots]
        rest_r = [i for i in range(m.rows) if i not in set(prow)]
        rest_c = [j for j in range(m.cols) if j not in set(pcol)]
        U = [dict(s.U[i]) for i in prow + rest_r]
        V = [dict(s.V[j]) for j in pcol + rest_c]
    for a in range(k):
        if diag[a] < 0:
            diag[a] = -diag[a]
            if want_transforms:
                U[a] = {c: -v for c, v in U[a].items()}
    for a in range(k):
        for b in range(a + 1, k):
            x, y = diag[a], diag[b]
            if y % x == 0:
                continue
            g, sa, tb = _xgcd(x, y)
            diag[a], diag[b] = g, x // g * y
            if want_transforms:
                # [[s, t], [-y/g, x/g]] on rows; [[1, -t y/g], [1, s x/g]] on columns
                ua, ub = U[a], U[b]
                new_a = {}
                _axpy(new_a, ua, -sa)
                _axpy(new_a, ub, -tb)
                new_b = {}
                _axpy(new_b, ua, y // g)
                _axpy(new_b, ub, -(x // g))
                U[a], U[b] = new_a, new_b
                va, vb = V[a], V[b]
                new_va = {}
                _axpy(new_va, va, -1)
                _axpy(new_va, vb, -1)
                new_vb = {}
                _axpy(new_vb, va, tb * y // g)
                _axpy(new_vb, vb, -(sa * x // g))
                V[a], V[b] = new_va, new_vb
    if not want_transforms:
        return SmithForm(tuple(diag))
    left = tuple(tuple(r) for r in _dense(U, m.rows))
    vcols = _dense(V, m.cols)
    right = tuple(tuple(vcols[c][r] for c in range(m.cols)) for r in range(m.cols))
    return SmithForm(tuple(diag), left, right)


def _xgcd(a, b):
    """(g, s, t) with s*a + t*b = g = gcd(a, b) > 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _invariants_from_smith(ngens, sf: SmithForm) -> AbelianInvariants:
    return AbelianInvariants(ngens - sf.rank, tuple(d for d in sf.invariant_factors if d > 1))


def abelian_invariants(p: Presentation) -> AbelianInvariants:
    """Betti number and torsion of the abelianization of ``p``."""
    sf = smith_normal_form(abelianized_relation_matrix(p))
    return _invariants_from_smith(p.ngens, sf)


def abelian_quotient_map(p: Presentation) -> tuple:
    """Invariants plus an evaluator ``word -> tuple`` into Z^betti + Z/d1 + ...

    Free coordinates come first, then one residue per torsion factor.
    """
    m = abelianized_relation_matrix(p)
    sf = smith_normal_form(m, want_transforms=True)
    inv = _invariants_from_smith(p.ngens, sf)
    V = sf.right_transform
    n = p.ngens
    k = sf.rank
    torsion_cols = [(j, d) for j, d in enumerate(sf.invariant_factors) if d > 1]
    free_cols = list(range(k, n))

    def evaluate(word) -> tuple:
        x = exponent_sums(word, n)
        y = [sum(x[i] * V[i][j] for i in range(n) if x[i]) for j in range(n)]
        return tuple(y[j] for j in free_cols) + tuple(y[j] % d for j, d in torsion_cols)

    return inv, evaluate
