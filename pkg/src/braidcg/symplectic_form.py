"""Bilinear forms preserved by the integral Burau representation.

``invariant_forms`` solves G^T J G = J for every generator image G by exact
rational elimination.  For odd n the solution space contains a nondegenerate
alternating form, i.e. the image lands in a symplectic group.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .braid_core import BraidWord
from .burau_rep import burau_int, generator_matrix
from .matrix import IntegerMatrix


@dataclass(frozen=True)
class FormSpace:
    strands: int
    basis: tuple[IntegerMatrix, ...]

    @property
    def dim(self) -> int:
        return self.strands - 1

    @property
    def rank(self) -> int:
        return len(self.basis)

    def combination(self, coeffs: Sequence[int]) -> IntegerMatrix:
        d = self.dim
        acc = [[0] * d for _ in range(d)]
        for c, J in zip(coeffs, self.basis):
            for r in range(d):
                for s in range(d):
                    acc[r][s] += c * J.rows[r][s]
        return IntegerMatrix(acc)


def nullspace(rows: list[list[int]], ncols: int) -> list[list[Fraction]]:
    """Basis of the rational nullspace of an integer matrix (reduced row echelon)."""
    a = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][f]
        basis.append(v)
    return basis


def _integral(v: Sequence[Fraction]) -> list[int]:
    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    content = 0
    for x in ints:
        content = gcd(content, x)
    ints = [x // content for x in ints]
    first = next(x for x in ints if x != 0)
    return ints if first > 0 else [-x for x in ints]


def form_equations(gens: Sequence[IntegerMatrix]) -> list[list[int]]:
    """Rows of the linear system G^T J G - J = 0 in the d*d unknowns of J."""
    d = gens[0].dim
    eqs = []
    for G in gens:
        g = G.rows
        # (G^T J G)[r][s] = sum_{a,b} g[a][r] J[a][b] g[b][s]
        for r in range(d):
            for s in range(d):
                row = [g[a][r] * g[b][s] for a in range(d) for b in range(d)]
                row[r * d + s] -= 1
                if any(row):
                    eqs.append(row)
    return eqs


def invariant_forms(n: int) -> FormSpace:
    if n < 3:
        raise ValueError("need n >= 3")
    d = n - 1
    gens = [generator_matrix(n, i) for i in range(1, n)]
    vecs = nullspace(form_equations(gens), d * d)
    basis = []
    for v in vecs:
        ints = _integral(v)
        basis.append(IntegerMatrix([ints[r * d : (r + 1) * d] for r in range(d)]))
    return FormSpace(n, tuple(basis))


def is_alternating_nondegenerate(J: IntegerMatrix) -> bool:
    d = J.dim
    rows = J.rows
    for r in range(d):
        if rows[r][r] != 0:
            return False
        for s in range(d):
            if rows[r][s] != -rows[s][r]:
                return False
    return J.det() != 0


def preserves(M: IntegerMatrix, J: IntegerMatrix) -> bool:
    return M.transpose() @ J @ M == J


def symplectic_witness(space: FormSpace, bound: int = 2) -> IntegerMatrix | None:
    """A nondegenerate alternating element of ``space``, or None.

    The antisymmetric part of an invariant form is again invariant, so the
    search runs over small integer combinations of antisymmetrized basis
    elements.
    """
    if not space.basis:
        return None
    alt = []
    for J in space.basis:
        A = J - J.transpose()
        if any(any(r) for r in A.rows):
            alt.append(A)
    if not alt:
        return None
    reduced = [IntegerMatrix(_integral_matrix(A)) for A in alt]
    for A in reduced:
        if is_alternating_nondegenerate(A):
            return A
    sub = FormSpace(space.strands, tuple(reduced))
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(reduced)):
        if not any(coeffs):
            continue
        A = sub.combination(coeffs)
        if is_alternating_nondegenerate(A):
            return IntegerMatrix(_integral_matrix(A))
    return None


def _integral_matrix(A: IntegerMatrix) -> list[list[int]]:
    d = A.dim
    flat = _integral([Fraction(x) for r in A.rows for x in r])
    return [flat[r * d : (r + 1) * d] for r in range(d)]


def check_invariance(J: IntegerMatrix, words: Sequence[BraidWord]) -> list[BraidWord]:
    """Words whose Burau image fails to preserve ``J``."""
    return [w for w in words if not preserves(burau_int(w), J)]
