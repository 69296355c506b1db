"""Exact square matrices over Z and Z/mZ.

Entries are plain Python ints, so products never overflow.  Both types are
immutable and hashable; ``ModularMatrix.key()`` is the canonical byte encoding
used by the group enumeration code.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from typing import Any, Sequence

Rows = tuple[tuple[int, ...], ...]


def _as_rows(rows: Sequence[Sequence[int]]) -> Rows:
    out = tuple(tuple(int(x) for x in row) for row in rows)
    d = len(out)
    if any(len(row) != d for row in out):
        raise ValueError("matrix must be square")
    return out


def _matmul(a: Rows, b: Rows) -> list[list[int]]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def det_bareiss(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    m = [list(r) for r in rows]
    d = len(m)
    if d == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(d - 1):
        if m[k][k] == 0:
            for r in range(k + 1, d):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, d):
            for j in range(k + 1, d):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[d - 1][d - 1]


def adjugate(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    d = len(rows)
    if d == 1:
        return [[1]]
    adj = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            minor = [
                [rows[r][c] for c in range(d) if c != j] for r in range(d) if r != i
            ]
            adj[j][i] = (-1) ** (i + j) * det_bareiss(minor)
    return adj


@dataclass(frozen=True)
class IntegerMatrix:
    rows: Rows

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", _as_rows(self.rows))

    @classmethod
    def identity(cls, d: int) -> IntegerMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return IntegerMatrix(_matmul(self.rows, other.rows))

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix(tuple(zip(*self.rows)))

    def __neg__(self) -> IntegerMatrix:
        return IntegerMatrix([[-x for x in r] for r in self.rows])

    def __add__(self, other: IntegerMatrix) -> IntegerMatrix:
        return IntegerMatrix(
            [[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: IntegerMatrix) -> IntegerMatrix:
        return self + (-other)

    def scale(self, c: int) -> IntegerMatrix:
        return IntegerMatrix([[c * x for x in r] for r in self.rows])

    def det(self) -> int:
        return det_bareiss(self.rows)

    def is_identity(self) -> bool:
        return self == IntegerMatrix.identity(self.dim)

    def to_json(self) -> dict[str, Any]:
        # bigints travel as decimal strings
        return {"m": None, "d": self.dim, "rows": [[str(x) for x in r] for r in self.rows]}

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{x:>4d}" for x in r) for r in self.rows)


@dataclass(frozen=True)
class ModularMatrix:
    modulus: int
    rows: Rows

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        m = self.modulus
        object.__setattr__(
            self, "rows", tuple(tuple(x % m for x in r) for r in _as_rows(self.rows))
        )

    @classmethod
    def identity(cls, d: int, m: int) -> ModularMatrix:
        return cls(m, IntegerMatrix.identity(d).rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __matmul__(self, other: ModularMatrix) -> ModularMatrix:
        if other.modulus != self.modulus or other.dim != self.dim:
            raise ValueError("modulus or dimension mismatch")
        return ModularMatrix(self.modulus, _matmul(self.rows, other.rows))

    def det(self) -> int:
        return det_bareiss(self.rows) % self.modulus

    def is_invertible(self) -> bool:
        return math.gcd(self.det(), self.modulus) == 1

    def inverse(self) -> ModularMatrix:
        m = self.modulus
        det = self.det()
        if math.gcd(det, m) != 1:
            raise ValueError("matrix is not invertible mod m")
        c = pow(det, -1, m)
        return ModularMatrix(m, [[c * x for x in r] for r in adjugate(self.rows)])

    def is_identity(self) -> bool:
        return self == ModularMatrix.identity(self.dim, self.modulus)

    def key(self) -> bytes:
        """Canonical encoding: modulus, dimension, then row-major residues."""
        return struct.pack(">IB", self.modulus, self.dim) + residue_bytes(
            self.modulus, [x for r in self.rows for x in r]
        )

    def to_json(self) -> dict[str, Any]:
        return {"m": self.modulus, "d": self.dim, "rows": [list(r) for r in self.rows]}

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{x:>3d}" for x in r) for r in self.rows)


def residue_width(m: int) -> int:
    return 1 if m <= 256 else 2 if m <= 65536 else 4


def residue_bytes(m: int, flat: Sequence[int]) -> bytes:
    fmt = {1: "B", 2: "H", 4: "I"}[residue_width(m)]
    return struct.pack(f">{len(flat)}{fmt}", *flat)


def matrix_from_json(doc: dict[str, Any]) -> IntegerMatrix | ModularMatrix:
    rows = [[int(x) for x in r] for r in doc["rows"]]
    if len(rows) != doc["d"]:
        raise ValueError("row count does not match 'd'")
    if doc.get("m") is None:
        return IntegerMatrix(rows)
    return ModularMatrix(int(doc["m"]), rows)
