"""The reduced integral Burau representation and congruence subgroups.

Right multiplication by a generator image is a single column operation: for
sigma_i (1-based) with d = n-1 and c = i-1 (0-based column),

    col_c  <-  col_c + col_{c+1} - col_{c-1}

where a term is dropped if its column falls outside 0..d-1.  The inverse
generator flips both signs.  This reproduces the 2x2 end blocks and the 3x3
interior block exactly, and lets both the integer and the mod-m products run
in O(d) per letter.
"""

from __future__ import annotations

from .braid_core import BraidWord
from .matrix import IntegerMatrix, ModularMatrix

DEFAULT_WORD_CAP = 10_000


class LevelError(ValueError):
    pass


class WordTooLong(ValueError):
    pass


def _check_level(level: int) -> None:
    if level < 2:
        raise LevelError(f"congruence level must be >= 2, got {level}")


def _apply_letter(cols: list[list[int]], k: int, m: int | None) -> None:
    d = len(cols)
    c = abs(k) - 1
    s = 1 if k > 0 else -1
    col = cols[c]
    if c + 1 < d:
        right = cols[c + 1]
        col = [x + s * y for x, y in zip(col, right)]
    if c >= 1:
        left = cols[c - 1]
        col = [x - s * y for x, y in zip(col, left)]
    if m is not None:
        col = [x % m for x in col]
    cols[c] = col


def _product(w: BraidWord, m: int | None, word_cap: int | None) -> list[list[int]]:
    if word_cap is not None and len(w) > word_cap:
        raise WordTooLong(f"word has {len(w)} letters, cap is {word_cap}")
    d = w.strands - 1
    cols = [[int(r == c) for r in range(d)] for c in range(d)]
    for k in w.letters:
        _apply_letter(cols, k, m)
    return [list(r) for r in zip(*cols)]


def generator_matrix(n: int, i: int, sign: int = 1) -> IntegerMatrix:
    if n < 2 or not (1 <= i <= n - 1):
        raise ValueError(f"generator index {i} out of range for B_{n}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return burau_int(BraidWord(n, (sign * i,)))


def burau_int(w: BraidWord, word_cap: int | None = DEFAULT_WORD_CAP) -> IntegerMatrix:
    """rho_{-1}(w) over Z; the leftmost letter is the leftmost factor."""
    return IntegerMatrix(_product(w, None, word_cap))


def burau_mod(
    w: BraidWord, m: int, word_cap: int | None = DEFAULT_WORD_CAP
) -> ModularMatrix:
    """r_m(rho_{-1}(w)), reducing after every letter."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    return ModularMatrix(m, _product(w, m, word_cap))


def reduce_mod(M: IntegerMatrix, m: int) -> ModularMatrix:
    return ModularMatrix(m, M.rows)


def is_congruence_member(
    w: BraidWord, level: int, word_cap: int | None = DEFAULT_WORD_CAP
) -> bool:
    _check_level(level)
    return burau_mod(w, level, word_cap).is_identity()
