"""Linking numbers of pure braids and the mod-2 abelianization of PB_n."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .braid_core import BraidWord, pairs


class NotPureError(ValueError):
    pass


def _pair_index(n: int, i: int, j: int) -> int:
    # lexicographic rank of (i, j), 1 <= i < j <= n
    if i > j:
        i, j = j, i
    return (i - 1) * n - (i - 1) * i // 2 + (j - i - 1)


@dataclass(frozen=True)
class ExponentVector:
    strands: int
    components: tuple[int, ...]

    def __post_init__(self) -> None:
        comps = tuple(int(c) for c in self.components)
        if len(comps) != self.strands * (self.strands - 1) // 2:
            raise ValueError("wrong number of components")
        object.__setattr__(self, "components", comps)

    @classmethod
    def zero(cls, n: int) -> ExponentVector:
        return cls(n, (0,) * (n * (n - 1) // 2))

    @classmethod
    def basis(cls, n: int, i: int, j: int) -> ExponentVector:
        comps = [0] * (n * (n - 1) // 2)
        comps[_pair_index(n, i, j)] = 1
        return cls(n, tuple(comps))

    def __getitem__(self, pair: tuple[int, int]) -> int:
        return self.components[_pair_index(self.strands, *pair)]

    def __add__(self, other: ExponentVector) -> ExponentVector:
        if other.strands != self.strands:
            raise ValueError("strand mismatch")
        return ExponentVector(
            self.strands, tuple(a + b for a, b in zip(self.components, other.components))
        )

    def scale(self, c: int) -> ExponentVector:
        return ExponentVector(self.strands, tuple(c * a for a in self.components))

    def mod2(self) -> Mod2Vector:
        return Mod2Vector(self.strands, tuple(a % 2 for a in self.components))

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.strands,
            "pairs": [
                [i, j, v] for (i, j), v in zip(pairs(self.strands), self.components) if v
            ],
        }


@dataclass(frozen=True)
class Mod2Vector:
    strands: int
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        bits = tuple(int(b) % 2 for b in self.bits)
        if len(bits) != self.strands * (self.strands - 1) // 2:
            raise ValueError("wrong number of components")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def zero(cls, n: int) -> Mod2Vector:
        return cls(n, (0,) * (n * (n - 1) // 2))

    def __getitem__(self, pair: tuple[int, int]) -> int:
        return self.bits[_pair_index(self.strands, *pair)]

    def __add__(self, other: Mod2Vector) -> Mod2Vector:
        if other.strands != self.strands:
            raise ValueError("strand mismatch")
        return Mod2Vector(self.strands, tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def is_zero(self) -> bool:
        return not any(self.bits)

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.strands,
            "pairs": [[i, j, b] for (i, j), b in zip(pairs(self.strands), self.bits) if b],
        }


def _scan(w: BraidWord) -> tuple[list[int], list[int]]:
    n = w.strands
    at = list(range(1, n + 1))
    counts = [0] * (n * (n - 1) // 2)
    for k in w.letters:
        p = abs(k) - 1
        a, b = at[p], at[p + 1]
        counts[_pair_index(n, a, b)] += 1 if k > 0 else -1
        at[p], at[p + 1] = b, a
    return counts, at


def crossing_counts(w: BraidWord) -> list[int]:
    """Signed crossing count for every strand pair, in lexicographic pair order.

    Strands are labelled by their starting position.  Defined for any word.
    """
    return _scan(w)[0]


def linking_vector(w: BraidWord) -> ExponentVector:
    counts, at = _scan(w)
    if at != sorted(at):
        raise NotPureError("not a pure braid")
    return ExponentVector(w.strands, tuple(c // 2 for c in counts))


def phi_mod2(w: BraidWord) -> Mod2Vector:
    return linking_vector(w).mod2()
