"""Braid words on n strands and the permutation map to S_n.

A word is a tuple of signed, 1-based generator indices: ``+k`` is sigma_k and
``-k`` its inverse.  Words are read left to right, and every homomorphism in
this package respects that order, e.g. ``burau(w1 w2) = burau(w1) burau(w2)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence


class BraidError(ValueError):
    """Raised for malformed words or incompatible strand counts."""


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.strands < 2:
            raise BraidError(f"need at least 2 strands, got {self.strands}")
        letters = tuple(int(k) for k in self.letters)
        for k in letters:
            if k == 0 or abs(k) > self.strands - 1:
                raise BraidError(f"letter {k} out of range for B_{self.strands}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, n: int, text: str) -> BraidWord:
        """Parse whitespace-separated signed integers, e.g. ``"1 -2 1"``."""
        try:
            letters = tuple(int(tok) for tok in text.split())
        except ValueError as exc:
            raise BraidError(f"cannot parse word {text!r}") from exc
        return cls(n, letters)

    @classmethod
    def generator(cls, n: int, i: int, sign: int = 1) -> BraidWord:
        return cls(n, (i if sign > 0 else -i,))

    def __str__(self) -> str:
        return " ".join(str(k) for k in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        return compose(self, other)

    def __pow__(self, k: int) -> BraidWord:
        return power(self, k)

    def __invert__(self) -> BraidWord:
        return inverse(self)


def identity(n: int) -> BraidWord:
    return BraidWord(n, ())


def compose(w1: BraidWord, w2: BraidWord) -> BraidWord:
    if w1.strands != w2.strands:
        raise BraidError(f"strand mismatch: {w1.strands} vs {w2.strands}")
    return BraidWord(w1.strands, w1.letters + w2.letters)


def compose_all(n: int, words: Iterable[BraidWord]) -> BraidWord:
    letters: list[int] = []
    for w in words:
        if w.strands != n:
            raise BraidError(f"strand mismatch: {n} vs {w.strands}")
        letters.extend(w.letters)
    return BraidWord(n, tuple(letters))


def inverse(w: BraidWord) -> BraidWord:
    return BraidWord(w.strands, tuple(-k for k in reversed(w.letters)))


def free_reduce(w: BraidWord) -> BraidWord:
    # a single stack pass reaches the unique free normal form
    stack: list[int] = []
    for k in w.letters:
        if stack and stack[-1] == -k:
            stack.pop()
        else:
            stack.append(k)
    return BraidWord(w.strands, tuple(stack))


def power(w: BraidWord, k: int) -> BraidWord:
    base = w if k >= 0 else inverse(w)
    return BraidWord(w.strands, base.letters * abs(k))


def conjugate(w: BraidWord, by: BraidWord) -> BraidWord:
    """Return ``by * w * by^-1``."""
    return compose(compose(by, w), inverse(by))


def pure_generator(n: int, i: int, j: int) -> BraidWord:
    """The pure braid generator A_{i,j}.

    This is sigma_i^2 conjugated by sigma_{j-1} ... sigma_{i+1}; for
    ``j == i + 1`` the conjugator is empty.
    """
    if not (1 <= i < j <= n):
        raise BraidError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    prefix = tuple(range(j - 1, i, -1))
    letters = prefix + (i, i) + tuple(-k for k in reversed(prefix))
    return BraidWord(n, letters)


def pairs(n: int) -> list[tuple[int, int]]:
    """Strand pairs (i, j), i < j, in lexicographic order."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}; ``images[x-1]`` is the image of x."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> Permutation:
        images = list(range(1, n + 1))
        images[a - 1], images[b - 1] = b, a
        return cls(tuple(images))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def then(self, other: Permutation) -> Permutation:
        """Apply ``self`` first, then ``other``."""
        if other.size != self.size:
            raise ValueError("size mismatch")
        return Permutation(tuple(other(self(x)) for x in range(1, self.size + 1)))

    def inverse(self) -> Permutation:
        inv = [0] * self.size
        for x, y in enumerate(self.images, start=1):
            inv[y - 1] = x
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(y == x for x, y in enumerate(self.images, start=1))


def permutation_of(w: BraidWord) -> Permutation:
    """Image of ``w`` in S_n; sigma_k maps to (k, k+1), leftmost letter acts first.

    The image of x is the final position of the strand that starts at x.
    """
    # where[s] = current position of strand s; at[p] = strand at position p
    where = list(range(w.strands))
    at = list(range(w.strands))
    for k in w.letters:
        p = abs(k) - 1
        a, b = at[p], at[p + 1]
        at[p], at[p + 1] = b, a
        where[a], where[b] = p + 1, p
    return Permutation(tuple(x + 1 for x in where))


def sorting_word(perm: Permutation) -> list[int]:
    """Adjacent transposition indices whose product, left to right, inverts ``perm``.

    Appending letters sigma_k^{+-e} for each returned k to a word with
    permutation ``perm`` (with e odd) gives a word with trivial permutation.
    """
    # at[p] = strand currently at position p; bubble strands home
    at = [0] * perm.size
    for x in range(1, perm.size + 1):
        at[perm(x) - 1] = x
    out: list[int] = []
    for _ in range(perm.size):
        swapped = False
        for p in range(perm.size - 1):
            if at[p] > at[p + 1]:
                at[p], at[p + 1] = at[p + 1], at[p]
                out.append(p + 1)
                swapped = True
        if not swapped:
            break
    return out


def make_pure(w: BraidWord, exponent: int = 1) -> BraidWord:
    """Append sigma_k^exponent letters so the result has trivial permutation.

    ``exponent`` must be odd for the appended powers to act as transpositions.
    """
    if exponent % 2 == 0:
        raise BraidError("exponent must be odd")
    fix: list[int] = []
    for k in sorting_word(permutation_of(w)):
        fix.extend([k if exponent > 0 else -k] * abs(exponent))
    return BraidWord(w.strands, w.letters + tuple(fix))


def random_word(
    n: int,
    length: int,
    alphabet: Sequence[BraidWord],
    seed: int | random.Random,
) -> BraidWord:
    """Concatenate ``length`` uniform picks from ``alphabet`` and its inverses.

    ``seed`` may be an int or an existing ``random.Random`` so a harness can
    thread one generator through many draws.
    """
    if not alphabet:
        raise BraidError("empty alphabet")
    for a in alphabet:
        if a.strands != n:
            raise BraidError(f"alphabet word on {a.strands} strands, expected {n}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    choices = list(alphabet) + [inverse(a) for a in alphabet]
    letters: list[int] = []
    for _ in range(length):
        letters.extend(rng.choice(choices).letters)
    return BraidWord(n, tuple(letters))


def artin_generators(n: int) -> list[BraidWord]:
    return [BraidWord(n, (i,)) for i in range(1, n)]
