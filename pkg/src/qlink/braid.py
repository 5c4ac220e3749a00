"""Braid words, their text grammar, and Markov moves.

Text grammar: ``"<strands>; <k1> <k2> ..."`` where each ``k`` is a nonzero
integer; ``k`` stands for the Artin generator sigma_|k| and a negative sign
for its inverse.  ``"2; 1 1 1"`` is the trefoil, ``"1;"`` the unknot.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

__all__ = [
    "BraidWord",
    "ParseError",
    "IndexOutOfRange",
    "parse_braid",
    "writhe",
    "conjugate",
    "stabilize",
    "random_braid",
    "read_braid_file",
]


class ParseError(ValueError):
    pass


class IndexOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise IndexOutOfRange(f"strand count must be positive, got {self.strands}")
        letters = tuple((int(i), int(e)) for i, e in self.letters)
        for i, e in letters:
            if e not in (1, -1):
                raise ValueError(f"letter sign must be +1 or -1, got {e}")
            if not 1 <= i <= self.strands - 1:
                raise IndexOutOfRange(f"generator index {i} outside 1..{self.strands - 1}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def from_ints(cls, strands: int, word) -> BraidWord:
        return cls(strands, tuple((abs(k), 1 if k > 0 else -1) for k in word))

    def ints(self) -> list[int]:
        return [i * e for i, e in self.letters]

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        if self.strands != other.strands:
            raise ValueError("cannot concatenate braids on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, tuple((i, -e) for i, e in reversed(self.letters)))

    def mirror(self) -> BraidWord:
        """Flip every crossing; the closure is the mirror image link."""
        return BraidWord(self.strands, tuple((i, -e) for i, e in self.letters))

    def render(self) -> str:
        """Canonical text form, the inverse of :func:`parse_braid`."""
        word = " ".join(str(k) for k in self.ints())
        return f"{self.strands}; {word}" if word else f"{self.strands};"

    def render_sigma(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"σ{i}" if e > 0 else f"σ{i}^-1" for i, e in self.letters)

    def __str__(self):
        return self.render()


_GRAMMAR = re.compile(r"^\s*(\d+)\s*;(.*)$", re.DOTALL)


def parse_braid(text: str) -> BraidWord:
    m = _GRAMMAR.match(text)
    if m is None:
        raise ParseError(f"expected '<strands>; <word>', got {text!r}")
    strands = int(m.group(1))
    if strands < 1:
        raise ParseError("strand count must be a positive integer")
    word = []
    for tok in m.group(2).split():
        try:
            k = int(tok)
        except ValueError:
            raise ParseError(f"not an integer generator: {tok!r}") from None
        if k == 0:
            raise ParseError("generator 0 is not allowed")
        if abs(k) >= strands:
            raise IndexOutOfRange(f"generator {k} needs more than {strands} strands")
        word.append(k)
    return BraidWord.from_ints(strands, word)


def writhe(b: BraidWord) -> int:
    return sum(e for _, e in b.letters)


def conjugate(b: BraidWord, i: int, sign: int) -> BraidWord:
    """Markov move I: ``sigma_i^sign * b * sigma_i^-sign``."""
    if not 1 <= i <= b.strands - 1:
        raise IndexOutOfRange(f"generator index {i} outside 1..{b.strands - 1}")
    return BraidWord(b.strands, ((i, sign),) + b.letters + ((i, -sign),))


def stabilize(b: BraidWord, sign: int) -> BraidWord:
    """Markov move II: add a strand and a crossing sigma_l^sign with it."""
    return BraidWord(b.strands + 1, b.letters + ((b.strands, sign),))


def random_braid(strands: int, length: int, seed: int) -> BraidWord:
    if strands < 2:
        raise ValueError("random braids need at least 2 strands")
    rng = random.Random(seed)
    letters = tuple((rng.randint(1, strands - 1), rng.choice((1, -1))) for _ in range(length))
    return BraidWord(strands, letters)


def read_braid_file(path: str | Path) -> Iterator[tuple[int, BraidWord, str | None]]:
    """Yield ``(line_number, braid, annotation)`` for each braid line.

    Blank lines and lines starting with ``#`` are skipped.  Anything after a
    ``|`` is returned verbatim as an annotation (the corpus uses it for an
    expected Alexander polynomial).
    """
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            text, _, note = stripped.partition("|")
            try:
                braid = parse_braid(text)
            except (ParseError, IndexOutOfRange) as exc:
                raise type(exc)(f"{path}:{lineno}: {exc}") from None
            yield lineno, braid, (note.strip() or None)
