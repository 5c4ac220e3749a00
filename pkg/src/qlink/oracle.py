"""Alexander polynomial from the reduced Burau representation.

This is the independent ground truth for the quantum pipelines:
``Delta(t) ~ det(Burau(b) - Id) * (t - 1) / (t^l - 1)`` up to a unit.
Entries live in Z[s^2, s^-2] with ``t = s^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .braid import BraidWord
from .laurent import LaurentPoly, NonExactDivision, normalize_or_zero

__all__ = ["BurauMatrix", "burau_generator", "burau_reduced", "alexander_oracle", "NonExactDivision"]

_ZERO = LaurentPoly({})
_ONE = LaurentPoly({0: 1})


@dataclass(frozen=True)
class BurauMatrix:
    entries: tuple[tuple[LaurentPoly, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, m: int) -> BurauMatrix:
        return cls(tuple(tuple(_ONE if i == j else _ZERO for j in range(m)) for i in range(m)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[LaurentPoly]]) -> BurauMatrix:
        return cls(tuple(tuple(r) for r in rows))

    def __matmul__(self, other: BurauMatrix) -> BurauMatrix:
        m = self.size
        A, B = self.entries, other.entries
        rows = []
        for i in range(m):
            row = []
            for j in range(m):
                acc = _ZERO
                for k in range(m):
                    if A[i][k] and B[k][j]:
                        acc = acc + A[i][k] * B[k][j]
                row.append(acc)
            rows.append(tuple(row))
        return BurauMatrix(tuple(rows))

    def __sub__(self, other: BurauMatrix) -> BurauMatrix:
        return BurauMatrix(
            tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self.entries, other.entries))
        )

    def det(self) -> LaurentPoly:
        """Fraction-free (Bareiss) elimination; every division is exact."""
        m = self.size
        if m == 0:
            return _ONE
        a = [list(r) for r in self.entries]
        sign = 1
        prev = _ONE
        for k in range(m - 1):
            if not a[k][k]:
                for r in range(k + 1, m):
                    if a[r][k]:
                        a[k], a[r] = a[r], a[k]
                        sign = -sign
                        break
                else:
                    return _ZERO
            for i in range(k + 1, m):
                for j in range(k + 1, m):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).divexact(prev)
            prev = a[k][k]
        d = a[m - 1][m - 1]
        return -d if sign < 0 else d


def burau_generator(strands: int, i: int, sign: int, var: str = "s") -> BurauMatrix:
    """Reduced Burau image of ``sigma_i^sign`` (size ``strands - 1``)."""
    m = strands - 1
    t = LaurentPoly.monomial(2, var=var)
    ti = LaurentPoly.monomial(-2, var=var)
    rows = [[_ONE if r == c else _ZERO for c in range(m)] for r in range(m)]
    c = i - 1
    if sign > 0:
        rows[c][c] = -t
        if c > 0:
            rows[c][c - 1] = t
        if c < m - 1:
            rows[c][c + 1] = _ONE
    else:
        rows[c][c] = -ti
        if c > 0:
            rows[c][c - 1] = _ONE
        if c < m - 1:
            rows[c][c + 1] = ti
    return BurauMatrix.from_rows(rows)


def burau_reduced(b: BraidWord, var: str = "s") -> BurauMatrix:
    if b.strands < 2:
        raise ValueError("the reduced Burau representation needs at least 2 strands")
    out = BurauMatrix.identity(b.strands - 1)
    for i, e in b.letters:
        out = out @ burau_generator(b.strands, i, e, var)
    return out


def alexander_oracle(b: BraidWord, var: str = "s") -> LaurentPoly:
    """Unit-normalized Alexander polynomial of the closure of ``b`` in ``s = t^(1/2)``."""
    if b.strands == 1:
        return LaurentPoly({0: 1}, var)
    m = b.strands - 1
    M = burau_reduced(b, var)
    d = (M - BurauMatrix.identity(m)).det()
    cyclotomic = LaurentPoly({2 * k: 1 for k in range(b.strands)}, var)
    try:
        q = d.divexact(cyclotomic)
    except NonExactDivision as exc:
        raise NonExactDivision(f"Burau determinant of {b} not divisible by (t^l-1)/(t-1)") from exc
    return normalize_or_zero(q.rename(var))
