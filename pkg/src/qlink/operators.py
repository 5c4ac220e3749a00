"""Sparse square matrices over LaurentPoly.

Rows are stored as ``{row: {col: poly}}`` with only nonzero entries.  These
are used for the local braidings (at most 64x64) and for exact checks on
triple tensor spaces (at most 512x512); the global braid-closure evaluation
never materializes one of these.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .laurent import LaurentPoly

__all__ = ["SparseOperator", "kron_all"]

ZERO = LaurentPoly({})
ONE = LaurentPoly({0: 1})


class SparseOperator:
    __slots__ = ("dim", "rows")

    def __init__(self, dim: int, rows: dict[int, dict[int, LaurentPoly]] | None = None):
        self.dim = dim
        clean: dict[int, dict[int, LaurentPoly]] = {}
        for i, row in (rows or {}).items():
            if not 0 <= i < dim:
                raise IndexError(f"row {i} out of range for dimension {dim}")
            kept = {}
            for j, p in row.items():
                if not 0 <= j < dim:
                    raise IndexError(f"column {j} out of range for dimension {dim}")
                if isinstance(p, int):
                    p = LaurentPoly({0: p})
                if p:
                    kept[j] = p
            if kept:
                clean[i] = kept
        self.rows = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, dim: int) -> SparseOperator:
        return cls(dim, {i: {i: ONE} for i in range(dim)})

    @classmethod
    def diagonal(cls, entries: Sequence[LaurentPoly | int]) -> SparseOperator:
        return cls(len(entries), {i: {i: p} for i, p in enumerate(entries)})

    @classmethod
    def from_dense(cls, matrix: Sequence[Sequence[LaurentPoly | int]]) -> SparseOperator:
        dim = len(matrix)
        for row in matrix:
            if len(row) != dim:
                raise ValueError("matrix must be square")
        return cls(dim, {i: dict(enumerate(row)) for i, row in enumerate(matrix)})

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> SparseOperator:
        """Matrix sending basis vector ``j`` to ``perm[j]``."""
        return cls(len(perm), {perm[j]: {j: ONE} for j in range(len(perm))})

    # -- access -------------------------------------------------------------

    def __getitem__(self, key: tuple[int, int]) -> LaurentPoly:
        i, j = key
        return self.rows.get(i, {}).get(j, ZERO)

    def entries(self) -> Iterable[tuple[int, int, LaurentPoly]]:
        for i in sorted(self.rows):
            row = self.rows[i]
            for j in sorted(row):
                yield i, j, row[j]

    def columns(self) -> dict[int, dict[int, LaurentPoly]]:
        """Column-indexed view ``{col: {row: poly}}``."""
        cols: dict[int, dict[int, LaurentPoly]] = {}
        for i, row in self.rows.items():
            for j, p in row.items():
                cols.setdefault(j, {})[i] = p
        return cols

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def to_dense(self) -> list[list[LaurentPoly]]:
        return [[self[i, j] for j in range(self.dim)] for i in range(self.dim)]

    def diagonal_entries(self) -> list[LaurentPoly]:
        return [self[i, i] for i in range(self.dim)]

    # -- algebra ------------------------------------------------------------

    def __matmul__(self, other: SparseOperator) -> SparseOperator:
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        out: dict[int, dict[int, LaurentPoly]] = {}
        orows = other.rows
        for i, row in self.rows.items():
            acc: dict[int, LaurentPoly] = {}
            for k, a in row.items():
                for j, b in orows.get(k, {}).items():
                    prev = acc.get(j)
                    acc[j] = a * b if prev is None else prev + a * b
            out[i] = acc
        return SparseOperator(self.dim, out)

    def __add__(self, other: SparseOperator) -> SparseOperator:
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        out = {i: dict(r) for i, r in self.rows.items()}
        for i, j, p in other.entries():
            row = out.setdefault(i, {})
            row[j] = row[j] + p if j in row else p
        return SparseOperator(self.dim, out)

    def __sub__(self, other: SparseOperator) -> SparseOperator:
        return self + other.scale(LaurentPoly({0: -1}))

    def scale(self, c: LaurentPoly) -> SparseOperator:
        return SparseOperator(self.dim, {i: {j: p * c for j, p in r.items()} for i, r in self.rows.items()})

    def map(self, fn: Callable[[LaurentPoly], LaurentPoly]) -> SparseOperator:
        return SparseOperator(self.dim, {i: {j: fn(p) for j, p in r.items()} for i, r in self.rows.items()})

    def kron(self, other: SparseOperator) -> SparseOperator:
        """Tensor product with ``self`` as the more significant factor."""
        m = other.dim
        out: dict[int, dict[int, LaurentPoly]] = {}
        for i, ri in self.rows.items():
            for k, rk in other.rows.items():
                row = out.setdefault(i * m + k, {})
                for j, a in ri.items():
                    for l, b in rk.items():
                        row[j * m + l] = a * b
        return SparseOperator(self.dim * m, out)

    def reindex(self, perm: Sequence[int]) -> SparseOperator:
        """Return ``B`` with ``B[x, y] = self[perm[x], perm[y]]``.

        This is ``P^T A P`` for the permutation matrix ``P`` sending basis
        vector ``x`` to ``perm[x]``.
        """
        inv = [0] * len(perm)
        for x, y in enumerate(perm):
            inv[y] = x
        return SparseOperator(
            self.dim,
            {inv[i]: {inv[j]: p for j, p in r.items()} for i, r in self.rows.items()},
        )

    def partial_trace_second(self, d: int, weights: Sequence[LaurentPoly] | None = None) -> SparseOperator:
        """Trace out the second factor of a ``d*m``-dimensional operator.

        ``weights`` multiplies row ``(a, x)`` by ``weights[x]``, i.e. the
        trace of ``(Id (x) diag(weights)) . self``.
        """
        if self.dim % d:
            raise ValueError("dimension is not a multiple of d")
        m = self.dim // d
        out: dict[int, dict[int, LaurentPoly]] = {}
        for i, row in self.rows.items():
            a, x = divmod(i, m)
            w = ONE if weights is None else weights[x]
            for j, p in row.items():
                b, y = divmod(j, m)
                if y != x:
                    continue
                r = out.setdefault(a, {})
                r[b] = r[b] + w * p if b in r else w * p
        return SparseOperator(d, out)

    def scalar_multiple_of_identity(self) -> LaurentPoly | None:
        """Return ``c`` when ``self == c * Id`` exactly, else None."""
        c = self[0, 0]
        for i, j, p in self.entries():
            if i != j:
                return None
        for i in range(self.dim):
            if self[i, i] != c:
                return None
        return c

    def __eq__(self, other):
        if not isinstance(other, SparseOperator):
            return NotImplemented
        return self.dim == other.dim and self.rows == other.rows

    def __repr__(self):
        return f"SparseOperator(dim={self.dim}, nnz={self.nnz})"

    def to_json(self) -> list[list]:
        """Dense entry list: one list of LaurentPoly JSON values per row."""
        return [[p.to_json() for p in row] for row in self.to_dense()]

    @classmethod
    def from_json(cls, data, var: str = "s") -> SparseOperator:
        return cls.from_dense([[LaurentPoly.from_json(e, var) for e in row] for row in data])


def kron_all(ops: Iterable[SparseOperator]) -> SparseOperator:
    ops = list(ops)
    out = ops[0]
    for op in ops[1:]:
        out = out.kron(op)
    return out
