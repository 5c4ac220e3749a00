"""Vectorized exact evaluation of braid-closure partial traces.

A batch of basis columns of ``V^{(x)l}`` is pushed through the braid word
letter by letter.  The live state is three arrays:

* ``keys``  -- ``slot * D + state``: which input column a row belongs to and
  its global basis index (``D = d^l``, strand 1 is the most significant
  base-``d`` digit);
* ``coef``  -- dense integer coefficient rows, one per key, over a shared
  exponent window starting at ``lo``;
* ``lo``    -- the exponent of ``coef[:, 0]``.

Coefficients are int64 while a growth bound proves the next letter cannot
overflow, and Python ints (object dtype) afterwards, so results stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .laurent import LaurentPoly
from .operators import SparseOperator

_INT64_SAFE = 1 << 62


@dataclass
class LocalOp:
    """A d^2 x d^2 local operator compiled for the kernel."""

    dd: int
    # local column -> [(local row, lowest exponent, int coefficients)]
    by_col: dict[int, list[tuple[int, int, tuple[int, ...]]]]
    emin: int
    emax: int
    growth: int

    @classmethod
    def compile(cls, op: SparseOperator) -> LocalOp:
        by_col: dict[int, list] = {}
        emin, emax = 0, 0
        first = True
        row_norm: dict[int, int] = {}
        for r, c, p in op.entries():
            lo, hi = p.valuation(), p.degree()
            coeffs = tuple(p.coeff(e) for e in range(lo, hi + 1))
            by_col.setdefault(c, []).append((r, lo, coeffs))
            if first:
                emin, emax, first = lo, hi, False
            else:
                emin, emax = min(emin, lo), max(emax, hi)
            row_norm[r] = row_norm.get(r, 0) + p.l1_norm()
        return cls(op.dim, by_col, emin, emax, max(row_norm.values(), default=1))


def _merge(keys: np.ndarray, coef: np.ndarray, lo: int):
    """Sum rows with equal keys, drop zero rows, trim the exponent window."""
    if len(keys) == 0:
        return keys, coef[:, :0], lo
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    coef = coef[order]
    starts = np.flatnonzero(np.concatenate(([True], keys[1:] != keys[:-1])))
    if len(starts) < len(keys):
        coef = np.add.reduceat(coef, starts, axis=0)
        keys = keys[starts]
    nz = coef != 0
    live = nz.any(axis=1)
    if not live.all():
        keys, coef, nz = keys[live], coef[live], nz[live]
    if len(keys) == 0:
        return keys, coef[:, :0], lo
    cols = np.flatnonzero(nz.any(axis=0))
    first, last = cols[0], cols[-1]
    return keys, coef[:, first : last + 1], lo + int(first)


def apply_letter(keys, coef, lo, op: LocalOp, stride: int):
    """Apply ``op`` on the adjacent digits whose lower one has weight ``stride``."""
    if len(keys) == 0:
        return keys, coef, lo
    if coef.dtype != object:
        peak = int(np.abs(coef).max())
        if peak * op.growth >= _INT64_SAFE:
            coef = coef.astype(object)
    dd = op.dd
    loc = (keys // stride) % dd
    order = np.argsort(loc, kind="stable")
    bounds = np.searchsorted(loc[order], np.arange(dd + 1))
    width = coef.shape[1]
    new_width = width + op.emax - op.emin
    out_keys, out_coef = [], []
    for c, entries in op.by_col.items():
        idx = order[bounds[c] : bounds[c + 1]]
        if len(idx) == 0:
            continue
        k = keys[idx]
        block = coef[idx]
        for r, plo, pco in entries:
            out = np.zeros((len(idx), new_width), dtype=coef.dtype)
            off = plo - op.emin
            for t, kc in enumerate(pco):
                if kc == 0:
                    continue
                view = out[:, off + t : off + t + width]
                if kc == 1:
                    view += block
                elif kc == -1:
                    view -= block
                else:
                    view += kc * block
            out_keys.append(k + (r - c) * stride)
            out_coef.append(out)
    if not out_keys:
        return keys[:0], coef[:0, :0], lo
    return _merge(np.concatenate(out_keys), np.concatenate(out_coef), lo + op.emin)


def trace_columns(
    letters: tuple[tuple[int, int], ...],
    strands: int,
    d: int,
    fwd: LocalOp,
    inv: LocalOp,
    pivot: list[LaurentPoly],
    columns: np.ndarray,
    var: str,
) -> dict[tuple[int, int], LaurentPoly]:
    """Contribution of ``columns`` to the pivot-weighted partial trace.

    Returns ``{(a0, b0): poly}`` where ``a0``/``b0`` are the first-strand
    digits of the row/column; only rows agreeing with their column on
    strands 2..l contribute.
    """
    D = d**strands
    R = D // d
    columns = np.asarray(columns, dtype=np.int64)
    keys = np.arange(len(columns), dtype=np.int64) * D + columns
    coef = np.ones((len(columns), 1), dtype=np.int64)
    lo = 0
    for i, e in letters:
        stride = d ** (strands - i - 1)
        keys, coef, lo = apply_letter(keys, coef, lo, fwd if e > 0 else inv, stride)

    out: dict[tuple[int, int], LaurentPoly] = {}
    if len(keys) == 0:
        return out
    slot, state = np.divmod(keys, D)
    start = columns[slot]
    match = (state % R) == (start % R)
    if not match.any():
        return out
    state, start, coef = state[match], start[match], coef[match]
    rest = state % R
    a0 = state // R
    b0 = start // R

    # Group rows by (a0, b0, pivot weight) before leaving numpy.
    weights: dict[LaurentPoly, int] = {}
    weight_list: list[LaurentPoly] = []
    memo: dict[int, int] = {}
    wid = np.empty(len(rest), dtype=np.int64)
    for n, r in enumerate(rest.tolist()):
        w = memo.get(r)
        if w is None:
            p = LaurentPoly({0: 1}, var)
            x = r
            for _ in range(strands - 1):
                x, digit = divmod(x, d)
                p = p * pivot[digit]
            w = weights.get(p)
            if w is None:
                w = weights[p] = len(weight_list)
                weight_list.append(p)
            memo[r] = w
        wid[n] = w
    group = (a0 * d + b0) * len(weight_list) + wid
    if coef.dtype != object and int(np.abs(coef).max()) * len(coef) >= _INT64_SAFE:
        coef = coef.astype(object)
    gkeys, gcoef, glo = _merge(group, coef, lo)
    for g, row in zip(gkeys.tolist(), gcoef):
        ab, w = divmod(g, len(weight_list))
        a, b = divmod(ab, d)
        p = LaurentPoly.from_coeffs(glo, (int(x) for x in row), var) * weight_list[w]
        prev = out.get((a, b))
        out[(a, b)] = p if prev is None else prev + p
    return out
