"""Local braidings, pivots and the numeric 2-dimensional representations.

Symbolic side (exact, over LaurentPoly):

* :func:`build_sl2_ribbon` -- the unrolled sl(2) braiding at q = i on
  ``V_alpha (x) V_alpha`` with the twist divided out, entries in
  ``s = t^(1/2) = i^(-alpha-1)``.
* :func:`build_lg_qm1_ribbon` -- the Links-Gould ``LG^{n,1}`` braiding at
  q = -1 on ``V (x) V`` with ``V = (C^2)^{(x)n}``, built as the interleaved
  n-th tensor power of the sl(2) braiding.

Numeric side (complex floating point, numpy): the 2-dimensional modules of
the sl(2) model and of the bosonized gl(1|1) model, and their R-matrices.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass

import numpy as np

from .laurent import LaurentPoly
from .operators import SparseOperator, kron_all

__all__ = [
    "RibbonData",
    "FramingError",
    "DegenerateParameter",
    "QMismatch",
    "build_sl2_ribbon",
    "build_lg_qm1_ribbon",
    "interleave_permutation",
    "Sl2NumericRep",
    "Gl11NumericRep",
    "build_sl2_numeric",
    "build_gl11_numeric",
    "braiding_numeric_sl2H",
    "braiding_numeric_gl11",
    "ipow",
    "qpow",
    "switch_matrix",
    "dh_matrix",
    "r1_matrix",
    "dprime_matrix",
]


class FramingError(ValueError):
    """The partial trace of a braiding is not a unit multiple of the identity."""


class DegenerateParameter(ValueError):
    pass


class QMismatch(ValueError):
    pass


@dataclass(frozen=True)
class RibbonData:
    """A framing-normalized local braiding with its inverse and pivot.

    ``braiding`` acts on ``V (x) V`` (index ``a*dim + b``) and already
    includes the switch of factors and the division by the twist.
    """

    dim: int
    braiding: SparseOperator
    braiding_inv: SparseOperator
    pivot: SparseOperator
    name: str = "sl2"

    @property
    def var(self) -> str:
        for _, _, p in self.pivot.entries():
            return p.var
        return "s"

    @property
    def pivot_diagonal(self) -> list[LaurentPoly]:
        return self.pivot.diagonal_entries()

    def framing_trace(self, inverse: bool = False) -> SparseOperator:
        """``trace_2((Id (x) pivot) . B)``; the identity for a normalized braiding."""
        op = self.braiding_inv if inverse else self.braiding
        return op.partial_trace_second(self.dim, self.pivot_diagonal)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "variable": self.var,
            "braiding": self.braiding.to_json(),
            "pivot": self.pivot.to_json(),
        }


def _normalized(dim, braiding, braiding_inv, pivot, name) -> RibbonData:
    weights = pivot.diagonal_entries()
    lam = braiding.partial_trace_second(dim, weights).scalar_multiple_of_identity()
    if lam is None or not lam.is_unit():
        raise FramingError(f"{name}: partial trace is not a unit multiple of the identity")
    if lam != 1:
        braiding = braiding.map(lambda p: p.divexact(lam))
        braiding_inv = braiding_inv.scale(lam)
    if braiding @ braiding_inv != SparseOperator.identity(dim * dim):
        raise FramingError(f"{name}: braiding_inv is not the inverse of braiding")
    return RibbonData(dim, braiding, braiding_inv, pivot, name)


@functools.lru_cache(maxsize=None)
def build_sl2_ribbon(var: str = "s") -> RibbonData:
    """The normalized braiding ``theta^-1 tau R^H`` on ``V_alpha (x) V_alpha``.

    Basis order ``(e0e0, e0e1, e1e0, e1e1)``; pivot ``K^-1 = diag(s, -s)``.
    """
    s = LaurentPoly.monomial(1, var=var)
    si = LaurentPoly.monomial(-1, var=var)
    braiding = SparseOperator.from_dense(
        [
            [si, 0, 0, 0],
            [0, 0, 1, 0],
            [0, 1, si - s, 0],
            [0, 0, 0, -s],
        ]
    )
    # inverse of the middle block [[0, 1], [1, x]] is [[-x, 1], [1, 0]]
    braiding_inv = SparseOperator.from_dense(
        [
            [s, 0, 0, 0],
            [0, s - si, 1, 0],
            [0, 1, 0, 0],
            [0, 0, 0, -si],
        ]
    )
    pivot = SparseOperator.diagonal([s, -s])
    return _normalized(2, braiding, braiding_inv, pivot, "sl2")


def interleave_permutation(n: int) -> list[int]:
    """Map strand-major qubit order to copy-major order on ``(C^2)^{(x)2n}``.

    Strand-major puts the n bits of the first ``V`` before the n bits of the
    second; copy-major groups the two bits of copy ``i`` together, which is
    the order of the plain tensor power ``B^{(x)n}``.
    """
    perm = []
    for x in range(1 << (2 * n)):
        y = 0
        for strand in range(2):
            for copy in range(n):
                src = 2 * n - 1 - (strand * n + copy)
                dst = 2 * n - 1 - (2 * copy + strand)
                y |= ((x >> src) & 1) << dst
        perm.append(y)
    return perm


@functools.lru_cache(maxsize=None)
def build_lg_qm1_ribbon(n: int) -> RibbonData:
    """The LG^{n,1} braiding at q = -1 on ``V (x) V`` with ``dim V = 2^n``.

    Bit ``i`` of a basis index of ``V`` (most significant first) is the
    occupation of ``f_i`` in the PBW vector ``f_1^{m_1} ... f_n^{m_n} v_0``.
    The braiding factorizes into n commuting copies of the sl(2) braiding,
    copy ``i`` acting on bit ``i`` of both factors.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    base = build_sl2_ribbon("tau")
    perm = interleave_permutation(n)
    braiding = kron_all([base.braiding] * n).reindex(perm)
    braiding_inv = kron_all([base.braiding_inv] * n).reindex(perm)
    pivot = kron_all([base.pivot] * n)
    name = "lg(1)" if n == 1 else f"lg({n})"
    return _normalized(1 << n, braiding, braiding_inv, pivot, name)


# -- numeric representations ----------------------------------------------


def ipow(x: complex) -> complex:
    """``i^x := exp(i pi x / 2)``."""
    return cmath.exp(1j * math.pi * x / 2)


def qpow(q: complex, x: complex) -> complex:
    """``q^x := exp(x Log q)`` on the principal branch."""
    return cmath.exp(x * cmath.log(q))


def switch_matrix(d1: int, d2: int) -> np.ndarray:
    """``tau: V (x) W -> W (x) V``, ``x (x) y -> y (x) x``."""
    out = np.zeros((d1 * d2, d1 * d2), dtype=complex)
    for a in range(d1):
        for b in range(d2):
            out[b * d1 + a, a * d2 + b] = 1
    return out


@dataclass(frozen=True)
class Sl2NumericRep:
    """The 2-dimensional module ``V_alpha`` of the unrolled sl(2) at q = i."""

    alpha: complex
    a: complex
    H: np.ndarray
    K: np.ndarray
    E: np.ndarray
    F: np.ndarray

    # U-generator aliases shared with Gl11NumericRep
    @property
    def e(self):
        return self.E

    @property
    def f(self):
        return self.F

    @property
    def k(self):
        return self.K


def build_sl2_numeric(alpha: complex) -> Sl2NumericRep:
    alpha = complex(alpha)
    if abs(alpha.imag) < 1e-12 and abs(alpha.real - round(alpha.real)) < 1e-12 and round(alpha.real) % 2:
        raise DegenerateParameter(f"alpha={alpha} is an odd integer")
    a = ipow(alpha + 1)
    H = np.diag([alpha + 1, alpha - 1]).astype(complex)
    K = np.diag([a, -a])
    E = np.array([[0, 1], [0, 0]], dtype=complex)
    F = np.array([[0, 0], [a - 1 / a, 0]], dtype=complex)
    return Sl2NumericRep(alpha, a, H, K, E, F)


@dataclass(frozen=True)
class Gl11NumericRep:
    """A 2-dimensional module of the bosonized ``U_q gl(1|1)^sigma``.

    ``I, G, X, Y, sigma`` are the textbook matrices in the basis where ``Y``
    is the unit lower shift.  The U-generators ``e, f, k`` are returned in
    the rescaled basis ``(e0, e1 / (a - 1/a))``, in which they coincide
    entrywise with those of :class:`Sl2NumericRep` for the same ``alpha``.
    The diagonal operators ``I, G, sigma, C`` are unchanged by the rescaling.
    """

    q: complex
    alpha: complex
    epsilon: int
    J: complex
    j: complex
    a: complex
    I: np.ndarray
    G: np.ndarray
    X: np.ndarray
    Y: np.ndarray
    sigma: np.ndarray

    @property
    def C(self) -> np.ndarray:
        return np.diag([qpow(self.q, x) for x in np.diag(self.I)])

    @property
    def basis_change(self) -> np.ndarray:
        return np.diag([1, 1 / (self.a - 1 / self.a)])

    def adapted(self, m: np.ndarray) -> np.ndarray:
        S = self.basis_change
        return np.linalg.inv(S) @ m @ S

    @property
    def e(self) -> np.ndarray:
        return self.adapted((self.q - 1 / self.q) * self.X @ self.sigma)

    @property
    def f(self) -> np.ndarray:
        return self.adapted(self.Y)

    @property
    def k(self) -> np.ndarray:
        return self.adapted(np.linalg.inv(self.C) @ self.sigma)


def build_gl11_numeric(q: complex, alpha: complex, epsilon: int, J: complex) -> Gl11NumericRep:
    """Module with ``(-1)^epsilon q^{-2j} = a = i^{alpha+1}``, j on the principal branch."""
    q = complex(q)
    if q == 0 or abs(q - 1) < 1e-12 or abs(q + 1) < 1e-12:
        raise DegenerateParameter(f"q={q} must avoid 0, 1 and -1")
    if epsilon not in (0, 1):
        raise ValueError("epsilon must be 0 or 1")
    sl2 = build_sl2_numeric(alpha)
    a = sl2.a
    sign = -1 if epsilon else 1
    j = -cmath.log(sign * a) / (2 * cmath.log(q))
    I = np.diag([2 * j, 2 * j])
    G = np.diag([(J + 1) / 2, (J - 1) / 2]).astype(complex)
    X = np.array([[0, (qpow(q, 2 * j) - qpow(q, -2 * j)) / (q - 1 / q)], [0, 0]], dtype=complex)
    Y = np.array([[0, 0], [1, 0]], dtype=complex)
    sigma = sign * np.diag([1, -1]).astype(complex)
    return Gl11NumericRep(q, complex(alpha), epsilon, complex(J), j, a, I, G, X, Y, sigma)


def dh_matrix(r1: Sl2NumericRep, r2: Sl2NumericRep) -> np.ndarray:
    """``D^H = i^{H (x) H / 2}`` on ``V_1 (x) V_2``."""
    hh = np.kron(np.diag(r1.H), np.diag(r2.H))
    return np.diag(np.exp(1j * math.pi / 4 * hh))


def braiding_numeric_sl2H(r1: Sl2NumericRep, r2: Sl2NumericRep) -> np.ndarray:
    """``R^H = D^H (1 + E (x) F)`` on ``V_1 (x) V_2`` (no switch, no twist)."""
    return dh_matrix(r1, r2) @ (np.eye(4) + np.kron(r1.E, r2.F))


def r1_matrix(r1: Gl11NumericRep, r2: Gl11NumericRep) -> np.ndarray:
    one = np.eye(2)
    s1, s2 = r1.sigma, r2.sigma
    return 0.5 * (np.kron(one, one) + np.kron(s1, one) + np.kron(one, s2) - np.kron(s1, s2))


def dprime_matrix(r1: Gl11NumericRep, r2: Gl11NumericRep) -> np.ndarray:
    """``D' = q^{-(I (x) G + G (x) I)}``."""
    expo = -(np.kron(np.diag(r1.I), np.diag(r2.G)) + np.kron(np.diag(r1.G), np.diag(r2.I)))
    return np.diag([qpow(r1.q, x) for x in expo])


def braiding_numeric_gl11(r1: Gl11NumericRep, r2: Gl11NumericRep) -> np.ndarray:
    """``R^sigma = R_1 q^{-(I (x) G + G (x) I)} (1 + e (x) f)`` in the adapted basis."""
    if abs(r1.q - r2.q) > 1e-14 * max(1.0, abs(r1.q)):
        raise QMismatch(f"q differs: {r1.q} vs {r2.q}")
    return r1_matrix(r1, r2) @ dprime_matrix(r1, r2) @ (np.eye(4) + np.kron(r1.e, r2.f))
