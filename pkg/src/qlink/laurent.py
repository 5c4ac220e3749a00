"""Exact Laurent polynomials over the integers in a single half-power variable.

Exponents are integers in the half-power variable: ``s = t^(1/2)`` for the
Alexander side and ``tau = t0^(1/2)`` for the Links-Gould side, so that
``t = s^2``.  Coefficients are Python ints and never overflow.

>>> s = LaurentPoly.monomial(1)
>>> (s - s**-1) * (s + s**-1)
LaurentPoly('s^2 - s^-2')
"""

from __future__ import annotations

import json
import re
from typing import Iterable, Mapping

__all__ = [
    "LaurentPoly",
    "VariableClash",
    "PoleAtZero",
    "ZeroPolynomial",
    "NonExactDivision",
    "VARIABLES",
    "add",
    "mul",
    "pow",
    "substitute_variable",
    "eval_complex",
    "unit_normalize",
    "normalize_or_zero",
    "parse_poly",
]

VARIABLES = ("s", "tau", "t", "t0")


class VariableClash(ValueError):
    """Two non-constant polynomials in different variables were combined."""


class PoleAtZero(ZeroDivisionError):
    pass


class ZeroPolynomial(ValueError):
    pass


class NonExactDivision(ArithmeticError):
    """Raised when a quotient of Laurent polynomials is not a Laurent polynomial."""


class LaurentPoly:
    """Immutable element of Z[x, x^-1] tagged with a variable name.

    Constants carry a variable tag but are compatible with every variable,
    so ``1 + tau`` works whatever tag the ``1`` was built with.
    """

    __slots__ = ("_terms", "_var", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None, var: str = "s"):
        if var not in VARIABLES:
            raise ValueError(f"unknown variable {var!r}; expected one of {VARIABLES}")
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[int(e)] = int(c)
        self._terms = clean
        self._var = var
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, int], var: str) -> LaurentPoly:
        # Trusted constructor: terms already canonical.
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._var = var
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1, var: str = "s") -> LaurentPoly:
        return cls({exponent: coeff}, var)

    @classmethod
    def constant(cls, c: int, var: str = "s") -> LaurentPoly:
        return cls({0: c}, var)

    @classmethod
    def from_coeffs(cls, lowest: int, coeffs: Iterable[int], var: str = "s") -> LaurentPoly:
        """Build from a dense coefficient list starting at exponent ``lowest``."""
        return cls({lowest + i: c for i, c in enumerate(coeffs)}, var)

    # -- inspection ---------------------------------------------------------

    @property
    def var(self) -> str:
        return self._var

    @property
    def terms(self) -> dict[int, int]:
        """Copy of the exponent -> coefficient mapping."""
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def is_unit(self) -> bool:
        """True for +-x^k, the units of Z[x, x^-1]."""
        return len(self._terms) == 1 and next(iter(self._terms.values())) in (1, -1)

    def degree(self) -> int:
        if not self._terms:
            raise ZeroPolynomial("degree of the zero polynomial")
        return max(self._terms)

    def valuation(self) -> int:
        if not self._terms:
            raise ZeroPolynomial("valuation of the zero polynomial")
        return min(self._terms)

    def coeff(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def leading_coeff(self) -> int:
        return self._terms[self.degree()]

    def l1_norm(self) -> int:
        return sum(abs(c) for c in self._terms.values())

    def __bool__(self):
        return bool(self._terms)

    # -- arithmetic ---------------------------------------------------------

    def _join_var(self, other: LaurentPoly) -> str:
        if self._var == other._var:
            return self._var
        if other.is_constant():
            return self._var
        if self.is_constant():
            return other._var
        raise VariableClash(f"cannot combine polynomials in {self._var!r} and {other._var!r}")

    def _coerce(self, other) -> LaurentPoly | None:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly._raw({0: other} if other else {}, self._var)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        var = self._join_var(other)
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for e, c in small.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out, var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()}, self._var)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        var = self._join_var(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return LaurentPoly._raw({}, var)
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((eb, cb),) = b.items()
            return LaurentPoly._raw({e + eb: c * cb for e, c in a.items()}, var)
        out: dict[int, int] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                out[e] = out.get(e, 0) + ca * cb
        return LaurentPoly._raw({e: c for e, c in out.items() if c}, var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_unit():
                raise NonExactDivision(f"{self} is not a unit; cannot raise to {n}")
            ((e, c),) = self._terms.items()
            return LaurentPoly._raw({e * n: c ** (-n)}, self._var)
        result = LaurentPoly._raw({0: 1}, self._var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by x^k."""
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()}, self._var)

    def reflect(self) -> LaurentPoly:
        """Substitute x -> x^-1."""
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()}, self._var)

    def rename(self, var: str) -> LaurentPoly:
        if var not in VARIABLES:
            raise ValueError(f"unknown variable {var!r}")
        return LaurentPoly._raw(dict(self._terms), var)

    def divexact(self, other: LaurentPoly) -> LaurentPoly:
        """Exact quotient ``self / other`` in Z[x, x^-1].

        Raises NonExactDivision when the quotient has a remainder or would
        need rational coefficients.
        """
        other = self._coerce(other)
        if other is None or other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        var = self._join_var(other)
        if self.is_zero():
            return LaurentPoly._raw({}, var)
        # Strip x-power so both are polynomials with nonzero constant term;
        # for such a pair Laurent divisibility equals polynomial divisibility.
        pa, pb = self.valuation(), other.valuation()
        num = [0] * (self.degree() - pa + 1)
        for e, c in self._terms.items():
            num[e - pa] = c
        den = [0] * (other.degree() - pb + 1)
        for e, c in other._terms.items():
            den[e - pb] = c
        if len(den) > len(num):
            raise NonExactDivision(f"{other} does not divide {self}")
        lead = den[-1]
        quot = [0] * (len(num) - len(den) + 1)
        for k in range(len(quot) - 1, -1, -1):
            top = num[k + len(den) - 1]
            if top % lead:
                raise NonExactDivision(f"{other} does not divide {self}")
            q = top // lead
            quot[k] = q
            if q:
                for i, d in enumerate(den):
                    num[k + i] -= q * d
        if any(num):
            raise NonExactDivision(f"{other} does not divide {self}")
        return LaurentPoly.from_coeffs(pa - pb, quot, var)

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly._raw({0: other} if other else {}, self._var)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self._terms != other._terms:
            return False
        return self._var == other._var or self.is_constant()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- evaluation and rendering ------------------------------------------

    def __call__(self, z: complex) -> complex:
        return eval_complex(self, z)

    def format(self, name: str | None = None, half: bool = False) -> str:
        """Render with decreasing exponents, e.g. ``s^2 - 1 + s^-2``.

        With ``half=True`` exponents are halved, so a polynomial in ``s`` is
        shown in ``t = s^2``; odd exponents appear as ``t^(3/2)``.
        """
        name = name or self._var
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            if half and e % 2:
                power = f"{name}^({e}/2)"
            else:
                k = e // 2 if half else e
                power = "" if k == 0 else name if k == 1 else f"{name}^{k}"
            mag = abs(c)
            body = power if (mag == 1 and power) else f"{mag}{power}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"LaurentPoly('{self.format()}')"

    def to_json(self) -> list[list]:
        """``[[exponent, "coefficient"], ...]`` in decreasing exponent order."""
        return [[e, str(c)] for e, c in sorted(self._terms.items(), reverse=True)]

    @classmethod
    def from_json(cls, data, var: str = "s") -> LaurentPoly:
        if isinstance(data, str):
            data = json.loads(data)
        return cls({int(e): int(c) for e, c in data}, var)


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def pow(p: LaurentPoly, n: int) -> LaurentPoly:  # noqa: A001 - mirrors the operation name
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    return p**n


def substitute_variable(p: LaurentPoly, new_name: str) -> LaurentPoly:
    return p.rename(new_name)


def eval_complex(p: LaurentPoly, z: complex) -> complex:
    if z == 0:
        raise PoleAtZero("Laurent polynomial evaluated at 0")
    z = complex(z)
    return sum((c * z**e for e, c in p.items()), 0j)


def unit_normalize(p: LaurentPoly) -> LaurentPoly:
    """Canonical representative of ``p`` modulo multiplication by +-x^k.

    The result has a positive leading (highest-degree) coefficient and is
    centred: max + min exponent is 0 when the spread is even and 1 when
    it is odd.

    >>> unit_normalize(LaurentPoly({3: -1, 1: 1}))
    LaurentPoly('s - s^-1')
    """
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no unit normalization")
    lo, hi = p.valuation(), p.degree()
    k = -((lo + hi) // 2)
    sign = 1 if p.leading_coeff() > 0 else -1
    return LaurentPoly._raw({e + k: sign * c for e, c in p._terms.items()}, p.var)


def normalize_or_zero(p: LaurentPoly) -> LaurentPoly:
    """unit_normalize that passes the zero polynomial through (split links)."""
    return p if p.is_zero() else unit_normalize(p)


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?P<coeff>\d+)?\s*\*?\s*
        (?:(?P<var>[A-Za-z][A-Za-z0-9]*)
           (?:\s*\^\s*(?:\(\s*(?P<pexp>[+-]?\d+)\s*\)|(?P<exp>[+-]?\d+)))?)?\s*""",
    re.VERBOSE,
)


def parse_poly(text: str, var: str = "s") -> LaurentPoly:
    """Parse the textual rendering, e.g. ``"s^2 - 1 + s^-2"`` or ``"3tau^-1"``.

    Any variable name occurring in ``text`` must equal ``var``.
    """
    text = text.strip()
    if text in ("", "0"):
        if text == "":
            raise ValueError("empty polynomial text")
        return LaurentPoly({}, var)
    terms: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
        if m["sign"] is None and not first:
            raise ValueError(f"missing operator before {text[pos:]!r}")
        if m["coeff"] is None and m["var"] is None:
            raise ValueError(f"empty term in {text!r}")
        if m["var"] is not None and m["var"] != var:
            raise ValueError(f"unexpected variable {m['var']!r} (expected {var!r})")
        c = int(m["coeff"]) if m["coeff"] is not None else 1
        if m["sign"] == "-":
            c = -c
        if m["var"] is None:
            e = 0
        else:
            raw = m["exp"] or m["pexp"]
            e = int(raw) if raw is not None else 1
        terms[e] = terms.get(e, 0) + c
        pos = m.end()
        first = False
    return LaurentPoly(terms, var)
