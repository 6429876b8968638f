"""Symmetric-function expressions in the elementary basis.

Only evaluation at commuting algebra elements is ever needed, so a
symmetric function is stored as an integer combination of products of
elementary generators: a map from descending index tuples (k1 >= k2
>= ...) to integers, the tuple (2, 1, 1) meaning e2*e1*e1.  Power
sums come in through Newton's identity

    p_k = e_1 p_{k-1} - e_2 p_{k-2} + ... + (-1)^{k-1} k e_k,

complete functions through h_k = sum_i (-1)^{i-1} e_i h_{k-i}, and
monomial functions by exactly inverting the e-to-m transition matrix
in degree d (both families are Z-bases, so the inverse is integral).
"""

from __future__ import annotations

import itertools
import json
import re
from fractions import Fraction
from functools import cache

from .partitions import Partition, partitions_of

__all__ = ["SymmetricExpression", "elementary", "power_sum", "complete", "monomial"]

Monomial = tuple[int, ...]


class SymmetricExpression:
    """An integer polynomial in the elementary generators e_1, e_2, ..."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[Monomial, int] | None = None):
        clean: dict[Monomial, int] = {}
        for mono, c in (terms or {}).items():
            if c:
                key = tuple(sorted(mono, reverse=True))
                if any(k < 1 for k in key):
                    raise ValueError(f"elementary index must be positive: {mono}")
                clean[key] = clean.get(key, 0) + c
        self._terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def zero(cls) -> "SymmetricExpression":
        return cls()

    @classmethod
    def one(cls) -> "SymmetricExpression":
        return cls({(): 1})

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=0)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = SymmetricExpression({(): other})
        return (
            isinstance(other, SymmetricExpression)
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other) -> "SymmetricExpression":
        other = _coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return SymmetricExpression(out)

    __radd__ = __add__

    def __neg__(self) -> "SymmetricExpression":
        return SymmetricExpression({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "SymmetricExpression":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "SymmetricExpression":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "SymmetricExpression":
        other = _coerce(other)
        out: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                key = tuple(sorted(m1 + m2, reverse=True))
                out[key] = out.get(key, 0) + c1 * c2
        return SymmetricExpression(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SymmetricExpression":
        if k < 0:
            raise ValueError("negative powers are not symmetric polynomials")
        out = SymmetricExpression.one()
        for _ in range(k):
            out = out * self
        return out

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        bits = []
        for mono in sorted(self._terms, key=lambda m: (sum(m), m)):
            c = self._terms[mono]
            name = "*".join(f"e{k}" for k in mono) or "1"
            bits.append(f"{c}*{name}" if (c != 1 or not mono) else name)
        return " + ".join(bits)

    @classmethod
    def parse(cls, text: str) -> "SymmetricExpression":
        return _parse(text)


def _coerce(v) -> SymmetricExpression:
    if isinstance(v, SymmetricExpression):
        return v
    if isinstance(v, int):
        return SymmetricExpression({(): v})
    raise TypeError(f"cannot interpret {v!r} as a symmetric expression")


def elementary(k: int) -> SymmetricExpression:
    """e_k; e_0 = 1."""
    if k < 0:
        raise ValueError("e_k needs k >= 0")
    return SymmetricExpression.one() if k == 0 else SymmetricExpression({(k,): 1})


@cache
def power_sum(k: int) -> SymmetricExpression:
    """p_k in the e-basis, via Newton's identity."""
    if k < 1:
        if k == 0:
            raise ValueError("p_0 depends on the variable count; not representable")
        raise ValueError("p_k needs k >= 1")
    acc = (-1) ** (k - 1) * k * elementary(k)
    for i in range(1, k):
        acc = acc + (-1) ** (i - 1) * elementary(i) * power_sum(k - i)
    return acc


@cache
def complete(k: int) -> SymmetricExpression:
    """h_k in the e-basis."""
    if k < 0:
        raise ValueError("h_k needs k >= 0")
    if k == 0:
        return SymmetricExpression.one()
    acc = SymmetricExpression.zero()
    for i in range(1, k + 1):
        acc = acc + (-1) ** (i - 1) * elementary(i) * complete(k - i)
    return acc


_MONOMIAL_DEGREE_CAP = 8


def _expand_vectors(exponents: Partition, d: int) -> set[tuple[int, ...]]:
    padded = tuple(exponents) + (0,) * (d - len(exponents))
    return set(itertools.permutations(padded))


def _poly_multiply(p: dict, q: dict) -> dict:
    out: dict[tuple[int, ...], int] = {}
    for a, ca in p.items():
        for b, cb in q.items():
            key = tuple(x + y for x, y in zip(a, b))
            out[key] = out.get(key, 0) + ca * cb
    return out


@cache
def _e_to_m_rows(d: int) -> tuple[list[Partition], list[list[int]]]:
    """Row mu of the matrix: e_mu expanded over monomial functions m_nu."""
    parts = partitions_of(d)
    index = {nu: j for j, nu in enumerate(parts)}
    rows = []
    for mu in parts:
        poly: dict[tuple[int, ...], int] = {(0,) * d: 1}
        for part in mu:
            e_poly = {v: 1 for v in _expand_vectors((1,) * part, d)}
            poly = _poly_multiply(poly, e_poly)
        row = [0] * len(parts)
        for vec, c in poly.items():
            shape = tuple(p for p in sorted(vec, reverse=True) if p)
            row[index[shape]] = c
        rows.append(row)
    return parts, rows


def monomial(lam: Partition) -> SymmetricExpression:
    """The monomial symmetric function m_lam in the e-basis."""
    lam = tuple(sorted((int(p) for p in lam), reverse=True))
    if any(p < 1 for p in lam):
        raise ValueError(f"not a partition: {lam}")
    if not lam:
        return SymmetricExpression.one()
    d = sum(lam)
    if d > _MONOMIAL_DEGREE_CAP:
        raise ValueError(
            f"monomial conversion supported up to degree {_MONOMIAL_DEGREE_CAP}"
        )
    parts, rows = _e_to_m_rows(d)
    # Solve c^T M = delta_lam for the e-coefficients c by Gaussian
    # elimination over exact rationals; the result is integral.
    k = len(parts)
    aug = [[Fraction(rows[i][j]) for i in range(k)] for j in range(k)]
    rhs = [Fraction(int(nu == lam)) for nu in parts]
    for col in range(k):
        pivot = next(r for r in range(col, k) if aug[r][col])
        aug[col], aug[pivot] = aug[pivot], aug[col]
        rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        rhs[col] *= inv
        for r in range(k):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
                rhs[r] -= f * rhs[col]
    coeffs = {}
    for i, mu in enumerate(parts):
        assert rhs[i].denominator == 1
        coeffs[mu] = int(rhs[i])
    return SymmetricExpression(coeffs)


_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<gen>[eph]\d+)|(?P<mono>m\[[\d,\s]*\])|(?P<op>[-+*^()]))"
)


def _tokenize(text: str) -> list[str]:
    tokens, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot tokenize {text[pos:]!r}")
        tokens.append(m.group(m.lastgroup))
        pos = m.end()
    tokens.append("$")
    return tokens


def _parse(text: str) -> SymmetricExpression:
    """Parse expressions like "e2*e1 - 3*p3 + h2^2 + m[2,1]"."""
    tokens = _tokenize(text)
    pos = 0

    def peek() -> str:
        return tokens[pos]

    def take() -> str:
        nonlocal pos
        pos += 1
        return tokens[pos - 1]

    def atom() -> SymmetricExpression:
        tok = take()
        if tok == "(":
            v = expr()
            if take() != ")":
                raise ValueError("unbalanced parenthesis")
            return v
        if tok == "-":
            return -atom()
        if tok.isdigit():
            return _coerce(int(tok))
        if tok[0] == "e":
            return elementary(int(tok[1:]))
        if tok[0] == "p":
            return power_sum(int(tok[1:]))
        if tok[0] == "h":
            return complete(int(tok[1:]))
        if tok[0] == "m":
            return monomial(tuple(json.loads(tok[1:])))
        raise ValueError(f"unexpected token {tok!r}")

    def factor() -> SymmetricExpression:
        v = atom()
        while peek() == "^":
            take()
            exponent = take()
            if not exponent.isdigit():
                raise ValueError("exponent must be a literal integer")
            v = v ** int(exponent)
        return v

    def term() -> SymmetricExpression:
        v = factor()
        while peek() == "*":
            take()
            v = v * factor()
        return v

    def expr() -> SymmetricExpression:
        v = term()
        while peek() in ("+", "-"):
            v = v + term() if take() == "+" else v - term()
        return v

    out = expr()
    if peek() != "$":
        raise ValueError(f"trailing input at token {peek()!r}")
    return out
