"""Sparse polynomials in ``q`` with integer coefficients."""

from __future__ import annotations

import re
from typing import Iterator, Mapping, Union

Scalar = Union[int, "QPolynomial"]


class QPolynomial:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            if c:
                clean[int(e)] = int(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> QPolynomial:
        return cls({exponent: coeff})

    @classmethod
    def coerce(cls, value: Scalar) -> QPolynomial:
        if isinstance(value, QPolynomial):
            return value
        if isinstance(value, int):
            return cls({0: value})
        raise TypeError(f"cannot use {type(value).__name__} as a coefficient")

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._terms.items(), reverse=True))

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    @property
    def degree(self) -> int:
        return max(self._terms) if self._terms else -1

    def is_monomial(self) -> bool:
        return len(self._terms) == 1 and next(iter(self._terms.values())) == 1

    def exponent(self) -> int:
        """Exponent of a monomial ``q^k``."""
        if not self.is_monomial():
            raise ValueError(f"{self} is not a monomial")
        return next(iter(self._terms))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QPolynomial.coerce(other)
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: Scalar) -> QPolynomial:
        other = QPolynomial.coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return QPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> QPolynomial:
        return QPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Scalar) -> QPolynomial:
        return self + (-QPolynomial.coerce(other))

    def __rsub__(self, other: Scalar) -> QPolynomial:
        return QPolynomial.coerce(other) - self

    def __mul__(self, other: Scalar) -> QPolynomial:
        other = QPolynomial.coerce(other)
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return QPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> QPolynomial:
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, q: int, modulus: int | None = None) -> int:
        return self.evaluate(q, modulus)

    def evaluate(self, q: int, modulus: int | None = None) -> int:
        if modulus is None:
            return sum(c * q**e for e, c in self._terms.items())
        return sum(c * pow(q, e, modulus) for e, c in self._terms.items()) % modulus

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            if e == 0:
                body = str(abs(c))
            else:
                var = "q" if e == 1 else f"q^{e}"
                body = var if abs(c) == 1 else f"{abs(c)}*{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"QPolynomial({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> QPolynomial:
        """Inverse of ``str``: accepts ``"2*q^2 + q - 3"`` and the like."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        out: dict[int, int] = {}
        for sign, body in re.findall(r"([+-])([^+-]+)", s):
            m = re.fullmatch(r"(?:(\d+)\*?)?(q(?:\^(\d+))?)?", body)
            if not m or not (m.group(1) or m.group(2)):
                raise ValueError(f"cannot parse term {body!r} in {text!r}")
            coeff = int(m.group(1)) if m.group(1) else 1
            exp = (int(m.group(3)) if m.group(3) else 1) if m.group(2) else 0
            out[exp] = out.get(exp, 0) + (coeff if sign == "+" else -coeff)
        return cls(out)


ZERO = QPolynomial()
ONE = QPolynomial({0: 1})
Q = QPolynomial({1: 1})


def qpow(k: int) -> QPolynomial:
    return QPolynomial({k: 1})
