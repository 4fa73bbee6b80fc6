"""Sparse two-variable Laurent polynomials in ``a`` and ``z``.

Only the handful of operations the skein recursion needs are provided:
addition, subtraction, multiplication and multiplication by a monomial.
Coefficients are Python integers, so arithmetic is exact.
"""

from __future__ import annotations

import re
from typing import Dict, Iterable, Mapping, Tuple

Exponent = Tuple[int, int]

_TERM_RE = re.compile(r"^\s*(-?\d+)\*a\^(-?\d+)\*z\^(-?\d+)\s*$")


class HomflyPolynomial:
    """Immutable sparse Laurent polynomial keyed by ``(a_exp, z_exp)``.

    Zero coefficients are never stored, so two polynomials are equal iff
    their term maps are equal.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | Iterable[Tuple[Exponent, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[Exponent, int] = {}
        for (i, j), c in items:
            key = (int(i), int(j))
            acc[key] = acc.get(key, 0) + int(c)
        self._terms = {k: v for k, v in acc.items() if v != 0}
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exponent, int]) -> "HomflyPolynomial":
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def one(cls) -> "HomflyPolynomial":
        return cls._raw({(0, 0): 1})

    @classmethod
    def monomial(cls, coeff: int, a_exp: int, z_exp: int) -> "HomflyPolynomial":
        return cls({(a_exp, z_exp): coeff})

    @property
    def terms(self) -> Dict[Exponent, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = HomflyPolynomial({(0, 0): other})
        if not isinstance(other, HomflyPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "HomflyPolynomial") -> "HomflyPolynomial":
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return HomflyPolynomial._raw(out)

    def __neg__(self) -> "HomflyPolynomial":
        return HomflyPolynomial._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "HomflyPolynomial") -> "HomflyPolynomial":
        return self + (-other)

    def __mul__(self, other: "HomflyPolynomial | int") -> "HomflyPolynomial":
        if isinstance(other, int):
            if other == 0:
                return HomflyPolynomial._raw({})
            return HomflyPolynomial._raw({k: v * other for k, v in self._terms.items()})
        out: Dict[Exponent, int] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return HomflyPolynomial._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "HomflyPolynomial":
        if n < 0:
            raise ValueError("negative powers are only defined for monomials; use shift()")
        result = HomflyPolynomial.one()
        for _ in range(n):
            result = result * self
        return result

    def shift(self, da: int, dz: int, coeff: int = 1) -> "HomflyPolynomial":
        """Multiply by the monomial ``coeff * a**da * z**dz``."""
        if coeff == 0:
            return HomflyPolynomial._raw({})
        return HomflyPolynomial._raw(
            {(i + da, j + dz): c * coeff for (i, j), c in self._terms.items()}
        )

    def mirror(self) -> "HomflyPolynomial":
        """Image under ``a -> a^-1`` (the polynomial of the mirror knot)."""
        return HomflyPolynomial._raw({(-i, j): c for (i, j), c in self._terms.items()})

    def evaluate(self, a: complex, z: complex) -> complex:
        return sum(c * a**i * z**j for (i, j), c in self._terms.items())

    def sorted_terms(self) -> list:
        """Terms in canonical order: ``a`` exponent descending, then ``z`` ascending."""
        return sorted(self._terms.items(), key=lambda kv: (-kv[0][0], kv[0][1]))

    def __repr__(self) -> str:
        return f"HomflyPolynomial({canonical_string(self)!r})"

    def __str__(self) -> str:
        return canonical_string(self)


def canonical_string(p: HomflyPolynomial) -> str:
    """Render ``p`` as the stable classification key.

    >>> canonical_string(HomflyPolynomial.one())
    '1'
    """
    if p == HomflyPolynomial.one():
        return "1"
    if p.is_zero():
        return "0"
    return " + ".join(f"{c}*a^{i}*z^{j}" for (i, j), c in p.sorted_terms())


def parse_polynomial(text: str) -> HomflyPolynomial:
    """Inverse of :func:`canonical_string`."""
    text = text.strip()
    if text == "1":
        return HomflyPolynomial.one()
    if text == "0":
        return HomflyPolynomial()
    terms = []
    for chunk in text.split(" + "):
        m = _TERM_RE.match(chunk)
        if m is None:
            raise ValueError(f"cannot parse polynomial term {chunk!r}")
        c, i, j = (int(g) for g in m.groups())
        terms.append(((i, j), c))
    return HomflyPolynomial(terms)
