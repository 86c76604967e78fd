from typing import Dict, Iterable, Mapping, Tuple, Union

import sympy as sp

A = sp.Symbol("A")


class LaurentPoly:
    """Integer Laurent polynomial in A, stored as exponent -> coefficient.

    Zero coefficients are never stored, so equal polynomials have equal term
    maps and hash alike.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[int, int], Iterable[Tuple[int, int]], None] = None):
        collected: Dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for exp, coeff in items:
            collected[int(exp)] = collected.get(int(exp), 0) + int(coeff)
        self._terms = {e: c for e, c in collected.items() if c != 0}

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @property
    def terms(self) -> Dict[int, int]:
        return dict(self._terms)

    def sorted_terms(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        other = _coerce(other)
        merged = dict(self._terms)
        for e, c in other._terms.items():
            merged[e] = merged.get(e, 0) + c
        return LaurentPoly(merged)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-_coerce(other))

    def __mul__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        product: Dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                product[e1 + e2] = product.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(product)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are only defined for monomials; use shift()")
        result = LaurentPoly.one()
        for _ in range(n):
            result = result * self
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by A^k."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def mirror(self) -> "LaurentPoly":
        """Substitute A -> A^-1."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def to_sympy(self) -> sp.Expr:
        return sp.Add(*(c * A**e for e, c in self._terms.items()))

    @classmethod
    def from_sympy(cls, expr: sp.Expr) -> "LaurentPoly":
        expr = sp.expand(expr)
        terms: Dict[int, int] = {}
        for term in sp.Add.make_args(expr):
            if term == 0:
                continue
            coeff, exp = term.as_coeff_exponent(A)
            terms[int(exp)] = terms.get(int(exp), 0) + int(coeff)
        return cls(terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp, coeff in sorted(self._terms.items(), reverse=True):
            sign = "-" if coeff < 0 else "+"
            mag = abs(coeff)
            if exp == 0:
                body = str(mag)
            else:
                power = "A" if exp == 1 else f"A^{exp}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


def _coerce(value) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly({0: value})
    raise TypeError(f"cannot combine LaurentPoly with {type(value).__name__}")


# Loop value -A^2 - A^-2.
DELTA = LaurentPoly({2: -1, -2: -1})
