"""The localized Weyl algebra Q[t1^(+-1), t2, d1, d2] in normal-ordered form.

Every element is a sparse sum of normal-ordered words t1^a t2^b d1^c d2^d
(multiplications left, derivatives right).  Products are normal-ordered in
closed form with falling factorials, which stay valid for negative t1
exponents; the defining action on Q[t1^(+-1), t2] is provided as an
independent cross-check of the reordering rule.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Tuple, Union

from .apoly import APoly, Scalar, format_coeff_term, join_terms, monomial_str

DMono = Tuple[int, int, int, int]


def falling(n: int, j: int) -> int:
    """Falling factorial n(n-1)...(n-j+1); valid for negative n, 1 for j=0."""
    out = 1
    for k in range(j):
        out *= n - k
    return out


class DOp:
    """Sparse normal-ordered differential operator.

    Keys are (a, b, c, d) meaning t1^a t2^b d1^c d2^d with b, c, d >= 0.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[DMono, Scalar] | Iterable[tuple[DMono, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[DMono, Fraction] = {}
        for key, c in items:
            a, b, cc, d = key
            if b < 0 or cc < 0 or d < 0:
                raise ValueError(f"invalid exponents in key {key}")
            c = Fraction(c) + clean.get(key, Fraction(0))
            if c:
                clean[key] = c
            else:
                clean.pop(key, None)
        self.terms = clean
        self._hash: int | None = None

    @staticmethod
    def zero() -> "DOp":
        return DOp()

    @staticmethod
    def one() -> "DOp":
        return DOp({(0, 0, 0, 0): 1})

    @staticmethod
    def mono(a: int, b: int, c: int, d: int, coeff: Scalar = 1) -> "DOp":
        return DOp({(a, b, c, d): coeff})

    @staticmethod
    def from_apoly(p: APoly) -> "DOp":
        """Embed a polynomial as the multiplication operator it defines."""
        return DOp({(m1, m2, 0, 0): c for (m1, m2), c in p.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DOp):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other: "DOp") -> "DOp":
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return DOp(out)

    def __sub__(self, other: "DOp") -> "DOp":
        return self + (-other)

    def __neg__(self) -> "DOp":
        return DOp({k: -c for k, c in self.terms.items()})

    def scale(self, c: Scalar) -> "DOp":
        c = Fraction(c)
        if not c:
            return DOp()
        return DOp({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: Union["DOp", Scalar]) -> "DOp":
        """Normal-ordered product.

        d1^c t1^a = sum_j C(c,j) a(a-1)...(a-j+1) t1^(a-j) d1^(c-j), and the
        same rule for d2 against t2; symbols of different index commute.
        """
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out: dict[DMono, Fraction] = {}
        for (a1, b1, c1, d1), x in self.terms.items():
            for (a2, b2, c2, d2), y in other.terms.items():
                coeff = x * y
                for j in range(c1 + 1):
                    f1 = comb(c1, j) * falling(a2, j)
                    if f1 == 0:
                        continue
                    for i in range(min(d1, b2) + 1):
                        f2 = comb(d1, i) * falling(b2, i)
                        if f2 == 0:
                            continue
                        k = (a1 + a2 - j, b1 + b2 - i, c1 + c2 - j, d1 + d2 - i)
                        s = out.get(k, Fraction(0)) + coeff * f1 * f2
                        if s:
                            out[k] = s
                        else:
                            out.pop(k, None)
        return DOp(out)

    def __rmul__(self, other: Scalar) -> "DOp":
        return self.scale(other)

    def commutator(self, other: "DOp") -> "DOp":
        return self * other - other * self

    def apply(self, p: APoly) -> APoly:
        """Act on Q[t1^(+-1), t2]: derivatives first, then multiplication."""
        out: dict[Tuple[int, int], Fraction] = {}
        for (a, b, c, d), x in self.terms.items():
            for (m1, m2), y in p.terms.items():
                coeff = x * y * falling(m1, c) * falling(m2, d)
                if not coeff:
                    continue
                k = (m1 - c + a, m2 - d + b)
                s = out.get(k, Fraction(0)) + coeff
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return APoly(out)

    def partial_degree(self) -> int:
        """Largest total derivative order c + d over the stored terms."""
        return max((c + d for (_, _, c, d) in self.terms), default=0)

    def is_multiplication(self) -> bool:
        return all(c == 0 and d == 0 for (_, _, c, d) in self.terms)

    def sorted_terms(self) -> list[tuple[DMono, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def render(self) -> str:
        parts = []
        for (a, b, c, d), coeff in self.sorted_terms():
            mono = monomial_str((("t1", a), ("t2", b), ("d1", c), ("d2", d)))
            parts.append(format_coeff_term(coeff, mono))
        return join_terms(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"DOp({self.render()})"
