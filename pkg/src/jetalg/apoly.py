"""Exact arithmetic in the mixed Laurent/polynomial algebra Q[t1^(+-1), t2].

Elements are sparse maps from exponent pairs (m1, m2) to rationals, with
m1 ranging over all integers and m2 over the nonnegative integers.  All
coefficients are `fractions.Fraction`; every operation is exact and pure.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Tuple, Union

Scalar = Union[int, Fraction]
AMono = Tuple[int, int]


def format_coeff_term(coeff: Fraction, mono: str | None) -> str:
    """Render one `coeff * mono` factor, omitting unit coefficients."""
    if mono is None:
        return str(coeff)
    if coeff == 1:
        return mono
    if coeff == -1:
        return "-" + mono
    return f"{coeff}*{mono}"


def join_terms(rendered: list[str]) -> str:
    """Join already-rendered terms with explicit +/- separators."""
    if not rendered:
        return "0"
    out = rendered[0]
    for term in rendered[1:]:
        if term.startswith("-"):
            out += " - " + term[1:]
        else:
            out += " + " + term
    return out


def monomial_str(symbols: Iterable[Tuple[str, int]]) -> str | None:
    """Render `t1^a*t2^b`-style monomials; None for the empty monomial."""
    parts = []
    for name, exp in symbols:
        if exp == 0:
            continue
        parts.append(name if exp == 1 else f"{name}^{exp}")
    return "*".join(parts) if parts else None


class APoly:
    """Sparse element of Q[t1^(+-1), t2].

    Immutable after construction: zero coefficients are pruned and the
    t2-exponent of every stored key is checked to be nonnegative, so two
    elements are equal iff their term maps are equal.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[AMono, Scalar] | Iterable[tuple[AMono, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[AMono, Fraction] = {}
        for (m1, m2), c in items:
            if m2 < 0:
                raise ValueError(f"negative t2 exponent in key ({m1}, {m2})")
            c = Fraction(c) + clean.get((m1, m2), Fraction(0))
            if c:
                clean[(m1, m2)] = c
            else:
                clean.pop((m1, m2), None)
        self.terms = clean
        self._hash: int | None = None

    @staticmethod
    def zero() -> "APoly":
        return APoly()

    @staticmethod
    def one() -> "APoly":
        return APoly({(0, 0): 1})

    @staticmethod
    def constant(c: Scalar) -> "APoly":
        return APoly({(0, 0): c})

    @staticmethod
    def mono(m1: int, m2: int, coeff: Scalar = 1) -> "APoly":
        return APoly({(m1, m2): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, APoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other: "APoly") -> "APoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return APoly(out)

    def __sub__(self, other: "APoly") -> "APoly":
        return self + (-other)

    def __neg__(self) -> "APoly":
        return APoly({k: -c for k, c in self.terms.items()})

    def scale(self, c: Scalar) -> "APoly":
        c = Fraction(c)
        if not c:
            return APoly()
        return APoly({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: Union["APoly", Scalar]) -> "APoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out: dict[AMono, Fraction] = {}
        for (a1, a2), c in self.terms.items():
            for (b1, b2), d in other.terms.items():
                k = (a1 + b1, a2 + b2)
                s = out.get(k, Fraction(0)) + c * d
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return APoly(out)

    def __rmul__(self, other: Scalar) -> "APoly":
        return self.scale(other)

    def derive(self, i: int) -> "APoly":
        """Formal partial derivative d/dt_i; term t^m -> m_i t^(m - e_i)."""
        if i not in (1, 2):
            raise ValueError("axis must be 1 or 2")
        out: dict[AMono, Fraction] = {}
        for (m1, m2), c in self.terms.items():
            if i == 1:
                if m1 != 0:
                    out[(m1 - 1, m2)] = c * m1
            else:
                if m2 != 0:
                    out[(m1, m2 - 1)] = c * m2
        return APoly(out)

    def eval_at_one_zero(self) -> Fraction:
        """Evaluate at (t1, t2) = (1, 0); zero iff the element lies in m_{1,0}."""
        total = Fraction(0)
        for (_, m2), c in self.terms.items():
            if m2 == 0:
                total += c
        return total

    def shift(self, d1: int, d2: int) -> "APoly":
        """Multiply by the monomial t1^d1 * t2^d2."""
        return APoly({(m1 + d1, m2 + d2): c for (m1, m2), c in self.terms.items()})

    def sorted_terms(self) -> list[tuple[AMono, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def render(self) -> str:
        parts = []
        for (m1, m2), c in self.sorted_terms():
            parts.append(format_coeff_term(c, monomial_str((("t1", m1), ("t2", m2)))))
        return join_terms(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"APoly({self.render()})"
