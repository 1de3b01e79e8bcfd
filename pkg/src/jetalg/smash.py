"""Degree-one slice of the smash product of A with the enveloping algebra.

Elements are formal sums  sum coeff * t^u . (t^alpha d_k)  +  h . 1  with
u, alpha in Z x Z+ and h in A.  The bracket of two such elements stays in
the slice, which is all the distinguished commuting generators X_k(m) and
their mutual brackets ever need.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Tuple, Union

from .apoly import APoly, Scalar, format_coeff_term, join_terms, monomial_str
from .vfields import VField

# (u, alpha, k): the term t^u . t^alpha d_k
CoverKey = Tuple[Tuple[int, int], Tuple[int, int], int]


class SmashElem:
    """Element f.X + h.1 of the degree-one smash slice."""

    __slots__ = ("cover", "apart", "_hash")

    def __init__(
        self,
        cover: Mapping[CoverKey, Scalar] | Iterable[tuple[CoverKey, Scalar]] = (),
        apart: APoly | None = None,
    ):
        items = cover.items() if isinstance(cover, Mapping) else cover
        clean: dict[CoverKey, Fraction] = {}
        for key, c in items:
            (u1, u2), (a1, a2), k = key
            if u2 < 0 or a2 < 0 or k not in (1, 2):
                raise ValueError(f"invalid cover key {key}")
            c = Fraction(c) + clean.get(key, Fraction(0))
            if c:
                clean[key] = c
            else:
                clean.pop(key, None)
        self.cover = clean
        self.apart = apart if apart is not None else APoly.zero()
        self._hash: int | None = None

    @staticmethod
    def zero() -> "SmashElem":
        return SmashElem()

    @staticmethod
    def embed_a(p: APoly) -> "SmashElem":
        """The inclusion h |-> h . 1."""
        return SmashElem((), p)

    @staticmethod
    def embed_g(x: VField) -> "SmashElem":
        """The inclusion X |-> 1 . X, split over the spanning fields."""
        cover = {}
        for (m1, m2), c in x.f1.terms.items():
            cover[((0, 0), (m1, m2), 1)] = c
        for (m1, m2), c in x.f2.terms.items():
            cover[((0, 0), (m1, m2), 2)] = c
        return SmashElem(cover)

    @staticmethod
    def cover_term(u: Tuple[int, int], alpha: Tuple[int, int], k: int, coeff: Scalar = 1) -> "SmashElem":
        return SmashElem({(u, alpha, k): coeff})

    def is_zero(self) -> bool:
        return not self.cover and self.apart.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, SmashElem):
            return NotImplemented
        return self.cover == other.cover and self.apart == other.apart

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self.cover.items()), self.apart))
        return self._hash

    def __add__(self, other: "SmashElem") -> "SmashElem":
        out = dict(self.cover)
        for k, c in other.cover.items():
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return SmashElem(out, self.apart + other.apart)

    def __sub__(self, other: "SmashElem") -> "SmashElem":
        return self + (-other)

    def __neg__(self) -> "SmashElem":
        return SmashElem({k: -c for k, c in self.cover.items()}, -self.apart)

    def scale(self, c: Scalar) -> "SmashElem":
        c = Fraction(c)
        if not c:
            return SmashElem()
        return SmashElem({k: v * c for k, v in self.cover.items()}, self.apart.scale(c))

    def mul_left_a(self, p: APoly) -> "SmashElem":
        """Left multiplication by p in A: scales the u-part of every term."""
        cover: dict[CoverKey, Fraction] = {}
        for ((u1, u2), alpha, k), c in self.cover.items():
            for (p1, p2), d in p.terms.items():
                key = ((u1 + p1, u2 + p2), alpha, k)
                s = cover.get(key, Fraction(0)) + c * d
                if s:
                    cover[key] = s
                else:
                    cover.pop(key, None)
        return SmashElem(cover, self.apart * p)

    def bracket(self, other: "SmashElem") -> "SmashElem":
        """Smash bracket on the slice.

        [f.X, g.Y] = f X(g).Y - g Y(f).X + fg.[X,Y]
        [f.X, h.1] = f X(h).1,   [h.1, h'.1] = 0.
        """
        cover: dict[CoverKey, Fraction] = {}
        apart: dict[Tuple[int, int], Fraction] = {}

        def add_cover(key: CoverKey, c: Fraction) -> None:
            s = cover.get(key, Fraction(0)) + c
            if s:
                cover[key] = s
            else:
                cover.pop(key, None)

        def add_apart(key: Tuple[int, int], c: Fraction) -> None:
            s = apart.get(key, Fraction(0)) + c
            if s:
                apart[key] = s
            else:
                apart.pop(key, None)

        for (u, alpha, k), c in self.cover.items():
            for (v, beta, l), d in other.cover.items():
                cd = c * d
                # f X(g) . Y with X = t^alpha d_k applied to g = t^v
                if v[k - 1] != 0:
                    w = (u[0] + v[0] + alpha[0], u[1] + v[1] + alpha[1])
                    w = (w[0] - (k == 1), w[1] - (k == 2))
                    add_cover((w, beta, l), cd * v[k - 1])
                # - g Y(f) . X
                if u[l - 1] != 0:
                    w = (u[0] + v[0] + beta[0], u[1] + v[1] + beta[1])
                    w = (w[0] - (l == 1), w[1] - (l == 2))
                    add_cover((w, alpha, k), -cd * u[l - 1])
                # fg . [X, Y] with the vector-field bracket
                uv = (u[0] + v[0], u[1] + v[1])
                if beta[k - 1] != 0:
                    g = (alpha[0] + beta[0] - (k == 1), alpha[1] + beta[1] - (k == 2))
                    add_cover((uv, g, l), cd * beta[k - 1])
                if alpha[l - 1] != 0:
                    g = (alpha[0] + beta[0] - (l == 1), alpha[1] + beta[1] - (l == 2))
                    add_cover((uv, g, k), -cd * alpha[l - 1])

        # [f.X, h.1] = f X(h) . 1 and the antisymmetric mirror
        for (u, alpha, k), c in self.cover.items():
            for (h1, h2), d in other.apart.terms.items():
                hk = h1 if k == 1 else h2
                if hk != 0:
                    w = (u[0] + alpha[0] + h1 - (k == 1), u[1] + alpha[1] + h2 - (k == 2))
                    add_apart(w, c * d * hk)
        for (v, beta, l), d in other.cover.items():
            for (h1, h2), c in self.apart.terms.items():
                hl = h1 if l == 1 else h2
                if hl != 0:
                    w = (v[0] + beta[0] + h1 - (l == 1), v[1] + beta[1] + h2 - (l == 2))
                    add_apart(w, -c * d * hl)

        return SmashElem(cover, APoly(apart))

    def sorted_cover(self) -> list[tuple[CoverKey, Fraction]]:
        return sorted(self.cover.items(), key=lambda kv: kv[0], reverse=True)

    def render(self) -> str:
        parts = []
        for ((u1, u2), (a1, a2), k), c in self.sorted_cover():
            left = format_coeff_term(c, monomial_str((("t1", u1), ("t2", u2))))
            right = monomial_str((("t1", a1), ("t2", a2), (f"d{k}", 1)))
            parts.append(f"{left} . {right}")
        out = join_terms(parts)
        if self.apart:
            tail = f"({self.apart.render()}) . 1"
            out = tail if out == "0" else out + " + " + tail
        return out

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"SmashElem({self.render()})"


def xk(k: int, m: Tuple[int, int]) -> SmashElem:
    """The distinguished degree-zero element X_k(m) of the smash slice.

    X_k(m) = sum_i (-1)^i C(m2,i) t1^(-m1) t2^i . t1^(m1+[k=1]) t2^(m2-i) d_k
             - [m2=0] 1 . t1^([k=1]) d_k,  and X_k(0,0) = 0.
    """
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    m1, m2 = m
    if m2 < 0:
        raise ValueError("m2 must be nonnegative")
    cover: dict[CoverKey, Fraction] = {}
    dk1 = 1 if k == 1 else 0
    for i in range(m2 + 1):
        key = ((-m1, i), (m1 + dk1, m2 - i), k)
        cover[key] = cover.get(key, Fraction(0)) + Fraction((-1) ** i * comb(m2, i))
    if m2 == 0:
        key = ((0, 0), (dk1, 0), k)
        cover[key] = cover.get(key, Fraction(0)) - 1
    return SmashElem(cover)
