"""The isomorphism between the smash slice and the Weyl-tensor picture.

Elements of the target are truncated at tensor degree one in the abstract
jet algebra: a Weyl-operator part plus finitely many Weyl coefficients
attached to basis symbols X_k(m).  phi sends the smash generators in, rho
sends the tensor generators back, and the two are mutually inverse on the
slice; brackets of phi-images close inside the truncation because their
coefficients commute, and a bracket that would escape raises.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Tuple, Union

from .apoly import APoly, Scalar
from .jetlie import LElem, LKey
from .smash import SmashElem, xk
from .weyl import DOp


class TruncationEscape(ArithmeticError):
    """Bracket result would have tensor degree two in the jet algebra."""


class DegreeTooHigh(ValueError):
    """rho preimage would leave the degree-one smash slice."""


class DLElem:
    """Element d (x) 1 + sum_key q_key (x) X_key of the truncated tensor algebra."""

    __slots__ = ("part0", "part1", "_hash")

    def __init__(
        self,
        part0: DOp | None = None,
        part1: Mapping[LKey, DOp] | Iterable[tuple[LKey, DOp]] = (),
    ):
        items = part1.items() if isinstance(part1, Mapping) else part1
        clean: dict[LKey, DOp] = {}
        for key, q in items:
            k, (m1, m2) = key
            if k not in (1, 2) or m2 < 0:
                raise ValueError(f"invalid basis key {key}")
            if (m1, m2) == (0, 0):
                continue  # X_k(0,0) = 0
            q = clean[key] + q if key in clean else q
            if q:
                clean[key] = q
            else:
                clean.pop(key, None)
        self.part0 = part0 if part0 is not None else DOp.zero()
        self.part1 = clean
        self._hash: int | None = None

    @staticmethod
    def zero() -> "DLElem":
        return DLElem()

    @staticmethod
    def from_dop(d: DOp) -> "DLElem":
        return DLElem(d)

    @staticmethod
    def tensor(d: DOp, key: LKey | None) -> "DLElem":
        """d (x) 1 for key None, else d (x) X_key."""
        if key is None:
            return DLElem(d)
        return DLElem(None, {key: d})

    def is_zero(self) -> bool:
        return self.part0.is_zero() and not self.part1

    def __eq__(self, other) -> bool:
        if not isinstance(other, DLElem):
            return NotImplemented
        return self.part0 == other.part0 and self.part1 == other.part1

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.part0, frozenset(self.part1.items())))
        return self._hash

    def __add__(self, other: "DLElem") -> "DLElem":
        out = dict(self.part1)
        for k, q in other.part1.items():
            s = out[k] + q if k in out else q
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return DLElem(self.part0 + other.part0, out)

    def __sub__(self, other: "DLElem") -> "DLElem":
        return self + (-other)

    def __neg__(self) -> "DLElem":
        return DLElem(-self.part0, {k: -q for k, q in self.part1.items()})

    def scale(self, c: Scalar) -> "DLElem":
        c = Fraction(c)
        if not c:
            return DLElem()
        return DLElem(self.part0.scale(c), {k: q.scale(c) for k, q in self.part1.items()})

    def bracket(self, other: "DLElem") -> "DLElem":
        """Commutator inside the degree-one truncation.

        The cross terms commute the Weyl parts onto the attached symbols;
        two symbol-carrying terms combine through the structure constants,
        which is only defined when their Weyl coefficients commute.
        """
        part0 = self.part0.commutator(other.part0)
        part1: dict[LKey, DOp] = {}

        def add(key: LKey, q: DOp) -> None:
            if key[1] == (0, 0) or q.is_zero():
                return
            s = part1[key] + q if key in part1 else q
            if s:
                part1[key] = s
            else:
                part1.pop(key, None)

        for key, q in other.part1.items():
            add(key, self.part0.commutator(q))
        for key, q in self.part1.items():
            add(key, q.commutator(other.part0))
        for xkey, q in self.part1.items():
            for ykey, r in other.part1.items():
                if q.commutator(r):
                    raise TruncationEscape(
                        f"coefficients of {_key_str(xkey)} and {_key_str(ykey)} do not commute"
                    )
                prod = q * r
                for zkey, c in LElem.basis(*xkey).bracket(LElem.basis(*ykey)).terms.items():
                    add(zkey, prod.scale(c))
        return DLElem(part0, part1)

    def sorted_part1(self) -> list[tuple[LKey, DOp]]:
        return sorted(self.part1.items(), key=lambda kv: kv[0], reverse=True)

    def render(self) -> str:
        parts = []
        if self.part0:
            parts.append(f"({self.part0.render()}) (x) 1")
        for key, q in self.sorted_part1():
            parts.append(f"({q.render()}) (x) {_key_str(key)}")
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"DLElem({self.render()})"


def _key_str(key: LKey) -> str:
    k, (m1, m2) = key
    return f"X{k}({m1},{m2})"


def phi(x: SmashElem) -> DLElem:
    """The forward isomorphism on the smash slice.

    On generators,
      phi(1 . t^(m + [k=1]e1) d_k) = t1^(m1+[k=1]) t2^m2 d_k (x) 1
            + sum_i C(m2,i) t1^m1 t2^i (x) X_k(m - i e2),
      phi(t^m . 1) = t^m (x) 1,
    extended by left multiplication of every coefficient for general f . X.
    """
    part0: DOp = DOp.from_apoly(x.apart)
    part1: dict[LKey, DOp] = {}
    for ((u1, u2), (a1, a2), k), c in x.cover.items():
        dk1 = 1 if k == 1 else 0
        m1 = a1 - dk1
        # t^u * t^alpha d_k is already normal-ordered
        part0 = part0 + DOp.mono(u1 + a1, u2 + a2, dk1, 1 - dk1, c)
        for i in range(a2 + 1):
            m = (m1, a2 - i)
            if m == (0, 0):
                continue
            key = (k, m)
            q = DOp.mono(u1 + m1, u2 + i, 0, 0, c * comb(a2, i))
            part1[key] = part1[key] + q if key in part1 else q
    return DLElem(part0, part1)


def rho(x: DLElem) -> SmashElem:
    """The inverse map back to the smash slice.

    t1^a t2^b (x) 1        |-> t1^a t2^b . 1
    t1^a t2^b d1 (x) 1     |-> t1^(a-1) t2^b . t1 d1
    t1^a t2^b d2 (x) 1     |-> t1^a t2^b . d2
    q (x) X_k(m)           |-> q scaled onto the smash generator xk(k, m)

    Raises DegreeTooHigh if the Weyl part has derivative order above one or
    any attached coefficient is not a pure multiplication operator.
    """
    out = SmashElem.zero()
    apart: dict[Tuple[int, int], Fraction] = {}
    cover = []
    for (a, b, c, d), coeff in x.part0.terms.items():
        if c + d > 1:
            raise DegreeTooHigh(f"derivative order {c + d} in Weyl part term t1^{a}*t2^{b}*d1^{c}*d2^{d}")
        if c == 1:
            cover.append((((a - 1, b), (1, 0), 1), coeff))
        elif d == 1:
            cover.append((((a, b), (0, 0), 2), coeff))
        else:
            apart[(a, b)] = apart.get((a, b), Fraction(0)) + coeff
    out = out + SmashElem(cover, APoly(apart))
    for (k, m), q in x.part1.items():
        if not q.is_multiplication():
            raise DegreeTooHigh(f"coefficient of X{k}{m} is not a multiplication operator")
        p = APoly({(a, b): c for (a, b, _, _), c in q.terms.items()})
        out = out + xk(k, m).mul_left_a(p)
    return out
