"""The jet Lie algebra by structure constants, its concrete realizations,
and finite-dimensional modules pulled back from gl2.

Basis symbols X_k(m) with k in {1,2} and m in Z x Z+ \\ {(0,0)} carry the
three bracket families

  [X1(m), X1(s)] = m1[s2=0] X1(m) - s1[m2=0] X1(s) + (s1-m1) X1(m+s)
  [X2(m), X2(s)] = -s2[m2=0] X2(s-e2) + m2[s2=0] X2(m-e2) + (s2-m2) X2(m+s-e2)
  [X1(m), X2(s)] = -s1[m2=0] X2(s) + m2[s2=0] X1(m-e2)
                   + s1 X2(m+s) - m2 X1(m+s-e2)

with any produced X_k(0,0) equal to zero.  The same algebra is realized
concretely inside the smash slice (via xk) and inside the vector fields
vanishing at (1,0) (via theta); the three brackets are cross-checked by
the verification sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Tuple, Union

from .apoly import APoly, Scalar, format_coeff_term, join_terms
from .matrices import (
    Matrix,
    mat_add,
    mat_commutator,
    mat_from_rows,
    mat_is_zero,
    mat_scale,
    mat_sub,
    mat_zero,
)
from .smash import SmashElem, xk
from .vfields import NotInSubalgebra, VField

# (k, (m1, m2)) with m != (0, 0)
LKey = Tuple[int, Tuple[int, int]]


class LElem:
    """Sparse rational combination of the basis symbols X_k(m)."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[LKey, Scalar] | Iterable[tuple[LKey, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[LKey, Fraction] = {}
        for key, c in items:
            k, (m1, m2) = key
            if k not in (1, 2) or m2 < 0:
                raise ValueError(f"invalid basis key {key}")
            if (m1, m2) == (0, 0):
                continue  # X_k(0,0) = 0
            c = Fraction(c) + clean.get(key, Fraction(0))
            if c:
                clean[key] = c
            else:
                clean.pop(key, None)
        self.terms = clean
        self._hash: int | None = None

    @staticmethod
    def zero() -> "LElem":
        return LElem()

    @staticmethod
    def basis(k: int, m: Tuple[int, int]) -> "LElem":
        return LElem({(k, m): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, LElem):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other: "LElem") -> "LElem":
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LElem(out)

    def __sub__(self, other: "LElem") -> "LElem":
        return self + (-other)

    def __neg__(self) -> "LElem":
        return LElem({k: -c for k, c in self.terms.items()})

    def scale(self, c: Scalar) -> "LElem":
        c = Fraction(c)
        if not c:
            return LElem()
        return LElem({k: v * c for k, v in self.terms.items()})

    def bracket(self, other: "LElem") -> "LElem":
        out: dict[LKey, Fraction] = {}

        def add(k: int, m: Tuple[int, int], c: Fraction) -> None:
            if not c or m == (0, 0):
                return
            key = (k, m)
            s = out.get(key, Fraction(0)) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)

        for (k, m), c in self.terms.items():
            for (l, s), d in other.terms.items():
                cd = c * d
                if k == l == 1:
                    _bracket_11(m, s, cd, add)
                elif k == l == 2:
                    _bracket_22(m, s, cd, add)
                elif k == 1:
                    _bracket_12(m, s, cd, add)
                else:
                    _bracket_12(s, m, -cd, add)
        return LElem(out)

    def sorted_terms(self) -> list[tuple[LKey, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def render(self) -> str:
        parts = []
        for (k, (m1, m2)), c in self.sorted_terms():
            parts.append(format_coeff_term(c, f"X{k}({m1},{m2})"))
        return join_terms(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"LElem({self.render()})"


def _bracket_11(m, s, cd, add) -> None:
    m1, m2 = m
    s1, s2 = s
    if s2 == 0 and m1:
        add(1, m, cd * m1)
    if m2 == 0 and s1:
        add(1, s, -cd * s1)
    if s1 != m1:
        add(1, (m1 + s1, m2 + s2), cd * (s1 - m1))


def _bracket_22(m, s, cd, add) -> None:
    m1, m2 = m
    s1, s2 = s
    if m2 == 0 and s2:
        add(2, (s1, s2 - 1), -cd * s2)
    if s2 == 0 and m2:
        add(2, (m1, m2 - 1), cd * m2)
    if s2 != m2:
        add(2, (m1 + s1, m2 + s2 - 1), cd * (s2 - m2))


def _bracket_12(m, s, cd, add) -> None:
    m1, m2 = m
    s1, s2 = s
    if m2 == 0 and s1:
        add(2, s, -cd * s1)
    if s2 == 0 and m2:
        add(1, (m1, m2 - 1), cd * m2)
    if s1:
        add(2, (m1 + s1, m2 + s2), cd * s1)
    if m2:
        add(1, (m1 + s1, m2 + s2 - 1), -cd * m2)


def theta(x: LElem) -> VField:
    """Isomorphism onto the fields vanishing at (1,0).

    X1(m) |-> (t^m - [m2=0]) t1 d1,  X2(m) |-> (t^m - [m2=0]) d2.
    """
    f1 = APoly.zero()
    f2 = APoly.zero()
    for (k, (m1, m2)), c in x.terms.items():
        p = APoly.mono(m1, m2, c)
        if m2 == 0:
            p = p - APoly.constant(c)
        if k == 1:
            f1 = f1 + p.shift(1, 0)
        else:
            f2 = f2 + p
    return VField(f1, f2)


def theta_inv(x: VField) -> LElem:
    """Inverse of theta on fields vanishing at (1,0).

    Divides the d1-coefficient by t1, expands both coefficients in
    monomials, and reads off basis coefficients; the constant terms cancel
    because the coefficients vanish at (1,0).
    """
    if not x.in_m10_delta():
        raise NotInSubalgebra(f"field does not vanish at (1, 0): {x}")
    terms: dict[LKey, Fraction] = {}
    for k, f in ((1, x.f1), (2, x.f2)):
        g = f.shift(-1, 0) if k == 1 else f
        for (m1, m2), c in g.terms.items():
            if (m1, m2) != (0, 0):
                terms[(k, (m1, m2))] = terms.get((k, (m1, m2)), Fraction(0)) + c
    return LElem(terms)


def lelem_to_smash(x: LElem) -> SmashElem:
    """Realize an abstract element inside the smash slice via xk."""
    out = SmashElem.zero()
    for (k, m), c in x.terms.items():
        out = out + xk(k, m).scale(c)
    return out


def lelem_from_smash(s: SmashElem) -> LElem:
    """Read a smash-slice element known to lie in span{xk} back off.

    Every term of xk(k, m) has u2 = 0 only for the leading i = 0 summand
    (with coefficient 1) and for the [m2=0] correction at u = (0,0),
    alpha = (e_k-ish, 0); so the cover terms with u2 = 0 away from that
    corner determine the candidate coefficients, which are then verified
    by rebuilding.  Raises ValueError if the element is not in the span.
    """
    if not s.apart.is_zero():
        raise ValueError("element has a nonzero scalar part")
    candidates: dict[LKey, Fraction] = {}
    for ((u1, u2), (a1, a2), k), c in s.cover.items():
        if u2 != 0:
            continue
        if u1 == 0 and a2 == 0:
            continue  # correction-term corner, determined by the others
        m = (-u1, a2)
        candidates[(k, m)] = candidates.get((k, m), Fraction(0)) + c
    guess = LElem(candidates)
    if lelem_to_smash(guess) != s:
        raise ValueError("element is not in the span of the xk generators")
    return guess


@dataclass(frozen=True)
class GL2Module:
    """A finite-dimensional gl2 module by its four representation matrices."""

    name: str
    dim: int
    e11: Matrix
    e12: Matrix
    e21: Matrix
    e22: Matrix

    def rep(self, i: int, j: int) -> Matrix:
        return {(1, 1): self.e11, (1, 2): self.e12, (2, 1): self.e21, (2, 2): self.e22}[(i, j)]

    def rep_of(self, g: Matrix) -> Matrix:
        """Apply the representation to a gl2 element given as a 2x2 matrix."""
        out = mat_zero(self.dim)
        for i in (1, 2):
            for j in (1, 2):
                c = g[i - 1][j - 1]
                if c:
                    out = mat_add(out, mat_scale(self.rep(i, j), c))
        return out

    def satisfies_gl2_relations(self) -> bool:
        """[rho(E_ij), rho(E_kl)] = [j=k] rho(E_il) - [l=i] rho(E_kj)."""
        for i in (1, 2):
            for j in (1, 2):
                for k in (1, 2):
                    for l in (1, 2):
                        lhs = mat_commutator(self.rep(i, j), self.rep(k, l))
                        rhs = mat_zero(self.dim)
                        if j == k:
                            rhs = mat_add(rhs, self.rep(i, l))
                        if l == i:
                            rhs = mat_sub(rhs, self.rep(k, j))
                        if lhs != rhs:
                            return False
        return True

    @staticmethod
    def natural() -> "GL2Module":
        def unit(i, j):
            rows = [[0, 0], [0, 0]]
            rows[i][j] = 1
            return mat_from_rows(rows)

        return GL2Module("natural", 2, unit(0, 0), unit(0, 1), unit(1, 0), unit(1, 1))

    @staticmethod
    def adjoint() -> "GL2Module":
        """gl2 acting on itself; basis E11, E12, E21, E22."""
        nat = GL2Module.natural()
        basis = [nat.e11, nat.e12, nat.e21, nat.e22]

        def ad(g: Matrix) -> Matrix:
            cols = []
            for b in basis:
                img = mat_commutator(g, b)
                cols.append([img[0][0], img[0][1], img[1][0], img[1][1]])
            return mat_from_rows(zip(*cols))

        return GL2Module("adjoint", 4, ad(nat.e11), ad(nat.e12), ad(nat.e21), ad(nat.e22))

    @staticmethod
    def sym2() -> "GL2Module":
        """Symmetric square of the natural module; basis x^2, xy, y^2."""
        nat = GL2Module.natural()

        def sym(g: Matrix) -> Matrix:
            # derivation action on degree-2 monomials in (x, y)
            a, b = g[0]
            c, d = g[1]
            return mat_from_rows(
                [
                    [2 * a, b, 0],
                    [2 * c, a + d, 2 * b],
                    [0, c, 2 * d],
                ]
            )

        return GL2Module("sym2", 3, sym(nat.e11), sym(nat.e12), sym(nat.e21), sym(nat.e22))

    @staticmethod
    def by_name(name: str) -> "GL2Module":
        try:
            return {"natural": GL2Module.natural, "adjoint": GL2Module.adjoint, "sym2": GL2Module.sym2}[name]()
        except KeyError:
            raise ValueError(f"unknown gl2 module {name!r}") from None

    def corrupted(self) -> "GL2Module":
        """Copy with rho(E12) damaged so the gl2 relations fail; test control."""
        bad = [list(row) for row in self.e12]
        bad[0][0] += 1
        return GL2Module(self.name + "-corrupted", self.dim, self.e11, mat_from_rows(bad), self.e21, self.e22)


def lift_gl2(x: LElem, module: GL2Module) -> Matrix:
    """Pull an abstract element down to an endomorphism of a gl2 module.

    X_k(i,0) |-> i rho(E_1k),  X_k(i,1) |-> rho(E_2k),  X_k(m) |-> 0 for
    m2 >= 2, extended linearly.
    """
    out = mat_zero(module.dim)
    for (k, (m1, m2)), c in x.terms.items():
        if m2 == 0:
            if m1:
                out = mat_add(out, mat_scale(module.rep(1, k), c * m1))
        elif m2 == 1:
            out = mat_add(out, mat_scale(module.rep(2, k), c))
    return out
