"""Derivations of Q[t1^(+-1), t2] and the quotient map onto gl2.

A vector field is a pair of coefficient polynomials (f1, f2) standing for
f1*d1 + f2*d2.  The subalgebra of fields whose coefficients vanish at the
point (t1, t2) = (1, 0) projects onto gl2 by taking linear parts; the
projection is computed on representatives via formal partials.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Tuple

from .apoly import APoly, Scalar, format_coeff_term, join_terms
from .matrices import Matrix, mat_from_rows

GL2Elem = Matrix


class NotInSubalgebra(ValueError):
    """Raised when an operation needs a field vanishing at (1, 0)."""


class VField:
    """Derivation f1*d1 + f2*d2 of the mixed Laurent/polynomial algebra."""

    __slots__ = ("f1", "f2", "_hash")

    def __init__(self, f1: APoly | None = None, f2: APoly | None = None):
        self.f1 = f1 if f1 is not None else APoly.zero()
        self.f2 = f2 if f2 is not None else APoly.zero()
        self._hash: int | None = None

    @staticmethod
    def zero() -> "VField":
        return VField()

    @staticmethod
    def basis(k: int, alpha: Tuple[int, int]) -> "VField":
        """The spanning field t^alpha d_k, alpha in Z x Z+."""
        p = APoly.mono(*alpha)
        return VField(p, None) if k == 1 else VField(None, p)

    def is_zero(self) -> bool:
        return self.f1.is_zero() and self.f2.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, VField):
            return NotImplemented
        return self.f1 == other.f1 and self.f2 == other.f2

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.f1, self.f2))
        return self._hash

    def __add__(self, other: "VField") -> "VField":
        return VField(self.f1 + other.f1, self.f2 + other.f2)

    def __sub__(self, other: "VField") -> "VField":
        return VField(self.f1 - other.f1, self.f2 - other.f2)

    def __neg__(self) -> "VField":
        return VField(-self.f1, -self.f2)

    def scale(self, c: Scalar) -> "VField":
        return VField(self.f1.scale(c), self.f2.scale(c))

    def apply(self, p: APoly) -> APoly:
        """The derivation action f1 * dp/dt1 + f2 * dp/dt2."""
        return self.f1 * p.derive(1) + self.f2 * p.derive(2)

    def bracket(self, other: "VField") -> "VField":
        """Lie bracket of derivations; equals the operator commutator."""
        return VField(
            self.apply(other.f1) - other.apply(self.f1),
            self.apply(other.f2) - other.apply(self.f2),
        )

    def to_weyl(self):
        """Embed into the Weyl algebra as f1 (x) d1 + f2 (x) d2 terms."""
        from .weyl import DOp

        terms = {}
        for (m1, m2), c in self.f1.terms.items():
            terms[(m1, m2, 1, 0)] = c
        for (m1, m2), c in self.f2.terms.items():
            terms[(m1, m2, 0, 1)] = terms.get((m1, m2, 0, 1), 0) + c
        return DOp(terms)

    def in_m10_delta(self) -> bool:
        """True iff both coefficients vanish at the point (1, 0)."""
        return self.f1.eval_at_one_zero() == 0 and self.f2.eval_at_one_zero() == 0

    def pi_project(self) -> GL2Elem:
        """Linear part at (1, 0) as a gl2 element.

        Writing f_k = alpha_k (t1 - 1) + beta_k t2 module the square of the
        maximal ideal, returns alpha_1 E11 + alpha_2 E12 + beta_1 E21 +
        beta_2 E22.  Raises NotInSubalgebra for fields not vanishing at (1,0).
        """
        if not self.in_m10_delta():
            raise NotInSubalgebra(f"field does not vanish at (1, 0): {self}")
        alpha = [f.derive(1).eval_at_one_zero() for f in (self.f1, self.f2)]
        beta = [f.derive(2).eval_at_one_zero() for f in (self.f1, self.f2)]
        return mat_from_rows([alpha, beta])

    def render(self) -> str:
        parts = []
        if self.f1:
            parts.append(f"({self.f1.render()})*d1")
        if self.f2:
            parts.append(f"({self.f2.render()})*d2")
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"VField({self.render()})"


def gl2_unit(i: int, j: int) -> GL2Elem:
    """Matrix unit E_ij, 1-based indices."""
    rows = [[Fraction(0)] * 2 for _ in range(2)]
    rows[i - 1][j - 1] = Fraction(1)
    return mat_from_rows(rows)
