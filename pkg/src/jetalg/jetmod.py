"""Weight modules over the Weyl algebra and tensor jet modules.

A weight module is spanned by shifted monomials t^(a+n) for a fixed
rational weight a, in one of three shapes: t2-polynomial, t2-Laurent, or
the quotient of the Laurent shape by the polynomial one.  Tensoring with a
finite-dimensional gl2 module gives the jet modules; vector fields act by

  t^(m + [k=1]e1) d_k . (g (x) v) = (t^(m + [k=1]e1) d_k g) (x) v
      + m1 t^m g (x) E_1k v + m2 t^(m-e2) g (x) E_2k v

and the algebra acts on the left factor alone.  Everything is exact, and
every operator maps basis vectors to finitely many basis vectors, so the
axiom sweeps need no truncation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Tuple

from .apoly import APoly, format_coeff_term, join_terms
from .jetlie import GL2Module
from .vfields import VField
from .weyl import DOp

PKey = Tuple[int, int]
PTerms = Dict[PKey, Fraction]
JetKey = Tuple[PKey, int]
JetTerms = Dict[JetKey, Fraction]


class Variant(enum.Enum):
    """Shape of the t2 direction of a weight module."""

    POLY = "poly"
    LAURENT = "laurent"
    QUOTIENT = "quotient"


@dataclass(frozen=True)
class WeightDMod:
    """Weight module t^a * (t2-shape) with rational weight a = (a1, a2).

    The polynomial and quotient shapes require an integer a2, which is
    normalized away into the basis index; the Laurent shape admits any
    rational a2.
    """

    a1: Fraction
    a2: Fraction
    variant: Variant

    def __post_init__(self):
        object.__setattr__(self, "a1", Fraction(self.a1))
        object.__setattr__(self, "a2", Fraction(self.a2))
        if self.variant is not Variant.LAURENT:
            if self.a2.denominator != 1:
                raise ValueError(f"{self.variant.value} shape needs integer a2, got {self.a2}")
            object.__setattr__(self, "a2", Fraction(0))

    def admits(self, n2: int) -> bool:
        if self.variant is Variant.POLY:
            return n2 >= 0
        if self.variant is Variant.QUOTIENT:
            return n2 < 0
        return True


def validate_pterms(terms: PTerms, mod: WeightDMod) -> None:
    for (n1, n2) in terms:
        if not mod.admits(n2):
            raise ValueError(f"index {(n1, n2)} outside the {mod.variant.value} shape")


def p_act(op: DOp, v: PTerms, mod: WeightDMod) -> PTerms:
    """Weyl action on the weight module, with the shape projection.

    t1^p t2^q d1^c d2^d . t^(a+n) picks up the falling factorials of
    a1+n1 and a2+n2 and shifts n by (p-c, q-d).
    """
    out: PTerms = {}
    for (p, q, c, d), x in op.terms.items():
        for (n1, n2), y in v.items():
            coeff = x * y * falling_frac(mod.a1 + n1, c) * falling_frac(mod.a2 + n2, d)
            if not coeff:
                continue
            k = (n1 + p - c, n2 + q - d)
            if not mod.admits(k[1]):
                continue
            s = out.get(k, Fraction(0)) + coeff
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def falling_frac(x: Fraction, j: int) -> Fraction:
    out = Fraction(1)
    for k in range(j):
        out *= x - k
    return out


def jet_act_a(m: PKey, w: JetTerms, mod: WeightDMod) -> JetTerms:
    """Multiplication by t^m on the left factor, m in Z x Z+."""
    if m[1] < 0:
        raise ValueError("m2 must be nonnegative")
    out: JetTerms = {}
    for ((n1, n2), j), c in w.items():
        k = (n1 + m[0], n2 + m[1])
        if not mod.admits(k[1]):
            continue
        key = (k, j)
        s = out.get(key, Fraction(0)) + c
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return out


def jet_act_a_poly(p: APoly, w: JetTerms, mod: WeightDMod) -> JetTerms:
    out: JetTerms = {}
    for m, c in p.terms.items():
        _accumulate(out, jet_act_a(m, w, mod), c)
    return out


def jet_act_vf(k: int, m: PKey, w: JetTerms, mod: WeightDMod, module: GL2Module) -> JetTerms:
    """Action of the generator t^(m + [k=1]e1) d_k, m in Z x Z+."""
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    m1, m2 = m
    if m2 < 0:
        raise ValueError("m2 must be nonnegative")
    dk1 = 1 if k == 1 else 0
    out: JetTerms = {}
    e1k = module.rep(1, k)
    e2k = module.rep(2, k)
    for ((n1, n2), j), c in w.items():
        # (t^(m+[k=1]e1) d_k g) (x) v
        eigen = (mod.a1 + n1) if k == 1 else (mod.a2 + n2)
        if eigen:
            key = ((n1 + m1, n2 + m2 - (0 if k == 1 else 1)), j)
            if mod.admits(key[0][1]):
                _add(out, key, c * eigen)
        # m1 t^m g (x) E_1k v
        if m1:
            tgt = (n1 + m1, n2 + m2)
            if mod.admits(tgt[1]):
                for i in range(module.dim):
                    coeff = e1k[i][j]
                    if coeff:
                        _add(out, (tgt, i), c * m1 * coeff)
        # m2 t^(m-e2) g (x) E_2k v
        if m2:
            tgt = (n1 + m1, n2 + m2 - 1)
            if mod.admits(tgt[1]):
                for i in range(module.dim):
                    coeff = e2k[i][j]
                    if coeff:
                        _add(out, (tgt, i), c * m2 * coeff)
    return out


def jet_act_vfield(x: VField, w: JetTerms, mod: WeightDMod, module: GL2Module) -> JetTerms:
    """Linear extension of the generator action to any vector field."""
    out: JetTerms = {}
    for (g1, g2), c in x.f1.terms.items():
        _accumulate(out, jet_act_vf(1, (g1 - 1, g2), w, mod, module), c)
    for (g1, g2), c in x.f2.terms.items():
        _accumulate(out, jet_act_vf(2, (g1, g2), w, mod, module), c)
    return out


def _add(out: JetTerms, key: JetKey, c: Fraction) -> None:
    s = out.get(key, Fraction(0)) + c
    if s:
        out[key] = s
    else:
        out.pop(key, None)


def _accumulate(out: JetTerms, inc: JetTerms, scale: Fraction = Fraction(1)) -> None:
    for key, c in inc.items():
        _add(out, key, c * scale)


def render_jet(w: JetTerms) -> str:
    parts = []
    for ((n1, n2), j), c in sorted(w.items(), reverse=True):
        parts.append(format_coeff_term(c, f"t^({n1},{n2})v{j}"))
    return join_terms(parts)


def basis_window(mod: WeightDMod, module: GL2Module) -> list[tuple[str, JetTerms]]:
    """Small spanning family of basis vectors exercising the shape boundary."""
    if mod.variant is Variant.POLY:
        n2s = (0, 1)
    elif mod.variant is Variant.QUOTIENT:
        n2s = (-1, -2)
    else:
        n2s = (-1, 0)
    out = []
    for n1 in (-1, 1):
        for n2 in n2s:
            for j in range(module.dim):
                out.append((f"t^({n1},{n2})v{j}", {((n1, n2), j): Fraction(1)}))
    return out


JetCase = tuple


def jet_axiom_cases(
    m1_range: Iterable[int],
    m2_range: Iterable[int],
    s1_range: Iterable[int],
    s2_range: Iterable[int],
    mod: WeightDMod,
    module: GL2Module,
) -> list[JetCase]:
    """Enumerate the axiom sweep as plain case tuples.

    (assoc)  t^s (t^r w) = t^(s+r) w           ("assoc", s, r, wname)
    (compat) X (t^s w) = t^s (X w) + X(t^s) w  ("compat", k, m, s, wname)
    (diag)   t1 d1 has eigenvalue a1 + n1      ("diag", wname)
    (brack)  [X, Y] w = X (Y w) - Y (X w)      ("brack", k, m, l, s, wname)

    Generator pairs are unordered (both sweeps are (anti)symmetric in the
    pair), which halves the grid without losing coverage.
    """
    window = basis_window(mod, module)
    names = [name for name, _ in window]
    gens = [(k, (m1, m2)) for k in (1, 2) for m1 in m1_range for m2 in m2_range]
    svals = [(s1, s2) for s1 in s1_range for s2 in s2_range]

    cases: list[JetCase] = []
    for s in svals:
        for r in svals:
            if s > r:
                continue
            cases.extend(("assoc", s, r, w) for w in names)
    for (k, m) in gens:
        for s in svals:
            cases.extend(("compat", k, m, s, w) for w in names)
    cases.extend(("diag", w) for w in names)
    for i, (k, m) in enumerate(gens):
        for (l, s) in gens[i:]:
            cases.extend(("brack", k, m, l, s, w) for w in names)
    return cases


def eval_jet_axiom_case(
    mod: WeightDMod, module: GL2Module, case: JetCase
) -> tuple[str, bool, str, str]:
    """Evaluate one axiom case; returns (case key, ok, expected, actual)."""
    window = dict(basis_window(mod, module))
    kind = case[0]
    if kind == "assoc":
        _, s, r, wname = case
        w = window[wname]
        lhs = jet_act_a(s, jet_act_a(r, w, mod), mod)
        rhs = jet_act_a((s[0] + r[0], s[1] + r[1]), w, mod)
        key = f"assoc s=({s[0]},{s[1]}) r=({r[0]},{r[1]}) w={wname}"
    elif kind == "compat":
        _, k, m, s, wname = case
        w = window[wname]
        gamma = (m[0] + (1 if k == 1 else 0), m[1])
        xf = VField.basis(k, gamma).apply(APoly.mono(*s))
        lhs = jet_act_vf(k, m, jet_act_a(s, w, mod), mod, module)
        rhs = jet_act_a(s, jet_act_vf(k, m, w, mod, module), mod)
        _accumulate(rhs, jet_act_a_poly(xf, w, mod))
        key = f"compat X=({k},{m[0]},{m[1]}) s=({s[0]},{s[1]}) w={wname}"
    elif kind == "diag":
        _, wname = case
        w = window[wname]
        ((n1, _), _j), = w.keys()
        lhs = jet_act_vf(1, (0, 0), w, mod, module)
        rhs = {key: c * (mod.a1 + n1) for key, c in w.items() if mod.a1 + n1 != 0}
        key = f"diag w={wname}"
    elif kind == "brack":
        _, k, m, l, s, wname = case
        w = window[wname]
        xfield = VField.basis(k, (m[0] + (1 if k == 1 else 0), m[1]))
        yfield = VField.basis(l, (s[0] + (1 if l == 1 else 0), s[1]))
        lhs = jet_act_vfield(xfield.bracket(yfield), w, mod, module)
        rhs = jet_act_vf(k, m, jet_act_vf(l, s, w, mod, module), mod, module)
        _accumulate(rhs, jet_act_vf(l, s, jet_act_vf(k, m, w, mod, module), mod, module), Fraction(-1))
        key = f"brack X=({k},{m[0]},{m[1]}) Y=({l},{s[0]},{s[1]}) w={wname}"
    else:
        raise ValueError(f"unknown axiom case {case!r}")
    return key, lhs == rhs, render_jet(rhs), render_jet(lhs)


def iter_jet_axiom_cases(
    mod: WeightDMod,
    module: GL2Module,
    m1_range: Iterable[int],
    m2_range: Iterable[int],
    s1_range: Iterable[int],
    s2_range: Iterable[int],
) -> Iterator[tuple[str, bool, str, str]]:
    """Sequential sweep of the jet-module axioms."""
    for case in jet_axiom_cases(m1_range, m2_range, s1_range, s2_range, mod, module):
        yield eval_jet_axiom_case(mod, module, case)
