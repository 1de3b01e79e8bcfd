"""Expression parser and per-algebra evaluator for the CLI.

Grammar (loosest to tightest): '+'/'-'  <  '.' and '(x)'  <  '*'  <
unary '-'  <  '^' with an integer exponent.  Brackets are written
[e1, e2]; the smash dot and the tensor symbol '(x)' are infix.  Atoms are
t1, t2, d1, d2, X1(m1,m2), X2(m1,m2) and rational literals p/q.

The same expression can be elaborated in any of the six algebras; atoms
or operators foreign to the chosen algebra raise ElaborationError, so the
canonical rendering of every element round-trips through parse + eval.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .apoly import APoly
from .jetlie import LElem
from .phirho import DLElem
from .smash import SmashElem, xk
from .vfields import VField
from .weyl import DOp

CONTEXTS = ("A", "D", "g", "smash", "L", "DL")


class ExprSyntaxError(ValueError):
    """Parse failure with column and expected-token information."""

    def __init__(self, message: str, col: int, expected: tuple[str, ...] = ()):
        self.col = col
        self.expected = expected
        tail = f" (expected one of: {', '.join(expected)})" if expected else ""
        super().__init__(f"column {col}: {message}{tail}")


class ElaborationError(ValueError):
    """The expression does not live in the requested algebra."""


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Atom:
    name: str  # t1 | t2 | d1 | d2


@dataclass(frozen=True)
class XAtom:
    k: int
    m1: int
    m2: int


@dataclass(frozen=True)
class BinOp:
    op: str  # + - * . (x)
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int


@dataclass(frozen=True)
class Bracket:
    left: "Expr"
    right: "Expr"


Expr = Union[Num, Atom, XAtom, BinOp, Neg, Pow, Bracket]


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""\s*(?:
        (?P<tensor>\(x\))
      | (?P<num>\d+)
      | (?P<ident>[td][12]|X[12])
      | (?P<punct>[+\-*^\[\](),./])
    )""",
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            col = len(text) - len(stripped) + 1
            raise ExprSyntaxError(f"unexpected character {stripped[0]!r}", col)
        col = m.start(m.lastgroup) + 1
        out.append(Token(m.lastgroup, m.group(m.lastgroup), col))
        pos = m.end()
    out.append(Token("end", "", len(text) + 1))
    return out


# ---------------------------------------------------------------------------
# Parser (recursive descent following the precedence ladder)
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text:
            raise ExprSyntaxError(f"unexpected {tok.text or 'end of input'!r}", tok.col, (text,))
        return self.next()

    def parse(self) -> Expr:
        e = self.sum()
        tok = self.peek()
        if tok.kind != "end":
            raise ExprSyntaxError(f"unexpected {tok.text!r} after expression", tok.col)
        return e

    def sum(self) -> Expr:
        e = self.dotted()
        while self.peek().text in ("+", "-"):
            op = self.next().text
            e = BinOp(op, e, self.dotted())
        return e

    def dotted(self) -> Expr:
        e = self.product()
        while True:
            tok = self.peek()
            if tok.text == ".":
                self.next()
                e = BinOp(".", e, self.product())
            elif tok.kind == "tensor":
                self.next()
                e = BinOp("(x)", e, self.product())
            else:
                return e

    def product(self) -> Expr:
        e = self.unary()
        while self.peek().text == "*":
            self.next()
            e = BinOp("*", e, self.unary())
        return e

    def unary(self) -> Expr:
        if self.peek().text == "-":
            self.next()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self.peek().text == "^":
            self.next()
            return Pow(base, self.exponent())
        return base

    def exponent(self) -> int:
        parens = False
        if self.peek().text == "(":
            self.next()
            parens = True
        sign = 1
        if self.peek().text == "-":
            self.next()
            sign = -1
        tok = self.peek()
        if tok.kind != "num":
            raise ExprSyntaxError("exponent must be an integer", tok.col, ("integer",))
        self.next()
        value = sign * int(tok.text)
        if parens:
            closer = self.peek()
            if closer.text == "/":
                raise ExprSyntaxError("exponent must be an integer, not a fraction", closer.col, (")",))
            self.expect(")")
        return value

    def primary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "num":
            self.next()
            value = Fraction(int(tok.text))
            if self.peek().text == "/":
                self.next()
                den = self.peek()
                if den.kind != "num":
                    raise ExprSyntaxError("expected denominator", den.col, ("integer",))
                self.next()
                value = Fraction(int(tok.text), int(den.text))
            return Num(value)
        if tok.kind == "ident":
            self.next()
            if tok.text in ("X1", "X2"):
                return self.x_atom(int(tok.text[1]))
            return Atom(tok.text)
        if tok.text == "(":
            self.next()
            e = self.sum()
            self.expect(")")
            return e
        if tok.text == "[":
            self.next()
            left = self.sum()
            self.expect(",")
            right = self.sum()
            self.expect("]")
            return Bracket(left, right)
        raise ExprSyntaxError(
            f"unexpected {tok.text or 'end of input'!r}",
            tok.col,
            ("number", "t1", "t2", "d1", "d2", "X1", "X2", "(", "["),
        )

    def x_atom(self, k: int) -> XAtom:
        self.expect("(")
        extra = False
        if self.peek().text == "(":
            self.next()
            extra = True
        m1 = self.signed_int()
        self.expect(",")
        m2 = self.signed_int()
        self.expect(")")
        if extra:
            self.expect(")")
        return XAtom(k, m1, m2)

    def signed_int(self) -> int:
        sign = 1
        if self.peek().text == "-":
            self.next()
            sign = -1
        tok = self.peek()
        if tok.kind != "num":
            raise ExprSyntaxError("expected an integer", tok.col, ("integer",))
        self.next()
        return sign * int(tok.text)


def parse_expr(text: str) -> Expr:
    """Parse an expression; raises ExprSyntaxError with column info."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Evaluation in a chosen algebra
# ---------------------------------------------------------------------------

Value = Union[Fraction, APoly, VField, SmashElem, LElem, DOp, DLElem]


def eval_expr(e: Expr, context: str) -> Value:
    """Elaborate in one of A, D, g, smash, L, DL and return the element."""
    if context not in CONTEXTS:
        raise ElaborationError(f"unknown algebra {context!r}; choose one of {', '.join(CONTEXTS)}")
    return _finish(_eval(e, context), context)


def render_value(v: Value) -> str:
    if isinstance(v, Fraction):
        return str(v)
    return v.render()


def eval_and_render(text: str, context: str) -> str:
    return render_value(eval_expr(parse_expr(text), context))


def _eval(e: Expr, ctx: str) -> Value:
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Atom):
        return _atom(e.name, ctx)
    if isinstance(e, XAtom):
        return _x_atom(e, ctx)
    if isinstance(e, Neg):
        return -_eval(e.arg, ctx)
    if isinstance(e, Pow):
        return _power(_eval(e.base, ctx), e.exp, ctx)
    if isinstance(e, Bracket):
        return _bracket(_eval(e.left, ctx), _eval(e.right, ctx), ctx)
    if isinstance(e, BinOp):
        left = _eval(e.left, ctx)
        right = _eval(e.right, ctx)
        if e.op in ("+", "-"):
            return _addsub(left, right, e.op, ctx)
        if e.op == "*":
            return _mul(left, right, ctx)
        if e.op == ".":
            return _dot(left, right, ctx)
        return _tensor(left, right, ctx)
    raise ElaborationError(f"cannot evaluate node {e!r}")


def _atom(name: str, ctx: str) -> Value:
    if name in ("t1", "t2"):
        mono = (1, 0) if name == "t1" else (0, 1)
        if ctx == "A" or ctx == "g" or ctx == "smash":
            return APoly.mono(*mono)
        if ctx == "D":
            return DOp.mono(mono[0], mono[1], 0, 0)
        if ctx == "DL":
            return DOp.mono(mono[0], mono[1], 0, 0)
        raise ElaborationError(f"atom {name} is not an element of {ctx}")
    k = int(name[1])
    if ctx == "D" or ctx == "DL":
        return DOp.mono(0, 0, 1 if k == 1 else 0, 0 if k == 1 else 1)
    if ctx in ("g", "smash"):
        return VField.basis(k, (0, 0))
    raise ElaborationError(f"atom {name} is not an element of {ctx}")


def _x_atom(e: XAtom, ctx: str) -> Value:
    m = (e.m1, e.m2)
    if e.m2 < 0:
        raise ElaborationError(f"X{e.k}({e.m1},{e.m2}) needs a nonnegative second index")
    if ctx == "L":
        return LElem.zero() if m == (0, 0) else LElem.basis(e.k, m)
    if ctx == "smash":
        return xk(e.k, m)
    if ctx == "DL":
        if m == (0, 0):
            return DLElem.zero()
        return DLElem.tensor(DOp.one(), (e.k, m))
    raise ElaborationError(f"atom X{e.k}(..) is not an element of {ctx}")


def _addsub(left: Value, right: Value, op: str, ctx: str):
    left, right = _unify(left, right, ctx)
    if type(left) is not type(right):
        raise ElaborationError(f"cannot {'add' if op == '+' else 'subtract'} {_tname(left)} and {_tname(right)} in {ctx}")
    return left + right if op == "+" else left - right


def _unify(left: Value, right: Value, ctx: str) -> tuple[Value, Value]:
    """Promote the two operands of +/- to a common kind where meaningful."""
    kinds = {type(left), type(right)}
    if Fraction in kinds and len(kinds) > 1:
        if isinstance(left, Fraction):
            return _promote_scalar(left, type(right), ctx), right
        return left, _promote_scalar(right, type(left), ctx)
    if ctx == "smash" and SmashElem in kinds:
        return _to_smash(left), _to_smash(right)
    if ctx == "DL" and DLElem in kinds:
        return _to_dl(left), _to_dl(right)
    if isinstance(left, Fraction) and isinstance(right, Fraction):
        return left, right
    return left, right


def _promote_scalar(c: Fraction, target: type, ctx: str) -> Value:
    if target is APoly:
        return APoly.constant(c)
    if target is DOp:
        return DOp.mono(0, 0, 0, 0, c)
    if target is SmashElem:
        return SmashElem.embed_a(APoly.constant(c))
    if target is DLElem:
        return DLElem.from_dop(DOp.mono(0, 0, 0, 0, c))
    if c == 0:
        if target is VField:
            return VField.zero()
        if target is LElem:
            return LElem.zero()
    raise ElaborationError(f"cannot use the scalar {c} as a {target.__name__} in {ctx}")


def _mul(left: Value, right: Value, ctx: str):
    if isinstance(left, Fraction) and isinstance(right, Fraction):
        return left * right
    if isinstance(left, Fraction):
        return right.scale(left)
    if isinstance(right, Fraction):
        return left.scale(right)
    if isinstance(left, APoly) and isinstance(right, APoly):
        return left * right
    if isinstance(left, DOp) and isinstance(right, DOp):
        return left * right
    if ctx in ("g", "smash"):
        if isinstance(left, APoly) and isinstance(right, VField):
            return VField(left * right.f1, left * right.f2)
        if isinstance(left, VField) and isinstance(right, APoly):
            return VField(left.f1 * right, left.f2 * right)
        if ctx == "smash" and isinstance(left, APoly) and isinstance(right, SmashElem):
            return right.mul_left_a(left)
    if ctx == "DL" and isinstance(left, DOp) and isinstance(right, DLElem):
        return DLElem(left * right.part0, {k: left * q for k, q in right.part1.items()})
    raise ElaborationError(f"cannot multiply {_tname(left)} by {_tname(right)} in {ctx}")


def _power(base: Value, exp: int, ctx: str):
    if isinstance(base, Fraction):
        return base ** exp
    if isinstance(base, APoly):
        if exp >= 0:
            out = APoly.one()
            for _ in range(exp):
                out = out * base
            return out
        inv = _invert_apoly(base)
        out = APoly.one()
        for _ in range(-exp):
            out = out * inv
        return out
    if isinstance(base, DOp):
        if exp >= 0:
            out = DOp.one()
            for _ in range(exp):
                out = out * base
            return out
        inv = _invert_dop(base)
        out = DOp.one()
        for _ in range(-exp):
            out = out * inv
        return out
    raise ElaborationError(f"cannot raise a {_tname(base)} to a power in {ctx}")


def _invert_apoly(p: APoly) -> APoly:
    if len(p.terms) != 1:
        raise ElaborationError(f"cannot invert the non-monomial {p.render()}")
    ((m1, m2), c), = p.terms.items()
    if m2 != 0:
        raise ElaborationError("cannot invert a t2 power")
    return APoly.mono(-m1, 0, 1 / c)


def _invert_dop(d: DOp) -> DOp:
    if len(d.terms) != 1:
        raise ElaborationError(f"cannot invert the non-monomial {d.render()}")
    ((a, b, c, dd), coeff), = d.terms.items()
    if b or c or dd:
        raise ElaborationError("only pure t1 powers are invertible")
    return DOp.mono(-a, 0, 0, 0, 1 / coeff)


def _bracket(left: Value, right: Value, ctx: str):
    if ctx == "D":
        left = _promote_scalar(left, DOp, ctx) if isinstance(left, Fraction) else left
        right = _promote_scalar(right, DOp, ctx) if isinstance(right, Fraction) else right
        if isinstance(left, DOp) and isinstance(right, DOp):
            return left.commutator(right)
    if ctx == "g" and isinstance(left, VField) and isinstance(right, VField):
        return left.bracket(right)
    if ctx == "smash":
        return _to_smash(left).bracket(_to_smash(right))
    if ctx == "L":
        if isinstance(left, Fraction) or isinstance(right, Fraction):
            raise ElaborationError("scalars have no bracket in L")
        return left.bracket(right)
    if ctx == "DL":
        return _to_dl(left).bracket(_to_dl(right))
    raise ElaborationError(f"no bracket between {_tname(left)} and {_tname(right)} in {ctx}")


def _dot(left: Value, right: Value, ctx: str):
    if ctx != "smash":
        raise ElaborationError(f"the smash dot is not defined in {ctx}")
    if isinstance(left, Fraction):
        left = APoly.constant(left)
    if not isinstance(left, APoly):
        raise ElaborationError(f"left factor of the smash dot must lie in A, got {_tname(left)}")
    if isinstance(right, Fraction):
        right = APoly.constant(right)
    if isinstance(right, APoly):
        return SmashElem.embed_a(left * right)
    if isinstance(right, VField):
        return SmashElem.embed_g(right).mul_left_a(left)
    return right.mul_left_a(left)


def _tensor(left: Value, right: Value, ctx: str):
    if ctx != "DL":
        raise ElaborationError(f"the tensor symbol is not defined in {ctx}")
    if isinstance(left, Fraction):
        left = DOp.mono(0, 0, 0, 0, left)
    if not isinstance(left, DOp):
        raise ElaborationError(f"left factor of the tensor must lie in the Weyl algebra, got {_tname(left)}")
    right = _to_dl(right)
    return DLElem(left * right.part0, {k: left * q for k, q in right.part1.items()})


def _to_smash(v: Value) -> SmashElem:
    if isinstance(v, SmashElem):
        return v
    if isinstance(v, Fraction):
        return SmashElem.embed_a(APoly.constant(v))
    if isinstance(v, APoly):
        return SmashElem.embed_a(v)
    if isinstance(v, VField):
        return SmashElem.embed_g(v)
    raise ElaborationError(f"cannot view a {_tname(v)} inside the smash slice")


def _to_dl(v: Value) -> DLElem:
    if isinstance(v, DLElem):
        return v
    if isinstance(v, Fraction):
        return DLElem.from_dop(DOp.mono(0, 0, 0, 0, v))
    if isinstance(v, DOp):
        return DLElem.from_dop(v)
    raise ElaborationError(f"cannot view a {_tname(v)} inside the tensor algebra")


def _finish(v: Value, ctx: str) -> Value:
    if ctx == "A":
        if isinstance(v, Fraction):
            return APoly.constant(v)
        if isinstance(v, APoly):
            return v
    elif ctx == "D":
        if isinstance(v, Fraction):
            return DOp.mono(0, 0, 0, 0, v)
        if isinstance(v, DOp):
            return v
    elif ctx == "g":
        if isinstance(v, VField):
            return v
        if isinstance(v, Fraction) and v == 0:
            return VField.zero()
    elif ctx == "smash":
        return _to_smash(v)
    elif ctx == "L":
        if isinstance(v, LElem):
            return v
        if isinstance(v, Fraction) and v == 0:
            return LElem.zero()
    elif ctx == "DL":
        return _to_dl(v)
    raise ElaborationError(f"expression does not elaborate to an element of {ctx} (got {_tname(v)})")


def _tname(v: Value) -> str:
    return type(v).__name__
