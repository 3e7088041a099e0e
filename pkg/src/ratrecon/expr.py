"""Arithmetic expression language for defining oracles.

Grammar (see docs/grammar.ebnf): precedence ^ > unary minus > * / > + -,
with * / + - left-associative and ^ right-associative over literal
nonnegative integer exponents.  Variables are x1..x<arity>.  Whitespace is
insignificant.  Parse errors carry the byte offset and the expectation set.

Division by zero during evaluation is a domain hole, not an error: eval
returns None so the reconstruction pipeline can resample past poles.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ExprSyntaxError, NegativeExponent, UnknownVariable
from .fields import Field
from .poly import PolyN
from .ratfun import RatFunN, normalize_ratfunn


@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Add:
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class Sub:
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class Mul:
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class Div:
    lhs: "Expr"
    rhs: "Expr"


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = IntLit | Var | Add | Sub | Mul | Div | Neg | Pow


_PUNCT = {"+", "-", "*", "/", "^", "(", ")"}


def _tokenize(src: str):
    out = []
    i = 0
    while i < len(src):
        c = src[i]
        if c.isspace():
            i += 1
            continue
        if c in _PUNCT:
            out.append((c, c, i))
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            out.append(("int", src[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < len(src) and (src[j].isalnum() or src[j] == "_"):
                j += 1
            out.append(("name", src[i:j], i))
            i = j
            continue
        raise ExprSyntaxError(i, {"digit", "variable", "operator", "parenthesis"})
    out.append(("eof", "", len(src)))
    return out


class _Parser:
    def __init__(self, src: str, arity: int):
        self.tokens = _tokenize(src)
        self.pos = 0
        self.arity = arity

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect(self, kind):
        t = self.peek()
        if t[0] != kind:
            raise ExprSyntaxError(t[2], {kind})
        return self.take()

    def parse(self) -> Expr:
        e = self.expr()
        t = self.peek()
        if t[0] != "eof":
            raise ExprSyntaxError(t[2], {"operator", "end of input"})
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            rhs = self.factor()
            e = Mul(e, rhs) if op == "*" else Div(e, rhs)
        return e

    def factor(self) -> Expr:
        if self.peek()[0] == "-":
            self.take()
            return Neg(self.factor())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            return Pow(base, self.exponent())
        return base

    def exponent(self) -> int:
        t = self.peek()
        if t[0] == "-":
            raise NegativeExponent(t[2])
        if t[0] != "int":
            raise ExprSyntaxError(t[2], {"nonnegative integer literal"})
        self.take()
        e = int(t[1])
        if self.peek()[0] == "^":
            self.take()
            e = e ** self.exponent()
        return e

    def atom(self) -> Expr:
        t = self.peek()
        if t[0] == "int":
            self.take()
            return IntLit(int(t[1]))
        if t[0] == "name":
            self.take()
            name = t[1]
            if name.startswith("x") and name[1:].isdigit():
                k = int(name[1:])
                if 1 <= k <= self.arity:
                    return Var(k - 1)
            raise UnknownVariable(t[2], name)
        if t[0] == "(":
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        raise ExprSyntaxError(t[2], {"integer", "variable", "("})


def parse(src: str, arity: int) -> Expr:
    if arity < 1:
        raise ValueError("arity must be >= 1")
    return _Parser(src, arity).parse()


def eval_expr(e: Expr, point: tuple, field: Field):
    """Exact evaluation; None means the point is outside the domain."""
    if isinstance(e, IntLit):
        return field.from_int(e.value)
    if isinstance(e, Var):
        return point[e.index]
    if isinstance(e, Neg):
        v = eval_expr(e.arg, point, field)
        return None if v is None else -v
    if isinstance(e, Pow):
        v = eval_expr(e.base, point, field)
        return None if v is None else v ** e.exponent
    a = eval_expr(e.lhs, point, field)
    if a is None:
        return None
    b = eval_expr(e.rhs, point, field)
    if b is None:
        return None
    if isinstance(e, Add):
        return a + b
    if isinstance(e, Sub):
        return a - b
    if isinstance(e, Mul):
        return a * b
    if b == field.zero:
        return None
    return a / b


def pretty(e: Expr) -> str:
    """Minimal-parenthesis form that reparses to the identical tree."""
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, Var):
        return f"x{e.index + 1}"
    if isinstance(e, Neg):
        inner = pretty(e.arg)
        if isinstance(e.arg, (IntLit, Var, Pow)):
            return f"-{inner}"
        return f"-({inner})"
    if isinstance(e, Pow):
        base = pretty(e.base)
        if not isinstance(e.base, (IntLit, Var)):
            base = f"({base})"
        return f"{base}^{e.exponent}"
    if isinstance(e, (Add, Sub)):
        op = " + " if isinstance(e, Add) else " - "
        lhs = pretty(e.lhs)
        rhs = pretty(e.rhs)
        if isinstance(e.rhs, (Add, Sub)):
            rhs = f"({rhs})"
        return f"{lhs}{op}{rhs}"
    op = "*" if isinstance(e, Mul) else "/"
    lhs = pretty(e.lhs)
    if isinstance(e.lhs, (Add, Sub)):
        lhs = f"({lhs})"
    rhs = pretty(e.rhs)
    if isinstance(e.rhs, (Add, Sub, Mul, Div)):
        rhs = f"({rhs})"
    return f"{lhs}{op}{rhs}"


def to_ratfun(e: Expr, field: Field, arity: int) -> RatFunN:
    """Symbolic expansion into a canonical rational function.  Raises
    ZeroDenominator if some subexpression divides by the zero function."""
    one = PolyN.const(field, arity, field.one)
    if isinstance(e, IntLit):
        return normalize_ratfunn(PolyN.const(field, arity, field.from_int(e.value)), one)
    if isinstance(e, Var):
        return normalize_ratfunn(PolyN.var(field, arity, e.index), one)
    if isinstance(e, Neg):
        return -to_ratfun(e.arg, field, arity)
    if isinstance(e, Pow):
        b = to_ratfun(e.base, field, arity)
        return normalize_ratfunn(b.num ** e.exponent, b.den ** e.exponent)
    a = to_ratfun(e.lhs, field, arity)
    b = to_ratfun(e.rhs, field, arity)
    if isinstance(e, Add):
        return a + b
    if isinstance(e, Sub):
        return a - b
    if isinstance(e, Mul):
        return a * b
    return a / b


def _coeff_to_expr(field: Field, c):
    """(positive coefficient expression, is_negative) for a field element."""
    if hasattr(c, "residue"):
        r = c.residue
        p = c.field.p
        if r > p // 2:
            return IntLit(p - r), True
        return IntLit(r), False
    neg = c < 0
    c = -c if neg else c
    if c.denominator == 1:
        return IntLit(c.numerator), neg
    return Div(IntLit(c.numerator), IntLit(c.denominator)), neg


def _polyn_to_expr(p: PolyN) -> Expr:
    if p.is_zero():
        return IntLit(0)
    acc = None
    for e in sorted(p.terms, reverse=True):
        coeff, neg = _coeff_to_expr(p.field, p.terms[e])
        factors = []
        for i, k in enumerate(e):
            if k == 1:
                factors.append(Var(i))
            elif k > 1:
                factors.append(Pow(Var(i), k))
        term = coeff
        if factors:
            term = factors[0]
            for f in factors[1:]:
                term = Mul(term, f)
            if coeff != IntLit(1):
                term = Mul(coeff, term)
        if acc is None:
            acc = Neg(term) if neg else term
        else:
            acc = Sub(acc, term) if neg else Add(acc, term)
    return acc


def ratfun_to_expr(f: RatFunN) -> Expr:
    """Expression AST whose symbolic expansion is the same function."""
    return Div(_polyn_to_expr(f.num), _polyn_to_expr(f.den))


def ratfun_to_json_ast(f: RatFunN) -> dict:
    return to_json_ast(ratfun_to_expr(f))


def ratfun_from_json_ast(obj: dict, field: Field, arity: int) -> RatFunN:
    return to_ratfun(from_json_ast(obj), field, arity)


_TAGS = {IntLit: "int", Var: "var", Add: "add", Sub: "sub",
         Mul: "mul", Div: "div", Neg: "neg", Pow: "pow"}


def to_json_ast(e: Expr) -> dict:
    if isinstance(e, IntLit):
        return {"node": "int", "value": str(e.value)}
    if isinstance(e, Var):
        return {"node": "var", "index": e.index}
    if isinstance(e, Neg):
        return {"node": "neg", "arg": to_json_ast(e.arg)}
    if isinstance(e, Pow):
        return {"node": "pow", "base": to_json_ast(e.base), "exponent": e.exponent}
    return {"node": _TAGS[type(e)],
            "lhs": to_json_ast(e.lhs), "rhs": to_json_ast(e.rhs)}


def from_json_ast(obj: dict) -> Expr:
    node = obj["node"]
    if node == "int":
        return IntLit(int(obj["value"]))
    if node == "var":
        return Var(int(obj["index"]))
    if node == "neg":
        return Neg(from_json_ast(obj["arg"]))
    if node == "pow":
        exp = int(obj["exponent"])
        if exp < 0:
            raise NegativeExponent(0)
        return Pow(from_json_ast(obj["base"]), exp)
    ctor = {"add": Add, "sub": Sub, "mul": Mul, "div": Div}[node]
    return ctor(from_json_ast(obj["lhs"]), from_json_ast(obj["rhs"]))
