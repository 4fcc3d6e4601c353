"""Expression language over a meadow: parser, evaluator, formatting.

Grammar (whitespace insignificant, left associative, '^' binds tightest):

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | atom ('^' signed-int)?
    atom   := integer | 'a' | identifier | '(' expr ')'

The literal 'a' is the error constant and is never a variable.  Numerals
enter at the top node.  Every well-formed closed term evaluates: division
never fails, it lands on 'a' instead.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import rings
from .errors import ForeignElement, ReservedIdentifier, TermSyntaxError, UnboundVariable
from .lattice import node_key
from .meadow import Meadow, MeadowElement, PreMeadow


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Numeral(Term):
    n: int


@dataclass(frozen=True)
class ErrorConst(Term):
    pass


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Sub(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Div(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Neg(Term):
    arg: Term


@dataclass(frozen=True)
class Inv(Term):
    arg: Term


@dataclass(frozen=True)
class Pow(Term):
    base: Term
    exponent: int


# ---------------------------------------------------------------------------
# parsing


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise TermSyntaxError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expr(self) -> Term:
        node = self.term()
        while True:
            if self.take("+"):
                node = Add(node, self.term())
            elif self.take("-"):
                node = Sub(node, self.term())
            else:
                return node

    def term(self) -> Term:
        node = self.factor()
        while True:
            if self.take("*"):
                node = Mul(node, self.factor())
            elif self.take("/"):
                node = Div(node, self.factor())
            else:
                return node

    def factor(self) -> Term:
        if self.take("-"):
            return Neg(self.factor())
        node = self.atom()
        if self.take("^"):
            return Pow(node, self.signed_int())
        return node

    def signed_int(self) -> int:
        self.skip_ws()
        sign = -1 if self.take("-") else 1
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer exponent")
        return sign * int(self.text[start : self.pos])

    def atom(self) -> Term:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            node = self.expr()
            if not self.take(")"):
                self.error("expected ')'")
            return node
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return Numeral(int(self.text[start : self.pos]))
        if ch.isalpha() or ch == "_":
            start = self.pos
            while self.pos < len(self.text) and (
                self.text[self.pos].isalnum() or self.text[self.pos] == "_"
            ):
                self.pos += 1
            name = self.text[start : self.pos]
            return ErrorConst() if name == "a" else Var(name)
        self.error("expected a number, variable, 'a' or '('")


def parse(text: str) -> Term:
    p = _Parser(text)
    node = p.expr()
    p.skip_ws()
    if p.pos != len(text):
        p.error("unexpected trailing input")
    return node


# ---------------------------------------------------------------------------
# evaluation


def bind_env(meadow: PreMeadow, bindings: dict) -> dict[str, MeadowElement]:
    """Validated variable environment over the given structure."""
    env = {}
    for name, elem in bindings.items():
        if name == "a":
            raise ReservedIdentifier("'a' is the error constant and cannot be bound")
        if not meadow.contains(elem):
            raise ForeignElement(f"binding {name}={elem} is not in the structure")
        env[name] = elem
    return env


def eval_term(t: Term, meadow: PreMeadow, env: dict | None = None) -> MeadowElement:
    """Total evaluation; unbound variables are the only failure mode."""
    env = env or {}
    if isinstance(t, Numeral):
        return meadow.numeral(t.n)
    if isinstance(t, ErrorConst):
        return meadow.a
    if isinstance(t, Var):
        if t.name not in env:
            raise UnboundVariable(f"variable {t.name!r} has no binding")
        return env[t.name]
    if isinstance(t, Add):
        return meadow.add(eval_term(t.left, meadow, env), eval_term(t.right, meadow, env))
    if isinstance(t, Sub):
        return meadow.add(eval_term(t.left, meadow, env), meadow.neg(eval_term(t.right, meadow, env)))
    if isinstance(t, Mul):
        return meadow.mul(eval_term(t.left, meadow, env), eval_term(t.right, meadow, env))
    if isinstance(t, Div):
        return meadow.mul(eval_term(t.left, meadow, env), meadow.inverse(eval_term(t.right, meadow, env)))
    if isinstance(t, Neg):
        return meadow.neg(eval_term(t.arg, meadow, env))
    if isinstance(t, Inv):
        return meadow.inverse(eval_term(t.arg, meadow, env))
    if isinstance(t, Pow):
        base = eval_term(t.base, meadow, env)
        if t.exponent == 0:
            # x^0 keeps the component information: 1 + 0*x
            return meadow.add(meadow.one, meadow.zero_of(base))
        if t.exponent < 0:
            inv = meadow.inverse(base)
            out = inv
            for _ in range(-t.exponent - 1):
                out = meadow.mul(out, inv)
            return out
        out = base
        for _ in range(t.exponent - 1):
            out = meadow.mul(out, base)
        return out
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# formatting


def format_element(x: MeadowElement) -> str:
    """Canonical "value @ node" rendering; the error element prints as "a"."""
    if isinstance(x.value.ring, rings.Zero):
        return "a"
    return f"{rings.format_value(x.value)} @ {node_key(x.node)}"


def format_term(t: Term) -> str:
    """Parseable text for a term; reparsing yields the same tree."""
    if isinstance(t, Numeral):
        return str(t.n)
    if isinstance(t, ErrorConst):
        return "a"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Add):
        return f"({format_term(t.left)} + {format_term(t.right)})"
    if isinstance(t, Sub):
        return f"({format_term(t.left)} - {format_term(t.right)})"
    if isinstance(t, Mul):
        return f"({format_term(t.left)} * {format_term(t.right)})"
    if isinstance(t, Div):
        return f"({format_term(t.left)} / {format_term(t.right)})"
    if isinstance(t, Neg):
        return f"(-{format_term(t.arg)})"
    if isinstance(t, Inv):
        return f"({format_term(t.arg)})^-1"
    if isinstance(t, Pow):
        return f"({format_term(t.base)})^{t.exponent}"
    raise TypeError(f"not a term: {t!r}")
