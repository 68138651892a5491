"""A small brace-block language for declaring containers and directed containers.

    container nelist { shapes = nat; positions(s) = fin(s + 1); }
    directed suffix on nelist { down(s, p) = s - p; root(s) = 0; plus(s, p, q) = p + q; }
    morphism head : suffix -> ident { shape(s) = (); position(s, p) = 0; }
    construct both = coproduct(suffix, cyclic);

Expressions are total on well-typed inputs; evaluation problems (division by
zero, projecting a non-pair, ...) raise ``EvalError``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from .containers import CONTAINERS, Container, ContainerMorphism
from .directed import (
    DCMorphism,
    DirectedContainer,
    builtin,
    builtin_names,
)
from .errors import DcontError, EvalError, ParseError, UnknownName
from .values import (
    INTEGERS,
    NAT,
    NOTHING,
    UNIT,
    UNIT_SET,
    Enumeration,
    Inl,
    Inr,
    Just,
    Pair,
    Symbol,
    coproduct,
    fin,
    finite,
    int_range,
    options,
    product,
    render,
)

# ---------------------------------------------------------------------------
# tokens


@dataclass(frozen=True)
class Token:
    kind: str  # int, ident, symbol, string, op, eof
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>(?:\#|//)[^\n]*)
  | (?P<int>\d+)
  | (?P<range>int-range\b)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<symbol>'[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"[^"\n]*")
  | (?P<op>->|==|!=|<=|>=|[{}()\[\],;=+\-*<>|:])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> List[Token]:
    out: List[Token] = []
    line, col, i = 1, 1, 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind == "range":
                kind = "ident"
            if kind not in ("ws", "comment"):
                out.append(Token(kind, chunk, line, col))
            col += len(chunk)
        i = m.end()
    out.append(Token("eof", "", line, col))
    return out


# ---------------------------------------------------------------------------
# syntax tree


class Expr:
    pass


@dataclass(frozen=True)
class Num(Expr):
    value: int


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Sym(Expr):
    name: str


@dataclass(frozen=True)
class UnitLit(Expr):
    pass


@dataclass(frozen=True)
class NothingLit(Expr):
    pass


@dataclass(frozen=True)
class PairExpr(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True)
class Call(Expr):
    fn: str
    args: Tuple[Expr, ...]


@dataclass(frozen=True)
class SetName(Expr):
    name: str  # nat | int | unit


@dataclass(frozen=True)
class SetLit(Expr):
    items: Tuple[Expr, ...]


@dataclass(frozen=True)
class IfExpr(Expr):
    cond: Expr
    then: Expr
    otherwise: Expr


class Pattern:
    pass


@dataclass(frozen=True)
class PVar(Pattern):
    name: str


@dataclass(frozen=True)
class PWild(Pattern):
    pass


@dataclass(frozen=True)
class PUnit(Pattern):
    pass


@dataclass(frozen=True)
class PPair(Pattern):
    left: Pattern
    right: Pattern


@dataclass(frozen=True)
class PTag(Pattern):
    tag: str  # inl | inr | just | nothing
    inner: Optional[Pattern]


@dataclass(frozen=True)
class CaseExpr(Expr):
    scrutinee: Expr
    branches: Tuple[Tuple[Pattern, Expr], ...]


@dataclass(frozen=True)
class Clause:
    name: str
    params: Tuple[Pattern, ...]
    body: Expr


@dataclass(frozen=True)
class ContainerDecl:
    name: str
    clauses: Tuple[Clause, ...]


@dataclass(frozen=True)
class DirectedDecl:
    name: str
    base: str
    clauses: Tuple[Clause, ...]


@dataclass(frozen=True)
class StrictDecl:
    name: str
    clauses: Tuple[Clause, ...]


@dataclass(frozen=True)
class MorphismDecl:
    name: str
    source: str
    target: str
    clauses: Tuple[Clause, ...]


@dataclass(frozen=True)
class BuiltinDecl:
    name: str
    builtin: str


@dataclass(frozen=True)
class ConstructDecl:
    name: str
    kind: str
    args: Tuple[Any, ...]  # names (str) or integers


@dataclass(frozen=True)
class Spec:
    declarations: Tuple[Any, ...]

    def names(self) -> List[str]:
        return [d.name for d in self.declarations]

    def get(self, name: str) -> Any:
        for d in self.declarations:
            if d.name == name:
                return d
        raise UnknownName(f"no declaration named {name!r}")


# clause name -> arity, per declaration kind
ARITIES: Dict[str, Dict[str, int]] = {
    "container": {"shapes": 0, "positions": 1},
    "directed": {"down": 2, "root": 1, "plus": 3},
    "strict": {"shapes": 0, "positions": 1, "down": 2, "plus": 3},
    "morphism": {"shape": 1, "position": 2},
}
CONSTRUCT_KINDS = ("coproduct", "product", "cofree", "focus")

_FUNCTIONS = {"fst": 1, "snd": 1, "max": 2, "min": 2, "fin": 1, "int-range": 2, "maybe": 1, "inl": 1, "inr": 1, "just": 1}
_KEYWORDS = {"if", "then", "else", "case", "of", "div", "mod", "nothing", "nat", "int", "unit"} | set(_FUNCTIONS)
_ATOM_START = ("integer", "identifier", "symbol", "(", "{", "-", "if", "case", "nothing", "nat", "int", "unit")


# ---------------------------------------------------------------------------
# parser


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    # token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def _fail(self, expected, message: Optional[str] = None):
        t = self.tok
        shown = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(message or f"unexpected {shown}", t.line, t.column, expected)

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "ident") and self.tok.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self._fail([text])
        t = self.tok
        self.i += 1
        return t

    def ident(self, what: str = "identifier") -> str:
        t = self.tok
        if t.kind != "ident" or t.text in _KEYWORDS:
            self._fail([what])
        self.i += 1
        return t.text

    def ref(self, what: str = "name") -> str:
        """A reference to a declared or builtin object; keywords such as ``maybe`` are allowed."""
        t = self.tok
        if t.kind != "ident":
            self._fail([what])
        self.i += 1
        return t.text

    def integer(self) -> int:
        neg = self.accept("-")
        if self.tok.kind != "int":
            self._fail(["integer"])
        v = int(self.tok.text)
        self.i += 1
        return -v if neg else v

    # declarations
    def spec(self) -> Spec:
        decls = []
        seen: Dict[str, Token] = {}
        while self.tok.kind != "eof":
            start = self.tok
            d = self.declaration()
            if d.name in seen:
                raise ParseError(f"duplicate declaration {d.name!r}", start.line, start.column)
            seen[d.name] = start
            decls.append(d)
        return Spec(tuple(decls))

    def declaration(self):
        for kw in ("container", "directed", "strict", "morphism", "builtin", "construct"):
            if self.accept(kw):
                return getattr(self, f"_{kw}")()
        self._fail(["builtin", "construct", "container", "directed", "morphism", "strict"])

    def _container(self):
        name = self.ident()
        return ContainerDecl(name, self.block("container"))

    def _directed(self):
        name = self.ident()
        self.expect("on")
        base = self.ref("container name")
        return DirectedDecl(name, base, self.block("directed"))

    def _strict(self):
        name = self.ident()
        return StrictDecl(name, self.block("strict"))

    def _morphism(self):
        name = self.ident()
        self.expect(":")
        source = self.ref("source name")
        self.expect("->")
        target = self.ref("target name")
        return MorphismDecl(name, source, target, self.block("morphism"))

    def _builtin(self):
        name = self.ident()
        self.expect("=")
        if self.tok.kind != "string":
            self._fail(["string"])
        text = self.tok.text[1:-1]
        self.i += 1
        self.expect(";")
        return BuiltinDecl(name, text)

    def _construct(self):
        name = self.ident()
        self.expect("=")
        t = self.tok
        if t.kind != "ident" or t.text not in CONSTRUCT_KINDS:
            self._fail(CONSTRUCT_KINDS)
        self.i += 1
        self.expect("(")
        args: list = []
        while not self.at(")"):
            if self.tok.kind == "int" or self.at("-"):
                args.append(self.integer())
            else:
                args.append(self.ref("name"))
            if not self.accept(","):
                break
        self.expect(")")
        self.expect(";")
        return ConstructDecl(name, t.text, tuple(args))

    def block(self, kind: str) -> Tuple[Clause, ...]:
        arities = ARITIES[kind]
        open_tok = self.expect("{")
        clauses: Dict[str, Clause] = {}
        while not self.at("}"):
            t = self.tok
            if t.kind != "ident" or t.text not in arities:
                self._fail(sorted(arities) + ["}"])
            if t.text in clauses:
                raise ParseError(f"clause {t.text!r} given twice", t.line, t.column)
            self.i += 1
            params: List[Pattern] = []
            if self.accept("("):
                while True:
                    params.append(self.pattern())
                    if not self.accept(","):
                        break
                self.expect(")")
            if len(params) != arities[t.text]:
                raise ParseError(
                    f"{t.text} takes {arities[t.text]} parameter(s), got {len(params)}", t.line, t.column
                )
            self.expect("=")
            body = self.expr()
            clauses[t.text] = Clause(t.text, tuple(params), body)
            if not self.accept(";") and not self.at("}"):
                self._fail([";", "}"])
        self.expect("}")
        missing = [c for c in arities if c not in clauses]
        if missing:
            raise ParseError(f"{kind} block is missing {', '.join(missing)}", open_tok.line, open_tok.column)
        return tuple(clauses[c] for c in arities)

    # patterns
    def pattern(self) -> Pattern:
        t = self.tok
        if self.accept("("):
            if self.accept(")"):
                return PUnit()
            left = self.pattern()
            if self.accept(","):
                right = self.pattern()
                self.expect(")")
                return PPair(left, right)
            self.expect(")")
            return left
        if t.kind == "ident":
            if t.text == "_":
                self.i += 1
                return PWild()
            if t.text in ("inl", "inr", "just"):
                self.i += 1
                return PTag(t.text, self.pattern())
            if t.text == "nothing":
                self.i += 1
                return PTag("nothing", None)
            return PVar(self.ident("pattern"))
        self._fail(["(", "_", "identifier", "inl", "inr", "just", "nothing"])

    # expressions
    def expr(self) -> Expr:
        if self.accept("if"):
            cond = self.expr()
            self.expect("then")
            then = self.expr()
            self.expect("else")
            return IfExpr(cond, then, self.expr())
        if self.accept("case"):
            scrutinee = self.expr()
            self.expect("of")
            self.expect("{")
            branches = []
            while True:
                pat = self.pattern()
                self.expect("->")
                branches.append((pat, self.expr()))
                if not self.accept(";") or self.at("}"):
                    break
            self.expect("}")
            return CaseExpr(scrutinee, tuple(branches))
        return self.comparison()

    def comparison(self) -> Expr:
        left = self.additive()
        for op in ("==", "!=", "<=", ">=", "<", ">"):
            if self.accept(op):
                return BinOp(op, left, self.additive())
        return left

    def additive(self) -> Expr:
        left = self.multiplicative()
        while self.at("+") or self.at("-"):
            op = self.tok.text
            self.i += 1
            left = BinOp(op, left, self.multiplicative())
        return left

    def multiplicative(self) -> Expr:
        left = self.unary()
        while self.at("*") or self.at("div") or self.at("mod"):
            op = self.tok.text
            self.i += 1
            left = BinOp(op, left, self.unary())
        return left

    def unary(self) -> Expr:
        if self.accept("-"):
            inner = self.unary()
            return Num(-inner.value) if isinstance(inner, Num) else Neg(inner)
        return self.application()

    def application(self) -> Expr:
        t = self.tok
        if t.kind == "ident" and t.text in ("inl", "inr", "just"):
            self.i += 1
            return Call(t.text, (self.unary(),))
        if t.kind == "ident" and t.text in _FUNCTIONS:
            self.i += 1
            self.expect("(")
            args = [self.expr()]
            while self.accept(","):
                args.append(self.expr())
            self.expect(")")
            if len(args) != _FUNCTIONS[t.text]:
                raise ParseError(f"{t.text} takes {_FUNCTIONS[t.text]} argument(s)", t.line, t.column)
            return Call(t.text, tuple(args))
        return self.atom()

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return Num(int(t.text))
        if t.kind == "symbol":
            self.i += 1
            return Sym(t.text[1:])
        if t.kind == "ident":
            if t.text in ("nat", "int", "unit"):
                self.i += 1
                return SetName(t.text)
            if t.text == "nothing":
                self.i += 1
                return NothingLit()
            if t.text not in _KEYWORDS:
                self.i += 1
                return Var(t.text)
        if self.accept("("):
            if self.accept(")"):
                return UnitLit()
            first = self.expr()
            if self.accept(","):
                second = self.expr()
                self.expect(")")
                return PairExpr(first, second)
            self.expect(")")
            return first
        if self.accept("{"):
            items = []
            if not self.at("}"):
                items.append(self.expr())
                while self.accept(","):
                    items.append(self.expr())
            self.expect("}")
            return SetLit(tuple(items))
        self._fail(_ATOM_START)


def _pattern_vars(p: Pattern) -> List[str]:
    if isinstance(p, PVar):
        return [p.name]
    if isinstance(p, PPair):
        return _pattern_vars(p.left) + _pattern_vars(p.right)
    if isinstance(p, PTag) and p.inner is not None:
        return _pattern_vars(p.inner)
    return []


def _free_vars(e: Expr, bound: frozenset) -> List[str]:
    if isinstance(e, Var):
        return [] if e.name in bound else [e.name]
    if isinstance(e, (PairExpr, BinOp)):
        return _free_vars(e.left, bound) + _free_vars(e.right, bound)
    if isinstance(e, Neg):
        return _free_vars(e.operand, bound)
    if isinstance(e, (Call, SetLit)):
        parts = e.args if isinstance(e, Call) else e.items
        return [v for a in parts for v in _free_vars(a, bound)]
    if isinstance(e, IfExpr):
        return _free_vars(e.cond, bound) + _free_vars(e.then, bound) + _free_vars(e.otherwise, bound)
    if isinstance(e, CaseExpr):
        out = _free_vars(e.scrutinee, bound)
        for pat, body in e.branches:
            out += _free_vars(body, bound | frozenset(_pattern_vars(pat)))
        return out
    return []


def _resolve(spec: Spec) -> None:
    """Every name refers to something and every clause body is closed."""
    known = set(CONTAINERS)
    for d in spec.declarations:
        clauses = getattr(d, "clauses", ())
        for c in clauses:
            bound = frozenset(v for p in c.params for v in _pattern_vars(p))
            free = _free_vars(c.body, bound)
            if free:
                raise UnknownName(f"{d.name}.{c.name}: unbound variable {free[0]!r}")
        refs: List[str] = []
        if isinstance(d, DirectedDecl):
            refs = [d.base]
        elif isinstance(d, MorphismDecl):
            refs = [d.source, d.target]
        elif isinstance(d, ConstructDecl):
            refs = [a for a in d.args if isinstance(a, str) and a not in ("recursive", "depth_bounded")]
        for r in refs:
            if r not in known:
                raise UnknownName(f"{d.name}: unknown name {r!r}")
        if isinstance(d, BuiltinDecl) and d.builtin not in builtin_names() and not d.builtin.startswith(("focus-of(", "monoid(")):
            raise UnknownName(f"{d.name}: no builtin {d.builtin!r}")
        known.add(d.name)


def parse_spec(text: str) -> Spec:
    spec = Parser(text).spec()
    _resolve(spec)
    return spec


def parse_expr(text: str) -> Expr:
    p = Parser(text)
    e = p.expr()
    if p.tok.kind != "eof":
        p._fail(["end of input"])
    return e


# ---------------------------------------------------------------------------
# printer


def print_pattern(p: Pattern) -> str:
    if isinstance(p, PVar):
        return p.name
    if isinstance(p, PWild):
        return "_"
    if isinstance(p, PUnit):
        return "()"
    if isinstance(p, PPair):
        return f"({print_pattern(p.left)}, {print_pattern(p.right)})"
    if p.tag == "nothing":
        return "nothing"
    return f"{p.tag} ({print_pattern(p.inner)})"


def print_expr(e: Expr, top: bool = False) -> str:
    """Canonical text; compound forms are parenthesised unless ``top``."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Sym):
        return f"'{e.name}"
    if isinstance(e, UnitLit):
        return "()"
    if isinstance(e, NothingLit):
        return "nothing"
    if isinstance(e, SetName):
        return e.name
    if isinstance(e, PairExpr):
        return f"({print_expr(e.left, True)}, {print_expr(e.right, True)})"
    if isinstance(e, Neg):
        return f"-({print_expr(e.operand, True)})"
    if isinstance(e, Call):
        return f"{e.fn}({', '.join(print_expr(a, True) for a in e.args)})"
    if isinstance(e, SetLit):
        return "{" + ", ".join(print_expr(a, True) for a in e.items) + "}"
    if isinstance(e, BinOp):
        text = f"{print_expr(e.left)} {e.op} {print_expr(e.right)}"
    elif isinstance(e, IfExpr):
        text = f"if {print_expr(e.cond, True)} then {print_expr(e.then, True)} else {print_expr(e.otherwise, True)}"
    elif isinstance(e, CaseExpr):
        arms = "; ".join(f"{print_pattern(p)} -> {print_expr(b, True)}" for p, b in e.branches)
        text = f"case {print_expr(e.scrutinee, True)} of {{ {arms} }}"
    else:
        raise TypeError(f"cannot print {e!r}")
    return text if top else f"({text})"


def _print_clause(c: Clause) -> str:
    params = f"({', '.join(print_pattern(p) for p in c.params)})" if c.params else ""
    return f"    {c.name}{params} = {print_expr(c.body, True)};"


def print_decl(d: Any) -> str:
    if isinstance(d, BuiltinDecl):
        return f'builtin {d.name} = "{d.builtin}";'
    if isinstance(d, ConstructDecl):
        return f"construct {d.name} = {d.kind}({', '.join(str(a) for a in d.args)});"
    if isinstance(d, ContainerDecl):
        head = f"container {d.name}"
    elif isinstance(d, DirectedDecl):
        head = f"directed {d.name} on {d.base}"
    elif isinstance(d, StrictDecl):
        head = f"strict {d.name}"
    else:
        head = f"morphism {d.name} : {d.source} -> {d.target}"
    body = "\n".join(_print_clause(c) for c in d.clauses)
    return f"{head} {{\n{body}\n}}"


def print_spec(spec: Spec) -> str:
    return "\n\n".join(print_decl(d) for d in spec.declarations) + "\n"


# ---------------------------------------------------------------------------
# evaluation


def _int(v: Any, what: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise EvalError(f"{what} expects an integer, got {render(v)}")
    return v


def _set(v: Any, what: str) -> Enumeration:
    if not isinstance(v, Enumeration):
        raise EvalError(f"{what} expects a set, got {render(v)}")
    return v


def match(p: Pattern, v: Any, env: dict) -> bool:
    if isinstance(p, PVar):
        env[p.name] = v
        return True
    if isinstance(p, PWild):
        return True
    if isinstance(p, PUnit):
        return v is UNIT
    if isinstance(p, PPair):
        return isinstance(v, Pair) and match(p.left, v.fst, env) and match(p.right, v.snd, env)
    if p.tag == "nothing":
        return v is NOTHING
    cls = {"inl": Inl, "inr": Inr, "just": Just}[p.tag]
    return isinstance(v, cls) and match(p.inner, v.value, env)


def _arith(op: str, a: Any, b: Any) -> Any:
    if op == "*" and isinstance(a, Enumeration):
        return product(a, _set(b, "*"))
    if op == "+" and isinstance(a, Enumeration):
        return coproduct(a, _set(b, "+"))
    if op in ("==", "!="):
        from .values import EQUAL, value_eq

        same = value_eq(a, b) is EQUAL
        return same if op == "==" else not same
    x, y = _int(a, op), _int(b, op)
    if op == "+":
        return x + y
    if op == "-":
        return x - y
    if op == "*":
        return x * y
    if op in ("div", "mod"):
        if y == 0:
            raise EvalError(f"{op} by zero")
        return x // y if op == "div" else x % y
    return {"<": x < y, "<=": x <= y, ">": x > y, ">=": x >= y}[op]


def evaluate(e: Expr, env: Dict[str, Any]) -> Any:
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        try:
            return env[e.name]
        except KeyError:
            raise EvalError(f"unbound variable {e.name!r}") from None
    if isinstance(e, Sym):
        return Symbol(e.name)
    if isinstance(e, UnitLit):
        return UNIT
    if isinstance(e, NothingLit):
        return NOTHING
    if isinstance(e, SetName):
        return {"nat": NAT, "int": INTEGERS, "unit": UNIT_SET}[e.name]
    if isinstance(e, PairExpr):
        return Pair(evaluate(e.left, env), evaluate(e.right, env))
    if isinstance(e, BinOp):
        return _arith(e.op, evaluate(e.left, env), evaluate(e.right, env))
    if isinstance(e, Neg):
        return -_int(evaluate(e.operand, env), "negation")
    if isinstance(e, SetLit):
        items = []
        for a in e.items:
            v = evaluate(a, env)
            if v not in items:
                items.append(v)
        return finite(items, "literal")
    if isinstance(e, IfExpr):
        cond = evaluate(e.cond, env)
        if not isinstance(cond, bool):
            raise EvalError(f"if expects a comparison, got {render(cond)}")
        return evaluate(e.then if cond else e.otherwise, env)
    if isinstance(e, CaseExpr):
        v = evaluate(e.scrutinee, env)
        for pat, body in e.branches:
            local = dict(env)
            if match(pat, v, local):
                return evaluate(body, local)
        raise EvalError(f"no case branch matches {render(v)}")
    if isinstance(e, Call):
        args = [evaluate(a, env) for a in e.args]
        return _call(e.fn, args)
    raise EvalError(f"cannot evaluate {e!r}")


def _call(fn: str, args: list) -> Any:
    if fn in ("fst", "snd"):
        v = args[0]
        if not isinstance(v, Pair):
            raise EvalError(f"{fn} expects a pair, got {render(v)}")
        return v.fst if fn == "fst" else v.snd
    if fn == "inl":
        return Inl(args[0])
    if fn == "inr":
        return Inr(args[0])
    if fn == "just":
        return Just(args[0])
    if fn == "max":
        return max(_int(args[0], fn), _int(args[1], fn))
    if fn == "min":
        return min(_int(args[0], fn), _int(args[1], fn))
    if fn == "fin":
        return fin(max(_int(args[0], fn), 0))
    if fn == "int-range":
        return int_range(_int(args[0], fn), _int(args[1], fn))
    if fn == "maybe":
        return options(_set(args[0], fn))
    raise EvalError(f"unknown function {fn}")


def compile_clause(c: Clause, where: str) -> Callable[..., Any]:
    """A Python function of the clause's parameters."""
    params, body = c.params, c.body

    def run(*args):
        env: dict = {}
        for p, v in zip(params, args):
            if not match(p, v, env):
                raise EvalError(f"{where}.{c.name}: argument {render(v)} does not match {print_pattern(p)}")
        return evaluate(body, env)

    return run


# ---------------------------------------------------------------------------
# turning a spec into library objects


@dataclass
class Namespace:
    """Objects declared by a spec, in declaration order."""

    objects: Dict[str, Any] = field(default_factory=dict)
    bundles: Dict[str, Any] = field(default_factory=dict)
    kinds: Dict[str, str] = field(default_factory=dict)

    def __getitem__(self, name: str) -> Any:
        if name in self.objects:
            return self.objects[name]
        if name in CONTAINERS:
            return CONTAINERS[name]
        raise UnknownName(f"no object named {name!r}")

    def names(self) -> List[str]:
        return list(self.objects)


def _clauses(d: Any) -> Dict[str, Callable[..., Any]]:
    return {c.name: compile_clause(c, d.name) for c in d.clauses}


def _container_of(x: Any) -> Container:
    if isinstance(x, Container):
        return x
    if isinstance(x, DirectedContainer):
        return x.base
    raise DcontError(f"{x!r} is not a container")


def build(spec: Spec) -> Namespace:
    from .constructions import StrictDirectedContainer, cofree, dc_coproduct, strict_product
    from .directed import focus

    ns = Namespace()
    for d in spec.declarations:
        if isinstance(d, ContainerDecl):
            fs = _clauses(d)
            shapes = _set(fs["shapes"](), f"{d.name}.shapes")
            obj: Any = Container(d.name, shapes, lambda s, f=fs["positions"]: _set(f(s), "positions"))
            kind = "container"
        elif isinstance(d, DirectedDecl):
            fs = _clauses(d)
            obj = DirectedContainer(_container_of(ns[d.base]), fs["down"], fs["root"], fs["plus"], d.name)
            kind = "directed"
        elif isinstance(d, StrictDecl):
            fs = _clauses(d)
            obj = StrictDirectedContainer(
                _set(fs["shapes"](), f"{d.name}.shapes"),
                lambda s, f=fs["positions"]: _set(f(s), "positions"),
                fs["down"],
                fs["plus"],
                d.name,
            )
            kind = "strict"
        elif isinstance(d, MorphismDecl):
            fs = _clauses(d)
            src, tgt = ns[d.source], ns[d.target]
            h = ContainerMorphism(_container_of(src), _container_of(tgt), fs["shape"], fs["position"], d.name)
            if isinstance(src, DirectedContainer) and isinstance(tgt, DirectedContainer):
                obj, kind = DCMorphism(src, tgt, h), "dc-morphism"
            else:
                obj, kind = h, "morphism"
        elif isinstance(d, BuiltinDecl):
            obj, kind = builtin(d.builtin), "directed"
        else:
            args = [ns[a] if isinstance(a, str) and a not in ("recursive", "depth_bounded") else a for a in d.args]
            bundle = None
            if d.kind == "coproduct":
                _arity(d, args, 2, 2)
                bundle = dc_coproduct(*args)
                obj = bundle.object
            elif d.kind == "product":
                _arity(d, args, 2, 3)
                strict = [a for a in args[:2]]
                for a in strict:
                    if not isinstance(a, StrictDirectedContainer):
                        raise DcontError(f"{d.name}: product needs strict directed containers")
                bundle = strict_product(strict[0], strict[1], *(args[2:] or [2]))
                obj = bundle.object
            elif d.kind == "cofree":
                _arity(d, args, 1, 3)
                bundle = cofree(_container_of(args[0]), *args[1:])
                obj = bundle.object
            else:
                _arity(d, args, 1, 1)
                obj = focus(_container_of(args[0]), d.name)
            if isinstance(obj, DirectedContainer) and obj.name != d.name:
                obj = DirectedContainer(obj.base, obj.down, obj.root, obj.plus, d.name)
                if bundle is not None:
                    bundle = _rename_bundle(bundle, obj)
            if bundle is not None:
                ns.bundles[d.name] = bundle
            kind = "directed"
        ns.objects[d.name] = obj
        ns.kinds[d.name] = kind
    return ns


def _arity(d: ConstructDecl, args: list, lo: int, hi: int) -> None:
    if not lo <= len(args) <= hi:
        raise DcontError(f"{d.name}: {d.kind} takes {lo}..{hi} arguments, got {len(args)}")


def _rename_bundle(bundle: Any, obj: DirectedContainer) -> Any:
    from dataclasses import replace

    return replace(bundle, object=obj)


def load(text: str) -> Namespace:
    return build(parse_spec(text))


def load_file(path: str) -> Namespace:
    with open(path, encoding="utf-8") as fh:
        return load(fh.read())
