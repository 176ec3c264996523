"""MiniLang: AST, parser, and pretty-printer for a small integer-only language.

Grammar:

    program  := { "int" IDENT ";" } { funcdef }
    funcdef  := "def" IDENT "(" [ IDENT { "," IDENT } ] ")" block
    block    := "{" { stmt } "}"
    stmt     := IDENT "=" expr ";"
              | "if" "(" expr ")" block [ "else" block ]
              | "while" "(" expr ")" block
              | "return" expr ";"
              | "reach" ";"
              | "raise" ";"
              | "try" block "catch" block
              | expr ";"
    expr     := C-style precedence, lowest to highest:
                ||  <  &&  <  == !=  <  < <= > >=  <  + -  <  * /  <  unary - !
                primaries: INT, IDENT, "??" IDENT (template hole), call, parens.

Source is UTF-8 with `//` line comments.  All values are 64-bit signed
integers; overflow and division by zero are runtime errors (see
interpreter).  `reach` marks the single distinguished location that
reachability queries ask about; `raise` throws the one exception kind,
caught by the dynamically nearest `try`/`catch`.

ASTs are plain dataclasses and must be treated as immutable once built.
Statement nodes carry a SourceSpan (excluded from equality) whose stmt_id
is a dense pre-order index assigned by index_program(); ids are stable
across print/parse round trips.  Canonical ASTs never contain a unary
minus applied directly to an integer literal: the parser folds `-5` into
IntLit(-5), and the printer emits negative literals the same way.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)

INT_MIN = -(2**63)
INT_MAX = 2**63 - 1

ARITH_OPS = ("+", "-", "*", "/")
COMPARE_OPS = ("<", "<=", ">", ">=", "==", "!=")
LOGICAL_OPS = ("&&", "||")

KEYWORDS = frozenset(
    {"int", "def", "if", "else", "while", "return", "reach", "raise", "try", "catch"}
)


class MiniLangError(Exception):
    """Base for all errors raised by this package."""


class ParseError(MiniLangError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {msg}")
        self.line = line
        self.col = col


class SemanticError(MiniLangError):
    pass


@dataclass
class SourceSpan:
    """Stable statement identity (dense pre-order index) plus diagnostics."""

    stmt_id: int = -1
    line: int = 0
    col: int = 0


# ---------------------------------------------------------------------------
# Expressions


@dataclass
class Expr:
    pass


@dataclass
class IntLit(Expr):
    value: int


@dataclass
class Var(Expr):
    name: str


@dataclass
class Hole(Expr):
    """A template parameter ??name.  Repeated occurrences of the same name
    denote the same parameter."""

    name: str


@dataclass
class Unary(Expr):
    op: str  # "-" or "!"
    operand: Expr


@dataclass
class Binary(Expr):
    op: str
    lhs: Expr
    rhs: Expr


@dataclass
class Call(Expr):
    func: str
    args: list[Expr]


# ---------------------------------------------------------------------------
# Statements


def _span() -> SourceSpan:
    return SourceSpan()


@dataclass
class Stmt:
    pass


@dataclass
class Assign(Stmt):
    target: str
    rhs: Expr
    span: SourceSpan = field(default_factory=_span, compare=False, repr=False)


@dataclass
class If(Stmt):
    cond: Expr
    then_body: list[Stmt]
    else_body: list[Stmt]
    span: SourceSpan = field(default_factory=_span, compare=False, repr=False)


@dataclass
class While(Stmt):
    cond: Expr
    body: list[Stmt]
    span: SourceSpan = field(default_factory=_span, compare=False, repr=False)


@dataclass
class Return(Stmt):
    value: Expr
    span: SourceSpan = field(default_factory=_span, compare=False, repr=False)


@dataclass
class Reach(Stmt):
    span: SourceSpan = field(default_factory=_span, compare=False, repr=False)


@dataclass
class Raise(Stmt):
    span: SourceSpan = field(default_factory=_span, compare=False, repr=False)


@dataclass
class TryCatch(Stmt):
    try_body: list[Stmt]
    catch_body: list[Stmt]
    span: SourceSpan = field(default_factory=_span, compare=False, repr=False)


@dataclass
class ExprStmt(Stmt):
    expr: Expr
    span: SourceSpan = field(default_factory=_span, compare=False, repr=False)


@dataclass
class Function:
    name: str
    params: list[str]
    body: list[Stmt]


@dataclass
class Program:
    globals: list[str]
    functions: list[Function]
    entry: str = "main"
    _index: "ProgramIndex | None" = field(
        default=None, init=False, repr=False, compare=False
    )


# ---------------------------------------------------------------------------
# Walks and indexing


def iter_body_stmts(body: list[Stmt]):
    """Pre-order walk of a statement list: each statement before its children."""
    for s in body:
        yield s
        if isinstance(s, If):
            yield from iter_body_stmts(s.then_body)
            yield from iter_body_stmts(s.else_body)
        elif isinstance(s, While):
            yield from iter_body_stmts(s.body)
        elif isinstance(s, TryCatch):
            yield from iter_body_stmts(s.try_body)
            yield from iter_body_stmts(s.catch_body)


def iter_exprs(e: Expr):
    """Pre-order walk of an expression tree."""
    yield e
    if isinstance(e, Unary):
        yield from iter_exprs(e.operand)
    elif isinstance(e, Binary):
        yield from iter_exprs(e.lhs)
        yield from iter_exprs(e.rhs)
    elif isinstance(e, Call):
        for a in e.args:
            yield from iter_exprs(a)


def own_exprs(s: Stmt) -> list[Expr]:
    """The expressions directly owned by a statement (not those of nested
    statements)."""
    if isinstance(s, Assign):
        return [s.rhs]
    if isinstance(s, (If, While)):
        return [s.cond]
    if isinstance(s, Return):
        return [s.value]
    if isinstance(s, ExprStmt):
        return [s.expr]
    return []


@dataclass
class ProgramIndex:
    functions: dict[str, Function]
    stmts: list[Stmt]
    owner: list[str]  # stmt_id -> enclosing function name
    reach_sites: list[int]


def index_program(p: Program) -> ProgramIndex:
    """Assign dense pre-order statement ids and build the lookup index.

    Idempotent for an unmodified Program; result is cached on the node.
    """
    if p._index is not None:
        return p._index
    functions: dict[str, Function] = {}
    stmts: list[Stmt] = []
    owner: list[str] = []
    reach_sites: list[int] = []
    for f in p.functions:
        functions.setdefault(f.name, f)
        for s in iter_body_stmts(f.body):
            s.span.stmt_id = len(stmts)
            if isinstance(s, Reach):
                reach_sites.append(len(stmts))
            stmts.append(s)
            owner.append(f.name)
    p._index = ProgramIndex(functions, stmts, owner, reach_sites)
    return p._index


def stmt_at(p: Program, site: int) -> Stmt:
    idx = index_program(p)
    if not 0 <= site < len(idx.stmts):
        raise SemanticError(f"no statement with id {site}")
    return idx.stmts[site]


def holes(p: Program) -> list[str]:
    """Distinct hole names in first-occurrence pre-order."""
    seen: list[str] = []
    have: set[str] = set()
    for f in p.functions:
        for s in iter_body_stmts(f.body):
            for e in own_exprs(s):
                for node in iter_exprs(e):
                    if isinstance(node, Hole) and node.name not in have:
                        have.add(node.name)
                        seen.append(node.name)
    return seen


def all_identifiers(p: Program) -> set[str]:
    """Every name that occurs anywhere: globals, functions, params,
    variables, callees, and holes.  Used to mint fresh names."""
    names: set[str] = set(p.globals)
    for f in p.functions:
        names.add(f.name)
        names.update(f.params)
        for s in iter_body_stmts(f.body):
            if isinstance(s, Assign):
                names.add(s.target)
            for e in own_exprs(s):
                for node in iter_exprs(e):
                    if isinstance(node, Var):
                        names.add(node.name)
                    elif isinstance(node, Hole):
                        names.add(node.name)
                    elif isinstance(node, Call):
                        names.add(node.func)
    return names


def count_nodes(p: Program) -> int:
    """AST size: functions + statements + expression nodes."""
    n = len(p.functions) + len(p.globals)
    for f in p.functions:
        for s in iter_body_stmts(f.body):
            n += 1
            for e in own_exprs(s):
                n += sum(1 for _ in iter_exprs(e))
    return n


# ---------------------------------------------------------------------------
# Copying and rewriting


def copy_expr(e: Expr) -> Expr:
    if isinstance(e, IntLit):
        return IntLit(e.value)
    if isinstance(e, Var):
        return Var(e.name)
    if isinstance(e, Hole):
        return Hole(e.name)
    if isinstance(e, Unary):
        return Unary(e.op, copy_expr(e.operand))
    if isinstance(e, Binary):
        return Binary(e.op, copy_expr(e.lhs), copy_expr(e.rhs))
    if isinstance(e, Call):
        return Call(e.func, [copy_expr(a) for a in e.args])
    raise TypeError(f"not an expression: {e!r}")


def _copy_span(s: SourceSpan) -> SourceSpan:
    return SourceSpan(-1, s.line, s.col)


def copy_stmt(s: Stmt) -> Stmt:
    if isinstance(s, Assign):
        return Assign(s.target, copy_expr(s.rhs), _copy_span(s.span))
    if isinstance(s, If):
        return If(
            copy_expr(s.cond),
            [copy_stmt(x) for x in s.then_body],
            [copy_stmt(x) for x in s.else_body],
            _copy_span(s.span),
        )
    if isinstance(s, While):
        return While(copy_expr(s.cond), [copy_stmt(x) for x in s.body], _copy_span(s.span))
    if isinstance(s, Return):
        return Return(copy_expr(s.value), _copy_span(s.span))
    if isinstance(s, Reach):
        return Reach(_copy_span(s.span))
    if isinstance(s, Raise):
        return Raise(_copy_span(s.span))
    if isinstance(s, TryCatch):
        return TryCatch(
            [copy_stmt(x) for x in s.try_body],
            [copy_stmt(x) for x in s.catch_body],
            _copy_span(s.span),
        )
    if isinstance(s, ExprStmt):
        return ExprStmt(copy_expr(s.expr), _copy_span(s.span))
    raise TypeError(f"not a statement: {s!r}")


def copy_program(p: Program) -> Program:
    return Program(
        list(p.globals),
        [Function(f.name, list(f.params), [copy_stmt(s) for s in f.body]) for f in p.functions],
        p.entry,
    )


def rewrite_exprs(p: Program, fn) -> Program:
    """Fresh program with fn applied to every owned expression of every
    statement.  fn receives a private copy and returns a replacement."""
    out = copy_program(p)
    for f in out.functions:
        for s in iter_body_stmts(f.body):
            if isinstance(s, Assign):
                s.rhs = fn(s.rhs)
            elif isinstance(s, (If, While)):
                s.cond = fn(s.cond)
            elif isinstance(s, Return):
                s.value = fn(s.value)
            elif isinstance(s, ExprStmt):
                s.expr = fn(s.expr)
    return out


def replace_stmt_at(p: Program, site: int, new_stmt: Stmt) -> Program:
    """Fresh program with the statement at `site` swapped for new_stmt.

    One-for-one replacement, so all other statement ids are unchanged.
    """
    index_program(p)
    out = copy_program(p)
    found = False

    # Walk both programs in lockstep pre-order; replace where the original's
    # id matches.
    def walk(body: list[Stmt], orig: list[Stmt]):
        nonlocal found
        for i, (s, o) in enumerate(zip(body, orig)):
            if o.span.stmt_id == site:
                body[i] = copy_stmt(new_stmt)
                found = True
                return
            if isinstance(s, If):
                walk(s.then_body, o.then_body)
                walk(s.else_body, o.else_body)
            elif isinstance(s, While):
                walk(s.body, o.body)
            elif isinstance(s, TryCatch):
                walk(s.try_body, o.try_body)
                walk(s.catch_body, o.catch_body)
            if found:
                return

    for f_out, f_orig in zip(out.functions, p.functions):
        walk(f_out.body, f_orig.body)
        if found:
            break
    if not found:
        raise SemanticError(f"no statement with id {site}")
    return out


def substitute(p: Program, valuation: dict[str, int]) -> Program:
    """Instantiate every hole of p with its value from `valuation`.

    Extraneous keys are ignored with a warning; a missing hole is an error.
    Non-hole nodes are unchanged.
    """
    needed = holes(p)
    missing = [h for h in needed if h not in valuation]
    if missing:
        raise SemanticError(f"no value for hole(s): {', '.join(missing)}")
    extra = set(valuation) - set(needed)
    if extra:
        logger.warning("substitute: ignoring values for unknown holes %s", sorted(extra))

    def fill(e: Expr) -> Expr:
        if isinstance(e, Hole):
            return IntLit(valuation[e.name])
        if isinstance(e, Unary):
            return Unary(e.op, fill(e.operand))
        if isinstance(e, Binary):
            return Binary(e.op, fill(e.lhs), fill(e.rhs))
        if isinstance(e, Call):
            return Call(e.func, [fill(a) for a in e.args])
        return copy_expr(e)

    return rewrite_exprs(p, fill)


# ---------------------------------------------------------------------------
# Validation


def _terminates(body: list[Stmt]) -> bool:
    for s in body:
        if isinstance(s, (Return, Raise, Reach)):
            return True
        if isinstance(s, If) and _terminates(s.then_body) and _terminates(s.else_body):
            return True
        if isinstance(s, TryCatch) and _terminates(s.try_body) and _terminates(s.catch_body):
            return True
    return False


def validate_program(p: Program) -> None:
    """Check Program invariants; raises SemanticError on the first violation."""
    seen_g: set[str] = set()
    for g in p.globals:
        if g in seen_g:
            raise SemanticError(f"duplicate global '{g}'")
        seen_g.add(g)
    names: set[str] = set()
    for f in p.functions:
        if f.name in names:
            raise SemanticError(f"duplicate function '{f.name}'")
        names.add(f.name)
    if not p.functions:
        raise SemanticError("program has no functions")
    if p.entry not in names:
        raise SemanticError(f"entry function '{p.entry}' is not defined")
    arity = {f.name: len(f.params) for f in p.functions}
    reach_count = 0
    for f in p.functions:
        seen_p: set[str] = set()
        for prm in f.params:
            if prm in seen_p:
                raise SemanticError(f"duplicate parameter '{prm}' in '{f.name}'")
            if prm in seen_g:
                raise SemanticError(f"parameter '{prm}' of '{f.name}' shadows a global")
            seen_p.add(prm)
        if not _terminates(f.body):
            raise SemanticError(f"function '{f.name}' can fall off the end of its body")
        for s in iter_body_stmts(f.body):
            if isinstance(s, Reach):
                reach_count += 1
            for e in own_exprs(s):
                for node in iter_exprs(e):
                    if isinstance(node, Call):
                        if node.func not in arity:
                            raise SemanticError(f"call to undefined function '{node.func}'")
                        if len(node.args) != arity[node.func]:
                            raise SemanticError(
                                f"call to '{node.func}' with {len(node.args)} args, "
                                f"expected {arity[node.func]}"
                            )
                    elif isinstance(node, IntLit):
                        if not INT_MIN <= node.value <= INT_MAX:
                            raise SemanticError(f"integer literal {node.value} out of range")
    if reach_count > 1:
        raise SemanticError(f"program has {reach_count} reach labels (at most 1 allowed)")


# ---------------------------------------------------------------------------
# Lexer


@dataclass
class _Token:
    kind: str  # int | ident | hole | punct | kw | eof
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<comment>//[^\n]*)
    | (?P<int>\d+)
    | (?P<hole>\?\?[A-Za-z_][A-Za-z0-9_]*)
    | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<punct>\|\||&&|==|!=|<=|>=|[-+*/<>!=(){},;])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[_Token]:
    toks: list[_Token] = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        lexeme = m.group(0)
        kind = m.lastgroup or ""
        if kind == "ident" and lexeme in KEYWORDS:
            kind = "kw"
        if kind not in ("ws", "comment"):
            toks.append(_Token(kind, lexeme, line, col))
        nl = lexeme.count("\n")
        if nl:
            line += nl
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = m.end()
    toks.append(_Token("eof", "", line, col))
    return toks


# ---------------------------------------------------------------------------
# Parser

_BIN_PREC = {
    "||": 1,
    "&&": 2,
    "==": 3,
    "!=": 3,
    "<": 4,
    "<=": 4,
    ">": 4,
    ">=": 4,
    "+": 5,
    "-": 5,
    "*": 6,
    "/": 6,
}
_UNARY_PREC = 7


class _Parser:
    def __init__(self, toks: list[_Token]):
        self.toks = toks
        self.pos = 0

    def peek(self, off: int = 0) -> _Token:
        return self.toks[min(self.pos + off, len(self.toks) - 1)]

    def next(self) -> _Token:
        t = self.toks[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def expect(self, text: str) -> _Token:
        t = self.peek()
        if t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.line, t.col)
        return self.next()

    def expect_ident(self) -> _Token:
        t = self.peek()
        if t.kind != "ident":
            raise ParseError(f"expected identifier, found {t.text or 'end of input'!r}", t.line, t.col)
        return self.next()

    # -- program

    def program(self) -> Program:
        globs: list[str] = []
        while self.peek().text == "int":
            self.next()
            globs.append(self.expect_ident().text)
            self.expect(";")
        funcs: list[Function] = []
        while self.peek().text == "def":
            funcs.append(self.funcdef())
        t = self.peek()
        if t.kind != "eof":
            raise ParseError(f"expected 'def', found {t.text!r}", t.line, t.col)
        if not funcs:
            raise ParseError("program defines no functions", t.line, t.col)
        entry = "main" if any(f.name == "main" for f in funcs) else funcs[0].name
        return Program(globs, funcs, entry)

    def funcdef(self) -> Function:
        self.expect("def")
        name = self.expect_ident().text
        self.expect("(")
        params: list[str] = []
        if self.peek().text != ")":
            params.append(self.expect_ident().text)
            while self.peek().text == ",":
                self.next()
                params.append(self.expect_ident().text)
        self.expect(")")
        return Function(name, params, self.block())

    def block(self) -> list[Stmt]:
        self.expect("{")
        body: list[Stmt] = []
        while self.peek().text != "}":
            body.append(self.stmt())
        self.expect("}")
        return body

    def stmt(self) -> Stmt:
        t = self.peek()
        sp = SourceSpan(-1, t.line, t.col)
        if t.text == "if":
            self.next()
            self.expect("(")
            cond = self.expr()
            self.expect(")")
            then_body = self.block()
            else_body: list[Stmt] = []
            if self.peek().text == "else":
                self.next()
                else_body = self.block()
            return If(cond, then_body, else_body, sp)
        if t.text == "while":
            self.next()
            self.expect("(")
            cond = self.expr()
            self.expect(")")
            return While(cond, self.block(), sp)
        if t.text == "return":
            self.next()
            v = self.expr()
            self.expect(";")
            return Return(v, sp)
        if t.text == "reach":
            self.next()
            self.expect(";")
            return Reach(sp)
        if t.text == "raise":
            self.next()
            self.expect(";")
            return Raise(sp)
        if t.text == "try":
            self.next()
            try_body = self.block()
            self.expect("catch")
            return TryCatch(try_body, self.block(), sp)
        if t.kind == "ident" and self.peek(1).text == "=" and self.peek(1).kind == "punct":
            target = self.next().text
            self.expect("=")
            rhs = self.expr()
            self.expect(";")
            return Assign(target, rhs, sp)
        e = self.expr()
        self.expect(";")
        return ExprStmt(e, sp)

    # -- expressions

    def expr(self) -> Expr:
        return self.binary(1)

    def binary(self, min_prec: int) -> Expr:
        left = self.unary()
        while True:
            t = self.peek()
            prec = _BIN_PREC.get(t.text) if t.kind == "punct" else None
            if prec is None or prec < min_prec:
                return left
            self.next()
            right = self.binary(prec + 1)
            left = Binary(t.text, left, right)

    def unary(self) -> Expr:
        t = self.peek()
        if t.kind == "punct" and t.text in ("-", "!"):
            self.next()
            operand = self.unary()
            if t.text == "-" and isinstance(operand, IntLit):
                return IntLit(-operand.value)
            return Unary(t.text, operand)
        return self.primary()

    def primary(self) -> Expr:
        t = self.peek()
        if t.kind == "int":
            self.next()
            return IntLit(int(t.text))
        if t.kind == "hole":
            self.next()
            return Hole(t.text[2:])
        if t.kind == "ident":
            self.next()
            if self.peek().text == "(":
                self.next()
                args: list[Expr] = []
                if self.peek().text != ")":
                    args.append(self.expr())
                    while self.peek().text == ",":
                        self.next()
                        args.append(self.expr())
                self.expect(")")
                return Call(t.text, args)
            return Var(t.text)
        if t.text == "(":
            self.next()
            e = self.expr()
            self.expect(")")
            return e
        raise ParseError(f"expected expression, found {t.text or 'end of input'!r}", t.line, t.col)


def parse(text: str) -> Program:
    """Parse MiniLang source into a validated, indexed Program."""
    p = _Parser(_tokenize(text)).program()
    validate_program(p)
    index_program(p)
    return p


def parse_stmt(text: str) -> Stmt:
    """Parse a single statement (used to re-apply printed patches)."""
    parser = _Parser(_tokenize(text))
    s = parser.stmt()
    t = parser.peek()
    if t.kind != "eof":
        raise ParseError(f"trailing input {t.text!r}", t.line, t.col)
    return s


# ---------------------------------------------------------------------------
# Pretty printer

_INDENT = "  "


def print_expr(e: Expr, parent_prec: int = 0) -> str:
    if isinstance(e, IntLit):
        text = str(e.value)
        return f"({text})" if e.value < 0 and parent_prec > _UNARY_PREC else text
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Hole):
        return f"??{e.name}"
    if isinstance(e, Unary):
        inner = print_expr(e.operand, _UNARY_PREC + 1)
        text = f"{e.op}{inner}"
        return f"({text})" if parent_prec > _UNARY_PREC else text
    if isinstance(e, Binary):
        prec = _BIN_PREC[e.op]
        text = f"{print_expr(e.lhs, prec)} {e.op} {print_expr(e.rhs, prec + 1)}"
        return f"({text})" if parent_prec > prec else text
    if isinstance(e, Call):
        return f"{e.func}({', '.join(print_expr(a) for a in e.args)})"
    raise TypeError(f"not an expression: {e!r}")


def print_stmt(s: Stmt, depth: int = 0) -> str:
    pad = _INDENT * depth
    if isinstance(s, Assign):
        return f"{pad}{s.target} = {print_expr(s.rhs)};\n"
    if isinstance(s, If):
        out = f"{pad}if ({print_expr(s.cond)}) {{\n"
        out += "".join(print_stmt(x, depth + 1) for x in s.then_body)
        if s.else_body:
            out += f"{pad}}} else {{\n"
            out += "".join(print_stmt(x, depth + 1) for x in s.else_body)
        return out + f"{pad}}}\n"
    if isinstance(s, While):
        out = f"{pad}while ({print_expr(s.cond)}) {{\n"
        out += "".join(print_stmt(x, depth + 1) for x in s.body)
        return out + f"{pad}}}\n"
    if isinstance(s, Return):
        return f"{pad}return {print_expr(s.value)};\n"
    if isinstance(s, Reach):
        return f"{pad}reach;\n"
    if isinstance(s, Raise):
        return f"{pad}raise;\n"
    if isinstance(s, TryCatch):
        out = f"{pad}try {{\n"
        out += "".join(print_stmt(x, depth + 1) for x in s.try_body)
        out += f"{pad}}} catch {{\n"
        out += "".join(print_stmt(x, depth + 1) for x in s.catch_body)
        return out + f"{pad}}}\n"
    if isinstance(s, ExprStmt):
        return f"{pad}{print_expr(s.expr)};\n"
    raise TypeError(f"not a statement: {s!r}")


def print_stmt_inline(s: Stmt) -> str:
    """Single-line rendering, used in diagnostics and patch records."""
    return " ".join(print_stmt(s).split())


def print_program(p: Program) -> str:
    """Deterministic canonical text; parse(print_program(p)) == p."""
    parts: list[str] = []
    for g in p.globals:
        parts.append(f"int {g};\n")
    if p.globals:
        parts.append("\n")
    for i, f in enumerate(p.functions):
        if i:
            parts.append("\n")
        parts.append(f"def {f.name}({', '.join(f.params)}) {{\n")
        parts.extend(print_stmt(s, 1) for s in f.body)
        parts.append("}\n")
    return "".join(parts)
