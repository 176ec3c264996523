"""Repair-template catalog.

A template takes one statement of a program and re-expresses part of it
with integer holes:

  CONST_SWAP      every integer literal in the statement becomes a hole
                  over [-100000, 100000].
  OP_SWITCH_*     every arithmetic / comparison / logical operator in the
                  statement becomes a hole that indexes its operator
                  class; the templated expression selects the operator
                  by hole value.
  LINEAR_COMBO    an assignment's right-hand side becomes
                  ??c0 + ??c1*v1 + ... over the variables in scope, with
                  the constant hole over [-100000, 100000] and each
                  variable coefficient over {-1, 0, 1}.

The hole-indexed operator switch is encoded in-language.  For comparison
and logical operators the encoding short-circuits, so only the selected
operator's operands are evaluated:

    a < b   ->   ??k == 0 && a < b || ??k == 1 && a <= b || ...

For arithmetic operators every branch is evaluated:

    a + b   ->   (??k == 0) * (a + b) + (??k == 1) * (a - b)
               + (??k == 2) * (a * b) + (??k == 3) * (a / b)

so a division branch whose divisor is zero on some test poisons the
whole candidate (it fails validation and is skipped); this loses no
soundness, only that one candidate.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

from .minilang import (
    ARITH_OPS,
    COMPARE_OPS,
    LOGICAL_OPS,
    Assign,
    Binary,
    Call,
    Expr,
    ExprStmt,
    Hole,
    If,
    IntLit,
    Program,
    Return,
    SemanticError,
    Stmt,
    Unary,
    Var,
    While,
    all_identifiers,
    copy_expr,
    copy_stmt,
    index_program,
    iter_body_stmts,
    iter_exprs,
    own_exprs,
    replace_stmt_at,
    stmt_at,
)

COEFF_RANGE = (-100_000, 100_000)


class TemplateKind(enum.Enum):
    """Catalog order is exploration order: cheapest search spaces first."""

    CONST_SWAP = "const_swap"
    OP_SWITCH_ARITH = "op_switch_arith"
    OP_SWITCH_COMPARE = "op_switch_compare"
    OP_SWITCH_LOGICAL = "op_switch_logical"
    LINEAR_COMBO = "linear_combo"


CATALOG = (
    TemplateKind.CONST_SWAP,
    TemplateKind.OP_SWITCH_ARITH,
    TemplateKind.OP_SWITCH_COMPARE,
    TemplateKind.OP_SWITCH_LOGICAL,
    TemplateKind.LINEAR_COMBO,
)

_OP_CLASS = {
    TemplateKind.OP_SWITCH_ARITH: ARITH_OPS,
    TemplateKind.OP_SWITCH_COMPARE: COMPARE_OPS,
    TemplateKind.OP_SWITCH_LOGICAL: LOGICAL_OPS,
}


@dataclass
class IntRange:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty range [{self.lo}, {self.hi}]")

    def __contains__(self, v: int) -> bool:
        return self.lo <= v <= self.hi

    def size(self) -> int:
        return self.hi - self.lo + 1

    def values(self):
        return range(self.lo, self.hi + 1)


@dataclass
class FiniteSet:
    values_set: tuple[int, ...]

    def __post_init__(self):
        if not self.values_set:
            raise ValueError("empty finite domain")

    def __contains__(self, v: int) -> bool:
        return v in self.values_set

    def size(self) -> int:
        return len(set(self.values_set))

    def values(self):
        return sorted(set(self.values_set))


Domain = IntRange | FiniteSet


class HoleSession:
    """Mints hole names that are fresh across every instantiation made
    with the same session."""

    def __init__(self):
        self._counter = itertools.count()

    def fresh(self, taken: set[str]) -> str:
        while True:
            name = f"c{next(self._counter)}"
            if name not in taken:
                return name


@dataclass
class TemplateInstance:
    program: Program  # differs from the original only at `site`
    holes: list[str]
    domains: dict[str, Domain]
    site: int
    kind: TemplateKind
    original_stmt: Stmt = field(repr=False)
    scope: list[str] = field(default_factory=list)  # LINEAR_COMBO only


def _has_literal(s: Stmt) -> bool:
    return any(
        isinstance(n, IntLit) for e in own_exprs(s) for n in iter_exprs(e)
    )


def _class_ops_present(s: Stmt, ops: tuple[str, ...]) -> bool:
    return any(
        isinstance(n, Binary) and n.op in ops
        for e in own_exprs(s)
        for n in iter_exprs(e)
    )


def applicable(p: Program, site: int) -> list[TemplateKind]:
    """Template kinds whose shape rule matches the statement at `site`."""
    s = stmt_at(p, site)
    kinds = []
    for kind in CATALOG:
        if kind is TemplateKind.CONST_SWAP:
            if _has_literal(s):
                kinds.append(kind)
        elif kind is TemplateKind.LINEAR_COMBO:
            if isinstance(s, Assign):
                kinds.append(kind)
        else:
            if _class_ops_present(s, _OP_CLASS[kind]):
                kinds.append(kind)
    return kinds


def scope_at(p: Program, site: int) -> list[str]:
    """Variables usable on a templated right-hand side at `site`: the
    assigned variable itself (for assignments), then the enclosing
    function's parameters, then locals assigned at any earlier statement,
    then globals; first occurrence wins."""
    idx = index_program(p)
    target = stmt_at(p, site)
    fname = idx.owner[site]
    f = idx.functions[fname]
    ordered: list[str] = []

    def push(name: str):
        if name not in ordered:
            ordered.append(name)

    if isinstance(target, Assign):
        push(target.target)
    for prm in f.params:
        push(prm)
    for s in iter_body_stmts(f.body):
        if s.span.stmt_id >= site:
            break
        if isinstance(s, Assign):
            push(s.target)
    for g in p.globals:
        push(g)
    return ordered


def instantiate(
    p: Program,
    site: int,
    kind: TemplateKind,
    scope: list[str] | None = None,
    session: HoleSession | None = None,
) -> TemplateInstance:
    """Produce the template program for (site, kind): the original program
    with the statement at `site` replaced by its parameterized form."""
    if kind not in applicable(p, site):
        raise SemanticError(f"template {kind.value} does not apply to statement {site}")
    session = session or HoleSession()
    taken = all_identifiers(p)
    original = stmt_at(p, site)
    hole_names: list[str] = []
    domains: dict[str, Domain] = {}

    def fresh() -> str:
        name = session.fresh(taken)
        taken.add(name)
        hole_names.append(name)
        return name

    templated = copy_stmt(original)
    used_scope: list[str] = []

    if kind is TemplateKind.CONST_SWAP:

        def swap_lits(e: Expr) -> Expr:
            if isinstance(e, IntLit):
                h = fresh()
                domains[h] = IntRange(*COEFF_RANGE)
                return Hole(h)
            if isinstance(e, Unary):
                return Unary(e.op, swap_lits(e.operand))
            if isinstance(e, Binary):
                return Binary(e.op, swap_lits(e.lhs), swap_lits(e.rhs))
            if isinstance(e, Call):
                return Call(e.func, [swap_lits(a) for a in e.args])
            return copy_expr(e)

        _apply_to_own_exprs(templated, swap_lits)

    elif kind is TemplateKind.LINEAR_COMBO:
        assert isinstance(templated, Assign)
        used_scope = list(scope) if scope is not None else scope_at(p, site)
        c0 = fresh()
        domains[c0] = IntRange(*COEFF_RANGE)
        rhs: Expr = Hole(c0)
        for v in used_scope:
            ci = fresh()
            domains[ci] = FiniteSet((-1, 0, 1))
            rhs = Binary("+", rhs, Binary("*", Hole(ci), Var(v)))
        templated.rhs = rhs

    else:  # operator switch
        ops = _OP_CLASS[kind]

        def switch(e: Expr) -> Expr:
            if isinstance(e, Binary):
                # pre-order: this operator first, then operands
                if e.op in ops:
                    h = fresh()
                    domains[h] = FiniteSet(tuple(range(len(ops))))
                    lhs = switch(e.lhs)
                    rhs = switch(e.rhs)
                    return _encode_switch(kind, h, ops, lhs, rhs)
                return Binary(e.op, switch(e.lhs), switch(e.rhs))
            if isinstance(e, Unary):
                return Unary(e.op, switch(e.operand))
            if isinstance(e, Call):
                return Call(e.func, [switch(a) for a in e.args])
            return copy_expr(e)

        _apply_to_own_exprs(templated, switch)

    program = replace_stmt_at(p, site, templated)
    return TemplateInstance(
        program=program,
        holes=hole_names,
        domains=domains,
        site=site,
        kind=kind,
        original_stmt=copy_stmt(original),
        scope=used_scope,
    )


def _apply_to_own_exprs(s: Stmt, fn):
    if isinstance(s, Assign):
        s.rhs = fn(s.rhs)
    elif isinstance(s, (If, While)):
        s.cond = fn(s.cond)
    elif isinstance(s, Return):
        s.value = fn(s.value)
    elif isinstance(s, ExprStmt):
        s.expr = fn(s.expr)


def _encode_switch(
    kind: TemplateKind, hole: str, ops: tuple[str, ...], lhs: Expr, rhs: Expr
) -> Expr:
    def pick(i: int) -> Expr:
        return Binary("==", Hole(hole), IntLit(i))

    def arm(i: int) -> Expr:
        return Binary(ops[i], copy_expr(lhs), copy_expr(rhs))

    if kind is TemplateKind.OP_SWITCH_ARITH:
        out: Expr = Binary("*", pick(0), arm(0))
        for i in range(1, len(ops)):
            out = Binary("+", out, Binary("*", pick(i), arm(i)))
        return out
    out = Binary("&&", pick(0), arm(0))
    for i in range(1, len(ops)):
        out = Binary("||", out, Binary("&&", pick(i), arm(i)))
    return out


def build_replacement(ti: TemplateInstance, valuation: dict[str, int]) -> Stmt:
    """The realized concrete statement for `valuation` (in-domain)."""
    for h in ti.holes:
        if h not in valuation:
            raise SemanticError(f"no value for hole '{h}'")
        if valuation[h] not in ti.domains[h]:
            raise SemanticError(
                f"value {valuation[h]} for hole '{h}' is outside its domain"
            )

    if ti.kind is TemplateKind.CONST_SWAP:
        it = iter(ti.holes)
        out = copy_stmt(ti.original_stmt)

        def swap(e: Expr) -> Expr:
            if isinstance(e, IntLit):
                return IntLit(valuation[next(it)])
            if isinstance(e, Unary):
                return Unary(e.op, swap(e.operand))
            if isinstance(e, Binary):
                return Binary(e.op, swap(e.lhs), swap(e.rhs))
            if isinstance(e, Call):
                return Call(e.func, [swap(a) for a in e.args])
            return copy_expr(e)

        _apply_to_own_exprs(out, swap)
        return out

    if ti.kind is TemplateKind.LINEAR_COMBO:
        assert isinstance(ti.original_stmt, Assign)
        c0 = valuation[ti.holes[0]]
        terms: list[tuple[int, str]] = []
        for h, v in zip(ti.holes[1:], ti.scope):
            coeff = valuation[h]
            if coeff != 0:
                terms.append((coeff, v))
        rhs: Expr | None = IntLit(c0) if c0 != 0 or not terms else None
        for coeff, v in terms:
            term: Expr = Var(v)
            if rhs is None:
                rhs = term if coeff == 1 else Unary("-", term)
            else:
                rhs = Binary("+" if coeff == 1 else "-", rhs, term)
        if rhs is None:
            rhs = IntLit(0)
        return Assign(ti.original_stmt.target, rhs)

    # operator switch: re-decode indices onto the original statement
    ops = _OP_CLASS[ti.kind]
    it = iter(ti.holes)
    out = copy_stmt(ti.original_stmt)

    def decode(e: Expr) -> Expr:
        if isinstance(e, Binary):
            if e.op in ops:
                op = ops[valuation[next(it)]]
                return Binary(op, decode(e.lhs), decode(e.rhs))
            return Binary(e.op, decode(e.lhs), decode(e.rhs))
        if isinstance(e, Unary):
            return Unary(e.op, decode(e.operand))
        if isinstance(e, Call):
            return Call(e.func, [decode(a) for a in e.args])
        return copy_expr(e)

    _apply_to_own_exprs(out, decode)
    return out


def realize(ti: TemplateInstance, valuation: dict[str, int]) -> Program:
    """Hole-free program for `valuation`: operator indices decoded, linear
    terms simplified for display (zero coefficients dropped, coefficient 1
    left bare).  Behaviorally equal to substitute(ti.program, valuation)."""
    return replace_stmt_at(ti.program, ti.site, build_replacement(ti, valuation))


__all__ = [
    "TemplateKind",
    "CATALOG",
    "IntRange",
    "FiniteSet",
    "Domain",
    "HoleSession",
    "TemplateInstance",
    "applicable",
    "scope_at",
    "instantiate",
    "build_replacement",
    "realize",
    "COEFF_RANGE",
]
