"""The two constructive reductions between template synthesis and
reachability, as pure AST-to-AST transformations.

Forward (synthesis -> reachability): each hole becomes a fresh global
input variable, every function is cloned with hole reads replaced by
reads of that variable, and a new entry guards a single `reach` with the
conjunction of one equality per test:

    if (main__P(i1) == o1 && main__P(i2) == o2 && ...) { reach; }

Reverse (reachability -> synthesis): each input variable becomes a fresh
hole, functions are cloned with variable reads replaced by hole reads,
the `reach` label becomes `raise`, and a new entry wraps the old one in
try/catch returning 1 exactly when the raise fires; the suite is the
single case `() -> 1`.

Both transformations return the renaming maps (hole <-> variable and old
function -> clone) so witnesses can be translated mechanically in either
direction.  Output size is linear in input size plus suite size.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .interpreter import (
    DEFAULT_FUEL,
    OutcomeKind,
    TestCase,
    TestSuite,
    run,
    run_suite,
)
from .minilang import (
    Assign,
    Binary,
    Call,
    Expr,
    ExprStmt,
    Function,
    Hole,
    If,
    IntLit,
    Program,
    Raise,
    Reach,
    Return,
    SemanticError,
    Stmt,
    TryCatch,
    Unary,
    Var,
    While,
    all_identifiers,
    copy_stmt,
    holes,
    index_program,
    iter_body_stmts,
    iter_exprs,
    own_exprs,
    substitute,
    validate_program,
)
from .templates import Domain


@dataclass
class SynthesisInstance:
    """A template program, the suite it must pass, and per-hole domains."""

    program: Program
    suite: TestSuite
    domains: dict[str, Domain]

    def __post_init__(self):
        hs = holes(self.program)
        if not hs:
            raise SemanticError("synthesis instance has no holes")
        if not self.suite.cases:
            raise SemanticError("synthesis instance has an empty test suite")
        missing = [h for h in hs if h not in self.domains]
        if missing:
            raise SemanticError(f"holes without domains: {missing}")
        entry = index_program(self.program).functions[self.program.entry]
        if self.suite.arity != len(entry.params):
            raise SemanticError(
                f"suite arity {self.suite.arity} != entry arity {len(entry.params)}"
            )


def _assigned_names(p: Program) -> set[str]:
    out: set[str] = set()
    for f in p.functions:
        for s in iter_body_stmts(f.body):
            if isinstance(s, Assign):
                out.add(s.target)
    return out


@dataclass
class ReachInstance:
    """A hole-free program with exactly one `reach`, plus the ordered free
    input variables (declared globals never assigned anywhere) and their
    domains."""

    program: Program
    input_vars: list[str]
    domains: dict[str, Domain]

    def __post_init__(self):
        if holes(self.program):
            raise SemanticError("reachability instance must be hole-free")
        idx = index_program(self.program)
        if len(idx.reach_sites) != 1:
            raise SemanticError(
                f"reachability instance needs exactly one reach, found {len(idx.reach_sites)}"
            )
        declared = set(self.program.globals)
        assigned = _assigned_names(self.program)
        for v in self.input_vars:
            if v not in declared:
                raise SemanticError(f"input variable '{v}' is not a declared global")
            if v in assigned:
                raise SemanticError(f"input variable '{v}' is assigned in the program")
            if v not in self.domains:
                raise SemanticError(f"input variable '{v}' has no domain")
        entry = idx.functions[self.program.entry]
        if entry.params:
            raise SemanticError("reachability entry function must take no arguments")


@dataclass
class S2RResult:
    instance: ReachInstance
    hole_to_var: dict[str, str]
    func_map: dict[str, str]


@dataclass
class R2SResult:
    instance: SynthesisInstance
    var_to_hole: dict[str, str]
    func_map: dict[str, str]


def _fresh(base: str, taken: set[str]) -> str:
    if base not in taken:
        taken.add(base)
        return base
    i = 2
    while f"{base}_{i}" in taken:
        i += 1
    taken.add(f"{base}_{i}")
    return f"{base}_{i}"


def _clone_body(body: list[Stmt], expr_fn, stmt_fn) -> list[Stmt]:
    out: list[Stmt] = []
    for s in body:
        replaced = stmt_fn(s)
        if replaced is not None:
            out.append(replaced)
            continue
        if isinstance(s, Assign):
            out.append(Assign(s.target, expr_fn(s.rhs)))
        elif isinstance(s, If):
            out.append(
                If(
                    expr_fn(s.cond),
                    _clone_body(s.then_body, expr_fn, stmt_fn),
                    _clone_body(s.else_body, expr_fn, stmt_fn),
                )
            )
        elif isinstance(s, While):
            out.append(While(expr_fn(s.cond), _clone_body(s.body, expr_fn, stmt_fn)))
        elif isinstance(s, Return):
            out.append(Return(expr_fn(s.value)))
        elif isinstance(s, Reach):
            out.append(Reach())
        elif isinstance(s, Raise):
            out.append(Raise())
        elif isinstance(s, TryCatch):
            out.append(
                TryCatch(
                    _clone_body(s.try_body, expr_fn, stmt_fn),
                    _clone_body(s.catch_body, expr_fn, stmt_fn),
                )
            )
        elif isinstance(s, ExprStmt):
            out.append(ExprStmt(expr_fn(s.expr)))
        else:
            raise SemanticError(f"cannot clone {type(s).__name__}")
    return out


def _rename_calls(e: Expr, func_map: dict[str, str], leaf_fn) -> Expr:
    if isinstance(e, Call):
        return Call(
            func_map[e.func], [_rename_calls(a, func_map, leaf_fn) for a in e.args]
        )
    if isinstance(e, Unary):
        return Unary(e.op, _rename_calls(e.operand, func_map, leaf_fn))
    if isinstance(e, Binary):
        return Binary(
            e.op,
            _rename_calls(e.lhs, func_map, leaf_fn),
            _rename_calls(e.rhs, func_map, leaf_fn),
        )
    return leaf_fn(e)


def gadget_s2r(si: SynthesisInstance) -> S2RResult:
    """Build the reachability instance that is satisfiable exactly when the
    synthesis instance is solvable.

    The input program must be reach-free (the output owns the single label).
    """
    if index_program(si.program).reach_sites:
        raise SemanticError("synthesis program already contains a reach label")
    hole_order = holes(si.program)
    # hole names vanish in the output, so they are free to reuse as the
    # fresh globals unless something else also bears the name
    taken = (all_identifiers(si.program) - set(hole_order)) | {"main"}
    hole_to_var = {h: _fresh(h, taken) for h in hole_order}
    func_map = {f.name: _fresh(f.name + "__P", taken) for f in si.program.functions}

    def leaf(e: Expr) -> Expr:
        if isinstance(e, Hole):
            return Var(hole_to_var[e.name])
        if isinstance(e, IntLit):
            return IntLit(e.value)
        if isinstance(e, Var):
            return Var(e.name)
        raise SemanticError(f"cannot clone {type(e).__name__}")

    def expr_fn(e: Expr) -> Expr:
        return _rename_calls(e, func_map, leaf)

    cloned = [
        Function(func_map[f.name], list(f.params), _clone_body(f.body, expr_fn, lambda s: None))
        for f in si.program.functions
    ]

    entry_clone = func_map[si.program.entry]
    guard: Expr | None = None
    for case in si.suite.cases:
        call = Call(entry_clone, [IntLit(v) for v in case.inputs])
        conjunct: Expr = Binary("==", call, IntLit(case.expected))
        guard = conjunct if guard is None else Binary("&&", guard, conjunct)
    assert guard is not None
    main = Function("main", [], [If(guard, [Reach()], []), Return(IntLit(0))])

    new_globals = list(si.program.globals) + [hole_to_var[h] for h in hole_order]
    program = Program(new_globals, cloned + [main], "main")
    validate_program(program)
    index_program(program)
    instance = ReachInstance(
        program=program,
        input_vars=[hole_to_var[h] for h in hole_order],
        domains={hole_to_var[h]: si.domains[h] for h in hole_order},
    )
    return S2RResult(instance, hole_to_var, func_map)


def gadget_r2s(ri: ReachInstance) -> R2SResult:
    """Build the synthesis instance that is solvable exactly when the
    reachability instance's label can be reached.

    The input program must not use `raise`/`try` itself: the reverse gadget
    owns the one exception kind, and a user-level raise or catch would
    intercept the signal that stands in for the label.
    """
    for f in ri.program.functions:
        for s in iter_body_stmts(f.body):
            if isinstance(s, (Raise, TryCatch)):
                raise SemanticError(
                    "reverse reduction requires a raise-free, try-free program"
                )
    taken = all_identifiers(ri.program) | {"main"}
    var_to_hole = {v: _fresh(f"c_{v}", taken) for v in ri.input_vars}
    func_map = {f.name: _fresh(f.name + "__Q", taken) for f in ri.program.functions}
    input_set = set(ri.input_vars)

    def leaf(e: Expr) -> Expr:
        if isinstance(e, Var) and e.name in input_set:
            return Hole(var_to_hole[e.name])
        if isinstance(e, IntLit):
            return IntLit(e.value)
        if isinstance(e, Var):
            return Var(e.name)
        if isinstance(e, Hole):
            return Hole(e.name)
        raise SemanticError(f"cannot clone {type(e).__name__}")

    def expr_fn(e: Expr) -> Expr:
        return _rename_calls(e, func_map, leaf)

    def stmt_fn(s: Stmt) -> Stmt | None:
        if isinstance(s, Reach):
            return Raise()
        return None

    cloned = [
        Function(func_map[f.name], list(f.params), _clone_body(f.body, expr_fn, stmt_fn))
        for f in ri.program.functions
    ]

    entry_clone = func_map[ri.program.entry]
    main = Function(
        "main",
        [],
        [
            TryCatch(
                [ExprStmt(Call(entry_clone, []))],
                [Return(IntLit(1))],
            ),
            Return(IntLit(0)),
        ],
    )
    remaining_globals = [g for g in ri.program.globals if g not in input_set]
    program = Program(remaining_globals, cloned + [main], "main")
    validate_program(program)
    index_program(program)
    instance = SynthesisInstance(
        program=program,
        suite=TestSuite([TestCase((), 1)]),
        domains={var_to_hole[v]: ri.domains[v] for v in ri.input_vars},
    )
    return R2SResult(instance, var_to_hole, func_map)


def check_synthesis_witness(
    si: SynthesisInstance, valuation: dict[str, int], fuel: int = DEFAULT_FUEL
) -> bool | None:
    """True iff instantiating with `valuation` passes every test.  None
    means indeterminate: some run exhausted its fuel."""
    candidate = substitute(si.program, valuation)
    results = run_suite(candidate, si.suite, fuel)
    if any(r.fuel_exhausted for r in results):
        return None
    return all(r.passed for r in results)


def check_reach_witness(
    ri: ReachInstance, valuation: dict[str, int], fuel: int = DEFAULT_FUEL
) -> bool | None:
    """True iff running with input variables set from `valuation` reaches
    the label.  None means indeterminate (fuel ran out)."""
    missing = [v for v in ri.input_vars if v not in valuation]
    if missing:
        raise SemanticError(f"witness lacks values for {missing}")
    outcome = run(ri.program, {v: valuation[v] for v in ri.input_vars}, (), fuel)
    if outcome.kind is OutcomeKind.FUEL_EXHAUSTED:
        return None
    return outcome.kind is OutcomeKind.REACHED_LABEL


def rename_valuation(valuation: dict[str, int], mapping: dict[str, str]) -> dict[str, int]:
    """Translate a witness across a reduction via its renaming map."""
    return {mapping[k]: v for k, v in valuation.items()}
