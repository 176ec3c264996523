"""Big-step evaluator for hole-free MiniLang programs.

Runs are deterministic and bounded by a step budget (fuel), so a diverging
loop is a reportable outcome rather than a hang.  Every executed statement
is recorded in a coverage set keyed by statement id.  Execution halts the
moment the `reach` label runs: the reachability question is answered at
that point.

Semantics notes:
  - all values are 64-bit signed; overflow is a runtime error
  - division truncates toward zero; division by zero is a runtime error
  - `&&`/`||` short-circuit left-to-right and yield 0/1
  - comparisons yield 0/1; any nonzero value is true in conditions
  - globals are zero-initialized unless the harness sets them; reading a
    local before assignment is a runtime error
  - an uncaught raise surfaces as the RAISED_REACHED outcome, not a crash
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .minilang import (
    INT_MAX,
    INT_MIN,
    Assign,
    Binary,
    Call,
    ExprStmt,
    Hole,
    If,
    IntLit,
    Program,
    Raise,
    Reach,
    Return,
    Stmt,
    TryCatch,
    Unary,
    Var,
    While,
    holes,
    index_program,
)

DEFAULT_FUEL = 1_000_000


class OutcomeKind(enum.Enum):
    RETURNED = "returned"
    RAISED_REACHED = "raised_reached"
    REACHED_LABEL = "reached_label"
    RUNTIME_ERROR = "runtime_error"
    FUEL_EXHAUSTED = "fuel_exhausted"


@dataclass
class ExecOutcome:
    kind: OutcomeKind
    value: int | None = None
    reason: str | None = None
    coverage: set[int] = field(default_factory=set)
    steps: int = 0


@dataclass
class TestCase:
    inputs: tuple[int, ...]
    expected: int


@dataclass
class TestSuite:
    cases: list[TestCase]

    def __post_init__(self):
        arities = {len(c.inputs) for c in self.cases}
        if len(arities) > 1:
            raise ValueError(f"test cases have mixed arities: {sorted(arities)}")

    @property
    def arity(self) -> int:
        return len(self.cases[0].inputs) if self.cases else 0


@dataclass
class TestResult:
    passed: bool
    coverage: set[int]
    outcome: ExecOutcome

    @property
    def fuel_exhausted(self) -> bool:
        return self.outcome.kind is OutcomeKind.FUEL_EXHAUSTED


# internal control-flow signals
class _Signal(Exception):
    pass


class _ReachHit(_Signal):
    pass


class _Raised(_Signal):
    pass


class _Errored(_Signal):
    def __init__(self, reason: str):
        self.reason = reason


class _OutOfFuel(_Signal):
    pass


_NO_RETURN = object()


class _Run:
    def __init__(self, program: Program, fuel: int):
        self.idx = index_program(program)
        self.globals_declared = set(program.globals)
        self.globals: dict[str, int] = {g: 0 for g in program.globals}
        self.coverage: set[int] = set()
        self.steps = 0
        self.fuel = fuel

    def tick(self):
        self.steps += 1
        if self.steps > self.fuel:
            raise _OutOfFuel()

    def call(self, name: str, args: list[int]) -> int:
        f = self.idx.functions[name]
        frame = dict(zip(f.params, args))
        r = self.exec_body(f.body, frame)
        if r is _NO_RETURN:
            raise _Errored(f"function '{name}' returned no value")
        return r  # type: ignore[return-value]

    def exec_body(self, body: list[Stmt], frame: dict[str, int]):
        for s in body:
            self.tick()
            self.coverage.add(s.span.stmt_id)
            if isinstance(s, Assign):
                v = self.eval(s.rhs, frame)
                if s.target in self.globals_declared:
                    self.globals[s.target] = v
                else:
                    frame[s.target] = v
            elif isinstance(s, If):
                branch = s.then_body if self.eval(s.cond, frame) != 0 else s.else_body
                r = self.exec_body(branch, frame)
                if r is not _NO_RETURN:
                    return r
            elif isinstance(s, While):
                while self.eval(s.cond, frame) != 0:
                    self.tick()
                    r = self.exec_body(s.body, frame)
                    if r is not _NO_RETURN:
                        return r
            elif isinstance(s, Return):
                return self.eval(s.value, frame)
            elif isinstance(s, Reach):
                raise _ReachHit()
            elif isinstance(s, Raise):
                raise _Raised()
            elif isinstance(s, TryCatch):
                try:
                    r = self.exec_body(s.try_body, frame)
                except _Raised:
                    r = self.exec_body(s.catch_body, frame)
                if r is not _NO_RETURN:
                    return r
            elif isinstance(s, ExprStmt):
                self.eval(s.expr, frame)
            else:
                raise _Errored(f"cannot execute {type(s).__name__}")
        return _NO_RETURN

    def eval(self, e, frame: dict[str, int]) -> int:
        self.tick()
        if isinstance(e, IntLit):
            return e.value
        if isinstance(e, Var):
            if e.name in frame:
                return frame[e.name]
            if e.name in self.globals_declared:
                return self.globals[e.name]
            raise _Errored(f"read of unassigned variable '{e.name}'")
        if isinstance(e, Binary):
            op = e.op
            if op == "&&":
                if self.eval(e.lhs, frame) == 0:
                    return 0
                return 1 if self.eval(e.rhs, frame) != 0 else 0
            if op == "||":
                if self.eval(e.lhs, frame) != 0:
                    return 1
                return 1 if self.eval(e.rhs, frame) != 0 else 0
            a = self.eval(e.lhs, frame)
            b = self.eval(e.rhs, frame)
            if op == "+":
                v = a + b
            elif op == "-":
                v = a - b
            elif op == "*":
                v = a * b
            elif op == "/":
                if b == 0:
                    raise _Errored("division by zero")
                v = abs(a) // abs(b)
                if (a < 0) != (b < 0):
                    v = -v
            elif op == "<":
                return 1 if a < b else 0
            elif op == "<=":
                return 1 if a <= b else 0
            elif op == ">":
                return 1 if a > b else 0
            elif op == ">=":
                return 1 if a >= b else 0
            elif op == "==":
                return 1 if a == b else 0
            elif op == "!=":
                return 1 if a != b else 0
            else:
                raise _Errored(f"unknown operator '{op}'")
            if not INT_MIN <= v <= INT_MAX:
                raise _Errored("integer overflow")
            return v
        if isinstance(e, Unary):
            v = self.eval(e.operand, frame)
            if e.op == "!":
                return 1 if v == 0 else 0
            v = -v
            if not INT_MIN <= v <= INT_MAX:
                raise _Errored("integer overflow")
            return v
        if isinstance(e, Call):
            args = [self.eval(a, frame) for a in e.args]
            return self.call(e.func, args)
        if isinstance(e, Hole):
            raise _Errored(f"cannot evaluate template hole '??{e.name}'")
        raise _Errored(f"cannot evaluate {type(e).__name__}")


def run(
    p: Program,
    global_init: dict[str, int] | None = None,
    args: tuple[int, ...] = (),
    fuel: int = DEFAULT_FUEL,
) -> ExecOutcome:
    """Execute p's entry function on `args` with globals preset from
    `global_init` (unset globals start at 0)."""
    remaining = holes(p)
    if remaining:
        raise ValueError(f"cannot run a program with holes: {remaining}")
    idx = index_program(p)
    entry = idx.functions.get(p.entry)
    if entry is None:
        raise ValueError(f"entry function '{p.entry}' not defined")
    if len(args) != len(entry.params):
        raise ValueError(
            f"entry '{p.entry}' takes {len(entry.params)} args, got {len(args)}"
        )
    r = _Run(p, fuel)
    if global_init:
        unknown = set(global_init) - r.globals_declared
        if unknown:
            raise ValueError(f"unknown global(s): {sorted(unknown)}")
        r.globals.update(global_init)
    try:
        value = r.call(p.entry, list(args))
        out = ExecOutcome(OutcomeKind.RETURNED, value=value)
    except _ReachHit:
        out = ExecOutcome(OutcomeKind.REACHED_LABEL)
    except _Raised:
        out = ExecOutcome(OutcomeKind.RAISED_REACHED)
    except _Errored as ex:
        out = ExecOutcome(OutcomeKind.RUNTIME_ERROR, reason=ex.reason)
    except _OutOfFuel:
        out = ExecOutcome(OutcomeKind.FUEL_EXHAUSTED)
    out.coverage = r.coverage
    out.steps = r.steps
    return out


def run_test(p: Program, t: TestCase, fuel: int = DEFAULT_FUEL) -> TestResult:
    """A test passes iff the entry returns exactly the expected value.
    Raises, errors, reach hits, and fuel exhaustion all count as failures."""
    outcome = run(p, None, t.inputs, fuel)
    passed = outcome.kind is OutcomeKind.RETURNED and outcome.value == t.expected
    return TestResult(passed, outcome.coverage, outcome)


def run_suite(p: Program, suite: TestSuite, fuel: int = DEFAULT_FUEL) -> list[TestResult]:
    return [run_test(p, t, fuel) for t in suite.cases]


# ---------------------------------------------------------------------------
# Test-suite file format: one case per line, `i1,i2,...,ik -> o`,
# with `#` comments.  A 0-ary case is written `-> o`.


def parse_suite(text: str) -> TestSuite:
    cases: list[TestCase] = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise ValueError(f"suite line {ln}: expected 'inputs -> output'")
        left, _, right = line.partition("->")
        try:
            inputs = tuple(int(x) for x in left.split(",") if x.strip())
            expected = int(right)
        except ValueError:
            raise ValueError(f"suite line {ln}: bad integer literal") from None
        cases.append(TestCase(inputs, expected))
    return TestSuite(cases)


def format_suite(suite: TestSuite) -> str:
    return "".join(
        f"{','.join(str(i) for i in c.inputs)} -> {c.expected}\n" for c in suite.cases
    )
