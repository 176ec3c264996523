"""Bounded test-input generation for reachability instances.

Explores execution paths of a program whose input variables are symbolic,
accumulating a path constraint (a conjunction of linear integer atoms)
per path.  When a path's frontier is the `reach` label, the constraint is
solved over the declared variable domains by branch-and-bound with
interval narrowing.  Every witness is re-executed concretely before being
returned; a symbolic path is never trusted on its own.

Scope and policies:
  - symbolic values are linear forms (constant + sum of coeff*var); a
    product of two non-constant forms falls back to enumerating the
    smaller-domain variable, up to a combined candidate limit, beyond
    which the solve reports SOLVER_LIMIT
  - division by a concrete constant stays linear when the divisor divides
    every coefficient (the path then splits on the dividend's sign to
    resolve truncation); otherwise enumeration kicks in
  - loops unroll up to loop_bound iterations and calls nest up to
    max_call_depth; exceeding either abandons the path and flags the
    result, so NONE_WITHIN_BOUNDS with budget_hit=False is a genuine
    exhaustiveness claim
  - witnesses are reported lexicographically smallest in input-variable
    order, so outputs are deterministic
  - 64-bit overflow is not modeled symbolically; the concrete re-execution
    of each witness is the soundness gate
"""

from __future__ import annotations

import enum
import logging
import time
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field

from .interpreter import OutcomeKind, run
from .minilang import (
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
    index_program,
)
from .templates import Domain, FiniteSet, IntRange

logger = logging.getLogger(__name__)


class SolverLimitError(Exception):
    pass


# ---------------------------------------------------------------------------
# Linear forms and atoms


@dataclass(frozen=True)
class LinForm:
    const: int
    coeffs: tuple[tuple[str, int], ...]  # sorted by variable, all nonzero

    @staticmethod
    def of_const(v: int) -> "LinForm":
        return LinForm(v, ())

    @staticmethod
    def of_var(name: str) -> "LinForm":
        return LinForm(0, ((name, 1),))

    @property
    def is_const(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "LinForm") -> "LinForm":
        d = dict(self.coeffs)
        for v, c in other.coeffs:
            d[v] = d.get(v, 0) + c
        return LinForm(
            self.const + other.const,
            tuple(sorted((v, c) for v, c in d.items() if c)),
        )

    def __sub__(self, other: "LinForm") -> "LinForm":
        return self + other.scale(-1)

    def scale(self, k: int) -> "LinForm":
        if k == 0:
            return LinForm(0, ())
        return LinForm(self.const * k, tuple((v, c * k) for v, c in self.coeffs))

    def subst(self, name: str, value: int) -> "LinForm":
        if all(v != name for v, _ in self.coeffs):
            return self
        c = dict(self.coeffs)
        k = c.pop(name)
        return LinForm(self.const + k * value, tuple(sorted(c.items())))

    def vars(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.coeffs)

    def eval(self, point: dict[str, int]) -> int:
        return self.const + sum(c * point[v] for v, c in self.coeffs)


class Rel(enum.Enum):
    LE = "<="  # form <= 0
    EQ = "=="  # form == 0
    NE = "!="  # form != 0


@dataclass(frozen=True)
class Atom:
    form: LinForm
    rel: Rel

    def holds(self, point: dict[str, int]) -> bool:
        v = self.form.eval(point)
        if self.rel is Rel.LE:
            return v <= 0
        if self.rel is Rel.EQ:
            return v == 0
        return v != 0


def atom_from_compare(op: str, a: LinForm, b: LinForm) -> Atom:
    """Integer-tightened atom for `a op b`."""
    if op == "<":
        return Atom(a - b + LinForm.of_const(1), Rel.LE)
    if op == "<=":
        return Atom(a - b, Rel.LE)
    if op == ">":
        return Atom(b - a + LinForm.of_const(1), Rel.LE)
    if op == ">=":
        return Atom(b - a, Rel.LE)
    if op == "==":
        return Atom(a - b, Rel.EQ)
    if op == "!=":
        return Atom(a - b, Rel.NE)
    raise ValueError(f"not a comparison: {op}")


def negate_atom(at: Atom) -> Atom:
    if at.rel is Rel.LE:  # not(f <= 0)  <=>  1 - f <= 0
        return Atom(LinForm.of_const(1) - at.form, Rel.LE)
    if at.rel is Rel.EQ:
        return Atom(at.form, Rel.NE)
    return Atom(at.form, Rel.EQ)


# ---------------------------------------------------------------------------
# Boxes and interval narrowing

# box: (lo, hi, allowed) where allowed is a sorted tuple or None


def _box_of_domain(d: Domain) -> tuple[int, int, tuple[int, ...] | None]:
    if isinstance(d, IntRange):
        return (d.lo, d.hi, None)
    vals = tuple(sorted(set(d.values_set)))
    return (vals[0], vals[-1], vals)


def _floordiv(a: int, b: int) -> int:
    return a // b


def _ceildiv(a: int, b: int) -> int:
    return -((-a) // b)


def _snap(lo: int, hi: int, allowed: tuple[int, ...] | None):
    """Tighten (lo, hi) to the allowed set, or detect emptiness."""
    if allowed is None:
        return lo, hi
    i = bisect_left(allowed, lo)
    j = bisect_right(allowed, hi) - 1
    if i > j:
        return 1, 0  # empty
    return allowed[i], allowed[j]


class _EmptyBox(Exception):
    pass


def _tighten_le(form: LinForm, boxes: dict) -> list[str]:
    """Apply sum(ci*xi) + k <= 0 once.  Returns vars whose box changed;
    raises _EmptyBox on proven infeasibility."""
    changed: list[str] = []
    total_min = form.const
    for v, c in form.coeffs:
        lo, hi, _ = boxes[v]
        total_min += c * lo if c > 0 else c * hi
    if total_min > 0:
        raise _EmptyBox()
    for v, c in form.coeffs:
        lo, hi, allowed = boxes[v]
        self_min = c * lo if c > 0 else c * hi
        rest_min = total_min - self_min
        # c * xv <= -rest_min
        if c > 0:
            bound = _floordiv(-rest_min, c)
            if bound >= hi:
                continue
            nlo, nhi = _snap(lo, bound, allowed)
        else:
            bound = _ceildiv(-rest_min, c)
            if bound <= lo:
                continue
            nlo, nhi = _snap(bound, hi, allowed)
        if nlo > nhi:
            raise _EmptyBox()
        boxes[v] = (nlo, nhi, allowed)
        changed.append(v)
        new_min = c * nlo if c > 0 else c * nhi
        total_min += new_min - self_min
        if total_min > 0:
            raise _EmptyBox()
    return changed


def _tighten_eq(form: LinForm, boxes: dict) -> list[str]:
    """Apply sum(ci*xi) + k == 0 once (both inequality directions)."""
    changed: list[str] = []
    total_min = form.const
    total_max = form.const
    for v, c in form.coeffs:
        lo, hi, _ = boxes[v]
        if c > 0:
            total_min += c * lo
            total_max += c * hi
        else:
            total_min += c * hi
            total_max += c * lo
    if total_min > 0 or total_max < 0:
        raise _EmptyBox()
    for v, c in form.coeffs:
        lo, hi, allowed = boxes[v]
        if c > 0:
            self_min, self_max = c * lo, c * hi
        else:
            self_min, self_max = c * hi, c * lo
        rest_min = total_min - self_min
        rest_max = total_max - self_max
        # c*xv <= -rest_min  and  c*xv >= -rest_max
        if c > 0:
            nhi = min(hi, _floordiv(-rest_min, c))
            nlo = max(lo, _ceildiv(-rest_max, c))
        else:
            nlo = max(lo, _ceildiv(-rest_min, c))
            nhi = min(hi, _floordiv(-rest_max, c))
        if nlo == lo and nhi == hi:
            continue
        nlo, nhi = _snap(nlo, nhi, allowed)
        if nlo > nhi:
            raise _EmptyBox()
        boxes[v] = (nlo, nhi, allowed)
        changed.append(v)
        if c > 0:
            new_min, new_max = c * nlo, c * nhi
        else:
            new_min, new_max = c * nhi, c * nlo
        total_min += new_min - self_min
        total_max += new_max - self_max
        if total_min > 0 or total_max < 0:
            raise _EmptyBox()
    return changed


def _tighten_ne(form: LinForm, boxes: dict) -> list[str]:
    unfixed = [(v, c) for v, c in form.coeffs if boxes[v][0] != boxes[v][1]]
    fixed_sum = form.const + sum(
        c * boxes[v][0] for v, c in form.coeffs if boxes[v][0] == boxes[v][1]
    )
    if not unfixed:
        if fixed_sum == 0:
            raise _EmptyBox()
        return []
    if len(unfixed) == 1:
        v, c = unfixed[0]
        if fixed_sum % c == 0:
            forbidden = -fixed_sum // c
            lo, hi, allowed = boxes[v]
            changed = False
            if lo == forbidden:
                lo += 1
                changed = True
            if hi == forbidden:
                hi -= 1
                changed = True
            if changed:
                lo, hi = _snap(lo, hi, allowed)
                if lo > hi:
                    raise _EmptyBox()
                boxes[v] = (lo, hi, allowed)
                return [v]
    return []


def _tighten(at: Atom, boxes: dict) -> list[str]:
    if at.rel is Rel.LE:
        return _tighten_le(at.form, boxes)
    if at.rel is Rel.EQ:
        return _tighten_eq(at.form, boxes)
    return _tighten_ne(at.form, boxes)


def narrow(
    atoms: list[Atom],
    boxes: dict[str, tuple[int, int, tuple[int, ...] | None]],
    seed: list[Atom] | None = None,
) -> dict[str, tuple[int, int, tuple[int, ...] | None]] | None:
    """Worklist interval narrowing to a fixpoint.  Returns tightened boxes,
    or None when a box empties (a proof of infeasibility); never discards
    a feasible point.  With `seed`, propagation starts from those atoms
    only (incremental use: `boxes` already narrowed w.r.t. `atoms`)."""
    boxes = dict(boxes)
    by_var: dict[str, list[Atom]] = {}
    for at in atoms:
        for v, _ in at.form.coeffs:
            by_var.setdefault(v, []).append(at)
    if seed is None:
        queue = list(atoms)
    else:
        queue = list(seed)
        for at in seed:
            for v, _ in at.form.coeffs:
                by_var.setdefault(v, []).append(at)
    queued = set(id(a) for a in queue)
    spent = 0
    try:
        while queue:
            spent += 1
            if spent > 200_000:  # safety valve; partial narrowing is sound
                break
            at = queue.pop()
            queued.discard(id(at))
            for v in _tighten(at, boxes):
                for other in by_var.get(v, ()):
                    if id(other) not in queued:
                        queue.append(other)
                        queued.add(id(other))
        return boxes
    except _EmptyBox:
        return None


# ---------------------------------------------------------------------------
# Complete search: branch-and-bound over narrowed boxes


def _find_point(atoms, boxes, order, charge) -> dict[str, int] | None:
    """Any satisfying point, or None.  Branches on the narrowest box first,
    which keeps infeasibility proofs cheap when small finite domains pin
    down a wide range."""

    def dfs(boxes) -> dict[str, int] | None:
        while True:
            charge()
            boxes = narrow(atoms, boxes)
            if boxes is None:
                return None
            branch_var = None
            best_width = None
            for v in order:
                lo, hi, _ = boxes[v]
                if lo != hi and (best_width is None or hi - lo < best_width):
                    branch_var = v
                    best_width = hi - lo
            if branch_var is None:
                point = {v: boxes[v][0] for v in order}
                if all(at.holds(point) for at in atoms):
                    return point
                return None
            lo, hi, allowed = boxes[branch_var]
            if allowed is not None or hi - lo <= 8:
                fixed = dict(boxes)
                fixed[branch_var] = (lo, lo, allowed)
                result = dfs(fixed)
                if result is not None:
                    return result
                nlo, nhi = _snap(lo + 1, hi, allowed)
                if nlo > nhi:
                    return None
                boxes = dict(boxes)
                boxes[branch_var] = (nlo, nhi, allowed)
            else:
                mid = (lo + hi) // 2
                lower = dict(boxes)
                lower[branch_var] = (lo, mid, allowed)
                result = dfs(lower)
                if result is not None:
                    return result
                boxes = dict(boxes)
                boxes[branch_var] = (mid + 1, hi, allowed)

    return dfs(boxes)


def solve_atoms(
    atoms: list[Atom],
    domains: dict[str, Domain],
    order: list[str],
    budget: int = 2_000_000,
) -> dict[str, int] | None:
    """Lexicographically smallest (in `order`) integer point satisfying all
    atoms within the domain boxes, or None when infeasible.  Complete over
    the boxed domains; raises SolverLimitError past the search budget.

    A feasibility search runs first; each variable is then minimized in
    turn by binary search over the feasibility oracle, so the result is
    the lexicographic minimum.
    """
    boxes = {v: _box_of_domain(domains[v]) for v in order}
    extra = [v for at in atoms for v in at.form.vars() if v not in boxes]
    if extra:
        raise ValueError(f"atoms reference undeclared variables: {sorted(set(extra))}")
    spent = [0]

    def charge():
        spent[0] += 1
        if spent[0] > budget:
            raise SolverLimitError("constraint search budget exceeded")

    point = _find_point(atoms, boxes, order, charge)
    if point is None:
        return None
    for v in order:
        lo, _, allowed = boxes[v]
        best = point[v]
        while lo < best:
            mid = (lo + best) // 2
            nlo, nhi = _snap(lo, mid, allowed)
            if nlo > nhi:
                lo = mid + 1
                continue
            trial = dict(boxes)
            trial[v] = (nlo, nhi, allowed)
            found = _find_point(atoms, trial, order, charge)
            if found is None:
                lo = mid + 1
            else:
                point = found
                best = point[v]
        boxes[v] = (best, best, allowed)
    return point


# ---------------------------------------------------------------------------
# Path exploration


class Frontier(enum.Enum):
    REACH = "reach"
    RETURN = "return"
    RAISED = "raised"
    ERROR = "error"
    BUDGET = "budget"


@dataclass
class SolverConfig:
    loop_bound: int = 64
    max_paths: int = 100_000
    max_steps: int = 200_000
    max_call_depth: int = 64
    enum_limit: int = 100_000
    time_cap_s: float = 10.0
    solve_budget: int = 2_000_000


@dataclass
class PathEnd:
    atoms: list[Atom]
    frontier: Frontier
    note: str | None = None


@dataclass
class ExploreStats:
    paths: int = 0
    reach_paths: int = 0
    budget_hit: bool = False


@dataclass
class _Decision:
    chosen: int
    feasible_rest: list[int]
    choices_prefix: list[int]


class _EndPath(Exception):
    def __init__(self, frontier: Frontier, note: str | None = None):
        self.frontier = frontier
        self.note = note


class _Infeasible(Exception):
    pass


class _ReachSig(Exception):
    pass


class _RaiseSig(Exception):
    pass


_NO_RET = object()


class _PathRun:
    """One symbolic execution following a forced decision prefix, greedily
    taking the first feasible option at each fresh decision point."""

    def __init__(self, program: Program, input_vars, boxes0, cfg: SolverConfig, forced):
        self.idx = index_program(program)
        self.program = program
        self.cfg = cfg
        self.forced = forced
        self.choices: list[int] = []
        self.trail: list[_Decision] = []
        self.atoms: list[Atom] = []
        self._atom_set: set[Atom] = set()
        self.boxes = dict(boxes0)
        self.globals_sym: dict[str, LinForm] = {
            g: LinForm.of_const(0) for g in program.globals
        }
        for v in input_vars:
            self.globals_sym[v] = LinForm.of_var(v)
        self.globals_declared = set(program.globals)
        self.steps = 0
        self.enum_combo = 1

    # -- decisions

    def decide(self, options: list[list[Atom]]) -> int:
        """Pick an option index; each option is the atom list it commits to.

        Feasibility of each option is checked by narrowing the current
        boxes against its (not yet recorded) atoms; an infeasible option is
        never taken and never scheduled.
        """
        pos = len(self.choices)
        fresh = [[a for a in ats if a not in self._atom_set] for ats in options]
        narrowed = []
        feasible = []
        for i, ats in enumerate(fresh):
            nb = narrow(self.atoms, self.boxes, seed=ats) if ats else dict(self.boxes)
            narrowed.append(nb)
            if nb is not None:
                feasible.append(i)
        if pos < len(self.forced):
            choice = self.forced[pos]
            if narrowed[choice] is None:
                raise _Infeasible()
        else:
            if not feasible:
                raise _Infeasible()
            choice = feasible[0]
        self.choices.append(choice)
        self.trail.append(
            _Decision(
                chosen=choice,
                feasible_rest=[i for i in feasible if i > choice],
                choices_prefix=list(self.choices[:-1]),
            )
        )
        self.atoms.extend(fresh[choice])
        self._atom_set.update(fresh[choice])
        self.boxes = narrowed[choice]
        return choice

    def _truth(self, form: LinForm) -> int:
        if form.is_const:
            return 1 if form.const != 0 else 0
        c = self.decide([[Atom(form, Rel.NE)], [Atom(form, Rel.EQ)]])
        return 1 if c == 0 else 0

    def _compare(self, op: str, a: LinForm, b: LinForm) -> LinForm:
        if a.is_const and b.is_const:
            x, y = a.const, b.const
            v = {
                "<": x < y,
                "<=": x <= y,
                ">": x > y,
                ">=": x >= y,
                "==": x == y,
                "!=": x != y,
            }[op]
            return LinForm.of_const(1 if v else 0)
        at = atom_from_compare(op, a, b)
        c = self.decide([[at], [negate_atom(at)]])
        return LinForm.of_const(1 if c == 0 else 0)

    def _enumerate_var(self, form: LinForm) -> LinForm:
        """Fix the smallest-domain variable of `form` by enumeration."""
        candidates = []
        for v, _ in form.coeffs:
            lo, hi, allowed = self.boxes[v]
            size = len([x for x in allowed if lo <= x <= hi]) if allowed else hi - lo + 1
            candidates.append((size, v))
        size, v = min(candidates)
        self.enum_combo *= max(size, 1)
        if self.enum_combo > self.cfg.enum_limit:
            raise SolverLimitError(
                f"nonlinear fallback needs more than {self.cfg.enum_limit} candidates"
            )
        lo, hi, allowed = self.boxes[v]
        values = [x for x in allowed if lo <= x <= hi] if allowed else list(range(lo, hi + 1))
        var_form = LinForm.of_var(v)
        choice = self.decide(
            [[Atom(var_form - LinForm.of_const(x), Rel.EQ)] for x in values]
        )
        return form.subst(v, values[choice])

    def _mul(self, a: LinForm, b: LinForm) -> LinForm:
        while not a.is_const and not b.is_const:
            if len(a.coeffs) <= len(b.coeffs):
                a = self._enumerate_var(a)
            else:
                b = self._enumerate_var(b)
        if a.is_const:
            return b.scale(a.const)
        return a.scale(b.const)

    def _div(self, a: LinForm, b: LinForm) -> LinForm:
        while not b.is_const:
            b = self._enumerate_var(b)
        d = b.const
        if d == 0:
            raise _EndPath(Frontier.ERROR, "division by zero")
        if a.is_const:
            q = abs(a.const) // abs(d)
            if (a.const < 0) != (d < 0):
                q = -q
            return LinForm.of_const(q)
        while any(c % d for _, c in a.coeffs):
            a = self._enumerate_var(a)
            if a.is_const:
                return self._div(a, b)
        g = LinForm(0, tuple((v, c // d) for v, c in a.coeffs))
        k = a.const
        if k % d == 0:
            return g + LinForm.of_const(k // d)
        # truncation toward zero depends on the dividend's sign
        nonneg = Atom(a.scale(-1), Rel.LE)  # a >= 0
        negative = Atom(a + LinForm.of_const(1), Rel.LE)  # a <= -1
        c = self.decide([[nonneg], [negative]])
        if (c == 0) == (d > 0):
            return g + LinForm.of_const(_floordiv(k, d))
        return g + LinForm.of_const(_ceildiv(k, d))

    # -- evaluation

    def tick(self):
        self.steps += 1
        if self.steps > self.cfg.max_steps:
            raise _EndPath(Frontier.BUDGET, "step budget exceeded")

    def eval(self, e, frame: dict[str, LinForm], depth: int) -> LinForm:
        self.tick()
        if isinstance(e, IntLit):
            return LinForm.of_const(e.value)
        if isinstance(e, Var):
            if e.name in frame:
                return frame[e.name]
            if e.name in self.globals_declared:
                return self.globals_sym[e.name]
            raise _EndPath(Frontier.ERROR, f"read of unassigned variable '{e.name}'")
        if isinstance(e, Binary):
            op = e.op
            if op == "&&":
                if self._truth(self.eval(e.lhs, frame, depth)) == 0:
                    return LinForm.of_const(0)
                return LinForm.of_const(self._truth(self.eval(e.rhs, frame, depth)))
            if op == "||":
                if self._truth(self.eval(e.lhs, frame, depth)) == 1:
                    return LinForm.of_const(1)
                return LinForm.of_const(self._truth(self.eval(e.rhs, frame, depth)))
            a = self.eval(e.lhs, frame, depth)
            b = self.eval(e.rhs, frame, depth)
            if op == "+":
                return a + b
            if op == "-":
                return a - b
            if op == "*":
                return self._mul(a, b)
            if op == "/":
                return self._div(a, b)
            return self._compare(op, a, b)
        if isinstance(e, Unary):
            v = self.eval(e.operand, frame, depth)
            if e.op == "!":
                return LinForm.of_const(1 - self._truth(v))
            return v.scale(-1)
        if isinstance(e, Call):
            args = [self.eval(a, frame, depth) for a in e.args]
            return self.call(e.func, args, depth)
        if isinstance(e, Hole):
            raise _EndPath(Frontier.ERROR, f"template hole '??{e.name}' in program")
        raise _EndPath(Frontier.ERROR, f"cannot evaluate {type(e).__name__}")

    def call(self, name: str, args: list[LinForm], depth: int) -> LinForm:
        if depth >= self.cfg.max_call_depth:
            raise _EndPath(Frontier.BUDGET, "call depth budget exceeded")
        f = self.idx.functions[name]
        frame = dict(zip(f.params, args))
        r = self.exec_body(f.body, frame, depth + 1)
        if r is _NO_RET:
            raise _EndPath(Frontier.ERROR, f"function '{name}' returned no value")
        return r  # type: ignore[return-value]

    def exec_body(self, body: list[Stmt], frame: dict[str, LinForm], depth: int):
        for s in body:
            self.tick()
            if isinstance(s, Assign):
                v = self.eval(s.rhs, frame, depth)
                if s.target in self.globals_declared:
                    self.globals_sym[s.target] = v
                else:
                    frame[s.target] = v
            elif isinstance(s, If):
                taken = self._truth(self.eval(s.cond, frame, depth))
                r = self.exec_body(s.then_body if taken else s.else_body, frame, depth)
                if r is not _NO_RET:
                    return r
            elif isinstance(s, While):
                iterations = 0
                while self._truth(self.eval(s.cond, frame, depth)):
                    iterations += 1
                    if iterations > self.cfg.loop_bound:
                        raise _EndPath(Frontier.BUDGET, "loop bound exceeded")
                    r = self.exec_body(s.body, frame, depth)
                    if r is not _NO_RET:
                        return r
            elif isinstance(s, Return):
                return self.eval(s.value, frame, depth)
            elif isinstance(s, Reach):
                raise _ReachSig()
            elif isinstance(s, Raise):
                raise _RaiseSig()
            elif isinstance(s, TryCatch):
                try:
                    r = self.exec_body(s.try_body, frame, depth)
                except _RaiseSig:
                    r = self.exec_body(s.catch_body, frame, depth)
                if r is not _NO_RET:
                    return r
            elif isinstance(s, ExprStmt):
                self.eval(s.expr, frame, depth)
            else:
                raise _EndPath(Frontier.ERROR, f"cannot execute {type(s).__name__}")
        return _NO_RET

    def execute(self) -> PathEnd | None:
        try:
            self.call(self.program.entry, [], 0)
            return PathEnd(self.atoms, Frontier.RETURN)
        except _ReachSig:
            return PathEnd(self.atoms, Frontier.REACH)
        except _RaiseSig:
            return PathEnd(self.atoms, Frontier.RAISED)
        except _EndPath as end:
            return PathEnd(self.atoms, end.frontier, end.note)
        except _Infeasible:
            return None


def explore(ri, cfg: SolverConfig | None = None, stats: ExploreStats | None = None):
    """Depth-first enumeration of feasible execution paths of a reachability
    instance.  Yields one PathEnd per completed path."""
    cfg = cfg or SolverConfig()
    stats = stats if stats is not None else ExploreStats()
    boxes0 = {v: _box_of_domain(ri.domains[v]) for v in ri.input_vars}
    deadline = time.monotonic() + cfg.time_cap_s
    stack: list[list[int]] = [[]]
    while stack:
        if stats.paths >= cfg.max_paths:
            stats.budget_hit = True
            return
        if time.monotonic() > deadline:
            stats.budget_hit = True
            return
        prefix = stack.pop()
        runner = _PathRun(ri.program, ri.input_vars, boxes0, cfg, prefix)
        end = runner.execute()
        for j in range(len(prefix), len(runner.trail)):
            d = runner.trail[j]
            for alt in d.feasible_rest:
                stack.append(d.choices_prefix + [alt])
        if end is None:
            continue
        stats.paths += 1
        if end.frontier is Frontier.REACH:
            stats.reach_paths += 1
        if end.frontier is Frontier.BUDGET:
            stats.budget_hit = True
        yield end


# ---------------------------------------------------------------------------
# Solve


class SolveStatus(enum.Enum):
    WITNESS = "witness"
    NONE_WITHIN_BOUNDS = "none_within_bounds"
    SOLVER_LIMIT = "solver_limit"


@dataclass
class SolveResult:
    status: SolveStatus
    witness: dict[str, int] | None = None
    paths_explored: int = 0
    budget_hit: bool = False
    reason: str | None = None


def solve(ri, cfg: SolverConfig | None = None) -> SolveResult:
    """Find a domain-respecting valuation of the input variables that drives
    execution to the reach label, or report that none exists within bounds.

    The returned witness is the lexicographically smallest one (in
    input-variable order) over all reach paths, and has been verified by
    concrete re-execution.
    """
    from .reductions import check_reach_witness  # local: avoids import cycle

    cfg = cfg or SolverConfig()
    stats = ExploreStats()
    witnesses: list[tuple[int, ...]] = []
    order = list(ri.input_vars)
    try:
        for end in explore(ri, cfg, stats):
            if end.frontier is not Frontier.REACH:
                continue
            sol = solve_atoms(end.atoms, ri.domains, order, cfg.solve_budget)
            if sol is None:
                continue
            if check_reach_witness(ri, sol) is True:
                witnesses.append(tuple(sol[v] for v in order))
            else:
                logger.warning(
                    "discarding symbolic witness %s: concrete re-execution "
                    "did not reach the label",
                    sol,
                )
    except SolverLimitError as ex:
        return SolveResult(
            SolveStatus.SOLVER_LIMIT,
            paths_explored=stats.paths,
            budget_hit=True,
            reason=str(ex),
        )
    if witnesses:
        best = min(witnesses)
        return SolveResult(
            SolveStatus.WITNESS,
            witness=dict(zip(order, best)),
            paths_explored=stats.paths,
            budget_hit=stats.budget_hit,
        )
    return SolveResult(
        SolveStatus.NONE_WITHIN_BOUNDS,
        paths_explored=stats.paths,
        budget_hit=stats.budget_hit,
    )
