"""minirepair: automatic program repair for MiniLang via reachability.

A buggy program plus a failing test suite is repaired by templating
suspicious statements with integer holes, reducing each candidate to a
reachability question (can a distinguished label be reached for some
assignment to the hole variables?), and answering that question with a
built-in bounded test-input generator.  The reverse reduction, from
reachability back to template synthesis, is implemented too.
"""

from .faultloc import Ranking, Spectrum, build_spectrum, tarantula, top_n
from .interpreter import (
    DEFAULT_FUEL,
    ExecOutcome,
    OutcomeKind,
    TestCase,
    TestResult,
    TestSuite,
    format_suite,
    parse_suite,
    run,
    run_suite,
    run_test,
)
from .minilang import (
    MiniLangError,
    ParseError,
    Program,
    SemanticError,
    count_nodes,
    holes,
    index_program,
    parse,
    parse_stmt,
    print_program,
    print_stmt,
    substitute,
)
from .reductions import (
    R2SResult,
    ReachInstance,
    S2RResult,
    SynthesisInstance,
    check_reach_witness,
    check_synthesis_witness,
    gadget_r2s,
    gadget_s2r,
    rename_valuation,
)
from .repair import (
    NothingToRepair,
    Patch,
    RepairConfig,
    RepairReport,
    apply_patch,
    repair,
    validate,
)
from .solver import (
    Frontier,
    SolveResult,
    SolveStatus,
    SolverConfig,
    SolverLimitError,
    explore,
    solve,
    solve_atoms,
)
from .templates import (
    CATALOG,
    Domain,
    FiniteSet,
    HoleSession,
    IntRange,
    TemplateInstance,
    TemplateKind,
    applicable,
    instantiate,
    realize,
)

__version__ = "0.1.0"
