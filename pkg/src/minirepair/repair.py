"""The repair pipeline: localize, templatize, reduce, solve, validate.

Given a program failing at least one test, rank statements by Tarantula
suspiciousness, then walk candidates in (rank, template-catalog) order.
Each candidate templates the site(s), reduces the resulting synthesis
instance to a reachability instance, and asks the solver for a witness.
A witness is mapped back through the renaming maps, realized as a
concrete patch, and re-validated against the entire suite before being
reported; the final validation runs even though the reduction guarantees
it, as a defense against solver or reduction bugs.

Multi-edit repair (edits=k) templates k sites in one synthesis instance,
sharing a single witness valuation across all their holes.  Candidate
site combinations are enumerated in rank-lexicographic order over the
top-n ranked statements.
"""

from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass, field

from .faultloc import build_spectrum, tarantula, top_n
from .interpreter import DEFAULT_FUEL, TestSuite, run_suite
from .minilang import Program, parse_stmt, print_stmt_inline, replace_stmt_at
from .reductions import SynthesisInstance, gadget_s2r
from .solver import SolveStatus, SolverConfig, solve
from .templates import (
    CATALOG,
    HoleSession,
    TemplateKind,
    applicable,
    build_replacement,
    instantiate,
)

logger = logging.getLogger(__name__)


class NothingToRepair(ValueError):
    pass


@dataclass
class RepairConfig:
    top_n: int = 80
    templates: tuple[TemplateKind, ...] = CATALOG
    edits: int = 1
    solver: SolverConfig = field(default_factory=SolverConfig)
    stop_at_first: bool = True
    fuel: int = DEFAULT_FUEL

    def __post_init__(self):
        if self.top_n < 1:
            raise ValueError("top_n must be >= 1")
        if self.edits < 1:
            raise ValueError("edits must be >= 1")


@dataclass
class Patch:
    sites: list[int]
    originals: list[str]
    replacements: list[str]
    kinds: list[TemplateKind]
    witness: dict[str, int]


@dataclass
class CandidateRecord:
    sites: list[int]
    kinds: list[TemplateKind]
    status: str  # patched | no_witness | indeterminate | solver_limit | validation_failed
    paths_explored: int = 0
    time_ms: float = 0.0
    note: str | None = None


@dataclass
class RepairReport:
    status: str  # repaired | no_repair_found
    patch: Patch | None
    instances_generated: int  # number of reachability instances built
    elapsed_s: float
    candidates: list[CandidateRecord] = field(default_factory=list)


def _candidate_stream(p: Program, sites: list[int], cfg: RepairConfig):
    """(sites, kinds) candidates in deterministic exploration order."""
    enabled = [k for k in CATALOG if k in cfg.templates]
    per_site = {s: [k for k in applicable(p, s) if k in enabled] for s in sites}
    usable = [s for s in sites if per_site[s]]
    if cfg.edits == 1:
        for s in usable:
            for k in per_site[s]:
                yield [s], [k]
        return
    for combo in itertools.combinations(usable, cfg.edits):
        for kinds in itertools.product(*(per_site[s] for s in combo)):
            yield list(combo), list(kinds)


def repair(p: Program, suite: TestSuite, cfg: RepairConfig | None = None) -> RepairReport:
    cfg = cfg or RepairConfig()
    if not suite.cases:
        raise NothingToRepair("empty test suite")
    t0 = time.monotonic()
    baseline = run_suite(p, suite, cfg.fuel)
    if all(r.passed for r in baseline):
        raise NothingToRepair("nothing to repair: all tests pass")

    ranking = tarantula(build_spectrum(baseline))
    sites = top_n(ranking, cfg.top_n)

    session = HoleSession()
    instances_generated = 0
    records: list[CandidateRecord] = []
    found: Patch | None = None

    for cand_sites, cand_kinds in _candidate_stream(p, sites, cfg):
        c0 = time.monotonic()
        tis = []
        templated = p
        ok = True
        for site, kind in zip(cand_sites, cand_kinds):
            try:
                ti = instantiate(templated, site, kind, session=session)
            except Exception as ex:  # shape changed by an earlier edit
                logger.debug("skipping %s at %s: %s", kind.value, site, ex)
                ok = False
                break
            tis.append(ti)
            templated = ti.program
        if not ok:
            continue
        domains = {}
        for ti in tis:
            domains.update(ti.domains)
        si = SynthesisInstance(templated, suite, domains)
        s2r = gadget_s2r(si)
        instances_generated += 1
        result = solve(s2r.instance, cfg.solver)
        rec = CandidateRecord(
            sites=cand_sites,
            kinds=cand_kinds,
            status="no_witness",
            paths_explored=result.paths_explored,
        )
        if result.status is SolveStatus.SOLVER_LIMIT:
            rec.status = "solver_limit"
            rec.note = result.reason
        elif result.status is SolveStatus.NONE_WITHIN_BOUNDS:
            rec.status = "indeterminate" if result.budget_hit else "no_witness"
        else:
            var_to_hole = {v: h for h, v in s2r.hole_to_var.items()}
            hole_witness = {var_to_hole[v]: c for v, c in result.witness.items()}
            patched = p
            replacements = []
            for ti in tis:
                stmt = build_replacement(
                    ti, {h: hole_witness[h] for h in ti.holes}
                )
                replacements.append(print_stmt_inline(stmt))
                patched = replace_stmt_at(patched, ti.site, stmt)
            validation = run_suite(patched, suite, cfg.fuel)
            if all(r.passed for r in validation):
                rec.status = "patched"
                found = Patch(
                    sites=cand_sites,
                    originals=[print_stmt_inline(ti.original_stmt) for ti in tis],
                    replacements=replacements,
                    kinds=cand_kinds,
                    witness=hole_witness,
                )
            else:
                # should be unreachable if the reduction and solver are sound
                rec.status = "validation_failed"
                logger.warning(
                    "witness %s at sites %s failed final validation", hole_witness, cand_sites
                )
        rec.time_ms = (time.monotonic() - c0) * 1000.0
        records.append(rec)
        if found and cfg.stop_at_first:
            break

    elapsed = time.monotonic() - t0
    return RepairReport(
        status="repaired" if found else "no_repair_found",
        patch=found,
        instances_generated=instances_generated,
        elapsed_s=elapsed,
        candidates=records,
    )


def apply_patch(p: Program, patch: Patch) -> Program:
    """Re-apply a patch to a program from its printed replacement text."""
    out = p
    for site, text in zip(patch.sites, patch.replacements):
        out = replace_stmt_at(out, site, parse_stmt(text))
    return out


def validate(p: Program, patch: Patch, suite: TestSuite, fuel: int = DEFAULT_FUEL) -> bool:
    """True iff applying `patch` to p passes every test in the suite."""
    patched = apply_patch(p, patch)
    results = run_suite(patched, suite, fuel)
    return all(r.passed for r in results)
