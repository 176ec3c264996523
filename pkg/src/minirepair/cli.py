"""Command-line front end and benchmark harness.

Subcommands: parse, print, run, faultloc, s2r, r2s, solve, repair, bench.
Machine-readable output goes to stdout, diagnostics to stderr.  Exit
codes: 0 success, 1 usage/parse error, 2 repair completed with no repair
found.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .faultloc import build_spectrum, tarantula
from .interpreter import DEFAULT_FUEL, OutcomeKind, parse_suite, run, run_suite
from .minilang import MiniLangError, holes, index_program, parse, print_program
from .reductions import ReachInstance, SynthesisInstance, gadget_r2s, gadget_s2r
from .repair import NothingToRepair, RepairConfig, RepairReport, repair
from .solver import SolverConfig, solve
from .templates import CATALOG, COEFF_RANGE, FiniteSet, IntRange, TemplateKind

DEFAULT_CORPUS = Path(__file__).parent / "corpus"

_TEMPLATE_GROUPS = {
    "const": (TemplateKind.CONST_SWAP,),
    "ops": (
        TemplateKind.OP_SWITCH_ARITH,
        TemplateKind.OP_SWITCH_COMPARE,
        TemplateKind.OP_SWITCH_LOGICAL,
    ),
    "linear": (TemplateKind.LINEAR_COMBO,),
}


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _parse_domains(text: str) -> tuple[list[str], dict]:
    """Domains file: one `name: lo..hi` or `name: {a,b,c}` per line."""
    order: list[str] = []
    domains: dict = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, _, spec = line.partition(":")
        name, spec = name.strip(), spec.strip()
        if not name or not spec:
            raise ValueError(f"domains line {ln}: expected 'name: lo..hi' or 'name: {{a,b,c}}'")
        if spec.startswith("{"):
            vals = tuple(int(v) for v in spec.strip("{}").split(","))
            domains[name] = FiniteSet(vals)
        else:
            lo, _, hi = spec.partition("..")
            domains[name] = IntRange(int(lo), int(hi))
        order.append(name)
    return order, domains


def _parse_globals(spec: str) -> dict[str, int]:
    out: dict[str, int] = {}
    for part in spec.split(","):
        if not part.strip():
            continue
        name, _, value = part.partition("=")
        out[name.strip()] = int(value)
    return out


def _template_set(spec: str) -> tuple[TemplateKind, ...]:
    kinds: list[TemplateKind] = []
    for name in spec.split(","):
        group = _TEMPLATE_GROUPS.get(name.strip())
        if group is None:
            raise ValueError(f"unknown template group '{name.strip()}' (use const,ops,linear)")
        kinds.extend(k for k in group if k not in kinds)
    return tuple(k for k in CATALOG if k in kinds)


def _solver_config(args) -> SolverConfig:
    return SolverConfig(
        loop_bound=args.loop_bound,
        max_paths=args.max_paths,
        time_cap_s=args.time_cap_s,
    )


def _repair_config(args) -> RepairConfig:
    return RepairConfig(
        top_n=args.top_n,
        templates=_template_set(args.templates),
        edits=args.edits,
        solver=_solver_config(args),
    )


def _report_json(report: RepairReport) -> dict:
    patch = None
    if report.patch is not None:
        single = len(report.patch.sites) == 1
        patch = {
            "site": report.patch.sites[0] if single else report.patch.sites,
            "original": report.patch.originals[0] if single else report.patch.originals,
            "replacement": (
                report.patch.replacements[0] if single else report.patch.replacements
            ),
            "witness": report.patch.witness,
        }
    return {
        "status": report.status,
        "patch": patch,
        "rProgs": report.instances_generated,
        "timeMs": round(report.elapsed_s * 1000.0, 3),
        "candidates": [
            {
                "sites": c.sites,
                "kinds": [k.value for k in c.kinds],
                "status": c.status,
                "pathsExplored": c.paths_explored,
                "timeMs": round(c.time_ms, 3),
            }
            for c in report.candidates
        ],
    }


# -- subcommands


def _cmd_parse(args) -> int:
    p = parse(_read(args.program))
    idx = index_program(p)
    print(f"OK functions={len(p.functions)} statements={len(idx.stmts)} entry={p.entry}")
    return 0


def _cmd_print(args) -> int:
    sys.stdout.write(print_program(parse(_read(args.program))))
    return 0


def _cmd_run(args) -> int:
    p = parse(_read(args.program))
    global_init = _parse_globals(args.globals) if args.globals else {}
    call_args = tuple(int(v) for v in args.args.split(",") if v.strip()) if args.args else ()
    outcome = run(p, global_init, call_args, args.fuel)
    if outcome.kind is OutcomeKind.RETURNED:
        print(f"RETURNED {outcome.value}")
    elif outcome.kind is OutcomeKind.REACHED_LABEL:
        print("REACHED")
    elif outcome.kind is OutcomeKind.RAISED_REACHED:
        print("RAISED")
    elif outcome.kind is OutcomeKind.RUNTIME_ERROR:
        print(f"ERROR {outcome.reason}")
    else:
        print("FUEL_EXHAUSTED")
    return 0


def _cmd_faultloc(args) -> int:
    p = parse(_read(args.program))
    suite = parse_suite(_read(args.suite))
    results = run_suite(p, suite)
    ranking = tarantula(build_spectrum(results))
    idx = index_program(p)
    for rank, (sid, score) in enumerate(ranking.entries, 1):
        line = idx.stmts[sid].span.line
        print(f"{rank}\t{sid}\t{score:.4f}\t{line}")
    return 0


def _emit_transformed(args, text: str, mapping: dict[str, str]) -> None:
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        map_path = args.emit_map or args.output + ".map"
    else:
        sys.stdout.write(text)
        map_path = args.emit_map
    if map_path:
        Path(map_path).write_text(
            "".join(f"{k}={v}\n" for k, v in mapping.items()), encoding="utf-8"
        )


def _cmd_s2r(args) -> int:
    p = parse(_read(args.program))
    suite = parse_suite(_read(args.suite))
    domains = {h: IntRange(*COEFF_RANGE) for h in holes(p)}
    si = SynthesisInstance(p, suite, domains)
    result = gadget_s2r(si)
    _emit_transformed(args, print_program(result.instance.program), result.hole_to_var)
    return 0


def _cmd_r2s(args) -> int:
    p = parse(_read(args.program))
    order, domains = _parse_domains(_read(args.domains))
    ri = ReachInstance(p, order, domains)
    result = gadget_r2s(ri)
    _emit_transformed(args, print_program(result.instance.program), result.var_to_hole)
    return 0


def _cmd_solve(args) -> int:
    p = parse(_read(args.program))
    order, domains = _parse_domains(_read(args.domains))
    ri = ReachInstance(p, order, domains)
    t0 = time.monotonic()
    result = solve(ri, _solver_config(args))
    payload = {
        "status": result.status.value,
        "witness": result.witness,
        "pathsExplored": result.paths_explored,
        "timeMs": round((time.monotonic() - t0) * 1000.0, 3),
    }
    print(json.dumps(payload, indent=None if args.json else 2))
    return 0


def _cmd_repair(args) -> int:
    p = parse(_read(args.program))
    suite = parse_suite(_read(args.suite))
    report = repair(p, suite, _repair_config(args))
    print(json.dumps(_report_json(report), indent=None if args.json else 2))
    return 0 if report.status == "repaired" else 2


def _cmd_bench(args) -> int:
    corpus = Path(args.corpus) if args.corpus else DEFAULT_CORPUS
    manifest = json.loads((corpus / "manifest.json").read_text(encoding="utf-8"))
    rows = []
    for entry in manifest:
        row = {
            "id": entry["id"],
            "defectClass": entry["defect_class"],
            "expectedRepairable": entry["expected_repairable"],
            "repaired": False,
            "rProgs": 0,
            "timeMs": 0.0,
            "error": None,
        }
        try:
            p = parse((corpus / entry["program"]).read_text(encoding="utf-8"))
            suite = parse_suite((corpus / entry["suite"]).read_text(encoding="utf-8"))
            cfg = _repair_config(args)
            cfg.edits = entry.get("edits", args.edits)
            cfg.top_n = entry.get("top_n", args.top_n)
            report = repair(p, suite, cfg)
            row["repaired"] = report.status == "repaired"
            row["rProgs"] = report.instances_generated
            row["timeMs"] = round(report.elapsed_s * 1000.0, 1)
            if report.patch:
                row["patch"] = {
                    "sites": report.patch.sites,
                    "replacements": report.patch.replacements,
                }
        except (MiniLangError, NothingToRepair, OSError, ValueError) as ex:
            row["error"] = str(ex)
        rows.append(row)
    aggregate = {"repaired": sum(1 for r in rows if r["repaired"]), "total": len(rows)}
    if args.json:
        print(json.dumps({"rows": rows, "aggregate": aggregate}))
    else:
        print("id\tdefect_class\trepaired\tr_progs\ttime_ms")
        for r in rows:
            print(
                f"{r['id']}\t{r['defectClass']}\t{'yes' if r['repaired'] else 'no'}"
                f"\t{r['rProgs']}\t{r['timeMs']}"
            )
        print(f"# repaired {aggregate['repaired']}/{aggregate['total']}")
    return 0


def _add_solver_flags(sp) -> None:
    sp.add_argument("--loop-bound", type=int, default=64)
    sp.add_argument("--max-paths", type=int, default=100_000)
    sp.add_argument("--time-cap-s", type=float, default=10.0)


def _add_repair_flags(sp) -> None:
    _add_solver_flags(sp)
    sp.add_argument("--top-n", type=int, default=80)
    sp.add_argument("--templates", default="const,ops,linear")
    sp.add_argument("--edits", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="minirepair")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("parse", help="parse and validate a program")
    sp.add_argument("program")
    sp.set_defaults(fn=_cmd_parse)

    sp = sub.add_parser("print", help="reprint a program in canonical form")
    sp.add_argument("program")
    sp.set_defaults(fn=_cmd_print)

    sp = sub.add_parser("run", help="run a program")
    sp.add_argument("program")
    sp.add_argument("--globals", default="", help="comma list name=value")
    sp.add_argument("--args", default="", help="comma list of entry arguments")
    sp.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    sp.set_defaults(fn=_cmd_run)

    sp = sub.add_parser("faultloc", help="rank suspicious statements")
    sp.add_argument("program")
    sp.add_argument("suite")
    sp.set_defaults(fn=_cmd_faultloc)

    sp = sub.add_parser("s2r", help="reduce a synthesis instance to reachability")
    sp.add_argument("program", help="template program (with ??holes)")
    sp.add_argument("suite")
    sp.add_argument("-o", "--output", default=None)
    sp.add_argument("--emit-map", default=None)
    sp.set_defaults(fn=_cmd_s2r)

    sp = sub.add_parser("r2s", help="reduce a reachability instance to synthesis")
    sp.add_argument("program")
    sp.add_argument("domains", help="input variables file: name: lo..hi per line")
    sp.add_argument("-o", "--output", default=None)
    sp.add_argument("--emit-map", default=None)
    sp.set_defaults(fn=_cmd_r2s)

    sp = sub.add_parser("solve", help="find inputs reaching the reach label")
    sp.add_argument("program")
    sp.add_argument("domains")
    sp.add_argument("--json", action="store_true", help="compact one-line JSON")
    _add_solver_flags(sp)
    sp.set_defaults(fn=_cmd_solve)

    sp = sub.add_parser("repair", help="repair a failing program")
    sp.add_argument("program")
    sp.add_argument("suite")
    sp.add_argument("--json", action="store_true", help="compact one-line JSON")
    _add_repair_flags(sp)
    sp.set_defaults(fn=_cmd_repair)

    sp = sub.add_parser("bench", help="run the repair benchmark corpus")
    sp.add_argument("corpus", nargs="?", default=None)
    sp.add_argument("--json", action="store_true")
    _add_repair_flags(sp)
    sp.set_defaults(fn=_cmd_bench)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (MiniLangError, NothingToRepair, OSError, ValueError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
