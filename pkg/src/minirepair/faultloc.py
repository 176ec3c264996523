"""Spectrum-based fault localization (Tarantula).

Builds per-statement pass/fail tallies from test coverage and ranks
statements by suspiciousness.  Statements never executed by any test do
not appear in the ranking: under this spectrum they cannot be the
observed fault.
"""

from __future__ import annotations

from dataclasses import dataclass

from .interpreter import TestResult


@dataclass
class Spectrum:
    passed: dict[int, int]  # stmt id -> number of passing tests covering it
    failed: dict[int, int]
    total_passed: int
    total_failed: int


@dataclass
class Ranking:
    """(stmt id, score) pairs, non-increasing by score; ties break by
    ascending statement id so exploration order is reproducible."""

    entries: list[tuple[int, float]]

    def __len__(self) -> int:
        return len(self.entries)


def build_spectrum(results: list[TestResult]) -> Spectrum:
    if not results:
        raise ValueError("no test results")
    passed: dict[int, int] = {}
    failed: dict[int, int] = {}
    total_passed = total_failed = 0
    for r in results:
        if r.passed:
            total_passed += 1
            tally = passed
        else:
            total_failed += 1
            tally = failed
        for sid in r.coverage:
            tally[sid] = tally.get(sid, 0) + 1
    if total_failed == 0:
        raise ValueError("all tests pass: nothing to repair")
    return Spectrum(passed, failed, total_passed, total_failed)


def tarantula(sp: Spectrum) -> Ranking:
    """score(s) = (failed(s)/F) / (failed(s)/F + passed(s)/P), with the
    passed term taken as 0 when P = 0.  Scores are in [0, 1]."""
    entries = []
    for sid in sorted(set(sp.passed) | set(sp.failed)):
        f = sp.failed.get(sid, 0) / sp.total_failed
        p = sp.passed.get(sid, 0) / sp.total_passed if sp.total_passed else 0.0
        score = 0.0 if f + p == 0 else f / (f + p)
        entries.append((sid, score))
    entries.sort(key=lambda e: (-e[1], e[0]))
    return Ranking(entries)


def top_n(r: Ranking, n: int) -> list[int]:
    if n < 1:
        raise ValueError("n must be >= 1")
    return [sid for sid, _ in r.entries[:n]]
