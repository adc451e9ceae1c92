"""Cross-check of closed forms against the oracle over enumerated specs."""

from __future__ import annotations

import csv
import io
import json
import multiprocessing
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .codespec import ALL_PARAMS, PARAM_NAMES, UNIT_NAMES, CodeSpec, DerivedParams, enumerate_specs, smallest_params_formula
from .formulas import BOUNDS, EXACT, DistanceResult, hamming_distance, lee_distance
from .oracle import CapacityError, OracleReport, oracle_report, smallest_params_oracle

MATCH, WITHIN_BOUNDS, MISMATCH, NOT_COVERED, ERROR = "MATCH", "WITHIN_BOUNDS", "MISMATCH", "NOT_COVERED", "ERROR"
UNIT_COLUMNS = ("z", "z1", "z2", "z3")
DERIVED_COLUMNS = ("L", "U", "V", "W", "L1")
COLUMNS = ("type", "sigma", "m", *ALL_PARAMS, *UNIT_COLUMNS, *DERIVED_COLUMNS,
           "formula_kind", "formula_value", "lo", "hi", "source", "oracle_dlee", "oracle_dham", "verdict", "ms")


def verdict_for(result: DistanceResult, d_lee: int | None) -> str:
    if d_lee is None:
        return ERROR
    if result.kind == EXACT:
        return MATCH if result.value == d_lee else MISMATCH
    if result.kind == BOUNDS:
        return WITHIN_BOUNDS if result.lo <= d_lee <= result.hi else MISMATCH
    return NOT_COVERED


@dataclass
class SweepRow:
    spec: CodeSpec
    derived: DerivedParams
    formula: DistanceResult
    oracle: OracleReport | None
    verdict: str
    ms: float
    # audits that do not appear in the fixed CSV columns
    derived_oracle: DerivedParams | None = None
    hamming_formula: int | None = None
    error: str | None = None

    @property
    def params_agree(self) -> bool | None:
        if self.derived_oracle is None:
            return None
        return self.derived == self.derived_oracle

    @property
    def hamming_agrees(self) -> bool | None:
        if self.oracle is None or self.hamming_formula is None:
            return None
        return self.oracle.d_hamming == self.hamming_formula

    @property
    def in_envelope(self) -> bool | None:
        if self.oracle is None or self.formula.lo is None:
            return None
        return self.formula.lo <= self.oracle.d_lee <= self.formula.hi

    def record(self, timing: bool = True) -> dict:
        spec = self.spec
        rec: dict = {"type": spec.type_tag, "sigma": spec.sigma, "m": spec.m}
        for p in ALL_PARAMS:
            rec[p] = spec.p(p) if p in PARAM_NAMES[spec.type_tag] else ""
        for s in UNIT_COLUMNS:
            rec[s] = _unit_text(spec, s)
        for k, v in self.derived.as_dict().items():
            rec[k] = "" if v is None else v
        f = self.formula
        rec.update({
            "formula_kind": f.kind,
            "formula_value": "" if f.value is None else f.value,
            "lo": "" if f.lo is None else f.lo,
            "hi": "" if f.hi is None else f.hi,
            "source": f.source if self.error is None else f"{f.source};error={self.error}",
            "oracle_dlee": "" if self.oracle is None else self.oracle.d_lee,
            "oracle_dham": "" if self.oracle is None else self.oracle.d_hamming,
            "verdict": self.verdict,
            "ms": round(self.ms, 1) if timing else 0,
        })
        return rec


def _unit_text(spec: CodeSpec, slot: str) -> str:
    if slot not in UNIT_NAMES[spec.type_tag]:
        return ""
    z = spec.z(slot)
    return "zero" if z.is_zero else ":".join(f"{c:#x}" for c in z.coeffs_xp1)


def evaluate(spec: CodeSpec, audit_params: bool = True) -> SweepRow:
    start = time.perf_counter()
    derived = smallest_params_formula(spec)
    formula = lee_distance(spec)
    ham = hamming_distance(spec).value
    try:
        report = oracle_report(spec)
        derived_oracle = smallest_params_oracle(spec) if audit_params else None
        error = None
    except CapacityError as exc:
        report, derived_oracle, error = None, None, str(exc)
    verdict = verdict_for(formula, None if report is None else report.d_lee)
    ms = (time.perf_counter() - start) * 1000
    return SweepRow(spec, derived, formula, report, verdict, ms, derived_oracle, ham, error)


def run_sweep(specs: Iterable[CodeSpec], workers: int = 1, audit_params: bool = True) -> list[SweepRow]:
    """Rows in input order, whatever the completion order of the workers."""
    specs = list(specs)
    if workers <= 1:
        return [evaluate(s, audit_params) for s in specs]
    # spawn, not fork: the numba kernels may already have started an OpenMP runtime
    with ProcessPoolExecutor(max_workers=workers, mp_context=multiprocessing.get_context("spawn")) as pool:
        return list(pool.map(evaluate, specs, [audit_params] * len(specs), chunksize=16))


def sweep(sigma: int, m: int, types: Sequence[int] | None = None, budget: int = 64, seed: int = 0,
          workers: int = 1, audit_params: bool = True) -> list[SweepRow]:
    return run_sweep(enumerate_specs(sigma, m, types, budget=budget, seed=seed), workers, audit_params)


def rows_to_csv(rows: Sequence[SweepRow], timing: bool = True) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(r.record(timing))
    return buf.getvalue()


def rows_to_json(rows: Sequence[SweepRow], timing: bool = True) -> str:
    return json.dumps([r.record(timing) for r in rows], indent=1)


def csv_to_records(text: str) -> list[dict]:
    """Parse CSV back into records typed like the JSON form (ints where possible)."""
    out = []
    for rec in csv.DictReader(io.StringIO(text)):
        typed = {}
        for k, v in rec.items():
            try:
                typed[k] = int(v)
            except ValueError:
                try:
                    typed[k] = float(v)
                except ValueError:
                    typed[k] = v
        out.append(typed)
    return out


def summarize(rows: Sequence[SweepRow]) -> dict:
    verdicts = Counter(r.verdict for r in rows)
    per_clause: dict[str, Counter] = {}
    for r in rows:
        per_clause.setdefault(r.formula.source, Counter())[r.verdict] += 1
    return {
        "rows": len(rows),
        "verdicts": dict(sorted(verdicts.items())),
        "per_source": {k: dict(sorted(v.items())) for k, v in sorted(per_clause.items())},
        "param_audit": dict(Counter("agree" if r.params_agree else "disagree"
                                    for r in rows if r.params_agree is not None)),
        "hamming_audit": dict(Counter("agree" if r.hamming_agrees else "disagree"
                                      for r in rows if r.hamming_agrees is not None)),
        "not_covered_in_envelope": dict(Counter(str(r.in_envelope) for r in rows if r.verdict == NOT_COVERED)),
        "anomalies": sum(1 for r in rows if r.formula.anomalies),
    }
