"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run alone with ``python3 -m pytest tests/test_acceptance.py -s`` or
``python3 tests/test_acceptance.py``.  The lines are repeated in the pytest
terminal summary.  Failing criteria are real disagreements between the
closed forms and the exhaustive oracle; see the notes in the README.
"""

import subprocess
import sys
import time
from functools import lru_cache
from pathlib import Path

import pytest

from chainring_lee.codespec import ONE, CodeSpec, enumerate_specs, smallest_params_formula
from chainring_lee.formulas import BOUNDS, EXACT, NOT_COVERED, base_lee, lee_bounds_sandwich, lee_distance
from chainring_lee.gf2m import TraceOrthogonalBasis, all_tobs, field, find_tob
from chainring_lee.oracle import build_span, membership, min_weights_multibasis, oracle_report
from chainring_lee.polyring import PolyS, lee_weight_poly
from chainring_lee.sweep import MISMATCH, run_sweep

EXHAUSTIVE = 10 ** 9
SAMPLED_BUDGET = 64
SEED = 0


@lru_cache(maxsize=None)
def sweep_rows(sigma, types, budget):
    specs = enumerate_specs(sigma, 1, list(types), budget=budget, seed=SEED)
    return tuple(run_sweep(specs))


@pytest.fixture(scope="module", autouse=True)
def warm_kernels():
    """Load the compiled enumeration kernel once so time limits measure the computation itself."""
    oracle_report(CodeSpec(2, 1, 2, {"ell": 1}))


def _first(rows, describe):
    return f"; first: {describe(rows[0])}" if rows else ""


def _row_text(r):
    oracle = "-" if r.oracle is None else r.oracle.d_lee
    return f"{r.spec} formula {r.formula} oracle {oracle}"


def _finish(criterion, number, ok, detail, elapsed, limit):
    in_time = elapsed <= limit
    line = criterion(number, ok and in_time, f"{detail} [{elapsed:.1f}s / limit {limit}s]")
    assert ok and in_time, line


def test_criterion_01_trivial_anchors(criterion):
    start = time.perf_counter()
    bad = []
    for sigma in (2, 3):
        for m in (1, 2):
            for ideal in (0, 1):
                spec = CodeSpec(sigma, m, 1, {"ideal": ideal})
                f, o = lee_distance(spec), oracle_report(spec)
                if not (f.kind == EXACT and f.value == o.d_lee == ideal):
                    bad.append(f"{spec}: formula {f.value} oracle {o.d_lee}")
    _finish(criterion, 1, not bad, f"8 codes, {len(bad)} disagree" + (f"; {bad[0]}" if bad else ""),
            time.perf_counter() - start, 1)


def test_criterion_02_type2_full(criterion):
    start = time.perf_counter()
    bad, total = [], 0
    for sigma in (2, 3):
        for m in (1, 2):
            for ell in range(1 << sigma):
                spec = CodeSpec(sigma, m, 2, {"ell": ell})
                f, o = lee_distance(spec), oracle_report(spec)
                total += 1
                if not (f.kind == EXACT and f.value == o.d_lee == 2 * base_lee(ell, sigma).value):
                    bad.append(f"{spec}: formula {f.value} oracle {o.d_lee}")
    _finish(criterion, 2, not bad, f"{total} codes, {len(bad)} disagree" + (f"; {bad[0]}" if bad else ""),
            time.perf_counter() - start, 30)


def _type3_rows():
    return sweep_rows(2, (3,), EXHAUSTIVE) + sweep_rows(3, (3,), EXHAUSTIVE)


def test_criterion_03_type3(criterion):
    start = time.perf_counter()
    rows = _type3_rows()
    zero = [r for r in rows if r.formula.source.startswith("thm7/")]
    zero_bad = [r for r in zero if r.verdict != "MATCH"]
    t0 = [r for r in rows if r.formula.source.startswith("thm9/")]
    t0_bad = [r for r in t0 if r.oracle.d_lee != 4]
    t0_small = [r for r in t0 if r.spec.sigma == 2]
    tn = [r for r in rows if r.formula.source.startswith("thm8/")]
    tn_exact_bad = [r for r in tn if r.formula.kind == EXACT and r.verdict != "MATCH"]
    tn_bounds_bad = [r for r in tn if r.formula.kind == BOUNDS and not r.formula.contains(r.oracle.d_lee)]
    ok = bool(zero) and bool(t0_small) and not (zero_bad or t0_bad or tn_exact_bad or tn_bounds_bad)
    detail = (f"z=0 family {len(zero) - len(zero_bad)}/{len(zero)} exact"
              f"{_first(zero_bad, _row_text)}"
              f" | t=0 family oracle=4 on {len(t0) - len(t0_bad)}/{len(t0)} ({len(t0_small)} at sigma=2)"
              f"{_first(t0_bad, _row_text)}"
              f" | t!=0 family exact {sum(1 for r in tn if r.formula.kind == EXACT) - len(tn_exact_bad)}"
              f"/{sum(1 for r in tn if r.formula.kind == EXACT)},"
              f" intervals {sum(1 for r in tn if r.formula.kind == BOUNDS) - len(tn_bounds_bad)}"
              f"/{sum(1 for r in tn if r.formula.kind == BOUNDS)} contain the oracle")
    _finish(criterion, 3, ok, detail, time.perf_counter() - start, 300)


def _types4to7_rows():
    return (sweep_rows(2, (4, 5, 6, 7), EXHAUSTIVE), sweep_rows(3, (4, 5, 6, 7), SAMPLED_BUDGET))


def test_criterion_04_types_4_to_7(criterion):
    start = time.perf_counter()
    small, large = _types4to7_rows()
    rows = small + large
    mismatch = [r for r in rows if r.verdict == MISMATCH]
    bounds_bad = [r for r in rows if r.formula.kind == BOUNDS and not r.formula.contains(r.oracle.d_lee)]
    exact = [r for r in rows if r.formula.kind == EXACT]
    sandwich_bad = [r for r in exact if not lee_bounds_sandwich(r.spec).contains(r.formula.value)]
    ok = not (mismatch or bounds_bad or sandwich_bad)
    detail = (f"{len(small)} rows at sigma=2 (exhaustive), {len(large)} at sigma=3 (budget {SAMPLED_BUDGET},"
              f" seed {SEED}); MISMATCH {len(mismatch)}{_first(mismatch, _row_text)}"
              f" | bounds not containing oracle {len(bounds_bad)}"
              f" | exact outside [d_H, 2d_H] {len(sandwich_bad)}/{len(exact)}")
    _finish(criterion, 4, ok, detail, time.perf_counter() - start, 1800)


def _type8_rows():
    return sweep_rows(3, (8,), SAMPLED_BUDGET)


def test_criterion_05_type8(criterion):
    start = time.perf_counter()
    rows = _type8_rows()
    covered = [r for r in rows if r.formula.kind != NOT_COVERED]
    covered_bad = [r for r in covered if not r.formula.contains(r.oracle.d_lee)]
    unlisted = [r for r in rows if r.formula.source == "type8/uncovered-pattern"]
    outside = [r for r in unlisted if not (r.formula.lo <= r.oracle.d_lee <= r.formula.hi)]
    gaps = [r for r in rows if r.formula.kind == NOT_COVERED and r not in unlisted]
    gaps_outside = [r for r in gaps if not (r.formula.lo <= r.oracle.d_lee <= r.formula.hi)]
    ok = bool(covered) and bool(unlisted) and not (covered_bad or outside)
    detail = (f"{len(rows)} rows; covered {len(covered) - len(covered_bad)}/{len(covered)} agree"
              f"{_first(covered_bad, _row_text)}"
              f" | unlisted patterns inside envelope {len(unlisted) - len(outside)}/{len(unlisted)}"
              f"{_first(outside, _row_text)}"
              f" | clause gaps inside envelope {len(gaps) - len(gaps_outside)}/{len(gaps)}")
    _finish(criterion, 5, ok, detail, time.perf_counter() - start, 600)


def _all_sweep_rows():
    small, large = _types4to7_rows()
    return _type3_rows() + small + large + _type8_rows()


def test_criterion_06_smallest_integer_audit(criterion):
    start = time.perf_counter()
    rows = _all_sweep_rows()
    bad = [r for r in rows if not r.params_agree]
    by_name: dict[str, int] = {}
    for r in bad:
        for k, v in r.derived.as_dict().items():
            if v != getattr(r.derived_oracle, k):
                by_name[k] = by_name.get(k, 0) + 1
    detail = (f"{len(rows) - len(bad)}/{len(rows)} specs agree; disagreements by parameter {by_name}"
              + _first(bad, lambda r: f"{r.spec} formula {r.derived} definitional {r.derived_oracle}"))
    _finish(criterion, 6, not bad, detail, time.perf_counter() - start, 1800)


def test_criterion_07_hamming_reductions(criterion):
    start = time.perf_counter()
    rows = _all_sweep_rows()
    bad = [r for r in rows if not r.hamming_agrees]
    detail = (f"{len(rows) - len(bad)}/{len(rows)} specs agree"
              + _first(bad, lambda r: f"{r.spec} reduction {r.hamming_formula} oracle {r.oracle.d_hamming}"))
    _finish(criterion, 7, not bad, detail, time.perf_counter() - start, 1800)


def test_criterion_08_tob_invariance(criterion):
    start = time.perf_counter()
    ctx = field(2)
    first = find_tob(ctx)
    swapped = TraceOrthogonalBasis(tuple(reversed(first.elems)), ctx)
    specs = list(enumerate_specs(2, 2, [2, 3], budget=EXHAUSTIVE))
    bad = [s for s in specs if len(set(min_weights_multibasis(s, [first, swapped]))) != 1]
    # GF(4) has a single trace-orthogonal basis set; GF(16) has two, compared as well
    wide = list(enumerate_specs(2, 4, [2, 3], budget=1))
    wide_bad = [s for s in wide if len({oracle_report(s, b).d_lee for b in all_tobs(field(4))}) != 1]
    detail = (f"m=2: {len(specs) - len(bad)}/{len(specs)} specs agree under bases {first} and {swapped}"
              f" | m=4: {len(wide) - len(wide_bad)}/{len(wide)} agree under {len(all_tobs(field(4)))} basis sets")
    _finish(criterion, 8, not (bad or wide_bad), detail, time.perf_counter() - start, 120)


def test_criterion_09_witnesses(criterion):
    start = time.perf_counter()
    results = []
    for sigma in (2, 3):
        ctx, n, half = field(1), 1 << sigma, 1 << (sigma - 1)
        basis = find_tob(ctx)
        z1 = basis.elems[0]
        # u^2 zeta_1 (x+1)^(n/2) in <u(x+1)^ell + u^2 (x+1)^t z> with t != 0
        heavy = PolyS.xp1_power(ctx, n, half, (0, 0, z1))
        spec = CodeSpec(sigma, 1, 3, {"ell": n - 1, "t": 1}, {"z": ONE})
        results.append((lee_weight_poly(heavy, basis), 4, membership(heavy, build_span(spec))))
        # zeta_1 ((x+1)^(n/2) + u) in <(x+1)^(n/2) + u>
        light = PolyS.xp1_power(ctx, n, half, (z1, 0, 0)) + PolyS.constant(ctx, n, (0, z1, 0))
        spec = CodeSpec(sigma, 1, 5, {"alpha": half, "T1": 0, "T2": 0}, {"z1": ONE})
        assert smallest_params_formula(spec).U == half
        results.append((lee_weight_poly(light, basis), 3, membership(light, build_span(spec))))
    ok = all(w == want and member for w, want, member in results)
    detail = ", ".join(f"weight {w} (want {want}) member={member}" for w, want, member in results)
    _finish(criterion, 9, ok, detail, time.perf_counter() - start, 1)


PROPERTY_TESTS = [
    "tests/test_gf2m.py::test_field_axioms_exhaustive",
    "tests/test_chain_ring.py::test_gray_additive_and_weight_preserving",
    "tests/test_oracle.py::test_span_closure",
    "tests/test_oracle.py::test_sumset_oracle_agrees_on_small_codes",
]


def test_criterion_10_property_suites_standalone(criterion):
    start = time.perf_counter()
    root = Path(__file__).resolve().parent.parent
    proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *PROPERTY_TESTS],
                          cwd=root, capture_output=True, text=True)
    tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr.strip()[-200:]
    _finish(criterion, 10, proc.returncode == 0, f"standalone run: {tail}", time.perf_counter() - start, 120)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
