import pytest

from chainring_lee.codespec import ONE, CodeSpec, enumerate_specs, smallest_params_formula
from chainring_lee.formulas import (
    BOUNDS, EXACT, NOT_COVERED, THEOREMS, DistanceResult, base_gap_audit, base_hamming, base_lee, clause_audit,
    clause_matches, hamming_distance, lee_bounds_sandwich, lee_distance,
)

ALL_SPECS = [s for sigma in (2, 3) for s in enumerate_specs(sigma, 1, budget=4)]


def test_base_hamming_examples():
    assert base_hamming(0, 3).value == 1
    assert base_hamming(4, 3).value == 2
    r = base_hamming(7, 3)
    assert (r.value, r.gamma) == (8, 2)


def test_base_lee_examples():
    assert base_lee(0, 3).value == 1
    assert base_lee(3, 3).value == 2
    for sigma in range(1, 6):
        assert base_lee(1 << sigma, sigma).value == 0


def test_base_tables_tile_every_exponent():
    assert base_gap_audit(5) == []
    with pytest.raises(ValueError):
        base_hamming(9, 3)


def test_hamming_examples():
    for spec in enumerate_specs(3, 1, [3]):
        assert hamming_distance(spec).value == base_hamming(smallest_params_formula(spec).L, 3).value
    spec = CodeSpec(3, 1, 6, {"alpha": 3, "T1": 0, "T2": 0, "omega": 0})
    assert hamming_distance(spec).value == 1
    spec = CodeSpec(3, 1, 8, {"alpha": 5, "beta": 3, "T1": 0, "T2": 0, "T3": 0, "omega": 1})
    assert hamming_distance(spec).value == 2


@pytest.mark.parametrize("spec, value, source", [
    (CodeSpec(3, 1, 2, {"ell": 0}), 2, "thm5/clause1"),
    (CodeSpec(3, 1, 3, {"ell": 2, "t": 0}), 6, "thm7/clause2"),
    (CodeSpec(3, 1, 3, {"ell": 7, "t": 1}, {"z": ONE}), 4, "thm8/clause2"),
    (CodeSpec(3, 1, 5, {"alpha": 4, "T1": 0, "T2": 0}, {"z2": ONE}), 2, "thm16/clause2"),
    (CodeSpec(3, 1, 4, {"ell": 2, "mu": 0, "t": 0}), 2, "thm11/clause1"),
    (CodeSpec(2, 1, 1, {"ideal": 0}), 0, "type1"),
    (CodeSpec(2, 1, 1, {"ideal": 1}), 1, "type1"),
])
def test_lee_examples(spec, value, source):
    r = lee_distance(spec)
    assert (r.kind, r.value, r.source) == (EXACT, value, source)


def test_sandwich_examples():
    spec = CodeSpec(3, 1, 3, {"ell": 3, "t": 0})
    assert base_hamming(3, 3).value == 2
    r = lee_bounds_sandwich(spec)
    assert (r.kind, r.lo, r.hi) == (BOUNDS, 2, 4)
    spec = CodeSpec(3, 1, 6, {"alpha": 3, "T1": 0, "T2": 0, "omega": 0})
    assert (lee_bounds_sandwich(spec).lo, lee_bounds_sandwich(spec).hi) == (1, 2)
    for beta in range(1, 7):
        spec = CodeSpec(3, 1, 7, {"alpha": 7, "beta": beta, "T1": 0, "T2": 0, "T3": 0})
        r = lee_bounds_sandwich(spec)
        if r.gamma is not None:
            assert (r.lo, r.hi) == (2 ** (r.gamma + 1), 2 ** (r.gamma + 2))


def test_type2_is_twice_base():
    for sigma in (1, 2, 3, 4, 5):
        for ell in range(1 << sigma):
            r = lee_distance(CodeSpec(sigma, 1, 2, {"ell": ell}))
            assert r.value == 2 * base_lee(ell, sigma).value


def test_zero_unit_single_generator_is_three_times_base():
    for sigma in (1, 2, 3, 4, 5):
        for ell in range(1 << sigma):
            r = lee_distance(CodeSpec(sigma, 1, 3, {"ell": ell, "t": 0}))
            assert r.value == 3 * base_lee(ell, sigma).value


def test_exact_results_inside_sandwich_except_tripled_family():
    """The tripled values of the z = 0 single-generator family exceed twice the Hamming distance;
    every other exact closed form stays inside [d_H, 2 d_H]."""
    outside = {lee_distance(s).source.split("/")[0] for s in ALL_SPECS
               if lee_distance(s).kind == EXACT and not lee_bounds_sandwich(s).contains(lee_distance(s).value)}
    assert outside == {"thm7"}


def test_overlapping_clauses_are_reported():
    audit = clause_audit(ALL_SPECS)
    flagged = sum(len(v) for v in audit.values())
    assert flagged == sum(1 for s in ALL_SPECS if lee_distance(s).anomalies)
    for spec in ALL_SPECS:
        matches = clause_matches(spec)
        r = lee_distance(spec)
        if matches:
            assert r.source == matches[0].result.source
            assert len(r.anomalies) == len(matches) - 1


def test_not_covered_carries_envelope():
    # nonzero z, t != 0, ell strictly between the two covered ranges
    spec = CodeSpec(3, 1, 3, {"ell": 6, "t": 3}, {"z": ONE})
    r = lee_distance(spec)
    assert r.kind == NOT_COVERED
    env = lee_bounds_sandwich(spec)
    assert (r.lo, r.hi) == (env.lo, env.hi)
    for spec in ALL_SPECS:
        r = lee_distance(spec)
        if r.kind == NOT_COVERED:
            assert r.lo is not None and r.lo <= r.hi


def test_type8_unlisted_patterns_not_covered():
    spec = CodeSpec(3, 1, 8, {"alpha": 5, "beta": 3, "T1": 0, "T2": 0, "T3": 0, "omega": 1}, {"z2": ONE})
    assert lee_distance(spec).source == "type8/uncovered-pattern"


def test_theorem_table_is_well_formed():
    names = [t.name for t in THEOREMS]
    assert len(names) == len(set(names))
    for t in THEOREMS:
        assert t.clauses


def test_result_json_shape():
    r = DistanceResult(EXACT, 4, source="thm8/clause2")
    assert r.to_json() == {"kind": "exact", "value": 4, "lo": None, "hi": None, "source": "thm8/clause2",
                           "gamma": None}
    with pytest.raises(ValueError):
        DistanceResult(BOUNDS, lo=4, hi=2)
