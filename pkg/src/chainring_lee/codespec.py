"""The eight families of cyclic codes of length 2^sigma over R, as validated specs.

A :class:`CodeSpec` names a family (``type_tag`` 1..8), its integer
exponents and its unit polynomials.  Unit polynomials are given by their
coefficients in the (x+1)-adic basis.  The smallest-integer quantities
L, U, V, W, L1 are computed from closed forms here; the oracle module
recomputes them by membership search.

Exponent names used in ``params``:

    type 1: ideal (0 for <0>, 1 for <1>)
    type 2: ell
    type 3: ell, t              units: z
    type 4: ell, t, mu          units: z
    type 5: alpha, T1, T2       units: z1, z2
    type 6: alpha, T1, T2, omega
    type 7: alpha, beta, T1, T2, T3   units: z1, z2, z3
    type 8: alpha, beta, T1, T2, T3, omega

When a unit slot is zero its companion exponent plays no role; the
validator skips that exponent's inequality and the enumerator pins it to 0.
"""

from __future__ import annotations

import itertools
import json
import operator
import random
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

from .gf2m import FieldCtx, field
from .polyring import MAX_SIGMA, PolyS, XPlusOneCoeffs, from_xp1

PARAM_NAMES = {
    1: ("ideal",),
    2: ("ell",),
    3: ("ell", "t"),
    4: ("ell", "t", "mu"),
    5: ("alpha", "T1", "T2"),
    6: ("alpha", "T1", "T2", "omega"),
    7: ("alpha", "beta", "T1", "T2", "T3"),
    8: ("alpha", "beta", "T1", "T2", "T3", "omega"),
}
UNIT_NAMES = {1: (), 2: (), 3: ("z",), 4: ("z",), 5: ("z1", "z2"), 6: ("z1", "z2"),
              7: ("z1", "z2", "z3"), 8: ("z1", "z2", "z3")}
# exponent that multiplies each unit slot
UNIT_EXPONENT = {"z": "t", "z1": "T1", "z2": "T2", "z3": "T3"}
ALL_PARAMS = ("ideal", "ell", "t", "mu", "alpha", "beta", "omega", "T1", "T2", "T3")


class ConstraintViolation(ValueError):
    """A spec breaks one or more inequalities of its family."""

    def __init__(self, violations: Sequence["Violation"]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True)
class UnitPoly:
    """z(x) = sum_k coeffs_xp1[k] (x+1)^k; the empty tuple is the zero polynomial."""

    coeffs_xp1: tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs_xp1)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs_xp1", coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs_xp1

    @property
    def is_one(self) -> bool:
        return self.coeffs_xp1 == (1,)

    @property
    def length(self) -> int:
        """Number of (x+1)-basis coefficients up to the last nonzero one."""
        return len(self.coeffs_xp1)

    def to_json(self):
        return "zero" if self.is_zero else [f"{c:#x}" for c in self.coeffs_xp1]

    @classmethod
    def from_json(cls, data) -> "UnitPoly":
        if data == "zero" or data == 0:
            return ZERO
        if isinstance(data, str):
            data = [data]
        return cls(tuple(int(c, 16) if isinstance(c, str) else int(c) for c in data))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return " + ".join(f"{c:#x}*(x+1)^{k}" for k, c in enumerate(self.coeffs_xp1) if c)


ZERO = UnitPoly(())
ONE = UnitPoly((1,))


@dataclass(frozen=True)
class DerivedParams:
    L: int | None = None
    U: int | None = None
    V: int | None = None
    W: int | None = None
    L1: int | None = None

    def as_dict(self) -> dict[str, int | None]:
        return {"L": self.L, "U": self.U, "V": self.V, "W": self.W, "L1": self.L1}


@dataclass(frozen=True)
class CodeSpec:
    sigma: int
    m: int
    type_tag: int
    params: dict[str, int] = dc_field(default_factory=dict)
    units: dict[str, UnitPoly] = dc_field(default_factory=dict)

    @property
    def n(self) -> int:
        return 1 << self.sigma

    @property
    def ctx(self) -> FieldCtx:
        return field(self.m)

    def p(self, name: str) -> int:
        return self.params.get(name, 0)

    def z(self, name: str) -> UnitPoly:
        return self.units.get(name, ZERO)

    def z_pattern(self) -> tuple[bool, ...]:
        """Nonzero flags of the unit slots, in slot order."""
        return tuple(not self.z(s).is_zero for s in UNIT_NAMES[self.type_tag])

    def key(self) -> tuple:
        return (self.type_tag, self.sigma, self.m,
                tuple(self.p(k) for k in PARAM_NAMES.get(self.type_tag, ())),
                tuple(self.z(s).coeffs_xp1 for s in UNIT_NAMES.get(self.type_tag, ())))

    def to_json(self) -> dict:
        return {
            "sigma": self.sigma,
            "m": self.m,
            "type": self.type_tag,
            "params": {k: self.p(k) for k in PARAM_NAMES[self.type_tag]},
            "units": {s: self.z(s).to_json() for s in UNIT_NAMES[self.type_tag]},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "CodeSpec":
        try:
            sigma, m, tag = int(data["sigma"]), int(data["m"]), int(data["type"])
        except KeyError as exc:
            raise ValueError(f"spec is missing field {exc.args[0]!r}") from None
        if tag not in PARAM_NAMES:
            raise ValueError(f"type must be 1..8, got {tag}")
        params = {k: int(v) for k, v in (data.get("params") or {}).items()}
        unknown = set(params) - set(PARAM_NAMES[tag])
        if unknown:
            raise ValueError(f"unknown params for type {tag}: {sorted(unknown)}")
        units = {k: UnitPoly.from_json(v) for k, v in (data.get("units") or {}).items()}
        unknown = set(units) - set(UNIT_NAMES[tag])
        if unknown:
            raise ValueError(f"unknown units for type {tag}: {sorted(unknown)}")
        return cls(sigma, m, tag, params, units)

    @classmethod
    def loads(cls, text: str) -> "CodeSpec":
        return cls.from_json(json.loads(text))

    def with_params(self, **changes: int) -> "CodeSpec":
        return CodeSpec(self.sigma, self.m, self.type_tag, {**self.params, **changes}, dict(self.units))

    def __str__(self) -> str:
        parts = [f"type {self.type_tag}", f"sigma={self.sigma}", f"m={self.m}"]
        parts += [f"{k}={self.p(k)}" for k in PARAM_NAMES[self.type_tag]]
        parts += [f"{s}=[{self.z(s)}]" for s in UNIT_NAMES[self.type_tag]]
        return " ".join(parts)


# -- smallest-integer closed forms --------------------------------------------


def _shifted_min(base: int, n: int, T: int, other: int) -> int:
    return min(base, n + T - other)


def smallest_params_formula(spec: CodeSpec) -> DerivedParams:
    n, tag, p = spec.n, spec.type_tag, spec.p
    zero = lambda s: spec.z(s).is_zero  # noqa: E731
    if tag in (3, 4):
        ell = p("ell")
        return DerivedParams(L=ell if zero("z") else _shifted_min(ell, n, p("t"), ell))
    if tag in (5, 6, 7, 8):
        alpha = p("alpha")
        U = alpha if zero("z1") else _shifted_min(alpha, n, p("T1"), alpha)
        if tag in (5, 6):
            if zero("z1") and zero("z2"):
                V = alpha
            elif zero("z1"):
                V = _shifted_min(alpha, n, p("T2"), alpha)
            else:
                V = _shifted_min(alpha, n, p("T1"), alpha)
            return DerivedParams(U=U, V=V)
        beta = p("beta")
        z1, z2, z3 = (not zero(s) for s in ("z1", "z2", "z3"))
        # branches are tried in their published order
        if (not z1 and not z2 and not z3) or (z1 and not z3):
            W = beta
        elif not z1 and not z3 and z2:
            W = min(beta, n + p("T2") - alpha)
        elif (not z1 and not z2 and z3) or (z1 and z3):
            W = min(beta, n + p("T3") - beta)
        else:
            W = min(beta, n + p("T2") - alpha, n + p("T3") - beta)
        if tag == 7:
            return DerivedParams(U=U, W=W)
        L1 = beta if not z3 else min(beta, n + p("T3") - beta)
        return DerivedParams(U=U, W=W, L1=L1)
    return DerivedParams()


# -- validation ------------------------------------------------------------------

_OPS = {"<": operator.lt, "<=": operator.le, "==": operator.eq}


@dataclass(frozen=True)
class Violation:
    relation: str
    lhs: int
    rhs: int

    def __str__(self) -> str:
        return f"{self.relation} (got {self.lhs} vs {self.rhs})"


def _chain(names: Sequence[str], ops: Sequence[str]) -> list[tuple[str, str, str]]:
    return [(names[i], ops[i], names[i + 1]) for i in range(len(ops))]


# inequality chains per family; names resolve through params, derived params, or "N-1"
CHAINS = {
    2: _chain(["0", "ell", "N-1"], ["<=", "<="]),
    3: _chain(["0", "L", "ell", "N-1"], ["<=", "<=", "<="]) + [("t", "<", "L")],
    4: _chain(["0", "mu", "L", "ell", "N-1"], ["<=", "<", "<=", "<="]) + [("t", "<", "mu")],
    5: _chain(["0", "V", "U", "alpha", "N-1"], ["<", "<=", "<=", "<="])
    + [("T1", "<", "U"), ("T2", "<", "V")],
    6: _chain(["0", "omega", "V", "U", "alpha", "N-1"], ["<=", "<", "<=", "<=", "<="])
    + [("T1", "<", "U"), ("T2", "<", "omega")],
    7: _chain(["0", "W", "beta", "U", "alpha", "N-1"], ["<=", "<=", "<", "<=", "<="])
    + [("T1", "<", "beta"), ("T2", "<", "W"), ("T3", "<", "W")],
    8: _chain(["0", "omega", "W", "L1", "beta", "U", "alpha", "N-1"],
              ["<=", "<", "<=", "<=", "<", "<=", "<="])
    + [("T1", "<", "beta"), ("T2", "<", "omega"), ("T3", "<", "omega")],
}

# number of (x+1)-basis coefficients allowed for each unit slot: (upper, lower)
DEGREE_BOUNDS = {
    3: {"z": ("L", "t")},
    4: {"z": ("mu", "t")},
    5: {"z1": ("U", "T1"), "z2": ("V", "T2")},
    6: {"z1": ("U", "T1"), "z2": ("omega", "T2")},
    7: {"z1": ("beta", "T1"), "z2": ("W", "T2"), "z3": ("W", "T3")},
    8: {"z1": ("beta", "T1"), "z2": ("omega", "T2"), "z3": ("omega", "T3")},
}


def _resolver(spec: CodeSpec, derived: DerivedParams):
    values = {**{k: spec.p(k) for k in ALL_PARAMS}, **{k: v for k, v in derived.as_dict().items() if v is not None}}
    values["0"] = 0
    values["N-1"] = spec.n - 1
    return values


def _slot_for_exponent(tag: int, name: str) -> str | None:
    for slot in UNIT_NAMES[tag]:
        if UNIT_EXPONENT[slot] == name:
            return slot
    return None


def degree_bound(spec: CodeSpec, slot: str, derived: DerivedParams | None = None) -> int:
    derived = derived or smallest_params_formula(spec)
    values = _resolver(spec, derived)
    hi, lo = DEGREE_BOUNDS[spec.type_tag][slot]
    return values[hi] - values[lo]


def validate(spec: CodeSpec) -> list[Violation]:
    """Every violated inequality of the spec's family, with both sides evaluated."""
    out: list[Violation] = []
    if not 1 <= spec.sigma <= MAX_SIGMA:
        return [Violation(f"1 <= sigma <= {MAX_SIGMA}", spec.sigma, MAX_SIGMA)]
    if not 1 <= spec.m <= 16:
        return [Violation("1 <= m <= 16", spec.m, 16)]
    tag = spec.type_tag
    if tag not in PARAM_NAMES:
        return [Violation("1 <= type <= 8", tag, 8)]
    for name in PARAM_NAMES[tag]:
        if spec.p(name) < 0:
            out.append(Violation(f"0 <= {name}", 0, spec.p(name)))
    if tag == 1:
        if spec.p("ideal") not in (0, 1):
            out.append(Violation("ideal in {0, 1}", spec.p("ideal"), 1))
        return out
    derived = smallest_params_formula(spec)
    values = _resolver(spec, derived)
    for lhs, op, rhs in CHAINS[tag]:
        slot = _slot_for_exponent(tag, lhs)
        if slot is not None and spec.z(slot).is_zero:
            continue
        if not _OPS[op](values[lhs], values[rhs]):
            out.append(Violation(f"{lhs} {op} {rhs}", values[lhs], values[rhs]))
    q = spec.ctx.order
    for slot in UNIT_NAMES[tag]:
        z = spec.z(slot)
        if z.is_zero:
            continue
        if z.coeffs_xp1[0] == 0:
            out.append(Violation(f"{slot} constant term != 0", z.coeffs_xp1[0], 0))
        bad = [c for c in z.coeffs_xp1 if not 0 <= c < q]
        if bad:
            out.append(Violation(f"{slot} coefficients in GF(2^{spec.m})", bad[0], q - 1))
        hi, lo = DEGREE_BOUNDS[tag][slot]
        bound = values[hi] - values[lo]
        if z.length > bound:
            out.append(Violation(f"len {slot} <= {hi} - {lo}", z.length, bound))
    return out


def check(spec: CodeSpec) -> CodeSpec:
    violations = validate(spec)
    if violations:
        raise ConstraintViolation(violations)
    return spec


# -- generators -----------------------------------------------------------------------


def _term(spec: CodeSpec, layer: int, shift: int, z: UnitPoly) -> PolyS:
    """u^layer * (x+1)^shift * z(x) as a PolyS."""
    n, ctx = spec.n, spec.ctx
    layers = [[0] * n for _ in range(3)]
    for k, c in enumerate(z.coeffs_xp1):
        if shift + k < n:
            layers[layer][shift + k] = c
    return from_xp1(XPlusOneCoeffs(ctx, n, *map(tuple, layers)))


def generators(spec: CodeSpec) -> list[PolyS]:
    check(spec)
    tag, p, z = spec.type_tag, spec.p, spec.z
    if tag == 1:
        return [PolyS.constant(spec.ctx, spec.n, (p("ideal"), 0, 0))]
    if tag == 2:
        return [_term(spec, 2, p("ell"), ONE)]
    if tag in (3, 4):
        gens = [_term(spec, 1, p("ell"), ONE) + _term(spec, 2, p("t"), z("z"))]
        if tag == 4:
            gens.append(_term(spec, 2, p("mu"), ONE))
        return gens
    gens = [_term(spec, 0, p("alpha"), ONE) + _term(spec, 1, p("T1"), z("z1")) + _term(spec, 2, p("T2"), z("z2"))]
    if tag in (7, 8):
        gens.append(_term(spec, 1, p("beta"), ONE) + _term(spec, 2, p("T3"), z("z3")))
    if tag in (6, 8):
        gens.append(_term(spec, 2, p("omega"), ONE))
    return gens


# -- enumeration ----------------------------------------------------------------------------


def _skeletons(tag: int, n: int) -> Iterator[tuple[dict[str, int], tuple[bool, ...]]]:
    """Exponent tuples and zero patterns that may satisfy the chain (before derived checks)."""
    rng = range(n)
    slots = UNIT_NAMES[tag]
    if tag == 1:
        for ideal in (0, 1):
            yield {"ideal": ideal}, ()
        return
    if tag == 2:
        for ell in rng:
            yield {"ell": ell}, ()
        return
    for pattern in itertools.product((False, True), repeat=len(slots)):
        on = dict(zip(slots, pattern))
        exp_range = lambda slot, upper=n: range(upper) if on[slot] else (0,)  # noqa: E731
        if tag == 3:
            for ell in rng:
                for t in exp_range("z", max(ell, 1)):
                    yield {"ell": ell, "t": t}, pattern
        elif tag == 4:
            for ell in rng:
                for mu in range(ell):
                    for t in exp_range("z", max(mu, 1)):
                        yield {"ell": ell, "t": t, "mu": mu}, pattern
        elif tag in (5, 6):
            for alpha in range(1, n):
                for T1 in exp_range("z1", alpha):
                    for T2 in exp_range("z2", alpha):
                        if tag == 5:
                            yield {"alpha": alpha, "T1": T1, "T2": T2}, pattern
                            continue
                        for omega in range(alpha):
                            if on["z2"] and T2 >= omega:
                                continue
                            yield {"alpha": alpha, "T1": T1, "T2": T2, "omega": omega}, pattern
        else:
            for alpha in range(1, n):
                for beta in range(alpha):
                    for T1 in exp_range("z1", beta):
                        for T2 in exp_range("z2", beta):
                            for T3 in exp_range("z3", beta):
                                base = {"alpha": alpha, "beta": beta, "T1": T1, "T2": T2, "T3": T3}
                                if tag == 7:
                                    yield base, pattern
                                    continue
                                for omega in range(beta):
                                    if (on["z2"] and T2 >= omega) or (on["z3"] and T3 >= omega):
                                        continue
                                    yield {**base, "omega": omega}, pattern


def _unit_candidates(q: int, length: int) -> Iterator[tuple[int, ...]]:
    for head in range(1, q):
        for tail in itertools.product(range(q), repeat=length - 1):
            yield (head, *tail)


def _random_unit(rng: random.Random, q: int, length: int) -> tuple[int, ...]:
    return (rng.randrange(1, q), *(rng.randrange(q) for _ in range(length - 1)))


def enumerate_specs(sigma: int, m: int, type_filter: Sequence[int] | None = None,
                    budget: int = 64, seed: int = 0) -> Iterator[CodeSpec]:
    """All valid specs of the requested families, in a fixed order.

    Exponents are enumerated exhaustively.  For each exponent tuple the unit
    polynomials are enumerated exhaustively when the number of combinations is
    at most ``budget``; otherwise ``budget`` combinations are drawn with a
    generator seeded by ``seed`` and the tuple, always starting with every
    slot equal to the constant 1.
    """
    n, q = 1 << sigma, 1 << m
    types = sorted(set(type_filter)) if type_filter else list(range(1, 9))
    for tag in types:
        slots = UNIT_NAMES[tag]
        for params, pattern in _skeletons(tag, n):
            live = [s for s, on in zip(slots, pattern) if on]
            probe = CodeSpec(sigma, m, tag, params, {s: ONE for s in live})
            if validate(probe):
                continue
            derived = smallest_params_formula(probe)
            lengths = [degree_bound(probe, s, derived) for s in live]
            total = 1
            for ln in lengths:
                total *= (q - 1) * q ** (ln - 1)
            if total <= budget:
                combos: Iterator[tuple] = itertools.product(*(_unit_candidates(q, ln) for ln in lengths))
            else:
                combos = _sampled_combos(lengths, q, budget, f"{seed}|{tag}|{sigma}|{m}|{sorted(params.items())}|{pattern}")
            for combo in combos:
                spec = CodeSpec(sigma, m, tag, dict(params), {s: UnitPoly(c) for s, c in zip(live, combo)})
                if validate(spec):
                    raise AssertionError(f"enumerator emitted an invalid spec: {spec}")
                yield spec


def _sampled_combos(lengths: Sequence[int], q: int, budget: int, seed_text: str) -> Iterator[tuple]:
    rng = random.Random(seed_text)
    seen = set()
    first = tuple((1,) for _ in lengths)
    seen.add(first)
    yield first
    attempts = 0
    while len(seen) < budget and attempts < 50 * budget:
        attempts += 1
        combo = tuple(_random_unit(rng, q, ln) for ln in lengths)
        # trailing zeros make distinct tuples describe the same polynomial
        combo = tuple(UnitPoly(c).coeffs_xp1 for c in combo)
        if combo in seen:
            continue
        seen.add(combo)
        yield combo
