"""Closed-form Hamming and Lee distances as a table of guarded clauses.

Every published distance statement is stored as a :class:`Theorem`: the
family it applies to, the zero/nonzero pattern of its unit polynomials
(and whether each companion exponent is zero), an optional extra
hypothesis, and an ordered list of :class:`Clause` records.  A clause is a
guard over the spec's exponents plus a result (an exact value or an
interval).  Clauses marked ``per_gamma`` are tried for each window index
gamma = 1..sigma-1.

Conditions are transcribed as printed, including a handful whose printed
form can never hold or duplicates another clause; those simply never
fire.  Fractional thresholds use :class:`fractions.Fraction`.

Provenance labels (``"thm8/clause2"``) are the source document's own
theorem label keys; the three unlabeled results for the last family are
``type8a``, ``type8b`` and ``type8c``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Sequence

from .codespec import CodeSpec, DerivedParams, UNIT_EXPONENT, UNIT_NAMES, check, smallest_params_formula

EXACT, BOUNDS, NOT_COVERED = "exact", "bounds", "not_covered"


@dataclass(frozen=True)
class DistanceResult:
    kind: str
    value: int | None = None
    lo: int | None = None
    hi: int | None = None
    source: str = ""
    gamma: int | None = None
    anomalies: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind == EXACT and (self.value is None or self.value < 0):
            raise ValueError(f"exact result needs a nonnegative value, got {self.value}")
        if self.kind == BOUNDS and not (self.lo is not None and self.hi is not None and self.lo <= self.hi):
            raise ValueError(f"bounds need lo <= hi, got [{self.lo}, {self.hi}]")

    def contains(self, v: int) -> bool:
        if self.kind == EXACT:
            return v == self.value
        if self.lo is None or self.hi is None:
            return True
        return self.lo <= v <= self.hi

    def to_json(self) -> dict:
        out = {"kind": self.kind, "value": self.value, "lo": self.lo, "hi": self.hi,
               "source": self.source, "gamma": self.gamma}
        if self.anomalies:
            out["anomalies"] = list(self.anomalies)
        return out

    def __str__(self) -> str:
        g = f" (gamma={self.gamma})" if self.gamma is not None else ""
        if self.kind == EXACT:
            return f"exact {self.value} [{self.source}]{g}"
        if self.kind == BOUNDS:
            return f"bounds [{self.lo}, {self.hi}] [{self.source}]{g}"
        env = f" envelope [{self.lo}, {self.hi}]" if self.lo is not None else ""
        return f"not covered [{self.source}]{env}"


# -- region variables ---------------------------------------------------------------


class Vars:
    """Exponents, derived params and the length-dependent thresholds used by guards."""

    def __init__(self, spec: CodeSpec, derived: DerivedParams | None = None):
        derived = derived or smallest_params_formula(spec)
        self.sigma = s = spec.sigma
        self.N = 1 << s
        self.H = Fraction(self.N, 2)
        self.Q = Fraction(self.N, 4)
        for name in ("ell", "t", "mu", "alpha", "beta", "omega", "T1", "T2", "T3"):
            setattr(self, name, spec.p(name))
        for name, v in derived.as_dict().items():
            setattr(self, name, v)
        # "z = 1" compares the unit polynomial with the constant 1 exactly
        self.z_one = spec.z("z").is_one
        self.z1_one = spec.z("z1").is_one
        self.z2_one = spec.z("z2").is_one
        self.z3_one = spec.z("z3").is_one

    def p2(self, e: int) -> Fraction:
        return Fraction(2) ** e

    def lo(self, g: int) -> Fraction:
        """Left end of window gamma: 2^s - 2^(s-g) + 1."""
        return self.N - self.p2(self.sigma - g) + 1

    def hi(self, g: int) -> Fraction:
        """Right end of window gamma: 2^s - 2^(s-g) + 2^(s-g-1)."""
        return self.N - self.p2(self.sigma - g) + self.p2(self.sigma - g - 1)

    E = hi

    def F(self, g: int) -> Fraction:
        """2^(s-1) - 2^(s-g-1) + 2^(s-g-2)."""
        return self.H - self.p2(self.sigma - g - 1) + self.p2(self.sigma - g - 2)

    def win(self, x: int, g: int) -> bool:
        return self.lo(g) <= x <= self.hi(g)


Guard = Callable[..., bool]


@dataclass(frozen=True)
class Clause:
    guard: Guard | None
    value: int | Callable[[int], int] | None = None
    bounds: tuple[Callable[[int], int], Callable[[int], int]] | None = None
    per_gamma: bool = False
    otherwise: bool = False


def X(value, guard: Guard) -> Clause:
    return Clause(guard, value=value)


def G(value: Callable[[int], int], guard: Guard) -> Clause:
    return Clause(guard, value=value, per_gamma=True)


def GB(lo: Callable[[int], int], hi: Callable[[int], int], guard: Guard) -> Clause:
    return Clause(guard, bounds=(lo, hi), per_gamma=True)


def ELSE(value: int) -> Clause:
    return Clause(None, value=value, otherwise=True)


ALWAYS = lambda c: True  # noqa: E731


@dataclass(frozen=True)
class Theorem:
    name: str
    type_tag: int
    pattern: tuple[str, ...]
    clauses: tuple[Clause, ...]
    hypothesis: Guard | None = None


# pattern symbols per unit slot: "0" zero, "T0" nonzero with exponent 0, "T+" nonzero with positive exponent
def pattern_of(spec: CodeSpec) -> tuple[str, ...]:
    out = []
    for slot in UNIT_NAMES[spec.type_tag]:
        if spec.z(slot).is_zero:
            out.append("0")
        else:
            out.append("T0" if spec.p(UNIT_EXPONENT[slot]) == 0 else "T+")
    return tuple(out)


g1 = lambda g: 2 ** (g + 1)  # noqa: E731
g2 = lambda g: 2 ** (g + 2)  # noqa: E731
g3x = lambda g: 3 * 2 ** (g + 1)  # noqa: E731
half = lambda x: Fraction(x, 2)  # noqa: E731


def _mid(c, x) -> bool:
    """H + 1 <= x <= N - 1."""
    return c.H + 1 <= x <= c.N - 1


THEOREMS: list[Theorem] = []


def _thm(name, tag, pattern, clauses, hypothesis=None):
    THEOREMS.append(Theorem(name, tag, tuple(pattern), tuple(clauses), hypothesis))


# family 2
_thm("thm5", 2, (), [
    X(2, lambda c: c.ell == 0),
    X(4, lambda c: 1 <= c.ell <= c.H),
    G(g2, lambda c, g: c.win(c.ell, g)),
])

# family 3
_thm("thm7", 3, ("0",), [
    X(3, lambda c: c.ell == 0),
    X(6, lambda c: 1 <= c.ell <= c.H),
    G(g3x, lambda c, g: c.win(c.ell, g)),
])
_thm("thm8", 3, ("T+",), [
    X(4, lambda c: 1 < c.ell <= c.H),
    X(4, lambda c: _mid(c, c.ell) and c.ell >= c.H + c.t),
    GB(g1, g2, lambda c, g: c.win(c.ell, g) and c.ell <= c.H + half(c.t)),
])
_thm("thm9", 3, ("T0",), [X(4, ALWAYS)], hypothesis=lambda c: 1 <= c.ell)

# family 4
_thm("thm11", 4, ("0",), [
    X(2, lambda c: 1 <= c.ell <= c.H and c.mu == 0),
    X(4, lambda c: 1 <= c.mu < c.ell <= c.H),
    X(2, lambda c: _mid(c, c.ell) and c.mu == 0),
    X(4, lambda c: _mid(c, c.ell) and 1 <= c.mu <= c.H),
    GB(g1, g2, lambda c, g: c.lo(g) <= c.mu < c.ell <= c.hi(g)),
])
_thm("thm12", 4, ("T+",), [
    X(4, lambda c: 1 < c.mu < c.ell <= c.H),
    X(4, lambda c: _mid(c, c.ell) and 1 < c.mu <= c.H),
    X(4, lambda c: c.H + 1 <= c.mu < c.ell <= c.N - 1 and c.ell >= c.H + c.t),
    GB(g1, g2, lambda c, g: c.lo(g) <= c.mu < c.ell <= c.hi(g)),
], hypothesis=lambda c: 1 < c.mu)
_thm("thm13", 4, ("T0",), [X(4, ALWAYS)], hypothesis=lambda c: 0 < c.mu)

# family 5
_thm("thm15", 5, ("0", "0"), [
    X(2, lambda c: 1 <= c.alpha <= c.H),
    G(g1, lambda c, g: c.win(c.alpha, g)),
])
_thm("thm16", 5, ("0", "T0"), [
    X(2, lambda c: 1 <= c.alpha <= c.Q),
    X(2, lambda c: c.z2_one and c.alpha == c.H),
    ELSE(4),
])
_thm("thm17", 5, ("0", "T+"), [
    X(2, lambda c: 1 < c.alpha <= c.H and c.alpha <= c.Q + half(c.T2)),
    X(4, lambda c: 1 < c.alpha <= c.H and c.alpha > c.Q + half(c.T2)),
    X(4, lambda c: _mid(c, c.alpha) and c.alpha >= c.H + c.T2),
    G(g1, lambda c, g: c.win(c.alpha, g) and c.alpha <= c.F(g) + half(c.T2)),
], hypothesis=lambda c: 1 < c.V)
_thm("thm18", 5, ("T0", "0"), [
    X(2, lambda c: c.H >= 3 * c.alpha),
    X(3, lambda c: c.z1_one and c.alpha == c.H),
    ELSE(4),
])
_thm("thm19", 5, ("T+", "0"), [
    X(2, lambda c: 1 < c.alpha <= c.H and c.alpha <= c.Q + half(c.T1) and 3 * c.alpha <= c.H + 2 * c.T1),
    X(4, lambda c: 1 < c.alpha <= c.H and (c.alpha > c.Q + half(c.T1) or 3 * c.alpha > c.H + 2 * c.T1)),
    X(4, lambda c: _mid(c, c.alpha) and c.alpha >= c.H + c.T1),
    G(g1, lambda c, g: c.win(c.alpha, g) and c.alpha <= c.F(g) + half(c.T1) and 3 * c.alpha <= c.E(g) + 2 * c.T1),
])
_thm("thm20", 5, ("T0", "T0"), [
    X(2, lambda c: 3 * c.alpha <= c.H),
    X(3, lambda c: c.z1_one and c.z2_one and c.alpha == c.H),
    ELSE(4),
])
_thm("thm21", 5, ("T+", "T0"), [
    X(2, lambda c: 1 < c.alpha <= c.H and 3 * c.alpha <= c.H + 2 * c.T1),
    X(4, lambda c: 1 < c.alpha <= c.H and 3 * c.alpha > c.H + 2 * c.T1),
    X(4, lambda c: _mid(c, c.alpha) and c.alpha >= c.H + c.T1),
    G(g1, lambda c, g: c.win(c.alpha, g) and 3 * c.alpha <= c.E(g) + 2 * c.T1 and c.alpha <= c.H + half(c.T1)),
])
_thm("thm22", 5, ("T0", "T+"), [
    X(2, lambda c: c.H >= 3 * c.alpha and c.Q + half(c.T2) >= c.alpha),
    ELSE(4),
], hypothesis=lambda c: 1 < c.V)
_thm("thm23", 5, ("T+", "T+"), [
    X(2, lambda c: 1 < c.alpha <= c.H and 3 * c.alpha <= c.H + 2 * c.T1 and c.alpha <= c.Q + half(c.T2)),
    X(4, lambda c: 1 < c.alpha <= c.H and (3 * c.alpha > c.H + 2 * c.T1 or c.alpha > c.Q + half(c.T2))),
    X(4, lambda c: _mid(c, c.alpha) and c.alpha >= c.H + c.T1),
    G(g1, lambda c, g: c.win(c.alpha, g) and 3 * c.alpha <= c.E(g) + 2 * c.T1 and 2 * c.alpha <= c.E(g) + c.T1
      and c.alpha <= c.F(g) + half(c.T2) and c.alpha <= c.H + half(c.T1)),
], hypothesis=lambda c: 1 < c.V)

# family 6
_thm("thm25", 6, ("0", "0"), [
    X(2, lambda c: 1 <= c.alpha <= c.H),
    X(2, lambda c: _mid(c, c.alpha) and c.omega == 0),
    X(4, lambda c: _mid(c, c.alpha) and 1 <= c.omega <= c.H),
    G(g1, lambda c, g: c.lo(g) <= c.omega < c.alpha <= c.hi(g)),
])
_thm("thm26", 6, ("0", "T0"), [
    X(2, lambda c: c.omega + c.alpha <= c.H),
    X(2, lambda c: c.z2_one and c.alpha == c.H),
    ELSE(4),
], hypothesis=lambda c: 0 < c.omega)
_thm("thm27", 6, ("0", "T+"), [
    X(2, lambda c: 1 < c.alpha <= c.H and c.omega <= c.H - c.alpha + c.T2),
    X(4, lambda c: 1 < c.alpha <= c.H and c.omega > c.H - c.alpha + c.T2),
    X(4, lambda c: _mid(c, c.alpha) and 1 < c.omega <= c.H),
    X(4, lambda c: c.H + 1 <= c.omega < c.alpha <= c.N - 1 and c.alpha >= c.H + c.T2),
    G(g1, lambda c, g: c.lo(g) <= c.omega < c.alpha <= c.hi(g) and c.alpha <= c.F(g) + half(c.T2)),
], hypothesis=lambda c: 1 < c.omega)
_thm("thm28", 6, ("T0", "0"), [
    X(2, lambda c: c.omega == 0),
    X(2, lambda c: 1 <= c.omega <= c.H and c.omega + 2 * c.alpha <= c.H),
    X(3, lambda c: 1 <= c.omega <= c.H and c.z1_one and c.alpha == c.H),
    X(4, lambda c: 1 <= c.omega <= c.H and c.omega + 2 * c.alpha > c.H and not (c.z1_one and c.alpha == c.H)),
])
_thm("thm29", 6, ("T+", "0"), [
    X(2, lambda c: 1 < c.alpha <= c.H and c.omega == 0),
    X(2, lambda c: 1 <= c.omega < c.alpha <= c.H and c.omega <= c.H - 2 * c.alpha + 2 * c.T1
      and c.alpha <= c.Q + half(c.T1)),
    X(4, lambda c: 1 <= c.omega < c.alpha <= c.H and (c.omega > c.H - 2 * c.alpha + 2 * c.T1
                                                      or c.alpha > c.Q + half(c.T1))),
    X(2, lambda c: _mid(c, c.alpha) and c.omega == 0),
    X(4, lambda c: _mid(c, c.alpha) and 1 <= c.omega <= c.H),
    X(4, lambda c: c.H + 1 <= c.omega < c.alpha <= c.N - 1 and c.alpha >= c.H + c.T1),
    G(g1, lambda c, g: c.lo(g) <= c.omega < c.alpha <= c.hi(g) and c.alpha <= c.F(g) + half(c.T2)
      and 3 * c.alpha <= c.E(g) + 2 * c.T1),
])
_thm("thm30", 6, ("T0", "T0"), [
    X(2, lambda c: c.omega + 2 * c.alpha <= c.H),
    X(3, lambda c: c.z1_one and c.z2_one and c.alpha == c.H),
    ELSE(4),
], hypothesis=lambda c: 0 < c.omega)
_thm("thm31", 6, ("T+", "T0"), [
    X(2, lambda c: 1 <= c.omega < c.alpha <= c.H and 2 * c.alpha <= c.H + c.T1 and c.alpha + c.omega <= c.H
      and 2 * c.alpha + c.omega <= c.H + 2 * c.T1),
    X(4, lambda c: 1 <= c.omega < c.alpha <= c.H and (2 * c.alpha > c.H + c.T1 or c.alpha + c.omega > c.H
                                                      or 2 * c.alpha + c.omega > c.H + 2 * c.T1)),
    X(4, lambda c: _mid(c, c.alpha) and 1 <= c.omega <= c.H),
    G(g1, lambda c, g: c.lo(g) <= c.omega < c.alpha <= c.hi(g) and 3 * c.alpha <= c.E(g) + 2 * c.T1
      and c.alpha <= c.H + half(c.T1)),
], hypothesis=lambda c: 0 < c.omega)
_thm("thm32", 6, ("T0", "T+"), [
    X(2, lambda c: c.omega + 2 * c.alpha <= c.H and c.omega + c.alpha <= c.H + c.T2),
    ELSE(4),
], hypothesis=lambda c: 1 < c.omega)
_thm("thm33", 6, ("T+", "T+"), [
    X(2, lambda c: 1 < c.alpha <= c.H and c.omega <= c.H - c.alpha + 2 * c.T2 and 2 * c.alpha <= c.H + c.T1
      and c.omega <= c.H - 2 * c.alpha + 2 * c.T1),
    # the middle condition is printed as "<=", the same as in the clause above
    X(4, lambda c: 1 < c.alpha <= c.H and (c.omega > c.H - c.alpha + 2 * c.T2 or 2 * c.alpha <= c.H + c.T1
                                           or c.omega > c.H - 2 * c.alpha + 2 * c.T1)),
    X(4, lambda c: _mid(c, c.alpha) and 1 < c.omega <= c.H),
    X(4, lambda c: c.H + 1 <= c.omega < c.alpha <= c.N - 1 and c.alpha >= c.H + c.T1),
    G(g1, lambda c, g: c.lo(g) <= c.omega < c.alpha <= c.hi(g) and 3 * c.alpha <= c.E(g) + 2 * c.T1
      and c.alpha <= c.F(g) + half(c.T2) and c.alpha <= c.H + half(c.T1)),
], hypothesis=lambda c: 1 < c.omega)


# family 7
def _t7_upper_tail(extra_last: Guard | None = None):
    """The three shared clauses for alpha in the upper half (W and beta placement)."""
    last = extra_last or ALWAYS
    return [
        X(4, lambda c: _mid(c, c.alpha) and 1 < c.W <= c.beta <= c.H),
        X(4, lambda c: c.H + 1 <= c.beta < c.alpha <= c.N - 1 and 1 < c.W <= c.H),
        X(4, lambda c: c.H + 1 <= c.W <= c.beta < c.alpha <= c.N - 1 and last(c)),
    ]


_thm("thm35", 7, ("0", "0", "0"), [
    X(2, lambda c: 1 <= c.alpha <= c.H),
    X(2, lambda c: _mid(c, c.alpha) and c.beta == 0),
    X(4, lambda c: _mid(c, c.alpha) and 1 <= c.beta <= c.H),
    G(g1, lambda c, g: c.lo(g) <= c.beta < c.alpha <= c.hi(g)),
])
_thm("thm36", 7, ("T0", "0", "0"), [
    X(2, lambda c: 1 < c.alpha <= c.H and c.alpha + c.beta <= c.H),
    X(3, lambda c: 1 < c.alpha <= c.H and c.z1_one and c.alpha == c.H),
    X(4, lambda c: 1 < c.alpha <= c.H and c.alpha + c.beta > c.H and not (c.z1_one and c.alpha == c.H)),
    X(4, lambda c: _mid(c, c.alpha) and 1 <= c.beta <= c.H),
    G(lambda g: 4, lambda c, g: c.lo(g) <= c.beta < c.alpha <= c.hi(g)),
], hypothesis=lambda c: 0 < c.beta)
_thm("thm37", 7, ("T+", "0", "0"), [
    X(2, lambda c: 1 < c.alpha <= c.H and c.beta <= c.H - c.alpha + c.T1),
    X(4, lambda c: 1 < c.alpha <= c.H and c.beta > c.H - c.alpha + c.T1),
    X(4, lambda c: _mid(c, c.alpha) and 1 < c.beta <= c.H),
    X(4, lambda c: c.H + 1 <= c.beta < c.alpha <= c.N - 1 and c.alpha >= c.H + c.T1),
    G(g1, lambda c, g: c.lo(g) <= c.beta < c.alpha <= c.hi(g) and c.alpha <= c.F(g) + half(c.T1)
      and 3 * c.alpha <= c.E(g) + 2 * c.T1),
])
_thm("thm38", 7, ("0", "T0", "0"), [
    X(2, lambda c: c.beta + c.alpha <= c.H),
    X(2, lambda c: c.z2_one and c.alpha == c.H),
    ELSE(4),
], hypothesis=lambda c: 0 < c.W)
_thm("thm39", 7, ("0", "T+", "0"), [
    X(2, lambda c: 1 < c.alpha <= c.H and c.alpha <= c.Q + half(c.T2)),
    X(4, lambda c: 1 < c.alpha <= c.H and c.alpha > c.Q + half(c.T2)),
    *_t7_upper_tail(lambda c: c.alpha >= c.H + c.T2),
    G(g1, lambda c, g: c.lo(g) <= c.W <= c.beta < c.alpha <= c.hi(g) and c.alpha <= c.N - c.p2(c.sigma - g)
      and c.alpha <= c.H + half(c.T2)),
], hypothesis=lambda c: 1 < c.W)
_thm("thm40", 7, ("0", "0", "T0"), [
    X(2, lambda c: 1 < c.alpha <= c.H),
    X(4, lambda c: _mid(c, c.alpha)),
], hypothesis=lambda c: 0 < c.W)
_thm("thm41", 7, ("0", "0", "T+"), [
    X(2, lambda c: 1 < c.alpha <= c.H),
    *_t7_upper_tail(lambda c: c.beta >= c.H + c.T3),
    G(g1, lambda c, g: c.lo(g) <= c.W <= c.beta < c.alpha <= c.hi(g)),
], hypothesis=lambda c: 1 < c.W)
_thm("thm42", 7, ("T0", "T0", "0"), [
    X(2, lambda c: 1 <= c.beta < c.alpha < c.H and 2 * c.alpha <= c.H + c.T1 and c.alpha + c.beta <= c.H
      and 2 * c.alpha + c.beta <= c.H + 2 * c.T1),
    # printed with "alpha < H" alongside "alpha = H"
    X(3, lambda c: 1 <= c.beta < c.alpha < c.H and c.z1_one and c.z2_one and c.alpha == c.H),
    X(4, lambda c: 1 <= c.beta < c.alpha < c.H and (2 * c.alpha > c.H + c.T1 or c.alpha + c.beta > c.H
                                                    or 2 * c.alpha + c.beta > c.H + 2 * c.T1)
      and not (c.z1_one and c.z2_one and c.alpha == c.H)),
    X(4, lambda c: _mid(c, c.alpha) and 1 <= c.beta <= c.H),
    X(4, lambda c: c.H + 1 <= c.beta < c.alpha <= c.N - 1),
], hypothesis=lambda c: 0 < c.W and 0 < c.beta)
_thm("thm43", 7, ("T+", "T0", "0"), [
    X(2, lambda c: 1 < c.alpha <= c.H and c.alpha + c.beta <= c.H and c.alpha <= c.Q + half(c.T1)
      and c.alpha + half(c.beta) <= c.Q + c.T1),
    X(4, lambda c: 1 < c.alpha <= c.H and (c.alpha + c.beta > c.H or c.alpha > c.Q + half(c.T1)
                                           or c.alpha + half(c.beta) > c.Q + c.T1)),
    X(4, lambda c: _mid(c, c.alpha) and 1 < c.beta <= c.H),
    G(g1, lambda c, g: c.lo(g) <= c.beta < c.alpha <= c.hi(g) and 3 * c.alpha <= c.E(g) + 2 * c.T1
      and c.alpha <= c.H + half(c.T1)),
], hypothesis=lambda c: 0 < c.W)
_thm("thm44", 7, ("T0", "T+", "0"), [
    X(2, lambda c: 1 < c.beta < c.alpha <= c.H and 2 * c.alpha <= c.H and c.alpha + c.beta <= c.H + c.T2
      and 2 * c.alpha + c.beta <= c.H),
    X(4, lambda c: 1 < c.beta < c.alpha <= c.H and (2 * c.alpha > c.H or c.alpha + c.beta > c.H + c.T2
                                                    or 2 * c.alpha + c.beta > c.H)),
    X(4, lambda c: _mid(c, c.alpha) and 1 < c.beta <= c.H),
    X(4, lambda c: c.H + 1 <= c.beta < c.alpha <= c.N - 1),
], hypothesis=lambda c: 1 < c.W)
_thm("thm45", 7, ("T+", "T+", "0"), [
    X(2, lambda c: 1 < c.beta < c.alpha <= c.H and 2 * c.alpha <= c.H + c.T1 and c.alpha + c.beta <= c.H + c.T2
      and 2 * c.alpha + c.beta <= c.H + 2 * c.T1),
    X(4, lambda c: 1 < c.beta < c.alpha <= c.H and (2 * c.alpha > c.H + c.T1 or c.alpha + c.beta > c.H + c.T2
                                                    or 2 * c.alpha + c.beta > c.H + 2 * c.T1)),
    X(4, lambda c: _mid(c, c.alpha) and 1 < c.beta <= c.H),
    G(g1, lambda c, g: c.win(c.alpha, g) and 3 * c.alpha <= c.E(g) + 2 * c.T1 and c.alpha <= c.F(g) + half(c.T2)
      and c.alpha <= c.H + half(c.T1)),
], hypothesis=lambda c: 0 < c.W)

_SIMPLE_Z2 = [
    X(2, lambda c: c.beta + c.alpha <= c.H),
    X(2, lambda c: c.z2_one and c.alpha == c.H),
    ELSE(4),
]
_Z2_REGION = [
    X(2, lambda c: 1 < c.alpha <= c.H and c.alpha + c.beta <= c.H + c.T2),
    X(4, lambda c: 1 < c.alpha <= c.H and c.alpha + c.beta > c.H + c.T2),
    *_t7_upper_tail(lambda c: c.alpha >= c.H + c.T2),
    G(g1, lambda c, g: c.lo(g) <= c.W <= c.beta < c.alpha <= c.hi(g) and c.alpha <= c.F(g) + half(c.T2)),
]
_thm("thm46", 7, ("0", "T0", "T0"), _SIMPLE_Z2, hypothesis=lambda c: 0 < c.W)
_thm("thm47", 7, ("0", "T+", "T0"), _Z2_REGION, hypothesis=lambda c: 1 < c.W)
_thm("thm48", 7, ("0", "T0", "T+"), _SIMPLE_Z2, hypothesis=lambda c: 1 < c.W)
_thm("thm49", 7, ("0", "T+", "T+"), _Z2_REGION, hypothesis=lambda c: 1 < c.W)

_thm("thm50", 7, ("T0", "0", "T0"), [
    X(2, lambda c: 2 * c.alpha + c.beta <= c.H),
    X(3, lambda c: c.z1_one and c.alpha == c.H),
    ELSE(4),
], hypothesis=lambda c: 0 < c.W)
_thm("thm51", 7, ("T+", "0", "T0"), [
    X(2, lambda c: c.H >= c.alpha and c.H + c.T1 >= 2 * c.alpha and c.H + 2 * c.T1 >= 2 * c.alpha + c.beta),
    ELSE(4),
], hypothesis=lambda c: 0 < c.W)
_thm("thm52", 7, ("T0", "0", "T+"), [
    X(2, lambda c: 1 < c.alpha <= c.H and 2 * c.alpha <= c.H and 2 * c.alpha + c.beta <= c.H),
    X(3, lambda c: 1 < c.alpha <= c.H and c.z1_one and c.alpha == c.H),
    # first alternative printed as "<=", the same as in the 2-clause
    X(4, lambda c: 1 < c.alpha <= c.H and (2 * c.alpha <= c.H or 2 * c.alpha + c.beta > c.H)
      and not (c.z1_one and c.alpha == c.H)),
    *_t7_upper_tail(lambda c: c.beta >= c.H + c.T3),
], hypothesis=lambda c: 1 < c.W)
_thm("thm53", 7, ("T+", "0", "T+"), [
    X(2, lambda c: 1 < c.alpha <= c.H and 2 * c.alpha <= c.H + c.T1 and 2 * c.alpha + c.beta <= c.H + c.T1),
    # first alternative printed as "<=", the same as in the 2-clause
    X(4, lambda c: 1 < c.alpha <= c.H and (2 * c.alpha <= c.H + c.T1 or 2 * c.alpha + c.beta > c.H + c.T1)),
    *_t7_upper_tail(lambda c: c.beta >= c.H + c.T3 or c.alpha >= c.H + c.T1),
    G(g1, lambda c, g: c.lo(g) <= c.W <= c.beta < c.alpha <= c.hi(g) and c.alpha <= c.F(g) + half(c.T1)
      and 3 * c.alpha <= c.E(g) + 2 * c.T1),
], hypothesis=lambda c: 1 < c.W)

_thm("thm54", 7, ("T0", "T0", "T0"), [
    X(2, lambda c: c.H >= 2 * c.alpha and c.alpha + c.beta <= c.H and 2 * c.alpha + c.beta <= c.H),
    X(3, lambda c: c.z1_one and c.z2_one and c.alpha == c.H),
    ELSE(4),
], hypothesis=lambda c: 0 < c.W)
_ALL_SMALL = [
    X(2, lambda c: c.H >= 2 * c.alpha and c.alpha + c.beta <= c.H and 2 * c.alpha + c.beta <= c.H),
    ELSE(4),
]
_thm("thm55", 7, ("T+", "T0", "T0"), _ALL_SMALL, hypothesis=lambda c: 0 < c.W)
_thm("thm56", 7, ("T0", "T+", "T0"), [
    X(2, lambda c: c.H >= 2 * c.alpha and c.alpha + c.beta <= c.H + c.T2 and 2 * c.alpha + c.beta <= c.H),
    ELSE(4),
], hypothesis=lambda c: 1 < c.W)
_thm("thm57", 7, ("T0", "T0", "T+"), [
    X(2, lambda c: 1 < c.alpha <= c.H and 2 * c.alpha <= c.H and c.alpha + c.beta <= c.H
      and 2 * c.alpha + c.beta <= c.H),
    X(3, lambda c: 1 < c.alpha <= c.H and c.alpha == c.H and c.z1_one and c.z2_one),
    X(4, lambda c: 1 < c.alpha <= c.H and (2 * c.alpha > c.H or c.alpha + c.beta > c.H
                                           or 2 * c.alpha + c.beta > c.H)
      and not (c.z1_one and c.z2_one and c.alpha == c.H)),
    *_t7_upper_tail(),
], hypothesis=lambda c: 1 < c.W)
_thm("thm58", 7, ("T+", "T+", "T0"), _ALL_SMALL, hypothesis=lambda c: 1 < c.W)
_thm("thm59", 7, ("T0", "T+", "T+"), [
    X(2, lambda c: 1 < c.alpha <= c.H and 2 * c.alpha <= c.H and c.alpha + c.beta <= c.H + c.T2
      and 2 * c.alpha + c.beta <= c.H),
    X(4, lambda c: 1 < c.alpha <= c.H and (2 * c.alpha > c.H or c.alpha + c.beta > c.H + c.T2
                                           or 2 * c.alpha + c.beta > c.H)),
    *_t7_upper_tail(),
], hypothesis=lambda c: 1 < c.W)
_thm("thm60", 7, ("T+", "T0", "T+"), [
    X(2, lambda c: 1 < c.alpha <= c.H and 2 * c.alpha <= c.H + c.T1 and c.alpha + c.beta <= c.H
      and 2 * c.alpha + c.beta <= c.H + c.T1),
    X(4, lambda c: 1 < c.alpha <= c.H and (2 * c.alpha > c.H + c.T1 or c.alpha + c.beta > c.H
                                           or 2 * c.alpha + c.beta > c.H + c.T1)),
    *_t7_upper_tail(lambda c: c.beta >= c.H + c.T3),
    G(g1, lambda c, g: c.lo(g) <= c.W <= c.beta < c.alpha <= c.hi(g) and 3 * c.alpha <= c.E(g) + 2 * c.T1
      and c.alpha <= c.H + half(c.T1)),
], hypothesis=lambda c: 1 < c.W)
_thm("thm61", 7, ("T+", "T+", "T+"), [
    X(2, lambda c: 1 < c.alpha <= c.H and 2 * c.alpha <= c.H + c.T1 and c.alpha + c.beta <= c.H + c.T2
      and 2 * c.alpha + c.beta <= c.H + c.T1),
    X(4, lambda c: 1 < c.alpha <= c.H and (2 * c.alpha > c.H + c.T1 or c.alpha + c.beta > c.H + c.T2
                                           or 2 * c.alpha + c.beta > c.H + c.T1)),
    *_t7_upper_tail(lambda c: c.beta >= c.H + c.T3),
    G(g1, lambda c, g: c.lo(g) <= c.W <= c.beta < c.alpha <= c.hi(g) and 3 * c.alpha <= c.E(g) + 2 * c.T1
      and c.alpha <= c.F(g) + half(c.T2) and c.alpha <= c.H + half(c.T1)),
], hypothesis=lambda c: 1 < c.W)

# family 8: only the all-zero pattern and z1-only patterns have published closed forms
_thm("type8a", 8, ("0", "0", "0"), [
    X(2, lambda c: 1 < c.beta < c.alpha < c.H and c.omega == 0),
    X(2, lambda c: _mid(c, c.alpha) and 1 < c.beta <= c.H and c.omega == 0),
    X(4, lambda c: _mid(c, c.alpha) and 1 <= c.omega < c.beta <= c.H),
    X(2, lambda c: c.H + 1 <= c.beta < c.alpha <= c.N - 1 and c.omega == 0),
    X(4, lambda c: c.H + 1 <= c.beta < c.alpha <= c.N - 1 and 1 <= c.omega <= c.H),
    G(g1, lambda c, g: c.lo(g) <= c.omega < c.beta < c.alpha <= c.hi(g)),
])
_thm("type8b", 8, ("T0", "0", "0"), [
    X(2, lambda c: 1 < c.beta < c.alpha < c.H and c.omega == 0),
    X(2, lambda c: 1 <= c.omega < c.beta < c.alpha < c.H and c.beta + c.alpha <= c.H),
    X(4, lambda c: 1 <= c.omega < c.beta < c.alpha < c.H and c.beta + c.alpha > c.H),
    X(2, lambda c: c.alpha == c.H and c.z1_one and c.omega == 0),
    X(4, lambda c: c.alpha == c.H and c.z1_one and c.omega > 0),
    X(2, lambda c: _mid(c, c.alpha) and 1 < c.beta <= c.H and c.omega == 0),
    X(4, lambda c: _mid(c, c.alpha) and 1 <= c.omega < c.beta <= c.H),
    X(2, lambda c: c.H + 1 <= c.beta < c.alpha <= c.N - 1 and c.omega == 0),
    X(4, lambda c: c.H + 1 <= c.beta < c.alpha <= c.N - 1 and 1 <= c.omega <= c.H),
    X(4, lambda c: c.H + 1 <= c.omega < c.beta < c.alpha <= c.N - 1),
], hypothesis=lambda c: 0 < c.beta)
_thm("type8c", 8, ("T+", "0", "0"), [
    X(2, lambda c: 1 < c.beta < c.alpha <= c.H and c.omega == 0),
    X(2, lambda c: 1 <= c.omega < c.beta < c.alpha <= c.H and c.beta + c.alpha <= c.H + c.T1),
    X(4, lambda c: 1 <= c.omega < c.beta < c.alpha <= c.H and c.beta + c.alpha > c.H + c.T1),
    X(2, lambda c: _mid(c, c.alpha) and 1 < c.beta <= c.H and c.omega == 0),
    X(4, lambda c: _mid(c, c.alpha) and 1 <= c.omega < c.beta <= c.H),
    X(2, lambda c: c.H + 1 <= c.beta < c.alpha <= c.N - 1 and c.omega == 0),
    X(4, lambda c: c.H + 1 <= c.beta < c.alpha <= c.N - 1 and 1 <= c.omega <= c.H),
    G(g1, lambda c, g: c.lo(g) <= c.omega < c.beta < c.alpha <= c.hi(g) and c.alpha <= c.F(g) + half(c.T1)
      and 3 * c.alpha <= c.E(g) + 2 * c.T1),
])

THEOREM_INDEX: dict[tuple[int, tuple[str, ...]], Theorem] = {}
for _t in THEOREMS:
    if (_t.type_tag, _t.pattern) in THEOREM_INDEX:
        raise AssertionError(f"two theorems for family {_t.type_tag} pattern {_t.pattern}")
    THEOREM_INDEX[(_t.type_tag, _t.pattern)] = _t


# -- base tables for <(x+1)^l> over the field -------------------------------------------


def _base_table(ell: int, sigma: int, name: str) -> DistanceResult:
    n = 1 << sigma
    if not 0 <= ell <= n:
        raise ValueError(f"exponent {ell} outside [0, {n}]")
    if ell == 0:
        return DistanceResult(EXACT, 1, source=f"{name}/clause1")
    if ell == n:
        return DistanceResult(EXACT, 0, source=f"{name}/clause4")
    if 1 <= ell <= n // 2:
        return DistanceResult(EXACT, 2, source=f"{name}/clause2")
    for g in range(1, sigma):
        if n - 2 ** (sigma - g) + 1 <= ell <= n - 2 ** (sigma - g) + 2 ** (sigma - g - 1):
            return DistanceResult(EXACT, 2 ** (g + 1), source=f"{name}/clause3", gamma=g)
    raise AssertionError(f"exponent {ell} at sigma={sigma} falls in no clause")


def base_hamming(ell: int, sigma: int) -> DistanceResult:
    """Minimum Hamming weight of the ideal <(x+1)^ell> of F_{2^m}[x]/(x^(2^sigma) - 1)."""
    return _base_table(ell, sigma, "thm3")


def base_lee(ell: int, sigma: int) -> DistanceResult:
    """Minimum Lee weight of <(x+1)^ell>; the table coincides with the Hamming one."""
    return _base_table(ell, sigma, "thm4")


def base_gap_audit(max_sigma: int = 5) -> list[tuple[int, int, int]]:
    """(sigma, ell, matches) for every exponent not matched by exactly one clause."""
    bad = []
    for sigma in range(1, max_sigma + 1):
        n = 1 << sigma
        for ell in range(0, n + 1):
            hits = (ell == 0) + (ell == n) + (1 <= ell <= n // 2)
            hits += sum(1 for g in range(1, sigma)
                        if n - 2 ** (sigma - g) + 1 <= ell <= n - 2 ** (sigma - g) + 2 ** (sigma - g - 1))
            if hits != 1:
                bad.append((sigma, ell, hits))
    return bad


_GAPS = base_gap_audit()
if _GAPS:
    raise AssertionError(f"base distance table does not tile the exponent range: {_GAPS[:3]}")


# -- dispatch --------------------------------------------------------------------------

REDUCTION = {3: ("thm6", "L"), 4: ("thm10", "mu"), 5: ("thm14", "V"), 6: ("thm24", "omega"),
             7: ("thm34", "W"), 8: ("thm62", "omega"), 2: ("thm5", "ell")}


def reduction_exponent(spec: CodeSpec, derived: DerivedParams | None = None) -> int:
    derived = derived or smallest_params_formula(spec)
    name = REDUCTION[spec.type_tag][1]
    return getattr(derived, name) if name in ("L", "V", "W") else spec.p(name)


def hamming_distance(spec: CodeSpec) -> DistanceResult:
    check(spec)
    if spec.type_tag == 1:
        value = spec.p("ideal")
        return DistanceResult(EXACT, value, source="type1")
    red_name = REDUCTION[spec.type_tag][0]
    base = base_hamming(reduction_exponent(spec), spec.sigma)
    return DistanceResult(EXACT, base.value, source=f"{red_name}+{base.source}", gamma=base.gamma)


def lee_bounds_sandwich(spec: CodeSpec) -> DistanceResult:
    """[d_H(<(x+1)^e>), 2 d_H(<(x+1)^e>)] for the family's reduction exponent e."""
    check(spec)
    if spec.type_tag == 1:
        v = spec.p("ideal")
        return DistanceResult(BOUNDS, lo=v, hi=2 * v, source="type1/sandwich")
    d = base_hamming(reduction_exponent(spec), spec.sigma)
    return DistanceResult(BOUNDS, lo=d.value, hi=2 * d.value, source=f"{REDUCTION[spec.type_tag][0]}/sandwich",
                          gamma=d.gamma)


@dataclass
class ClauseMatch:
    theorem: str
    clause: int
    gamma: int | None
    result: DistanceResult


def theorem_for(spec: CodeSpec) -> Theorem | None:
    return THEOREM_INDEX.get((spec.type_tag, pattern_of(spec)))


def clause_matches(spec: CodeSpec, theorem: Theorem | None = None) -> list[ClauseMatch]:
    """Every clause of the governing theorem whose guard holds, in listed order."""
    thm = theorem or theorem_for(spec)
    if thm is None:
        return []
    c = Vars(spec)
    if thm.hypothesis is not None and not thm.hypothesis(c):
        return []
    matches: list[ClauseMatch] = []
    for idx, clause in enumerate(thm.clauses, start=1):
        source = f"{thm.name}/clause{idx}"
        if clause.otherwise:
            continue
        if clause.per_gamma:
            for g in range(1, spec.sigma):
                if clause.guard(c, g):
                    matches.append(ClauseMatch(thm.name, idx, g, _result(clause, source, g)))
        elif clause.guard(c):
            matches.append(ClauseMatch(thm.name, idx, None, _result(clause, source, None)))
    if not matches:
        for idx, clause in enumerate(thm.clauses, start=1):
            if clause.otherwise:
                matches.append(ClauseMatch(thm.name, idx, None, _result(clause, f"{thm.name}/clause{idx}", None)))
                break
    return matches


def _result(clause: Clause, source: str, g: int | None) -> DistanceResult:
    if clause.bounds is not None:
        lo, hi = clause.bounds
        return DistanceResult(BOUNDS, lo=lo(g), hi=hi(g), source=source, gamma=g)
    value = clause.value(g) if callable(clause.value) else clause.value
    return DistanceResult(EXACT, value, source=source, gamma=g)


def lee_distance(spec: CodeSpec) -> DistanceResult:
    """Closed-form Lee distance, an interval, or not_covered (with the sandwich envelope)."""
    check(spec)
    if spec.type_tag == 1:
        v = spec.p("ideal")
        return DistanceResult(EXACT, v, source="type1")
    thm = theorem_for(spec)
    env = lee_bounds_sandwich(spec)
    if thm is None:
        return DistanceResult(NOT_COVERED, lo=env.lo, hi=env.hi, source=f"type{spec.type_tag}/uncovered-pattern")
    c = Vars(spec)
    if thm.hypothesis is not None and not thm.hypothesis(c):
        return DistanceResult(NOT_COVERED, lo=env.lo, hi=env.hi, source=f"{thm.name}/hypothesis")
    matches = clause_matches(spec, thm)
    if not matches:
        return DistanceResult(NOT_COVERED, lo=env.lo, hi=env.hi, source=f"{thm.name}/no-clause")
    # overlapping clauses are kept as anomalies; the first listed one decides
    first = matches[0].result
    others = tuple(m.result.source + (f"@gamma={m.gamma}" if m.gamma is not None else "") for m in matches[1:])
    return DistanceResult(first.kind, first.value, first.lo, first.hi, first.source, first.gamma, others)


def clause_audit(specs: Sequence[CodeSpec]) -> dict[str, list[tuple[str, ...]]]:
    """Specs on which more than one clause fires, keyed by the theorem name."""
    out: dict[str, list[tuple[str, ...]]] = {}
    for spec in specs:
        matches = clause_matches(spec)
        if len(matches) > 1:
            out.setdefault(matches[0].theorem, []).append(
                tuple(m.result.source for m in matches))
    return out
