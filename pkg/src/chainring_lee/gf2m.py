"""Arithmetic in GF(2^m), the absolute trace, and trace-orthogonal bases.

Elements are plain integers whose bits are coefficients in the polynomial
basis; :class:`FieldElement` wraps one with its :class:`FieldCtx` for
callers that want operator syntax.  Hot loops elsewhere in the package use
the integer-level methods on :class:`FieldCtx` directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

MAX_M = 16

# Lexicographically least irreducible polynomial over F_2 of each degree,
# top bit included.  Regenerated and checked by tests/test_gf2m.py.
DEFAULT_MODULI = {
    1: 0b10,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011011,
    9: 0b1000000011,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000000001001,
    13: 0b10000000011011,
    14: 0b100000000100001,
    15: 0b1000000000000011,
    16: 0b10000000000101011,
}


class FieldError(ValueError):
    """Bad field parameters or mixing elements of different fields."""


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bit polynomials."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def poly_mod(a: int, mod: int) -> int:
    dm = mod.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= mod << (a.bit_length() - 1 - dm)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree 1..deg/2."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(2, 1 << (deg // 2 + 1)):
        if poly_mod(poly, d) == 0:
            return False
    return True


def least_irreducible(m: int) -> int:
    for cand in range(1 << m, 1 << (m + 1)):
        if is_irreducible(cand):
            return cand
    raise AssertionError("unreachable: irreducibles exist in every degree")


@dataclass(frozen=True)
class FieldCtx:
    """GF(2^m) realised as F_2[x]/(modulus)."""

    m: int
    modulus: int = 0

    def __post_init__(self):
        if not isinstance(self.m, int) or not 1 <= self.m <= MAX_M:
            raise FieldError(f"m must be an integer in [1, {MAX_M}], got {self.m!r}")
        if self.modulus == 0:
            object.__setattr__(self, "modulus", DEFAULT_MODULI[self.m])
        if self.modulus.bit_length() != self.m + 1:
            raise FieldError(f"modulus {self.modulus:#b} does not have degree {self.m}")
        if not is_irreducible(self.modulus):
            raise FieldError(f"modulus {self.modulus:#b} is reducible over F_2")

    @property
    def order(self) -> int:
        return 1 << self.m

    @cached_property
    def _mul_table(self):
        if self.m > 6:
            return None
        q = self.order
        return [[poly_mod(clmul(a, b), self.modulus) for b in range(q)] for a in range(q)]

    def mul(self, a: int, b: int) -> int:
        table = self._mul_table
        if table is not None:
            return table[a][b]
        return poly_mod(clmul(a, b), self.modulus)

    def pow(self, a: int, e: int) -> int:
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(2^m)")
        return self.pow(a, self.order - 2)

    def trace(self, a: int) -> int:
        """Tr(a) = a + a^2 + ... + a^(2^(m-1)), returned as 0 or 1."""
        acc, conj = 0, a
        for _ in range(self.m):
            acc ^= conj
            conj = self.mul(conj, conj)
        if acc not in (0, 1):
            raise AssertionError(f"trace left the prime field: {acc:#x}")
        return acc

    @cached_property
    def trace_mask(self) -> int:
        """Bit i is Tr(x^i); Tr(a) is the parity of a & trace_mask."""
        return sum(self.trace(1 << i) << i for i in range(self.m))

    def functional_mask(self, z: int) -> int:
        """Mask of the F_2-linear map a -> Tr(a*z)."""
        return sum(self.trace(self.mul(1 << i, z)) << i for i in range(self.m))

    def elem(self, bits: int) -> "FieldElement":
        return FieldElement(bits, self)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(b, self) for b in range(self.order)]

    def modulus_str(self) -> str:
        return format(self.modulus, "b")


@lru_cache(maxsize=None)
def field(m: int) -> FieldCtx:
    """The package-default field context for degree m."""
    return FieldCtx(m)


@dataclass(frozen=True)
class FieldElement:
    bits: int
    ctx: FieldCtx = dc_field(repr=False)

    def __post_init__(self):
        if not 0 <= self.bits < self.ctx.order:
            raise FieldError(f"{self.bits:#x} is not an element of GF(2^{self.ctx.m})")

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise FieldError("field context mismatch")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.bits ^ other.bits, self.ctx)

    __sub__ = __add__

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.ctx.mul(self.bits, other.bits), self.ctx)

    def __pow__(self, e: int) -> "FieldElement":
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.ctx.pow(self.bits, e), self.ctx)

    def __neg__(self) -> "FieldElement":
        return self

    def __bool__(self) -> bool:
        return self.bits != 0

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx.inv(self.bits), self.ctx)

    def __str__(self) -> str:
        return format_element(self)


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def trace(x: FieldElement) -> FieldElement:
    return FieldElement(x.ctx.trace(x.bits), x.ctx)


def format_element(x: FieldElement) -> str:
    return f"{x.bits:#x}"


def parse_element(text: str, ctx: FieldCtx) -> FieldElement:
    try:
        bits = int(text.strip(), 16)
    except ValueError:
        raise FieldError(f"not a hex field element: {text!r}") from None
    return FieldElement(bits, ctx)


def _parity(v: int) -> int:
    return v.bit_count() & 1


def _in_span(vec: int, rows: Iterable[int]) -> bool:
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    for b in basis:
        vec = min(vec, vec ^ b)
    return vec == 0


@dataclass(frozen=True)
class TraceOrthogonalBasis:
    """A basis zeta_1..zeta_m of GF(2^m) over F_2 with Tr(zeta_i zeta_j) = delta_ij."""

    elems: tuple[int, ...]
    ctx: FieldCtx = dc_field(repr=False)

    def __post_init__(self):
        ctx, m = self.ctx, self.ctx.m
        if len(self.elems) != m:
            raise FieldError(f"a basis of GF(2^{m}) needs {m} elements, got {len(self.elems)}")
        gram = gram_matrix(self.elems, ctx)
        for i in range(m):
            for j in range(m):
                if gram[i][j] != (i == j):
                    raise FieldError(f"Tr(z{i + 1}*z{j + 1}) = {gram[i][j]}, basis is not trace-orthogonal")
        # orthonormality already forces independence; the masks are what tob_coords uses
        object.__setattr__(self, "_masks", tuple(ctx.functional_mask(z) for z in self.elems))

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks  # type: ignore[attr-defined]

    def field_elements(self) -> list[FieldElement]:
        return [FieldElement(z, self.ctx) for z in self.elems]

    def coords(self, bits: int) -> int:
        """TOB coordinates of an integer element, packed with zeta_1 in bit 0."""
        out = 0
        for i, mask in enumerate(self.masks):
            out |= _parity(bits & mask) << i
        return out

    @cached_property
    def coord_table(self) -> tuple[int, ...] | None:
        if self.ctx.m > 12:
            return None
        return tuple(self.coords(b) for b in range(self.ctx.order))

    def __str__(self) -> str:
        return "{" + ", ".join(f"{z:#x}" for z in self.elems) + "}"


def gram_matrix(elems: Sequence[int], ctx: FieldCtx) -> list[list[int]]:
    return [[ctx.trace(ctx.mul(a, b)) for b in elems] for a in elems]


@lru_cache(maxsize=None)
def find_tob(ctx: FieldCtx) -> TraceOrthogonalBasis:
    """Deterministic trace-orthogonal basis of ``ctx``.

    Greedy over elements in increasing order: a candidate must have trace 1,
    be trace-orthogonal to everything already chosen, and leave a complement
    on which the trace form is still non-alternating (otherwise the next step
    could never find a trace-1 vector).
    """
    m = ctx.m
    chosen: list[int] = []
    masks: list[int] = []
    tmask = ctx.trace_mask
    for step in range(m):
        for cand in range(1, ctx.order):
            if _parity(cand & tmask) != 1:
                continue
            if any(_parity(cand & mk) for mk in masks):
                continue
            new_masks = masks + [ctx.functional_mask(cand)]
            if step < m - 1 and _in_span(tmask, new_masks):
                continue
            chosen.append(cand)
            masks = new_masks
            break
        else:
            raise RuntimeError(f"trace-orthogonal basis search failed at step {step} for m={m}")
    return TraceOrthogonalBasis(tuple(chosen), ctx)


def all_tobs(ctx: FieldCtx, limit: int | None = None) -> list[TraceOrthogonalBasis]:
    """Every trace-orthogonal basis as an ordered tuple with increasing elements.

    Exhaustive, so only sensible for small m.
    """
    out: list[TraceOrthogonalBasis] = []
    ones = [z for z in range(1, ctx.order) if ctx.trace(ctx.mul(z, z)) == 1]

    def extend(prefix: list[int], start: int) -> None:
        if limit is not None and len(out) >= limit:
            return
        if len(prefix) == ctx.m:
            out.append(TraceOrthogonalBasis(tuple(prefix), ctx))
            return
        for i in range(start, len(ones)):
            z = ones[i]
            if all(ctx.trace(ctx.mul(z, p)) == 0 for p in prefix):
                extend(prefix + [z], i + 1)

    extend([], 0)
    return out


def tob_coords(x: FieldElement, basis: TraceOrthogonalBasis) -> tuple[int, ...]:
    if x.ctx != basis.ctx:
        raise FieldError("field context mismatch")
    packed = basis.coords(x.bits)
    return tuple((packed >> i) & 1 for i in range(x.ctx.m))


def from_tob_coords(coords: Sequence[int], basis: TraceOrthogonalBasis) -> FieldElement:
    acc = 0
    for c, z in zip(coords, basis.elems, strict=True):
        if c:
            acc ^= z
    return FieldElement(acc, basis.ctx)


def lee_weight_field(x: FieldElement, basis: TraceOrthogonalBasis) -> int:
    """Number of nonzero TOB coordinates of x."""
    if x.ctx != basis.ctx:
        raise FieldError("field context mismatch")
    return basis.coords(x.bits).bit_count()
