"""The chain ring F_{2^m}[u]/(u^3): elements a + u*b + u^2*c, units, Lee weight.

The Lee weight of a + ub + u^2c is the TOB weight of the triple
(a+b+c, b+c, b); :func:`gray_map` writes that triple out as 3m bits in
the fixed block order (a+b+c | b+c | b), zeta_1 first within each block.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .gf2m import FieldCtx, FieldElement, FieldError, TraceOrthogonalBasis


class RingError(ArithmeticError):
    """Raised for operations that need a unit but got a non-unit."""


def ring_mul_bits(ctx: FieldCtx, x: tuple[int, int, int], y: tuple[int, int, int]) -> tuple[int, int, int]:
    a1, b1, c1 = x
    a2, b2, c2 = y
    mul = ctx.mul
    return (
        mul(a1, a2),
        mul(a1, b2) ^ mul(b1, a2),
        mul(a1, c2) ^ mul(b1, b2) ^ mul(c1, a2),
    )


def gray_bits(a: int, b: int, c: int, basis: TraceOrthogonalBasis) -> int:
    """3m-bit Gray image of a + ub + u^2c packed little-endian."""
    m = basis.ctx.m
    table = basis.coord_table
    if table is not None:
        return table[a ^ b ^ c] | (table[b ^ c] << m) | (table[b] << (2 * m))
    co = basis.coords
    return co(a ^ b ^ c) | (co(b ^ c) << m) | (co(b) << (2 * m))


def lee_weight_bits(a: int, b: int, c: int, basis: TraceOrthogonalBasis) -> int:
    return gray_bits(a, b, c, basis).bit_count()


@dataclass(frozen=True)
class RingElement:
    a: FieldElement
    b: FieldElement
    c: FieldElement

    def __post_init__(self):
        if not (self.a.ctx == self.b.ctx == self.c.ctx):
            raise FieldError("ring element components live in different fields")

    @classmethod
    def from_bits(cls, ctx: FieldCtx, a: int, b: int = 0, c: int = 0) -> "RingElement":
        return cls(FieldElement(a, ctx), FieldElement(b, ctx), FieldElement(c, ctx))

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "RingElement":
        return cls.from_bits(ctx, 0)

    @classmethod
    def one(cls, ctx: FieldCtx) -> "RingElement":
        return cls.from_bits(ctx, 1)

    @classmethod
    def u(cls, ctx: FieldCtx) -> "RingElement":
        return cls.from_bits(ctx, 0, 1)

    @property
    def ctx(self) -> FieldCtx:
        return self.a.ctx

    @property
    def bits(self) -> tuple[int, int, int]:
        return (self.a.bits, self.b.bits, self.c.bits)

    def __add__(self, other: "RingElement") -> "RingElement":
        return RingElement(self.a + other.a, self.b + other.b, self.c + other.c)

    __sub__ = __add__

    def __mul__(self, other: "RingElement") -> "RingElement":
        return ring_mul(self, other)

    def __bool__(self) -> bool:
        return any(self.bits)

    def is_unit(self) -> bool:
        return bool(self.a)

    def inverse(self) -> "RingElement":
        return ring_inverse(self)

    def __str__(self) -> str:
        return format_ring(self)


def ring_mul(x: RingElement, y: RingElement) -> RingElement:
    if x.ctx != y.ctx:
        raise FieldError("field context mismatch")
    return RingElement.from_bits(x.ctx, *ring_mul_bits(x.ctx, x.bits, y.bits))


def ring_inverse(x: RingElement) -> RingElement:
    """Inverse of a unit: a^{-1} (1 + n)^{-1} with n = u b/a + u^2 c/a nilpotent."""
    if not x.is_unit():
        raise RingError(f"{x} lies in the maximal ideal <u> and has no inverse")
    ctx = x.ctx
    ainv = ctx.inv(x.a.bits)
    nil = (0, ctx.mul(x.b.bits, ainv), ctx.mul(x.c.bits, ainv))
    nil2 = ring_mul_bits(ctx, nil, nil)
    # (1+n)^{-1} = 1 - n + n^2 in characteristic 2, n^3 = 0
    series = (1, nil[1] ^ nil2[1], nil[2] ^ nil2[2])
    return RingElement.from_bits(ctx, *ring_mul_bits(ctx, (ainv, 0, 0), series))


def lee_weight_ring(x: RingElement, basis: TraceOrthogonalBasis) -> int:
    if x.ctx != basis.ctx:
        raise FieldError("field context mismatch")
    return lee_weight_bits(*x.bits, basis)


def gray_map(x: RingElement, basis: TraceOrthogonalBasis) -> tuple[int, ...]:
    if x.ctx != basis.ctx:
        raise FieldError("field context mismatch")
    packed = gray_bits(*x.bits, basis)
    return tuple((packed >> i) & 1 for i in range(3 * basis.ctx.m))


def format_ring(x: RingElement) -> str:
    return f"{x.a.bits:#x}+u*{x.b.bits:#x}+u^2*{x.c.bits:#x}"


_TERM = re.compile(r"^(?:(u\^2|u)\*)?(0x[0-9a-fA-F]+|[0-9]+)$|^(u\^2|u)$")


def parse_ring(text: str, ctx: FieldCtx) -> RingElement:
    """Parse "a+u*b+u^2*c"; terms may be omitted or reordered, e.g. "u^2*0x1"."""
    parts = [0, 0, 0]
    compact = text.replace(" ", "")
    if not compact:
        raise FieldError("empty ring element")
    for term in compact.split("+"):
        match = _TERM.match(term)
        if not match:
            raise FieldError(f"cannot parse ring term {term!r} in {text!r}")
        if match.group(3):
            power, value = match.group(3), 1
        else:
            power, value = match.group(1), int(match.group(2), 0)
        slot = {None: 0, "u": 1, "u^2": 2}[power]
        parts[slot] ^= value
    return RingElement.from_bits(ctx, *parts)
