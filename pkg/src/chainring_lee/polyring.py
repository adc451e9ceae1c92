"""The ambient ring S = R[x]/(x^n - 1), n = 2^sigma, with R = F_{2^m}[u]/(u^3).

A :class:`PolyS` stores its power-basis coefficients as three layers of
field integers, ``a + u*b + u^2*c``, each a tuple of length n.  The layered
form makes multiplication by u a shift of layers and makes the change to
the (x+1)-adic basis a per-layer F_2 transform.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .chain_ring import RingElement, gray_bits, lee_weight_bits, parse_ring
from .gf2m import FieldCtx, FieldError, TraceOrthogonalBasis

MAX_SIGMA = 5


class PolyError(ValueError):
    """Length or field mismatch between polynomials in S."""


def check_length(n: int) -> int:
    if n < 2 or n & (n - 1):
        raise PolyError(f"code length must be a power of two >= 2, got {n}")
    if n > 1 << MAX_SIGMA:
        raise PolyError(f"code length {n} exceeds 2^{MAX_SIGMA}")
    return n


def binomial_parity_transform(layer: Sequence[int]) -> list[int]:
    """Change a layer between the power basis and the (x+1)-adic basis.

    (x+1)^k = sum_j C(k, j) x^j and C(k, j) is odd iff j is a bit-subset of k,
    so both directions are the same superset-XOR butterfly (an involution).
    """
    out = list(layer)
    n = len(out)
    h = 1
    while h < n:
        for k in range(n):
            if k & h:
                out[k ^ h] ^= out[k]
        h <<= 1
    return out


def _conv(ctx: FieldCtx, f: Sequence[int], g: Sequence[int]) -> list[int]:
    n = len(f)
    out = [0] * n
    mul = ctx.mul
    nz_g = [(j, gj) for j, gj in enumerate(g) if gj]
    for i, fi in enumerate(f):
        if not fi:
            continue
        for j, gj in nz_g:
            out[(i + j) % n] ^= mul(fi, gj)
    return out


def _xor(f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    return tuple(x ^ y for x, y in zip(f, g))


@dataclass(frozen=True)
class PolyS:
    ctx: FieldCtx
    n: int
    a: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self):
        check_length(self.n)
        q = self.ctx.order
        for name in "abc":
            layer = getattr(self, name)
            if len(layer) != self.n:
                raise PolyError(f"layer {name} has {len(layer)} coefficients, expected {self.n}")
            if any(not 0 <= v < q for v in layer):
                raise FieldError(f"layer {name} holds a value outside GF(2^{self.ctx.m})")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ctx: FieldCtx, n: int) -> "PolyS":
        z = (0,) * n
        return cls(ctx, n, z, z, z)

    @classmethod
    def from_layers(cls, ctx: FieldCtx, a: Iterable[int], b: Iterable[int], c: Iterable[int]) -> "PolyS":
        a, b, c = tuple(a), tuple(b), tuple(c)
        return cls(ctx, len(a), a, b, c)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[RingElement]) -> "PolyS":
        if not coeffs:
            raise PolyError("need at least one coefficient")
        ctx = coeffs[0].ctx
        return cls.from_layers(ctx, (r.a.bits for r in coeffs), (r.b.bits for r in coeffs),
                               (r.c.bits for r in coeffs))

    @classmethod
    def monomial(cls, ctx: FieldCtx, n: int, k: int, coeff: tuple[int, int, int] = (1, 0, 0)) -> "PolyS":
        layers = [[0] * n for _ in range(3)]
        for layer, v in zip(layers, coeff):
            layer[k % n] = v
        return cls.from_layers(ctx, *layers)

    @classmethod
    def constant(cls, ctx: FieldCtx, n: int, coeff: tuple[int, int, int] = (1, 0, 0)) -> "PolyS":
        return cls.monomial(ctx, n, 0, coeff)

    @classmethod
    def xp1_power(cls, ctx: FieldCtx, n: int, k: int, coeff: tuple[int, int, int] = (1, 0, 0)) -> "PolyS":
        """coeff * (x+1)^k; zero once k >= n since (x+1)^n = x^n + 1 = 0."""
        if k >= n:
            return cls.zero(ctx, n)
        layers = [[0] * n for _ in range(3)]
        for layer, v in zip(layers, coeff):
            layer[k] = v
        return from_xp1(XPlusOneCoeffs(ctx, n, *map(tuple, layers)))

    # -- views ----------------------------------------------------------------

    @property
    def coeffs(self) -> list[RingElement]:
        return [RingElement.from_bits(self.ctx, *t) for t in zip(self.a, self.b, self.c)]

    @property
    def layers(self) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        return (self.a, self.b, self.c)

    def is_zero(self) -> bool:
        return not (any(self.a) or any(self.b) or any(self.c))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _same_space(self, other: "PolyS") -> None:
        if not isinstance(other, PolyS):
            raise TypeError(f"expected PolyS, got {type(other).__name__}")
        if other.n != self.n or other.ctx != self.ctx:
            raise PolyError("polynomials live in different rings S")

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "PolyS") -> "PolyS":
        self._same_space(other)
        return PolyS(self.ctx, self.n, _xor(self.a, other.a), _xor(self.b, other.b), _xor(self.c, other.c))

    __sub__ = __add__

    def __mul__(self, other: "PolyS") -> "PolyS":
        return poly_mul(self, other)

    def shift(self, k: int) -> "PolyS":
        """Multiply by x^k (a cyclic rotation)."""
        k %= self.n
        rot = lambda layer: layer[-k:] + layer[:-k] if k else layer  # noqa: E731
        return PolyS(self.ctx, self.n, rot(self.a), rot(self.b), rot(self.c))

    def mul_u(self) -> "PolyS":
        z = (0,) * self.n
        return PolyS(self.ctx, self.n, z, self.a, self.b)

    def mul_u2(self) -> "PolyS":
        z = (0,) * self.n
        return PolyS(self.ctx, self.n, z, z, self.a)

    def scale(self, r: int) -> "PolyS":
        """Multiply by a field scalar r in GF(2^m)."""
        mul = self.ctx.mul
        return PolyS(self.ctx, self.n, *(tuple(mul(r, v) for v in layer) for layer in self.layers))

    def mod_u2(self) -> "PolyS":
        """Drop the u^2 layer (image in S / u^2 S)."""
        return PolyS(self.ctx, self.n, self.a, self.b, (0,) * self.n)

    @cached_property
    def xp1(self) -> "XPlusOneCoeffs":
        return to_xp1(self)

    def __str__(self) -> str:
        return format_poly(self)


def poly_mul(f: PolyS, g: PolyS) -> PolyS:
    """Cyclic convolution in S."""
    f._same_space(g)
    ctx = f.ctx
    A = _conv(ctx, f.a, g.a)
    B = _xor(_conv(ctx, f.a, g.b), _conv(ctx, f.b, g.a))
    C = _xor(_xor(_conv(ctx, f.a, g.c), _conv(ctx, f.b, g.b)), _conv(ctx, f.c, g.a))
    return PolyS(ctx, f.n, tuple(A), B, C)


@dataclass(frozen=True)
class XPlusOneCoeffs:
    """Coefficients of f in the basis {(x+1)^k : 0 <= k < n}, layered like PolyS."""

    ctx: FieldCtx
    n: int
    a: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]

    @property
    def coeffs(self) -> list[RingElement]:
        return [RingElement.from_bits(self.ctx, *t) for t in zip(self.a, self.b, self.c)]


def to_xp1(f: PolyS) -> XPlusOneCoeffs:
    return XPlusOneCoeffs(f.ctx, f.n, *(tuple(binomial_parity_transform(layer)) for layer in f.layers))


def from_xp1(g: XPlusOneCoeffs) -> PolyS:
    return PolyS(g.ctx, g.n, *(tuple(binomial_parity_transform(layer)) for layer in (g.a, g.b, g.c)))


def is_unit_in_S(f: PolyS) -> bool:
    """S is local with maximal ideal <x-1, u>: f is a unit iff sum(a_i) != 0."""
    acc = 0
    for v in f.a:
        acc ^= v
    return acc != 0


def lee_weight_poly(f: PolyS, basis: TraceOrthogonalBasis) -> int:
    if f.ctx != basis.ctx:
        raise FieldError("field context mismatch")
    return sum(lee_weight_bits(a, b, c, basis) for a, b, c in zip(f.a, f.b, f.c))


def hamming_weight_poly(f: PolyS) -> int:
    return sum(1 for t in zip(f.a, f.b, f.c) if any(t))


def gray_image(f: PolyS, basis: TraceOrthogonalBasis) -> int:
    """Coordinate-major Gray image: coefficient i occupies bits [3m*i, 3m*(i+1))."""
    width = 3 * f.ctx.m
    out = 0
    for i, (a, b, c) in enumerate(zip(f.a, f.b, f.c)):
        out |= gray_bits(a, b, c, basis) << (width * i)
    return out


def gray_preimage(bits: int, ctx: FieldCtx, n: int, basis: TraceOrthogonalBasis) -> PolyS:
    """Invert :func:`gray_image` (the map is an F_2-isomorphism R^n -> F_2^{3mn})."""
    m = ctx.m
    width = 3 * m
    block_mask = (1 << m) - 1
    A, B, C = [], [], []
    for i in range(n):
        blk = bits >> (width * i)
        s = _from_coords(blk & block_mask, basis)
        t = _from_coords((blk >> m) & block_mask, basis)
        b = _from_coords((blk >> (2 * m)) & block_mask, basis)
        # s = a+b+c, t = b+c
        c = t ^ b
        a = s ^ t
        A.append(a)
        B.append(b)
        C.append(c)
    return PolyS(ctx, n, tuple(A), tuple(B), tuple(C))


def _from_coords(packed: int, basis: TraceOrthogonalBasis) -> int:
    acc = 0
    for i, z in enumerate(basis.elems):
        if (packed >> i) & 1:
            acc ^= z
    return acc


# -- text and JSON forms -------------------------------------------------------


def format_poly(f: PolyS) -> str:
    terms = []
    for k, (a, b, c) in enumerate(zip(f.a, f.b, f.c)):
        if a or b or c:
            terms.append(f"({a:#x}+u*{b:#x}+u^2*{c:#x})*x^{k}")
    return " + ".join(terms) if terms else "0"


def parse_poly(text: str, ctx: FieldCtx, n: int) -> PolyS:
    """Parse "coeff*x^k + ..." where coeff uses ring syntax, optionally parenthesised."""
    layers = [[0] * n for _ in range(3)]
    body = text.strip()
    if body == "0":
        return PolyS.zero(ctx, n)
    depth, start, terms = 0, 0, []
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "+" and depth == 0:
            terms.append(body[start:i])
            start = i + 1
    terms.append(body[start:])
    for term in terms:
        term = term.strip()
        if "*x^" in term:
            coeff_txt, _, k_txt = term.rpartition("*x^")
        elif term.endswith("*x"):
            coeff_txt, k_txt = term[:-2], "1"
        else:
            coeff_txt, k_txt = term, "0"
        coeff_txt = coeff_txt.strip()
        if coeff_txt.startswith("(") and coeff_txt.endswith(")"):
            coeff_txt = coeff_txt[1:-1]
        k = int(k_txt)
        if not 0 <= k < n:
            raise PolyError(f"exponent {k} outside [0, {n})")
        r = parse_ring(coeff_txt, ctx)
        for layer, v in zip(layers, r.bits):
            layer[k] ^= v
    return PolyS.from_layers(ctx, *layers)


def poly_to_json(f: PolyS) -> list[list[str]]:
    """Array of [a, b, c] hex triples, one per power-basis coefficient."""
    return [[f"{a:#x}", f"{b:#x}", f"{c:#x}"] for a, b, c in zip(f.a, f.b, f.c)]


def poly_from_json(data: Sequence[Sequence[str]], ctx: FieldCtx) -> PolyS:
    triples = [tuple(int(v, 16) if isinstance(v, str) else int(v) for v in t) for t in data]
    if any(len(t) != 3 for t in triples):
        raise PolyError("each coefficient must be an [a, b, c] triple")
    return PolyS.from_layers(ctx, *zip(*triples))


def poly_dumps(f: PolyS) -> str:
    return json.dumps(poly_to_json(f))
