"""Ground truth by brute force over the binary Gray image of a code.

A code is turned into an F_2-linear space of bit-vectors of length 3mn
(coordinate-major: coordinate i owns bits [3m*i, 3m*(i+1)), holding the TOB
coordinates of a+b+c, b+c, b).  Minimum weights come from walking all
2^k - 1 nonzero codewords in reflected Gray-code order with one XOR per
step; the walk is compiled with numba and split over contiguous segments.
"""

from __future__ import annotations

import json
from itertools import combinations
from math import comb
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import numpy as np
from numba import config as numba_config, njit, prange

from .codespec import CodeSpec, DerivedParams, check, generators
from .gf2m import FieldCtx, TraceOrthogonalBasis, field, find_tob
from .polyring import PolyS, gray_image, gray_preimage, hamming_weight_poly, lee_weight_poly

MAX_K = 26
MAX_BITS = 96
# candidate vectors the low-weight search may test before giving up
LOW_WEIGHT_BUDGET = 1 << 18
# from this dimension on, codewords of Lee weight <= 2 are looked for before enumerating
PREFILTER_K = 20
LAYOUT_TAG = "coord-major:a+b+c|b+c|b"

# the system TBB is too old for numba and only produces a warning; skip it
numba_config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]


class CapacityError(RuntimeError):
    """The code is too large for exhaustive enumeration."""

    def __init__(self, message: str, k: int | None = None):
        super().__init__(message)
        self.k = k


class LayoutError(ValueError):
    """A vector or span was built for a different (sigma, m, TOB)."""


@dataclass(frozen=True)
class Layout:
    sigma: int
    basis: TraceOrthogonalBasis

    @property
    def ctx(self) -> FieldCtx:
        return self.basis.ctx

    @property
    def m(self) -> int:
        return self.basis.ctx.m

    @property
    def n(self) -> int:
        return 1 << self.sigma

    @property
    def width(self) -> int:
        return 3 * self.m

    @property
    def nbits(self) -> int:
        return self.width * self.n


def _reduce(vec: int, pivots: dict[int, int]) -> int:
    while vec:
        top = vec.bit_length() - 1
        row = pivots.get(top)
        if row is None:
            return vec
        vec ^= row
    return 0


@dataclass
class SpanBuilder:
    """Incremental GF(2) elimination keyed by leading bit."""

    pivots: dict[int, int] = dc_field(default_factory=dict)

    def add(self, vec: int) -> bool:
        vec = _reduce(vec, self.pivots)
        if not vec:
            return False
        self.pivots[vec.bit_length() - 1] = vec
        return True

    def rref(self) -> tuple[int, ...]:
        rows = dict(self.pivots)
        order = sorted(rows)
        # clear every pivot column from the rows above it
        for p in order:
            r = rows[p]
            for q in order:
                if q != p and (rows[q] >> p) & 1:
                    rows[q] ^= r
        return tuple(rows[p] for p in sorted(rows, reverse=True))


@dataclass(frozen=True)
class BinarySpan:
    layout: Layout
    rows: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def nbits(self) -> int:
        return self.layout.nbits

    def _pivots(self) -> dict[int, int]:
        cached = self.__dict__.get("_pivot_cache")
        if cached is None:
            cached = {r.bit_length() - 1: r for r in self.rows}
            object.__setattr__(self, "_pivot_cache", cached)
        return cached

    def contains_bits(self, vec: int) -> bool:
        return _reduce(vec, self._pivots()) == 0

    def __eq__(self, other) -> bool:
        return isinstance(other, BinarySpan) and self.layout == other.layout and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.layout, self.rows))


def _check_budget(layout: Layout, max_k: int = MAX_K) -> None:
    if layout.nbits > MAX_BITS:
        raise CapacityError(f"Gray image has {layout.nbits} bits, limit is {MAX_BITS}")


def _module_spanning_set(gens: Sequence[PolyS]) -> Iterable[PolyS]:
    """F_2-spanning set of the ideal: field-basis scalars times u^e x^i g."""
    for g in gens:
        ctx, n = g.ctx, g.n
        for j in range(ctx.m):
            sg = g.scale(1 << j)
            for e in range(3):
                for i in range(n):
                    yield sg.shift(i)
                sg = sg.mul_u()


def span_of(gens: Sequence[PolyS], layout: Layout, max_k: int = MAX_K, verify: bool = True) -> BinarySpan:
    """Binary span of the ideal generated by ``gens``."""
    _check_budget(layout, max_k)
    builder = SpanBuilder()
    for f in _module_spanning_set(gens):
        if f.n != layout.n or f.ctx != layout.ctx:
            raise LayoutError("generator does not match the span layout")
        builder.add(gray_image(f, layout.basis))
        if len(builder.pivots) > max_k:
            raise CapacityError(f"code dimension exceeds {max_k} over F_2", k=len(builder.pivots))
    span = BinarySpan(layout, builder.rref())
    if verify:
        bad = closure_failures(span)
        if bad:
            raise AssertionError(f"span is not an ideal: {bad[0]}")
    return span


def build_span(spec: CodeSpec, basis: TraceOrthogonalBasis | None = None, max_k: int = MAX_K) -> BinarySpan:
    check(spec)
    basis = basis or find_tob(field(spec.m))
    layout = Layout(spec.sigma, basis)
    _check_budget(layout, max_k)
    return span_of(generators(spec), layout, max_k)


def row_preimages(span: BinarySpan) -> list[PolyS]:
    lay = span.layout
    return [gray_preimage(r, lay.ctx, lay.n, lay.basis) for r in span.rows]


def closure_failures(span: BinarySpan) -> list[str]:
    """Rows whose x-, u- or field-generator multiple leaves the span."""
    lay = span.layout
    gen = 2 if lay.m > 1 else 1
    out = []
    for idx, f in enumerate(row_preimages(span)):
        for label, g in (("x", f.shift(1)), ("u", f.mul_u()), ("scalar", f.scale(gen))):
            if not span.contains_bits(gray_image(g, lay.basis)):
                out.append(f"{label}*row{idx}")
    return out


def membership(f: PolyS, span: BinarySpan, basis: TraceOrthogonalBasis | None = None) -> bool:
    lay = span.layout
    if basis is not None and basis != lay.basis:
        raise LayoutError("basis differs from the one the span was built with")
    if f.n != lay.n or f.ctx != lay.ctx:
        raise LayoutError(f"polynomial of length {f.n} over GF(2^{f.ctx.m}) vs span layout n={lay.n}, m={lay.m}")
    return span.contains_bits(gray_image(f, lay.basis))


# -- smallest exponents -----------------------------------------------------------


def _drop_u2(vec: int, layout: Layout) -> int:
    """Quotient by the u^2-layer: (a+b+c | b+c | b) -> (a | b), 2m bits per coordinate.

    u^2 c maps to (c | c | 0), so XOR-ing the first two blocks kills exactly that layer.
    """
    m, w = layout.m, layout.width
    mask = (1 << m) - 1
    out = 0
    for i in range(layout.n):
        blk = vec >> (w * i)
        s, t, b = blk & mask, (blk >> m) & mask, (blk >> (2 * m)) & mask
        out |= ((s ^ t) | (b << m)) << (2 * m * i)
    return out


def smallest_exponent(span: BinarySpan, form: str) -> int:
    """Least e in [0, n] such that the form lies in the code.

    ``form`` is ``"u2"`` for u^2 (x+1)^e, or ``"u+free"`` for
    u (x+1)^e + u^2 g(x) with g free (decided in the quotient by u^2).
    e = n always qualifies because (x+1)^n = 0.
    """
    lay = span.layout
    if form == "u2":
        test = lambda e: span.contains_bits(gray_image(PolyS.xp1_power(lay.ctx, lay.n, e, (0, 0, 1)), lay.basis))  # noqa: E731
    elif form == "u+free":
        builder = SpanBuilder()
        for r in span.rows:
            builder.add(_drop_u2(r, lay))
        piv = builder.pivots

        def test(e: int) -> bool:
            vec = _drop_u2(gray_image(PolyS.xp1_power(lay.ctx, lay.n, e, (0, 1, 0)), lay.basis), lay)
            return _reduce(vec, piv) == 0
    else:
        raise ValueError(f"unknown form {form!r}")
    for e in range(lay.n + 1):
        if test(e):
            return e
    raise AssertionError("(x+1)^n = 0 must belong to every code")


def smallest_params_oracle(spec: CodeSpec, basis: TraceOrthogonalBasis | None = None) -> DerivedParams:
    """L, U, V, W, L1 by their definitions, each against its own sub-ideal."""
    check(spec)
    basis = basis or find_tob(field(spec.m))
    lay = Layout(spec.sigma, basis)
    gens = generators(spec)
    tag = spec.type_tag
    if tag in (3, 4):
        return DerivedParams(L=smallest_exponent(span_of(gens[:1], lay), "u2"))
    if tag in (5, 6):
        first = span_of(gens[:1], lay)
        return DerivedParams(U=smallest_exponent(first, "u+free"), V=smallest_exponent(first, "u2"))
    if tag in (7, 8):
        U = smallest_exponent(span_of(gens[:1], lay), "u+free")
        W = smallest_exponent(span_of(gens[:2], lay), "u2")
        if tag == 7:
            return DerivedParams(U=U, W=W)
        L1 = smallest_exponent(span_of(gens[1:2], lay), "u2")
        return DerivedParams(U=U, W=W, L1=L1)
    return DerivedParams()


# -- minimum weights ----------------------------------------------------------------

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


@njit(cache=True)
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit(cache=True)
def _nonzero_blocks(lo, hi, width, nblocks, mask):
    cnt = 0
    for b in range(nblocks):
        o = b * width
        if o + width <= 64:
            v = (lo >> np.uint64(o)) & mask
        elif o >= 64:
            v = (hi >> np.uint64(o - 64)) & mask
        else:
            v = ((lo >> np.uint64(o)) | (hi << np.uint64(64 - o))) & mask
        if v != np.uint64(0):
            cnt += 1
    return cnt


@njit(cache=True)
def _scan_segment(rows_lo, rows_hi, start, stop, width, nblocks):
    """Walk Gray indices start..stop-1; return (best_lee, at, best_ham, at)."""
    mask = (np.uint64(1) << np.uint64(width)) - np.uint64(1)
    g = start ^ (start >> 1)
    lo = np.uint64(0)
    hi = np.uint64(0)
    j = 0
    while g:
        if g & 1:
            lo ^= rows_lo[j]
            hi ^= rows_hi[j]
        g >>= 1
        j += 1
    best_lee = np.int64(1 << 30)
    best_ham = np.int64(1 << 30)
    at_lee = np.int64(-1)
    at_ham = np.int64(-1)
    i = start
    while True:
        lee = _popcount(lo) + _popcount(hi)
        if lee < best_lee:
            best_lee = lee
            at_lee = i
        if (lee + width - 1) // width < best_ham:
            ham = _nonzero_blocks(lo, hi, width, nblocks, mask)
            if ham < best_ham:
                best_ham = ham
                at_ham = i
        i += 1
        if i >= stop:
            break
        t = i
        j = 0
        while not (t & 1):
            t >>= 1
            j += 1
        lo ^= rows_lo[j]
        hi ^= rows_hi[j]
    return best_lee, at_lee, best_ham, at_ham


@njit(cache=True, parallel=True)
def _scan_all(rows_lo, rows_hi, total, nseg, width, nblocks):
    out = np.empty((nseg, 4), dtype=np.int64)
    span = (total - 1 + nseg - 1) // nseg
    for s in prange(nseg):
        start = 1 + s * span
        stop = min(total, start + span)
        if start >= stop:
            out[s, 0] = 1 << 30
            out[s, 1] = -1
            out[s, 2] = 1 << 30
            out[s, 3] = -1
            continue
        a, b, c, d = _scan_segment(rows_lo, rows_hi, start, stop, width, nblocks)
        out[s, 0] = a
        out[s, 1] = b
        out[s, 2] = c
        out[s, 3] = d
    return out


def _split_rows(rows: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    lo = np.array([r & 0xFFFFFFFFFFFFFFFF for r in rows], dtype=np.uint64)
    hi = np.array([r >> 64 for r in rows], dtype=np.uint64)
    return lo, hi


def _codeword_at(rows: Sequence[int], index: int) -> int:
    g = index ^ (index >> 1)
    vec, j = 0, 0
    while g:
        if g & 1:
            vec ^= rows[j]
        g >>= 1
        j += 1
    return vec


@dataclass(frozen=True)
class OracleReport:
    d_lee: int
    d_hamming: int
    witness_lee: PolyS
    witness_hamming: PolyS
    k: int
    enumerated: int

    def to_json(self) -> dict:
        from .polyring import poly_to_json

        return {
            "d_lee": self.d_lee,
            "d_hamming": self.d_hamming,
            "witness_lee": poly_to_json(self.witness_lee),
            "witness_hamming": poly_to_json(self.witness_hamming),
            "k": self.k,
            "enumerated": self.enumerated,
        }


def min_weights(span: BinarySpan, layout: Layout | None = None, segments: int | None = None,
                prefilter: bool = True) -> OracleReport:
    """Exact minimum Lee and Hamming weights over all nonzero codewords.

    Spans up to ``MAX_K`` are enumerated; with ``prefilter`` a span of
    dimension at least ``PREFILTER_K`` is first searched for codewords of
    Lee weight <= 2, which settles the full ring and similar codes at once.
    Larger spans go to :func:`low_weight_search`.
    """
    lay = span.layout
    if layout is not None and layout != lay:
        raise LayoutError("layout differs from the span's own layout")
    if span.k > MAX_K:
        return low_weight_search(span)
    if prefilter and span.k >= PREFILTER_K:
        try:
            return low_weight_search(span, budget=comb(lay.nbits, 1) + comb(lay.nbits, 2))
        except CapacityError:
            pass
    if span.k == 0:
        zero = PolyS.zero(lay.ctx, lay.n)
        return OracleReport(0, 0, zero, zero, 0, 0)
    total = 1 << span.k
    if segments is None:
        segments = 1 if span.k < 16 else 64
    lo, hi = _split_rows(span.rows)
    res = _scan_all(lo, hi, np.int64(total), segments, lay.width, lay.n)
    # ties resolve to the earliest Gray index, so the witness does not depend on segmenting
    best_lee = min((int(r[0]), int(r[1])) for r in res if r[1] >= 0)
    best_ham = min((int(r[2]), int(r[3])) for r in res if r[3] >= 0)
    w_lee = gray_preimage(_codeword_at(span.rows, best_lee[1]), lay.ctx, lay.n, lay.basis)
    w_ham = gray_preimage(_codeword_at(span.rows, best_ham[1]), lay.ctx, lay.n, lay.basis)
    return OracleReport(best_lee[0], best_ham[0], w_lee, w_ham, span.k, total - 1)


def _supported_codeword(span: BinarySpan, outside: int) -> int:
    """A nonzero codeword with no bits in ``outside``, or 0 if there is none."""
    pivots: dict[int, tuple[int, int]] = {}
    for row in span.rows:
        proj, full = row & outside, row
        while proj:
            top = proj.bit_length() - 1
            hit = pivots.get(top)
            if hit is None:
                break
            proj ^= hit[0]
            full ^= hit[1]
        if not proj:
            return full
        pivots[proj.bit_length() - 1] = (proj, full)
    return 0


def low_weight_search(span: BinarySpan, budget: int = LOW_WEIGHT_BUDGET) -> OracleReport:
    """Exact minimum weights of a span too large to enumerate, when they are small.

    Lee: binary vectors are tested for membership in order of increasing
    weight, so the first member found has minimum Lee weight.  Hamming:
    coordinate supports of increasing size are tested for a codeword living
    inside them by one elimination each.  If the candidates needed exceed
    ``budget`` the search refuses with :class:`CapacityError`.
    """
    lay = span.layout
    if span.k == 0:
        zero = PolyS.zero(lay.ctx, lay.n)
        return OracleReport(0, 0, zero, zero, 0, 0)
    tested, lee_vec = 0, 0
    for w in range(1, lay.nbits + 1):
        if tested + comb(lay.nbits, w) > budget:
            raise CapacityError(f"k = {span.k}: no codeword of Lee weight < {w}, and weight {w} "
                                f"would exceed the low-weight search budget", k=span.k)
        for bits in combinations(range(lay.nbits), w):
            tested += 1
            vec = sum(1 << b for b in bits)
            if span.contains_bits(vec):
                lee_vec = vec
                break
        if lee_vec:
            break
    full = (1 << lay.nbits) - 1
    block = (1 << lay.width) - 1
    ham_vec = 0
    for size in range(1, lay.n + 1):
        for support in combinations(range(lay.n), size):
            inside = sum(block << (lay.width * i) for i in support)
            ham_vec = _supported_codeword(span, full ^ inside)
            if ham_vec:
                break
        if ham_vec:
            break
    w_lee = gray_preimage(lee_vec, lay.ctx, lay.n, lay.basis)
    w_ham = gray_preimage(ham_vec, lay.ctx, lay.n, lay.basis)
    return OracleReport(bin(lee_vec).count("1"), hamming_weight_poly(w_ham), w_lee, w_ham, span.k, tested)


def oracle_report(spec: CodeSpec, basis: TraceOrthogonalBasis | None = None) -> OracleReport:
    """Exhaustive enumeration up to ``MAX_K``; beyond it the exact low-weight search."""
    return min_weights(build_span(spec, basis, max_k=MAX_BITS))


def min_weights_multibasis(spec: CodeSpec, bases: Sequence[TraceOrthogonalBasis]) -> list[int]:
    return [min_weights(build_span(spec, b)).d_lee for b in bases]


def sumset_min_weights(spec: CodeSpec, basis: TraceOrthogonalBasis | None = None,
                       limit: int = 1 << 16) -> tuple[int, int]:
    """(d_lee, d_hamming) from the set {sum_j r_j g_j : r_j in S}, built without linear algebra.

    Every multiple r*g_j is formed by ring multiplication over all r in S, then
    the multiple-sets are combined as a sumset.  Only for tiny rings.
    """
    check(spec)
    basis = basis or find_tob(field(spec.m))
    ctx, n = spec.ctx, spec.n
    q = ctx.order
    if q ** (3 * n) > limit:
        raise CapacityError(f"|S| = {q}^{3 * n} is too large for the sumset oracle")
    ring_elems = []
    for idx in range(q ** (3 * n)):
        digits = []
        for _ in range(3 * n):
            digits.append(idx % q)
            idx //= q
        ring_elems.append(PolyS.from_layers(ctx, digits[:n], digits[n:2 * n], digits[2 * n:]))
    code: set[PolyS] = {PolyS.zero(ctx, n)}
    for g in generators(spec):
        multiples = {r * g for r in ring_elems}
        code = {a + b for a in code for b in multiples}
    nonzero = [c for c in code if not c.is_zero()]
    if not nonzero:
        return 0, 0
    return (min(lee_weight_poly(c, basis) for c in nonzero), min(hamming_weight_poly(c) for c in nonzero))


# -- serialization ---------------------------------------------------------------------


def span_to_json(span: BinarySpan) -> dict:
    lay = span.layout
    digits = (lay.nbits + 3) // 4
    return {
        "sigma": lay.sigma,
        "m": lay.m,
        "layout": LAYOUT_TAG,
        "tob": [f"{z:#x}" for z in lay.basis.elems],
        "k": span.k,
        "rows": [format(r, f"0{digits}x") for r in span.rows],
    }


def span_from_json(data: dict) -> BinarySpan:
    if data.get("layout") != LAYOUT_TAG:
        raise LayoutError(f"unsupported layout tag {data.get('layout')!r}")
    ctx = field(int(data["m"]))
    basis = TraceOrthogonalBasis(tuple(int(z, 16) for z in data["tob"]), ctx)
    rows = tuple(int(r, 16) for r in data["rows"])
    if len(rows) != int(data["k"]):
        raise LayoutError("row count does not match k")
    return BinarySpan(Layout(int(data["sigma"]), basis), rows)


def span_dumps(span: BinarySpan) -> str:
    return json.dumps(span_to_json(span), indent=1)
