import itertools

import pytest

from chainring_lee.chain_ring import (
    RingElement, RingError, format_ring, gray_map, lee_weight_ring, parse_ring, ring_inverse, ring_mul,
)
from chainring_lee.gf2m import field, find_tob


def _ring(m):
    ctx = field(m)
    q = ctx.order
    return [RingElement.from_bits(ctx, a, b, c) for a in range(q) for b in range(q) for c in range(q)]


def test_mul_examples():
    ctx = field(1)
    u, one = RingElement.u(ctx), RingElement.one(ctx)
    assert ring_mul(u, u) == RingElement.from_bits(ctx, 0, 0, 1)
    assert ring_mul(u, ring_mul(u, u)) == RingElement.zero(ctx)
    assert ring_mul(one + u, one + u) == RingElement.from_bits(ctx, 1, 0, 1)


def test_inverse_examples():
    ctx = field(1)
    one = RingElement.one(ctx)
    assert ring_inverse(one) == one
    assert ring_inverse(RingElement.from_bits(ctx, 1, 1)) == RingElement.from_bits(ctx, 1, 1, 1)
    with pytest.raises(RingError):
        ring_inverse(RingElement.u(ctx))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_units_and_inverses_exhaustive(m):
    one = RingElement.one(field(m))
    for x in _ring(m):
        assert x.is_unit() == bool(x.a)
        if x.is_unit():
            assert x * x.inverse() == one


@pytest.mark.parametrize("m", [1, 2])
def test_ring_axioms_exhaustive(m):
    els = _ring(m)
    for x, y in itertools.product(els, repeat=2):
        assert x * y == y * x
    if m == 1:
        for x, y, z in itertools.product(els, repeat=3):
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z


def test_weight_examples():
    ctx = field(1)
    b = find_tob(ctx)
    assert lee_weight_ring(RingElement.one(ctx), b) == 1
    assert lee_weight_ring(RingElement.u(ctx), b) == 3
    assert lee_weight_ring(RingElement.from_bits(ctx, 0, 0, 1), b) == 2


def test_gray_examples():
    ctx = field(1)
    b = find_tob(ctx)
    assert gray_map(RingElement.zero(ctx), b) == (0, 0, 0)
    assert gray_map(RingElement.from_bits(ctx, 0, 0, 1), b) == (1, 1, 0)
    for m in (1, 2, 3):
        ctx = field(m)
        b = find_tob(ctx)
        z1 = b.elems[0]
        bits = gray_map(RingElement.from_bits(ctx, z1, z1, 0), b)
        e1 = tuple(int(i == 0) for i in range(m))
        assert bits == (0,) * m + e1 + e1
        assert sum(bits) == 2


@pytest.mark.parametrize("m", [1, 2])
def test_gray_additive_and_weight_preserving(m):
    b = find_tob(field(m))
    els = _ring(m)
    for x in els:
        assert sum(gray_map(x, b)) == lee_weight_ring(x, b)
    for x, y in itertools.product(els, repeat=2):
        gx, gy = gray_map(x, b), gray_map(y, b)
        assert gray_map(x + y, b) == tuple(p ^ q for p, q in zip(gx, gy))


@pytest.mark.parametrize("m", [1, 2])
def test_weight_of_u_multiples(m):
    """Elements u*b + u^2*c with b != 0 weigh at least 3 exactly when b != c.

    The blanket claim "b != 0 implies weight >= 3" fails on b == c, e.g.
    u + u^2 maps to (0, 0, 1) and has weight 1.
    """
    bas = find_tob(field(m))
    light = [x for x in _ring(m) if not x.a and x.b and lee_weight_ring(x, bas) < 3]
    assert light and all(x.b == x.c for x in light)
    assert lee_weight_ring(RingElement.from_bits(field(1), 0, 1, 1), find_tob(field(1))) == 1


def test_text_roundtrip():
    for x in _ring(2):
        assert parse_ring(format_ring(x), x.ctx) == x
    assert parse_ring("u^2*0x1", field(1)) == RingElement.from_bits(field(1), 0, 0, 1)
