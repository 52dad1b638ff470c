import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from mldrs import algebra
from mldrs.gf2m import build_field
from mldrs.reduction import (
    InstanceTooSmallError,
    ThreeDmInstance,
    all_triples,
    build_w_matrix,
    characteristic_vector,
    convert_prep,
    convert_std,
    encode_point_prep,
    encode_triple,
    gamma_prep,
    syndrome,
    syndrome_target,
    target_coefficients,
)
from mldrs.rs_code import apply_scaling

T2_EXAMPLE = ((1, 1, 1), (2, 2, 2), (1, 2, 1), (2, 1, 2), (1, 1, 2))


def test_instance_normalisation_and_validation():
    inst = ThreeDmInstance(2, ((2, 2, 2), (1, 1, 1)))
    assert inst.triples == ((1, 1, 1), (2, 2, 2))
    with pytest.raises(ValueError, match="duplicate"):
        ThreeDmInstance(2, ((1, 1, 1), (1, 1, 1)))
    with pytest.raises(ValueError):
        ThreeDmInstance(2, ((1, 3, 1),))
    with pytest.raises(ValueError):
        ThreeDmInstance(0, ())


@pytest.mark.parametrize("triple, bits", [((1, 1, 1), 0x15), ((2, 2, 2), 0x2A), ((1, 2, 1), 0x19)])
def test_encode_triple_examples(triple, bits):
    assert encode_triple(build_field(6), 2, triple) == bits


def test_encode_triple_errors():
    with pytest.raises(ValueError):
        encode_triple(build_field(6), 2, (0, 1, 1))
    with pytest.raises(ValueError):
        encode_triple(build_field(5), 2, (1, 1, 1))


@pytest.mark.parametrize("t", [1, 2, 3])
def test_triple_encoding_is_injective(t):
    ctx = build_field(3 * t)
    images = [encode_triple(ctx, t, tr) for tr in all_triples(t)]
    assert len(set(images)) == len(images) and 0 not in images
    assert all(bin(x).count("1") == 3 for x in images)


def test_convert_std_t2_example():
    inst = ThreeDmInstance(2, T2_EXAMPLE)
    reduced, trace = convert_std(inst)
    assert (reduced.ctx.m, reduced.code.k, reduced.w, reduced.code.n) == (6, 2, 2, 5)
    assert trace.gamma == 0x3F
    assert syndrome(reduced.ctx, trace.H, trace.z) == [0, 1, 0x3F]
    assert reduced.w == reduced.code.rho - 1
    assert reduced.y[3:] == (0, 0)
    assert all(reduced.ctx.mul(y, p) == z for y, p, z in zip(reduced.y, trace.phis, trace.z))


def test_convert_std_rejects_small():
    with pytest.raises(InstanceTooSmallError, match=r"\|T\| > t \+ 1"):
        convert_std(ThreeDmInstance(2, T2_EXAMPLE[:3]))


def test_target_coefficients_numerator_vanishes():
    ctx = build_field(6)
    assert target_coefficients(ctx, [5, 9], 9)[0] == 0


def test_target_coefficients_rejects_repeats():
    with pytest.raises(ValueError):
        target_coefficients(build_field(6), [5, 5], 1)


@pytest.mark.parametrize("m", [6, 9, 30])
def test_target_coefficients_match_elimination(m):
    ctx = build_field(m)
    rng = random.Random(m)
    for _ in range(50):
        size = rng.randint(2, 5)
        xs = rng.sample(range(1, ctx.q), size)
        gamma = rng.randrange(ctx.q)
        rhs = syndrome_target(ctx, size - 1, gamma)
        z = target_coefficients(ctx, xs, gamma)
        assert algebra.mat_vec(ctx, algebra.power_matrix(ctx, xs, size), z) == rhs
        assert z == algebra.solve(ctx, algebra.power_matrix(ctx, xs, size), rhs)


def _bits(x):
    return {i for i in range(x.bit_length()) if x >> i & 1}


def test_encode_point_prep_examples():
    ctx = build_field(30)
    order = all_triples(2)
    assert _bits(encode_point_prep(ctx, 2, 1, order)) == {0, 2, 4, 6}
    assert _bits(encode_point_prep(ctx, 2, 9, order)) == {6, 14, 22}
    assert _bits(encode_point_prep(ctx, 2, 25, order)) == {22}
    with pytest.raises(ValueError):
        encode_point_prep(ctx, 2, 33, order)
    with pytest.raises(ValueError):
        encode_point_prep(build_field(6), 2, 1, order)


@pytest.mark.parametrize("t", [1, 2, 3])
def test_prep_points_distinct_nonzero(t):
    m = 3 * (t**3 + t)
    ctx = build_field(m)
    order = all_triples(t)
    pts = [encode_point_prep(ctx, t, j, order) for j in range(1, 4 * t**3 + 1)]
    assert len(set(pts)) == len(pts) and 0 not in pts


def test_gamma_prep_examples():
    ctx = build_field(30)
    assert gamma_prep(ctx, 2, [1] * 8) == 0x3FFFFFFF
    assert gamma_prep(ctx, 2, [0] * 8) == int("1" * 8 + "0" * 16 + "1" * 6, 2)
    with pytest.raises(ValueError):
        gamma_prep(ctx, 2, [1] * 7)


@given(st.lists(st.integers(0, 1), min_size=8, max_size=8))
def test_gamma_prep_equals_termwise_field_sum(chi):
    ctx = build_field(30)
    t, t3 = 2, 8
    a = ctx.alpha
    total = 0
    for j in range(1, 3 * t + 1):
        total ^= ctx.pow(a, j - 1)
    inner = 0
    for j in range(1, t3 + 1):
        if chi[j - 1]:
            inner ^= ctx.pow(a, j)
    total ^= ctx.mul(ctx.mul(ctx.pow(a, 3 * t - 1), ctx.pow(a, t3) ^ 1), inner)
    tail = 0
    for j in range(1, t3 + 1):
        tail ^= ctx.pow(a, j)
    total ^= ctx.mul(ctx.pow(a, 2 * t3 + 3 * t - 1), tail)
    assert gamma_prep(ctx, t, chi) == total


@pytest.mark.parametrize("t", [1, 2, 3])
def test_w_matrix_structure(t):
    t3 = t**3
    order = all_triples(t)
    W = build_w_matrix(t, order)
    assert (len(W), len(W[0])) == (3 * (t3 + t), 4 * t3)
    weights = [sum(row[j] for row in W) for j in range(4 * t3)]
    assert weights == [4] * t3 + [3] * t3 + [2] * t3 + [1] * t3
    ctx = build_field(3 * (t3 + t))
    for j in range(4 * t3):
        col = sum(W[i][j] << i for i in range(len(W)))
        assert col == encode_point_prep(ctx, t, j + 1, order)


def test_convert_prep_parameters():
    reduced, trace = convert_prep(ThreeDmInstance(2, ((1, 1, 1), (2, 2, 2))))
    assert (reduced.ctx.m, reduced.w, reduced.code.k, reduced.code.n) == (30, 10, 21, 32)
    assert sum(1 for a in reduced.y if a) <= 11
    assert all(a == 0 for a in reduced.y[11:])
    assert trace.chi == (1, 0, 0, 0, 0, 0, 0, 1)
    reduced, _ = convert_prep(ThreeDmInstance(1, ()))
    assert (reduced.ctx.m, reduced.w, reduced.code.k, reduced.code.n) == (6, 2, 1, 4)


def test_prep_code_depends_only_on_t():
    a, _ = convert_prep(ThreeDmInstance(2, ((1, 1, 1),)))
    b, _ = convert_prep(ThreeDmInstance(2, ((1, 2, 1), (2, 1, 2), (2, 2, 2))))
    assert a.code == b.code and a.y != b.y


def _random_instance(rng, t, mode):
    while True:
        T = [tr for tr in all_triples(t) if rng.random() < rng.choice((0.2, 0.5, 0.8))]
        if mode == "prep" or len(T) > t + 1:
            return ThreeDmInstance(t, tuple(T))


@settings(max_examples=60)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, 4]))
def test_std_syndrome_identity(seed, t):
    inst = _random_instance(random.Random(seed), t, "std")
    reduced, trace = convert_std(inst)
    ctx = reduced.ctx
    s = algebra.mat_vec(ctx, trace.H, apply_scaling(ctx, trace.phis, reduced.y))
    assert s == syndrome_target(ctx, reduced.w, trace.gamma)
    assert reduced.w == reduced.code.n - reduced.code.k - 1


@settings(max_examples=15)
@given(st.integers(0, 10**6), st.sampled_from([1, 2]))
def test_prep_syndrome_identity(seed, t):
    inst = _random_instance(random.Random(seed), t, "prep")
    reduced, trace = convert_prep(inst)
    ctx = reduced.ctx
    s = algebra.mat_vec(ctx, trace.H, apply_scaling(ctx, trace.phis, reduced.y))
    assert s == syndrome_target(ctx, reduced.w, trace.gamma)
    assert trace.chi == characteristic_vector(inst)


def test_conversions_are_deterministic():
    inst = ThreeDmInstance(3, tuple(all_triples(3)[::3]))
    assert convert_std(inst) == convert_std(inst)
    assert convert_prep(inst) == convert_prep(inst)


def test_all_triples_order():
    assert all_triples(2) == list(itertools.product((1, 2), repeat=3))
