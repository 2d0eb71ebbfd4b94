"""Randomized invariants: bilinearity, cocycle laws, category coherence, tail quotients."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import conebraid.category as C
import conebraid.field as F
import conebraid.seqalg as SA
from conebraid.weyl import star, weyl, weyl_mul

COMMON = dict(derandomize=True, deadline=None)

widths = st.floats(0.6, 1.8)
amps = st.floats(-2.0, 2.0).filter(lambda a: abs(a) > 0.05)
coords = st.floats(-2.5, 2.5)
times = st.floats(-0.8, 0.8)
atom_params = st.tuples(st.sampled_from(["g", "h"]), widths, amps, times, coords, coords, coords)
vec_params = st.lists(atom_params, min_size=1, max_size=2)
obj_params = st.tuples(st.booleans(), atom_params)


def build_vec(grid, params):
    out = F.zero_vector(grid)
    for chan, w, amp, t, x, y, z in params:
        v = F.make_test_vector(grid, amplitude=amp, width=w, channel=chan)
        out = F.add(out, F.translate(v, (t, x, y, z)))
    return out


def build_obj(grid, params):
    charged, (chan, w, amp, t, x, y, z) = params
    if charged:
        v = F.make_charge_vector(grid, q=amp, width=w)
    else:
        v = F.make_test_vector(grid, amplitude=amp, width=w, channel=chan)
    return C.make_object(F.translate(v, (t, x, y, z)))


@settings(max_examples=30, **COMMON)
@given(vec_params, vec_params, st.floats(-2, 2), st.floats(-2, 2))
def test_symplectic_antisymmetric_bilinear(grid, px, py, a, b):
    x, y = build_vec(grid, px), build_vec(grid, py)
    sxy = F.symplectic(x, y)
    assert abs(sxy + F.symplectic(y, x)) <= 1e-10 * (1.0 + abs(sxy))
    combo = F.add(F.scale(a, x), F.scale(b, y))
    z = build_vec(grid, px[:1])
    lhs = F.symplectic(combo, z)
    rhs = a * F.symplectic(x, z) + b * F.symplectic(y, z)
    assert abs(lhs - rhs) <= 1e-9 * (1.0 + abs(lhs) + abs(rhs))


@settings(max_examples=25, **COMMON)
@given(vec_params, vec_params, vec_params)
def test_weyl_cocycle_laws(grid, px, py, pz):
    x, y, z = build_vec(grid, px), build_vec(grid, py), build_vec(grid, pz)
    wx, wy, wz = weyl(x), weyl(y), weyl(z)
    merged = F.add(x, y)
    exchange = weyl_mul(weyl(y, np.exp(1j * F.symplectic(x, y))), wx)
    assert abs(weyl_mul(wx, wy).coeff_of(merged) - exchange.coeff_of(merged)) <= 1e-12
    xyz = F.add(merged, z)
    left = weyl_mul(weyl_mul(wx, wy), wz)
    right = weyl_mul(wx, weyl_mul(wy, wz))
    assert abs(left.coeff_of(xyz) - right.coeff_of(xyz)) <= 1e-12
    # star is an anti-homomorphism and an involution
    prod = weyl_mul(wx, wy)
    assert abs(star(star(prod)).coeff_of(merged) - prod.coeff_of(merged)) <= 1e-14
    rev = weyl_mul(star(wy), star(wx))
    neg = F.negate(merged)
    assert abs(star(prod).coeff_of(neg) - rev.coeff_of(neg)) <= 1e-12


@settings(max_examples=25, **COMMON)
@given(vec_params, st.floats(-1.5, 1.5).filter(lambda s: abs(s) > 1e-3))
def test_vacuum_exponent_quadratic(grid, px, s):
    x = build_vec(grid, px)
    base = F.vacuum_exponent(x)
    assert abs(F.vacuum_exponent(F.scale(s, x)) - s * s * base) <= 1e-9 * (1.0 + base)


@settings(max_examples=20, **COMMON)
@given(obj_params, obj_params, obj_params, st.floats(0, 2 * math.pi), st.floats(0, 2 * math.pi))
def test_category_coherence(grid, pa, pb, pc, phi1, phi2):
    a, b, c = build_obj(grid, pa), build_obj(grid, pb), build_obj(grid, pc)
    h1, h2 = C.hexagon_residuals(a, b, c)
    assert max(h1, h2) <= 1e-12
    r = C.rephase(C.hom_basis(a, C.translate_object(a, (0.0, 1.0, 0.0, -0.5))), np.exp(1j * phi1))
    s = C.rephase(C.hom_basis(b, C.translate_object(b, (0.3, 0.0, -1.0, 0.0))), np.exp(1j * phi2))
    assert C.naturality_residual(r, s) <= 1e-12
    round_trip = C.compose(C.braiding_exact(b, a), C.braiding_exact(a, b))
    assert abs(round_trip.coeff - 1.0) <= 1e-12
    assert abs(C.compose(C.star_mor(r), r).coeff - abs(r.coeff) ** 2) <= 1e-12


@settings(max_examples=20, **COMMON)
@given(obj_params, st.floats(0, 2 * math.pi), times, coords)
def test_transport_keeps_intertwiner_relation(grid, pa, phi, t, off):
    a = build_obj(grid, pa)
    r = C.rephase(C.hom_basis(a, C.translate_object(a, (t, off, 0.4, -0.2))), np.exp(1j * phi))
    f = F.intertwiner_label(a.data, F.translate(a.data, (0.0, -0.7, 1.1, 0.3)))
    assert C.intertwiner_relation_residual(r, f) <= 1e-12


matrices = st.lists(st.floats(-1.0, 1.0), min_size=8, max_size=8).map(
    lambda v: np.array(v[:4], dtype=float).reshape(2, 2)
    + 1j * np.array(v[4:], dtype=float).reshape(2, 2)
)


@settings(max_examples=25, **COMMON)
@given(matrices, matrices)
def test_seqalg_quotient_laws(matrices_a, matrices_b):
    alg = SA.MatrixAlgebra(2)
    policy = SA.TailPolicy()
    a, b = matrices_a, matrices_b
    s = SA.SequenceElement(alg, lambda n: a + 0.5**n * b, alg.norm(a) + alg.norm(b) + 1.0)
    t = SA.constant(alg, b)
    # star distributes over sums on the quotient
    lhs = SA.seq_star(SA.seq_add(s, t))
    rhs = SA.seq_add(SA.seq_star(s), SA.seq_star(t))
    assert SA.limsup_norm(SA.seq_sub(lhs, rhs), policy) <= 1e-12
    # limsup is subadditive and null elements are absorbed
    assert SA.limsup_norm(SA.seq_add(s, t), policy) <= (
        SA.limsup_norm(s, policy) + SA.limsup_norm(t, policy) + 1e-12
    )
    null = SA.SequenceElement(alg, lambda n: 0.5**n * b, alg.norm(b) + 1.0)
    assert SA.is_null(null, policy)
    assert SA.equivalent(SA.seq_add(t, null), t, policy)


@settings(max_examples=40, **COMMON)
@given(st.integers(1, 2000), st.integers(8, 40))
def test_tail_policy_samples(window_start, sample_count):
    policy = SA.TailPolicy(window_start=window_start, sample_count=sample_count)
    samples = policy.samples()
    assert len(samples) == len(set(samples)) and list(samples) == sorted(samples)
    assert all(n > window_start for n in samples)
    assert samples[-1] == window_start * 2 ** (sample_count // 2)


@settings(max_examples=25, **COMMON)
@given(vec_params, times, coords, coords, coords, times, coords, coords, coords)
def test_translation_composes(grid, px, t1, x1, y1, z1, t2, x2, y2, z2):
    x = build_vec(grid, px)
    probe = F.make_test_vector(grid, amplitude=1.0, width=1.0, channel="h")
    a, b = (t1, x1, y1, z1), (t2, x2, y2, z2)
    twice = F.translate(F.translate(x, a), b)
    once = F.translate(x, tuple(p + q for p, q in zip(a, b)))
    ref = F.symplectic(once, probe)
    assert abs(F.symplectic(twice, probe) - ref) <= 1e-10 * (1.0 + abs(ref))
