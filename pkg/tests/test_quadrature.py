"""Momentum grid and quadrature checks against closed-form integrals."""

import numpy as np
import pytest

from conebraid._angular import SUPPORTED_ORDERS, angular_rule, antipode_index
from conebraid.errors import ConfigError, UsageError
from conebraid.quadrature import (
    TWO_PI_32,
    build_grid,
    composite_legendre_unit,
    gauss_legendre_unit,
    integrate,
    radial_fourier,
    radial_panel_rule,
    reflect_samples,
)


def _sphere_monomial_exact(i, j, k):
    # integral over S^2 of x^i y^j z^k; zero unless all exponents are even
    if i % 2 or j % 2 or k % 2:
        return 0.0
    def dfact(n):
        out = 1
        while n > 1:
            out *= n
            n -= 2
        return out
    num = dfact(i - 1) * dfact(j - 1) * dfact(k - 1)
    return 4.0 * np.pi * num / dfact(i + j + k + 1)


@pytest.mark.parametrize("order", sorted(SUPPORTED_ORDERS))
def test_angular_rule_basic(order):
    nodes, weights = angular_rule(order)
    assert nodes.shape == (order, 3)
    assert np.all(weights > 0)
    assert abs(weights.sum() - 4.0 * np.pi) < 1e-12
    assert np.max(np.abs(np.einsum("ij,ij->i", nodes, nodes) - 1.0)) < 1e-14


@pytest.mark.parametrize("order", sorted(SUPPORTED_ORDERS))
def test_angular_antipode_is_exact(order):
    nodes, weights = angular_rule(order)
    idx = antipode_index(nodes)
    assert np.array_equal(nodes[idx], -nodes)
    assert np.array_equal(weights[idx], weights)
    assert np.array_equal(idx[idx], np.arange(order))


@pytest.mark.parametrize("order,degree", [(26, 7), (50, 11), (194, 23)])
def test_angular_polynomial_exactness(order, degree):
    nodes, weights = angular_rule(order)
    for i in range(degree + 1):
        for j in range(degree + 1 - i):
            for k in range(degree + 1 - i - j):
                if i + j + k > degree:
                    continue
                val = np.dot(weights, nodes[:, 0] ** i * nodes[:, 1] ** j * nodes[:, 2] ** k)
                assert abs(val - _sphere_monomial_exact(i, j, k)) < 1e-12


def test_gauss_legendre_unit():
    nodes, weights = gauss_legendre_unit(16)
    assert np.all((nodes > 0) & (nodes < 1))
    assert abs(weights.sum() - 1.0) < 1e-14
    assert abs(np.dot(weights, nodes**3) - 0.25) < 1e-14


def test_ball_volume():
    grid = build_grid(64, 26, 10.0)
    ones = np.ones(grid.n_nodes)
    exact = 4.0 * np.pi * 10.0**3 / 3.0
    assert abs(integrate(grid, ones).real - exact) < 1e-10 * exact


def test_gaussian_integral():
    # integral e^{-p^2/2} d^3p = (2 pi)^{3/2}
    grid = build_grid(64, 26, 10.0)
    r = np.repeat(grid.radial_nodes, grid.n_angular)
    val = integrate(grid, np.exp(-0.5 * r**2))
    assert abs(val.real - TWO_PI_32) < 1e-8 * TWO_PI_32
    assert val.imag == 0.0


def test_plane_wave_convergence_ladder():
    # integral e^{-p^2} e^{i p.d} d^3p = pi^{3/2} e^{-|d|^2/4}; the angular
    # error must drop steeply with the rule order.
    d = np.array([0.9, -0.6, 1.0])
    exact = np.pi**1.5 * np.exp(-np.dot(d, d) / 4.0)
    errs = {}
    for order in (26, 50, 194):
        grid = build_grid(96, order, 12.0)
        r = np.repeat(grid.radial_nodes, grid.n_angular)
        val = integrate(grid, np.exp(-(r**2)) * np.exp(1j * (grid.points() @ d)))
        errs[order] = abs(val - exact) / abs(exact)
    assert errs[26] < 1e-4
    assert errs[50] < 1e-6
    assert errs[50] < errs[26] / 100.0
    assert errs[194] < 1e-12


def test_inversion_and_conjugation_identities():
    grid = build_grid(32, 38, 6.0)
    rng = np.random.default_rng(7)
    samples = rng.normal(size=grid.n_nodes) + 1j * rng.normal(size=grid.n_nodes)
    # node set is inversion symmetric with equal weights; the permutation
    # only reorders the dot product, so agreement is to rounding
    ref = integrate(grid, samples)
    assert abs(integrate(grid, reflect_samples(grid, samples)) - ref) < 1e-12 * abs(ref)
    assert integrate(grid, np.conj(samples)) == np.conj(ref)


def test_integrate_accepts_radial_major_matrix():
    grid = build_grid(16, 14, 4.0)
    flat = np.arange(grid.n_nodes, dtype=float)
    mat = flat.reshape(grid.n_radial, grid.n_angular)
    assert integrate(grid, mat) == integrate(grid, flat)
    with pytest.raises(UsageError):
        integrate(grid, flat[:-1])


def test_build_grid_validation():
    with pytest.raises(ConfigError):
        build_grid(3, 26, 10.0)
    with pytest.raises(ConfigError):
        build_grid(64, 74, 10.0)  # negative-weight design is not offered
    with pytest.raises(ConfigError):
        build_grid(64, 27, 10.0)
    with pytest.raises(ConfigError):
        build_grid(64, 26, 0.0)
    with pytest.raises(ConfigError):
        build_grid(64, 26, -1.0)


def test_grid_checksum_deterministic():
    a = build_grid(64, 26, 10.0)
    b = build_grid(64, 26, 10.0)
    c = build_grid(64, 50, 10.0)
    assert a.checksum == b.checksum
    assert a.checksum != c.checksum
    assert not a.radial_nodes.flags.writeable


def test_radial_fourier_indicator():
    # unit ball indicator: f~(p) = (2 pi)^{-3/2} 4 pi (sin p - p cos p)/p^3
    p = np.array([0.0, 0.5, 1.0, 2.0, 5.0])
    got = radial_fourier(lambda r: np.ones_like(r), 1.0, p)
    with np.errstate(invalid="ignore"):
        expected = (2.0 * np.pi) ** -1.5 * 4.0 * np.pi * (np.sin(p) - p * np.cos(p)) / p**3
    expected[0] = (2.0 * np.pi) ** -1.5 * 4.0 * np.pi / 3.0
    assert np.max(np.abs(got - expected)) < 1e-12
    # scalar momentum passes through as a scalar
    assert np.isscalar(radial_fourier(lambda r: np.ones_like(r), 1.0, 0.0))


def test_radial_fourier_panel_consistency():
    fn = lambda r: (1.0 - r**2) ** 2
    p = np.linspace(0.0, 8.0, 17)
    a = radial_fourier(fn, 1.0, p, panels=200)
    b = radial_fourier(fn, 1.0, p, panels=400)
    assert np.max(np.abs(a - b)) < 1e-12


def test_radial_panel_rule_integrates_polynomial():
    nodes, weights = radial_panel_rule(2.0, panels=200)
    assert abs(np.dot(weights, nodes**4) - 2.0**5 / 5.0) < 1e-12
    with pytest.raises(ConfigError):
        radial_panel_rule(2.0, panels=100)


def test_composite_rule_matches_single_rule():
    n1, w1 = gauss_legendre_unit(512)
    n2, w2 = composite_legendre_unit(8, 64)
    assert len(n2) == 512 and np.all(np.diff(n2) > 0)
    assert abs(w2.sum() - 1.0) < 1e-14
    f = lambda r: np.exp(-9.0 * r * r) * np.cos(31.0 * r)
    assert abs(np.dot(w1, f(n1)) - np.dot(w2, f(n2))) < 1e-13
    cached = composite_legendre_unit(8, 64)
    assert cached[0] is n2 and not cached[0].flags.writeable
    with pytest.raises(ConfigError):
        composite_legendre_unit(0)
    with pytest.raises(ConfigError):
        composite_legendre_unit(4, 1)
