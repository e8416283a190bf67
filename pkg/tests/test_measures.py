import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sprlab.measures import (
    ResourceLimitError,
    inner,
    make_interval_grid,
    make_product_space,
    make_square_grid,
    min_phase_dist,
    norm_p,
)

TWO_PI = 2 * math.pi


class TestIntervalGrid:
    def test_atoms_n4(self):
        mu = make_interval_grid(4)
        assert np.allclose(mu.points, [1 / 8, 3 / 8, 5 / 8, 7 / 8])
        assert np.allclose(mu.weights, 0.25)

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            make_interval_grid(1)

    def test_character_norm(self):
        mu = make_interval_grid(1024)
        f = mu.sample(lambda x: np.exp(2j * math.pi * x))
        assert abs(inner(f, f) - 1) < 1e-14

    def test_character_orthogonality(self):
        mu = make_interval_grid(1024)
        f = mu.sample(lambda x: np.exp(2j * math.pi * x))
        g = mu.sample(lambda x: np.exp(4j * math.pi * x))
        assert abs(inner(f, g)) < 1e-14


class TestSquareGrid:
    def test_atom_count(self):
        mu = make_square_grid(2)
        assert mu.n_atoms == 4
        assert np.allclose(mu.weights, 0.25)

    def test_sine_norm(self):
        mu = make_square_grid(256)
        f = mu.sample(lambda x, y: math.sqrt(2) * np.sin(TWO_PI * y))
        assert abs(norm_p(f, 2) - 1) < 1e-12

    def test_sine_orthogonality(self):
        mu = make_square_grid(256)
        f = mu.sample(lambda x, y: math.sqrt(2) * np.sin(TWO_PI * y) * np.exp(2j * math.pi * x))
        g = mu.sample(lambda x, y: math.sqrt(2) * np.sin(2 * TWO_PI * y) * np.exp(2j * math.pi * x))
        assert abs(inner(f, g)) < 1e-12


class TestProductSpace:
    def test_fair_coin(self):
        mu = make_product_space([(1, 0.5), (-1, 0.5)], 3)
        assert mu.n_atoms == 8
        assert np.allclose(mu.weights, 1 / 8)

    def test_ternary_moments(self):
        v = math.sqrt(1.5)
        mu = make_product_space([(v, 1 / 3), (0, 1 / 3), (-v, 1 / 3)], 2)
        r1 = mu.function(mu.points[:, 0])
        one = mu.function(np.ones(mu.n_atoms))
        assert abs(inner(r1, one)) < 1e-15
        assert abs(norm_p(r1, 2) - 1) < 1e-15
        assert abs(norm_p(r1, 4) ** 4 - 1.5) < 1e-14

    def test_root_of_unity_moments(self):
        v = math.sqrt(1.5)
        w = np.exp(2j * math.pi / 3)
        support = [(0j, 1 / 3)] + [(v * w**k, 2 / 9) for k in range(3)]
        mu = make_product_space(support, 2)
        r = mu.points[:, 0]
        wts = mu.weights
        assert abs(np.sum(r * wts)) < 1e-14
        assert abs(np.sum(r**2 * wts)) < 1e-14
        assert abs(np.sum(np.abs(r) ** 2 * wts) - 1) < 1e-14

    def test_atom_cap(self):
        with pytest.raises(ResourceLimitError):
            make_product_space([(1, 0.5), (-1, 0.5)], 21)

    def test_bad_distribution(self):
        with pytest.raises(ValueError):
            make_product_space([(1, 0.7), (-1, 0.7)], 2)


class TestNorms:
    def test_constant(self):
        mu = make_interval_grid(64)
        one = mu.function(np.ones(64))
        for p in (1, 2, 4, math.inf):
            assert abs(norm_p(one, p) - 1) < 1e-14

    def test_sine_fourth_moment(self):
        mu = make_interval_grid(1024)
        r = mu.sample(lambda x: math.sqrt(2) * np.sin(TWO_PI * x))
        assert abs(norm_p(r, 4) - 1.5**0.25) < 1e-10

    def test_rejects_small_p(self):
        mu = make_interval_grid(8)
        with pytest.raises(ValueError):
            norm_p(mu.function(np.ones(8)), 0.5)

    @given(c=st.floats(-5, 5), p=st.sampled_from([1.0, 2.0, 4.0]))
    @settings(max_examples=25, deadline=None)
    def test_homogeneity(self, c, p):
        mu = make_interval_grid(32)
        f = mu.sample(lambda x: np.exp(2j * math.pi * x) + 0.3)
        assert norm_p(c * f, p) == pytest.approx(abs(c) * norm_p(f, p), abs=1e-12)


class TestMinPhaseDist:
    def test_identical(self):
        mu = make_interval_grid(128)
        f = mu.sample(lambda x: np.exp(2j * math.pi * x))
        assert min_phase_dist(f, f, 2).distance < 1e-14

    def test_orthonormal_pair(self):
        mu = make_interval_grid(256)
        f = mu.sample(lambda x: np.exp(2j * math.pi * x))
        g = mu.sample(lambda x: np.exp(4j * math.pi * x))
        assert min_phase_dist(f, g, 2).distance == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_pure_phase_p4(self):
        mu = make_interval_grid(256)
        g = mu.sample(lambda x: np.exp(2j * math.pi * x) + 0.5)
        f = np.exp(1j * math.pi / 3) * g
        al = min_phase_dist(f, g, 4)
        assert abs(al.theta - math.pi / 3) < 1e-10
        assert al.distance < 1e-10

    def test_real_field_sign(self):
        mu = make_interval_grid(64)
        g = mu.sample(lambda x: np.sin(TWO_PI * x))
        al = min_phase_dist(-1.0 * g, g, 2, field="real")
        assert al.theta == math.pi
        assert al.distance < 1e-14

    def test_degenerate_flag(self):
        mu = make_interval_grid(256)
        f = mu.sample(lambda x: np.exp(2j * math.pi * x))
        g = mu.sample(lambda x: np.exp(4j * math.pi * x))
        assert min_phase_dist(f, g, 2).degenerate

    @given(seed=st.integers(0, 10**6))
    @settings(max_examples=20, deadline=None)
    def test_symmetry(self, seed):
        rng = np.random.default_rng(seed)
        mu = make_interval_grid(64)
        f = mu.function(rng.standard_normal(64) + 1j * rng.standard_normal(64))
        g = mu.function(rng.standard_normal(64) + 1j * rng.standard_normal(64))
        for p in (2, 4):
            d1 = min_phase_dist(f, g, p).distance
            d2 = min_phase_dist(g, f, p).distance
            assert d1 == pytest.approx(d2, abs=1e-10)

    @given(seed=st.integers(0, 10**6), phi=st.floats(0, TWO_PI))
    @settings(max_examples=20, deadline=None)
    def test_unimodular_invariance(self, seed, phi):
        rng = np.random.default_rng(seed)
        mu = make_interval_grid(64)
        f = mu.function(rng.standard_normal(64) + 1j * rng.standard_normal(64))
        g = mu.function(rng.standard_normal(64) + 1j * rng.standard_normal(64))
        w = complex(math.cos(phi), math.sin(phi))
        for p in (2, 4):
            assert min_phase_dist(f, w * g, p).distance == pytest.approx(
                min_phase_dist(f, g, p).distance, abs=1e-10
            )

    @given(seed=st.integers(0, 10**6))
    @settings(max_examples=15, deadline=None)
    def test_closed_form_matches_scan(self, seed):
        rng = np.random.default_rng(seed)
        mu = make_interval_grid(64)
        f = mu.function(rng.standard_normal(64) + 1j * rng.standard_normal(64))
        g = mu.function(rng.standard_normal(64) + 1j * rng.standard_normal(64))
        closed = min_phase_dist(f, g, 2, method="closed-form").distance
        scanned = min_phase_dist(f, g, 2, method="scan").distance
        assert closed == pytest.approx(scanned, abs=1e-10)

    @given(seed=st.integers(0, 10**6), p=st.sampled_from([2.0, 4.0]))
    @settings(max_examples=20, deadline=None)
    def test_modulus_difference_lower_bound(self, seed, p):
        # pointwise | |f| - |zg| | <= |f - zg| makes this a true lower bound
        rng = np.random.default_rng(seed)
        mu = make_interval_grid(64)
        f = mu.function(rng.standard_normal(64) + 1j * rng.standard_normal(64))
        g = mu.function(rng.standard_normal(64) + 1j * rng.standard_normal(64))
        diff = mu.function(np.abs(f.values) - np.abs(g.values))
        assert norm_p(diff, p) <= min_phase_dist(f, g, p).distance + 1e-12


def test_parseval(sine4):
    rng = np.random.default_rng(11)
    from sprlab.bases import synthesize

    a = rng.standard_normal(4)
    f = synthesize(sine4, a)
    assert norm_p(f, 2) ** 2 == pytest.approx(float(np.sum(a**2)), rel=1e-10)


def test_measure_mismatch_rejected():
    f = make_interval_grid(8).function(np.ones(8))
    g = make_interval_grid(16).function(np.ones(16))
    with pytest.raises(ValueError):
        inner(f, g)
