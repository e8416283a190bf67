import numpy as np
import pytest

from sprlab.bases import iid_basis, lacunary_sine_basis, rudin_2d_basis
from sprlab.hypotheses import (
    check_moments,
    check_orthogonality,
    embedding_constant,
    full_report,
    s_norm_sq_via_l4,
)


class TestOrthogonality:
    def test_sine4_passes(self, sine4):
        chk = check_orthogonality(sine4)
        assert chk.passed
        assert chk.max_violation < 1e-10

    def test_base3_fails_with_witness(self, sine3):
        chk = check_orthogonality(sine3)
        assert not chk.passed
        assert chk.max_violation == pytest.approx(0.5, abs=1e-10)
        labels = set(chk.witness)
        assert any(lbl.startswith("s[") for lbl in labels)
        assert any(lbl.startswith("r[") for lbl in labels)

    def test_single_element_vacuous(self):
        b = lacunary_sine_basis(1, 4, 128)
        chk = check_orthogonality(b)
        assert chk.passed
        assert chk.n_inner_products == 1  # only <1, s_1>

    def test_rudin_on_progression_fails(self):
        b = rudin_2d_basis([1, 2, 3], 3, 64)
        chk = check_orthogonality(b)
        assert not chk.passed
        assert chk.max_violation > 0.4


class TestMoments:
    def test_sine4_gap(self, sine4):
        mom = check_moments(sine4)
        assert mom.moment_gap == pytest.approx(0.5, abs=1e-10)
        assert mom.sup_norm4 == pytest.approx(1.5**0.25, abs=1e-10)
        assert not mom.subsampled

    def test_gap_invariant_under_m_and_grid(self):
        for m, grid in [(2, 512), (3, 1024), (5, 8192)]:
            b = lacunary_sine_basis(m, 4, grid)
            assert check_moments(b).moment_gap == pytest.approx(0.5, abs=1e-10)

    def test_ternary_gap_exact(self, ternary):
        assert abs(check_moments(ternary).moment_gap - 0.5) < 1e-14

    def test_exponential_gap_zero(self, expo12):
        mom = check_moments(expo12)
        assert mom.moment_gap < 1e-12
        assert not mom.passed_moment_gap

    def test_gap_bounded_by_fourth_moment(self, sine4, ternary, rudin):
        for b in (sine4, ternary, rudin):
            mom = check_moments(b)
            assert mom.moment_gap <= mom.sup_norm4**4 - 1 + 1e-9

    def test_s_norm_two_routes_agree(self, sine4, ternary, rudin):
        for b in (sine4, ternary, rudin):
            assert np.max(np.abs(b.s_norms_sq - s_norm_sq_via_l4(b))) < 1e-10


class TestVerdicts:
    def test_satisfied(self, sine4, ternary, rudin, complex_iid):
        for b in (sine4, ternary, rudin, complex_iid):
            assert full_report(b).verdict == "satisfied"

    def test_base3_failed(self, sine3):
        assert full_report(sine3).verdict == "failed"

    def test_exponential_degenerate(self, expo12):
        assert full_report(expo12).verdict == "degenerate"

    def test_rademacher_degenerate(self):
        b = iid_basis([(1.0, 0.5), (-1.0, 0.5)], 3, check_support=False)
        assert full_report(b).verdict == "degenerate"

    def test_rudin_progression_failed(self):
        b = rudin_2d_basis([1, 2, 3], 3, 64)
        assert full_report(b).verdict == "failed"


class TestEmbedding:
    def test_at_least_single_element(self, sine4):
        est = embedding_constant(sine4, 4, trials=0, seed=0)
        assert est.constant >= 1.5**0.25 - 1e-12

    def test_constant_at_least_one(self, ternary, rudin):
        for b in (ternary, rudin):
            assert embedding_constant(b, 4, 20, seed=1).constant >= 1 - 1e-9

    def test_monotone_in_trials(self, sine4):
        c50 = embedding_constant(sine4, 4, 50, seed=3).constant
        c200 = embedding_constant(sine4, 4, 200, seed=3).constant
        assert c200 >= c50

    def test_deterministic(self, sine4):
        a = embedding_constant(sine4, 4, 100, seed=9)
        b = embedding_constant(sine4, 4, 100, seed=9)
        assert a.constant == b.constant

    def test_flat_vector_no_blowup(self):
        # the flat probe ratio stays bounded as the family grows
        ratios = []
        for m, grid in [(2, 512), (4, 4096), (6, 65536)]:
            b = lacunary_sine_basis(m, 4, grid)
            est = embedding_constant(b, 4, trials=0, seed=0)
            ratios.append(est.constant)
        assert max(ratios) < 4.0

    def test_rejects_negative_trials(self, sine4):
        with pytest.raises(ValueError):
            embedding_constant(sine4, 4, -1, seed=0)
