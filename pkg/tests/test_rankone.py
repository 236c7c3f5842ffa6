import math
import threading

import numpy as np
import pytest

from finitejsr import catalog
from finitejsr.matcore import RankTooHigh, similarity_transform, spectral_radius
from finitejsr.rankone import (
    ExactJsrResult,
    PowerPair,
    Pure,
    RankOnePair,
    optimal_word,
    solve_bounded,
    solve_certified,
    word_string,
)

FIFTH_ROOT_4 = 4 ** (1 / 5)
# brute-force scan of (l/11)**(1/(l+1)) for l <= 200
EX5_ELL_STAR = 31
EX5_VALUE = 1.0329077393780195


def random_pair(rng, d=None):
    d = int(rng.integers(2, 5)) if d is None else d
    s1 = rng.uniform(-2, 2, (d, d))
    s2 = np.outer(rng.uniform(-2, 2, d), rng.uniform(-2, 2, d))
    return s1, s2


def example_pairs():
    return [catalog.example1(), catalog.example2(), catalog.example3(),
            catalog.example4(0.2), catalog.example5(1 / 11)]


class TestScalarGrowth:
    def test_example1_linear(self):
        pair = RankOnePair(*catalog.example1())
        for ell in range(0, 30):
            assert pair.scalar_growth(ell) == pytest.approx(ell, abs=1e-12)

    def test_example3(self):
        pair = RankOnePair(*catalog.example3())
        for ell in range(0, 30):
            assert pair.scalar_growth(ell) == pytest.approx(abs(1 - ell / 2), abs=1e-12)

    def test_ell_zero_is_rho_s2(self):
        for s1, s2 in example_pairs():
            pair = RankOnePair(s1, s2)
            assert pair.scalar_growth(0) == pytest.approx(spectral_radius(s2), abs=1e-12)

    def test_memo_is_order_independent(self):
        s1, s2 = catalog.example2()
        a, b = RankOnePair(s1, s2), RankOnePair(s1, s2)
        late = a.scalar_growth(40)
        for ell in range(41):
            b.scalar_growth(ell)
        assert b.scalar_growth(40) == late

    def test_huge_ell_stays_finite_in_log(self):
        pair = RankOnePair(3.0 * np.eye(2), np.outer([1.0, 0.0], [1.0, 0.0]))
        assert pair.log_scalar_growth(2000) == pytest.approx(2000 * math.log(3.0))
        assert pair.scalar_growth(2000) == math.inf

    def test_concurrent_memo(self):
        pair = RankOnePair(*catalog.example4(0.1))
        results = {}

        def work(i):
            results[i] = [pair.scalar_growth(ell) for ell in range(i, 300, 7)]

        threads = [threading.Thread(target=work, args=(i,)) for i in range(7)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        ref = RankOnePair(*catalog.example4(0.1))
        for i, vals in results.items():
            assert vals == [ref.scalar_growth(ell) for ell in range(i, 300, 7)]


class TestCandidateValue:
    def test_reference_values(self):
        assert RankOnePair(*catalog.example1()).candidate_value(4, 1) == pytest.approx(
            FIFTH_ROOT_4, abs=1e-12)
        assert RankOnePair(*catalog.example2()).candidate_value(PowerPair(5, 1)) == pytest.approx(
            catalog.example2_exact(), abs=1e-12)
        assert RankOnePair(*catalog.example3()).candidate_value(10, 1) == pytest.approx(
            4 ** (1 / 11), abs=1e-12)

    def test_example2_closed_form_grid(self):
        pair = RankOnePair(*catalog.example2())
        r = 1 - math.sqrt(3) / 2
        for ell in range(1, 12):
            for m in range(1, 6):
                rho = (ell / math.sqrt(2) + math.sqrt(3) / 2 - 1) * r ** (m - 1)
                assert pair.candidate_value(ell, m) == pytest.approx(rho ** (1 / (ell + m)), rel=1e-12)

    @pytest.mark.parametrize("case", range(5))
    def test_matches_matrix_oracle(self, case):
        pair = RankOnePair(*example_pairs()[case])
        for ell in range(0, 30):
            for m in range(1, 40 - ell):
                a = pair.candidate_value(ell, m)
                b = pair.candidate_value_matrix_check(ell, m)
                assert a == pytest.approx(b, abs=1e-9), (ell, m)

    def test_nilpotent_rank_one_higher_powers_vanish(self):
        pair = RankOnePair(*catalog.example5(0.3))
        for ell in range(5):
            for m in (2, 3, 7):
                assert pair.candidate_value(ell, m) == 0.0
                assert pair.candidate_value_matrix_check(ell, m) == 0.0

    def test_matrix_check_budget(self):
        pair = RankOnePair(*catalog.example1())
        with pytest.raises(ValueError):
            pair.candidate_value_matrix_check(150, 51)

    def test_invalid_pair(self):
        with pytest.raises(ValueError):
            PowerPair(2, 0)
        with pytest.raises(ValueError):
            PowerPair(-1, 1)

    @pytest.mark.parametrize("seed", range(20))
    def test_m1_dominance(self, seed):
        pair = RankOnePair(*random_pair(np.random.default_rng(seed)))
        for ell in range(31):
            if pair.scalar_growth(ell) == 0:
                continue
            cap = max(pair.candidate_value(ell, 1), pair.rho_b) + 1e-12
            for m in range(2, 31):
                assert pair.candidate_value(ell, m) <= cap


class TestSolveBounded:
    def test_example1(self):
        res = solve_bounded(*catalog.example1(), ell_max=20, m_max=5)
        assert res.value == pytest.approx(FIFTH_ROOT_4, abs=1e-12)
        assert res.witness == PowerPair(4, 1)
        assert not res.certified

    def test_example5_window_misses_optimum(self):
        res = solve_bounded(*catalog.example5(1 / 11), ell_max=10, m_max=3)
        assert res.value < 1
        assert res.value == pytest.approx((10 / 11) ** (1 / 11), rel=1e-12)

    def test_zero_s1(self):
        s2 = np.outer([1.0, 0.0], [0.5, 0.3])
        res = solve_bounded(np.zeros((2, 2)), s2, ell_max=5, m_max=3)
        assert res.value == pytest.approx(0.5)
        assert res.witness is Pure.S2

    def test_tie_break_prefers_short(self):
        # every block value equals 1: the shortest word wins
        res = solve_bounded(np.eye(2), np.outer([1.0, 0.0], [1.0, 0.0]), ell_max=6, m_max=4)
        assert res.value == pytest.approx(1.0)
        assert res.witness is Pure.S2

    def test_agrees_with_2d_and_certified(self):
        for s1, s2 in example_pairs()[:3]:
            b = solve_bounded(s1, s2, 40, 10)
            c = solve_certified(s1, s2)
            assert b.value == pytest.approx(c.value, abs=1e-12)
            assert b.witness == c.witness


class TestSolveCertified:
    def test_example1(self):
        res = solve_certified(*catalog.example1(), tol=1e-9)
        assert res.value == pytest.approx(FIFTH_ROOT_4, abs=1e-12)
        assert res.witness == PowerPair(4, 1)
        assert res.certified and res.gap <= 1e-9

    def test_example5(self):
        res = solve_certified(*catalog.example5(1 / 11), tol=1e-9)
        assert res.witness == PowerPair(EX5_ELL_STAR, 1)
        assert res.value == pytest.approx(EX5_VALUE, abs=1e-12)
        assert res.certified

    def test_nilpotent_pair(self):
        s1 = np.array([[0.0, 0, 0], [1, 0, 0], [1, 1, 0]])
        s2 = np.zeros((3, 3))
        s2[1, 0] = 1.0
        res = solve_certified(s1, s2)
        assert res.value == 0.0
        assert res.certified

    def test_zero_s2(self):
        s1 = np.array([[2.0, 1.0], [0.0, -3.0]])
        res = solve_certified(s1, np.zeros((2, 2)))
        assert res.value == pytest.approx(3.0)
        assert res.witness is Pure.S1 and res.certified

    def test_both_zero_rejected(self):
        with pytest.raises(RankTooHigh):
            RankOnePair(np.zeros((2, 2)), np.zeros((2, 2)))

    def test_both_full_rank_rejected(self):
        with pytest.raises(RankTooHigh):
            RankOnePair(np.eye(2), np.eye(2))

    def test_swap_roles(self):
        s1, s2 = catalog.example1()
        direct = solve_certified(s1, s2)
        swapped = solve_certified(s2, s1 + 0)  # S1 rank one, S2 rank two
        assert swapped.value == pytest.approx(direct.value, abs=1e-12)
        assert swapped.letters == (2, 1)
        assert swapped.word == (2, 2, 2, 2, 1)

    def test_pure_s1_dominates(self):
        s1 = np.diag([2.0, 0.5])
        s2 = np.outer([0.0, 1.0], [0.0, 0.1])
        res = solve_certified(s1, s2)
        assert res.witness is Pure.S1
        assert res.value == pytest.approx(2.0)
        assert res.certified

    def test_budget_exhaustion(self):
        # rho(S1) = 1 attained only in the limit by a Jordan block: no finite certificate
        s1 = np.array([[1.0, 1.0], [0.0, 1.0]])
        s2 = np.outer([0.0, 1.0], [1.0, 0.0]) * 1e-3
        res = solve_certified(s1, s2, tol=1e-9, ell_budget=300)
        assert not res.certified
        assert res.explored_ell_max == 300
        assert "budget" in res.diagnostic
        assert res.value >= 1.0

    def test_dominates_evaluated_candidates(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            pair = RankOnePair(*random_pair(rng))
            res = pair.solve_certified()
            assert res.value >= max(pair.rho_a, pair.rho_b) - 1e-12
            for ell in range(res.explored_ell_max + 1):
                assert res.value >= pair.candidate_value(ell, 1) - 1e-12
            if isinstance(res.witness, PowerPair):
                assert res.value == pytest.approx(pair.candidate_value(res.witness), abs=1e-12)

    @pytest.mark.parametrize("seed", range(15))
    def test_similarity_invariance(self, seed):
        rng = np.random.default_rng(seed)
        s1, s2 = random_pair(rng)
        d = s1.shape[0]
        p = np.eye(d) + 0.3 * rng.normal(size=(d, d))
        a = solve_certified(s1, s2)
        b = solve_certified(similarity_transform(s1, p), similarity_transform(s2, p))
        assert b.value == pytest.approx(a.value, abs=1e-7)
        assert b.witness == a.witness

    @pytest.mark.parametrize("c", [0.3, -1.7, 4.0])
    def test_scaling_covariance(self, c):
        for s1, s2 in example_pairs():
            a = solve_certified(s1, s2)
            b = solve_certified(c * s1, c * s2)
            assert b.value == pytest.approx(abs(c) * a.value, rel=1e-10)
            assert b.witness == a.witness


class TestWords:
    def test_example1_word(self):
        res = solve_certified(*catalog.example1())
        assert optimal_word(res) == (1, 1, 1, 1, 2)
        assert word_string(optimal_word(res)) == "1^4 2^1"

    def test_pure_repeat(self):
        res = ExactJsrResult(1.0, Pure.S1, True, 0)
        assert optimal_word(res, 3) == (1, 1, 1)

    def test_example3_length(self):
        res = solve_certified(*catalog.example3())
        assert len(optimal_word(res)) == 11
        assert len(optimal_word(res, 2)) == 22

    def test_bad_repeat(self):
        with pytest.raises(ValueError):
            optimal_word(ExactJsrResult(1.0, Pure.S1, True, 0), 0)
