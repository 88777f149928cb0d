import math
from fractions import Fraction

import numpy as np
import pytest

import oracles
from conftest import random_bipartite
from purebraid.pf import (
    IntersectionMatrix,
    PFConvergenceError,
    ReducibleMatrixError,
    dilatation_from_mu,
    dilatation_of_filling_pair,
    gram,
    is_irreducible,
    max_row_sum,
    min_row_sum,
    pf_eigenvalue,
    residual,
    row_sums,
    thurston_matrix,
)

CASE1 = [[6, 0], [0, 6], [8, 8]]
CASE1_GRAM = [[36, 0, 48], [0, 36, 48], [48, 48, 128]]


class TestIntersectionMatrix:
    def test_round_trip(self):
        N = IntersectionMatrix.from_array(np.array(CASE1))
        assert N.rows == 3 and N.cols == 2
        assert N.to_array().tolist() == CASE1

    def test_entries_become_python_ints(self):
        N = IntersectionMatrix(((np.int64(2), 1),))
        assert all(type(x) is int for x in N.entries[0])

    @pytest.mark.parametrize(
        "entries, message",
        [
            (((1, -1),), "nonnegative"),
            (((1, 0), (0, 0)), "row 1"),
            (((1, 0), (1, 0)), "column 1"),
            (((1, 2), (3,)), "unequal"),
            ((), "non-empty"),
        ],
    )
    def test_rejects(self, entries, message):
        with pytest.raises(ValueError, match=message):
            IntersectionMatrix(entries)


def test_gram_matches_hand_computation():
    assert gram(CASE1).tolist() == CASE1_GRAM


def test_gram_is_exact_past_int64():
    big = 3 * 10**9
    G = gram([[big, big], [big, 1]])
    assert G[0][0] == 2 * big * big
    assert isinstance(G[0][0], int)


def test_row_sums():
    assert row_sums(CASE1_GRAM) == [84, 84, 224]
    assert max_row_sum(CASE1_GRAM) == 224
    assert min_row_sum(CASE1_GRAM) == 84


def test_irreducibility():
    assert is_irreducible(CASE1_GRAM)
    assert not is_irreducible([[1, 0], [0, 1]])
    assert not is_irreducible([[1, 1], [0, 1]])
    assert is_irreducible([[0, 1], [1, 0]])


class TestPFEigenvalue:
    def test_case1_brackets_164(self):
        lo, hi = oracles.largest_root(CASE1_GRAM)
        assert lo == hi == 164
        br = pf_eigenvalue(CASE1_GRAM)
        assert br.lower <= 164 <= br.upper
        assert br.width <= 1e-10
        assert 84 <= br.lower and br.upper <= 224

    def test_constant_row_sums_need_no_iteration(self):
        br = pf_eigenvalue([[2, 3], [3, 2]])
        assert br.lower == br.upper == 5 and br.iterations == 0

    def test_periodic_matrix(self):
        br = pf_eigenvalue([[0, 4], [1, 0]])
        assert br.lower <= 2 <= br.upper and br.width < 1e-10

    def test_against_charpoly_oracle(self, rng):
        for _ in range(25):
            M = gram(random_bipartite(rng))
            lo, hi = oracles.largest_root(M.tolist())
            br = pf_eigenvalue(M)
            assert br.lower_float <= float(hi) + 1e-9 * float(hi)
            assert br.upper_float >= float(lo) - 1e-9 * float(lo)

    def test_bisection_oracle_agrees_with_isolation(self):
        lo, hi = oracles.bisect_root(CASE1_GRAM, 84, 224)
        assert abs(float(lo) - 164) < 1e-12 and abs(float(hi) - 164) < 1e-12

    def test_reducible_raises(self):
        with pytest.raises(ReducibleMatrixError):
            pf_eigenvalue([[1, 0], [0, 2]])

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            pf_eigenvalue([[1, 2, 3]])
        with pytest.raises(ValueError):
            pf_eigenvalue([[1, -1], [1, 1]])
        with pytest.raises(ValueError):
            pf_eigenvalue(CASE1_GRAM, tolerance=0)

    def test_convergence_failure_carries_bracket(self):
        M = gram([[50, 3, 0, 1], [1, 49, 1, 7], [0, 1, 50, 2], [4, 9, 1, 33]])
        with pytest.raises(PFConvergenceError) as info:
            pf_eigenvalue(M, tolerance=1e-20, max_iter=1)
        br = info.value.bracket
        assert br.lower <= br.upper

    def test_tolerance_floor_reported(self):
        # Entries ~1e9: an absolute 1e-10 width is below extended-precision resolution.
        N = [[30000, 1], [2, 30000]]
        br = pf_eigenvalue(gram(N), tolerance=1e-10)
        assert br.tolerance > 1e-10
        assert br.width <= br.tolerance
        exact = oracles.largest_root(gram(N).tolist())
        assert br.lower <= float(exact[1]) * (1 + 1e-15)

    def test_residual_small(self, rng):
        for _ in range(20):
            M = gram(random_bipartite(rng))
            assert residual(M, pf_eigenvalue(M)) <= 1e-8

    def test_upper_float_rounds_up(self):
        br = pf_eigenvalue(gram([[3, 1], [1, 2], [5, 7]]))
        assert br.upper_float >= br.upper
        assert br.lower_float <= br.lower


class TestDilatation:
    @pytest.mark.parametrize(
        "mu, expected",
        [
            (9, (11 + math.sqrt(117)) / 2),
            (1, (3 + math.sqrt(5)) / 2),
            (4, 3 + 2 * math.sqrt(2)),
        ],
    )
    def test_closed_forms(self, mu, expected):
        est = dilatation_from_mu(mu)
        assert est.dilatation == pytest.approx(expected, rel=1e-15)
        assert est.trace == 2 + mu

    def test_mu_164(self):
        est = dilatation_from_mu(164)
        assert est.dilatation == pytest.approx(float(oracles.dilatation(164)), rel=1e-15)
        assert est.dilatation == pytest.approx(165.99397, abs=1e-5)
        assert est.dilatation + 1 / est.dilatation == pytest.approx(166, abs=1e-12)

    def test_small_mu_keeps_precision(self):
        est = dilatation_from_mu(1e-12)
        assert est.entropy == pytest.approx(float(oracles.entropy(1e-12)), rel=1e-12)

    @pytest.mark.parametrize("mu", [0, -1, math.inf, math.nan])
    def test_rejects(self, mu):
        with pytest.raises(ValueError):
            dilatation_from_mu(mu)

    def test_thurston_matrix_spectrum(self):
        mu = 164.0
        vals = np.linalg.eigvals(thurston_matrix(mu))
        assert max(abs(vals)) == pytest.approx(dilatation_from_mu(mu).dilatation, rel=1e-12)
        assert np.linalg.det(thurston_matrix(mu)) == pytest.approx(1.0)

    @pytest.mark.parametrize("i, mu", [(1, 1), (2, 4), (3, 9)])
    def test_filling_pair(self, i, mu):
        assert dilatation_of_filling_pair(i).mu == mu

    def test_filling_pair_rejects_zero(self):
        with pytest.raises(ValueError):
            dilatation_of_filling_pair(0)

    def test_as_dict_keys(self):
        assert set(dilatation_from_mu(9).as_dict()) == {"mu", "trace", "lambda", "entropy"}


def test_exact_fraction_bracket_case1():
    br = pf_eigenvalue(CASE1_GRAM)
    assert Fraction(float(br.lower)) <= 164 <= Fraction(br.upper_float)
