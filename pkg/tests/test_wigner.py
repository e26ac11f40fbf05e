import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import expm_d_matrix
from spinentropy.errors import DomainError, PathDisagreement, ProjectionError
from spinentropy.wigner import (
    EPS,
    HalfInt,
    check_symmetries,
    d_matrix,
    d_squared_factored,
    d_squared_sum,
    legendre_specialization,
    projections,
    route_gap,
    trig_prefactor,
)

REF_BETA1 = (0.4568019, 0.40899267, 0.1220624, 0.012143)


class TestHalfInt:
    @pytest.mark.parametrize("value,twice", [("3/2", 3), (1.5, 3), (2, 4), ("-1/2", -1), (HalfInt(5), 5), ("0", 0)])
    def test_of(self, value, twice):
        assert HalfInt.of(value).twice == twice

    def test_rejects_thirds(self):
        with pytest.raises(ProjectionError):
            HalfInt.of("1/3")

    def test_str(self):
        assert str(HalfInt(3)) == "3/2"
        assert str(HalfInt(-4)) == "-2"

    def test_projections_order(self):
        assert [m.twice for m in projections(1.5)] == [3, 1, -1, -3]
        assert [m.twice for m in projections(1, ascending=True)] == [-2, 0, 2]


class TestSumRoute:
    def test_spin_half(self):
        assert d_squared_sum(0.5, 0.5, 0.5, 0.8) == pytest.approx(math.cos(0.4) ** 2, abs=1e-15)

    def test_identity_at_zero(self):
        assert d_squared_sum(1.5, 1.5, 1.5, 0.0) == 1.0

    def test_reference_beta_one(self):
        assert d_squared_sum(1.5, 1.5, 1.5, 1.0) == pytest.approx(0.4568019, abs=1e-6)

    @pytest.mark.parametrize("mp,m", [(2.5, 0.5), ("1/2", "1"), (0.5, -2)])
    def test_projection_errors(self, mp, m):
        with pytest.raises(ProjectionError):
            d_squared_sum(1.5, mp, m, 0.3)

    def test_angle_domain(self):
        with pytest.raises(DomainError):
            d_squared_sum(1, 0, 0, 3.2)

    def test_spin_one_closed_form(self):
        b = 0.7
        c = math.cos(b)
        expected = np.array([
            [(1 + c) ** 2 / 4, (1 - c * c) / 2, (1 - c) ** 2 / 4],
            [(1 - c * c) / 2, c * c, (1 - c * c) / 2],
            [(1 - c) ** 2 / 4, (1 - c * c) / 2, (1 + c) ** 2 / 4],
        ])
        np.testing.assert_allclose(d_matrix(1, b).sq, expected, atol=1e-15)

    @pytest.mark.parametrize("twice_j", [1, 2, 3, 4, 7, 12, 17, 25])
    @pytest.mark.parametrize("beta", [0.0, 0.3, 1.0, math.pi / 2, 2.5, math.pi])
    def test_matches_matrix_exponential(self, twice_j, beta):
        ref = expm_d_matrix(twice_j, beta) ** 2
        np.testing.assert_allclose(d_matrix(HalfInt(twice_j), beta).sq, ref, atol=1e-12)

    def test_scalar_and_matrix_agree(self):
        dm = d_matrix(2.5, 1.3)
        for mp in projections(2.5):
            for m in projections(2.5):
                assert dm[mp, m] == pytest.approx(d_squared_sum(2.5, mp, m, 1.3), abs=1e-15)

    @pytest.mark.parametrize("twice_j", range(0, 26))
    def test_endpoint_patterns(self, twice_j):
        n = twice_j + 1
        np.testing.assert_allclose(d_matrix(HalfInt(twice_j), 0.0).sq, np.eye(n), atol=1e-15)
        np.testing.assert_allclose(d_matrix(HalfInt(twice_j), math.pi).sq, np.eye(n)[::-1], atol=1e-15)


class TestFactoredRoute:
    def test_reference_values(self):
        assert d_squared_factored(1.5, 0.5, 1.5, 1.0) == pytest.approx(0.40899267, abs=1e-6)
        assert d_squared_factored(1.5, -1.5, 1.5, 1.0) == pytest.approx(0.012143, abs=1e-5)

    def test_zero_of_legendre_p1(self):
        assert d_squared_factored(1, 0, 0, math.pi / 2) == pytest.approx(0.0, abs=1e-16)

    @pytest.mark.parametrize("beta", [0.0, EPS / 2, math.pi, math.pi - EPS / 2])
    def test_endpoint_guard(self, beta):
        with pytest.raises(DomainError):
            d_squared_factored(1.5, 0.5, 1.5, beta)
        with pytest.raises(DomainError):
            d_matrix(1.5, beta, route="factored")

    def test_closed_forms_first_column(self):
        # first column of the j=3/2 table written out as trigonometric polynomials
        for b in np.linspace(0.05, math.pi - 0.05, 17):
            c, sh = math.cos(b), math.sin(b / 2)
            closed = [(c + 1) ** 3 / 8, 3 * sh**2 * (sh**2 - 1) ** 2, 3 / 8 * (c - 1) ** 2 * (c + 1), -((c - 1) ** 3) / 8]
            got = [d_squared_factored(1.5, mp, 1.5, b) for mp in projections(1.5)]
            np.testing.assert_allclose(got, closed, atol=1e-14)

    def test_closed_forms_second_column(self):
        for b in np.linspace(0.05, math.pi - 0.05, 17):
            c, ch, sh = math.cos(b), math.cos(b / 2), math.sin(b / 2)
            closed = [
                3 * ch**4 * sh**2,
                (3 * c - 1) ** 2 / 8 * (c + 1),
                -((3 * c + 1) ** 2) / 8 * (c - 1),
                3 * (c - 1) ** 2 / 8 * (c + 1),
            ]
            got = [d_squared_factored(1.5, mp, 0.5, b) for mp in projections(1.5)]
            np.testing.assert_allclose(got, closed, atol=1e-14)

    def test_prefactor_nonnegative(self):
        for mp in projections(2.5):
            for m in projections(2.5):
                assert trig_prefactor(2.5, mp, m, 1.1) >= 0

    @pytest.mark.parametrize("twice_j", range(1, 16))
    def test_route_equivalence(self, twice_j, interior_grid):
        for beta in interior_grid:
            assert route_gap(HalfInt(twice_j), beta) <= 1e-10

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 25), st.floats(EPS, math.pi - EPS), st.data())
    def test_scalar_factored_matches_sum(self, twice_j, beta, data):
        j = HalfInt(twice_j)
        mp = data.draw(st.sampled_from(projections(j)))
        m = data.draw(st.sampled_from(projections(j)))
        assert abs(d_squared_factored(j, mp, m, beta) - d_squared_sum(j, mp, m, beta)) <= 1e-10

    def test_both_route_returns_sum_values(self):
        both = d_matrix(3.5, 0.9, route="both")
        np.testing.assert_array_equal(both.sq, d_matrix(3.5, 0.9).sq)

    def test_both_route_raises_on_disagreement(self, monkeypatch):
        import spinentropy.wigner as w

        monkeypatch.setattr(w, "ROUTE_TOL", -1.0)
        with pytest.raises(PathDisagreement):
            d_matrix(1.5, 1.0, route="both")


class TestNormalizationAndSymmetry:
    @pytest.mark.parametrize("twice_j", range(1, 26))
    def test_rows_and_columns_sum_to_one(self, twice_j, beta_grid):
        for beta in beta_grid:
            sq = d_matrix(HalfInt(twice_j), beta).sq
            assert np.all(sq >= 0)
            assert np.max(np.abs(sq.sum(axis=0) - 1)) <= 1e-11
            assert np.max(np.abs(sq.sum(axis=1) - 1)) <= 1e-11

    def test_matrix_is_read_only(self):
        dm = d_matrix(1, 0.4)
        with pytest.raises(ValueError):
            dm.sq[0, 0] = 2.0

    @pytest.mark.parametrize("j,beta", [(1.5, 1.0), (0.5, 0.3), (5, 2.0), (12.5, 0.77)])
    def test_symmetries(self, j, beta):
        assert check_symmetries(j, beta).max_violation <= 1e-12

    def test_j32_table_equalities(self):
        dm = d_matrix(1.5, 1.0)
        h = lambda x: HalfInt.of(x)  # noqa: E731
        groups = [
            [("3/2", "3/2"), ("-3/2", "-3/2")],
            [("-3/2", "3/2"), ("3/2", "-3/2")],
            [("1/2", "1/2"), ("-1/2", "-1/2")],
            [("-1/2", "1/2"), ("1/2", "-1/2")],
            [("3/2", "1/2"), ("1/2", "3/2"), ("-3/2", "-1/2"), ("-1/2", "-3/2")],
            [("3/2", "-1/2"), ("-1/2", "3/2"), ("1/2", "-3/2"), ("-3/2", "1/2")],
        ]
        for group in groups:
            vals = [dm[h(a), h(b)] for a, b in group]
            assert max(vals) - min(vals) <= 1e-12

    def test_symmetry_against_oracle_routes(self):
        # independent recomputation: scalar sum route entry by entry
        j = 5
        for mp in projections(j):
            for m in projections(j):
                a = d_squared_sum(j, mp, m, 2.0)
                assert abs(a - d_squared_sum(j, m, mp, 2.0)) <= 1e-12
                assert abs(a - d_squared_sum(j, -m, -mp, 2.0)) <= 1e-12


class TestLegendreSpecialization:
    def test_p10(self):
        for b in (0.2, 1.0, 2.9):
            assert legendre_specialization(1, 0, b) == pytest.approx(math.cos(b) ** 2, abs=1e-15)

    def test_p11(self):
        assert legendre_specialization(1, 1, math.pi / 2) == pytest.approx(0.5, abs=1e-15)

    def test_identity(self):
        assert legendre_specialization(2, 0, 0.0) == pytest.approx(1.0, abs=1e-15)

    def test_half_integer_rejected(self):
        with pytest.raises(ProjectionError):
            legendre_specialization(1.5, 0.5, 1.0)

    @pytest.mark.parametrize("c", range(0, 11))
    def test_matches_general_formula(self, c, beta_grid):
        for beta in beta_grid:
            for m in range(-c, c + 1):
                assert abs(legendre_specialization(c, m, beta) - d_squared_sum(c, 0, m, beta)) <= 1e-10
                assert abs(legendre_specialization(c, m, beta) - d_squared_sum(c, m, 0, beta)) <= 1e-10
