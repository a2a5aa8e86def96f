import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from hilbert49 import octic
from hilbert49.cubicfield import totally_positive_coords_of_trace

DPS = 50


@pytest.fixture(scope="module")
def strict80():
    with mpmath.workdps(DPS):
        return octic.verify_singular_orbit(80, DPS)


@pytest.fixture(scope="module")
def strict60():
    with mpmath.workdps(DPS):
        return octic.verify_singular_orbit(60, DPS)


def test_lattice_count_estimate_dominates_actual_counts():
    for t in range(1, 151):
        assert len(totally_positive_coords_of_trace(t)) <= octic.lattice_count_estimate(t)


def test_tail_bound_monotone():
    with mpmath.workdps(30):
        b = [octic.tail_bound(T, 1) for T in (20, 40, 60, 80)]
    assert all(x > y for x, y in zip(b, b[1:]))
    with pytest.raises(ValueError):
        octic.tail_bound(20, 0)


def test_diagonal_and_full_evaluation_agree():
    with mpmath.workdps(DPS):
        i = mpmath.mpc(0, 1)
        full = octic.evaluate_forms((i, i, i), 40, DPS)
        diag = octic.evaluate_diagonal(i, 40, DPS)
        assert max(abs(x - y) for x, y in zip(full.values, diag.values)) < mpmath.mpf(10) ** -40


def test_q_at_cusp():
    with mpmath.workdps(DPS):
        assert octic.Q_value(octic.cusp_point().values) == -3


points = st.lists(st.tuples(st.floats(-1, 1), st.floats(-1, 1)), min_size=4, max_size=4)


@settings(max_examples=10)
@given(points, st.integers(0, 167))
def test_octic_is_group_invariant(coords, k):
    with mpmath.workdps(DPS):
        v = mpmath.matrix([mpmath.mpc(a, b) for a, b in coords])
        m = octic._numeric_group(DPS)[k]
        w = m * v
        q1 = octic.Q_value([v[j] for j in range(4)])
        q2 = octic.Q_value([w[j] for j in range(4)])
        assert abs(q1 - q2) <= mpmath.mpf(10) ** -35 * (1 + abs(q1))


def test_smooth_point_is_not_singular():
    with mpmath.workdps(DPS):
        r = octic.smooth_point_check()
        assert abs(r["q_value"]) < mpmath.mpf(10) ** -30
        assert r["gradient_norm"] > 1


def test_cusp_orbit():
    with mpmath.workdps(DPS):
        assert octic.orbit_count(octic.cusp_point()) == 8


def test_orbit_at_80(strict80):
    r = strict80
    assert r["orbit"] == 84 and r["stabilizer"] == 2 and not r["ambiguous"]
    assert r["all_singular"]
    assert r["max_gradient"] < octic.VANISHING_TOL
    assert r["max_q"] < octic.VANISHING_TOL
    assert r["min_cubic"] > 1
    sv = sorted(r["hessian_singular_values"], reverse=True)
    assert sv[1] > 1 and sv[2] < octic.VANISHING_TOL
    assert abs(r["e2_value"]) < 10 * r["tail_bound"]


def test_orbit_stable_from_60_to_80(strict60, strict80):
    assert strict60["orbit"] == strict80["orbit"] == 84
    assert strict60["max_q"] < octic.VANISHING_TOL


def test_truncation_error_dominates_gradient_at_60(strict60):
    # at T=60 the gradient sits at the size of the tail, above 1e-20
    r = strict60
    assert r["max_gradient"] < 10 * r["tail_bound"]
    with mpmath.workdps(DPS):
        relaxed = octic.verify_singular_orbit(60, DPS, tol=10 * r["tail_bound"])
    assert relaxed["all_singular"]


def test_transformation_residual_small():
    with mpmath.workdps(DPS):
        z = (mpmath.mpc(0.1, 1.1), mpmath.mpc(-0.2, 0.95), mpmath.mpc(0.05, 1.0))
        r = octic.transformation_residuals(z, 60, 1, DPS)
        assert max(r["F"]) < 100 * r["tail_bound"] + mpmath.mpf(10) ** -30
