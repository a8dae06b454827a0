import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coeff_bounds import bounds as bd
from coeff_bounds import caratheodory as cara
from coeff_bounds import kernels
from coeff_bounds.bounds import (
    CLASSES,
    PAPER_BOUNDS,
    CaseFunctionArgs,
    RealityConstraintError,
    Status,
    case_function,
    case_table,
    classify,
    delta4_case_data,
    delta_from_bc,
    delta_objective,
    delta_via_series,
    extremal_rows,
    f2_t0,
)
from coeff_bounds.caratheodory import CaratheodoryCoeffs, DomainError, SchurParams
from coeff_bounds.config import TOL
from coeff_bounds.optimizer import Budget

angle = st.floats(0, 2 * math.pi, allow_nan=False)
disk_point = st.builds(lambda r, a: r * cmath.exp(1j * a), st.floats(0, 1), angle)
schur = st.builds(SchurParams, disk_point, disk_point, disk_point, disk_point)
real_schur = st.builds(SchurParams, st.floats(-1, 1), disk_point, disk_point, disk_point)
class_name = st.sampled_from(sorted(CLASSES))


# --- delta formulas ------------------------------------------------------


def test_f2_at_zero_coefficients():
    d = delta_from_bc("F2", CaratheodoryCoeffs(0, 0, 0, 0))
    assert list(d) == pytest.approx([0, -1 / 3, 0, 2 / 15], abs=1e-15)
    # same values through the series path, exactly
    exact = bd.delta_via_series("F2", CaratheodoryCoeffs(*(Fraction(0),) * 4))
    assert list(exact) == [0, Fraction(-1, 3), 0, Fraction(2, 15)]


@pytest.mark.parametrize("name, d4, d5", [("F1", 49 / 8, 1729 / 120), ("F4", 14, 42)])
def test_koebe_point_values(name, d4, d5):
    d = delta_from_bc(name, CaratheodoryCoeffs(2, 2, 2, 2))
    assert abs(d.delta(4)) == pytest.approx(d4, abs=1e-12)
    assert abs(d.delta(5)) == pytest.approx(d5, abs=1e-12)


@settings(max_examples=400, deadline=None)
@given(class_name, schur)
def test_two_paths_agree(name, z):
    c = cara.coeffs_from_schur(z)
    for x, y in zip(delta_from_bc(name, c), delta_via_series(name, c)):
        assert abs(x - y) < TOL.two_path


# --- case functions ------------------------------------------------------


@pytest.mark.parametrize("which, value", [("phi1", 17 / 2), ("phi3", 19 / 2), ("phi4", 15)])
def test_phi_at_corner(which, value):
    assert case_function(which, CaseFunctionArgs(p=2, q=1)) == pytest.approx(value, abs=1e-12)


@given(st.floats(-1, 1))
def test_phi1_at_zero_p(q):
    assert case_function("phi1", CaseFunctionArgs(p=0, q=q)) == pytest.approx(5 / 2, abs=1e-12)


@pytest.mark.parametrize("which, value", [("theta_f1", 158 / 15), ("theta_f3", 68 / 5), ("theta_f4", 436 / 15)])
def test_theta_maximum_at_one(which, value):
    xs = np.linspace(-1, 1, 4001)
    vals = [case_function(which, CaseFunctionArgs(x=x)) for x in xs]
    assert int(np.argmax(vals)) == len(xs) - 1
    assert vals[-1] == pytest.approx(value, abs=1e-12)


def test_q_maximum_value_and_location():
    # largest value on a grid containing the maximizer
    z = math.sqrt(15 / 7) / 2
    best = case_function("Q", CaseFunctionArgs(zeta1=z, r=1, d=1))
    assert best == pytest.approx((791 / 392) ** 2, abs=1e-12)
    for x in np.linspace(-1, 1, 41):
        for r in np.linspace(0, 1, 11):
            for d in np.linspace(-1, 1, 11):
                assert case_function("Q", CaseFunctionArgs(zeta1=x, r=r, d=d)) <= best + 1e-12


def test_q_is_modulus_squared_of_zeta12_part():
    rng = np.random.default_rng(0)
    for _ in range(200):
        x, r, a = rng.uniform(-1, 1), rng.uniform(0, 1), rng.uniform(0, 2 * math.pi)
        # delta_5 with zeta_3 = zeta_4 = 0 is the zeta_1, zeta_2 part alone
        z = SchurParams(x, r * cmath.exp(1j * a), real_zeta1=True)
        part = abs(delta_from_bc("F2", cara.coeffs_from_schur(z)).delta(5)) ** 2
        q = case_function("Q", CaseFunctionArgs(zeta1=x, r=r, d=math.cos(a)))
        assert q == pytest.approx(part, abs=1e-12)


def test_case_function_errors():
    with pytest.raises(DomainError):
        CaseFunctionArgs(p=2.5)
    with pytest.raises(ValueError):
        case_function("psi", CaseFunctionArgs())


def test_phi1_dominates_sampled_delta3():
    zs = cara.sample_schur(11, 5000)
    sampled = max(3 * delta_objective("F1", 3, z) for z in zs)
    p, q = np.meshgrid(np.linspace(0, 2, 81), np.linspace(-1, 1, 81))
    grid = max(case_function("phi1", CaseFunctionArgs(p=a, q=b)) for a, b in zip(p.ravel(), q.ravel()))
    assert sampled <= grid + 1e-12
    assert grid == pytest.approx(17 / 2, abs=1e-12)
    assert sampled > 17 / 2 - 0.5


# --- the delta_5 decomposition ------------------------------------------


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(["F1", "F3", "F4"]), schur)
def test_delta5_decomposition(name, z):
    c1, c2, c3, c4 = cara.coeffs_from_schur(z)
    k = bd._DECOMP[name]
    lhs = delta_from_bc(name, CaratheodoryCoeffs(c1, c2, c3, c4)).delta(5)
    rhs = (bd._decomp_A(c1, c2, c3, c4) / 5 + k["kB"] * bd._decomp_B(c1, c2, c3)
           + bd._rho(name, c1, c2, c3) + bd._varsigma(name, c1, c2))
    assert abs(lhs - rhs) < 1e-11
    assert abs(bd._rho(name, c1, c2, c3)) <= bd._rho_abs_bound(name, c1, c2, c3) + 1e-12
    assert bd._rho_abs_bound(name, c1, c2, c3) <= k["rho_max"] + 1e-12


@pytest.mark.parametrize("name", ["F1", "F3", "F4"])
def test_rho_bound_is_attained(name):
    assert bd._rho_abs_bound(name, 2, 2, 2) == pytest.approx(bd._DECOMP[name]["rho_max"], abs=1e-12)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(["F1", "F3", "F4"]), st.floats(-1, 1), disk_point)
def test_varsigma_in_schur_parameters(name, z1, z2):
    c = cara.coeffs_from_schur(SchurParams(z1, z2))
    assert abs(bd._varsigma(name, c.c1, c.c2) - bd._varsigma1(name, z1, z2)) < 1e-12


# --- objectives and bounds ----------------------------------------------


@pytest.mark.parametrize(
    "name, zeta1, value",
    [("F1", -1.0, 1 / 24), ("F3", 1.0, 61 / 8), ("F2", -1.0, 1.0)],
)
def test_delta4_at_boundary_zeta1(name, zeta1, value):
    z = SchurParams(zeta1, 0.3 - 0.2j, 0.5j, real_zeta1=True)
    assert delta_objective(name, 4, z) == pytest.approx(value, abs=1e-12)


@pytest.mark.parametrize("name, n", [("F1", 4), ("F1", 5), ("F2", 3), ("F4", 5)])
def test_reality_constraint(name, n):
    with pytest.raises(RealityConstraintError):
        delta_objective(name, n, SchurParams(0.3j))


def test_f2_delta3_needs_real_zeta1_but_f1_does_not():
    # on the imaginary axis F2 reaches |delta_3| = 5/3 > 1, so the bound needs real zeta_1
    c = cara.coeffs_from_schur(SchurParams(1j))
    assert abs(delta_from_bc("F2", c).delta(3)) == pytest.approx(5 / 3)
    assert delta_objective("F1", 3, SchurParams(1j)) <= 17 / 6


@pytest.mark.parametrize("name", sorted(CLASSES))
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_random_samples_respect_bounds(name, n):
    spec = CLASSES[name]
    rng = np.random.default_rng(100 + n)
    count = 50_000
    real = spec.needs_real_zeta1(n)
    cols = [rng.uniform(-1, 1, count)] if real else []
    for _ in range(3 if real else 4):
        r, a = np.sqrt(rng.random(count)), rng.random(count) * 2 * np.pi
        cols += [r * np.cos(a), r * np.sin(a)]
    pts = np.column_stack(cols)
    vals = kernels.delta_abs_batch(spec.b, n, pts, real)
    assert vals.max() <= PAPER_BOUNDS[(name, n)] + TOL.violation


@pytest.mark.parametrize("name", sorted(CLASSES))
def test_case_bound_dominates_delta4(name):
    d = delta4_case_data(name)
    rng = np.random.default_rng(5)
    xs = rng.uniform(-0.999, 0.999, 300)
    for x in xs:
        bound = d.bound(x)
        count = 400
        r, a = np.sqrt(rng.random((count, 2))), rng.random((count, 2)) * 2 * np.pi
        pts = np.column_stack([np.full(count, x), r[:, 0] * np.cos(a[:, 0]), r[:, 0] * np.sin(a[:, 0]),
                               r[:, 1] * np.cos(a[:, 1]), r[:, 1] * np.sin(a[:, 1])])
        got = kernels.delta_abs_batch(CLASSES[name].b, 4, pts, True).max()
        assert got <= bound + 1e-9


@pytest.mark.parametrize("name", sorted(CLASSES))
def test_case_table_maximum_is_the_delta4_bound(name):
    rows = case_table(name)
    assert rows[0].lo == pytest.approx(-1, abs=1e-8) and rows[-1].hi == pytest.approx(1, abs=1e-8)
    for a, b in zip(rows, rows[1:]):
        assert a.hi == b.lo and a.branch != b.branch
    assert max(r.max_bound for r in rows) == pytest.approx(PAPER_BOUNDS[(name, 4)], rel=1e-8)


def test_f2_t0_closed_form_and_value():
    t0 = f2_t0()
    assert t0 == pytest.approx((2 - 4 / math.sqrt(15)) / 8, abs=1e-7)
    row = next(r for r in extremal_rows("F2") if r.n == 4)
    assert row.derived
    assert abs(row.delta_n) == pytest.approx(16 / (3 * math.sqrt(15)), abs=1e-12)


@pytest.mark.parametrize("name", sorted(CLASSES))
def test_extremals_attain(name):
    for row in extremal_rows(name):
        assert row.attains, row


def test_paper_constants_exact_ones():
    consts = {(p.cls, p.name): p for p in bd.paper_constants()}
    assert consts[("F2", "r1")].value == pytest.approx(-math.sqrt(7 / 13), abs=1e-14)
    assert consts[("F2", "r2")].value == pytest.approx(math.sqrt(7 / 13), abs=1e-14)
    assert consts[("F2", "t1")].value == pytest.approx((14 - math.sqrt(105)) / 56, abs=1e-8)


def test_classify():
    assert classify("F1", 2, 1.5) == Status.SHARP
    assert classify("F1", 2, 1.2) == Status.WITHIN
    assert classify("F1", 2, 1.6) == Status.VIOLATION
    assert classify("F2", 5, 791 / 392) == Status.WITHIN
    assert classify("F2", 5, 1.9) == Status.VIOLATION
    assert classify("F2", 5, 3.0) == Status.VIOLATION


def test_verify_bound_report_row():
    rep = bd.verify_bound("F3", 3, Budget(grid_n=12, refine_iters=100), seed=1)
    row = rep.to_row()
    assert row["status"] == Status.SHARP
    assert row["searched_max"] <= row["paper_bound"] + TOL.violation
    assert rep.gap == pytest.approx(rep.paper_bound - rep.searched_max)
    assert delta_objective("F3", 3, rep.argmax) == pytest.approx(rep.searched_max, abs=1e-12)
