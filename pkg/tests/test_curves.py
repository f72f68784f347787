import math

import numpy as np
import pytest

from isokit.core import euclid_dot
from isokit.curves import (
    LX,
    LZ,
    CatenaryFamily,
    PlaneCurve,
    catenary_curvature_residual,
    curvature,
    eval_catenary,
    minimal_normal,
    parabolic_normal,
    read_curve_csv,
    relative_arclength,
    unit_tangent,
    write_curve_csv,
)
from isokit.errors import (
    DomainError,
    InvalidIntervalError,
    NonAdmissibleError,
)


def graph(t_lo, t_hi, z, zd, zdd):
    return PlaneCurve.graph(t_lo, t_hi, z, zd, zdd)


PARABOLA = graph(-2.0, 2.0, lambda t: t * t, lambda t: 2 * t, lambda t: 2.0)
LOG = graph(0.5, 3.0, math.log, lambda t: 1 / t, lambda t: -1 / t**2)
LINE = graph(-1.0, 4.0, lambda t: 3 * t + 1, lambda t: 3.0, lambda t: 0.0)
HORIZONTAL = graph(0.0, 2.0, lambda t: 5.0, lambda t: 0.0, lambda t: 0.0)
NONGRAPH = PlaneCurve.from_functions(
    0.0, 1.5,
    x=math.exp, z=math.sin, xd=math.exp, zd=math.cos, xdd=math.exp,
    zdd=lambda t: -math.sin(t),
)

ANALYTIC_CURVES = [PARABOLA, LOG, LINE, HORIZONTAL, NONGRAPH]


class TestUnitTangent:
    def test_parabola(self):
        assert unit_tangent(PARABOLA, 1.0) == pytest.approx((1.0, 2.0))

    def test_steep_line(self):
        steep = PlaneCurve.from_functions(
            0.0, 1.0,
            x=lambda t: 2 * t, z=lambda t: 6 * t,
            xd=lambda t: 2.0, zd=lambda t: 6.0,
            xdd=lambda t: 0.0, zdd=lambda t: 0.0,
        )
        for t in (0.1, 0.5, 0.9):
            assert unit_tangent(steep, t) == pytest.approx((1.0, 3.0))

    def test_horizontal(self):
        assert unit_tangent(HORIZONTAL, 1.3) == pytest.approx((1.0, 0.0))


class TestCurvature:
    @pytest.mark.parametrize("t", [-1.0, 0.0, 0.7, 1.5])
    def test_parabola_constant(self, t):
        # z = c t^2/2 + b t + a has constant curvature c
        c, b, a = 3.0, -1.0, 2.0
        par = graph(-2, 2, lambda s: 0.5 * c * s * s + b * s + a,
                    lambda s: c * s + b, lambda s: c)
        assert curvature(par, t) == pytest.approx(c, abs=1e-12)

    def test_line_is_flat(self):
        assert curvature(LINE, 2.0) == 0.0

    def test_log_against_finite_differences(self):
        h = 1e-4  # large enough to keep second-difference roundoff below truncation
        fd_oracle = (math.log(2 + h) - 2 * math.log(2) + math.log(2 - h)) / h**2
        kappa = curvature(LOG, 2.0)
        assert kappa == pytest.approx(fd_oracle, abs=1e-6)
        assert kappa == pytest.approx(-0.25, abs=1e-12)


class TestNormals:
    def test_minimal_normal_horizontal(self):
        assert minimal_normal(HORIZONTAL, 0.5) == pytest.approx((0.0, 1.0))

    def test_minimal_normal_is_rotated_tangent(self):
        # quarter rotation J(x', z') = (-z', x'), scaled by 1/x'
        j = PARABOLA.at(1.0)
        oracle = (-j.zd / j.xd, j.xd / j.xd)
        assert minimal_normal(PARABOLA, 1.0) == pytest.approx(oracle)
        assert minimal_normal(PARABOLA, 1.0) == pytest.approx((-2.0, 1.0))

    def test_minimal_normal_antidiagonal(self):
        anti = graph(0, 1, lambda t: -t, lambda t: -1.0, lambda t: 0.0)
        assert minimal_normal(anti, 0.3) == pytest.approx((1.0, 1.0))

    def test_parabolic_normal_horizontal(self):
        assert parabolic_normal(HORIZONTAL, 1.0) == pytest.approx((0.0, 0.5))

    def test_parabolic_normal_diagonal(self):
        diag = graph(0, 1, lambda t: t, lambda t: 1.0, lambda t: 0.0)
        assert parabolic_normal(diag, 0.5) == pytest.approx((-1.0, 0.0))

    def test_parabolic_normal_parabola(self):
        assert parabolic_normal(PARABOLA, 1.0) == pytest.approx((-2.0, -1.5))


class TestRelativeArclength:
    def test_horizontal(self):
        assert relative_arclength(HORIZONTAL, 0.0, 2.0) == pytest.approx(1.0, abs=1e-12)

    def test_diagonal(self):
        diag = graph(0, 1, lambda t: t, lambda t: 1.0, lambda t: 0.0)
        assert relative_arclength(diag, 0.0, 1.0) == pytest.approx(1.0, abs=1e-12)

    def test_log(self):
        # integral of 1/2 + 1/(2 t^2) from 1 to 2
        assert relative_arclength(LOG, 1.0, 2.0) == pytest.approx(0.75, abs=1e-10)

    def test_invalid_interval(self):
        with pytest.raises(InvalidIntervalError):
            relative_arclength(LOG, 2.0, 1.0)

    def test_outside_domain(self):
        with pytest.raises(DomainError):
            relative_arclength(LOG, 0.1, 2.0)


class TestCatenaryFamily:
    def test_log_family_at_e(self):
        fam = CatenaryFamily(reference=LZ, alpha=1.0, c=1.0, d=0.0, lam=0.0)
        x, z = eval_catenary(fam, math.e)
        assert (x, z) == pytest.approx((math.e, 1.0))

    def test_power_family(self):
        fam = CatenaryFamily(reference=LZ, alpha=2.0, c=1.0, d=0.0)
        assert eval_catenary(fam, 4.0) == pytest.approx((4.0, 0.25))

    def test_constant_profile(self):
        fam = CatenaryFamily(alpha=1.0, c=0.0, d=7.0, lam=0.0)
        assert eval_catenary(fam, 10.0) == pytest.approx((10.0, 7.0))

    def test_domain_errors(self):
        fam = CatenaryFamily(alpha=1.0, c=1.0, d=0.0, lam=2.0)
        with pytest.raises(DomainError):
            eval_catenary(fam, 2.0)
        fam2 = CatenaryFamily(alpha=3.0, c=1.0, d=0.0)
        with pytest.raises(DomainError):
            eval_catenary(fam2, -1.0)

    def test_alpha_zero_rejected(self):
        with pytest.raises(ValueError):
            CatenaryFamily(alpha=0.0)

    def test_shift_only_for_alpha_one(self):
        with pytest.raises(ValueError):
            CatenaryFamily(alpha=2.0, lam=1.0)

    def test_no_closed_form_for_nonisotropic_axis(self):
        fam = CatenaryFamily(reference=LX, alpha=1.0)
        with pytest.raises(ValueError):
            fam.profile(1.0)


class TestCurvatureResidual:
    @pytest.mark.parametrize("t", [1.0, 2.0, 5.0])
    def test_log_family_is_critical(self, t):
        fam = CatenaryFamily(alpha=1.0, c=2.0, d=1.0)
        curve = fam.plane_curve(0.5, 6.0)
        assert abs(catenary_curvature_residual(curve, LZ, 1.0, 0.0, t)) < 1e-12

    def test_alpha_three_family(self):
        curve = graph(0.5, 3.0, lambda t: t**-2, lambda t: -2 * t**-3,
                      lambda t: 6 * t**-4)
        for t in (0.6, 1.0, 2.5):
            assert abs(catenary_curvature_residual(curve, LZ, 3.0, 0.0, t)) < 1e-12

    def test_noncritical_curve(self):
        # kappa = 2 and quotient -z'/t = -2 at t = 1, so the residual is 4
        assert catenary_curvature_residual(PARABOLA, LZ, 1.0, 0.0, 1.0) == pytest.approx(4.0)

    def test_family_residual_on_grid(self):
        for alpha, lam in [(1.0, 0.0), (1.0, 0.4), (2.0, 0.0), (3.0, 0.0)]:
            fam = CatenaryFamily(alpha=alpha, c=1.3, d=-0.2, lam=lam)
            curve = fam.plane_curve(lam + 0.5, lam + 4.0)
            worst = max(
                abs(catenary_curvature_residual(curve, LZ, alpha, lam, t))
                for t in np.linspace(lam + 0.55, lam + 3.95, 100)
            )
            assert worst < 1e-9

    def test_nonisotropic_reference_diagonal(self):
        diag = graph(0.2, 2.0, lambda t: t, lambda t: 1.0, lambda t: 0.0)
        # z'' = 0 and the pairing (1 - z'^2)/2 vanishes
        assert catenary_curvature_residual(diag, LX, 1.0, 0.0, 1.0) == pytest.approx(0.0)


class TestInvariants:
    @pytest.mark.parametrize("curve", ANALYTIC_CURVES)
    def test_parabolic_normal_transversal(self, curve):
        for t in np.linspace(curve.t_lo, curve.t_hi, 100):
            j = curve.at(float(t))
            npar = parabolic_normal(curve, float(t))
            det = j.xd * npar.z - j.zd * npar.x
            assert det == pytest.approx((j.xd**2 + j.zd**2) / (2 * j.xd), rel=1e-12)
            assert det > 0.0

    @pytest.mark.parametrize("curve", [PARABOLA, LOG, NONGRAPH])
    def test_parabolic_normal_equiaffine(self, curve):
        # -dN_par/dt must equal curvature * velocity
        h = 1e-5
        lo, hi = curve.t_lo + 2 * h, curve.t_hi - 2 * h
        for t in np.linspace(lo, hi, 100):
            t = float(t)
            np_plus = parabolic_normal(curve, t + h)
            np_minus = parabolic_normal(curve, t - h)
            deriv = ((np_plus.x - np_minus.x) / (2 * h), (np_plus.z - np_minus.z) / (2 * h))
            j = curve.at(t)
            k = curvature(curve, t)
            target = (k * j.xd, k * j.zd)
            scale = max(1.0, abs(target[0]), abs(target[1]))
            assert abs(-deriv[0] - target[0]) <= 1e-6 * scale
            assert abs(-deriv[1] - target[1]) <= 1e-6 * scale

    @pytest.mark.parametrize("curve", [PARABOLA, LOG, LINE, HORIZONTAL])
    def test_second_form_coefficient_on_graphs(self, curve):
        # kappa * x'^2 agrees with det(velocity, acceleration) on unit-speed graphs
        for t in np.linspace(curve.t_lo + 0.01, curve.t_hi - 0.01, 25):
            j = curve.at(float(t))
            det = j.xd * j.zdd - j.zd * j.xdd
            lhs = curvature(curve, float(t)) * j.xd**2
            assert abs(lhs - det) <= 1e-10 * max(1.0, abs(det))

    @pytest.mark.parametrize("curve", ANALYTIC_CURVES)
    def test_relative_speed_at_least_half(self, curve):
        for t in np.linspace(curve.t_lo, curve.t_hi, 50):
            t = float(t)
            ratio = euclid_dot(parabolic_normal(curve, t), minimal_normal(curve, t))
            assert ratio >= 0.5 - 1e-15
            if abs(curve.at(t).zd) < 1e-14:
                assert ratio == pytest.approx(0.5)


class TestAdmissibility:
    def test_isotropic_tangent_rejected(self):
        with pytest.raises(NonAdmissibleError):
            PlaneCurve.from_functions(
                -1.0, 1.0,
                x=lambda t: t**3, z=lambda t: t,
                xd=lambda t: 3 * t * t, zd=lambda t: 1.0,
                xdd=lambda t: 6 * t, zdd=lambda t: 0.0,
            )

    def test_sign_change_rejected(self):
        with pytest.raises(NonAdmissibleError):
            PlaneCurve.from_functions(
                -1.0, 1.0,
                x=lambda t: math.cos(t), z=lambda t: t,
                xd=lambda t: -math.sin(t), zd=lambda t: 1.0,
                xdd=lambda t: -math.cos(t), zdd=lambda t: 0.0,
            )

    def test_decreasing_x_reparametrized(self):
        rev = PlaneCurve.from_functions(
            1.0, 2.0,
            x=lambda t: -t, z=lambda t: t * t,
            xd=lambda t: -1.0, zd=lambda t: 2 * t,
            xdd=lambda t: 0.0, zdd=lambda t: 2.0,
        )
        j = rev.at(1.25)
        assert j.xd > 0
        # same point set: position at s equals the original at 3 - s
        assert (j.x, j.z) == pytest.approx((-(3 - 1.25), (3 - 1.25) ** 2))

    def test_pointwise_threshold(self):
        # admissible at the two check nodes but isotropic in between
        sneaky = PlaneCurve(
            0.0, 1.0,
            lambda t: (t + math.sin(2 * math.pi * t) / (2 * math.pi), 0.0,
                       1 + math.cos(2 * math.pi * t), 0.0,
                       -2 * math.pi * math.sin(2 * math.pi * t), 0.0),
            check_samples=2,
        )
        with pytest.raises(NonAdmissibleError):
            curvature(sneaky, 0.5)


def test_csv_round_trip(tmp_path):
    fam = CatenaryFamily(alpha=1.0, c=1.0, d=0.0)
    curve = fam.plane_curve(1.0, math.e)
    t, x, z = curve.sample(201)
    path = tmp_path / "curve.csv"
    write_curve_csv(path, t, x, z)
    back = read_curve_csv(path)
    # finite-difference derivatives keep the residual characterization small
    worst = max(
        abs(catenary_curvature_residual(back, LZ, 1.0, 0.0, float(s)))
        for s in np.linspace(1.05, math.e - 0.05, 40)
    )
    assert worst < 1e-3
    j = back.at(1.5)
    assert j.z == pytest.approx(math.log(1.5), abs=1e-5)
