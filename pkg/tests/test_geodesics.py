import math

import numpy as np
import pytest

from entropath import constants
from entropath.dynamics import FieldKind, FieldProfile
from entropath.errors import PathDomainError, StepTooLargeError
from entropath.fisher import FisherFunction, Normalization
from entropath.geodesics import (
    GeodesicForm,
    crossover_root,
    efficiency_normalizer,
    entropic_efficiency,
    entropic_speed,
    entropy_production_rate,
    geodesic_closed_form,
    geodesic_rhs,
    region_mask,
    solve_geodesic_numeric,
    speed_ratio,
    unit_peak_rate,
)
from entropath.scenarios import ScenarioParams

ALL_KINDS = (FieldKind.CONSTANT, FieldKind.OSCILLATORY, FieldKind.POWER_LAW, FieldKind.EXPONENTIAL)
LAM = 2 / math.pi


def scenario(kind, gamma=1.0, lam=LAM):
    return ScenarioParams(FieldProfile(kind, gamma=gamma, lam=lam if kind != FieldKind.CONSTANT else 0.0))


def residual(sc, sol, xi):
    """Path-equation residual theta'' + (F'/2F) theta'^2 from the analytic
    derivatives of the closed form and the closed-form Fisher function."""
    ff = FisherFunction(sc)
    th = sol.theta(xi)
    td = sol.theta_dot(xi)
    tdd = sol.theta_ddot(xi)
    f = ff.fisher(th)
    fp = ff.fisher_derivative(th)
    return tdd + 0.5 * fp / f * td * td


class TestRhs:
    def test_flat_metric_has_no_acceleration(self):
        assert geodesic_rhs(scenario(FieldKind.CONSTANT), 3.0, 2.0) == 0.0

    def test_exponential_coefficient(self):
        assert geodesic_rhs(scenario(FieldKind.EXPONENTIAL), 0.7, 1.0) == pytest.approx(LAM)

    def test_power_law_coefficient(self):
        sc = scenario(FieldKind.POWER_LAW, lam=0.5)
        assert geodesic_rhs(sc, 2.0, 3.0) == pytest.approx(2 * 0.5 / 2.0 * 9.0)

    def test_oscillatory_vanishes_at_origin(self):
        assert geodesic_rhs(scenario(FieldKind.OSCILLATORY), 0.0, 1.0) == 0.0

    def test_oscillatory_pole_rejected(self):
        sc = scenario(FieldKind.OSCILLATORY, lam=1.0)
        with pytest.raises(PathDomainError):
            geodesic_rhs(sc, math.pi / 2, 1.0)


class TestClosedForms:
    def test_reference_curves(self):
        # theta0 = 0, thetadot0 = 1, gamma/hbar = 1, lam = 2/pi
        xi = np.linspace(0.0, 1.4, 200)
        sol = geodesic_closed_form(scenario(FieldKind.CONSTANT), 0.0, 1.0)
        np.testing.assert_allclose(sol.theta(xi), xi, rtol=0, atol=1e-14)

        sol = geodesic_closed_form(scenario(FieldKind.OSCILLATORY), 0.0, 1.0)
        np.testing.assert_allclose(sol.theta(xi), (math.pi / 2) * np.arcsin(2 * xi / math.pi),
                                   rtol=1e-12, atol=1e-14)

        sol = geodesic_closed_form(scenario(FieldKind.POWER_LAW), 0.0, 1.0)
        np.testing.assert_allclose(sol.theta(xi), (math.pi / 2) * xi / (math.pi / 2 - xi),
                                   rtol=1e-12, atol=1e-14)

        sol = geodesic_closed_form(scenario(FieldKind.EXPONENTIAL), 0.0, 1.0)
        np.testing.assert_allclose(sol.theta(xi), (math.pi / 2) * np.log(1.0 / (1.0 - 2 * xi / math.pi)),
                                   rtol=1e-12, atol=1e-14)

    def test_spot_values(self):
        sol = geodesic_closed_form(scenario(FieldKind.EXPONENTIAL), 0.0, 1.0)
        assert sol.theta(math.pi / 4) == pytest.approx((math.pi / 2) * math.log(2), rel=1e-14)
        sol = geodesic_closed_form(scenario(FieldKind.POWER_LAW), 0.0, 1.0)
        assert sol.theta(math.pi / 4) == pytest.approx(math.pi / 2, rel=1e-14)

    def test_initial_data(self):
        h = 1e-6
        for kind in ALL_KINDS:
            for theta0, xi0 in ((0.0, 0.0), (0.4, 0.2)):
                sol = geodesic_closed_form(scenario(kind), theta0, 0.8, xi0)
                assert sol.theta(xi0) == pytest.approx(theta0, abs=1e-14)
                fd = (sol.theta(xi0 + h) - sol.theta(xi0 - h)) / (2 * h)
                assert fd == pytest.approx(0.8, rel=1e-8)

    def test_domains(self):
        sol = geodesic_closed_form(scenario(FieldKind.CONSTANT), 1.0, 2.0)
        assert sol.xi_min == -math.inf and sol.xi_max == math.inf

        sol = geodesic_closed_form(scenario(FieldKind.POWER_LAW), 0.5, 2.0, xi0=0.1)
        assert sol.xi_max == pytest.approx(0.1 + (1 + LAM * 0.5) / (LAM * 2.0))

        sol = geodesic_closed_form(scenario(FieldKind.EXPONENTIAL), 0.5, 2.0, xi0=0.1)
        assert sol.xi_max == pytest.approx(0.1 + 1 / (LAM * 2.0))

        sol = geodesic_closed_form(scenario(FieldKind.OSCILLATORY), 0.0, 1.0)
        assert sol.xi_max == pytest.approx(math.pi / 2)
        assert sol.xi_min == pytest.approx(-math.pi / 2)

    def test_evaluation_outside_domain_raises(self):
        sol = geodesic_closed_form(scenario(FieldKind.EXPONENTIAL), 0.0, 1.0)
        with pytest.raises(PathDomainError):
            sol.theta(sol.xi_max)
        with pytest.raises(PathDomainError):
            sol.theta(np.array([0.0, sol.xi_max + 0.1]))

    def test_oscillatory_rejects_metric_node_start(self):
        sc = scenario(FieldKind.OSCILLATORY, lam=1.0)
        with pytest.raises(PathDomainError):
            geodesic_closed_form(sc, math.pi / 2, 1.0)

    def test_rejects_bad_initial_data(self):
        with pytest.raises(ValueError):
            geodesic_closed_form(scenario(FieldKind.CONSTANT), -0.1, 1.0)
        with pytest.raises(ValueError):
            geodesic_closed_form(scenario(FieldKind.CONSTANT), 0.0, 0.0)


class TestResiduals:
    def test_exact_forms_satisfy_path_equation(self):
        # sample 1000 interior points over 90% of each validity domain
        cases = [
            (scenario(FieldKind.CONSTANT), 0.0, 1.0, 0.0, 10.0),
            (scenario(FieldKind.CONSTANT), 0.7, 0.4, 0.3, 10.0),
            (scenario(FieldKind.OSCILLATORY), 0.0, 1.0, 0.0, None),
            (scenario(FieldKind.OSCILLATORY), 0.4, 0.7, 0.1, None),
            (scenario(FieldKind.POWER_LAW), 0.0, 1.0, 0.0, None),
            (scenario(FieldKind.POWER_LAW), 0.6, 1.3, 0.2, None),
            (scenario(FieldKind.EXPONENTIAL), 0.0, 1.0, 0.0, None),
            (scenario(FieldKind.EXPONENTIAL), 0.6, 1.3, 0.2, None),
        ]
        for sc, theta0, thetadot0, xi0, span in cases:
            sol = geodesic_closed_form(sc, theta0, thetadot0, xi0)
            end = xi0 + span if span is not None else xi0 + 0.9 * (sol.xi_max - xi0)
            xi = np.linspace(xi0, end, 1002)[1:-1]
            assert np.max(np.abs(residual(sc, sol, xi))) < 1e-8

    def test_alternate_oscillatory_form_matches_exact_at_reference_data(self):
        sc = scenario(FieldKind.OSCILLATORY)
        exact = geodesic_closed_form(sc, 0.0, 1.0, 0.0, GeodesicForm.EXACT)
        alt = geodesic_closed_form(sc, 0.0, 1.0, 0.0, GeodesicForm.ALTERNATE)
        xi = np.linspace(0.0, 1.4, 300)
        np.testing.assert_allclose(alt.theta(xi), exact.theta(xi), rtol=1e-12, atol=1e-14)
        assert np.max(np.abs(residual(sc, alt, xi[1:]))) < 1e-8

    def test_alternate_oscillatory_form_fails_equation_for_generic_data(self):
        # the variant is reported alongside the exact solution; away from the
        # reference initial data it does not solve the path equation
        sc = scenario(FieldKind.OSCILLATORY)
        alt = geodesic_closed_form(sc, 0.5, 1.0, 0.3, GeodesicForm.ALTERNATE)
        exact = geodesic_closed_form(sc, 0.5, 1.0, 0.3, GeodesicForm.EXACT)
        xi = np.linspace(0.35, 0.8, 50)
        assert np.max(np.abs(residual(sc, alt, xi))) > 1e-3
        assert np.max(np.abs(residual(sc, exact, xi))) < 1e-8


class TestNumericGeodesics:
    def test_flat_metric_is_exact(self):
        run = solve_geodesic_numeric(scenario(FieldKind.CONSTANT), 0.0, 1.0, 0.0, 5.0, 1e-3)
        np.testing.assert_allclose(run.theta, run.xi, rtol=0, atol=1e-12)
        assert not run.exited

    def test_matches_closed_forms(self):
        # < 1e-6 agreement over the first 90% of each validity domain
        for kind in (FieldKind.OSCILLATORY, FieldKind.POWER_LAW, FieldKind.EXPONENTIAL):
            sc = scenario(kind)
            sol = geodesic_closed_form(sc, 0.0, 1.0)
            run = solve_geodesic_numeric(sc, 0.0, 1.0, 0.0, sol.xi_max, 1e-4, record_every=10)
            assert run.exited  # pole at the domain end
            cutoff = 0.9 * sol.xi_max
            assert run.xi[-1] >= cutoff
            window = run.xi <= cutoff
            err = np.abs(sol.theta(run.xi[window]) - run.theta[window])
            assert np.max(err) < 1e-6

    def test_speed_constant_along_paths(self):
        for kind in ALL_KINDS:
            sc = scenario(kind)
            sol = geodesic_closed_form(sc, 0.0, 1.0)
            end = min(sol.xi_max, 10.0)
            run = solve_geodesic_numeric(sc, 0.0, 1.0, 0.0, end, 1e-4, record_every=10)
            v = run.speeds()
            assert np.max(np.abs(v / v[0] - 1.0)) < 1e-6

    def test_domain_exit_flag_and_coverage(self):
        sc = scenario(FieldKind.EXPONENTIAL)
        sol = geodesic_closed_form(sc, 0.0, 1.0)
        run = solve_geodesic_numeric(sc, 0.0, 1.0, 0.0, sol.xi_max + 1.0, 1e-4)
        assert run.exited
        assert run.xi[-1] < sol.xi_max
        assert run.xi[-1] > 0.95 * sol.xi_max

    def test_step_too_large_raises(self):
        sc = scenario(FieldKind.POWER_LAW)
        with pytest.raises(StepTooLargeError):
            solve_geodesic_numeric(sc, 0.0, 1.0, 0.0, 1.5, 0.12)

    def test_validation(self):
        sc = scenario(FieldKind.EXPONENTIAL)
        with pytest.raises(ValueError):
            solve_geodesic_numeric(sc, 0.0, 1.0, 1.0, 0.5, 1e-3)
        with pytest.raises(ValueError):
            solve_geodesic_numeric(sc, 0.0, -1.0, 0.0, 1.0, 1e-3)
        with pytest.raises(PathDomainError):
            solve_geodesic_numeric(scenario(FieldKind.OSCILLATORY, lam=1.0), math.pi / 2, 1.0,
                                   0.0, 1.0, 1e-3)


class TestSpeedAndRate:
    def test_constant_speed(self):
        assert entropic_speed(scenario(FieldKind.CONSTANT), 0.3, 1.0) == pytest.approx(1.0)

    def test_oscillatory_at_origin_matches_constant(self):
        assert entropic_speed(scenario(FieldKind.OSCILLATORY), 0.0, 0.7) == pytest.approx(0.7)

    def test_exponential_value(self):
        sc = scenario(FieldKind.EXPONENTIAL, gamma=0.5, lam=1 / math.pi)
        v = entropic_speed(sc, 1.0, 1.0)
        assert v == pytest.approx(0.5 * math.exp(-1 / math.pi), rel=1e-12)

    def test_rate_is_squared_speed_exactly(self):
        rng = np.random.default_rng(31)
        for kind in ALL_KINDS:
            sc = scenario(kind, gamma=float(rng.uniform(0.2, 2.0)), lam=float(rng.uniform(0.2, 2.0)))
            theta0 = float(rng.uniform(0.0, 3.0))
            thetadot0 = float(rng.uniform(0.1, 2.0))
            v = entropic_speed(sc, theta0, thetadot0)
            assert entropy_production_rate(sc, theta0, thetadot0) == v * v

    def test_reference_parameter_set(self):
        lam = 1 / math.pi
        rates = [
            entropy_production_rate(scenario(kind, gamma=0.5, lam=lam), 1.0, 1.0)
            for kind in (FieldKind.CONSTANT, FieldKind.OSCILLATORY,
                         FieldKind.POWER_LAW, FieldKind.EXPONENTIAL)
        ]
        assert rates[0] == pytest.approx(0.25)
        assert rates[1] == pytest.approx(0.25 * math.cos(1 / math.pi) ** 2, rel=1e-12)
        assert rates[2] == pytest.approx(0.25 / (1 + 1 / math.pi) ** 4, rel=1e-12)
        assert rates[3] == pytest.approx(0.25 * math.exp(-2 / math.pi), rel=1e-12)

    def test_raw_normalization_quadruples_rate(self):
        sc = scenario(FieldKind.CONSTANT)
        r_fs = entropy_production_rate(sc, 0.0, 1.0)
        r_raw = entropy_production_rate(sc, 0.0, 1.0, Normalization.RAW_FISHER)
        assert r_raw == pytest.approx(4.0 * r_fs)


class TestEfficiency:
    def test_reference_rates(self):
        rates = [0.25, 0.22551372852859897, 0.08276943163570466, 0.13226945206693383]
        assert efficiency_normalizer(rates) == 1
        etas = [entropic_efficiency(rates, i) for i in range(4)]
        assert etas == pytest.approx([0.75, 0.774486271471401, 0.9172305683642954,
                                      0.8677305479330661], rel=1e-12)

    def test_single_unit_rate(self):
        assert entropic_efficiency([1.0], 0) == 0.0

    def test_mixed_ceilings(self):
        assert efficiency_normalizer([2.3, 0.5]) == 3
        assert entropic_efficiency([2.3, 0.5], 0) == pytest.approx(1 - 2.3 / 3)
        assert entropic_efficiency([2.3, 0.5], 1) == pytest.approx(1 - 0.5 / 3)

    def test_roundoff_snap(self):
        assert efficiency_normalizer([3.0000000000000004]) == 3
        assert efficiency_normalizer([3.001]) == 4

    def test_bounds(self):
        rng = np.random.default_rng(41)
        for _ in range(50):
            rates = rng.uniform(1e-3, 7.0, size=5).tolist()
            for i in range(5):
                eta = entropic_efficiency(rates, i)
                assert 0.0 <= eta < 1.0

    def test_validation(self):
        with pytest.raises(ValueError):
            efficiency_normalizer([])
        with pytest.raises(ValueError):
            efficiency_normalizer([0.5, -1.0])
        with pytest.raises(ValueError):
            entropic_efficiency([0.5], 1)


class TestSpeedComparison:
    def test_unit_peak_rate(self):
        consts = constants.dimensionless()
        assert unit_peak_rate(0.5, consts) == pytest.approx(1 / math.pi, rel=1e-14)
        # inverse of the unit-peak coupling
        lam0 = 0.37
        gamma = 0.25 * consts.h * lam0
        assert unit_peak_rate(gamma, consts) == pytest.approx(lam0, rel=1e-14)

    def test_unit_peak_rate_mksa_neodymium_scale(self):
        consts = constants.mksa()
        gamma = consts.mu_bohr * 0.2  # ~0.2 T transverse field
        lam = unit_peak_rate(gamma, consts)
        assert 37 < lam < 38

    def test_speed_ratio_values(self):
        assert speed_ratio(1.0, 0.0) == 1.0
        assert speed_ratio(2.0, 1.0) == pytest.approx(math.exp(2) / 9, rel=1e-14)
        assert speed_ratio(3.0, 1.0) == pytest.approx(math.exp(3) / 16, rel=1e-14)

    def test_crossover_root(self):
        z = crossover_root()
        assert abs(math.exp(z) - (1 + z) ** 2) < 1e-9
        assert 2.51 < z < 2.52
        assert round(z, 3) == 2.513

    def test_region_mask_equivalence_with_root(self):
        grid = region_mask(np.logspace(-1, 2, 64), np.linspace(0.05, 5.0, 64))
        z = grid.lam[:, None] * grid.theta0[None, :]
        away = np.abs(z - grid.z_star) > 1e-9 * grid.z_star
        np.testing.assert_array_equal(grid.mask[away], (z < grid.z_star)[away])

    def test_region_vanishes_at_large_rate(self):
        grid = region_mask(np.array([37.0, 50.0]), np.linspace(0.1, 5.0, 50))
        assert not grid.mask.any()

    def test_region_contains_small_products(self):
        assert speed_ratio(1.0, 1.0) == pytest.approx(math.e / 4, rel=1e-14)
        grid = region_mask(np.array([0.5, 1.0]), np.array([0.5, 1.0, 2.0]))
        assert grid.mask.all()

    def test_default_grid_shape(self):
        grid = region_mask()
        assert grid.ratio.shape == (512, 512)
        assert grid.lam[0] == pytest.approx(1e-2) and grid.lam[-1] == pytest.approx(1e2)
        assert grid.theta0[0] > 0.0 and grid.theta0[-1] == pytest.approx(5.0)

    def test_restricted_ordering(self):
        z_hi = np.linspace(2.52, 60.0, 10_000)
        assert np.all(np.exp(-z_hi) <= (1 + z_hi) ** -2)
        z_lo = np.linspace(1e-6, 2.51, 10_000)
        assert np.all(np.exp(-z_lo) > (1 + z_lo) ** -2)

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            region_mask(np.array([0.0, 1.0]), None)
        with pytest.raises(ValueError):
            region_mask(np.array([2.0, 1.0]), None)
