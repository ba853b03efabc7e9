"""Tests for grid representations of the function-deformed relation."""
from __future__ import annotations

import math

import numpy as np
import pytest

from deformqm.const import TAN_WINDOW
from deformqm.exact_spectra import pt_groundstate_state
from deformqm.exceptions import (
    DomainViolation,
    InsufficientBoundaryData,
    InvalidParameters,
)
from deformqm.fdeform import (
    SampledState,
    approximate_commutator_coefficient,
    closed_form_momentum,
    commutator_residual,
    custom_family,
    exact_morse_rep,
    first_order_commutator,
    first_order_momentum,
    gaussian_probe,
    get_family,
    hermiticity_conditions,
    lambda_general,
    minimal_uncertainty_profile,
    representation_coefficients,
    riccati_residual,
)
from deformqm.grid import GridOperator, GridSpec, diag


# ── families ───────────────────────────────────────────────────────────


class TestFamilies:
    """Tests for the built-in deforming functions."""

    @pytest.mark.parametrize("name", ["kempf", "morse-exp", "pt-tanh", "pt-tan"])
    def test_riccati(self, name):
        assert riccati_residual(get_family(name)) < 1e-12

    def test_riccati_detects_wrong_coefficient(self):
        fam = custom_family("tanh-off", "pt-tanh", -1.0, 0.0, 1.1)
        assert riccati_residual(fam) == pytest.approx(0.1, abs=1e-12)

    @pytest.mark.parametrize("name", ["kempf", "morse-exp", "pt-tanh", "pt-tan"])
    def test_lambda_general(self, name):
        fam = get_family(name)
        x = np.linspace(*fam.window, 201)
        coef = representation_coefficients(fam, 0.01)
        np.testing.assert_allclose(lambda_general(fam, x), coef.lam(x), rtol=1e-9, atol=1e-12)

    def test_unknown(self):
        with pytest.raises(InvalidParameters):
            get_family("sinh")

    def test_tan_domain(self):
        with pytest.raises(DomainViolation):
            get_family("pt-tan").check_domain(np.array([0.0, 2.0]))


# ── momentum operators ─────────────────────────────────────────────────


class TestMomentum:
    """Tests for first-order and worked momentum operators."""

    @pytest.mark.parametrize(
        "name,x_lo,x_hi",
        [
            ("kempf", -5.0, 5.0),
            ("morse-exp", -4.0, 2.0),
            ("pt-tanh", -5.0, 5.0),
            ("pt-tan", TAN_WINDOW[0], TAN_WINDOW[1]),
        ],
    )
    def test_closed_forms_agree(self, name, x_lo, x_hi):
        fam = get_family(name)
        grid = GridSpec(x_lo, x_hi, 301)
        general = first_order_momentum(fam, 0.01, grid).dense()
        worked = closed_form_momentum(fam, 0.01, grid).dense()
        scale = np.max(np.abs(general))
        np.testing.assert_allclose(worked, general, atol=1e-12 * scale)

    def test_kempf_is_p_plus_cube(self, make_grid):
        grid = make_grid(n_points=101)
        mom = first_order_momentum(get_family("kempf"), 0.02, grid)
        h = grid.h
        assert mom.factor == -1j
        assert mom.matrix[10, 11] == pytest.approx(0.5 / h + 0.02 * 2.0 / (3.0 * 2.0 * h**3))
        assert mom.is_hermitian

    def test_undeformed_is_central_difference(self, make_grid):
        grid = make_grid(n_points=101)
        mom = first_order_momentum(get_family("pt-tanh"), 0.0, grid)
        assert mom.bandwidth == 2
        assert mom.matrix[10, 12] == 0.0
        assert mom.matrix[10, 11] == pytest.approx(0.5 / grid.h)

    def test_outside_domain(self, make_grid):
        with pytest.raises(DomainViolation):
            first_order_momentum(get_family("pt-tan"), 0.01, make_grid(-2.0, 2.0, 101))

    def test_first_order_commutator_kempf(self, make_grid):
        grid = make_grid(n_points=2001)
        fam = get_family("kempf")
        mom = first_order_momentum(fam, 0.01, grid)
        x_op = GridOperator(grid=grid, matrix=diag(grid.points))
        probe = gaussian_probe(grid)
        comm = x_op.apply(mom.apply(probe)) - mom.apply(x_op.apply(probe))
        expected = first_order_commutator(fam, 0.01, grid).apply(probe)
        inner = slice(4, grid.n_points - 4)
        np.testing.assert_allclose((-1j * comm)[inner], expected[inner], atol=1e-4)


# ── commutator_residual ────────────────────────────────────────────────


class TestCommutatorResidual:
    """Tests for the commutator defect on a Gaussian packet."""

    @pytest.mark.parametrize(
        "name,x_lo,x_hi,center,width,beta",
        [
            # beta balances the O(beta h^2) grid term against rounding in the
            # third-derivative stencil, which grows like 1/h^3
            ("pt-tanh", -5.0, 5.0, 0.0, 1.0, 4e-4),
            ("morse-exp", -4.0, 2.0, -1.0, 1.0, 1e-3),
            ("pt-tan", TAN_WINDOW[0], TAN_WINDOW[1], 0.0, 0.5, 4e-5),
        ],
    )
    def test_first_order_scales_with_beta_squared(
        self, name, x_lo, x_hi, center, width, beta
    ):
        fam = get_family(name)
        grid = GridSpec(x_lo, x_hi, 8001)
        probe = gaussian_probe(grid, center=center, width=width)

        def residual(b: float) -> float:
            mom = first_order_momentum(fam, b, grid)
            return commutator_residual(
                fam, b, mom, grid, probe=probe, exclude_undeformed=True
            )

        ratio = residual(beta) / residual(beta / 2)
        assert 3.6 <= ratio <= 4.4

    def test_exact_morse_is_beta_independent(self):
        grid = GridSpec(-3.0, 7.0, 2001)
        fam = get_family("morse-exp")
        probe = gaussian_probe(grid, center=2.0)
        values = []
        for beta in (0.01, 0.05):
            fx, mom = exact_morse_rep(beta, 1.0, grid)
            values.append(commutator_residual(fam, beta, mom, grid, fx=fx, probe=probe))
        assert values[1] == pytest.approx(values[0], rel=1e-3)

    def test_exact_morse_converges_second_order(self):
        fam = get_family("morse-exp")
        values = []
        for n_points in (2001, 4001):
            grid = GridSpec(-3.0, 7.0, n_points)
            fx, mom = exact_morse_rep(0.02, 1.0, grid)
            probe = gaussian_probe(grid, center=2.0)
            values.append(commutator_residual(fam, 0.02, mom, grid, fx=fx, probe=probe))
        assert values[0] / values[1] == pytest.approx(4.0, rel=0.2)

    def test_exact_morse_square_is_laplacian(self, make_grid):
        grid = make_grid(n_points=64)
        _, mom = exact_morse_rep(0.01, 1.0, grid)
        vec = np.sin(grid.points)
        np.testing.assert_allclose(mom.apply_squared(vec), mom.squared @ vec)
        assert mom.meta["beta"] == 0.01


# ── uncertainty profile ────────────────────────────────────────────────


class TestUncertaintyProfile:
    """Tests for the position uncertainty floor."""

    @pytest.mark.parametrize(
        "name,mean_x,expected",
        [
            ("kempf", 3.0, math.sqrt(0.01)),
            ("pt-tanh", 0.0, math.sqrt(0.01)),
            ("morse-exp", math.log(2.0), math.sqrt(0.02)),
        ],
    )
    def test_values(self, name, mean_x, expected):
        fam = get_family(name)
        assert minimal_uncertainty_profile(fam, 0.01, mean_x) == pytest.approx(expected)
        assert approximate_commutator_coefficient(fam, 0.01, mean_x) == pytest.approx(
            expected**2
        )

    def test_outside_domain(self):
        with pytest.raises(DomainViolation):
            minimal_uncertainty_profile(get_family("pt-tan"), 0.01, 2.0)


# ── hermiticity_conditions ─────────────────────────────────────────────


class TestHermiticity:
    """Tests for the boundary conditions that make P Hermitian."""

    @pytest.mark.parametrize("A,passed", [(2.0, True), (1.5, True), (1.0, False)])
    def test_poschl_teller(self, A, passed):
        state = pt_groundstate_state(A, np.linspace(-30.0, 30.0, 2001))
        report = hermiticity_conditions(get_family("pt-tanh"), state)
        assert report.passed is passed
        if not passed:
            assert report.failures

    def test_compact_support(self):
        x = np.linspace(-2.0, 2.0, 401)
        inside = np.abs(x) < 1.0
        u = np.where(inside, 1.0 - x**2, 0.0)
        state = SampledState(
            x=x,
            psi=u**3,
            dpsi=np.where(inside, -6.0 * x * u**2, 0.0),
            d2psi=np.where(inside, -6.0 * u**2 + 24.0 * x**2 * u, 0.0),
        )
        assert hermiticity_conditions(get_family("kempf"), state).passed

    def test_too_few_samples(self):
        x = np.linspace(-1.0, 1.0, 8)
        state = SampledState(x=x, psi=x, dpsi=x, d2psi=x)
        with pytest.raises(InsufficientBoundaryData):
            hermiticity_conditions(get_family("kempf"), state)
