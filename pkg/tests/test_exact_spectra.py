"""Tests for the closed-form Pöschl-Teller and Morse spectra."""
from __future__ import annotations

import numpy as np
import pytest
from scipy import integrate

from deformqm.exact_spectra import (
    bb_relation,
    morse_coefficients,
    morse_first_order_slope,
    morse_ladder_operator,
    morse_params,
    morse_spectrum,
    morse_wavefunction,
    potential_from_f,
    pt_first_order_slope,
    pt_groundstate_correction,
    pt_hyp_energy,
    pt_hyp_excited_correction,
    pt_hyp_groundstate,
    pt_hyp_params,
    pt_hyp_spectrum,
    pt_hyp_validity_bound,
    pt_trig_energy,
    pt_trig_spectrum,
    shape_invariant_ground,
)
from deformqm.exceptions import (
    DomainViolation,
    InvalidParameters,
    LevelOutOfRange,
    NoBoundStates,
    NotNormalizable,
    ValidityWarning,
)
from deformqm.fdeform import get_family
from deformqm.grid import GridSpec
from deformqm.numerics import assemble_hamiltonian, grid_residual


# ── shape-invariant potentials ─────────────────────────────────────────


class TestPotentialFromF:
    """Tests for the potential and B±B∓ built from a family."""

    @pytest.fixture(autouse=True)
    def _setup(self):
        self.x = np.linspace(-2.0, 5.0, 57)

    def test_kempf_is_harmonic(self):
        v = potential_from_f(get_family("kempf"), 1.0, 1.0, 0.0, 0.5, self.x)
        np.testing.assert_allclose(v, 0.5 * self.x**2, atol=1e-14)

    def test_tanh_is_poschl_teller(self):
        A = 2.5
        v = potential_from_f(get_family("pt-tanh"), 1.0, A, 0.0, -0.5 * A * A, self.x)
        expected = -0.5 * A * (A + 1.0) / np.cosh(self.x) ** 2
        np.testing.assert_allclose(v, expected, atol=1e-12)

    def test_zero_superpotential(self):
        v = potential_from_f(get_family("morse-exp"), 1.2, 0.0, 0.0, -0.7, self.x)
        np.testing.assert_allclose(v, -0.7)

    def test_bb_relation_matches_potential(self):
        fam = get_family("morse-exp")
        g, s, r, beta, eps0 = 1.005, 1.0, 1.5, 0.01, -0.25
        weight, mult = bb_relation(fam, g, s, r, beta, self.x)
        assert weight == pytest.approx(0.5 * g * (g - beta * s))
        np.testing.assert_allclose(
            mult + eps0, potential_from_f(fam, g, s, r, eps0, self.x), rtol=1e-12, atol=1e-13
        )

    def test_bb_relation_reversed_order(self):
        fam = get_family("pt-tanh")
        g, s, r, beta = 1.01, 2.0, 0.3, 0.02
        w_plus, m_plus = bb_relation(fam, g, s, r, beta, self.x, sign=1)
        w_minus, m_minus = bb_relation(fam, g, s, r, beta, self.x, sign=-1)
        assert w_minus - w_plus == pytest.approx(g * beta * s)
        np.testing.assert_allclose(m_minus - m_plus, g * s * fam.f_prime(self.x), rtol=1e-12)

    def test_shape_invariant_ground(self):
        report = shape_invariant_ground(get_family("kempf"), 1.0, 1.0, 0.0, 0.5, 0.01)
        assert report.system == "generic"
        assert report.energies() == [0.5]
        assert report.meta["family"] == "kempf"

    def test_shape_invariant_needs_positive_g(self):
        with pytest.raises(InvalidParameters) as exc:
            shape_invariant_ground(get_family("kempf"), 0.0, 1.0, 0.0, 0.5, 0.01)
        assert exc.value.field == "g"


# ── hyperbolic Pöschl-Teller ───────────────────────────────────────────


class TestPTHyp:
    """Tests for the deformed hyperbolic well."""

    def test_params(self):
        params = pt_hyp_params(2.0, 0.01)
        assert params.k == pytest.approx(0.50602875, abs=1e-8)
        assert params.eps0 == pytest.approx(-1.9919938, abs=1e-7)
        assert params.n_max == 1

    def test_ground_energy_is_eps0(self):
        params = pt_hyp_params(2.0, 0.01)
        assert pt_hyp_energy(2.0, 0.01, 0).e_exact == pytest.approx(params.eps0, rel=1e-12)

    def test_undeformed(self):
        report = pt_hyp_spectrum(3.0, 0.0)
        assert report.n_max == 2
        assert report.energies() == pytest.approx([-4.5, -2.0, -0.5])

    @pytest.mark.parametrize("A,n", [(2.0, 0), (2.0, 1), (3.5, 2)])
    def test_first_order_slope(self, A, n):
        beta = 1e-6
        exact = pt_hyp_energy(A, beta, n).e_exact
        slope = (exact + 0.5 * (A - n) ** 2) / beta
        assert slope == pytest.approx(pt_first_order_slope(A, n), rel=1e-3)

    def test_first_order_record(self):
        rec = pt_hyp_energy(2.0, 0.01, 0)
        assert rec.delta_n == pytest.approx(0.4)
        assert rec.e_first_order == pytest.approx(-2.0 * (1 - 0.004))
        assert rec.validity_flag

    def test_validity_bound(self):
        assert pt_hyp_validity_bound(2.0) == pytest.approx(15.0 / 57.0)

    def test_validity_warning(self):
        with pytest.warns(ValidityWarning):
            pt_hyp_spectrum(2.0, 0.05)

    def test_level_out_of_range(self):
        with pytest.raises(LevelOutOfRange):
            pt_hyp_energy(2.0, 0.01, 2)
        with pytest.raises(LevelOutOfRange):
            pt_hyp_params(1.0, 0.01)


# ── trigonometric Pöschl-Teller ────────────────────────────────────────


class TestPTTrig:
    """Tests for the first-order trigonometric well."""

    def test_ground_level(self):
        rec = pt_trig_energy(2.0, 0.01, 0)
        assert rec.e_exact is None
        assert rec.delta_n == pytest.approx(2.0 / 3.0)
        assert rec.e_first_order == pytest.approx(2.0 * (1 + 0.01 * 2.0 / 3.0))

    def test_spectrum(self):
        report = pt_trig_spectrum(2.0, 0.001, 3)
        assert report.n_max is None
        assert len(report.levels) == 3
        assert report.beta_validity_bound == pytest.approx(1.0 / report.levels[-1].delta_n)
        assert report.energies() == [lvl.e_first_order for lvl in report.levels]
        assert np.all(np.diff(report.energies()) > 0)

    def test_rejects(self):
        with pytest.raises(LevelOutOfRange):
            pt_trig_energy(1.0, 0.01, 0)
        with pytest.raises(LevelOutOfRange):
            pt_trig_energy(2.0, 0.01, -1)


# ── ground-state correction ────────────────────────────────────────────


class TestPTGroundStateCorrection:
    """Tests for C, D and the first-order wavefunctions."""

    @pytest.mark.parametrize(
        "A,C,D",
        [
            (2.0, 4.4, -0.616819),
            (3.0, 13.142857, 0.064696),
        ],
    )
    def test_integer_values(self, A, C, D):
        corr = pt_groundstate_correction(A)
        assert corr.integer_closed_form
        assert corr.C == pytest.approx(C, abs=1e-6)
        assert corr.D == pytest.approx(D, abs=1e-5)

    @pytest.mark.parametrize("A", [2.0, 2.5, 3.0, 4.2])
    def test_orthogonal_to_undeformed(self, A):
        corr = pt_groundstate_correction(A)
        value, _ = integrate.quad(
            lambda x: np.cosh(x) ** (-A) * corr.terms(np.array([x]))[0],
            0.0,
            40.0,
            limit=200,
            epsabs=1e-12,
        )
        assert abs(value) < 1e-6

    def test_rejects_small_A(self):
        with pytest.raises(DomainViolation):
            pt_groundstate_correction(1.0)

    def test_undeformed_is_normalized(self):
        x = np.linspace(-20.0, 20.0, 8001)
        psi = pt_hyp_groundstate(2.5, 0.0, x)
        assert integrate.trapezoid(psi**2, x) == pytest.approx(1.0, rel=1e-8)

    def test_excited_needs_A_above_two(self):
        with pytest.raises(DomainViolation):
            pt_hyp_excited_correction(2.0, 0.01, np.zeros(3))

    def test_excited_is_odd(self):
        x = np.linspace(-6.0, 6.0, 121)
        corr = pt_hyp_excited_correction(3.0, 0.01, x)
        np.testing.assert_allclose(corr, -corr[::-1], atol=1e-12)


# ── Morse ──────────────────────────────────────────────────────────────


class TestMorseParams:
    """Tests for the Morse ladder."""

    @pytest.fixture(autouse=True)
    def _setup(self):
        self.params = morse_params(2.0, 1.0, 0.01)

    def test_constants(self):
        assert self.params.g == pytest.approx(1.0050125, abs=1e-7)
        assert self.params.r == pytest.approx(1.99749375, abs=1e-8)
        assert self.params.n_max == 1
        assert self.params.exists

    def test_bracket(self):
        lo, hi = self.params.bracket
        assert lo == pytest.approx(0.968, abs=1e-3)
        assert hi == pytest.approx(1.968, abs=1e-3)
        assert lo <= self.params.n_max < hi

    def test_spectrum(self):
        _, report = morse_spectrum(2.0, 1.0, 0.01)
        assert report.energies() == pytest.approx([-1.9949906, -0.4875596], abs=1e-7)
        assert report.beta_validity_bound == pytest.approx(4.8)

    @pytest.mark.parametrize("n", [0, 1])
    def test_first_order(self, n):
        assert morse_first_order_slope(2.0, 1.0, n) == pytest.approx(
            0.25 * (2 - n) * (2 * n * n + 2 * n + 1)
        )
        beta = 1e-6
        _, report = morse_spectrum(2.0, 1.0, beta)
        slope = (report.levels[n].e_exact + 0.5 * (2 - n) ** 2) / beta
        assert slope == pytest.approx(morse_first_order_slope(2.0, 1.0, n), rel=1e-4)

    def test_undeformed_levels(self):
        params = morse_params(3.5, 2.0, 0.0)
        assert params.n_max == 3
        assert params.ladder_r == pytest.approx((3.5, 2.5, 1.5, 0.5))

    def test_no_bound_states(self):
        params = morse_params(0.3, 10.0, 0.2)
        assert not params.exists
        with pytest.raises(NoBoundStates) as exc:
            morse_spectrum(0.3, 10.0, 0.2)
        assert exc.value.field == "beta"


class TestMorseWavefunction:
    """Tests for the Bessel-series Morse states."""

    @pytest.fixture(autouse=True)
    def _setup(self):
        self.params = morse_params(2.0, 1.0, 0.01)

    def test_ground_coefficients(self):
        coef, nu, rho, m = morse_coefficients(self.params, 0)
        np.testing.assert_array_equal(coef, [1.0])
        assert m == pytest.approx(100.50125, abs=1e-5)
        assert nu == pytest.approx(104.40, abs=1e-2)
        assert rho == pytest.approx(0.5 * (nu - m), rel=1e-12)

    def test_level_beyond_ladder(self):
        with pytest.raises(NotNormalizable):
            morse_coefficients(self.params, 2)

    @pytest.mark.parametrize("n,nodes", [(0, 0), (1, 1)])
    def test_normalized_with_nodes(self, n, nodes):
        x = np.linspace(-4.0, 16.0, 8001)
        wf = morse_wavefunction(self.params, n, x)
        assert integrate.trapezoid(wf.psi**2, x) == pytest.approx(1.0, rel=1e-6)
        assert wf.psi.max() > 0
        big = wf.psi[np.abs(wf.psi) > 1e-8 * np.abs(wf.psi).max()]
        assert np.count_nonzero(np.diff(np.sign(big))) == nodes

    def test_ground_state_is_annihilated(self):
        grid = GridSpec(-4.0, 16.0, 8001)
        wf = morse_wavefunction(self.params, 0, grid.points)
        lower = morse_ladder_operator(self.params, grid)
        defect = lower.apply(wf.psi)[4:-4]
        assert np.max(np.abs(defect)) / np.max(np.abs(wf.psi)) < 1e-3

    def test_ground_state_solves_grid_hamiltonian(self):
        values = []
        for n_points in (4001, 8001):
            grid = GridSpec(-4.0, 16.0, n_points)
            wf = morse_wavefunction(self.params, 0, grid.points)
            op = assemble_hamiltonian("morse", {"A": 2.0, "B": 1.0, "beta": 0.01}, grid)
            values.append(grid_residual(op, wf.psi, -0.5 * self.params.r**2, trim=4))
        assert values[0] / values[1] == pytest.approx(4.0, rel=0.25)

    def test_ground_state_residual_on_fine_grid(self):
        grid = GridSpec(-3.0, 10.0, 32001)
        wf = morse_wavefunction(self.params, 0, grid.points)
        op = assemble_hamiltonian("morse", {"A": 2.0, "B": 1.0, "beta": 0.01}, grid)
        assert grid_residual(op, wf.psi, -0.5 * self.params.r**2, trim=4) < 1e-6

    def test_small_beta_uses_large_orders(self):
        params = morse_params(2.0, 1.0, 5e-4)
        x = np.linspace(-4.0, 16.0, 8001)
        wf = morse_wavefunction(params, 0, x)
        assert wf.nu > 2000.0
        assert integrate.trapezoid(wf.psi**2, x) == pytest.approx(1.0, rel=1e-6)
        plain = morse_wavefunction(morse_params(2.0, 1.0, 0.0), 0, x)
        assert integrate.trapezoid(wf.psi * plain.psi, x) > 0.999


class TestUndeformedMorse:
    """Tests for the beta = 0 Laguerre states."""

    @pytest.fixture(autouse=True)
    def _setup(self):
        self.params = morse_params(2.0, 1.0, 0.0)
        self.x = np.linspace(-4.0, 16.0, 8001)

    def test_ground_state_closed_form(self):
        wf = morse_wavefunction(self.params, 0, self.x)
        expected = np.exp(-2.0 * self.x - np.exp(-self.x)) / np.sqrt(0.375)
        np.testing.assert_allclose(wf.psi, expected, rtol=1e-10, atol=1e-14)
        assert wf.nu is None and wf.m is None
        assert wf.rho == 2.0

    def test_first_excited(self):
        wf = morse_wavefunction(self.params, 1, self.x)
        assert integrate.trapezoid(wf.psi**2, self.x) == pytest.approx(1.0, rel=1e-6)
        ground = morse_wavefunction(self.params, 0, self.x)
        assert integrate.trapezoid(wf.psi * ground.psi, self.x) == pytest.approx(0.0, abs=1e-8)
        assert wf.psi[np.argmax(np.abs(wf.psi))] > 0

    def test_solves_grid_hamiltonian(self):
        grid = GridSpec(-4.0, 16.0, 8001)
        wf = morse_wavefunction(self.params, 0, grid.points)
        op = assemble_hamiltonian("morse", {"A": 2.0, "B": 1.0, "beta": 0.0}, grid)
        assert grid_residual(op, wf.psi, -2.0, trim=4) < 1e-4

    def test_bracket(self):
        assert self.params.bracket == (1.0, 2.0)
        assert self.params.n_max == 1

    def test_no_bessel_form(self):
        with pytest.raises(InvalidParameters) as exc:
            morse_coefficients(self.params, 0)
        assert exc.value.field == "beta"
