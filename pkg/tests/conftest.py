"""Shared fixtures for deformqm tests."""
from __future__ import annotations

import json
from pathlib import Path

import pytest

from deformqm import cli
from deformqm.grid import GridSpec
from deformqm.quad_algebra import QuadraticAlgebraParams
from deformqm.si_oscillator import OscFieldInput

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def make_params():
    """Factory fixture for creating QuadraticAlgebraParams instances."""

    def _make(
        alpha: float = 0.01,
        beta: float = 0.01,
        kappa_re: float = 0.0,
        kappa_im: float = 0.0,
    ) -> QuadraticAlgebraParams:
        return QuadraticAlgebraParams(
            alpha=alpha, beta=beta, kappa_re=kappa_re, kappa_im=kappa_im
        )

    return _make


@pytest.fixture
def make_osc_input():
    """Factory fixture for oscillator-in-a-field inputs built from (a, b, k)."""

    def _make(
        alpha: float = 0.01,
        beta: float = 0.01,
        kappa: float = 0.0,
        field_E: float = 0.0,
    ) -> OscFieldInput:
        return OscFieldInput.from_algebra(alpha, beta, kappa, field_E)

    return _make


@pytest.fixture
def make_grid():
    """Factory fixture for grids."""

    def _make(x_lo: float = -5.0, x_hi: float = 5.0, n_points: int = 2001) -> GridSpec:
        return GridSpec(x_lo, x_hi, n_points)

    return _make


@pytest.fixture
def run_cli(capsys):
    """Run the command line and return (exit code, stdout, stderr)."""

    def _run(*argv: str) -> tuple[int, str, str]:
        code = cli.main(list(argv))
        out, err = capsys.readouterr()
        return code, out, err

    return _run


@pytest.fixture
def load_fixture():
    """Load a JSON golden fixture by name."""

    def _load(name: str) -> dict:
        return json.loads((FIXTURES / name).read_text(encoding="utf-8"))

    return _load
