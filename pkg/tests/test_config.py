"""Tests for configuration schemas and run records."""
from __future__ import annotations

import json

import pytest
import voluptuous as vol

from deformqm.__main__ import cap_threads
from deformqm.config import (
    RunConfig,
    domain,
    load_config,
    merge_params,
    threads_from_env,
    validate_params,
)
from deformqm.exceptions import InvalidParameters


# ── validate_params ────────────────────────────────────────────────────


class TestValidateParams:
    """Tests for the per-command schemas."""

    def test_canonicalize_defaults(self):
        params = validate_params("canonicalize", {"alpha": "0.02", "beta": 0.01})
        assert params == {
            "alpha": 0.02,
            "beta": 0.01,
            "kappa_re": 0.0,
            "kappa_im": 0.0,
            "mean_x": 0.0,
            "mean_p": 0.0,
        }

    def test_spectrum_defaults(self):
        params = validate_params(
            "spectrum", {"system": "morse", "A": "2", "B": "1", "beta": "0.01"}
        )
        assert params["levels"] == 5
        assert params["kappa"] == 0.0
        assert params["A"] == 2.0

    def test_verify_defaults(self):
        params = validate_params("verify", {"system": "pt-hyp", "A": 2, "beta": 0.01})
        assert params["levels"] == 1
        assert params["dim"] == 60
        assert "grid_points" not in params

    def test_generic_family(self):
        params = validate_params(
            "verify",
            {
                "system": "generic",
                "family": "pt-tanh",
                "riccati": "-1:0:1",
                "beta": 0.01,
                "g": 1.0,
                "s": 2.0,
                "eps0": -2.0,
            },
        )
        assert params["riccati"] == (-1.0, 0.0, 1.0)
        assert "r" not in params

    @pytest.mark.parametrize(
        "command,data,field",
        [
            ("canonicalize", {"alpha": "nan", "beta": 0.01}, "alpha"),
            ("canonicalize", {"alpha": "abc", "beta": 0.01}, "alpha"),
            ("canonicalize", {"beta": 0.01}, "alpha"),
            ("spectrum", {"system": "harmonic", "A": 2, "beta": 0.01}, "system"),
            ("spectrum", {"system": "morse", "A": 2, "beta": 0.01}, "B"),
            ("spectrum", {"system": "osc-field", "alpha": 0.01}, "beta"),
            ("verify", {"system": "pt-hyp", "A": 2, "beta": 0.01, "grid_points": 8}, "grid_points"),
            ("verify", {"system": "osc-field", "alpha": 0.01, "beta": 0.01, "dim": 1}, "dim"),
            ("verify", {"system": "pt-hyp", "A": 2, "beta": 0.01, "domain": "3:1"}, "domain"),
            ("verify", {"system": "generic", "family": "sine", "beta": 0.01}, "family"),
            ("verify", {"system": "generic", "family": "pt-tanh", "beta": 0.01, "g": 1, "s": 2}, "eps0"),
            ("verify", {"system": "generic", "family": "kempf", "riccati": "1:2", "beta": 0.01}, "riccati"),
            ("wavefunction", {"system": "pt-trig", "A": 2, "beta": 0.01}, "system"),
            ("wavefunction", {"system": "morse", "A": 2, "B": 1, "beta": 0.01, "n": -1}, "n"),
            ("plot", {}, "command"),
        ],
    )
    def test_rejects(self, command, data, field):
        with pytest.raises(InvalidParameters) as exc:
            validate_params(command, data)
        assert exc.value.field == field


class TestDomain:
    """Tests for the domain validator."""

    @pytest.mark.parametrize(
        "value,expected",
        [
            ("-1:2", (-1.0, 2.0)),
            ("0.5:1e1", (0.5, 10.0)),
            ([0, 1], (0.0, 1.0)),
        ],
    )
    def test_parses(self, value, expected):
        assert domain(value) == expected

    @pytest.mark.parametrize("value", ["1:0", "1", "a:b", "0:inf", 5, [1, 2, 3]])
    def test_rejects(self, value):
        with pytest.raises(vol.Invalid):
            domain(value)


# ── config files ───────────────────────────────────────────────────────


class TestLoadConfig:
    """Tests for JSON config files."""

    def test_valid(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"spectrum": {"system": "morse", "A": 2}}))
        assert load_config(path) == {"spectrum": {"system": "morse", "A": 2}}

    @pytest.mark.parametrize(
        "content",
        [
            "{not json",
            json.dumps({"plot": {}}),
            json.dumps({"spectrum": 3}),
        ],
    )
    def test_invalid(self, tmp_path, content):
        path = tmp_path / "run.json"
        path.write_text(content)
        with pytest.raises(InvalidParameters) as exc:
            load_config(path)
        assert exc.value.field == "config"

    def test_missing(self, tmp_path):
        with pytest.raises(InvalidParameters) as exc:
            load_config(tmp_path / "absent.json")
        assert exc.value.field == "config"

    def test_merge_skips_unset_flags(self):
        merged = merge_params({"A": 2, "beta": 0.01}, {"A": None, "beta": "0.02", "B": "1"})
        assert merged == {"A": 2, "beta": "0.02", "B": "1"}


# ── threads ────────────────────────────────────────────────────────────


class TestThreads:
    """Tests for the thread cap read from the environment."""

    @pytest.mark.parametrize(
        "environ,expected",
        [({}, None), ({"DEFORMQM_THREADS": ""}, None), ({"DEFORMQM_THREADS": "4"}, 4)],
    )
    def test_values(self, environ, expected):
        assert threads_from_env(environ) == expected

    @pytest.mark.parametrize("raw", ["0", "-2", "many"])
    def test_rejects(self, raw):
        with pytest.raises(InvalidParameters) as exc:
            threads_from_env({"DEFORMQM_THREADS": raw})
        assert exc.value.field == "DEFORMQM_THREADS"

    def test_exported(self):
        environ = {"DEFORMQM_THREADS": "2"}
        assert cap_threads(environ) == 2
        assert environ["OMP_NUM_THREADS"] == "2"
        assert environ["OPENBLAS_NUM_THREADS"] == "2"
        assert environ["MKL_NUM_THREADS"] == "2"

    def test_unset_leaves_environment(self):
        environ: dict[str, str] = {}
        assert cap_threads(environ) is None
        assert environ == {}


# ── RunConfig ──────────────────────────────────────────────────────────


class TestRunConfig:
    """Tests for the serialized run record."""

    def test_unknown_format(self):
        with pytest.raises(InvalidParameters) as exc:
            RunConfig(command="spectrum", output_format="xml")
        assert exc.value.field == "format"

    def test_json_is_sorted(self):
        run = RunConfig(
            command="verify",
            params=validate_params(
                "verify", {"system": "pt-hyp", "A": 2, "beta": 0.01, "domain": "-4:4"}
            ),
        )
        data = json.loads(run.to_json())
        assert list(data) == sorted(data)
        assert data["params"]["domain"] == [-4.0, 4.0]
        assert data["seed"] == 0

    def test_rebuilt_from_json(self):
        run = RunConfig(
            command="verify",
            params=validate_params(
                "verify", {"system": "pt-hyp", "A": 2, "beta": 0.01, "domain": "-4:4"}
            ),
            output_format="json",
            output="out.json",
            seed=7,
        )
        assert RunConfig.from_json(run.to_json()) == run

    def test_rebuild_revalidates(self):
        text = json.dumps({"command": "spectrum", "params": {"system": "morse"}})
        with pytest.raises(InvalidParameters):
            RunConfig.from_json(text)
