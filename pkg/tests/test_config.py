import numpy as np
import pytest
import yaml

from config.codec import (
    apply_overrides,
    decode_matrix,
    dump_system_spec,
    encode_matrix,
    load_config_file,
    parse_noise_model,
    parse_system_spec,
)
from config.presets import NOISE_PRESETS, BENCHMARK_PRESET, benchmark_preset
from config.settings import Settings, load_config
from models.campaign import BackendKind
from models.circuit import NoiseModel
from utils.errors import ConfigError, InvalidNoiseError, NotHermitianError, NotUnitaryError


class TestMatrixCodec:
    def test_decode_pairs_and_reals(self):
        m = decode_matrix([[[1, 0], [0, -1]], [[0, 1], 2]])
        np.testing.assert_array_equal(m, np.array([[1, -1j], [1j, 2]]))

    def test_encode_keeps_full_precision(self):
        m = np.array([[np.pi, 1 / 3 + 1e-17j], [np.e, -0.1]])
        assert np.array_equal(decode_matrix(encode_matrix(m)), m)

    @pytest.mark.parametrize(
        "raw",
        [[], [[1, 2], [3]], [[True]], [["a"]], "matrix", [[[1, 2, 3]]]],
    )
    def test_decode_rejects_malformed(self, raw):
        with pytest.raises(ConfigError):
            decode_matrix(raw)


class TestSystemSpecParsing:
    def test_preset(self, benchmark_spec):
        assert parse_system_spec({"preset": BENCHMARK_PRESET}) == benchmark_spec

    def test_preset_params(self):
        spec = parse_system_spec({"preset": BENCHMARK_PRESET, "preset_params": {"coupling": 2}})
        assert spec == benchmark_preset(coupling=2.0)

    def test_explicit_keys_override_preset(self, benchmark_spec):
        spec = parse_system_spec({"preset": BENCHMARK_PRESET, "beta": 1.25})
        assert spec.beta == 1.25
        np.testing.assert_array_equal(spec.h0, benchmark_spec.h0)

    def test_dump_round_trip(self, benchmark_spec):
        dumped = dump_system_spec(benchmark_spec)
        assert "preset" not in dumped
        assert parse_system_spec(yaml.safe_load(yaml.safe_dump(dumped))) == benchmark_spec

    def test_dump_keeps_custom_basis(self, hadamard_toy):
        basis = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        spec = hadamard_toy.model_copy(update={"initial_basis": basis})
        dumped = dump_system_spec(spec)
        assert "initial_basis" in dumped
        assert parse_system_spec(dumped).has_custom_basis

    def test_generator_form(self):
        raw = {
            "h0": [[1, 0], [0, -1]],
            "h_tau": [[1, 0], [0, -1]],
            "u": {"generator": [[0, 1], [1, 0]], "time": np.pi / 2},
            "beta": 1.0,
        }
        spec = parse_system_spec(raw)
        # exp(-i X pi/2) = -i X
        np.testing.assert_allclose(spec.u_evol, np.array([[0, -1j], [-1j, 0]]), atol=1e-12)

    @pytest.mark.parametrize(
        "raw",
        [
            {"preset": "unknown"},
            {"preset": BENCHMARK_PRESET, "preset_params": {"gamma": 1}},
            {"preset_params": {"omega": 1}},
            {"h0": [[1]], "h_tau": [[1]], "beta": 1.0},
            {"preset": BENCHMARK_PRESET, "beta": -1.0},
            {"preset": BENCHMARK_PRESET, "beta": "hot"},
            {"preset": BENCHMARK_PRESET, "u": {"generator": [[1]]}},
        ],
    )
    def test_invalid_configs(self, raw):
        with pytest.raises(ConfigError):
            parse_system_spec(raw)

    def test_non_hermitian_is_numerical(self):
        raw = {"h0": [[0, 1], [0, 0]], "h_tau": [[1, 0], [0, 1]], "u": [[1, 0], [0, 1]], "beta": 1}
        with pytest.raises(NotHermitianError):
            parse_system_spec(raw)

    def test_non_unitary_is_numerical(self):
        raw = {"h0": [[1, 0], [0, 1]], "h_tau": [[1, 0], [0, 1]], "u": [[2, 0], [0, 1]], "beta": 1}
        with pytest.raises(NotUnitaryError):
            parse_system_spec(raw)

    @pytest.mark.parametrize(
        "h_tau",
        [[[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, 0]]],
        ids=["mismatched", "non-square"],
    )
    def test_shape_errors_are_config_errors(self, h_tau):
        raw = {"h0": [[1, 0], [0, -1]], "h_tau": h_tau, "u": [[1, 0], [0, 1]], "beta": 1}
        with pytest.raises(ConfigError, match="shape"):
            parse_system_spec(raw)


class TestOverrides:
    def test_dotted_keys_and_yaml_scalars(self):
        raw = {"preset": BENCHMARK_PRESET, "preset_params": {"tau": 1.0}}
        result = apply_overrides(raw, ["beta=0.75", "preset_params.coupling=2", "flag=true"])
        assert result["beta"] == 0.75
        assert result["preset_params"] == {"tau": 1.0, "coupling": 2}
        assert result["flag"] is True
        assert "beta" not in raw

    def test_later_override_wins(self):
        assert apply_overrides({}, ["beta=1", "beta=2"])["beta"] == 2

    def test_missing_separator(self):
        with pytest.raises(ConfigError):
            apply_overrides({}, ["beta"])

    def test_override_feeds_parser(self):
        spec = parse_system_spec(apply_overrides({"preset": BENCHMARK_PRESET}, ["beta=1.0"]))
        assert spec.beta == 1.0


class TestNoiseParsing:
    def test_presets(self):
        assert parse_noise_model("ibm-like") == NOISE_PRESETS["ibm-like"]
        assert parse_noise_model("none").is_noiseless
        assert parse_noise_model(None) is None

    def test_mapping(self):
        assert parse_noise_model({"depol_ctrl": 0.02}) == NoiseModel(depol_ctrl=0.02)

    def test_file(self, tmp_path):
        path = tmp_path / "noise.yaml"
        path.write_text("readout_p01: 0.1\n")
        assert parse_noise_model(str(path)).readout_p01 == 0.1

    @pytest.mark.parametrize(
        "raw",
        ["no-such-preset", {"depol_ctrl": 1.5}, {"depol_2q": 0.1}, {"readout_p10": -0.1}],
    )
    def test_invalid(self, raw):
        with pytest.raises(InvalidNoiseError):
            parse_noise_model(raw)

    def test_invalid_noise_is_config_error(self):
        with pytest.raises(ConfigError):
            parse_noise_model({"depol_1q": 2})


class TestConfigFiles:
    def test_load_config_file_yaml_and_json(self, tmp_path):
        yml = tmp_path / "system.yaml"
        yml.write_text("preset: paper-2qubit\nbeta: 0.5\n")
        jsn = tmp_path / "system.json"
        jsn.write_text('{"preset": "paper-2qubit", "beta": 0.5}')
        assert load_config_file(yml) == load_config_file(jsn)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("")
        assert load_config_file(path) == {}

    @pytest.mark.parametrize("text", ["h0: [[1, 0]\n", "- 1\n- 2\n"])
    def test_malformed_file(self, tmp_path, text):
        path = tmp_path / "bad.yaml"
        path.write_text(text)
        with pytest.raises(ConfigError):
            load_config_file(path)


class TestSettings:
    def test_default_file(self):
        settings = load_config()
        assert settings.campaign.shots == 20000
        assert settings.campaign.backend == BackendKind.DENSITY_MATRIX
        assert settings.linalg.max_dim == 4096
        assert settings.noise_presets["ibm-like"] == NOISE_PRESETS["ibm-like"]

    def test_defaults_match_file(self):
        assert load_config() == Settings()

    def test_user_presets_extend_builtins(self, tmp_path):
        path = tmp_path / "settings.yaml"
        path.write_text("campaign:\n  trials: 7\nnoise_presets:\n  loud:\n    depol_ctrl: 0.2\n")
        settings = load_config(path)
        assert settings.campaign.trials == 7
        assert settings.noise_presets["loud"].depol_ctrl == 0.2
        assert "ibm-like" in settings.noise_presets

    @pytest.mark.parametrize("text", ["campaign: [1\n", "campaign:\n  shots: 0\n", "42\n"])
    def test_invalid_settings(self, tmp_path, text):
        path = tmp_path / "settings.yaml"
        path.write_text(text)
        with pytest.raises(ConfigError):
            load_config(path)
