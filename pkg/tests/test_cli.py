import json

import pytest
from click.testing import CliRunner

from tpqsim.cli import config_hash, load_config, main
from tpqsim.errors import ConfigError


@pytest.fixture
def runner():
    return CliRunner()


def write_config(tmp_path, body, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(body))
    return str(path)


def sweep_config(tmp_path, out_name="out.csv", **estimate):
    est = {"betas": [0.2, 0.8], "R": 2}
    est.update(estimate)
    return write_config(tmp_path, {
        "model": {"dimension": 1, "extents": [3]},
        "random_circuit": {"depth": 5, "seed": 1},
        "estimate": est,
        "output": {"path": str(tmp_path / out_name)},
    })


def test_sweep_beta_writes_csv(runner, tmp_path):
    cfg = sweep_config(tmp_path)
    result = runner.invoke(main, ["sweep-beta", cfg])
    assert result.exit_code == 0, result.output
    lines = (tmp_path / "out.csv").read_text().splitlines()
    assert lines[0].startswith("# config_sha256=")
    assert lines[1] == ("beta,mean,uncertainty,ensemble_ref,squared_error,"
                       "backend,N,d,R,seed")
    assert len(lines) == 4
    assert lines[2].startswith("0.2,")
    assert lines[2].split(",")[5:] == ["exact", "3", "5", "2", "1"]


def test_sweep_beta_byte_determinism(runner, tmp_path):
    cfg = sweep_config(tmp_path)
    runner.invoke(main, ["sweep-beta", cfg, "-o", str(tmp_path / "a.csv")])
    runner.invoke(main, ["sweep-beta", cfg, "-o", str(tmp_path / "b.csv")])
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_sweep_beta_overrides(runner, tmp_path):
    cfg = sweep_config(tmp_path)
    result = runner.invoke(main, ["sweep-beta", cfg, "-R", "3", "--seed", "9"])
    assert result.exit_code == 0
    row = (tmp_path / "out.csv").read_text().splitlines()[2].split(",")
    assert row[8:] == ["3", "9"]


def test_unknown_key_rejected(runner, tmp_path):
    cfg = write_config(tmp_path, {
        "model": {"dimension": 1, "extents": [3], "bogus": 1},
        "estimate": {"betas": [0.5]},
        "output": {"path": str(tmp_path / "x.csv")},
    })
    result = runner.invoke(main, ["sweep-beta", cfg])
    assert result.exit_code == 1
    assert "bogus" in result.output


def test_unknown_section_rejected(runner, tmp_path):
    cfg = write_config(tmp_path, {"mystery": {}})
    result = runner.invoke(main, ["sweep-beta", cfg])
    assert result.exit_code == 1


def test_missing_file_is_config_error(runner, tmp_path):
    result = runner.invoke(main, ["sweep-beta", str(tmp_path / "nope.json")])
    assert result.exit_code == 1


def test_invalid_extents_is_config_error(runner, tmp_path):
    cfg = write_config(tmp_path, {
        "model": {"dimension": 2, "extents": [3]},
        "estimate": {"betas": [0.5]},
        "output": {"path": str(tmp_path / "x.csv")},
    })
    result = runner.invoke(main, ["sweep-beta", cfg])
    assert result.exit_code == 1


def test_missing_output_path(runner, tmp_path):
    cfg = write_config(tmp_path, {
        "model": {"dimension": 1, "extents": [2]},
        "estimate": {"betas": [0.5]},
    })
    result = runner.invoke(main, ["sweep-beta", cfg])
    assert result.exit_code == 1
    assert "output" in result.output


def test_magnetization_observable(runner, tmp_path):
    cfg = sweep_config(tmp_path, observable="magnetization_x")
    result = runner.invoke(main, ["sweep-beta", cfg])
    assert result.exit_code == 0, result.output


def test_entropy_scan(runner, tmp_path):
    cfg = write_config(tmp_path, {
        "model": {"dimension": 1, "extents": [3]},
        "entropy": {"depths": [1, 3], "seeds": 4},
        "output": {"path": str(tmp_path / "ent.csv")},
    })
    result = runner.invoke(main, ["entropy-scan", cfg])
    assert result.exit_code == 0, result.output
    lines = (tmp_path / "ent.csv").read_text().splitlines()
    assert lines[1] == "depth,mean_entropy,stderr,haar_reference"
    assert len(lines) == 4


def test_dilation_scan(runner, tmp_path):
    cfg = write_config(tmp_path, {
        "model": {"dimension": 1, "extents": [2]},
        "random_circuit": {"depth": 5},
        "dilation": {"beta": 0.5, "epsilons": [0.001, 0.5], "R": 3},
        "output": {"path": str(tmp_path / "dil.csv")},
    })
    result = runner.invoke(main, ["dilation-scan", cfg])
    assert result.exit_code == 0, result.output
    lines = (tmp_path / "dil.csv").read_text().splitlines()
    assert lines[1] == "epsilon,mean_energy,P0,F,ensemble_ref"
    small, large = lines[2].split(","), lines[3].split(",")
    assert float(small[3]) >= float(large[3])  # F falls with epsilon
    assert float(small[2]) <= float(large[2])  # P0 rises with epsilon


def test_error_scan(runner, tmp_path):
    cfg = write_config(tmp_path, {
        "model": {"dimension": 1, "extents": [2]},
        "error_scan": {"sizes": [2, 3], "depths": [5], "R": 5,
                       "compare_R": [1, 5], "compare_N": 3,
                       "compare_seeds": 2},
        "output": {"path": str(tmp_path / "err.csv")},
    })
    result = runner.invoke(main, ["error-scan", cfg])
    assert result.exit_code == 0, result.output
    lines = (tmp_path / "err.csv").read_text().splitlines()
    assert any(line.startswith("# trend_d5_slope=") for line in lines)
    data = [line.split(",") for line in lines if not line.startswith("#")][1:]
    assert sum(r[0] == "dsq" for r in data) == 2
    assert sum(r[0] == "rcomp" for r in data) == 2


def test_resources(runner, tmp_path):
    cfg = write_config(tmp_path, {
        "model": {"dimension": 1, "extents": [2]},
        "resources": {"sizes": [2], "backends": ["fable", "dilated"],
                      "beta": 0.5},
        "output": {"path": str(tmp_path / "res.csv")},
    })
    result = runner.invoke(main, ["resources", cfg])
    assert result.exit_code == 0, result.output
    lines = (tmp_path / "res.csv").read_text().splitlines()
    data = [line.split(",") for line in lines if not line.startswith("#")][1:]
    by_kind = {r[0]: r for r in data}
    assert by_kind["fable"][2] == "16" and by_kind["fable"][3] == "3"
    assert by_kind["dilated"][2] == "36" and by_kind["dilated"][3] == "1"


def test_resources_unknown_backend(runner, tmp_path):
    cfg = write_config(tmp_path, {
        "model": {"dimension": 1, "extents": [2]},
        "resources": {"sizes": [2], "backends": ["mystery"]},
        "output": {"path": str(tmp_path / "res.csv")},
    })
    result = runner.invoke(main, ["resources", cfg])
    assert result.exit_code == 1


def test_config_hash_is_key_order_independent(tmp_path):
    a = {"model": {"extents": [2], "dimension": 1}}
    b = {"model": {"dimension": 1, "extents": [2]}}
    assert config_hash(a) == config_hash(b)


def test_load_config_rejects_non_object(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("[1, 2]")
    with pytest.raises(ConfigError):
        load_config(str(path))
