import json

import pytest

from muharmonic import ConfigError, ExperimentConfig, catalog, catalog_entry, parse_word, run
from muharmonic.cli import main as cli_main
from muharmonic.experiments import _measure_from_spec
from muharmonic import generated_subgroup


def test_catalog_contents():
    entries = {e.name: e for e in catalog()}
    assert len(entries) == 7
    z6 = entries["Z6_delta2"]
    assert generated_subgroup(z6.group, z6.measure.support()).order == 3
    assert any(not e.group.is_abelian() for e in catalog())
    for e in catalog():
        assert e.measure.is_probability()


def test_catalog_has_s4_on_two_generators():
    e = catalog_entry("S4_two_gens")
    assert e.group.order == 24
    assert len(e.measure.support()) == 2
    assert generated_subgroup(e.group, e.measure.support()).order == 24


def test_parse_word():
    assert parse_word(2, "a").letters == (1,)
    assert parse_word(2, "ab'").letters == (1, -2)
    assert parse_word(2, "aa'") .letters == ()
    with pytest.raises(ConfigError):
        parse_word(2, "c")


def test_config_validation():
    with pytest.raises(ConfigError, match="scenario"):
        ExperimentConfig.from_dict({"scenario": "nope"})
    with pytest.raises(ConfigError, match="paths"):
        ExperimentConfig.from_dict({"scenario": "freewalk", "paths": -3})
    with pytest.raises(ConfigError, match="measure"):
        ExperimentConfig.from_dict(
            {"scenario": "harmonic", "group": {"kind": "cyclic", "n": 6}}
        ).resolve_pairs()
    cfg = ExperimentConfig.from_dict({"scenario": "harmonic", "entry": "Z6_delta2", "seed": 5})
    assert cfg.seed == 5 and cfg.entry == "Z6_delta2"


def test_measure_spec_forms():
    z6 = catalog_entry("Z6_delta2").group
    assert _measure_from_spec(z6, {"point": 2}).support() == [2]
    assert _measure_from_spec(z6, {"uniform_on": [1, 3]}).is_probability()
    m = _measure_from_spec(z6, {"entries": [[0, 0.5], [1, 0.25, 0.1]]})
    assert m.weights[1] == complex(0.25, 0.1)
    with pytest.raises(ConfigError):
        _measure_from_spec(z6, {"weird": 1})


def test_run_harmonic_scenario_custom_pair():
    cfg = ExperimentConfig.from_dict({
        "scenario": "harmonic",
        "group": {"kind": "cyclic", "n": 6},
        "measure": {"point": 2},
    })
    record = run(cfg)
    assert record.passed
    assert record.extra["custom"]["harmonic_rank"] == 2


def test_run_record_determinism(tmp_path):
    cfg = ExperimentConfig(scenario="freewalk", paths=2000, n=50, seed=123,
                           out=str(tmp_path))
    r1 = run(cfg)
    r2 = run(cfg)
    assert r1.canonical_json() == r2.canonical_json()
    on_disk = json.loads((tmp_path / "record_freewalk.json").read_text())
    assert on_disk["verdict"] == "pass"
    assert "started" in on_disk


def test_parallel_matches_serial():
    serial = run(ExperimentConfig(scenario="ncconv", trials=5, seed=9))
    fanned = run(ExperimentConfig(scenario="ncconv", trials=5, seed=9, parallel=True))

    def results(record):
        body = record.payload()
        del body["config"]  # the echoed parallel flag differs by design
        return json.dumps(body, sort_keys=True)

    assert results(serial) == results(fanned)


def test_decay_scenario_writes_csv(tmp_path):
    cfg = ExperimentConfig(scenario="decay", n=50, out=str(tmp_path))
    record = run(cfg)
    assert record.passed
    lines = (tmp_path / "decay_srw.csv").read_text().strip().splitlines()
    assert lines[0] == "n,value"
    assert len(lines) == 51


def test_cli_pass_and_exit_codes(tmp_path, capsys):
    assert cli_main(["harmonic", "--entry", "Z6_delta2"]) == 0
    out = capsys.readouterr().out
    assert "scenario harmonic: pass" in out

    # horizon too short for the prefix to stabilize: checks fail, exit 1
    assert cli_main(["freewalk", "--paths", "500", "--n", "5"]) == 1

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"paths": -1}))
    assert cli_main(["freewalk", "--config", str(bad)]) == 2

    over = tmp_path / "over.json"
    over.write_text(json.dumps({"group": {"kind": "cyclic", "n": 200},
                                "measure": {"point": 1}}))
    assert cli_main(["harmonic", "--config", str(over)]) == 3  # order cap

    capsys.readouterr()


def test_cli_capacity_exit_code(tmp_path):
    cfg = tmp_path / "conj.json"
    cfg.write_text(json.dumps({
        "group": {"kind": "cyclic", "n": 60},
        "measure": {"point": 1},
    }))
    # order 60 passes construction but exceeds the conjugation cap inside ncconv
    assert cli_main(["ncconv", "--config", str(cfg), "--trials", "1"]) == 3


def test_out_directory_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("MUHARMONIC_OUT", str(tmp_path / "envout"))
    run(ExperimentConfig(scenario="decay", n=10))
    assert (tmp_path / "envout" / "record_decay.json").exists()


def test_run_rejects_unknown_scenario():
    cfg = ExperimentConfig(scenario="harmonic")
    cfg.scenario = "bogus"
    with pytest.raises(ConfigError):
        run(cfg)
