import filecmp
import json

import pytest

import weilchar.pairing
import weilchar.quadforms
from weilchar import cli


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_stringify_round_trip():
    payload = {"n": 2 ** 80, "neg": -7, "ok": True, "bad": False,
               "txt": "chi_3", "nest": [{"k": [1, "2", -3]}, None, 0.5]}
    blob = cli._stringify(payload)
    assert blob["n"] == str(2 ** 80) and blob["neg"] == "-7"
    assert blob["ok"] is True and blob["bad"] is False
    assert blob["nest"][0]["k"] == ["1", "2", "-3"]
    back = cli._destring(json.loads(json.dumps(blob)))
    assert back["n"] == 2 ** 80 and back["neg"] == -7
    assert back["ok"] is True and back["txt"] == "chi_3"
    assert back["nest"][0]["k"] == [1, 2, -3] and back["nest"][2] == 0.5


def test_selftest_passes(capsys):
    code, out, _ = run(capsys, ["selftest"])
    assert code == 0
    assert "7/7 passed" in out


def test_selftest_flags_pairing_drift(capsys, monkeypatch):
    # swapping the pairing arguments preserves bilinearity and alternation
    # but not the frozen convention values
    orig = weilchar.pairing.weil_pairing

    def swapped(E, P, Q, m, rng=None):
        return orig(E, Q, P, m, rng)

    monkeypatch.setattr(weilchar.pairing, "weil_pairing", swapped)
    code, out, _ = run(capsys, ["selftest"])
    assert code == 1
    line = next(l for l in out.splitlines() if "failing:" in l)
    assert "pairing convention" in line
    assert "pairing properties" not in line


def test_selftest_flags_character_drift(capsys, monkeypatch):
    orig = weilchar.quadforms.char_eval_norm

    def flipped(ch, n):
        v = orig(ch, n)
        return -v if ch.kind == "chi" else v

    monkeypatch.setattr(weilchar.quadforms, "char_eval_norm", flipped)
    code, out, _ = run(capsys, ["selftest"])
    assert code == 1
    line = next(l for l in out.splitlines() if "failing:" in l)
    assert "character tables" in line
    assert "oracle equivalence" in line


def test_selftest_clean_after_restore(capsys):
    code, out, _ = run(capsys, ["selftest"])
    assert code == 0 and "7/7 passed" in out


@pytest.fixture()
def pair24(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(
        {"mode": "ordinary", "q": 7, "t": 2, "plant": True}))
    out = tmp_path / "pair24.json"
    code, _, _ = run(capsys, ["gen-instance", "--config", str(cfg),
                              "--seed", "3", "--out", str(out)])
    assert code == 0
    return out


def test_gen_instance_byte_identical(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(
        {"mode": "ordinary", "q": 23, "t": 6, "plant": True}))
    a, b, c = (tmp_path / n for n in ("a.json", "b.json", "c.json"))
    for path, seed in ((a, "1"), (b, "1"), (c, "2")):
        code, out, _ = run(capsys, ["gen-instance", "--config", str(cfg),
                                    "--seed", seed, "--out", str(path)])
        assert code == 0 and "wrote pair" in out
    assert filecmp.cmp(a, b, shallow=False)
    assert not filecmp.cmp(a, c, shallow=False)


def test_gen_instance_inventory(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"mode": "supersingular", "p": 101}))
    code, out, _ = run(capsys, ["gen-instance", "--config", str(cfg)])
    assert code == 0
    payload = cli._destring(json.loads(out))
    assert payload["schema"] == "weilchar/instance/v1"
    assert payload["instance"]["D"] == 404
    assert payload["characters"]["assigned"] == ["chi_101", "delta"]
    assert payload["characters"]["usable"] == ["delta"]
    assert payload["class_number"] == 14


def test_gen_instance_rejects_bad_params(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"mode": "supersingular", "p": 103}))
    code, _, err = run(capsys, ["gen-instance", "--config", str(cfg)])
    assert code == 2 and "infeasible" in err
    cfg.write_text(json.dumps({"mode": "montgomery", "p": 101}))
    code, _, err = run(capsys, ["gen-instance", "--config", str(cfg)])
    assert code == 2 and "unknown mode" in err


def test_eval_char_identity_pair(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"mode": "ordinary", "q": 7, "t": 2}))
    inst = tmp_path / "inst.json"
    code, _, _ = run(capsys, ["gen-instance", "--config", str(cfg),
                              "--out", str(inst)])
    assert code == 0
    code, out, _ = run(capsys, ["eval-char", str(inst)])
    assert code == 0
    assert "identity pair" in out
    assert out.count("+1") == 2  # chi_3 and epsilon both evaluate to +1


def test_eval_char_planted_pair(pair24, tmp_path, capsys):
    res = tmp_path / "eval.json"
    code, out, _ = run(capsys, ["eval-char", str(pair24), "--out", str(res)])
    assert code == 0
    assert out.count("oracle ok") == 2
    written = cli._destring(json.loads(res.read_text()))
    assert written["schema"] == "weilchar/eval/v1"
    assert set(written["oracle_match"].values()) == {True}
    assert "timings_ms" not in json.dumps(written)


def test_eval_char_rejects_bad_moduli(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"mode": "supersingular", "p": 13}))
    inst = tmp_path / "inst13.json"
    code, _, _ = run(capsys, ["gen-instance", "--config", str(cfg),
                              "--out", str(inst)])
    assert code == 0
    # the modulus of chi_13 collides with the characteristic
    code, _, err = run(capsys, ["eval-char", str(inst), "--chars", "chi_13"])
    assert code == 3 and "characteristic" in err
    code, _, err = run(capsys, ["eval-char", str(inst), "--chars", "chi_5"])
    assert code == 2 and "not assigned" in err
    code, _, err = run(capsys, ["eval-char", str(inst), "--chars", "zeta_3"])
    assert code == 2 and "unknown character label" in err


def _write_instance_config(tmp_path, capsys, gen_cfg, **extra):
    inst = tmp_path / "inst.json"
    cfg = tmp_path / "gen.json"
    cfg.write_text(json.dumps(gen_cfg))
    code, _, _ = run(capsys, ["gen-instance", "--config", str(cfg),
                              "--out", str(inst)])
    assert code == 0
    ddh_cfg = tmp_path / "ddh.json"
    ddh_cfg.write_text(json.dumps({"instance": str(inst), **extra}))
    return ddh_cfg


def test_ddh_trivial_group_refused(tmp_path, capsys):
    cfg = _write_instance_config(tmp_path, capsys,
                                 {"mode": "ordinary", "q": 7, "t": 4})
    code, _, err = run(capsys, ["ddh-experiment", "--config", str(cfg)])
    assert code == 2 and "trivial" in err


def test_ddh_unusable_char_refused(tmp_path, capsys):
    cfg = _write_instance_config(tmp_path, capsys,
                                 {"mode": "ordinary", "q": 13, "t": 2})
    code, _, err = run(capsys, ["ddh-experiment", "--config", str(cfg),
                                "--chars", "chi_3", "--trials", "4"])
    assert code == 2 and "unusable" in err


def test_ddh_table_output(tmp_path, capsys):
    cfg = _write_instance_config(tmp_path, capsys,
                                 {"mode": "supersingular", "p": 13},
                                 trials=8, seed=4)
    code, out, _ = run(capsys, ["ddh-experiment", "--config", str(cfg)])
    assert code == 0
    assert "advantage" in out and "false negatives 0" in out


def test_ddh_json_squares_only(tmp_path, capsys):
    cfg = _write_instance_config(tmp_path, capsys,
                                 {"mode": "supersingular", "p": 13},
                                 trials=8, seed=4)
    code, out, _ = run(capsys, ["ddh-experiment", "--config", str(cfg),
                                "--squares-only", "--json"])
    assert code == 0
    report = cli._destring(json.loads(out))
    assert report["schema"] == "weilchar/ddh-report/v1"
    assert report["advantage"] == 0.0
    assert report["ci_advantage"][0] <= 0.0 <= report["ci_advantage"][1]


def test_sqrt_recover_planted_pair(pair24, tmp_path, capsys):
    res = tmp_path / "rec.json"
    code, out, _ = run(capsys, ["sqrt-recover", str(pair24),
                                "--out", str(res)])
    assert code == 0
    assert "matches the planted class" in out
    written = cli._destring(json.loads(res.read_text()))
    assert written["schema"] == "weilchar/recovery/v1"
    assert "timings_ms" not in json.dumps(written)


def test_sqrt_recover_rejects_nonsquare(pair24, capsys):
    # (2, 0, 3) is the nonprincipal class of D = 24, not a square
    code, _, err = run(capsys, ["sqrt-recover", str(pair24),
                                "--square", "2,0,3"])
    assert code == 2 and "square" in err


def test_sqrt_recover_rejects_wrong_disc(pair24, capsys):
    code, _, err = run(capsys, ["sqrt-recover", str(pair24),
                                "--square", "1,0,1"])
    assert code == 2 and "discriminant" in err
