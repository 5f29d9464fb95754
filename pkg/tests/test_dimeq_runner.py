import json
import logging
from unittest.mock import patch

import pytest

from dimeq import dimeq_runner


def test_orbit_dim_json(cli):
    assert cli("orbit-dim", "Sp(4)", "2^2", "--format", "json") == (0, '{"dim":6,"gk":3,"odd_parts":0}')


def test_orbit_dim_table(cli):
    code, out = cli("orbit-dim", "Sp(16)", "5^2 3^2")
    assert code == 0
    assert "dim 106" in out and "gk 53" in out


def test_orbit_dim_with_bindings(cli_json):
    assert cli_json("orbit-dim", "Sp(12)", "{2n}^2 {n}^2", "--bind", "n=2") == (0, {"dim": 58, "gk": 29, "odd_parts": 0})


def test_invalid_orbit_exits_2(cli, capsys):
    assert cli("orbit-dim", "Sp(4)", "3 1") == (2, "")
    assert capsys.readouterr().err.startswith("dimeq: error: ")


@pytest.mark.parametrize(
    "argv",
    [
        (),
        ("orbit-dim", "Sp(4)"),
        ("orbit-dim", "Sp(4)", "2^2", "--bind", "n=x"),
        ("orbit-dim", "Sp(4)", "2^2", "--workers", "0"),
        ("orbit-dim", "Sp(4)", "2^2", "--log-level", "chatty"),
        ("orbit-dim", "Sp(3)", "2 1"),
        ("orbit-dim", "Q(4)", "2^2"),
        ("orbit-dim", "Sp(4)", "2^"),
        ("search", "--gk", "3"),
        ("search", "--dim6", "m=1,k=3"),
        ("search", "--dim6", "m=1,k=3,r=2", "--group", "Sp(12)"),
        ("predict-theta", "--n", "2"),
        ("lemma71", "--m", "1"),
        ("cfgk", "--n", "1"),
        ("catalog", "--id", "nope"),
        ("catalog", "--range", "3-4"),
        ("levi-dim", "Sp(4)", "1"),
        ("eisenstein-dim", "Sp(4)", "2"),
    ],
)
def test_usage_and_domain_errors_exit_2(cli, argv):
    code, out = cli(*argv)
    assert code == 2
    assert out == ""


def test_filtration(cli):
    code, out = cli("filtration", "Sp(4)", "2^2", "--by-roots", "--format", "json")
    assert code == 0
    assert out == '{"weights":[1,1],"dim_n1":3,"dim_n2":3,"histogram":{"0":1,"2":3}}'
    code, out = cli("filtration", "SO(7)", "3 1^4")
    assert code == 0 and "dim N1" in out


def test_filtration_cross_check_mismatch(cli):
    with patch.object(dimeq_runner, "root_weights", return_value={0: 99}):
        code, _ = cli("filtration", "Sp(4)", "2^2", "--by-roots")
    assert code == 1


def test_orbit_list(cli_json):
    code, rows = cli_json("orbit-list", "Sp(4)")
    assert code == 0
    assert rows == [
        {"partition": "4", "dim": 8, "gk": 4},
        {"partition": "2^2", "dim": 6, "gk": 3},
        {"partition": "2 1^2", "dim": 4, "gk": 2},
        {"partition": "1^4", "dim": 0, "gk": 0},
    ]
    assert [r["partition"] for r in cli_json("orbit-list", "Sp(4)", "--max-gk", "2")[1]] == ["2 1^2", "1^4"]


def test_orbit_list_table(cli):
    code, out = cli("orbit-list", "GL(3)")
    assert code == 0
    assert out.splitlines()[0].split() == ["partition", "dim", "gk"]
    assert len(out.splitlines()) == 4


def test_levi_and_eisenstein_dims(cli_json):
    assert cli_json("levi-dim", "GL(4)", "1,1,2") == (0, {"radical_dim": 5})
    assert cli_json("levi-dim", "Sp(4)", "1", "--classical-factor") == (0, {"radical_dim": 3})
    code, payload = cli_json("eisenstein-dim", "Sp(8)", "4", "--inducing-gk", "4")
    assert code == 0
    assert payload == {"kind": "eisenstein", "args": {"inducing_dim": 4, "radical_dim": 10}, "value": 14}


RS_SPEC = {
    "name": "classical-rs",
    "mode": "classical",
    "lhs_groups": ["PGL(2)"],
    "rhs_functionals": [
        {"kind": "gk_of_orbit", "args": {"group": "GL(2)", "partition": "2"}},
        {"kind": "gk_of_orbit", "args": {"group": "GL(2)", "partition": "2"}},
        {"kind": "eisenstein", "args": {"group": "GL(2)", "blocks": "1,1"}},
    ],
}


def test_check_spec(cli, spec_file):
    code, out = cli("check", "--spec", spec_file(RS_SPEC), "--format", "json")
    assert code == 0
    assert out == '{"name":"classical-rs","lhs":3,"rhs":3,"deficit":0,"balanced":true}'


def test_check_spec_expectation(cli, spec_file):
    assert cli("check", "--spec", spec_file({**RS_SPEC, "expected_balanced": False}))[0] == 1
    assert cli("check", "--spec", spec_file({**RS_SPEC, "expected_balanced": True}))[0] == 0


def test_check_spec_errors(cli, spec_file, tmp_path):
    extended_only = {**RS_SPEC, "rhs_functionals": [{"kind": "explicit_period", "args": {"reductive_dim": 3, "unipotent_dim": 4}}]}
    assert cli("check", "--spec", spec_file(extended_only))[0] == 2
    assert cli("check", "--spec", spec_file("{not json"))[0] == 2
    assert cli("check", "--spec", str(tmp_path / "missing.json"))[0] == 2
    assert cli("check", "--spec", spec_file({**RS_SPEC, "mode": "sideways"}))[0] == 2


def test_search_dim6(cli):
    code, out = cli("search", "--dim6", "m=1,k=3,r=2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("Sp(16): gk 56")
    assert {"6 5^2", "8 3^2 2", "6^2 2^2", "8 4 2 1^2"} <= set(lines[1:])


def test_search_dim6_heuristic(cli_json):
    code, payload = cli_json("search", "--dim6", "m=1,k=3,r=2", "--even-mult", "--even-parts", "--minimal-p")
    assert code == 0
    assert payload["solutions"] == ["6^2 2^2"]
    assert payload["target_gk"] == 56


def test_search_target_gk(cli_json):
    code, payload = cli_json("search", "--group", "GL(3)", "--gk", "2")
    assert code == 0
    assert payload == {"group": "GL(3)", "target_gk": 2, "solutions": ["2 1"], "total_candidates": 3}


def test_catalog_single_entry(cli_json):
    assert cli_json("catalog", "--id", "hecke") == (
        0,
        [{"id": "hecke", "params": {}, "lhs": 1, "rhs": 1, "balanced": True, "expected": True}],
    )


@pytest.mark.sweep
def test_catalog_all_exits_0(cli):
    code, out = cli("catalog", "--all", "--workers", "4")
    assert code == 0
    assert out.splitlines()[-1].endswith("0 mismatches")


def test_catalog_mismatch_exits_1(cli):
    from dimeq.catalog import ENTRIES

    flipped = tuple(e.model_copy(update={"expected_balanced": False}) if e.id == "hecke" else e for e in ENTRIES)
    with patch("dimeq.catalog.ENTRIES", flipped):
        code, out = cli("catalog", "--id", "hecke")
    assert code == 1
    assert "MISMATCH" in out


def test_catalog_list(cli, cli_json):
    code, out = cli("catalog", "list")
    assert code == 0
    assert "wo-model" in out and "godement-jacquet" in out
    code, payload = cli_json("catalog", "list", "--id", "bf-*")
    assert [e["id"] for e in payload["entries"]] == ["bf-even", "bf-odd"]
    assert payload["entries"][0]["parameters"] == ["k"]


def test_catalog_export(cli):
    code, out = cli("catalog", "export", "--id", "jpss-equal", "--range", "2..3")
    assert code == 0
    rows = json.loads(out)
    assert [r["params"] for r in rows] == [{"n": 2}, {"n": 3}]
    assert list(rows[0]) == ["id", "params", "lhs", "rhs", "balanced", "expected"]


def test_predict_theta(cli_json):
    assert cli_json("predict-theta", "--n", "2", "--k", "3") == (
        0,
        {
            "n": 2, "k": 3, "sigma_gk": 6, "vanishing_predicted": False, "generic_compatible": True,
            "dim_group": 10, "dim_pi": 4, "dim_theta": 12,
        },
    )
    code, rows = cli_json("predict-theta", "--n", "3", "--sweep", "4")
    assert [r["sigma_gk"] for r in rows] == [-6, 0, 6, 12]


def test_predict_theta_consistency_sweep(cli_json):
    code, summary = cli_json("predict-theta", "--sweep", "12")
    assert code == 0
    assert summary == {"name": "predict-theta", "points": 144, "passed": 144, "failures": []}


def test_orbit_shift_command(cli, cli_json):
    assert cli("lemma71", "--m", "1", "--k", "3", "--r", "2", "--format", "json") == (
        0,
        '{"name":"lemma71 m=1 k=3 r=2","lhs":56,"rhs":56,"deficit":0,"balanced":true}',
    )
    code, summary = cli_json("lemma71", "--sweep", "4")
    assert code == 0
    assert (summary["points"], summary["passed"]) == (48, 48)
    code, report = cli_json("lemma71", "--m", "2", "--k", "1", "--r", "2")
    assert code == 0
    assert (report["lhs"], report["rhs"], report["balanced"]) == (52, 52, True)


def test_cfgk(cli):
    code, out = cli("cfgk", "--n", "1", "--k", "2")
    assert code == 0
    assert out == "cfgk n=1 k=2: 17 vs 17, balanced"
    code, out = cli("cfgk", "--sweep", "3")
    assert code == 0 and out.startswith("cfgk: 9/9")


def test_verbose_flags_configure_logging(cli):
    cli("orbit-dim", "Sp(4)", "2^2", "-vv")
    assert logging.getLogger().level == logging.DEBUG
    cli("orbit-dim", "Sp(4)", "2^2", "-v", "--log-level", "error")
    assert logging.getLogger().level == logging.ERROR


def test_main_prints_and_exits(capsys):
    with pytest.raises(SystemExit) as exc:
        dimeq_runner.main(["orbit-dim", "Sp(4)", "4", "--format", "json"])
    assert exc.value.code == 0
    assert capsys.readouterr().out == '{"dim":8,"gk":4,"odd_parts":0}\n'


def test_version(capsys):
    assert dimeq_runner.run(["--version"])[0] == 0
    assert capsys.readouterr().out.startswith("dimeq ")
