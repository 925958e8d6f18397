"""The command line: exit codes, output bytes, the fuzz reproducer."""

import json

import pytest

import hfk.grid as grid_mod
from conftest import corpus_path
from hfk.cli import main, run_fuzz


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_ok(capsys):
    code, out, err = run(capsys, "validate",
                         corpus_path("essential_circle.hd.json"))
    assert code == 0
    assert "status: ok" in out
    assert err == ""


def test_validate_grid(capsys):
    code, out, _ = run(capsys, "validate", corpus_path("trefoil.grid"))
    assert code == 0 and "status: ok" in out


def test_validate_malformed_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.hd.json"
    bad.write_text("{broken")
    code, out, err = run(capsys, "validate", str(bad))
    assert code == 2
    assert "error:" in err and out == ""


def test_missing_file_exits_3(capsys):
    code, _, err = run(capsys, "validate", corpus_path("nope.hd.json"))
    assert code == 3
    assert "error:" in err


def test_unknown_extension_exits_2(capsys, tmp_path):
    stray = tmp_path / "diagram.txt"
    stray.write_text("")
    code, _, err = run(capsys, "homology", str(stray))
    assert code == 2
    assert "extension" in err


def test_homology_total(capsys):
    code, out, _ = run(capsys, "homology", corpus_path("lens_e4.hd.json"),
                       "--total")
    assert code == 0
    assert out == "4\n"


def test_homology_grid_table_bytes(capsys):
    code, out, _ = run(capsys, "homology", corpus_path("trefoil.grid"),
                       "--format", "csv")
    assert code == 0
    assert out == "a,m,rank\n-1,-2,1\n0,-1,1\n1,0,1\n"


def test_homology_grid_json(capsys):
    code, out, _ = run(capsys, "homology", corpus_path("trefoil.grid"),
                       "--format", "json")
    assert code == 0
    assert json.loads(out) == {
        "entries": [{"a": -1, "m": -2, "rank": 1},
                    {"a": 0, "m": -1, "rank": 1},
                    {"a": 1, "m": 0, "rank": 1}],
        "grand_total": 3}


def test_output_bytes_are_stable(capsys):
    args = ("homology", corpus_path("lens_e5.hd.json"), "--format", "json")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_budget_flag_exits_4(capsys):
    code, _, err = run(capsys, "homology", corpus_path("lens_e4.hd.json"),
                       "--budget", "2")
    assert code == 4
    assert "budget" in err


def test_budget_env_exits_4(capsys, monkeypatch):
    monkeypatch.setenv("HFK_BUDGET", "2")
    code, _, _ = run(capsys, "homology", corpus_path("lens_e4.hd.json"))
    assert code == 4


def test_symmetry_evenness(capsys):
    code, out, _ = run(capsys, "symmetry", corpus_path("lens_e4.hd.json"),
                       "--check", "evenness")
    assert code == 0
    assert "status: pass" in out
    code, out, _ = run(capsys, "symmetry", corpus_path("lens_e3.hd.json"),
                       "--check", "evenness")
    assert code == 0
    assert "status: inapplicable" in out


def test_symmetry_point_swap(capsys):
    code, out, _ = run(capsys, "symmetry",
                       corpus_path("essential_circle.hd.json"),
                       "--check", "point-swap", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["status"] == "pass"
    assert report["label_shift"] == [0, -1]
    assert report["notes"] == ["differential compared: equal"]


def test_symmetry_knot_conjugation(capsys):
    code, out, _ = run(capsys, "symmetry", corpus_path("lens_e4.hd.json"),
                       "--check", "knot-conjugation", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["status"] == "pass" and report["fixed"] == []


def test_symmetry_needs_a_diagram(capsys):
    code, _, err = run(capsys, "symmetry", corpus_path("trefoil.grid"),
                       "--check", "evenness")
    assert code == 2
    assert "diagram" in err


def test_chern_subcommand(capsys):
    code, out, _ = run(capsys, "chern", corpus_path("genus2_tube.hd.json"),
                       "--domain", "P", "--generator", "u1,v1")
    assert code == 0
    assert "value: 0" in out


def test_chern_unknown_domain_exits_2(capsys):
    code, _, err = run(capsys, "chern", corpus_path("genus2_tube.hd.json"),
                       "--domain", "Q", "--generator", "u1,v1")
    assert code == 2
    assert "have: P" in err


def test_triangle_accepts_totals_and_paths(capsys):
    code, out, _ = run(capsys, "triangle", "0",
                       corpus_path("lens_e3.hd.json"),
                       corpus_path("lens_e3.hd.json"))
    assert code == 0
    assert "status: consistent" in out and "totals: [0, 3, 3]" in out


def test_triangle_reports_findings_with_exit_0(capsys):
    code, out, _ = run(capsys, "triangle", "9", "2", "3")
    assert code == 0
    assert "status: inconsistent" in out and "rank-gap" in out


def test_fuzz_passes(capsys):
    code, out, _ = run(capsys, "fuzz", "--kind", "grids", "--count", "25",
                       "--seed", "7")
    assert code == 0
    assert "status: pass" in out


def test_fuzz_count_zero_is_vacuous(capsys):
    code, out, _ = run(capsys, "fuzz", "--kind", "slopes", "--count", "0")
    assert code == 0
    assert "cases: 0" in out


def test_fuzz_jobs_never_change_output(capsys):
    _, one, _ = run(capsys, "fuzz", "--kind", "slopes", "--count", "12",
                    "--seed", "5", "--format", "json")
    _, four, _ = run(capsys, "fuzz", "--kind", "slopes", "--count", "12",
                     "--seed", "5", "--jobs", "4", "--format", "json")
    assert one == four


def _drop_one_arrow(real):
    def broken(g, gens=None):
        out = real(g, gens)
        for k in sorted(out):
            if out[k]:
                out[k] = out[k][1:]
                break
        return out
    return broken


def test_fuzz_emits_reproducer_on_injected_mutation(capsys, monkeypatch):
    monkeypatch.setattr(grid_mod, "tilde_differential",
                        _drop_one_arrow(grid_mod.tilde_differential))
    code, out, _ = run(capsys, "fuzz", "--kind", "grids", "--count", "10",
                       "--seed", "3", "--format", "json")
    assert code == 5
    report = json.loads(out)
    assert report["status"] == "fail"
    rep = report["reproducer"]
    assert rep["problems"]
    assert len(rep["case"]["o"]) <= max(
        len(w["case"]["o"]) for w in report["witnesses"])


def test_run_fuzz_rejects_unknown_kind():
    with pytest.raises(Exception, match="unknown fuzz kind"):
        run_fuzz("planets", count=1)
