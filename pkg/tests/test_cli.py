"""CLI layer: subcommands, exit codes, report envelopes, determinism."""

import json
import subprocess
import sys

import pytest

from bfsyz import __version__
from bfsyz.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    return code, json.loads(out)


# ---------------------------------------------------------------------------
# exit codes


def test_fh_rank_bijective_slice_verifies(capsys):
    code, rep = run_json(capsys, "fh-rank", "--a", "2", "--b", "2", "--k", "2")
    assert code == 0
    assert rep["status"] == "verified"
    assert rep["report"]["rank"] == 15
    assert rep["bijective"] is True
    assert rep["version"] == __version__


def test_fh_rank_rejects_zero_a():
    with pytest.raises(SystemExit) as err:
        main(["fh-rank", "--a", "0", "--b", "2", "--k", "1"])
    assert err.value.code == 3


def test_unknown_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as err:
        main(["no-such-command"])
    assert err.value.code == 3


def test_iab_pow_requires_power(capsys):
    code = main(["betti", "--target", "iab-pow", "--a", "2", "--b", "2"])
    capsys.readouterr()
    assert code == 3


def test_installed_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "bfsyz.cli", "hw-triple"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    rep = json.loads(proc.stdout)
    assert rep["report"]["triple"] == ["1", "-1/3", "4/3"]
    assert rep["report"]["differs"] is True


# ---------------------------------------------------------------------------
# betti


def test_betti_power_locus_2_2(capsys):
    code, rep = run_json(capsys, "betti", "--target", "ix", "--a", "2", "--b", "2")
    assert code == 0
    assert rep["status"] == "verified"
    values = {(e["i"], e["j"]): e["value"] for e in rep["table"]["entries"] if e["value"]}
    assert values == {(0, 3): 7, (1, 4): 10, (2, 5): 5, (3, 6): 1}
    assert rep["verification"]["ok"] is True


def test_betti_text_render_has_strand_row(capsys):
    code, out = run_cli(
        capsys, "betti", "--target", "ix", "--a", "2", "--b", "2", "--format", "text"
    )
    assert code == 0
    strand_rows = [ln for ln in out.splitlines() if ln.strip().startswith("3 ")]
    assert strand_rows and strand_rows[0].split() == ["3", "7", "10", "5", "1", ".", "."]
    assert "closed-form comparison: ok" in out


def test_betti_cubic_reference(capsys):
    code, rep = run_json(capsys, "betti", "--target", "iab", "--a", "2", "--b", "3")
    assert code == 0
    assert rep["status"] == "verified"
    assert all(row["match"] for row in rep["reference"]["entries"])


def test_betti_power_two_strands(capsys):
    code, rep = run_json(
        capsys, "betti", "--target", "iab-pow", "--a", "2", "--b", "2", "--j", "1"
    )
    assert code == 0
    assert rep["status"] == "verified"
    values = {(e["i"], e["j"]): e["value"] for e in rep["table"]["entries"] if e["value"]}
    assert values == {(0, 2): 5, (1, 3): 5, (2, 5): 1}


def test_betti_unreferenced_power_reports_computed(capsys):
    code, rep = run_json(
        capsys, "betti", "--target", "iab-pow", "--a", "1", "--b", "2", "--j", "3"
    )
    assert code == 0
    assert rep["status"] == "computed"
    assert rep["reference"] is None


# ---------------------------------------------------------------------------
# regularity, initial ideal, scan


def test_reg_both_routes_agree(capsys):
    code, rep = run_json(capsys, "reg", "--a", "2", "--b", "2")
    assert code == 0
    assert rep["formula"] == 3
    assert [r["value"] for r in rep["routes"]] == [3, 3]


def test_initial_ideal_generator_count_and_agreement(capsys):
    code, rep = run_json(capsys, "initial-ideal", "--a", "2", "--b", "2")
    assert code == 0
    assert rep["generator_count"] == 5
    assert rep["agree"] is True
    assert rep["hf_initial_quotient"] == rep["hf_power_quotient"]


def test_conjecture_scan_is_labeled_evidence(capsys):
    code, rep = run_json(capsys, "conjecture-scan", "--a", "2", "--b", "2", "--jmax", "2")
    assert code == 0
    assert rep["label"] == "evidence"
    assert [e["status"] for e in rep["entries"]] == ["matches", "matches"]
    assert [e["computed"] for e in rep["entries"]] == [3, 4]


# ---------------------------------------------------------------------------
# the remaining verifications


def test_minors_check_verifies(capsys):
    code, rep = run_json(capsys, "minors-check", "--a", "2", "--b", "2")
    assert code == 0
    assert rep["report"]["span_dim"] == 7


def test_phi_reports_syzygy_and_skew(capsys):
    code, rep = run_json(capsys, "phi", "--a", "2", "--b", "2")
    assert code == 0
    assert rep["shape"] == [5, 5]
    assert rep["syzygy_ok"] is True
    assert rep["skew_normalizable"] is True


def test_char_check_counts(capsys):
    code, rep = run_json(capsys, "char-check", "--a-max", "3", "--b-max", "3")
    assert code == 0
    assert rep["checked"] == 18
    assert rep["failures"] == []


def test_coker_hf_values(capsys):
    code, rep = run_json(capsys, "coker-hf", "--a", "2", "--b", "2", "--kmax", "3")
    assert code == 0
    assert rep["values"] == [0, 1, 0, 0]
    assert rep["vanishes_from_b_on"] is True


def test_exactness_certificate(capsys):
    code, rep = run_json(capsys, "exactness", "--a", "2", "--b", "2")
    assert code == 0
    assert rep["status"] == "verified"
    assert [s["rank"] for s in rep["shape"]] == [5, 5, 1]
    assert rep["certificate"]["resolves"] is True


def test_repro_single_criterion(capsys):
    code, rep = run_json(capsys, "repro", "--only", "2")
    assert code == 0
    assert rep["overall"] == "verified"
    assert rep["criteria"][0]["status"] == "pass"


# ---------------------------------------------------------------------------
# report discipline


def test_reports_are_byte_identical_across_runs(capsys):
    _, first = run_cli(capsys, "betti", "--target", "ix", "--a", "2", "--b", "2",
                       "--mode", "modular")
    _, second = run_cli(capsys, "betti", "--target", "ix", "--a", "2", "--b", "2",
                        "--mode", "modular")
    assert first == second


def test_thread_count_does_not_change_the_report(capsys):
    _, serial = run_cli(capsys, "betti", "--target", "iab", "--a", "2", "--b", "2")
    _, threaded = run_cli(capsys, "betti", "--target", "iab", "--a", "2", "--b", "2",
                          "--threads", "4")
    assert serial == threaded


def test_cache_does_not_change_the_report(capsys, tmp_path):
    _, cold = run_cli(capsys, "fh-rank", "--a", "2", "--b", "2", "--k", "2",
                      "--cache", str(tmp_path))
    _, warm = run_cli(capsys, "fh-rank", "--a", "2", "--b", "2", "--k", "2",
                      "--cache", str(tmp_path))
    _, plain = run_cli(capsys, "fh-rank", "--a", "2", "--b", "2", "--k", "2")
    assert cold == warm == plain


def test_seed_env_and_flag_precedence(capsys, monkeypatch):
    monkeypatch.setenv("BFSYZ_SEED", "7")
    _, rep = run_json(capsys, "fh-rank", "--a", "2", "--b", "2", "--k", "1")
    assert rep["seed"] == 7
    _, rep = run_json(capsys, "fh-rank", "--a", "2", "--b", "2", "--k", "1", "--seed", "3")
    assert rep["seed"] == 3


def test_out_flag_writes_file_and_silences_stdout(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out = run_cli(capsys, "gens", "--a", "2", "--b", "2", "--out", str(target))
    assert code == 0
    assert out == ""
    rep = json.loads(target.read_text())
    assert rep["generators"][0] == "c0^2"


def test_reports_have_no_timestamps(capsys):
    _, rep = run_json(capsys, "minors-check", "--a", "2", "--b", "2")
    flat = json.dumps(rep)
    assert "time" not in flat and "date" not in flat
