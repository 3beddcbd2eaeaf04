"""Front-end tests: flag parsing, exit codes, report formats, and
agreement between the streamed reports and direct library calls."""

import json

import pytest

from metaice import scalar as S
from metaice import lattice as L
from metaice import crystal as C
from metaice import metaplectic as MP
from metaice import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


# -- documented invocations --------------------------------------------------

def test_appendix_report_covers_all_cases(capsys):
    code, out = run_cli(capsys, "verify", "appendix", "--nq", "2")
    cases = json.loads(out)
    assert code == 0
    assert len(cases) == 32
    assert all(case["verdict"] == "pass" for case in cases)
    assert all(case["params"] == {"nq": 2} for case in cases)
    assert set(cases[0]) == {"suite", "case", "params", "lhs", "rhs",
                             "verdict", "elapsed"}


def test_partition_value_matches_library(capsys):
    code, out = run_cli(capsys, "ice", "partition", "--lambda", "2,2,0",
                        "--columns", "5", "--n", "2", "--b", "1", "--c", "1",
                        "--charges", "1,1,2")
    assert code == 0
    case = json.loads(out)[0]
    system = L.boundary_from_partition((2, 2, 0), N=5, nq=2)
    assert case["lhs"] == L.partition_function(system, (1, 1, 2)).to_json()
    assert case["params"]["nq"] == 2


def test_thm82_trivial_cover_passes(capsys):
    code, out = run_cli(capsys, "verify", "thm82", "--lambda", "1,0",
                        "--n", "1", "--b", "1", "--c", "1")
    assert code == 0
    cases = json.loads(out)
    assert [case["case"] for case in cases][-1] == "classes"


def test_whittaker_reference_class(capsys):
    code, out = run_cli(capsys, "whittaker", "--lambda", "2,2,0",
                        "--gamma", "4,3,1", "--n", "2", "--b", "1", "--c", "1")
    assert code == 0
    piece_case, value_case = json.loads(out)
    cosets = MP.lattice_and_cosets(MP.CoverParams(2, 1, 1, 3))
    piece = C.coset_piece(C.i_lambda((2, 2, 0), 3, 2), (4, 3, 1),
                          (2, 2, 0), cosets)
    assert piece_case["lhs"] == piece.to_json()
    assert value_case["lhs"] == (S.z_mono((0, 2, 2), 2) * piece).to_json()


def test_enumerate_count_matches_library(capsys):
    code, out = run_cli(capsys, "ice", "enumerate", "--lambda", "1,0",
                        "--nq", "2")
    assert code == 0
    case = json.loads(out)[0]
    system = L.boundary_from_partition((1, 0), nq=2)
    assert case["lhs"]["count"] == len(L.enumerate_states(system))
    assert len(case["lhs"]["states"]) == case["lhs"]["count"]


def test_single_cover_suites_pass(capsys):
    for argv in (("verify", "prop71", "--n", "3", "--b", "1", "--c", "0"),
                 ("verify", "thm12", "--n", "2", "--b", "1", "--c", "1"),
                 ("verify", "train", "--lambda", "1,0", "--nq", "1,2"),
                 ("verify", "twist", "--nq", "1,2")):
        code, out = run_cli(capsys, *argv)
        assert code == 0
        assert all(case["verdict"] == "pass" for case in json.loads(out))


# -- exit codes ---------------------------------------------------------------

def test_usage_errors_exit_two(capsys):
    bad = (
        ("verify", "rtt", "--nq", "2", "--n", "2"),  # override vs cover
        ("verify", "rrr", "--mode", "modular", "--seed", "7"),  # no prime
        ("verify", "rrr", "--mode", "symbolic", "--seed", "7"),  # stray seed
        ("verify", "rrr", "--nq", "2", "--mode", "symbolic"),  # nq > 1
        ("verify", "thm82", "--lambda", "1,0"),  # no cover
        ("verify", "thm82", "--n", "2", "--b", "1", "--c", "1"),  # no lambda
        ("verify", "thm82", "--lambda", "1,0", "--nq", "2"),  # override
        ("whittaker", "--lambda", "1,0", "--gamma", "1", "--n", "2"),
        ("ice", "partition", "--lambda", "1,0", "--rank", "3"),
        ("ice", "partition", "--lambda", "1,0", "--b", "1"),  # b without n
        ("ice", "partition", "--lambda", "junk"),
        ("verify", "nosuchsuite"),
    )
    for argv in bad:
        with pytest.raises(SystemExit) as err:
            cli.main(list(argv))
        assert err.value.code == 2, argv
        capsys.readouterr()


def test_verification_failure_exits_one(capsys):
    # grid narrower than the partition needs: a failing case, not a crash
    code, out = run_cli(capsys, "ice", "partition", "--lambda", "2,2,0",
                        "--columns", "4")
    assert code == 1
    case = json.loads(out)[0]
    assert case["verdict"] == "fail"
    assert "error" in case["lhs"]


# -- report behavior ----------------------------------------------------------

def test_reports_are_byte_identical(capsys, monkeypatch):
    _, first = run_cli(capsys, "verify", "twist", "--nq", "1,2")
    _, second = run_cli(capsys, "verify", "twist", "--nq", "1,2")
    assert first == second
    monkeypatch.setenv("METAICE_WORKERS", "3")
    _, fanned = run_cli(capsys, "verify", "twist", "--nq", "1,2")
    assert fanned == first
    monkeypatch.setenv("METAICE_WORKERS", "junk")
    _, cleaned = run_cli(capsys, "verify", "twist", "--nq", "1,2")
    assert cleaned == first


def test_seeded_modular_reports_are_reproducible(capsys):
    argv = ("verify", "rrr", "--nq", "2", "--mode", "modular",
            "--prime", str(S.DEFAULT_PRIME), "--seed", "11")
    _, first = run_cli(capsys, *argv)
    _, second = run_cli(capsys, *argv)
    assert first == second
    case = json.loads(first)[0]
    assert case["lhs"]["mode"] == "modular"
    assert case["lhs"]["sz_log2_bound"] < -40
    assert case["rhs"]["sz_log2_bound_max"] == -40


def test_modes_agree_where_both_run(capsys):
    code_auto, auto = run_cli(capsys, "verify", "unitarity", "--nq", "1")
    code_sym, sym = run_cli(capsys, "verify", "unitarity", "--nq", "1",
                            "--mode", "symbolic")
    assert code_auto == code_sym == 0
    assert json.loads(auto)[0]["verdict"] == json.loads(sym)[0]["verdict"]


def test_csv_and_text_formats(capsys):
    _, out = run_cli(capsys, "verify", "twist", "--nq", "1", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "suite,case,params,lhs,rhs,verdict,elapsed"
    assert len(lines) == 2 and lines[1].startswith("twist,nq=1,")
    _, out = run_cli(capsys, "verify", "twist", "--nq", "1", "--format", "text")
    assert out.splitlines() == ["PASS twist :: nq=1", "passed 1/1"]


def test_timings_flag_fills_elapsed(capsys):
    _, out = run_cli(capsys, "verify", "twist", "--nq", "1")
    assert json.loads(out)[0]["elapsed"] is None
    _, out = run_cli(capsys, "verify", "twist", "--nq", "1", "--timings")
    assert json.loads(out)[0]["elapsed"] > 0


def test_rtt_report_shape(capsys):
    code, out = run_cli(capsys, "verify", "rtt", "--nq", "1")
    assert code == 0
    case = json.loads(out)[0]
    assert case["lhs"]["inhabited"] > 0
    assert case["rhs"] == {"failures": []}
