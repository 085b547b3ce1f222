import json
import subprocess
import sys

import pytest

from slalomcover import serde
from slalomcover.cli import main
from slalomcover.scales import BoundFn, validate_triple

from conftest import make_name, make_split_condition


def run_cli(*args):
    proc = subprocess.run([sys.executable, "-m", "slalomcover.cli", *args],
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout


def parse_lines(out):
    return [json.loads(line) for line in out.strip().splitlines()]


def test_covernum_exact_matches_oracle():
    code, out = run_cli("covernum", "--f", "3,3", "--g", "2,2", "--exact")
    assert code == 0
    (result,) = parse_lines(out)
    assert result["exact"] == 3
    assert result["lower"] == 3 and result["upper"] == 4


def test_reduce_allfn_check_passes():
    code, out = run_cli("reduce", "--system", "allfn", "--n", "2",
                        "--blocks", "2", "--check-c")
    assert code == 0
    (line,) = parse_lines(out)
    assert line["status"] == "pass"


def test_reduce_literal_range_counterexample_sets_exit_code():
    code, out = run_cli("reduce", "--system", "allfn", "--n", "2",
                        "--blocks", "3", "--literal-range", "--check-c")
    assert code == 1
    (line,) = parse_lines(out)
    assert line["status"] == "fail"
    assert line["block"] == 2


def test_demo_all_stages_pass():
    code, out = run_cli("demo", "--scale", "T1")
    assert code == 0
    lines = parse_lines(out)
    checks = [l for l in lines if "check" in l]
    assert checks and all(l["status"] == "pass" for l in checks)
    names = {l["check"] for l in checks}
    assert {"demo.covernum", "demo.densify", "demo.extract",
            "demo.game"} <= names


def test_reports_are_byte_identical():
    _, out1 = run_cli("demo", "--scale", "T1")
    _, out2 = run_cli("demo", "--scale", "T1")
    assert out1 == out2


def test_usage_error_exits_two():
    proc = subprocess.run([sys.executable, "-m", "slalomcover.cli", "frobnicate"],
                          capture_output=True, text=True)
    assert proc.returncode == 2


def test_missing_input_file_exits_two():
    code, out = run_cli("condition", "validate", "--in", "/nonexistent.json")
    assert code == 2


def test_scale_subcommand_reports_violations():
    code, out = run_cli("scale", "--lo", "2,5", "--hi", "3,7")
    assert code == 1
    (line,) = parse_lines(out)
    assert line["status"] == "fail" and line["violations"]


def test_norm_table_shape():
    code, out = run_cli("norm", "--g", "2,3", "--h", "2,2", "--max-size", "8")
    assert code == 0
    lines = parse_lines(out)
    assert [l["k"] for l in lines] == [0, 1]
    assert lines[0]["norms"] == [0, 0, 0, 1, 1, 1, 1, 2]


def test_condition_pipeline_via_files(tmp_path, ext_triples):
    zeta, xi = ext_triples
    p = make_split_condition(zeta)
    cond_path = tmp_path / "cond.json"
    serde.dump(serde.condition_to_dict(p), str(cond_path))

    code, out = run_cli("condition", "validate", "--in", str(cond_path))
    assert code == 0

    code, out = run_cli("condition", "show-levels", "--in", str(cond_path))
    assert code == 0
    lines = parse_lines(out)
    assert lines[1]["size"] == 16  # the 16-wide root split

    tau = make_name(p, lambda br: (br[0][0] % 4, 0), (8, 100))
    name_path = tmp_path / "name.json"
    serde.dump(serde.name_to_dict(tau), str(name_path))
    xi_path = tmp_path / "xi.json"
    serde.dump(serde.triple_to_dict(xi), str(xi_path))

    code, out = run_cli("extract", "--condition", str(cond_path),
                        "--name", str(name_path), "--xi", str(xi_path))
    assert code == 0
    lines = parse_lines(out)
    assert any(l.get("check") == "extract.verify" and l["status"] == "pass"
               for l in lines)


def test_game_subcommand(tmp_path, game_condition):
    cond_path = tmp_path / "cond.json"
    serde.dump(serde.condition_to_dict(game_condition), str(cond_path))
    code, out = run_cli("game", "play", "--in", str(cond_path), "--rounds", "4")
    assert code == 0
    lines = parse_lines(out)
    assert lines[0]["rounds_played"] == 1
    assert lines[0]["designated_splits"] == [{"nu": [0], "alpha": "a"}]


def test_main_callable_in_process(capsys):
    assert main(["covernum", "--f", "3", "--g", "2", "--exact"]) == 0
    out = capsys.readouterr().out
    assert json.loads(out)["exact"] == 2
