import subprocess
import sys

import pytest

from spreadec.cli import main

EXAMPLE = "100|110\n010|011\n001|111"


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_code_info(capsys):
    code, out, _ = run(capsys, "code-info")
    assert code == 0
    lines = dict(line.split("=", 1) for line in out.splitlines()[1:])
    assert lines["codewords"] == "9" and lines["min_distance"] == "6" and lines["t"] == "2"
    assert lines["alpha_poly"] == "1,1,0,1"


def test_code_info_prime_power(capsys):
    code, out, _ = run(capsys, "code-info", "--q", "4", "--k", "2", "--l", "2")
    assert code == 0 and "codewords=17" in out and "q_poly=" in out


def test_encode(capsys):
    code, out, _ = run(capsys, "encode", "1,0,0;1,1,0")
    assert code == 0 and out.strip() == EXAMPLE


def test_decode_example(tmp_path, capsys):
    f = tmp_path / "r.txt"
    f.write_text("110|101\n")
    for extra in ([], ["--basic"]):
        code, out, _ = run(capsys, "decode", str(f), *extra)
        assert code == 0
        lines = out.splitlines()
        assert lines[:2] == ["outcome=decoded", "gamma=1,0,0;1,1,0"]
        assert "\n".join(lines[-3:]) == EXAMPLE


def test_encode_decode_round_trip(tmp_path, capsys):
    _, out, _ = run(capsys, "encode", "--q", "3", "--k", "2", "--l", "2", "1,0;1,2")
    f = tmp_path / "w.txt"
    f.write_text(out)
    code, out2, _ = run(capsys, "decode", "--q", "3", "--k", "2", "--l", "2", str(f))
    assert code == 0 and "gamma=" in out2 and out.strip() in out2


def test_decode_not_decodable(tmp_path, capsys):
    f = tmp_path / "r.txt"
    f.write_text("100000\n000100\n")
    code, out, _ = run(capsys, "decode", str(f))
    assert code == 1 and out.startswith("outcome=not_decodable")


@pytest.mark.parametrize(
    "args",
    [
        ["code-info", "--q", "6"],
        ["code-info", "--q", "2", "--k", "40", "--l", "2"],
        ["encode", "1,0,0"],
        ["encode", "0,1,0;1,0,0"],
        ["simulate", "--erasures", "4"],
        ["code-info", "--alpha-poly", "1,0,0,1"],
        ["verify-lemma8", "--cases", "2-2"],
        ["simulate", "--basic", "--k", "7", "--l", "2"],
    ],
)
def test_usage_errors(args, capsys):
    code, _, err = run(capsys, *args)
    assert code == 2 and err.startswith("spreadec: error:")


def test_decode_bad_file(tmp_path, capsys):
    f = tmp_path / "r.txt"
    f.write_text("1102|101\n")
    assert run(capsys, "decode", str(f))[0] == 2
    assert run(capsys, "decode", str(tmp_path / "missing"))[0] == 2
    f.write_text("000000\n")
    assert run(capsys, "decode", str(f))[0] == 2


def test_simulate_csv_deterministic(tmp_path, capsys):
    args = ["simulate", "--erasures", "1", "--errors", "1", "--trials", "40", "--seed", "3"]
    a, b, c = tmp_path / "a.csv", tmp_path / "b.csv", tmp_path / "c.csv"
    log = tmp_path / "truth.log"
    assert main(args + ["--out", str(a), "--log", str(log)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert main(args + ["--out", str(c), "--jobs", "2"]) == 0
    assert a.read_bytes() == b.read_bytes() == c.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0] == "trial,seed,erasures,errors,kprime,decoded_correctly,rounds_used,combinations_tested"
    assert len(lines) == 41
    assert all(line.split(",")[5] == "1" for line in lines[1:])
    assert len(log.read_text().splitlines()) == 40


def test_simulate_basic(capsys):
    code, out, _ = run(capsys, "simulate", "--q", "3", "--k", "2", "--errors", "1", "--trials", "5", "--basic")
    assert code == 0 and len(out.splitlines()) == 6


def test_tables_closed_form(capsys):
    code, out, _ = run(capsys, "tables", "--table", "cor12", "--qs", "4", "--kprimes", "7")
    assert code == 0
    assert out.splitlines()[1].startswith("cor12,4,7,3166,5461,")


def test_tables_mc_needs_trials(capsys):
    assert run(capsys, "tables", "--mc", "--trials", "0")[0] == 2


def test_tables_mc(tmp_path, capsys):
    out = tmp_path / "t.csv"
    args = ["tables", "--mc", "--trials", "3000", "--qs", "2", "--kprimes", "3", "--table", "thm10", "--out", str(out)]
    assert main(args) == 0
    first = out.read_bytes()
    assert main(args + ["--jobs", "2"]) == 0
    assert out.read_bytes() == first
    assert first.decode().splitlines()[1].endswith("true")


def test_verify_lemma8(capsys):
    code, out, _ = run(capsys, "verify-lemma8", "--cases", "2:2,3:2")
    assert code == 0
    assert "2,2,1,4,4,true" in out and "false" not in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "spreadec", "code-info", "--k", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and "codewords=5" in proc.stdout
