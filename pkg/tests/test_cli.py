import json

import pytest

from lexsamp.cli import main

from .util import DEMO5_EXTRA_FILE, DEMO5_FILE


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_count_command(capsys):
    code, out, _ = run(capsys, "count", DEMO5_FILE)
    assert code == 0
    assert out.strip() == "8"
    code, out, _ = run(capsys, "count", DEMO5_EXTRA_FILE, "--format", "json")
    assert code == 0
    assert json.loads(out) == {"count": 5, "n": 5}


def test_sample_command_text(capsys):
    code, out, _ = run(capsys, "sample", DEMO5_FILE, "--seed", "7", "--samples", "3")
    assert code == 0
    lines = out.strip().splitlines()
    perm_lines = [l for l in lines if not l.startswith("#")]
    assert len(perm_lines) == 3
    valid = {
        "1 2 3 4 5", "1 2 4 3 5", "1 4 2 3 5", "4 1 2 3 5",
        "2 1 3 4 5", "2 1 4 3 5", "2 4 1 3 5", "4 2 1 3 5",
    }
    for line in perm_lines:
        assert line in valid
    assert any(l.startswith("# seed: 7") for l in lines)
    assert any(l.startswith("# generator: splitmix64/msb") for l in lines)


def test_sample_command_json_shape(capsys):
    code, out, _ = run(capsys, "sample", DEMO5_FILE, "--seed", "1",
                       "--samples", "2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"extensions", "stats"}
    assert len(payload["extensions"]) == 2
    assert payload["stats"]["seed"] == 1
    assert payload["stats"]["driver"] == "doubling"


def test_sample_fixed_driver(capsys):
    code, out, _ = run(capsys, "sample", DEMO5_FILE, "--seed", "2",
                       "--driver", "fixed", "--samples", "2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["stats"]["initial_sweeps"] == 35


def test_byte_identical_reruns(capsys):
    args = ("sample", DEMO5_FILE, "--seed", "99", "--samples", "5", "--format", "json")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    args = ("test", DEMO5_FILE, "--seed", "5", "--samples", "300", "--format", "json")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_env_seed_fallback(capsys, monkeypatch):
    monkeypatch.setenv("LEXSAMP_SEED", "4242")
    code, out, _ = run(capsys, "sample", DEMO5_FILE, "--samples", "1", "--format", "json")
    assert code == 0
    assert json.loads(out)["stats"]["seed"] == 4242


def test_test_command_zero_cells_against_baseline(capsys):
    code, out, _ = run(capsys, "test", DEMO5_EXTRA_FILE, "--seed", "3",
                       "--samples", "400", "--baseline", DEMO5_FILE,
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    zero_cells = [e for e in payload["expected"] if e == 0.0]
    assert len(zero_cells) == 3
    dead_counts = [o for o, e in zip(payload["observed"], payload["expected"]) if e == 0.0]
    assert dead_counts == [0, 0, 0]
    assert payload["p_value"] >= 1e-3


def test_test_command_text(capsys):
    code, out, _ = run(capsys, "test", DEMO5_FILE, "--seed", "8", "--samples", "200")
    assert code == 0
    assert "p_value" in out
    assert "1 2 3 4 5" in out


def test_bench_command(capsys):
    code, out, _ = run(capsys, "bench", DEMO5_FILE, "--seed", "1", "--runs", "10",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["t"] == 35
    assert payload["runs"] == 10
    assert payload["mean_bits"] > 0


def test_tau_command(capsys):
    code, out, _ = run(capsys, "tau", DEMO5_FILE, "--seed", "6",
                       "--replicates", "500", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["n"] == 5
    assert payload["mean_bound"] == 11.0
    assert payload["mean"] <= payload["mean_bound"] + 5 * payload["se"]


def test_csv_formats(capsys):
    code, out, err = run(capsys, "sample", DEMO5_FILE, "--seed", "4",
                         "--samples", "2", "--format", "csv")
    assert code == 0
    assert len(out.strip().splitlines()) == 2
    assert "seed 4" in err  # stdout stays pure csv, seed echoed on stderr
    code, out, _ = run(capsys, "count", DEMO5_FILE, "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "n,count"


def test_missing_file_is_input_error(capsys):
    code, _, err = run(capsys, "count", "no_such_file.poset")
    assert code == 1
    assert "no_such_file" in err


def test_parse_error_names_line(tmp_path, capsys):
    bad = tmp_path / "bad.poset"
    bad.write_text("n 3\n1 2 junk\n")
    code, _, err = run(capsys, "count", bad)
    assert code == 1
    assert "line 2" in err


def test_cycle_error_reports_one_based_cycle(tmp_path, capsys):
    cyclic = tmp_path / "cyclic.poset"
    cyclic.write_text("n 3\n1 2\n2 3\n3 1\n")
    code, _, err = run(capsys, "count", cyclic)
    assert code == 1
    assert "cycle" in err
    assert "1" in err and "2" in err and "3" in err


def test_cap_exceeded_exit_code(tmp_path, capsys):
    big = tmp_path / "big.poset"
    big.write_text("n 25\n")
    code, _, err = run(capsys, "count", big)
    assert code == 2
    assert "capped" in err


def test_usage_error_exits_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["sample"])  # missing input path
    assert exc.value.code == 1
