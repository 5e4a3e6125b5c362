import json

import pytest

from ewlext.cli import main

PD_JSON = '{"payoffs": [[["3","3"],["0","5"]],[["5","0"],["1","1"]]]}'


@pytest.fixture
def pd_file(tmp_path):
    path = tmp_path / "pd.json"
    path.write_text(PD_JSON)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_extend_c_class_golden(capsys, pd_file):
    code, out, _ = run(capsys, "extend", "--class", "C", "--theta1", "1/3 pi",
                       "--game", pd_file)
    assert code == 0
    data = json.loads(out)
    assert data["labels"] == ["I", "iX", "U1", "U2"]
    assert data["payoffs"][0][2] == ["17/8", "17/8"]
    assert data["payoffs"][2][3] == ["57/16", "17/16"]
    assert data["payoffs"][3][3] == ["43/16", "43/16"]


def test_extend_b_class_uniform(capsys, pd_file):
    code, out, _ = run(capsys, "extend", "--class", "B", "--game", pd_file)
    assert code == 0
    data = json.loads(out)
    for i in range(4):
        for j in range(4):
            if i >= 2 or j >= 2:
                assert data["payoffs"][i][j] == ["9/4", "9/4"]


def test_extend_a1_pauli(capsys, pd_file):
    code, out, _ = run(capsys, "extend", "--class", "A1", "--alpha1", "1/2 pi",
                       "--game", pd_file)
    assert code == 0
    data = json.loads(out)
    assert data["payoffs"][2] == [["1", "1"], ["5", "0"], ["3", "3"], ["0", "5"]]


def test_extend_inline_game_and_oracle_check(capsys):
    code, out, _ = run(capsys, "extend", "--class", "C", "--theta1", "1/3 pi",
                       "--game", PD_JSON, "--oracle-check")
    assert code == 0


def test_extend_json_round_trip(capsys, pd_file):
    code, first, _ = run(capsys, "extend", "--class", "C", "--theta1", "1/3 pi",
                         "--game", pd_file)
    data = json.loads(first)
    # feed the emitted entries back through a fresh run; exact strings
    # must come out bit-identical
    code, second, _ = run(capsys, "extend", "--class", "C", "--theta1", "1/3 pi",
                          "--game", pd_file)
    assert first == second
    assert json.loads(second) == data


def test_extend_invalid_params_names_congruence(capsys, pd_file):
    code, _, err = run(capsys, "extend", "--class", "B", "--theta1", "1/3 pi",
                       "--game", pd_file)
    assert code == 2
    assert "theta1 = pi/2" in err


def test_extend_explicit_set(capsys, pd_file):
    strategies = json.dumps([
        {"theta": "0", "alpha": "0", "beta": "0"},
        {"theta": "pi", "alpha": "0", "beta": "0"},
        {"theta": "1/2 pi", "alpha": "1/4 pi", "beta": "3/4 pi"},
        {"theta": "1/2 pi", "alpha": "3/4 pi", "beta": "1/4 pi"},
    ])
    code, out, _ = run(capsys, "extend", "--set", strategies, "--game", pd_file)
    assert code == 0
    data = json.loads(out)
    assert data["payoffs"][3][3] == ["9/4", "9/4"]


def test_verify_exit_codes(capsys, pd_file):
    code, out, _ = run(capsys, "verify", "--class", "E1", "--theta1", "1/3 pi",
                       "--game", pd_file)
    assert code == 0
    report = json.loads(out)
    assert [w["variant"] for w in report] == ["GAMMA1", "GAMMA2", "GAMMA3"]
    assert all(w["isomorphic"] for w in report)
    bad = json.dumps([
        {"theta": "0", "alpha": "0", "beta": "0"},
        {"theta": "pi", "alpha": "0", "beta": "0"},
        {"theta": "1/2 pi", "alpha": "1/2 pi", "beta": "0"},
        {"theta": "1/2 pi", "alpha": "0", "beta": "0"},
    ])
    code, out, _ = run(capsys, "verify", "--set", bad, "--game", pd_file)
    assert code == 1
    report = json.loads(out)
    assert any(not w["isomorphic"] for w in report)


def test_verify_classical_pair(capsys, pd_file):
    pair = json.dumps([
        {"theta": "0", "alpha": "0", "beta": "0"},
        {"theta": "pi", "alpha": "0", "beta": "0"},
    ])
    code, _, _ = run(capsys, "verify", "--set", pair, "--game", pd_file)
    assert code == 0


def test_equilibria_classical(capsys, pd_file):
    code, out, _ = run(capsys, "equilibria", "--game", pd_file)
    assert code == 0
    eqs = json.loads(out)
    assert len(eqs) == 1
    assert eqs[0]["payoff"] == ["1", "1"]


def test_equilibria_extend_first(capsys, pd_file):
    code, out, _ = run(capsys, "equilibria", "--extend-first", "--class", "C",
                       "--theta1", "1/3 pi", "--game", pd_file)
    assert code == 0
    eqs = json.loads(out)
    payoffs = sorted(tuple(e["payoff"]) for e in eqs)
    assert payoffs == [("19/8", "19/8"), ("19/8", "19/8"), ("23/12", "23/12")]
    mixed = [e for e in eqs if e["kind"] == "mixed"][0]
    assert mixed["p1"] == ["0", "1/3", "2/3", "0"]


def test_payoff_command(capsys, pd_file):
    code, out, _ = run(capsys, "payoff", "--game", pd_file,
                       "--p1", "1/2 pi,1/2 pi,1/2 pi", "--p2", "0,0,0",
                       "--oracle-check")
    assert code == 0
    data = json.loads(out)
    assert data["u1"] == "1/2"
    assert data["coefficients"] == ["0", "1/2", "0", "1/2"]


def test_payoff_malformed_game(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"payoffs": [[1, 2]]}')
    code, _, err = run(capsys, "payoff", "--game", str(bad),
                       "--p1", "0,0,0", "--p2", "0,0,0")
    assert code == 2
    assert "malformed" in err or "error" in err


def test_exact_mode_rejects_float_game(capsys, tmp_path):
    path = tmp_path / "floats.json"
    path.write_text(
        '{"payoffs": [[[3.5, 3.0], [0.1, 5.0]], [[5.0, 0.0], [1.0, 1.0]]]}'
    )
    code, _, err = run(capsys, "payoff", "--game", str(path),
                       "--p1", "0,0,0", "--p2", "0,0,0")
    assert code == 2
    assert "rational game entries" in err
    # the same game is fine in float mode
    code, out, _ = run(capsys, "payoff", "--game", str(path), "--mode", "float",
                       "--p1", "0,0,0", "--p2", "0,0,0")
    assert code == 0
    assert json.loads(out)["u1"] == 3.5


def test_extend_csv_format(capsys, pd_file):
    code, out, _ = run(capsys, "extend", "--class", "B", "--game", pd_file,
                       "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "row,col,u1,u2"
    assert len(lines) == 1 + 16
    assert "I,U1,9/4,9/4" in lines


def test_equilibria_csv_and_pretty(capsys, pd_file):
    code, out, _ = run(capsys, "equilibria", "--extend-first", "--class", "C",
                       "--theta1", "1/3 pi", "--game", pd_file, "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "kind,u1,u2,p1,p2"
    assert "mixed,23/12,23/12,0;1/3;2/3;0,0;1/3;2/3;0" in lines
    code, out, _ = run(capsys, "equilibria", "--extend-first", "--class", "C",
                       "--theta1", "1/3 pi", "--game", pd_file,
                       "--format", "pretty")
    assert code == 0
    assert "payoff (23/12, 23/12)" in out


def test_equilibria_pre_extended_game(capsys, pd_file):
    code, out, _ = run(capsys, "extend", "--class", "C", "--theta1", "1/3 pi",
                       "--game", pd_file)
    assert code == 0
    ext_path_content = out
    code, out, _ = run(capsys, "equilibria", "--game", ext_path_content)
    assert code == 0
    eqs = json.loads(out)
    payoffs = sorted(tuple(e["payoff"]) for e in eqs)
    assert payoffs == [("19/8", "19/8"), ("19/8", "19/8"), ("23/12", "23/12")]
    assert eqs[0]["support_labels"][0][0] in ("I", "iX", "U1", "U2")


def test_limits_csv(capsys, pd_file):
    code, out, _ = run(capsys, "limits", "--game", pd_file, "--epsilons", "1e-6")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "class,direction,theta1,max_abs_diff,bound,converged"
    assert len(lines) == 1 + 8  # 4 classes x 2 directions x 1 epsilon
    assert all(line.endswith("True") for line in lines[1:])


def test_enumerate_summary(capsys):
    code, out, err = run(capsys, "enumerate", "--theta", "0")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "theta1,alpha1,beta1,alpha2,beta2,class"
    assert len(lines) == 1 + 1024
    assert "A1=1024" in err


def test_missing_game_is_input_error(capsys):
    code, _, err = run(capsys, "extend", "--class", "B", "--game", "/nope/missing.json")
    assert code == 2
    assert "cannot read" in err


def test_pre_extended_float_game_needs_float_mode(capsys):
    ext = ('{"labels": ["a","b"], "payoffs": '
           '[[[1.5, 1.0],[0.0,0.0]],[[0.0,0.0],[1.0,1.5]]]}')
    code, _, err = run(capsys, "equilibria", "--game", ext)
    assert code == 2 and "exact mode" in err
    code, out, _ = run(capsys, "equilibria", "--game", ext, "--mode", "float")
    assert code == 0
    assert len(json.loads(out)) == 3  # two pure corners plus one mixed


def test_output_flag_writes_file(capsys, pd_file, tmp_path):
    out_path = tmp_path / "ext.json"
    code, out, _ = run(capsys, "extend", "--class", "B", "--game", pd_file,
                       "--output", str(out_path))
    assert code == 0
    assert out == ""
    data = json.loads(out_path.read_text())
    assert data["payoffs"][2][2] == ["9/4", "9/4"]
