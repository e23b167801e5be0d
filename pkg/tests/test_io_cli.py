import json

import pytest
from hypothesis import given, settings, strategies as st

from rifle import catalog
from rifle.cli import main
from rifle.io import (InstanceParseError, instance_digest, outcome_from_json, outcome_to_json,
                      parse_instance, random_instance, serialize_instance)


@pytest.fixture
def write(tmp_path):
    def _write(name, content):
        path = tmp_path / name
        path.write_text(content if isinstance(content, str) else json.dumps(content))
        return str(path)
    return _write


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_round_trip(auction_market):
    text = serialize_instance(auction_market)
    assert parse_instance(text) == auction_market
    assert serialize_instance(parse_instance(text)) == text


def test_parse_comments_and_blank_lines():
    text = "# market\nn 1\n\nrigidP 1\nrigidQ 0\n# the only pair\npair 1 1 2 3\n"
    inst = parse_instance(text)
    assert inst.rigid_p.tolist() == [True] and inst.alpha[0, 0] == 5


@pytest.mark.parametrize("text,line", [
    ("n 1\nrigidP 0\nrigidQ 0\npair 1 1 x 3\n", 4),
    ("n 1\nrigidP 0\nrigidQ 0\npair 1 2 1 1\n", 4),
    ("n 1\nrigidP 2\nrigidQ 0\npair 1 1 1 1\n", 2),
    ("n 1\nrigidP 0\nrigidQ 0\npair 1 1 -1 1\n", 4),
    ("n 1\nrigidP 0\nrigidQ 0\npair 1 1 1 1\npair 1 1 1 1\n", 5),
    ("n 1\nrigidP 0\nrigidQ 0\nbogus 1\n", 4),
    ("rigidP 0\n", 1),
])
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(InstanceParseError) as err:
        parse_instance(text)
    assert err.value.line == line
    assert f"line {line}" in str(err.value)


def test_parse_missing_pairs():
    with pytest.raises(InstanceParseError, match="missing pair"):
        parse_instance("n 2\nrigidP 0 0\nrigidQ 0 0\npair 1 1 1 1\n")


def test_generator_examples():
    zero = random_instance(1, 0, 0.5, 7)
    assert zero.beta[0, 0] == 0 and zero.gamma[0, 0] == 0
    assert serialize_instance(random_instance(4, 6, 0.5, 1)) == serialize_instance(random_instance(4, 6, 0.5, 1))
    with pytest.raises(ValueError):
        random_instance(0, 3, 0.5, 1)
    with pytest.raises(ValueError):
        random_instance(2, 3, 1.5, 1)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 6), max_value=st.integers(0, 20),
       rigid_prob=st.floats(0, 1), seed=st.integers(0, 2**32 - 1))
def test_generated_instances_round_trip(n, max_value, rigid_prob, seed):
    inst = random_instance(n, max_value, rigid_prob, seed)
    assert parse_instance(serialize_instance(inst)) == inst
    assert int(inst.beta.max(initial=0)) <= max_value


def test_outcome_json_round_trip():
    o = catalog.auction_outcome()
    doc = outcome_to_json(o)
    assert doc["matching"] == [2, 1, 4, 3, 5]
    assert outcome_from_json(doc) == o
    with pytest.raises(ValueError):
        outcome_from_json({"matching": [1]})


def test_cli_solve(capsys, write, auction_market):
    path = write("auction.txt", serialize_instance(auction_market))
    code, out, _ = run_cli(capsys, "solve", path)
    doc = json.loads(out)
    assert code == 0
    assert doc["command"] == "solve"
    assert doc["instance_digest"] == instance_digest(auction_market)
    assert doc["outcome"] == {"matching": [2, 1, 4, 3, 5], "u": [9, 8, 11, 8, 7], "v": [5, 9, 2, 2, 0]}
    assert doc["verdict"] == "STABLE"
    assert "trace" not in doc


def test_cli_solve_trace(capsys, write, auction_market):
    path = write("auction.txt", serialize_instance(auction_market))
    _, out, _ = run_cli(capsys, "solve", path, "--trace")
    trace = json.loads(out)["trace"]
    assert [t["subprocess"] for t in trace] == ["init", "A", "A", "C", "C", "B:case1"]
    assert trace[0]["proposal"] == [2, 2, 2, 3, 2]
    assert trace[1]["barred"] == [[2, 2]]
    code, text, _ = run_cli(capsys, "solve", path, "--trace", "--text")
    assert code == 0
    assert "[17]" in text  # p3's boxed value at the start
    assert "verdict: STABLE" in text


def test_cli_solve_single_pair(capsys, write):
    path = write("one.txt", "n 1\nrigidP 0\nrigidQ 0\npair 1 1 5 0\n")
    _, out, _ = run_cli(capsys, "solve", path)
    doc = json.loads(out)
    assert doc["outcome"]["u"] == [5] and doc["outcome"]["v"] == [0]


def test_cli_parse_error(capsys, write):
    path = write("bad.txt", "n 1\nrigidP 0\nrigidQ 0\npair 1 1 5\n")
    code, out, err = run_cli(capsys, "solve", path)
    assert code != 0 and out == ""
    assert "line 4" in err


def test_cli_missing_file(capsys, tmp_path):
    code, _, err = run_cli(capsys, "solve", str(tmp_path / "nope.txt"))
    assert code != 0 and "cannot read" in err


def test_cli_verify(capsys, write):
    weak = write("weak.txt", serialize_instance(catalog.weak_blocking_market()))
    o = write("weak.json", outcome_to_json(catalog.weak_blocking_outcome()))
    doc = json.loads(run_cli(capsys, "verify", weak, o)[1])
    assert doc["verdict"] == "STABLE"
    assert doc["diagnostics"]["weak_blocking_pairs"] == [[1, 2]]

    side = write("side.txt", serialize_instance(catalog.side_payment_market()))
    o = write("side.json", outcome_to_json(catalog.side_payment_outcome()))
    doc = json.loads(run_cli(capsys, "verify", side, o)[1])
    assert doc["verdict"] == "INFEASIBLE"
    assert doc["diagnostics"]["violations"]["rigidity"] == [[2, 2]]

    auction = write("auction.txt", serialize_instance(catalog.auction_market()))
    o = write("auction.json", outcome_to_json(catalog.auction_outcome()))
    doc = json.loads(run_cli(capsys, "verify", auction, o)[1])
    assert doc["verdict"] == "STABLE"


def test_cli_verify_dimension_mismatch(capsys, write):
    weak = write("weak.txt", serialize_instance(catalog.weak_blocking_market()))
    o = write("o.json", {"matching": [1], "u": [1], "v": [1]})
    code, _, err = run_cli(capsys, "verify", weak, o)
    assert code != 0 and "size" in err


def test_cli_oracle_and_lattice(capsys, write):
    path = write("block.txt", serialize_instance(catalog.blocking_pair_market()))
    doc = json.loads(run_cli(capsys, "oracle", path)[1])
    assert doc["count"] == 5
    assert doc["p_optimal"] == {"matching": [1, 2], "u": [6, 10], "v": [0, 5]}
    doc = json.loads(run_cli(capsys, "lattice", path)[1])
    assert doc["closed"] is True and doc["failing_pair"] is None
    deg = write("deg.txt", serialize_instance(catalog.degenerate_market()))
    doc = json.loads(run_cli(capsys, "lattice", deg)[1])
    assert doc["closed"] is False and len(doc["failing_pair"]) == 2


def test_cli_nondegen(capsys, write):
    deg = write("deg.txt", serialize_instance(catalog.degenerate_market()))
    doc = json.loads(run_cli(capsys, "nondegen", deg)[1])
    assert doc["non_degenerate"] is False
    assert doc["witness"]["coalition"] == {"p": [2], "q": [1]}
    assert doc["witness"]["value"] == 11
    weak = write("weak.txt", serialize_instance(catalog.weak_blocking_market()))
    doc = json.loads(run_cli(capsys, "nondegen", weak)[1])
    assert doc["non_degenerate"] is True and doc["witness"] is None


def test_cli_size_guard(capsys, write):
    path = write("big.txt", serialize_instance(random_instance(7, 3, 0.5, 0)))
    code, _, err = run_cli(capsys, "oracle", path)
    assert code != 0 and "6" in err
    code, _, err = run_cli(capsys, "nondegen", path)
    assert code != 0 and "5" in err


def test_cli_gen(capsys):
    code, out, _ = run_cli(capsys, "gen", "--n", "1", "--max-value", "0", "--seed", "7")
    assert code == 0 and "pair 1 1 0 0" in out
    args = ("gen", "--n", "4", "--max-value", "6", "--rigid-prob", "0.5", "--seed", "1")
    first = run_cli(capsys, *args)[1]
    assert first == run_cli(capsys, *args)[1]
    assert parse_instance(first) == random_instance(4, 6, 0.5, 1)
    code, _, err = run_cli(capsys, "gen", "--n", "0", "--max-value", "3", "--seed", "1")
    assert code != 0 and err


def test_cli_deterministic(capsys, write):
    path = write("r.txt", serialize_instance(random_instance(3, 5, 0.5, 42)))
    for cmd in ("solve", "oracle", "lattice", "nondegen"):
        assert run_cli(capsys, cmd, path)[1] == run_cli(capsys, cmd, path)[1]


def test_module_entry_point(write):
    import subprocess
    import sys
    path = write("one.txt", "n 1\nrigidP 1\nrigidQ 1\npair 1 1 2 3\n")
    res = subprocess.run([sys.executable, "-m", "rifle", "solve", path, "--text"],
                         capture_output=True, text=True, check=True)
    assert "matching=[q1]  u=[2]  v=[3]" in res.stdout
