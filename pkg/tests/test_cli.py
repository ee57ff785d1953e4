"""End-to-end command-line behavior, run in process."""

import json
import math

from bosonreg.cli import main, parse_complex
from bosonreg.gates import circuit_from_json_obj


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_complex_forms():
    assert parse_complex("0.5") == 0.5
    assert parse_complex("1+0i") == 1
    assert parse_complex("0.3i") == 0.3j
    assert parse_complex("-1.5-2i") == -1.5 - 2j
    assert parse_complex("i") == 1j


def test_map_computational(capsys):
    code, out, _ = run(capsys, "map", "1101", "--mode", "computational")
    assert code == 0
    assert out.strip() == "11"


def test_map_collision(capsys):
    """0 followed by repeating 1s and plain 1 hit the same point."""
    code, out, _ = run(capsys, "map", "0", "--period", "1", "--mode", "continuum")
    assert code == 0
    assert "1/1" in out and "Recurring" in out
    code, out, _ = run(capsys, "map", "1", "--mode", "continuum")
    assert code == 0
    assert "1/1" in out and "FiniteCountable" in out


def test_map_usage_errors(capsys):
    assert run(capsys, "map", "120")[0] == 2
    assert run(capsys, "map", "1101", "--period", "1")[0] == 2


def test_map_json(capsys):
    code, out, _ = run(capsys, "map", "01", "--mode", "continuum", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["numerator"] == 1 and obj["denominator"] == 2
    assert obj["classification"] == "FiniteCountable"


def test_algebra_check_passes_by_default(capsys):
    code, out, _ = run(capsys, "algebra-check")
    assert code == 0
    assert out.count("PASS") == 6  # 5 groups plus the summary line
    for name in (
        "product-closure",
        "product-associativity",
        "gate-involutions",
        "transpose-construction",
        "tensor-identities",
    ):
        assert name in out


def test_algebra_check_zero_tolerance_fails(capsys):
    """Floating identities cannot meet an exact-zero tolerance."""
    code, out, _ = run(capsys, "algebra-check", "--tol", "0")
    assert code == 1
    assert "FAIL tensor-identities" in out


def test_algebra_check_json(capsys):
    code, out, _ = run(capsys, "algebra-check", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert len(obj["groups"]) == 5
    assert obj["passed"] is True


def test_state_number(capsys):
    code, out, _ = run(capsys, "state", "number", "2", "--rank", "8")
    assert code == 0
    obj = json.loads(out)
    assert len(obj["amplitudes"]) == 1
    key, re, im = obj["amplitudes"][0]
    assert key == 4
    assert abs(complex(re, im) - 1) < 1e-10
    assert run(capsys, "state", "number", "9", "--rank", "8")[0] == 2


def test_state_coherent(capsys):
    code, out, _ = run(capsys, "state", "coherent", "0+0i")
    assert code == 0
    obj = json.loads(out)
    assert obj["amplitudes"] == [[1, 1, 0]]
    assert obj["tail_mass"] == 0

    code, out, _ = run(capsys, "state", "coherent", "1+0i", "--rank", "32")
    obj = json.loads(out)
    assert len(obj["amplitudes"]) == 32
    assert obj["tail_mass"] < 1e-20


def test_state_coherent_guard(capsys):
    assert run(capsys, "state", "coherent", "4+0i", "--rank", "8")[0] == 2
    code, out, _ = run(
        capsys, "state", "coherent", "4+0i", "--rank", "8", "--allow-truncation-risk"
    )
    assert code == 0
    assert json.loads(out)["tail_mass"] > 0.5


def test_decompose_position(capsys):
    code, out, _ = run(capsys, "decompose", "position", "--rank", "4")
    assert code == 0
    obj = json.loads(out)
    full_t_terms = [
        t for t in obj["full"]["terms"]
        if any(f["type"] == "T" for f in t["factors"])
    ]
    assert len(full_t_terms) == 3
    assert all(
        f["theta"] == 0 for t in full_t_terms for f in t["factors"] if f["type"] == "T"
    )
    assert len(obj["reduced"]["terms"]) == 3
    # emitted circuits parse back into the library form
    circuit_from_json_obj(obj["full"])
    circuit_from_json_obj(obj["reduced"])


def test_decompose_momentum_quarter_twist(capsys):
    code, out, _ = run(capsys, "decompose", "momentum", "--rank", "4")
    obj = json.loads(out)
    thetas = {
        f["theta"]
        for t in obj["full"]["terms"]
        for f in t["factors"]
        if f["type"] == "T"
    }
    assert thetas == {math.pi / 2}


def test_decompose_displacement(capsys):
    code, out, _ = run(capsys, "decompose", "displacement", "--z", "0.3i", "--rank", "4")
    assert code == 0
    obj = json.loads(out)
    assert abs(obj["r"] - 0.3) < 1e-15
    assert obj["theta"] == 0
    assert run(capsys, "decompose", "displacement", "--rank", "4")[0] == 2
    assert run(capsys, "decompose", "position", "--z", "0.1", "--rank", "4")[0] == 2


def test_evolve_at_rest(capsys):
    code, out, _ = run(
        capsys, "evolve", "--z", "0", "--t1", "1.0", "--steps", "4", "--rank", "8"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "t,x,p,h"
    assert len(lines) == 5
    for line in lines[1:]:
        t, x, p, h = line.split(",")
        assert x == "0" and p == "0"
        assert float(h) == 0.5


def test_evolve_periodicity(capsys):
    period = 2 * math.pi
    code, out, _ = run(
        capsys, "evolve", "--z", "0.5", "--t1", repr(period), "--steps", "64"
    )
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    assert abs(float(rows[0][1]) - float(rows[-1][1])) < 1e-8


def test_evolve_validation(capsys):
    assert run(capsys, "evolve", "--z", "0.5", "--t1", "1", "--steps", "1")[0] == 2
    assert run(capsys, "evolve", "--z", "0.5", "--t1", "-1")[0] == 2
    assert run(capsys, "evolve", "--z", "0.5", "--t1", "1", "--format", "json")[0] == 2


def test_config_validation(capsys):
    assert run(capsys, "verify", "--rank", "65")[0] == 2
    assert run(capsys, "verify", "--rank", "1")[0] == 2
    assert run(capsys, "algebra-check", "--alpha", "0")[0] == 2
    assert run(capsys, "algebra-check", "--tol", "-1")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_out_writes_file(tmp_path, capsys):
    target = tmp_path / "state.json"
    code, out, _ = run(capsys, "state", "number", "1", "--rank", "4", "--out", str(target))
    assert code == 0
    assert out == ""
    obj = json.loads(target.read_text())
    assert obj["amplitudes"][0][0] == 2


def test_outputs_are_deterministic(capsys):
    first = run(capsys, "state", "coherent", "0.5+0.25i", "--rank", "16")
    second = run(capsys, "state", "coherent", "0.5+0.25i", "--rank", "16")
    assert first == second
    a = run(capsys, "evolve", "--z", "0.5", "--t1", "2.0", "--steps", "8")
    b = run(capsys, "evolve", "--z", "0.5", "--t1", "2.0", "--steps", "8")
    assert a == b


def test_seventeen_digit_output(capsys):
    _, out, _ = run(capsys, "evolve", "--z", "0.5", "--t1", "6.283185307179586", "--steps", "4")
    assert "6.2831853071795862" in out


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["passed"] is True
    names = [c["name"] for c in obj["criteria"]]
    assert len(names) == 12
    assert "mutation-sensitivity" in names


def test_verify_mutation_fixture_fails_loudly(capsys):
    """The deliberate hop-convention fault must be caught and named."""
    code, out, _ = run(capsys, "verify", "--mutate", "b-convention")
    assert code == 1
    fail_lines = [l for l in out.splitlines() if l.startswith("FAIL")]
    assert any("hop-relations" in l for l in fail_lines)
    # the sensitivity criterion is itself skipped under mutation
    assert "mutation-sensitivity" not in out


def test_verify_minimum_rank_runs(capsys):
    code, out, _ = run(capsys, "verify", "--rank", "2")
    assert code in (0, 1)
    assert "verify:" in out
