import json
import random
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from builders import FIXTURES
from cusco import corpus, graph_closure, is_hyperplane_minimal, is_minimal_cusco, is_quasicontinuous, is_usco
from cusco.cli import main
from cusco.specdoc import SpecError, parse_spec, serialize


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, text, name="doc.sv"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_parse_jump_fixture():
    doc = parse_spec((FIXTURES / "example2_1.sv").read_text())
    assert doc.entities["f"].breakpoints == (-2, 0, 2)


def test_parse_empty_file():
    with pytest.raises(SpecError, match="no entities"):
        parse_spec("# nothing here\n")


def test_parse_decreasing_breakpoints_has_line():
    text = "function f\n  breaks 0 -1 2\n  piece affine 0 0\n  piece affine 0 0\nend\n"
    with pytest.raises(SpecError) as exc:
        parse_spec(text)
    assert exc.value.problems[0][0] == 2


def test_parse_rejects_decimals():
    text = "function f\n  breaks 0 1\n  piece affine 0.5 0\n  at 0 = 0\n  at 1 = 0\nend\n"
    with pytest.raises(SpecError) as exc:
        parse_spec(text)
    assert exc.value.problems == [(3, "not an exact rational: '0.5'")]


def test_parse_unknown_reference():
    with pytest.raises(SpecError, match="not a defined function"):
        parse_spec("map F lower=g upper=h\n")


def test_parse_reports_several_problems():
    text = "function f\n  breaks 0 1\nend\nbogus line\nfunction f\n  breaks 1 0\nend\n"
    with pytest.raises(SpecError) as exc:
        parse_spec(text)
    assert len(exc.value.problems) >= 3
    assert {n for n, _ in exc.value.problems} >= {1, 4}


def test_parse_crossing_band_is_invariant_error():
    text = "map F\n  breaks 0 1\n  piece affine 1 0 , affine 0 1/2\n  at 0 = 0\n  at 1 = 1\nend\n"
    with pytest.raises(SpecError, match="map 'F'"):
        parse_spec(text)


def test_parse_map_block_and_bounds():
    doc = parse_spec((FIXTURES / "const_map.sv").read_text() + """
map G
  breaks 0 1
  piece affine 0 0 , affine 0 1 | affine 0 2
  at 0 = [0, 1] 2
  at 1 = [0, 1] 2 5
end
""")
    assert doc.entities["F"].values[0][0].hi == 1
    assert len(doc.entities["G"].bands[0]) == 2
    assert len(doc.entities["G"].values[1]) == 3


def test_hpmin_report(capsys):
    code, out, _ = run(capsys, "check-hpmin", FIXTURES / "example2_1.sv", "f")
    assert code == 0
    assert "hyperplane minimal: true; quasicontinuous: false" in out


def test_csc_report(capsys):
    code, out, _ = run(capsys, "csc", FIXTURES / "example2_2.sv", "f", "--at", "0")
    assert code == 0 and out.strip() == "[0, +inf)"


def test_sample_constant_map(capsys):
    code, out, _ = run(capsys, "sample", FIXTURES / "const_map.sv", "F", "--step", "1/4")
    assert code == 0
    assert out.splitlines() == ["0,0,1", "1/4,0,1", "1/2,0,1", "3/4,0,1", "1,0,1"]


def test_sample_header_and_function(capsys):
    code, out, _ = run(capsys, "sample", FIXTURES / "example2_2.sv", "f", "--step", "1", "--header")
    assert out.splitlines() == ["x,y", "-2,0", "-1,0", "0,0", "1,1", "2,1/2"]


def test_false_verdict_exit_one(capsys):
    code, out, _ = run(capsys, "check-qc", FIXTURES / "example2_1.sv", "f")
    assert code == 1 and "quasicontinuous: false" in out


def test_json_output(capsys):
    code, out, _ = run(capsys, "check-qc", FIXTURES / "example2_1.sv", "f", "--json")
    doc = json.loads(out)
    assert code == 1 and doc["verdict"] is False
    assert doc["witnesses"][0]["point"] == "0"
    assert doc["clause"]


def test_precondition_failure_exit_one(capsys):
    code, _, err = run(capsys, "construct-min-cusco", FIXTURES / "example2_2.sv", "f")
    assert code == 1 and "subcontinuity" in err


def test_input_errors_exit_two(capsys, tmp_path):
    assert run(capsys, "check-qc", tmp_path / "missing.sv", "f")[0] == 2
    assert run(capsys, "check-qc", write(tmp_path, ""), "f")[0] == 2
    assert run(capsys, "check-qc", FIXTURES / "example2_1.sv", "nope")[0] == 2
    assert run(capsys, "check-usco", FIXTURES / "example2_1.sv", "f")[0] == 2
    assert run(capsys, "bogus-command")[0] == 2


def test_diagnostic_carries_line(capsys, tmp_path):
    path = write(tmp_path, "function f\n  breaks 0 -1\n  piece affine 0 0\n  at 0 = 0\n  at -1 = 0\nend\n")
    code, _, err = run(capsys, "check-qc", path, "f")
    assert code == 2 and f"{path}:2:" in err


def test_subdiff_and_minimality(capsys):
    code, out, _ = run(capsys, "subdiff", FIXTURES / "abs.sv", "abs")
    assert code == 0 and "at 0 = [-1, 1]" in out
    assert run(capsys, "check-min-cusco", FIXTURES / "abs.sv", "abs")[0] == 0


def test_construct_output_parses_back(capsys):
    code, out, _ = run(capsys, "construct-min-cusco", FIXTURES / "example2_1.sv", "f")
    assert code == 1  # jump value 0 is not a limit
    code, out, _ = run(capsys, "within-min-cusco", FIXTURES / "const_map.sv", "F", "--variant", "sup", "--as", "G")
    assert code == 0
    G = parse_spec(out).entities["G"]
    assert is_minimal_cusco(G).holds


def test_oracle_agree_command(capsys):
    code, out, _ = run(capsys, "oracle-agree", FIXTURES / "example2_1.sv", "--depth", "10")
    assert code == 0 and "DISAGREE" not in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cusco", "csc", str(FIXTURES / "example2_2.sv"), "f", "--at", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "[0, +inf)"


def _entity(rng):
    kind = rng.randrange(5)
    if kind == 0:
        return corpus.pwfun(rng)
    if kind == 1:
        return corpus.usco_map(rng)
    if kind == 2:
        return corpus.convex_map(rng)
    if kind == 3:
        return corpus.curve2(rng)
    return corpus.convex_pwaffine(rng)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**6))
def test_roundtrip(seed):
    ent = _entity(random.Random(seed))
    assert parse_spec(serialize("e", ent)).entities["e"] == ent


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(seed=st.integers(0, 10**6))
def test_exit_code_contract(seed, tmp_path, capsys):
    rng = random.Random(seed)
    f = corpus.pwfun(rng)
    M = corpus.convex_map(rng)
    path = write(tmp_path, serialize("f", f) + serialize("M", M))
    cases = [("check-qc", "f", is_quasicontinuous(f).holds),
             ("check-hpmin", "f", is_hyperplane_minimal(f).holds),
             ("check-usco", "M", is_usco(M).holds),
             ("check-min-cusco", "M", is_minimal_cusco(M).holds)]
    for command, name, holds in cases:
        code, _, _ = run(capsys, command, path, name)
        assert code == (0 if holds else 1)


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(seed=st.integers(0, 10**6))
def test_sampled_minimal_cusco_rows(seed, tmp_path, capsys):
    f = corpus.qc_subcontinuous(random.Random(seed))
    path = write(tmp_path, serialize("f", f))
    code, out, _ = run(capsys, "construct-min-cusco", path, "f", "--as", "F")
    assert code == 0
    path = write(tmp_path, out, "cusco.sv")
    code, out, _ = run(capsys, "sample", path, "F", "--step", "1/8")
    breaks = {str(t) for t in graph_closure(f).breakpoints}
    for row in out.splitlines():
        x, lo, hi = row.split(",")
        assert Fraction(lo) <= Fraction(hi)
        if str(Fraction(x)) not in breaks:
            assert lo == hi
