import pytest

from rwlab.cli import main
from rwlab.core import pretty_print
from rwlab.casestudy import preset


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_reduce_from_file(tmp_path, capsys):
    pres = tmp_path / "q.pres"
    pres.write_text(pretty_print(preset("Q")))
    code, out, _ = run_cli(capsys, "reduce", "-p", str(pres), "-w", "a h b")
    assert code == 0
    assert out.strip() == "h b a"


def test_reduce_preset_and_trace(capsys):
    code, out, _ = run_cli(capsys, "reduce", "--preset", "Qbar", "-w", "a h b a", "--trace")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "h b a a"
    assert "--K_a@0-->" in lines[0]


def test_phi_verb(capsys):
    code, out, _ = run_cli(capsys, "phi", "--circuit", "CT4", "--eps", "+1", "--delta", "+1")
    assert code == 0
    assert out.strip() == "+ a b - b a"


def test_partial_verb(capsys):
    code, out, _ = run_cli(capsys, "partial", "-w", "a' b a")
    assert code == 0
    assert out.strip() == "+ b a - ε"


def test_nf_verb(capsys):
    code, out, _ = run_cli(capsys, "nf", "--preset", "Qbar", "--max-len", "1")
    assert code == 0
    assert out.splitlines()[0] == "ε"
    assert len(out.splitlines()) == 6


def test_equal_verb(capsys):
    code, out, _ = run_cli(capsys, "equal", "--preset", "Qbar", "h a b", "h b a")
    assert (code, out.strip()) == (0, "true")
    code, out, _ = run_cli(capsys, "equal", "--preset", "Qbar", "a b", "b a")
    assert (code, out.strip()) == (0, "false")


def test_confluence_exit_codes(capsys):
    code, out, _ = run_cli(capsys, "confluence", "--preset", "Q")
    assert code == 1
    assert "UNRESOLVED" in out
    code, out, _ = run_cli(capsys, "confluence", "--preset", "P")
    assert code == 0
    assert out.strip().splitlines()[-1] == "confluent: true"


def test_complete_verb(capsys):
    code, out, _ = run_cli(capsys, "complete", "--preset", "Q", "--max-rules", "5", "--max-lhs-len", "6")
    assert code == 0
    assert "status: bounded-out" in out


def test_classify_and_sigma(capsys):
    code, out, _ = run_cli(capsys, "classify", "-w", "h a h")
    assert (code, out.strip()) == (0, "Zero")
    code, out, _ = run_cli(capsys, "sigma", "a b", "b a")
    assert (code, out.strip()) == (0, "true")


def test_ball_and_dist(capsys):
    code, out, _ = run_cli(capsys, "ball", "--radius", "1")
    assert code == 0
    assert out.splitlines()[0] == "0\tε"
    code, out, _ = run_cli(capsys, "dist", "--preset", "M4", "h h", "ε", "--radius", "4")
    assert code == 0
    assert "unreachable within radius 4" in out


def test_isometry_verb(capsys):
    code, out, _ = run_cli(capsys, "isometry", "--preset", "M4", "--preset2", "N4", "--radius", "2")
    assert code == 0
    code, out, _ = run_cli(capsys, "isometry", "--preset", "Q", "--preset2", "P", "--radius", "2")
    assert code == 1
    assert "FAIL" in out


def test_hn_verb(capsys):
    code, out, _ = run_cli(capsys, "hn", "-w", "b b a")
    assert (code, out.strip()) == (0, "false")
    code, out, _ = run_cli(capsys, "hn", "-w", "a b a' b'")
    assert (code, out.strip()) == (0, "true")


def test_peaks_verb(capsys):
    code, out, _ = run_cli(capsys, "peaks", "--preset", "P")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 4
    assert all(line.startswith("peak ") for line in lines)
    assert "peak a a' a [I_a,I_a']" in lines


def test_machine_mode_scalars(capsys):
    code, out, _ = run_cli(capsys, "reduce", "--preset", "Qbar", "-w", "a h b", "--machine")
    assert (code, out.strip()) == (0, "nf=h b a")
    code, out, _ = run_cli(capsys, "equal", "--preset", "Qbar", "h a b", "h b a", "--machine")
    assert (code, out.strip()) == (0, "equal=true")
    code, out, _ = run_cli(capsys, "dist", "--preset", "M4", "h h", "ε", "--radius", "2", "--machine")
    assert (code, out.strip()) == (0, "dist=unreachable")


def test_witness_verb(capsys):
    code, out, _ = run_cli(
        capsys, "witness", "--kind", "phi2x", "--circuit", "CT6", "--x", "a"
    )
    assert code == 0
    assert out.strip().splitlines()[-1] == "verified: true"


def test_verify_verb_and_machine_mode(capsys):
    code, out, _ = run_cli(capsys, "verify", "figure2", "--max-len", "1", "--jobs", "2")
    assert code == 0
    assert out.strip().splitlines()[-1].startswith("summary: ")
    code, out, _ = run_cli(capsys, "verify", "figure2", "--max-len", "0", "--machine")
    assert code == 0
    assert all("\t" in line or line.startswith("summary=") for line in out.strip().splitlines())


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["not-a-verb"])
    assert exc.value.code == 2
    code, _, err = run_cli(capsys, "reduce", "-p", "/nonexistent/file.pres", "-w", "a")
    assert code == 2
    assert "cannot read" in err


def test_parse_error_reported(tmp_path, capsys):
    bad = tmp_path / "bad.pres"
    bad.write_text("letters a\nrule R : a c -> a\n")
    code, _, err = run_cli(capsys, "reduce", "-p", str(bad), "-w", "a")
    assert code == 2
    assert "line 2" in err


def test_output_is_deterministic(capsys):
    code1, out1, _ = run_cli(capsys, "verify", "identities", "--max-len", "2")
    code2, out2, _ = run_cli(capsys, "verify", "identities", "--max-len", "2")
    assert (code1, out1) == (code2, out2)
