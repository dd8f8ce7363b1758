import pytest

from gbs.cli import main
from conftest import AMALGAM, BS23, EXAMPLE_WORD


@pytest.fixture
def bs_path(tmp_path):
    p = tmp_path / "bs23.graph"
    p.write_text(BS23 + "\n")
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_ok(capsys, bs_path):
    code, out, _ = run(capsys, "validate", bs_path)
    assert code == 0 and out.strip() == "valid"


def test_validate_broken(capsys, tmp_path):
    p = tmp_path / "broken.graph"
    p.write_text("vertex a\nvertex b\nedge t a b 2 3 T\nedge T b a 3 9 t\n")
    code, out, _ = run(capsys, "validate", str(p))
    assert code == 3
    assert "alpha differs" in out


def test_wp_nontrivial_example(capsys, bs_path, tmp_path):
    w = tmp_path / "w.word"
    w.write_text(EXAMPLE_WORD + "\n")
    code, out, _ = run(capsys, "wp", bs_path, str(w))
    assert code == 1 and out.strip() == "nontrivial"


def test_wp_trivial_literal(capsys, bs_path):
    code, out, _ = run(capsys, "wp", "--literal", bs_path, "y a^2 Y a^-3")
    assert code == 0 and out.strip() == "trivial"


def test_wp_open_word_is_an_error(capsys, tmp_path):
    p = tmp_path / "g.graph"
    p.write_text(AMALGAM)
    code, _, err = run(capsys, "wp", "--literal", str(p), "t")
    assert code == 3 and "closed" in err


def test_wp_pi1_tree_edge(capsys, tmp_path):
    p = tmp_path / "g.graph"
    p.write_text(AMALGAM)
    code, out, _ = run(capsys, "wp", "--literal", "--pi1", str(p), "t")
    assert code == 0 and out.strip() == "trivial"


def test_reduce_prints_normal_form(capsys, bs_path):
    code, out, _ = run(capsys, "reduce", "--literal", bs_path, EXAMPLE_WORD)
    assert code == 0 and out.strip() == "a^15"


def test_cyc_reduce(capsys, bs_path):
    code, out, _ = run(capsys, "cyc-reduce", "--literal", bs_path, "y a Y")
    assert code == 0 and out.strip() == "a^1"


def test_conj_yes_with_witness(capsys, bs_path):
    code, out, _ = run(
        capsys, "conj", "--literal", "--witness", bs_path, "a^2", "a^3"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "conjugate" and lines[1] == "y"


def test_conj_no(capsys, bs_path):
    code, out, _ = run(capsys, "conj", "--literal", bs_path, "y a", "Y a")
    assert code == 1 and out.strip() == "not-conjugate"


def test_conj_unknown_exit_code(capsys, tmp_path):
    p = tmp_path / "g.graph"
    p.write_text(
        "vertex a\n"
        "edge y a a 4 2 Y\nedge Y a a 2 4 y\n"
        "edge z a a 9 3 Z\nedge Z a a 3 9 z\n"
    )
    code, out, _ = run(capsys, "conj", "--literal", str(p), "a^6", "a^2")
    assert code == 2 and out.strip() == "unknown"


def test_monoid_congruent(capsys, tmp_path):
    pres = tmp_path / "p.mon"
    pres.write_text("dim 2\nrel 1,0 ~ 0,1\n")
    code, out, _ = run(capsys, "monoid", "congruent", str(pres), "1,1", "0,2")
    assert code == 0 and out.strip() == "congruent"
    code, out, _ = run(capsys, "monoid", "congruent", str(pres), "0,0", "1,0")
    assert code == 1 and out.strip() == "not-congruent"


def test_monoid_congruent_unknown(capsys, tmp_path):
    pres = tmp_path / "p.mon"
    pres.write_text("dim 2\nrel 2,0 ~ 1,0\nrel 0,2 ~ 0,1\n")
    code, out, _ = run(
        capsys, "monoid", "congruent", str(pres), "1,1", "1,0", "--bound", "30"
    )
    assert code == 2 and out.strip() == "unknown"


def test_convert_emits_parseable_graph(capsys, tmp_path):
    from gbs import graphs

    pres = tmp_path / "p.mon"
    pres.write_text("dim 2\nrel 2,0 ~ 0,1\n")
    code, out, _ = run(capsys, "convert", "monoid-to-gbs", str(pres), "2,0", "0,1")
    assert code == 0
    graph = graphs.parse_graph(out)
    assert graph.edge("y0").alpha == 4 and graph.edge("y0").beta == 3
    queries = [l for l in out.splitlines() if l.startswith("# query")]
    assert queries == ["# query-v: a^4", "# query-w: a^3"]


def test_missing_file_is_exit_3(capsys):
    code, _, err = run(capsys, "wp", "/nonexistent.graph", "a")
    assert code == 3 and "error" in err


def test_usage_error_is_exit_3(capsys):
    code, _, err = run(capsys, "wp")
    assert code == 3 and "usage" in err


def test_bench_deterministic_and_green(capsys):
    code1, out1, err1 = run(capsys, "bench", "--seed", "1", "--count", "25")
    code2, out2, err2 = run(capsys, "bench", "--seed", "1", "--count", "25")
    assert code1 == code2 == 0
    assert out1 == out2
    assert "25/25" in out1
    assert "timing" in err1 and "timing" not in out1


def test_bench_count_zero(capsys):
    code, out, _ = run(capsys, "bench", "--seed", "9", "--count", "0")
    assert code == 0
    assert "instances: 0" in out
