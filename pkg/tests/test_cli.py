import os

import pytest

from plumblat import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze(capsys):
    code, out, _ = run(capsys, "analyze", "3; 2,2; 2; 2")
    assert code == 0
    assert "I = -4" in out
    assert "h1_order = 16" in out
    assert "in_wp = yes" in out
    assert "negative_definite = yes" in out
    assert "link_components = 2" in out
    assert "seifert = (-3; (3,2),(2,1),(2,1))" in out


def test_analyze_matches_library(capsys):
    from plumblat.plumbing import PlumbingGraph, determinant, quantity_I

    g = PlumbingGraph.from_text("4; 3; 3; 3")
    code, out, _ = run(capsys, "analyze", "4; 3; 3; 3")
    assert code == 0
    assert "I = %d" % quantity_I(g) in out
    assert "det = %d" % determinant(g) in out


def test_embed_found(capsys):
    code, out, _ = run(capsys, "embed", "3; 2,2; 2; 2")
    assert code == 0
    assert "embeddable = yes" in out
    vector_lines = [ln for ln in out.splitlines() if ln and ln[0] in "-0123456789"]
    assert len(vector_lines) == 5


def test_embed_not_embeddable(capsys):
    code, out, _ = run(capsys, "embed", "2")
    assert code == 1
    assert "NOT-EMBEDDABLE" in out


def test_embed_budget(capsys):
    code, out, _ = run(capsys, "embed", "3; 2,2,2; 2,2; 2", "--nodes", "2")
    assert code == 3
    assert "BUDGET" in out


def test_complement(capsys):
    code, out, _ = run(capsys, "complement", "3,2,4")
    assert code == 0
    assert out.splitlines()[0] == "2,4,2,2"


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "3; 2,2; 2; 2")
    assert code == 0
    assert "thm_cl:-4.1" in out
    code, out, _ = run(capsys, "classify", "4; 3; 3; 3")
    assert code == 1
    assert "family = none" in out


def test_collapse(capsys):
    code, out, _ = run(capsys, "collapse", "3,2,4", "2,4,2,2")
    assert code == 0
    assert "collapsed in 7 steps" in out
    code, out, _ = run(capsys, "collapse", "3", "3")
    assert code == 1
    assert "stuck" in out


def test_ribbon_check(capsys):
    code, out, _ = run(capsys, "ribbon-check", "3; 2,2; 2; 2")
    assert code == 0
    assert "lens_string = 2,2,2" in out
    assert "in_linear_lists = yes" in out


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "4")
    assert code == 0
    assert "count = 3" in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--n-max", "4")
    assert code == 0
    assert "failures = 0" in out


def test_verify_cache(capsys, tmp_path):
    cache = os.path.join(tmp_path, "cache.tsv")
    code, _, _ = run(capsys, "verify", "--n-max", "4", "--cache", cache)
    assert code == 0
    assert os.path.exists(cache)
    # second run reuses the ledger
    code, out, _ = run(capsys, "verify", "--n-max", "4", "--cache", cache)
    assert code == 0


def test_families_cmd(capsys):
    code, out, _ = run(capsys, "families", "--max-n", "6")
    assert code == 0
    assert "failures = 0" in out


def test_parse_error(capsys):
    code, _, err = run(capsys, "analyze", "3; 2,x; 2; 2")
    assert code == 2
    assert "error" in err
    code, _, _ = run(capsys, "nonsense")
    assert code == 2


def test_figures(capsys, tmp_path):
    figdir = os.path.join(tmp_path, "figs")
    code, out, _ = run(capsys, "analyze", "3; 2,2; 2; 2", "--figures", figdir)
    assert code == 0
    assert os.path.exists(os.path.join(figdir, "graph.png"))
    code, out, _ = run(capsys, "complement", "3,2,4", "--figures", figdir)
    assert code == 0
    assert os.path.exists(os.path.join(figdir, "point_rule.png"))
    code, out, _ = run(capsys, "verify", "--n-max", "4", "--figures", figdir)
    assert code == 0
    assert os.path.exists(os.path.join(figdir, "verify_n4.png"))
    code, out, _ = run(capsys, "families", "--max-n", "5", "--figures", figdir)
    assert code == 0
    assert os.path.exists(os.path.join(figdir, "families.png"))
