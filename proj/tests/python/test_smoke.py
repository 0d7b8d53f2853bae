# Smoke tests for the python bindings: one touch per exposed operation,
# pinned against the same frozen outputs the C++ tests use.
import pytest

import foil

STRUCTURE = """structure a
universe 3
rel R 2
0 2
1 2
end
"""

SCHEME = """scheme sym1 from R:2 to D:2,P:3,Pbar:3 params p k 1
dom: D(x,p)
rel R: P(x1,x2,p)
corel R: Pbar(x1,x2,p)
correctness: forall a. (D(a,p) -> P(a,a,p))
end
"""


def test_parse_canonical():
    assert foil.parse("R(x,y)&R(y,x)->R(x,x)") == "((R(x,y) & R(y,x)) -> R(x,x))"


def test_classify():
    assert foil.classify("exists x. forall y. (R(x,y) | !R(y,x))") == "Sigma 2"
    assert foil.classify("R(x,y)") == "Both 0"


def test_prenex_is_classified_consistently():
    text = "!(forall x. exists y. R(x,y))"
    assert foil.classify(foil.prenex(text)) == foil.classify(text)


def test_parse_error():
    with pytest.raises(foil.FormulaParseError):
        foil.parse("exists x.")


def test_translate_worked_example():
    rep = foil.translate(SCHEME, "exists x. forall y. (R(x,y) | !R(y,x))")
    assert rep["input_class"] == "Sigma 2"
    assert rep["tilde"] == (
        "exists x. (D(x,p) & (forall y. (D(y,p) -> "
        "(!Pbar(x,y,p) | !P(y,x,p)))))"
    )
    assert rep["tilde_class"] == "Sigma 2"


def test_transfer_report():
    rep = foil.transfer_report(SCHEME, "exists x. forall y. (R(x,y) | !R(y,x))")
    assert rep["F_class"] == "Pi 3"
    assert rep["bound"] == "Pi 3"
    assert rep["within_bound"] is True
    assert rep["hypotheses_met"] is False


def test_eval():
    assert foil.eval(STRUCTURE, "exists x. exists y. R(x,y)") is True
    assert foil.eval(STRUCTURE, "forall x. exists y. R(x,y)") is False
    assert foil.eval(STRUCTURE, "R(x,y)", {"x": 0, "y": 2}) is True


def test_graph_round_trip():
    poset = foil.encode_graph("graph 2\nedge 0 1\nend\n")
    assert "universe 7" in poset
    assert foil.check_correctness("fpo", poset) is True
    decoded = foil.decode("fpo", poset)
    assert "universe 2" in decoded
    assert "0 1" in decoded and "1 0" in decoded


def test_vn_fragment_decode():
    frag = foil.vn_fragment(1)
    assert "universe 43" in frag
    decoded = foil.decode("vn", frag)
    assert "universe 2" in decoded
    assert "rel Plus 3" in decoded


def test_fv_decompose_frozen():
    dec = foil.fv_decompose("!P(y)", 1)
    assert dec["components"] == 2
    assert dec["clauses"] == [["!P(y)", "true"], ["true", "!P(y)"]]


def test_fv_verify_and_budget():
    assert foil.fv_verify("forall x. exists y. R(x,y)", 1, STRUCTURE) is True
    big = "structure b\nuniverse 4\nrel R 2\n0 1\nend\n"
    with pytest.raises(foil.FoilBudgetError):
        foil.fv_verify("exists x. R(x,x)", 1, big)


def test_suites_pass():
    assert set(foil.suite_names()) == {"formula", "models", "scheme", "codings", "fv"}
    rows = foil.check_suite("formula")
    assert rows and all(r["pass"] for r in rows)


def test_cli_in_process():
    code, out, err = foil.run_cli(["classify", "--formula", "exists x. P(x)"])
    assert (code, out, err) == (0, "Sigma 1\n", "")
    code, _, err = foil.run_cli(["frobnicate"])
    assert code == 2 and err
