import json
from fractions import Fraction as F

import pytest

from quantip import serialize
from quantip.cli import main
from quantip.geometry import Box, HPolytope, LinearInequality, VPolytope, bound_rows
from quantip.gsa import GsaInstance
from quantip.reductions import (
    Literal,
    Q3SatInstance,
    QuantBlock,
    QuantSentence,
    count_gsa_to_projection,
    gsa_to_three_quantifiers,
    gsa_to_two_quantifiers,
)


def rt(obj, to_json, from_json):
    return from_json(serialize.loads(serialize.dumps(to_json(obj))))


def test_fraction_and_int_round_trip():
    assert serialize.frac_from_json(serialize.frac_to_json(F(-7, 3))) == F(-7, 3)
    big = 10**40 + 1
    assert serialize.int_from_json(serialize.int_to_json(big)) == big
    payload = serialize.frac_to_json(F(10**30, 7))
    assert payload == {"num": str(10**30), "den": "7"}
    assert isinstance(payload["num"], str) and isinstance(payload["den"], str)


def test_domain_round_trips():
    box = Box((-1, 0), (4, 7))
    assert rt(box, serialize.box_to_json, serialize.box_from_json) == box

    h = HPolytope(2, bound_rows(2, 0, lo=0, hi=3) + [LinearInequality((2, -3), 5)])
    assert rt(h, serialize.hpoly_to_json, serialize.hpoly_from_json) == h

    v = VPolytope(2, [(F(1, 3), F(2)), (F(0), F(0))])
    assert rt(v, serialize.vpoly_to_json, serialize.vpoly_from_json) == v

    inst = GsaInstance((F(1, 3), F(5, 8)), 12, F(1, 4))
    assert rt(inst, serialize.gsa_to_json, serialize.gsa_from_json) == inst

    u = Literal(1, 2, True)
    q = Q3SatInstance(1, 2, ("exists",), ((u, u, Literal(1, 1, False)),))
    assert rt(q, serialize.q3sat_to_json, serialize.q3sat_from_json) == q

    proj = count_gsa_to_projection(GsaInstance((F(1, 2),), 2, F(1, 4)))
    back = rt(proj, serialize.projection_to_json, serialize.projection_from_json)
    assert back == proj

    form = gsa_to_two_quantifiers(GsaInstance((F(1, 2), F(1, 3)), 3, F(1, 4)))
    assert rt(form, serialize.two_quant_to_json, serialize.two_quant_from_json) == form


def test_sentence_round_trip_both_forms():
    s = gsa_to_three_quantifiers(GsaInstance((F(1, 3), F(2, 3)), 3, F(1, 3)))
    back = rt(s, serialize.sentence_to_json, serialize.sentence_from_json)
    assert back == s

    vform = QuantSentence(
        (QuantBlock("exists", Box((0,), (1,)), 1), QuantBlock("exists", Box((0,), (1,)), 1)),
        VPolytope(2, [(0, 0), (1, 1)]),
    )
    assert rt(vform, serialize.sentence_to_json, serialize.sentence_from_json) == vform


def test_dumps_is_canonical():
    inst = GsaInstance((F(1, 3),), 3, F(1, 3))
    a = serialize.dumps(serialize.gsa_to_json(inst))
    b = serialize.dumps(serialize.gsa_to_json(inst))
    assert a == b and a.endswith("\n")


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        serialize.from_json({"kind": "mystery"})


# --- CLI ---------------------------------------------------------------------


def test_cli_gen_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["gen", "gsa", "--d", "2", "--N", "10", "--den", "8",
                 "--seed", "7", "--out", str(a)]) == 0
    assert main(["gen", "gsa", "--d", "2", "--N", "10", "--den", "8",
                 "--seed", "7", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_cli_reduce_reproducible_and_verifiable(tmp_path, capsys):
    inst = tmp_path / "g.json"
    out1, out2 = tmp_path / "s1.json", tmp_path / "s2.json"
    assert main(["gen", "gsa", "--d", "2", "--N", "4", "--den", "6",
                 "--seed", "3", "--out", str(inst)]) == 0
    assert main(["reduce", "--target", "eae", "--in", str(inst), "--out", str(out1)]) == 0
    assert main(["reduce", "--target", "eae", "--in", str(inst), "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    payload = json.loads(out1.read_text())
    assert payload["provenance"]["target"] == "eae"
    assert payload["provenance"]["gadget"]["d"] == "2"
    assert main(["verify", "--target", "eae", "--in", str(inst)]) == 0


def test_cli_reduce_structure_matches_docs(tmp_path):
    inst = tmp_path / "g.json"
    inst.write_text(serialize.dumps(serialize.gsa_to_json(
        GsaInstance((F(1, 3),), 3, F(1, 3))
    )))
    out = tmp_path / "s.json"
    assert main(["reduce", "--target", "eae", "--in", str(inst), "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    # A lone target is padded to two chain points: blocks [1,3], [1,2]x[0,1], z^3.
    assert payload["blocks"][0] == {"q": "exists", "box": {"lo": ["1"], "hi": ["3"]}}
    assert payload["blocks"][1] == {
        "q": "forall", "box": {"lo": ["1", "0"], "hi": ["2", "1"]},
    }
    assert payload["blocks"][2] == {"q": "exists", "unbounded": "3"}
    assert payload["constraint"]["hrep"]["dim"] == "6"


def test_cli_q3sat_constraint_dimension(tmp_path):
    inst = tmp_path / "q.json"
    out = tmp_path / "s.json"
    assert main(["gen", "q3sat", "--k", "1", "--ell", "2", "--clauses", "2",
                 "--seed", "5", "--out", str(inst)]) == 0
    assert main(["reduce", "--target", "qsat", "--in", str(inst), "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["constraint"]["hrep"]["dim"] == "8"


def test_cli_decide_count(tmp_path, capsys):
    inst = tmp_path / "g.json"
    inst.write_text(serialize.dumps(serialize.gsa_to_json(
        GsaInstance((F(1, 3),), 3, F(1, 3))
    )))
    assert main(["decide", "--in", str(inst)]) == 0
    assert capsys.readouterr().out.strip() == "true"
    assert main(["count", "--in", str(inst)]) == 0
    assert capsys.readouterr().out.strip() == "3"


def test_cli_verify_all_targets(tmp_path):
    gsa = tmp_path / "g.json"
    gsa.write_text(serialize.dumps(serialize.gsa_to_json(
        GsaInstance((F(1, 2), F(1, 3)), 4, F(1, 4))
    )))
    for target in ("eae", "proj", "simplices", "two-quant"):
        assert main(["verify", "--target", target, "--in", str(gsa)]) == 0
    q3 = tmp_path / "q.json"
    u = Literal(1, 1, False)
    q3.write_text(serialize.dumps(serialize.q3sat_to_json(
        Q3SatInstance(1, 1, ("exists",), ((u, u, u),))
    )))
    assert main(["verify", "--target", "qsat", "--in", str(q3)]) == 0


def test_cli_export_native_json_round_trip(tmp_path):
    inst = tmp_path / "g.json"
    sent = tmp_path / "s.json"
    out = tmp_path / "exported.json"
    inst.write_text(serialize.dumps(serialize.gsa_to_json(
        GsaInstance((F(1, 2), F(1, 3)), 3, F(1, 4))
    )))
    assert main(["reduce", "--target", "eae", "--in", str(inst), "--out", str(sent)]) == 0
    assert main(["export", "--format", "native-json", "--in", str(sent), "--out", str(out)]) == 0
    original = json.loads(sent.read_text())
    original.pop("provenance")
    assert json.loads(out.read_text()) == original


def test_cli_export_smtlib(tmp_path):
    inst = tmp_path / "g.json"
    sent = tmp_path / "s.json"
    smt = tmp_path / "s.smt2"
    inst.write_text(serialize.dumps(serialize.gsa_to_json(
        GsaInstance((F(1, 2), F(1, 3)), 3, F(1, 4))
    )))
    assert main(["reduce", "--target", "eae", "--in", str(inst), "--out", str(sent)]) == 0
    assert main(["export", "--format", "smtlib2-lia", "--in", str(sent), "--out", str(smt)]) == 0
    text = smt.read_text()
    assert text.startswith("(set-logic LIA)")
    assert text.count("(") == text.count(")")
    assert "forall" in text and "exists" in text and "(check-sat)" in text


def test_cli_usage_errors(tmp_path):
    assert main(["nonsense"]) == 3
    assert main(["verify"]) == 3
    gsa = tmp_path / "g.json"
    gsa.write_text(serialize.dumps(serialize.gsa_to_json(
        GsaInstance((F(1, 2),), 3, F(1, 4))
    )))
    assert main(["reduce", "--target", "qsat", "--in", str(gsa),
                 "--out", str(tmp_path / "x.json")]) == 3


def test_cli_budget_exceeded_is_skip(tmp_path):
    gsa = tmp_path / "g.json"
    gsa.write_text(serialize.dumps(serialize.gsa_to_json(
        GsaInstance((F(1, 2), F(1, 3)), 30, F(1, 4))
    )))
    assert main(["verify", "--target", "eae", "--in", str(gsa), "--budget", "10"]) == 2


def test_cli_sweep_small():
    assert main(["verify", "--sweep", "small"]) == 0
