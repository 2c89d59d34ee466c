import json
import math
import pathlib
from fractions import Fraction

import pytest

import quivar

ROOT = pathlib.Path(__file__).resolve().parents[2]


def test_cyclotomic_arithmetic():
    i = quivar.CycNum("i")
    assert i * i == quivar.CycNum(-1)
    s3 = quivar.CycNum("sqrt3")
    assert s3 * s3 == quivar.CycNum(3)
    assert complex(quivar.CycNum("z24")) == pytest.approx(complex(math.cos(math.pi / 12), math.sin(math.pi / 12)))
    with pytest.raises(quivar.ParseError):
        quivar.CycNum("1 +")


def test_matrix_and_closure():
    h = quivar.Matrix("1/sqrt2 :: 1,1; 1,-1")
    assert h.is_unitary()
    assert h * h == quivar.Matrix("1,0;0,1")
    g = quivar.closure(["1/sqrt2 :: 1,1; 1,-1", "1,0; 0,i"])
    assert g.order == 192
    with pytest.raises(quivar.CapExceeded):
        quivar.closure([h, quivar.Matrix("1,0; 0,i")], cap=100)


def test_molien_matches_closed_form():
    cat = quivar.Catalog.builtin()
    u8 = cat.group("U8")
    assert u8.order == 96
    series = quivar.molien_series(u8, 24)
    assert series == [Fraction(c) for c in quivar.expand_closed_form("1 / (1-t^8)(1-t^12)", 24)]
    assert series[24] == 2


def test_reynolds_gives_W():
    cat = quivar.Catalog.builtin()
    basis = quivar.reynolds_basis(cat.group("U8"), 8)
    assert len(basis) == 1
    assert quivar.proportional(basis[0], cat.invariant("W")) is not None


def test_polynomials_and_relation():
    w = quivar.Poly("x1^8 + 14 x1^4 x2^4 + x2^8", 2)
    assert w.degree == 8 and len(w) == 3
    assert quivar.is_invariant(w, ["1,0; 0,i", "1/2 :: 1-i, i-1; 1+i, 1+i"])
    cat = quivar.Catalog.builtin()
    env = {k: cat.invariant(k) for k in ("T", "W", "kappa")}
    assert quivar.relation_holds("108 T^4 - W^3 + kappa^2", 2, env)


def test_geometry():
    r = 1 / math.sqrt(2)
    assert quivar.bloch_map(r, r) == pytest.approx([1, 0, 0])
    assert quivar.stereographic(0, 0, 1) is None
    assert quivar.stereographic(1, 0, 0) == pytest.approx(1)
    assert quivar.second_hopf(r, 0, 0, r) == pytest.approx([0, 0, 1, 0, 0], abs=1e-12)
    assert quivar.concurrence(r, 0, 0, r) == pytest.approx(1)
    with pytest.raises(quivar.NotNormalized):
        quivar.bloch_map(1, 1)


def test_claims_and_report():
    cat = quivar.Catalog.builtin()
    assert cat.schema_version == 1
    r = cat.run_claim("ORDER-CCNOT")
    assert r["status"] == "pass" and r["computed"] == "3072"
    assert cat.run_claim("MS-OCTA")["status"] == "discrepancy"
    with pytest.raises(quivar.UnknownName):
        cat.run_claim("NOPE")
    rs = cat.run_claims("REL-*", threads=2)
    assert [x["id"] for x in rs] == sorted(x["id"] for x in rs)

    text = cat.report("*-O*", threads=2, timestamp="2000-01-01T00:00:00Z")
    assert text == quivar.Catalog.builtin().report("*-O*", threads=1, timestamp="2000-01-01T00:00:00Z")
    rep = json.loads(text)
    jsonschema = pytest.importorskip("jsonschema")
    jsonschema.validate(rep, json.loads((ROOT / "data" / "report.schema.json").read_text()))
    assert rep["summary"]["total"] == len(rep["results"])
    assert quivar.glob_match("ORDER-*", "ORDER-CS")
