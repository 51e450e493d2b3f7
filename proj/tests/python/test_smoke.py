import pytest

gforge = pytest.importorskip("gforge")


def test_version():
    assert gforge.version() == gforge.__version__


def test_builtin_roundtrip():
    text = gforge.builtin_text("s")
    assert gforge.generators(text) == ["a", "t"]
    assert gforge.num_relators(text) == 1


def test_wp_two_generator_system():
    s = gforge.builtin_text("s")
    witness = gforge.distinguished("s")["c"]
    status, engine, _ = gforge.wp(s, witness)
    assert status == "non-trivial"
    assert engine == "britton"
    assert gforge.is_trivial(s, "t a^2 t^-1 a^-3")
    assert not gforge.is_trivial(s, witness)


def test_h1():
    rank, torsion, pretty = gforge.h1(gforge.builtin_text("q"))
    assert rank == 0 and torsion == []
    assert pretty == "trivial"
    rank, torsion, _ = gforge.h1(gforge.builtin_text("lambda"))
    assert rank == 5 and torsion == []


def test_quotients_and_zn():
    s = gforge.builtin_text("s")
    sweep = gforge.quotients(s, degree=3)
    assert sweep["nontrivial"] > 0
    predicted, brute, ran = gforge.zn_count(s, 2)
    assert ran and predicted == brute == 2


def test_smallcanc_on_commuting_square():
    pres = "gens: x y\nrel: x y x^-1 y^-1\n"
    rep = gforge.smallcanc(pres)
    assert not rep["pass"]  # a square has long pieces


def test_witness_levels():
    dies, lands = gforge.witness_check(0, 1)
    assert dies and lands


def test_nielsen_merge_is_fast():
    rep = gforge.nielsen_disjoint([0, 1], depth=2, max_states=100000)
    assert not rep["budget_exceeded"]
    assert rep["disjoint"]


def test_pipeline_stage_zero():
    stages = gforge.pipeline("B", n_max=0)
    assert len(stages) == 1
    st = stages[0]
    assert st["ok"], st["error"]
    assert "->" in st["embedding"]
