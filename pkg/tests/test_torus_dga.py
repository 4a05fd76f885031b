import pytest

from legdga import corpus
from legdga.dga_core import NCPoly, augmentation_ideal, change_lambda_basis
from legdga.laurent import GF2, parse_laurent
from legdga.random_diagrams import random_exact_curves
from legdga.torus_dga import ModeError, build_spun_dga, grade_torus, hat, rebase_lambda, twisted_lift


def test_gamma_cl_symmetric():
    d = corpus.torus_dga("gamma_cl")
    a = NCPoly.gen(d.ring, "a")
    assert d.differential["a"] == NCPoly.coeff(d.ring, parse_laurent("1 + lambda*(1 + mu)", GF2, d.ring.variables))
    assert d.differential[hat("a")] == a + a.conjugate((1, 0))


def test_gamma_ch_symmetric(gf5):
    d = corpus.torus_dga("gamma_ch")
    assert sorted(d.generators.values()) == [1, 2, 2, 3, 3, 4]
    assert not corpus.torus_dga("gamma_ch", gf5).d_squared_failures()


def test_unknot_plain():
    d = build_spun_dga(corpus.load("unknot1"), "plain")
    a = NCPoly.gen(d.ring, "a")
    assert d.differential["a"] == NCPoly.coeff(d.ring, parse_laurent("1 + lambda", GF2, d.ring.variables))
    assert d.differential[hat("a")] == a + a.conjugate((1, 0))


def test_grading_reports():
    assert grade_torus(corpus.load("gamma_cl")) == {
        "degrees": {"a": 1, "a_hat": 2}, "maslov_lambda": 0, "maslov_mu": 0, "tangent_winding": 0}
    ch = grade_torus(corpus.load("gamma_ch"))
    assert sorted(ch["degrees"].values()) == [1, 2, 2, 3, 3, 4] and ch["maslov_lambda"] == 0
    g = grade_torus(corpus.load("circle"))
    assert g["degrees"] == {} and g["maslov_lambda"] == 2


def test_mode_errors():
    with pytest.raises(ModeError):
        build_spun_dga(corpus.load("unknot1"), "symmetric")
    with pytest.raises(ModeError):
        build_spun_dga(corpus.load("gamma_cl"), "plain")


def test_twisted_lift_homotopy():
    d = corpus.torus_dga("gamma_ch")
    ring = d.ring
    mu = (1, 0)
    for w in (NCPoly.gen(ring, "a") * NCPoly.gen(ring, "c"),
              NCPoly.gen(ring, "b") * NCPoly.gen(ring, "a") * NCPoly.gen(ring, "a")):
        lhs = d.d(twisted_lift(w, d.generators)) + twisted_lift(d.d(w), d.generators)
        assert lhs == w - w.conjugate(mu)


def test_rebase_lambda_moves_ideal():
    d = corpus.torus_dga("gamma_cl")
    r = rebase_lambda(d, 2)
    assert not r.d_squared_failures()
    assert augmentation_ideal(r) == [change_lambda_basis(p, 2).normalize_unit() for p in augmentation_ideal(d)]


@pytest.mark.parametrize("seed", range(4))
def test_random_plain_spun_d_squared(seed, qq):
    for c in random_exact_curves(25, seed=300 + seed, offset=20):
        for field in (GF2, qq):
            d = build_spun_dga(c, "plain", field, verify=False)
            assert not d.d_squared_failures(), c.name
            assert not d.degree_failures(), c.name
