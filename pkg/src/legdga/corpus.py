"""Bundled curves, potentials and the two hand-built elimination fixtures."""

from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path

from .curve_geometry import PlanarCurve, load_curve, quotient_symmetric
from .dga_core import DGA, CoefficientRing, NCPoly
from .laurent import GF2, Field, LaurentPoly, parse_laurent
from .torus_dga import LAMBDA, MU, build_spun_dga

CORPUS_DIR = Path(__file__).resolve().parent / "corpus"
TORI = ("gamma_cl", "gamma_ch")
POTENTIAL_SCHEMA = "legdga-potential/1"


def corpus_path(name: str) -> Path:
    path = CORPUS_DIR / (name if name.endswith(".json") else name + ".json")
    if not path.is_file():
        raise FileNotFoundError(f"no corpus entry {name!r}")
    return path


def load(name: str) -> PlanarCurve:
    return load_curve(corpus_path(name))


def load_potential(source: str | Path | dict, field: Field = GF2) -> LaurentPoly:
    if isinstance(source, dict):
        doc = source
    else:
        path = Path(source)
        if not path.is_file():
            path = corpus_path(str(source))
        doc = json.loads(path.read_text())
    if doc.get("schema") != POTENTIAL_SCHEMA:
        raise ValueError(f"potential schema must be {POTENTIAL_SCHEMA!r}")
    return parse_laurent(doc["laurent"], field, tuple(doc["variables"]))


@lru_cache(maxsize=None)
def _torus(name: str, tag: str, signs: str) -> DGA:
    quotient, _ = quotient_symmetric(load(name + "_tilde"))
    return build_spun_dga(quotient, "symmetric", Field.parse(tag), signs)


def torus_dga(name: str, field: Field = GF2, signs: str = "positive") -> DGA:
    """Symmetric spun DGA of a corpus torus, built from the quotient of its double cover."""
    if name not in TORI:
        raise KeyError(f"unknown torus {name!r}")
    return _torus(name, field.tag, signs)


def _ring(field: Field) -> CoefficientRing:
    return CoefficientRing(field, (MU, LAMBDA), (0, 0))


def elimination_fixture(which: int, field: Field) -> DGA:
    """Small DGAs with two degree-one and one degree-two generator.

    1: d a0 = 1 + lambda(1 + mu), d a1 = 0, d b = a1.
    2: d a0 = g, d a1 = f, d b = mu a1 + lambda a0, with g = 1 + lambda(1 + mu)
       and f = -lambda mu^-1 g forced by d^2 b = 0.
    """
    ring = _ring(field)
    g = parse_laurent("1 + lambda*(1 + mu)", field, ring.variables)
    a0, a1 = NCPoly.gen(ring, "a0"), NCPoly.gen(ring, "a1")
    gens = {"a0": 1, "a1": 1, "b": 2}
    if which == 1:
        diff = {"a0": NCPoly.coeff(ring, g), "a1": NCPoly.zero(ring), "b": a1}
    elif which == 2:
        f = -(ring.var(LAMBDA) * ring.var(MU, -1) * g)
        diff = {"a0": NCPoly.coeff(ring, g), "a1": NCPoly.coeff(ring, f),
                "b": NCPoly.coeff(ring, ring.var(MU)) * a1 + NCPoly.coeff(ring, ring.var(LAMBDA)) * a0}
    else:
        raise ValueError("fixtures are numbered 1 and 2")
    dga = DGA(ring, gens, diff, name=f"elimination_fixture_{which}")
    dga.verify_d_squared()
    return dga


def fixture_expectation(which: int, field: Field) -> LaurentPoly:
    """Hand-computed answer listed for each fixture: g for 1, g - lambda mu^-1 f for 2."""
    vs = (MU, LAMBDA)
    g = parse_laurent("1 + lambda*(1 + mu)", field, vs)
    if which == 1:
        return g
    lam_mu = parse_laurent("lambda*mu^-1", field, vs)
    f = -(lam_mu * g)
    return g - lam_mu * f
