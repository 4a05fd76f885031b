"""Corpus acceptance suite shared by the test runner and ``legdga regress``."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from sympy import Matrix

from . import corpus
from .curve_geometry import action_profile, analyze, lift_double, quotient_symmetric
from .dga_core import (
    DGA,
    NCPoly,
    acyclicity_test,
    augmentation_ideal,
    augmentation_polynomial,
    bilinearised_lch,
    degree_zero_homology,
    ideals_equivalent,
    parse_monomial_map,
    solve_over,
    superpotential_check,
)
from .knot_dga import build_knot_dga, enumerate_polygons
from .laurent import GF2, Field, parse_laurent
from .prequant import bott_degree, cover_lattice, minimal_bs_index
from .random_diagrams import random_exact_curves
from .torus_dga import MU, build_spun_dga, hat

GF5 = Field.parse("fp:5")
QQ = Field.parse("q")
EXPECTED = {"gamma_cl": "1 + lambda*(1 + mu)", "gamma_ch": "1 + lambda*(1 + mu)^2"}
POTENTIALS = {"gamma_cl": "potential_cl", "gamma_ch": "potential_ch"}
SUBSTITUTIONS = {"gamma_cl": "mu=v,lambda=u^3*v", "gamma_ch": "mu=v,lambda=u^-3*v^-1"}
LEFSCHETZ_TOLERANCE = 1e-6
RANDOM_COUNT = 100


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] criterion {self.number}: {self.title} ({self.seconds:.2f}s) {self.detail}"

    def to_json(self) -> dict:
        return {"number": self.number, "title": self.title, "passed": self.passed,
                "detail": self.detail}


def _coeff(dga: DGA, text: str) -> NCPoly:
    return NCPoly.coeff(dga.ring, parse_laurent(text, dga.ring.field, dga.ring.variables))


def _hat_image(dga: DGA, label: str) -> NCPoly:
    mu = tuple(int(v == MU) for v in dga.ring.variables)
    x = NCPoly.gen(dga.ring, label)
    return x - x.conjugate(mu)


def criterion_1() -> tuple[bool, str]:
    dga = corpus.torus_dga("gamma_cl", GF2)
    gens_ok = dga.generators == {"a": 1, hat("a"): 2}
    da = dga.differential["a"] == _coeff(dga, EXPECTED["gamma_cl"])
    dah = dga.differential[hat("a")] == _hat_image(dga, "a")
    return gens_ok and da and dah, f"generators={dga.generators} d(a)={dga.differential['a']}"


def criterion_2() -> tuple[bool, str]:
    dga = corpus.torus_dga("gamma_ch", GF2)
    degs = sorted(dga.generators.values())
    da = dga.differential["a"] == _coeff(dga, EXPECTED["gamma_ch"])
    dah = dga.differential[hat("a")] == _hat_image(dga, "a")
    h0 = degree_zero_homology(dga)
    want = parse_laurent(EXPECTED["gamma_ch"], GF2, dga.ring.variables).normalize_unit()
    h0_ok = h0.generators == [want]
    ok = degs == [1, 2, 2, 3, 3, 4] and da and dah and h0_ok
    return ok, f"degrees={degs} d(a)={dga.differential['a']} H0={h0}"


def criterion_3() -> tuple[bool, str]:
    I = augmentation_ideal(corpus.torus_dga("gamma_cl", GF2))
    J = augmentation_ideal(corpus.torus_dga("gamma_ch", GF2))
    unit_equal = len(I) == len(J) and all(p.equal_up_to_unit(q) for p, q in zip(I, J))
    k = ideals_equivalent(I, J)
    return not unit_equal and k is None, f"up-to-unit equal={unit_equal} basis change k={k}"


def criterion_4() -> tuple[bool, str]:
    parts = []
    ok = True
    for name in corpus.TORI:
        dga = corpus.torus_dga(name, GF5)
        sols = solve_over(dga)
        diag_ok = all(bilinearised_lch(dga, e, e) == {1: 1, 2: 1} for e in sols)
        cross_ok = all(bilinearised_lch(dga, e0, e1) == {}
                       for e0, e1 in itertools.permutations(sols, 2))
        ok &= bool(sols) and diag_ok and cross_ok
        parts.append(f"{name}: {len(sols)} augmentations diag={diag_ok} crossed={cross_ok}")
    return ok, "; ".join(parts)


def criterion_5() -> tuple[bool, str]:
    parts = []
    ok = True
    for name in corpus.TORI:
        acyclic = acyclicity_test(corpus.torus_dga(name, GF2), {"mu": 1, "lambda": 1}).acyclic
        sols = solve_over(corpus.torus_dga(name, GF5))
        ok &= acyclic and bool(sols)
        parts.append(f"{name}: acyclic at 1={acyclic} GF5 augmentations={len(sols)}")
    return ok, "; ".join(parts)


def _elimination_matches(dga: DGA, want) -> tuple[int, int]:
    sols = solve_over(dga)
    good = sum(augmentation_polynomial(dga, e).polynomial.equal_up_to_unit(want) for e in sols)
    return good, len(sols)


def criterion_6() -> tuple[bool, str]:
    parts = []
    ok = True
    for name in corpus.TORI:
        dga = corpus.torus_dga(name, GF5)
        want = parse_laurent(EXPECTED[name], GF5, dga.ring.variables)
        good, total = _elimination_matches(dga, want)
        ok &= total > 0 and good == total
        parts.append(f"{name}: {good}/{total}")
    for which in (1, 2):
        dga = corpus.elimination_fixture(which, GF5)
        good, total = _elimination_matches(dga, corpus.fixture_expectation(which, GF5))
        ok &= total > 0 and good == total
        parts.append(f"fixture {which}: {good}/{total}")
    return ok, "; ".join(parts)


def torus_augpoly(name: str, field: Field = GF5):
    dga = corpus.torus_dga(name, field)
    return augmentation_polynomial(dga, solve_over(dga)[0]).polynomial


def criterion_7() -> tuple[bool, str]:
    polys = {n: torus_augpoly(n) for n in corpus.TORI}
    pots = {n: corpus.load_potential(POTENTIALS[n], GF5) for n in corpus.TORI}
    results = {}
    for aug, pot in itertools.product(corpus.TORI, repeat=2):
        p, P = polys[aug], pots[pot]
        if aug == pot:
            sub = parse_monomial_map(SUBSTITUTIONS[aug], p.variables, P.variables)
            results[(aug, pot)] = superpotential_check(p, P, sub).match
        else:
            results[(aug, pot)] = superpotential_check(p, P).match
    ok = all(m == (a == b) for (a, b), m in results.items())
    detail = " ".join(f"{a}/{b}={m}" for (a, b), m in sorted(results.items()))
    return ok, detail


def coset_count(residues: tuple[int, ...], k: int, basis) -> int:
    """Brute force: classes of the box {0..k-1}^n modulo the lattice spanned by ``basis``."""
    M = Matrix([list(r) for r in zip(*basis)])
    Minv = M.inv()
    pts = list(itertools.product(range(k), repeat=len(residues)))
    reps: list[tuple[int, ...]] = []
    for p in pts:
        for r in reps:
            y = Minv * Matrix([a - b for a, b in zip(p, r)])
            if all(v.is_integer for v in y):
                break
        else:
            reps.append(p)
    return len(reps)


def criterion_8() -> tuple[bool, str]:
    checks = {
        "bs(1/3,1/3)=3": minimal_bs_index((Fraction(1, 3), Fraction(1, 3))) == 3,
        "bs(1/2,1/2)=2": minimal_bs_index((Fraction(1, 2), Fraction(1, 2))) == 2,
        "bott(3,3,1)=1": bott_degree(3, 3, 1) == 1,
        "bott(2,2,1)=1": bott_degree(2, 2, 1) == 1,
    }
    for residues, k in [((1, 1), 3), ((1, 1), 2), ((0, 1), 1), ((2, 3), 5), ((1, 2, 3), 4)]:
        data = cover_lattice(residues, k)
        det = abs(Matrix([list(r) for r in zip(*data.kernel_basis)]).det())
        in_kernel = all(sum(r * x for r, x in zip(residues, c)) % k == 0 for c in data.kernel_basis)
        checks[f"lattice{residues}/{k}"] = det == k and in_kernel and coset_count(residues, k, data.kernel_basis) == k
    failed = [k for k, v in checks.items() if not v]
    return not failed, f"{len(checks) - len(failed)}/{len(checks)} checks" + (f" failed: {failed}" if failed else "")


def _dga_sound(dga: DGA) -> bool:
    return not dga.d_squared_failures() and not dga.degree_failures()


def _polygons_sound(curve) -> tuple[int, bool]:
    an = analyze(curve)
    actions = {c.label: c.action for c in an.crossings}
    area_of = {f.index: f.area for f in an.faces}
    count, ok = 0, True
    for c in an.crossings:
        for poly in enumerate_polygons(curve, c):
            count += 1
            gap = actions[poly.positive] - sum(actions[n] for n in poly.negatives)
            faces = sum((m * area_of[f] for f, m in poly.multiplicities), Fraction(0))
            ok &= poly.area == gap == faces and gap > 0
    return count, ok


def corpus_dgas() -> dict[str, DGA]:
    out = {}
    for name in corpus.TORI:
        for field in (GF2, GF5):
            out[f"{name}/{field.tag}"] = corpus.torus_dga(name, field)
    unknot = corpus.load("unknot1")
    out["unknot1/knot/f2"] = build_knot_dga(unknot, GF2, verify=False)
    for signs in ("positive", "bounding"):
        out[f"unknot1/knot/q/{signs}"] = build_knot_dga(unknot, QQ, signs, verify=False)
    out["unknot1/plain/f2"] = build_spun_dga(unknot, "plain", GF2, verify=False)
    for which in (1, 2):
        out[f"fixture{which}"] = corpus.elimination_fixture(which, GF5)
    return out


def criterion_9() -> tuple[bool, str]:
    notes = []
    bad = [k for k, d in corpus_dgas().items() if not _dga_sound(d)]
    notes.append(f"corpus DGAs unsound={bad}")
    ok = not bad
    knot = spun = 0
    for c in random_exact_curves(RANDOM_COUNT, seed=11):
        knot += _dga_sound(build_knot_dga(c, GF2, verify=False))
        knot_q = build_knot_dga(c, QQ, "bounding", verify=False)
        ok &= _dga_sound(knot_q)
    for c in random_exact_curves(RANDOM_COUNT, seed=12, offset=20):
        spun += _dga_sound(build_spun_dga(c, "plain", GF2, verify=False))
    ok &= knot == RANDOM_COUNT and spun == RANDOM_COUNT
    notes.append(f"random knot {knot}/{RANDOM_COUNT} plain-spun {spun}/{RANDOM_COUNT}")
    polys, areas_ok = 0, True
    curves = [corpus.load("unknot1")]
    curves += [quotient_symmetric(corpus.load(n + "_tilde"))[0] for n in corpus.TORI]
    curves += list(random_exact_curves(20, seed=13))
    for c in curves:
        n, good = _polygons_sound(c)
        polys += n
        areas_ok &= good
    ok &= areas_ok
    notes.append(f"area identity on {polys} polygons={areas_ok}")
    trips = True
    max_err = 0.0
    for name in ("gamma_cl_tilde", "gamma_ch_tilde", "circle"):
        t = corpus.load(name)
        q, _ = quotient_symmetric(t)
        lifted = lift_double(q, t.cover or "nontrivial", start=t.vertices[0])
        trips &= tuple(lifted[:t.n]) == t.vertices
        prof = action_profile(q, "lefschetz")
        max_err = max(max_err, prof.error_bound)
    ok &= trips and max_err <= LEFSCHETZ_TOLERANCE
    notes.append(f"round-trip={trips} lefschetz error={max_err:.1e}")
    return ok, "; ".join(notes)


CRITERIA: list[tuple[int, str, Callable[[], tuple[bool, str]]]] = [
    (1, "Clifford torus DGA", criterion_1),
    (2, "Chekanov torus DGA and H0", criterion_2),
    (3, "degree-zero ideals distinguish the tori", criterion_3),
    (4, "bilinearised LCH ranks over GF(5)", criterion_4),
    (5, "acyclic at mu=lambda=1, augmentable with Novikov coefficients", criterion_5),
    (6, "augmentation polynomial by elimination", criterion_6),
    (7, "superpotential fixtures", criterion_7),
    (8, "prequantisation arithmetic", criterion_8),
    (9, "property suites", criterion_9),
]


def run_criterion(number: int) -> CriterionResult:
    for n, title, fn in CRITERIA:
        if n == number:
            start = time.perf_counter()
            try:
                passed, detail = fn()
            except Exception as exc:  # a crash counts as a failure with its message
                passed, detail = False, f"{type(exc).__name__}: {exc}"
            return CriterionResult(n, title, bool(passed), detail, time.perf_counter() - start)
    raise KeyError(number)


def run_all() -> list[CriterionResult]:
    return [run_criterion(n) for n, _, _ in CRITERIA]
