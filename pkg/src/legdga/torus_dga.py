"""DGAs of S^1-spun and symmetric S^1-spun Legendrian tori over F[mu^{+-1}, lambda^{+-1}]."""

from __future__ import annotations

from .curve_geometry import CurveError, PlanarCurve, analyze
from .dga_core import DGA, CoefficientRing, DGAError, DSquaredError, NCPoly, Word
from .knot_dga import (
    _require_exact,
    coefficient_degree,
    enumerate_polygons,
    grade_crossings,
    polygon_sign,
    polygon_word,
)
from .laurent import GF2, Field

MU, LAMBDA = "mu", "lambda"
MODES = ("plain", "symmetric")
HAT = "_hat"


class ModeError(CurveError):
    """The curve's markers do not fit the requested construction."""


def hat(label: str) -> str:
    return label + HAT


def twisted_lift(p: NCPoly, gens: dict[str, int]) -> NCPoly:
    """D(p): replace one letter y by its hat, conjugate the remainder by mu.

    D(xy) = D(x) mu y mu^-1 + (-1)^|x| x D(y), so that dD + Dd is x -> x - mu x mu^-1.
    """
    ring = p.ring
    mu = tuple(int(v == MU) for v in ring.variables)
    neg = tuple(-x for x in mu)
    acc: dict[Word, object] = {}
    for w, c in p.terms.items():
        deg = ring.exp_degree(w[0])
        for j in range(1, len(w), 2):
            g = w[j]
            sign = -1 if deg % 2 else 1
            head = w[:j]
            tail = list(w[j + 1:])
            tail[0] = tuple(a + b for a, b in zip(tail[0], mu))
            tail[-1] = tuple(a + b for a, b in zip(tail[-1], neg))
            key = head + (hat(g),) + tuple(tail)
            acc[key] = acc.get(key, 0) + sign * c
            deg += gens[g] + ring.exp_degree(w[j + 1])
    return NCPoly(ring, acc)


def torus_ring(curve: PlanarCurve, field: Field) -> CoefficientRing:
    return CoefficientRing(field, (MU, LAMBDA), (0, coefficient_degree(curve)))


def grade_torus(curve: PlanarCurve) -> dict:
    an = analyze(curve)
    degrees = {}
    for g in grade_crossings(curve):
        degrees[g.label] = g.degree
        degrees[hat(g.label)] = g.degree + 1
    return {
        "degrees": degrees,
        "maslov_lambda": 2 * an.tangent_winding,
        "maslov_mu": 0,
        "tangent_winding": an.tangent_winding,
    }


def build_spun_dga(curve: PlanarCurve, mode: str = "symmetric", field: Field = GF2,
                   signs: str = "positive", verify: bool = True) -> DGA:
    """Chekanov-Eliashberg algebra of the (symmetric) spun torus of a quotient curve."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    an = analyze(curve)
    if mode == "symmetric" and not curve.cone_markers:
        raise ModeError("symmetric mode needs cone markers")
    if mode == "plain":
        if curve.cone_markers:
            raise ModeError("plain mode does not accept cone markers")
        if an.origin_face != an.unbounded_face:
            raise ModeError("plain mode needs the origin in the unbounded face")
    if curve.basepoint is None:
        raise ModeError("torus DGA needs a basepoint for lambda")
    _require_exact(an)
    ring = torus_ring(curve, field)
    cone = ring.one() + ring.var(MU)
    graded = grade_crossings(curve)
    gens: dict[str, int] = {}
    for g in graded:
        gens[g.label] = g.degree
        gens[hat(g.label)] = g.degree + 1
    diff: dict[str, NCPoly] = {}
    polygons = {}
    for g in graded:
        total = NCPoly.zero(ring)
        found = enumerate_polygons(curve, g.crossing)
        polygons[g.label] = found
        for poly in found:
            total = total + polygon_word(ring, poly, LAMBDA, cone).scale(polygon_sign(poly, field, signs))
        diff[g.label] = total
    mu = tuple(int(v == MU) for v in ring.variables)
    for g in graded:
        x = NCPoly.gen(ring, g.label)
        diff[hat(g.label)] = x - x.conjugate(mu) - twisted_lift(diff[g.label], gens)
    warnings = []
    if any(p.negatives and any(p.marker_passages) for ps in polygons.values() for p in ps):
        warnings.append("cone factors interleave with negative corners; insertion order is a convention")
    if field.p != 2:
        warnings.append(f"signs outside characteristic two use the {signs!r} table")
    dga = DGA(ring, gens, diff, name=curve.name, metadata={
        "mode": mode,
        "tangent_winding": an.tangent_winding,
        "maslov_lambda": 2 * an.tangent_winding,
        "maslov_mu": 0,
        "signs": signs if field.p != 2 else "mod2",
        "warnings": warnings,
    })
    if verify:
        dga.verify_degrees()
        try:
            dga.verify_d_squared()
        except DSquaredError as exc:
            raise DSquaredError(f"{curve.name}: {exc}") from exc
    return dga


def rebase_lambda(dga: DGA, k: int) -> DGA:
    """Apply the coefficient change lambda -> lambda * mu^k to every word."""
    ring = dga.ring
    if ring.variables != (MU, LAMBDA):
        raise DGAError("needs the (mu, lambda) ring")

    def fn(e):
        return 1, (e[0] + k * e[1], e[1])

    diff = {g: p.map_coefficients(ring, fn) for g, p in dga.differential.items()}
    return DGA(ring, dict(dga.generators), diff, dga.name, dict(dga.metadata))
