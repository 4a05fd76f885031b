"""Seeded generator of small exact generic diagrams for property checks."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterator

from .curve_geometry import CurveError, PlanarCurve, analyze, shoelace, validate_curve


def _make_exact(verts: list[tuple[Fraction, Fraction]], k: int):
    """Move vertex k perpendicular to its neighbours' chord so the signed area vanishes."""
    n = len(verts)
    area = shoelace(verts)
    a, b = verts[k - 1], verts[(k + 1) % n]
    u = (a[0] - b[0], a[1] - b[1])
    norm = u[0] * u[0] + u[1] * u[1]
    if norm == 0:
        return None
    s = -2 * area / norm
    out = list(verts)
    out[k] = (verts[k][0] - s * u[1], verts[k][1] + s * u[0])
    return out


def random_exact_curve(rng: random.Random, n_min: int = 5, n_max: int = 8, box: int = 6,
                       max_crossings: int = 5, offset: int = 0, name: str = "random") -> PlanarCurve | None:
    """One attempt; None when the sample is degenerate or has no crossings."""
    n = rng.randint(n_min, n_max)
    verts = [(Fraction(rng.randint(-box, box)), Fraction(rng.randint(-box, box))) for _ in range(n)]
    verts = _make_exact(verts, rng.randrange(n))
    if verts is None:
        return None
    shift = Fraction(offset) + Fraction(1, 7)
    verts = [(x + shift, y + Fraction(1, 11)) for x, y in verts]
    edge = rng.randrange(n)
    curve = PlanarCurve(tuple(verts), name=name, exact=True, basepoint=(edge, Fraction(1, 2)))
    try:
        validate_curve(curve)
        an = analyze(curve)
    except CurveError:
        return None
    if not 1 <= len(an.crossings) <= max_crossings or an.holonomy != 0:
        return None
    if any(c.action == 0 for c in an.crossings):
        return None
    if offset and an.origin_face != an.unbounded_face:
        return None
    return curve


def random_exact_curves(count: int, seed: int = 0, **kwargs) -> Iterator[PlanarCurve]:
    rng = random.Random(seed)
    made = 0
    tries = 0
    while made < count:
        tries += 1
        if tries > 200 * count:
            raise RuntimeError("random diagram generator is starved")
        c = random_exact_curve(rng, name=f"random-{seed}-{made}", **kwargs)
        if c is not None:
            made += 1
            yield c
