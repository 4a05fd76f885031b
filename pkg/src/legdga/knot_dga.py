"""Gradings and immersed-polygon differentials for Lagrangian projections of Legendrian knots."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .curve_geometry import (
    Crossing,
    CurveAnalysis,
    CurveError,
    PlanarCurve,
    _turning_between,
    analyze,
    cross,
    next_left,
    turning_angle,
)
from .dga_core import DGA, CoefficientRing, DSquaredError, NCPoly
from .laurent import GF2, Field, LaurentPoly

HalfEdge = tuple[int, int]

SIGN_TABLES = ("positive", "bounding")
TURN_SLACK = 1e-6


class NonExactCurveError(CurveError):
    pass


# ---------------------------------------------------------------------------
# gradings


@dataclass(frozen=True)
class GradedCrossing:
    crossing: Crossing
    degree: int
    rotation: float  # tangent rotation of the capping path, in radians
    capping: tuple  # ((edge, t) start, (edge, t) end, +1 forward / -1 backward)

    @property
    def label(self) -> str:
        return self.crossing.label


def _passes(pa, pb, mk) -> bool:
    if pa < pb:
        return pa < mk < pb
    return mk > pa or mk < pb


def _require_exact(an: CurveAnalysis) -> None:
    if an.holonomy != 0:
        raise NonExactCurveError(f"curve is not exact: enclosed signed area {an.holonomy}")
    zero = [c.label for c in an.crossings if c.action == 0]
    if zero:
        raise NonExactCurveError(f"crossings with vanishing action: {zero}")


def grade_crossings(curve: PlanarCurve) -> list[GradedCrossing]:
    """Degree floor(rot/pi) of the capping path from the lower to the upper branch.

    The capping path follows the orientation unless that route crosses the
    basepoint, in which case the opposite route is used.  For tangent winding
    zero both routes give the same degree.
    """
    an = analyze(curve)
    tau = an.tangent_winding
    out = []
    for c in an.crossings:
        lo = c.branches[c.lower].position
        up = c.branches[c.upper].position
        rot = _turning_between(curve, lo, up)
        route = 1
        if curve.basepoint is not None and _passes(lo, up, curve.basepoint) and tau != 0:
            rot -= 2 * math.pi * tau
            route = -1
        deg = math.floor(rot / math.pi)
        out.append(GradedCrossing(c, deg, rot, (lo, up, route)))
    return out


def coefficient_degree(curve: PlanarCurve) -> int:
    """Degree of the basepoint variable: minus twice the tangent winding."""
    return -2 * tangent_winding_of(curve)


def tangent_winding_of(curve: PlanarCurve) -> int:
    return analyze(curve).tangent_winding


# ---------------------------------------------------------------------------
# polygons


@dataclass(frozen=True)
class AdmissiblePolygon:
    positive: str
    negatives: tuple[str, ...]
    boundary: tuple[HalfEdge, ...]
    events: tuple[tuple, ...]  # ("corner", label) | ("base", +-1) | ("cone", marker index)
    multiplicities: tuple[tuple[int, int], ...]  # (face, multiplicity) for covered faces
    basepoint_passages: int
    marker_passages: tuple[int, ...]
    origin_multiplicity: int
    area: Fraction
    orientation_sign: int

    @property
    def word_letters(self) -> tuple[str, ...]:
        return self.negatives

    def to_json(self) -> dict:
        return {
            "positive": self.positive,
            "negatives": list(self.negatives),
            "boundary": [list(h) for h in self.boundary],
            "events": [list(e) for e in self.events],
            "faces": {str(f): m for f, m in self.multiplicities},
            "basepoint_passages": self.basepoint_passages,
            "marker_passages": list(self.marker_passages),
            "origin_multiplicity": self.origin_multiplicity,
            "area": str(self.area),
            "orientation_sign": self.orientation_sign,
        }


class _Diagram:
    """Per-curve lookup tables for the boundary walk."""

    def __init__(self, curve: PlanarCurve):
        self.curve = curve
        an = self.an = analyze(curve)
        self.face_area = {f.index: f.area for f in an.faces}
        self.bounded = {f.index: f.bounded for f in an.faces}
        markers = [(m, "cone", k) for k, m in enumerate(curve.cone_markers)]
        if curve.basepoint is not None:
            markers.append((curve.basepoint, "base", 0))
        self.arc_markers: list[list[tuple[str, int]]] = []
        for arc in an.arcs:
            pa, pb = arc.positions
            found = []
            for mk, kind, k in markers:
                if not an.crossings or _passes(pa, pb, mk):
                    # forward distance from the arc start
                    d = (mk[0] - pa[0]) % curve.n
                    if d == 0 and mk[1] < pa[1]:
                        d = curve.n
                    found.append(((d, mk[1]), kind, k))
            found.sort()
            self.arc_markers.append([(kind, k) for _, kind, k in found])
        # sector data at each crossing: (face, d_in, d_out) for every face corner
        self.sectors: dict[int, list[tuple[int, tuple, tuple]]] = {c.index: [] for c in an.crossings}
        for f in an.faces:
            for k, h in enumerate(f.walk):
                c, _, na, ns = next_left(an.crossings, an.arcs, an.out_arc, an.in_arc, *h)
                self.sectors[c].append((f.index, self.arrival_direction(h), self.departure_direction((na, ns))))

    def start_of(self, h: HalfEdge) -> tuple[int, int]:
        arc = self.an.arcs[h[0]]
        return arc.start if h[1] > 0 else arc.end

    def end_of(self, h: HalfEdge) -> tuple[int, int]:
        arc = self.an.arcs[h[0]]
        return arc.end if h[1] > 0 else arc.start

    def arrival_direction(self, h: HalfEdge):
        arc = self.an.arcs[h[0]]
        d = arc.end_direction if h[1] > 0 else arc.start_direction
        return d if h[1] > 0 else (-d[0], -d[1])

    def departure_direction(self, h: HalfEdge):
        arc = self.an.arcs[h[0]]
        d = arc.start_direction if h[1] > 0 else arc.end_direction
        return d if h[1] > 0 else (-d[0], -d[1])

    def straight(self, h: HalfEdge) -> HalfEdge:
        c, b = self.end_of(h)
        if h[1] > 0:
            return (self.an.out_arc[c][b], 1)
        return (self.an.in_arc[c][b], -1)

    def turn(self, h: HalfEdge) -> HalfEdge:
        _, _, na, ns = next_left(self.an.crossings, self.an.arcs, self.an.out_arc, self.an.in_arc, *h)
        return (na, ns)

    def left_face(self, h: HalfEdge) -> int:
        arc = self.an.arcs[h[0]]
        return arc.left_face if h[1] > 0 else arc.right_face

    def events_along(self, h: HalfEdge) -> list[tuple]:
        marks = self.arc_markers[h[0]]
        if h[1] < 0:
            marks = marks[::-1]
        return [("base", h[1]) if kind == "base" else ("cone", k) for kind, k in marks]


def dot_pos(a, b) -> bool:
    return a[0] * b[0] + a[1] * b[1] > 0


def _corner_vector(d_in, d_out):
    return (d_out[0] - d_in[0], d_out[1] - d_in[1])


def orientation_sign(an: CurveAnalysis, degrees: dict[int, int], c: int, d_in, d_out) -> int:
    """Sign of a corner: -1 in the two sectors of an even crossing lying right of the upper branch."""
    if degrees[c] % 2:
        return 1
    cr = an.crossings[c]
    upper = cr.branches[cr.upper].direction
    w = _corner_vector(d_in, d_out)
    return -1 if cross(upper, w) < 0 else 1


def enumerate_polygons(curve: PlanarCurve, positive: Crossing | str,
                       max_steps: int = 200000) -> list[AdmissiblePolygon]:
    """All immersed polygons with a single positive corner at the given crossing."""
    an = analyze(curve)
    _require_exact(an)
    if isinstance(positive, str):
        positive = an.crossing(positive)
    D = _Diagram(curve)
    degrees = {g.crossing.index: g.degree for g in grade_crossings(curve)}
    q = positive.index
    action_q = positive.action
    caps = {}
    for a in an.arcs:
        for s in (1, -1):
            f = D.left_face((a.index, s))
            caps[(a.index, s)] = int(action_q // D.face_area[f]) if D.bounded[f] else 0
    U, L = positive.upper, positive.lower
    results: list[AdmissiblePolygon] = []
    steps = 0

    def close(path: list[HalfEdge], moves: list, neg_sum: Fraction, closing):
        # moves[i] is None for a straight pass from path[i] to path[i + 1], else a corner
        # (crossing, d_in, d_out); `closing` is the positive corner from path[-1] to path[0]
        corners = [closing] + [m for m in moves if m is not None]
        net: dict[int, int] = {}
        for a, s in path:
            net[a] = net.get(a, 0) + s
        mult = {an.unbounded_face: 0}
        changed = True
        while changed:
            changed = False
            for a in an.arcs:
                l, r, k = a.left_face, a.right_face, net.get(a.index, 0)
                if l in mult and r not in mult:
                    mult[r] = mult[l] - k
                    changed = True
                elif r in mult and l not in mult:
                    mult[l] = mult[r] + k
                    changed = True
                elif l in mult and r in mult and mult[l] - mult[r] != k:
                    return
        if any(v < 0 for v in mult.values()):
            return
        area = sum((m * D.face_area[f] for f, m in mult.items() if m), Fraction(0))
        if area != action_q - neg_sum or area <= 0:
            raise AssertionError(f"area identity fails at {positive.label}: {area} vs {action_q - neg_sum}")
        turn = sum(s * an.arcs[a].turning for a, s in path)
        turn += sum(turning_angle(d_in, d_out) for _, d_in, d_out in corners)
        if abs(turn - 2 * math.pi) > TURN_SLACK:
            return
        passes = [(D.end_of(h)[0], D.arrival_direction(h)) for h, m in zip(path, moves) if m is None]
        if not _local_sheets_ok(D, passes, corners, mult):
            return
        events: list[tuple] = []
        negs: list[str] = []
        for h, m in zip(path, moves + [None]):
            events.extend(D.events_along(h))
            if m is not None:
                label = an.crossings[m[0]].label
                events.append(("corner", label))
                negs.append(label)
        sign = 1
        for c, d_in, d_out in corners:
            sign *= orientation_sign(an, degrees, c, d_in, d_out)
        base = sum(e[1] for e in events if e[0] == "base")
        cones = [0] * len(curve.cone_markers)
        for e in events:
            if e[0] == "cone":
                cones[e[1]] += 1
        results.append(AdmissiblePolygon(
            positive=positive.label,
            negatives=tuple(negs),
            boundary=tuple(path),
            events=tuple(events),
            multiplicities=tuple(sorted((f, m) for f, m in mult.items() if m)),
            basepoint_passages=base,
            marker_passages=tuple(cones),
            origin_multiplicity=mult.get(an.origin_face, 0),
            area=area,
            orientation_sign=sign,
        ))

    def extend(h: HalfEdge, start: HalfEdge, path, moves, counts, neg_sum, closing):
        nonlocal steps
        steps += 1
        if steps > max_steps:
            raise CurveError(f"polygon search exceeded {max_steps} steps at {positive.label}")
        c, b = D.end_of(h)
        if c == q and b == U and D.turn(h) == start:
            close(path, moves, neg_sum, closing)
        d_in = D.arrival_direction(h)
        options = [(D.straight(h), None)]
        cr = an.crossings[c]
        if b == cr.lower and c != q and neg_sum + cr.action < action_q:
            nh = D.turn(h)
            options.append((nh, (c, d_in, D.departure_direction(nh))))
        for nh, move in options:
            if counts.get(nh, 0) >= caps[nh]:
                continue
            counts[nh] = counts.get(nh, 0) + 1
            path.append(nh)
            moves.append(move)
            extra = an.crossings[move[0]].action if move else 0
            extend(nh, start, path, moves, counts, neg_sum + extra, closing)
            moves.pop()
            path.pop()
            counts[nh] -= 1

    for sigma in (1, -1):
        start = (an.out_arc[q][L], 1) if sigma > 0 else (an.in_arc[q][L], -1)
        if caps[start] < 1:
            continue
        d_out = D.departure_direction(start)
        up_dir = positive.branches[U].direction
        d_in = up_dir if cross(up_dir, d_out) > 0 else (-up_dir[0], -up_dir[1])
        extend(start, start, [start], [], {start: 1}, Fraction(0), (q, d_in, d_out))
    results.sort(key=lambda p: (len(p.negatives), p.negatives, p.boundary))
    return results


def _same_ray(a, b) -> bool:
    return cross(a, b) == 0 and dot_pos(a, b)


def _local_sheets_ok(D: _Diagram, passes, corners, mult) -> bool:
    """At each crossing the sector multiplicities split into interior sheets, passes and corners."""
    touched = {c for c, _ in passes} | {c for c, _, _ in corners}
    for c in touched:
        interior = set()
        for f, d_in, d_out in D.sectors[c]:
            w = _corner_vector(d_in, d_out)
            n = mult.get(f, 0)
            n -= sum(1 for cc, v in passes if cc == c and cross(v, w) > 0)
            n -= sum(1 for cc, a, b in corners if cc == c and _same_ray(a, d_in) and _same_ray(b, d_out))
            interior.add(n)
        if len(interior) != 1 or min(interior) < 0:
            return False
    return True


# ---------------------------------------------------------------------------
# the knot DGA


def polygon_word(ring: CoefficientRing, poly: AdmissiblePolygon, base_var: str,
                 cone_factor: LaurentPoly | None = None) -> NCPoly:
    factors = []
    for e in poly.events:
        if e[0] == "corner":
            factors.append(e[1])
        elif e[0] == "base":
            factors.append(ring.var(base_var, e[1]))
        elif cone_factor is not None:
            factors.append(cone_factor)
    return NCPoly.from_factors(ring, factors)


def polygon_sign(poly: AdmissiblePolygon, field: Field, signs: str) -> int:
    if field.p == 2:
        return 1
    if signs not in SIGN_TABLES:
        raise ValueError(f"unknown sign table {signs!r}")
    s = poly.orientation_sign
    if signs == "bounding":
        s *= (-1) ** sum(1 for e in poly.events if e[0] == "base")
    return s


def build_knot_dga(curve: PlanarCurve, field: Field = GF2, signs: str = "positive",
                   verify: bool = True) -> DGA:
    """Chekanov-Eliashberg algebra over field[t^{+-1}] from polygons with one positive corner."""
    if curve.basepoint is None:
        raise CurveError("knot DGA needs a basepoint")
    an = analyze(curve)
    _require_exact(an)
    graded = grade_crossings(curve)
    ring = CoefficientRing(field, ("t",), (coefficient_degree(curve),))
    gens = {g.label: g.degree for g in graded}
    diff = {}
    for g in graded:
        total = NCPoly.zero(ring)
        for poly in enumerate_polygons(curve, g.crossing):
            word = polygon_word(ring, poly, "t")
            total = total + word.scale(polygon_sign(poly, field, signs))
        diff[g.label] = total
    dga = DGA(ring, gens, diff, name=curve.name,
              metadata={"mode": "knot", "tangent_winding": an.tangent_winding,
                        "signs": signs if field.p != 2 else "mod2"})
    if verify:
        dga.verify_degrees()
        try:
            dga.verify_d_squared()
        except DSquaredError as exc:
            raise DSquaredError(f"{curve.name}: {exc}") from exc
    return dga
