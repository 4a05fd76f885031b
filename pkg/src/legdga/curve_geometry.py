"""Exact combinatorics and actions of immersed closed polylines in the punctured plane."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

Point = tuple[Fraction, Fraction]
Marker = tuple[int, Fraction]  # (edge index, parameter in (0, 1))

CURVE_SCHEMA = "legdga-curve/1"
DEFAULT_TOLERANCE = 1e-9
DEFAULT_SLACK = 1e-6


class CurveError(ValueError):
    pass


class DegenerateCurveError(CurveError):
    def __init__(self, message: str, simplices: Sequence = ()):
        super().__init__(message)
        self.simplices = tuple(simplices)


# ---------------------------------------------------------------------------
# exact predicates


def cross(a: Point, b: Point) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def dot(a: Point, b: Point) -> Fraction:
    return a[0] * b[0] + a[1] * b[1]


def sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def lerp(a: Point, b: Point, t: Fraction) -> Point:
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def segment_intersection(p: Point, q: Point, r: Point, s: Point):
    """Return ('none',) | ('cross', t, u) | ('touch', t, u) | ('overlap',) for segments pq, rs."""
    d1, d2 = sub(q, p), sub(s, r)
    den = cross(d1, d2)
    w = sub(r, p)
    if den == 0:
        if cross(w, d1) != 0:
            return ("none",)
        # collinear: compare projections
        dd = dot(d1, d1)
        t0 = dot(w, d1) / dd
        t1 = dot(sub(s, p), d1) / dd
        lo, hi = min(t0, t1), max(t0, t1)
        if hi < 0 or lo > 1:
            return ("none",)
        if hi == 0 or lo == 1:
            return ("touch", Fraction(0) if hi == 0 else Fraction(1), None)
        return ("overlap",)
    t = cross(w, d2) / den
    u = cross(w, d1) / den
    if t < 0 or t > 1 or u < 0 or u > 1:
        return ("none",)
    if 0 < t < 1 and 0 < u < 1:
        return ("cross", t, u)
    return ("touch", t, u)


def segment_hits_origin(p: Point, q: Point) -> bool:
    if cross(p, q) != 0:
        return False
    return dot(p, q) <= 0


def winding_about(points: Sequence[Point], o: Point = (Fraction(0), Fraction(0))) -> int:
    """Exact winding number of a closed polyline about a point off the polyline."""
    wn = 0
    n = len(points)
    for i in range(n):
        a, b = sub(points[i], o), sub(points[(i + 1) % n], o)
        if a[1] <= 0 < b[1] and cross(a, b) > 0:
            wn += 1
        elif b[1] <= 0 < a[1] and cross(a, b) < 0:
            wn -= 1
    return wn


def shoelace(points: Sequence[Point]) -> Fraction:
    n = len(points)
    return sum((cross(points[i], points[(i + 1) % n]) for i in range(n)), Fraction(0)) / 2


def turning_angle(d1: Point, d2: Point) -> float:
    """Signed angle in (-pi, pi) from direction d1 to direction d2."""
    return math.atan2(float(cross(d1, d2)), float(dot(d1, d2)))


def lefschetz_segment(p: Point, q: Point) -> tuple[float, float]:
    """Closed-form integral of (x dy - y dx)/(2|z|) along pq, with a rounding bound."""
    c = cross(p, q)
    if c == 0:
        return 0.0, 0.0
    d = sub(q, p)
    a = float(dot(d, d))
    b = float(2 * dot(p, d))
    disc = 2.0 * abs(float(c))
    h1 = math.asinh((2 * a + b) / disc)
    h0 = math.asinh(b / disc)
    pref = float(c) / 2.0 / math.sqrt(a)
    value = pref * (h1 - h0)
    err = 8 * 2.0 ** -52 * abs(pref) * (abs(h1) + abs(h0) + 1.0)
    return value, err


# ---------------------------------------------------------------------------
# curve type


@dataclass(frozen=True)
class PlanarCurve:
    """Closed rational polyline; the last vertex is joined to the first."""

    vertices: tuple[Point, ...]
    name: str = "curve"
    exact: bool = False
    basepoint: Marker | None = None
    cone_markers: tuple[Marker, ...] = ()
    cover: str | None = None  # "nontrivial" or "trivial" for symmetric lifts

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge(self, i: int) -> tuple[Point, Point]:
        return self.vertices[i % self.n], self.vertices[(i + 1) % self.n]

    def point_at(self, m: Marker) -> Point:
        p, q = self.edge(m[0])
        return lerp(p, q, m[1])

    def with_markers(self, basepoint: Marker | None = None,
                     cone_markers: Iterable[Marker] | None = None) -> "PlanarCurve":
        return replace(
            self,
            basepoint=self.basepoint if basepoint is None else basepoint,
            cone_markers=self.cone_markers if cone_markers is None else tuple(cone_markers),
        )

    def to_json(self) -> dict:
        def frac(x: Fraction) -> list[int]:
            return [x.numerator, x.denominator]

        doc = {
            "schema": CURVE_SCHEMA,
            "name": self.name,
            "vertices": [frac(p[0]) + frac(p[1]) for p in self.vertices],
            "closed": True,
            "exact": self.exact,
        }
        if self.basepoint is not None:
            doc["basepoint"] = {"edge": self.basepoint[0], "t": frac(self.basepoint[1])}
        if self.cone_markers:
            doc["cone_markers"] = [{"edge": e, "t": frac(t)} for e, t in self.cone_markers]
        if self.cover:
            doc["cover"] = self.cover
        return doc


def _parse_marker(raw, n: int) -> Marker:
    try:
        edge = int(raw["edge"])
        t = Fraction(int(raw["t"][0]), int(raw["t"][1]))
    except (KeyError, TypeError, ValueError, IndexError, ZeroDivisionError) as exc:
        raise CurveError(f"malformed marker {raw!r}") from exc
    if not 0 <= edge < n or not 0 < t < 1:
        raise CurveError(f"marker {raw!r} is not in the interior of an edge")
    return edge, t


def load_curve(document: dict | str | Path) -> PlanarCurve:
    """Parse and validate a curve document (a dict, JSON text, or a path)."""
    if isinstance(document, Path) or (isinstance(document, str) and not document.lstrip().startswith("{")):
        path = Path(document)
        try:
            document = json.loads(path.read_text())
        except OSError as exc:
            raise CurveError(f"cannot read {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise CurveError(f"{path} is not JSON: {exc}") from exc
    elif isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise CurveError(f"not JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise CurveError("curve document must be a JSON object")
    schema = document.get("schema", CURVE_SCHEMA)
    if schema != CURVE_SCHEMA:
        raise CurveError(f"unsupported schema {schema!r}")
    if document.get("closed", True) is not True:
        raise CurveError("only closed curves are supported")
    raw = document.get("vertices")
    if not isinstance(raw, list) or len(raw) < 3:
        raise CurveError("'vertices' must list at least three points")
    verts = []
    for i, v in enumerate(raw):
        if not (isinstance(v, list) and len(v) == 4 and all(isinstance(x, int) for x in v)):
            raise CurveError(f"vertex {i} must be [num, den, num, den] integers")
        if v[1] == 0 or v[3] == 0:
            raise CurveError(f"vertex {i} has a zero denominator")
        verts.append((Fraction(v[0], v[1]), Fraction(v[2], v[3])))
    n = len(verts)
    bp = document.get("basepoint")
    cones = document.get("cone_markers", [])
    cover = document.get("cover")
    if cover not in (None, "nontrivial", "trivial"):
        raise CurveError(f"unknown cover {cover!r}")
    curve = PlanarCurve(
        vertices=tuple(verts),
        name=str(document.get("name", "curve")),
        exact=bool(document.get("exact", False)),
        basepoint=None if bp is None else _parse_marker(bp, n),
        cone_markers=tuple(sorted(_parse_marker(m, n) for m in cones)),
        cover=cover,
    )
    validate_curve(curve)
    return curve


def validate_curve(curve: PlanarCurve) -> None:
    """Check genericity exactly; raises DegenerateCurveError naming the simplices."""
    V = curve.vertices
    n = len(V)
    zero = (Fraction(0), Fraction(0))
    for i in range(n):
        if V[i] == V[(i + 1) % n]:
            raise DegenerateCurveError(f"degenerate edge {i}: repeated vertex", [("edge", i)])
    for i in range(n):
        if V[i] == zero:
            raise DegenerateCurveError(f"vertex {i} is at the origin", [("vertex", i)])
        if segment_hits_origin(*curve.edge(i)):
            raise DegenerateCurveError(f"edge {i} passes through the origin", [("edge", i)])
    for i in range(n):
        d0 = sub(V[i], V[i - 1])
        d1 = sub(V[(i + 1) % n], V[i])
        if cross(d0, d1) == 0 and dot(d0, d1) < 0:
            raise DegenerateCurveError(f"curve doubles back at vertex {i}", [("vertex", i)])
    points: dict[Point, list[int]] = {}
    for i in range(n):
        p, q = curve.edge(i)
        for j in range(i + 1, n):
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            r, s = curve.edge(j)
            res = segment_intersection(p, q, r, s)
            kind = res[0]
            if kind == "none":
                continue
            if adjacent:
                if kind == "overlap":
                    raise DegenerateCurveError(f"edges {i} and {j} overlap", [("edge", i), ("edge", j)])
                if kind == "touch":
                    t, u = res[1], res[2]
                    shared = (t == 1 and u == 0) if j == i + 1 else (t == 0 and u == 1)
                    if n == 3 or shared:
                        continue
                raise DegenerateCurveError(f"edges {i} and {j} meet away from their shared vertex",
                                           [("edge", i), ("edge", j)])
            if kind == "overlap":
                raise DegenerateCurveError(f"edges {i} and {j} overlap", [("edge", i), ("edge", j)])
            if kind == "touch":
                raise DegenerateCurveError(
                    f"edges {i} and {j} touch at a vertex (non-transverse or non-generic)",
                    [("edge", i), ("edge", j)])
            pt = lerp(p, q, res[1])
            points.setdefault(pt, []).extend([i, j])
    for pt, edges in points.items():
        if len(edges) > 2:
            raise DegenerateCurveError(f"triple point at {pt}", [("edge", e) for e in sorted(set(edges))])
    for m in list(curve.cone_markers) + ([curve.basepoint] if curve.basepoint else []):
        pt = curve.point_at(m)
        if pt in points:
            raise DegenerateCurveError(f"marker {m} sits on a crossing", [("edge", m[0])])


# ---------------------------------------------------------------------------
# combinatorial analysis


def crossing_label(i: int) -> str:
    letters = "abcdefghijklmnopqrstuvwxyz"
    s = ""
    i += 1
    while i:
        i, r = divmod(i - 1, 26)
        s = letters[r] + s
    return s


@dataclass(frozen=True)
class Branch:
    edge: int
    t: Fraction
    direction: Point  # edge direction vector (exact, unnormalized)

    @property
    def position(self) -> tuple[int, Fraction]:
        return (self.edge, self.t)


@dataclass(frozen=True)
class Crossing:
    index: int
    label: str
    location: Point
    branches: tuple[Branch, Branch]  # ordered by traversal
    upper: int  # index of the branch with the larger standard primitive
    action: Fraction  # standard primitive gap, upper minus lower (positive for exact curves)

    @property
    def lower(self) -> int:
        return 1 - self.upper

    def quadrants(self) -> list[dict]:
        """The four sectors in counterclockwise order with their Reeb signs."""
        u = self.branches[self.upper].direction
        l = self.branches[self.lower].direction
        rays = [("U+", u), ("L+", l), ("U-", (-u[0], -u[1])), ("L-", (-l[0], -l[1]))]
        rays.sort(key=lambda r: _angle_key(r[1]))
        out = []
        for k in range(4):
            first, second = rays[k], rays[(k + 1) % 4]
            # a sector whose counterclockwise-first ray lies on the lower branch is positive
            out.append({"from": first[0], "to": second[0],
                        "sign": "+" if first[0][0] == "L" else "-"})
        return out


def _angle_key(v: Point):
    half = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    return (half, -float(v[0]) / math.hypot(float(v[0]), float(v[1])) if half == 0 else
            float(v[0]) / math.hypot(float(v[0]), float(v[1])))


@dataclass
class Arc:
    index: int
    start: tuple[int, int]  # (crossing index, branch index)
    end: tuple[int, int]
    points: list[Point]  # polyline from start point to end point
    positions: tuple[tuple[int, Fraction], tuple[int, Fraction]]
    turning: float
    left_face: int = -1
    right_face: int = -1
    basepoints: int = 0
    cones: tuple[int, ...] = ()  # indices of cone markers on the arc

    @property
    def start_direction(self) -> Point:
        return sub(self.points[1], self.points[0])

    @property
    def end_direction(self) -> Point:
        return sub(self.points[-1], self.points[-2])


@dataclass
class Face:
    index: int
    walk: list[tuple[int, int]]  # half-edges (arc, +1/-1) with the face on the left
    polygon: list[Point]
    area: Fraction  # standard signed area of the boundary walk
    winding: int = 0
    bounded: bool = True
    lefschetz_area: float | None = None
    lefschetz_error: float = 0.0
    corners: tuple[int, ...] = ()  # crossings visited as corners along the walk

    @property
    def contains_origin(self) -> bool:
        return self.bounded and winding_about(self.polygon) != 0


@dataclass
class CurveAnalysis:
    curve: PlanarCurve
    crossings: list[Crossing]
    arcs: list[Arc]
    faces: list[Face]
    out_arc: list[list[int]]
    in_arc: list[list[int]]
    origin_face: int
    origin_winding: int
    tangent_winding: int
    holonomy: Fraction

    @property
    def unbounded_face(self) -> int:
        return next(f.index for f in self.faces if not f.bounded)

    @property
    def bounded_faces(self) -> list[Face]:
        return [f for f in self.faces if f.bounded]

    def min_face_area(self) -> Fraction:
        return min((f.area for f in self.bounded_faces), default=Fraction(0))

    def euler_characteristic(self) -> int:
        n = len(self.crossings)
        return len(self.faces) - len(self.arcs) + n

    def crossing(self, label: str) -> Crossing:
        for c in self.crossings:
            if c.label == label:
                return c
        raise KeyError(label)

    def summary(self) -> dict:
        return {
            "crossings": [
                {
                    "label": c.label,
                    "location": [str(c.location[0]), str(c.location[1])],
                    "branches": [[b.edge, str(b.t)] for b in c.branches],
                    "upper_branch": c.upper,
                    "action": str(c.action),
                    "quadrants": c.quadrants(),
                }
                for c in self.crossings
            ],
            "faces": [
                {
                    "index": f.index,
                    "bounded": f.bounded,
                    "standard_area": str(f.area),
                    "lefschetz_area": f.lefschetz_area,
                    "winding": f.winding,
                    "contains_origin": f.index == self.origin_face,
                    "corners": [self.crossings[c].label for c in f.corners],
                }
                for f in self.faces
            ],
            "arcs": len(self.arcs),
            "origin_face": self.origin_face,
            "origin_winding": self.origin_winding,
            "tangent_winding": self.tangent_winding,
            "holonomy": str(self.holonomy),
        }


def _primitive_prefix(curve: PlanarCurve) -> list[Fraction]:
    acc = [Fraction(0)]
    for i in range(curve.n):
        p, q = curve.edge(i)
        acc.append(acc[-1] + cross(p, q) / 2)
    return acc


def standard_primitive(curve: PlanarCurve, edge: int, t: Fraction, prefix=None) -> Fraction:
    prefix = prefix or _primitive_prefix(curve)
    p, q = curve.edge(edge)
    return prefix[edge] + cross(p, lerp(p, q, t)) / 2


def tangent_winding(curve: PlanarCurve) -> int:
    V = curve.vertices
    n = len(V)
    total = sum(turning_angle(sub(V[i], V[i - 1]), sub(V[(i + 1) % n], V[i])) for i in range(n))
    return round(total / (2 * math.pi))


def _turning_between(curve: PlanarCurve, a: tuple[int, Fraction], b: tuple[int, Fraction]) -> float:
    """Tangent rotation along the curve from position a forward to position b."""
    n = curve.n
    V = curve.vertices
    ea, eb = a[0], b[0]
    steps = (eb - ea) % n
    if steps == 0 and b[1] < a[1]:
        steps = n
    total = 0.0
    for k in range(1, steps + 1):
        i = (ea + k) % n
        total += turning_angle(sub(V[i], V[i - 1]), sub(V[(i + 1) % n], V[i]))
    return total


def _analyze(curve: PlanarCurve, tolerance: float) -> CurveAnalysis:
    n = curve.n
    V = curve.vertices
    raw = []
    for i in range(n):
        p, q = curve.edge(i)
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            r, s = curve.edge(j)
            res = segment_intersection(p, q, r, s)
            if res[0] == "cross":
                raw.append(((i, res[1]), (j, res[2])))
    raw.sort()
    prefix = _primitive_prefix(curve)
    holonomy = prefix[-1]
    crossings: list[Crossing] = []
    for idx, (b0, b1) in enumerate(raw):
        branches = tuple(Branch(e, t, sub(*reversed(curve.edge(e)))) for e, t in (b0, b1))
        z0 = standard_primitive(curve, *b0, prefix=prefix)
        z1 = standard_primitive(curve, *b1, prefix=prefix)
        upper = 0 if z0 > z1 else 1
        p, q = curve.edge(b0[0])
        crossings.append(Crossing(idx, crossing_label(idx), lerp(p, q, b0[1]), branches, upper, abs(z1 - z0)))

    # events along the curve
    events = []
    for c in crossings:
        for bi, br in enumerate(c.branches):
            events.append(((br.edge, br.t), c.index, bi))
    events.sort()
    arcs: list[Arc] = []
    out_arc = [[-1, -1] for _ in crossings]
    in_arc = [[-1, -1] for _ in crossings]
    markers = [(m, "cone", k) for k, m in enumerate(curve.cone_markers)]
    if curve.basepoint is not None:
        markers.append((curve.basepoint, "base", 0))
    if not events:
        pts = list(V) + [V[0]]
        turning = sum(turning_angle(sub(V[i], V[i - 1]), sub(V[(i + 1) % n], V[i])) for i in range(n))
        arc = Arc(0, (-1, -1), (-1, -1), pts, ((0, Fraction(0)), (0, Fraction(0))), turning)
        arc.basepoints = sum(1 for m in markers if m[1] == "base")
        arc.cones = tuple(k for m, kind, k in markers if kind == "cone")
        arcs.append(arc)
    else:
        m = len(events)
        for k in range(m):
            (pa, ca, ba), (pb, cb, bb) = events[k], events[(k + 1) % m]
            pts = [lerp(*curve.edge(pa[0]), pa[1])]
            e = pa[0]
            wrap = (pb <= pa)
            steps = (pb[0] - pa[0]) % n
            if steps == 0 and wrap:
                steps = n
            for s in range(1, steps + 1):
                pts.append(V[(e + s) % n])
            pts.append(lerp(*curve.edge(pb[0]), pb[1]))
            turning = _turning_between(curve, pa, pb)
            arc = Arc(k, (ca, ba), (cb, bb), pts, (pa, pb), turning)
            for mk, kind, mi in markers:
                if _on_arc(n, pa, pb, mk):
                    if kind == "base":
                        arc.basepoints += 1
                    else:
                        arc.cones = arc.cones + (mi,)
            arcs.append(arc)
            out_arc[ca][ba] = k
            in_arc[cb][bb] = k

    faces = _trace_faces(curve, crossings, arcs, out_arc, in_arc)
    _assign_windings(faces, arcs)
    origin_winding = winding_about(V)
    origin_face = next((f.index for f in faces if f.contains_origin), None)
    if origin_face is None:
        origin_face = next(f.index for f in faces if not f.bounded)
    for f in faces:
        if f.bounded:
            total, err = 0.0, 0.0
            for a, b in zip(f.polygon, f.polygon[1:] + f.polygon[:1]):
                v, e = lefschetz_segment(a, b)
                total += v
                err += e
            f.lefschetz_area, f.lefschetz_error = total, err
    return CurveAnalysis(curve, crossings, arcs, faces, out_arc, in_arc, origin_face,
                         origin_winding, tangent_winding(curve), holonomy)


def _on_arc(n: int, pa, pb, mk) -> bool:
    """Is marker position mk strictly between event positions pa and pb going forward?"""
    if pa < pb:
        return pa < mk < pb
    return mk > pa or mk < pb


def _half_edge_points(arc: Arc, sign: int) -> list[Point]:
    return arc.points if sign > 0 else arc.points[::-1]


def next_left(crossings, arcs, out_arc, in_arc, arc_index: int, sign: int) -> tuple[int, int, int, int]:
    """Turn left at the crossing reached by a half-edge.

    Returns (crossing, arrival branch, next arc, next sign).
    """
    arc = arcs[arc_index]
    c, b = arc.end if sign > 0 else arc.start
    d = arc.end_direction if sign > 0 else (-arc.start_direction[0], -arc.start_direction[1])
    other = 1 - b
    e = crossings[c].branches[other].direction
    if cross(d, e) > 0:
        return c, b, out_arc[c][other], 1
    return c, b, in_arc[c][other], -1


def _trace_faces(curve, crossings, arcs, out_arc, in_arc) -> list[Face]:
    faces: list[Face] = []
    if not crossings:
        loop = arcs[0].points[:-1]
        area = shoelace(loop)
        for sign in (1, -1):
            pts = loop if sign > 0 else loop[::-1]
            a = area * sign
            faces.append(Face(len(faces), [(0, sign)], list(pts), a, bounded=a > 0))
        arcs[0].left_face, arcs[0].right_face = 0, 1
        return faces
    seen: dict[tuple[int, int], int] = {}
    for start in [(a.index, s) for a in arcs for s in (1, -1)]:
        if start in seen:
            continue
        walk, pts, corners = [], [], []
        h = start
        while h not in seen:
            seen[h] = len(faces)
            walk.append(h)
            pts.extend(_half_edge_points(arcs[h[0]], h[1])[:-1])
            c, _, na, ns = next_left(crossings, arcs, out_arc, in_arc, *h)
            corners.append(c)
            h = (na, ns)
        area = shoelace(pts)
        faces.append(Face(len(faces), walk, pts, area, bounded=area > 0, corners=tuple(corners)))
        for a, s in walk:
            if s > 0:
                arcs[a].left_face = len(faces) - 1
            else:
                arcs[a].right_face = len(faces) - 1
    unbounded = [f for f in faces if not f.bounded]
    if len(unbounded) != 1:
        raise CurveError(f"expected one unbounded face, found {len(unbounded)}")
    return faces


def _assign_windings(faces: list[Face], arcs: list[Arc]) -> None:
    known = {next(f.index for f in faces if not f.bounded): 0}
    changed = True
    while changed:
        changed = False
        for a in arcs:
            l, r = a.left_face, a.right_face
            if l in known and r not in known:
                known[r] = known[l] - 1
                changed = True
            elif r in known and l not in known:
                known[l] = known[r] + 1
                changed = True
    for f in faces:
        f.winding = known[f.index]


_CACHE: dict = {}


def analyze(curve: PlanarCurve, tolerance: float = DEFAULT_TOLERANCE) -> CurveAnalysis:
    key = (curve, tolerance)
    if key not in _CACHE:
        if len(_CACHE) > 512:
            _CACHE.clear()
        _CACHE[key] = _analyze(curve, tolerance)
    return _CACHE[key]


# ---------------------------------------------------------------------------
# actions


@dataclass
class ActionReport:
    form: str
    primitive_total: object
    crossing_gaps: dict[str, object]
    enclosed_area: object
    error_bound: float = 0.0
    embedded_lift: bool | None = None
    nearest_multiples: dict[str, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        conv = (lambda x: str(x)) if self.form == "standard" else (lambda x: x)
        return {
            "form": self.form,
            "primitive_total": conv(self.primitive_total),
            "crossing_gaps": {k: conv(v) for k, v in self.crossing_gaps.items()},
            "enclosed_area": conv(self.enclosed_area),
            "error_bound": self.error_bound,
            "embedded_lift": self.embedded_lift,
        }


def _lefschetz_prefix(curve: PlanarCurve, tolerance: float) -> tuple[list[float], float]:
    acc, err = [0.0], 0.0
    for i in range(curve.n):
        v, e = lefschetz_segment(*curve.edge(i))
        if e > tolerance / max(curve.n, 1):
            raise CurveError(f"lefschetz integral on edge {i} cannot meet tolerance {tolerance}")
        acc.append(acc[-1] + v)
        err += e
    return acc, err


def lefschetz_primitive(curve: PlanarCurve, edge: int, t: Fraction, prefix) -> float:
    p, q = curve.edge(edge)
    v, _ = lefschetz_segment(p, lerp(p, q, t))
    return prefix[edge] + v


def action_profile(curve: PlanarCurve, form: str = "standard", tolerance: float = DEFAULT_TOLERANCE,
                   slack: float = DEFAULT_SLACK) -> ActionReport:
    an = analyze(curve, tolerance)
    if form == "standard":
        gaps = {c.label: c.action for c in an.crossings}
        enclosed = sum((f.winding * f.area for f in an.bounded_faces), Fraction(0))
        return ActionReport("standard", an.holonomy, gaps, enclosed)
    if form != "lefschetz":
        raise ValueError(f"unknown form {form!r}")
    prefix, err = _lefschetz_prefix(curve, tolerance)
    gaps, nearest = {}, {}
    for c in an.crossings:
        b0, b1 = c.branches
        g = lefschetz_primitive(curve, b1.edge, b1.t, prefix) - lefschetz_primitive(curve, b0.edge, b0.t, prefix)
        gaps[c.label] = g
        nearest[c.label] = round(g / math.pi)
    enclosed = sum(f.winding * f.lefschetz_area for f in an.bounded_faces)
    embedded = all(abs(g - nearest[k] * math.pi) > slack for k, g in gaps.items())
    return ActionReport("lefschetz", prefix[-1], gaps, enclosed, err, embedded, nearest)


# ---------------------------------------------------------------------------
# loose chart diagnostic


@dataclass
class LooseVerdict:
    crossing: str
    face_a: int
    face_b: int
    area_a: float
    area_b: float
    loose_candidate: bool

    def to_json(self) -> dict:
        return {"crossing": self.crossing, "face_A": self.face_a, "face_B": self.face_b,
                "area_A": self.area_a, "area_B": None if math.isinf(self.area_b) else self.area_b,
                "loose_candidate": self.loose_candidate}


def monogons(an: CurveAnalysis, crossing: Crossing) -> list[Face]:
    return [f for f in an.bounded_faces if f.corners and set(f.corners) == {crossing.index}]


def loose_chart_test(curve: PlanarCurve, crossing: Crossing | str, face: int | None = None,
                     tolerance: float = DEFAULT_TOLERANCE) -> LooseVerdict:
    """Compare the lefschetz area of a teardrop A with the face B opposite to it."""
    an = analyze(curve, tolerance)
    if isinstance(crossing, str):
        crossing = an.crossing(crossing)
    mono = monogons(an, crossing)
    if face is not None:
        mono = [f for f in mono if f.index == face]
    if not mono:
        raise CurveError("no teardrop at crossing")
    # prefer a teardrop away from the origin: the cone point is not part of a loose chart
    mono.sort(key=lambda f: (f.index == an.origin_face, f.index))
    A = mono[0]
    B = _opposite_face(an, crossing, A)
    area_b = math.inf if not B.bounded else B.lefschetz_area
    return LooseVerdict(crossing.label, A.index, B.index, A.lefschetz_area, area_b,
                        A.lefschetz_area < area_b)


def _opposite_face(an: CurveAnalysis, c: Crossing, A: Face) -> Face:
    """Face occupying the sector opposite to A's corner at c."""
    # A's corner: the half-edge of A arriving at c and the one leaving it
    for k, (a, s) in enumerate(A.walk):
        arc = an.arcs[a]
        end = arc.end if s > 0 else arc.start
        if end[0] != c.index:
            continue
        d_in = arc.end_direction if s > 0 else (-arc.start_direction[0], -arc.start_direction[1])
        na, ns = A.walk[(k + 1) % len(A.walk)]
        nxt = an.arcs[na]
        d_out = nxt.start_direction if ns > 0 else (-nxt.end_direction[0], -nxt.end_direction[1])
        # the opposite sector is A's corner rotated by pi: arrive along -d_in, leave along -d_out
        for f in an.faces:
            for j, (fa, fs) in enumerate(f.walk):
                farc = an.arcs[fa]
                fend = farc.end if fs > 0 else farc.start
                if fend[0] != c.index:
                    continue
                fin = farc.end_direction if fs > 0 else (-farc.start_direction[0], -farc.start_direction[1])
                ga, gs = f.walk[(j + 1) % len(f.walk)]
                garc = an.arcs[ga]
                fout = garc.start_direction if gs > 0 else (-garc.end_direction[0], -garc.end_direction[1])
                if cross(fin, d_in) == 0 and dot(fin, d_in) < 0 and cross(fout, d_out) == 0 and dot(fout, d_out) < 0:
                    return f
    raise CurveError("opposite sector not found")


# ---------------------------------------------------------------------------
# symmetric quotient


def rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def complex_square(z: Point) -> Point:
    x, y = z
    return (x * x - y * y, 2 * x * y)


def complex_sqrt(w: Point) -> Point:
    """Exact square root with nonnegative real part; errors if it is irrational."""
    a, b = w
    r = rational_sqrt(a * a + b * b)
    if r is None:
        raise CurveError(f"{w} has no rational square root")
    x = rational_sqrt((r + a) / 2)
    y = rational_sqrt((r - a) / 2)
    if x is None or y is None:
        raise CurveError(f"{w} has no rational square root")
    if b < 0:
        y = -y
    return (x, y)


@dataclass(frozen=True)
class Markers:
    basepoint: Marker | None
    cone_markers: tuple[Marker, ...]


def quotient_symmetric(curve: PlanarCurve) -> tuple[PlanarCurve, Markers]:
    """Quotient of a curve invariant under z -> -z by the angle-doubling map z -> z^2."""
    V = curve.vertices
    n = len(V)
    cover = curve.cover or "nontrivial"
    if cover == "nontrivial":
        if n % 2:
            raise CurveError("curve is not invariant under negation")
        h = n // 2
        for i in range(h):
            if V[i + h] != (-V[i][0], -V[i][1]):
                raise CurveError("curve is not invariant under negation")
        half = list(range(h))
    else:
        h = n
        half = list(range(n))
        negated = {(-x, -y) for x, y in V}
        if negated & set(V):
            raise CurveError("curve meets its negation at a vertex")
    W = [complex_square(V[i]) for i in half]
    cones: list[Marker] = []
    for i in half:
        p, q = V[i], V[(i + 1) % n]
        if p[0] == 0 or q[0] == 0:
            raise CurveError(f"vertex on the vertical axis at edge {i}")
        if (p[0] > 0) != (q[0] > 0):
            t = p[0] / (p[0] - q[0])
            axis_point = lerp(p, q, t)
            image = complex_square(axis_point)
            w0, w1 = W[i % h], W[(i + 1) % h]
            d = sub(w1, w0)
            s = dot(sub(image, w0), d) / dot(d, d)
            s = min(max(s, Fraction(1, 64)), Fraction(63, 64))
            cones.append((i % h, _snap(s)))
    bp = None
    if curve.basepoint is not None:
        bp = (curve.basepoint[0] % h, curve.basepoint[1])
    name = curve.name[:-6] if curve.name.endswith("_tilde") else curve.name + "_quotient"
    q = PlanarCurve(tuple(W), name=name, exact=False, basepoint=bp, cone_markers=tuple(sorted(cones)))
    validate_curve(q)
    q = replace(q, exact=analyze(q).holonomy == 0)
    return q, Markers(bp, q.cone_markers)


def _snap(s: Fraction) -> Fraction:
    return s.limit_denominator(1 << 20)


def lift_double(quotient: PlanarCurve, cover: str = "nontrivial", start: Point | None = None) -> list[Point]:
    """Inverse of the quotient on vertex lists: continuous square roots along the curve."""
    W = quotient.vertices
    z = complex_sqrt(W[0]) if start is None else start
    out = [z]
    for w in W[1:]:
        r = complex_sqrt(w)
        cand = [r, (-r[0], -r[1])]
        prev = out[-1]
        out.append(min(cand, key=lambda c: dot(sub(c, prev), sub(c, prev))))
    if cover == "nontrivial":
        out = out + [(-x, -y) for x, y in out]
    else:
        out = out + [(-x, -y) for x, y in out]  # the mirror component, listed after the first
    return out


def circle_polygon(n: int = 64, radius: Fraction = Fraction(1), offset: int = 1) -> list[Point]:
    """Rational points on a circle via the tangent half-angle parametrization, counterclockwise."""
    pts = []
    for k in range(n):
        theta = 2 * math.pi * (k + offset / 4) / n
        t = Fraction(math.tan(theta / 2)).limit_denominator(4096) if abs(math.cos(theta / 2)) > 1e-9 else None
        if t is None:
            pts.append((-radius, Fraction(0)))
            continue
        den = 1 + t * t
        pts.append((radius * (1 - t * t) / den, radius * 2 * t / den))
    return pts
