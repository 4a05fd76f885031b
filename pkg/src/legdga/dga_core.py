"""Graded noncommutative DGAs over Laurent coefficient rings and their invariants.

A word is stored in normal form as a tuple ``(e0, g1, e1, ..., gk, ek)`` where the
``e_i`` are exponent vectors of coefficient monomials and the ``g_i`` are generator
labels.  An :class:`NCPoly` maps normal-form words to nonzero field scalars, so
coefficients never commute past generators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import sympy
from sympy.polys.domains import GF, QQ as SYM_QQ
from sympy.polys.matrices import DomainMatrix

from .laurent import Exponent, Field, LaurentPoly

Word = tuple


class DGAError(ValueError):
    pass


class DSquaredError(DGAError):
    """The differential does not square to zero."""


class AugmentationError(DGAError):
    pass


@dataclass(frozen=True)
class CoefficientRing:
    field: Field
    variables: tuple[str, ...]
    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.variables) != len(self.degrees):
            raise ValueError("one degree per variable")

    @property
    def zero_exp(self) -> Exponent:
        return (0,) * len(self.variables)

    def exp_degree(self, e: Exponent) -> int:
        return sum(a * d for a, d in zip(e, self.degrees))

    def poly(self, terms=()) -> LaurentPoly:
        return LaurentPoly(self.field, self.variables, terms)

    def var(self, name: str, power: int = 1) -> LaurentPoly:
        return LaurentPoly.var(self.field, self.variables, name, power)

    def one(self) -> LaurentPoly:
        return LaurentPoly.constant(self.field, self.variables, 1)

    def with_field(self, field: Field) -> "CoefficientRing":
        return CoefficientRing(field, self.variables, self.degrees)


def _add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


class NCPoly:
    """Finite sum of normal-form words with field scalars."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: CoefficientRing, terms: Mapping[Word, object] | Iterable = ()):
        self.ring = ring
        acc: dict[Word, object] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        f = ring.field
        for w, c in items:
            acc[w] = f(acc.get(w, 0) + f(c))
        self.terms = {w: c for w, c in acc.items() if c != 0}

    # constructors
    @classmethod
    def zero(cls, ring: CoefficientRing) -> "NCPoly":
        return cls(ring)

    @classmethod
    def one(cls, ring: CoefficientRing) -> "NCPoly":
        return cls(ring, {(ring.zero_exp,): 1})

    @classmethod
    def gen(cls, ring: CoefficientRing, label: str) -> "NCPoly":
        z = ring.zero_exp
        return cls(ring, {(z, label, z): 1})

    @classmethod
    def coeff(cls, ring: CoefficientRing, p: LaurentPoly) -> "NCPoly":
        return cls(ring, {(e,): c for e, c in p.terms})

    @classmethod
    def from_factors(cls, ring: CoefficientRing, factors: Sequence) -> "NCPoly":
        """Product of generator labels and Laurent polynomials, in order."""
        out = cls.one(ring)
        for fac in factors:
            if isinstance(fac, str):
                out = out * cls.gen(ring, fac)
            elif isinstance(fac, LaurentPoly):
                out = out * cls.coeff(ring, fac)
            elif isinstance(fac, NCPoly):
                out = out * fac
            else:
                out = out.scale(fac)
        return out

    # arithmetic
    def __add__(self, other: "NCPoly") -> "NCPoly":
        return NCPoly(self.ring, itertools.chain(self.terms.items(), other.terms.items()))

    def __neg__(self) -> "NCPoly":
        return NCPoly(self.ring, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def scale(self, c) -> "NCPoly":
        c = self.ring.field(c)
        return NCPoly(self.ring, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other: "NCPoly") -> "NCPoly":
        out: dict[Word, object] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1[:-1] + (_add(w1[-1], w2[0]),) + w2[1:]
                out[w] = out.get(w, 0) + c1 * c2
        return NCPoly(self.ring, out)

    def conjugate(self, exp: Exponent) -> "NCPoly":
        """x -> m x m^-1 for the coefficient monomial with exponent ``exp``."""
        neg = tuple(-a for a in exp)
        out = {}
        for w, c in self.terms.items():
            if len(w) == 1:
                out[w] = c
            else:
                out[(_add(w[0], exp),) + w[1:-1] + (_add(w[-1], neg),)] = c
        return NCPoly(self.ring, out)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, NCPoly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def words(self) -> list[tuple[Word, object]]:
        return sorted(self.terms.items(), key=lambda wc: _word_key(wc[0]))

    def letters(self) -> set[str]:
        return {g for w in self.terms for g in w[1::2]}

    def abelianize(self) -> dict[tuple[str, ...], LaurentPoly]:
        """Let coefficients commute with letters: letter sequence -> Laurent coefficient."""
        acc: dict[tuple[str, ...], list] = {}
        for w, c in self.terms.items():
            e = self.ring.zero_exp
            for x in w[0::2]:
                e = _add(e, x)
            acc.setdefault(tuple(w[1::2]), []).append((e, c))
        return {k: self.ring.poly(v) for k, v in acc.items()}

    def coefficient_part(self) -> LaurentPoly:
        """Sum of the letter-free words, as a Laurent polynomial."""
        return self.ring.poly([(w[0], c) for w, c in self.terms.items() if len(w) == 1])

    def map_coefficients(self, ring: CoefficientRing, fn) -> "NCPoly":
        """Apply a monomial map ``fn(exp) -> (scalar, new_exp)`` to every coefficient slot."""
        out: dict[Word, object] = {}
        for w, c in self.terms.items():
            scal = c
            new = list(w)
            for i in range(0, len(w), 2):
                s, e = fn(w[i])
                scal = scal * s
                new[i] = e
            key = tuple(new)
            out[key] = out.get(key, 0) + scal
        return NCPoly(ring, out)

    def format(self, ascii_names: bool = True) -> str:
        return format_ncpoly(self)

    def __str__(self) -> str:
        return format_ncpoly(self)

    __repr__ = __str__


def _word_key(w: Word):
    return (len(w), tuple(w[1::2]), tuple(w[0::2]))


def _mono_str(ring: CoefficientRing, e: Exponent) -> str:
    return "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(ring.variables, e) if k)


def format_ncpoly(p: NCPoly) -> str:
    """Group words by letter pattern and print coefficients between letters."""
    if not p.terms:
        return "0"
    ring = p.ring
    parts = []
    for w, c in p.words():
        pieces = []
        for i, x in enumerate(w):
            if i % 2:
                pieces.append(x)
            else:
                m = _mono_str(ring, x)
                if m:
                    pieces.append(m)
        body = "*".join(pieces) if pieces else "1"
        if ring.field.p == 0:
            c = Fraction(c)
        if c == 1:
            parts.append(body)
        elif ring.field.p == 0 and c == -1:
            parts.append("-" + body)
        else:
            parts.append(f"{c}*{body}" if pieces else str(c))
    return " + ".join(parts).replace("+ -", "- ")


@dataclass
class DGA:
    """Free graded algebra on labelled generators with a Leibniz differential."""

    ring: CoefficientRing
    generators: dict[str, int]
    differential: dict[str, NCPoly]
    name: str = ""
    metadata: dict = dc_field(default_factory=dict)

    def __post_init__(self) -> None:
        order = sorted(self.generators, key=lambda g: (self.generators[g], g))
        self.generators = {g: self.generators[g] for g in order}
        for g in self.generators:
            self.differential.setdefault(g, NCPoly.zero(self.ring))
        unknown = set(self.differential) - set(self.generators)
        if unknown:
            raise DGAError(f"differential given for unknown generators {sorted(unknown)}")
        for g, p in self.differential.items():
            missing = p.letters() - set(self.generators)
            if missing:
                raise DGAError(f"d{g} uses unknown generators {sorted(missing)}")

    # grading
    def word_degree(self, w: Word) -> int:
        deg = sum(self.ring.exp_degree(e) for e in w[0::2])
        return deg + sum(self.generators[g] for g in w[1::2])

    def homogeneous_degree(self, p: NCPoly) -> int | None:
        degs = {self.word_degree(w) for w in p.terms}
        if len(degs) > 1:
            raise DGAError(f"inhomogeneous element {p}")
        return degs.pop() if degs else None

    # differential
    def d_gen(self, g: str) -> NCPoly:
        if g not in self.generators:
            raise DGAError(f"unknown generator {g!r}")
        return self.differential[g]

    def d(self, p: NCPoly) -> NCPoly:
        """Leibniz extension: d(x y) = dx y + (-1)^|x| x dy, coefficients are cycles."""
        ring = self.ring
        acc: dict[Word, object] = {}
        for w, c in p.terms.items():
            deg = self.ring.exp_degree(w[0])
            for j in range(1, len(w), 2):
                g = w[j]
                dg = self.d_gen(g)
                if dg.terms:
                    sign = -1 if deg % 2 else 1
                    left, right = w[: j - 1], w[j + 1 :]
                    lo, ro = w[j - 1], w[j + 1]
                    for dw, dc in dg.terms.items():
                        if len(dw) == 1:
                            mid = (_add(_add(lo, dw[0]), ro),)
                        else:
                            mid = (_add(lo, dw[0]),) + dw[1:-1] + (_add(dw[-1], ro),)
                        key = left + mid + right[1:]
                        acc[key] = acc.get(key, 0) + sign * c * dc
                deg += self.generators[g] + ring.exp_degree(w[j + 1])
        return NCPoly(ring, acc)

    def d_squared_failures(self) -> dict[str, NCPoly]:
        return {g: dd for g in self.generators if (dd := self.d(self.d_gen(g)))}

    def verify_d_squared(self) -> None:
        bad = self.d_squared_failures()
        if bad:
            g, dd = next(iter(bad.items()))
            raise DSquaredError(f"d^2({g}) = {dd} != 0")

    def degree_failures(self) -> dict[str, list[int]]:
        out = {}
        for g, dg in self.differential.items():
            degs = sorted({self.word_degree(w) for w in dg.terms})
            if degs and degs != [self.generators[g] - 1]:
                out[g] = degs
        return out

    def verify_degrees(self) -> None:
        bad = self.degree_failures()
        if bad:
            raise DGAError(f"differential does not lower degree by one: {bad}")

    def chords_positive(self) -> bool:
        return all(d > 0 for d in self.generators.values())

    def with_field(self, field: Field) -> "DGA":
        """Reduce scalars into another field (rational data only)."""
        ring = self.ring.with_field(field)
        diff = {
            g: NCPoly(ring, {w: Fraction(c) for w, c in p.terms.items()})
            for g, p in self.differential.items()
        }
        return DGA(ring, dict(self.generators), diff, self.name, dict(self.metadata))

    # serialization
    def to_json(self) -> dict:
        f = self.ring.field

        def enc_word(w, c):
            out = []
            for i, x in enumerate(w):
                if i % 2:
                    out.append(x)
                else:
                    out.append([[list(x), f.encode(c if i == 0 else 1)]])
            return out

        return {
            "schema": "legdga-dga/1",
            "name": self.name,
            "field": f.tag,
            "variables": list(self.ring.variables),
            "variable_degrees": list(self.ring.degrees),
            "generators": [{"label": g, "degree": d} for g, d in self.generators.items()],
            "differential": {
                g: [enc_word(w, c) for w, c in self.differential[g].words()]
                for g in self.generators
            },
            "metadata": self.metadata,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "DGA":
        if data.get("schema") != "legdga-dga/1":
            raise DGAError(f"unsupported DGA schema {data.get('schema')!r}")
        field = Field.parse(data["field"])
        ring = CoefficientRing(field, tuple(data["variables"]), tuple(data["variable_degrees"]))
        gens = {g["label"]: int(g["degree"]) for g in data["generators"]}
        diff = {}
        for g, words in data["differential"].items():
            total = NCPoly.zero(ring)
            for word in words:
                factors = []
                for i, x in enumerate(word):
                    factors.append(x if i % 2 else LaurentPoly.from_json(field, ring.variables, x))
                total = total + NCPoly.from_factors(ring, factors)
            diff[g] = total
        return cls(ring, gens, diff, data.get("name", ""), dict(data.get("metadata", {})))

    def describe(self) -> dict:
        return {
            "generators": {g: d for g, d in self.generators.items()},
            "differential": {g: str(self.differential[g]) for g in self.generators},
        }


def apply_differential(dga: DGA, word: NCPoly) -> NCPoly:
    return dga.d(word)


# ---------------------------------------------------------------------------
# augmentations and degree-zero invariants


@dataclass(frozen=True)
class Augmentation:
    """Character of the coefficient ring; chords of nonzero degree go to zero."""

    values: tuple[tuple[str, object], ...]

    @classmethod
    def of(cls, field: Field, **values) -> "Augmentation":
        return cls(tuple(sorted((k, field(v)) for k, v in values.items())))

    @classmethod
    def parse(cls, text: str, field: Field) -> "Augmentation":
        vals = {}
        for part in text.split(","):
            if not part.strip():
                continue
            k, _, v = part.partition("=")
            vals[k.strip()] = field(Fraction(v.strip()))
        return cls.of(field, **vals)

    def as_dict(self) -> dict:
        return dict(self.values)

    def exp_value(self, field: Field, variables: Sequence[str], e: Exponent):
        vals = self.as_dict()
        out = field(1)
        for v, k in zip(variables, e):
            if k:
                if v not in vals:
                    raise AugmentationError(f"augmentation has no value for {v}")
                if vals[v] == 0:
                    raise AugmentationError(f"{v} must map to a unit")
                out = field(out * field.pow(vals[v], k))
        return out

    def __str__(self) -> str:
        return ",".join(f"{k}={v}" for k, v in self.values)


def degree_one_boundaries(dga: DGA) -> dict[str, LaurentPoly]:
    if not dga.chords_positive():
        raise DGAError("unsupported: degree-zero homology needs every chord in positive degree")
    return {g: dga.differential[g].coefficient_part() for g, d in dga.generators.items() if d == 1}


@dataclass
class QuotientPresentation:
    ring: CoefficientRing
    generators: list[LaurentPoly]

    def __str__(self) -> str:
        vs = ",".join(f"{v}^±1" for v in self.ring.variables)
        gens = ", ".join(str(g) for g in self.generators) or "0"
        return f"{self.ring.field.name}[{vs}]/<{gens}>"

    def to_json(self) -> dict:
        return {
            "field": self.ring.field.tag,
            "variables": list(self.ring.variables),
            "ideal": [g.to_json() for g in self.generators],
            "display": str(self),
        }


def canonical_ideal(polys: Iterable[LaurentPoly]) -> list[LaurentPoly]:
    gens = {p.normalize_unit() for p in polys if not p.is_zero()}
    if any(g.is_unit() for g in gens):
        one = next(iter(gens))
        return [LaurentPoly.constant(one.field, one.variables, 1)]
    return sorted(gens, key=lambda g: (len(g.terms), g.terms))


def degree_zero_homology(dga: DGA) -> QuotientPresentation:
    """R / <d q : |q| = 1>, valid when every chord has positive degree."""
    ideal = canonical_ideal(degree_one_boundaries(dga).values())
    return QuotientPresentation(dga.ring, ideal)


def augmentation_ideal(dga: DGA) -> list[LaurentPoly]:
    return canonical_ideal(degree_one_boundaries(dga).values())


def solve_over(dga: DGA, field: Field | None = None) -> list[Augmentation]:
    """All graded augmentations over a finite field, by exhaustive search over (F*)^n."""
    field = field or dga.ring.field
    if field.p == 0:
        raise DGAError("exhaustive solving needs a finite field")
    ideal = [p.change_field(field) for p in augmentation_ideal(dga)]
    names = dga.ring.variables
    out = []
    for point in itertools.product(field.nonzero(), repeat=len(names)):
        assignment = dict(zip(names, point))
        if all(p.evaluate(assignment) == 0 for p in ideal):
            out.append(Augmentation.of(field, **assignment))
    return out


def check_augmentation(dga: DGA, eps: Augmentation) -> None:
    f = dga.ring.field
    vals = eps.as_dict()
    for v, deg in zip(dga.ring.variables, dga.ring.degrees):
        if v not in vals:
            raise AugmentationError(f"augmentation has no value for {v}")
        if vals[v] == 0:
            raise AugmentationError(f"{v} must map to a unit")
        if deg != 0 and vals[v] != 1:
            raise AugmentationError(f"{v} has degree {deg}; a graded augmentation cannot move it")
    for g, p in degree_one_boundaries(dga).items():
        value = p.change_field(f).evaluate(vals) if p.field != f else p.evaluate(vals)
        if value != 0:
            raise AugmentationError(f"eps(d{g}) = {value} != 0 at {eps}")


@dataclass
class AcyclicityReport:
    acyclic: bool
    certificate: dict | None
    reason: str

    def to_json(self) -> dict:
        return {"acyclic": self.acyclic, "certificate": self.certificate, "reason": self.reason}


def _groebner_is_unit(polys: list[LaurentPoly]) -> bool:
    """Ideal membership of 1 in a Laurent ring via a Groebner basis with an inverse variable."""
    if not polys:
        return False
    ring_vars = polys[0].variables
    field = polys[0].field
    syms = sympy.symbols(list(ring_vars) + ["_winv"])
    exprs = []
    for p in polys:
        low = [min(e[i] for e, _ in p.terms) for i in range(len(ring_vars))]
        expr = 0
        for e, c in p.terms:
            mono = sympy.Integer(1)
            for s, a, lo in zip(syms, e, low):
                mono *= s ** (a - lo)
            expr += sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * mono
        exprs.append(expr)
    prod = sympy.Integer(1)
    for s in syms[:-1]:
        prod *= s
    exprs.append(prod * syms[-1] - 1)
    opts = {"modulus": field.p} if field.p else {}
    G = sympy.groebner(exprs, *syms, order="grevlex", **opts)
    return list(G.exprs) == [1]


def acyclicity_test(dga: DGA, specialization: Mapping[str, object] | None = None,
                    field: Field | None = None) -> AcyclicityReport:
    """Is 1 in the specialized ideal of degree-one boundaries?

    ``specialization`` sends some (or all) coefficient variables to field values;
    the others stay as Laurent variables.  With positive-degree chords, 1 in the
    ideal certifies that the algebra is acyclic.
    """
    field = field or dga.ring.field
    specialization = dict(specialization or {})
    bdry = degree_one_boundaries(dga)
    gens = []
    for g, p in bdry.items():
        q = p.change_field(field) if p.field != field else p
        q = q.specialize({k: field(v) for k, v in specialization.items()})
        gens.append((g, q))
    for g, q in gens:
        if q.is_unit():
            (e, c), = q.terms
            return AcyclicityReport(True, {"generator": g, "image": str(q),
                                           "inverse": str(q.inverse())},
                                    f"d{g} specializes to the unit {q}")
    nonzero = [q for _, q in gens if not q.is_zero()]
    free_vars = [v for v in dga.ring.variables if v not in specialization]
    if nonzero and free_vars and _groebner_is_unit(nonzero):
        return AcyclicityReport(True, {"generators": [g for g, q in gens if q]},
                                "Groebner basis of the specialized ideal is {1}")
    return AcyclicityReport(False, None, "1 is not in the specialized ideal")


# ---------------------------------------------------------------------------
# bilinearised homology


def _dm_rank(rows: list[list], field: Field) -> int:
    if not rows or not rows[0]:
        return 0
    dom = GF(field.p) if field.p else SYM_QQ
    conv = [[dom(int(c)) if field.p else dom(Fraction(c).numerator, Fraction(c).denominator)
             for c in row] for row in rows]
    return DomainMatrix(conv, (len(rows), len(rows[0])), dom).rank()


def linearized_matrix(dga: DGA, eps0: Augmentation, eps1: Augmentation) -> dict:
    """Matrix of the bilinearised differential on chords: entry[target][source]."""
    f = dga.ring.field
    vars_ = dga.ring.variables
    out: dict[str, dict[str, object]] = {}
    for g in dga.generators:
        col: dict[str, object] = {}
        for w, c in dga.differential[g].terms.items():
            if len(w) != 3:
                continue
            val = f(c * eps0.exp_value(f, vars_, w[0]) * eps1.exp_value(f, vars_, w[2]))
            col[w[1]] = f(col.get(w[1], 0) + val)
        out[g] = {k: v for k, v in col.items() if v != 0}
    return out


def bilinearised_lch(dga: DGA, eps0: Augmentation, eps1: Augmentation,
                     check: bool = True) -> dict[int, int]:
    """Ranks of bilinearised Legendrian contact homology, per degree (zeros omitted)."""
    if check:
        check_augmentation(dga, eps0)
        check_augmentation(dga, eps1)
    mat = linearized_matrix(dga, eps0, eps1)
    f = dga.ring.field
    by_deg: dict[int, list[str]] = {}
    for g, d in dga.generators.items():
        by_deg.setdefault(d, []).append(g)
    rank_d: dict[int, int] = {}
    for k, src in by_deg.items():
        tgt = by_deg.get(k - 1, [])
        rows = [[mat[s].get(t, 0) for s in src] for t in tgt]
        rank_d[k] = _dm_rank(rows, f) if tgt else 0
    ranks = {}
    for k, gens in by_deg.items():
        r = len(gens) - rank_d[k] - rank_d.get(k + 1, 0)
        if r:
            ranks[k] = r
    return dict(sorted(ranks.items()))


# ---------------------------------------------------------------------------
# augmentation polynomial


class LocalizationError(DGAError):
    pass


@dataclass(frozen=True)
class Frac:
    """Element of a Laurent ring localized at products of chosen polynomials."""

    num: LaurentPoly
    den: LaurentPoly

    def __add__(self, o: "Frac") -> "Frac":
        return Frac(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o: "Frac") -> "Frac":
        return Frac(self.num * o.den - o.num * self.den, self.den * o.den)

    def __mul__(self, o: "Frac") -> "Frac":
        return Frac(self.num * o.num, self.den * o.den)

    def inverse(self) -> "Frac":
        return Frac(self.den, self.num)

    def evaluate(self, point) :
        f = self.num.field
        return f(self.num.evaluate(point) * f.inv(self.den.evaluate(point)))


def _solve_field(rows: list[list], field: Field) -> list[list] | None:
    """Inverse of a square matrix over a field, or None if singular."""
    n = len(rows)
    A = [list(map(field, r)) + [field(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        inv = field.inv(A[col][col])
        A[col] = [field(x * inv) for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                fac = A[r][col]
                A[r] = [field(x - fac * y) for x, y in zip(A[r], A[col])]
    return [row[n:] for row in A]


def _rref_rows(rows: list[list], field: Field) -> tuple[list[list], list[int]]:
    A = [list(map(field, r)) for r in rows]
    pivots = []
    r = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = field.inv(A[r][c])
        A[r] = [field(x * inv) for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                fac = A[i][c]
                A[i] = [field(x - fac * y) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A[:r], pivots


@dataclass
class AugPolyReport:
    polynomial: LaurentPoly
    m: int
    a_basis: list[dict]
    b_basis: list[dict]
    localized_at: list[LaurentPoly]

    def to_json(self) -> dict:
        return {
            "polynomial": str(self.polynomial),
            "polynomial_terms": self.polynomial.to_json(),
            "m": self.m,
            "a_basis": self.a_basis,
            "b_basis": self.b_basis,
            "localized_at": [str(p) for p in self.localized_at],
        }


def augmentation_polynomial(dga: DGA, eps: Augmentation, check: bool = True) -> AugPolyReport:
    """Local defining polynomial of the augmentation variety near ``eps``.

    Follows the elimination: adapted bases a_0..a_m (degree one) and b_1..b_m
    (degree two) with d^eps b_i = a_i; abelianized d b_i = sum_j P^i_j a_j; then
    a_{m0} -> a_{m0} + (P^{m0}_{m0})^-1 sum_{j<m0} P^{m0}_j a_j for m0 = m..1, and
    the answer is d a_0 with denominators cleared, normalized up to a unit.
    """
    f = dga.ring.field
    if check:
        check_augmentation(dga, eps)
        ranks = bilinearised_lch(dga, eps, eps, check=False)
        if ranks.get(1, 0) != 1:
            raise DGAError(f"rank LCH_1^(eps,eps) = {ranks.get(1, 0)}, expected 1")
    A = [g for g, d in dga.generators.items() if d == 1]
    B = [g for g, d in dga.generators.items() if d == 2]
    point = eps.as_dict()
    ring = dga.ring
    one = ring.one()
    zero = ring.poly()
    bound = degree_one_boundaries(dga)
    fvec = [bound[a] for a in A]

    # abelianized coefficient matrix Q[b][a]
    Q = []
    for b in B:
        ab = dga.differential[b].abelianize()
        Q.append([ab.get((a,), zero) for a in A])
    E = [[p.evaluate(point) for p in row] for row in Q]
    m = len(_rref_rows(E, f)[1]) if E else 0
    if m != len(A) - 1:
        raise DGAError(f"linearized d2 has rank {m}; need {len(A) - 1}")
    # b_1..b_m: independent rows of the linearized matrix, chosen greedily
    chosen = []
    for i in range(len(B)):
        trial = [E[j] for j in chosen + [i]]
        if _rref_rows(trial, f)[1].__len__() == len(chosen) + 1:
            chosen.append(i)
        if len(chosen) == m:
            break
    # new degree-one basis: a'_i = d^eps b_i (i >= 1), a'_0 = first unit vector not in span
    images = [E[i] for i in chosen]
    comp = None
    for k in range(len(A)):
        unit = [f(int(j == k)) for j in range(len(A))]
        if len(_rref_rows(images + [unit], f)[1]) == m + 1:
            comp = k
            break
    if comp is None:
        raise DGAError("no complement for the degree-one image")
    newbasis = [[f(int(j == comp)) for j in range(len(A))]] + images  # rows: a'_i in old a
    inv = _solve_field(newbasis, f)  # old a_j = sum_i inv[j][i] a'_i
    # rewrite d b = sum_j Q_j a_j = sum_i (sum_j Q_j inv[j][i]) a'_i
    P = []
    for i in chosen:
        P.append([sum((Q[i][j] * inv[j][k] for j in range(len(A))), zero) for k in range(m + 1)])
    fnew = [sum((fvec[j] * newbasis[k][j] for j in range(len(A))), zero) for k in range(m + 1)]
    for i in range(m):
        for k in range(m + 1):
            want = 1 if k == i + 1 else 0
            if P[i][k].evaluate(point) != f(want):
                raise AssertionError("adapted basis does not diagonalize at eps")
    diag = [P[i][i + 1] for i in range(m)]
    for p in diag:
        if p.evaluate(point) == 0:
            raise LocalizationError("localization obstructed")
    # P^i_j as fractions; index shift: row i <-> b_{i+1}, column k <-> a'_k
    Pf = [[Frac(p, one) for p in row] for row in P]
    a_expr = [[Frac(one if j == k else zero, one) for j in range(m + 1)] for k in range(m + 1)]
    for m0 in range(m, 0, -1):
        piv_inv = Pf[m0 - 1][m0].inverse()
        # a_{m0} -> a_{m0} + piv^-1 sum_{j<m0} P^{m0}_j a_j
        new = list(a_expr[m0])
        for j in range(m0):
            c = piv_inv * Pf[m0 - 1][j]
            new = [x + c * y for x, y in zip(new, a_expr[j])]
        a_expr[m0] = new
        # re-express d b_i in the new coordinates: old a_{m0} = new a_{m0} - sum c_j a_j
        for i in range(m):
            coeff = Pf[i][m0]
            for j in range(m0):
                c = piv_inv * Pf[m0 - 1][j]
                Pf[i][j] = Pf[i][j] - coeff * c
    d_a0 = Frac(zero, one)
    for k in range(m + 1):
        d_a0 = d_a0 + a_expr[0][k] * Frac(fnew[k], one)
    poly = d_a0.num  # denominators are products of the P^i_i, units after localization
    report = AugPolyReport(
        polynomial=poly.normalize_unit(),
        m=m,
        a_basis=[{A[j]: f.encode(newbasis[k][j]) for j in range(len(A)) if newbasis[k][j]}
                 for k in range(m + 1)],
        b_basis=[{"b": B[i]} for i in chosen],
        localized_at=[p.normalize_unit() for p in diag],
    )
    return report


# ---------------------------------------------------------------------------
# superpotential comparison


def parse_monomial_map(text: str, source: Sequence[str], target: Sequence[str]) -> dict[str, Exponent]:
    """Parse ``mu=v,lambda=u^3*v`` into exponent vectors over ``target``."""
    out = {}
    for part in text.split(","):
        if not part.strip():
            continue
        k, _, v = part.partition("=")
        k = k.strip()
        if k not in source:
            raise ValueError(f"unknown variable {k!r}")
        exp = [0] * len(target)
        for factor in v.replace(" ", "").split("*"):
            if factor in ("", "1"):
                continue
            base, _, power = factor.partition("^")
            if base not in target:
                raise ValueError(f"unknown target variable {base!r}")
            exp[list(target).index(base)] += int(power) if power else 1
        out[k] = tuple(exp)
    missing = set(source) - set(out)
    if missing:
        raise ValueError(f"substitution misses {sorted(missing)}")
    return out


def monomial_substitute(p: LaurentPoly, images: Mapping[str, Exponent], target: Sequence[str]) -> LaurentPoly:
    terms = []
    for e, c in p.terms:
        out = [0] * len(target)
        for v, k in zip(p.variables, e):
            for i, x in enumerate(images[v]):
                out[i] += k * x
        terms.append((tuple(out), c))
    return LaurentPoly(p.field, target, terms)


@dataclass
class PotentialReport:
    match: bool
    substitution: dict[str, Exponent] | None
    searched: int

    def to_json(self) -> dict:
        sub = None
        if self.substitution is not None:
            sub = {k: list(v) for k, v in self.substitution.items()}
        return {"match": self.match, "substitution": sub, "searched": self.searched}


def superpotential_check(augpoly: LaurentPoly, potential: LaurentPoly,
                         substitution: Mapping[str, Exponent] | None = None,
                         search_bound: int = 3) -> PotentialReport:
    """Does the potential equal the substituted polynomial up to a monomial unit?

    With no substitution given, all monomial maps with exponents in
    [-search_bound, search_bound] are tried, in a fixed order.
    """
    target = potential.variables
    if augpoly.field != potential.field:
        raise DGAError("polynomials live over different fields")
    goal = potential.normalize_unit()
    if substitution is not None:
        ok = monomial_substitute(augpoly, substitution, target).normalize_unit() == goal
        return PotentialReport(ok, dict(substitution) if ok else None, 1)
    rng = range(-search_bound, search_bound + 1)
    n_src, n_tgt = len(augpoly.variables), len(target)
    count = 0
    for flat in itertools.product(rng, repeat=n_src * n_tgt):
        count += 1
        images = {v: tuple(flat[i * n_tgt:(i + 1) * n_tgt]) for i, v in enumerate(augpoly.variables)}
        if monomial_substitute(augpoly, images, target).normalize_unit() == goal:
            return PotentialReport(True, images, count)
    return PotentialReport(False, None, count)


def change_lambda_basis(p: LaurentPoly, k: int, lam: str = "lambda", mu: str = "mu") -> LaurentPoly:
    """Image under lambda -> lambda * mu^k."""
    i, j = p.variables.index(lam), p.variables.index(mu)
    terms = []
    for e, c in p.terms:
        e2 = list(e)
        e2[j] += k * e[i]
        terms.append((tuple(e2), c))
    return LaurentPoly(p.field, p.variables, terms)


def ideals_equivalent(I: Sequence[LaurentPoly], J: Sequence[LaurentPoly], ks: Iterable[int] = range(-3, 4)) -> int | None:
    """Least |k| basis change lambda -> lambda mu^k identifying two principal presentations."""
    target = sorted((p.normalize_unit().terms for p in J))
    for k in sorted(ks, key=lambda x: (abs(x), x)):
        mapped = sorted(change_lambda_basis(p, k).normalize_unit().terms for p in I)
        if mapped == target:
            return k
    return None
