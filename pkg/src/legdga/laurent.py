"""Coefficient fields and exact multivariate Laurent polynomials."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import sympy

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class Field:
    """GF(p) for prime ``p``, or the rationals when ``p == 0``."""

    p: int = 2

    def __post_init__(self) -> None:
        if self.p != 0 and not sympy.isprime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip().lower()
        if text in ("f2", "gf2", "gf(2)"):
            return cls(2)
        if text in ("q", "qq", "rationals"):
            return cls(0)
        if text.startswith("fp:"):
            return cls(int(text[3:]))
        raise ValueError(f"unknown field {text!r}")

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"GF({self.p})"

    @property
    def tag(self) -> str:
        if self.p == 0:
            return "q"
        return "f2" if self.p == 2 else f"fp:{self.p}"

    def __call__(self, value) -> int | Fraction:
        if self.p == 0:
            return Fraction(value)
        value = Fraction(value)
        num = value.numerator % self.p
        den = value.denominator % self.p
        if den == 0:
            raise ZeroDivisionError(f"{value} has no image in {self.name}")
        return num * pow(den, -1, self.p) % self.p

    def inv(self, c):
        if c == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p == 0:
            return 1 / Fraction(c)
        return pow(int(c), -1, self.p)

    def pow(self, c, k: int):
        if k < 0:
            c, k = self.inv(c), -k
        return pow(int(c), k, self.p) if self.p else Fraction(c) ** k

    def nonzero(self) -> list[int]:
        if self.p == 0:
            raise ValueError("the rationals are not enumerable")
        return list(range(1, self.p))

    def encode(self, c) -> int | str:
        if self.p != 0:
            return int(c)
        c = Fraction(c)
        return int(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"

    def decode(self, raw) -> int | Fraction:
        return self(Fraction(raw) if isinstance(raw, str) else raw)


GF2 = Field(2)
QQ = Field(0)


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _neg_exp(a: Exponent) -> Exponent:
    return tuple(-x for x in a)


class LaurentPoly:
    """Immutable Laurent polynomial with terms stored as sorted (exponent, coefficient) pairs."""

    __slots__ = ("field", "variables", "terms", "_hash")

    def __init__(
        self,
        field: Field,
        variables: Sequence[str],
        terms: Mapping[Exponent, object] | Iterable[tuple[Exponent, object]] = (),
    ):
        self.field = field
        self.variables = tuple(variables)
        acc: dict[Exponent, object] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        n = len(self.variables)
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} does not match variables {self.variables}")
            acc[exp] = field(acc.get(exp, 0) + field(c))
        self.terms: tuple[tuple[Exponent, object], ...] = tuple(
            sorted((e, c) for e, c in acc.items() if c != 0)
        )
        self._hash = None

    # constructors
    @classmethod
    def constant(cls, field: Field, variables: Sequence[str], c=1) -> "LaurentPoly":
        return cls(field, variables, {(0,) * len(variables): c})

    @classmethod
    def monomial(cls, field: Field, variables: Sequence[str], exp: Exponent, c=1) -> "LaurentPoly":
        return cls(field, variables, {tuple(exp): c})

    @classmethod
    def var(cls, field: Field, variables: Sequence[str], name: str, power: int = 1) -> "LaurentPoly":
        exp = [0] * len(variables)
        exp[list(variables).index(name)] = power
        return cls(field, variables, {tuple(exp): 1})

    def _like(self, terms) -> "LaurentPoly":
        return LaurentPoly(self.field, self.variables, terms)

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.variables != self.variables or other.field != self.field:
                raise ValueError("incompatible Laurent rings")
            return other
        return LaurentPoly.constant(self.field, self.variables, other)

    # ring operations
    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        return self._like(list(self.terms) + list(other.terms))

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return self._like([(e, -c) for e, c in self.terms])

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out: dict[Exponent, object] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = _add_exp(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentPoly.constant(self.field, self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "LaurentPoly":
        if not self.is_monomial():
            raise ZeroDivisionError(f"{self} is not a unit")
        (e, c), = self.terms
        return self._like({_neg_exp(e): self.field.inv(c)})

    # predicates
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    is_unit = is_monomial

    def is_constant(self) -> bool:
        return self.is_zero() or (len(self.terms) == 1 and not any(self.terms[0][0]))

    def constant_term(self):
        for e, c in self.terms:
            if not any(e):
                return c
        return self.field(0)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return (
            self.field == other.field
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.variables, self.terms))
        return self._hash

    def __iter__(self) -> Iterator[tuple[Exponent, object]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    # evaluation and substitution
    def evaluate(self, point: Mapping[str, object]):
        """Evaluate at nonzero field values for every variable."""
        f = self.field
        vals = [f(point[v]) for v in self.variables]
        total = f(0)
        for e, c in self.terms:
            term = c
            for v, k in zip(vals, e):
                if k:
                    term = term * f.pow(v, k)
            total = f(total + term)
        return total

    def specialize(self, point: Mapping[str, object]) -> "LaurentPoly":
        """Substitute field values for some variables; the ring keeps its variables."""
        out: dict[Exponent, object] = {}
        f = self.field
        for e, c in self.terms:
            e2 = list(e)
            for i, v in enumerate(self.variables):
                if v in point and e2[i]:
                    val = f(point[v])
                    c = c * f.pow(val, e2[i])
                    e2[i] = 0
            key = tuple(e2)
            out[key] = out.get(key, 0) + c
        return self._like(out)

    def substitute(self, images: Mapping[str, "LaurentPoly"], target_vars: Sequence[str]) -> "LaurentPoly":
        """Ring map sending each variable to a Laurent polynomial in ``target_vars``."""
        one = LaurentPoly.constant(self.field, target_vars, 1)
        total = LaurentPoly(self.field, target_vars)
        for e, c in self.terms:
            term = one * c
            for v, k in zip(self.variables, e):
                if k:
                    term = term * images[v] ** k
            total = total + term
        return total

    def change_field(self, field: Field) -> "LaurentPoly":
        return LaurentPoly(field, self.variables, [(e, Fraction(c)) for e, c in self.terms])

    # normal form up to units
    def normalize_unit(self) -> "LaurentPoly":
        """Divide by the monomial that sends the lowest exponent to zero with coefficient one."""
        if self.is_zero():
            return self
        low, lead = self.terms[0]
        inv = self.field.inv(lead)
        return self._like([(tuple(a - b for a, b in zip(e, low)), c * inv) for e, c in self.terms])

    def equal_up_to_unit(self, other: "LaurentPoly") -> bool:
        return self.normalize_unit() == self._coerce(other).normalize_unit()

    def max_degree(self) -> int:
        return max((max(abs(x) for x in e) if e else 0 for e, _ in self.terms), default=0)

    # serialization and display
    def to_json(self) -> list:
        return [[list(e), self.field.encode(c)] for e, c in self.terms]

    @classmethod
    def from_json(cls, field: Field, variables: Sequence[str], data: list) -> "LaurentPoly":
        return cls(field, variables, [(tuple(e), field.decode(c)) for e, c in data])

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            if self.field.p == 0:
                c = Fraction(c)
            if mono and c == 1:
                parts.append(mono)
            elif mono and self.field.p == 0 and c == -1:
                parts.append("-" + mono)
            elif mono:
                parts.append(f"{c}*{mono}")
            else:
                parts.append(str(c))
        return " + ".join(parts).replace("+ -", "- ")


def parse_laurent(text: str, field: Field, variables: Sequence[str]) -> LaurentPoly:
    """Parse an expression such as ``u*(1+v) + u^-2*v^-1`` into a Laurent polynomial."""
    # placeholder names sidestep Python keywords such as lambda
    alias = {v: f"x{i}_" for i, v in enumerate(variables)}
    symbols = {alias[v]: sympy.Symbol(alias[v]) for v in variables}
    unknown = set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", text)) - set(variables)
    if unknown:
        raise ValueError(f"unknown names {sorted(unknown)} in {text!r}")
    src = re.sub(r"[A-Za-z_][A-Za-z_0-9]*", lambda m: alias[m.group(0)], text)
    expr = sympy.sympify(src.replace("^", "**"), locals=symbols)
    expr = sympy.expand(expr)
    terms = []
    for term in sympy.Add.make_args(expr):
        coeff, rest = term.as_coeff_Mul()
        exp = [0] * len(variables)
        for base, power in rest.as_powers_dict().items():
            if base == 1:
                continue
            if base not in symbols.values() or not power.is_integer:
                raise ValueError(f"term {term} is not a Laurent monomial in {tuple(variables)}")
            exp[list(symbols.values()).index(base)] += int(power)
        if not coeff.is_Rational:
            raise ValueError(f"coefficient {coeff} is not rational")
        terms.append((tuple(exp), Fraction(int(coeff.p), int(coeff.q))))
    return LaurentPoly(field, variables, terms)
