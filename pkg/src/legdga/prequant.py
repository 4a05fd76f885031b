"""Bohr-Sommerfeld cover arithmetic: minimal index, cover sublattice and Bott degrees."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form


class CoverError(ValueError):
    pass


@dataclass(frozen=True)
class CoverData:
    k: int
    residues: tuple[int, ...]
    kernel_basis: tuple[tuple[int, ...], ...]  # columns
    index: int

    def columns(self) -> list[tuple[int, ...]]:
        return list(self.kernel_basis)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "residues": list(self.residues),
            "kernel_basis_columns": [list(c) for c in self.kernel_basis],
            "index": self.index,
        }


def minimal_bs_index(values: Sequence) -> int:
    """Least k >= 1 with k*v integral for every value (areas in units of pi)."""
    if not values:
        raise ValueError("action class needs at least one value")
    return lcm(*(Fraction(v).denominator for v in values))


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _unimodular_reduction(row: list[int]) -> tuple[int, list[list[int]]]:
    """Column operations U with row*U = (d, 0, ..., 0), d = gcd(row)."""
    n = len(row)
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    r = list(row)
    for j in range(1, n):
        if r[j] == 0:
            continue
        g, x, y = _ext_gcd(r[0], r[j])
        a, b = r[0] // g, r[j] // g
        # new col0 = x*c0 + y*cj, new colj = -b*c0 + a*cj; determinant x*a + y*b = 1
        for i in range(n):
            c0, cj = U[i][0], U[i][j]
            U[i][0], U[i][j] = x * c0 + y * cj, -b * c0 + a * cj
        r[0], r[j] = g, 0
    if r[0] < 0:
        r[0] = -r[0]
        for i in range(n):
            U[i][0] = -U[i][0]
    return r[0], U


def cover_lattice(residues: Sequence[int], k: int) -> CoverData:
    """Kernel of Z^n -> Z_k, x -> sum r_i x_i, as a column Hermite basis."""
    if k < 1:
        raise CoverError("k must be positive")
    res = [int(r) % k for r in residues]
    n = len(res)
    if n == 0:
        raise CoverError("need at least one residue")
    if gcd(k, *res) != 1:
        raise CoverError("cover not of index k")
    d, U = _unimodular_reduction(res)
    # in the coordinates y = U^-1 x the condition reads d*y_0 = 0 mod k, i.e. k | y_0
    basis = Matrix(U) * Matrix.diag(k, *([1] * (n - 1)))
    H = hermite_normal_form(basis)
    cols = tuple(tuple(int(H[i, j]) for i in range(n)) for j in range(n))
    index = abs(int(H.det()))
    for c in cols:
        if sum(r * x for r, x in zip(res, c)) % k:
            raise AssertionError("kernel column outside ker sigma")
    if index != k:
        raise AssertionError(f"kernel index {index} differs from {k}")
    return CoverData(k, tuple(res), cols, index)


def bott_degree(n_omega: int, k: int, l: int) -> int:
    """Degree 2*N_omega*l/k - 1 of the Reeb chord winding l times around the fibre.

    Assumes the projected Lagrangian is embedded; that hypothesis is not checked.
    """
    if k < 1 or l < 1:
        raise ValueError("k and l must be positive")
    num = 2 * n_omega * l
    if num % k:
        raise ValueError(f"2*N_omega*l/k = {num}/{k} is not an integer")
    return num // k - 1
