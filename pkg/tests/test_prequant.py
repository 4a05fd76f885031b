import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix

from legdga.acceptance import coset_count
from legdga.prequant import CoverError, bott_degree, cover_lattice, minimal_bs_index


def test_minimal_index_examples():
    assert minimal_bs_index((Fraction(1, 3), Fraction(1, 3))) == 3
    assert minimal_bs_index((Fraction(1, 2), Fraction(1, 2))) == 2
    assert minimal_bs_index((1, 2)) == 1


def test_bott_degree_examples():
    assert bott_degree(3, 3, 1) == 1
    assert bott_degree(3, 3, 3) == 5
    assert bott_degree(2, 2, 1) == 1
    with pytest.raises(ValueError):
        bott_degree(1, 3, 1)


def _same_lattice(cols_a, cols_b):
    A = Matrix([list(r) for r in zip(*cols_a)])
    B = Matrix([list(r) for r in zip(*cols_b)])
    return all(v.is_integer for v in A.inv() * B) and all(v.is_integer for v in B.inv() * A)


def test_cover_lattice_examples():
    d3 = cover_lattice((1, 1), 3)
    assert d3.index == 3 and _same_lattice(d3.kernel_basis, [(3, 0), (-1, 1)])
    d2 = cover_lattice((1, 1), 2)
    assert d2.index == 2 and _same_lattice(d2.kernel_basis, [(2, 0), (1, 1)])
    d1 = cover_lattice((5, 7), 1)
    assert d1.kernel_basis == ((1, 0), (0, 1))


def test_non_surjective_rejected():
    with pytest.raises(CoverError, match="cover not of index k"):
        cover_lattice((2, 4), 6)


def _kernel_members(residues, k, box):
    return [p for p in itertools.product(range(-box, box + 1), repeat=len(residues))
            if sum(r * x for r, x in zip(residues, p)) % k == 0]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.lists(st.integers(0, 11), min_size=2, max_size=3))
def test_cover_lattice_oracle(k, residues):
    from math import gcd
    if gcd(k, *residues) != 1:
        with pytest.raises(CoverError):
            cover_lattice(residues, k)
        return
    data = cover_lattice(residues, k)
    cols = data.kernel_basis
    M = Matrix([list(r) for r in zip(*cols)])
    assert abs(M.det()) == k
    assert coset_count(tuple(residues), k, cols) == k
    Minv = M.inv()
    for p in _kernel_members(residues, k, 2):
        assert all(v.is_integer for v in Minv * Matrix(p))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(max_denominator=12), min_size=1, max_size=4), st.integers(1, 9))
def test_scaling_divides(values, m):
    k = minimal_bs_index(values)
    assert (m * k) % minimal_bs_index([m * v for v in values]) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(1, 6), st.integers(1, 6))
def test_bott_parity(n, k, l):
    if (2 * n * l) % k:
        return
    assert (bott_degree(n, k, l) % 2 == 1) == ((2 * n * l // k) % 2 == 0)
