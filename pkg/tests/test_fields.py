from itertools import product

import pytest

from drguniform import UnsupportedField
from drguniform.fields import FiniteField, hermitian_inner, rank_gf, rref_gf


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_field_axioms_exhaustive(p, k):
    F = FiniteField(p, k)
    q = F.order
    elems = range(q)
    for a in elems:
        assert F.add[a][0] == a and F.mul[a][1] == a and F.mul[a][0] == 0
        assert F.add[a][F.neg[a]] == 0
        if a:
            assert F.mul[a][F.inv[a]] == 1
        for b in elems:
            assert F.add[a][b] == F.add[b][a]
            assert F.mul[a][b] == F.mul[b][a]
            for c in elems:
                assert F.add[F.add[a][b]][c] == F.add[a][F.add[b][c]]
                assert F.mul[F.mul[a][b]][c] == F.mul[a][F.mul[b][c]]
                assert F.mul[a][F.add[b][c]] == F.add[F.mul[a][b]][F.mul[a][c]]


@pytest.mark.parametrize("p", [2, 3])
def test_conjugation_involutive_automorphism(p):
    F = FiniteField(p, 2)
    for a in range(F.order):
        assert F.conj[F.conj[a]] == a
        for b in range(F.order):
            assert F.conj[F.mul[a][b]] == F.mul[F.conj[a]][F.conj[b]]
            assert F.conj[F.add[a][b]] == F.add[F.conj[a]][F.conj[b]]
    fixed = [a for a in range(F.order) if F.conj[a] == a]
    assert len(fixed) == p  # exactly the prime subfield
    assert fixed == F.prime_subfield()


def test_unsupported_fields():
    with pytest.raises(UnsupportedField):
        FiniteField(4)
    with pytest.raises(UnsupportedField):
        FiniteField(2, 3)


def test_hermitian_inner_conjugate_symmetry():
    F = FiniteField(2, 2)
    for u in product(range(4), repeat=2):
        for v in product(range(4), repeat=2):
            assert hermitian_inner(F, u, v) == F.conj[hermitian_inner(F, v, u)]


def test_rref_rank():
    F = FiniteField(2, 2)
    rows = [(1, 0, 2), (0, 1, 3), (1, 1, 1)]  # row3 = row1 + row2 over GF(4)
    assert rank_gf(F, rows) == 2
    reduced, pivots = rref_gf(F, rows)
    assert pivots == [0, 1]
    assert reduced == [(1, 0, 2), (0, 1, 3)]
