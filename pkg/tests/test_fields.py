from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kgalois import linalg
from kgalois.fields import (FieldError, apply_automorphism, cyclotomic_tower, finite_field_tower, k_membership,
                            rank_kernel, rational_tower, root_of_unity, tower_from_json)

Q9 = cyclotomic_tower(9, [1, 4, 7])
F4 = finite_field_tower(2, 2, 1)


def cyc_elements(t):
    phi = t.K.phi
    return st.lists(st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5)), min_size=phi, max_size=phi) \
        .map(t.K.from_coords)


def ff_elements(t):
    return st.integers(0, t.K.size - 1).map(lambda c: t.K.from_coords(t.K.digits(c)))


@settings(max_examples=40, deadline=None)
@given(cyc_elements(Q9), cyc_elements(Q9), cyc_elements(Q9))
def test_cyclotomic_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    if x:
        assert x * x.inverse() == Q9.one
    for g in range(Q9.degree):
        assert Q9.apply(g, x + y) == Q9.apply(g, x) + Q9.apply(g, y)
        assert Q9.apply(g, x * y) == Q9.apply(g, x) * Q9.apply(g, y)


@settings(max_examples=40, deadline=None)
@given(ff_elements(finite_field_tower(3, 2, 1)), ff_elements(finite_field_tower(3, 2, 1)),
       ff_elements(finite_field_tower(3, 2, 1)))
def test_finite_field_axioms(x, y, z):
    t = x.field
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    if x:
        assert x * x.inverse() == t.one


def test_rational_tower():
    t = rational_tower()
    assert t.degree == 1 and t.m == 2
    assert t.root_of_unity(1) == -t.one


def test_q9_tower():
    assert Q9.K.phi == 6 and Q9.degree == 3 and Q9.m == 18
    q = Q9.q
    zeta = q ** 3
    assert k_membership(Q9, zeta) and not k_membership(Q9, q)
    g = next(a for a in Q9.automorphisms if a.param == 4)
    assert apply_automorphism(Q9, g, q) == q ** 4
    assert apply_automorphism(Q9, g, zeta) == zeta
    assert Q9.galois_group.order == 3


def test_q5_tower():
    t = cyclotomic_tower(5, [1, 2, 3, 4])
    assert t.degree == 4 and t.galois_group.order == 4
    assert t.galois_group.element_order(1) in (2, 4)
    assert len(t.k_basis) == 4


def test_roots_of_unity():
    assert root_of_unity(Q9, 0) == Q9.one
    assert root_of_unity(Q9, Q9.m) == Q9.one
    z = root_of_unity(Q9, 1)
    powers = [z ** e for e in range(1, Q9.m + 1)]
    assert powers.index(Q9.one) == Q9.m - 1
    for a in Q9.automorphisms:
        assert Q9.apply(a, z) == z ** a.exponent
    assert all(Q9.dlog(root_of_unity(Q9, e)) == e for e in range(Q9.m))
    assert Q9.dlog(Q9.one + Q9.one) is None


def test_fixed_dimension():
    for t in (Q9, cyclotomic_tower(12, [1, 5]), F4, finite_field_tower(2, 4, 2)):
        assert len(t.k_basis) == t.degree
        assert t.prime_degree % t.degree == 0


def test_k_coordinates_roundtrip():
    x = Q9.K.from_coords([1, Fraction(2, 3), 0, -1, 5, 0])
    assert Q9.from_k_coords(Q9.k_coords(x)) == x
    assert all(Q9.is_in_k(c) for c in Q9.k_coords(x))


def test_finite_field_towers():
    t = finite_field_tower(2, 1, 1)
    assert t.degree == 1
    assert F4.degree == 2 and F4.m == 3
    assert F4.characteristic == 2
    t25 = finite_field_tower(5, 2, 2)
    assert t25.degree == 1
    with pytest.raises(FieldError):
        finite_field_tower(4, 2, 1)
    with pytest.raises(FieldError):
        finite_field_tower(2, 3, 2)


def test_bad_subgroup():
    with pytest.raises(FieldError):
        cyclotomic_tower(9, [1, 4])


def test_rank_kernel():
    K = Q9.K
    z = K.zero
    r, ker = rank_kernel(Q9, [[z] * 3 for _ in range(3)])
    assert r == 0 and len(ker) == 3
    eye = [[K.one if i == j else z for j in range(4)] for i in range(4)]
    r, ker = rank_kernel(Q9, eye)
    assert r == 4 and ker == []
    q = Q9.q
    M = [[K.one, q], [q, q * q]]
    r, ker = rank_kernel(Q9, M)
    assert r == 1 and len(ker) == 1
    v = ker[0]
    for row in M:
        assert sum((a * v[i] for i, a in enumerate(row)), z) == z


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=5, max_size=5), min_size=1, max_size=6))
def test_rank_nullity(rows):
    K = Q9.K
    M = [[K(v) * Q9.q ** (i % 3) for i, v in enumerate(r)] for r in rows]
    r, ker = rank_kernel(Q9, M)
    assert r + len(ker) == 5
    for v in ker:
        for row in M:
            assert sum((a * v[i] for i, a in enumerate(row)), K.zero) == K.zero


def test_tower_json():
    for t in (Q9, F4, rational_tower()):
        assert tower_from_json(t.to_json()) == t
    assert tower_from_json({"type": "rational"}) == rational_tower()
    x = Q9.q ** 2 + Q9.K(Fraction(1, 3))
    assert Q9.scalar_from_json(x.to_json()) == x
