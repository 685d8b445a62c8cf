import itertools

import numpy as np
import pytest

from kgalois import algebra as al
from kgalois.catalog import klein_matrix_datum, symplectic_family, trivial_datum
from kgalois.cohomology import Cochain, symplectic_cocycle
from kgalois.datum import build_object, make_datum
from kgalois.fields import cyclotomic_tower, rational_tower
from kgalois.groups import cyclic_group, elementary_abelian, symmetric_group
from oracles import rational_rank

Q = rational_tower()


def gaussian_datum(G=None):
    """S = Z_2, N = {e}, K = Q(i) over Q: the object is K itself with complex conjugation."""
    t = cyclotomic_tower(4, [1, 3])
    Z2 = cyclic_group(2)
    G = G or Z2
    S = G.full if G is Z2 else G.subgroup([0, next(x for x in range(G.order) if G.element_order(x) == 2)])
    sigma = Cochain(G.trivial.group, 2, t.m, np.zeros((1, 1), dtype=np.int64))
    return make_datum(G, S, G.trivial, t, sigma)


def test_trivial_block():
    A = al.twisted_group_algebra(trivial_datum(cyclic_group(3)))
    assert A.dim == 1 and A.group.order == 1
    assert al.theta_matrix(A).is_bijective()
    assert al.canonical_map_matrix(A).is_bijective()


def test_klein_twisted_algebra():
    d = klein_matrix_datum()
    A = al.twisted_group_algebra(d)
    assert A.dim == 4 and A.check() == []
    one = Q.one
    # u_a = u_1, u_b = u_2 with u_a^2 = u_b^2 = 1 and u_a u_b = -u_b u_a
    ua, ub = A.basis_vector(1), A.basis_vector(2)
    assert A.product(ua, ua) == A.unit and A.product(ub, ub) == A.unit
    assert A.product(ua, ub) == A.scale(-one, A.product(ub, ua))
    assert al.center(A).dim == 1
    assert al.fixed_subalgebra(A).dim == 1


def test_twisted_algebra_relations():
    for d in (klein_matrix_datum(), symplectic_family()[4]):
        A = al.twisted_group_algebra(d)
        t, r = d.tower, d.tower.degree
        Ng = d.N.group
        u = lambda x: A.basis_vector(x * r)
        for x, y in itertools.product(range(Ng.order), repeat=2):
            lhs = A.product(u(x), u(y))
            rhs = A.scale(t.root_of_unity(int(d.sigma.table[x, y])), u(Ng.mul(x, y)))
            assert lhs == rhs
        # x . a = u_x a u_x^-1 for x in N
        for xp, x in enumerate(d.n_in_s):
            uinv = A.scale(t.root_of_unity(-int(d.sigma.table[xp, Ng.inv(xp)])), u(Ng.inv(xp)))
            for j in range(0, A.dim, max(1, A.dim // 9)):
                b = A.basis_vector(j)
                assert A.act(x, b) == A.product(A.product(u(xp), b), uinv)


def test_dimensions():
    d = symplectic_family()[0]
    assert al.twisted_group_algebra(d).dim == 27 == d.S.order
    A = al.twisted_group_algebra(d)
    assert al.center(A).dim == 3


def test_trivial_objects():
    for G in (cyclic_group(2), cyclic_group(4), elementary_abelian(2, 2), symmetric_group(3)):
        A = build_object(trivial_datum(G))
        assert A.dim == G.order
        rep = al.verify_galois(A)
        assert rep.verdict and rep.can_bijective and rep.fixed_dim == 1
        assert rep.theta_rank == G.order ** 2


def test_function_algebra_matches_induction():
    G = cyclic_group(4)
    F = al.function_algebra(G, Q)
    assert al.verify_galois(F).verdict
    assert al.fixed_subalgebra(F).dim == 1


def test_non_galois_examples():
    B = al.trivial_action_algebra(cyclic_group(2), Q, 2)
    rep = al.verify_galois(B)
    assert not rep.verdict and not rep.can_bijective and rep.fixed_dim == 2
    k = al.trivial_action_algebra(cyclic_group(2), Q, 1)
    th = al.theta_matrix(k)
    assert th.shape == (1, 2) and not th.is_bijective()
    assert not al.verify_galois(k).dim_ok


def test_klein_theta_rank_against_sympy():
    A = build_object(klein_matrix_datum())
    th = al.theta_matrix(A)
    assert th.shape == (16, 16)
    assert th.rank() == 16 == rational_rank(th.dense(Q.zero))
    can = al.canonical_map_matrix(A)
    assert can.rank() == rational_rank(can.dense(Q.zero)) == 16


def test_induced_algebra_shapes():
    G = elementary_abelian(3, 3)
    N = elementary_abelian(3, 2)
    d = make_datum(N, N.full, N.full, cyclotomic_tower(3, [1]), symplectic_cocycle(N, 3))
    B = al.twisted_group_algebra(d)
    S = G.subgroup(range(9))
    A = al.induced_algebra(G, S, B)
    assert A.dim == 27 and len(A.induced.reps) == 3
    E = al.canonical_imprimitive_system(A)
    for i, j in itertools.product(range(3), repeat=2):
        assert A.product(E[i], E[j]) == (E[i] if i == j else {})
    total = {}
    for e in E:
        total = A.add(total, e)
    assert total == A.unit
    for i in range(3):          # G permutes the idempotents transitively
        assert {tuple(sorted(A.act(g, E[i]))) for g in range(27)} == {tuple(sorted(e)) for e in E}
    for b in range(3):
        for a in range(0, 27, 5):
            assert A.product(E[b], A.basis_vector(a)) == A.product(A.basis_vector(a), E[b])


def test_induction_identities():
    B = al.twisted_group_algebra(gaussian_datum())
    A = al.induced_algebra(cyclic_group(2), cyclic_group(2).full, B)
    assert A.dim == B.dim and al.verify_galois(A).verdict
    G = cyclic_group(2)
    kE = al.trivial_action_algebra(cyclic_group(1), Q, 1)
    Ind = al.induced_algebra(G, G.trivial, kE)
    E = al.canonical_imprimitive_system(Ind)
    assert len(E) == 2 and Ind.act(1, E[0]) == E[1]
    assert al.verify_galois(Ind).verdict


def test_field_extension_object():
    d = gaussian_datum()
    A = al.twisted_group_algebra(d)
    assert A.dim == 2 and al.center(A).dim == 2
    assert al.verify_galois(A).verdict
    rep = al.verify_simple_fast(A, [0])
    assert rep.verdict


def test_simple_fast_agrees_with_full():
    for d in (klein_matrix_datum(), gaussian_datum(), trivial_datum(cyclic_group(1))):
        A = al.twisted_group_algebra(d)
        assert al.verify_simple_fast(A, d.n_in_s).verdict == al.verify_galois(A).verdict


def test_simple_fast_klein_size():
    d = klein_matrix_datum()
    rep = al.verify_simple_fast(al.twisted_group_algebra(d), d.n_in_s)
    assert rep.theta_n_rank == 16 and rep.verdict


def test_simple_fast_centre_mismatch():
    A = al.twisted_group_algebra(klein_matrix_datum())
    with pytest.raises(al.AlgebraError):
        al.verify_simple_fast(A, [0])


def test_intertwiner_identity():
    A = al.twisted_group_algebra(klein_matrix_datum())
    F = [A.basis_vector(i) for i in range(A.dim)]
    assert al.check_intertwiner(A, A, F)["ok"]
    F[1] = A.scale(A.K.one + A.K.one, F[1])
    assert not al.check_intertwiner(A, A, F)["ok"]


def test_json_roundtrip():
    A = build_object(klein_matrix_datum())
    B = al.algebra_from_json(al.algebra_to_json(A))
    assert B.mult == A.mult and B.action == A.action and B.unit == A.unit
    C = build_object(trivial_datum(cyclic_group(3)))
    D = al.algebra_from_json(al.algebra_to_json(C))
    assert D.induced is not None and al.simple_block(D).dim == 1
