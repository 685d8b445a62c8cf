"""
Standard data used by the tests, the demos and the CLI.

The two families on G = Z_n^3 with N = 0 + Z_n + Z_n, K = Q(q) for q of
order n^2 and k = Q(q^n), with sigma written in the coordinates
x = (x_1, x_2) of N:

* ``symplectic_family``: sigma(x, y) = zeta^(x_2 y_1 - x_1 y_2),
* ``half_symplectic_family``: sigma'(x, y) = zeta^(x_2 y_1),

and gamma a pairing G x N -> <zeta> restricting to Alt_sigma on N x N.
"""

from __future__ import annotations

import itertools

import numpy as np

from .cohomology import Cochain, abelian_coordinates, bilinear_cocycle
from .datum import GaloisDatum, make_datum
from .fields import FieldTower, cyclotomic_tower, rational_tower
from .groups import FiniteGroup, cyclic_group, direct_product, elementary_abelian, symmetric_group


def trivial_datum(G: FiniteGroup, tower: FieldTower | None = None) -> GaloisDatum:
    """S = N = {e}, K = k; its object is k^G."""
    tower = tower or rational_tower()
    T = G.trivial
    sigma = Cochain(T.group, 2, tower.m, np.zeros((1, 1), dtype=np.int64))
    return GaloisDatum(G, T, T, tower, (0,), sigma, np.zeros((1, 1), dtype=np.int64))


HALF_SYMPLECTIC = [[0, 0], [1, 0]]


def klein_matrix_datum() -> GaloisDatum:
    """S = N = Z_2^2 over Q with sigma = (-1)^(x_2 y_1); the object is M_2(Q)."""
    V = elementary_abelian(2, 2)
    t = rational_tower()
    sigma = bilinear_cocycle(V, 2, HALF_SYMPLECTIC)
    return make_datum(V, V.full, V.full, t, sigma)


def gaussian_datum(G: FiniteGroup | None = None, involution: int | None = None) -> GaloisDatum:
    """S = {e, t} for an involution t, N = {e}, K = Q(i) over Q: the simple block is K with conjugation."""
    G = G or cyclic_group(2)
    t = involution if involution is not None else next(x for x in range(G.order) if G.element_order(x) == 2)
    tower = cyclotomic_tower(4, [1, 3])
    T = G.trivial
    sigma = Cochain(T.group, 2, tower.m, np.zeros((1, 1), dtype=np.int64))
    return make_datum(G, G.subgroup([0, t]), T, tower, sigma)


def klein_extension_datum() -> GaloisDatum:
    """S = Z_2^3 over K = Q(i), k = Q, N = the first Z_2^2 factor with sigma = (-1)^(x_2 y_1);
    the last factor acts on K by conjugation."""
    G = elementary_abelian(2, 3)                  # index 4 x0 + 2 x1 + x2
    N = G.subgroup(range(4))
    tower = cyclotomic_tower(4, [1, 3])
    sigma = bilinear_cocycle(N.group, 2, HALF_SYMPLECTIC)
    return make_datum(G, G.full, N, tower, sigma, modulus=2)


def _v4_form_cocycle(V: FiniteGroup, m: int, form) -> Cochain:
    a, b = 1, 2
    coords = {0: (0, 0), a: (1, 0), b: (0, 1), V.mul(a, b): (1, 1)}
    B = np.asarray(form)
    t = np.zeros((4, 4), dtype=np.int64)
    for x, y in itertools.product(range(4), repeat=2):
        t[x, y] = (np.array(coords[x]) @ B @ np.array(coords[y])) % 2
    return Cochain(V, 2, 2, t).lift(m)


def alternating_datum() -> GaloisDatum:
    """G = S_4 with S = A_4, N = the Klein four-group, K = Q(q_7) over its cubic subfield k = Q(sqrt(-7)).

    Only the quaternion class x_1 y_1 + x_2 y_2 + x_2 y_1 on N is fixed by the 3-cycles, so it is the
    one non-degenerate class for which gamma exists.
    """
    G = symmetric_group(4)
    perms = list(itertools.permutations(range(4)))

    def even(p):
        return sum(p[i] > p[j] for i in range(4) for j in range(i + 1, 4)) % 2 == 0

    S = G.subgroup(i for i, p in enumerate(perms) if even(p))
    N = G.subgroup(i for i, p in enumerate(perms) if even(p) and all(p[p[k]] == k for k in range(4)))
    tower = cyclotomic_tower(7, [1, 2, 4])
    sigma = _v4_form_cocycle(N.group, tower.m, [[1, 0], [1, 1]])
    return make_datum(G, S, N, tower, sigma)


def _pairing_ambient(n: int):
    G = elementary_abelian(n, 3)          # index x0 n^2 + x1 n + x2
    N = G.subgroup(range(n * n))          # x0 = 0
    tower = cyclotomic_tower(n * n, [1 + n * j for j in range(n)])
    return G, N, tower


def pairing_gamma(n: int, sigma_form, i: int, j: int) -> np.ndarray:
    """gamma((c, n'), x) = c (i x_1 + j x_2) + Alt(n', x), exponents of zeta (order n)."""
    G, N, _ = _pairing_ambient(n)
    B = np.asarray(sigma_form)
    alt = B - B.T
    cg = abelian_coordinates(G, 3)
    cn = abelian_coordinates(N.group, 2)
    lin = np.array([i, j])
    return (cg[:, :1] * (cn @ lin)[None, :] + cg[:, 1:] @ alt @ cn.T) % n


def _family(n: int, form, i: int, j: int) -> GaloisDatum:
    G, N, tower = _pairing_ambient(n)
    sigma = bilinear_cocycle(N.group, n, form)
    gamma = pairing_gamma(n, form, i, j)
    # the coset of (c, 0, 0) goes to q -> q^(1+cn), the automorphism with index c
    iso = tuple(range(n))
    return make_datum(G, G.full, N, tower, sigma, gamma, iso=iso, modulus=n)


SYMPLECTIC = [[0, -1], [1, 0]]


def symplectic_family(n: int = 3) -> list[GaloisDatum]:
    """The n^2 data with sigma = zeta^(x_2 y_1 - x_1 y_2), one per pairing (i, j)."""
    return [_family(n, SYMPLECTIC, i, j) for i in range(n) for j in range(n)]


def half_symplectic_family(n: int = 3) -> list[GaloisDatum]:
    return [_family(n, HALF_SYMPLECTIC, i, j) for i in range(n) for j in range(n)]


def first_obstruction_example():
    """S = Z_3^2 x Z_2 over K = Q(zeta_3), k = Q, N = Z_3^2 with the symplectic sigma.

    The Z_2 factor centralises N but conjugates zeta, so (g.sigma)/sigma^g = sigma^-2 is not a
    coboundary.  Returns (G, S, N, tower, sigma).
    """
    G = direct_product(elementary_abelian(3, 2), cyclic_group(2))
    N = G.subgroup(range(0, 18, 2))
    tower = cyclotomic_tower(3, [1, 2])
    sigma = bilinear_cocycle(N.group, 3, SYMPLECTIC).lift(tower.m)
    return G, G.full, N, tower, sigma


def second_obstruction_example():
    """S = Z_2^3 over K = Q(zeta_8), k = Q(sqrt(-2)), N = the first Z_2^2 factor with a mu_8-valued class.

    The third factor raises roots of unity to the cube.  Every (g.sigma)/sigma^g is a coboundary,
    but no choice of the gamma_g glues to a solution of C1 and C3.  Returns (G, S, N, tower, sigma).
    """
    G = elementary_abelian(2, 3)
    N = G.subgroup(range(4))
    tower = cyclotomic_tower(8, [1, 3])
    sigma = Cochain(N.group, 2, 8, np.array([[0, 0, 0, 0], [0, 0, 6, 2], [0, 2, 1, 7], [0, 6, 3, 1]]))
    return G, G.full, N, tower, sigma


def corpus() -> dict[str, GaloisDatum]:
    """Every named datum above, keyed by a short label."""
    out = {f"trivial-Z{n}": trivial_datum(cyclic_group(n)) for n in (2, 4)}
    out["trivial-V4"] = trivial_datum(elementary_abelian(2, 2))
    out["klein"] = klein_matrix_datum()
    out["gaussian-Z2"] = gaussian_datum()
    out["gaussian-S3"] = gaussian_datum(symmetric_group(3), 1)
    out["klein-extension"] = klein_extension_datum()
    out["alternating"] = alternating_datum()
    for k, d in enumerate(symplectic_family()):
        out[f"symplectic-{k // 3}{k % 3}"] = d
    out["half-symplectic"] = half_symplectic_family()[0]
    return out
