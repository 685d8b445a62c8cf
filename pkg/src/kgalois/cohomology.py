"""
Cochains with values in a finite cyclic group of roots of unity, written
additively as exponents mod m.

A degree-n cochain on a group G is an integer array of shape ``(|G|,)*n``;
Hochschild cochains with function-valued coefficients carry one extra
trailing axis indexed by the coefficient points (the elements of N for
``C^1(N, mu)`` and its submodule of characters).

>>> from kgalois.groups import elementary_abelian
>>> N = elementary_abelian(3, 2)
>>> s = symplectic_cocycle(N, 3)
>>> is_two_cocycle(s), is_nondegenerate(s)
(True, True)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod

import numpy as np

from . import linalg, zmod
from .groups import FiniteGroup


class CohomologyError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Cochain:
    group: FiniteGroup
    degree: int
    modulus: int
    table: np.ndarray
    points: int | None = None       # size of the coefficient axis, None for mu itself

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64) % self.modulus
        shape = (self.group.order,) * self.degree + (() if self.points is None else (self.points,))
        if t.shape != shape:
            raise CohomologyError(f"table shape {t.shape} does not match {shape}")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.modulus == other.modulus
                and self.degree == other.degree and np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash((self.modulus, self.table.tobytes()))

    def __repr__(self):
        return f"Cochain(degree={self.degree}, m={self.modulus}, {self.table.tolist()})"

    def __call__(self, *args) -> int:
        return int(self.table[args])

    def __add__(self, other: "Cochain") -> "Cochain":
        return self._like(self.table + other.table)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self._like(self.table - other.table)

    def __neg__(self):
        return self._like(-self.table)

    def __mul__(self, k: int) -> "Cochain":
        return self._like(self.table * int(k))

    __rmul__ = __mul__

    def _like(self, table) -> "Cochain":
        return Cochain(self.group, self.degree, self.modulus, table, self.points)

    def is_zero(self) -> bool:
        return not self.table.any()

    def is_normalized(self) -> bool:
        t = self.table
        for axis in range(self.degree):
            if np.take(t, 0, axis=axis).any():
                return False
        return True

    def lift(self, m: int) -> "Cochain":
        """Same values viewed in mu_m (m a multiple of the current modulus)."""
        if m % self.modulus:
            raise CohomologyError(f"{self.modulus} does not divide {m}")
        return Cochain(self.group, self.degree, m, self.table * (m // self.modulus), self.points)

    def to_json(self) -> dict:
        return {"m": self.modulus, "table": self.table.tolist()}


def zero_cochain(G: FiniteGroup, n: int, m: int, points: int | None = None) -> Cochain:
    shape = (G.order,) * n + (() if points is None else (points,))
    return Cochain(G, n, m, np.zeros(shape, dtype=np.int64), points)


def cochain(G: FiniteGroup, n: int, m: int, fn) -> Cochain:
    """Tabulate ``fn(*elements)`` into a degree-n cochain."""
    t = np.zeros((G.order,) * n, dtype=np.int64)
    for xs in itertools.product(range(G.order), repeat=n):
        t[xs] = fn(*xs)
    return Cochain(G, n, m, t)


# differentials
# -------------

def _face_terms(G: FiniteGroup, n: int, f: np.ndarray) -> np.ndarray:
    """sum_{i=1..n} (-1)^i f(x_1, .., x_i x_{i+1}, .., x_{n+1}) over the full grid."""
    idx = np.indices((G.order,) * (n + 1))
    T = G.table
    out = np.zeros((G.order,) * (n + 1) + f.shape[n:], dtype=np.int64)
    for i in range(1, n + 1):
        args = [idx[j] for j in range(i - 1)] + [T[idx[i - 1], idx[i]]] + [idx[j] for j in range(i + 1, n + 1)]
        out += (-1) ** i * f[tuple(args)]
    return out


def group_differential(n: int, f: Cochain, left=None) -> Cochain:
    """delta_n with trivial right action; ``left[g]`` multiplies exponents (default trivial)."""
    if n not in (0, 1, 2) or f.degree != n:
        raise CohomologyError(f"unsupported degree {n}")
    G, m = f.group, f.modulus
    a = np.ones(G.order, dtype=np.int64) if left is None else np.asarray(left, dtype=np.int64)
    t = f.table
    N = G.order
    idx = np.indices((N,) * (n + 1))
    first = a[idx[0]] * (t[tuple(idx[1:])] if n else t)
    last = (-1) ** (n + 1) * (t[tuple(idx[:n])] if n else t)
    out = first + _face_terms(G, n, t) + last
    return Cochain(G, n + 1, m, out)


@dataclass(frozen=True, eq=False)
class BimoduleSpec:
    """Coefficients are functions on ``points`` with values mod m.

    ``(g . f)(p) = left[g] * f(p)`` and ``(f <- g)(p) = f(right[g][p])``.
    """
    group: FiniteGroup
    modulus: int
    left: np.ndarray
    right: np.ndarray
    kind: str = "C1"

    @property
    def points(self) -> int:
        return self.right.shape[1]

    def act_left(self, g: int, f: np.ndarray) -> np.ndarray:
        return (self.left[g] * f) % self.modulus

    def act_right(self, f: np.ndarray, g: int) -> np.ndarray:
        return f[..., self.right[g]]

    def actions_commute(self, samples: int = 20, seed: int = 0) -> bool:
        rng = np.random.default_rng(seed)
        G = self.group
        for _ in range(samples):
            f = rng.integers(0, self.modulus, self.points)
            g, h = rng.integers(0, G.order, 2)
            if not np.array_equal(self.act_right(self.act_left(g, f), h), self.act_left(g, self.act_right(f, h))):
                return False
        return True


def trivial_bimodule(G: FiniteGroup, m: int, left=None) -> BimoduleSpec:
    """mu itself as a one-point coefficient module with trivial right action."""
    a = np.ones(G.order, dtype=np.int64) if left is None else np.asarray(left, dtype=np.int64)
    return BimoduleSpec(G, m, a, np.zeros((G.order, 1), dtype=np.int64), kind="mu")


def hochschild_differential(G: FiniteGroup, spec: BimoduleSpec, n: int, f: Cochain) -> Cochain:
    """d_n f(x_1..x_{n+1}) = x_1 . f(x_2..) + sum (-1)^i f(.., x_i x_{i+1}, ..) + (-1)^(n+1) f(x_1..x_n) <- x_{n+1}."""
    if n not in (0, 1, 2) or f.degree != n:
        raise CohomologyError(f"unsupported degree {n}")
    t = f.table
    if f.points is None:
        t = t[..., None]
    N, P = G.order, spec.points
    idx = np.indices((N,) * (n + 1))
    first = spec.left[idx[0]][..., None] * (t[tuple(idx[1:])] if n else t[None, :])
    base = t[tuple(idx[:n])] if n else np.broadcast_to(t, (N, P))
    # right action on the last argument: f(...)(right[x_{n+1}][p])
    r = spec.right[idx[n]]                                   # shape grid + (P,)
    last = (-1) ** (n + 1) * np.take_along_axis(base, r, axis=-1)
    out = first + _face_terms(G, n, t) + last
    if f.points is None:
        out = out[..., 0]
    return Cochain(G, n + 1, f.modulus, out, f.points)


# cocycles
# --------

def is_two_cocycle(sigma: Cochain) -> bool:
    return sigma.degree == 2 and sigma.is_normalized() and group_differential(2, sigma).is_zero()


def regular_elements(sigma: Cochain) -> list[int]:
    """Elements s with sigma(s, t) == sigma(t, s) for every t commuting with s."""
    G = sigma.group
    t = sigma.table
    out = []
    for s in range(G.order):
        if all(t[s, u] == t[u, s] for u in range(G.order) if G.mul(s, u) == G.mul(u, s)):
            out.append(s)
    return out


def is_nondegenerate(sigma: Cochain, ambient=None) -> bool:
    if not is_two_cocycle(sigma):
        raise CohomologyError("not a normalized 2-cocycle")
    return regular_elements(sigma) == [0]


def center_dimension(sigma: Cochain, tower) -> int:
    """dim_K of the centre of K_sigma N, from the commutation equations with every u_y."""
    G = sigma.group
    scale = tower.m // sigma.modulus
    if tower.m % sigma.modulus:
        raise CohomologyError("cocycle modulus does not divide the tower's mu order")
    rows = []
    for y in range(G.order):
        # coefficient of u_{yx} in u_y c - c u_y, for c = sum c_x u_x
        eqs: dict[int, dict[int, object]] = {}
        for x in range(G.order):
            yx, xy = G.mul(y, x), G.mul(x, y)
            eqs.setdefault(yx, {})
            eqs.setdefault(xy, {})
            v = tower.root_of_unity(scale * int(sigma.table[y, x]))
            eqs[yx][x] = eqs[yx].get(x, tower.zero) + v
            w = tower.root_of_unity(scale * int(sigma.table[x, y]))
            eqs[xy][x] = eqs[xy].get(x, tower.zero) - w
        rows.extend(eqs.values())
    rank, kernel = linalg.rank_kernel(tower.K, rows, G.order)
    return len(kernel)


def alt(sigma: Cochain) -> Cochain:
    """Alt(x, y) = sigma(x, y) / sigma(y, x)."""
    if not sigma.group.is_abelian():
        raise CohomologyError("Alt is only defined for abelian groups")
    return sigma._like(sigma.table - sigma.table.T)


def bilinear_cocycle(G: FiniteGroup, m: int, form) -> Cochain:
    """sigma(x, y) = B(x, y) for G = Z_n^r with the standard coordinates; ``form`` is an r x r integer matrix."""
    B = np.asarray(form, dtype=np.int64)
    coords = abelian_coordinates(G, B.shape[0])
    return Cochain(G, 2, m, coords @ B @ coords.T)


def abelian_coordinates(G: FiniteGroup, rank: int) -> np.ndarray:
    """Coordinates of the elements of ``elementary_abelian(n, rank)`` (first coordinate most significant)."""
    n = round(G.order ** (1 / rank)) if rank else 1
    out = np.zeros((G.order, rank), dtype=np.int64)
    for x in range(G.order):
        v, r = x, []
        for _ in range(rank):
            r.append(v % n)
            v //= n
        out[x] = r[::-1]
    return out


def symplectic_cocycle(N: FiniteGroup, m: int, scale: int = 1) -> Cochain:
    """zeta^(x2 y1 - x1 y2) on Z_n^2 with zeta of order m."""
    return bilinear_cocycle(N, m, [[0, -scale], [scale, 0]])


# coboundaries and cocycle spaces
# -------------------------------

def _delta1_matrix(G: FiniteGroup) -> np.ndarray:
    """Rows: pairs (x, y) with x, y != e; columns: eta(z), z != e."""
    n = G.order
    M = np.zeros(((n - 1) ** 2, n - 1), dtype=np.int64)
    for r, (x, y) in enumerate(itertools.product(range(1, n), repeat=2)):
        M[r, x - 1] += 1
        M[r, y - 1] += 1
        xy = G.mul(x, y)
        if xy:
            M[r, xy - 1] -= 1
    return M


def coboundary_system(G: FiniteGroup, target: Cochain) -> zmod.Solution:
    if not target.is_normalized():
        raise CohomologyError("target must be normalized")
    b = target.table[1:, 1:].reshape(-1)
    return zmod.solve_mod(_delta1_matrix(G), b, target.modulus)


def _eta_from(G: FiniteGroup, m: int, x: np.ndarray) -> Cochain:
    return Cochain(G, 1, m, np.concatenate([[0], x]))


def solve_coboundary(G: FiniteGroup, target: Cochain) -> Cochain | None:
    """Some normalized eta with delta_1 eta == target, or None."""
    sol = coboundary_system(G, target)
    if not sol.solvable:
        return None
    return _eta_from(G, target.modulus, sol.particular)


def homomorphisms(G: FiniteGroup, m: int) -> list[Cochain]:
    """Generators of Hom(G, Z/m), as degree-1 cochains (the kernel of delta_1)."""
    gens, _ = zmod.kernel_mod(_delta1_matrix(G), m, ncols=G.order - 1)
    return [_eta_from(G, m, g) for g in gens]


def all_homomorphisms(G: FiniteGroup, m: int) -> list[Cochain]:
    gens, orders = zmod.kernel_mod(_delta1_matrix(G), m, ncols=G.order - 1)
    out = set()
    for ts in itertools.product(*(range(o) for o in orders)):
        v = sum((t * g for t, g in zip(ts, gens)), np.zeros(G.order - 1, dtype=np.int64)) % m
        out.add(tuple(v))
    return [_eta_from(G, m, np.array(v, dtype=np.int64)) for v in sorted(out)]


def _delta2_matrix(G: FiniteGroup) -> np.ndarray:
    n = G.order
    col = {p: i for i, p in enumerate(itertools.product(range(1, n), repeat=2))}
    rows = []
    for x, y, z in itertools.product(range(1, n), repeat=3):
        r = np.zeros(len(col), dtype=np.int64)
        for (a, b), s in (((y, z), 1), ((G.mul(x, y), z), -1), ((x, G.mul(y, z)), 1), ((x, y), -1)):
            if a and b:
                r[col[a, b]] += s
        rows.append(r)
    return np.array(rows, dtype=np.int64).reshape(len(rows), len(col))


def _sigma_from(G: FiniteGroup, m: int, v: np.ndarray) -> Cochain:
    n = G.order
    t = np.zeros((n, n), dtype=np.int64)
    t[1:, 1:] = np.asarray(v).reshape(n - 1, n - 1)
    return Cochain(G, 2, m, t)


@dataclass
class CocycleModule:
    """Z^2(N, Z/m) as a direct sum of cyclic groups <generators[i]> of order orders[i]."""
    group: FiniteGroup
    modulus: int
    generators: list[Cochain]
    orders: list[int]

    @property
    def invariant_factors(self) -> list[int]:
        return zmod.invariant_factors(self.orders)

    @property
    def size(self) -> int:
        return prod(self.orders)

    def elements(self):
        m = self.modulus
        for ts in itertools.product(*(range(o) for o in self.orders)):
            t = sum((k * g.table for k, g in zip(ts, self.generators)), np.zeros_like(self.generators[0].table)) \
                if self.generators else np.zeros((self.group.order,) * 2, dtype=np.int64)
            yield Cochain(self.group, 2, m, t)


def cocycle_space(N: FiniteGroup, m: int, bound: int = 10 ** 6) -> CocycleModule:
    if (N.order ** 2) * max(m.bit_length(), 1) > bound:
        raise CohomologyError("cocycle space exceeds the configured bound")
    if N.order == 1:
        return CocycleModule(N, m, [], [])
    gens, orders = zmod.kernel_mod(_delta2_matrix(N), m, ncols=(N.order - 1) ** 2)
    return CocycleModule(N, m, [_sigma_from(N, m, g) for g in gens], orders)


@dataclass
class CohomologyGroup:
    """H^2(N, Z/m) = Z^2 / B^2 with generating classes of the given orders."""
    group: FiniteGroup
    modulus: int
    generators: list[Cochain]
    orders: list[int]

    @property
    def size(self) -> int:
        return prod(self.orders)

    def representatives(self) -> list[Cochain]:
        """One cocycle per cohomology class, in a deterministic order."""
        m = self.modulus
        out = []
        for ts in itertools.product(*(range(o) for o in self.orders)):
            t = np.zeros((self.group.order,) * 2, dtype=np.int64)
            for k, g in zip(ts, self.generators):
                t = t + k * g.table
            out.append(Cochain(self.group, 2, m, t))
        return out


def second_cohomology(N: FiniteGroup, m: int) -> CohomologyGroup:
    Z = cocycle_space(N, m)
    if not Z.generators:
        return CohomologyGroup(N, m, [], [])
    k = len(Z.generators)
    zmat = np.array([g.table[1:, 1:].reshape(-1) for g in Z.generators]).T     # columns = generators
    # coordinates of every coboundary delta_1(e_z) in the generator basis
    D1 = _delta1_matrix(N)
    rel = [np.diag(Z.orders)]
    coords = []
    for j in range(D1.shape[1]):
        sol = zmod.solve_mod(zmat, D1[:, j], m, certify=False)
        if not sol.solvable:
            raise CohomologyError("coboundary outside the cocycle module")  # would be a bug
        coords.append(sol.particular)
    rel.append(np.array(coords, dtype=np.int64).T.reshape(k, -1))
    R = np.concatenate(rel, axis=1)
    gens, orders = zmod.cokernel_mod(R, m)
    classes = [Cochain(N, 2, m, _sigma_from(N, m, (zmat @ g) % m).table) for g in gens]
    return CohomologyGroup(N, m, classes, orders)


def is_coboundary(sigma: Cochain) -> bool:
    return solve_coboundary(sigma.group, sigma) is not None


def cohomologous(a: Cochain, b: Cochain) -> bool:
    return is_coboundary(a - b)
