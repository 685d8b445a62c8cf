"""
Finite-dimensional k-algebras carrying an action of a finite group.

Vectors are sparse dicts ``{basis index: scalar}`` with scalars in K (their
values lie in k for every algebra built here).  An algebra stores

* ``mult[i][j]``    -- the product e_i e_j,
* ``action[g][j]``  -- the image g . e_j,

and optionally a *centre presentation*: the images in A of the tower's
k-basis of K, which is what lets the K-linear routines
(:func:`verify_simple_fast`, recovery of data) treat A as a K-space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import linalg
from .fields import FieldTower
from .groups import FiniteGroup, Subgroup, coset_decompose, coset_representatives

Vec = dict  # {basis index: scalar}


class AlgebraError(ValueError):
    pass


def _axpy(acc: Vec, a, v: Vec, shift: int = 0) -> None:
    """acc += a * v (indices of v shifted)."""
    for i, x in v.items():
        j = i + shift
        w = acc.get(j)
        y = x if a is None else a * x
        if w is None:
            acc[j] = y
        else:
            w = w + y
            if w:
                acc[j] = w
            else:
                del acc[j]


@dataclass
class InducedInfo:
    """Bookkeeping for Ind_S^G(B): right coset representatives and the block algebra."""
    S: Subgroup
    reps: list[int]
    block: "EquivariantAlgebra"


@dataclass(eq=False)
class EquivariantAlgebra:
    tower: FieldTower
    group: FiniteGroup
    mult: list[list[Vec]]
    action: list[list[Vec]]
    unit: Vec
    labels: list[str] = field(default_factory=list)
    center_basis: list[Vec] | None = None
    induced: InducedInfo | None = None

    @property
    def dim(self) -> int:
        return len(self.mult)

    @property
    def K(self):
        return self.tower.K

    def basis_vector(self, i: int) -> Vec:
        return {i: self.K.one}

    def product(self, a: Vec, b: Vec) -> Vec:
        out: Vec = {}
        for i, x in a.items():
            row = self.mult[i]
            for j, y in b.items():
                _axpy(out, x * y, row[j])
        return out

    def act(self, g: int, a: Vec) -> Vec:
        out: Vec = {}
        cols = self.action[g]
        for j, x in a.items():
            _axpy(out, x, cols[j])
        return out

    def scale(self, c, a: Vec) -> Vec:
        return {i: c * x for i, x in a.items() if c * x}

    def add(self, a: Vec, b: Vec) -> Vec:
        out = dict(a)
        _axpy(out, None, b)
        return out

    def sub(self, a: Vec, b: Vec) -> Vec:
        out = dict(a)
        _axpy(out, -self.K.one, b)
        return out

    def dense(self, a: Vec) -> list:
        z = self.K.zero
        return [a.get(i, z) for i in range(self.dim)]

    def check(self, full: bool = True) -> list[str]:
        """Structural axioms; returns a list of violations (empty when fine)."""
        problems = []
        d = self.dim
        rng = range(d)
        for i in rng:
            e = self.basis_vector(i)
            if self.product(self.unit, e) != e or self.product(e, self.unit) != e:
                problems.append(f"unit law fails at e_{i}")
        triples = itertools.product(rng, rng, rng) if full else ((i, j, (i + j) % d) for i in rng for j in rng)
        for i, j, k in triples:
            lhs = self.product(self.mult[i][j], self.basis_vector(k))
            rhs = self.product(self.basis_vector(i), self.mult[j][k])
            if lhs != rhs:
                problems.append(f"associativity fails at {(i, j, k)}")
                break
        G = self.group
        for g in range(G.order):
            for i in rng:
                for j in rng:
                    lhs = self.act(g, self.mult[i][j])
                    rhs = self.product(self.action[g][i], self.action[g][j])
                    if lhs != rhs:
                        problems.append(f"g={g} is not multiplicative at {(i, j)}")
                        break
            if self.act(g, self.unit) != self.unit:
                problems.append(f"g={g} does not fix the unit")
        for g, h in itertools.product(range(G.order), repeat=2):
            gh = G.mul(g, h)
            for j in rng:
                if self.act(g, self.action[h][j]) != self.action[gh][j]:
                    problems.append(f"action is not a homomorphism at {(g, h)}")
                    break
        for j in rng:
            if self.action[0][j] != self.basis_vector(j):
                problems.append("identity does not act trivially")
                break
        return problems


@dataclass
class Subspace:
    parent: EquivariantAlgebra
    basis: list[list]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[Vec]:
        return [{i: x for i, x in enumerate(v) if x} for v in self.basis]


# constructors
# ------------

class _KCoords:
    """Memoised k-coordinates of beta_a * beta_b-type products."""

    def __init__(self, tower: FieldTower):
        self.tower = tower
        self.cache: dict = {}

    def __call__(self, x) -> list:
        c = self.cache.get(x)
        if c is None:
            c = self.tower.k_coords(x)
            self.cache[x] = c
        return c


def _sparse_block(coords, base: int) -> Vec:
    return {base + j: c for j, c in enumerate(coords) if c}


def twisted_group_algebra(d) -> EquivariantAlgebra:
    """A(K_sigma N, gamma) with k-basis beta_a u_x (index ``npos * [K:k] + a``), acted on by ``d.S.group``."""
    t = d.tower
    r = t.degree
    beta = t.k_basis
    Ng = d.N.group
    n = Ng.order
    kc = _KCoords(t)
    sig, gam = d.sigma.table, d.gamma
    mult = [[None] * (n * r) for _ in range(n * r)]
    for x, y in itertools.product(range(n), repeat=2):
        xy = Ng.mul(x, y)
        z = t.root_of_unity(int(sig[x, y]))
        for a, b in itertools.product(range(r), repeat=2):
            mult[x * r + a][y * r + b] = _sparse_block(kc(beta[a] * beta[b] * z), xy * r)
    Sg = d.S.group
    action = []
    for s in range(Sg.order):
        gb = d.gbar[s]
        cols = []
        for x in range(n):
            sx = d.conj[s][x]
            z = t.root_of_unity(int(gam[s, x]))
            for a in range(r):
                cols.append(_sparse_block(kc(t.apply(gb, beta[a]) * z), sx * r))
        action.append(cols)
    labels = [f"b{a}*u{d.N.elements[x]}" for x in range(n) for a in range(r)]
    center = [{a: t.one} for a in range(r)]
    return EquivariantAlgebra(t, Sg, mult, action, {0: t.one}, labels, center)


def induced_algebra(G: FiniteGroup, S: Subgroup, B: EquivariantAlgebra) -> EquivariantAlgebra:
    """Ind_S^G(B): functions r on G with r(sg) = s.r(g), stored by their values on coset representatives."""
    if B.group.order != S.order:
        raise AlgebraError("B must be an algebra over S")
    reps = coset_representatives(G, S)
    nb, db = len(reps), B.dim
    mult = [[{} for _ in range(nb * db)] for _ in range(nb * db)]
    for i in range(nb):
        for j, k in itertools.product(range(db), repeat=2):
            mult[i * db + j][i * db + k] = {i * db + c: v for c, v in B.mult[j][k].items()}
    action = []
    for g in range(G.order):
        cols = [None] * (nb * db)
        ginv = G.inv(g)
        for i, gi in enumerate(reps):
            # g_l g = s g_i  <=>  g_i g^{-1} = s^{-1} g_l
            s_inv, l = coset_decompose(G, S, reps, G.mul(gi, ginv))
            s = S.position(G.inv(s_inv))
            for j in range(db):
                cols[i * db + j] = {l * db + c: v for c, v in B.action[s][j].items()}
        action.append(cols)
    unit = {}
    for i in range(nb):
        for c, v in B.unit.items():
            unit[i * db + c] = v
    labels = [f"[{gi}]{lab}" for gi in reps for lab in (B.labels or [str(j) for j in range(db)])]
    center = B.center_basis if nb == 1 else None
    return EquivariantAlgebra(B.tower, G, mult, action, unit, labels, center, InducedInfo(S, reps, B))


def canonical_imprimitive_system(A: EquivariantAlgebra) -> list[Vec]:
    """The coset idempotents e_i (value 1_B on the coset S g_i, zero elsewhere) of an induced algebra."""
    info = A.induced
    if info is None:
        raise AlgebraError("algebra was not built by induction")
    db = info.block.dim
    return [{i * db + c: v for c, v in info.block.unit.items()} for i in range(len(info.reps))]


def simple_block(A: EquivariantAlgebra) -> EquivariantAlgebra:
    """The block of the identity coset, as an algebra over its stabiliser S, read off A's own tables."""
    info = A.induced
    if info is None:
        return A
    S, db = info.S, info.block.dim
    inside = range(db)
    mult = [[dict(A.mult[i][j]) for j in inside] for i in inside]
    action = []
    for s in S.elements:
        cols = []
        for j in inside:
            v = A.action[s][j]
            if any(c >= db for c in v):
                raise AlgebraError("identity block is not stable under its stabiliser")
            cols.append(dict(v))
        action.append(cols)
    unit = {c: v for c, v in A.unit.items() if c < db}
    return EquivariantAlgebra(A.tower, S.group, mult, action, unit, A.labels[:db], info.block.center_basis)


def function_algebra(G: FiniteGroup, tower: FieldTower) -> EquivariantAlgebra:
    """k^G with (g.f)(x) = f(xg); basis the delta functions."""
    n = G.order
    one = tower.one
    mult = [[({i: one} if i == j else {}) for j in range(n)] for i in range(n)]
    # (g . delta_j)(x) = delta_j(xg) -> delta_{j g^-1}
    action = [[{G.mul(j, G.inv(g)): one} for j in range(n)] for g in range(n)]
    unit = {i: one for i in range(n)}
    return EquivariantAlgebra(tower, G, mult, action, unit, [f"delta{j}" for j in range(n)])


def trivial_action_algebra(G: FiniteGroup, tower: FieldTower, factors: int) -> EquivariantAlgebra:
    """k x ... x k with every group element acting trivially (a standard non-Galois example)."""
    one = tower.one
    mult = [[({i: one} if i == j else {}) for j in range(factors)] for i in range(factors)]
    action = [[{j: one} for j in range(factors)] for _ in range(G.order)]
    return EquivariantAlgebra(tower, G, mult, action, {i: one for i in range(factors)})


# matrices and verification
# -------------------------

@dataclass
class Matrix:
    """A sparse matrix stored by columns."""
    nrows: int
    ncols: int
    columns: list[Vec]

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def rank(self) -> int:
        return linalg.rank(self.columns)

    def is_bijective(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.ncols

    def dense(self, zero) -> list[list]:
        rows = [[zero] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                rows[i][j] = v
        return rows

    def to_json(self) -> dict:
        return {"shape": [self.nrows, self.ncols],
                "columns": [{str(i): v.to_json() for i, v in sorted(c.items())} for c in self.columns]}


def theta_matrix(A: EquivariantAlgebra) -> Matrix:
    """a # g -> (b -> a (g.b)); column (i, g) has entry at row j*d + k equal to the e_k-coefficient of e_i (g.e_j)."""
    d, G = A.dim, A.group
    cols = []
    for i in range(d):
        ei = A.basis_vector(i)
        for g in range(G.order):
            col: Vec = {}
            for j in range(d):
                for k, v in A.product(ei, A.action[g][j]).items():
                    col[j * d + k] = v
            cols.append(col)
    return Matrix(d * d, d * G.order, cols)


def canonical_map_matrix(A: EquivariantAlgebra) -> Matrix:
    """a (x) b -> sum_g a (g.b) (x) t_g; column (i, j), row g*d + k."""
    d, G = A.dim, A.group
    cols = []
    for i in range(d):
        ei = A.basis_vector(i)
        for j in range(d):
            col: Vec = {}
            for g in range(G.order):
                for k, v in A.product(ei, A.action[g][j]).items():
                    col[g * d + k] = v
            cols.append(col)
    return Matrix(d * G.order, d * d, cols)


def fixed_subalgebra(A: EquivariantAlgebra) -> Subspace:
    d = A.dim
    rows: dict[tuple[int, int], Vec] = {}
    one = A.K.one
    for g in A.group.generators():
        for j in range(d):
            col = dict(A.action[g][j])
            col[j] = col.get(j, A.K.zero) - one
            for k, v in col.items():
                if v:
                    rows.setdefault((g, k), {})[j] = v
    _, ker = linalg.rank_kernel(A.K, list(rows.values()), d)
    return Subspace(A, ker)


def _commutator_rows(A: EquivariantAlgebra) -> list[Vec]:
    d = A.dim
    rows: dict[tuple[int, int], Vec] = {}
    for i in range(d):
        for j in range(d):
            diff = A.sub(A.mult[i][j], A.mult[j][i])
            for k, v in diff.items():
                rows.setdefault((j, k), {})[i] = v
    return list(rows.values())


def center(A: EquivariantAlgebra) -> Subspace:
    _, ker = linalg.rank_kernel(A.K, _commutator_rows(A), A.dim)
    return Subspace(A, ker)


@dataclass
class GaloisReport:
    dim_ok: bool
    theta_bijective: bool
    can_bijective: bool
    fixed_dim: int
    theta_rank: int
    can_rank: int
    matrices: dict | None = None

    @property
    def agree(self) -> bool:
        return self.theta_bijective == self.can_bijective

    @property
    def verdict(self) -> bool:
        return self.dim_ok and self.theta_bijective

    def to_json(self) -> dict:
        out = {"dim_ok": self.dim_ok, "theta_bijective": self.theta_bijective,
               "can_bijective": self.can_bijective, "fixed_dim": self.fixed_dim,
               "verdict": self.verdict, "theta_rank": self.theta_rank, "can_rank": self.can_rank,
               "checks_agree": self.agree}
        if self.matrices is not None:
            out["matrices"] = self.matrices
        return out


def verify_galois(A: EquivariantAlgebra, emit_matrices: bool = False) -> GaloisReport:
    th, can = theta_matrix(A), canonical_map_matrix(A)
    tr, cr = th.rank(), can.rank()
    rep = GaloisReport(
        dim_ok=A.dim == A.group.order,
        theta_bijective=th.nrows == th.ncols and tr == th.ncols,
        can_bijective=can.nrows == can.ncols and cr == can.ncols,
        fixed_dim=fixed_subalgebra(A).dim,
        theta_rank=tr, can_rank=cr,
    )
    if emit_matrices:
        rep.matrices = {"theta": th.to_json(), "can": can.to_json()}
    return rep


# K-linear structure
# ------------------

class KStructure:
    """A viewed as a K-space through its centre presentation c_a = image of beta_a."""

    def __init__(self, A: EquivariantAlgebra):
        if A.center_basis is None:
            raise AlgebraError("the centre of A is not presented")
        self.A = A
        t = A.tower
        self.r = t.degree
        self.c = A.center_basis
        d = A.dim
        if d % self.r:
            raise AlgebraError("dim A is not a multiple of [K:k]")
        chosen: list[int] = []
        ech = linalg.Echelon(reduced=False)
        for j in range(d):
            vs = [A.product(ca, A.basis_vector(j)) for ca in self.c]
            trial = linalg.Echelon(reduced=False)
            trial.pivots = dict(ech.pivots)
            if all(trial.add(v) for v in vs):
                ech = trial
                chosen.append(j)
            if len(chosen) * self.r == d:
                break
        if len(chosen) * self.r != d:
            raise AlgebraError("A is not free over its presented centre")
        self.kbasis = chosen
        cols = [A.product(ca, A.basis_vector(j)) for j in chosen for ca in self.c]
        M = [[cols[c].get(i, t.zero) for c in range(d)] for i in range(d)]
        self.Pinv = linalg.inverse(t.K, M)

    @property
    def n(self) -> int:
        return len(self.kbasis)

    def coords(self, v: Vec) -> list:
        """K-coordinates of v on the chosen K-basis."""
        t = self.A.tower
        dense = self.A.dense(v)
        lam = linalg.matvec(self.Pinv, dense, t.zero)
        return [t.from_k_coords(lam[i * self.r:(i + 1) * self.r]) for i in range(self.n)]

    def scalar_vector(self, alpha) -> Vec:
        """The central element representing alpha in K."""
        out: Vec = {}
        for co, ca in zip(self.A.tower.k_coords(alpha), self.c):
            if co:
                _axpy(out, co, ca)
        return out

    def scalar_ratio(self, v: Vec, w: Vec):
        """alpha in K with v == alpha w, or None."""
        t = self.A.tower
        vs = [self.A.product(ca, w) for ca in self.c]
        rows: dict[int, dict] = {}
        for a, x in enumerate(vs):
            for i, y in x.items():
                rows.setdefault(i, {})[a] = y
        keys = sorted(set(rows) | set(v))
        M = [rows.get(i, {}) for i in keys]
        b = [v.get(i, t.zero) for i in keys]
        sol = linalg.solve(t.K, M, b, self.r)
        if sol is None:
            return None
        return t.from_k_coords(sol)


@dataclass
class SimpleReport:
    dim_ok: bool
    center_dim: int
    center_ok: bool
    n_trivial_on_center: bool
    galois_faithful: bool
    theta_n_shape: tuple[int, int]
    theta_n_rank: int

    @property
    def theta_n_bijective(self) -> bool:
        return self.theta_n_shape[0] == self.theta_n_shape[1] == self.theta_n_rank

    @property
    def verdict(self) -> bool:
        return (self.dim_ok and self.center_ok and self.n_trivial_on_center
                and self.galois_faithful and self.theta_n_bijective)

    def to_json(self) -> dict:
        return {"dim_ok": self.dim_ok, "center_dim": self.center_dim, "center_ok": self.center_ok,
                "n_trivial_on_center": self.n_trivial_on_center, "galois_faithful": self.galois_faithful,
                "theta_n_shape": list(self.theta_n_shape), "theta_n_rank": self.theta_n_rank,
                "theta_n_bijective": self.theta_n_bijective, "verdict": self.verdict}


def verify_simple_fast(A: EquivariantAlgebra, N: Sequence[int] | Subgroup) -> SimpleReport:
    """Galois test for a simple object through K^N and the Galois action on the centre.

    ``N`` lists elements of ``A.group``.  The centre must be presented.
    """
    Nel = list(N.elements if isinstance(N, Subgroup) else N)
    G = A.group
    t = A.tower
    r = t.degree
    if G.order % len(Nel) or G.order // len(Nel) != r:
        raise AlgebraError("[S:N] does not match [K:k]")
    zc = center(A)
    if zc.dim != r:
        raise AlgebraError(f"centre has k-dimension {zc.dim}, expected {r}")
    KS = KStructure(A)
    c = KS.c
    in_center = all(not any(A.sub(A.product(ca, A.basis_vector(j)), A.product(A.basis_vector(j), ca)).values())
                    for ca in c for j in range(A.dim))
    n_trivial = all(A.act(x, ca) == ca for x in Nel for ca in c)
    # the S-action on K, read through the presentation
    beta = t.k_basis
    images = []
    for g in range(G.order):
        img = tuple(KS.scalar_ratio(A.act(g, ca), A.unit) for ca in c)
        images.append(img)
    kernel = [g for g in range(G.order) if images[g] == tuple(beta)]
    distinct = len(set(images))
    faithful = sorted(kernel) == sorted(Nel) and distinct == r and None not in {x for im in images for x in im}
    # theta_N over K
    n = KS.n
    cols = []
    bvec = [A.basis_vector(j) for j in KS.kbasis]
    for i in range(n):
        for x in Nel:
            col: Vec = {}
            for j in range(n):
                for k, v in enumerate(KS.coords(A.product(bvec[i], A.act(x, bvec[j])))):
                    if v:
                        col[j * n + k] = v
            cols.append(col)
    th = Matrix(n * n, n * len(Nel), cols)
    return SimpleReport(
        dim_ok=A.dim == G.order,
        center_dim=zc.dim,
        center_ok=in_center,
        n_trivial_on_center=n_trivial,
        galois_faithful=faithful,
        theta_n_shape=th.shape,
        theta_n_rank=th.rank(),
    )


# morphisms
# ---------

def check_intertwiner(A: EquivariantAlgebra, B: EquivariantAlgebra, F: list[Vec]) -> dict:
    """Is e_i -> F[i] a bijective, unital, multiplicative, equivariant map A -> B?"""
    def apply(v: Vec) -> Vec:
        out: Vec = {}
        for i, x in v.items():
            _axpy(out, x, F[i])
        return out

    d = A.dim
    bij = d == B.dim and linalg.rank(F) == d
    unital = apply(A.unit) == B.unit
    mult = all(apply(A.mult[i][j]) == B.product(F[i], F[j]) for i in range(d) for j in range(d))
    equi = A.group.order == B.group.order and all(
        apply(A.action[g][i]) == B.act(g, F[i]) for g in A.group.generators() for i in range(d))
    return {"bijective": bij, "unital": unital, "multiplicative": mult, "equivariant": equi,
            "ok": bij and unital and mult and equi}


# serialization
# -------------

def algebra_to_json(A: EquivariantAlgebra) -> dict:
    d = A.dim
    z = A.K.zero

    def dense(v):
        return [v.get(i, z).to_json() for i in range(d)]

    out: dict[str, Any] = {
        "dim": d,
        "tower": A.tower.to_json(),
        "group": {"order": A.group.order, "table": A.group.table.tolist()},
        "structure": [[dense(A.mult[i][j]) for j in range(d)] for i in range(d)],
        "action": {str(g): [dense(A.action[g][j]) for j in range(d)] for g in range(A.group.order)},
        "unit": dense(A.unit),
        "labels": list(A.labels),
    }
    if A.center_basis is not None:
        out["center"] = [dense(c) for c in A.center_basis]
    if A.induced is not None:
        info = A.induced
        out["induced"] = {"S": list(info.S.elements), "reps": list(info.reps), "block_dim": info.block.dim,
                          "block_center": None if info.block.center_basis is None
                          else [[info.block.center_basis[a].get(i, z).to_json() for i in range(info.block.dim)]
                                for a in range(len(info.block.center_basis))]}
    return out


def algebra_from_json(data: dict) -> EquivariantAlgebra:
    from .fields import tower_from_json
    from .groups import from_table

    t = tower_from_json(data["tower"])
    G = from_table(data["group"]["table"])
    d = int(data["dim"])

    def vec(entries) -> Vec:
        if len(entries) != d:
            raise AlgebraError("vector of wrong length")
        out = {}
        for i, e in enumerate(entries):
            x = t.scalar_from_json(e)
            if x:
                out[i] = x
        return out

    mult = [[vec(data["structure"][i][j]) for j in range(d)] for i in range(d)]
    action = [[vec(col) for col in data["action"][str(g)]] for g in range(G.order)]
    A = EquivariantAlgebra(t, G, mult, action, vec(data["unit"]), list(data.get("labels", [])),
                           [vec(c) for c in data["center"]] if data.get("center") is not None else None)
    if data.get("induced") is not None:
        info = data["induced"]
        S = G.subgroup(info["S"])
        db = int(info["block_dim"])
        bc = info.get("block_center")
        A.induced = InducedInfo(S, list(info["reps"]), _BlockStub(db, None))
        block = simple_block(A)
        if bc is not None:
            block.center_basis = [{i: x for i, x in enumerate(t.scalar_from_json(e) for e in c) if x} for c in bc]
        A.induced = InducedInfo(S, list(info["reps"]), block)
    return A


class _BlockStub:
    def __init__(self, dim, center_basis):
        self.dim, self.center_basis = dim, center_basis
