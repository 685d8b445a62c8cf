"""
Galois data (S, K, N, sigma, gamma) for k^G and the operations on them.

Tables are exponent arrays mod ``tower.m``: ``sigma.table[x, y]`` and
``gamma[s, x]`` are indexed by *positions* in ``N.elements`` and
``S.elements``.  The Galois map of the datum is stored as ``iso``: for
each coset of N in S (ordered by smallest element) the index of an
automorphism of the tower.  In exponent notation the three conditions read

    C1  gamma(x, y) + sigma(x, x^-1) = sigma(x, y) + sigma(xy, x^-1)
    C2  a_g sigma(x, y) + gamma(g, xy) = sigma(^g x, ^g y) + gamma(g, x) + gamma(g, y)
    C3  gamma(gh, x) = a_g gamma(h, x) + gamma(g, ^h x)

with ``a_g`` the exponent of the automorphism attached to g.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import algebra, cohomology, zmod
from .cohomology import Cochain
from .fields import FieldTower
from .groups import (FiniteGroup, GroupError, GroupHom, Subgroup, coset_decompose, enumerate_isomorphisms,
                     is_normal_in, quotient_group)


class DatumError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GaloisDatum:
    G: FiniteGroup
    S: Subgroup
    N: Subgroup
    tower: FieldTower
    iso: tuple[int, ...]
    sigma: Cochain
    gamma: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.gamma, dtype=np.int64) % self.tower.m
        if g.shape != (self.S.order, self.N.order):
            raise DatumError(f"gamma has shape {g.shape}, expected {(self.S.order, self.N.order)}")
        g.setflags(write=False)
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "iso", tuple(int(a) for a in self.iso))
        if self.sigma.modulus != self.tower.m:
            raise DatumError("sigma must be given modulo the tower's mu order")
        if self.sigma.group.order != self.N.order:
            raise DatumError("sigma is not a cochain on N")

    @property
    def m(self) -> int:
        return self.tower.m

    @cached_property
    def n_in_s(self) -> list[int]:
        """Positions in S of the elements of N."""
        return [self.S.position(x) for x in self.N.elements]

    @cached_property
    def N_in_S(self) -> Subgroup:
        return self.S.group.subgroup(self.n_in_s)

    @cached_property
    def quotient(self) -> tuple[FiniteGroup, GroupHom]:
        return quotient_group(self.S.group.full, self.N_in_S)

    @cached_property
    def gbar(self) -> list[int]:
        """Galois index attached to each position of S."""
        _, proj = self.quotient
        return [self.iso[proj(s)] for s in range(self.S.order)]

    @cached_property
    def a(self) -> np.ndarray:
        """Exponent of the Galois action on mu, per position of S."""
        return np.array([self.tower.automorphisms[j].exponent for j in self.gbar], dtype=np.int64)

    @cached_property
    def conj(self) -> np.ndarray:
        """conj[s, x] = position of ^s x in N."""
        G = self.G
        return np.array([[self.N.position(G.conj(s, x)) for x in self.N.elements] for s in self.S.elements],
                        dtype=np.int64)

    @cached_property
    def c1_table(self) -> np.ndarray:
        """The values gamma(x, y), x, y in N, forced by C1."""
        return c1_values(self.sigma)

    def to_json(self) -> dict:
        return {
            "group": {"order": self.G.order, "table": self.G.table.tolist()},
            "S": list(self.S.elements),
            "N": list(self.N.elements),
            "tower": self.tower.to_json(),
            "iso": list(self.iso),
            "sigma": self.sigma.to_json(),
            "gamma": {"table": self.gamma.tolist()},
        }

    def key(self) -> tuple:
        """Deterministic sort key."""
        return (self.S.order, self.S.elements, self.N.order, self.N.elements, repr(sorted(self.tower.to_json().items())),
                self.iso, self.sigma.table.tobytes(), self.gamma.tobytes())


def c1_values(sigma: Cochain) -> np.ndarray:
    Ng = sigma.group
    t = sigma.table
    n = Ng.order
    out = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        xi = Ng.inv(x)
        for y in range(n):
            out[x, y] = t[x, y] + t[Ng.mul(x, y), xi] - t[x, xi]
    return out % sigma.modulus


def galois_isomorphisms(S: Subgroup, N: Subgroup, tower: FieldTower) -> list[tuple[int, ...]]:
    """Every isomorphism S/N -> Gal(K|k), as tuples of Galois indices per coset."""
    N_in_S = S.group.subgroup(S.position(x) for x in N.elements)
    Q, _ = quotient_group(S.group.full, N_in_S)
    return [h.image for h in enumerate_isomorphisms(Q, tower.galois_group)]


def make_datum(G: FiniteGroup, S, N, tower: FieldTower, sigma, gamma=None, iso=None,
               modulus: int | None = None) -> GaloisDatum:
    """Assemble a datum; tables given mod a divisor of ``tower.m`` are lifted.

    ``modulus`` is the modulus of a raw ``sigma``/``gamma`` array (default ``tower.m``);
    ``gamma=None`` takes the first solution of :func:`solve_gamma`.
    """
    S = S if isinstance(S, Subgroup) else G.subgroup(S)
    N = N if isinstance(N, Subgroup) else G.subgroup(N)
    m = tower.m
    gm = modulus or m
    if m % gm:
        raise DatumError(f"modulus {gm} does not divide the tower's mu order {m}")
    if not isinstance(sigma, Cochain):
        sigma = Cochain(N.group, 2, gm, np.asarray(sigma))
    if sigma.modulus != m:
        sigma = sigma.lift(m)
    if iso is None:
        isos = galois_isomorphisms(S, N, tower)
        if not isos:
            raise DatumError("S/N is not isomorphic to the Galois group")
        iso = isos[0]
    if gamma is None:
        sols = solve_gamma(G, S, N, tower, sigma, iso)
        if not sols:
            raise DatumError("no gamma satisfies C1-C3")
        gamma = sols[0]
    else:
        gamma = np.asarray(gamma, dtype=np.int64) * (m // gm)
    return GaloisDatum(G, S, N, tower, tuple(iso), sigma, gamma)


def datum_from_json(data: dict) -> GaloisDatum:
    """Inverse of :meth:`GaloisDatum.to_json`; ``sigma.m`` and ``gamma.m`` may be divisors of the tower's order."""
    from .fields import tower_from_json
    from .groups import group_from_json

    G = group_from_json(data["group"])
    tower = tower_from_json(data["tower"])
    S, N = G.subgroup(data["S"]), G.subgroup(data["N"])
    sig = data["sigma"]
    sm = int(sig.get("m", tower.m))
    sigma = Cochain(N.group, 2, sm, np.array(sig["table"], dtype=np.int64).reshape(N.order, N.order))
    gamma = None
    if data.get("gamma"):
        gm = int(data["gamma"].get("m", tower.m))
        if tower.m % gm:
            raise DatumError(f"gamma modulus {gm} does not divide {tower.m}")
        gamma = np.array(data["gamma"]["table"], dtype=np.int64).reshape(S.order, N.order) * (tower.m // gm)
    return make_datum(G, S, N, tower, sigma, gamma, data.get("iso"))


# validation
# ----------

@dataclass
class ValidationReport:
    items: dict[str, dict] = field(default_factory=dict)

    def record(self, name: str, ok: bool, witness=None, detail: str = ""):
        self.items[name] = {"ok": bool(ok), "witness": witness, "detail": detail}

    @property
    def verdict(self) -> bool:
        return all(v["ok"] for v in self.items.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.items.items() if not v["ok"]]

    def to_json(self) -> dict:
        return {"items": self.items, "verdict": self.verdict}


def _first_violation(mask: np.ndarray):
    bad = np.argwhere(mask)
    return None if not len(bad) else [int(v) for v in bad[0]]


def check_conditions(d: GaloisDatum, gamma: np.ndarray | None = None) -> dict[str, tuple[bool, object]]:
    """C1, C2, C3 and normalisation of gamma, each with a first violating index tuple."""
    g = d.gamma if gamma is None else np.asarray(gamma) % d.m
    m = d.m
    sig = d.sigma.table
    Sg, Ng = d.S.group, d.N.group
    nS, nN = Sg.order, Ng.order
    conj = d.conj
    a = d.a
    out = {}
    bad = _first_violation(g[0:1, :] != 0) or _first_violation(g[:, 0:1] != 0)
    out["normalized"] = (bad is None, None if bad is None else [d.S.elements[bad[0]], d.N.elements[bad[1]]])
    # C1 on N x N
    c1 = d.c1_table
    lhs = g[d.n_in_s, :]
    bad = _first_violation((lhs - c1) % m != 0)
    out["C1"] = (bad is None, None if bad is None else [d.N.elements[bad[0]], d.N.elements[bad[1]]])
    # C2: a_g sigma(x,y) + gamma(g,xy) - sigma(^gx,^gy) - gamma(g,x) - gamma(g,y)
    T = Ng.table
    cx = conj[:, :, None]
    cy = conj[:, None, :]
    c2 = (a[:, None, None] * sig[None, :, :] + g[:, T] - sig[cx, cy] - g[:, :, None] - g[:, None, :]) % m
    bad = _first_violation(c2 != 0)
    out["C2"] = (bad is None, None if bad is None else
                 [d.S.elements[bad[0]], d.N.elements[bad[1]], d.N.elements[bad[2]]])
    # C3: gamma(gh,x) - a_g gamma(h,x) - gamma(g, ^h x)
    ST = Sg.table
    c3 = (g[ST, :] - a[:, None, None] * g[None, :, :] - g[np.arange(nS)[:, None, None], conj[None, :, :]]) % m
    bad = _first_violation(c3 != 0)
    out["C3"] = (bad is None, None if bad is None else
                 [d.S.elements[bad[0]], d.S.elements[bad[1]], d.N.elements[bad[2]]])
    return out


def validate_datum(d: GaloisDatum) -> ValidationReport:
    rep = ValidationReport()
    G = d.G
    normal = is_normal_in(d.N, d.S) if d.N.issubset(d.S) else False
    inside = d.S.parent == G and d.N.parent == G
    rep.record("(i) subgroups", normal and inside, None if normal and inside else "N is not a normal subgroup of S")
    # (ii)
    witness = None
    ok2 = False
    try:
        Q, _ = d.quotient
        Gal = d.tower.galois_group
        if len(d.iso) != Q.order or Q.order != Gal.order:
            witness = f"|S/N| = {Q.order}, [K:k] = {Gal.order}"
        else:
            h = GroupHom(Q, Gal, d.iso)
            ok2 = h.is_bijective()
            witness = None if ok2 else "iso is not bijective"
    except (GroupError, DatumError, IndexError) as e:
        witness = str(e)
    rep.record("(ii) galois", ok2, witness)
    p = d.tower.characteristic
    rep.record("(iii) characteristic", p == 0 or d.N.order % p != 0, None if p == 0 or d.N.order % p else p)
    # (iv)
    sig = d.sigma
    norm = sig.is_normalized()
    dsig = cohomology.group_differential(2, sig)
    bad = _first_violation(dsig.table != 0)
    cocycle = norm and bad is None
    rep.record("(iv) cocycle", cocycle, None if cocycle else ("not normalized" if not norm else
                                                              [d.N.elements[i] for i in bad]))
    if cocycle:
        regs = cohomology.regular_elements(sig)
        rep.record("(iv) nondegenerate", regs == [0], None if regs == [0] else [d.N.elements[i] for i in regs if i])
    else:
        rep.record("(iv) nondegenerate", False, "sigma is not a cocycle")
    # (v)
    if ok2 and normal:
        for name, (ok, w) in check_conditions(d).items():
            rep.record(f"(v) {name}", ok, w)
    else:
        rep.record("(v) gamma", False, "Galois map unavailable")
    return rep


def build_object(d: GaloisDatum, check: bool = True) -> algebra.EquivariantAlgebra:
    """Ind_S^G(A(K_sigma N, gamma))."""
    if check:
        rep = validate_datum(d)
        if not rep.verdict:
            raise DatumError(f"invalid datum: {rep.failures()}")
    B = algebra.twisted_group_algebra(d)
    return algebra.induced_algebra(d.G, d.S, B)


# solving for gamma
# -----------------

def _gamma_parametrisation(S: Subgroup, N: Subgroup, d_like) -> tuple[list[int], list, int]:
    """Express gamma(s, x) as (unknown index or -1, constant) via C3 from coset representatives.

    s = n g_i gives gamma(s, x) = gamma(g_i, x) + C1(n, ^{g_i} x).
    """
    Sg = S.group
    Nsub = d_like.N_in_S
    reps = []
    seen = set()
    for s in range(Sg.order):
        c = frozenset(Sg.mul(n, s) for n in Nsub.elements)
        if c not in seen:
            seen.add(c)
            reps.append(s)
    nN = N.order
    unknown = {}
    for i, gi in enumerate(reps[1:], start=1):
        for x in range(1, nN):
            unknown[(i, x)] = len(unknown)
    c1 = d_like.c1_table
    param = np.full((Sg.order, nN), -1, dtype=np.int64)
    const = np.zeros((Sg.order, nN), dtype=np.int64)
    npos = {p: k for k, p in enumerate(d_like.n_in_s)}
    for s in range(Sg.order):
        n, i = coset_decompose(Sg, Nsub, reps, s)
        for x in range(nN):
            gx = d_like.conj[reps[i], x]
            const[s, x] = c1[npos[n], gx]
            if i and x:
                param[s, x] = unknown[(i, x)]
    return reps, (param, const), len(unknown)


class _Frame:
    """The parts of a datum that do not involve gamma."""

    def __init__(self, G, S, N, tower, sigma, iso):
        self.G, self.S, self.N, self.tower, self.sigma, self.iso = G, S, N, tower, sigma, tuple(iso)
        self.m = tower.m

    n_in_s = GaloisDatum.n_in_s
    N_in_S = GaloisDatum.N_in_S
    quotient = GaloisDatum.quotient
    gbar = GaloisDatum.gbar
    a = GaloisDatum.a
    conj = GaloisDatum.conj
    c1_table = GaloisDatum.c1_table


def gamma_system(G, S, N, tower, sigma: Cochain, iso) -> tuple[np.ndarray, np.ndarray, tuple, int]:
    """The affine Z/m system of C2 and C3 in the coset-representative unknowns."""
    f = _Frame(G, S, N, tower, sigma, iso)
    m = tower.m
    _, (param, const), nu = _gamma_parametrisation(S, N, f)
    Sg, Ng = S.group, N.group
    sig = sigma.table
    a, conj = f.a, f.conj
    rows, rhs = [], []

    def term(acc, s, x, coef):
        p = param[s, x]
        if p >= 0:
            acc[p] = acc.get(p, 0) + coef
        return coef * const[s, x]

    for s in range(Sg.order):
        for x in range(1, Ng.order):
            for y in range(1, Ng.order):
                acc: dict[int, int] = {}
                c = term(acc, s, Ng.mul(x, y), 1) + term(acc, s, x, -1) + term(acc, s, y, -1)
                b = sig[conj[s, x], conj[s, y]] - a[s] * sig[x, y] - c
                rows.append(acc)
                rhs.append(b)
    for g in range(1, Sg.order):
        for h in range(1, Sg.order):
            for x in range(1, Ng.order):
                acc = {}
                c = term(acc, Sg.mul(g, h), x, 1) + term(acc, h, x, -int(a[g])) + term(acc, g, conj[h, x], -1)
                rows.append(acc)
                rhs.append(-c)
    A = np.zeros((len(rows), nu), dtype=np.int64)
    for r, acc in enumerate(rows):
        for p, v in acc.items():
            A[r, p] = v
    return A % m, np.array(rhs, dtype=np.int64) % m, (param, const), nu


def solve_gamma(G, S, N, tower, sigma: Cochain, iso=None, limit: int = 10 ** 5) -> list[np.ndarray]:
    """Every gamma table satisfying C1-C3, sorted lexicographically."""
    S = S if isinstance(S, Subgroup) else G.subgroup(S)
    N = N if isinstance(N, Subgroup) else G.subgroup(N)
    if sigma.modulus != tower.m:
        sigma = sigma.lift(tower.m)
    if iso is None:
        isos = galois_isomorphisms(S, N, tower)
        if not isos:
            return []
        iso = isos[0]
    A, b, (param, const), nu = gamma_system(G, S, N, tower, sigma, iso)
    m = tower.m
    if nu == 0:
        sols = [np.zeros(0, dtype=np.int64)] if not b.any() else []
    else:
        sol = zmod.solve_mod(A, b, m, ncols=nu, certify=False)
        if sol.count > limit:
            raise DatumError(f"{sol.count} solutions exceed the enumeration limit {limit}")
        sols = list(sol)
    out = []
    for v in sols:
        full = np.where(param >= 0, v[np.clip(param, 0, None)] if nu else 0, 0) + const
        out.append(full % m)
    out.sort(key=lambda t: tuple(t.reshape(-1)))
    return out


# conjugation and equivalence
# ---------------------------

def conjugate_datum(d: GaloisDatum, g: int) -> GaloisDatum:
    """The datum of A^(g): over g^-1 S g with sigma^(g)(x,y) = sigma(gxg^-1, gyg^-1)."""
    G = d.G
    Sg, Ng = d.S.conjugate_by(g), d.N.conjugate_by(g)
    sp = [d.S.position(G.conj(g, h)) for h in Sg.elements]
    npos = [d.N.position(G.conj(g, x)) for x in Ng.elements]
    sig = d.sigma.table[np.ix_(npos, npos)]
    gam = d.gamma[np.ix_(sp, npos)]
    sigma = Cochain(Ng.group, 2, d.m, sig)
    Nin = Sg.group.subgroup(Sg.position(x) for x in Ng.elements)
    Q, proj = quotient_group(Sg.group.full, Nin)
    iso = [0] * Q.order
    for k, h in enumerate(Sg.elements):
        iso[proj(k)] = d.gbar[sp[k]]
    return GaloisDatum(G, Sg, Ng, d.tower, tuple(iso), sigma, gam)


@dataclass
class EquivalenceWitness:
    g: int
    omega: int
    eta: np.ndarray

    def to_json(self) -> dict:
        return {"g": self.g, "omega": self.omega, "eta": [int(v) for v in self.eta]}


def _conjugation_classes(d1: GaloisDatum, d2: GaloisDatum) -> list[int]:
    """One g per distinct conjugation map, among those with g^-1 S' g = S and g N g^-1 = N'."""
    G = d1.G
    seen, out = set(), []
    for g in range(G.order):
        if d2.S.conjugate_by(g).elements != d1.S.elements:
            continue
        if d1.N.conjugate_by(G.inv(g)).elements != d2.N.elements:
            continue
        key = tuple(G.conj(g, s) for s in d1.S.elements)
        if key not in seen:
            seen.add(key)
            out.append(g)
    return out


def witness_system(d1: GaloisDatum, d2: GaloisDatum, g: int, omega: int) -> tuple[np.ndarray, np.ndarray]:
    """Unknowns eta(x), x in N \\ {e}:

    eta(x) + eta(y) - eta(xy)   = a_w sigma(x,y) - sigma'(gxg^-1, gyg^-1)
    eta(^s x) - a_s eta(x)      = gamma'(gsg^-1, gxg^-1) - a_w gamma(s, x)
    """
    G, m = d1.G, d1.m
    Ng = d1.N.group
    n = Ng.order
    aw = d1.tower.automorphisms[omega].exponent
    np2 = [d2.N.position(G.conj(g, x)) for x in d1.N.elements]
    sp2 = [d2.S.position(G.conj(g, s)) for s in d1.S.elements]
    s1, s2 = d1.sigma.table, d2.sigma.table
    rows, rhs = [], []
    for x in range(n):
        for y in range(n):
            r = np.zeros(n, dtype=np.int64)
            r[x] += 1
            r[y] += 1
            r[Ng.mul(x, y)] -= 1
            rows.append(r[1:])
            rhs.append(aw * s1[x, y] - s2[np2[x], np2[y]])
    for s in range(d1.S.order):
        for x in range(n):
            r = np.zeros(n, dtype=np.int64)
            r[d1.conj[s, x]] += 1
            r[x] -= d1.a[s]
            rows.append(r[1:])
            rhs.append(d2.gamma[sp2[s], np2[x]] - aw * d1.gamma[s, x])
    return np.array(rows, dtype=np.int64).reshape(len(rows), n - 1) % m, np.array(rhs, dtype=np.int64) % m


def are_equivalent(d1: GaloisDatum, d2: GaloisDatum) -> EquivalenceWitness | None:
    if not np.array_equal(d1.G.table, d2.G.table):
        raise DatumError("data live over different groups")
    if d1.tower != d2.tower:
        raise DatumError("data use different towers")
    if d1.S.order != d2.S.order or d1.N.order != d2.N.order:
        return None
    center = d1.tower.galois_center()
    Gal = d1.tower.galois_group
    G = d1.G
    for g in _conjugation_classes(d1, d2):
        sp2 = [d2.S.position(G.conj(g, s)) for s in d1.S.elements]
        if any(d1.gbar[s] != d2.gbar[sp2[s]] for s in range(d1.S.order)):
            continue        # omega central: the Galois maps have to agree after transport
        for w in center:
            A, b = witness_system(d1, d2, g, w)
            if A.shape[1] == 0:
                if not b.any():
                    return EquivalenceWitness(g, w, np.zeros(max(d1.N.order, 1), dtype=np.int64))
                continue
            sol = zmod.solve_mod(A, b, d1.m, certify=False)
            if sol.solvable:
                return EquivalenceWitness(g, w, np.concatenate([[0], sol.particular]).astype(np.int64))
    return None


def check_witness(d1: GaloisDatum, d2: GaloisDatum, w: EquivalenceWitness) -> bool:
    A, b = witness_system(d1, d2, w.g, w.omega)
    return not ((A @ w.eta[1:] - b) % d1.m).any()


def witness_intertwiner(d1: GaloisDatum, d2: GaloisDatum, w: EquivalenceWitness) -> dict:
    """Check that beta u_x -> omega(beta) eta(x) u'_x is an S-algebra isomorphism A(d1) -> A(d2^(g))."""
    d2g = conjugate_datum(d2, w.g)
    A = algebra.twisted_group_algebra(d1)
    B = algebra.twisted_group_algebra(d2g)
    t = d1.tower
    r = t.degree
    kc = algebra._KCoords(t)
    F = []
    npos = [d2g.N.position(x) for x in d1.N.elements]
    for x in range(d1.N.order):
        z = t.root_of_unity(int(w.eta[x]))
        for a in range(r):
            F.append(algebra._sparse_block(kc(t.apply(w.omega, t.k_basis[a]) * z), npos[x] * r))
    if d2g.S.elements != d1.S.elements:
        return {"ok": False, "detail": "stabilisers differ"}
    return algebra.check_intertwiner(A, B, F)


def conjugation_intertwiner(d: GaloisDatum, g: int) -> dict:
    """psi_g(f) = [h -> f(gh)] from build_object(d) to build_object(conjugate_datum(d, g))."""
    G = d.G
    dg = conjugate_datum(d, g)
    A = build_object(d, check=False)
    B = build_object(dg, check=False)
    Bl = A.induced.block
    reps, reps_g = A.induced.reps, B.induced.reps
    db = Bl.dim
    r = d.tower.degree
    # A^(g) basis beta_a u_y (y in N) corresponds to beta_a u^g_{g^-1 y g} in A(d^g)
    relabel = {}
    for y in range(d.N.order):
        yg = G.conj(G.inv(g), d.N.elements[y])
        for a in range(r):
            relabel[y * r + a] = dg.N.position(yg) * r + a
    F = [dict() for _ in range(A.dim)]
    for i in range(len(reps)):
        for j in range(db):
            out: dict = {}
            for l, hl in enumerate(reps_g):
                s, i2 = coset_decompose(G, d.S, reps, G.mul(g, hl))
                if i2 != i:
                    continue
                v = Bl.action[d.S.position(s)][j]
                for c, x in v.items():
                    out[l * db + relabel[c]] = x
            F[i * db + j] = out
    return algebra.check_intertwiner(A, B, F)


def restrict_to_s(d: GaloisDatum) -> GaloisDatum:
    """The same datum viewed for k^S (ambient group S)."""
    Sg = d.S.group
    N = Sg.subgroup(d.n_in_s)
    Q, proj = quotient_group(Sg.full, N)
    iso = [0] * Q.order
    for s in range(Sg.order):
        iso[proj(s)] = d.gbar[s]
    return GaloisDatum(Sg, Sg.full, N, d.tower, tuple(iso), d.sigma, d.gamma)
