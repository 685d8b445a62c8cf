"""
Obstructions to the existence of gamma, over the acting group S.

First: for each g in S the table (g.sigma)/(sigma^g), i.e. in exponents
``a_g sigma(x, y) - sigma(^g x, ^g y)``, must be a coboundary delta_1(gamma_g).

Second: with such gamma_g chosen, d_1(gamma)(g, h) = g.gamma_h - gamma_gh + gamma_g <- h
takes values in the characters of N, and gamma can be corrected to satisfy C3
iff d_1(gamma) = d_1(theta) for a cochain theta: S -> Hom(N, mu).  Two
versions of the second solve are reported: ``theta`` unrestricted, and
``theta`` constrained on N so that the corrected gamma still satisfies C1.
The pipeline verdict uses the constrained one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import cohomology, zmod
from .cohomology import BimoduleSpec, Cochain
from .datum import _Frame, check_conditions, galois_isomorphisms, GaloisDatum
from .groups import Subgroup


class ObstructionError(ValueError):
    pass


def _frame(G, S, N, tower, sigma, iso):
    S = S if isinstance(S, Subgroup) else G.subgroup(S)
    N = N if isinstance(N, Subgroup) else G.subgroup(N)
    if sigma.modulus != tower.m:
        sigma = sigma.lift(tower.m)
    if iso is None:
        isos = galois_isomorphisms(S, N, tower)
        if not isos:
            raise ObstructionError("S/N is not isomorphic to the Galois group")
        iso = isos[0]
    return _Frame(G, S, N, tower, sigma, iso)


def twisted_quotient(f: _Frame, s: int) -> np.ndarray:
    """(g.sigma)/(sigma^g) for g = S.elements[s], as an exponent table on N."""
    sig = f.sigma.table
    c = f.conj[s]
    return (f.a[s] * sig - sig[np.ix_(c, c)]) % f.m


@dataclass
class FirstRecord:
    g: int
    solvable: bool
    eta: list[int] | None
    certificate: dict | None

    def to_json(self) -> dict:
        return {"g": self.g, "solvable": self.solvable, "eta": self.eta, "certificate": self.certificate}


@dataclass
class FirstObstruction:
    records: list[FirstRecord]

    @property
    def vanishes(self) -> bool:
        return all(r.solvable for r in self.records)

    def gamma_choice(self) -> np.ndarray | None:
        if not self.vanishes:
            return None
        return np.array([r.eta for r in self.records], dtype=np.int64)

    def to_json(self) -> dict:
        return {"vanishes": self.vanishes, "records": [r.to_json() for r in self.records]}


def first_obstruction(G, S, N, tower, sigma: Cochain, iso=None) -> FirstObstruction:
    f = _frame(G, S, N, tower, sigma, iso)
    Ng = f.N.group
    recs = []
    for s in range(f.S.order):
        target = Cochain(Ng, 2, f.m, twisted_quotient(f, s))
        sol = cohomology.coboundary_system(Ng, target)
        g = f.S.elements[s]
        if sol.solvable:
            recs.append(FirstRecord(g, True, [0] + [int(v) for v in sol.particular], None))
        else:
            recs.append(FirstRecord(g, False, None, sol.certificate.to_json()))
    return FirstObstruction(recs)


def character_bimodule(f: _Frame) -> BimoduleSpec:
    """C^1(N, mu) as an S-bimodule: (g.u)(x) = a_g u(x), (u <- g)(x) = u(^g x)."""
    return BimoduleSpec(f.S.group, f.m, np.asarray(f.a), np.asarray(f.conj), kind="characters")


def d1_gamma(f: _Frame, gamma: np.ndarray) -> Cochain:
    spec = character_bimodule(f)
    g = Cochain(f.S.group, 1, f.m, gamma, points=f.N.order)
    return cohomology.hochschild_differential(f.S.group, spec, 1, g)


@dataclass
class SecondObstruction:
    applicable: bool
    d1_gamma: list | None = None
    values_are_characters: bool | None = None
    d2_vanishes: bool | None = None
    coboundary: bool | None = None
    theta: list | None = None
    c1_coboundary: bool | None = None
    c1_theta: list | None = None
    corrected_gamma: list | None = None
    corrected_valid: bool | None = None
    certificate: dict | None = None

    @property
    def vanishes(self) -> bool:
        return bool(self.applicable and self.c1_coboundary)

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in (
            "applicable", "d1_gamma", "values_are_characters", "d2_vanishes", "coboundary", "theta",
            "c1_coboundary", "c1_theta", "corrected_gamma", "corrected_valid", "certificate")} | \
            {"vanishes": self.vanishes}


def _theta_system(f: _Frame, target: np.ndarray, fix_on_n: np.ndarray | None):
    """theta_g = sum_k t(g, k) chi_k over generators chi_k of Hom(N, Z/m); rows: d_1 theta = target
    at every (g, h, x), and optionally theta(n, .) = fix_on_n[n] for n in N."""
    Sg, Ng = f.S.group, f.N.group
    nS, nN = Sg.order, Ng.order
    chis = np.array([c.table for c in cohomology.homomorphisms(Ng, f.m)], dtype=np.int64).reshape(-1, nN)
    nk = len(chis)
    nu = nS * nk
    a, conj = f.a, f.conj
    rows, rhs = [], []
    for g in range(nS):
        for h in range(nS):
            gh = Sg.mul(g, h)
            for x in range(1, nN):
                r = np.zeros(nu, dtype=np.int64)
                r[h * nk:(h + 1) * nk] += a[g] * chis[:, x]
                r[gh * nk:(gh + 1) * nk] -= chis[:, x]
                r[g * nk:(g + 1) * nk] += chis[:, conj[h, x]]
                rows.append(r)
                rhs.append(target[g, h, x])
    if fix_on_n is not None:
        for k, spos in enumerate(f.n_in_s):
            for x in range(1, nN):
                r = np.zeros(nu, dtype=np.int64)
                r[spos * nk:(spos + 1) * nk] = chis[:, x]
                rows.append(r)
                rhs.append(fix_on_n[k, x])
    return np.array(rows, dtype=np.int64).reshape(len(rows), nu) % f.m, np.array(rhs, dtype=np.int64) % f.m, chis


def _theta_table(f: _Frame, v: np.ndarray, chis: np.ndarray) -> np.ndarray:
    nS = f.S.order
    if not len(chis):
        return np.zeros((nS, f.N.order), dtype=np.int64)
    return (v.reshape(nS, len(chis)) @ chis) % f.m


def _solve_theta(f: _Frame, target, fix, certify: bool):
    A, b, chis = _theta_system(f, target, fix)
    if A.shape[1] == 0:
        ok = not b.any()
        return (np.zeros((f.S.order, f.N.order), dtype=np.int64) if ok else None), None
    sol = zmod.solve_mod(A, b, f.m, certify=certify)
    if not sol.solvable:
        return None, sol.certificate
    return _theta_table(f, sol.particular, chis), None


def second_obstruction(G, S, N, tower, sigma: Cochain, gamma_candidates, iso=None) -> SecondObstruction:
    f = _frame(G, S, N, tower, sigma, iso)
    if gamma_candidates is None:
        return SecondObstruction(applicable=False)
    gam = np.asarray(gamma_candidates, dtype=np.int64) % f.m
    Ng = f.N.group
    # every gamma_g must solve its coboundary equation
    for s in range(f.S.order):
        lhs = cohomology.group_differential(1, Cochain(Ng, 1, f.m, gam[s])).table
        if not np.array_equal(lhs % f.m, twisted_quotient(f, s)):
            raise ObstructionError(f"gamma_g for g = {f.S.elements[s]} does not solve its coboundary equation")
    D = d1_gamma(f, gam)
    T = D.table
    characters = all(cohomology.group_differential(1, Cochain(Ng, 1, f.m, T[g, h])).is_zero()
                     for g in range(f.S.order) for h in range(f.S.order))
    spec = character_bimodule(f)
    d2 = cohomology.hochschild_differential(f.S.group, spec, 2, D).is_zero()
    rep = SecondObstruction(True, T.tolist(), characters, d2)
    theta, _ = _solve_theta(f, T, None, certify=False)
    rep.coboundary = theta is not None
    if theta is not None:
        rep.theta = theta.tolist()
    fix = (gam[f.n_in_s] - f.c1_table) % f.m
    theta, cert = _solve_theta(f, T, fix, certify=True)
    rep.c1_coboundary = theta is not None
    if theta is not None:
        rep.c1_theta = theta.tolist()
        corrected = (gam - theta) % f.m
        rep.corrected_gamma = corrected.tolist()
        rep.corrected_valid = _valid(f, corrected)
    elif cert is not None:
        rep.certificate = cert.to_json()
    return rep


def _valid(f: _Frame, gamma: np.ndarray) -> bool:
    d = GaloisDatum(f.G, f.S, f.N, f.tower, f.iso, f.sigma, gamma)
    return all(ok for ok, _ in check_conditions(d).values())


@dataclass
class ObstructionReport:
    first: FirstObstruction
    second: SecondObstruction

    @property
    def vanishes(self) -> bool:
        return self.first.vanishes and self.second.vanishes

    def to_json(self) -> dict:
        return {"first": self.first.to_json(), "second": self.second.to_json(), "vanishes": self.vanishes}


def obstruction_report(G, S, N, tower, sigma: Cochain, iso=None) -> ObstructionReport:
    """Run both obstructions, feeding the first one's particular solutions to the second."""
    first = first_obstruction(G, S, N, tower, sigma, iso)
    second = second_obstruction(G, S, N, tower, sigma, first.gamma_choice(), iso)
    return ObstructionReport(first, second)
