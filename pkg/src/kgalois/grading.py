"""
The Miyashita-Ulbrich grading A = sum_g A_g, A_g = {a : a b = (g.b) a for all b},
and recovery of a Galois datum from a simple object whose centre is presented.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .algebra import EquivariantAlgebra, KStructure, Subspace
from .cohomology import Cochain
from .datum import GaloisDatum, validate_datum
from .groups import FiniteGroup, Subgroup, is_normal_in, quotient_group


class GradingError(ValueError):
    pass


class RecoveryError(ValueError):
    pass


def grading_component(A: EquivariantAlgebra, g: int) -> Subspace:
    d = A.dim
    rows: dict[tuple[int, int], dict] = {}
    for i in range(d):
        ei = A.basis_vector(i)
        for j in range(d):
            diff = A.sub(A.mult[i][j], A.product(A.action[g][j], ei))
            for k, v in diff.items():
                rows.setdefault((j, k), {})[i] = v
    _, ker = linalg.rank_kernel(A.K, list(rows.values()), d)
    return Subspace(A, ker)


@dataclass
class Grading:
    algebra: EquivariantAlgebra
    components: list[Subspace]
    complete: bool
    conjugation_ok: bool

    def dims(self) -> list[int]:
        return [c.dim for c in self.components]

    @property
    def support(self) -> list[int]:
        return [g for g, c in enumerate(self.components) if c.dim]


def full_grading(A: EquivariantAlgebra, strict: bool = True) -> Grading:
    G = A.group
    comps = [grading_component(A, g) for g in range(G.order)]
    total = sum(c.dim for c in comps)
    joint = linalg.rank([v for c in comps for v in c.basis]) if total else 0
    complete = total == A.dim and joint == A.dim
    conj_ok = True
    for g in G.generators():
        for x in range(G.order):
            target = comps[G.conj(g, x)]
            for v in comps[x].vectors():
                w = A.dense(A.act(g, v))
                if linalg.rank(target.basis + [w]) != target.dim:
                    conj_ok = False
    if strict and not complete:
        raise GradingError(f"components have total dimension {total} (joint rank {joint}) "
                           f"but dim A = {A.dim}: A is not a Galois object")
    return Grading(A, comps, complete, conj_ok)


@dataclass
class RecoveredDatum:
    datum: GaloisDatum
    units: dict[int, dict]
    center: list[dict]
    dim: int
    report: dict = field(default_factory=dict)

    @property
    def N(self) -> Subgroup:
        return self.datum.N

    def to_json(self) -> dict:
        out = self.datum.to_json()
        z = self.datum.tower.zero
        out["units"] = {str(x): [u.get(i, z).to_json() for i in range(self.dim)] for x, u in sorted(self.units.items())}
        return out


def recover_datum(A: EquivariantAlgebra, G: FiniteGroup | None = None, S: Subgroup | None = None) -> RecoveredDatum:
    """Read (N, sigma, gamma) off a simple Galois object with presented centre.

    ``A.group`` plays the role of S.  With ``G`` and ``S`` (where ``S.group``
    has the same table as ``A.group``) the datum is returned over G.
    """
    if A.center_basis is None:
        raise RecoveryError("recovery needs the centre of A to be presented")
    t = A.tower
    Sg = A.group
    KS = KStructure(A)
    grading = full_grading(A)
    Npos = grading.support
    Nsub = Sg.subgroup(Npos)
    if not is_normal_in(Nsub, Sg.full):
        raise RecoveryError("support of the grading is not a normal subgroup")
    r = t.degree
    if any(grading.components[x].dim != r for x in Npos):
        raise RecoveryError("some A_x is not a line over K")
    units: dict[int, dict] = {}
    for x in Npos:
        units[x] = dict(A.unit) if x == 0 else grading.components[x].vectors()[0]
    nN = len(Npos)
    pos = {x: i for i, x in enumerate(Npos)}
    for x in Npos:
        prod = A.product(units[x], units[Sg.inv(x)])
        lam = KS.scalar_ratio(prod, A.unit)
        if lam is None or not lam:
            raise RecoveryError(f"A_{x} contains no invertible element")

    def exponent(v, w, where):
        lam = KS.scalar_ratio(v, w)
        if lam is None:
            raise RecoveryError(f"{where}: not a K-multiple of the expected unit")
        e = t.dlog(lam)
        if e is None:
            raise RecoveryError(f"{where}: value {lam} lies outside the designated roots of unity")
        return e

    sig = np.zeros((nN, nN), dtype=np.int64)
    for x in Npos:
        for y in Npos:
            sig[pos[x], pos[y]] = exponent(A.product(units[x], units[y]), units[Sg.mul(x, y)], f"sigma({x},{y})")
    # Galois action on the centre
    beta = t.k_basis
    gbar = []
    for s in range(Sg.order):
        img = [KS.scalar_ratio(A.act(s, ca), A.unit) for ca in KS.c]
        match = [j for j in range(t.degree) if all(t.apply(j, b) == v for b, v in zip(beta, img))]
        if not match:
            raise RecoveryError(f"element {s} does not act on the centre through a listed automorphism")
        gbar.append(match[0])
    gam = np.zeros((Sg.order, nN), dtype=np.int64)
    for s in range(Sg.order):
        for x in Npos:
            sx = Sg.conj(s, x)
            gam[s, pos[x]] = exponent(A.act(s, units[x]), units[sx], f"gamma({s},{x})")
    # assemble, over the supplied ambient group if any
    if G is None:
        G, S = Sg, Sg.full
    elif S is None or not np.array_equal(S.group.table, Sg.table):
        raise RecoveryError("S must present the acting group of A")
    N = G.subgroup(S.elements[x] for x in Npos)
    Q, proj = quotient_group(Sg.full, Nsub)
    iso = [-1] * Q.order
    for s in range(Sg.order):
        if iso[proj(s)] not in (-1, gbar[s]):
            raise RecoveryError("the action on the centre is not constant on cosets of N")
        iso[proj(s)] = gbar[s]
    # N.elements is sorted in G; Npos is sorted in S.group and S.elements is increasing, so orders agree
    sigma = Cochain(N.group, 2, t.m, sig)
    d = GaloisDatum(G, S, N, t, tuple(iso), sigma, gam)
    rep = validate_datum(d)
    return RecoveredDatum(d, units, list(KS.c), A.dim, {"validation": rep.to_json()})
