"""
Enumeration of Galois data on a finite group, up to equivalence.

Candidates are indexed by (S up to conjugacy, N normal in S, catalog tower,
class in H^2(N, mu)); each task is pure and returns plain tables, so the
result does not depend on how the tasks are scheduled.  Candidates are
sorted before the equivalence dedupe.
"""

from __future__ import annotations

import multiprocessing as mp
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import algebra, cohomology
from .cohomology import Cochain
from .algebra import twisted_group_algebra
from .datum import GaloisDatum, are_equivalent, build_object, galois_isomorphisms, solve_gamma, validate_datum
from .fields import FieldTower
from .groups import FiniteGroup, enumerate_subgroups, normal_subgroups


class BoundsError(ValueError):
    pass


@dataclass(frozen=True)
class Bounds:
    max_order: int = 32
    max_modulus: int = 16
    max_classes: int = 4096
    max_gamma: int = 10 ** 5


def catalog_modulus(t: FieldTower) -> int:
    """The modulus a catalog entry is declared with (q_m for cyclotomic towers)."""
    return int(t.params.get("m", t.m))


def check_bounds(G: FiniteGroup, catalog, bounds: Bounds) -> None:
    if G.order > bounds.max_order:
        raise BoundsError(f"|G| = {G.order} exceeds the bound {bounds.max_order}")
    for t in catalog:
        if catalog_modulus(t) > bounds.max_modulus:
            raise BoundsError(f"catalog tower {t.to_json()} exceeds the modulus bound {bounds.max_modulus}")


@dataclass
class Task:
    S: tuple[int, ...]
    N: tuple[int, ...]
    tower: int
    sigma: list            # exponent table mod tower.m
    isos: list[tuple[int, ...]]


# worker state, installed once per process
_STATE: dict = {}


def _install(G: FiniteGroup, catalog: list[FieldTower], max_gamma: int):
    _STATE.update(G=G, catalog=catalog, max_gamma=max_gamma)


def _run_task(task: Task) -> list[tuple[tuple[int, ...], list]]:
    G, catalog = _STATE["G"], _STATE["catalog"]
    t = catalog[task.tower]
    S, N = G.subgroup(task.S), G.subgroup(task.N)
    sigma = Cochain(N.group, 2, t.m, np.array(task.sigma, dtype=np.int64))
    out = []
    for iso in task.isos:
        for gam in solve_gamma(G, S, N, t, sigma, iso=iso, limit=_STATE["max_gamma"]):
            d = GaloisDatum(G, S, N, t, iso, sigma, gam)
            if validate_datum(d).verdict:
                out.append((iso, gam.tolist()))
    return out


def enumerate_tasks(G: FiniteGroup, catalog: list[FieldTower], bounds: Bounds, S=None, N=None,
                    sigmas=None, isos=None) -> list[Task]:
    """Every (S, N, tower, sigma-class) with a non-degenerate class; restrictions narrow the sweep."""
    subs = [G.subgroup(S)] if S is not None else enumerate_subgroups(G, bound=max(64, G.order), up_to_conjugacy=True)
    tasks = []
    for Sg in subs:
        normals = [G.subgroup(N)] if N is not None else normal_subgroups(Sg)
        for Ng in normals:
            for ti, t in enumerate(catalog):
                p = t.characteristic
                if p and Ng.order % p == 0:
                    continue
                if Sg.order != Ng.order * t.degree:
                    continue
                found = galois_isomorphisms(Sg, Ng, t)
                if isos is not None:
                    found = [i for i in found if i in {tuple(x) for x in isos}]
                if not found:
                    continue
                if sigmas is not None:
                    reps = [s if isinstance(s, Cochain) else Cochain(Ng.group, 2, t.m, np.asarray(s)) for s in sigmas]
                    reps = [s.lift(t.m) if s.modulus != t.m else s for s in reps]
                else:
                    H2 = cohomology.second_cohomology(Ng.group, t.m)
                    if H2.size > bounds.max_classes:
                        raise BoundsError(f"H^2 of N = {Ng.elements} has {H2.size} classes")
                    reps = H2.representatives()
                for s in reps:
                    if cohomology.is_nondegenerate(s):
                        tasks.append(Task(Sg.elements, Ng.elements, ti, s.table.tolist(), found))
    return tasks


@dataclass
class Classification:
    group: FiniteGroup
    catalog: list[FieldTower]
    candidates: int
    representatives: list[GaloisDatum]
    equivalence: list[list[bool]]
    stamps: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "group": {"order": self.group.order, "table": self.group.table.tolist()},
            "catalog": [t.to_json() for t in self.catalog],
            "candidates": self.candidates,
            "count": len(self.representatives),
            "representatives": [d.to_json() for d in self.representatives],
            "equivalence": self.equivalence,
            "verification": self.stamps,
        }


def verification_stamp(d: GaloisDatum, full_limit: int = 16) -> dict:
    """verify_galois on the whole object for small G, the simple-block test otherwise."""
    if d.G.order <= full_limit:
        rep = algebra.verify_galois(build_object(d, check=False))
        return {"method": "verify_galois", "verdict": rep.verdict}
    block = twisted_group_algebra(d)
    rep = algebra.verify_simple_fast(block, d.n_in_s)
    return {"method": "verify_simple_fast", "verdict": rep.verdict}


def classify(G: FiniteGroup, catalog: list[FieldTower], bounds: Bounds = Bounds(), workers: int = 1,
             S=None, N=None, sigmas=None, isos=None, verify: bool = True, log=None) -> Classification:
    catalog = list(catalog)
    check_bounds(G, catalog, bounds)
    tasks = enumerate_tasks(G, catalog, bounds, S, N, sigmas, isos)
    if workers > 1 and len(tasks) > 1:
        ctx = mp.get_context("fork")
        with ProcessPoolExecutor(workers, mp_context=ctx, initializer=_install,
                                 initargs=(G, catalog, bounds.max_gamma)) as ex:
            results = list(ex.map(_run_task, tasks))
    else:
        _install(G, catalog, bounds.max_gamma)
        results = [_run_task(t) for t in tasks]
    cands = []
    for task, res in zip(tasks, results):
        t = catalog[task.tower]
        Sg, Ng = G.subgroup(task.S), G.subgroup(task.N)
        sigma = Cochain(Ng.group, 2, t.m, np.array(task.sigma, dtype=np.int64))
        for iso, gam in res:
            cands.append(GaloisDatum(G, Sg, Ng, t, tuple(iso), sigma, np.array(gam, dtype=np.int64)))
        if log:
            log(f"S={list(task.S)} N={list(task.N)} tower={task.tower}: {len(res)} data")
    cands.sort(key=GaloisDatum.key)
    reps: list[GaloisDatum] = []
    for d in cands:
        if not any(r.tower == d.tower and are_equivalent(r, d) is not None for r in reps):
            reps.append(d)
    n = len(reps)
    eq = [[i == j or (reps[i].tower == reps[j].tower and are_equivalent(reps[i], reps[j]) is not None)
           for j in range(n)] for i in range(n)]
    out = Classification(G, catalog, len(cands), reps, eq)
    if verify:
        out.stamps = [verification_stamp(d) for d in reps]
    return out
