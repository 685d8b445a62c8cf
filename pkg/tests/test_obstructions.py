import itertools

import numpy as np
import pytest

from kgalois import catalog, cohomology, obstructions as ob
from kgalois.datum import GaloisDatum, galois_isomorphisms, solve_gamma

import oracles

CORPUS = catalog.corpus()


def _report(d):
    return ob.obstruction_report(d.G, d.S, d.N, d.tower, d.sigma, d.iso)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_corpus_obstructions_vanish(name):
    d = CORPUS[name]
    rep = _report(d)
    assert rep.first.vanishes and rep.second.vanishes
    assert rep.second.corrected_valid
    assert solve_gamma(d.G, d.S, d.N, d.tower, d.sigma, d.iso)


def test_alternating_classes_consistent():
    d = CORPUS["alternating"]
    H = cohomology.second_cohomology(d.N.group, d.m)
    verdicts = []
    for s in H.representatives():
        if not cohomology.is_nondegenerate(s):
            continue
        for iso in galois_isomorphisms(d.S, d.N, d.tower):
            rep = ob.obstruction_report(d.G, d.S, d.N, d.tower, s, iso)
            n = len(solve_gamma(d.G, d.S, d.N, d.tower, s, iso))
            assert rep.vanishes == (n > 0)
            verdicts.append(n)
    assert sorted(verdicts) == [0] * 6 + [4, 4]


def _delta1_rows(table):
    """Rows (x, y), x, y != e, of eta -> eta(x) + eta(y) - eta(xy) on the unknowns eta(1..n-1)."""
    n = table.shape[0]
    rows = []
    for x, y in itertools.product(range(1, n), repeat=2):
        r = np.zeros(n, dtype=np.int64)
        r[x] += 1
        r[y] += 1
        r[table[x, y]] -= 1
        rows.append(r[1:])
    return np.array(rows)


def test_first_obstruction_certificate():
    G, S, N, tower, sigma = catalog.first_obstruction_example()
    rep = ob.first_obstruction(G, S, N, tower, sigma)
    assert not rep.vanishes and rep.gamma_choice() is None
    failing = [r for r in rep.records if not r.solvable]
    f = ob._frame(G, S, N, tower, sigma, None)
    T = N.group.table
    for r in failing:
        g = r.g
        a = f.a[S.position(g)]
        # a_g sigma(x, y) - sigma(g x g^-1, g y g^-1), by element loops
        target = np.array([[a * sigma.table[N.position(x), N.position(y)]
                            - sigma.table[N.position(G.conj(g, x)), N.position(G.conj(g, y))]
                            for y in N.elements] for x in N.elements]) % f.m
        b = target[1:, 1:].reshape(-1)
        y = np.array(r.certificate["y"])
        A = _delta1_rows(T)
        assert not ((y @ A) % f.m).any() and (y @ b) % f.m
        # already unsolvable mod 3 (a factor of m): the augmented rank over F_3 jumps
        A3 = [list(row) for row in A]
        assert oracles.gf_rank(A3, 3) < oracles.gf_rank([row + [v] for row, v in zip(A3, b)], 3)
    assert not solve_gamma(G, S, N, tower, sigma)


def _gamma_brute(G, S, N, tower, sigma, iso):
    """Every gamma, by running over gamma(t, .) for one t outside N and filling the rest from C1 and C3."""
    f = ob._frame(G, S, N, tower, sigma, iso)
    m = f.m
    t = next(s for s in range(S.order) if s not in f.n_in_s)
    assert S.group.generated(list(f.n_in_s) + [t]).order == S.order
    found = []
    for vals in itertools.product(range(m), repeat=N.order - 1):
        gam = np.zeros((S.order, N.order), dtype=np.int64)
        gam[f.n_in_s] = f.c1_table
        gam[t] = (0,) + vals
        for n in f.n_in_s:          # gamma(t n, x) = a_t gamma(n, x) + gamma(t, ^n x)
            gam[S.group.mul(t, n)] = (f.a[t] * gam[n] + gam[t][f.conj[n]]) % m
        if all(oracles.conditions_brute(GaloisDatum(G, S, N, tower, iso, f.sigma, gam)).values()):
            found.append(gam)
    return found


def test_second_obstruction_example():
    G, S, N, tower, sigma = catalog.second_obstruction_example()
    iso = galois_isomorphisms(S, N, tower)[0]
    rep = ob.obstruction_report(G, S, N, tower, sigma, iso)
    assert rep.first.vanishes
    assert rep.second.values_are_characters and rep.second.d2_vanishes
    assert not rep.second.vanishes
    f = ob._frame(G, S, N, tower, sigma, iso)
    gam = rep.first.gamma_choice()
    D = np.array(rep.second.d1_gamma)
    fix = (gam[f.n_in_s] - f.c1_table) % f.m
    A, b, _ = ob._theta_system(f, D, fix)
    y = np.array(rep.second.certificate["y"])
    assert not ((y @ A) % f.m).any() and (y @ b) % f.m
    assert not solve_gamma(G, S, N, tower, sigma, iso)
    assert _gamma_brute(G, S, N, tower, sigma, iso) == []


def test_brute_gamma_agrees_on_positive_case():
    d = CORPUS["klein-extension"]
    brute = _gamma_brute(d.G, d.S, d.N, d.tower, d.sigma, d.iso)
    sols = solve_gamma(d.G, d.S, d.N, d.tower, d.sigma, d.iso)
    key = lambda t: tuple(t.reshape(-1))
    assert sorted(map(key, brute)) == sorted(map(key, sols))


def _characters(table, m):
    n = table.shape[0]
    return [np.array((0,) + v) for v in itertools.product(range(m), repeat=n - 1)
            if all((((0,) + v)[x] + ((0,) + v)[y] - ((0,) + v)[table[x, y]]) % m == 0
                   for x in range(n) for y in range(n))]


@pytest.mark.parametrize("name", ["klein", "klein-extension", "alternating", "symplectic-01"])
def test_d1_gamma_values_are_characters(name):
    d = CORPUS[name]
    rep = _report(d)
    T = np.array(rep.second.d1_gamma)
    chars = {tuple(c) for c in _characters(d.N.group.table, d.m)} if d.N.order <= 4 else None
    nN = d.N.order
    tab = d.N.group.table
    for g, h in itertools.product(range(d.S.order), repeat=2):
        v = T[g, h]
        assert all((v[x] + v[y] - v[tab[x, y]]) % d.m == 0 for x in range(nN) for y in range(nN))
        if chars is not None:
            assert tuple(v) in chars
    assert rep.second.d2_vanishes


def test_valid_gamma_has_zero_d1():
    d = CORPUS["alternating"]
    f = ob._frame(d.G, d.S, d.N, d.tower, d.sigma, d.iso)
    assert ob.d1_gamma(f, d.gamma).is_zero()


@pytest.mark.parametrize("name", ["klein", "klein-extension", "alternating", "symplectic-12"])
def test_perturb_and_repair(name):
    d = CORPUS[name]
    rng = np.random.default_rng(11)
    chars = [c.table for c in cohomology.all_homomorphisms(d.N.group, d.m)]
    for _ in range(4):
        pert = np.array([chars[rng.integers(len(chars))] for _ in range(d.S.order)])
        pert[0] = 0
        gam = (d.gamma + pert) % d.m
        rep = ob.second_obstruction(d.G, d.S, d.N, d.tower, d.sigma, gam, d.iso)
        assert rep.c1_coboundary and rep.corrected_valid
        fixed = GaloisDatum(d.G, d.S, d.N, d.tower, d.iso, d.sigma, np.array(rep.corrected_gamma))
        assert all(oracles.conditions_brute(fixed).values())


def _choices(G, S, N, tower, sigma, iso):
    first = ob.first_obstruction(G, S, N, tower, sigma, iso)
    base = first.gamma_choice()
    chars = [c.table for c in cohomology.all_homomorphisms(N.group, tower.m)]
    return base, chars


def test_second_verdict_independent_of_choice_exhaustive():
    d = CORPUS["klein"]
    base, chars = _choices(d.G, d.S, d.N, d.tower, d.sigma, d.iso)
    assert len(chars) == 4
    verdicts = set()
    for pick in itertools.product(range(4), repeat=d.S.order - 1):
        gam = base.copy()
        for s, k in enumerate(pick, start=1):
            gam[s] = (gam[s] + chars[k]) % d.m
        verdicts.add(ob.second_obstruction(d.G, d.S, d.N, d.tower, d.sigma, gam, d.iso).vanishes)
    assert verdicts == {True}


def test_second_verdict_independent_of_choice_negative():
    G, S, N, tower, sigma = catalog.second_obstruction_example()
    iso = galois_isomorphisms(S, N, tower)[0]
    base, chars = _choices(G, S, N, tower, sigma, iso)
    rng = np.random.default_rng(5)
    for _ in range(60):
        gam = base.copy()
        for s in range(1, S.order):
            gam[s] = (gam[s] + chars[rng.integers(len(chars))]) % tower.m
        assert not ob.second_obstruction(G, S, N, tower, sigma, gam, iso).vanishes


def test_second_rejects_non_solutions():
    d = CORPUS["klein"]
    gam = d.gamma.copy()
    gam[1, 1] = (gam[1, 1] + 1) % d.m
    gam[1, 2] = (gam[1, 2] + 1) % d.m
    gam[1, 3] = (gam[1, 3] + 1) % d.m          # the constant shift (not a character)
    with pytest.raises(ob.ObstructionError):
        ob.second_obstruction(d.G, d.S, d.N, d.tower, d.sigma, gam, d.iso)


def test_not_applicable_without_first():
    G, S, N, tower, sigma = catalog.first_obstruction_example()
    rep = ob.obstruction_report(G, S, N, tower, sigma)
    assert not rep.second.applicable and not rep.vanishes
    assert rep.to_json()["second"]["vanishes"] is False
