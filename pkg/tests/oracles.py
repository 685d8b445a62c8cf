"""
Independent reference computations for the test-suite.

Nothing here calls the library's linear algebra or cohomology code: tables are
checked by direct loops over group elements, ranks by plain Gaussian
elimination (mod p, or over Q with sympy).
"""

from __future__ import annotations

import itertools

import numpy as np
import sympy


def gf_rank(rows, p: int) -> int:
    """Rank over F_p by textbook elimination."""
    M = [[int(v) % p for v in r] for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [(v * inv) % p for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[r])]
        r += 1
    return r


def cocycle_rows(table: np.ndarray):
    """Rows of the linear map (normalized 2-cochain) -> (x, y, z) cocycle defects, unknowns sigma(x, y) with x, y != e."""
    n = table.shape[0]
    idx = {(x, y): k for k, (x, y) in enumerate(itertools.product(range(1, n), repeat=2))}
    rows = []
    for x, y, z in itertools.product(range(n), repeat=3):
        r = [0] * len(idx)
        # sigma(x,y) + sigma(xy,z) - sigma(y,z) - sigma(x,yz)
        for (a, b), s in (((x, y), 1), ((int(table[x, y]), z), 1), ((y, z), -1), ((x, int(table[y, z])), -1)):
            if a and b:
                r[idx[a, b]] += s
        rows.append(r)
    return rows, idx


def cocycle_count_prime(table: np.ndarray, p: int) -> int:
    """|Z^2(G, Z/p)| for normalized cocycles, from the F_p rank."""
    rows, idx = cocycle_rows(table)
    return p ** (len(idx) - gf_rank(rows, p))


def is_cocycle(table: np.ndarray, sig: np.ndarray, m: int) -> bool:
    n = table.shape[0]
    for x, y, z in itertools.product(range(n), repeat=3):
        if (sig[x, y] + sig[table[x, y], z] - sig[y, z] - sig[x, table[y, z]]) % m:
            return False
    return True


def brute_cocycles(table: np.ndarray, m: int, free=None):
    """Every normalized cocycle, optionally only those supported on ``free`` (a list of (x, y))."""
    n = table.shape[0]
    free = free if free is not None else list(itertools.product(range(1, n), repeat=2))
    out = []
    for vals in itertools.product(range(m), repeat=len(free)):
        s = np.zeros((n, n), dtype=np.int64)
        for (x, y), v in zip(free, vals):
            s[x, y] = v
        if is_cocycle(table, s, m):
            out.append(s)
    return out


def brute_coboundary(table: np.ndarray, target: np.ndarray, m: int):
    """Some normalized eta with eta(x) + eta(y) - eta(xy) = target(x, y), by exhaustive search."""
    n = table.shape[0]
    for vals in itertools.product(range(m), repeat=n - 1):
        eta = (0,) + vals
        if all((eta[x] + eta[y] - eta[table[x, y]] - target[x, y]) % m == 0
               for x in range(n) for y in range(n)):
            return np.array(eta)
    return None


def regular_classes_brute(table: np.ndarray, sig: np.ndarray, m: int) -> list[int]:
    n = table.shape[0]
    out = []
    for s in range(n):
        cent = [t for t in range(n) if table[s, t] == table[t, s]]
        if all((sig[s, t] - sig[t, s]) % m == 0 for t in cent):
            out.append(s)
    return out


def rational_rank(dense_rows) -> int:
    """Rank of a matrix of field elements that are rational numbers, via sympy."""
    M = sympy.Matrix([[sympy.Rational(v.coords()[0].numerator, v.coords()[0].denominator) for v in r]
                      for r in dense_rows])
    return M.rank()


def conditions_brute(d) -> dict[str, bool]:
    """C1, C2, C3 by nested loops over group elements (not positions)."""
    G, S, N, m = d.G, d.S, d.N, d.tower.m
    sig = d.sigma.table
    gam = d.gamma
    npos = {x: i for i, x in enumerate(N.elements)}
    spos = {s: i for i, s in enumerate(S.elements)}
    expo = {}
    Ncos = sorted({tuple(sorted(G.mul(s, x) for x in N.elements)) for s in S.elements})
    for k, c in enumerate(Ncos):
        for s in c:
            expo[s] = d.tower.automorphisms[d.iso[k]].exponent
    sg = lambda x, y: int(sig[npos[x], npos[y]])
    gm = lambda s, x: int(gam[spos[s], npos[x]])
    c1 = all((gm(x, y) + sg(x, G.inv(x)) - sg(x, y) - sg(G.mul(x, y), G.inv(x))) % m == 0
             for x in N.elements for y in N.elements)
    c2 = all((expo[g] * sg(x, y) + gm(g, G.mul(x, y)) - sg(G.conj(g, x), G.conj(g, y)) - gm(g, x) - gm(g, y)) % m == 0
             for g in S.elements for x in N.elements for y in N.elements)
    c3 = all((gm(G.mul(g, h), x) - expo[g] * gm(h, x) - gm(g, G.conj(h, x))) % m == 0
             for g in S.elements for h in S.elements for x in N.elements)
    return {"C1": c1, "C2": c2, "C3": c3}


def coordinate_pairings(n: int):
    """(i, j) -> gamma on Z_n^3 x (0 + Z_n + Z_n): c (i x_1 + j x_2) + Alt, with Alt = 2(x_2 y_1 - x_1 y_2),
    written directly in element coordinates x = x0 n^2 + x1 n + x2."""
    def coords(e):
        return e // (n * n), (e // n) % n, e % n
    out = {}
    for i, j in itertools.product(range(n), repeat=2):
        tab = np.zeros((n ** 3, n * n), dtype=np.int64)
        for g in range(n ** 3):
            c, a1, a2 = coords(g)
            for x in range(n * n):
                _, x1, x2 = coords(x)
                tab[g, x] = (c * (i * x1 + j * x2) + 2 * (a2 * x1 - a1 * x2)) % n
        out[i, j] = tab
    return out
