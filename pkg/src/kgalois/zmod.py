"""
Linear algebra over Z/m.

``diagonalize`` brings an integer matrix to diagonal form ``U A V = D (mod m)``
with unimodular row and column operations (Smith-style elimination over the
principal ideal ring Z/m).  Everything downstream -- coboundary equations,
gamma systems, equivalence witnesses -- goes through :func:`solve_mod`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd, prod

import numpy as np


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _unit_for(p: int, g: int, m: int) -> int:
    """A unit u mod m with u * g == p (mod m), where g = gcd(p, m)."""
    base, step = p // g, m // g
    for k in range(g):
        u = base + k * step
        if gcd(u, m) == 1:
            return u % m
    raise ArithmeticError("no unit found")  # cannot happen


@dataclass
class Diagonal:
    diag: list[int]
    U: np.ndarray | None
    V: np.ndarray
    Uinv: np.ndarray | None
    m: int
    shape: tuple[int, int]


def diagonalize(A, m: int, track_rows: bool = True, track_inverse: bool = False) -> Diagonal:
    A = np.array(A, dtype=np.int64).reshape(len(A), -1) % m if len(A) else np.zeros((0, 0), dtype=np.int64)
    r, c = A.shape
    U = np.eye(r, dtype=np.int64) if track_rows else None
    Ui = np.eye(r, dtype=np.int64) if track_inverse else None
    V = np.eye(c, dtype=np.int64)
    diag: list[int] = []
    if m == 1:
        return Diagonal([], U, V, Ui, m, (r, c))

    def swap_rows(i, j):
        if i != j:
            A[[i, j]] = A[[j, i]]
            if U is not None:
                U[[i, j]] = U[[j, i]]
            if Ui is not None:
                Ui[:, [i, j]] = Ui[:, [j, i]]

    def swap_cols(i, j):
        if i != j:
            A[:, [i, j]] = A[:, [j, i]]
            V[:, [i, j]] = V[:, [j, i]]

    def scale_row(t, u):
        ui = pow(int(u), -1, m)
        A[t] = (A[t] * ui) % m
        if U is not None:
            U[t] = (U[t] * ui) % m
        if Ui is not None:
            Ui[:, t] = (Ui[:, t] * u) % m

    def sub_rows(rows, f, t):
        """rows -= f * row t (f a vector over rows)."""
        A[rows] = (A[rows] - f[:, None] * A[t]) % m
        if U is not None:
            U[rows] = (U[rows] - f[:, None] * U[t]) % m
        if Ui is not None:
            Ui[:, t] = (Ui[:, t] + Ui[:, rows] @ f) % m

    def combine_rows(t, i):
        a, b = int(A[t, t]), int(A[i, t])
        g, s, w = _xgcd(a, b)
        a1, b1 = a // g, b // g
        for M in (A, U):
            if M is None:
                continue
            rt, ri = M[t].copy(), M[i].copy()
            M[t] = (s * rt + w * ri) % m
            M[i] = (-b1 * rt + a1 * ri) % m
        if Ui is not None:
            ct, ci = Ui[:, t].copy(), Ui[:, i].copy()
            Ui[:, t] = (ct * a1 + ci * b1) % m
            Ui[:, i] = (-ct * w + ci * s) % m

    def combine_cols(t, j):
        a, b = int(A[t, t]), int(A[t, j])
        g, s, w = _xgcd(a, b)
        a1, b1 = a // g, b // g
        for M in (A, V):
            ct, cj = M[:, t].copy(), M[:, j].copy()
            M[:, t] = (s * ct + w * cj) % m
            M[:, j] = (-b1 * ct + a1 * cj) % m

    t = 0
    while t < min(r, c):
        sub = A[t:, t:]
        nz = np.argwhere(sub != 0)
        if not len(nz):
            break
        # prefer the entry generating the largest ideal
        vals = sub[nz[:, 0], nz[:, 1]]
        gs = np.gcd(vals, m)
        k = int(np.argmin(gs))
        swap_rows(t, t + int(nz[k, 0]))
        swap_cols(t, t + int(nz[k, 1]))
        while True:
            p = int(A[t, t])
            g = gcd(p, m)
            if p != g:
                scale_row(t, _unit_for(p, g, m))
            col = A[t + 1:, t]
            if col.any():
                bad = np.nonzero(col % g)[0]
                if len(bad):
                    combine_rows(t, t + 1 + int(bad[0]))
                    continue
                rows = t + 1 + np.nonzero(col)[0]
                sub_rows(rows, A[rows, t] // g, t)
            row = A[t, t + 1:]
            if row.any():
                bad = np.nonzero(row % g)[0]
                if len(bad):
                    combine_cols(t, t + 1 + int(bad[0]))
                    continue
                cols = t + 1 + np.nonzero(row)[0]
                f = A[t, cols] // g
                A[:, cols] = (A[:, cols] - A[:, [t]] * f[None, :]) % m
                V[:, cols] = (V[:, cols] - V[:, [t]] * f[None, :]) % m
            if not A[t + 1:, t].any() and not A[t, t + 1:].any():
                break
        diag.append(int(A[t, t]))
        t += 1
    return Diagonal(diag, U, V, Ui, m, (r, c))


@dataclass
class Certificate:
    """Proof of unsolvability: ``y @ A == 0`` and ``y @ b != 0`` (mod m)."""
    diagonal: list[int]
    row: int
    y: list[int] | None

    def to_json(self) -> dict:
        return {"diagonal": self.diagonal, "row": self.row, "y": self.y}


@dataclass
class Solution:
    m: int
    particular: np.ndarray | None
    kernel: list[np.ndarray] = field(default_factory=list)
    orders: list[int] = field(default_factory=list)
    certificate: Certificate | None = None

    @property
    def solvable(self) -> bool:
        return self.particular is not None

    @property
    def count(self) -> int:
        return prod(self.orders) if self.solvable else 0

    def __iter__(self):
        """All solutions (only sensible when ``count`` is small)."""
        if not self.solvable:
            return
        for ts in itertools.product(*(range(o) for o in self.orders)):
            x = self.particular.copy()
            for t, k in zip(ts, self.kernel):
                if t:
                    x = (x + t * k) % self.m
            yield x


def solve_mod(A, b, m: int, ncols: int | None = None, certify: bool = True) -> Solution:
    """All solutions of A x == b (mod m) as particular + span of kernel generators."""
    A = np.array(A, dtype=np.int64)
    b = np.array(b, dtype=np.int64).reshape(-1) % m
    if A.size == 0:
        A = A.reshape(len(b), ncols or 0)
    n = A.shape[1]
    A = A % m
    if m == 1:
        return Solution(1, np.zeros(n, dtype=np.int64), [], [])
    aug = np.concatenate([A, b[:, None]], axis=1)
    keep = aug.any(axis=1)
    orig_rows = np.nonzero(keep)[0]
    aug = aug[keep]
    if len(aug):
        aug, first = np.unique(aug, axis=0, return_index=True)
        orig_rows = orig_rows[first]
    A2, b2 = aug[:, :n], aug[:, n]
    if len(A2):
        D = diagonalize(A2, m, track_rows=True)
        c = (D.U @ b2) % m
    else:
        D = Diagonal([], np.zeros((0, 0), np.int64), np.eye(n, dtype=np.int64), None, m, (0, n))
        c = np.zeros(0, dtype=np.int64)
    y = np.zeros(n, dtype=np.int64)
    kernel, orders = [], []
    for i in range(len(c)):
        if i < len(D.diag):
            d = D.diag[i]
            g = gcd(d, m)
            if c[i] % g:
                return Solution(m, None, certificate=_certificate(D, i, g, orig_rows, len(A), m, certify))
            mg = m // g
            y[i] = (int(c[i]) // g) * pow(d // g, -1, mg) % mg if mg > 1 else 0
        elif c[i]:
            return Solution(m, None, certificate=_certificate(D, i, m, orig_rows, len(A), m, certify))
    for i in range(n):
        if i < len(D.diag):
            g = gcd(D.diag[i], m)
            if g > 1:
                kernel.append((D.V[:, i] * (m // g)) % m)
                orders.append(g)
        else:
            kernel.append(D.V[:, i] % m)
            orders.append(m)
    x = (D.V @ y) % m
    return Solution(m, x, kernel, orders)


def _certificate(D: Diagonal, i: int, g: int, orig_rows, nrows: int, m: int, full: bool) -> Certificate:
    if not full:
        return Certificate(list(D.diag), i, None)
    scale = m // g if i < len(D.diag) else 1
    yred = (D.U[i] * scale) % m
    y = np.zeros(nrows, dtype=np.int64)
    y[orig_rows] = yred
    return Certificate(list(D.diag), i, [int(v) for v in y])


def kernel_mod(A, m: int, ncols: int | None = None) -> tuple[list[np.ndarray], list[int]]:
    A = np.array(A, dtype=np.int64)
    rows = len(A)
    if A.size == 0:
        A = np.zeros((rows, ncols or 0), dtype=np.int64)
    sol = solve_mod(A, np.zeros(rows, dtype=np.int64), m, certify=False)
    return sol.kernel, sol.orders


def cokernel_mod(R, m: int) -> tuple[list[np.ndarray], list[int]]:
    """Generators and orders of (Z/m)^k / column span of R (order-1 generators dropped)."""
    R = np.array(R, dtype=np.int64)
    k = R.shape[0]
    D = diagonalize(R, m, track_rows=False, track_inverse=True)
    gens, orders = [], []
    for i in range(k):
        g = gcd(D.diag[i], m) if i < len(D.diag) else m
        if g > 1:
            gens.append(D.Uinv[:, i] % m)
            orders.append(g)
    return gens, orders


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def invariant_factors(orders) -> list[int]:
    """Invariant factors d1 | d2 | ... of the direct sum of cyclic groups of the given orders."""
    by_prime: dict[int, list[int]] = {}
    for o in orders:
        for p, e in _factor(int(o)).items():
            by_prime.setdefault(p, []).append(p ** e)
    if not by_prime:
        return []
    length = max(len(v) for v in by_prime.values())
    out = [1] * length
    for p, pws in by_prime.items():
        pws = sorted(pws)
        pws = [1] * (length - len(pws)) + pws
        for i, q in enumerate(pws):
            out[i] *= q
    return out
