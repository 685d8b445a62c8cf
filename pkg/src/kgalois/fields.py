"""
Exact arithmetic in a Galois extension K of k with an explicit Galois group.

Two backends:

* ``Q(q)`` with ``q`` a primitive m-th root of unity, elements stored as
  integer coordinates over a common denominator in the power basis
  ``1, q, ..., q^(phi(m)-1)`` reduced modulo the m-th cyclotomic polynomial;
* ``F_{p^n}``, elements stored as integer codes (base-p digits of the
  polynomial in a primitive element).

Every tower carries a designated cyclic group of roots of unity ``mu`` of
order ``tower.m`` with generator ``tower.zeta``; automorphisms act on it by
``zeta -> zeta^a``.  The base field k is the fixed field of the listed
automorphisms and is represented inside K.

>>> t = cyclotomic_tower(9, [1, 4, 7])
>>> t.degree, t.m
(3, 18)
>>> t.is_in_k(t.q ** 3), t.is_in_k(t.q)
(True, False)
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

import numpy as np
import sympy

from . import linalg
from .groups import FiniteGroup


class FieldError(ValueError):
    pass


# cyclotomic backend
# ------------------

class CyclotomicField:
    """Q(q) for q a primitive m-th root of unity."""

    def __init__(self, m: int):
        if m < 1:
            raise FieldError("m must be positive")
        self.m = m
        x = sympy.Symbol("x")
        coeffs = sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs()[::-1]
        self.modulus = tuple(int(c) for c in coeffs)       # low to high, monic
        self.phi = len(self.modulus) - 1
        # q^j reduced, for 0 <= j < m
        self._powers = []
        for j in range(m):
            c = [0] * max(j + 1, self.phi)
            c[j] = 1
            self._powers.append(tuple(self._reduce(c)))
        self.zero = CycElement(self, (0,) * self.phi, 1)
        self.one = CycElement(self, (1,) + (0,) * (self.phi - 1), 1)
        self.gen = CycElement(self, self._powers[1 % m], 1)

    def __repr__(self):
        return f"Q(zeta_{self.m})"

    def _reduce(self, c: list[int]) -> list[int]:
        phi, f = self.phi, self.modulus
        for k in range(len(c) - 1, phi - 1, -1):
            v = c[k]
            if v:
                base = k - phi
                for i in range(phi):
                    if f[i]:
                        c[base + i] -= v * f[i]
        return c[:phi] + [0] * (phi - len(c))

    def __call__(self, x) -> "CycElement":
        if isinstance(x, CycElement):
            return x
        x = Fraction(x)
        return CycElement(self, (x.numerator,) + (0,) * (self.phi - 1), x.denominator)

    def from_coords(self, coords: Sequence) -> "CycElement":
        fr = [Fraction(c) for c in coords]
        if len(fr) != self.phi:
            raise FieldError(f"expected {self.phi} coordinates")
        d = 1
        for f in fr:
            d = d * f.denominator // gcd(d, f.denominator)
        return CycElement(self, tuple(int(f * d) for f in fr), d)

    def power_of_q(self, j: int) -> "CycElement":
        return CycElement(self, self._powers[j % self.m], 1)

    def galois_map(self, x: "CycElement", a: int) -> "CycElement":
        """q -> q^a"""
        m = self.m
        out = [0] * self.phi
        for i, ci in enumerate(x.c):
            if ci:
                p = self._powers[(a * i) % m]
                for j, pj in enumerate(p):
                    if pj:
                        out[j] += ci * pj
        return CycElement(self, tuple(out), x.d)

    @cached_property
    def units(self) -> list[int]:
        return [a for a in range(1, self.m + 1) if gcd(a, self.m) == 1 and (a < self.m or self.m == 1)]

    def characteristic(self) -> int:
        return 0


class CycElement:
    __slots__ = ("F", "c", "d")

    def __init__(self, F: CyclotomicField, c: tuple, d: int):
        if d < 0:
            d, c = -d, tuple(-v for v in c)
        g = gcd(d, *c)
        if g != 1 and g != 0:
            c = tuple(v // g for v in c)
            d //= g
        self.F, self.c, self.d = F, c, d

    @property
    def field(self):
        return self.F

    def coords(self) -> list[Fraction]:
        return [Fraction(v, self.d) for v in self.c]

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, CycElement):
            return self.c == other.c and self.d == other.d
        if isinstance(other, (int, Fraction)):
            return self == self.F(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.c, self.d))

    def __repr__(self):
        terms = []
        for i, v in enumerate(self.coords()):
            if v:
                terms.append(f"{v}" if i == 0 else f"{v}*q^{i}")
        return " + ".join(terms) if terms else "0"

    def _coerce(self, other):
        if isinstance(other, CycElement):
            return other
        if isinstance(other, (int, Fraction)):
            return self.F(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.d == o.d:
            return CycElement(self.F, tuple(a + b for a, b in zip(self.c, o.c)), self.d)
        return CycElement(self.F, tuple(a * o.d + b * self.d for a, b in zip(self.c, o.c)), self.d * o.d)

    __radd__ = __add__

    def __neg__(self):
        return CycElement(self.F, tuple(-a for a in self.c), self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.F
        phi = F.phi
        a, b = self.c, o.c
        if phi == 1:
            return CycElement(F, (a[0] * b[0],), self.d * o.d)
        r = [0] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        r[i + j] += ai * bj
        return CycElement(F, tuple(F._reduce(r)), self.d * o.d)

    __rmul__ = __mul__

    def inverse(self) -> "CycElement":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        F = self.F
        if F.phi == 1:
            return CycElement(F, (self.d,), self.c[0])
        prod = F.one
        for a in F.units:
            if a != 1:
                prod = prod * F.galois_map(self, a)
        norm = self * prod          # rational
        return CycElement(F, tuple(v * norm.d for v in prod.c), prod.d * norm.c[0])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        r, b = self.F.one, self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def to_json(self) -> list[str]:
        return [str(v) for v in self.coords()]


# finite field backend
# --------------------

def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


class FiniteField:
    """F_{p^n} with a primitive modulus found by lexicographic search."""

    def __init__(self, p: int, n: int):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        if n < 1:
            raise FieldError("degree must be positive")
        self.p, self.n = p, n
        self.size = q = p ** n
        self.modulus, self._exp = self._primitive_modulus()
        self._log = [None] * q
        for e, code in enumerate(self._exp[: q - 1]):
            self._log[code] = e
        self._exp = self._exp[: q - 1] * 2
        self.zero = FFElement(self, 0)
        self.one = FFElement(self, 1)
        self.gen = FFElement(self, self._exp[1 % (q - 1)] if q > 2 else 1)

    def __repr__(self):
        return f"GF({self.p}^{self.n})"

    def digits(self, code: int) -> list[int]:
        out = []
        for _ in range(self.n):
            out.append(code % self.p)
            code //= self.p
        return out

    def from_digits(self, ds: Sequence[int]) -> int:
        code = 0
        for d in reversed(list(ds)):
            code = code * self.p + (int(d) % self.p)
        return code

    def _mulx(self, code: int, f: tuple) -> int:
        ds = [0] + self.digits(code)
        top = ds.pop()
        if top:
            ds = [(d - top * fi) % self.p for d, fi in zip(ds, f)]
        return self.from_digits(ds)

    def _primitive_modulus(self):
        p, n, q = self.p, self.n, self.size
        if q == 2:
            return (1, 1), [1]
        import itertools
        for tail in itertools.product(range(p), repeat=n):
            if tail[0] == 0:
                continue
            f = tuple(tail)              # x^n = -(f0 + f1 x + ...)
            exp = [1]
            x = 1
            ok = True
            for k in range(1, q - 1):
                x = self._mulx(x, f)
                if x == 1:
                    ok = False
                    break
                exp.append(x)
            if ok and self._mulx(x, f) == 1:
                return f + (1,), exp
        raise FieldError("no primitive polynomial found")  # unreachable for prime p

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.n == 1:
            return (a + b) % self.p
        return self.from_digits([(x + y) for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self.from_digits([-x for x in self.digits(a)])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def __call__(self, x) -> "FFElement":
        if isinstance(x, FFElement):
            return x
        return FFElement(self, int(x) % self.p)

    def from_coords(self, coords: Sequence[int]) -> "FFElement":
        return FFElement(self, self.from_digits(coords))

    def frobenius(self, x: "FFElement", k: int) -> "FFElement":
        """x -> x^(p^k)"""
        if not x.code:
            return x
        e = (self._log[x.code] * pow(self.p, k, self.size - 1)) % (self.size - 1)
        return FFElement(self, self._exp[e])

    def characteristic(self) -> int:
        return self.p


class FFElement:
    __slots__ = ("F", "code")

    def __init__(self, F: FiniteField, code: int):
        self.F, self.code = F, code

    @property
    def field(self):
        return self.F

    def coords(self) -> list[int]:
        return self.F.digits(self.code)

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, FFElement):
            return self.code == other.code
        if isinstance(other, int):
            return self.code == self.F(other).code
        return NotImplemented

    def __hash__(self):
        return hash(self.code)

    def __repr__(self):
        return f"GF[{self.code}]"

    def _coerce(self, other):
        if isinstance(other, FFElement):
            return other
        if isinstance(other, int):
            return self.F(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElement(self.F, self.F.add(self.code, o.code))

    __radd__ = __add__

    def __neg__(self):
        return FFElement(self.F, self.F.neg(self.code))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElement(self.F, self.F.mul(self.code, o.code))

    __rmul__ = __mul__

    def inverse(self):
        if not self.code:
            raise ZeroDivisionError("inverse of zero")
        F = self.F
        return FFElement(F, F._exp[(-F._log[self.code]) % (F.size - 1)])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not self.code:
            return self if n else self.F.one
        F = self.F
        return FFElement(F, F._exp[(F._log[self.code] * n) % (F.size - 1)])

    def to_json(self) -> list[int]:
        return self.coords()


# towers
# ------

class Automorphism:
    """One element of Gal(K|k): ``index`` into the tower's list, ``exponent`` on zeta."""

    __slots__ = ("index", "exponent", "param")

    def __init__(self, index: int, exponent: int, param: int):
        self.index, self.exponent, self.param = index, exponent, param

    def __repr__(self):
        return f"Automorphism({self.index}, zeta->zeta^{self.exponent})"


class FieldTower:
    """K over k with listed automorphisms; ``automorphisms[0]`` is the identity."""

    def __init__(self, K, kind: str, params: dict, autos: list[Automorphism], m: int, zeta):
        self.K = K
        self.kind = kind
        self.params = params
        self.automorphisms = autos
        self.m = m
        self.zeta = zeta
        self.zero, self.one = K.zero, K.one
        z = K.one
        self._mu = []
        for _ in range(m):
            self._mu.append(z)
            z = z * zeta
        if z != K.one or len(set(self._mu)) != m:
            raise FieldError("designated generator does not have the expected order")
        self._dlog = {x: e for e, x in enumerate(self._mu)}
        self.k_basis = self._greedy_k_basis()
        B = [[self.apply(g, b) for b in self.k_basis] for g in autos]
        self._coord_inverse = linalg.inverse(K, B)

    def __repr__(self):
        return f"FieldTower({self.kind}, {self.params})"

    def to_json(self) -> dict:
        return {"type": self.kind, **self.params}

    def __eq__(self, other):
        return isinstance(other, FieldTower) and self.to_json() == other.to_json()

    def __hash__(self):
        return hash(repr(sorted(self.to_json().items())))

    @property
    def field(self):
        return self.K

    @property
    def degree(self) -> int:
        """[K:k]"""
        return len(self.automorphisms)

    @property
    def prime_degree(self) -> int:
        return self.K.phi if self.kind == "cyclotomic" else self.K.n

    @property
    def characteristic(self) -> int:
        return self.K.characteristic()

    def __call__(self, x):
        return self.K(x)

    @property
    def q(self):
        return self.K.gen

    def apply(self, g, x):
        """Apply an automorphism (object or index) to x."""
        if isinstance(g, int):
            g = self.automorphisms[g]
        if g.index == 0:
            return x
        if self.kind == "cyclotomic":
            return self.K.galois_map(x, g.param)
        return self.K.frobenius(x, g.param)

    def root_of_unity(self, e: int):
        return self._mu[e % self.m]

    def dlog(self, x) -> int | None:
        """Exponent e with zeta^e == x, or None if x is not in mu."""
        return self._dlog.get(x)

    def is_in_k(self, x) -> bool:
        return all(self.apply(g, x) == x for g in self.automorphisms)

    def k_coords(self, x) -> list:
        """Coordinates of x over ``k_basis`` (each an element of k)."""
        v = [self.apply(g, x) for g in self.automorphisms]
        return linalg.matvec(self._coord_inverse, v, self.zero)

    def from_k_coords(self, c: Sequence):
        s = self.zero
        for a, b in zip(c, self.k_basis):
            if a:
                s = s + a * b
        return s

    def _greedy_k_basis(self) -> list:
        K = self.K
        cands = [K.power_of_q(i) for i in range(K.phi)] if self.kind == "cyclotomic" else \
            [K.from_coords([0] * i + [1] + [0] * (K.n - i - 1)) for i in range(K.n)]
        chosen: list = []
        for b in cands:
            trial = chosen + [b]
            M = [[self.apply(g, y) for y in trial] for g in self.automorphisms]
            if linalg.rank(M) == len(trial):
                chosen = trial
            if len(chosen) == self.degree:
                break
        return chosen

    @cached_property
    def galois_group(self) -> FiniteGroup:
        n = self.degree
        if self.kind == "cyclotomic":
            mod = self.K.m
            idx = {a.param % mod: a.index for a in self.automorphisms}
            t = [[idx[(a.param * b.param) % mod] for b in self.automorphisms] for a in self.automorphisms]
        else:
            t = [[(i + j) % n for j in range(n)] for i in range(n)]
        return FiniteGroup(np.array(t), name="Gal(K|k)")

    def galois_center(self) -> list[int]:
        G = self.galois_group
        return [a for a in range(G.order) if all(G.mul(a, b) == G.mul(b, a) for b in range(G.order))]

    def automorphism_matrix(self, g) -> list[list]:
        """Matrix of g on the prime-field basis of K (columns are images of basis vectors)."""
        K = self.K
        if self.kind == "cyclotomic":
            cols = [self.apply(g, K.power_of_q(i)).coords() for i in range(K.phi)]
        else:
            cols = [self.apply(g, K.from_coords([0] * i + [1] + [0] * (K.n - i - 1))).coords() for i in range(K.n)]
        return [list(r) for r in zip(*cols)]

    def scalar_from_json(self, data):
        return self.K.from_coords(data)


def cyclotomic_tower(m: int, H: Iterable[int]) -> FieldTower:
    """K = Q(q_m), k = fixed field of H <= (Z/m)* acting by q -> q^a.

    The designated mu is all roots of unity of K: order m for even m and 2m
    for odd m, with generator q (even m) or -q^((m+1)/2), whose square is q.
    """
    K = CyclotomicField(m)
    if m <= 2:
        Hn = sorted({1 for _ in H}) or [1]
    else:
        Hn = sorted({a % m for a in H})
    if m > 2:
        if 1 not in Hn or any(gcd(a, m) != 1 for a in Hn) or \
                any((a * b) % m not in Hn for a in Hn for b in Hn):
            raise FieldError(f"{sorted(H)} is not a subgroup of (Z/{m})*")
    if m % 2 == 0:
        meff, zeta = m, K.gen
        expo = lambda a: a % m
    else:
        meff = 2 * m
        zeta = -K.power_of_q((m + 1) // 2)
        expo = lambda a: a if a % 2 else a + m
    autos = [Automorphism(i, expo(a) % meff, a) for i, a in enumerate(Hn)]
    return FieldTower(K, "cyclotomic", {"m": m, "H": Hn}, autos, meff, zeta)


def finite_field_tower(p: int, n: int, d: int = 1) -> FieldTower:
    """K = F_{p^n} over k = F_{p^d}; Gal is generated by x -> x^(p^d) and mu = K*."""
    if d < 1 or n % d:
        raise FieldError(f"{d} does not divide {n}")
    K = FiniteField(p, n)
    q = K.size
    autos = [Automorphism(j, pow(p, d * j, q - 1) if q > 2 else 1, d * j) for j in range(n // d)]
    return FieldTower(K, "finite", {"p": p, "n": n, "d": d}, autos, q - 1, K.gen)


def rational_tower() -> FieldTower:
    return cyclotomic_tower(1, [1])


def apply_automorphism(t: FieldTower, g, x):
    return t.apply(g, x)


def root_of_unity(t: FieldTower, e: int):
    return t.root_of_unity(e)


def k_membership(t: FieldTower, x) -> bool:
    return t.is_in_k(x)


def rank_kernel(t, M, ncols: int | None = None):
    """Rank and right-kernel basis of a matrix over K (``t`` a tower or a field)."""
    F = t.K if isinstance(t, FieldTower) else t
    return linalg.rank_kernel(F, M, ncols)


def tower_from_json(data: dict) -> FieldTower:
    kind = data.get("type")
    if kind == "rational":
        return rational_tower()
    if kind == "cyclotomic":
        return cyclotomic_tower(int(data["m"]), [int(a) for a in data["H"]])
    if kind == "finite":
        return finite_field_tower(int(data["p"]), int(data["n"]), int(data.get("d", 1)))
    raise FieldError(f"unknown tower type {kind!r}")
