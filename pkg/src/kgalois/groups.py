"""
Finite groups as Cayley tables.

Elements are dense indices ``0 .. order-1`` and the identity is always ``0``.
Subgroups are sorted tuples of element indices of a parent group.

>>> Z3 = cyclic_group(3)
>>> Z3.mul(2, 2), Z3.inv(1)
(1, 2)
>>> len(enumerate_subgroups(direct_product(cyclic_group(2), cyclic_group(2))))
5
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class GroupError(ValueError):
    """Raised when a table fails a group axiom; ``witness`` holds the offending elements."""

    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: np.ndarray
    name: str = ""

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @property
    def identity(self) -> int:
        return 0

    @cached_property
    def inverse(self) -> np.ndarray:
        inv = np.argmin(self.table, axis=1)
        inv.setflags(write=False)
        return inv

    def __len__(self):
        return self.order

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"FiniteGroup({self.name or 'order ' + str(self.order)})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def prod(self, *xs: int) -> int:
        r = 0
        for x in xs:
            r = int(self.table[r, x])
        return r

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return int(self.table[self.table[g, x], self.inverse[g]])

    def power(self, a: int, n: int) -> int:
        r = 0
        for _ in range(n % self.element_order(a)):
            r = int(self.table[r, a])
        return r

    def element_order(self, a: int) -> int:
        n, x = 1, a
        while x != 0:
            x = int(self.table[x, a])
            n += 1
        return n

    @cached_property
    def exponent(self) -> int:
        from math import lcm
        return lcm(*(self.element_order(a) for a in range(self.order)))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def full(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, (0,))

    def subgroup(self, elements: Iterable[int]) -> "Subgroup":
        return Subgroup(self, tuple(sorted(set(int(e) for e in elements))))

    def generated(self, gens: Iterable[int]) -> "Subgroup":
        return self.subgroup(closure(self, gens))

    def generators(self) -> list[int]:
        """A small generating set, chosen greedily by index."""
        gens: list[int] = []
        cur = {0}
        for g in range(self.order):
            if g not in cur:
                gens.append(g)
                cur = closure(self, gens)
                if len(cur) == self.order:
                    break
        return gens


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(repr=False)
    elements: tuple[int, ...]

    def __post_init__(self):
        els = self.elements
        if not els or els[0] != 0 or list(els) != sorted(set(els)):
            raise GroupError("subgroup elements must be sorted, distinct and contain 0")
        s = set(els)
        for a in els:
            if self.parent.inv(a) not in s:
                raise GroupError("subgroup not closed under inverse", (a,))
            for b in els:
                if self.parent.mul(a, b) not in s:
                    raise GroupError("subgroup not closed under multiplication", (a, b))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._pos

    @cached_property
    def _pos(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.elements)}

    def position(self, x: int) -> int:
        return self._pos[x]

    def issubset(self, other: "Subgroup") -> bool:
        return set(self.elements) <= set(other.elements)

    @cached_property
    def group(self) -> FiniteGroup:
        """The subgroup as an abstract group; index ``i`` is ``elements[i]``."""
        p = self.parent
        pos = self._pos
        t = [[pos[p.mul(a, b)] for b in self.elements] for a in self.elements]
        return FiniteGroup(np.array(t), name=f"subgroup of order {self.order}")

    def conjugate_by(self, g: int) -> "Subgroup":
        """g^-1 S g"""
        gi = self.parent.inv(g)
        return self.parent.subgroup(self.parent.conj(gi, x) for x in self.elements)


@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    image: tuple[int, ...]

    def __post_init__(self):
        img = tuple(int(i) for i in self.image)
        object.__setattr__(self, "image", img)
        if len(img) != self.source.order:
            raise GroupError("image length does not match source order")
        if img[0] != 0:
            raise GroupError("identity not mapped to identity")
        for a in range(self.source.order):
            for b in range(self.source.order):
                if img[self.source.mul(a, b)] != self.target.mul(img[a], img[b]):
                    raise GroupError("map is not multiplicative", (a, b))

    def __call__(self, x: int) -> int:
        return self.image[x]

    def kernel(self) -> list[int]:
        return [x for x, y in enumerate(self.image) if y == 0]

    def is_bijective(self) -> bool:
        return sorted(self.image) == list(range(self.target.order))


def closure(G: FiniteGroup, gens: Iterable[int]) -> set[int]:
    els = {0}
    frontier = [0]
    gens = list(gens)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                b = G.mul(a, g)
                if b not in els:
                    els.add(b)
                    new.append(b)
        frontier = new
    return els


# constructors
# ------------

def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    i = np.arange(n)
    return FiniteGroup((i[:, None] + i[None, :]) % n, name=f"Z{n}")


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    """Componentwise product; the pair (a, b) has index ``a * |B| + b``."""
    nb = B.order
    ta = np.repeat(np.repeat(A.table, nb, axis=0), nb, axis=1)
    tb = np.tile(B.table, (A.order, A.order))
    name = f"{A.name or A.order}x{B.name or B.order}"
    return FiniteGroup(ta * nb + tb, name=name)


def elementary_abelian(n: int, rank: int) -> FiniteGroup:
    """Z_n^rank; element index is the base-n number with the first coordinate most significant."""
    G = cyclic_group(n)
    for _ in range(rank - 1):
        G = direct_product(G, cyclic_group(n))
    if rank == 0:
        G = cyclic_group(1)
    return FiniteGroup(G.table, name=f"Z{n}^{rank}")


def symmetric_group(n: int) -> FiniteGroup:
    """Permutations of ``range(n)`` in lexicographic order; ``(p*q)(i) = p(q(i))``."""
    perms = list(itertools.permutations(range(n)))
    idx = {p: i for i, p in enumerate(perms)}
    t = [[idx[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    return FiniteGroup(np.array(t), name=f"S{n}")


def from_table(table: Sequence[Sequence[int]]) -> FiniteGroup:
    """Validate a Cayley table and relabel so that the identity is index 0."""
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise GroupError("table must be a non-empty square array")
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise GroupError("table entries out of range")
    full = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(t[i]), full):
            raise GroupError("not a Latin square (row)", (i,))
        if not np.array_equal(np.sort(t[:, i]), full):
            raise GroupError("not a Latin square (column)", (i,))
    ids = [e for e in range(n) if np.array_equal(t[e], full) and np.array_equal(t[:, e], full)]
    if not ids:
        raise GroupError("no identity element")
    # (ab)c == a(bc) for all triples, vectorised over c
    for a in range(n):
        lhs = t[t[a]]           # lhs[b, c] = (ab)c
        rhs = t[a][t]           # rhs[b, c] = a(bc)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            b, c = bad[0]
            raise GroupError("not associative", (a, int(b), int(c)))
    e = ids[0]
    perm = np.arange(n)
    perm[0], perm[e] = e, 0          # perm[new] = old; a swap is its own inverse
    relabelled = perm[t[np.ix_(perm, perm)]]
    return FiniteGroup(relabelled)


# subgroups, cosets, quotients
# ----------------------------

def conjugate(G: FiniteGroup, g: int, x: int) -> int:
    return G.conj(g, x)


def is_normal_in(N: Subgroup, S: Subgroup) -> bool:
    if N.parent is not S.parent and N.parent != S.parent:
        raise GroupError("subgroups of different groups")
    if not N.issubset(S):
        raise GroupError("N is not contained in S")
    G = S.parent
    return all(G.conj(s, x) in N for s in S for x in N)


def centralizer(S: Subgroup, s: int) -> Subgroup:
    if s not in S:
        raise GroupError("element not in subgroup", (s,))
    G = S.parent
    return G.subgroup(t for t in S if G.mul(t, s) == G.mul(s, t))


def right_cosets(G: FiniteGroup, S: Subgroup) -> list[tuple[int, ...]]:
    """Right cosets S g, ordered by their smallest element."""
    seen: set[int] = set()
    out = []
    for g in range(G.order):
        if g in seen:
            continue
        c = tuple(sorted(G.mul(s, g) for s in S))
        seen.update(c)
        out.append(c)
    return out


def coset_representatives(G: FiniteGroup, S: Subgroup) -> list[int]:
    return [c[0] for c in right_cosets(G, S)]


def coset_decompose(G: FiniteGroup, S: Subgroup, reps: Sequence[int], x: int) -> tuple[int, int]:
    """Write x = s * reps[i]; returns (s, i)."""
    for i, r in enumerate(reps):
        s = G.mul(x, G.inv(r))
        if s in S:
            return s, i
    raise GroupError("representatives do not cover the group", (x,))


def quotient_group(S: Subgroup, N: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """S/N with cosets ordered by smallest element, and the projection from ``S.group``."""
    if not is_normal_in(N, S):
        raise GroupError("N is not normal in S")
    G = S.parent
    cosets = []
    which: dict[int, int] = {}
    for s in S:
        if s in which:
            continue
        c = sorted(G.mul(s, x) for x in N)
        for y in c:
            which[y] = len(cosets)
        cosets.append(c)
    t = [[which[G.mul(a[0], b[0])] for b in cosets] for a in cosets]
    Q = FiniteGroup(np.array(t), name=f"quotient of order {len(cosets)}")
    proj = GroupHom(S.group, Q, tuple(which[s] for s in S))
    return Q, proj


def enumerate_subgroups(G: FiniteGroup, bound: int = 64, up_to_conjugacy: bool = False) -> list[Subgroup]:
    """All subgroups sorted by (order, elements); joins cyclic subgroups until saturation."""
    if G.order > bound:
        raise GroupError(f"group order {G.order} exceeds enumeration bound {bound}")
    cyclic = {frozenset(closure(G, [g])) for g in range(G.order)}
    found = set(cyclic)
    layer = set(cyclic)
    while layer:
        new = set()
        for H in layer:
            for C in cyclic:
                if C <= H:
                    continue
                J = frozenset(closure(G, H | C))
                if J not in found:
                    found.add(J)
                    new.add(J)
        layer = new
    subs = sorted((tuple(sorted(H)) for H in found), key=lambda e: (len(e), e))
    if up_to_conjugacy:
        reps = []
        seen: set[tuple[int, ...]] = set()
        for e in subs:
            if e in seen:
                continue
            cls = {tuple(sorted(G.conj(g, x) for x in e)) for g in range(G.order)}
            seen |= cls
            reps.append(min(cls))
        subs = sorted(reps, key=lambda e: (len(e), e))
    return [Subgroup(G, e) for e in subs]


def normal_subgroups(S: Subgroup) -> list[Subgroup]:
    """Normal subgroups of S, as subgroups of S's parent."""
    G = S.parent
    out = []
    for H in enumerate_subgroups(S.group, bound=max(64, S.order)):
        N = G.subgroup(S.elements[i] for i in H.elements)
        if is_normal_in(N, S):
            out.append(N)
    return out


def enumerate_isomorphisms(A: FiniteGroup, B: FiniteGroup) -> list[GroupHom]:
    """All isomorphisms A -> B, in lexicographic order of their image arrays."""
    if A.order != B.order:
        return []
    gens = A.generators()
    # every element of A as a word in the generators, found breadth-first
    words: dict[int, tuple[int, int]] = {0: (-1, -1)}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for k, g in enumerate(gens):
                y = A.mul(x, g)
                if y not in words:
                    words[y] = (x, k)
                    nxt.append(y)
        frontier = nxt
    order = sorted(words, key=lambda y: (len(_word(words, y)), y))
    out = []
    cands = [[b for b in range(B.order) if B.element_order(b) == A.element_order(g)] for g in gens]
    for imgs in itertools.product(*cands):
        image = [0] * A.order
        for y in order:
            if y:
                x, k = words[y]
                image[y] = B.mul(image[x], imgs[k])
        if len(set(image)) != A.order:
            continue
        if all(image[A.mul(a, b)] == B.mul(image[a], image[b]) for a in range(A.order) for b in range(A.order)):
            out.append(GroupHom(A, B, tuple(image)))
    return sorted(out, key=lambda h: h.image)


def _word(words, y):
    w = []
    while y:
        y, k = words[y]
        w.append(k)
    return w


def group_from_json(data) -> FiniteGroup:
    """A group from ``{"table": ...}`` or a named family: ``{"cyclic": n}``, ``{"elementary": [p, r]}``,
    ``{"symmetric": n}``, ``{"product": [a, b]}``."""
    if not isinstance(data, dict):
        raise GroupError("group must be a JSON object")
    if "table" in data:
        return from_table(data["table"])
    if "cyclic" in data:
        return cyclic_group(int(data["cyclic"]))
    if "elementary" in data:
        p, r = data["elementary"]
        return elementary_abelian(int(p), int(r))
    if "symmetric" in data:
        return symmetric_group(int(data["symmetric"]))
    if "product" in data:
        a, b = data["product"]
        return direct_product(group_from_json(a), group_from_json(b))
    raise GroupError(f"unrecognised group description with keys {sorted(data)}")
