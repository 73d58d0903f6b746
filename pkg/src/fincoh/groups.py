"""Finite groups as validated Cayley tables.

Elements are the integers ``0..n-1`` and ``0`` is always the identity.
Everything here is immutable once built.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Optional, Sequence

import numpy as np

from .errors import (
    MissingInverse,
    NoIdentity,
    NotAHomomorphism,
    NotASubgroup,
    NotAssociative,
    NotClosed,
    SizeLimitExceeded,
)
from .limits import AUT_MAX_ORDER, max_brute

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class FiniteGroup:
    table: Table
    inverses: tuple[int, ...]
    name: str = field(default="", compare=False)

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, h: int, g: int) -> int:
        """h·g·h⁻¹"""
        t = self.table
        return t[t[h][g]][self.inverses[h]]

    def prod(self, *xs: int) -> int:
        acc = 0
        for x in xs:
            acc = self.table[acc][x]
        return acc

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements for b in range(a))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily.

        At each step the element enlarging the generated subgroup the most is
        added; ties go to the smaller index.
        """
        gens: list[int] = []
        current = frozenset([0])
        while len(current) < self.order:
            best: Optional[tuple[int, frozenset]] = None
            for x in self.elements:
                if x in current:
                    continue
                span = generated(self, gens + [x])
                if best is None or len(span) > len(best[1]):
                    best = (x, span)
            assert best is not None
            gens.append(best[0])
            current = best[1]
        return tuple(gens)

    def to_json(self) -> dict:
        return {"name": self.name, "order": self.order,
                "table": [list(r) for r in self.table]}


def build_group(table: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    """Validate a Cayley table and return a group with identity at index 0."""
    rows = [list(r) for r in table]
    n = len(rows)
    if n == 0:
        raise NotClosed("empty table")
    for x, r in enumerate(rows):
        if len(r) != n:
            raise NotClosed(f"row {x} has length {len(r)}, expected {n}")
        for y, v in enumerate(r):
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or not 0 <= v < n:
                raise NotClosed(f"entry table[{x}][{y}] = {v!r} is not in 0..{n - 1}")

    ident = None
    for e in range(n):
        if all(rows[e][x] == x and rows[x][e] == x for x in range(n)):
            ident = e
            break
    if ident is None:
        raise NoIdentity("no element acts as a two-sided identity")
    if ident != 0:
        # swap labels 0 and ident
        p = list(range(n))
        p[0], p[ident] = ident, 0
        new = [[0] * n for _ in range(n)]
        for x in range(n):
            for y in range(n):
                new[p[x]][p[y]] = p[rows[x][y]]
        rows = new

    inverses = []
    for x in range(n):
        for y in range(n):
            if rows[x][y] == 0 and rows[y][x] == 0:
                inverses.append(y)
                break
        else:
            raise MissingInverse(f"element {x} has no two-sided inverse")

    arr = np.asarray(rows, dtype=np.int64)
    left = arr[arr]  # left[a, b, c] = (ab)c
    right = arr[np.arange(n)[:, None, None], arr[None, :, :]]  # a(bc)
    bad = np.argwhere(left != right)
    if len(bad):
        a, b, c = (int(v) for v in bad[0])
        raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")

    return FiniteGroup(tuple(tuple(r) for r in rows), tuple(inverses), name)


def generated(G: FiniteGroup, gens: Sequence[int]) -> frozenset[int]:
    seen = {0}
    frontier = [0]
    t = G.table
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = t[x][g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def extend_along_generators(
    G: FiniteGroup,
    gens: Sequence[int],
    gen_values: Sequence[Hashable],
    step: Callable,
    identity_value: Hashable,
) -> Optional[list]:
    """Propagate values from generators over the right Cayley graph of ``G``.

    ``step(x, value_at_x, g, value_at_g)`` gives the value at ``x·g``. Every
    edge is checked, so a non-None result satisfies the step rule on all
    ``(x, g)`` pairs. Returns None on an inconsistency or if ``gens`` do not
    generate ``G``.
    """
    values: list = [None] * G.order
    values[0] = identity_value
    queue = [0]
    t = G.table
    for x in queue:
        vx = values[x]
        for g, vg in zip(gens, gen_values):
            y = t[x][g]
            v = step(x, vx, g, vg)
            if values[y] is None:
                values[y] = v
                queue.append(y)
            elif values[y] != v:
                return None
    if len(queue) != G.order:
        return None
    return values


@dataclass(frozen=True)
class Homomorphism:
    source: FiniteGroup
    target: FiniteGroup
    image: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.image[x]

    @property
    def is_injective(self) -> bool:
        return len(set(self.image)) == len(self.image)

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.source.order == self.target.order

    def inverse(self) -> "Homomorphism":
        if not self.is_bijective:
            raise NotAHomomorphism("inverse requested for a non-bijective map")
        inv = [0] * len(self.image)
        for x, y in enumerate(self.image):
            inv[y] = x
        return Homomorphism(self.target, self.source, tuple(inv))


def make_homomorphism(src: FiniteGroup, tgt: FiniteGroup, image: Sequence[int]) -> Homomorphism:
    image = tuple(int(v) for v in image)
    if len(image) != src.order:
        raise NotAHomomorphism(f"image has length {len(image)}, source order is {src.order}")
    if any(not 0 <= v < tgt.order for v in image):
        raise NotAHomomorphism("image entry outside the target group")
    if image[0] != 0:
        raise NotAHomomorphism(f"identity maps to {image[0]}")
    for x in src.elements:
        for y in src.elements:
            if image[src.mul(x, y)] != tgt.mul(image[x], image[y]):
                raise NotAHomomorphism(f"f({x}*{y}) != f({x})*f({y})")
    return Homomorphism(src, tgt, image)


def all_homomorphisms(src: FiniteGroup, tgt: FiniteGroup) -> list[tuple[int, ...]]:
    """Every homomorphism src -> tgt as an image array, lexicographically sorted."""
    gens = src.generators
    choices = [[y for y in tgt.elements if src.element_order(g) % tgt.element_order(y) == 0]
               for g in gens]
    total = 1
    for c in choices:
        total *= len(c)
    if total > max_brute():
        raise SizeLimitExceeded(f"{total} generator assignments exceed the brute-force cap")
    out = []
    tt = tgt.table
    for vals in itertools.product(*choices):
        res = extend_along_generators(src, gens, vals, lambda x, vx, g, vg: tt[vx][vg], 0)
        if res is not None:
            out.append(tuple(res))
    out.sort()
    return out


# ---------------------------------------------------------------- subgroups

@dataclass(frozen=True)
class Subgroup:
    ambient: FiniteGroup
    members: tuple[int, ...]
    normal: bool

    def __contains__(self, x: int) -> bool:
        return x in self._member_set

    def __len__(self) -> int:
        return len(self.members)

    @cached_property
    def _member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    @cached_property
    def index_of(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.members)}

    @cached_property
    def group(self) -> FiniteGroup:
        """The subgroup as a group in its own right, labelled by position in ``members``."""
        idx = self.index_of
        G = self.ambient
        table = [[idx[G.mul(a, b)] for b in self.members] for a in self.members]
        name = f"{self.ambient.name}>{list(self.members)}" if self.ambient.name else ""
        return build_group(table, name)

    @cached_property
    def inclusion(self) -> Homomorphism:
        return Homomorphism(self.group, self.ambient, self.members)


def make_subgroup(G: FiniteGroup, members: Sequence[int]) -> Subgroup:
    ms = sorted(set(int(m) for m in members))
    s = set(ms)
    if not ms or ms[0] != 0:
        raise NotASubgroup("subgroup must contain the identity 0")
    if ms[-1] >= G.order or ms[0] < 0:
        raise NotASubgroup(f"member out of range 0..{G.order - 1}")
    for a in ms:
        if G.inv(a) not in s:
            raise NotASubgroup(f"inverse of {a} is missing")
        for b in ms:
            if G.mul(a, b) not in s:
                raise NotASubgroup(f"{a}*{b} = {G.mul(a, b)} is missing")
    normal = all(G.conj(g, m) in s for g in G.elements for m in ms)
    return Subgroup(G, tuple(ms), normal)


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """All subgroups of G, sorted by (order, members)."""
    found = {generated(G, [x]) for x in G.elements}
    frontier = set(found)
    while frontier:
        new = set()
        for A in frontier:
            for B in found:
                J = generated(G, sorted(A | B))
                if J not in found and J not in new:
                    new.add(J)
        found |= new
        frontier = new
    return [make_subgroup(G, sorted(S)) for S in sorted(found, key=lambda S: (len(S), sorted(S)))]


@dataclass(frozen=True)
class CosetSpace:
    ambient: FiniteGroup
    subgroup: Subgroup
    cosets: tuple[tuple[int, ...], ...]
    coset_of: tuple[int, ...]
    basepoint: int
    left_action: tuple[tuple[int, ...], ...]  # left_action[g][i] = coset of g·(coset i)
    quotient: Optional[FiniteGroup]

    def __len__(self) -> int:
        return len(self.cosets)

    @cached_property
    def projection(self) -> Optional[Homomorphism]:
        if self.quotient is None:
            return None
        return Homomorphism(self.ambient, self.quotient, self.coset_of)


def coset_space(G: FiniteGroup, N: Subgroup) -> CosetSpace:
    """Left cosets gN, ordered by smallest member; coset 0 is N itself."""
    if N.ambient != G:
        raise NotASubgroup("subgroup belongs to a different ambient group")
    coset_of = [-1] * G.order
    cosets = []
    for x in G.elements:
        if coset_of[x] >= 0:
            continue
        c = tuple(sorted(G.mul(x, m) for m in N.members))
        for y in c:
            coset_of[y] = len(cosets)
        cosets.append(c)
    reps = [c[0] for c in cosets]
    left = tuple(tuple(coset_of[G.mul(g, r)] for r in reps) for g in G.elements)
    quotient = None
    if N.normal:
        table = [[coset_of[G.mul(a, b)] for b in reps] for a in reps]
        qname = f"{G.name}/{list(N.members)}" if G.name else ""
        quotient = build_group(table, qname)
    return CosetSpace(G, N, tuple(cosets), tuple(coset_of), 0, left, quotient)


# ------------------------------------------------------------- automorphisms

@dataclass(frozen=True)
class AutomorphismGroup:
    """Aut(base). ``group`` multiplies by composition: i·j is elements[i]∘elements[j]."""
    base: FiniteGroup
    elements: tuple[tuple[int, ...], ...]
    group: FiniteGroup

    @cached_property
    def index_of(self) -> dict[tuple[int, ...], int]:
        return {e: i for i, e in enumerate(self.elements)}

    def apply(self, i: int, g: int) -> int:
        return self.elements[i][g]

    def __len__(self) -> int:
        return len(self.elements)


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """p∘q on index arrays."""
    return tuple(p[x] for x in q)


def invert(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[y] = x
    return tuple(out)


def compute_aut(G: FiniteGroup, max_order: int = AUT_MAX_ORDER) -> AutomorphismGroup:
    if G.order > max_order:
        raise SizeLimitExceeded(f"|G| = {G.order} exceeds the automorphism search cap {max_order}")
    gens = G.generators
    choices = [[y for y in G.elements if G.element_order(y) == G.element_order(g)] for g in gens]
    total = 1
    for c in choices:
        total *= len(c)
    if total > max_brute():
        raise SizeLimitExceeded(f"{total} generator assignments exceed the brute-force cap")
    t = G.table
    found = []
    for vals in itertools.product(*choices):
        res = extend_along_generators(G, gens, vals, lambda x, vx, g, vg: t[vx][vg], 0)
        if res is not None and len(set(res)) == G.order:
            found.append(tuple(res))
    found.sort()
    index = {e: i for i, e in enumerate(found)}
    table = [[index[compose(p, q)] for q in found] for p in found]
    name = f"Aut({G.name})" if G.name else ""
    return AutomorphismGroup(G, tuple(found), build_group(table, name))
