"""Cocycles, first cohomology pointed sets, induced maps and the long exact sequence."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

from .actions import GroupAction, equivariance_witness, h0, restrict_and_project
from .errors import (
    ActionMismatch,
    CheckFailure,
    NotACocycle,
    NotEquivariant,
    SizeLimitExceeded,
    TargetNotAbelian,
)
from .groups import FiniteGroup, Homomorphism, Subgroup, build_group, extend_along_generators
from .limits import max_brute

Values = tuple[int, ...]


@dataclass(frozen=True)
class Cocycle:
    action: GroupAction
    values: Values

    def __call__(self, s: int) -> int:
        return self.values[s]


def cocycle_witness(action: GroupAction, values: Sequence[int]) -> Optional[tuple[int, int]]:
    """First (s, t) violating Φ(st) = Φ(s)·s(Φ(t)), or None."""
    G, A = action.target, action.acting
    if len(values) != A.order:
        return (0, 0)
    for s in A.elements:
        img = action.images[s]
        for t in A.elements:
            if values[A.mul(s, t)] != G.mul(values[s], img[values[t]]):
                return (s, t)
    return None


def make_cocycle(action: GroupAction, values: Sequence[int]) -> Cocycle:
    values = tuple(int(v) for v in values)
    if len(values) != action.acting.order or any(not 0 <= v < action.target.order for v in values):
        raise NotACocycle("values must give one target element per acting element")
    w = cocycle_witness(action, values)
    if w is not None:
        raise NotACocycle(f"cocycle identity fails at (s1, s2) = {w}")
    return Cocycle(action, values)


def trivial_cocycle(action: GroupAction) -> Cocycle:
    return Cocycle(action, (0,) * action.acting.order)


def twist_values(action: GroupAction, values: Sequence[int], b: int) -> Values:
    """σ ↦ b⁻¹·Φ(σ)·σ(b)"""
    G = action.target
    bi = G.inv(b)
    return tuple(G.mul(G.mul(bi, v), action.images[s][b]) for s, v in enumerate(values))


def coboundary(action: GroupAction, b: int) -> Values:
    """σ ↦ b⁻¹·σ(b)"""
    return twist_values(action, (0,) * action.acting.order, b)


def cocycle_values(action: GroupAction, limit: Optional[int] = None) -> list[Values]:
    """Z¹ as sorted value arrays, by extension from generator assignments."""
    A, G = action.acting, action.target
    gens = A.generators
    total = G.order ** len(gens)
    cap = max_brute() if limit is None else limit
    if total > cap:
        raise SizeLimitExceeded(f"{total} generator assignments exceed the cap {cap}")
    imgs, t = action.images, G.table
    step = lambda x, vx, g, vg: t[vx][imgs[x][vg]]
    out = []
    for vals in itertools.product(G.elements, repeat=len(gens)):
        res = extend_along_generators(A, gens, vals, step, 0)
        if res is not None:
            out.append(tuple(res))
    out.sort()
    return out


def enumerate_cocycles(action: GroupAction, limit: Optional[int] = None) -> list[Cocycle]:
    return [Cocycle(action, v) for v in cocycle_values(action, limit)]


def cohomologous_witness(phi: Cocycle, psi: Cocycle) -> Optional[int]:
    """Some b with Ψ(σ) = b⁻¹·Φ(σ)·σ(b) for all σ, or None."""
    if phi.action != psi.action:
        raise ActionMismatch("cocycles are for different actions")
    for b in phi.action.target.elements:
        if twist_values(phi.action, phi.values, b) == psi.values:
            return b
    return None


# ------------------------------------------------------------------- H¹

@dataclass(frozen=True)
class CohomClass:
    rep: Values
    members: tuple[int, ...]  # indices into CohomologySet.cocycles


@dataclass(frozen=True)
class CohomologySet:
    action: GroupAction
    cocycles: tuple[Values, ...]
    classes: tuple[CohomClass, ...]
    class_of: tuple[int, ...]
    witnesses: tuple[int, ...]  # cocycles[i] = b⁻¹·rep·σ(b) with b = witnesses[i]
    basepoint: int = 0

    def __len__(self) -> int:
        return len(self.classes)

    @cached_property
    def index_of(self) -> dict[Values, int]:
        return {v: i for i, v in enumerate(self.cocycles)}

    def classify(self, values: Sequence[int]) -> int:
        try:
            return self.class_of[self.index_of[tuple(values)]]
        except KeyError:
            raise NotACocycle(f"{tuple(values)} is not a cocycle for this action") from None

    def rep(self, c: int) -> Cocycle:
        return Cocycle(self.action, self.classes[c].rep)

    def sizes(self) -> list[int]:
        return [len(c.members) for c in self.classes]

    def to_json(self) -> dict:
        return {"z1_size": len(self.cocycles),
                "classes": [{"rep": list(c.rep), "size": len(c.members),
                             "basepoint": i == self.basepoint}
                            for i, c in enumerate(self.classes)]}


def h1(action: GroupAction, limit: Optional[int] = None) -> CohomologySet:
    """Partition Z¹ into classes; representatives are lexicographically minimal."""
    vals = cocycle_values(action, limit)
    index = {v: i for i, v in enumerate(vals)}
    class_of = [-1] * len(vals)
    witness = [-1] * len(vals)
    classes = []
    for i, v in enumerate(vals):
        if class_of[i] >= 0:
            continue
        c = len(classes)
        members = []
        for b in action.target.elements:
            j = index.get(twist_values(action, v, b))
            if j is None:
                raise CheckFailure(f"twisting cocycle {v} by {b} left Z¹")
            if class_of[j] == -1:
                class_of[j] = c
                witness[j] = b
                members.append(j)
            elif class_of[j] != c:
                raise CheckFailure("orbits of the twisting action overlap")
        classes.append(CohomClass(v, tuple(sorted(members))))
    for j, v in enumerate(vals):
        if twist_values(action, classes[class_of[j]].rep, witness[j]) != v:
            raise CheckFailure(f"stored witness for cocycle {j} does not validate")
    base = class_of[index[(0,) * action.acting.order]]
    return CohomologySet(action, tuple(vals), tuple(classes), tuple(class_of), tuple(witness), base)


def h1_group_structure(H: CohomologySet) -> FiniteGroup:
    """Group law [Φ]·[Ψ] = [ΦΨ] on H¹ for an abelian target."""
    G = H.action.target
    if not G.is_abelian:
        raise TargetNotAbelian("H¹ carries a group law only for abelian coefficients")
    k = len(H.classes)
    table = [[0] * k for _ in range(k)]
    for a, ca in enumerate(H.classes):
        for b, cb in enumerate(H.classes):
            landed = {H.classify(tuple(G.mul(x, y) for x, y in zip(H.cocycles[i], H.cocycles[j])))
                      for i in ca.members for j in cb.members}
            if len(landed) != 1:
                raise CheckFailure(f"product of classes {a} and {b} is not well defined")
            table[a][b] = landed.pop()
    grp = build_group(table, f"H1({H.action.acting.name},{G.name})")
    if grp.table != tuple(tuple(r) for r in table):
        raise CheckFailure("basepoint class is not the identity of the H¹ group law")
    return grp


# ---------------------------------------------------------- pointed maps

@dataclass(frozen=True)
class PointedMap:
    """A basepoint-preserving map between finite pointed sets given on positions."""
    mapping: tuple[int, ...]
    target_size: int
    source_base: int = 0
    target_base: int = 0

    def __post_init__(self):
        if self.mapping and self.mapping[self.source_base] != self.target_base:
            raise CheckFailure("pointed map does not preserve the basepoint")

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.mapping)))

    def preimage(self, y: int) -> tuple[int, ...]:
        return tuple(x for x, v in enumerate(self.mapping) if v == y)

    def kernel(self) -> tuple[int, ...]:
        return self.preimage(self.target_base)

    @property
    def is_injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.target_size

    @property
    def is_bijection(self) -> bool:
        return self.is_injective and self.is_surjective


def map_cohomology(func, H_src: CohomologySet, H_tgt: CohomologySet,
                   target_base: Optional[int] = None) -> PointedMap:
    """Induced map on classes of a map of cocycle value arrays; checks well-definedness.

    ``target_base`` re-points the target, for maps that send the basepoint
    to some other class.
    """
    mapping = []
    for c, cls in enumerate(H_src.classes):
        landed = {H_tgt.classify(func(H_src.cocycles[i])) for i in cls.members}
        if len(landed) != 1:
            raise CheckFailure(f"class {c} does not land in a single class")
        mapping.append(landed.pop())
    base = H_tgt.basepoint if target_base is None else target_base
    return PointedMap(tuple(mapping), len(H_tgt.classes), H_src.basepoint, base)


def induced_map_h1(f: Homomorphism, src: GroupAction, tgt: GroupAction,
                   H_src: Optional[CohomologySet] = None,
                   H_tgt: Optional[CohomologySet] = None) -> PointedMap:
    """[Φ] ↦ [f∘Φ] for an equivariant homomorphism f."""
    if f.source != src.target or f.target != tgt.target:
        raise ActionMismatch("homomorphism does not run between the two targets")
    w = equivariance_witness(f, src, tgt)
    if w is not None:
        raise NotEquivariant(f"f(s·x) != s·f(x) at (s, x) = {w}")
    H_src = H_src or h1(src)
    H_tgt = H_tgt or h1(tgt)
    img = f.image
    return map_cohomology(lambda v: tuple(img[x] for x in v), H_src, H_tgt)


# ------------------------------------------------------- connecting map

@dataclass(frozen=True)
class ConnectingMap:
    fixed_cosets: tuple[int, ...]   # H⁰ of the coset action
    h1_sub: CohomologySet           # H¹ with coefficients in N
    map: PointedMap                 # position in fixed_cosets -> class of h1_sub

    def __call__(self, coset: int) -> int:
        return self.map(self.fixed_cosets.index(coset))


def connecting_map(action: GroupAction, N: Subgroup, proj=None,
                   h1_sub: Optional[CohomologySet] = None) -> ConnectingMap:
    proj = proj or restrict_and_project(action, N)  # raises NotInvariant
    H_N = h1_sub or h1(proj.restricted)
    fixed = h0(proj.coset_action)
    G = action.target
    idx = N.index_of
    mapping = []
    for a in fixed:
        landed = set()
        for b in proj.cosets.cosets[a]:
            vals = coboundary(action, b)
            if any(v not in N for v in vals):
                raise CheckFailure(f"b⁻¹σ(b) leaves N for b = {b} in fixed coset {a}")
            landed.add(H_N.classify(tuple(idx[v] for v in vals)))
        if len(landed) != 1:
            raise CheckFailure(f"class of the connecting cocycle depends on the lift of coset {a}")
        mapping.append(landed.pop())
    pm = PointedMap(tuple(mapping), len(H_N.classes), fixed.index(proj.cosets.basepoint),
                    H_N.basepoint)
    return ConnectingMap(fixed, H_N, pm)


# -------------------------------------------------------------- exactness

EXACTNESS_NOTE = ("exactness of pointed sets: at each node the preimage of the basepoint "
                  "equals the image of the incoming map; this is weaker than exactness of groups")


@dataclass
class NodeCheck:
    node: str
    passed: bool
    witness: Optional[list] = None

    def to_json(self) -> dict:
        return {"node": self.node, "pass": self.passed, "witness": self.witness}


@dataclass
class ExactnessReport:
    nodes: list[NodeCheck]
    normal: bool
    sizes: dict = field(default_factory=dict)
    h1_target: Optional[CohomologySet] = None
    note: str = EXACTNESS_NOTE

    @property
    def passed(self) -> bool:
        return all(n.passed for n in self.nodes)

    def to_json(self) -> dict:
        out = self.h1_target.to_json() if self.h1_target else {}
        out["exactness"] = [n.to_json() for n in self.nodes]
        out["normal"] = self.normal
        out["sizes"] = self.sizes
        out["note"] = self.note
        return out


def _node(name: str, kernel: Sequence[int], image: Sequence[int]) -> NodeCheck:
    k, i = set(kernel), set(image)
    if k == i:
        return NodeCheck(name, True)
    return NodeCheck(name, False, sorted(k ^ i))


def verify_exact_sequence(action: GroupAction, N: Subgroup) -> ExactnessReport:
    """Check the sequence of H⁰ and H¹ terms attached to 1 → N → G → G/N at every node."""
    proj = restrict_and_project(action, N)
    H0N = [N.members[m] for m in h0(proj.restricted).members]  # ambient labels
    H0G = list(h0(action).members)
    H0Q = list(h0(proj.coset_action))
    HN = h1(proj.restricted)
    HG = h1(action)
    coset_of = proj.cosets.coset_of

    iota0 = H0N                                   # inclusion, element-wise
    pi0 = [coset_of[g] for g in H0G]
    delta = connecting_map(action, N, proj, HN)
    iota1 = induced_map_h1(N.inclusion, proj.restricted, action, HN, HG)

    nodes = [
        _node("H0(N)", [m for m in H0N if m == 0], [0]),
        _node("H0(G)", [g for g, c in zip(H0G, pi0) if c == proj.cosets.basepoint], iota0),
        _node("H0(G/N)", [delta.fixed_cosets[i] for i in delta.map.kernel()], pi0),
        _node("H1(N)", iota1.kernel(), delta.map.image()),
    ]
    # injectivity of ι⁰ is part of exactness at the first node
    if len(set(iota0)) != len(iota0):
        nodes[0] = NodeCheck("H0(N)", False, sorted(iota0))
    sizes = {"H0(N)": len(H0N), "H0(G)": len(H0G), "H0(G/N)": len(H0Q),
             "H1(N)": len(HN), "H1(G)": len(HG)}
    if proj.quotient_action is not None:
        HQ = h1(proj.quotient_action)
        pi1 = induced_map_h1(proj.cosets.projection, action, proj.quotient_action, HG, HQ)
        nodes.append(_node("H1(G)", pi1.kernel(), iota1.image()))
        sizes["H1(G/N)"] = len(HQ)
    return ExactnessReport(nodes, N.normal, sizes, HG)
