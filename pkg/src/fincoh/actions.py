"""Actions of a finite group on groups and on pointed sets."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Optional, Sequence, Union

from .errors import (
    InconsistentGeneratorExtension,
    MismatchedActingGroup,
    NotAHomomorphism,
    NotAnAutomorphism,
    NotInvariant,
    Underdetermined,
)
from .groups import (
    AutomorphismGroup,
    CosetSpace,
    FiniteGroup,
    Homomorphism,
    Subgroup,
    compose,
    compute_aut,
    coset_space,
    extend_along_generators,
    generated,
    invert,
    make_subgroup,
)

Perm = tuple[int, ...]


@dataclass(frozen=True)
class GroupAction:
    """A homomorphism from ``acting`` into Aut(``target``); images[s][g] is s(g)."""
    acting: FiniteGroup
    target: FiniteGroup
    images: tuple[Perm, ...]

    def act(self, s: int, g: int) -> int:
        return self.images[s][g]

    @property
    def size(self) -> int:
        return self.target.order

    @property
    def basepoint(self) -> int:
        return 0

    @cached_property
    def is_trivial(self) -> bool:
        ident = tuple(range(self.target.order))
        return all(p == ident for p in self.images)

    def to_json(self) -> dict:
        return {"acting": self.acting.name or self.acting.to_json(),
                "target": self.target.name or self.target.to_json(),
                "images": {str(s): list(p) for s, p in enumerate(self.images)}}


@dataclass(frozen=True)
class PointedSetAction:
    acting: FiniteGroup
    size: int
    basepoint: int
    images: tuple[Perm, ...]

    def act(self, s: int, x: int) -> int:
        return self.images[s][x]


AnyAction = Union[GroupAction, PointedSetAction]


def _is_automorphism(G: FiniteGroup, p: Sequence[int]) -> bool:
    n = G.order
    if len(p) != n or sorted(p) != list(range(n)):
        return False
    t = G.table
    return all(p[t[x][y]] == t[p[x]][p[y]] for x in range(n) for y in range(n))


def _extend(acting: FiniteGroup, n: int, images) -> list[Perm]:
    if not isinstance(images, Mapping):
        images = dict(enumerate(images))
    given = {int(s): tuple(int(v) for v in p) for s, p in images.items()}
    for s in given:
        if not 0 <= s < acting.order:
            raise Underdetermined(f"acting element {s} out of range")
    if len(given) == acting.order:
        return [given[s] for s in range(acting.order)]
    keys = sorted(s for s in given if s != 0)
    if len(generated(acting, keys)) != acting.order:
        raise Underdetermined(f"given elements {keys} do not generate the acting group")
    ident = tuple(range(n))
    ext = extend_along_generators(acting, keys, [given[s] for s in keys],
                                  lambda x, vx, g, vg: compose(vx, vg), ident)
    if ext is None:
        raise InconsistentGeneratorExtension(
            f"images on {keys} do not extend to a homomorphism of the acting group")
    for s, p in given.items():
        if ext[s] != p:
            raise InconsistentGeneratorExtension(f"given image of {s} disagrees with its extension")
    return ext


def build_action(acting: FiniteGroup, target: FiniteGroup,
                 images: Union[Sequence[Sequence[int]], Mapping[int, Sequence[int]]]) -> GroupAction:
    """Validate an action given on all of ``acting`` or on a generating subset."""
    raw = images if isinstance(images, Mapping) else dict(enumerate(images))
    for s, p in raw.items():
        if not _is_automorphism(target, list(p)):
            raise NotAnAutomorphism(f"image of acting element {s} is not an automorphism of the target")
    full = _extend(acting, target.order, raw)
    ident = tuple(range(target.order))
    if full[0] != ident:
        raise NotAHomomorphism("identity of the acting group does not act trivially")
    for s in acting.elements:
        for t in acting.elements:
            if full[acting.mul(s, t)] != compose(full[s], full[t]):
                raise NotAHomomorphism(f"images do not respect the product {s}*{t}")
    return GroupAction(acting, target, tuple(full))


def trivial_action(acting: FiniteGroup, target: FiniteGroup) -> GroupAction:
    ident = tuple(range(target.order))
    return GroupAction(acting, target, tuple(ident for _ in acting.elements))


def build_pointed_action(acting: FiniteGroup, size: int, basepoint: int,
                         images: Sequence[Sequence[int]]) -> PointedSetAction:
    full = _extend(acting, size, images)
    for s, p in enumerate(full):
        if sorted(p) != list(range(size)):
            raise NotAnAutomorphism(f"image of {s} is not a permutation")
        if p[basepoint] != basepoint:
            raise NotInvariant(f"acting element {s} moves the basepoint")
    for s in acting.elements:
        for t in acting.elements:
            if full[acting.mul(s, t)] != compose(full[s], full[t]):
                raise NotAHomomorphism(f"images do not respect the product {s}*{t}")
    return PointedSetAction(acting, size, basepoint, tuple(full))


# ----------------------------------------------------------------- Aut(G)

@dataclass(frozen=True)
class AutAction:
    """The induced action s(φ) = s∘φ∘s⁻¹ of the acting group on Aut(target)."""
    base: GroupAction
    aut: AutomorphismGroup
    action: GroupAction  # acting group on aut.group

    def transport(self, s: int, phi: int) -> int:
        return self.action.images[s][phi]


def aut_action(action: GroupAction, aut: Optional[AutomorphismGroup] = None) -> AutAction:
    if aut is None:
        aut = compute_aut(action.target)
    idx = aut.index_of
    images = []
    for s in action.acting.elements:
        a = action.images[s]
        a_inv = invert(a)
        images.append(tuple(idx[compose(a, compose(phi, a_inv))] for phi in aut.elements))
    # build_action verifies each image is an automorphism of Aut(G), i.e. s(φ1·φ2) = s(φ1)·s(φ2)
    return AutAction(action, aut, build_action(action.acting, aut.group, images))


def aut_compatibility_witness(aa: AutAction) -> Optional[tuple[int, int, int]]:
    """First (s, φ1, φ2) with s(φ1·φ2) != s(φ1)·s(φ2), or None."""
    A = aa.aut.group
    for s in aa.base.acting.elements:
        for p in A.elements:
            for q in A.elements:
                if aa.transport(s, A.mul(p, q)) != A.mul(aa.transport(s, p), aa.transport(s, q)):
                    return (s, p, q)
    return None


# ------------------------------------------------------------ fixed points

def h0(action: AnyAction) -> Union[Subgroup, tuple[int, ...]]:
    """Fixed points: a Subgroup for group actions, a sorted tuple for pointed sets."""
    fixed = tuple(x for x in range(action.size)
                  if all(p[x] == x for p in action.images))
    if isinstance(action, GroupAction):
        return make_subgroup(action.target, fixed)
    return fixed


# ------------------------------------------------------- restriction etc.

@dataclass(frozen=True)
class Projection:
    subgroup: Subgroup
    restricted: GroupAction            # on subgroup.group
    cosets: CosetSpace
    coset_action: PointedSetAction     # on cosets, basepoint the coset N
    quotient_action: Optional[GroupAction]  # on cosets.quotient when N is normal

    @property
    def inclusion(self) -> Homomorphism:
        return self.subgroup.inclusion

    @property
    def projection(self) -> tuple[int, ...]:
        return self.cosets.coset_of


def invariance_witness(action: GroupAction, N: Subgroup) -> Optional[tuple[int, int]]:
    for s, p in enumerate(action.images):
        for n in N.members:
            if p[n] not in N:
                return (s, n)
    return None


def restrict_and_project(action: GroupAction, N: Subgroup) -> Projection:
    w = invariance_witness(action, N)
    if w is not None:
        raise NotInvariant(f"acting element {w[0]} sends member {w[1]} outside the subgroup")
    idx = N.index_of
    restricted = GroupAction(action.acting, N.group,
                             tuple(tuple(idx[p[m]] for m in N.members) for p in action.images))
    cs = coset_space(action.target, N)
    reps = [c[0] for c in cs.cosets]
    coset_perms = tuple(tuple(cs.coset_of[p[r]] for r in reps) for p in action.images)
    coset_action = PointedSetAction(action.acting, len(cs), cs.basepoint, coset_perms)
    quotient_action = None
    if cs.quotient is not None:
        quotient_action = GroupAction(action.acting, cs.quotient, coset_perms)
    return Projection(N, restricted, cs, coset_action, quotient_action)


def equivariance_witness(f, src: AnyAction, tgt: AnyAction) -> Optional[tuple[int, int]]:
    """First (s, x) with f(s·x) != s·f(x), or None when f is equivariant."""
    if src.acting != tgt.acting:
        raise MismatchedActingGroup("the two actions are by different acting groups")
    image = f.image if isinstance(f, Homomorphism) else tuple(f)
    if len(image) != src.size:
        raise MismatchedActingGroup("map domain does not match the source carrier")
    for s in src.acting.elements:
        ps, pt = src.images[s], tgt.images[s]
        for x in range(src.size):
            if image[ps[x]] != pt[image[x]]:
                return (s, x)
    return None


def is_equivariant(f, src: AnyAction, tgt: AnyAction) -> bool:
    return equivariance_witness(f, src, tgt) is None
