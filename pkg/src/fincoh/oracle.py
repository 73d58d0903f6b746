"""Brute-force cross-checks and the seeded instance stream.

The three oracles here touch only ``groups`` so that agreement with the
cohomology engine means something.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from . import catalog
from .errors import SizeLimitExceeded, TargetNotAbelian
from .groups import AutomorphismGroup, Subgroup, all_homomorphisms, all_subgroups, compute_aut
from .limits import max_brute


def _check_budget(total: int, limit: Optional[int]) -> None:
    cap = max_brute() if limit is None else limit
    if total > cap:
        raise SizeLimitExceeded(f"{total} candidate maps exceed the brute-force cap {cap}")


def brute_z1(action, limit: Optional[int] = None) -> list[tuple[int, ...]]:
    """Every map acting -> target passing Φ(st) = Φ(s)·s(Φ(t)), sorted."""
    A, G = action.acting, action.target
    _check_budget(G.order ** A.order, limit)
    imgs = action.images
    pairs = [(s, t, A.mul(s, t)) for s in A.elements for t in A.elements]
    out = []
    for vals in itertools.product(G.elements, repeat=A.order):
        if all(vals[st] == G.mul(vals[s], imgs[s][vals[t]]) for s, t, st in pairs):
            out.append(vals)
    return out


def abelian_h1_oracle(action, limit: Optional[int] = None) -> tuple[int, dict]:
    """Count Z¹/B¹ directly; returns (class count, cocycle -> class index)."""
    A, G = action.acting, action.target
    if not G.is_abelian:
        raise TargetNotAbelian("the quotient-group oracle needs abelian coefficients")
    z1 = brute_z1(action, limit)
    b1 = {tuple(G.mul(G.inv(b), action.images[s][b]) for s in A.elements) for b in G.elements}
    class_map: dict = {}
    count = 0
    for z in z1:  # z1 is sorted, so class indices follow minimal members
        if z in class_map:
            continue
        for c in b1:
            class_map[tuple(G.mul(x, y) for x, y in zip(z, c))] = count
        count += 1
    return count, class_map


def form_census_oracle(action, aut: Optional[AutomorphismGroup] = None) -> list[list[tuple[int, ...]]]:
    """Homomorphisms acting -> Aut(target), grouped by pointwise Aut-conjugacy.

    Each homomorphism is an array of automorphism indices.
    """
    aut = aut or compute_aut(action.target)
    Ag = aut.group
    homs = all_homomorphisms(action.acting, Ag)
    seen: dict = {}
    classes: list[list] = []
    for beta in homs:
        if beta in seen:
            continue
        orbit = set()
        for psi in Ag.elements:
            pinv = Ag.inv(psi)
            orbit.add(tuple(Ag.prod(psi, x, pinv) for x in beta))
        for o in orbit:
            seen[o] = len(classes)
        classes.append(sorted(orbit))
    return classes


# --------------------------------------------------------------- instances

@dataclass(frozen=True)
class Instance:
    index: int
    acting_name: str
    target_name: str
    action: object  # GroupAction
    subgroups: tuple[Subgroup, ...]  # every acting-invariant subgroup

    @property
    def normal_subgroups(self) -> tuple[Subgroup, ...]:
        return tuple(N for N in self.subgroups if N.normal)

    @property
    def label(self) -> str:
        return f"#{self.index} {self.acting_name} on {self.target_name}"


@lru_cache(maxsize=None)
def _homs_into_aut(acting_name: str, target_name: str):
    G = catalog.get(target_name)
    aut = compute_aut(G)
    return aut, all_homomorphisms(catalog.get(acting_name), aut.group)


@lru_cache(maxsize=None)
def _subgroups(target_name: str):
    return tuple(all_subgroups(catalog.get(target_name)))


def instance_generator(seed: int = 0, max_acting: int = 4, max_target: int = 8,
                       count: int = 10) -> Iterator[Instance]:
    """Deterministic stream of (acting group, target, action, invariant subgroups)."""
    from .actions import GroupAction

    rng = random.Random(seed)
    actings = [n for n in catalog.CATALOG_NAMES if catalog.get(n).order <= max_acting]
    targets = [n for n in catalog.CATALOG_NAMES
               if 1 < catalog.get(n).order <= max_target]
    if not actings or not targets:
        return
    for i in range(count):
        an = rng.choice(actings)
        tn = rng.choice(targets)
        aut, homs = _homs_into_aut(an, tn)
        beta = rng.choice(homs)
        A, G = catalog.get(an), catalog.get(tn)
        action = GroupAction(A, G, tuple(aut.elements[k] for k in beta))
        subs = tuple(N for N in _subgroups(tn)
                     if all(p[n] in N for p in action.images for n in N.members))
        yield Instance(i, an, tn, action, subs)
