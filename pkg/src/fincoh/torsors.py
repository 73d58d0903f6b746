"""Right G-torsors with a compatible action of the acting group."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .actions import GroupAction
from .cohomology import Cocycle, CohomologySet, cohomologous_witness, h1, make_cocycle
from .errors import CheckFailure, NotRegular, SizeLimitExceeded
from .limits import max_brute


@dataclass(frozen=True)
class Torsor:
    action: GroupAction                 # the action on G the torsor is compatible with
    size: int
    right: tuple[tuple[int, ...], ...]  # right[x][g] = x·g
    gact: tuple[tuple[int, ...], ...]   # gact[s][x] = s(x)

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.size) if all(p[x] == x for p in self.gact))


def torsor_violation(X: Torsor) -> Optional[str]:
    """Describe the first failed torsor axiom, or None."""
    G, A = X.action.target, X.action.acting
    n = X.size
    if n != G.order:
        return f"carrier has {n} points, group has {G.order} elements"
    for x in range(n):
        if X.right[x][0] != x:
            return f"x·1 != x at x = {x}"
        if sorted(X.right[x]) != list(range(n)):
            return f"g ↦ {x}·g is not a bijection (not free and transitive)"
        for g in G.elements:
            for h in G.elements:
                if X.right[X.right[x][g]][h] != X.right[x][G.mul(g, h)]:
                    return f"(x·g)·h != x·(gh) at ({x},{g},{h})"
    ident = tuple(range(n))
    if X.gact[0] != ident:
        return "identity of the acting group moves a point"
    for s in A.elements:
        if sorted(X.gact[s]) != list(range(n)):
            return f"acting element {s} is not a permutation"
        for t in A.elements:
            st = A.mul(s, t)
            if any(X.gact[st][x] != X.gact[s][X.gact[t][x]] for x in range(n)):
                return f"acting elements {s},{t} do not compose"
        img = X.action.images[s]
        for x in range(n):
            for g in G.elements:
                if X.gact[s][X.right[x][g]] != X.right[X.gact[s][x]][img[g]]:
                    return f"s(x·g) != s(x)·s(g) at (s, x, g) = ({s},{x},{g})"
    return None


def validate_torsor(X: Torsor) -> Torsor:
    msg = torsor_violation(X)
    if msg is not None:
        raise NotRegular(msg)
    return X


def torsor_from_cocycle(phi: Cocycle) -> Torsor:
    """G with right multiplication and s·x = Φ(s)·s(x)."""
    action = phi.action
    G = action.target
    right = G.table
    gact = tuple(tuple(G.mul(phi.values[s], p[x]) for x in G.elements)
                 for s, p in enumerate(action.images))
    return validate_torsor(Torsor(action, G.order, right, gact))


def cocycle_from_torsor(X: Torsor, x0: int = 0) -> Cocycle:
    """Φ(s) is the unique g with s(x0) = x0·g."""
    validate_torsor(X)
    phi = _read_off(X, x0)
    for y in range(X.size):
        if y != x0 and cohomologous_witness(phi, _read_off(X, y)) is None:
            raise CheckFailure(f"basepoints {x0} and {y} give non-cohomologous cocycles")
    return phi


def _read_off(X: Torsor, x0: int) -> Cocycle:
    where = {y: g for g, y in enumerate(X.right[x0])}
    return make_cocycle(X.action, [where[X.gact[s][x0]] for s in X.action.acting.elements])


def torsor_isomorphism(X: Torsor, Y: Torsor) -> Optional[tuple[int, ...]]:
    """An equivariant right-G bijection X -> Y, or None.

    The image of point 0 determines everything else: F(0·g) = F(0)·g.
    """
    G = X.action.target
    where = {X.right[0][g]: g for g in G.elements}
    for y in range(Y.size):
        F = [0] * X.size
        for x in range(X.size):
            F[x] = Y.right[y][where[x]]
        if all(F[X.gact[s][x]] == Y.gact[s][F[x]]
               for s in range(len(X.gact)) for x in range(X.size)):
            return tuple(F)
    return None


@dataclass
class TorsorCensus:
    torsors: list[Torsor]         # all structures found
    classes: list[list[int]]      # indices into torsors, by isomorphism
    h1: CohomologySet
    class_map: dict               # census class -> H¹ class
    match: bool

    def to_json(self) -> dict:
        return {"torsor_classes": len(self.classes), "h1_size": len(self.h1),
                "match": self.match}


def classify_torsors(action: GroupAction, bound: Optional[int] = None) -> TorsorCensus:
    """Enumerate torsor structures on |G| points up to isomorphism and match them with H¹.

    Every free transitive right action is isomorphic to right multiplication on
    G, so the right action is pinned; each s then acts by x ↦ c(s)·s(x) for
    some c(s) in G (forced by compatibility), leaving |G|^|acting| candidates,
    each tested against the action axioms.
    """
    A, G = action.acting, action.target
    total = G.order ** A.order
    cap = max_brute() if bound is None else bound
    if total > cap:
        raise SizeLimitExceeded(f"{total} candidate torsor structures exceed the cap {cap}")
    torsors = []
    for c in itertools.product(G.elements, repeat=A.order):
        gact = tuple(tuple(G.mul(c[s], p[x]) for x in G.elements)
                     for s, p in enumerate(action.images))
        X = Torsor(action, G.order, G.table, gact)
        if torsor_violation(X) is None:
            torsors.append(X)
    classes: list[list[int]] = []
    for i, X in enumerate(torsors):
        for cls in classes:
            if torsor_isomorphism(torsors[cls[0]], X) is not None:
                cls.append(i)
                break
        else:
            classes.append([i])
    H = h1(action)
    class_map = {}
    for k, cls in enumerate(classes):
        landed = {H.classify(cocycle_from_torsor(torsors[i]).values) for i in cls}
        if len(landed) != 1:
            raise CheckFailure(f"torsor class {k} meets several cohomology classes")
        class_map[k] = landed.pop()
    match = sorted(class_map.values()) == list(range(len(H)))
    return TorsorCensus(torsors, classes, H, class_map, match)
