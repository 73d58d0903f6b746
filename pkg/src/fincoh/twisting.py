"""Twisting an action by conjugation with a cocycle, and what it says about fibres."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .actions import GroupAction, build_action, equivariance_witness, h0, restrict_and_project
from .cohomology import (
    Cocycle,
    CohomologySet,
    PointedMap,
    cocycle_values,
    cocycle_witness,
    h1,
    induced_map_h1,
    map_cohomology,
    twist_values,
)
from .errors import ActionMismatch, CheckFailure, NotACocycle, NotAWitness, NotNormal
from .groups import Homomorphism, Subgroup


@dataclass(frozen=True)
class TwistedAction:
    base: GroupAction
    cocycle: Cocycle
    action: GroupAction  # σ*g = Φ(σ)·σ(g)·Φ(σ)⁻¹

    @property
    def images(self):
        return self.action.images


def twist_action(action: GroupAction, phi: Cocycle) -> TwistedAction:
    if phi.action != action:
        raise ActionMismatch("cocycle belongs to a different action")
    G = action.target
    images = [tuple(G.conj(phi.values[s], p[g]) for g in G.elements)
              for s, p in enumerate(action.images)]
    return TwistedAction(action, phi, build_action(action.acting, G, images))


# --------------------------------------------------------------- f_Φ, F_Φ

@dataclass(frozen=True)
class TwistBijection:
    """f_Φ(Ψ) = Ψ·Φ from twisted cocycles to cocycles, with inverse Λ ↦ Λ·Φ⁻¹."""
    cocycle: Cocycle
    twisted: TwistedAction
    forward_map: dict = field(compare=False)   # twisted cocycle -> cocycle

    def forward(self, psi) -> tuple[int, ...]:
        G = self.cocycle.action.target
        return tuple(G.mul(x, y) for x, y in zip(psi, self.cocycle.values))

    def backward(self, lam) -> tuple[int, ...]:
        G = self.cocycle.action.target
        return tuple(G.mul(x, G.inv(y)) for x, y in zip(lam, self.cocycle.values))


def twist_bijection(phi: Cocycle) -> TwistBijection:
    """Build f_Φ and check it is a bijection of cocycle sets in both directions."""
    action = phi.action
    tw = twist_action(action, phi)
    tb = TwistBijection(phi, tw, {})
    z_tw = cocycle_values(tw.action)
    z = cocycle_values(action)
    z_set = set(z)
    for psi in z_tw:
        out = tb.forward(psi)
        if out not in z_set:
            raise NotACocycle(f"f_Φ({psi}) fails the cocycle identity at {cocycle_witness(action, out)}")
        if tb.backward(out) != psi:
            raise CheckFailure(f"f_Φ⁻¹∘f_Φ moves {psi}")
        tb.forward_map[psi] = out
    tw_set = set(z_tw)
    for lam in z:
        back = tb.backward(lam)
        if back not in tw_set:
            raise NotACocycle(f"f_Φ⁻¹({lam}) fails the twisted identity at "
                              f"{cocycle_witness(tw.action, back)}")
        if tb.forward(back) != lam:
            raise CheckFailure(f"f_Φ∘f_Φ⁻¹ moves {lam}")
    if len(set(tb.forward_map.values())) != len(z):
        raise CheckFailure("f_Φ is not a bijection")
    return tb


def induced_f_big(phi: Cocycle, H: Optional[CohomologySet] = None,
                  H_tw: Optional[CohomologySet] = None,
                  twisted: Optional[TwistedAction] = None) -> PointedMap:
    """F_Φ on classes; the twisted basepoint goes to [Φ], so the target is pointed at [Φ]."""
    action = phi.action
    twisted = twisted or twist_action(action, phi)
    H = H or h1(action)
    H_tw = H_tw or h1(twisted.action)
    G = action.target
    fwd = lambda psi: tuple(G.mul(x, y) for x, y in zip(psi, phi.values))
    mu = H.classify(phi.values)
    F = map_cohomology(fwd, H_tw, H, target_base=mu)
    if not F.is_bijection:
        raise CheckFailure("F_Φ is not a bijection of cohomology classes")
    return F


# ----------------------------------------------------------------- fibres

@dataclass
class FiberEntry:
    mu: int
    rep: tuple[int, ...]
    fiber: tuple[int, ...]           # classes of H¹ in 𝔓(μ)
    twisted_kernel: tuple[int, ...]  # classes of the twisted H¹ in ker(π¹_Φ)
    bijection: dict                  # twisted kernel class -> fibre class
    bijection_ok: bool

    def to_json(self) -> dict:
        return {"mu": list(self.rep), "fiber": list(self.fiber),
                "twisted_kernel_size": len(self.twisted_kernel),
                "bijection_ok": self.bijection_ok}


@dataclass
class FiberReport:
    projection: PointedMap   # π¹ : H¹(G) -> H¹(G/N)
    h1: CohomologySet
    h1_quotient: CohomologySet
    entries: list[FiberEntry]

    @property
    def partition_ok(self) -> bool:
        fibers = {e.fiber for e in self.entries}
        covered = sorted(c for f in fibers for c in f)
        return covered == list(range(len(self.h1)))

    @property
    def ok(self) -> bool:
        return self.partition_ok and all(e.bijection_ok for e in self.entries)

    def to_json(self) -> dict:
        return {"classes": [e.to_json() for e in self.entries],
                "partition_ok": self.partition_ok}


def twisted_quotient(proj, phi: Cocycle) -> TwistedAction:
    """Twist of the induced action on G/N by π∘Φ."""
    qa = proj.quotient_action
    pi = proj.cosets.coset_of
    return twist_action(qa, Cocycle(qa, tuple(pi[v] for v in phi.values)))


def fiber_analysis(action: GroupAction, N: Subgroup) -> FiberReport:
    if not N.normal:
        raise NotNormal("fibre analysis needs a normal subgroup")
    proj = restrict_and_project(action, N)  # raises NotInvariant
    qa = proj.quotient_action
    pi_hom = proj.cosets.projection
    HG = h1(action)
    HQ = h1(qa)
    pi1 = induced_map_h1(pi_hom, action, qa, HG, HQ)
    entries = []
    for mu, cls in enumerate(HG.classes):
        phi = Cocycle(action, cls.rep)
        tw = twist_action(action, phi)
        twq = twisted_quotient(proj, phi)
        w = equivariance_witness(pi_hom, tw.action, twq.action)
        if w is not None:
            raise CheckFailure(f"projection does not intertwine the twisted actions at {w}")
        HGt = h1(tw.action)
        HQt = h1(twq.action)
        pi1_tw = induced_map_h1(pi_hom, tw.action, twq.action, HGt, HQt)
        F = induced_f_big(phi, HG, HGt, tw)
        kernel = pi1_tw.kernel()
        fiber = pi1.preimage(pi1(mu))
        bij = {k: F(k) for k in kernel}
        ok = (sorted(bij.values()) == list(fiber) and len(set(bij.values())) == len(bij)
              and bij.get(HGt.basepoint) == mu)
        entries.append(FiberEntry(mu, cls.rep, fiber, kernel, bij, ok))
    return FiberReport(pi1, HG, HQ, entries)


# -------------------------------------------------------------- transport

@dataclass
class Transport:
    """Conjugation by b carries the Φ-twist to the Ψ-twist."""
    conj: Homomorphism
    source: TwistedAction
    target: TwistedAction
    z1_map: dict            # cocycle of source twist -> cocycle of target twist
    h0_map: dict            # fixed point -> fixed point
    h1_map: PointedMap
    h1_source: CohomologySet
    h1_target: CohomologySet


def transport_twist(phi: Cocycle, psi: Cocycle, b: int) -> Transport:
    """Requires Φ(σ) = b⁻¹·Ψ(σ)·σ(b)."""
    if phi.action != psi.action:
        raise ActionMismatch("cocycles belong to different actions")
    action = phi.action
    G = action.target
    if twist_values(action, psi.values, b) != phi.values:
        raise NotAWitness(f"{b} does not witness Φ = b⁻¹·Ψ·σ(b)")
    tp, tq = twist_action(action, phi), twist_action(action, psi)
    cb = Homomorphism(G, G, tuple(G.conj(b, g) for g in G.elements))
    w = equivariance_witness(cb, tp.action, tq.action)
    if w is not None:
        raise CheckFailure(f"C_b does not intertwine the twisted actions at (σ, g) = {w}")
    zp, zq = cocycle_values(tp.action), cocycle_values(tq.action)
    zq_set = set(zq)
    z1_map = {}
    for lam in zp:
        out = tuple(cb.image[x] for x in lam)
        if out not in zq_set:
            raise CheckFailure(f"C_b∘Λ is not a Ψ-twisted cocycle for Λ = {lam}")
        z1_map[lam] = out
    if len(set(z1_map.values())) != len(zq):
        raise CheckFailure("C_b does not biject the twisted cocycle sets")
    fp, fq = h0(tp.action).members, h0(tq.action).members
    h0_map = {g: cb.image[g] for g in fp}
    if sorted(h0_map.values()) != list(fq):
        raise CheckFailure("C_b does not biject the twisted fixed-point subgroups")
    Hp, Hq = h1(tp.action), h1(tq.action)
    h1_map = induced_map_h1(cb, tp.action, tq.action, Hp, Hq)
    if not h1_map.is_bijection:
        raise CheckFailure("C_b does not biject the twisted cohomology sets")
    return Transport(cb, tp, tq, z1_map, h0_map, h1_map, Hp, Hq)
