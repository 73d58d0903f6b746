"""Forms of a group with action, Aut-valued cocycles, and the N_μ machinery.

A form of G is a group H with its own action of the acting group which is
isomorphic to G, though not necessarily equivariantly. Transporting H's
action to G through a witness isomorphism gives a second action ``beta``
on G; forms are equivalent iff their ``beta`` actions are conjugate in
Aut(G).

The quotient construction realises the acting group as Y with a = 0,
acting on itself by left multiplication. For an Aut-valued cocycle Λ this
gives h(b, c, -) = b(Λ(b⁻¹c)), and the carrier is (Y × G)/R.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .actions import AutAction, GroupAction, aut_action, build_action, restrict_and_project
from .cohomology import (
    Cocycle,
    CohomologySet,
    PointedMap,
    cocycle_values,
    cocycle_witness,
    h1,
    induced_map_h1,
)
from .errors import (
    BaseMismatch,
    CheckFailure,
    IntertwineFailure,
    LemmaViolation,
    NotACocycle,
    NotAnIsomorphism,
    NotNormal,
)
from .groups import (
    AutomorphismGroup,
    FiniteGroup,
    Homomorphism,
    Subgroup,
    build_group,
    compose,
    compute_aut,
    invert,
)
from .oracle import form_census_oracle
from .twisting import induced_f_big, twist_action

SCOPE_NOTE = ("finite instantiation only: the countability results for differential fields "
              "are not reproducible here; they are represented solely by the exact "
              "fibre-count decomposition of H¹(G) over H¹(G/N)")


@dataclass(frozen=True)
class AutCocycle:
    aa: AutAction
    values: tuple[int, ...]  # automorphism indices

    def map(self, s: int) -> tuple[int, ...]:
        return self.aa.aut.elements[self.values[s]]

    @property
    def cocycle(self) -> Cocycle:
        return Cocycle(self.aa.action, self.values)


def make_autcocycle(aa: AutAction, values) -> AutCocycle:
    values = tuple(int(v) for v in values)
    w = cocycle_witness(aa.action, values)
    if w is not None:
        raise NotACocycle(f"Aut-valued cocycle identity fails at (s1, s2) = {w}")
    return AutCocycle(aa, values)


def beta_images(lam: AutCocycle) -> tuple[tuple[int, ...], ...]:
    """The structure action β(σ) = Λ(σ)∘σ on G."""
    base = lam.aa.base
    return tuple(compose(lam.map(s), base.images[s]) for s in base.acting.elements)


@dataclass(frozen=True)
class QuotientConstruction:
    h: tuple[tuple[int, ...], ...]   # h[b][c] = index of h(b, c, -) in Aut(G)
    class_of: tuple[int, ...]        # Z index b·|G| + d -> carrier element
    f: tuple[int, ...]               # carrier element -> G, f(b, d) = h(a, b, d)


@dataclass(frozen=True)
class Form:
    base: GroupAction
    beta: GroupAction                       # on base.target
    carrier: Optional[GroupAction] = None   # the group H with its own action
    witness: Optional[tuple[int, ...]] = None  # isomorphism G -> H
    construction: Optional[QuotientConstruction] = field(default=None, compare=False)

    def to_json(self) -> dict:
        out = {"beta": {str(s): list(p) for s, p in enumerate(self.beta.images)}}
        if self.carrier is not None:
            out["carrier_table"] = [list(r) for r in self.carrier.target.table]
        return out


def _check_iso(G: FiniteGroup, H: FiniteGroup, w) -> tuple[int, ...]:
    w = tuple(w)
    if len(w) != G.order or G.order != H.order or sorted(w) != list(range(H.order)):
        raise NotAnIsomorphism("witness is not a bijection between the groups")
    for x in G.elements:
        for y in G.elements:
            if w[G.mul(x, y)] != H.mul(w[x], w[y]):
                raise NotAnIsomorphism(f"witness fails to respect {x}*{y}")
    return w


def make_form(base: GroupAction, carrier: GroupAction, witness) -> Form:
    """A form from an explicit carrier and isomorphism G -> carrier."""
    w = _check_iso(base.target, carrier.target, witness)
    winv = invert(w)
    beta = [compose(winv, compose(carrier.images[s], w)) for s in base.acting.elements]
    return Form(base, build_action(base.acting, base.target, beta), carrier, w)


def form_cocycle(form: Form, aa: Optional[AutAction] = None) -> AutCocycle:
    """Φ(σ) = f⁻¹∘σ(f), where σ(f) = ρ(σ)∘f∘σ⁻¹ moves the graph of f."""
    if form.carrier is None or form.witness is None:
        raise NotAnIsomorphism("form has no explicit carrier and witness")
    aa = aa or aut_action(form.base)
    f = _check_iso(form.base.target, form.carrier.target, form.witness)
    finv = invert(f)
    vals = []
    for s in form.base.acting.elements:
        sf = compose(form.carrier.images[s], compose(f, invert(form.base.images[s])))
        vals.append(aa.aut.index_of[compose(finv, sf)])
    return make_autcocycle(aa, vals)


def form_from_autcocycle(lam: AutCocycle) -> Form:
    """Build the carrier (Y × G)/R with product (b,d)*(c,e) = (b, d·h(b,c,e))."""
    aa = lam.aa
    base = aa.base
    A, G = base.acting, base.target
    aut = aa.aut
    n, k = G.order, A.order
    bad = cocycle_witness(aa.action, lam.values)
    if bad is not None:
        raise LemmaViolation(f"input is not an Aut-valued cocycle (fails at {bad})")

    H = [[aa.transport(b, lam.values[A.mul(A.inv(b), c)]) for c in A.elements] for b in A.elements]
    E = aut.elements

    for s in A.elements:
        if H[0][s] != lam.values[s]:
            raise LemmaViolation(f"h(a, {s}(a), -) differs from Λ({s})")
    ident = tuple(range(n))
    for b in A.elements:
        if E[H[b][b]] != ident:
            raise LemmaViolation(f"h({b},{b},-) is not the identity")
        for c in A.elements:
            if compose(E[H[c][b]], E[H[b][c]]) != ident:
                raise LemmaViolation(f"h({c},{b},-) is not the inverse of h({b},{c},-)")
            for d in A.elements:
                if E[H[b][c]] != compose(E[H[b][d]], E[H[d][c]]):
                    raise LemmaViolation(f"h({b},{c},-) != h({b},{d},h({d},{c},-))")
    # h respects the acting group: h(σb, σc, σx) = σ h(b, c, x)
    for s in A.elements:
        a_s = base.images[s]
        for b in A.elements:
            for c in A.elements:
                lhs = compose(E[H[A.mul(s, b)][A.mul(s, c)]], a_s)
                if lhs != compose(a_s, E[H[b][c]]):
                    raise LemmaViolation(f"h is not invariant under {s} at ({b},{c})")

    def h(b, c, x):
        return E[H[b][c]][x]

    size = k * n
    pairs = [(b, d) for b in A.elements for d in G.elements]
    rel = [frozenset(j for j, (c, e) in enumerate(pairs) if h(b, c, e) == d) for (b, d) in pairs]
    for i, r in enumerate(rel):
        if i not in r:
            raise LemmaViolation(f"R is not reflexive at {pairs[i]}")
        for j in r:
            if rel[j] != r:
                raise LemmaViolation(f"R is not symmetric/transitive at {pairs[i]}, {pairs[j]}")
    class_of = [-1] * size
    classes: list[list[int]] = []
    for i in range(size):
        if class_of[i] < 0:
            for j in sorted(rel[i]):
                class_of[j] = len(classes)
            classes.append(sorted(rel[i]))
    if len(classes) != n:
        raise LemmaViolation(f"(Y x G)/R has {len(classes)} classes, expected {n}")

    def star(i, j):
        (b, d), (c, e) = pairs[i], pairs[j]
        return b * n + G.mul(d, h(b, c, e))

    table = [[0] * n for _ in range(n)]
    for p, cp in enumerate(classes):
        for q, cq in enumerate(classes):
            landed = {class_of[star(i, j)] for i in cp for j in cq}
            if len(landed) != 1:
                raise LemmaViolation(f"* is not R-invariant on classes ({p},{q})")
            table[p][q] = landed.pop()
    carrier_group = build_group(table, f"{G.name}~" if G.name else "")
    if carrier_group.table != tuple(tuple(r) for r in table):
        raise CheckFailure("class of (a, 1) is not the identity of the carrier")

    images = []
    for s in A.elements:
        a_s = base.images[s]
        perm = []
        for cp in classes:
            landed = {class_of[A.mul(s, pairs[i][0]) * n + a_s[pairs[i][1]]] for i in cp}
            if len(landed) != 1:
                raise LemmaViolation(f"acting element {s} does not preserve R")
            perm.append(landed.pop())
        images.append(tuple(perm))
    carrier = build_action(A, carrier_group, images)

    fbar = [-1] * n
    for p, cp in enumerate(classes):
        vals = {h(0, pairs[i][0], pairs[i][1]) for i in cp}
        if len(vals) != 1:
            raise CheckFailure(f"f is not constant on class {p}")
        fbar[p] = vals.pop()
    fbar = tuple(fbar)
    witness = invert(_check_iso(carrier_group, G, fbar))
    form = make_form(base, carrier, witness)
    form = Form(form.base, form.beta, carrier, witness,
                QuotientConstruction(tuple(tuple(r) for r in H), tuple(class_of), fbar))
    back = form_cocycle(form, aa)
    if back.values != lam.values:
        raise CheckFailure(f"round trip gave {back.values}, expected {lam.values}")
    return form


def equivariant_iso(F1: Form, F2: Form, aut: Optional[AutomorphismGroup] = None
                    ) -> Optional[tuple[int, ...]]:
    """An automorphism ψ of G with ψ∘β1(σ) = β2(σ)∘ψ for all σ, or None."""
    if F1.base != F2.base:
        raise BaseMismatch("forms are over different base actions")
    aut = aut or compute_aut(F1.base.target)
    b1, b2 = F1.beta.images, F2.beta.images
    for psi in aut.elements:
        if all(compose(psi, p) == compose(q, psi) for p, q in zip(b1, b2)):
            return psi
    return None


# ---------------------------------------------------------- classification

@dataclass
class FormClassification:
    aa: AutAction
    aut_h1: CohomologySet
    forms: list[Form]
    census: list[list[tuple[int, ...]]]
    matching: dict  # aut_h1 class -> census class
    matching_ok: bool

    def to_json(self) -> dict:
        return {"aut_h1_size": len(self.aut_h1),
                "census_size": len(self.census),
                "forms": [dict(f.to_json(), **{"class": list(c.rep)})
                          for f, c in zip(self.forms, self.aut_h1.classes)],
                "matching_ok": self.matching_ok}


def classify_forms(action: GroupAction) -> FormClassification:
    aut = compute_aut(action.target)
    aa = aut_action(action, aut)
    H = h1(aa.action)
    forms = [form_from_autcocycle(AutCocycle(aa, c.rep)) for c in H.classes]
    census = form_census_oracle(action, aut)
    where = {beta: j for j, cls in enumerate(census) for beta in cls}
    matching = {}
    for i, F in enumerate(forms):
        beta = tuple(aut.index_of[p] for p in F.beta.images)
        matching[i] = where.get(beta, -1)
    ok = (len(census) == len(H)
          and sorted(matching.values()) == list(range(len(census)))
          and forms[H.basepoint].beta.images == action.images)
    if ok:
        # injectivity: distinct classes give non-isomorphic forms
        for i in range(len(forms)):
            for j in range(i):
                if equivariant_iso(forms[i], forms[j], aut) is not None:
                    ok = False
        for i, F in enumerate(forms):
            if H.classify(form_cocycle(F, aa).values) != i:
                ok = False
    return FormClassification(aa, H, forms, census, matching, ok)


# ------------------------------------------------------------ N_μ, fibres, counts

def _normal_projection(action: GroupAction, N: Subgroup):
    if not N.normal:
        raise NotNormal("subgroup is not normal")
    return restrict_and_project(action, N)  # raises NotInvariant


def conjugation_cocycle(phi: Cocycle, N: Subgroup, proj=None,
                        aa_N: Optional[AutAction] = None) -> AutCocycle:
    """Λ_Φ(σ) = conjugation of N by Φ(σ)."""
    action = phi.action
    proj = proj or _normal_projection(action, N)
    aa_N = aa_N or aut_action(proj.restricted)
    G = action.target
    idx = N.index_of
    vals = []
    for s in action.acting.elements:
        c = tuple(idx[G.conj(phi.values[s], m)] for m in N.members)
        vals.append(aa_N.aut.index_of[c])
    return make_autcocycle(aa_N, vals)


@dataclass
class NMuForm:
    mu: int
    autcocycle: AutCocycle
    form: Form
    aut_class: int
    independent: bool  # every representative of μ gives the same class, witnessed by C_b


def n_mu_form(action: GroupAction, N: Subgroup, mu: int, H: Optional[CohomologySet] = None,
              proj=None, aa_N: Optional[AutAction] = None,
              H_aut: Optional[CohomologySet] = None) -> NMuForm:
    proj = proj or _normal_projection(action, N)
    H = H or h1(action)
    aa_N = aa_N or aut_action(proj.restricted)
    H_aut = H_aut or h1(aa_N.action)
    phi = H.rep(mu)
    lam = conjugation_cocycle(phi, N, proj, aa_N)
    cls = H_aut.classify(lam.values)
    G = action.target
    idx = N.index_of
    independent = True
    for j in H.classes[mu].members:
        psi = Cocycle(action, H.cocycles[j])
        lam_psi = conjugation_cocycle(psi, N, proj, aa_N)
        if H_aut.classify(lam_psi.values) != cls:
            independent = False
            break
        # Ψ = b⁻¹·Φ·σ(b), so Λ_Ψ(σ) = C_b⁻¹·Λ_Φ(σ)·σ(C_b) with C_b restricted to N
        b = H.witnesses[j]
        cb = aa_N.aut.index_of[tuple(idx[G.conj(b, m)] for m in N.members)]
        A = aa_N.aut.group
        for s in action.acting.elements:
            rhs = A.prod(A.inv(cb), lam.values[s], aa_N.transport(s, cb))
            if rhs != lam_psi.values[s]:
                independent = False
    form = form_from_autcocycle(lam)
    return NMuForm(mu, lam, form, cls, independent)


@dataclass
class NMuComparison:
    mu: int
    twisted_size: int        # |H¹(twisted by μ, N)|
    form_size: int           # |H¹(N_μ)|
    t_f_bijective: bool
    T_f: PointedMap
    ok: bool

    def to_json(self) -> dict:
        return {"mu": self.mu, "twisted_h1_size": self.twisted_size,
                "form_h1_size": self.form_size, "t_f_bijective": self.t_f_bijective,
                "T_f": list(self.T_f.mapping), "ok": self.ok}


def twisted_restriction(action: GroupAction, N: Subgroup, phi: Cocycle) -> GroupAction:
    tw = twist_action(action, phi)
    return restrict_and_project(tw.action, N).restricted


def theorem42_check(action: GroupAction, N: Subgroup, mu: int,
                    H: Optional[CohomologySet] = None, nmu: Optional[NMuForm] = None,
                    proj=None) -> NMuComparison:
    """H¹(N_μ) ≅ H¹(twisted by μ, N) via f(m) = C_Φ(τ)(n) for m the class of (τ, n)."""
    proj = proj or _normal_projection(action, N)
    H = H or h1(action)
    nmu = nmu or n_mu_form(action, N, mu, H, proj)
    phi = H.rep(mu)
    G = action.target
    A = action.acting
    idx = N.index_of
    carrier = nmu.form.carrier
    cons = nmu.form.construction
    k = len(N.members)
    f = [-1] * k
    for z, m in enumerate(cons.class_of):
        tau, n = divmod(z, k)
        v = idx[G.conj(phi.values[tau], N.members[n])]
        if f[m] == -1:
            f[m] = v
        elif f[m] != v:
            raise CheckFailure(f"f is not constant on class {m} of N_μ")
    f = tuple(f)
    twN = twisted_restriction(action, N, phi)
    for s in A.elements:
        for m in range(k):
            if f[carrier.images[s][m]] != twN.images[s][f[m]]:
                raise IntertwineFailure(f"f(σ(m)) != σ*f(m) at (σ, m) = ({s}, {m})")
    fh = Homomorphism(carrier.target, twN.target, f)
    _check_iso(carrier.target, twN.target, f)
    z_form = cocycle_values(carrier)
    z_tw = set(cocycle_values(twN))
    images = {tuple(f[x] for x in psi) for psi in z_form}
    t_f_ok = images == z_tw and len(images) == len(z_form)
    H_form = h1(carrier)
    H_tw = h1(twN)
    T = induced_map_h1(fh, carrier, twN, H_form, H_tw)
    ok = t_f_ok and T.is_bijection and len(H_form) == len(H_tw)
    return NMuComparison(mu, len(H_tw), len(H_form), t_f_ok, T, ok)


@dataclass
class SurjectionReport:
    mu: int
    fiber: tuple[int, ...]
    image: tuple[int, ...]
    basepoint_ok: bool
    ok: bool

    def to_json(self) -> dict:
        return {"mu": self.mu, "fiber": list(self.fiber), "image": list(self.image),
                "basepoint_ok": self.basepoint_ok, "ok": self.ok}


def fiber_surjection_check(action: GroupAction, N: Subgroup, mu: int,
                           H: Optional[CohomologySet] = None, proj=None,
                           pi1: Optional[PointedMap] = None) -> SurjectionReport:
    """F_Φ∘ι¹_Φ maps H¹(twisted, N) onto the fibre 𝔓(μ), sending the basepoint to μ."""
    proj = proj or _normal_projection(action, N)
    H = H or h1(action)
    if pi1 is None:
        pi1 = induced_map_h1(proj.cosets.projection, action, proj.quotient_action, H)
    phi = H.rep(mu)
    tw = twist_action(action, phi)
    twN = restrict_and_project(tw.action, N).restricted
    H_twG = h1(tw.action)
    H_twN = h1(twN)
    iota = induced_map_h1(N.inclusion, twN, tw.action, H_twN, H_twG)
    F = induced_f_big(phi, H, H_twG, tw)
    composite = [F(iota(c)) for c in range(len(H_twN))]
    fiber = pi1.preimage(pi1(mu))
    image = tuple(sorted(set(composite)))
    base_ok = composite[H_twN.basepoint] == mu
    return SurjectionReport(mu, fiber, image, base_ok, base_ok and image == fiber)


@dataclass
class CardinalityReport:
    h1_size: int
    h1_quotient_size: int
    fibers: dict            # image class in H¹(G/N) -> fibre classes in H¹(G)
    nmu_sizes: dict         # μ -> |H¹(N_μ)|
    h1_sub_size: int        # |H¹(N)| with the untwisted action
    decomposition_ok: bool
    bound: int
    bound_ok: bool
    abelian_bound: Optional[int]
    abelian_ok: Optional[bool]
    fiber_bound_ok: bool
    note: str = SCOPE_NOTE

    @property
    def ok(self) -> bool:
        return (self.decomposition_ok and self.bound_ok and self.fiber_bound_ok
                and self.abelian_ok is not False)

    def to_json(self) -> dict:
        return {"h1_size": self.h1_size, "h1_quotient_size": self.h1_quotient_size,
                "fibers": {str(c): list(f) for c, f in self.fibers.items()},
                "nmu_h1_sizes": {str(m): s for m, s in self.nmu_sizes.items()},
                "decomposition_ok": self.decomposition_ok, "bound": self.bound,
                "bound_ok": self.bound_ok, "abelian_bound": self.abelian_bound,
                "abelian_ok": self.abelian_ok, "fiber_bound_ok": self.fiber_bound_ok,
                "note": self.note}


def cardinality_bound_check(action: GroupAction, N: Subgroup,
                            H: Optional[CohomologySet] = None, proj=None) -> CardinalityReport:
    proj = proj or _normal_projection(action, N)
    H = H or h1(action)
    HQ = h1(proj.quotient_action)
    pi1 = induced_map_h1(proj.cosets.projection, action, proj.quotient_action, H, HQ)
    fibers = {c: pi1.preimage(c) for c in pi1.image()}
    decomposition_ok = sum(len(f) for f in fibers.values()) == len(H)
    aa_N = aut_action(proj.restricted)
    H_aut = h1(aa_N.action)
    nmu_sizes = {}
    fiber_bound_ok = True
    for mu in range(len(H)):
        nmu = n_mu_form(action, N, mu, H, proj, aa_N, H_aut)
        nmu_sizes[mu] = len(h1(nmu.form.carrier))
        if len(fibers[pi1(mu)]) > nmu_sizes[mu]:
            fiber_bound_ok = False
    bound = len(HQ) * max(nmu_sizes.values())
    HN = len(h1(proj.restricted))
    abelian_bound = abelian_ok = None
    if action.target.is_abelian:
        abelian_bound = len(HQ) * HN
        abelian_ok = len(H) <= abelian_bound
    return CardinalityReport(len(H), len(HQ), fibers, nmu_sizes, HN, decomposition_ok,
                             bound, len(H) <= bound, abelian_bound, abelian_ok, fiber_bound_ok)
