"""Property suites over seeded instances, shared by the CLI and the test-suite."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .cohomology import Cocycle, h1, verify_exact_sequence
from .errors import FincohError
from .forms import (
    SCOPE_NOTE,
    cardinality_bound_check,
    classify_forms,
    fiber_surjection_check,
    theorem42_check,
)
from .oracle import Instance, abelian_h1_oracle, brute_z1, instance_generator
from .torsors import classify_torsors
from .twisting import fiber_analysis, induced_f_big, transport_twist, twist_bijection

SUITES = ("exactness", "twisting", "forms", "torsors", "fibers", "cardinality")
FORMS_MAX_G = 8
TORSORS_MAX_G = 6
TORSORS_MAX_GG = 4


@dataclass
class CheckResult:
    suite: str
    check: str
    instance: Instance
    subgroup: Optional[tuple[int, ...]]
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"suite": self.suite, "check": self.check, "instance": self.instance.label,
                "subgroup": list(self.subgroup) if self.subgroup is not None else None,
                "pass": self.passed, "detail": self.detail}


def _run(suite: str, check: str, inst: Instance, N, fn: Callable[[], tuple[bool, dict]]) -> CheckResult:
    members = N.members if N is not None else None
    try:
        ok, detail = fn()
    except FincohError as exc:
        ok, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
    return CheckResult(suite, check, inst, members, ok, detail)


def check_exactness(inst: Instance) -> list[CheckResult]:
    a = inst.action
    out = []

    def oracle():
        z1 = sorted(h1(a).cocycles)
        ok = z1 == brute_z1(a)
        detail = {"z1_size": len(z1)}
        if a.target.is_abelian:
            H = h1(a)
            count, cmap = abelian_h1_oracle(a)
            same = all((H.class_of[i] == H.class_of[j]) == (cmap[u] == cmap[v])
                       for i, u in enumerate(H.cocycles) for j, v in enumerate(H.cocycles))
            ok = ok and count == len(H) and same
            detail["h1_size"] = len(H)
        return ok, detail
    out.append(_run("exactness", "oracle", inst, None, oracle))
    for N in inst.subgroups:
        def exact(N=N):
            rep = verify_exact_sequence(a, N)
            return rep.passed, {"nodes": [n.to_json() for n in rep.nodes]}
        out.append(_run("exactness", "exact_sequence", inst, N, exact))
    return out


def check_twisting(inst: Instance) -> list[CheckResult]:
    a = inst.action
    H = h1(a)

    def run():
        for mu, cls in enumerate(H.classes):
            phi = Cocycle(a, cls.rep)
            tb = twist_bijection(phi)
            F = induced_f_big(phi, H, twisted=tb.twisted)
            if F(F.source_base) != mu:
                return False, {"mu": mu, "error": "F_Φ(basepoint) != μ"}
            for j in cls.members:
                # cocycles[j] = b⁻¹·rep·σ(b)
                psi = Cocycle(a, H.cocycles[j])
                tr = transport_twist(psi, phi, H.witnesses[j])
                if sorted(tr.h1_source.sizes()) != sorted(tr.h1_target.sizes()):
                    return False, {"mu": mu, "error": "transported class sizes differ"}
        return True, {"h1_size": len(H)}
    return [_run("twisting", "twist_bijection", inst, None, run)]


def check_fibers(inst: Instance) -> list[CheckResult]:
    a = inst.action
    out = []
    H = h1(a)
    for N in inst.normal_subgroups:
        def fibers(N=N):
            rep = fiber_analysis(a, N)
            return rep.ok, rep.to_json()
        out.append(_run("fibers", "fibres", inst, N, fibers))

        def nmu(N=N):
            reps = [theorem42_check(a, N, mu, H) for mu in range(len(H))]
            surj = [fiber_surjection_check(a, N, mu, H) for mu in range(len(H))]
            ok = all(r.ok for r in reps) and all(s.ok for s in surj)
            return ok, {"nmu": [r.to_json() for r in reps],
                        "surjection": [s.to_json() for s in surj]}
        out.append(_run("fibers", "nmu_and_surjection", inst, N, nmu))
    return out


def check_forms(inst: Instance) -> list[CheckResult]:
    if inst.action.target.order > FORMS_MAX_G:
        return []

    def run():
        fc = classify_forms(inst.action)
        return fc.matching_ok, {"aut_h1_size": len(fc.aut_h1), "census_size": len(fc.census)}
    return [_run("forms", "form_classes", inst, None, run)]


def check_torsors(inst: Instance) -> list[CheckResult]:
    a = inst.action
    if a.target.order > TORSORS_MAX_G or a.acting.order > TORSORS_MAX_GG:
        return []

    def run():
        census = classify_torsors(a)
        return census.match, census.to_json()
    return [_run("torsors", "torsor_census", inst, None, run)]


def check_cardinality(inst: Instance) -> list[CheckResult]:
    a = inst.action
    out = []
    for N in inst.normal_subgroups:
        def run(N=N):
            rep = cardinality_bound_check(a, N)
            d = rep.to_json()
            del d["note"]
            return rep.ok, d
        out.append(_run("cardinality", "decomposition", inst, N, run))
    return out


CHECKS = {
    "exactness": check_exactness,
    "twisting": check_twisting,
    "forms": check_forms,
    "torsors": check_torsors,
    "fibers": check_fibers,
    "cardinality": check_cardinality,
}


@dataclass
class SuiteReport:
    suites: tuple[str, ...]
    seed: int
    count: int
    max_g: int
    max_gg: int
    results: list[CheckResult]

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def counterexample(self) -> Optional[dict]:
        """The failing check on the smallest instance."""
        if not self.failures:
            return None
        worst = min(self.failures, key=lambda r: (r.instance.action.target.order
                                                  * r.instance.action.acting.order,
                                                  r.instance.index))
        d = worst.to_json()
        d["action"] = worst.instance.action.to_json()
        return d

    def to_json(self) -> dict:
        per_suite = {}
        for s in self.suites:
            rs = [r for r in self.results if r.suite == s]
            per_suite[s] = {"checks": len(rs), "failures": sum(not r.passed for r in rs)}
        return {"schema_version": "1", "suites": list(self.suites), "seed": self.seed,
                "count": self.count, "max_g": self.max_g, "max_gg": self.max_gg,
                "summary": per_suite, "passed": self.passed,
                "results": [r.to_json() for r in self.results],
                "counterexample": self.counterexample(), "scope_note": SCOPE_NOTE}


def run_suites(suites: Iterable[str], seed: int = 0, count: int = 50,
               max_g: int = 10, max_gg: int = 6) -> SuiteReport:
    names = tuple(SUITES if "all" in suites else suites)
    results = []
    for inst in instance_generator(seed, max_gg, max_g, count):
        for s in names:
            results.extend(CHECKS[s](inst))
    return SuiteReport(names, seed, count, max_g, max_gg, results)
