"""Acceptance gate: one test per criterion, each timed against its limit.

A pass/fail line per criterion is printed in the terminal summary.
"""
import time

import pytest

from conftest import ACCEPTANCE_LINES
from fincoh.cohomology import enumerate_cocycles, h1, verify_exact_sequence
from fincoh.forms import (
    SCOPE_NOTE,
    cardinality_bound_check,
    classify_forms,
    fiber_surjection_check,
    form_cocycle,
    theorem42_check,
)
from fincoh.groups import make_subgroup
from fincoh.oracle import abelian_h1_oracle, brute_z1, form_census_oracle, instance_generator
from fincoh.suites import run_suites
from fincoh.torsors import classify_torsors
from fincoh.twisting import fiber_analysis, induced_f_big, twist_bijection

SUITE = dict(seed=0, max_acting=6, max_target=10, count=200)
TORSOR_SUITE = dict(seed=0, max_acting=4, max_target=6, count=200)


@pytest.fixture(scope="module")
def instances():
    return list(instance_generator(**SUITE))


class Gate:
    def __init__(self, number, title, limit):
        self.number, self.title, self.limit = number, title, limit
        self.failures = []

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def fail(self, what):
        self.failures.append(what)

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        slow = self.limit is not None and elapsed >= self.limit
        ok = exc_type is None and not self.failures and not slow
        limit = f" < {self.limit:g}s" if self.limit is not None else ""
        why = ""
        if exc_type is not None:
            why = f" [{exc_type.__name__}: {exc}]"
        elif self.failures:
            why = f" [{len(self.failures)} failures, first: {self.failures[0]}]"
        elif slow:
            why = " [over time limit]"
        ACCEPTANCE_LINES.append(f"criterion {self.number} {'PASS' if ok else 'FAIL'}: "
                                f"{self.title} ({elapsed:.2f}s{limit}){why}")
        if exc_type is None:
            assert not self.failures, self.failures[:5]
            assert not slow, f"took {elapsed:.1f}s, limit {self.limit}s"
        return False


def test_criterion_1_baseline_counts(inv_z3, inv_z4, triv_z2):
    with Gate(1, "baseline counts", 1.0) as g:
        for a, z, n in ((inv_z3, 3, 1), (inv_z4, 4, 2), (triv_z2, 2, 2)):
            got = (len(brute_z1(a)), len(h1(a)), abelian_h1_oracle(a)[0])
            if got != (z, n, n):
                g.fail(f"{a.target.name}: (|Z1|, |H1|, oracle) = {got}, expected {(z, n, n)}")


def test_criterion_2_oracle_equivalence(instances):
    with Gate(2, f"oracle equivalence on {len(instances)} instances", 60.0) as g:
        assert len(instances) >= 200
        for inst in instances:
            a = inst.action
            z = [c.values for c in enumerate_cocycles(a)]
            if set(z) != set(brute_z1(a)):
                g.fail(f"{inst.label}: Z1 differs")
                continue
            if a.target.is_abelian:
                H = h1(a)
                count, cmap = abelian_h1_oracle(a)
                same = all((H.class_of[i] == H.class_of[j]) == (cmap[u] == cmap[v])
                           for i, u in enumerate(H.cocycles) for j, v in enumerate(H.cocycles))
                if count != len(H) or not same:
                    g.fail(f"{inst.label}: partition differs from the abelian oracle")


def test_criterion_3_exact_sequence(instances):
    with Gate(3, "exact sequence at every node", 120.0) as g:
        pairs = 0
        for inst in instances:
            for N in inst.subgroups:
                pairs += 1
                rep = verify_exact_sequence(inst.action, N)
                if not rep.passed:
                    bad = [n.node for n in rep.nodes if not n.passed]
                    g.fail(f"{inst.label} N={N.members}: {bad}")
                if N.normal and "H1(G)" not in [n.node for n in rep.nodes]:
                    g.fail(f"{inst.label} N={N.members}: extended node missing")
        assert pairs >= len(instances)


def test_criterion_4_twisting_and_fibers(instances):
    with Gate(4, "F_Φ bijections and fibre counts", 120.0) as g:
        for inst in instances:
            a = inst.action
            H = h1(a)
            for mu in range(len(H)):
                phi = H.rep(mu)
                tb = twist_bijection(phi)
                F = induced_f_big(phi, H, twisted=tb.twisted)
                if not F.is_bijection or F(F.source_base) != mu:
                    g.fail(f"{inst.label} μ={mu}: F_Φ")
            for N in inst.normal_subgroups:
                rep = fiber_analysis(a, N)
                if not rep.ok:
                    g.fail(f"{inst.label} N={N.members}: fibres")
                for e in rep.entries:
                    if len(e.fiber) != len(e.twisted_kernel):
                        g.fail(f"{inst.label} N={N.members} μ={e.mu}: |fibre| != |kernel|")


def test_criterion_5_forms(instances):
    small = [i for i in instances if i.action.target.order <= 8]
    with Gate(5, f"forms on {len(small)} instances with |G| <= 8", 120.0) as g:
        for inst in small:
            fc = classify_forms(inst.action)
            census = form_census_oracle(inst.action, fc.aa.aut)
            if not (fc.matching_ok and len(fc.forms) == len(fc.aut_h1) == len(census)):
                g.fail(f"{inst.label}: {len(fc.forms)} forms, {len(census)} census classes")
            for c, F in enumerate(fc.forms):
                if fc.aut_h1.classify(form_cocycle(F, fc.aa).values) != c:
                    g.fail(f"{inst.label}: round trip moves class {c}")


def test_criterion_6_theorem_and_surjection(instances):
    with Gate(6, "twisted N against N_μ, and surjection onto fibres", 180.0) as g:
        for inst in instances:
            a = inst.action
            H = h1(a)
            for N in inst.normal_subgroups:
                for mu in range(len(H)):
                    rep = theorem42_check(a, N, mu, H)
                    if not rep.ok or rep.twisted_size != rep.form_size:
                        g.fail(f"{inst.label} N={N.members} μ={mu}: T_f")
                    if not fiber_surjection_check(a, N, mu, H).ok:
                        g.fail(f"{inst.label} N={N.members} μ={mu}: surjection")


def test_criterion_7_cardinality(instances):
    with Gate(7, "fibre decomposition and bound", 60.0) as g:
        abelian = 0
        for inst in instances:
            for N in inst.normal_subgroups:
                rep = cardinality_bound_check(inst.action, N)
                if not rep.ok:
                    g.fail(f"{inst.label} N={N.members}: {rep.to_json()}")
                if sum(len(f) for f in rep.fibers.values()) != rep.h1_size:
                    g.fail(f"{inst.label} N={N.members}: decomposition")
                if inst.action.target.is_abelian:
                    abelian += 1
                    if rep.abelian_ok is not True:
                        g.fail(f"{inst.label} N={N.members}: abelian refinement")
        assert abelian > 0


def test_criterion_8_torsors():
    insts = list(instance_generator(**TORSOR_SUITE))
    with Gate(8, f"torsor census on {len(insts)} instances", 60.0) as g:
        for inst in insts:
            census = classify_torsors(inst.action)
            if not census.match or len(census.classes) != len(census.h1):
                g.fail(f"{inst.label}: {census.to_json()}")


def test_criterion_9_scope_statement(inv_z4, Z4):
    with Gate(9, "scope limitation stated in reports", None) as g:
        rep = cardinality_bound_check(inv_z4, make_subgroup(Z4, [0, 2])).to_json()
        verify = run_suites(["cardinality"], 0, 2).to_json()
        for where, text in (("cardinality report", rep.get("note")),
                            ("verify report", verify.get("scope_note"))):
            if text != SCOPE_NOTE or "not reproducible" not in text:
                g.fail(f"{where} lacks the scope note")
