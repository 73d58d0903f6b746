import pytest
from hypothesis import given, settings, strategies as st

from fincoh.actions import build_action, is_equivariant
from fincoh.cohomology import Cocycle, cocycle_values, h1, make_cocycle, trivial_cocycle, twist_values
from fincoh.errors import ActionMismatch, NotAWitness, NotNormal
from fincoh.groups import make_subgroup
from fincoh.oracle import brute_z1, instance_generator
from fincoh.twisting import (
    fiber_analysis,
    induced_f_big,
    transport_twist,
    twist_action,
    twist_bijection,
)

seeds = st.integers(0, 10_000)
THREE_CYCLES = (3, 4)


@pytest.mark.parametrize("c", THREE_CYCLES)
def test_twist_s3_by_three_cycle(conj_s3, S3, c):
    phi = make_cocycle(conj_s3, [0, c])
    tw = twist_action(conj_s3, phi)
    u = S3.mul(c, 2)
    assert S3.mul(u, u) == 0 and u != 0
    assert tw.images[1] == tuple(S3.conj(u, g) for g in S3.elements)
    assert build_action(conj_s3.acting, S3, tw.images) == tw.action


def test_twist_by_trivial_is_identity(inv_z4):
    assert twist_action(inv_z4, trivial_cocycle(inv_z4)).action == inv_z4


def test_twist_wrong_action(inv_z4, inv_z3):
    with pytest.raises(ActionMismatch):
        twist_action(inv_z3, trivial_cocycle(inv_z4))


def test_f_phi_on_s3(conj_s3):
    H = h1(conj_s3)
    for mu in range(len(H)):
        phi = H.rep(mu)
        tb = twist_bijection(phi)
        assert tb.forward(trivial_cocycle(conj_s3).values) == phi.values
        F = induced_f_big(phi, H)
        assert F.is_bijection and F(F.source_base) == mu
        # classwise: f_Φ carries each twisted class onto one class of equal size
        Htw = h1(tb.twisted.action)
        for c, cls in enumerate(Htw.classes):
            assert len(cls.members) == H.sizes()[F(c)]


def test_fibers_z4(inv_z4, Z4):
    rep = fiber_analysis(inv_z4, make_subgroup(Z4, [0, 2]))
    assert rep.ok
    assert sum(len(f) for f in {e.fiber for e in rep.entries}) == 2
    assert [len(e.fiber) for e in rep.entries] == [1, 1]


def test_fibers_trivial_twist_is_kernel(conj_s3, S3):
    A3 = make_subgroup(S3, [0, 3, 4])
    rep = fiber_analysis(conj_s3, A3)
    base = rep.entries[rep.h1.basepoint]
    assert set(base.fiber) == set(rep.projection.kernel())
    assert rep.ok


def test_fibers_need_normal(conj_s3, S3):
    with pytest.raises(NotNormal):
        fiber_analysis(conj_s3, make_subgroup(S3, [0, 2]))


def test_transport_bad_witness(inv_z4):
    p = make_cocycle(inv_z4, [0, 1])
    with pytest.raises(NotAWitness):
        transport_twist(p, p, 1)


@pytest.mark.parametrize("b", range(6))
def test_transport_every_b(conj_s3, b):
    psi = make_cocycle(conj_s3, [0, 3])
    phi = Cocycle(conj_s3, twist_values(conj_s3, psi.values, b))
    tr = transport_twist(phi, psi, b)
    assert is_equivariant(tr.conj, tr.source.action, tr.target.action)
    assert sorted(tr.h1_source.sizes()) == sorted(tr.h1_target.sizes())


@given(seeds)
@settings(max_examples=15, deadline=None)
def test_twisting_preserves_counts(seed):
    for inst in instance_generator(seed, 4, 8, 3):
        a = inst.action
        H = h1(a)
        z = brute_z1(a)
        for mu in range(len(H)):
            tw = twist_action(a, H.rep(mu)).action
            assert len(brute_z1(tw)) == len(z)
            assert cocycle_values(tw) == brute_z1(tw)
            assert len(h1(tw)) == len(H)
