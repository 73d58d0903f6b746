import itertools

import pytest
from hypothesis import given, settings, strategies as st

from fincoh import catalog
from fincoh.errors import MissingInverse, NoIdentity, NotAssociative, NotASubgroup, NotClosed, SizeLimitExceeded
from fincoh.groups import (
    all_homomorphisms,
    all_subgroups,
    build_group,
    compose,
    compute_aut,
    coset_space,
    make_homomorphism,
    make_subgroup,
)

catalog_names = st.sampled_from([n for n in catalog.CATALOG_NAMES])


def brute_automorphisms(G):
    """All bijections that respect the table; independent of compute_aut."""
    n = G.order
    out = []
    for p in itertools.permutations(range(n)):
        if all(p[G.mul(x, y)] == G.mul(p[x], p[y]) for x in range(n) for y in range(n)):
            out.append(p)
    return out


def perm_group(k):
    perms = list(itertools.permutations(range(k)))
    idx = {p: i for i, p in enumerate(perms)}
    return [[idx[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]


def test_z2():
    G = build_group([[0, 1], [1, 0]])
    assert G.order == 2 and G.inverses == (0, 1) and G.is_abelian


def test_s3_from_permutations():
    table = perm_group(3)
    G = build_group(table)
    assert G.order == 6
    assert not G.is_abelian
    for a, b, c in itertools.product(range(6), repeat=3):
        assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    for a in range(6):
        assert G.mul(a, G.inv(a)) == 0 == G.mul(G.inv(a), a)


def test_missing_inverse():
    with pytest.raises((NotAssociative, MissingInverse)):
        build_group([[0, 1], [1, 1]])


def test_out_of_range():
    with pytest.raises(NotClosed, match=r"table\[1\]\[0\]"):
        build_group([[0, 1], [2, 0]])


def test_no_identity():
    with pytest.raises(NoIdentity):
        build_group([[1, 1], [1, 1]])


def test_not_associative():
    # a Latin square with identity 0 that is not a group (order 5 loop)
    t = [[0, 1, 2, 3, 4],
         [1, 0, 3, 4, 2],
         [2, 4, 0, 1, 3],
         [3, 2, 4, 0, 1],
         [4, 3, 1, 2, 0]]
    with pytest.raises(NotAssociative):
        build_group(t)


def test_identity_relabelled_to_zero():
    # Z/3 with the identity stored at index 2
    t = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    G = build_group(t)
    assert G.table[0] == (0, 1, 2)
    assert G.element_order(1) == 3


def test_aut_trivial_group():
    assert len(compute_aut(catalog.get("Z1"))) == 1


def test_aut_z4():
    G = catalog.get("Z4")
    assert len(brute_automorphisms(G)) == 2
    assert len(compute_aut(G)) == 2


def test_aut_klein_is_s3():
    G = catalog.get("Z2xZ2")
    A = compute_aut(G)
    assert len(brute_automorphisms(G)) == 6 == len(A)
    assert not A.group.is_abelian


@pytest.mark.parametrize("name", ["Z3", "Z6", "S3", "D4", "Q8", "Z8", "Z2xZ4"])
def test_aut_matches_bijection_brute_force(name):
    G = catalog.get(name)
    assert list(compute_aut(G).elements) == sorted(brute_automorphisms(G))


def test_aut_size_cap():
    with pytest.raises(SizeLimitExceeded):
        compute_aut(catalog.get("Z8"), max_order=4)


@given(catalog_names)
@settings(max_examples=30, deadline=None)
def test_aut_closed_and_valid(name):
    G = catalog.get(name)
    A = compute_aut(G)
    assert A.elements[0] == tuple(range(G.order))
    index = A.index_of
    for p in A.elements:
        for q in A.elements:
            assert compose(p, q) in index
            assert A.elements[A.group.mul(index[p], index[q])] == compose(p, q)
        # relabelling the table by p reproduces the same group
        relabelled = [[0] * G.order for _ in G.elements]
        for x in G.elements:
            for y in G.elements:
                relabelled[p[x]][p[y]] = p[G.mul(x, y)]
        assert build_group(relabelled).table == G.table


def test_cosets_z4():
    G = catalog.get("Z4")
    cs = coset_space(G, make_subgroup(G, [0, 2]))
    assert len(cs) == 2
    assert cs.cosets[cs.basepoint] == (0, 2)
    assert cs.quotient is not None and cs.quotient.order == 2


def test_cosets_s3_transposition():
    G = catalog.get("S3")
    N = make_subgroup(G, [0, 2])
    # normality by explicit conjugation scan
    assert any(G.conj(g, 2) not in (0, 2) for g in G.elements)
    assert not N.normal
    cs = coset_space(G, N)
    assert len(cs) == 3 and cs.quotient is None


@given(catalog_names)
@settings(max_examples=30, deadline=None)
def test_trivial_subgroup_quotient_is_group(name):
    G = catalog.get(name)
    cs = coset_space(G, make_subgroup(G, [0]))
    assert len(cs) == G.order
    assert cs.quotient.table == G.table


@given(catalog_names)
@settings(max_examples=30, deadline=None)
def test_lagrange_and_transitive_action(name):
    G = catalog.get(name)
    for N in all_subgroups(G):
        cs = coset_space(G, N)
        assert len(cs) * len(N) == G.order
        assert sorted(x for c in cs.cosets for x in c) == list(G.elements)
        reach = {cs.left_action[g][cs.basepoint] for g in G.elements}
        assert reach == set(range(len(cs)))
        for g in G.elements:
            for h in G.elements:
                gh = G.mul(g, h)
                assert all(cs.left_action[gh][i] == cs.left_action[g][cs.left_action[h][i]]
                           for i in range(len(cs)))
        if cs.quotient is not None:
            for a, ca in enumerate(cs.cosets):
                for b, cb in enumerate(cs.cosets):
                    assert cs.coset_of[G.mul(ca[0], cb[0])] == cs.quotient.mul(a, b)


def test_not_a_subgroup():
    G = catalog.get("Z4")
    with pytest.raises(NotASubgroup):
        make_subgroup(G, [0, 1])


def test_homomorphisms_z2_to_s3():
    homs = all_homomorphisms(catalog.get("Z2"), catalog.get("S3"))
    assert homs == [(0, 0), (0, 1), (0, 2), (0, 5)]
    for h in homs:
        make_homomorphism(catalog.get("Z2"), catalog.get("S3"), h)


def test_subgroup_counts():
    # D4 has 10 subgroups, 6 of them normal; Q8 has 6, all normal
    D4, Q8 = catalog.get("D4"), catalog.get("Q8")
    assert (len(all_subgroups(D4)), sum(N.normal for N in all_subgroups(D4))) == (10, 6)
    assert (len(all_subgroups(Q8)), sum(N.normal for N in all_subgroups(Q8))) == (6, 6)
