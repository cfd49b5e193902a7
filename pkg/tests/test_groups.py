import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from greenmackey.groups import (
    FiniteGroup,
    GroupError,
    InvalidPermutation,
    NotASubgroup,
    NotNested,
    OrderCapExceeded,
    Perm,
    brute_force_subgroups,
    classify_subgroup,
    custom_family,
    double_coset_reps,
    generate_group,
    left_coset_reps,
    list_subgroups,
    load_group,
    orbit_count,
    parse_family,
    proper_family,
    subgroup_family,
)

import oracles
from conftest import group, sub

TEST_GROUPS = ["1", "C2", "C3", "C4", "C6", "V4", "S3", "D4", "Q8", "A4", "S4"]


# construction


def test_generate_trivial():
    assert generate_group(3, []).order == 1


def test_generate_involution():
    assert generate_group(2, [(1, 0)]).order == 2


def test_generate_s3_matches_closure_oracle():
    gens = [(1, 2, 0), (1, 0, 2)]
    G = generate_group(3, gens)
    assert set(G.elements) == oracles.closure(gens, 3)
    assert G.order == 6


def test_elements_sorted_identity_first():
    G = group("S4")
    assert list(G.elements) == sorted(G.elements)
    assert G.elements[0] == tuple(range(4))


def test_invalid_permutation():
    with pytest.raises(InvalidPermutation):
        generate_group(3, [(0, 0, 1)])
    with pytest.raises(InvalidPermutation):
        Perm((1, 2))


def test_order_cap():
    with pytest.raises(OrderCapExceeded):
        generate_group(5, [(1, 2, 3, 4, 0), (1, 0, 2, 3, 4)], order_cap=50)


def test_perm_cycles_and_sign():
    p = Perm.from_cycles(4, (0, 1, 2))
    assert p.images == (1, 2, 0, 3)
    assert p.sign() == 1
    assert Perm.from_cycles(4, (0, 1)).sign() == -1
    assert (p * p.inverse()).images == (0, 1, 2, 3)


def test_load_group_file(tmp_path):
    f = tmp_path / "g.json"
    f.write_text(json.dumps({"degree": 3, "generators": [[1, 2, 0], [1, 0, 2]]}))
    assert load_group(str(f)).order == 6


def test_load_group_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(GroupError):
        load_group(str(bad))
    with pytest.raises(GroupError):
        load_group("Z7")


@pytest.mark.parametrize("name", TEST_GROUPS)
def test_multiplication_table_matches_composition(name):
    G = group(name)
    for a in range(G.order):
        for b in range(G.order):
            assert G.elements[G.m(a, b)] == oracles.pmul(G.elements[a], G.elements[b])
        assert G.elements[G.inverse(a)] == oracles.pinv(G.elements[a])


# subgroups


@pytest.mark.parametrize("name,count", [("1", 1), ("S3", 6), ("A4", 10), ("D4", 10), ("Q8", 6), ("S4", 30)])
def test_subgroup_counts(name, count):
    # counts cross-checked against the pair-generated oracle below
    assert len(list_subgroups(group(name))) == count


@pytest.mark.parametrize("name", TEST_GROUPS)
def test_subgroups_match_pair_oracle(name):
    G = group(name)
    mine = {frozenset(G.elements[x] for x in H.members) for H in G.subgroups}
    assert mine == oracles.subgroups_by_pairs(G.elements, G.degree)


@pytest.mark.parametrize("name", ["C2", "C4", "V4", "S3", "C6"])
def test_subgroups_match_subset_oracle(name):
    G = group(name)
    mine = {frozenset(G.elements[x] for x in H.members) for H in G.subgroups}
    assert mine == oracles.subgroups_by_subsets(G.elements, G.degree)


@pytest.mark.parametrize("name", ["S3", "D4", "A4"])
def test_internal_brute_force_agrees(name):
    G = group(name)
    assert sorted(brute_force_subgroups(G)) == sorted(H.members for H in G.subgroups)


@pytest.mark.parametrize("name", ["S3", "A4", "S4"])
def test_subgroups_sorted_by_order_then_members(name):
    S = group(name).subgroups
    keys = [(H.order, H.members) for H in S]
    assert keys == sorted(keys)
    assert [H.id for H in S] == list(range(len(S)))


@pytest.mark.parametrize("name", TEST_GROUPS)
def test_conjugates_are_subgroups_of_same_order(name):
    G = group(name)
    for H in G.subgroups:
        for f in range(G.order):
            assert H.conjugate(f).order == H.order


def test_subgroup_lookup_errors():
    G = group("S3")
    with pytest.raises(NotASubgroup):
        G.subgroup([0, 1, 2])


def test_normalizer_and_normality():
    G = group("S3")
    C3 = sub(G, 3)
    C2 = sub(G, 2)
    assert C3.normalizer == G.whole
    assert C2.normalizer == C2
    assert C3.is_normal_in(G.whole)
    assert not C2.is_normal_in(G.whole)


# classification and families


def test_classify_trivial_subgroup():
    G = group("S3")
    c = classify_subgroup(G, G.trivial)
    assert c.is_cyclic
    assert all(c.is_p_elementary(p) for p in (2, 3, 5, 7))


def test_classify_c6():
    G = group("C6")
    c = classify_subgroup(G, G.whole)
    assert c.is_cyclic
    assert c.is_p_hyperelementary(2) and c.is_p_hyperelementary(3)


def test_classify_a4_not_hyperelementary():
    G = group("A4")
    c = classify_subgroup(G, G.whole)
    assert c.hyperelementary_primes == frozenset()
    assert not c.is_hyperelementary
    for H in G.subgroups[:-1]:
        assert classify_subgroup(G, H).is_hyperelementary


def test_s3_is_2_hyperelementary_not_elementary():
    G = group("S3")
    c = classify_subgroup(G, G.whole)
    assert 2 in c.hyperelementary_primes
    assert not c.is_elementary


def test_classification_witness_definition():
    # p in hyperelementary_primes iff a normal cyclic C with p-power index and order prime to p exists
    for name in ["S3", "D4", "Q8", "A4", "S4", "C6"]:
        G = group(name)
        for H in G.subgroups:
            c = classify_subgroup(G, H)
            assert c.elementary_primes <= c.hyperelementary_primes
            for p in (2, 3):
                brute = any(
                    C.is_cyclic() and C.is_normal_in(H) and C.order % p != 0
                    and _is_power(H.order // C.order, p)
                    for C in H.subgroups
                )
                assert brute == c.is_p_hyperelementary(p), (name, H.id, p)


def _is_power(n, p):
    while n % p == 0:
        n //= p
    return n == 1


def test_family_examples():
    assert [H.id for H in subgroup_family(group("1"), "FC")] == [0]
    assert len(subgroup_family(group("S3"), "H")) == 6
    fam = subgroup_family(group("A4"), "H")
    assert len(fam) == 9 and group("A4").whole not in fam


@pytest.mark.parametrize("name", TEST_GROUPS)
@pytest.mark.parametrize("tag", ["H", "Hp:2", "Hp:3", "E", "Ep:2", "Ep:3", "FC", "proper", "all"])
def test_families_are_closed(name, tag):
    assert parse_family(group(name), tag).is_closed()


def test_family_errors():
    G = group("S3")
    with pytest.raises(GroupError):
        parse_family(G, "Hp:4")
    with pytest.raises(GroupError):
        parse_family(G, "X")
    fam = custom_family(G, [sub(G, 3)])
    assert not fam.is_closed()


def test_proper_family():
    G = group("A4")
    assert len(proper_family(G)) == 9


# cosets


def test_left_coset_examples():
    S3 = group("S3")
    assert left_coset_reps(S3.whole, S3.whole) == (0,)
    reps = left_coset_reps(S3.whole, sub(S3, 3))
    assert len(reps) == 2 and reps[0] == 0
    assert S3.element(reps[1]).sign() == -1
    C6 = group("C6")
    assert len(left_coset_reps(C6.whole, sub(C6, 2))) == 3
    with pytest.raises(NotNested):
        left_coset_reps(sub(S3, 2), sub(S3, 3))


@pytest.mark.parametrize("name", ["S3", "D4", "A4", "Q8"])
def test_left_cosets_partition(name):
    G = group(name)
    for J in G.subgroups:
        for I in J.subgroups:
            reps = left_coset_reps(J, I)
            Je = [G.elements[x] for x in J.members]
            Ie = [G.elements[x] for x in I.members]
            cosets = oracles.left_cosets(Je, Ie)
            mine = {frozenset(oracles.pmul(G.elements[a], i) for i in Ie) for a in reps}
            assert mine == cosets and len(reps) == len(cosets)
            assert reps[0] == 0
            assert all(a == min(G.m(a, i) for i in I.members) for a in reps)


def test_double_coset_examples():
    S3 = group("S3")
    C2 = sub(S3, 2)
    reps = double_coset_reps(S3.whole, C2, C2)
    sizes = sorted(len({S3.m(S3.m(j, f), i) for j in C2 for i in C2}) for f in reps)
    assert sizes == [2, 4]
    assert double_coset_reps(S3.whole, S3.whole, C2) == (0,)
    A4 = group("A4")
    assert len(double_coset_reps(A4.whole, sub(A4, 4), sub(A4, 3))) == 1


@pytest.mark.parametrize("name", ["S3", "D4", "A4"])
def test_double_cosets_match_oracle(name):
    G = group(name)
    E = G.elements
    for K in G.subgroups:
        for J in K.subgroups:
            for I in K.subgroups:
                reps = double_coset_reps(K, J, I)
                want = oracles.double_cosets([E[x] for x in K], [E[x] for x in J], [E[x] for x in I])
                got = {frozenset(oracles.pmul(oracles.pmul(E[j], E[f]), E[i]) for j in J for i in I) for f in reps}
                assert got == want and len(reps) == len(want)


@pytest.mark.parametrize("name", ["S3", "D4", "A4", "S4"])
def test_orbit_counting_identity(name):
    G = group(name)
    for K in G.subgroups:
        for J in K.subgroups:
            for I in K.subgroups:
                lhs, rhs = orbit_count(K, J, I)
                assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["S3", "D4", "A4", "Q8"]), st.data())
def test_subgroup_intersection_and_products(name, data):
    G = group(name)
    H = data.draw(st.sampled_from(G.subgroups))
    K = data.draw(st.sampled_from(G.subgroups))
    M = H.intersection(K)
    assert M <= H and M <= K
    assert set(M.members) == set(H.members) & set(K.members)
    f = data.draw(st.integers(0, G.order - 1))
    assert H.conjugate(f).conjugate(G.inverse(f)) == H


def test_finite_group_repr_and_len():
    G = group("S3")
    assert len(G) == 6 and isinstance(G, FiniteGroup)
    assert "S3" in repr(G)
