from fractions import Fraction
from math import lcm

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from greenmackey.burnside import (
    BurnsideElement,
    IntegralityViolation,
    NoSolution,
    artin_solve,
    burnside_green_functor,
    constant_function,
    cyclic_subgroup_classes,
    index_gcd_certificate,
    marks_report,
    perm_character,
    table_of_marks,
    zero_mark_certificate,
)
from greenmackey.groups import parse_family

import oracles
from conftest import group, sub

GROUPS = ["1", "C2", "C3", "C4", "C6", "V4", "S3", "D4", "Q8", "A4", "S4"]


# table of marks


def test_marks_small_examples():
    assert table_of_marks(group("1")).matrix.tolist() == [[1]]
    assert table_of_marks(group("C2")).matrix.tolist() == [[2, 0], [1, 1]]
    T = table_of_marks(group("S3"))
    assert [int(T.matrix[i, i]) for i in range(T.size)] == [6, 1, 2, 1]


@pytest.mark.parametrize("name", ["C4", "V4", "S3", "D4", "Q8", "A4", "S4"])
def test_marks_match_coset_oracle(name):
    G = group(name)
    T = table_of_marks(G)
    E = G.elements
    Ge = list(E)
    for i, L in enumerate(T.reps):
        for j, K in enumerate(T.reps):
            want = oracles.fixed_points_on_cosets(Ge, [E[x] for x in L], [E[x] for x in K])
            assert int(T.matrix[i, j]) == want


@pytest.mark.parametrize("name", GROUPS)
def test_classes_partition_subgroups(name):
    G = group(name)
    T = table_of_marks(G)
    ids = sorted(H.id for c in T.classes for H in c)
    assert ids == list(range(len(G.subgroups)))
    assert T.class_of(G.whole) == T.size - 1


def test_marks_of_subgroup_table():
    G = group("S4")
    T = table_of_marks(sub(G, 6))
    assert T.size == 4 and T.group.order == 6


# products


@pytest.mark.parametrize("name", ["S3", "D4", "A4"])
def test_unit_and_regular(name):
    G = group(name)
    T = table_of_marks(G)
    reg = T.basis(0)
    for i in range(T.size):
        assert T.unit() * T.basis(i) == T.basis(i)
    # [G/1]^2 = |G| [G/1]
    assert reg * reg == reg * G.order


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["S3", "D4", "Q8", "A4"]), st.data())
def test_marks_are_multiplicative(name, data):
    T = table_of_marks(group(name))
    coeffs = st.lists(st.integers(-4, 4), min_size=T.size, max_size=T.size)
    x = BurnsideElement(T, np.array(data.draw(coeffs), dtype=object))
    y = BurnsideElement(T, np.array(data.draw(coeffs), dtype=object))
    assert list(T.marks(x * y)) == [a * b for a, b in zip(T.marks(x), T.marks(y))]
    assert T.from_marks(T.marks(x)) == x


def test_from_marks_integrality():
    T = table_of_marks(group("C2"))
    with pytest.raises(IntegralityViolation):
        T.from_marks([1, 0])


# the Green functor


def test_restriction_example():
    # Res_C3 [A4/V4] = [C3/1]: C3 acts freely on the three cosets of V4
    G = group("A4")
    green = burnside_green_functor(G)
    C3, V4 = sub(G, 3), sub(G, 4)
    TA = green.tables[G.whole.id]
    x = TA.basis(TA.class_of(V4)).coeffs
    y = green.mackey.res_map(C3, G.whole)(x)
    TC = green.tables[C3.id]
    assert [int(v) for v in y] == [int(v) for v in TC.basis(TC.class_of(G.trivial)).coeffs]


@pytest.mark.parametrize("name", ["C2", "S3", "A4"])
def test_induction_preserves_cardinality(name):
    # |Ind_H^G X| = |X| as G-sets are counted by the mark at 1
    G = group(name)
    green = burnside_green_functor(G)
    TG = green.tables[G.whole.id]
    for H in G.subgroups:
        TH = green.tables[H.id]
        for i in range(TH.size):
            x = TH.basis(i).coeffs
            y = green.mackey.ind_map(H, G.whole)(x)
            assert int(TG.marks(y)[0]) == int(TH.marks(x)[0]) * (G.order // H.order)


def test_zero_mark_lemma():
    G = group("A4")
    green = burnside_green_functor(G)
    res = zero_mark_certificate(green, parse_family(G, "proper"))
    assert res.passed
    assert res.details["unit_mark"] == 1
    assert res.details["induced_elements"] > 0
    bad = zero_mark_certificate(green, parse_family(G, "all"))
    assert not bad.passed


# characters and Artin


def test_perm_character_examples():
    G = group("S3")
    chi = perm_character(G, sub(G, 2))
    # classes ordered by least element: identity, transpositions, 3-cycles
    assert chi.values == (Fraction(3), Fraction(1), Fraction(0))
    assert perm_character(G, G.whole) == constant_function(G, 1)
    assert perm_character(G, G.trivial).values == (6, 0, 0)


def test_artin_s3():
    # 6 = -3 Ind_1 + 6 Ind_C2 + 3 Ind_C3
    G = group("S3")
    sol = artin_solve(G, 6)
    by_order = {H.order: c for H, c in zip(sol.subgroups, sol.coefficients)}
    assert by_order == {1: -3, 2: 6, 3: 3}
    assert sol.expand() == constant_function(G, 6)
    assert artin_solve(G).n == 2


@pytest.mark.parametrize("name", ["1", "C2", "C3", "C4", "C6"])
def test_artin_cyclic_is_trivial(name):
    G = group(name)
    sol = artin_solve(G)
    assert sol.n == 1
    by_id = dict(zip((H.id for H in sol.subgroups), sol.coefficients))
    assert by_id[G.whole.id] == 1 and sum(abs(c) for c in sol.coefficients) == 1


@pytest.mark.parametrize("name", GROUPS)
def test_artin_matches_rational_oracle(name):
    G = group(name)
    reps = [c[0] for c in cyclic_subgroup_classes(G)]
    A = [[int(perm_character(G, C).values[i]) for C in reps] for i in range(len(G.conjugacy_classes))]
    x = oracles.rational_solve_unique(A, [1] * len(A))
    nmin = lcm(*(v.denominator for v in x))
    sol = artin_solve(G)
    assert sol.n == nmin
    assert G.order % nmin == 0
    assert list(sol.coefficients) == [int(v * nmin) for v in x]
    full = artin_solve(G, G.order)
    assert full.expand() == constant_function(G, G.order)


def test_artin_bad_multiple():
    with pytest.raises(NoSolution):
        artin_solve(group("S3"), 3)


def test_reports():
    rep = marks_report(group("S3"))
    assert rep["orders"] == [1, 2, 3, 6]
    assert index_gcd_certificate([12, 4, 6, 3]) == {"indices": [3, 4, 6, 12], "gcd": 1}
