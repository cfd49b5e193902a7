import json
from math import gcd

import numpy as np
import pytest

from greenmackey.burnside import burnside_green_functor
from greenmackey.groups import custom_family, parse_family
from greenmackey.mackey import (
    FamilyNotClosed,
    FixtureError,
    GreenFunctor,
    GreenModule,
    MackeyFunctor,
    PreconditionViolated,
    all_passed,
    family_limit,
    fixed_point_functor,
    fixed_point_green,
    load_mackey_fixture,
    localize_functor,
    mackey_from_dict,
    mackey_to_dict,
    scalar_module,
    swan_vanishing_check,
    tate_functor,
    tate_module,
    unit_in_induction_image,
    validate_green,
    validate_mackey,
    verify_induction_iso,
    zero_functor,
)
from greenmackey.zalgebra import INTEGRAL, INVERT_2, RATIONAL, AbHom, FgAbelianGroup, p_local, parse_mode

from conftest import FIXTURES, group, sub

MODES = ["Z", "Zp:2", "Zp:3", "Q", "Z-half"]


def is_unit(n, mode):
    """Whether the integer ``n`` is invertible in the coefficient ring."""
    if n == 0:
        return False
    if mode.kind == "integral":
        return abs(n) == 1
    if mode.kind == "rational":
        return True
    if mode.kind == "p_local":
        return n % mode.p != 0
    while n % 2 == 0:
        n //= 2
    return abs(n) == 1


# validation


@pytest.mark.parametrize("name", ["S3", "D4", "A4"])
def test_fixed_point_functor_validates(name):
    res = validate_mackey(fixed_point_functor(group(name)))
    assert all_passed(res), [r.name for r in res if not r.passed]
    assert [r.name for r in res] == ["well-defined maps"] + [f"axiom {k}" for k in range(1, 8)]


@pytest.mark.parametrize("name", ["C2", "S3", "A4"])
def test_tate_functor_validates(name):
    assert all_passed(validate_mackey(tate_functor(group(name))))


def test_zero_functor_validates():
    assert all_passed(validate_mackey(zero_functor(group("S3"))))


def test_corrupted_induction_breaks_double_coset_formula():
    M = load_mackey_fixture(FIXTURES / "s3_broken_ind.json")
    failed = {r.name for r in validate_mackey(M) if not r.passed}
    assert "axiom 7" in failed
    assert "axiom 3" in failed


def test_ill_defined_map_reported():
    G = group("C2")
    M = fixed_point_functor(G)
    M.res[(0, 1)] = AbHom(FgAbelianGroup(1, [[2]]), M.value(G.trivial), [[1]])
    res = validate_mackey(M)
    assert not res[0].passed


@pytest.mark.parametrize("name", ["S3", "A4"])
def test_fixed_point_green_and_modules(name):
    G = group(name)
    green = fixed_point_green(G)
    res = validate_green(green)
    assert all_passed(res), [(r.name, r.counterexample) for r in res if not r.passed]
    assert all_passed(validate_green(green, GreenModule.regular(green)))
    assert all_passed(validate_green(green, tate_module(G)))


def test_burnside_green_validates():
    green = burnside_green_functor(group("S3"))
    res = validate_green(green, GreenModule.regular(green))
    assert all_passed(res), [(r.name, r.counterexample) for r in res if not r.passed]


def test_broken_module_fails_frobenius():
    M = load_mackey_fixture(FIXTURES / "s3_broken_ind.json")
    G = M.group
    res = validate_green(fixed_point_green(G), scalar_module(fixed_point_green(G), M))
    failed = {r.name for r in res if not r.passed}
    assert "frobenius (module)" in failed


def test_green_bad_unit_detected():
    G = group("C2")
    M = fixed_point_functor(G)
    bad = GreenFunctor(M, {H.id: [[[1]]] for H in G.subgroups}, {H.id: [2] for H in G.subgroups})
    assert not all_passed(validate_green(bad))


# induction


@pytest.mark.parametrize("name", ["S3", "D4", "A4", "S4"])
@pytest.mark.parametrize("tag", ["H", "E", "FC", "proper", "all"])
@pytest.mark.parametrize("mode", MODES)
def test_unit_induced_iff_index_gcd_is_unit(name, tag, mode):
    # fixed-point ring: Ind_H^G 1 = [G:H], so the image is generated by the index gcd
    G = group(name)
    fam = parse_family(G, tag)
    m = parse_mode(mode)
    g = 0
    for H in fam:
        g = gcd(g, G.order // H.order)
    cert = unit_in_induction_image(fixed_point_green(G), fam, m)
    assert cert.holds == is_unit(g, m)
    assert cert.index_gcd == g
    if cert.holds:
        total = sum(c[0] * (G.order // G.subgroups[h].order) for h, c in cert.coefficients.items())
        assert total == cert.scale
        assert is_unit(cert.scale, m)
    else:
        assert cert.obstruction is not None


def test_obstruction_functional_certifies():
    G = group("S3")
    fam = custom_family(G, [G.trivial])
    cert = unit_in_induction_image(fixed_point_green(G), fam, INTEGRAL)
    w, q = cert.obstruction["functional"], cert.obstruction["modulus"]
    assert (w[0] * 6) % q == 0 and w[0] % q != 0


def test_family_in_family_with_whole_group():
    G = group("A4")
    cert = unit_in_induction_image(fixed_point_green(G), parse_family(G, "all"), INTEGRAL)
    assert cert.holds and cert.scale == 1


def test_family_limit_all_subgroups_is_whole_value():
    G = group("S3")
    for direction in ("colim", "lim"):
        A, comp = family_limit(fixed_point_functor(G), parse_family(G, "all"), direction)
        assert A.free_rank == 1 and A.torsion == []
        assert comp.is_isomorphism()


def test_family_limit_trivial_subgroup_c2():
    # colim over {1} is Z and the comparison is multiplication by 2
    G = group("C2")
    fam = custom_family(G, [G.trivial])
    A, comp = family_limit(fixed_point_functor(G), fam, "colim")
    assert A.free_rank == 1
    assert not comp.is_isomorphism()
    assert comp.cokernel()[0].torsion == [2]
    _, comp_half = family_limit(fixed_point_functor(G), fam, "colim", INVERT_2)
    assert comp_half.is_isomorphism(INVERT_2)


def test_family_limit_trivial_group():
    G = group("1")
    fam = parse_family(G, "all")
    for direction in ("colim", "lim"):
        A, comp = family_limit(fixed_point_functor(G), fam, direction)
        assert A.free_rank == 1 and comp.is_isomorphism()


def test_family_limit_a4_hyperelementary():
    G = group("A4")
    fam = parse_family(G, "H")
    for direction in ("colim", "lim"):
        A, comp = family_limit(fixed_point_functor(G), fam, direction)
        assert comp.is_isomorphism(), direction


def test_family_limit_rejects_open_family():
    G = group("S3")
    with pytest.raises(FamilyNotClosed):
        family_limit(fixed_point_functor(G), custom_family(G, [sub(G, 3)]), "colim")
    with pytest.raises(ValueError):
        family_limit(fixed_point_functor(G), parse_family(G, "all"), "sideways")


@pytest.mark.parametrize("mode", ["Z", "Zp:2", "Q", "Z-half"])
def test_induction_iso_a4(mode):
    G = group("A4")
    green = fixed_point_green(G)
    res = verify_induction_iso(GreenModule.regular(green), parse_family(G, "H"), parse_mode(mode))
    assert res.status == "pass"
    # indices of 1, C2, C3, V4 in A4, with gcd 1
    assert res.certificate.indices == [3, 4, 6, 12]
    assert res.certificate.index_gcd == 1
    assert res.details["colim"]["iso"] and res.details["lim"]["iso"]


def test_induction_hypothesis_failure_burnside():
    G = group("A4")
    green = burnside_green_functor(G)
    res = verify_induction_iso(GreenModule.regular(green), parse_family(G, "proper"))
    assert res.status == "hypothesis_failure"
    assert not res.passed


def test_induction_counts_conclusion_failure_honestly():
    # over Z the trivial family cannot induce the unit of S3, but at p = 5 it can
    G = group("S3")
    fam = custom_family(G, [G.trivial])
    mod = GreenModule.regular(fixed_point_green(G))
    assert verify_induction_iso(mod, fam, INTEGRAL).status == "hypothesis_failure"
    assert verify_induction_iso(mod, fam, p_local(5)).status == "pass"


# localization


def test_localize_functor_examples():
    G = group("S3")
    T = tate_functor(G)
    assert all(localize_functor(T, RATIONAL).value(H).is_zero() for H in G.subgroups)
    L2 = localize_functor(T, p_local(2))
    assert L2.value(G.whole).torsion == [2]
    assert L2.value(sub(G, 3)).is_zero()
    assert all_passed(validate_mackey(L2))


@pytest.mark.parametrize("mode", [p_local(2), p_local(3), RATIONAL, INVERT_2])
def test_localize_twice_equals_once(mode):
    G = group("S3")
    once = localize_functor(tate_functor(G), mode)
    twice = localize_functor(once, mode)
    for H in G.subgroups:
        assert once.value(H).factors == twice.value(H).factors


@pytest.mark.parametrize("mode", [p_local(2), p_local(3), INVERT_2])
def test_localization_commutes_with_colimit(mode):
    G = group("S3")
    M = tate_functor(G)
    fam = parse_family(G, "proper")
    A, _ = family_limit(M, fam, "colim", mode)
    B, _ = family_limit(localize_functor(M, mode), fam, "colim", mode)
    assert (A.free_rank, A.torsion) == (B.free_rank, B.torsion)


# Swan


@pytest.mark.parametrize("name", ["C2", "S3", "A4"])
def test_swan_on_tate(name):
    G = group(name)
    res = swan_vanishing_check(tate_module(G))
    assert res.passed
    assert res.details["acts_by"] == G.order
    assert res.details["vanishes_after_inverting"]


def test_swan_zero_module():
    G = group("S3")
    green = fixed_point_green(G)
    assert swan_vanishing_check(scalar_module(green, zero_functor(G))).passed


def test_swan_precondition():
    G = group("S3")
    with pytest.raises(PreconditionViolated):
        swan_vanishing_check(GreenModule.regular(fixed_point_green(G)))


def test_swan_detects_nonvanishing():
    # value Z/4 at C2 with [F] acting by 2: not killed
    G = group("C2")
    vals = {0: FgAbelianGroup(0), 1: FgAbelianGroup(1, [[4]])}
    e = np.zeros((0, 1), dtype=np.int64)
    M = MackeyFunctor(G, vals, {(0, 0): AbHom(vals[0], vals[0], np.zeros((0, 0))),
                                (1, 1): AbHom(vals[1], vals[1], [[1]]),
                                (0, 1): AbHom(vals[1], vals[0], e)},
                      {(0, 0): AbHom(vals[0], vals[0], np.zeros((0, 0))),
                       (1, 1): AbHom(vals[1], vals[1], [[1]]),
                       (0, 1): AbHom(vals[0], vals[1], e.T)},
                      {(f, H): AbHom(vals[H], vals[H], np.eye(vals[H].ngens, dtype=np.int64))
                       for f in range(2) for H in range(2)})
    res = swan_vanishing_check(scalar_module(fixed_point_green(G), M))
    assert not res.passed


# fixtures


def test_fixture_round_trip(tmp_path):
    G = group("A4")
    M = fixed_point_functor(G)
    data = mackey_to_dict(M, "A4")
    f = tmp_path / "m.json"
    f.write_text(json.dumps(data))
    back = load_mackey_fixture(f)
    assert mackey_to_dict(back, "A4") == data


def test_shipped_fixtures_load():
    for name in ["a4_fixed_point", "c2_tate", "s3_tate", "a4_tate"]:
        M = load_mackey_fixture(FIXTURES / f"{name}.json")
        assert all_passed(validate_mackey(M))


def test_fixture_errors(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{oops")
    with pytest.raises(FixtureError):
        load_mackey_fixture(f)
    with pytest.raises(FixtureError):
        mackey_from_dict({"group": "C2", "values": {}})
    data = mackey_to_dict(fixed_point_functor(group("C2")), "C2")
    del data["ind"]["0,1"]
    with pytest.raises(FixtureError):
        mackey_from_dict(data)
