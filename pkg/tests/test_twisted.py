import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from greenmackey.twisted import ContextMismatch, SupportViolation, TGObject, TwistedCategory
from greenmackey.zalgebra import DimensionMismatch, builtin_action, builtin_ring

import oracles
from conftest import category, group, sub


def twisted_oracle(ctx, psi, phi):
    """Composition straight from the defining sum, entry by entry with Python ints."""
    G, R = ctx.group, ctx.ring
    sig = ctx.action.sigma
    S = R.structure.tolist()
    out = {}
    for h, ph in psi.support.items():
        for k, pk in phi.support.items():
            g = G.m(h, k)
            acc = out.setdefault(g, [[[0] * R.rank for _ in range(phi.dom)] for _ in range(psi.cod)])
            for i in range(psi.cod):
                for l in range(phi.dom):
                    for j in range(psi.dom):
                        a = [int(v) for v in np.asarray(sig[k], dtype=object).dot(ph[:, i, j].astype(object))]
                        b = [int(v) for v in pk[:, j, l]]
                        p = oracles.ring_product(S, a, b)
                        acc[i][l] = [x + y for x, y in zip(acc[i][l], p)]
    return {g: m for g, m in out.items() if any(any(v) for row in m for v in row)}


def as_nested(phi):
    return {g: np.moveaxis(m, 0, 2).tolist() for g, m in phi.support.items()}


# basics


def test_objects():
    assert TGObject(3).rank == 3
    with pytest.raises(ValueError):
        TGObject(-1)


@pytest.mark.parametrize("name,ring", [("C2", "Z[i]"), ("S3", "Z[i]"), ("A4", "Z[C3]"), ("S3", "Zn-perm")])
def test_identity_laws(name, ring, rng):
    ctx = category(name, ring)
    for _ in range(30):
        a, b = (int(x) for x in rng.integers(0, 4, size=2))
        phi = ctx.random_morphism(rng, a, b)
        assert ctx.identity(b) @ phi == phi
        assert phi @ ctx.identity(a) == phi


def test_gaussian_c2_example():
    # (i t) o (i t) = t^*(i) i t^2 = (-i)(i) = 1
    ctx = category("C2", "Z[i]")
    it = ctx.from_literal(1, 1, [(1, [[[0, 1]]])])
    assert ctx.is_identity(it @ it)
    assert ctx.verify_inverse_pair(it, it)


def test_gaussian_c2_untwisted_contrast():
    ctx = category("C2", "Z[i]", trivial=True)
    it = ctx.from_literal(1, 1, [(1, [[[0, 1]]])])
    assert it @ it == ctx.from_literal(1, 1, [(0, [[[-1, 0]]])])


def test_twist_reverses_products():
    # g^* is a ring map, and (gh)^* = h^* g^*
    ctx = category("S3", "Zn-perm")
    G = ctx.group
    sig = ctx.action.sigma
    for g in range(G.order):
        for h in range(G.order):
            assert np.array_equal(sig[G.m(g, h)], sig[h] @ sig[g])


@pytest.mark.parametrize("name,ring,trivial", [
    ("C2", "Z[i]", False), ("S3", "Z[i]", False), ("S3", "Zn-perm", False),
    ("A4", "Z[C3]", False), ("C3", "Z", True),
])
def test_composition_matches_oracle(name, ring, trivial, rng):
    ctx = category(name, ring, trivial)
    for _ in range(40):
        a, b, c = (int(x) for x in rng.integers(1, 4, size=3))
        phi = ctx.random_morphism(rng, a, b)
        psi = ctx.random_morphism(rng, b, c)
        assert as_nested(psi @ phi) == twisted_oracle(ctx, psi, phi)


@pytest.mark.parametrize("name", ["C2", "C3", "S3"])
def test_trivial_action_matches_group_ring_oracle(name, rng):
    ctx = category(name, "Z[i]", trivial=True)
    G = ctx.group
    mul = [[G.m(h, k) for k in range(G.order)] for h in range(G.order)]
    S = ctx.ring.structure.tolist()
    for _ in range(40):
        phi = ctx.random_morphism(rng, 2, 3)
        psi = ctx.random_morphism(rng, 3, 2)
        want = oracles.group_ring_matmul(S, mul, oracles.to_sparse(psi.support), oracles.to_sparse(phi.support), 2, 3, 2)
        assert oracles.to_sparse((psi @ phi).support) == want


def test_associativity_on_many_triples(rng):
    ctxs = [category("S3", "Z[i]"), category("D4", "ZxZ-swap"), category("A4", "Z[C3]")]
    count = 0
    for ctx in ctxs:
        for _ in range(70):
            a, b, c, d = (int(x) for x in rng.integers(0, 4, size=4))
            f = ctx.random_morphism(rng, a, b)
            g = ctx.random_morphism(rng, b, c)
            h = ctx.random_morphism(rng, c, d)
            assert (h @ g) @ f == h @ (g @ f)
            count += 1
    assert count >= 200


def test_bilinearity(rng):
    ctx = category("S3", "Z[i]")
    for _ in range(40):
        f1, f2 = ctx.random_morphism(rng, 2, 2), ctx.random_morphism(rng, 2, 2)
        g = ctx.random_morphism(rng, 2, 3)
        assert g @ (f1 + f2) == g @ f1 + g @ f2
        assert f1 + ctx.zero(2, 2) == f1
        assert (f1 + f2) @ ctx.zero(3, 2) == ctx.zero(3, 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_support_stays_in_subgroup(seed):
    G = group("S3")
    rng = np.random.default_rng(seed)
    H = G.subgroups[int(rng.integers(0, len(G.subgroups)))]
    ctx = category("S3", "Z[i]").over(H)
    f = ctx.random_morphism(rng, 2, 2)
    g = ctx.random_morphism(rng, 2, 2)
    prod = {G.m(h, k) for h in g.support for k in f.support}
    assert set((g @ f).support) <= prod <= set(H.members)


def test_support_violation():
    ctx = category("S3", "Z[i]").over(sub(group("S3"), 3))
    odd = next(g for g in range(6) if g not in ctx.subgroup)
    with pytest.raises(SupportViolation):
        ctx.morphism(1, 1, {odd: np.ones((2, 1, 1), dtype=np.int64)})


def test_dimension_and_context_errors(rng):
    ctx = category("S3", "Z[i]")
    with pytest.raises(DimensionMismatch):
        ctx.random_morphism(rng, 1, 2) @ ctx.random_morphism(rng, 1, 3)
    with pytest.raises(DimensionMismatch):
        ctx.identity(1) + ctx.identity(2)
    with pytest.raises(DimensionMismatch):
        ctx.morphism(1, 1, {0: np.ones((1, 1, 1), dtype=np.int64)})
    other = category("S3", "Z[i]", trivial=True)
    with pytest.raises(ContextMismatch):
        ctx.identity(1) @ other.identity(1)
    assert not ctx.verify_inverse_pair(ctx.identity(1), ctx.identity(2))


def test_zero_pruned_and_immutable():
    ctx = category("C2", "Z[i]")
    z = ctx.morphism(1, 1, {1: np.zeros((2, 1, 1), dtype=np.int64)})
    assert z.support == {} and z == ctx.zero(1, 1)
    with pytest.raises(AttributeError):
        z.dom = 3


def test_direct_sum_blocks(rng):
    ctx = category("S3", "Z[i]")
    f = ctx.random_morphism(rng, 1, 2)
    g = ctx.random_morphism(rng, 2, 1)
    s = ctx.direct_sum(f, g)
    assert (s.dom, s.cod) == (3, 3)
    for h, m in s.terms:
        if h in f.support:
            assert np.array_equal(m[:, :2, :1], f.support[h])
        if h in g.support:
            assert np.array_equal(m[:, 2:, 1:], g.support[h])
        assert not m[:, :2, 1:].any() and not m[:, 2:, :1].any()
    # sums compose blockwise
    f2, g2 = ctx.random_morphism(rng, 2, 2), ctx.random_morphism(rng, 1, 1)
    assert ctx.direct_sum(f2, g2) @ s == ctx.direct_sum(f2 @ f, g2 @ g)


def test_literal_round_trip(rng):
    ctx = category("A4", "Z[C3]")
    for _ in range(20):
        phi = ctx.random_morphism(rng, 2, 3)
        assert ctx.from_literal(2, 3, phi.to_literal()) == phi


def test_parse_element_forms():
    ctx = category("S3", "Z")
    G = ctx.group
    assert ctx.parse_element("") == 0
    assert ctx.parse_element("0") == G.generators[0]
    assert ctx.parse_element(list(G.elements[3])) == 3
    with pytest.raises(ValueError):
        ctx.parse_element(99)


def test_literal_repeated_terms_add():
    ctx = category("C2", "Z")
    f = ctx.from_literal(1, 1, [(1, [[[2]]]), (1, [[[3]]])])
    assert int(f.support[1][0, 0, 0]) == 5


def test_big_coefficients_stay_exact():
    ctx = category("C2", "Z[i]")
    big = 1 << 40
    f = ctx.from_literal(1, 1, [(0, [[[big, 0]]])])
    ff = f @ f @ f
    assert int(ff.support[0][0, 0, 0]) == big ** 3


def test_category_equality():
    G = group("S3")
    R = builtin_ring("Z[i]")
    act = builtin_action(G, R)
    assert TwistedCategory(act) == TwistedCategory(act)
    assert TwistedCategory(act) != TwistedCategory(act, G.trivial)
