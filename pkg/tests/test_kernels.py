"""The compiled and pure-Python kernels must agree exactly."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from greenmackey import _kernels_py as py
from greenmackey import kernels

try:
    from greenmackey import _ckernels as cy
except ImportError:  # pragma: no cover
    cy = None

from conftest import group

needs_ext = pytest.mark.skipif(cy is None, reason="compiled extension not built")


def test_selected_backend_is_known():
    assert kernels.BACKEND in ("cython", "python")


@needs_ext
@pytest.mark.parametrize("name", ["C2", "S3", "D4", "Q8", "A4", "S4"])
def test_backends_agree_on_group_data(name):
    G = group(name)
    gens = [G.elements[g] for g in G.generators]
    assert py.perm_closure(gens, G.degree, 200) == cy.perm_closure(gens, G.degree, 200)
    assert py.mul_table(list(G.elements)) == cy.mul_table(list(G.elements))
    tp = py.prepare(G.mul, G.inv)
    tc = cy.prepare(G.mul, G.inv)
    assert py.enumerate_subgroups(tp) == cy.enumerate_subgroups(tc)
    for J in G.subgroups:
        for I in J.subgroups:
            assert list(py.left_coset_reps(tp, J.members, I.members)) == \
                list(cy.left_coset_reps(tc, J.members, I.members))
            for K in G.subgroups[-1:]:
                assert list(py.double_coset_reps(tp, K.members, J.members, I.members)) == \
                    list(cy.double_coset_reps(tc, K.members, J.members, I.members))


@needs_ext
def test_closure_cap_respected_by_both():
    G = group("S4")
    gens = [G.elements[g] for g in G.generators]
    assert py.perm_closure(gens, 4, 10) is None
    assert cy.perm_closure(gens, 4, 10) is None


matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n), min_size=m, max_size=m)))


@needs_ext
@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_backends_agree(a):
    m, n = len(a), len(a[0])
    assert py.snf(a, m, n) == cy.snf(a, m, n)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_kernel_contract(a):
    m, n = len(a), len(a[0])
    u, d, v, ui, vi = py.snf(a, m, n)
    U, D, V, Ui, Vi = (np.array(x, dtype=object) for x in (u, d, v, ui, vi))
    A = np.array(a, dtype=object)
    assert (U.dot(A).dot(V) == D).all()
    assert (U.dot(Ui) == np.identity(m, dtype=object)).all()
    assert (V.dot(Vi) == np.identity(n, dtype=object)).all()
    diag = [D[i, i] for i in range(min(m, n))]
    assert all(x >= 0 for x in diag)
    for x, y in zip(diag, diag[1:]):
        assert (y == 0) or (x != 0 and y % x == 0)
    off = D.copy()
    for i in range(min(m, n)):
        off[i, i] = 0
    assert not off.any()
