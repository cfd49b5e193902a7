"""Induction, restriction, conjugation and the lattice pairing on twisted categories.

Every functor here is a small descriptor object with ``apply`` (morphisms),
``apply_object`` (ranks) and ``k0_multiplier``.  Block layouts:

* ``Res``: rows indexed by target representative, columns by source
  representative, both in RepSystem order;
* ``Theta``: lattice index outer, object index inner;
* lattice induction: coset index outer, lattice index inner.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import prod
from typing import Callable, Iterable, Sequence

import numpy as np

from .checks import CheckResult, CounterexampleFound, merge
from .groups import NotNested, SubgroupRef, double_coset_reps, left_coset_reps
from .twisted import ContextMismatch, SupportViolation, TGMorphism, TwistedCategory
from .zalgebra import (
    GroupMismatch,
    Lattice,
    averaged_morphism,
    identity,
    ikron,
    imatmul,
    lattice_induce,
    lattice_restrict,
    regular_lattice,
    rmatrix_identity,
    sign_lattice,
    trivial_lattice,
)


class IncompatibleRepSystems(ValueError):
    pass


# representative systems


class RepSystem:
    """Ordered left coset representatives of ``I`` in ``J``."""

    def __init__(self, J: SubgroupRef, I: SubgroupRef, reps: Sequence[int] | None = None):
        if not I <= J:
            raise NotNested(f"{I!r} is not contained in {J!r}")
        self.J, self.I = J, I
        self.reps = tuple(reps) if reps is not None else left_coset_reps(J, I)
        G = J.parent
        if len(self.reps) != J.order // I.order:
            raise ValueError(f"expected {J.order // I.order} representatives, got {len(self.reps)}")
        seen = set()
        for a in self.reps:
            if a not in J:
                raise ValueError(f"representative {a} is not in {J!r}")
            coset = frozenset(G.m(a, i) for i in I.members)
            if coset in seen:
                raise ValueError(f"two representatives of the coset of {a}")
            seen.add(coset)

    @property
    def r(self) -> int:
        return len(self.reps)

    def __iter__(self):
        return iter(self.reps)

    def __len__(self):
        return len(self.reps)

    def __eq__(self, other):
        return isinstance(other, RepSystem) and (self.J, self.I, self.reps) == (other.J, other.I, other.reps)

    def __hash__(self):
        return hash(self.reps)

    def __repr__(self):
        return f"RepSystem(#{self.J.id}/#{self.I.id}, {list(self.reps)})"

    @cached_property
    def locate(self) -> dict[int, tuple[int, int]]:
        """``x -> (tau, i)`` with ``x = a_tau * i``."""
        G = self.J.parent
        out = {}
        for tau, a in enumerate(self.reps):
            for i in self.I.members:
                out[G.m(a, i)] = (tau, i)
        return out

    def shifted(self, shifts: Sequence[int]) -> "RepSystem":
        """``{a_lambda * i_lambda}``."""
        G = self.J.parent
        return RepSystem(self.J, self.I, [G.m(a, i) for a, i in zip(self.reps, shifts)])

    def conjugated(self, f: int) -> "RepSystem":
        G = self.J.parent
        return RepSystem(self.J.conjugate(f), self.I.conjugate(f), [G.conj(f, a) for a in self.reps])


def product_reps(outer: RepSystem, inner: RepSystem) -> RepSystem:
    """Representatives ``a_mu b_nu`` of K/I from K/J and J/I, ordered with ``nu`` outermost."""
    if outer.I != inner.J:
        raise IncompatibleRepSystems("representative systems do not chain")
    G = outer.J.parent
    reps = [G.m(a, b) for b in inner.reps for a in outer.reps]
    return RepSystem(outer.J, inner.I, reps)


# functors


class Functor:
    source: SubgroupRef
    target: SubgroupRef

    def apply_object(self, rank: int) -> int:
        return rank * self.k0_multiplier

    @property
    def k0_multiplier(self) -> int:
        raise NotImplementedError

    def apply(self, phi: TGMorphism) -> TGMorphism:
        raise NotImplementedError

    def __call__(self, phi: TGMorphism) -> TGMorphism:
        if phi.ctx.subgroup != self.source:
            raise ContextMismatch(f"{self!r} expects morphisms over #{self.source.id}, got #{phi.ctx.subgroup.id}")
        return self.apply(phi)

    def __mul__(self, other: "Functor") -> "Composite":
        return Composite(self, other)


class Identity(Functor):
    def __init__(self, H: SubgroupRef):
        self.source = self.target = H

    def __repr__(self):
        return f"Id(#{self.source.id})"

    @property
    def k0_multiplier(self) -> int:
        return 1

    def apply(self, phi):
        return phi


class Ind(Functor):
    """Inclusion of the category over I into the one over J."""

    def __init__(self, I: SubgroupRef, J: SubgroupRef):
        if not I <= J:
            raise NotNested(f"{I!r} is not contained in {J!r}")
        self.source, self.target = I, J

    def __repr__(self):
        return f"Ind(#{self.source.id}->#{self.target.id})"

    @property
    def k0_multiplier(self) -> int:
        return 1

    def apply(self, phi):
        return phi.recontext(phi.ctx.over(self.target))


class Res(Functor):
    def __init__(self, reps: RepSystem):
        self.reps = reps
        self.source, self.target = reps.J, reps.I

    @classmethod
    def default(cls, J: SubgroupRef, I: SubgroupRef) -> "Res":
        return cls(RepSystem(J, I))

    def __repr__(self):
        return f"Res(#{self.source.id}->#{self.target.id}, {list(self.reps.reps)})"

    @property
    def k0_multiplier(self) -> int:
        return self.reps.r

    def apply(self, phi):
        ctx = phi.ctx
        G = ctx.group
        r, n, m = self.reps.r, phi.dom, phi.cod
        d = ctx.ring.rank
        loc = self.reps.locate
        out: dict[int, np.ndarray] = {}
        for g, pg in phi.terms:
            for lam, a in enumerate(self.reps.reps):
                # block (tau, lam) of component i carries a_lam^*(phi^g) when g = a_tau i a_lam^-1
                tau, i = loc[G.m(g, a)]
                tw = ctx.apply_twist(a, pg)
                if i not in out:
                    out[i] = np.zeros((d, r * m, r * n), dtype=tw.dtype)
                elif tw.dtype == object and out[i].dtype != object:
                    out[i] = out[i].astype(object)
                out[i][:, tau * m:(tau + 1) * m, lam * n:(lam + 1) * n] = tw
        return TGMorphism(ctx.over(self.target), r * n, r * m, out)


class Conj(Functor):
    """``c_f`` from the category over I to the one over ``f I f^-1``."""

    def __init__(self, f: int, I: SubgroupRef):
        self.f = f
        self.source, self.target = I, I.conjugate(f)

    def __repr__(self):
        return f"c_{self.f}(#{self.source.id}->#{self.target.id})"

    @property
    def k0_multiplier(self) -> int:
        return 1

    def apply(self, phi):
        ctx = phi.ctx
        G = ctx.group
        finv = G.inverse(self.f)
        out = {G.conj(self.f, i): ctx.apply_twist(finv, m) for i, m in phi.terms}
        return TGMorphism(ctx.over(self.target), phi.dom, phi.cod, out)


class Theta(Functor):
    """``Theta(L, -)``, or with a lattice map ``M: L -> L2`` the morphism part ``Theta(M, -)``."""

    def __init__(self, lattice: Lattice, M: np.ndarray | None = None, target_lattice: Lattice | None = None):
        self.lattice = lattice
        self.target_lattice = target_lattice or lattice
        if self.target_lattice.group != lattice.group:
            raise GroupMismatch("lattices over different subgroups")
        self.M = identity(lattice.rank) if M is None else np.asarray(M)
        if self.M.shape != (self.target_lattice.rank, lattice.rank):
            raise GroupMismatch("lattice map has the wrong shape")
        self.source = self.target = lattice.group

    def __repr__(self):
        return f"Theta(rank {self.lattice.rank} over #{self.source.id})"

    @property
    def k0_multiplier(self) -> int:
        return self.lattice.rank

    def apply_object(self, rank):
        return rank * self.lattice.rank

    def apply(self, phi):
        ctx = phi.ctx
        m1, m2 = self.lattice.rank, self.target_lattice.rank
        out = {}
        for i, pi in phi.terms:
            coeff = imatmul(self.M, self.lattice.rep[i])
            out[i] = np.stack([ikron(coeff, pi[k]) for k in range(pi.shape[0])])
        return TGMorphism(ctx, m1 * phi.dom, m2 * phi.cod, out)


class Composite(Functor):
    """``fs[0] o fs[1] o ...``; the last functor is applied first."""

    def __init__(self, *fs: Functor):
        flat = []
        for F in fs:
            flat.extend(F.parts if isinstance(F, Composite) else [F])
        for outer, inner in zip(flat, flat[1:]):
            if inner.target != outer.source:
                raise ContextMismatch(f"{outer!r} cannot follow {inner!r}")
        self.parts = tuple(flat)
        self.source, self.target = flat[-1].source, flat[0].target

    def __repr__(self):
        return " o ".join(map(repr, self.parts))

    @property
    def k0_multiplier(self) -> int:
        return prod(F.k0_multiplier for F in self.parts)

    def apply_object(self, rank):
        for F in reversed(self.parts):
            rank = F.apply_object(rank)
        return rank

    def apply(self, phi):
        for F in reversed(self.parts):
            phi = F.apply(phi)
        return phi


class Sum(Functor):
    """Objectwise direct sum of functors with a common source and target."""

    def __init__(self, *fs: Functor):
        if not fs:
            raise ValueError("empty sum")
        for F in fs:
            if F.source != fs[0].source or F.target != fs[0].target:
                raise ContextMismatch("summands must share source and target")
        self.parts = tuple(fs)
        self.source, self.target = fs[0].source, fs[0].target

    def __repr__(self):
        return " + ".join(f"({F!r})" for F in self.parts)

    @property
    def k0_multiplier(self) -> int:
        return sum(F.k0_multiplier for F in self.parts)

    def apply_object(self, rank):
        return sum(F.apply_object(rank) for F in self.parts)

    def apply(self, phi):
        images = [F.apply(phi) for F in self.parts]
        return images[0].ctx.direct_sum(*images)


def k0_multiplier(F: Functor) -> int:
    return F.k0_multiplier


def ind_apply(I: SubgroupRef, J: SubgroupRef, x):
    if isinstance(x, int):
        return x
    if any(g not in I for g in x.support):
        raise SupportViolation("morphism support leaves the source subgroup")
    return Ind(I, J).apply(x)


def res_apply(reps: RepSystem, x):
    F = Res(reps)
    return F.apply_object(x) if isinstance(x, int) else F(x)


def conj_apply(f: int, I: SubgroupRef, x):
    if isinstance(x, int):
        return x
    if any(g not in I for g in x.support):
        raise SupportViolation("morphism support leaves the source subgroup")
    return Conj(f, I).apply(x.recontext(x.ctx.over(I)) if x.ctx.subgroup != I else x)


def theta_apply(L: Lattice, x, M: np.ndarray | None = None, L2: Lattice | None = None):
    """Object rank ``n -> m n``; morphism ``phi -> Theta(M, phi)``."""
    if isinstance(x, int):
        return x * L.rank
    if x.ctx.subgroup != L.group:
        raise GroupMismatch("lattice and morphism live over different subgroups")
    return Theta(L, M, L2).apply(x)


# witnesses


def _identity_blocks(ctx: TwistedCategory, rows: int, cols: int, placements: Iterable[tuple[int, int, int]],
                     n: int) -> TGMorphism:
    """Morphism whose component at ``g`` has identity ``n x n`` blocks at (row block, col block)."""
    d = ctx.ring.rank
    out: dict[int, np.ndarray] = {}
    unit = rmatrix_identity(ctx.ring, n)
    for g, rb, cb in placements:
        if g not in out:
            out[g] = np.zeros((d, rows * n, cols * n), dtype=np.int64)
        out[g][:, rb * n:(rb + 1) * n, cb * n:(cb + 1) * n] = unit
    return TGMorphism(ctx, cols * n, rows * n, out)


@dataclass
class NaturalIsoWitness:
    """A family ``w_A: F(A) -> G(A)`` with explicit inverses."""

    name: str
    source: Functor
    target: Functor
    component: Callable[[TwistedCategory, int], tuple[TGMorphism, TGMorphism]]

    def verify(self, ctx: TwistedCategory, rng: np.random.Generator, samples: int,
               ranks: Sequence[int] = (0, 1, 2, 3)) -> CheckResult:
        """Invertibility on every rank in ``ranks`` and naturality on ``samples`` random morphisms."""
        base = ctx.over(self.source.source)
        tgt = ctx.over(self.source.target)
        checked = 0
        for n in ranks:
            if self.source.apply_object(n) != self.target.apply_object(n):
                return CheckResult(self.name, False, checked, counterexample={"object_rank": n, "reason": "object mismatch"})
            w, winv = self.component(tgt, n)
            if not tgt.verify_inverse_pair(w, winv):
                return CheckResult(self.name, False, checked, counterexample={"object_rank": n, "reason": "not invertible"})
            checked += 1
        for _ in range(samples):
            a, b = (int(x) for x in rng.choice(ranks, size=2))
            phi = base.random_morphism(rng, a, b)
            wa, _ = self.component(tgt, a)
            wb, _ = self.component(tgt, b)
            lhs = tgt.compose(self.target(phi), wa)
            rhs = tgt.compose(wb, self.source(phi))
            checked += 1
            if lhs != rhs:
                return CheckResult(self.name, False, checked,
                                   counterexample={"reason": "naturality", "morphism": _serial(phi)})
        return CheckResult(self.name, True, checked)


def xi_witness(reps: RepSystem, reps2: RepSystem) -> NaturalIsoWitness:
    """``Res -> Res'`` for two representative systems of the same cosets."""
    if (reps.J, reps.I) != (reps2.J, reps2.I):
        raise IncompatibleRepSystems("representative systems over different subgroup pairs")
    G = reps.J.parent
    r = reps.r
    # identity at i = a'_tau^-1 a_lambda when that lies in I
    place = []
    for tau, b in enumerate(reps2.reps):
        binv = G.inverse(b)
        for lam, a in enumerate(reps.reps):
            i = G.m(binv, a)
            if i in reps.I:
                place.append((i, tau, lam))
    inv_place = [(G.inverse(i), lam, tau) for i, tau, lam in place]

    def component(ctx, n):
        return _identity_blocks(ctx, r, r, place, n), _identity_blocks(ctx, r, r, inv_place, n)

    return NaturalIsoWitness("xi", Res(reps), Res(reps2), component)


def eta_witness(f: int, I: SubgroupRef) -> NaturalIsoWitness:
    """``Id -> c_f`` for ``f`` in I: identity concentrated at ``f``."""
    if f not in I:
        raise ValueError(f"element {f} is not in {I!r}")
    finv = I.parent.inverse(f)

    def component(ctx, n):
        return _identity_blocks(ctx, 1, 1, [(f, 0, 0)], n), _identity_blocks(ctx, 1, 1, [(finv, 0, 0)], n)

    return NaturalIsoWitness("eta", Identity(I), Conj(f, I), component)


def zeta_witness(L: Lattice, reps: RepSystem) -> NaturalIsoWitness:
    """``Ind_I^J o Theta(L) o Res_I^J  ->  Theta(Ind L)`` with shared representatives.

    The summand ``(k, lambda)`` on the left is sent to ``(lambda, k)`` on the
    right through the group element ``a_lambda``.
    """
    I, J = reps.I, reps.J
    if L.group != I:
        raise GroupMismatch("lattice must live over the smaller subgroup")
    G = J.parent
    m, r = L.rank, reps.r
    place = [(a, lam * m + k, k * r + lam) for lam, a in enumerate(reps.reps) for k in range(m)]
    inv_place = [(G.inverse(a), col, row) for a, row, col in place]
    left = Composite(Ind(I, J), Theta(L), Res(reps))
    right = Theta(lattice_induce(L, J, reps.reps))

    def component(ctx, n):
        return (_identity_blocks(ctx, r * m, r * m, place, n),
                _identity_blocks(ctx, r * m, r * m, inv_place, n))

    return NaturalIsoWitness("zeta", left, right, component)


def _serial(phi: TGMorphism) -> dict:
    return {"subgroup": phi.ctx.subgroup.id, "dom": phi.dom, "cod": phi.cod,
            "terms": [[int(g), np.moveaxis(np.asarray(m), 0, 2).tolist()] for g, m in phi.terms]}


# extensional equality


def functors_agree(F1: Functor, F2: Functor, ctx: TwistedCategory, rng: np.random.Generator,
                   samples: int, ranks: Sequence[int] = (0, 1, 2, 3), name: str = "") -> CheckResult:
    """Strict equality on all ranks in ``ranks`` (objects and identities) and on random morphisms."""
    if F1.source != F2.source or F1.target != F2.target:
        return CheckResult(name, False, counterexample={"reason": "different source or target"})
    base = ctx.over(F1.source)
    checked = 0
    for n in ranks:
        if F1.apply_object(n) != F2.apply_object(n):
            return CheckResult(name, False, checked, counterexample={"object_rank": n})
        idn = base.identity(n)
        if F1(idn) != F2(idn):
            return CheckResult(name, False, checked, counterexample={"morphism": _serial(idn)})
        checked += 1
    for _ in range(samples):
        a, b = (int(x) for x in rng.choice(ranks, size=2))
        phi = base.random_morphism(rng, a, b)
        checked += 1
        if F1(phi) != F2(phi):
            return CheckResult(name, False, checked, counterexample={"morphism": _serial(phi)})
    return CheckResult(name, True, checked)


def functoriality_check(F: Functor, ctx: TwistedCategory, rng: np.random.Generator, samples: int,
                        ranks: Sequence[int] = (0, 1, 2, 3), name: str = "") -> CheckResult:
    """``F(id) = id`` on every rank and ``F(psi o phi) = F(psi) o F(phi)`` on samples."""
    base = ctx.over(F.source)
    tgt = ctx.over(F.target)
    checked = 0
    for n in ranks:
        if F(base.identity(n)) != tgt.identity(F.apply_object(n)):
            return CheckResult(name, False, checked, counterexample={"reason": "identity", "object_rank": n})
        checked += 1
    for _ in range(samples):
        a, b, c = (int(x) for x in rng.choice(ranks, size=3))
        phi = base.random_morphism(rng, a, b)
        psi = base.random_morphism(rng, b, c)
        checked += 1
        if F(base.compose(psi, phi)) != tgt.compose(F(psi), F(phi)):
            return CheckResult(name, False, checked,
                               counterexample={"reason": "composition", "phi": _serial(phi), "psi": _serial(psi)})
    return CheckResult(name, True, checked)


# Mackey axioms


AXIOM_NAMES = {
    1: "identities",
    2: "res o res = res",
    3: "ind o ind = ind",
    4: "c_f o c_g = c_fg",
    5: "res commutes with conjugation",
    6: "ind commutes with conjugation",
    7: "double coset formula",
}


def axiom_tuples(k: int, G) -> list[tuple]:
    """All admissible subgroup tuples for axiom ``k`` (elements are not part of the tuple)."""
    S = G.subgroups
    if k in (1, 4):
        return [(I,) for I in S]
    if k in (2, 3):
        return [(I, J, K) for K in S for J in K.subgroups for I in J.subgroups]
    if k in (5, 6):
        return [(I, J) for J in S for I in J.subgroups]
    if k == 7:
        return [(K, J, I) for K in S for J in K.subgroups for I in K.subgroups]
    raise ValueError(f"axiom number must be 1..7, got {k}")


def double_coset_decomposition(K: SubgroupRef, J: SubgroupRef, I: SubgroupRef):
    """The data realizing the double coset formula for ``Res_J^K o Ind_I^K``.

    Returns ``(reps_KJ, terms)``: a representative system of K/J built from
    I-orbits, and for each double coset representative ``f`` the functor
    ``Ind o c_f o Res`` from the category over I to the one over J.
    """
    G = K.parent
    fs = double_coset_reps(K, J, I)
    reps, terms = [], []
    for f in fs:
        finv = G.inverse(f)
        H = J.conjugate(finv).intersection(I)
        inner = RepSystem(I, H)
        reps.extend(G.m(a, finv) for a in inner.reps)
        c = Conj(f, H)
        terms.append(Composite(Ind(c.target, J), c, Res(inner)))
    return RepSystem(K, J, reps), terms


def mackey_axiom_check(k: int, ctx: TwistedCategory, tup: tuple, rng: np.random.Generator,
                       samples: int = 10, ranks: Sequence[int] = (0, 1, 2, 3),
                       elements: Sequence[int] | None = None) -> CheckResult:
    """Check axiom ``k`` for one subgroup tuple; see :func:`axiom_tuples` for the shapes.

    ``elements`` restricts the conjugating elements for axioms 4 to 6
    (default: the whole group).
    """
    G = ctx.group
    ids = [H.id for H in tup]
    name = f"axiom {k} on {ids}"
    els = list(range(G.order)) if elements is None else list(elements)
    results = []

    def run(F1, F2, extra=None):
        res = functors_agree(F1, F2, ctx, rng, samples, ranks, name)
        if extra and res.counterexample is not None:
            res.counterexample.update(extra)
        results.append(res)
        return res.passed

    if k == 1:
        (I,) = tup
        if not run(Ind(I, I), Identity(I), {"functor": "Ind_I^I"}):
            return merge(name, results)
        if not run(Res.default(I, I), Identity(I), {"functor": "Res_I^I"}):
            return merge(name, results)
        for f in I.members:
            res = eta_witness(f, I).verify(ctx, rng, samples, ranks)
            if res.counterexample is not None:
                res.counterexample["element"] = f
            res.name = name
            results.append(res)
            if not res.passed:
                break
    elif k == 2:
        I, J, K = tup
        outer, inner = RepSystem(K, J), RepSystem(J, I)
        run(Composite(Res(inner), Res(outer)), Res(product_reps(outer, inner)))
    elif k == 3:
        I, J, K = tup
        run(Composite(Ind(J, K), Ind(I, J)), Ind(I, K))
    elif k == 4:
        (I,) = tup
        for f in els:
            for g in els:
                if not run(Composite(Conj(f, I.conjugate(g)), Conj(g, I)), Conj(G.m(f, g), I),
                           {"f": f, "g": g}):
                    return merge(name, results)
    elif k == 5:
        I, J = tup
        reps = RepSystem(J, I)
        for f in els:
            lhs = Composite(Res(reps.conjugated(f)), Conj(f, J))
            rhs = Composite(Conj(f, I), Res(reps))
            if not run(lhs, rhs, {"f": f}):
                break
    elif k == 6:
        I, J = tup
        for f in els:
            lhs = Composite(Ind(I.conjugate(f), J.conjugate(f)), Conj(f, I))
            rhs = Composite(Conj(f, J), Ind(I, J))
            if not run(lhs, rhs, {"f": f}):
                break
    elif k == 7:
        K, J, I = tup
        reps, terms = double_coset_decomposition(K, J, I)
        run(Composite(Res(reps), Ind(I, K)), Sum(*terms))
    else:
        raise ValueError(f"axiom number must be 1..7, got {k}")
    return merge(name, results)


def mackey_axiom_suite(ctx: TwistedCategory, rng: np.random.Generator, samples: int = 10,
                       axioms: Iterable[int] = range(1, 8), ranks: Sequence[int] = (0, 1, 2, 3),
                       elements: Sequence[int] | None = None) -> dict[int, CheckResult]:
    """Every admissible tuple for each axiom; one merged result per axiom."""
    out = {}
    for k in axioms:
        results = [mackey_axiom_check(k, ctx, t, rng, samples, ranks, elements) for t in axiom_tuples(k, ctx.group)]
        merged = merge(f"axiom {k}", results)
        merged.details = {"tuples": len(results), "title": AXIOM_NAMES[k]}
        out[k] = merged
    return out


# Frobenius reciprocity


def lattice_pool(H: SubgroupRef) -> list[Lattice]:
    """Small test lattices over H: trivial, sign, regular and permutation lattices."""
    pool = [trivial_lattice(H), sign_lattice(H), regular_lattice(H)]
    for P in H.subgroups:
        if 1 < P.order < H.order:
            pool.append(lattice_induce(trivial_lattice(P), H))
            break
    return pool


def random_lattice_map(rng: np.random.Generator, L1: Lattice, L2: Lattice, low: int = -2, high: int = 2) -> np.ndarray:
    X = rng.integers(low, high + 1, size=(L2.rank, L1.rank))
    return averaged_morphism(X, L1, L2)


def frobenius_check(law: int, ctx: TwistedCategory, I: SubgroupRef, J: SubgroupRef,
                    rng: np.random.Generator, samples: int = 100,
                    ranks: Sequence[int] = (0, 1, 2), reps: RepSystem | None = None) -> CheckResult:
    """Check one reciprocity law for ``I <= J``.

    Law 1: ``Ind(Theta(Res M, phi)) == Theta(M, Ind phi)`` for lattice maps
    ``M`` over J and morphisms ``phi`` over I (strict equality).

    Law 2: ``Ind(Theta(M, Res phi))`` and ``Theta(Ind M, phi)`` agree in rank
    and are related by the explicit natural isomorphism of
    :func:`zeta_witness`; the naturality square is checked exactly, including
    for non-identity lattice maps ``M``.
    """
    if not I <= J:
        raise NotNested(f"{I!r} is not contained in {J!r}")
    reps = reps or RepSystem(J, I)
    name = f"frobenius law {law} on #{I.id} <= #{J.id}"
    checked = 0
    if law == 1:
        pool = lattice_pool(J)
        base = ctx.over(I)
        for s in range(samples):
            L1 = pool[s % len(pool)]
            L2 = pool[(s // len(pool)) % len(pool)]
            M = random_lattice_map(rng, L1, L2)
            a, b = (int(x) for x in rng.choice(ranks, size=2))
            phi = base.random_morphism(rng, a, b)
            lhs = Ind(I, J)(Theta(lattice_restrict(L1, I), M, lattice_restrict(L2, I))(phi))
            rhs = Theta(L1, M, L2)(Ind(I, J)(phi))
            checked += 1
            if lhs != rhs:
                return CheckResult(name, False, checked, counterexample={"lattice_map": M.tolist(), "morphism": _serial(phi)})
        return CheckResult(name, True, checked)
    if law != 2:
        raise ValueError("law must be 1 or 2")
    pool = lattice_pool(I)
    base = ctx.over(J)
    tgt = ctx.over(J)
    k0 = {}
    for L in pool:
        w = zeta_witness(L, reps)
        k0[L.rank] = (w.source.k0_multiplier, w.target.k0_multiplier)
        if k0[L.rank][0] != k0[L.rank][1]:
            return CheckResult(name, False, checked, counterexample={"reason": "k0 multipliers differ", "rank": L.rank})
        for n in ranks:
            z, zi = w.component(tgt, n)
            checked += 1
            if not tgt.verify_inverse_pair(z, zi):
                return CheckResult(name, False, checked, counterexample={"reason": "zeta not invertible", "rank": n})
    r = reps.r
    for s in range(samples):
        L1 = pool[s % len(pool)]
        L2 = pool[(s // len(pool)) % len(pool)]
        M = random_lattice_map(rng, L1, L2)
        IndL1 = lattice_induce(L1, J, reps.reps)
        IndL2 = lattice_induce(L2, J, reps.reps)
        IndM = ikron(identity(r), M)
        a, b = (int(x) for x in rng.choice(ranks, size=2))
        phi = base.random_morphism(rng, a, b)
        left = Ind(I, J)(Theta(L1, M, L2)(Res(reps)(phi)))
        right = Theta(IndL1, IndM, IndL2)(phi)
        za, _ = zeta_witness(L1, reps).component(tgt, a)
        zb, _ = zeta_witness(L2, reps).component(tgt, b)
        checked += 1
        if tgt.compose(right, za) != tgt.compose(zb, left):
            return CheckResult(name, False, checked, counterexample={"lattice_map": M.tolist(), "morphism": _serial(phi)})
    return CheckResult(name, True, checked, details={"k0": {str(k): v[0] for k, v in sorted(k0.items())}})


def regular_identity_check(ctx: TwistedCategory, F: SubgroupRef, rng: np.random.Generator,
                           samples: int = 50, ranks: Sequence[int] = (0, 1, 2, 3)) -> CheckResult:
    """``Ind_1^F o Res_1^F`` against ``Theta(Z[F])``: equal multipliers and a verified witness."""
    one = F.parent.trivial
    reps = RepSystem(F, one)
    left = Composite(Ind(one, F), Res(reps))
    right = Theta(regular_lattice(F, reps.reps))
    name = f"regular identity on #{F.id}"
    if left.k0_multiplier != right.k0_multiplier or left.k0_multiplier != F.order:
        return CheckResult(name, False, counterexample={"k0": [left.k0_multiplier, right.k0_multiplier]})
    w = zeta_witness(trivial_lattice(one), reps)
    # Theta of the trivial rank-one lattice is the identity functor
    same = functors_agree(w.source, left, ctx, rng, max(1, samples // 5), ranks, name)
    if not same.passed:
        return same
    res = w.verify(ctx, rng, samples, ranks)
    res.name = name
    res.details = {"k0": left.k0_multiplier}
    return res
