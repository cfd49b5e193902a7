"""Twisted group additive categories over a ring with a right group action.

Objects are free modules, recorded by rank.  A morphism ``A -> B`` is a
finite formal sum of group elements with R-matrix coefficients; the
coefficient at ``g`` is stored as an integer array of shape
``(ring rank, rank B, rank A)``.  Composition twists the left factor:

    (psi o phi)^g = sum over hk = g of  k^*(psi^h) . phi^k
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .groups import FiniteGroup, SubgroupRef
from .zalgebra import (
    DimensionMismatch,
    RingAction,
    ZAlgebra,
    iadd,
    maxabs,
    ring_matmul,
    rmatrix,
    rmatrix_identity,
    twist_entries,
)


class SupportViolation(ValueError):
    pass


class ContextMismatch(ValueError):
    pass


@dataclass(frozen=True)
class TGObject:
    rank: int

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be non-negative")


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    if a.dtype == object and a.size and maxabs(a) < (1 << 62):
        a = a.astype(np.int64)
    a.setflags(write=False)
    return a


class TwistedCategory:
    """The category over ``action`` with supports restricted to ``subgroup``."""

    def __init__(self, action: RingAction, subgroup: SubgroupRef | None = None):
        self.action = action
        self.group: FiniteGroup = action.group
        self.ring: ZAlgebra = action.ring
        self.subgroup = subgroup if subgroup is not None else self.group.whole
        if self.subgroup.parent is not self.group:
            raise ContextMismatch("subgroup belongs to another group")

    def __repr__(self):
        return f"TwistedCategory({self.ring.name}, {self.group.name}, subgroup #{self.subgroup.id})"

    def __eq__(self, other):
        return (isinstance(other, TwistedCategory) and self.action is other.action
                and self.subgroup == other.subgroup)

    def __hash__(self):
        return hash((id(self.action), self.subgroup))

    def over(self, subgroup: SubgroupRef) -> "TwistedCategory":
        return TwistedCategory(self.action, subgroup)

    # construction

    def morphism(self, dom: int, cod: int, support: Mapping[int, np.ndarray]) -> "TGMorphism":
        return TGMorphism(self, dom, cod, support)

    def identity(self, rank: int) -> "TGMorphism":
        return TGMorphism(self, rank, rank, {0: rmatrix_identity(self.ring, rank)})

    def zero(self, dom: int, cod: int) -> "TGMorphism":
        return TGMorphism(self, dom, cod, {})

    def from_literal(self, dom: int, cod: int, terms: Iterable[tuple[object, Sequence]]) -> "TGMorphism":
        """Build from ``(element, entries)`` pairs.

        ``element`` is an element index, a permutation image list, or a word
        of generator positions written as a string such as ``"0 1 1"``
        (empty string for the identity).  ``entries`` is a ``cod x dom``
        nested list of ring coefficient vectors.
        """
        support: dict[int, np.ndarray] = {}
        for word, entries in terms:
            g = self.parse_element(word)
            m = rmatrix(self.ring, entries) if cod and dom else np.zeros((self.ring.rank, cod, dom), dtype=np.int64)
            if m.shape[1:] != (cod, dom):
                raise DimensionMismatch(f"entry matrix for {word!r} is {m.shape[1:]}, expected {(cod, dom)}")
            support[g] = iadd(support[g], m) if g in support else m
        return TGMorphism(self, dom, cod, support)

    def parse_element(self, word) -> int:
        G = self.group
        if isinstance(word, (int, np.integer)):
            if not 0 <= word < G.order:
                raise ValueError(f"element index {word} out of range")
            return int(word)
        if isinstance(word, str):
            g = 0
            for tok in word.split():
                g = G.m(g, G.generators[int(tok)])
            return g
        return G.index(word)

    def random_morphism(self, rng: np.random.Generator, dom: int, cod: int,
                        max_support: int = 3, low: int = -3, high: int = 3) -> "TGMorphism":
        mem = self.subgroup.members
        k = int(rng.integers(0, min(max_support, len(mem)) + 1))
        chosen = rng.choice(len(mem), size=k, replace=False) if k else []
        support = {mem[int(c)]: rng.integers(low, high + 1, size=(self.ring.rank, cod, dom))
                   for c in sorted(chosen)}
        return TGMorphism(self, dom, cod, support)

    # operations

    def apply_twist(self, g: int, m: np.ndarray) -> np.ndarray:
        """``g^*`` applied entrywise."""
        if g == 0:
            return m
        return twist_entries(self.action.sigma[g], m)

    def compose(self, psi: "TGMorphism", phi: "TGMorphism") -> "TGMorphism":
        """``psi o phi``."""
        if psi.ctx != self or phi.ctx != self:
            raise ContextMismatch("morphisms from another category")
        if phi.cod != psi.dom:
            raise DimensionMismatch(f"cannot compose {psi.dom}->{psi.cod} after {phi.dom}->{phi.cod}")
        G = self.group
        out: dict[int, np.ndarray] = {}
        for k, pk in phi.terms:
            for h, ph in psi.terms:
                g = G.m(h, k)
                term = ring_matmul(self.ring, self.apply_twist(k, ph), pk)
                out[g] = iadd(out[g], term) if g in out else term
        return TGMorphism(self, phi.dom, psi.cod, out)

    def add(self, a: "TGMorphism", b: "TGMorphism") -> "TGMorphism":
        if a.ctx != b.ctx:
            raise ContextMismatch("morphisms from different categories")
        if (a.dom, a.cod) != (b.dom, b.cod):
            raise DimensionMismatch("cannot add morphisms of different shapes")
        out = dict(a.support)
        for g, m in b.terms:
            out[g] = iadd(out[g], m) if g in out else m
        return TGMorphism(self, a.dom, a.cod, out)

    def direct_sum(self, *phis: "TGMorphism") -> "TGMorphism":
        for p in phis:
            if p.ctx != self:
                raise ContextMismatch("morphisms from another category")
        dom = sum(p.dom for p in phis)
        cod = sum(p.cod for p in phis)
        keys = sorted({g for p in phis for g in p.support})
        d = self.ring.rank
        out = {}
        for g in keys:
            mats = [p.support.get(g) for p in phis]
            dtype = object if any(m is not None and m.dtype == object for m in mats) else np.int64
            block = np.zeros((d, cod, dom), dtype=dtype)
            r = c = 0
            for p, m in zip(phis, mats):
                if m is not None:
                    block[:, r:r + p.cod, c:c + p.dom] = m
                r += p.cod
                c += p.dom
            out[g] = block
        return TGMorphism(self, dom, cod, out)

    def is_identity(self, phi: "TGMorphism") -> bool:
        return phi.dom == phi.cod and phi == self.identity(phi.dom)

    def verify_inverse_pair(self, phi: "TGMorphism", psi: "TGMorphism") -> bool:
        if phi.cod != psi.dom or psi.cod != phi.dom:
            return False
        return self.is_identity(self.compose(psi, phi)) and self.is_identity(self.compose(phi, psi))


class TGMorphism:
    """Immutable sparse morphism; zero coefficients are pruned on construction."""

    __slots__ = ("ctx", "dom", "cod", "support", "terms")

    def __init__(self, ctx: TwistedCategory, dom: int, cod: int, support: Mapping[int, np.ndarray]):
        d = ctx.ring.rank
        clean = {}
        for g in sorted(support):
            m = support[g]
            if tuple(m.shape) != (d, cod, dom):
                raise DimensionMismatch(f"component at {g} has shape {tuple(m.shape)}, expected {(d, cod, dom)}")
            if g not in ctx.subgroup:
                raise SupportViolation(f"element {g} lies outside subgroup #{ctx.subgroup.id}")
            if np.any(m):
                clean[g] = _freeze(m)
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "support", clean)
        object.__setattr__(self, "terms", tuple(clean.items()))

    def __setattr__(self, name, value):
        raise AttributeError("TGMorphism is immutable")

    @property
    def domain(self) -> TGObject:
        return TGObject(self.dom)

    @property
    def codomain(self) -> TGObject:
        return TGObject(self.cod)

    def __eq__(self, other):
        if not isinstance(other, TGMorphism):
            return NotImplemented
        if self.ctx != other.ctx or (self.dom, self.cod) != (other.dom, other.cod):
            return False
        if self.support.keys() != other.support.keys():
            return False
        return all(np.array_equal(m, other.support[g]) for g, m in self.terms)

    __hash__ = None

    def __matmul__(self, other: "TGMorphism") -> "TGMorphism":
        return self.ctx.compose(self, other)

    def __add__(self, other: "TGMorphism") -> "TGMorphism":
        return self.ctx.add(self, other)

    def __repr__(self):
        return f"TGMorphism({self.dom}->{self.cod}, support={sorted(self.support)})"

    def recontext(self, ctx: TwistedCategory) -> "TGMorphism":
        return TGMorphism(ctx, self.dom, self.cod, self.support)

    def to_literal(self) -> list:
        """``[(element, cod x dom x ring-rank nested list), ...]``; inverse of ``from_literal``."""
        return [(g, np.moveaxis(m, 0, 2).tolist()) for g, m in self.terms]
