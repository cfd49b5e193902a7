"""Burnside rings through tables of marks, permutation characters and Artin induction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .checks import CheckResult
from .groups import Family, FiniteGroup, SubgroupRef, double_coset_reps
from .mackey import GreenFunctor, GreenModule, build_mackey
from .zalgebra import RATIONAL, FgAbelianGroup, _solve_with, smith


class IntegralityViolation(ArithmeticError):
    pass


class NoSolution(ArithmeticError):
    pass


def _as_subgroup(G) -> SubgroupRef:
    return G.whole if isinstance(G, FiniteGroup) else G


def subgroup_classes_in(H: SubgroupRef) -> tuple[tuple[SubgroupRef, ...], ...]:
    """Classes of subgroups of ``H`` under ``H``-conjugation, ordered by (order, least id)."""
    seen, out = set(), []
    for K in H.subgroups:
        if K.id in seen:
            continue
        cls = sorted({K.conjugate(h).id for h in H.members})
        seen.update(cls)
        out.append(tuple(H.parent.subgroups[i] for i in cls))
    return tuple(out)


def _mark(H: SubgroupRef, L: SubgroupRef, K: SubgroupRef) -> int:
    """Number of ``K``-fixed points on ``H/L``."""
    G = H.parent
    inv = G.inverse
    count = sum(1 for h in H.members if all(G.conj(inv(h), k) in L for k in K.members))
    return count // L.order


@dataclass(frozen=True, eq=False)
class TableOfMarks:
    """``matrix[i, j]`` is the mark of ``[H/L_i]`` at ``L_j`` (representatives of the classes)."""

    group: SubgroupRef
    classes: tuple[tuple[SubgroupRef, ...], ...]
    matrix: np.ndarray

    @property
    def reps(self) -> list[SubgroupRef]:
        return [c[0] for c in self.classes]

    @property
    def size(self) -> int:
        return len(self.classes)

    def class_of(self, K: SubgroupRef) -> int:
        for i, c in enumerate(self.classes):
            if K in c:
                return i
        raise KeyError(f"{K!r} is not a subgroup of {self.group!r}")

    def marks(self, x) -> np.ndarray:
        """Mark vector of a Burnside element given by coefficients."""
        coeffs = x.coeffs if isinstance(x, BurnsideElement) else np.asarray(x, dtype=object)
        return np.array([sum(int(coeffs[i]) * int(self.matrix[i, j]) for i in range(self.size))
                         for j in range(self.size)], dtype=object)

    def from_marks(self, marks) -> "BurnsideElement":
        """Solve the triangular system exactly; raise when the solution is not integral."""
        n = self.size
        sol = [Fraction(0)] * n
        for i in reversed(range(n)):
            # column i only involves rows i..n-1
            acc = Fraction(int(marks[i])) - sum(sol[k] * int(self.matrix[k, i]) for k in range(i + 1, n))
            sol[i] = acc / int(self.matrix[i, i])
        if any(v.denominator != 1 for v in sol):
            raise IntegralityViolation(f"mark vector {list(marks)} is not in the image of the Burnside ring")
        return BurnsideElement(self, np.array([int(v) for v in sol], dtype=object))

    def basis(self, i: int) -> "BurnsideElement":
        c = np.zeros(self.size, dtype=object)
        c[i] = 1
        return BurnsideElement(self, c)

    def unit(self) -> "BurnsideElement":
        return self.basis(self.size - 1)


def table_of_marks(G) -> TableOfMarks:
    """Table of marks of a group (or of a subgroup acting on its own cosets)."""
    H = _as_subgroup(G)
    classes = subgroup_classes_in(H)
    reps = [c[0] for c in classes]
    n = len(reps)
    m = np.zeros((n, n), dtype=object)
    for i, L in enumerate(reps):
        for j, K in enumerate(reps):
            m[i, j] = _mark(H, L, K)
    for i in range(n):
        if m[i, i] <= 0 or any(m[i, j] for j in range(i + 1, n)):
            raise AssertionError("table of marks is not lower triangular with positive diagonal")
    return TableOfMarks(H, classes, m)


@dataclass(frozen=True, eq=False)
class BurnsideElement:
    table: TableOfMarks
    coeffs: np.ndarray

    def __eq__(self, other):
        return (isinstance(other, BurnsideElement) and self.table is other.table
                and [int(v) for v in self.coeffs] == [int(v) for v in other.coeffs])

    def __add__(self, other):
        return BurnsideElement(self.table, self.coeffs + other.coeffs)

    def __mul__(self, other):
        if isinstance(other, BurnsideElement):
            return burnside_product(self.table, self, other)
        return BurnsideElement(self.table, self.coeffs * int(other))

    __rmul__ = __mul__

    def __repr__(self):
        terms = [f"{int(c)}[{self.table.group.order}/{self.table.reps[i].order}#{self.table.reps[i].id}]"
                 for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


def burnside_product(T: TableOfMarks, x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
    if x.table is not T or y.table is not T:
        raise ValueError("Burnside elements from different tables")
    return T.from_marks(T.marks(x) * T.marks(y))


# the Green functor


def _restrict_orbit(I: SubgroupRef, J: SubgroupRef, L: SubgroupRef) -> list[SubgroupRef]:
    """``Res^J_I [J/L]`` as a list of stabilizers, one per double coset ``I f L``."""
    return [I.intersection(L.conjugate(f)) for f in double_coset_reps(J, I, L)]


def burnside_green_functor(G: FiniteGroup) -> GreenFunctor:
    """Burnside rings of all subgroups with the orbit-decomposition structure maps."""
    tables = {H.id: table_of_marks(H) for H in G.subgroups}

    def value(H):
        return FgAbelianGroup(tables[H.id].size)

    def res(I, J):
        TI, TJ = tables[I.id], tables[J.id]
        m = np.zeros((TI.size, TJ.size), dtype=object)
        for j, L in enumerate(TJ.reps):
            for S in _restrict_orbit(I, J, L):
                m[TI.class_of(S), j] += 1
        return m

    def ind(I, J):
        TI, TJ = tables[I.id], tables[J.id]
        m = np.zeros((TJ.size, TI.size), dtype=object)
        for i, L in enumerate(TI.reps):
            m[TJ.class_of(L), i] = 1
        return m

    def conj(f, I):
        TI = tables[I.id]
        T2 = tables[I.conjugate(f).id]
        m = np.zeros((T2.size, TI.size), dtype=object)
        for i, L in enumerate(TI.reps):
            m[T2.class_of(L.conjugate(f)), i] = 1
        return m

    M = build_mackey(G, value, res, ind, conj, "burnside")
    pairing, unit = {}, {}
    for H in G.subgroups:
        T = tables[H.id]
        n = T.size
        P = np.zeros((n, n, n), dtype=object)
        for a, K in enumerate(T.reps):
            for b, L in enumerate(T.reps):
                for f in double_coset_reps(H, K, L):
                    P[a, b, T.class_of(K.intersection(L.conjugate(f)))] += 1
        pairing[H.id] = P
        unit[H.id] = T.unit().coeffs
    green = GreenFunctor(M, pairing, unit)
    green.tables = tables
    return green


def burnside_module(G: FiniteGroup) -> GreenModule:
    return GreenModule.regular(burnside_green_functor(G))


def zero_mark_certificate(green: GreenFunctor, fam: Family) -> CheckResult:
    """Every element induced from a proper member has mark 0 at the whole group; the unit has mark 1.

    Marks are additive, so the unit is then not in the span of the induced
    elements, and the whole group must lie outside ``fam`` for this to apply.
    """
    G = green.group
    F = G.whole
    T = green.tables[F.id]
    top = T.size - 1
    rows, bad, n = [], [], 0
    for H in fam:
        if H == F:
            bad.append({"subgroup": H.id, "reason": "family contains the whole group"})
            continue
        ind = green.mackey.ind_map(H, F).matrix
        for a in range(ind.shape[1]):
            n += 1
            mark = int(T.marks(ind[:, a])[top])
            if mark:
                bad.append({"subgroup": H.id, "generator": a, "mark": mark})
    unit_mark = int(T.marks(green.unit[F.id])[top])
    if unit_mark == 0:
        bad.append({"reason": "unit has mark 0 at the whole group"})
    details = {"unit_mark": unit_mark, "induced_elements": n}
    return CheckResult("zero mark at the whole group", not bad, n, details, {"failures": bad} if bad else None)


# class functions


@dataclass(frozen=True, eq=False)
class ClassFunction:
    group: FiniteGroup
    values: tuple[Fraction, ...]

    def __eq__(self, other):
        return isinstance(other, ClassFunction) and self.group is other.group and self.values == other.values

    def __add__(self, other):
        return ClassFunction(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def __mul__(self, k):
        return ClassFunction(self.group, tuple(a * k for a in self.values))

    __rmul__ = __mul__

    def __repr__(self):
        return "ClassFunction(" + ", ".join(str(v) for v in self.values) + ")"


def constant_function(G: FiniteGroup, c=1) -> ClassFunction:
    return ClassFunction(G, tuple(Fraction(c) for _ in G.conjugacy_classes))


def perm_character(G: FiniteGroup, H: SubgroupRef) -> ClassFunction:
    """Number of fixed points of each class representative on ``G/H``."""
    return ClassFunction(G, tuple(Fraction(_mark(G.whole, H, G.subgroup_generated_by([c[0]])))
                                  for c in G.conjugacy_classes))


def cyclic_subgroup_classes(G: FiniteGroup) -> list[tuple[SubgroupRef, ...]]:
    return [c for c in G.subgroup_classes if c[0].is_cyclic()]


@dataclass(frozen=True)
class ArtinSolution:
    n: int
    coefficients: tuple[int, ...]
    subgroups: tuple[SubgroupRef, ...]

    def to_dict(self) -> dict:
        return {"n": self.n, "terms": [{"subgroup": H.id, "order": H.order, "coefficient": c}
                                      for H, c in zip(self.subgroups, self.coefficients)]}

    def expand(self) -> ClassFunction:
        G = self.subgroups[0].parent
        total = constant_function(G, 0)
        for H, c in zip(self.subgroups, self.coefficients):
            total = total + perm_character(G, H) * c
        return total


def artin_solve(G: FiniteGroup, n: int | None = None) -> ArtinSolution:
    """Integers ``a_C`` with ``sum a_C Ind_C^G(1) = n.1``; ``n`` minimal when not given.

    The permutation characters of non-conjugate cyclic subgroups are linearly
    independent, so the solution for a given ``n`` is unique.
    """
    reps = tuple(c[0] for c in cyclic_subgroup_classes(G))
    chars = [perm_character(G, C) for C in reps]
    k = len(G.conjugacy_classes)
    A = np.array([[int(ch.values[i]) for ch in chars] for i in range(k)], dtype=object)
    sol = _solve_with(smith(A), np.ones(k, dtype=np.int64), RATIONAL)
    if sol is None:
        raise NoSolution(f"no rational solution for {G!r}")
    x, nmin = sol
    if G.order % nmin:
        raise AssertionError(f"minimal multiple {nmin} does not divide |G| = {G.order}")
    if n is None:
        n = nmin
    if n <= 0 or n % nmin:
        raise NoSolution(f"{n} is not a multiple of the minimal multiple {nmin}")
    coeffs = tuple(int(v) * (n // nmin) for v in x)
    out = ArtinSolution(n, coeffs, reps)
    if out.expand() != constant_function(G, n):
        raise AssertionError("Artin solution does not re-expand to n times the trivial character")
    return out


def marks_report(G: FiniteGroup) -> dict:
    T = table_of_marks(G)
    return {"classes": [[H.id for H in c] for c in T.classes],
            "orders": [c[0].order for c in T.classes],
            "marks": [[int(v) for v in row] for row in T.matrix.tolist()]}


def index_gcd_certificate(indices) -> dict:
    g = 0
    for i in indices:
        g = gcd(g, i)
    return {"indices": sorted(set(indices)), "gcd": g}
