"""Exact integer substrate.

* structure-constant algebras over Z with a right group action,
* Smith normal form and everything built on it (integer solving, kernels,
  cokernels, finitely generated abelian groups and their localizations),
* integral lattices with a group action (objects ``(Z^m, beta)``).

Matrices are numpy arrays.  Products go through :func:`imatmul`, which uses
int64 only when a magnitude bound proves the result fits and otherwise
switches to Python integers, so nothing overflows silently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .groups import FiniteGroup, GroupError, NotNested, SubgroupRef, left_coset_reps


class DimensionMismatch(ValueError):
    pass


class ActionViolation(ValueError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class GroupMismatch(ValueError):
    pass


class RingError(ValueError):
    pass


# checked integer matrix arithmetic

_LIMIT = 1 << 62


def maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(np.max(np.abs(a)))


def as_obj(a) -> np.ndarray:
    a = np.asarray(a)
    if a.dtype == object:
        return a
    return a.astype(object)


def _small(a: np.ndarray, bound: int = _LIMIT) -> bool:
    return a.dtype != object and maxabs(a) < bound


def imatmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    inner = max(a.shape[-1], 1)
    if a.dtype != object and b.dtype != object and maxabs(a) * maxabs(b) * inner < _LIMIT:
        return a @ b
    return as_obj(a) @ as_obj(b)


def iadd(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype != object and b.dtype != object and maxabs(a) + maxabs(b) < _LIMIT:
        return a + b
    return as_obj(a) + as_obj(b)


def ikron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype != object and b.dtype != object and maxabs(a) * maxabs(b) < _LIMIT:
        return np.kron(a, b)
    return np.kron(as_obj(a), as_obj(b))


def int_matrix(rows, shape=None) -> np.ndarray:
    """Integer matrix from nested sequences; Python ints if any entry is large."""
    a = np.array(rows, dtype=object)
    if shape is not None:
        a = a.reshape(shape)
    if a.size and maxabs(a) >= _LIMIT:
        return a
    return a.astype(np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


# algebras and actions


@dataclass(frozen=True, eq=False)
class ZAlgebra:
    """Associative unital ring free of rank ``rank`` over Z.

    ``structure[i, j]`` is the coefficient vector of ``e_i * e_j``.
    """

    name: str
    rank: int
    structure: np.ndarray
    unit: np.ndarray

    def __post_init__(self):
        d = self.rank
        c = int_matrix(self.structure)
        u = int_matrix(self.unit)
        if c.shape != (d, d, d) or u.shape != (d,):
            raise DimensionMismatch(f"structure constants must be {d}x{d}x{d} and unit of length {d}")
        c.setflags(write=False)
        u.setflags(write=False)
        object.__setattr__(self, "structure", c)
        object.__setattr__(self, "unit", u)
        for i in range(d):
            e = np.zeros(d, dtype=np.int64)
            e[i] = 1
            if not (np.array_equal(self.mul(u, e), e) and np.array_equal(self.mul(e, u), e)):
                raise RingError(f"{self.name}: unit law fails on basis element {i}")
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    left = np.tensordot(c[i, j], c[:, k], axes=(0, 0))
                    right = np.tensordot(c[j, k], c[i, :], axes=(0, 0))
                    if not np.array_equal(left, right):
                        raise RingError(f"{self.name}: associativity fails on basis ({i}, {j}, {k})")
        object.__setattr__(self, "_cbound", int(np.abs(c).sum(axis=(0, 1)).max()) if d else 0)

    def __repr__(self):
        return f"ZAlgebra({self.name}, rank={self.rank})"

    def mul(self, x, y) -> np.ndarray:
        return ring_mul(self, x, y)

    def basis(self, i: int) -> np.ndarray:
        e = np.zeros(self.rank, dtype=np.int64)
        e[i] = 1
        return e


def ring_mul(R: ZAlgebra, x, y) -> np.ndarray:
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != (R.rank,) or y.shape != (R.rank,):
        raise DimensionMismatch(f"{R!r} multiplies vectors of length {R.rank}")
    return np.tensordot(as_obj(np.outer(x, y)) if not (_small(x, 1 << 30) and _small(y, 1 << 30)) else np.outer(x, y),
                        R.structure, axes=([0, 1], [0, 1]))


def ring_matmul(R: ZAlgebra, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of R-matrices stored as coefficient stacks of shape (d, rows, cols)."""
    if a.shape[2] != b.shape[1]:
        raise DimensionMismatch(f"cannot multiply {a.shape[1:]} by {b.shape[1:]}")
    inner = max(a.shape[2], 1)
    if a.dtype != object and b.dtype != object and maxabs(a) * maxabs(b) * inner * max(R._cbound, 1) < _LIMIT:
        ab = np.matmul(a[:, None], b[None, :])
        return np.tensordot(R.structure, ab, axes=([0, 1], [0, 1]))
    ab = np.matmul(as_obj(a)[:, None], as_obj(b)[None, :])
    return np.tensordot(as_obj(R.structure), ab, axes=([0, 1], [0, 1]))


def twist_entries(S: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Apply the ring map with matrix ``S`` to every entry of an R-matrix."""
    if a.dtype != object and maxabs(S) * maxabs(a) * max(S.shape[0], 1) < _LIMIT:
        return np.tensordot(S, a, axes=(1, 0))
    return np.tensordot(as_obj(S), as_obj(a), axes=(1, 0))


def rmatrix(R: ZAlgebra, entries) -> np.ndarray:
    """R-matrix from nested rows of coefficient vectors."""
    a = int_matrix(entries)
    if a.ndim != 3 or a.shape[2] != R.rank:
        raise DimensionMismatch(f"entries must be rows x cols x {R.rank}")
    return np.ascontiguousarray(np.moveaxis(a, 2, 0))


def rmatrix_identity(R: ZAlgebra, n: int) -> np.ndarray:
    return np.einsum("k,ij->kij", R.unit, np.eye(n, dtype=np.int64))


def rmatrix_scalar(R: ZAlgebra, m: np.ndarray) -> np.ndarray:
    """The integer matrix ``m`` viewed as an R-matrix (entries times the unit)."""
    m = np.asarray(m)
    if m.dtype == object or maxabs(m) * maxabs(R.unit) >= _LIMIT:
        return np.einsum("k,ij->kij", as_obj(R.unit), as_obj(m))
    return np.einsum("k,ij->kij", R.unit, m)


def rmatrix_zero(R: ZAlgebra, rows: int, cols: int) -> np.ndarray:
    return np.zeros((R.rank, rows, cols), dtype=np.int64)


@dataclass(frozen=True, eq=False)
class RingAutomorphism:
    ring: ZAlgebra
    matrix: np.ndarray

    def __post_init__(self):
        S = int_matrix(self.matrix)
        d = self.ring.rank
        if S.shape != (d, d):
            raise DimensionMismatch(f"automorphism matrix must be {d}x{d}")
        S.setflags(write=False)
        object.__setattr__(self, "matrix", S)
        problem = automorphism_problem(self.ring, S)
        if problem:
            raise ActionViolation(problem)

    def __call__(self, x) -> np.ndarray:
        return imatmul(self.matrix, np.asarray(x))


def automorphism_problem(R: ZAlgebra, S: np.ndarray) -> str | None:
    d = R.rank
    if d and smith(S).diagonal != [1] * d:
        return "matrix is not invertible over Z"
    if not np.array_equal(imatmul(S, R.unit), R.unit):
        return "unit vector is not fixed"
    for i in range(d):
        for j in range(d):
            lhs = imatmul(S, R.structure[i, j])
            rhs = ring_mul(R, S[:, i], S[:, j])
            if not np.array_equal(lhs, rhs):
                return f"product of basis elements {i},{j} is not preserved"
    return None


@dataclass
class ActionReport:
    ok: bool
    violations: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)

    def raise_if_failed(self):
        if not self.ok:
            msg, pair = self.violations[0]
            raise ActionViolation(msg, pair)


class RingAction:
    """Right action g -> sigma_g on a ZAlgebra, one matrix per group element.

    ``sigma[g]`` realizes ``g^*`` on ring elements and satisfies
    ``sigma[g*h] = sigma[h] @ sigma[g]``.
    """

    def __init__(self, group: FiniteGroup, ring: ZAlgebra, sigma: Sequence[np.ndarray], validate: bool = True):
        self.group = group
        self.ring = ring
        self.sigma = tuple(int_matrix(s) for s in sigma)
        for s in self.sigma:
            s.setflags(write=False)
        if len(self.sigma) != group.order:
            raise DimensionMismatch("one matrix per group element required")
        if validate:
            validate_action(group, ring, self).raise_if_failed()

    @cached_property
    def is_trivial(self) -> bool:
        I = identity(self.ring.rank)
        return all(np.array_equal(s, I) for s in self.sigma)

    def __repr__(self):
        return f"RingAction({self.group.name}, {self.ring.name}{', trivial' if self.is_trivial else ''})"


def action_from_left(G: FiniteGroup, R: ZAlgebra, tau_gens: Mapping[int, np.ndarray] | Sequence[np.ndarray]) -> RingAction:
    """Extend a left action given on generators, storing sigma_g = tau(g^-1).

    ``tau_gens`` maps generator positions (indices into ``G.generators``) to
    matrices; missing generators act trivially.
    """
    d = R.rank
    if not isinstance(tau_gens, Mapping):
        tau_gens = dict(enumerate(tau_gens))
    gen_mats = []
    for k, g in enumerate(G.generators):
        m = tau_gens.get(k, tau_gens.get(str(k)))
        gen_mats.append((g, identity(d) if m is None else int_matrix(m).reshape(d, d)))
    for k in tau_gens:
        if int(k) >= len(G.generators):
            raise ActionViolation(f"generator position {k} out of range", (int(k),))
    tau: list = [None] * G.order
    tau[0] = identity(d)
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, m in gen_mats:
                y = G.m(x, g)
                val = imatmul(tau[x], m)
                if tau[y] is None:
                    tau[y] = val
                    nxt.append(y)
                elif not np.array_equal(tau[y], val):
                    raise ActionViolation(
                        f"generator images do not define a homomorphism (element {y})", (x, g))
        frontier = nxt
    return RingAction(G, R, [tau[G.inverse(g)] for g in range(G.order)])


def validate_action(G: FiniteGroup, R: ZAlgebra, action: RingAction) -> ActionReport:
    report = ActionReport(ok=True)
    sig = action.sigma
    d = R.rank
    if not np.array_equal(sig[0], identity(d)):
        report.violations.append(("sigma_e is not the identity", (0,)))
    for g in range(G.order):
        problem = automorphism_problem(R, sig[g])
        if problem:
            report.violations.append((f"sigma_{g}: {problem}", (g,)))
    for g in range(G.order):
        for h in range(G.order):
            if not np.array_equal(sig[G.m(g, h)], imatmul(sig[h], sig[g])):
                report.violations.append((f"sigma_(g*h) != sigma_h o sigma_g for g={g}, h={h}", (g, h)))
    report.ok = not report.violations
    return report


def _group_ring_cyclic(n: int) -> np.ndarray:
    c = np.zeros((n, n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            c[a, b, (a + b) % n] = 1
    return c


def builtin_ring(name: str, degree: int | None = None) -> ZAlgebra:
    """``Z``, ``Z[i]``, ``Z[C3]``, ``ZxZ-swap`` and ``Zn-perm`` (Z^degree)."""
    if name == "Z":
        return ZAlgebra("Z", 1, [[[1]]], [1])
    if name == "Z[i]":
        c = [[[1, 0], [0, 1]], [[0, 1], [-1, 0]]]
        return ZAlgebra("Z[i]", 2, c, [1, 0])
    if name == "Z[C3]":
        return ZAlgebra("Z[C3]", 3, _group_ring_cyclic(3), [1, 0, 0])
    if name == "ZxZ-swap":
        return ZAlgebra("ZxZ-swap", 2, [[[1, 0], [0, 0]], [[0, 0], [0, 1]]], [1, 1])
    if name == "Zn-perm":
        if not degree:
            raise RingError("Zn-perm needs the group degree")
        c = np.zeros((degree, degree, degree), dtype=np.int64)
        for i in range(degree):
            c[i, i, i] = 1
        return ZAlgebra("Zn-perm", degree, c, [1] * degree)
    raise RingError(f"unknown ring {name!r}")


BUILTIN_RINGS = ("Z", "Z[i]", "Z[C3]", "ZxZ-swap", "Zn-perm")

_INVOLUTIONS = {
    "Z[i]": [[1, 0], [0, -1]],
    "Z[C3]": [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
    "ZxZ-swap": [[0, 1], [1, 0]],
}


def builtin_action(G: FiniteGroup, R: ZAlgebra) -> RingAction:
    """Default action of ``G`` on a builtin ring.

    The rings with an involution let odd permutations act by it (so groups
    without odd elements act trivially); ``Zn-perm`` permutes its idempotents
    through the natural action; ``Z`` is acted on trivially.
    """
    d = R.rank
    if R.name in _INVOLUTIONS:
        inv = int_matrix(_INVOLUTIONS[R.name])
        taus = [inv if G.element(g).sign() < 0 else identity(d) for g in G.generators]
        return action_from_left(G, R, taus)
    if R.name == "Zn-perm":
        taus = []
        for g in G.generators:
            P = np.zeros((d, d), dtype=np.int64)
            for i, gi in enumerate(G.elements[g]):
                P[gi, i] = 1
            taus.append(P)
        return action_from_left(G, R, taus)
    return action_from_left(G, R, {})


def load_ring(spec: str, G: FiniteGroup) -> tuple[ZAlgebra, RingAction]:
    """Builtin name or JSON file with rank, structure, unit and action."""
    path = Path(spec)
    if path.suffix == ".json" or path.exists():
        try:
            data = json.loads(path.read_text())
            R = ZAlgebra(data.get("name", path.stem), int(data["rank"]), data["structure"], data["unit"])
        except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise RingError(f"cannot read ring file {spec}: {exc}") from None
        return R, action_from_left(G, R, {int(k): v for k, v in data.get("action", {}).items()})
    R = builtin_ring(spec, G.degree)
    return R, builtin_action(G, R)


def trivial_action(G: FiniteGroup, R: ZAlgebra) -> RingAction:
    return RingAction(G, R, [identity(R.rank)] * G.order, validate=False)


# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    U: np.ndarray
    D: np.ndarray
    V: np.ndarray
    U_inv: np.ndarray
    V_inv: np.ndarray

    @cached_property
    def diagonal(self) -> list[int]:
        k = min(self.D.shape)
        return [int(self.D[i, i]) for i in range(k)]

    @cached_property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x)


def smith(a) -> SmithForm:
    a = np.asarray(a)
    if a.ndim != 2:
        raise DimensionMismatch("need a 2-d matrix")
    m, n = a.shape
    u, d, v, ui, vi = kernels.snf([[int(x) for x in row] for row in a.tolist()], m, n)
    mk = lambda rows, r, c: int_matrix(rows, (r, c)) if r and c else np.zeros((r, c), dtype=np.int64)
    return SmithForm(mk(u, m, m), mk(d, m, n), mk(v, n, n), mk(ui, m, m), mk(vi, n, n))


def smith_normal_form(a) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(U, D, V)`` with ``U @ A @ V == D`` diagonal and d1 | d2 | ...."""
    s = smith(a)
    return s.U, s.D, s.V


def invariant_factors(a) -> list[int]:
    return smith(a).diagonal


# coefficient modes


@dataclass(frozen=True)
class CoefficientMode:
    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("integral", "p_local", "rational", "invert_2"):
            raise ValueError(f"unknown coefficient mode {self.kind!r}")
        if self.kind == "p_local" and (self.p is None or self.p < 2
                                       or any(self.p % q == 0 for q in range(2, int(self.p ** 0.5) + 1))):
            raise ValueError(f"p_local needs a prime, got {self.p!r}")

    @property
    def label(self) -> str:
        return {"integral": "Z", "rational": "Q", "invert_2": "Z-half"}.get(self.kind) or f"Zp:{self.p}"

    def __str__(self):
        return self.label

    def is_unit(self, n: int) -> bool:
        n = abs(int(n))
        if n == 0:
            return False
        if self.kind == "integral":
            return n == 1
        if self.kind == "rational":
            return True
        q = self.p if self.kind == "p_local" else 2
        if self.kind == "p_local":
            return n % q != 0
        while n % 2 == 0:
            n //= 2
        return n == 1

    def nonunit_part(self, d: int) -> int:
        """Generator of the ideal ``d * S^-1 Z`` as a nonnegative integer."""
        d = abs(int(d))
        if d == 0:
            return 0
        if self.kind == "integral":
            return d
        if self.kind == "rational":
            return 1
        if self.kind == "p_local":
            r = 1
            while d % self.p == 0:
                d //= self.p
                r *= self.p
            return r
        while d % 2 == 0:
            d //= 2
        return d


INTEGRAL = CoefficientMode("integral")
RATIONAL = CoefficientMode("rational")
INVERT_2 = CoefficientMode("invert_2")


def p_local(p: int) -> CoefficientMode:
    return CoefficientMode("p_local", p)


def parse_mode(text: str) -> CoefficientMode:
    """``Z``, ``Zp:<p>``, ``Q`` or ``Z-half``."""
    if text == "Z":
        return INTEGRAL
    if text == "Q":
        return RATIONAL
    if text == "Z-half":
        return INVERT_2
    if text.startswith("Zp:"):
        try:
            return p_local(int(text[3:]))
        except ValueError:
            pass
    raise ValueError(f"unknown coefficient mode {text!r}")


# integer linear algebra


def solve_localized(a, b, mode: CoefficientMode = INTEGRAL):
    """Find ``(x, s)`` with ``A @ x == s * b``, ``s`` a unit of the mode, or ``None``."""
    a = np.asarray(a)
    b = np.asarray(b).reshape(-1)
    m, n = a.shape
    if b.shape[0] != m:
        raise DimensionMismatch(f"right-hand side has length {b.shape[0]}, expected {m}")
    if m == 0:
        return np.zeros(n, dtype=np.int64), 1
    return _solve_with(smith(a), b, mode)


def _solve_with(sf: SmithForm, b: np.ndarray, mode: CoefficientMode):
    m, n = sf.D.shape
    c = [int(x) for x in imatmul(sf.U, int_matrix(b)).tolist()]
    diag = sf.diagonal
    s = 1
    for i, ci in enumerate(c):
        di = diag[i] if i < len(diag) else 0
        if di == 0:
            if ci != 0:
                return None
            continue
        need = di // gcd(di, ci)
        if not mode.is_unit(need):
            return None
        s = s * need // gcd(s, need)
    y = [0] * n
    for i in range(min(m, n)):
        if diag[i]:
            y[i] = s * c[i] // diag[i]
    x = imatmul(sf.V, int_matrix(y) if n else np.zeros(0, dtype=np.int64))
    return x, s


def solve_integer_linear(a, b) -> np.ndarray | None:
    """Some integral solution of ``A @ x == b``, or ``None`` when there is none."""
    out = solve_localized(a, b, INTEGRAL)
    return None if out is None else out[0]


def obstruction(a, b) -> tuple[np.ndarray, int] | None:
    """Certificate that ``A x = b`` has no integral solution.

    Returns ``(w, q)`` with ``w @ A == 0 (mod q)`` and ``w @ b != 0 (mod q)``;
    ``q == 0`` means exact equality.  ``None`` when a solution exists.
    """
    a = np.asarray(a)
    b = np.asarray(b).reshape(-1)
    sf = smith(a)
    c = [int(x) for x in imatmul(sf.U, int_matrix(b)).tolist()]
    diag = sf.diagonal
    for i, ci in enumerate(c):
        di = diag[i] if i < len(diag) else 0
        if (di == 0 and ci != 0) or (di and ci % di):
            return sf.U[i], di
    return None


def nullspace(a) -> np.ndarray:
    """Columns form a Z-basis of ``{x : A @ x == 0}``."""
    a = np.asarray(a)
    m, n = a.shape
    if m == 0:
        return identity(n)
    sf = smith(a)
    return sf.V[:, sf.rank:]


def column_basis(a) -> np.ndarray:
    """Columns form a Z-basis of the column span of ``a``."""
    a = np.asarray(a)
    m, n = a.shape
    if n == 0 or m == 0:
        return np.zeros((m, 0), dtype=np.int64)
    sf = smith(a)
    r = sf.rank
    cols = [imatmul(sf.U_inv[:, i:i + 1], int_matrix([[sf.diagonal[i]]])) for i in range(r)]
    return np.hstack(cols) if cols else np.zeros((m, 0), dtype=np.int64)


def in_column_span(a, v, mode: CoefficientMode = INTEGRAL) -> bool:
    a = np.asarray(a)
    if a.shape[1] == 0:
        return not np.any(np.asarray(v))
    return solve_localized(a, v, mode) is not None


# finitely generated abelian groups


def _relations(n: int, rel) -> np.ndarray:
    if rel is None:
        return np.zeros((n, 0), dtype=np.int64)
    r = np.asarray(rel)
    if r.size == 0:
        return np.zeros((n, 0), dtype=np.int64)
    r = int_matrix(r)
    if r.ndim != 2 or r.shape[0] != n:
        raise DimensionMismatch(f"relation matrix must have {n} rows")
    return r


@dataclass(frozen=True, eq=False)
class FgAbelianGroup:
    """``Z^ngens`` modulo the column span of ``relations``, read in ``mode``."""

    ngens: int
    relations: np.ndarray = None
    mode: CoefficientMode = INTEGRAL

    def __post_init__(self):
        r = _relations(self.ngens, self.relations)
        r.setflags(write=False)
        object.__setattr__(self, "relations", r)

    @cached_property
    def _smith(self) -> SmithForm:
        return smith(self.relations)

    @cached_property
    def factors(self) -> list[int]:
        """Cyclic factor orders in normal form (0 = free), units removed."""
        diag = self._smith.diagonal
        out = []
        for i in range(self.ngens):
            d = diag[i] if i < len(diag) else 0
            d = self.mode.nonunit_part(d)
            if d != 1:
                out.append(d)
        return out

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.factors if d == 0)

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.factors if d]

    def is_zero(self) -> bool:
        return not self.factors

    def contains_relation(self, v) -> bool:
        """Whether ``v`` is zero in the group."""
        v = np.asarray(v).reshape(-1)
        if v.shape[0] != self.ngens:
            raise DimensionMismatch(f"vector of length {v.shape[0]} in a group on {self.ngens} generators")
        if not np.any(v):
            return True
        if self.relations.shape[1] == 0:
            return False
        return _solve_with(self._smith, v, self.mode) is not None

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        body = " + ".join(parts) or "0"
        return body if self.mode == INTEGRAL else f"{body} ({self.mode.label})"

    def __repr__(self):
        return f"FgAbelianGroup({self})"


def free_group(n: int, mode: CoefficientMode = INTEGRAL) -> FgAbelianGroup:
    return FgAbelianGroup(n, None, mode)


def cyclic_group(n: int, mode: CoefficientMode = INTEGRAL) -> FgAbelianGroup:
    return FgAbelianGroup(1, [[n]], mode)


def direct_sum_groups(groups: Sequence[FgAbelianGroup], mode: CoefficientMode | None = None) -> FgAbelianGroup:
    n = sum(A.ngens for A in groups)
    cols = sum(A.relations.shape[1] for A in groups)
    rel = np.zeros((n, cols), dtype=object)
    r = c = 0
    for A in groups:
        k = A.relations.shape[1]
        rel[r:r + A.ngens, c:c + k] = A.relations
        r += A.ngens
        c += k
    m = mode or (groups[0].mode if groups else INTEGRAL)
    return FgAbelianGroup(n, rel, m)


@dataclass(frozen=True, eq=False)
class AbHom:
    source: FgAbelianGroup
    target: FgAbelianGroup
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix)
        if m.size == 0:
            m = np.zeros((self.target.ngens, self.source.ngens), dtype=np.int64)
        m = int_matrix(m).reshape(self.target.ngens, self.source.ngens)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def is_well_defined(self) -> bool:
        img = imatmul(self.matrix, self.source.relations)
        return all(self.target.contains_relation(img[:, j]) for j in range(img.shape[1]))

    def __call__(self, x) -> np.ndarray:
        return imatmul(self.matrix, np.asarray(x))

    def compose(self, other: "AbHom") -> "AbHom":
        """``self o other``."""
        if other.target.ngens != self.source.ngens:
            raise DimensionMismatch("maps are not composable")
        return AbHom(other.source, self.target, imatmul(self.matrix, other.matrix))

    def __matmul__(self, other: "AbHom") -> "AbHom":
        return self.compose(other)

    def __add__(self, other: "AbHom") -> "AbHom":
        return AbHom(self.source, self.target, iadd(self.matrix, other.matrix))

    def __sub__(self, other: "AbHom") -> "AbHom":
        return AbHom(self.source, self.target, iadd(self.matrix, -as_obj(other.matrix)))

    def equals(self, other: "AbHom") -> bool:
        """Equality as homomorphisms: the difference lands in the target relations."""
        if self.matrix.shape != other.matrix.shape:
            return False
        diff = iadd(as_obj(self.matrix), -as_obj(other.matrix))
        return all(self.target.contains_relation(diff[:, j]) for j in range(diff.shape[1]))

    def is_zero(self) -> bool:
        return all(self.target.contains_relation(self.matrix[:, j]) for j in range(self.matrix.shape[1]))

    def kernel(self) -> tuple[FgAbelianGroup, "AbHom"]:
        return kernel(self)

    def cokernel(self) -> tuple[FgAbelianGroup, "AbHom"]:
        return cokernel(self)

    def is_isomorphism(self, mode: CoefficientMode | None = None) -> bool:
        mode = mode or self.target.mode
        K, _ = kernel(self)
        C, _ = cokernel(self)
        return with_mode(K, mode).is_zero() and with_mode(C, mode).is_zero()


def identity_hom(A: FgAbelianGroup) -> AbHom:
    return AbHom(A, A, identity(A.ngens))


def zero_hom(A: FgAbelianGroup, B: FgAbelianGroup) -> AbHom:
    return AbHom(A, B, np.zeros((B.ngens, A.ngens), dtype=np.int64))


def with_mode(A: FgAbelianGroup, mode: CoefficientMode) -> FgAbelianGroup:
    return FgAbelianGroup(A.ngens, A.relations, mode)


def kernel(f: AbHom) -> tuple[FgAbelianGroup, AbHom]:
    """Kernel of ``f`` (computed over Z) with its inclusion into the source."""
    A, B = f.source, f.target
    n = A.ngens
    big = np.hstack([as_obj(f.matrix), as_obj(B.relations)]) if B.relations.shape[1] else as_obj(f.matrix)
    if B.ngens == 0:
        gens = identity(n)
    else:
        gens = nullspace(big)[:n, :]
    basis = column_basis(gens) if n else np.zeros((0, 0), dtype=np.int64)
    k = basis.shape[1]
    rels = []
    for j in range(A.relations.shape[1]):
        sol = solve_integer_linear(basis, A.relations[:, j]) if k else np.zeros(0, dtype=np.int64)
        if sol is None:
            raise AssertionError("source relation outside kernel lattice; map is not well defined")
        rels.append(sol)
    relm = np.array(rels, dtype=object).T.reshape(k, len(rels)) if rels else None
    K = FgAbelianGroup(k, relm, A.mode)
    return K, AbHom(K, A, basis)


def cokernel(f: AbHom) -> tuple[FgAbelianGroup, AbHom]:
    B = f.target
    rel = np.hstack([as_obj(B.relations), as_obj(f.matrix)]) if B.ngens else None
    C = FgAbelianGroup(B.ngens, rel, B.mode)
    return C, AbHom(B, C, identity(B.ngens))


def lift_to_sub(inclusion: AbHom, v) -> np.ndarray:
    """Coordinates of ``v`` in the (free) basis given by the inclusion's columns."""
    sol = solve_integer_linear(inclusion.matrix, v)
    if sol is None:
        raise ValueError("vector outside the sublattice")
    return sol


@dataclass(frozen=True)
class Localization:
    group: FgAbelianGroup
    project: np.ndarray
    lift: np.ndarray


def localization_data(A: FgAbelianGroup, mode: CoefficientMode) -> Localization:
    """Presentation of ``A`` tensored with the mode's ring, with transport matrices.

    The localized group is a direct sum of cyclic factors (kept invariant
    factors after dropping units); ``project`` maps old generators to the new
    ones and ``lift`` maps back.
    """
    sf = A._smith
    diag = sf.diagonal
    kept, orders = [], []
    for i in range(A.ngens):
        d = diag[i] if i < len(diag) else 0
        d = mode.nonunit_part(d)
        if d != 1:
            kept.append(i)
            orders.append(d)
    k = len(kept)
    rel = np.zeros((k, k), dtype=np.int64)
    for i, d in enumerate(orders):
        rel[i, i] = d
    rel = rel[:, [i for i, d in enumerate(orders) if d]]
    L = FgAbelianGroup(k, rel, mode)
    proj = sf.U[kept, :] if k else np.zeros((0, A.ngens), dtype=np.int64)
    lift = sf.U_inv[:, kept] if k else np.zeros((A.ngens, 0), dtype=np.int64)
    return Localization(L, proj, lift)


def localize_fg_abelian(A: FgAbelianGroup, mode: CoefficientMode) -> FgAbelianGroup:
    return localization_data(A, mode).group


def reduce_columns(m: np.ndarray, target: FgAbelianGroup) -> np.ndarray:
    """Reduce rows of a map into a diagonal presentation modulo the factor orders."""
    m = as_obj(np.array(m, dtype=object))
    rel = target.relations
    for j in range(rel.shape[1]):
        col = rel[:, j]
        nz = [i for i in range(col.shape[0]) if col[i]]
        if len(nz) == 1:
            i = nz[0]
            d = abs(int(col[i]))
            m[i, :] = [int(x) % d for x in m[i, :]]
    return int_matrix(m, m.shape) if m.size else m


def localize_hom(f: AbHom, mode: CoefficientMode,
                 src: Localization | None = None, dst: Localization | None = None) -> AbHom:
    src = src or localization_data(f.source, mode)
    dst = dst or localization_data(f.target, mode)
    m = imatmul(imatmul(dst.project, f.matrix), src.lift)
    return AbHom(src.group, dst.group, reduce_columns(m, dst.group))


# lattices with a group action


@dataclass(frozen=True, eq=False)
class Lattice:
    """``(Z^rank, beta)`` for a subgroup; ``rep[g]`` is the matrix of beta(g)."""

    group: SubgroupRef
    rank: int
    rep: Mapping[int, np.ndarray]

    def __post_init__(self):
        rep = {}
        for g in self.group.members:
            if g not in self.rep:
                raise GroupMismatch(f"no matrix for element {g}")
            m = int_matrix(self.rep[g]).reshape(self.rank, self.rank)
            m.setflags(write=False)
            rep[g] = m
        object.__setattr__(self, "rep", rep)

    def __getitem__(self, g: int) -> np.ndarray:
        return self.rep[g]

    def homomorphism_violations(self) -> list[tuple[int, int]]:
        G = self.group.parent
        bad = []
        if not np.array_equal(self.rep[0], identity(self.rank)):
            bad.append((0, 0))
        for a in self.group.members:
            for b in self.group.members:
                if not np.array_equal(self.rep[G.m(a, b)], imatmul(self.rep[a], self.rep[b])):
                    bad.append((a, b))
        return bad

    def validate(self) -> "Lattice":
        bad = self.homomorphism_violations()
        if bad:
            raise GroupMismatch(f"not a representation: fails on pair {bad[0]}")
        return self

    def character(self) -> dict[int, int]:
        return {g: int(np.trace(m)) for g, m in self.rep.items()}


def trivial_lattice(I: SubgroupRef, m: int = 1) -> Lattice:
    return Lattice(I, m, {g: identity(m) for g in I.members})


def sign_lattice(I: SubgroupRef) -> Lattice:
    G = I.parent
    return Lattice(I, 1, {g: [[G.element(g).sign()]] for g in I.members})


def lattice_tensor(L1: Lattice, L2: Lattice) -> Lattice:
    if L1.group != L2.group:
        raise GroupMismatch("lattices over different subgroups")
    return Lattice(L1.group, L1.rank * L2.rank, {g: ikron(L1.rep[g], L2.rep[g]) for g in L1.group.members})


def lattice_restrict(L: Lattice, I: SubgroupRef) -> Lattice:
    if not I <= L.group:
        raise NotNested(f"{I!r} is not contained in {L.group!r}")
    return Lattice(I, L.rank, {g: L.rep[g] for g in I.members})


def lattice_induce(L: Lattice, J: SubgroupRef, reps: Sequence[int] | None = None) -> Lattice:
    """``Z[J] (x)_{Z[I]} L`` on the basis ``a_lambda (x) e_k`` (coset-major).

    Block ``(tau, lambda)`` of ``j`` is ``beta(a_tau^-1 j a_lambda)`` when that
    element lies in I, and zero otherwise.
    """
    I = L.group
    if not I <= J:
        raise NotNested(f"{I!r} is not contained in {J!r}")
    G = J.parent
    reps = tuple(reps) if reps is not None else left_coset_reps(J, I)
    r, m = len(reps), L.rank
    inv = [G.inverse(a) for a in reps]
    rep = {}
    for j in J.members:
        M = np.zeros((r * m, r * m), dtype=object if any(x.dtype == object for x in L.rep.values()) else np.int64)
        for lam, a in enumerate(reps):
            ja = G.m(j, a)
            for tau in range(r):
                i = G.m(inv[tau], ja)
                if i in I:
                    M[tau * m:(tau + 1) * m, lam * m:(lam + 1) * m] = L.rep[i]
        rep[j] = M
    return Lattice(J, r * m, rep)


def regular_lattice(F: SubgroupRef, reps: Sequence[int] | None = None) -> Lattice:
    """``Z[F]`` as the lattice induced from the trivial subgroup."""
    return lattice_induce(trivial_lattice(F.parent.trivial), F, reps)


def is_lattice_morphism(M: np.ndarray, L1: Lattice, L2: Lattice) -> bool:
    M = np.asarray(M)
    if M.shape != (L2.rank, L1.rank):
        return False
    return all(np.array_equal(imatmul(M, L1.rep[g]), imatmul(L2.rep[g], M)) for g in L1.group.members)


def averaged_morphism(X: np.ndarray, L1: Lattice, L2: Lattice) -> np.ndarray:
    """``sum_g beta2(g) X beta1(g)^-1``; always an equivariant map L1 -> L2."""
    if L1.group != L2.group:
        raise GroupMismatch("lattices over different subgroups")
    G = L1.group.parent
    total = np.zeros((L2.rank, L1.rank), dtype=np.int64)
    for g in L1.group.members:
        total = iadd(total, imatmul(imatmul(L2.rep[g], X), L1.rep[G.inverse(g)]))
    return total
