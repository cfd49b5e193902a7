"""Finite permutation groups: elements, subgroup lattice, cosets and families.

Elements are stored once, in lexicographic order of their image tuples, and
referred to everywhere else by their index in that order.  The identity is
always index 0.  Products compose right to left: ``(p*q)(x) = p(q(x))``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import kernels

DEFAULT_ORDER_CAP = 200


class GroupError(ValueError):
    pass


class OrderCapExceeded(GroupError):
    pass


class InvalidPermutation(GroupError):
    pass


class NotASubgroup(GroupError):
    pass


class NotNested(GroupError):
    pass


@dataclass(frozen=True, order=True)
class Perm:
    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise InvalidPermutation(f"not a bijection of 0..{len(imgs) - 1}: {list(imgs)}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Perm":
        img = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                if not 0 <= a < degree:
                    raise InvalidPermutation(f"point {a} outside 0..{degree - 1}")
                img[a] = b
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm(tuple(self.images[x] for x in other.images))

    def inverse(self) -> "Perm":
        out = [0] * len(self.images)
        for i, x in enumerate(self.images):
            out[x] = i
        return Perm(tuple(out))

    def sign(self) -> int:
        seen = [False] * len(self.images)
        s = 1
        for i in range(len(self.images)):
            if seen[i]:
                continue
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = self.images[j]
                length += 1
            if length % 2 == 0:
                s = -s
        return s

    def __repr__(self):
        cycles = []
        seen = set()
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            cycles.append("(" + " ".join(map(str, cyc)) + ")")
        return "Perm(" + ("".join(cycles) or "()") + ")"


class FiniteGroup:
    """A permutation group with its full multiplication table.

    Subgroups, conjugacy classes and derived data are computed lazily and
    cached; the public state never changes after construction.
    """

    def __init__(self, degree: int, elements: Sequence[tuple[int, ...]],
                 generators: Sequence[int], name: str | None = None):
        self.degree = degree
        self.elements = tuple(tuple(e) for e in elements)
        self.generators = tuple(generators)
        self.name = name
        self.identity = 0
        self._index = {e: i for i, e in enumerate(self.elements)}
        mul, inv = kernels.mul_table(list(self.elements))
        self.mul = np.array(mul, dtype=np.int64).reshape(len(self.elements), len(self.elements))
        self.inv = np.array(inv, dtype=np.int64)
        self.mul.setflags(write=False)
        self.inv.setflags(write=False)
        self._mul_rows = mul
        self._inv_list = inv
        self.table = kernels.prepare(self.mul, self.inv)

    def __repr__(self):
        return f"FiniteGroup({self.name or 'degree ' + str(self.degree)}, order={self.order})"

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def element(self, i: int) -> Perm:
        return Perm(self.elements[i])

    def index(self, p: Perm | Sequence[int]) -> int:
        key = p.images if isinstance(p, Perm) else tuple(p)
        try:
            return self._index[key]
        except KeyError:
            raise InvalidPermutation(f"{p!r} is not an element of {self!r}") from None

    def m(self, a: int, b: int) -> int:
        return self._mul_rows[a][b]

    def prod(self, *xs: int) -> int:
        r = 0
        for x in xs:
            r = self._mul_rows[r][x]
        return r

    def inverse(self, a: int) -> int:
        return self._inv_list[a]

    def conj(self, f: int, x: int) -> int:
        """``f x f^-1``."""
        return self._mul_rows[self._mul_rows[f][x]][self._inv_list[f]]

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self._mul_rows[x][g]
            k += 1
        return k

    def generated(self, gens: Iterable[int]) -> tuple[int, ...]:
        return kernels.generated(self.table, tuple(gens))

    # subgroup lattice

    @cached_property
    def subgroups(self) -> tuple["SubgroupRef", ...]:
        found = kernels.enumerate_subgroups(self.table)
        return tuple(SubgroupRef(self, mem, i, gens) for i, (mem, gens) in enumerate(found))

    @cached_property
    def _subgroup_lookup(self) -> dict[tuple[int, ...], "SubgroupRef"]:
        return {H.members: H for H in self.subgroups}

    def subgroup(self, members: Iterable[int]) -> "SubgroupRef":
        key = tuple(sorted(set(members)))
        try:
            return self._subgroup_lookup[key]
        except KeyError:
            raise NotASubgroup(f"{list(key)} is not a subgroup of {self!r}") from None

    def subgroup_generated_by(self, gens: Iterable[int]) -> "SubgroupRef":
        return self.subgroup(self.generated(gens))

    @property
    def whole(self) -> "SubgroupRef":
        return self.subgroups[-1]

    @property
    def trivial(self) -> "SubgroupRef":
        return self.subgroups[0]

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        """Element classes, each sorted, ordered by their least element."""
        seen = set()
        classes = []
        for x in range(self.order):
            if x in seen:
                continue
            cls = sorted({self.conj(f, x) for f in range(self.order)})
            seen.update(cls)
            classes.append(tuple(cls))
        return tuple(classes)

    @cached_property
    def subgroup_classes(self) -> tuple[tuple["SubgroupRef", ...], ...]:
        """Subgroup conjugacy classes ordered by (order, least representative)."""
        seen = set()
        classes = []
        for H in self.subgroups:
            if H.id in seen:
                continue
            cls = sorted({H.conjugate(f).id for f in range(self.order)})
            seen.update(cls)
            classes.append(tuple(self.subgroups[i] for i in cls))
        return tuple(classes)


@dataclass(frozen=True, eq=False)
class SubgroupRef:
    parent: FiniteGroup
    members: tuple[int, ...]
    id: int
    gens: tuple[int, ...] = ()

    def __eq__(self, other):
        if not isinstance(other, SubgroupRef):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        name = self.parent.name or "G"
        return f"<subgroup #{self.id} of {name}, order {self.order}>"

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.member_set

    def __iter__(self):
        return iter(self.members)

    def __le__(self, other: "SubgroupRef") -> bool:
        return self.member_set <= other.member_set

    def __lt__(self, other: "SubgroupRef") -> bool:
        return self.member_set < other.member_set

    def conjugate(self, f: int) -> "SubgroupRef":
        """``f H f^-1``."""
        G = self.parent
        return G.subgroup(G.conj(f, h) for h in self.members)

    def intersection(self, other: "SubgroupRef") -> "SubgroupRef":
        return self.parent.subgroup(self.member_set & other.member_set)

    def index_in(self, other: "SubgroupRef") -> int:
        if not self <= other:
            raise NotNested(f"{self!r} is not contained in {other!r}")
        return other.order // self.order

    @cached_property
    def subgroups(self) -> tuple["SubgroupRef", ...]:
        return tuple(K for K in self.parent.subgroups if K <= self)

    def is_normal_in(self, other: "SubgroupRef") -> bool:
        G = self.parent
        gens = other.gens or other.members
        return all(G.conj(f, h) in self for f in gens for h in self.members)

    def is_cyclic(self) -> bool:
        n = self.order
        return any(self.parent.element_order(g) == n for g in self.members)

    @cached_property
    def normalizer(self) -> "SubgroupRef":
        G = self.parent
        return G.subgroup(f for f in range(G.order) if self.conjugate(f) == self)


# construction


def generate_group(degree: int, gens: Iterable[Perm | Sequence[int]],
                   order_cap: int = DEFAULT_ORDER_CAP, name: str | None = None) -> FiniteGroup:
    gen_perms = []
    for g in gens:
        p = g if isinstance(g, Perm) else Perm(tuple(g))
        if p.degree != degree:
            raise InvalidPermutation(f"generator {p!r} acts on {p.degree} points, expected {degree}")
        gen_perms.append(p.images)
    elements = kernels.perm_closure(gen_perms, degree, order_cap)
    if elements is None:
        raise OrderCapExceeded(f"group order exceeds cap {order_cap}")
    index = {e: i for i, e in enumerate(elements)}
    # generator order is kept: ring files refer to generators by position
    return FiniteGroup(degree, elements, tuple(index[g] for g in gen_perms), name=name)


def _quaternion_gens() -> list[tuple[int, ...]]:
    # unit quaternions +-1, +-i, +-j, +-k as axis*2 + (sign < 0)
    table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def left_mult(axis):
        img = []
        for pt in range(8):
            b, neg = divmod(pt, 2)
            s, c = table[(axis, b)]
            if neg:
                s = -s
            img.append(c * 2 + (1 if s < 0 else 0))
        return tuple(img)

    return [left_mult(1), left_mult(2)]


def _cyclic(n):
    return n, [tuple((i + 1) % n for i in range(n))] if n > 1 else []


def _dihedral(n):
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return n, [rot, ref]


def _symmetric(n):
    if n < 2:
        return max(n, 1), []
    return n, [tuple((i + 1) % n for i in range(n)), Perm.from_cycles(n, (0, 1)).images]


def _alternating(n):
    if n < 3:
        return max(n, 1), []
    return n, [Perm.from_cycles(n, (0, 1, k)).images for k in range(2, n)]


BUILTIN_GROUPS = ("1", "C2", "C3", "C4", "C6", "V4", "S3", "D4", "Q8", "A4", "S4")


def builtin_group(name: str, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Named groups: C<n>, D<n> (order 2n), S<n>, A<n>, V4, Q8 and "1"."""
    if name in ("1", "C1", "trivial"):
        degree, gens = 1, []
    elif name == "V4":
        degree, gens = 4, [(1, 0, 3, 2), (2, 3, 0, 1)]
    elif name == "Q8":
        degree, gens = 8, _quaternion_gens()
    else:
        m = re.fullmatch(r"([CDSA])(\d+)", name)
        if not m:
            raise GroupError(f"unknown group name {name!r}")
        kind, n = m.group(1), int(m.group(2))
        degree, gens = {"C": _cyclic, "D": _dihedral, "S": _symmetric, "A": _alternating}[kind](n)
    return generate_group(degree, gens, order_cap=order_cap, name=name)


def group_from_dict(data: dict, order_cap: int = DEFAULT_ORDER_CAP, name: str | None = None) -> FiniteGroup:
    try:
        degree = int(data["degree"])
        gens = [tuple(int(x) for x in g) for g in data.get("generators", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise GroupError(f"malformed group description: {exc}") from None
    return generate_group(degree, gens, order_cap=order_cap, name=name or data.get("name"))


def load_group(spec: str, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Builtin name, or path to a JSON file ``{"degree": n, "generators": [...]}``."""
    path = Path(spec)
    if path.suffix == ".json" or path.exists():
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise GroupError(f"cannot read group file {spec}: {exc}") from None
        if not isinstance(data, dict):
            raise GroupError(f"group file {spec} must hold a JSON object")
        return group_from_dict(data, order_cap=order_cap, name=data.get("name", path.stem))
    return builtin_group(spec, order_cap=order_cap)


def list_subgroups(G: FiniteGroup) -> tuple[SubgroupRef, ...]:
    return G.subgroups


def brute_force_subgroups(G: FiniteGroup, max_order: int = 24) -> list[tuple[int, ...]]:
    """Every subset containing the identity that is closed under products.

    Independent cross-check for ``list_subgroups``; exponential, so refused
    for groups above ``max_order``.
    """
    n = G.order
    if n > max_order:
        raise OrderCapExceeded(f"brute force limited to order {max_order}")
    rows = G._mul_rows
    out = []
    for mask in range(1 << (n - 1)):
        subset = [0] + [i + 1 for i in range(n - 1) if mask >> i & 1]
        if n % len(subset):
            continue
        s = set(subset)
        if all(rows[a][b] in s for a in subset for b in subset):
            out.append(tuple(subset))
    out.sort(key=lambda m: (len(m), m))
    return out


# classification


def _primes(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


@dataclass(frozen=True)
class SubgroupClassification:
    """Which classes ``C x| P`` the subgroup belongs to.

    The prime sets list primes dividing the order.  A prime not dividing the
    order qualifies exactly when the subgroup is cyclic (take P = 1), which
    ``is_p_hyperelementary``/``is_p_elementary`` account for.
    """

    order: int
    is_cyclic: bool
    p_group_prime: int | None
    elementary_primes: frozenset[int]
    hyperelementary_primes: frozenset[int]
    witness: SubgroupRef | None

    def is_p_hyperelementary(self, p: int) -> bool:
        return p in self.hyperelementary_primes or (self.order % p != 0 and self.is_cyclic)

    def is_p_elementary(self, p: int) -> bool:
        return p in self.elementary_primes or (self.order % p != 0 and self.is_cyclic)

    @property
    def is_hyperelementary(self) -> bool:
        return self.is_cyclic or bool(self.hyperelementary_primes)

    @property
    def is_elementary(self) -> bool:
        return self.is_cyclic or bool(self.elementary_primes)


def classify_subgroup(G: FiniteGroup, H: SubgroupRef) -> SubgroupClassification:
    if H.parent is not G:
        raise NotASubgroup(f"{H!r} does not belong to {G!r}")
    n = H.order
    primes = _primes(n)
    subs = H.subgroups
    normal_cyclic = [C for C in subs if C.is_cyclic() and C.is_normal_in(H)]
    hyper, elem = set(), set()
    witness = H if H.is_cyclic() else None
    for p in primes:
        for C in normal_cyclic:
            if C.order % p == 0 or not _is_power_of(n // C.order, p):
                continue
            hyper.add(p)
            if witness is None:
                witness = C
            k = n // C.order
            for P in subs:
                if P.order == k and P.is_normal_in(H) and all(
                        G.m(c, x) == G.m(x, c) for c in C.gens or C.members for x in P.gens or P.members):
                    elem.add(p)
                    break
            break
    p_prime = primes[0] if len(primes) == 1 else None
    return SubgroupClassification(
        order=n,
        is_cyclic=H.is_cyclic(),
        p_group_prime=p_prime,
        elementary_primes=frozenset(elem),
        hyperelementary_primes=frozenset(hyper),
        witness=witness,
    )


FAMILY_TAGS = ("H", "Hp", "E", "Ep", "FC", "custom")


@dataclass(frozen=True)
class Family:
    tag: str
    members: tuple[SubgroupRef, ...]
    prime: int | None = None

    def __contains__(self, H: SubgroupRef) -> bool:
        return H in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    @property
    def label(self) -> str:
        return f"{self.tag}:{self.prime}" if self.prime is not None else self.tag

    def closure_violations(self) -> list[str]:
        out = []
        ids = {H.id for H in self.members}
        for H in self.members:
            for K in H.subgroups:
                if K.id not in ids:
                    out.append(f"subgroup #{K.id} of member #{H.id} missing")
            G = H.parent
            for f in range(G.order):
                c = H.conjugate(f)
                if c.id not in ids:
                    out.append(f"conjugate #{c.id} of member #{H.id} by element {f} missing")
        return out

    def is_closed(self) -> bool:
        return not self.closure_violations()


def subgroup_family(G: FiniteGroup, tag: str, p: int | None = None) -> Family:
    if tag not in ("H", "Hp", "E", "Ep", "FC"):
        raise GroupError(f"unknown family tag {tag!r}")
    if tag in ("Hp", "Ep") and (p is None or len(_primes(p)) != 1 or p < 2 or _primes(p)[0] != p):
        raise GroupError(f"family {tag} needs a prime, got {p!r}")
    pred = {
        "H": lambda c: c.is_hyperelementary,
        "Hp": lambda c: c.is_p_hyperelementary(p),
        "E": lambda c: c.is_elementary,
        "Ep": lambda c: c.is_p_elementary(p),
        "FC": lambda c: c.is_cyclic,
    }[tag]
    members = tuple(H for H in G.subgroups if pred(classify_subgroup(G, H)))
    return Family(tag, members, p if tag in ("Hp", "Ep") else None)


def custom_family(G: FiniteGroup, members: Iterable[SubgroupRef], tag: str = "custom") -> Family:
    mem = tuple(sorted(set(members), key=lambda H: H.id))
    for H in mem:
        if H.parent is not G:
            raise NotASubgroup(f"{H!r} does not belong to {G!r}")
    return Family(tag, mem)


def proper_family(G: FiniteGroup) -> Family:
    return custom_family(G, [H for H in G.subgroups if H.order < G.order], tag="proper")


def all_family(G: FiniteGroup) -> Family:
    return custom_family(G, G.subgroups, tag="all")


def parse_family(G: FiniteGroup, text: str) -> Family:
    """``H``, ``Hp:<p>``, ``E``, ``Ep:<p>``, ``FC``, ``proper`` or ``all``."""
    if text == "proper":
        return proper_family(G)
    if text == "all":
        return all_family(G)
    tag, _, prime = text.partition(":")
    try:
        return subgroup_family(G, tag, int(prime) if prime else None)
    except ValueError as exc:
        raise GroupError(str(exc)) from None


# cosets


def left_coset_reps(J: SubgroupRef, I: SubgroupRef) -> tuple[int, ...]:
    """Least element of each left coset ``aI`` in ``J``; the first is the identity."""
    if not I <= J:
        raise NotNested(f"{I!r} is not contained in {J!r}")
    return tuple(kernels.left_coset_reps(J.parent.table, J.members, I.members))


def double_coset_reps(K: SubgroupRef, J: SubgroupRef, I: SubgroupRef) -> tuple[int, ...]:
    """Least element of each double coset ``J f I`` in ``K``."""
    if not (I <= K and J <= K):
        raise NotNested(f"need {I!r} and {J!r} inside {K!r}")
    return tuple(kernels.double_coset_reps(K.parent.table, K.members, J.members, I.members))


def lcm_of(values: Iterable[int]) -> int:
    r = 1
    for v in values:
        r = r * v // gcd(r, v)
    return r


def orbit_count(K: SubgroupRef, J: SubgroupRef, I: SubgroupRef) -> tuple[int, int]:
    """``([K:J], sum over J f I of [I : I & f^-1 J f])``; the two agree."""
    G = K.parent
    total = sum(I.order // J.conjugate(G.inverse(f)).intersection(I).order for f in double_coset_reps(K, J, I))
    return K.order // J.order, total
