"""Pure-Python kernels.

Mirror of ``_ckernels.pyx``; every function here has the same signature and
returns identical values.  ``greenmackey.kernels`` picks one of the two at
import time.
"""

BACKEND = "python"


def prepare(mul, inv):
    """Turn numpy multiplication/inverse tables into this backend's handle."""
    return (mul.tolist(), inv.tolist())


def perm_closure(gens, degree, cap):
    """All products of ``gens`` (tuples of images), sorted; ``None`` past ``cap``."""
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                # (p o g)(x) = p[g[x]]
                q = tuple([p[x] for x in g])
                if q not in seen:
                    seen.add(q)
                    if len(seen) > cap:
                        return None
                    nxt.append(q)
        frontier = nxt
    return sorted(seen)


def mul_table(elements):
    index = {p: k for k, p in enumerate(elements)}
    n = len(elements)
    mul = [[0] * n for _ in range(n)]
    for a, p in enumerate(elements):
        row = mul[a]
        for b, q in enumerate(elements):
            row[b] = index[tuple([p[x] for x in q])]
    inv = [0] * n
    for a in range(n):
        row = mul[a]
        for b in range(n):
            if row[b] == 0:
                inv[a] = b
                break
    return mul, inv


def generated(table, gens):
    """Sorted member tuple of the subgroup generated by element indices ``gens``."""
    mul = table[0]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            row = mul[x]
            for g in gens:
                y = row[g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen))


def enumerate_subgroups(table):
    """Every subgroup as ``(members, gens)``, by joining cyclic subgroups."""
    mul = table[0]
    n = len(mul)
    found = {}
    cyclic = []
    for g in range(n):
        mem = generated(table, (g,))
        if mem not in found:
            found[mem] = (g,) if g else ()
            cyclic.append((mem, g))
    frontier = list(found.items())
    while frontier:
        nxt = []
        for mem, gens in frontier:
            inside = set(mem)
            for cmem, c in cyclic:
                if c in inside:
                    continue
                new_gens = gens + (c,)
                new = generated(table, new_gens)
                if new not in found:
                    found[new] = new_gens
                    nxt.append((new, new_gens))
        frontier = nxt
    return [(mem, found[mem]) for mem in sorted(found, key=lambda m: (len(m), m))]


def left_coset_reps(table, big, small):
    """Minimal element of each left coset x*small inside ``big``, ascending."""
    mul = table[0]
    covered = set()
    reps = []
    for x in sorted(big):
        if x in covered:
            continue
        reps.append(x)
        row = mul[x]
        for h in small:
            covered.add(row[h])
    return reps


def double_coset_reps(table, ambient, left, right):
    """Minimal element of each double coset left*x*right inside ``ambient``."""
    mul = table[0]
    covered = set()
    reps = []
    for x in sorted(ambient):
        if x in covered:
            continue
        reps.append(x)
        for a in left:
            row = mul[mul[a][x]]
            for b in right:
                covered.add(row[b])
    return reps


def _identity(k):
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def snf(a, m, n):
    """Smith normal form of the m x n integer matrix ``a`` (list of lists).

    Returns ``(U, D, V, Uinv, Vinv)`` with U*A*V = D.  Pivot is the
    smallest-magnitude nonzero entry of the active block, ties broken
    row-major.
    """
    d = [list(row) for row in a]
    u = _identity(m)
    ui = _identity(m)
    v = _identity(n)
    vi = _identity(n)
    t = 0
    while t < m and t < n:
        while True:
            best = 0
            bi = bj = -1
            for i in range(t, m):
                row = d[i]
                for j in range(t, n):
                    x = row[j]
                    if x and (best == 0 or abs(x) < best):
                        best = abs(x)
                        bi, bj = i, j
            if bi < 0:
                return u, d, v, ui, vi
            if bi != t:
                d[t], d[bi] = d[bi], d[t]
                u[t], u[bi] = u[bi], u[t]
                for row in ui:
                    row[t], row[bi] = row[bi], row[t]
            if bj != t:
                for row in d:
                    row[t], row[bj] = row[bj], row[t]
                for row in v:
                    row[t], row[bj] = row[bj], row[t]
                vi[t], vi[bj] = vi[bj], vi[t]
            p = d[t][t]
            clean = True
            for i in range(t + 1, m):
                x = d[i][t]
                if x:
                    q = x // p
                    if q:
                        ri, rt = d[i], d[t]
                        for j in range(t, n):
                            ri[j] -= q * rt[j]
                        ri, rt = u[i], u[t]
                        for j in range(m):
                            ri[j] -= q * rt[j]
                        for row in ui:
                            row[t] += q * row[i]
                    if d[i][t]:
                        clean = False
            rt = d[t]
            for j in range(t + 1, n):
                x = rt[j]
                if x:
                    q = x // p
                    if q:
                        for row in d:
                            row[j] -= q * row[t]
                        for row in v:
                            row[j] -= q * row[t]
                        vj, vt = vi[j], vi[t]
                        for k in range(n):
                            vt[k] += q * vj[k]
                    if rt[j]:
                        clean = False
            if not clean:
                continue
            bad = -1
            for i in range(t + 1, m):
                row = d[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            # row_t += row_bad
            rt, rb = d[t], d[bad]
            for j in range(t, n):
                rt[j] += rb[j]
            rt, rb = u[t], u[bad]
            for j in range(m):
                rt[j] += rb[j]
            for row in ui:
                row[bad] -= row[t]
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
            for row in ui:
                row[t] = -row[t]
        t += 1
    return u, d, v, ui, vi
