# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; same contract as ``_kernels_py``."""

import numpy as np

BACKEND = "cython"


def prepare(mul, inv):
    return (np.ascontiguousarray(mul, dtype=np.int32),
            np.ascontiguousarray(inv, dtype=np.int32))


def perm_closure(gens, int degree, Py_ssize_t cap):
    cdef int x
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    cdef list nxt
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple([p[x] for x in g])
                if q not in seen:
                    seen.add(q)
                    if len(seen) > cap:
                        return None
                    nxt.append(q)
        frontier = nxt
    return sorted(seen)


cdef Py_ssize_t _find(int[:, ::1] el, int[::1] key) nogil:
    cdef Py_ssize_t lo = 0, hi = el.shape[0] - 1, mid, k
    cdef int deg = el.shape[1]
    cdef int c
    while lo <= hi:
        mid = (lo + hi) // 2
        c = 0
        for k in range(deg):
            if el[mid, k] != key[k]:
                c = -1 if el[mid, k] < key[k] else 1
                break
        if c == 0:
            return mid
        if c < 0:
            lo = mid + 1
        else:
            hi = mid - 1
    return -1


def mul_table(elements):
    cdef Py_ssize_t n = len(elements)
    cdef int deg = len(elements[0]) if n else 0
    arr = np.array(elements, dtype=np.int32).reshape(n, deg)
    cdef int[:, ::1] el = arr
    tmp_arr = np.zeros(deg, dtype=np.int32)
    cdef int[::1] tmp = tmp_arr
    mul_arr = np.zeros((n, n), dtype=np.int32)
    cdef int[:, ::1] mul = mul_arr
    cdef Py_ssize_t a, b, x
    for a in range(n):
        for b in range(n):
            for x in range(deg):
                tmp[x] = el[a, el[b, x]]
            mul[a, b] = <int>_find(el, tmp)
    inv = [0] * n
    for a in range(n):
        for b in range(n):
            if mul[a, b] == 0:
                inv[a] = b
                break
    return mul_arr.tolist(), inv


cdef tuple _generated(int[:, ::1] mul, gens):
    cdef Py_ssize_t n = mul.shape[0]
    cdef Py_ssize_t ng = len(gens)
    cdef Py_ssize_t head = 0, tail = 1, k
    cdef int x, y
    flag_arr = np.zeros(n, dtype=np.int8)
    queue_arr = np.zeros(n, dtype=np.int32)
    gen_arr = np.array(gens, dtype=np.int32).reshape(ng)
    cdef signed char[::1] flag = flag_arr
    cdef int[::1] queue = queue_arr
    cdef int[::1] g = gen_arr
    flag[0] = 1
    queue[0] = 0
    while head < tail:
        x = queue[head]
        head += 1
        for k in range(ng):
            y = mul[x, g[k]]
            if not flag[y]:
                flag[y] = 1
                queue[tail] = y
                tail += 1
    return tuple(np.flatnonzero(flag_arr).tolist())


def generated(table, gens):
    return _generated(table[0], tuple(gens))


def enumerate_subgroups(table):
    cdef int[:, ::1] mul = table[0]
    cdef Py_ssize_t n = mul.shape[0]
    cdef int g
    found = {}
    cyclic = []
    for g in range(n):
        mem = _generated(mul, (g,))
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
                new = _generated(mul, new_gens)
                if new not in found:
                    found[new] = new_gens
                    nxt.append((new, new_gens))
        frontier = nxt
    return [(mem, found[mem]) for mem in sorted(found, key=lambda m: (len(m), m))]


def left_coset_reps(table, big, small):
    cdef int[:, ::1] mul = table[0]
    cdef Py_ssize_t n = mul.shape[0]
    cdef signed char[::1] covered = np.zeros(n, dtype=np.int8)
    small_arr = np.array(small, dtype=np.int32).reshape(len(small))
    cdef int[::1] sm = small_arr
    cdef Py_ssize_t k, ns = sm.shape[0]
    cdef int x
    reps = []
    for x in sorted(big):
        if covered[x]:
            continue
        reps.append(x)
        for k in range(ns):
            covered[mul[x, sm[k]]] = 1
    return reps


def double_coset_reps(table, ambient, left, right):
    cdef int[:, ::1] mul = table[0]
    cdef Py_ssize_t n = mul.shape[0]
    cdef signed char[::1] covered = np.zeros(n, dtype=np.int8)
    l_arr = np.array(left, dtype=np.int32).reshape(len(left))
    r_arr = np.array(right, dtype=np.int32).reshape(len(right))
    cdef int[::1] lt = l_arr
    cdef int[::1] rt = r_arr
    cdef Py_ssize_t i, j
    cdef int x, ax
    reps = []
    for x in sorted(ambient):
        if covered[x]:
            continue
        reps.append(x)
        for i in range(lt.shape[0]):
            ax = mul[lt[i], x]
            for j in range(rt.shape[0]):
                covered[mul[ax, rt[j]]] = 1
    return reps


cdef list _identity(Py_ssize_t k):
    cdef Py_ssize_t i, j
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def snf(a, Py_ssize_t m, Py_ssize_t n):
    cdef list d = [list(row) for row in a]
    cdef list u = _identity(m)
    cdef list ui = _identity(m)
    cdef list v = _identity(n)
    cdef list vi = _identity(n)
    cdef Py_ssize_t t = 0, i, j, k, bi, bj, bad
    cdef list row, ri, rt, rb, vj, vt
    cdef bint clean
    while t < m and t < n:
        while True:
            best = 0
            bi = -1
            bj = -1
            for i in range(t, m):
                row = d[i]
                for j in range(t, n):
                    x = row[j]
                    if x and (best == 0 or abs(x) < best):
                        best = abs(x)
                        bi = i
                        bj = j
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
                        ri = d[i]
                        rt = d[t]
                        for j in range(t, n):
                            ri[j] -= q * rt[j]
                        ri = u[i]
                        rt = u[t]
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
                        vj = vi[j]
                        vt = vi[t]
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
            rt = d[t]
            rb = d[bad]
            for j in range(t, n):
                rt[j] += rb[j]
            rt = u[t]
            rb = u[bad]
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
