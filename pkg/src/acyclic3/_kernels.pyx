# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Same contracts and node counts as ``_kernels_py``."""

from libc.stdlib cimport malloc, calloc, free
import time

BACKEND = "cython"


cdef int* _ints(seq, Py_ssize_t size) except NULL:
    cdef int* buf = <int*>malloc(max(size, 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(size):
        buf[i] = seq[i]
    return buf


def find_bichromatic_cycle(int n, eu, ev, colors, int k):
    cdef Py_ssize_t m = len(eu)
    cdef int width = k + 1
    cdef int* U = _ints(eu, m)
    cdef int* V = _ints(ev, m)
    cdef int* C = _ints(colors, m)
    cdef int* at = <int*>malloc(max(n * width, 1) * sizeof(int))
    cdef int* stamp = <int*>calloc(max(m, 1), sizeof(int))
    # edges bucketed by color: start offsets + flat list
    cdef int* cstart = <int*>calloc(width + 1, sizeof(int))
    cdef int* clist = <int*>malloc(max(m, 1) * sizeof(int))
    cdef int* cfill = <int*>calloc(width + 1, sizeof(int))
    cdef Py_ssize_t i, e
    cdef int a, b, c, v, want, f, e0, start, pid = 0, idx
    cdef bint closed
    result = None
    try:
        if at == NULL or stamp == NULL or cstart == NULL or clist == NULL or cfill == NULL:
            raise MemoryError()
        for i in range(n * width):
            at[i] = -1
        for e in range(m):
            c = C[e]
            if c:
                at[U[e] * width + c] = e
                at[V[e] * width + c] = e
                cstart[c + 1] += 1
        for c in range(1, width + 1):
            cstart[c] += cstart[c - 1]
        for e in range(m):
            c = C[e]
            if c:
                clist[cstart[c] + cfill[c]] = e
                cfill[c] += 1
        for a in range(1, width):
            if cfill[a] == 0:
                continue
            for b in range(a + 1, width):
                if cfill[b] == 0:
                    continue
                pid += 1
                for idx in range(cstart[a], cstart[a] + cfill[a]):
                    e0 = clist[idx]
                    if stamp[e0] == pid:
                        continue
                    stamp[e0] = pid
                    start = U[e0]
                    walk = [e0]
                    v = V[e0]
                    want = b
                    closed = False
                    while True:
                        f = at[v * width + want]
                        if f < 0:
                            break
                        if f == e0:
                            closed = True
                            break
                        stamp[f] = pid
                        walk.append(f)
                        v = U[f] if V[f] == v else V[f]
                        want = a if want == b else b
                    if closed:
                        result = walk
                        return result
                    v = start
                    want = b
                    while True:
                        f = at[v * width + want]
                        if f < 0 or stamp[f] == pid:
                            break
                        stamp[f] = pid
                        v = U[f] if V[f] == v else V[f]
                        want = a if want == b else b
        return result
    finally:
        free(U); free(V); free(C); free(at); free(stamp)
        free(cstart); free(clist); free(cfill)


def search(int n, eu, ev, order, int k, bint symmetry=True, long max_solutions=1,
           long long node_limit=0, double time_limit=0.0):
    cdef Py_ssize_t m = len(order)
    cdef Py_ssize_t me = len(eu)
    if m == 0:
        return [[0] * me], 0, True
    cdef int width = k + 1
    cdef int* U = _ints(eu, me)
    cdef int* V = _ints(ev, me)
    cdef int* O = _ints(order, m)
    cdef int* at = <int*>malloc(max(n * width, 1) * sizeof(int))
    cdef int* colors = <int*>calloc(max(me, 1), sizeof(int))
    cdef int* choice = <int*>calloc(m, sizeof(int))
    cdef int* maxused = <int*>calloc(m + 1, sizeof(int))
    cdef Py_ssize_t level = 0, i
    cdef int e, u, v, prev, lim, c, b, w, want, f
    cdef bint ok
    cdef long long nodes = 0
    cdef double deadline = 0.0
    solutions = []
    try:
        if at == NULL or colors == NULL or choice == NULL or maxused == NULL:
            raise MemoryError()
        for i in range(n * width):
            at[i] = -1
        if time_limit > 0:
            deadline = time.perf_counter() + time_limit
        while level >= 0:
            e = O[level]
            u = U[e]
            v = V[e]
            prev = choice[level]
            if prev:
                at[u * width + prev] = -1
                at[v * width + prev] = -1
                colors[e] = 0
            lim = maxused[level] + 1 if symmetry else k
            if lim > k:
                lim = k
            c = prev + 1
            while c <= lim:
                if at[u * width + c] < 0 and at[v * width + c] < 0:
                    ok = True
                    for b in range(1, width):
                        if b == c or at[u * width + b] < 0 or at[v * width + b] < 0:
                            continue
                        w = u
                        want = b
                        while True:
                            f = at[w * width + want]
                            if f < 0:
                                break
                            w = U[f] if V[f] == w else V[f]
                            if w == v:
                                ok = False
                                break
                            want = c if want == b else b
                        if not ok:
                            break
                    if ok:
                        break
                c += 1
            if c > lim:
                choice[level] = 0
                level -= 1
                continue
            at[u * width + c] = e
            at[v * width + c] = e
            colors[e] = c
            choice[level] = c
            nodes += 1
            maxused[level + 1] = maxused[level] if maxused[level] > c else c
            if level + 1 == m:
                solutions.append([colors[i] for i in range(me)])
                if len(solutions) >= max_solutions:
                    return solutions, nodes, True
            else:
                level += 1
                choice[level] = 0
            if node_limit and nodes >= node_limit:
                return solutions, nodes, False
            if deadline > 0 and (nodes & 4095) == 0 and time.perf_counter() > deadline:
                return solutions, nodes, False
        return solutions, nodes, True
    finally:
        free(U); free(V); free(O); free(at); free(colors); free(choice); free(maxused)
