# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pole/zero counting kernels; see _kernels_py for the conventions."""

import numpy as np
cimport numpy as cnp

IMPLEMENTATION = "cython"

ctypedef long long i64


cdef inline int _root_net(i64 z, i64 e, i64 ep, i64 em, i64 half) nogil:
    cdef int net = 0
    if z == 0:
        if e == 0:
            net -= 2
        if e == ep:
            net += 1
        if e == -ep:
            net += 1
    elif z == half:
        if e == 0:
            net -= 2
        if e == em:
            net += 1
        if e == -em:
            net += 1
    return net


cdef inline i64 _mod(i64 a, i64 n) nogil:
    cdef i64 r = a % n
    return r + n if r < 0 else r


def net_counts(zetas, vexps, roots, ep, em, long order):
    cdef i64[:, ::1] za = np.ascontiguousarray(zetas, dtype=np.int64)
    cdef i64[:, ::1] ve = np.ascontiguousarray(vexps, dtype=np.int64)
    cdef i64[:, ::1] rk = np.ascontiguousarray(roots, dtype=np.int64)
    cdef i64[::1] pp = np.ascontiguousarray(ep, dtype=np.int64)
    cdef i64[::1] pm = np.ascontiguousarray(em, dtype=np.int64)
    cdef Py_ssize_t npts = za.shape[0], n = za.shape[1], nroots = rk.shape[0]
    cdef Py_ssize_t i, j, c
    cdef i64 z, e, half = order // 2
    cdef int net
    out = np.zeros(npts, dtype=np.int64)
    cdef i64[::1] res = out
    with nogil:
        for i in range(npts):
            net = 0
            for j in range(nroots):
                z = 0
                e = 0
                for c in range(n):
                    if rk[j, c] != 0:
                        z += rk[j, c] * za[i, c]
                        e += rk[j, c] * ve[i, c]
                net += _root_net(_mod(z, order), e, pp[j], pm[j], half)
            res[i] = net
    return [int(x) for x in out]


def grid_scan(int rank, zeta_values, int vexp_bound, roots, ep, em, long order):
    cdef i64[::1] zv = np.ascontiguousarray(zeta_values, dtype=np.int64)
    cdef i64[:, ::1] rk = np.ascontiguousarray(roots, dtype=np.int64).reshape(-1, rank) if rank else np.zeros((0, 0), dtype=np.int64)
    cdef i64[::1] pp = np.ascontiguousarray(ep, dtype=np.int64)
    cdef i64[::1] pm = np.ascontiguousarray(em, dtype=np.int64)
    cdef Py_ssize_t nz = zv.shape[0], ne = 2 * vexp_bound + 1, ncoord = nz * ne
    cdef Py_ssize_t nroots = rk.shape[0]
    cdef Py_ssize_t j, c, k
    cdef i64 z, e, half = order // 2
    cdef int net
    cdef i64[::1] idx = np.zeros(max(rank, 1), dtype=np.int64)
    cdef i64[::1] ca = np.zeros(max(rank, 1), dtype=np.int64)
    cdef i64[::1] ce = np.zeros(max(rank, 1), dtype=np.int64)
    found = []
    if rank == 0:
        return [()]
    while True:
        for c in range(rank):
            ca[c] = zv[idx[c] // ne]
            ce[c] = idx[c] % ne - vexp_bound
        net = 0
        for j in range(nroots):
            z = 0
            e = 0
            for c in range(rank):
                if rk[j, c] != 0:
                    z += rk[j, c] * ca[c]
                    e += rk[j, c] * ce[c]
            net += _root_net(_mod(z, order), e, pp[j], pm[j], half)
        if net == rank:
            row = []
            for c in range(rank):
                row.append(ca[c])
                row.append(ce[c])
            found.append(tuple(row))
        k = rank - 1
        while k >= 0:
            idx[k] += 1
            if idx[k] < ncoord:
                break
            idx[k] = 0
            k -= 1
        if k < 0:
            break
    return found
