# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pairwise kernels.

Mirror of degres._kernels_py with identical pair ordering and expression
shapes; see that module for the contract. Selected automatically by
degres._backend when built.
"""

from libc.math cimport exp, fabs, sqrt

import numpy as np

BACKEND_NAME = "cython"


def mixed_distance_matrix(object cat_arr, object num_arr):
    cdef const long long[:, ::1] cat = cat_arr
    cdef const double[:, ::1] num = num_arr
    cdef Py_ssize_t n = cat.shape[0]
    cdef Py_ssize_t n_cat = cat.shape[1]
    cdef Py_ssize_t n_num = num.shape[1]
    cdef double total = <double> (n_cat + n_num)
    out_arr = np.zeros((n, n), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, f
    cdef double acc, d
    cdef long long evals = 0
    for i in range(n):
        for j in range(i + 1, n):
            acc = 0.0
            for f in range(n_cat):
                if cat[i, f] != cat[j, f]:
                    acc += 1.0
            for f in range(n_num):
                acc += fabs(num[i, f] - num[j, f])
            d = acc / total
            out[i, j] = d
            out[j, i] = d
            evals += 1
    return out_arr, int(evals)


def fss_pair_reduction(object dis_arr, object cap_arr, object load_arr,
                       object w_arr, object idx_arr, double delta):
    cdef const double[:, ::1] dis = dis_arr
    cdef const double[::1] cap = cap_arr
    cdef const double[::1] load = load_arr
    cdef const double[::1] w = w_arr
    cdef const long long[::1] idx = idx_arr
    cdef Py_ssize_t m = idx.shape[0]
    cdef Py_ssize_t a, b, i, j
    cdef double d, cmin, pw, weighted = 0.0
    cdef long long distinct = 0, visits = 0
    for a in range(m):
        i = <Py_ssize_t> idx[a]
        for b in range(a + 1, m):
            j = <Py_ssize_t> idx[b]
            visits += 2
            d = dis[i, j]
            if d > delta:
                distinct += 2
                cmin = cap[i] if cap[i] < cap[j] else cap[j]
                pw = (cmin / (1.0 + fabs(load[i] - load[j]))) * d
                weighted += pw * w[i] * w[j]
    return int(distinct), 2.0 * weighted, int(visits)


def fss_pair_contributions(object dis_arr, object cap_arr, object load_arr,
                           object w_arr, object idx_arr, double delta):
    cdef const double[:, ::1] dis = dis_arr
    cdef const double[::1] cap = cap_arr
    cdef const double[::1] load = load_arr
    cdef const double[::1] w = w_arr
    cdef const long long[::1] idx = idx_arr
    cdef Py_ssize_t m = idx.shape[0]
    scores_arr = np.zeros(m, dtype=np.float64)
    cdef double[::1] scores = scores_arr
    cdef Py_ssize_t a, b, i, j
    cdef double d, cmin, pw, term
    cdef long long visits = 0
    for a in range(m):
        i = <Py_ssize_t> idx[a]
        for b in range(a + 1, m):
            j = <Py_ssize_t> idx[b]
            visits += 2
            d = dis[i, j]
            if d > delta:
                cmin = cap[i] if cap[i] < cap[j] else cap[j]
                pw = (cmin / (1.0 + fabs(load[i] - load[j]))) * d
                term = pw * w[i] * w[j]
                scores[a] += term
                scores[b] += term
    return scores_arr, int(visits)


def gaussian_kernel_matrix(object perf_arr, double sigma):
    cdef const double[:, ::1] perf = perf_arr
    cdef Py_ssize_t n = perf.shape[0]
    cdef Py_ssize_t d = perf.shape[1]
    cdef double denom = 2.0 * sigma * sigma
    out_arr = np.empty((n, n), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, f
    cdef double sq, diff, v
    cdef long long evals = 0
    for i in range(n):
        out[i, i] = 1.0
        for j in range(i + 1, n):
            sq = 0.0
            for f in range(d):
                diff = perf[i, f] - perf[j, f]
                sq += diff * diff
            v = exp(-sq / denom)
            out[i, j] = v
            out[j, i] = v
            evals += 1
    return out_arr, int(evals)


def cosine_dissimilarity_matrix(object struct_arr):
    cdef const double[:, ::1] struct = struct_arr
    cdef Py_ssize_t n = struct.shape[0]
    cdef Py_ssize_t k = struct.shape[1]
    norms_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] norms = norms_arr
    cdef Py_ssize_t i, j, f
    cdef double acc, dot, v
    for i in range(n):
        acc = 0.0
        for f in range(k):
            acc += struct[i, f] * struct[i, f]
        norms[i] = sqrt(acc)
    out_arr = np.zeros((n, n), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef long long evals = 0
    for i in range(n):
        for j in range(i + 1, n):
            dot = 0.0
            for f in range(k):
                dot += struct[i, f] * struct[j, f]
            v = 1.0 - dot / (norms[i] * norms[j])
            if v < 0.0:
                v = 0.0
            elif v > 1.0:
                v = 1.0
            out[i, j] = v
            out[j, i] = v
            evals += 1
    return out_arr, int(evals)


def arq_pair_reduction(object kmat_arr, object dmat_arr, double epsilon,
                       double delta):
    cdef const double[:, ::1] kmat = kmat_arr
    cdef const double[:, ::1] dmat = dmat_arr
    cdef Py_ssize_t n = kmat.shape[0]
    cdef Py_ssize_t i, j
    cdef double soft = 0.0
    cdef long long hard = 0, visits = 0
    for i in range(n):
        for j in range(i + 1, n):
            visits += 2
            soft += kmat[i, j] * dmat[i, j]
            if kmat[i, j] >= epsilon and dmat[i, j] > delta:
                hard += 2
    return 2.0 * soft, int(hard), int(visits)


def greedy_distinct(object dis_arr, object order_arr, double delta):
    cdef const double[:, ::1] dis = dis_arr
    cdef const long long[::1] order = order_arr
    cdef Py_ssize_t m = order.shape[0]
    kept_arr = np.empty(m, dtype=np.int64)
    cdef long long[::1] kept = kept_arr
    cdef Py_ssize_t count = 0
    cdef Py_ssize_t a, t, pos
    cdef bint ok
    for a in range(m):
        pos = <Py_ssize_t> order[a]
        ok = True
        for t in range(count):
            if dis[pos, <Py_ssize_t> kept[t]] <= delta:
                ok = False
                break
        if ok:
            kept[count] = pos
            count += 1
    return kept_arr[:count].copy()
