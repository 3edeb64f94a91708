"""Pure-Python pairwise kernels.

Fallback used when the compiled extension (degres._kernels) is unavailable.
Both implementations follow the same contract:

  * pair loops run over unordered pairs in ascending index order and double
    symmetric ordered sums, so results are bit-stable per backend;
  * every function returns its pairwise-evaluation count alongside the
    result so callers can feed the instrumentation counters.

Keep the arithmetic expression shapes in sync with _kernels.pyx: the two
backends are expected to agree to within one ulp.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "python"


def mixed_distance_matrix(cat, num):
    """All-pairs mixed (categorical/numeric) mean distance.

    cat: int64 array (n, n_cat); num: float64 array (n, n_num).
    Returns (matrix, evaluation count); count is n(n-1)/2.
    """
    n = cat.shape[0]
    n_cat = cat.shape[1]
    n_num = num.shape[1]
    total = float(n_cat + n_num)
    crows = cat.tolist()
    nrows = num.tolist()
    out = np.zeros((n, n), dtype=np.float64)
    evals = 0
    for i in range(n):
        ci = crows[i]
        ui = nrows[i]
        for j in range(i + 1, n):
            cj = crows[j]
            uj = nrows[j]
            acc = 0.0
            for f in range(n_cat):
                if ci[f] != cj[f]:
                    acc += 1.0
            for f in range(n_num):
                acc += abs(ui[f] - uj[f])
            d = acc / total
            out[i, j] = d
            out[j, i] = d
            evals += 1
    return out, evals


def fss_pair_reduction(dis, cap, load, w, idx, delta):
    """Ordered-pair sums for the substitution scores over the subset idx.

    Returns (distinct ordered-pair count, weighted ordered-pair sum,
    ordered summand visits). Visits equal m(m-1) for m = len(idx).
    """
    drows = dis.tolist()
    cl = cap.tolist()
    ll = load.tolist()
    wl = w.tolist()
    positions = idx.tolist()
    m = len(positions)
    distinct = 0
    weighted = 0.0
    visits = 0
    for a in range(m):
        i = positions[a]
        di = drows[i]
        for b in range(a + 1, m):
            j = positions[b]
            visits += 2
            d = di[j]
            if d > delta:
                distinct += 2
                cmin = cl[i] if cl[i] < cl[j] else cl[j]
                pw = (cmin / (1.0 + abs(ll[i] - ll[j]))) * d
                weighted += pw * wl[i] * wl[j]
    return distinct, 2.0 * weighted, visits


def fss_pair_contributions(dis, cap, load, w, idx, delta):
    """Per-element ordered-pair contribution to the weighted score.

    scores[a] = sum over j != idx[a] of the weighted summand with idx[a]
    first; the summand is symmetric so each unordered pair feeds both ends.
    """
    drows = dis.tolist()
    cl = cap.tolist()
    ll = load.tolist()
    wl = w.tolist()
    positions = idx.tolist()
    m = len(positions)
    scores = np.zeros(m, dtype=np.float64)
    visits = 0
    for a in range(m):
        i = positions[a]
        di = drows[i]
        for b in range(a + 1, m):
            j = positions[b]
            visits += 2
            d = di[j]
            if d > delta:
                cmin = cl[i] if cl[i] < cl[j] else cl[j]
                pw = (cmin / (1.0 + abs(ll[i] - ll[j]))) * d
                term = pw * wl[i] * wl[j]
                scores[a] += term
                scores[b] += term
    return scores, visits


def gaussian_kernel_matrix(perf, sigma):
    """Gaussian similarity K[i,j] = exp(-|Pi - Pj|^2 / (2 sigma^2))."""
    n = perf.shape[0]
    d = perf.shape[1]
    rows = perf.tolist()
    denom = 2.0 * sigma * sigma
    out = np.empty((n, n), dtype=np.float64)
    evals = 0
    for i in range(n):
        out[i, i] = 1.0
        pi = rows[i]
        for j in range(i + 1, n):
            pj = rows[j]
            sq = 0.0
            for f in range(d):
                diff = pi[f] - pj[f]
                sq += diff * diff
            v = math.exp(-sq / denom)
            out[i, j] = v
            out[j, i] = v
            evals += 1
    return out, evals


def cosine_dissimilarity_matrix(struct):
    """One minus cosine similarity, clamped to [0, 1]; zero diagonal.

    Callers must reject zero vectors before calling.
    """
    n = struct.shape[0]
    k = struct.shape[1]
    rows = struct.tolist()
    norms = [0.0] * n
    for i in range(n):
        acc = 0.0
        ri = rows[i]
        for f in range(k):
            acc += ri[f] * ri[f]
        norms[i] = math.sqrt(acc)
    out = np.zeros((n, n), dtype=np.float64)
    evals = 0
    for i in range(n):
        ri = rows[i]
        for j in range(i + 1, n):
            rj = rows[j]
            dot = 0.0
            for f in range(k):
                dot += ri[f] * rj[f]
            v = 1.0 - dot / (norms[i] * norms[j])
            if v < 0.0:
                v = 0.0
            elif v > 1.0:
                v = 1.0
            out[i, j] = v
            out[j, i] = v
            evals += 1
    return out, evals


def arq_pair_reduction(kmat, dmat, epsilon, delta):
    """Ordered-pair sums for the resilience quotients.

    Returns (soft ordered-pair sum of K*Ds, count of ordered pairs passing
    K >= epsilon and Ds > delta, ordered summand visits).
    """
    n = kmat.shape[0]
    krows = kmat.tolist()
    drows = dmat.tolist()
    soft = 0.0
    hard = 0
    visits = 0
    for i in range(n):
        ki = krows[i]
        di = drows[i]
        for j in range(i + 1, n):
            visits += 2
            soft += ki[j] * di[j]
            if ki[j] >= epsilon and di[j] > delta:
                hard += 2
    return 2.0 * soft, hard, visits


def greedy_distinct(dis, order, delta):
    """Greedy maximal subset with all retained pairs strictly above delta.

    order: candidate row indices, scanned first-to-last; each candidate is
    kept iff its distance to every already-kept candidate exceeds delta.
    Returns the kept indices in scan order.
    """
    drows = dis.tolist()
    kept: list[int] = []
    for pos in order.tolist():
        row = drows[pos]
        ok = True
        for other in kept:
            if row[other] <= delta:
                ok = False
                break
        if ok:
            kept.append(pos)
    return np.asarray(kept, dtype=np.int64)
