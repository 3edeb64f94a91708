"""Compiled extension against the pure-Python fallback on identical inputs."""

import numpy as np
import pytest

from degres import _kernels_py

compiled = pytest.importorskip(
    "degres._kernels", reason="compiled kernel extension not built"
)


@pytest.fixture(scope="module")
def inputs():
    rng = np.random.default_rng(321)
    n = 40
    cat = np.ascontiguousarray(rng.integers(0, 4, (n, 3)), dtype=np.int64)
    num = np.ascontiguousarray(rng.random((n, 2)))
    cap = np.ascontiguousarray(rng.uniform(0.2, 1.0, n))
    load = np.ascontiguousarray(rng.uniform(0.0, 0.2, n))
    w = np.ascontiguousarray(rng.uniform(0.0, 1.0, n))
    idx = np.asarray(sorted(rng.choice(n, 25, replace=False)), dtype=np.int64)
    perf = np.ascontiguousarray(rng.random((n, 3)))
    struct = np.ascontiguousarray(rng.uniform(0.01, 1.0, (n, 5)))
    return cat, num, cap, load, w, idx, perf, struct


def test_distance_matrix_parity(inputs):
    cat, num, *_ = inputs
    d_py, n_py = _kernels_py.mixed_distance_matrix(cat, num)
    d_cy, n_cy = compiled.mixed_distance_matrix(cat, num)
    assert n_py == n_cy
    np.testing.assert_allclose(d_cy, d_py, rtol=0, atol=1e-12)


def test_fss_reduction_parity(inputs):
    cat, num, cap, load, w, idx, *_ = inputs
    dis, _ = compiled.mixed_distance_matrix(cat, num)
    for delta in (0.2, 0.5, 0.8):
        out_py = _kernels_py.fss_pair_reduction(dis, cap, load, w, idx, delta)
        out_cy = compiled.fss_pair_reduction(dis, cap, load, w, idx, delta)
        assert out_py[0] == out_cy[0]
        assert out_py[2] == out_cy[2]
        assert abs(out_py[1] - out_cy[1]) <= 1e-12


def test_fss_contributions_parity(inputs):
    cat, num, cap, load, w, idx, *_ = inputs
    dis, _ = compiled.mixed_distance_matrix(cat, num)
    s_py, v_py = _kernels_py.fss_pair_contributions(dis, cap, load, w, idx, 0.4)
    s_cy, v_cy = compiled.fss_pair_contributions(dis, cap, load, w, idx, 0.4)
    assert v_py == v_cy
    np.testing.assert_allclose(s_cy, s_py, rtol=0, atol=1e-12)


def test_arq_matrices_parity(inputs):
    *_, perf, struct = inputs
    k_py, nk_py = _kernels_py.gaussian_kernel_matrix(perf, 0.5)
    k_cy, nk_cy = compiled.gaussian_kernel_matrix(perf, 0.5)
    assert nk_py == nk_cy
    np.testing.assert_allclose(k_cy, k_py, rtol=0, atol=1e-14)
    s_py, ns_py = _kernels_py.cosine_dissimilarity_matrix(struct)
    s_cy, ns_cy = compiled.cosine_dissimilarity_matrix(struct)
    assert ns_py == ns_cy
    np.testing.assert_allclose(s_cy, s_py, rtol=0, atol=1e-14)
    r_py = _kernels_py.arq_pair_reduction(k_py, s_py, 0.6, 0.2)
    r_cy = compiled.arq_pair_reduction(k_py, s_py, 0.6, 0.2)
    assert abs(r_py[0] - r_cy[0]) <= 1e-12
    assert r_py[1] == r_cy[1]
    assert r_py[2] == r_cy[2]


def test_greedy_parity(inputs):
    cat, num, *_ = inputs
    dis, _ = compiled.mixed_distance_matrix(cat, num)
    order = np.arange(dis.shape[0], dtype=np.int64)
    for delta in (0.1, 0.4, 0.7):
        kept_py = _kernels_py.greedy_distinct(dis, order, delta)
        kept_cy = compiled.greedy_distinct(dis, order, delta)
        assert kept_py.tolist() == kept_cy.tolist()
