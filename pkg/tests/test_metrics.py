import math

import numpy as np
import pytest

from housedl import (
    ErrorReport,
    OrthogonalProduct,
    RngSpec,
    SparseMatrix,
    SparseModel,
    equivalent_product_pair,
    error_report,
    frobenius_error_v,
    linf_error_up_to_sign,
    make_factor,
    make_instance,
    measured_snr_db,
    sample_householder_vector,
    support_f1,
    to_dense,
    x_error_per_entry,
)


def test_linf_trivial_cases():
    g = np.random.default_rng(0)
    u = make_factor(g.standard_normal(10)).u
    assert linf_error_up_to_sign(u, u) == 0.0
    assert linf_error_up_to_sign(u, -u) == 0.0
    assert linf_error_up_to_sign(np.array([1.0, 0.0]), np.array([0.8, 0.6])) == pytest.approx(0.6)


def test_linf_sign_flip_pseudometric():
    g = np.random.default_rng(1)
    u = make_factor(g.standard_normal(15)).u
    v = make_factor(g.standard_normal(15)).u
    base = linf_error_up_to_sign(u, v)
    assert linf_error_up_to_sign(-u, v) == base
    assert linf_error_up_to_sign(u, -v) == base


def test_linf_dim_mismatch():
    with pytest.raises(ValueError):
        linf_error_up_to_sign(np.ones(3), np.ones(4))


def test_frobenius_same_factors_zero():
    f = sample_householder_vector(12, rng=RngSpec(2))
    V = OrthogonalProduct((f, f))
    assert frobenius_error_v(V, V) == 0.0


def test_frobenius_depends_only_on_products():
    # H H1 = H2 H3, so the two different factorizations are at distance 0
    g = np.random.default_rng(3)
    u = make_factor(g.standard_normal(16))
    u1, u2, u3 = equivalent_product_pair(u.u)
    A = OrthogonalProduct((u, u1))
    B = OrthogonalProduct((u2, u3))
    assert frobenius_error_v(A, B) <= 1e-10


def test_frobenius_single_reflector_vs_identity():
    for n in (2, 5, 40):
        e1 = np.zeros(n)
        e1[0] = 1.0
        V = OrthogonalProduct((make_factor(e1),))
        assert frobenius_error_v(V, OrthogonalProduct()) == pytest.approx(2.0)


def test_frobenius_accepts_dense_argument():
    g = np.random.default_rng(4)
    f = make_factor(g.standard_normal(9))
    V = OrthogonalProduct((f,))
    assert frobenius_error_v(V, to_dense(V)) <= 1e-12


def test_frobenius_matrix_free_agrees_with_dense():
    g = np.random.default_rng(5)
    for n in (64, 256):
        V = OrthogonalProduct(tuple(make_factor(g.standard_normal(n)) for _ in range(3)))
        W = OrthogonalProduct(tuple(make_factor(g.standard_normal(n)) for _ in range(2)))
        dense = frobenius_error_v(V, W, matrix_free=False)
        free = frobenius_error_v(V, W, matrix_free=True)
        assert abs(dense - free) <= 1e-8
        dense = frobenius_error_v(V, to_dense(W), matrix_free=False)
        free = frobenius_error_v(V, to_dense(W), matrix_free=True)
        assert abs(dense - free) <= 1e-8


def test_x_error_trivial_cases():
    X = np.full((4, 5), 0.45)
    assert x_error_per_entry(X, X) == 0.0
    assert x_error_per_entry(X, np.zeros((4, 5))) == pytest.approx(0.45)
    g = np.random.default_rng(6)
    E = g.standard_normal((4, 5))
    f = np.linalg.norm(E)
    assert x_error_per_entry(X + E, X) == pytest.approx(f / math.sqrt(20))


def test_x_error_shape_mismatch():
    with pytest.raises(ValueError):
        x_error_per_entry(np.ones((2, 3)), np.ones((3, 2)))


def test_support_f1_cases():
    A = SparseMatrix((2, 2), [0], [0], [1.0])
    B = SparseMatrix((2, 2), [0], [0], [2.0])
    assert support_f1(A, B) == 1.0
    empty = SparseMatrix((2, 2), [], [], [])
    assert support_f1(empty, empty) == 1.0
    assert support_f1(A, empty) == 0.0
    C = SparseMatrix((2, 2), [0, 1], [0, 1], [1.0, 1.0])
    assert support_f1(A, C) == pytest.approx(2 / 3)


def test_measured_snr_trivial_cases():
    g = np.random.default_rng(7)
    S = g.standard_normal((10, 10))
    assert measured_snr_db(S, S) == pytest.approx(0.0)
    assert measured_snr_db(S, S / 10.0) == pytest.approx(20.0)
    assert measured_snr_db(S, np.zeros_like(S)) == math.inf


def test_error_report_round_trip():
    model = SparseModel(0.3)
    inst = make_instance(60, 30, 1, model, snr_db=12.0, rng=RngSpec(8))
    rep = error_report(inst, inst.V, inst.X)
    assert isinstance(rep, ErrorReport)
    assert rep.linf_u == 0.0
    assert rep.frob_v == 0.0
    assert rep.frob_x_per_entry == 0.0
    assert rep.support_f1 == 1.0
    assert 11.0 <= rep.snr_measured_db <= 13.0


def test_error_report_skips_linf_for_products():
    model = SparseModel(0.3)
    inst = make_instance(40, 30, 2, model, rng=RngSpec(9))
    rep = error_report(inst, inst.V, None)
    assert rep.linf_u is None
    assert rep.frob_x_per_entry is None
    assert rep.snr_measured_db is None
