import numpy as np
import pytest

from housedl import (
    RngSpec,
    SingularInput,
    SparseModel,
    frobenius_error_v,
    make_instance,
    polar_orthogonal_factor,
    procrustes_known_x,
)
from oracles import dense_product, polar_via_jacobi, random_orthogonal


def test_orthogonal_input_is_fixed_point():
    g = np.random.default_rng(0)
    A = random_orthogonal(12, g)
    res = polar_orthogonal_factor(A)
    assert np.max(np.abs(res.orthogonal_factor - A)) <= 1e-10
    assert res.iterations <= 3
    assert res.residual <= 1e-10


def test_positive_diagonal_gives_identity():
    res = polar_orthogonal_factor(np.diag([2.0, 0.5, 3.0]))
    assert np.max(np.abs(res.orthogonal_factor - np.eye(3))) <= 1e-10


def test_orthogonal_times_spd_recovers_orthogonal_part():
    g = np.random.default_rng(1)
    n = 30
    V = dense_product(g.standard_normal((5, n)))
    G = g.standard_normal((n, n))
    P = G @ G.T + 0.1 * np.eye(n)
    res = polar_orthogonal_factor(V @ P)
    assert np.linalg.norm(res.orthogonal_factor - V) <= 1e-8


def test_output_always_orthogonal():
    g = np.random.default_rng(2)
    for _ in range(20):
        n = int(g.integers(2, 12))
        A = g.standard_normal((n, n))
        try:
            res = polar_orthogonal_factor(A)
        except SingularInput:
            continue
        Q = res.orthogonal_factor
        assert np.linalg.norm(Q.T @ Q - np.eye(n)) <= 1e-8


def test_singular_inputs_rejected():
    with pytest.raises(SingularInput):
        polar_orthogonal_factor(np.zeros((3, 3)))
    with pytest.raises(SingularInput):
        polar_orthogonal_factor(np.outer(np.arange(1.0, 5.0), np.arange(1.0, 5.0)))
    with pytest.raises(ValueError):
        polar_orthogonal_factor(np.ones((2, 3)))


def test_matches_jacobi_svd_oracle():
    g = np.random.default_rng(3)
    for n in (2, 3, 4, 5, 6):
        for _ in range(10):
            A = g.standard_normal((n, n))
            if abs(np.linalg.det(A)) < 1e-3:
                continue
            Q = polar_orthogonal_factor(A).orthogonal_factor
            assert np.linalg.norm(Q - polar_via_jacobi(A)) <= 1e-8


def test_jacobi_oracle_self_consistency():
    g = np.random.default_rng(4)
    A = g.standard_normal((5, 5))
    U, s, V = __import__("oracles").jacobi_svd(A)
    assert np.linalg.norm(U.T @ U - np.eye(5)) <= 1e-10
    assert np.linalg.norm(V.T @ V - np.eye(5)) <= 1e-10
    assert np.linalg.norm(U @ np.diag(s) @ V.T - A) <= 1e-10


def test_procrustes_recovers_dictionary_with_many_samples():
    model = SparseModel(0.3)
    inst = make_instance(50, 2000, 5, model, rng=RngSpec(5))
    Q = procrustes_known_x(inst.Y, inst.X)
    assert frobenius_error_v(inst.V, Q) <= 1e-6


def test_procrustes_orthonormal_rows_exact():
    g = np.random.default_rng(6)
    V = random_orthogonal(4, g)
    X = random_orthogonal(4, g)  # orthonormal rows: X X^T = I
    Y = V @ X
    Q = procrustes_known_x(Y, X)
    assert np.max(np.abs(Q - V)) <= 1e-10


def test_procrustes_rank_deficient_rejected():
    model = SparseModel(0.3)
    inst = make_instance(100, 20, 2, model, rng=RngSpec(7))
    with pytest.raises(SingularInput):
        procrustes_known_x(inst.Y, inst.X)


def test_procrustes_shape_mismatch():
    with pytest.raises(ValueError):
        procrustes_known_x(np.ones((4, 6)), np.ones((4, 5)))


def test_procrustes_is_optimal_among_random_rotations():
    # minimizer of ||Y - Q X||_F over orthogonal Q; noisy Y makes it non-trivial
    g = np.random.default_rng(8)
    model = SparseModel(0.5)
    inst = make_instance(8, 200, 2, model, snr_db=10.0, rng=RngSpec(9))
    Y, X = inst.Y, inst.X.to_dense()
    Q = procrustes_known_x(Y, X)
    best = np.linalg.norm(Y - Q @ X)
    for _ in range(1000):
        R = random_orthogonal(8, g, m=4)
        assert best <= np.linalg.norm(Y - R @ X) + 1e-8
