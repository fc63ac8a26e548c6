"""Independent dense/numerical oracles for the test suite.

Everything here is deliberately written against plain numpy arrays and
textbook formulas (no library code under test), so structured kernels can be
checked against an implementation that shares nothing with them.
"""

import numpy as np


def dense_reflector(v) -> np.ndarray:
    """I - 2 u u^T from any nonzero vector (normalized here)."""
    v = np.asarray(v, dtype=float)
    u = v / np.linalg.norm(v)
    return np.eye(u.size) - 2.0 * np.outer(u, u)


def dense_product(vectors) -> np.ndarray:
    """Multiply dense reflectors left to right."""
    vectors = list(vectors)
    n = len(np.asarray(vectors[0]))
    out = np.eye(n)
    for v in vectors:
        out = out @ dense_reflector(v)
    return out


def random_orthogonal(n: int, g: np.random.Generator, m: int | None = None) -> np.ndarray:
    """Random orthogonal matrix as a product of random dense reflectors."""
    m = n if m is None else m
    return dense_product(g.standard_normal((m, n)))


def jacobi_svd(A, tol: float = 1e-14, max_sweeps: int = 100):
    """One-sided Jacobi SVD of a small square matrix: A = U diag(s) V^T.

    Rotations orthogonalize the columns of a working copy B = A V; the
    singular values are the final column norms and U the normalized columns.
    Intended for tiny well-conditioned inputs (n <= 8 or so).
    """
    B = np.asarray(A, dtype=float).copy()
    n = B.shape[0]
    if B.shape != (n, n):
        raise ValueError("square matrix required")
    V = np.eye(n)
    for _ in range(max_sweeps):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                bi = B[:, i]
                bj = B[:, j]
                aii = float(bi @ bi)
                ajj = float(bj @ bj)
                aij = float(bi @ bj)
                denom = np.sqrt(aii * ajj)
                if denom > 0:
                    off = max(off, abs(aij) / denom)
                if aij == 0.0:
                    continue
                tau = (ajj - aii) / (2.0 * aij)
                t = np.sign(tau) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                if tau == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                Bi = c * bi - s * bj
                Bj = s * bi + c * bj
                B[:, i], B[:, j] = Bi, Bj
                Vi = c * V[:, i] - s * V[:, j]
                Vj = s * V[:, i] + c * V[:, j]
                V[:, i], V[:, j] = Vi, Vj
        if off < tol:
            break
    sing = np.linalg.norm(B, axis=0)
    if np.any(sing == 0.0):
        raise ValueError("singular input; oracle needs nonsingular matrices")
    U = B / sing
    return U, sing, V


def polar_via_jacobi(A) -> np.ndarray:
    """Orthogonal polar factor U V^T from the Jacobi SVD."""
    U, _, V = jacobi_svd(A)
    return U @ V.T
