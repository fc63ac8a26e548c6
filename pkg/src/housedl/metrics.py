"""Error measures: sign-invariant vector error, dictionary distance,
per-entry code error, support F1, and measured SNR."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .householder import HouseholderFactor, OrthogonalProduct, apply_product, to_dense
from .sparsemat import SparseMatrix

MATRIX_FREE_CUTOFF = 2000
_TRACE_BLOCK = 512


def _as_vector(u) -> np.ndarray:
    if isinstance(u, HouseholderFactor):
        return u.u
    return np.asarray(u, dtype=float)


def _as_dense_matrix(X) -> np.ndarray:
    if isinstance(X, SparseMatrix):
        return X.to_dense()
    return np.asarray(X, dtype=float)


def linf_error_up_to_sign(u, u_hat) -> float:
    """min(||u - u_hat||_inf, ||u + u_hat||_inf): recovery is defined up to sign."""
    u = _as_vector(u)
    u_hat = _as_vector(u_hat)
    if u.shape != u_hat.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {u_hat.shape}")
    return float(min(np.max(np.abs(u - u_hat)), np.max(np.abs(u + u_hat))))


def frobenius_error_v(V: OrthogonalProduct, V_hat, matrix_free: bool | None = None) -> float:
    """||dense(V) - dense(V_hat)||_F, independent of the factorizations.

    V_hat may be another product or a dense matrix. Above n = 2000 (or when
    ``matrix_free=True``) the distance comes from
    ||A||_F^2 + ||B||_F^2 - 2 tr(A^T B) with the trace accumulated by
    applying both operators to blocks of identity columns, so no n-by-n
    product is ever multiplied out.
    """
    dense_hat = not isinstance(V_hat, OrthogonalProduct)
    n = V.n
    if n is None:
        n = V_hat.shape[0] if dense_hat else V_hat.n
    if n is None:
        raise ValueError("cannot infer the dimension from two empty products")
    if dense_hat:
        W = np.asarray(V_hat, dtype=float)
        if W.shape != (n, n):
            raise ValueError(f"V_hat must be {n}x{n}, got {W.shape}")
    elif V_hat.n is not None and V_hat.n != n:
        raise ValueError(f"dimension mismatch: {n} vs {V_hat.n}")

    if not dense_hat and V.m == 1 and V_hat.m == 1 and matrix_free is not False:
        # ||H(u) - H(v)||_F^2 = 8 (1 - (u.v)^2), exact and O(n)
        dot = float(V.factors[0].u @ V_hat.factors[0].u)
        return float(np.sqrt(max(8.0 * (1.0 - dot * dot), 0.0)))

    if matrix_free is None:
        matrix_free = n > MATRIX_FREE_CUTOFF
    if not matrix_free:
        d = to_dense(V, n) - (W if dense_hat else to_dense(V_hat, n))
        return float(np.linalg.norm(d))

    norm_sq_v = float(n)  # orthogonal
    norm_sq_w = float(np.sum(W * W)) if dense_hat else float(n)
    trace = 0.0
    for j0 in range(0, n, _TRACE_BLOCK):
        j1 = min(j0 + _TRACE_BLOCK, n)
        block = np.zeros((n, j1 - j0))
        block[np.arange(j0, j1), np.arange(j1 - j0)] = 1.0
        vb = apply_product(V, block)
        wb = W[:, j0:j1] if dense_hat else apply_product(V_hat, block)
        trace += float(np.sum(vb * wb))
    return float(np.sqrt(max(norm_sq_v + norm_sq_w - 2.0 * trace, 0.0)))


def x_error_per_entry(X, X_hat) -> float:
    """Frobenius error normalized per entry: ||X - X_hat||_F / sqrt(n p)."""
    Xd = _as_dense_matrix(X)
    Xh = _as_dense_matrix(X_hat)
    if Xd.shape != Xh.shape:
        raise ValueError(f"shape mismatch: {Xd.shape} vs {Xh.shape}")
    return float(np.linalg.norm(Xd - Xh) / math.sqrt(Xd.shape[0] * Xd.shape[1]))


def support_f1(X, X_hat) -> float:
    """F1 score of nonzero-support recovery (1.0 when both are empty)."""
    a = X.support_mask() if isinstance(X, SparseMatrix) else np.asarray(X) != 0
    b = X_hat.support_mask() if isinstance(X_hat, SparseMatrix) else np.asarray(X_hat) != 0
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    tp = int(np.sum(a & b))
    fp = int(np.sum(~a & b))
    fn = int(np.sum(a & ~b))
    if tp == 0:
        return 1.0 if (fp == 0 and fn == 0) else 0.0
    return 2.0 * tp / (2.0 * tp + fp + fn)


def measured_snr_db(signal, noise) -> float:
    """10 log10(||signal||_F^2 / ||noise||_F^2); +inf for zero noise."""
    signal = np.asarray(signal, dtype=float)
    noise = np.asarray(noise, dtype=float)
    p_noise = float(np.sum(noise * noise))
    if p_noise == 0.0:
        return math.inf
    p_signal = float(np.sum(signal * signal))
    if p_signal == 0.0:
        return -math.inf
    return 10.0 * math.log10(p_signal / p_noise)


@dataclass(frozen=True)
class ErrorReport:
    """Bundle of the error measures for one recovery; None marks not-applicable."""

    linf_u: float | None = None
    frob_v: float | None = None
    frob_x_per_entry: float | None = None
    support_f1: float | None = None
    snr_measured_db: float | None = None


def error_report(instance, V_hat, X_hat=None) -> ErrorReport:
    """Evaluate a recovery against a SyntheticInstance.

    linf_u is filled only when both the truth and the estimate are single
    reflectors (individual factors of longer products are not identifiable).
    """
    structured = isinstance(V_hat, OrthogonalProduct)
    linf = None
    if structured and instance.V.m == 1 and V_hat.m == 1:
        linf = linf_error_up_to_sign(instance.V.factors[0], V_hat.factors[0])
    frob = frobenius_error_v(instance.V, V_hat)
    xerr = f1 = None
    if X_hat is not None:
        xerr = x_error_per_entry(instance.X, X_hat)
        f1 = support_f1(instance.X, X_hat)
    snr = None
    if instance.noise_sigma > 0.0:
        residual = instance.Y - apply_product(instance.V, instance.X.to_dense())
        snr = measured_snr_db(instance.Y - residual, residual)
    return ErrorReport(
        linf_u=linf,
        frob_v=frob,
        frob_x_per_entry=xerr,
        support_f1=f1,
        snr_measured_db=snr,
    )
