"""Closed-form recovery of reflector dictionaries from first moments.

For Y = H X with H = I - 2 u u^T and the Bernoulli-Uniform model on X,
E[Y_ij] = theta mu (1 - 2 u_i c) where c = sum(u). Averaging the rows of Y
therefore identifies u up to the global sign ambiguity (u and -u produce the
same H): the grand mean estimates c, each row mean then estimates u_i. The
per-row statistic k_i = (1 - rowmean_i / (theta mu)) / 2 estimates u_i c
directly, giving the equivalent normalized form u = k / sqrt(sum(k)).

When a known trailing orthogonal factor Q sits between H and X (Y = H Q X),
E[Y_ij] = theta mu (s_i - 2 u_i u^T s) with s = Q 1, and the same machinery
works through k_i = (s_i - rowmean_i / (theta mu)) / 2 = u_i (u^T s) and
sum(k_m s_m) = (u^T s)^2. A product of m reflectors is recovered by peeling
one factor at a time with precomputed suffix row sums.

All estimators are pure functions of their inputs and are applied unchanged
to noisy Y (the noise is zero mean, so the moment identities are unbiased).
The big reductions go through numpy's pairwise sums, so results do not
depend on evaluation order beyond roundoff.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .householder import (
    HouseholderFactor,
    OrthogonalProduct,
    apply_factor,
    apply_factor_matrix,
    apply_product,
    make_factor,
)
from .sparsemat import SparseMatrix, hard_threshold

ILL_CONDITIONED_EPS = 1e-8
DEFAULT_ZETA = 0.5


class IllConditioned(RuntimeError):
    """The moment statistics are too small to identify the reflector."""


@dataclass(frozen=True, eq=False)
class MomentEstimate:
    """First-moment summary of Y: row means, k statistics, c-hat.

    ``clamped`` records that sampling noise drove the c^2 estimate negative
    and it was clamped to zero.
    """

    c_hat: float
    k: np.ndarray
    y_row_means: np.ndarray
    clamped: bool = False


@dataclass(frozen=True, eq=False)
class RecoveryResult:
    u_hat: HouseholderFactor
    X_hat: SparseMatrix | None
    diagnostics: dict


def _check_inputs(Y, theta: float, mu: float) -> np.ndarray:
    Y = np.asarray(Y, dtype=float)
    if Y.ndim != 2 or Y.shape[1] < 1:
        raise ValueError(f"Y must be an n-by-p matrix with p >= 1, got shape {Y.shape}")
    if theta * mu <= 0.0:
        raise ValueError("theta * mu must be positive")
    return Y


def moment_estimate(Y, theta: float, mu: float) -> MomentEstimate:
    """Row means of Y, the k statistic, and the clamped c estimate."""
    Y = _check_inputs(Y, theta, mu)
    row_means = Y.mean(axis=1)
    k = 0.5 * (1.0 - row_means / (theta * mu))
    radicand = float(k.sum())  # equals (n - sum(Y) / (p theta mu)) / 2
    clamped = radicand < 0.0
    c_hat = float(np.sqrt(max(radicand, 0.0)))
    return MomentEstimate(c_hat=c_hat, k=k, y_row_means=row_means, clamped=clamped)


def estimate_c(Y, theta: float, mu: float) -> float:
    """Estimate c = sum(u) >= 0 from the grand mean of Y (clamped at zero)."""
    return moment_estimate(Y, theta, mu).c_hat


def estimate_u_hx(Y, theta: float, mu: float, zeta: float = DEFAULT_ZETA) -> RecoveryResult:
    """Recover u (up to sign) and the sparse code from Y = H X.

    The raw estimate u_i = k_i / c_hat is renormalized to exact unit norm.
    Raises IllConditioned when c_hat <= 1e-8: the row-mean displacements are
    proportional to u_i c, so a vanishing c leaves nothing to divide by.
    """
    mom = moment_estimate(Y, theta, mu)
    if mom.c_hat <= ILL_CONDITIONED_EPS:
        raise IllConditioned(
            f"c_hat = {mom.c_hat:.3e} <= {ILL_CONDITIONED_EPS:g}: sum(u) is too "
            "small for first-moment recovery"
        )
    u_hat = make_factor(mom.k / mom.c_hat)
    X_hat = recover_x(Y, OrthogonalProduct((u_hat,)), zeta)
    return RecoveryResult(
        u_hat, X_hat, {"c_hat": mom.c_hat, "clamped": mom.clamped, "zeta": zeta}
    )


def estimate_u_hx_alt(
    Y, theta: float, mu: float, zeta: float = DEFAULT_ZETA
) -> RecoveryResult:
    """Recover u from Y = H X through the normalized k statistic.

    k_i estimates u_i c and sum(k) estimates c^2, so k / sqrt(sum(k))
    estimates u. After unit normalization this agrees with
    :func:`estimate_u_hx` whenever both succeed.
    """
    mom = moment_estimate(Y, theta, mu)
    k_sum = float(mom.k.sum())
    if k_sum <= ILL_CONDITIONED_EPS**2:
        raise IllConditioned(
            f"sum(k) = {k_sum:.3e} is too small to normalize the k statistic"
        )
    u_hat = make_factor(mom.k / np.sqrt(k_sum))
    X_hat = recover_x(Y, OrthogonalProduct((u_hat,)), zeta)
    return RecoveryResult(
        u_hat, X_hat, {"k_sum": k_sum, "clamped": mom.clamped, "zeta": zeta}
    )


def estimate_u_hqx(
    Y,
    q_row_sums,
    theta: float,
    mu: float,
    zeta: float = DEFAULT_ZETA,
    q_transpose_apply=None,
) -> RecoveryResult:
    """Recover the leading reflector from Y = H Q X, Q known by row sums.

    ``q_row_sums`` is s = Q 1. k_i estimates u_i (u^T s) and sum(k_m s_m)
    estimates (u^T s)^2, so u = k / sqrt(sum(k s)) after a global sign fix
    (k flips sign when sum(k s) < 0; u and -u are interchangeable anyway).
    sum(k s) must stay away from zero: u^T Q 1 = 0 makes the reflector
    invisible to first moments, raising IllConditioned. With s = 1 this
    reduces exactly to :func:`estimate_u_hx_alt`.

    If ``q_transpose_apply`` is given (a callable returning Q^T M), the
    sparse code is re-estimated as HT_zeta(Q^T H Y); otherwise X_hat is None.
    """
    Y = _check_inputs(Y, theta, mu)
    s = np.asarray(q_row_sums, dtype=float)
    if s.shape != (Y.shape[0],):
        raise ValueError(
            f"q_row_sums must be a vector of length {Y.shape[0]}, got shape {s.shape}"
        )
    row_means = Y.mean(axis=1)
    k = 0.5 * (s - row_means / (theta * mu))
    ks_sum = float(k @ s)
    sign_flipped = ks_sum < 0.0
    if sign_flipped:
        k = -k
        ks_sum = -ks_sum
    if ks_sum <= ILL_CONDITIONED_EPS**2:
        raise IllConditioned(
            f"sum(k*s) = {ks_sum:.3e} is too small: u^T Q 1 near zero is "
            "unrecoverable from first moments"
        )
    u_hat = make_factor(k / np.sqrt(ks_sum))
    X_hat = None
    if q_transpose_apply is not None:
        X_hat = hard_threshold(q_transpose_apply(apply_factor_matrix(u_hat, Y)), zeta)
    return RecoveryResult(
        u_hat, X_hat, {"ks_sum": ks_sum, "sign_flipped": sign_flipped, "zeta": zeta}
    )


def recover_x(Y, V_hat: OrthogonalProduct, zeta: float) -> SparseMatrix:
    """Sparse code HT_zeta(V_hat^T Y), via structured applies in O(nmp)."""
    return hard_threshold(
        apply_product(V_hat, np.asarray(Y, dtype=float), transpose=True), zeta
    )


def recover_v_sequential(
    Y,
    m: int,
    theta: float,
    mu: float,
    init: OrthogonalProduct | None = None,
    zeta: float = DEFAULT_ZETA,
    suffix_includes_current: bool = False,
    return_x: bool = True,
) -> tuple[OrthogonalProduct, SparseMatrix | None]:
    """Peel m reflectors off Y = H1 ... Hm X one factor at a time.

    Suffix row-sum vectors are precomputed from the initialization: with
    init factors F1 ... Fm (default: all identity, kept as a flag since no
    reflector equals I), z_{m+1} = 1 and z_i = F_i z_{i+1}. At step i the
    still-unestimated suffix F_{i+1} ... F_m plays the role of Q, so its
    row-sum vector z_{i+1} feeds :func:`estimate_u_hqx`; the estimated
    reflector is then applied to Y and the next step proceeds.
    ``suffix_includes_current=True`` feeds z_i instead, folding the current
    factor's initialization into the suffix; the two choices coincide under
    the identity default, where every suffix vector is 1.

    Returns (V_hat, X_hat) with X_hat = HT_zeta of the fully peeled Y, or
    (V_hat, None) with ``return_x=False`` for callers that only need the
    dictionary (the factor estimation alone is the O(nmp) part).
    IllConditioned failures are re-raised annotated with the failing step.
    """
    Y_cur = np.asarray(Y, dtype=float)
    if Y_cur.ndim != 2:
        raise ValueError(f"Y must be 2-d, got shape {Y_cur.shape}")
    if m < 0:
        raise ValueError("m must be >= 0")
    n = Y_cur.shape[0]
    if init is None:
        init_factors: list[HouseholderFactor | None] = [None] * m
    else:
        if init.m != m:
            raise ValueError(f"init must supply exactly {m} factors, got {init.m}")
        if init.factors and init.n != n:
            raise ValueError(f"init dimension {init.n} does not match Y rows {n}")
        init_factors = list(init.factors)

    suffix: list[np.ndarray] = [np.ones(n)] * (m + 1)
    for j in range(m - 1, -1, -1):
        f = init_factors[j]
        suffix[j] = suffix[j + 1] if f is None else apply_factor(f, suffix[j + 1])

    estimated = []
    for j in range(m):
        s = suffix[j] if suffix_includes_current else suffix[j + 1]
        try:
            step = estimate_u_hqx(Y_cur, s, theta, mu, zeta=zeta)
        except IllConditioned as exc:
            raise IllConditioned(f"step {j + 1} of {m}: {exc}") from exc
        estimated.append(step.u_hat)
        Y_cur = apply_factor_matrix(step.u_hat, Y_cur)  # H^T = H
    V_hat = OrthogonalProduct(tuple(estimated))
    X_hat = hard_threshold(Y_cur, zeta) if return_x else None
    return V_hat, X_hat
