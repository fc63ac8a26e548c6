"""Ground-truth instance generation for the reflector-dictionary model.

Observations are Y = V X + N with V a product of m reflectors, X an n-by-p
matrix whose support is iid Bernoulli(theta) and whose nonzero values are iid
Uniform[value_low, value_high] with mean mu > 0, and N iid Gaussian noise
scaled to hit a requested SNR. All randomness flows through named
(seed, stream_id) pairs so instances reproduce bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .householder import HouseholderFactor, OrthogonalProduct, apply_product
from .sparsemat import SparseMatrix

GENERATOR_NAME = "numpy-pcg64"  # default_rng seeded with SeedSequence([seed, stream_id])
DUMP_SCHEMA = "housedl-instance-v1"
RETRY_BUDGET = 10_000


class RetryBudgetExceeded(RuntimeError):
    """Rejection sampling could not reach the requested |sum(u)|."""

    def __init__(self, message: str, best_abs_c: float):
        super().__init__(message)
        self.best_abs_c = best_abs_c


@dataclass(frozen=True)
class RngSpec:
    """Reproducible stream label: (seed, stream_id) -> a PCG64 generator."""

    seed: int
    stream_id: int = 0

    def seed_sequence(self) -> np.random.SeedSequence:
        mask = (1 << 64) - 1
        return np.random.SeedSequence([self.seed & mask, self.stream_id & mask])

    def generator(self) -> np.random.Generator:
        return np.random.default_rng(self.seed_sequence())


def _generator(rng) -> np.random.Generator:
    if isinstance(rng, RngSpec):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"rng must be an RngSpec or numpy Generator, got {type(rng)!r}")


@dataclass(frozen=True)
class SparseModel:
    """Bernoulli(theta) support with Uniform[value_low, value_high] values."""

    theta: float
    value_low: float = 1.0
    value_high: float = 2.0

    def __post_init__(self) -> None:
        if not 0.0 < self.theta <= 1.0:
            raise ValueError(f"theta must be in (0, 1], got {self.theta}")
        if not self.value_low < self.value_high:
            raise ValueError("value_low must be strictly below value_high")
        if self.mu <= 0.0:
            raise ValueError("the value distribution must have positive mean")

    @property
    def mu(self) -> float:
        return 0.5 * (self.value_low + self.value_high)


@dataclass(frozen=True, eq=False)
class SyntheticInstance:
    """Ground truth (V, X) plus the observed Y = V X + N."""

    V: OrthogonalProduct
    X: SparseMatrix
    Y: np.ndarray
    noise_sigma: float
    rng: RngSpec
    model: SparseModel
    snr_db: float | None = None

    @property
    def n(self) -> int:
        return self.Y.shape[0]

    @property
    def p(self) -> int:
        return self.Y.shape[1]

    @property
    def m(self) -> int:
        return self.V.m

    @property
    def seed(self) -> int:
        return self.rng.seed


def sample_householder_vector(
    n: int,
    distribution: str = "uniform",
    min_abs_c: float = 0.0,
    rng=None,
) -> HouseholderFactor:
    """Draw a random unit reflector vector.

    ``distribution="uniform"`` draws entries from U[0, 1] before normalizing,
    which concentrates c = sum(u) near sqrt(3n)/2; ``"gaussian"`` draws
    standard normal entries, for which c stays O(1). A positive ``min_abs_c``
    rejects draws with |sum(u)| below the floor, retrying at most 10_000
    times before raising :class:`RetryBudgetExceeded` with the best |c| seen.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if min_abs_c < 0:
        raise ValueError("min_abs_c must be >= 0")
    if distribution not in ("uniform", "gaussian"):
        raise ValueError(f"unknown distribution {distribution!r}")
    g = _generator(rng)
    best = 0.0
    for _ in range(RETRY_BUDGET):
        v = g.random(n) if distribution == "uniform" else g.standard_normal(n)
        norm = float(np.linalg.norm(v))
        if norm == 0.0:
            continue
        u = v / norm
        c = abs(float(u.sum()))
        if c >= min_abs_c:
            return HouseholderFactor(u)
        best = max(best, c)
    raise RetryBudgetExceeded(
        f"no draw reached |sum(u)| >= {min_abs_c} within {RETRY_BUDGET} attempts "
        f"(best achieved |c| = {best:.6g})",
        best_abs_c=best,
    )


def sample_sparse_matrix(n: int, p: int, model: SparseModel, rng=None) -> SparseMatrix:
    """n-by-p matrix with iid Bernoulli(theta) support and Uniform values."""
    if n < 1 or p < 1:
        raise ValueError("n and p must be >= 1")
    g = _generator(rng)
    mask = g.random((n, p)) < model.theta
    rows, cols = np.nonzero(mask)
    values = g.uniform(model.value_low, model.value_high, size=rows.size)
    return SparseMatrix((n, p), rows, cols, values)


def make_instance(
    n: int,
    p: int,
    m: int,
    model: SparseModel,
    snr_db: float | None = None,
    u_distribution: str = "uniform",
    min_abs_c: float = 0.0,
    rng: RngSpec | None = None,
) -> SyntheticInstance:
    """Generate (V, X, Y) with optional Gaussian noise at a target SNR.

    The noise level is derived from the realized signal power (not its
    expectation), so the measured SNR of each instance tracks the request.
    ``snr_db=None`` means noiseless. Factor vectors, X, and the noise each
    consume their own child stream of ``rng``.
    """
    if not isinstance(rng, RngSpec):
        raise TypeError("make_instance requires an RngSpec (needed for dumps)")
    if m < 0:
        raise ValueError("m must be >= 0")
    children = rng.seed_sequence().spawn(m + 2)
    factors = tuple(
        sample_householder_vector(
            n, u_distribution, min_abs_c, np.random.default_rng(children[i])
        )
        for i in range(m)
    )
    V = OrthogonalProduct(factors)
    X = sample_sparse_matrix(n, p, model, np.random.default_rng(children[m]))
    signal = apply_product(V, X.to_dense())
    noise_sigma = 0.0
    Y = signal
    if snr_db is not None:
        power = float(np.sum(signal * signal))
        noise_sigma = float(np.sqrt(power * 10.0 ** (-snr_db / 10.0) / (n * p)))
        noise = np.random.default_rng(children[m + 1]).standard_normal((n, p))
        Y = signal + noise_sigma * noise
    return SyntheticInstance(
        V=V, X=X, Y=Y, noise_sigma=noise_sigma, rng=rng, model=model, snr_db=snr_db
    )


def save_instance(instance: SyntheticInstance, path) -> None:
    """Write the self-describing JSON dump (schema ``housedl-instance-v1``)."""
    doc = {
        "schema": DUMP_SCHEMA,
        "generator": GENERATOR_NAME,
        "n": instance.n,
        "p": instance.p,
        "m": instance.m,
        "theta": instance.model.theta,
        "value_low": instance.model.value_low,
        "value_high": instance.model.value_high,
        "snr_db": instance.snr_db,
        "noise_sigma": instance.noise_sigma,
        "seed": instance.rng.seed,
        "stream_id": instance.rng.stream_id,
        "u_vectors": [f.u.tolist() for f in instance.V.factors],
        "x_rows": instance.X.rows.tolist(),
        "x_cols": instance.X.cols.tolist(),
        "x_values": instance.X.values.tolist(),
    }
    Path(path).write_text(json.dumps(doc))


def load_instance(path) -> SyntheticInstance:
    """Rebuild an instance from a dump; Y is reconstructed exactly.

    V and X come from the stored arrays; the noise realization is replayed
    from the stored (seed, stream_id) with the stored noise_sigma.
    """
    doc = json.loads(Path(path).read_text())
    if doc.get("schema") != DUMP_SCHEMA:
        raise ValueError(f"unsupported dump schema {doc.get('schema')!r}")
    n, p, m = doc["n"], doc["p"], doc["m"]
    model = SparseModel(doc["theta"], doc["value_low"], doc["value_high"])
    rng = RngSpec(doc["seed"], doc["stream_id"])
    V = OrthogonalProduct(tuple(HouseholderFactor(np.asarray(u)) for u in doc["u_vectors"]))
    X = SparseMatrix((n, p), doc["x_rows"], doc["x_cols"], doc["x_values"])
    signal = apply_product(V, X.to_dense())
    noise_sigma = float(doc["noise_sigma"])
    Y = signal
    if doc["snr_db"] is not None:
        children = rng.seed_sequence().spawn(m + 2)
        noise = np.random.default_rng(children[m + 1]).standard_normal((n, p))
        Y = signal + noise_sigma * noise
    return SyntheticInstance(
        V=V, X=X, Y=Y, noise_sigma=noise_sigma, rng=rng, model=model, snr_db=doc["snr_db"]
    )
