"""Seeded Monte-Carlo sweep runner with CSV output.

A sweep walks the cartesian grid (p, m, theta, snr_db) in the configured
order; every grid point runs ``trials`` independent instances, each on a
derived RNG stream (stream_id = grid_index * trials + trial), and emits one
row per method. Row order is canonical (grid order, then trial, then method)
no matter how many worker threads run, and a fixed (spec, seed) pair
reproduces the CSV byte for byte as long as timing capture stays off.

Failed trials never abort a sweep: ill-conditioned estimates and singular
baseline inputs become flagged rows (the baseline failure counts as the
maximal dictionary error 2 sqrt(n), the distance bound between orthogonal
matrices).
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Iterator

from .baselines import SingularInput, procrustes_known_x
from .estimators import (
    IllConditioned,
    estimate_u_hx,
    estimate_u_hx_alt,
    recover_v_sequential,
)
from .householder import OrthogonalProduct
from .metrics import (
    frobenius_error_v,
    linf_error_up_to_sign,
    support_f1,
    x_error_per_entry,
)
from .synthesis import RngSpec, SparseModel, SyntheticInstance, make_instance

EXPERIMENT_KINDS = (
    "fig1_frobV_vs_m",
    "fig2_frobV_vs_p",
    "fig3_linf_vs_p",
    "fig4_xerr_vs_p",
    "fig5_noise",
    "custom",
)
ESTIMATOR_NAMES = ("alg1", "alg1_alt", "alg3")
U_DISTRIBUTIONS = ("uniform", "gaussian")

CSV_COLUMNS = (
    "experiment_kind",
    "n",
    "p",
    "m",
    "theta",
    "snr_db",
    "trial",
    "seed",
    "method",
    "linf_u",
    "frob_v",
    "x_err_per_entry",
    "support_f1",
    "wall_time_ms",
    "flags",
)


class ConfigError(ValueError):
    """Invalid experiment configuration; raised before any work starts."""


def maximal_frob_error(n: int) -> float:
    """Largest possible ||V - W||_F over orthogonal V, W (used for failures)."""
    return 2.0 * math.sqrt(n)


@dataclass(frozen=True)
class ExperimentSpec:
    experiment_kind: str = "custom"
    n: int = 100
    p_list: tuple[int, ...] = (16,)
    m_list: tuple[int, ...] = (1,)
    theta_list: tuple[float, ...] = (0.3,)
    snr_db_list: tuple[float | None, ...] = (None,)
    trials: int = 1
    seed: int = 0
    zeta: float = 0.5
    estimator: str = "alg1"
    procrustes_known_x: bool = False
    u_distribution: str = "uniform"
    min_abs_c: float = 0.0
    value_low: float = 1.0
    value_high: float = 2.0
    record_timing: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "p_list", tuple(int(p) for p in self.p_list))
        object.__setattr__(self, "m_list", tuple(int(m) for m in self.m_list))
        object.__setattr__(self, "theta_list", tuple(float(t) for t in self.theta_list))
        object.__setattr__(
            self,
            "snr_db_list",
            tuple(None if s is None else float(s) for s in self.snr_db_list),
        )
        if self.experiment_kind not in EXPERIMENT_KINDS:
            raise ConfigError(f"unknown experiment_kind {self.experiment_kind!r}")
        if self.estimator not in ESTIMATOR_NAMES:
            raise ConfigError(f"unknown estimator {self.estimator!r}")
        if self.u_distribution not in U_DISTRIBUTIONS:
            raise ConfigError(f"unknown u_distribution {self.u_distribution!r}")
        for name in ("p_list", "m_list", "theta_list", "snr_db_list"):
            if not getattr(self, name):
                raise ConfigError(f"{name} must be non-empty")
        if self.n < 2:
            raise ConfigError("n must be >= 2")
        if any(p < 1 for p in self.p_list):
            raise ConfigError("all p must be >= 1")
        if any(m < 0 for m in self.m_list):
            raise ConfigError("all m must be >= 0")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.zeta < 0:
            raise ConfigError("zeta must be >= 0")
        if self.min_abs_c < 0:
            raise ConfigError("min_abs_c must be >= 0")
        try:
            SparseModel(self.theta_list[0], self.value_low, self.value_high)
            for theta in self.theta_list[1:]:
                SparseModel(theta, self.value_low, self.value_high)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def grid(self) -> list[tuple[int, int, float, float | None]]:
        """(p, m, theta, snr_db) points in canonical order."""
        return list(
            itertools.product(self.p_list, self.m_list, self.theta_list, self.snr_db_list)
        )


@dataclass(frozen=True)
class ResultRow:
    experiment_kind: str
    n: int
    p: int
    m: int
    theta: float
    snr_db: float | None
    trial: int
    seed: int
    method: str
    linf_u: float | None
    frob_v: float | None
    x_err_per_entry: float | None
    support_f1: float | None
    wall_time_ms: float | None
    flags: str = ""


def _estimator_rows(
    spec: ExperimentSpec, inst: SyntheticInstance, point, trial: int
) -> list[ResultRow]:
    p, m, theta, snr = point
    mu = inst.model.mu
    base = dict(
        experiment_kind=spec.experiment_kind,
        n=spec.n,
        p=p,
        m=m,
        theta=theta,
        snr_db=snr,
        trial=trial,
        seed=spec.seed,
    )
    rows = []

    flags: list[str] = []
    t0 = time.perf_counter()
    V_hat = X_hat = None
    try:
        if spec.estimator == "alg1":
            res = estimate_u_hx(inst.Y, theta, mu, spec.zeta)
            V_hat = OrthogonalProduct((res.u_hat,))
            X_hat = res.X_hat
            if res.diagnostics.get("clamped"):
                flags.append("clamped")
        elif spec.estimator == "alg1_alt":
            res = estimate_u_hx_alt(inst.Y, theta, mu, spec.zeta)
            V_hat = OrthogonalProduct((res.u_hat,))
            X_hat = res.X_hat
            if res.diagnostics.get("clamped"):
                flags.append("clamped")
        else:
            V_hat, X_hat = recover_v_sequential(inst.Y, m, theta, mu, zeta=spec.zeta)
    except IllConditioned:
        flags.append("ill_conditioned")
    wall = (time.perf_counter() - t0) * 1e3

    if V_hat is None:
        rows.append(
            ResultRow(
                **base,
                method=spec.estimator,
                linf_u=None,
                frob_v=None,
                x_err_per_entry=None,
                support_f1=None,
                wall_time_ms=wall,
                flags=";".join(flags),
            )
        )
    else:
        linf = None
        if inst.V.m == 1 and V_hat.m == 1:
            linf = linf_error_up_to_sign(inst.V.factors[0], V_hat.factors[0])
        rows.append(
            ResultRow(
                **base,
                method=spec.estimator,
                linf_u=linf,
                frob_v=frobenius_error_v(inst.V, V_hat),
                x_err_per_entry=x_error_per_entry(inst.X, X_hat),
                support_f1=support_f1(inst.X, X_hat),
                wall_time_ms=wall,
                flags=";".join(flags),
            )
        )

    if spec.procrustes_known_x:
        flags = []
        t0 = time.perf_counter()
        try:
            Q = procrustes_known_x(inst.Y, inst.X)
            frob = frobenius_error_v(inst.V, Q)
        except SingularInput:
            frob = maximal_frob_error(spec.n)
            flags.append("singular_input")
        wall = (time.perf_counter() - t0) * 1e3
        rows.append(
            ResultRow(
                **base,
                method="procrustes_known_x",
                linf_u=None,
                frob_v=frob,
                x_err_per_entry=None,
                support_f1=None,
                wall_time_ms=wall,
                flags=";".join(flags),
            )
        )
    return rows


def _run_trial(spec: ExperimentSpec, grid_index: int, point, trial: int) -> list[ResultRow]:
    p, m, theta, snr = point
    stream = grid_index * spec.trials + trial
    model = SparseModel(theta, spec.value_low, spec.value_high)
    inst = make_instance(
        spec.n,
        p,
        m,
        model,
        snr_db=snr,
        u_distribution=spec.u_distribution,
        min_abs_c=spec.min_abs_c,
        rng=RngSpec(spec.seed, stream),
    )
    return _estimator_rows(spec, inst, point, trial)


def run_experiment(spec: ExperimentSpec, threads: int = 1) -> Iterator[ResultRow]:
    """Run the sweep, yielding rows incrementally in canonical order.

    ``threads > 1`` fans trials out over a thread pool; each trial owns its
    derived RNG stream, so results are identical regardless of thread count.
    """
    if threads < 1:
        raise ConfigError("threads must be >= 1")
    tasks = [
        (grid_index, point, trial)
        for grid_index, point in enumerate(spec.grid())
        for trial in range(spec.trials)
    ]

    def generate() -> Iterator[ResultRow]:
        if threads == 1:
            for grid_index, point, trial in tasks:
                yield from _run_trial(spec, grid_index, point, trial)
        else:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                futures = [
                    pool.submit(_run_trial, spec, grid_index, point, trial)
                    for grid_index, point, trial in tasks
                ]
                for future in futures:
                    yield from future.result()

    return generate()


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _row_fields(row: ResultRow, include_timing: bool) -> list[str]:
    return [
        row.experiment_kind,
        str(row.n),
        str(row.p),
        str(row.m),
        _fmt(row.theta),
        _fmt(row.snr_db),
        str(row.trial),
        str(row.seed),
        row.method,
        _fmt(row.linf_u),
        _fmt(row.frob_v),
        _fmt(row.x_err_per_entry),
        _fmt(row.support_f1),
        _fmt(row.wall_time_ms) if include_timing else "",
        row.flags,
    ]


def write_csv(rows: Iterable[ResultRow], path, include_timing: bool = False) -> None:
    """Write rows under the fixed header; empty input gives a header-only file.

    Timing is written only on request because wall times are the one
    non-reproducible column; everything else is byte-stable for a fixed
    (spec, seed).
    """
    lines = [",".join(CSV_COLUMNS)]
    lines.extend(",".join(_row_fields(row, include_timing)) for row in rows)
    Path(path).write_text("\n".join(lines) + "\n")


def read_result_csv(path) -> list[ResultRow]:
    """Parse a results CSV back into rows (empty cells become None)."""
    text = Path(path).read_text()
    lines = [line for line in text.split("\n") if line]
    if not lines or lines[0] != ",".join(CSV_COLUMNS):
        raise ValueError(f"{path}: unrecognized results header")
    rows = []
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != len(CSV_COLUMNS):
            raise ValueError(f"{path}: malformed row {line!r}")
        opt = lambda s: None if s == "" else float(s)
        rows.append(
            ResultRow(
                experiment_kind=parts[0],
                n=int(parts[1]),
                p=int(parts[2]),
                m=int(parts[3]),
                theta=float(parts[4]),
                snr_db=opt(parts[5]),
                trial=int(parts[6]),
                seed=int(parts[7]),
                method=parts[8],
                linf_u=opt(parts[9]),
                frob_v=opt(parts[10]),
                x_err_per_entry=opt(parts[11]),
                support_f1=opt(parts[12]),
                wall_time_ms=opt(parts[13]),
                flags=parts[14],
            )
        )
    return rows


def with_overrides(spec: ExperimentSpec, **overrides) -> ExperimentSpec:
    """Functional update that re-runs validation."""
    clean = {k: v for k, v in overrides.items() if v is not None}
    return replace(spec, **clean) if clean else spec
