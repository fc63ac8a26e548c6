"""Orthogonal dictionary learning with products of Householder reflectors.

Structured dictionaries V = H1 H2 ... Hm are learned from observations
Y = V X + N with closed-form first-moment estimators: no iteration, no
spectral decompositions, O(nmp) arithmetic.
"""

from .baselines import PolarResult, SingularInput, polar_orthogonal_factor, procrustes_known_x
from .estimators import (
    IllConditioned,
    MomentEstimate,
    RecoveryResult,
    estimate_c,
    estimate_u_hqx,
    estimate_u_hx,
    estimate_u_hx_alt,
    moment_estimate,
    recover_v_sequential,
    recover_x,
)
from .experiments import (
    ConfigError,
    ExperimentSpec,
    ResultRow,
    read_result_csv,
    run_experiment,
    write_csv,
)
from .config import load_experiment_config, parse_experiment_config
from .householder import (
    HouseholderFactor,
    OrthogonalProduct,
    apply_factor,
    apply_factor_matrix,
    apply_product,
    equivalent_product_pair,
    make_factor,
    to_dense,
)
from .metrics import (
    ErrorReport,
    error_report,
    frobenius_error_v,
    linf_error_up_to_sign,
    measured_snr_db,
    support_f1,
    x_error_per_entry,
)
from .plotting import PlotCurve, aggregate_curves, write_plot
from .sparsemat import SparseMatrix, hard_threshold
from .synthesis import (
    RetryBudgetExceeded,
    RngSpec,
    SparseModel,
    SyntheticInstance,
    load_instance,
    make_instance,
    sample_householder_vector,
    sample_sparse_matrix,
    save_instance,
)

__version__ = "0.1.0"
