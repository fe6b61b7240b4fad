"""Semi-variogram exploration toolkit.

Quantifies ego-centred spatial correlation of an outcome by fitting
exponential semi-variogram models over (max distance, bin count)
sweeps, with filtered-bootstrap standard errors for the fitted
parameters. Ships a library, CLI and HTTP service.
"""

from .bootstrap import (
    BootstrapConfig,
    TransformTable,
    UncertaintyTable,
    apply_filter,
    bootstrap_replicate,
    build_covariance_matrix,
    decorrelate,
    normal_score_back_transform,
    normal_score_transform,
    par_uncertainty,
    recorrelate,
)
from .dataio import (
    MissingnessReport,
    SpatialDataset,
    load_dataset,
    missingness_summary,
    save_dataset,
)
from .distances import DistanceSet, DistanceSummary, distance_summary, pairwise_distances
from .empvar import EmpiricalVariogram, VariogramBin, empirical_variogram
from .errors import (
    NumericalError,
    ParseError,
    ResourceError,
    SchemaError,
    ValidationError,
    VarioscopeError,
)
from .expfit import (
    ExpModelFit,
    ExpParams,
    ModelTable,
    SweepResult,
    eval_exponential,
    fit_exponential,
    model_covariance,
    practical_range,
    relative_bias,
    rsv,
    vario_mod,
)
from .regress import OlsFit, fit_ols, studentized_residuals, vario_reg_prep
from .simfield import FieldSpec, simulate_field, simulated_dataset, uniform_coords

__version__ = "0.1.0"
