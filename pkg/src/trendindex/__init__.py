"""Behavioral consumer-confidence index construction from search-volume
time series: resampling, correlation PCA, unit-root and exclusion testing,
structural-break dummy regression, and topic-space back-projection.
"""

from .dist import DistSpec, tail_probability
from .errors import (
    AlignmentError,
    ConfigError,
    ConvergenceError,
    DataError,
    FrequencyError,
    NumericalError,
    RankDeficiencyError,
    TrendIndexError,
)
from .ingest import ingest_csv
from .kernels import active_backend
from .model import (
    BreakDesign,
    BreakTestResult,
    ConfidenceModel,
    PolarityTable,
    StepwiseTrace,
    TopicInfluence,
    TransitionalDesign,
    bartlett_acf_check,
    build_transitional_design,
    fit_c3i,
    polarity_table,
    predict_c3i,
    stepwise_ols,
    structural_break_tests,
    topic_influence,
    trends_contribution,
    white_test,
)
from .ols import OlsFit, ols_fit
from .pca import (
    ComponentSet,
    PcaModel,
    kmo_statistic,
    pca_back_project,
    pca_fit,
    pca_project,
    smc_vector,
)
from .pipeline import PipelineConfig, RunReport, run_pipeline
from .report import emit_report
from .series import (
    MonthIndex,
    Panel,
    TimeSeries,
    align,
    difference,
    lag,
    resample_weekly_to_monthly,
    standardize,
)
from .unitroot import (
    AdfResult,
    AdfSpec,
    CointegrationResult,
    IntegrationOrder,
    a_transform,
    adf_test,
    engle_granger,
    integration_order,
)
from .var import GrangerResult, VarFit, granger_exclusion, var_fit

__version__ = "0.1.0"
