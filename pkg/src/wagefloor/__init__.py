"""wagefloor: wage ratios against per-capita GDP, labor-share identities,
Kaitz series, wage-compression dynamics, and a policy-steering simulator."""

from .model import (
    HOURS_PER_YEAR,
    CompensationBreakdown,
    CompressionParams,
    DomainError,
    HorizonSide,
    LaborShareAccount,
    TransformUnit,
    WageDistribution,
    compress,
    crossing_wage,
    decompose_gdppc,
    deflator_invariance,
    horizon_side,
    labor_share,
    mean_wage,
    ratio_nominal,
    t_mean_from_wage,
    transform_cost,
    verify_identity,
)
from .indicators import (
    AnnualObservation,
    CsvValidationError,
    ScatterStats,
    SeriesError,
    WageRatios,
    annualize,
    figure_series,
    gini_alignment,
    kaitz_divergence,
    load_annual_csv,
    nonsupervisory_band,
    ratios,
    real_series,
    scatter,
)
from .simulator import (
    ConvergenceError,
    EconomyState,
    ManualAction,
    PolicyRule,
    RuleKind,
    ScenarioConfig,
    SimulationError,
    StepRecord,
    fixed_point_wmean,
    history_to_csv,
    hungary_scenario,
    policy_floor,
    run,
    snapshot,
    step,
)

__version__ = "0.1.0"
