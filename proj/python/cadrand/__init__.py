"""Covariate-adaptive randomization: designs, theory checks and simulation."""

from ._core import (
    Arm,
    CovariateDistribution,
    CovariateStructure,
    Design,
    ImbalanceState,
    NumericalError,
    WeightConfig,
    c_of_wo,
    check_all,
    check_condition_b,
    delta,
    drift_delta_v,
    imbalance_pair,
    make_design,
    preset_table_ids,
    replicate,
    run_preset,
    run_trial,
    stratum_weight,
    u_star,
)

__all__ = [
    "Arm",
    "CovariateDistribution",
    "CovariateStructure",
    "Design",
    "ImbalanceState",
    "NumericalError",
    "WeightConfig",
    "c_of_wo",
    "check_all",
    "check_condition_b",
    "delta",
    "drift_delta_v",
    "imbalance_pair",
    "make_design",
    "preset_table_ids",
    "replicate",
    "run_preset",
    "run_trial",
    "stratum_weight",
    "u_star",
]

__version__ = "0.1.0"
