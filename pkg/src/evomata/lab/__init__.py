"""Desk-scale experiments checking convergence, NFL, schema-bound, and ES-rate claims."""

from .report import ExperimentReport, digest_of
from .convergence import ConvergenceConfig, convergence_experiment
from .nfl import (
    NflProblem,
    SearchAlgorithm,
    neighbor_climb_search,
    nfl_experiment,
    scan_search,
    shuffled_search,
)
from .schema import Schema, SchemaGaConfig, holland_bound, schema_experiment
from .esrate import EsRateConfig, es_rate_experiment

__all__ = [
    "ExperimentReport",
    "digest_of",
    "ConvergenceConfig",
    "convergence_experiment",
    "NflProblem",
    "SearchAlgorithm",
    "scan_search",
    "shuffled_search",
    "neighbor_climb_search",
    "nfl_experiment",
    "Schema",
    "SchemaGaConfig",
    "holland_bound",
    "schema_experiment",
    "EsRateConfig",
    "es_rate_experiment",
]
