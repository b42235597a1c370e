"""Stochastic simulation of process-calculus models."""

from ._gsm import (
    Ensemble,
    Model,
    ModelError,
    ParseError,
    Trace,
    load_model,
    parse_crn_text,
    parse_spi_text,
    run,
    run_ensemble,
)

__all__ = [
    "Ensemble",
    "Model",
    "ModelError",
    "ParseError",
    "Trace",
    "load_model",
    "parse_crn_text",
    "parse_spi_text",
    "run",
    "run_ensemble",
]
