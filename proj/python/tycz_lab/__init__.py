"""Calabi tube metric and TYCZ coefficient checks."""

import json

from . import _core
from ._core import (
    EpsilonError,
    GeometryError,
    IoError,
    SeriesError,
    calabi_series,
    criterion_count,
    criterion_name,
    epsilon_disc,
    epsilon_flat,
    epsilon_projective,
    model_coefficients,
    profile_csv,
    run_cli,
    solve_profile,
)


def run_criterion(criterion_id):
    return json.loads(_core.run_criterion_json(criterion_id))


def cli_json(*args):
    code, out, err = run_cli([str(a) for a in args])
    return code, (json.loads(out) if out.strip().startswith("{") else None), err


__all__ = [
    "EpsilonError",
    "GeometryError",
    "IoError",
    "SeriesError",
    "calabi_series",
    "cli_json",
    "criterion_count",
    "criterion_name",
    "epsilon_disc",
    "epsilon_flat",
    "epsilon_projective",
    "model_coefficients",
    "profile_csv",
    "run_cli",
    "run_criterion",
    "solve_profile",
]
