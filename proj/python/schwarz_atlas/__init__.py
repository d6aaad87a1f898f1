"""Schwarz triangles, root-system hypergeometric systems and Schwarz conditions."""

import json as _json

from ._core import (
    SCHEMA_VERSION,
    NumericError,
    ValidationError,
    ball_check,
    classify,
    corollary_table,
    dm_scan,
    enumerate,
    flatness_residual,
    gauss_monodromy,
    k_from_p,
    mirror_monodromy,
    normalize_rational,
    pullback_dictionary,
    pullback_residual,
    report_schema as _core_schema,
    root_constants,
    run,
    sample_points,
    schwarz_check,
    tessellate,
    vertex_angles,
)


def schema():
    return _json.loads(_core_schema())


def run_json(*args):
    """Run a CLI command with --format json; returns (exit_code, document)."""
    code, out, err = run(list(args) + ["--format", "json"])
    if code == 2 or not out:
        raise ValidationError(err.strip())
    return code, _json.loads(out)


__all__ = [
    "SCHEMA_VERSION",
    "NumericError",
    "ValidationError",
    "ball_check",
    "classify",
    "corollary_table",
    "dm_scan",
    "enumerate",
    "flatness_residual",
    "gauss_monodromy",
    "k_from_p",
    "mirror_monodromy",
    "normalize_rational",
    "pullback_dictionary",
    "pullback_residual",
    "root_constants",
    "run",
    "run_json",
    "sample_points",
    "schema",
    "schwarz_check",
    "tessellate",
    "vertex_angles",
]
