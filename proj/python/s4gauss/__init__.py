"""Gauss map diagnostics for conformal immersions into S^4."""

from ._s4gauss import (  # noqa: F401
    Analysis,
    Error,
    Immersion,
    analyze,
    clifford_torus,
    default_lambdas,
    equatorial_sphere,
    grid_file,
    moebius,
    parse_config,
    pmc_torus,
    verify_config,
)

__all__ = [
    "Analysis",
    "Error",
    "Immersion",
    "analyze",
    "clifford_torus",
    "default_lambdas",
    "equatorial_sphere",
    "grid_file",
    "moebius",
    "parse_config",
    "pmc_torus",
    "verify_config",
]
