"""Gaps between zeros of the derivative of the Riemann xi function."""

from ._core import (
    XigapError,
    c_opt,
    g_detector,
    h1_theorem1,
    h1_theorem2,
    optimize_theorem1,
    optimize_theorem2,
    run_cli,
    scan_zeros,
    uv,
    xi_log_derivative,
    zeta,
)

__all__ = [
    "XigapError",
    "c_opt",
    "g_detector",
    "h1_theorem1",
    "h1_theorem2",
    "optimize_theorem1",
    "optimize_theorem2",
    "run_cli",
    "scan_zeros",
    "uv",
    "xi_log_derivative",
    "zeta",
]
