"""Exact minimum-determinant experiments for a two-user lattice code over Z[i, tau]."""

from ._core import (
    BudgetExceeded,
    RingElem,
    decay,
    decay_series,
    det_abs_squared,
    dmt_optimality,
    dmt_threshold,
    factor_z5n,
    fit_exponent,
    m_factor,
    orbit_rep_count,
    run_cli,
    table_rows,
    tau_convergents,
    z_element,
)

__all__ = [
    "BudgetExceeded",
    "RingElem",
    "decay",
    "decay_series",
    "det_abs_squared",
    "dmt_optimality",
    "dmt_threshold",
    "factor_z5n",
    "fit_exponent",
    "m_factor",
    "orbit_rep_count",
    "run_cli",
    "table_rows",
    "tau_convergents",
    "z_element",
]
