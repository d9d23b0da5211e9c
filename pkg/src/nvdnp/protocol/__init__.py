"""DNP sequence, theoretical limit and ensemble averaging."""

from nvdnp.protocol.dnp import (
    evaluate_ensemble,
    evaluate_limit,
    limit_member,
    limit_members,
    run_dnp_member,
    run_dnp_members,
)
from nvdnp.protocol.ensemble import (
    cauchy_weights,
    ensemble_average,
    ensemble_grid,
    limit_average_closed_form,
    zeeman_offsets,
)

__all__ = [
    "cauchy_weights",
    "ensemble_average",
    "ensemble_grid",
    "evaluate_ensemble",
    "evaluate_limit",
    "limit_average_closed_form",
    "limit_member",
    "limit_members",
    "run_dnp_member",
    "run_dnp_members",
    "zeeman_offsets",
]
