"""Teleportation through a noisy three-qubit GHZ channel.

Alice sends an unknown qubit to Charlie with Bob as an intermediate party.
The package simulates the protocol in density-matrix form, computes the
receiver and accomplice fidelities, and quantifies the tripartite
entanglement of the decohered channel through the pi-tangle, the
three-tangle and a numerical convex-roof search.
"""

from .channels import (
    ALL_KINDS,
    NOISY_KINDS,
    ChannelParams,
    LindbladSpec,
    NoiseKind,
    channel_state,
    evolve_channel,
    lindblad_evolve,
)
from .convexroof import RoofResult, ensemble_from_isometry, minimize_tangle
from .fidelity import (
    bob_fidelities,
    charlie_average,
    charlie_average_closed,
    charlie_pointwise,
    max_charlie_average_over_nu,
    sphere_average,
)
from .protocol import OutcomeRecord, ResponseMaps, run_protocol
from .qmat import herm_eig, partial_trace, partial_transpose, trace_norm
from .states import BlochAngles, bloch_pure, ghz_basis, ghz_state, w_state
from .tangles import (
    Ensemble,
    concurrence,
    negativity,
    pi_tangle,
    pi_tangle_closed,
    three_tangle_closed,
    three_tangle_pure,
    three_tangle_upper_bound,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_KINDS",
    "NOISY_KINDS",
    "BlochAngles",
    "ChannelParams",
    "Ensemble",
    "LindbladSpec",
    "NoiseKind",
    "OutcomeRecord",
    "ResponseMaps",
    "RoofResult",
    "bloch_pure",
    "bob_fidelities",
    "channel_state",
    "charlie_average",
    "charlie_average_closed",
    "charlie_pointwise",
    "concurrence",
    "ensemble_from_isometry",
    "evolve_channel",
    "ghz_basis",
    "ghz_state",
    "herm_eig",
    "lindblad_evolve",
    "max_charlie_average_over_nu",
    "minimize_tangle",
    "negativity",
    "partial_trace",
    "partial_transpose",
    "pi_tangle",
    "pi_tangle_closed",
    "run_protocol",
    "sphere_average",
    "three_tangle_closed",
    "three_tangle_pure",
    "three_tangle_upper_bound",
    "trace_norm",
    "w_state",
]
