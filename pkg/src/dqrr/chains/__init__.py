from .core import (
    Chain,
    b_prime,
    connes_B,
    dga_delta,
    hochschild_b,
    iota_phi,
    lambda_normalize,
    N_op,
    pairing_lead,
    pairing_on_unit,
    shuffle_external,
    tau,
)
from .koszul import (
    FormalDeRham,
    KoszulChain,
    hkr,
    koszul_delta_matrixless,
    koszul_partial,
    koszul_to_derham,
    koszul_to_hochschild,
    op_I,
    op_J,
    trace_density_0,
    trace_density_periodic,
)

__all__ = [
    "Chain", "hochschild_b", "connes_B", "b_prime", "tau", "N_op",
    "lambda_normalize", "dga_delta", "shuffle_external", "iota_phi",
    "pairing_lead", "pairing_on_unit",
    "KoszulChain", "FormalDeRham", "koszul_partial", "koszul_to_hochschild",
    "koszul_to_derham", "trace_density_0", "trace_density_periodic",
    "op_I", "op_J", "hkr", "koszul_delta_matrixless",
]
