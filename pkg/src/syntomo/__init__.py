"""Quantum channel characterization from stabilizer-code syndrome statistics.

Encode a logical state into a stabilizer code whose correctable errors
form a group on the noisy coordinates, measure syndromes under bare,
rotated and toggled-rotated configurations, and reconstruct the
channel's process matrix, validated against a brute-force oracle.
"""

from .channels import (
    Channel,
    ProcessMatrix,
    builtin_channel,
    channel_from_json,
    channel_to_json,
    chi_from_kraus,
    extend_channel,
    kraus_from_chi,
    validate_channel,
    validity_report,
)
from .codes import (
    StabilizerCode,
    build_code,
    builtin_code,
    code_from_json,
    code_to_json,
    hamming_bound,
    kl_condition,
    kl_scan,
    syndrome_of,
    syndrome_projector,
)
from .densesim import (
    apply_channel,
    apply_unitary,
    embed_operator,
    expectation,
    outer,
    projector_from_states,
)
from .estimation import ErrorReport, SamplingPolicy, compare, sample_record
from .numeric import DEFAULT_POLICY, NumericPolicy
from .pauli import (
    ErrorBasis,
    PauliFactor,
    PauliOperator,
    commutes,
    enumerate_error_basis,
    pauli_from_string,
    pauli_mul,
    pauli_to_string,
    to_matrix,
)
from .protocol import (
    NO_DETECTION,
    Configuration,
    LinearReadout,
    MeasurementRecord,
    build_toggle,
    derive_readouts,
    encode,
    pauli_factors,
    plan_configurations,
    plan_from_json,
    plan_to_json,
    reconstruct,
    recover,
    rotation_unitary,
    xi_predicted,
    xi_simulated,
)

__all__ = [
    "Channel",
    "Configuration",
    "DEFAULT_POLICY",
    "ErrorBasis",
    "ErrorReport",
    "LinearReadout",
    "MeasurementRecord",
    "NO_DETECTION",
    "NumericPolicy",
    "PauliFactor",
    "PauliOperator",
    "ProcessMatrix",
    "SamplingPolicy",
    "StabilizerCode",
    "apply_channel",
    "apply_unitary",
    "build_code",
    "build_toggle",
    "builtin_channel",
    "builtin_code",
    "channel_from_json",
    "channel_to_json",
    "chi_from_kraus",
    "extend_channel",
    "code_from_json",
    "code_to_json",
    "commutes",
    "compare",
    "derive_readouts",
    "embed_operator",
    "encode",
    "enumerate_error_basis",
    "expectation",
    "hamming_bound",
    "kl_condition",
    "kl_scan",
    "kraus_from_chi",
    "outer",
    "pauli_factors",
    "pauli_from_string",
    "pauli_mul",
    "pauli_to_string",
    "plan_configurations",
    "plan_from_json",
    "plan_to_json",
    "projector_from_states",
    "reconstruct",
    "recover",
    "rotation_unitary",
    "sample_record",
    "syndrome_of",
    "syndrome_projector",
    "to_matrix",
    "validate_channel",
    "validity_report",
    "xi_predicted",
    "xi_simulated",
]

__version__ = "0.1.0"
