"""Shared numeric tolerance policy.

Every tolerance used for validation lives in one record so that
reproducibility is controlled from a single place.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class NumericPolicy:
    """Tolerance knobs applied across the package.

    Attributes
    ----------
    algebraic : float
        Hermiticity, unitarity, stabilization and trace checks.
    orthonormality : float
        Gram-matrix deviation allowed for basis-vector inputs.
    psd : float
        Slack below zero allowed for eigenvalues of nominally
        positive semidefinite matrices.
    kl_residual : float
        Allowed residual in the error-correcting-condition check.
    readout_consistency : float
        Allowed spread between redundant exact-mode readouts of the
        same process-matrix entry.
    sampling_clamp : float
        Negative probabilities above this magnitude are an error;
        smaller ones are treated as floating-point dust and clamped.
    """

    algebraic: float = 1e-10
    orthonormality: float = 1e-8
    psd: float = 1e-10
    kl_residual: float = 1e-8
    readout_consistency: float = 1e-8
    sampling_clamp: float = 1e-12


DEFAULT_POLICY = NumericPolicy()
