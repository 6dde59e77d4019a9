"""Dense linear algebra for states, density matrices and channels.

States are plain complex vectors of length 2^n and operators are
2^n x 2^n arrays; qubit 0 is the most significant tensor factor. All
functions are pure and operate at desk scale only.
"""

from __future__ import annotations

import numpy as np

from .numeric import DEFAULT_POLICY, NumericPolicy


def _qubit_count(dim: int, what: str) -> int:
    n = dim.bit_length() - 1
    if dim <= 0 or (1 << n) != dim:
        raise ValueError("%s dimension %d is not a power of two" % (what, dim))
    return n


def check_state_vector(v: np.ndarray, normalized: bool = True,
                       policy: NumericPolicy = DEFAULT_POLICY) -> None:
    v = np.asarray(v)
    if v.ndim != 1:
        raise ValueError("state vector must be one-dimensional")
    _qubit_count(v.shape[0], "state")
    if normalized and abs(np.linalg.norm(v) - 1.0) > policy.algebraic:
        raise ValueError("state vector is not normalized")


def check_density_matrix(rho: np.ndarray,
                         policy: NumericPolicy = DEFAULT_POLICY) -> None:
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("density matrix must be square")
    _qubit_count(rho.shape[0], "density matrix")
    if np.abs(rho - rho.conj().T).max() > policy.algebraic:
        raise ValueError("density matrix is not Hermitian")
    eigs = np.linalg.eigvalsh(rho)
    if eigs.min() < -policy.psd:
        raise ValueError("density matrix has negative eigenvalue %g" % eigs.min())
    tr = float(np.trace(rho).real)
    if not (0.0 < tr <= 1.0 + policy.algebraic):
        raise ValueError("density matrix trace %g outside (0, 1]" % tr)


def check_projector(m: np.ndarray, policy: NumericPolicy = DEFAULT_POLICY) -> None:
    m = np.asarray(m)
    if np.abs(m - m.conj().T).max() > policy.algebraic:
        raise ValueError("projector is not Hermitian")
    if np.abs(m @ m - m).max() > policy.algebraic:
        raise ValueError("projector is not idempotent")


def outer(v: np.ndarray) -> np.ndarray:
    """Rank-one density matrix |v><v|."""
    v = np.asarray(v, dtype=complex)
    return np.outer(v, v.conj())


def projector_from_states(states, policy: NumericPolicy = DEFAULT_POLICY) -> np.ndarray:
    """Projector onto the span of mutually orthonormal states."""
    vecs = [np.asarray(s, dtype=complex) for s in states]
    if not vecs:
        raise ValueError("no states given")
    stack = np.column_stack(vecs)
    gram = stack.conj().T @ stack
    if np.abs(gram - np.eye(len(vecs))).max() > policy.orthonormality:
        raise ValueError("states are not orthonormal")
    return stack @ stack.conj().T


def apply_unitary(rho: np.ndarray, u: np.ndarray,
                  policy: NumericPolicy = DEFAULT_POLICY) -> np.ndarray:
    """Conjugate a density matrix: U rho U†."""
    u = np.asarray(u, dtype=complex)
    if np.abs(u.conj().T @ u - np.eye(u.shape[0])).max() > policy.algebraic:
        raise ValueError("operator is not unitary")
    return u @ rho @ u.conj().T


def embed_operator(op: np.ndarray, coords, n_total: int) -> np.ndarray:
    """Embed an operator on the listed qubits, identity elsewhere.

    The operator's own qubit order follows the coords list order.
    """
    op = np.asarray(op, dtype=complex)
    coords = list(coords)
    p = _qubit_count(op.shape[0], "operator")
    if p != len(coords):
        raise ValueError("operator acts on %d qubits, got %d coords" % (p, len(coords)))
    rest = [q for q in range(n_total) if q not in coords]
    if len(coords) != len(set(coords)) or len(rest) + len(coords) != n_total:
        raise ValueError("bad coordinate list %s" % coords)
    big = np.kron(op, np.eye(1 << len(rest), dtype=complex))
    # big's bit slot k (most significant first) belongs to qubit order[k];
    # permute computational-basis indices so slot q belongs to qubit q
    order = coords + rest
    idx = np.arange(1 << n_total)
    src = np.zeros_like(idx)
    for slot, q in enumerate(order):
        bit = (idx >> (n_total - 1 - q)) & 1
        src |= bit << (n_total - 1 - slot)
    return big[np.ix_(src, src)]


def apply_channel(rho: np.ndarray, kraus, coords,
                  strict_tp: bool = False,
                  policy: NumericPolicy = DEFAULT_POLICY) -> np.ndarray:
    """Apply a Kraus-operator channel on the listed qubits.

    Computes sum_j (E_j (x) I) rho (E_j (x) I)† with each operator
    embedded on ``coords``. The Kraus set must satisfy
    sum_j E_j† E_j <= I; with ``strict_tp`` equality is required.
    """
    rho = np.asarray(rho, dtype=complex)
    n = _qubit_count(rho.shape[0], "density matrix")
    ops = [np.asarray(e, dtype=complex) for e in kraus]
    if not ops:
        raise ValueError("empty Kraus list")
    dim = 1 << len(list(coords))
    for e in ops:
        if e.shape != (dim, dim):
            raise ValueError("Kraus operator shape %s does not match %d coords"
                             % (e.shape, len(list(coords))))
    total = sum(e.conj().T @ e for e in ops)
    defect = np.abs(total - np.eye(dim)).max()
    if strict_tp and defect > policy.algebraic:
        raise ValueError("channel is not trace preserving (defect %g)" % defect)
    if np.linalg.eigvalsh(total).max() > 1.0 + policy.algebraic:
        raise ValueError("Kraus completeness sum exceeds identity")
    out = np.zeros_like(rho)
    for e in ops:
        full = embed_operator(e, coords, n)
        out += full @ rho @ full.conj().T
    return out


def expectation(rho: np.ndarray, m: np.ndarray) -> float:
    """Tr(rho M), returned as a real number."""
    rho = np.asarray(rho)
    m = np.asarray(m)
    if rho.shape != m.shape:
        raise ValueError("shape mismatch %s vs %s" % (rho.shape, m.shape))
    return float(np.trace(rho @ m).real)
