"""Stabilizer codes that correct arbitrary errors on known coordinates.

A code is specified by commuting generators, the noisy coordinate
subset and a logical basis. Every error-basis element must map the
code space to a distinct syndrome space, so that one round of syndrome
measurement identifies the error exactly. The error-correcting
condition is checked numerically at build time and degenerate codes
are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .densesim import projector_from_states
from .numeric import DEFAULT_POLICY, NumericPolicy
from .pauli import (
    ErrorBasis,
    PauliOperator,
    commutes,
    enumerate_error_basis,
    pauli_from_string,
    pauli_to_string,
    to_matrix,
)

Syndrome = tuple

_FIVE_QUBIT_GENERATORS = ("IZZZZ", "XXXII", "ZXZIX", "ZZXXI")
_THREE_QUBIT_GENERATORS = ("XIX", "YYZ")
_THREE_QUBIT_LOGICAL_OPS = {"X": "−ZXZ", "Z": "XYX"}


@dataclass(frozen=True, eq=False)
class StabilizerCode:
    """[[n, k]] stabilizer code with a group-closed correctable error set."""

    n: int
    k: int
    generators: tuple
    logical_basis: tuple
    noisy_coords: tuple
    error_basis: ErrorBasis
    syndrome_table: tuple
    syndrome_index: dict = field(repr=False, compare=False)

    @property
    def d2(self) -> int:
        """Error-basis size 4^p."""
        return self.error_basis.size

    def code_projector(self) -> np.ndarray:
        return projector_from_states(self.logical_basis)


def _symplectic_rank(generators) -> int:
    """Rank of the generators over GF(2) in (x|z) mask form."""
    rows = [(g.x_mask << g.n) | g.z_mask for g in generators]
    rank = 0
    while True:
        rows = [r for r in rows if r]
        if not rows:
            return rank
        pivot = max(rows)
        rows.remove(pivot)
        bit = 1 << (pivot.bit_length() - 1)
        rows = [r ^ pivot if r & bit else r for r in rows]
        rank += 1


def _syndrome_bits(error: PauliOperator, generators) -> Syndrome:
    return tuple(0 if commutes(error, g) else 1 for g in generators)


def _fix_global_phase(v: np.ndarray) -> np.ndarray:
    """Rotate so the largest-magnitude amplitude is real and positive."""
    i = int(np.argmax(np.abs(v)))
    ph = v[i] / abs(v[i])
    return v * ph.conjugate()


def _derive_logical_basis(generators, k: int, logical_ops,
                          policy: NumericPolicy) -> tuple:
    """Joint +1 eigenspace of the generators, with a fixed basis.

    With logical operators supplied, the basis is the Z_L eigenvector
    pair, |1_L> = X_L |0_L>. Without them, the eigenvectors of the
    code projector are orthonormalized with each vector's leading
    amplitude made real positive.
    """
    n = generators[0].n
    dim = 1 << n
    proj = np.eye(dim, dtype=complex)
    for g in generators:
        proj = proj @ (np.eye(dim, dtype=complex) + to_matrix(g)) / 2.0
    eigvals, eigvecs = np.linalg.eigh(proj)
    keep = [i for i in range(dim) if eigvals[i] > 0.5]
    if len(keep) != (1 << k):
        raise ValueError("code space has dimension %d, expected %d"
                         % (len(keep), 1 << k))
    block = eigvecs[:, keep]

    if logical_ops is not None:
        if k != 1:
            raise ValueError("logical-operator basis fixing supports k=1 only")
        x_l, z_l = logical_ops
        for op in (x_l, z_l):
            for g in generators:
                if not commutes(op, g):
                    raise ValueError("logical operator %s anticommutes with "
                                     "generator %s" % (pauli_to_string(op),
                                                       pauli_to_string(g)))
        if commutes(x_l, z_l):
            raise ValueError("logical operators must anticommute")
        zmat = to_matrix(z_l)
        small = block.conj().T @ zmat @ block
        w, v = np.linalg.eigh(small)
        if abs(w[-1] - 1.0) > policy.orthonormality:
            raise ValueError("Z logical operator has no +1 eigenvector "
                             "inside the code space")
        zero = _fix_global_phase(block @ v[:, -1])
        one = to_matrix(x_l) @ zero
        return (zero, one)

    q, _ = np.linalg.qr(block)
    out = []
    for j in range(q.shape[1]):
        col = q[:, j]
        lead = col[np.flatnonzero(np.abs(col) > policy.orthonormality)[0]]
        out.append(col * (lead / abs(lead)).conjugate())
    return tuple(out)


def build_code(generators, noisy_coords, codewords=None, logical_ops=None,
               policy: NumericPolicy = DEFAULT_POLICY) -> StabilizerCode:
    """Construct and verify a stabilizer code for the given error set.

    Parameters
    ----------
    generators : iterable of PauliOperator or str
        Mutually commuting, independent stabilizer generators.
    noisy_coords : iterable of int
        Coordinates of the subsystem carrying unknown dynamics.
    codewords : optional iterable of vectors
        Explicit logical basis; must be orthonormal and stabilized by
        every generator. When omitted the basis is derived from the
        joint +1 eigenspace (see ``logical_ops``).
    logical_ops : optional pair (X_L, Z_L) of PauliOperator or str
        Used only when codewords are omitted, to fix the derived basis
        as Z_L eigenvectors with X_L mapping between them.

    Raises
    ------
    ValueError
        Non-commuting or dependent generators, codewords that are not
        stabilized, a syndrome collision, or failure of the
        error-correcting condition.
    """
    gens = tuple(g if isinstance(g, PauliOperator) else pauli_from_string(g)
                 for g in generators)
    if not gens:
        raise ValueError("no generators given")
    n = gens[0].n
    for g in gens:
        if g.n != n:
            raise ValueError("generators act on different qubit counts")
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not commutes(gens[i], gens[j]):
                raise ValueError("generators %s and %s do not commute"
                                 % (pauli_to_string(gens[i]),
                                    pauli_to_string(gens[j])))
    if _symplectic_rank(gens) != len(gens):
        raise ValueError("generators are not independent")
    k = n - len(gens)
    if k < 1:
        raise ValueError("no logical qubits: %d generators on %d qubits"
                         % (len(gens), n))

    if codewords is not None:
        basis_states = tuple(np.asarray(v, dtype=complex) for v in codewords)
        if len(basis_states) != (1 << k):
            raise ValueError("expected %d codewords, got %d"
                             % (1 << k, len(basis_states)))
        projector_from_states(basis_states, policy)  # orthonormality gate
        for g in gens:
            gm = to_matrix(g)
            for v in basis_states:
                if np.abs(gm @ v - v).max() > policy.algebraic:
                    raise ValueError("codeword is not stabilized by %s"
                                     % pauli_to_string(g))
    else:
        ops = None
        if logical_ops is not None:
            if isinstance(logical_ops, dict):
                x_l, z_l = logical_ops["X"], logical_ops["Z"]
            else:
                x_l, z_l = logical_ops
            ops = (x_l if isinstance(x_l, PauliOperator) else pauli_from_string(x_l, n),
                   z_l if isinstance(z_l, PauliOperator) else pauli_from_string(z_l, n))
        basis_states = _derive_logical_basis(gens, k, ops, policy)

    error_basis = enumerate_error_basis(n, noisy_coords)
    table = tuple(_syndrome_bits(e, gens) for e in error_basis.elements)
    index = {}
    for i, syn in enumerate(table):
        if syn in index:
            raise ValueError(
                "syndrome collision: errors %s and %s share syndrome %s"
                % (error_basis.label(index[syn]), error_basis.label(i), syn))
        index[syn] = i

    code = StabilizerCode(
        n=n, k=k, generators=gens, logical_basis=basis_states,
        noisy_coords=tuple(noisy_coords), error_basis=error_basis,
        syndrome_table=table, syndrome_index=index,
    )
    c = kl_condition(code, policy)
    if abs(np.linalg.det(c)) < policy.kl_residual:
        raise ValueError("degenerate code: error-correcting condition "
                         "matrix is singular")
    return code


def syndrome_of(code: StabilizerCode, error_index: int) -> Syndrome:
    """Syndrome bits of an error-basis element, in generator order.

    Bit j is 1 iff the error anticommutes with generator j, i.e. the
    measured eigenvalue of that generator is -1.
    """
    if not (0 <= error_index < code.d2):
        raise ValueError("error index %d outside 0..%d" % (error_index, code.d2 - 1))
    return code.syndrome_table[error_index]


def kl_scan(code: StabilizerCode) -> tuple:
    """Error-correcting-condition matrix and worst residual, unchecked.

    Returns (C, residual) with C_ab = Tr(Pi F_a† F_b Pi) / Tr(Pi) and
    residual the largest entrywise deviation of Pi F_a† F_b Pi from
    C_ab Pi over all error pairs.
    """
    proj = code.code_projector()
    tr = float(np.trace(proj).real)
    d2 = code.d2
    mats = [to_matrix(e) for e in code.error_basis.elements]
    c = np.zeros((d2, d2), dtype=complex)
    residual = 0.0
    for a in range(d2):
        left = proj @ mats[a].conj().T
        for b in range(d2):
            m = left @ mats[b] @ proj
            c_ab = np.trace(m) / tr
            residual = max(residual, float(np.abs(m - c_ab * proj).max()))
            c[a, b] = c_ab
    return c, residual


def kl_condition(code: StabilizerCode, policy: NumericPolicy = DEFAULT_POLICY) -> np.ndarray:
    """Error-correcting-condition matrix C with Pi F_a† F_b Pi = C_ab Pi.

    A residual above the policy tolerance means the code cannot correct
    this error set, and is an error.
    """
    c, residual = kl_scan(code)
    if residual > policy.kl_residual:
        raise ValueError("error-correcting condition fails with residual %g"
                         % residual)
    return c


def hamming_bound(n: int, k: int, m: int) -> dict:
    """Check 2^k 4^m <= 2^n, i.e. k + 2m <= n; perfect iff equality."""
    if n < 0 or k < 0 or m < 0:
        raise ValueError("arguments must be nonnegative")
    return {"satisfied": k + 2 * m <= n, "perfect": k + 2 * m == n}


def syndrome_projector(code: StabilizerCode, syndrome: Syndrome) -> np.ndarray:
    """Projector onto the error space of the given syndrome: F_x Pi F_x†."""
    syn = tuple(int(b) for b in syndrome)
    if syn not in code.syndrome_index:
        raise ValueError("syndrome %s not in table" % (syn,))
    f = to_matrix(code.error_basis.elements[code.syndrome_index[syn]])
    return f @ code.code_projector() @ f.conj().T


def builtin_code(name: str, policy: NumericPolicy = DEFAULT_POLICY) -> StabilizerCode:
    """Built-in codes: "code3" ([[3,1]], one noisy qubit) and
    "code5" ([[5,1]], two noisy qubits)."""
    key = name.strip().lower()
    if key == "code3":
        return build_code(_THREE_QUBIT_GENERATORS, (0,),
                          codewords=_three_qubit_codewords(), policy=policy)
    if key == "code5":
        return build_code(_FIVE_QUBIT_GENERATORS, (0, 1),
                          codewords=_five_qubit_codewords(), policy=policy)
    raise ValueError("unknown code name %r; known names: code3, code5" % name)


def _ket(bits: str) -> np.ndarray:
    v = np.zeros(1 << len(bits), dtype=complex)
    v[int(bits, 2)] = 1.0
    return v


def _three_qubit_codewords() -> tuple:
    zero = (_ket("001") + _ket("010") + _ket("100") + _ket("111")) / 2.0
    one = (_ket("110") - _ket("101") + _ket("011") - _ket("000")) / 2.0
    return (zero, one)


def _five_qubit_codewords() -> tuple:
    zero = (_ket("00000") + _ket("00110") + _ket("01001") - _ket("01111")
            - _ket("10011") + _ket("10101") + _ket("11010") + _ket("11100"))
    zero = zero / (2.0 * np.sqrt(2.0))
    flip = to_matrix(pauli_from_string("XXXXX"))
    return (zero, flip @ zero)


def code_to_json(code: StabilizerCode) -> dict:
    """Schema: {"n", "k", "generators", "noisy_coords", "codewords"}."""
    codewords = [[[float(a.real), float(a.imag)] for a in v]
                 for v in code.logical_basis]
    return {
        "n": code.n,
        "k": code.k,
        "generators": [pauli_to_string(g) for g in code.generators],
        "noisy_coords": list(code.noisy_coords),
        "codewords": codewords,
    }


def code_from_json(doc: dict, policy: NumericPolicy = DEFAULT_POLICY) -> StabilizerCode:
    """Build a code from its JSON form.

    Codewords take precedence; otherwise optional logical_ops
    {"X": ..., "Z": ...} fix the derived basis.
    """
    codewords = None
    if "codewords" in doc and doc["codewords"] is not None:
        codewords = [np.array([complex(a[0], a[1]) for a in vec])
                     for vec in doc["codewords"]]
    logical_ops = None
    if "logical_ops" in doc and doc["logical_ops"] is not None:
        logical_ops = (doc["logical_ops"]["X"], doc["logical_ops"]["Z"])
    return build_code(doc["generators"], doc["noisy_coords"],
                      codewords=codewords, logical_ops=logical_ops,
                      policy=policy)
