"""Channel characterization from syndrome statistics.

The procedure encodes an arbitrary logical state, lets the unknown
channel act on the noisy coordinates, optionally applies a
pre-processing unitary, and measures the stabilizer generators. Each
measurement configuration turns syndrome probabilities into linear
readouts of process-matrix entries:

* bare: the syndrome of error x occurs with probability chi_{x,x};
* rotated by U = (F_a + F_b)/sqrt(2) (anticommuting pair) or
  U = (F_a + i F_b)/sqrt(2) (commuting pair): the syndrome of x gives
  (chi_{A,A} + chi_{B,B})/2 plus the real respectively imaginary part
  of g_A* g_B chi_{A,B}, where g_A F_A = F_a F_x and g_B F_B = F_b F_x;
* toggled: the same readout applied to chi' = S chi S† with
  S = diag(e^{i theta_m}), theta_m = +-pi/4, which swaps the exposed
  real and imaginary parts for index pairs of opposite sign.

The default planner uses (a, b) = (I, P) for every non-identity basis
element P. Identity commutes with everything, so one uniform unitary
form applies, and x -> index(P F_x) is a fixed-point-free pairing whose
two-coloring (+pi/4 to the smaller index of each pair) satisfies the
equal-sign requirement. One bare configuration plus a rotated and a
toggled configuration per P meets the 1 + 2(d^2 - 1) bound, and every
off-diagonal entry is determined twice over for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channels import Channel, ProcessMatrix
from .codes import StabilizerCode, syndrome_projector
from .densesim import apply_channel, apply_unitary, expectation, outer
from .numeric import DEFAULT_POLICY, NumericPolicy
from .pauli import commutes, to_matrix

# sampled-mode overflow bin for trace-decreasing channels
NO_DETECTION = "no-detection"

_MINUS = "−"

# exact phase factor e^{i pi/4 (s_A - s_B)} for sign pairs
_TOGGLE_PHASE = {2: 1j, 0: 1.0 + 0.0j, -2: -1j}


@dataclass(frozen=True, eq=False)
class Configuration:
    """One measurement setup: pre-processing followed by syndrome readout.

    ``theta_signs`` maps error index m to the sign of theta_m = +-pi/4;
    ``unitary`` is the realized pre-processing operator (None when bare).
    """

    index: int
    kind: str  # "bare" | "rotated" | "toggled"
    a: int | None = None
    b: int | None = None
    theta_signs: tuple | None = None
    unitary: np.ndarray | None = field(default=None, repr=False)


@dataclass(frozen=True)
class LinearReadout:
    """An affine relation between one syndrome probability and chi.

    xi = (chi_{A,A} + chi_{B,B})/2 + c * Re chi_{A,B} + s * Im chi_{A,B}
    with A = a_index <= b_index = B, c = coeff_re, s = coeff_im. Bare
    readouts carry A = B and zero coefficients: xi = chi_{A,A}.
    """

    config_index: int
    syndrome: tuple
    a_index: int
    b_index: int
    coeff_re: int
    coeff_im: int


@dataclass(frozen=True, eq=False)
class MeasurementRecord:
    """Syndrome distribution observed under one configuration.

    Exact mode stores probabilities (``shots`` is None); sampled mode
    stores counts. The distribution may carry a no-detection bin when
    the channel is trace decreasing.
    """

    config_index: int
    distribution: dict
    shots: int | None = None

    @property
    def exact(self) -> bool:
        return self.shots is None

    def value(self, syndrome) -> float:
        """Probability estimate for one syndrome."""
        raw = self.distribution.get(syndrome, 0.0)
        if self.shots is None:
            return float(raw)
        return float(raw) / float(self.shots)


def encode(code: StabilizerCode, beta, policy: NumericPolicy = DEFAULT_POLICY) -> np.ndarray:
    """Encoded logical state sum_j beta_j |j_L>."""
    beta = np.asarray(beta, dtype=complex)
    if beta.shape != (1 << code.k,):
        raise ValueError("expected %d logical amplitudes, got shape %s"
                         % (1 << code.k, beta.shape))
    if abs(np.linalg.norm(beta) - 1.0) > policy.algebraic:
        raise ValueError("logical amplitudes are not normalized")
    out = np.zeros(1 << code.n, dtype=complex)
    for amp, vec in zip(beta, code.logical_basis):
        out = out + amp * vec
    return out


def pauli_factors(code: StabilizerCode, a: int, b: int, x: int):
    """Factor the products F_a F_x and F_b F_x over the error basis.

    Returns (g_A, A, g_B, B, same_type) with F_a F_x = g_A F_A and
    F_b F_x = g_B F_B; same_type is true when g_A and g_B are both
    real or both imaginary, which decides whether a readout exposes a
    real or an imaginary combination.
    """
    return _factors_from_basis(code.error_basis, a, b, x)


def rotation_unitary(code: StabilizerCode, a: int, b: int,
                     policy: NumericPolicy = DEFAULT_POLICY) -> np.ndarray:
    """Pre-processing unitary for an error pair.

    (F_a + F_b)/sqrt(2) when the pair anticommutes, else
    (F_a + i F_b)/sqrt(2); only these combinations are unitary.
    """
    if a == b:
        raise ValueError("rotation needs two distinct error indices")
    basis = code.error_basis
    fa = to_matrix(basis.elements[a])
    fb = to_matrix(basis.elements[b])
    if commutes(basis.elements[a], basis.elements[b]):
        u = (fa + 1j * fb) / np.sqrt(2.0)
    else:
        u = (fa + fb) / np.sqrt(2.0)
    if np.abs(u.conj().T @ u - np.eye(u.shape[0])).max() > 1e-12:
        raise ValueError("rotation for pair (%s, %s) failed the unitarity check"
                         % (basis.label(a), basis.label(b)))
    return u


def build_toggle(code: StabilizerCode, theta_signs,
                 policy: NumericPolicy = DEFAULT_POLICY) -> np.ndarray:
    """Toggling operator S+ = sum_m e^{i theta_m} Pi_m plus identity
    on the complement of the error ball.

    ``theta_signs`` assigns each error index the sign of theta_m =
    +-pi/4 and must carry both signs in equal number. Every correctable
    pure state F_m |Psi_L> is an eigenstate with eigenvalue
    e^{i theta_m}, so the syndrome statistics transform as
    chi -> S chi S†.
    """
    signs = tuple(int(s) for s in theta_signs)
    if len(signs) != code.d2:
        raise ValueError("expected %d theta signs, got %d" % (code.d2, len(signs)))
    if any(s not in (-1, 1) for s in signs):
        raise ValueError("theta signs must be +1 or -1")
    if sum(1 for s in signs if s > 0) != code.d2 // 2:
        raise ValueError("theta must carry both signs in equal number")
    dim = 1 << code.n
    covered = np.zeros((dim, dim), dtype=complex)
    toggle = np.zeros((dim, dim), dtype=complex)
    for m in range(code.d2):
        proj = syndrome_projector(code, code.syndrome_table[m])
        toggle += np.exp(1j * signs[m] * np.pi / 4.0) * proj
        covered += proj
    # perfect codes tile the space; otherwise act as identity outside
    return toggle + (np.eye(dim, dtype=complex) - covered)


def xi_predicted(chi: ProcessMatrix, cfg: Configuration, x: int) -> float:
    """Closed-form syndrome probability for error index x under cfg."""
    ent = chi.entries
    if cfg.kind == "bare":
        return float(ent[x, x].real)
    basis = chi.basis
    g_a, idx_a, g_b, idx_b, _ = _factors_from_basis(basis, cfg.a, cfg.b, x)
    term = g_a.value.conjugate() * g_b.value * ent[idx_a, idx_b]
    if cfg.kind == "toggled":
        term *= _TOGGLE_PHASE[cfg.theta_signs[idx_a] - cfg.theta_signs[idx_b]]
    base = 0.5 * float((ent[idx_a, idx_a] + ent[idx_b, idx_b]).real)
    if commutes(basis.elements[cfg.a], basis.elements[cfg.b]):
        return base + float(term.imag)
    return base + float(term.real)


def _factors_from_basis(basis, a: int, b: int, x: int):
    g_a, idx_a = basis.mul(a, x)
    g_b, idx_b = basis.mul(b, x)
    same_type = (g_a.exp - g_b.exp) % 2 == 0
    return g_a, idx_a, g_b, idx_b, same_type


def xi_simulated(code: StabilizerCode, beta, channel: Channel,
                 cfg: Configuration,
                 policy: NumericPolicy = DEFAULT_POLICY) -> MeasurementRecord:
    """Exact syndrome distribution of one configuration.

    Encodes, applies the channel on the noisy coordinates, applies the
    configuration's pre-processing, and projects onto each syndrome
    space. Probabilities sum to the output trace, which is 1 for
    trace-preserving channels. A channel on fewer qubits than the noisy
    subsystem acts on its leading coordinates and leaves the rest alone.
    """
    if channel.p > len(code.noisy_coords):
        raise ValueError("channel acts on %d qubits but the code's noisy "
                         "subsystem has %d" % (channel.p, len(code.noisy_coords)))
    rho = outer(encode(code, beta, policy))
    rho = apply_channel(rho, channel.kraus, code.noisy_coords[:channel.p],
                        policy=policy)
    if cfg.unitary is not None:
        rho = apply_unitary(rho, cfg.unitary, policy)
    dist = {}
    for x in range(code.d2):
        syn = code.syndrome_table[x]
        dist[syn] = expectation(rho, syndrome_projector(code, syn))
    return MeasurementRecord(config_index=cfg.index, distribution=dist, shots=None)


def plan_configurations(code: StabilizerCode,
                        policy: NumericPolicy = DEFAULT_POLICY):
    """Measurement plan determining every process-matrix entry.

    Returns (configurations, readouts): one bare configuration, then a
    rotated and a toggled configuration for each non-identity basis
    element P with (a, b) = (I, P), totalling 1 + 2(d^2 - 1). The
    toggle signs two-color the pairing x <-> index(P F_x) by giving
    +pi/4 to the smaller index of each pair.
    """
    basis = code.error_basis
    d2 = basis.size
    configs = [Configuration(index=0, kind="bare")]
    for p in range(1, d2):
        u = rotation_unitary(code, 0, p, policy)
        configs.append(Configuration(
            index=len(configs), kind="rotated", a=0, b=p, unitary=u))
        signs = [0] * d2
        for x in range(d2):
            if signs[x] != 0:
                continue
            _, partner = basis.mul(p, x)
            signs[x], signs[partner] = (1, -1) if x < partner else (-1, 1)
        toggled = build_toggle(code, signs, policy)
        configs.append(Configuration(
            index=len(configs), kind="toggled", a=0, b=p,
            theta_signs=tuple(signs), unitary=u @ toggled))
    return configs, derive_readouts(code, configs)


def derive_readouts(code: StabilizerCode, configs) -> list:
    """Linear readouts of every configuration, normalized to row <= col.

    Off-diagonal coefficients come from g = g_A* g_B (times the toggle
    phase) and from the commutation class of the configuration pair;
    readouts on the lower triangle are folded onto the upper one via
    chi_{B,A} = chi_{A,B}*, which is where Hermiticity enters the
    reconstruction.
    """
    basis = code.error_basis
    readouts = []
    for cfg in configs:
        if cfg.kind == "bare":
            for x in range(code.d2):
                readouts.append(LinearReadout(
                    config_index=cfg.index, syndrome=code.syndrome_table[x],
                    a_index=x, b_index=x, coeff_re=0, coeff_im=0))
            continue
        pair_commutes = commutes(basis.elements[cfg.a], basis.elements[cfg.b])
        for x in range(code.d2):
            g_a, idx_a, g_b, idx_b, _ = _factors_from_basis(basis, cfg.a, cfg.b, x)
            g = g_a.value.conjugate() * g_b.value
            if cfg.kind == "toggled":
                g *= _TOGGLE_PHASE[cfg.theta_signs[idx_a] - cfg.theta_signs[idx_b]]
            gr = int(round(g.real))
            gi = int(round(g.imag))
            if pair_commutes:
                # xi - base = Im(g chi_AB) = gi Re + gr Im
                coeffs = (gi, gr) if idx_a < idx_b else (gi, -gr)
            else:
                # xi - base = Re(g chi_AB) = gr Re - gi Im
                coeffs = (gr, -gi) if idx_a < idx_b else (gr, gi)
            row, col = min(idx_a, idx_b), max(idx_a, idx_b)
            readouts.append(LinearReadout(
                config_index=cfg.index, syndrome=code.syndrome_table[x],
                a_index=row, b_index=col,
                coeff_re=coeffs[0], coeff_im=coeffs[1]))
    return readouts


def reconstruct(records, readouts, basis,
                policy: NumericPolicy = DEFAULT_POLICY) -> ProcessMatrix:
    """Assemble the process matrix from measurement records.

    The diagonal comes straight from the bare readouts. Each
    off-diagonal readout is reduced to c*Re + s*Im of one upper-triangle
    entry by subtracting the diagonal half-sum; the redundant estimates
    are averaged, and in exact mode additionally cross-checked against
    each other within the policy tolerance.
    """
    by_config = {}
    for rec in records:
        by_config[rec.config_index] = rec
    needed = {ro.config_index for ro in readouts}
    missing = sorted(needed - set(by_config))
    if missing:
        raise ValueError("missing records for configurations %s" % missing)
    exact = all(rec.exact for rec in by_config.values())

    d2 = basis.size
    diag = np.zeros(d2)
    for ro in readouts:
        if ro.a_index == ro.b_index:
            diag[ro.a_index] = by_config[ro.config_index].value(ro.syndrome)

    estimates = {}
    for ro in readouts:
        if ro.a_index == ro.b_index:
            continue
        value = by_config[ro.config_index].value(ro.syndrome)
        value -= 0.5 * (diag[ro.a_index] + diag[ro.b_index])
        slot = estimates.setdefault((ro.a_index, ro.b_index), ([], []))
        if ro.coeff_re != 0:
            slot[0].append(value / ro.coeff_re)
        elif ro.coeff_im != 0:
            slot[1].append(value / ro.coeff_im)

    chi = np.zeros((d2, d2), dtype=complex)
    chi[np.diag_indices(d2)] = diag
    for a in range(d2):
        for b in range(a + 1, d2):
            if (a, b) not in estimates:
                raise ValueError("plan does not determine entry (%s, %s)"
                                 % (basis.label(a), basis.label(b)))
            re_list, im_list = estimates[(a, b)]
            if not re_list or not im_list:
                raise ValueError("entry (%s, %s) lacks a real or imaginary "
                                 "readout" % (basis.label(a), basis.label(b)))
            if exact:
                for vals in (re_list, im_list):
                    if max(vals) - min(vals) > policy.readout_consistency:
                        raise ValueError(
                            "inconsistent redundant readouts for entry "
                            "(%s, %s): spread %g"
                            % (basis.label(a), basis.label(b),
                               max(vals) - min(vals)))
            entry = complex(np.mean(re_list), np.mean(im_list))
            chi[a, b] = entry
            chi[b, a] = entry.conjugate()
    return ProcessMatrix(chi, basis)


def recover(state: np.ndarray, code: StabilizerCode, syndrome) -> np.ndarray:
    """Undo the error identified by a syndrome.

    Applies the table's error operator (Hermitian, hence its own
    inverse) to a state vector or a density matrix. A collapsed state
    F_x |Psi_L> returns to |Psi_L> up to global phase, also when the
    collapse followed a planner rotation, since rotations map
    correctable states to correctable states.
    """
    syn = tuple(int(b) for b in syndrome)
    if syn not in code.syndrome_index:
        raise ValueError("syndrome %s not in table" % (syn,))
    f = to_matrix(code.error_basis.elements[code.syndrome_index[syn]])
    state = np.asarray(state, dtype=complex)
    if state.ndim == 1:
        return f @ state
    if state.ndim == 2:
        return f @ state @ f.conj().T
    raise ValueError("expected a state vector or a density matrix")


def plan_to_json(code: StabilizerCode, configs) -> dict:
    """Schema: ordered descriptors {"kind", "a", "b", "theta"}."""
    basis = code.error_basis
    out = []
    for cfg in configs:
        if cfg.kind == "bare":
            out.append({"kind": "bare"})
            continue
        entry = {"kind": cfg.kind, "a": basis.label(cfg.a), "b": basis.label(cfg.b)}
        if cfg.kind == "toggled":
            entry["theta"] = {basis.label(m): ("+" if s > 0 else _MINUS)
                              for m, s in enumerate(cfg.theta_signs)}
        out.append(entry)
    return {"configurations": out}


def plan_from_json(code: StabilizerCode, doc: dict,
                   policy: NumericPolicy = DEFAULT_POLICY):
    """Rebuild (configurations, readouts) from the JSON descriptors."""
    basis = code.error_basis
    configs = []
    for entry in doc["configurations"]:
        kind = entry["kind"]
        index = len(configs)
        if kind == "bare":
            configs.append(Configuration(index=index, kind="bare"))
            continue
        a = basis.index_of_label(entry["a"])
        b = basis.index_of_label(entry["b"])
        u = rotation_unitary(code, a, b, policy)
        if kind == "rotated":
            configs.append(Configuration(index=index, kind="rotated",
                                         a=a, b=b, unitary=u))
            continue
        if kind != "toggled":
            raise ValueError("unknown configuration kind %r" % kind)
        signs = [0] * code.d2
        for label, sign in entry["theta"].items():
            if sign not in ("+", "-", _MINUS):
                raise ValueError("bad theta sign %r" % sign)
            signs[basis.index_of_label(label)] = 1 if sign == "+" else -1
        if any(s == 0 for s in signs):
            raise ValueError("theta map does not cover the error basis")
        toggled = build_toggle(code, signs, policy)
        configs.append(Configuration(index=index, kind="toggled", a=a, b=b,
                                     theta_signs=tuple(signs),
                                     unitary=u @ toggled))
    return configs, derive_readouts(code, configs)
