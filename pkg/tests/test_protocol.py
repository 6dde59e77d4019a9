"""Measurement configurations, readout algebra, and reconstruction."""

import numpy as np
import pytest

import syntomo as st
from syntomo.channels import ProcessMatrix


def exact_records(code, channel, beta=(1.0, 0.0)):
    configs, readouts = st.plan_configurations(code)
    records = [st.xi_simulated(code, beta, channel, cfg) for cfg in configs]
    return configs, readouts, records


def random_hermitian_chi(basis, rng):
    d2 = basis.size
    m = rng.normal(size=(d2, d2)) + 1j * rng.normal(size=(d2, d2))
    return ProcessMatrix((m + m.conj().T) / 2, basis)


class TestEncode:
    def test_basis_amplitudes(self, code3):
        np.testing.assert_allclose(st.encode(code3, (1.0, 0.0)),
                                   code3.logical_basis[0], atol=1e-15)
        np.testing.assert_allclose(st.encode(code3, (0.0, 1.0)),
                                   code3.logical_basis[1], atol=1e-15)

    def test_superposition_is_stabilized(self, code3):
        state = st.encode(code3, np.array([1.0, 1.0]) / np.sqrt(2))
        for gen in code3.generators:
            np.testing.assert_allclose(st.to_matrix(gen) @ state, state,
                                       atol=1e-12)

    def test_bad_amplitudes(self, code3):
        with pytest.raises(ValueError):
            st.encode(code3, (1.0, 0.0, 0.0))
        with pytest.raises(ValueError):
            st.encode(code3, (0.0, 0.0))


class TestPauliFactors:
    def test_xy_pair_through_z(self, code3):
        basis = code3.error_basis
        g_a, a_idx, g_b, b_idx, same = st.pauli_factors(
            code3, basis.index_of_label("X"), basis.index_of_label("Y"),
            basis.index_of_label("Z"))
        assert g_a.value == -1j and basis.label(a_idx) == "Y"
        assert g_b.value == 1j and basis.label(b_idx) == "X"
        assert same

    def test_identity_pair(self, code3):
        basis = code3.error_basis
        g_a, a_idx, g_b, b_idx, same = st.pauli_factors(
            code3, 0, basis.index_of_label("Y"), 0)
        assert g_a.value == 1 and basis.label(a_idx) == "I"
        assert g_b.value == 1 and basis.label(b_idx) == "Y"
        assert same

    def test_factors_multiply_back(self, code5):
        # F_a F_x = g_A F_A must hold as matrices for every triple
        basis = code5.error_basis
        rng = np.random.default_rng(9)
        mats = [st.to_matrix(e) for e in basis.restricted]
        for _ in range(30):
            a, b, x = rng.integers(0, basis.size, size=3)
            g_a, a_idx, g_b, b_idx, _ = st.pauli_factors(code5, a, b, x)
            np.testing.assert_allclose(mats[a] @ mats[x],
                                       g_a.value * mats[a_idx], atol=1e-14)
            np.testing.assert_allclose(mats[b] @ mats[x],
                                       g_b.value * mats[b_idx], atol=1e-14)


class TestRotationUnitary:
    def test_commuting_pair_form(self, code3):
        basis = code3.error_basis
        z = basis.index_of_label("Z")
        u = st.rotation_unitary(code3, 0, z)
        eye = np.eye(8, dtype=complex)
        f_z = st.to_matrix(basis.elements[z])
        np.testing.assert_allclose(u, (eye + 1j * f_z) / np.sqrt(2),
                                   atol=1e-12)

    def test_anticommuting_pair_form(self, code3):
        basis = code3.error_basis
        x, y = basis.index_of_label("X"), basis.index_of_label("Y")
        u = st.rotation_unitary(code3, x, y)
        f_x = st.to_matrix(basis.elements[x])
        f_y = st.to_matrix(basis.elements[y])
        np.testing.assert_allclose(u, (f_x + f_y) / np.sqrt(2), atol=1e-12)

    def test_always_unitary(self, code5):
        rng = np.random.default_rng(3)
        eye = np.eye(32)
        for _ in range(10):
            a, b = rng.integers(0, 16, size=2)
            if a == b:
                continue
            u = st.rotation_unitary(code5, int(a), int(b))
            np.testing.assert_allclose(u @ u.conj().T, eye, atol=1e-12)


class TestToggle:
    def test_quarter_turn_phases(self, code3):
        # signs in basis order I, Z, X, Y put gamma = 1+i on the I and Y
        # spaces and its conjugate on Z and X
        s = st.build_toggle(code3, [1, -1, -1, 1])
        gamma = (1 + 1j) / np.sqrt(2)
        for label, phase in (("I", gamma), ("Z", gamma.conjugate()),
                             ("X", gamma.conjugate()), ("Y", gamma)):
            idx = code3.error_basis.index_of_label(label)
            proj = st.syndrome_projector(code3, st.syndrome_of(code3, idx))
            np.testing.assert_allclose(s @ proj, phase * proj, atol=1e-12)

    def test_unitary(self, code3):
        s = st.build_toggle(code3, [1, 1, -1, -1])
        np.testing.assert_allclose(s @ s.conj().T, np.eye(8), atol=1e-12)

    def test_balanced_signs_required(self, code3):
        with pytest.raises(ValueError):
            st.build_toggle(code3, [1, 1, 1, 1])
        with pytest.raises(ValueError):
            st.build_toggle(code3, [1, 1, 1, -1])

    def test_sign_values_checked(self, code3):
        with pytest.raises(ValueError):
            st.build_toggle(code3, [1, 0, -1, 1])
        with pytest.raises(ValueError):
            st.build_toggle(code3, [1, -1])


class TestPredictedReadout:
    def test_bare_reads_diagonal(self, code3, rng):
        chi = random_hermitian_chi(code3.error_basis, rng)
        cfg = st.plan_configurations(code3)[0][0]
        for x in range(4):
            assert abs(st.xi_predicted(chi, cfg, x)
                       - chi.entries[x, x].real) < 1e-12

    def test_xy_rotation_at_z_syndrome(self, code3, rng):
        basis = code3.error_basis
        x, y, z = (basis.index_of_label(l) for l in "XYZ")
        cfg = st.Configuration(index=0, kind="rotated", a=x, b=y,
                               theta_signs=None,
                               unitary=st.rotation_unitary(code3, x, y))
        chi = random_hermitian_chi(basis, rng)
        e = chi.entries
        expected = 0.5 * (e[x, x].real + e[y, y].real) - e[x, y].real
        assert abs(st.xi_predicted(chi, cfg, z) - expected) < 1e-12

    def test_xy_rotation_amplitude_damping_value(self, code3, ad036):
        basis = code3.error_basis
        x, y, z = (basis.index_of_label(l) for l in "XYZ")
        cfg = st.Configuration(index=0, kind="rotated", a=x, b=y,
                               theta_signs=None,
                               unitary=st.rotation_unitary(code3, x, y))
        chi = st.chi_from_kraus(ad036, basis)
        assert abs(st.xi_predicted(chi, cfg, z) - 0.09) < 1e-12

    def test_toggle_acts_by_conjugation(self, code3, rng):
        # prediction for a toggled configuration equals the plain rotated
        # prediction on D chi D+ with D the toggle phase diagonal
        chi = random_hermitian_chi(code3.error_basis, rng)
        configs, _ = st.plan_configurations(code3)
        for rot, tog in zip(configs[1::2], configs[2::2]):
            assert rot.kind == "rotated" and tog.kind == "toggled"
            phases = np.exp(1j * np.pi / 4 * np.array(tog.theta_signs))
            conj = ProcessMatrix(np.diag(phases) @ chi.entries
                                 @ np.diag(phases).conj(), code3.error_basis)
            for x in range(4):
                assert abs(st.xi_predicted(chi, tog, x)
                           - st.xi_predicted(conj, rot, x)) < 1e-12


class TestSimulatedReadout:
    def test_identity_channel_all_weight_on_zero_syndrome(self, code3):
        cfg = st.plan_configurations(code3)[0][0]
        rec = st.xi_simulated(code3, (1.0, 0.0),
                              st.builtin_channel("identity", [1]), cfg)
        assert rec.exact
        assert abs(rec.value((0, 0)) - 1.0) < 1e-12

    def test_amplitude_damping_bare_distribution(self, code3, ad036):
        cfg = st.plan_configurations(code3)[0][0]
        rec = st.xi_simulated(code3, (1.0, 0.0), ad036, cfg)
        expected = {"I": 0.81, "Z": 0.01, "X": 0.09, "Y": 0.09}
        for label, prob in expected.items():
            idx = code3.error_basis.index_of_label(label)
            assert abs(rec.value(st.syndrome_of(code3, idx)) - prob) < 1e-12

    def test_correlated_flip_bare_distribution(self, code5):
        for p in (0.1, 0.3):
            ch = st.builtin_channel("correlated-flip", [p])
            cfg = st.plan_configurations(code5)[0][0]
            rec = st.xi_simulated(code5, (1.0, 0.0), ch, cfg)
            zero = rec.value((0, 0, 0, 0))
            xx = code5.error_basis.index_of_label("XX")
            flip = rec.value(st.syndrome_of(code5, xx))
            assert abs(zero - (1 - p)) < 1e-12
            assert abs(flip - p) < 1e-12
            assert abs(sum(rec.distribution.values()) - 1.0) < 1e-12

    def test_agrees_with_prediction(self, code3, ad036):
        chi = st.chi_from_kraus(ad036, code3.error_basis)
        configs, _ = st.plan_configurations(code3)
        beta = np.array([0.8, 0.6j])
        for cfg in configs:
            rec = st.xi_simulated(code3, beta, ad036, cfg)
            for x in range(4):
                syn = code3.syndrome_table[x]
                assert abs(rec.value(syn)
                           - st.xi_predicted(chi, cfg, x)) < 1e-10

    def test_support_mismatch(self, code3):
        cfg = st.plan_configurations(code3)[0][0]
        with pytest.raises(ValueError):
            st.xi_simulated(code3, (1.0, 0.0),
                            st.builtin_channel("correlated-flip", [0.2]), cfg)

    def test_smaller_channel_acts_on_leading_noisy_qubit(self, code5, ad036):
        cfg = st.plan_configurations(code5)[0][0]
        narrow = st.xi_simulated(code5, (1.0, 0.0), ad036, cfg)
        wide = st.xi_simulated(code5, (1.0, 0.0),
                               st.extend_channel(ad036, 2), cfg)
        for syn, prob in wide.distribution.items():
            assert abs(narrow.value(syn) - prob) < 1e-12

    def test_missing_syndrome_reads_zero(self, code3):
        rec = st.MeasurementRecord(config_index=0,
                                   distribution={(0, 0): 1.0}, shots=None)
        assert rec.value((1, 1)) == 0.0


class TestPlanner:
    def test_configuration_counts(self, code3, code5):
        assert len(st.plan_configurations(code3)[0]) == 7
        assert len(st.plan_configurations(code5)[0]) == 31

    def test_structure(self, code5):
        configs, _ = st.plan_configurations(code5)
        assert configs[0].kind == "bare"
        rotated = [c for c in configs if c.kind == "rotated"]
        toggled = [c for c in configs if c.kind == "toggled"]
        assert len(rotated) == len(toggled) == 15
        # each non-identity element appears once as the pair partner
        assert sorted(c.b for c in rotated) == list(range(1, 16))
        assert [c.index for c in configs] == list(range(31))

    def test_toggle_signs_two_color_the_pairing(self, code5):
        configs, _ = st.plan_configurations(code5)
        basis = code5.error_basis
        for cfg in configs:
            if cfg.kind != "toggled":
                continue
            signs = cfg.theta_signs
            assert sum(signs) == 0
            for x in range(basis.size):
                _, partner = basis.mul(cfg.b, x)
                assert signs[x] == -signs[partner]

    def test_readout_coefficients(self, code3):
        configs, readouts = st.plan_configurations(code3)
        assert len(readouts) == len(configs) * 4
        for ro in readouts:
            assert ro.a_index <= ro.b_index
            if ro.a_index == ro.b_index:
                assert (ro.coeff_re, ro.coeff_im) == (0, 0)
            else:
                assert (ro.coeff_re, ro.coeff_im) in ((1, 0), (-1, 0),
                                                      (0, 1), (0, -1))

    def test_every_entry_has_both_parts(self, code5):
        configs, readouts = st.plan_configurations(code5)
        seen = {}
        for ro in readouts:
            if ro.a_index == ro.b_index:
                continue
            kind = "re" if ro.coeff_re else "im"
            seen.setdefault((ro.a_index, ro.b_index), set()).add(kind)
        for a in range(16):
            for b in range(a + 1, 16):
                assert seen[(a, b)] == {"re", "im"}

    def test_plan_json_round_trip(self, code3):
        configs, readouts = st.plan_configurations(code3)
        doc = st.plan_to_json(code3, configs)
        again_cfgs, again_ros = st.plan_from_json(code3, doc)
        assert len(again_cfgs) == len(configs)
        for c, d in zip(configs, again_cfgs):
            assert (c.kind, c.a, c.b, c.theta_signs) == \
                (d.kind, d.a, d.b, d.theta_signs)
            if c.unitary is None:
                assert d.unitary is None
            else:
                np.testing.assert_allclose(c.unitary, d.unitary, atol=1e-12)
        assert again_ros == readouts

    def test_plan_json_accepts_ascii_minus(self, code3):
        configs, _ = st.plan_configurations(code3)
        doc = st.plan_to_json(code3, configs)
        for cfg in doc["configurations"]:
            if cfg.get("theta"):
                cfg["theta"] = {k: v.replace("−", "-")
                                for k, v in cfg["theta"].items()}
        again, _ = st.plan_from_json(code3, doc)
        assert len(again) == len(configs)


class TestReconstruct:
    def test_amplitude_damping_exact(self, code3, ad036):
        configs, readouts, records = exact_records(code3, ad036)
        chi = st.reconstruct(records, readouts, code3.error_basis)
        oracle = st.chi_from_kraus(ad036, code3.error_basis)
        assert np.abs(chi.entries - oracle.entries).max() < 1e-10
        basis = code3.error_basis
        assert abs(chi.entries[0, basis.index_of_label("Z")] - 0.09) < 1e-10
        assert abs(chi.entries[basis.index_of_label("X"),
                               basis.index_of_label("Y")] + 0.09j) < 1e-10

    def test_identity_channel(self, code3):
        ch = st.builtin_channel("identity", [1])
        configs, readouts, records = exact_records(code3, ch)
        chi = st.reconstruct(records, readouts, code3.error_basis).entries
        expected = np.zeros((4, 4))
        expected[0, 0] = 1.0
        np.testing.assert_allclose(chi, expected, atol=1e-10)

    def test_random_two_qubit_channel(self, code5):
        ch = st.builtin_channel("random-cp", [42, 2, 4])
        configs, readouts, records = exact_records(code5, ch)
        chi = st.reconstruct(records, readouts, code5.error_basis)
        oracle = st.chi_from_kraus(ch, code5.error_basis)
        assert np.linalg.norm(chi.entries - oracle.entries, "fro") < 1e-8

    def test_missing_record(self, code3, ad036):
        configs, readouts, records = exact_records(code3, ad036)
        with pytest.raises(ValueError, match="missing records"):
            st.reconstruct(records[:-1], readouts, code3.error_basis)

    def test_inconsistent_exact_readouts(self, code3, ad036):
        configs, readouts, records = exact_records(code3, ad036)
        rec = records[1]
        broken = dict(rec.distribution)
        syn = code3.syndrome_table[2]
        broken[syn] = broken.get(syn, 0.0) + 1e-5
        records[1] = st.MeasurementRecord(config_index=rec.config_index,
                                          distribution=broken, shots=None)
        with pytest.raises(ValueError, match="inconsistent redundant"):
            st.reconstruct(records, readouts, code3.error_basis)

    def test_sampled_records_average_instead(self, code3, ad036):
        # the same perturbation is tolerated once records carry counts
        configs, readouts, records = exact_records(code3, ad036)
        sampler = st.SamplingPolicy(shots_per_configuration=200000, seed=5)
        counts = [st.sample_record(r, sampler) for r in records]
        chi = st.reconstruct(counts, readouts, code3.error_basis)
        oracle = st.chi_from_kraus(ad036, code3.error_basis)
        assert np.abs(chi.entries - oracle.entries).max() < 0.02


class TestRecovery:
    def test_every_correctable_error(self, code3):
        beta = np.array([0.6, 0.8j])
        psi = st.encode(code3, beta)
        for m in range(code3.d2):
            err = st.to_matrix(code3.error_basis.elements[m])
            corrupted = err @ psi
            fixed = st.recover(corrupted, code3, st.syndrome_of(code3, m))
            assert abs(abs(np.vdot(fixed, psi)) - 1.0) < 1e-10

    def test_zero_syndrome_leaves_state(self, code3):
        psi = st.encode(code3, (1.0, 0.0))
        np.testing.assert_allclose(st.recover(psi, code3, (0, 0)), psi,
                                   atol=1e-12)

    def test_density_matrix_branch(self, code3):
        psi = st.encode(code3, np.array([1.0, 1.0]) / np.sqrt(2))
        m = code3.error_basis.index_of_label("Y")
        err = st.to_matrix(code3.error_basis.elements[m])
        rho = st.outer(err @ psi)
        fixed = st.recover(rho, code3, st.syndrome_of(code3, m))
        np.testing.assert_allclose(fixed, st.outer(psi), atol=1e-10)

    def test_unknown_syndrome(self, code3):
        psi = st.encode(code3, (1.0, 0.0))
        with pytest.raises(ValueError, match="not in table"):
            st.recover(psi, code3, (3, 1))


def test_logical_state_does_not_bias_syndromes(code3, ad036):
    configs, _ = st.plan_configurations(code3)
    rng = np.random.default_rng(12)
    reference = None
    for _ in range(3):
        beta = rng.normal(size=2) + 1j * rng.normal(size=2)
        beta /= np.linalg.norm(beta)
        dists = [st.xi_simulated(code3, beta, ad036, cfg).distribution
                 for cfg in configs]
        if reference is None:
            reference = dists
            continue
        for ref, got in zip(reference, dists):
            for syn in ref:
                assert abs(ref[syn] - got.get(syn, 0.0)) < 1e-10
