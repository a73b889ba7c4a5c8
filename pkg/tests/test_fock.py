import math

import numpy as np
import pytest

from qepi import fock
from qepi.channels import MixingParams
from qepi.symplectic import DomainError, g

G_HALF = 0.9547712524422192

BS_DIM = 35
AMP_DIM = 40


def test_vacuum_and_fock_states():
    vac = fock.vacuum_state(10)
    assert fock.vn_entropy(vac) == pytest.approx(0.0, abs=1e-12)
    assert np.linalg.matrix_rank(vac.rho) == 1
    two = fock.fock_state(2, 10)
    assert fock.vn_entropy(two) == pytest.approx(0.0, abs=1e-12)
    n_op = np.diag(np.arange(10.0)).astype(complex)
    assert fock.expectation(two, n_op) == pytest.approx(2.0, abs=1e-12)
    with pytest.raises(fock.CutoffError):
        fock.fock_state(10, 10)


def test_thermal_state_entropy():
    thermal = fock.thermal_state(1.0, 60)
    assert fock.vn_entropy(thermal) == pytest.approx(2.0 * math.log(2.0), abs=1e-8)
    assert fock.trace_leak(thermal) < 1e-10
    with pytest.raises(fock.CutoffError):
        fock.thermal_state(2.0, 8)


def test_coherent_state():
    alpha = 1.2 + 0.4j
    coh = fock.coherent_state(alpha, 40)
    assert fock.vn_entropy(coh) == pytest.approx(0.0, abs=1e-10)
    a = fock.ladder(40)
    q_op = (a + a.conj().T) / math.sqrt(2.0)
    assert fock.expectation(coh, q_op) == pytest.approx(
        math.sqrt(2.0) * alpha.real, abs=1e-9)


def test_squeezed_thermal_state():
    st = fock.squeezed_thermal_state(0.4, 0.5, 50)
    # squeezing is unitary, entropy stays g(0.5)
    assert fock.vn_entropy(st) == pytest.approx(g(0.5), abs=1e-8)


def test_two_mode_mix_vacuum_fixed_point():
    vac = fock.vacuum_state(BS_DIM)
    out = fock.two_mode_mix(vac, vac, MixingParams.beam_splitter(0.7))
    assert abs(out.rho[0, 0] - 1.0) < 1e-10


def test_two_mode_mix_matches_gaussian_closed_form():
    thermal = fock.thermal_state(1.0, BS_DIM)
    vac = fock.vacuum_state(BS_DIM)
    out = fock.two_mode_mix(thermal, vac, MixingParams.beam_splitter(0.5))
    assert fock.vn_entropy(out) == pytest.approx(G_HALF, abs=1e-6)


def test_two_mode_mix_amplifier_matches_closed_form():
    vac = fock.vacuum_state(AMP_DIM)
    out = fock.two_mode_mix(vac, vac, MixingParams.amplifier(2.0))
    assert fock.vn_entropy(out) == pytest.approx(2.0 * math.log(2.0), abs=1e-6)


@pytest.mark.parametrize("lam", [0.3, 0.5, 0.9])
def test_oracle_gaussian_agreement_beam_splitter(lam):
    thermal = fock.thermal_state(0.8, BS_DIM)
    coh = fock.coherent_state(0.7, BS_DIM)
    out = fock.two_mode_mix(thermal, coh, MixingParams.beam_splitter(lam))
    # Gaussian prediction: nu_C = lam (2*0.8+1) + (1-lam) * 1
    nu_c = lam * 2.6 + (1.0 - lam)
    assert fock.vn_entropy(out) == pytest.approx(g((nu_c - 1.0) / 2.0), abs=1e-5)


@pytest.mark.parametrize("kappa", [1.5, 2.0])
def test_oracle_gaussian_agreement_amplifier(kappa):
    dim = 55  # kappa = 2 more than doubles the energy of thermal(0.5)
    thermal = fock.thermal_state(0.5, dim)
    vac = fock.vacuum_state(dim)
    out = fock.two_mode_mix(thermal, vac, MixingParams.amplifier(kappa))
    nu_c = kappa * 2.0 + (kappa - 1.0)
    assert fock.vn_entropy(out) == pytest.approx(g((nu_c - 1.0) / 2.0), abs=1e-5)


def test_two_mode_mix_cutoff_gate():
    vac = fock.vacuum_state(12)
    with pytest.raises(fock.CutoffError) as err:
        fock.two_mode_mix(vac, vac, MixingParams.amplifier(2.0),
                          leak_tol=1e-10)
    assert err.value.leak > 1e-10


def test_vn_entropy_maximally_mixed():
    rho = fock.FockDensityMatrix(1, 4, np.eye(4, dtype=complex) / 4.0)
    assert fock.vn_entropy(rho) == pytest.approx(math.log(4.0), abs=1e-12)


def test_relative_entropy_cases():
    thermal = fock.thermal_state(1.0, 30)
    assert fock.relative_entropy(thermal, thermal) == pytest.approx(0.0, abs=1e-10)
    theta = 0.3
    displaced = fock.displace_fock(thermal, "q", theta)
    # analytic: |alpha|^2 ln((N+1)/N) with |alpha|^2 = theta^2 / 2
    expected = (theta ** 2 / 2.0) * math.log(2.0)
    assert fock.relative_entropy(thermal, displaced) == pytest.approx(
        expected, abs=1e-6)
    assert fock.relative_entropy(fock.fock_state(0, 10),
                                 fock.fock_state(1, 10)) == math.inf
    with pytest.raises(DomainError):
        fock.relative_entropy(thermal, fock.fock_state(0, 10))


def test_relative_entropy_nonnegative_random():
    rng = np.random.default_rng(4)
    for _ in range(10):
        m = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        rho = m @ m.conj().T
        rho /= np.trace(rho).real
        m = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        sig = m @ m.conj().T
        sig /= np.trace(sig).real
        val = fock.relative_entropy(fock.FockDensityMatrix(1, 8, rho),
                                    fock.FockDensityMatrix(1, 8, sig))
        assert val >= -1e-10


def test_liouville_evolve_identity_and_gaussian_agreement():
    vac = fock.vacuum_state(60)
    assert fock.liouville_evolve(vac, 0.0) is vac
    evolved = fock.liouville_evolve(vac, 2.0)
    assert fock.vn_entropy(evolved) == pytest.approx(2.0 * math.log(2.0), abs=1e-5)
    assert abs(np.trace(evolved.rho).real - 1.0) < 1e-8


def test_liouville_evolve_semigroup():
    thermal = fock.thermal_state(0.5, 40)
    one = fock.liouville_evolve(fock.liouville_evolve(thermal, 0.4), 0.6)
    direct = fock.liouville_evolve(thermal, 1.0)
    assert fock.trace_distance(one, direct) < 1e-6


def test_liouville_evolve_fock_input():
    one = fock.fock_state(1, 40)
    evolved = fock.liouville_evolve(one, 0.5)
    assert fock.vn_entropy(evolved) > 0.0
    assert abs(np.trace(evolved.rho).real - 1.0) < 1e-8


def test_liouville_accuracy_gate():
    vac = fock.vacuum_state(30)
    with pytest.raises(fock.AccuracyError):
        fock.liouville_evolve(vac, 3.0, steps=4)


def test_displace_fock_properties():
    vac = fock.vacuum_state(40)
    same = fock.displace_fock(vac, "q", 0.0)
    assert np.allclose(same.rho, vac.rho, atol=1e-12)
    theta = 0.8
    moved = fock.displace_fock(vac, "q", theta)
    q_op, _ = fock.quadratures(40)
    assert fock.expectation(moved, q_op) == pytest.approx(theta, abs=1e-8)
    assert fock.vn_entropy(moved) == pytest.approx(0.0, abs=1e-10)
    thermal = fock.thermal_state(1.0, 40)
    shifted = fock.displace_fock(thermal, "p", 0.5)
    assert fock.vn_entropy(shifted) == pytest.approx(fock.vn_entropy(thermal),
                                                     abs=1e-10)


def test_trace_leak():
    assert fock.trace_leak(fock.vacuum_state(10)) == pytest.approx(0.0, abs=1e-14)
    assert fock.trace_leak(fock.thermal_state(1.0, 60)) < 1e-10
    top = fock.fock_state(9, 10)
    assert fock.trace_leak(top) == pytest.approx(1.0, abs=1e-12)


def test_recommended_cutoff():
    assert fock.recommended_cutoff(1.0) >= 30
    assert fock.recommended_cutoff(1.0, gain=2.0) == 2 * fock.recommended_cutoff(1.0)


def test_binary_roundtrip(tmp_path):
    thermal = fock.thermal_state(0.7, 25)
    path = tmp_path / "rho.bin"
    fock.save_density_matrix(path, thermal)
    back = fock.load_density_matrix(path)
    assert back.modes == 1 and back.dim == 25
    assert np.allclose(back.rho, thermal.rho)
    raw = path.read_bytes()
    assert raw[:8] == b"FOCKRHO1"
    bad = tmp_path / "bad.bin"
    bad.write_bytes(b"NOTAMAGI" + raw[8:])
    with pytest.raises(ValueError):
        fock.load_density_matrix(bad)


def test_density_matrix_validation():
    with pytest.raises(fock.NumericError):
        fock.FockDensityMatrix(1, 4, np.diag([0.5, 0.5, 0.5, -0.5]).astype(complex))
    with pytest.raises(fock.NumericError):
        m = np.zeros((4, 4), dtype=complex)
        m[0, 1] = 1.0
        m[0, 0] = 1.0
        fock.FockDensityMatrix(1, 4, m)
    with pytest.raises(DomainError):
        fock.FockDensityMatrix(3, 4, np.eye(64, dtype=complex) / 64.0)
