"""Truncated Fock-space oracle: exact dense density-matrix simulation.

Everything the Gaussian modules compute in closed form can be cross-checked
here by brute force on 1 or 2 modes with a finite Fock cutoff, and
non-Gaussian inputs (Fock states) become available.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg as sla
from scipy.special import gammaln, xlogy

from .channels import AMPLIFIER, BEAM_SPLITTER, MixingParams
from .symplectic import DomainError

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-8
LEAK_TOL = 1e-8
EIGENVALUE_FLOOR = -1e-10
SUPPORT_TOL = 1e-12


class CutoffError(RuntimeError):
    """The Fock cutoff is too small for the requested computation."""

    def __init__(self, message: str, leak: float = float("nan")):
        super().__init__(message)
        self.leak = leak


class AccuracyError(RuntimeError):
    """A numerical routine failed its embedded accuracy estimate."""


class NumericError(RuntimeError):
    """Unexpected numerical pathology (e.g. significant negative eigenvalues)."""


@dataclass(frozen=True)
class FockDensityMatrix:
    modes: int
    dim: int            # Fock dimension per mode
    rho: np.ndarray     # dim**modes square complex Hermitian

    def __init__(self, modes: int, dim: int, rho, validate: bool = True):
        rho = np.array(rho, dtype=complex)
        if modes not in (1, 2):
            raise DomainError(f"oracle supports 1 or 2 modes, got {modes}")
        size = dim ** modes
        if rho.shape != (size, size):
            raise DomainError(f"expected {size}x{size} matrix, got {rho.shape}")
        if validate:
            herm = np.max(np.abs(rho - rho.conj().T))
            if herm > HERMITICITY_TOL:
                raise NumericError(f"non-Hermitian density matrix: {herm:.3e}")
            rho = 0.5 * (rho + rho.conj().T)
            tr = float(np.trace(rho).real)
            if abs(tr - 1.0) > TRACE_TOL:
                raise NumericError(f"trace {tr} deviates from 1 beyond {TRACE_TOL}")
            evs = np.linalg.eigvalsh(rho)
            if evs[0] < EIGENVALUE_FLOOR:
                raise NumericError(f"negative eigenvalue {evs[0]:.3e}")
        rho.flags.writeable = False
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "rho", rho)


def ladder(dim: int) -> np.ndarray:
    """Annihilation operator on a dim-dimensional Fock space."""
    return np.diag(np.sqrt(np.arange(1, dim)), 1).astype(complex)


def quadratures(dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Q = (a + a^dag)/sqrt(2), P = i(a^dag - a)/sqrt(2)."""
    a = ladder(dim)
    q = (a + a.conj().T) / math.sqrt(2.0)
    p = 1j * (a.conj().T - a) / math.sqrt(2.0)
    return q, p


def _mode_op(op: np.ndarray, mode: int, modes: int, dim: int) -> np.ndarray:
    if modes == 1:
        return op
    eye = np.eye(dim, dtype=complex)
    return np.kron(op, eye) if mode == 0 else np.kron(eye, op)


# ---------------------------------------------------------------------------
# state constructors

def vacuum_state(dim: int) -> FockDensityMatrix:
    rho = np.zeros((dim, dim), dtype=complex)
    rho[0, 0] = 1.0
    return FockDensityMatrix(1, dim, rho, validate=False)


def fock_state(k: int, dim: int) -> FockDensityMatrix:
    if not (0 <= k < dim):
        raise CutoffError(f"Fock level {k} does not fit below cutoff {dim}")
    rho = np.zeros((dim, dim), dtype=complex)
    rho[k, k] = 1.0
    return FockDensityMatrix(1, dim, rho, validate=False)


def thermal_state(mean_photons: float, dim: int) -> FockDensityMatrix:
    if mean_photons < 0:
        raise DomainError("mean photon number must be >= 0")
    if mean_photons == 0:
        return vacuum_state(dim)
    n = np.arange(dim)
    logp = n * math.log(mean_photons) - (n + 1) * math.log(mean_photons + 1.0)
    probs = np.exp(logp)
    tail = 1.0 - probs.sum()
    if tail > LEAK_TOL:
        raise CutoffError(f"thermal({mean_photons}) tail {tail:.3e} exceeds "
                          f"{LEAK_TOL} at cutoff {dim}", leak=tail)
    return FockDensityMatrix(1, dim, np.diag(probs.astype(complex)), validate=False)


def coherent_state(alpha: complex, dim: int) -> FockDensityMatrix:
    n = np.arange(dim)
    log_amp = n * np.log(np.abs(alpha)) if alpha != 0 else np.where(n == 0, 0.0, -np.inf)
    amps = np.exp(-0.5 * abs(alpha) ** 2 + log_amp - 0.5 * gammaln(n + 1.0))
    if alpha != 0:
        amps = amps * np.exp(1j * n * np.angle(alpha))
    norm = float(np.vdot(amps, amps).real)
    if 1.0 - norm > LEAK_TOL:
        raise CutoffError(f"coherent({alpha}) tail {1-norm:.3e} exceeds "
                          f"{LEAK_TOL} at cutoff {dim}", leak=1.0 - norm)
    return FockDensityMatrix(1, dim, np.outer(amps, amps.conj()), validate=False)


def squeezed_thermal_state(r: float, mean_photons: float, dim: int) -> FockDensityMatrix:
    """Single-mode squeezer applied to a thermal state."""
    base = thermal_state(mean_photons, dim)
    a = ladder(dim)
    squeezer = sla.expm(0.5 * r * (a @ a - a.conj().T @ a.conj().T))
    rho = squeezer @ base.rho @ squeezer.conj().T
    rho /= np.trace(rho).real
    out = FockDensityMatrix(1, dim, rho, validate=True)
    leak = trace_leak(out)
    if leak > LEAK_TOL:
        raise CutoffError(f"squeezed thermal leak {leak:.3e} at cutoff {dim}", leak=leak)
    return out


# ---------------------------------------------------------------------------
# channels

@lru_cache(maxsize=16)
def _mixing_unitary(kind: str, lambda_a: float, dim: int) -> np.ndarray:
    """Two-mode mixing unitary on the dim^2 product space (cached, dense expm)."""
    a = ladder(dim)
    eye = np.eye(dim)
    op_a = np.kron(a, eye)
    op_b = np.kron(eye, a)
    if kind == BEAM_SPLITTER:
        theta = math.atan(math.sqrt((1.0 - lambda_a) / lambda_a))
        gen = theta * (op_a.conj().T @ op_b - op_a @ op_b.conj().T)
    else:
        r = math.atanh(math.sqrt((lambda_a - 1.0) / lambda_a))
        gen = r * (op_a.conj().T @ op_b.conj().T - op_a @ op_b)
    return sla.expm(gen.real)  # both generators are real matrices


def partial_trace(rho: np.ndarray, dim: int, keep: int) -> np.ndarray:
    r4 = rho.reshape(dim, dim, dim, dim)
    return np.einsum("ijkj->ik", r4) if keep == 0 else np.einsum("jijk->ik", r4)


def two_mode_mix(rho_a: FockDensityMatrix, rho_b: FockDensityMatrix,
                 p: MixingParams, leak_tol: float = LEAK_TOL) -> FockDensityMatrix:
    """Tr_B[U (rho_A x rho_B) U^dag] for the beam splitter / amplifier."""
    if rho_a.modes != 1 or rho_b.modes != 1 or rho_a.dim != rho_b.dim:
        raise DomainError("two_mode_mix needs two single-mode states of equal cutoff")
    dim = rho_a.dim
    if p.kind == BEAM_SPLITTER and p.lambda_A == 0.0:
        return rho_b
    u = _mixing_unitary(p.kind, p.lambda_A, dim)
    joint = u @ np.kron(rho_a.rho, rho_b.rho) @ u.T
    # Cutoff adequacy: population in the top Fock layer of either output mode.
    diag = np.diag(joint).real.reshape(dim, dim)
    top = float(diag[-1, :].sum() + diag[:, -1].sum() - diag[-1, -1])
    tr_def = abs(1.0 - float(np.trace(joint).real))
    leak = top + tr_def
    if leak > leak_tol:
        raise CutoffError(f"mixing leak {leak:.3e} exceeds {leak_tol} at cutoff {dim}",
                          leak=leak)
    out = partial_trace(joint, dim, keep=0)
    out /= np.trace(out).real
    return FockDensityMatrix(1, dim, out, validate=True)


def recommended_cutoff(mean_photons: float, gain: float = 1.0) -> int:
    """Cutoff heuristic keeping thermal/Poissonian tails below ~1e-10."""
    base = math.ceil(mean_photons + 10.0 * math.sqrt(mean_photons + 1.0) + 15.0)
    return math.ceil(base * gain)


# ---------------------------------------------------------------------------
# entropies

def _clean_spectrum(evs: np.ndarray, what: str) -> np.ndarray:
    if evs.min() < -1e-8:
        raise NumericError(f"{what}: eigenvalue {evs.min():.3e} below -1e-8")
    return np.maximum(evs, 0.0)


def vn_entropy(rho: FockDensityMatrix) -> float:
    """-Tr[rho ln rho] in nats."""
    evs = _clean_spectrum(np.linalg.eigvalsh(rho.rho), "vn_entropy")
    return float(-np.sum(xlogy(evs, evs)))


def relative_entropy(rho: FockDensityMatrix, sigma: FockDensityMatrix) -> float:
    """Tr[rho (ln rho - ln sigma)]; +inf outside sigma's support."""
    if rho.rho.shape != sigma.rho.shape:
        raise DomainError("shape mismatch in relative entropy")
    p, up = np.linalg.eigh(rho.rho)
    q, uq = np.linalg.eigh(sigma.rho)
    p = _clean_spectrum(p, "relative_entropy")
    q = _clean_spectrum(q, "relative_entropy")
    overlap = np.abs(up.conj().T @ uq) ** 2      # overlap[i, j] = |<p_i|q_j>|^2
    null = q < SUPPORT_TOL
    if null.any() and float(p @ overlap[:, null].sum(axis=1)) > SUPPORT_TOL:
        return float("inf")
    supp = ~null
    cross = float(p @ (overlap[:, supp] @ np.log(q[supp])))
    return float(np.sum(xlogy(p, p))) - cross


# ---------------------------------------------------------------------------
# additive-noise evolution and displacements

def _liouvillian(rho: np.ndarray, qs, ps) -> np.ndarray:
    out = np.zeros_like(rho)
    for op in (*qs, *ps):
        comm = op @ rho - rho @ op
        out -= 0.25 * (op @ comm - comm @ op)
    return out


def _rk4(rho: np.ndarray, t: float, steps: int, qs, ps) -> np.ndarray:
    h = t / steps
    for _ in range(steps):
        k1 = _liouvillian(rho, qs, ps)
        k2 = _liouvillian(rho + 0.5 * h * k1, qs, ps)
        k3 = _liouvillian(rho + 0.5 * h * k2, qs, ps)
        k4 = _liouvillian(rho + h * k3, qs, ps)
        rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return rho


def trace_distance(a: FockDensityMatrix, b: FockDensityMatrix) -> float:
    evs = np.linalg.eigvalsh(a.rho - b.rho)
    return 0.5 * float(np.sum(np.abs(evs)))


def liouville_evolve(rho: FockDensityMatrix, t: float, steps: int | None = None,
                     check: bool = True, accuracy_tol: float = 1e-7) -> FockDensityMatrix:
    """Evolve under the additive-noise semigroup, fixed-step 4th-order RK.

    The accuracy estimate compares against a run with half as many steps;
    an estimate above accuracy_tol raises AccuracyError.
    """
    if t < 0:
        raise DomainError("evolution time must be >= 0")
    if t == 0:
        return rho
    if steps is None:
        steps = max(100, math.ceil(200.0 * t))
    q1, p1 = quadratures(rho.dim)
    qs = [_mode_op(q1, m, rho.modes, rho.dim) for m in range(rho.modes)]
    ps = [_mode_op(p1, m, rho.modes, rho.dim) for m in range(rho.modes)]
    fine = _rk4(rho.rho.astype(complex), t, steps, qs, ps)
    if not np.all(np.isfinite(fine)):
        raise AccuracyError("integrator diverged; increase steps")
    out = FockDensityMatrix(rho.modes, rho.dim, fine, validate=False)
    if check:
        coarse = _rk4(rho.rho.astype(complex), t, max(1, steps // 2), qs, ps)
        est = trace_distance(out, FockDensityMatrix(rho.modes, rho.dim, coarse,
                                                    validate=False))
        if not math.isfinite(est) or est > accuracy_tol:
            raise AccuracyError(f"integrator error estimate {est:.3e} exceeds "
                                f"{accuracy_tol}; increase steps")
    return FockDensityMatrix(rho.modes, rho.dim, out.rho, validate=True)


def displace_fock(rho: FockDensityMatrix, direction: str, theta: float,
                  mode: int = 0) -> FockDensityMatrix:
    """Conjugate by the phase-space translation D_R(theta).

    direction "q" shifts <Q> by +theta (unitary exp(-i theta P)),
    direction "p" shifts <P> by +theta (unitary exp(+i theta Q)).
    """
    if direction not in ("q", "p"):
        raise DomainError(f"direction must be 'q' or 'p', got {direction!r}")
    q1, p1 = quadratures(rho.dim)
    gen = -1j * theta * p1 if direction == "q" else 1j * theta * q1
    u = _mode_op(sla.expm(gen), mode, rho.modes, rho.dim)
    out = u @ rho.rho @ u.conj().T
    fdm = FockDensityMatrix(rho.modes, rho.dim, out, validate=True)
    leak = trace_leak(fdm)
    if leak > LEAK_TOL:
        raise CutoffError(f"displacement leak {leak:.3e} at cutoff {rho.dim}", leak=leak)
    return fdm


def expectation(rho: FockDensityMatrix, op: np.ndarray, mode: int = 0) -> float:
    full = _mode_op(op, mode, rho.modes, rho.dim)
    return float(np.trace(full @ rho.rho).real)


def trace_leak(rho: FockDensityMatrix) -> float:
    """Trace deficit plus population of the highest Fock layer (cutoff gate)."""
    tr_def = abs(1.0 - float(np.trace(rho.rho).real))
    diag = np.diag(rho.rho).real
    if rho.modes == 1:
        top = float(diag[-1])
    else:
        d2 = diag.reshape(rho.dim, rho.dim)
        top = float(d2[-1, :].sum() + d2[:, -1].sum() - d2[-1, -1])
    return tr_def + max(top, 0.0)


# ---------------------------------------------------------------------------
# binary dump (debugging aid)

_MAGIC = b"FOCKRHO1"


def save_density_matrix(path, rho: FockDensityMatrix) -> None:
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<II", rho.modes, rho.dim))
        fh.write(np.ascontiguousarray(rho.rho, dtype="<c16").tobytes())


def load_density_matrix(path) -> FockDensityMatrix:
    with open(path, "rb") as fh:
        magic = fh.read(8)
        if magic != _MAGIC:
            raise ValueError(f"bad magic {magic!r}")
        modes, dim = struct.unpack("<II", fh.read(8))
        size = dim ** modes
        data = np.frombuffer(fh.read(), dtype="<c16").reshape(size, size)
    return FockDensityMatrix(modes, dim, data.astype(complex), validate=True)
