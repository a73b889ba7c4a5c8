"""Gaussian channels: beam splitter, amplifier, additive noise, displacements.

Covariance/displacement action:
    beam splitter:  gamma_C = lam_A gamma_A + lam_B gamma_B,
                    d_C = sqrt(lam_A) d_A + sqrt(lam_B) d_B,
                    with lam_A = lambda, lam_B = 1 - lambda;
    amplifier:      gamma_C = lam_A gamma_A + lam_B T gamma_B T,
                    d_C = sqrt(lam_A) d_A + sqrt(lam_B) T d_B,
                    with lam_A = kappa, lam_B = kappa - 1,
where T flips the sign of every P quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .symplectic import DomainError, GaussianState, ValidationError

BEAM_SPLITTER = "beam_splitter"
AMPLIFIER = "amplifier"
KAPPA_MAX = 16.0


@dataclass(frozen=True)
class MixingParams:
    kind: str
    lambda_A: float
    lambda_B: float

    def __post_init__(self):
        if self.kind == BEAM_SPLITTER:
            if not (0.0 <= self.lambda_A <= 1.0):
                raise DomainError(f"transmissivity must be in [0,1], got {self.lambda_A}")
            if abs(self.lambda_A + self.lambda_B - 1.0) > 1e-12:
                raise DomainError("beam splitter requires lambda_A + lambda_B = 1")
        elif self.kind == AMPLIFIER:
            if not (1.0 <= self.lambda_A <= KAPPA_MAX):
                raise DomainError(f"gain must be in [1, {KAPPA_MAX}], got {self.lambda_A}")
            if abs(self.lambda_A - self.lambda_B - 1.0) > 1e-12:
                raise DomainError("amplifier requires lambda_A - lambda_B = 1")
        else:
            raise DomainError(f"unknown mixing kind {self.kind!r}")

    @classmethod
    def beam_splitter(cls, transmissivity: float) -> "MixingParams":
        return cls(BEAM_SPLITTER, transmissivity, 1.0 - transmissivity)

    @classmethod
    def amplifier(cls, gain: float) -> "MixingParams":
        return cls(AMPLIFIER, gain, gain - 1.0)


def time_reversal_matrix(n: int) -> np.ndarray:
    """Diagonal matrix with +1 on Q and -1 on P quadratures."""
    return np.diag(np.tile([1.0, -1.0], n))


@dataclass(frozen=True)
class TimeReversal:
    n: int
    matrix: np.ndarray

    @classmethod
    def of(cls, n: int) -> "TimeReversal":
        return cls(n=n, matrix=time_reversal_matrix(n))


def mix(a: GaussianState, b: GaussianState, p: MixingParams) -> GaussianState:
    """Gaussian output of the beam splitter / amplifier on the A port."""
    if a.n != b.n:
        raise ValidationError(f"mode count mismatch: {a.n} vs {b.n}")
    if p.kind == BEAM_SPLITTER:
        gamma_b, d_b = b.gamma, b.d
    else:
        t = time_reversal_matrix(b.n)
        gamma_b, d_b = t @ b.gamma @ t, t @ b.d
    gamma = p.lambda_A * a.gamma + p.lambda_B * gamma_b
    d = math.sqrt(p.lambda_A) * a.d + math.sqrt(p.lambda_B) * d_b
    return GaussianState(a.n, gamma, d, validate=False)


def add_noise(state: GaussianState, t: float) -> GaussianState:
    """Additive Gaussian noise semigroup: gamma -> gamma + t*I, d unchanged."""
    if t < 0:
        raise DomainError(f"noise time must be >= 0, got {t}")
    return GaussianState(state.n, state.gamma + t * np.eye(2 * state.n),
                         state.d, validate=False)


def displace(state: GaussianState, index: int, amount: float) -> GaussianState:
    """Shift the displacement along one quadrature axis; gamma unchanged."""
    if not (0 <= index < 2 * state.n):
        raise DomainError(f"quadrature index {index} out of range for n={state.n}")
    d = state.d.copy()
    d[index] += amount
    return GaussianState(state.n, state.gamma, d, validate=False)


def time_reverse(state: GaussianState) -> GaussianState:
    t = time_reversal_matrix(state.n)
    return GaussianState(state.n, t @ state.gamma @ t, t @ state.d, validate=False)


@dataclass(frozen=True)
class CommutationRecord:
    max_gamma_deviation: float
    max_d_deviation: float
    t_C: float
    equal: bool


def noise_commutation_check(a: GaussianState, b: GaussianState, p: MixingParams,
                            t_a: float, t_b: float,
                            tol: float = 1e-12) -> CommutationRecord:
    """Noise-then-mix equals mix-then-noise with t_C = lam_A t_A + lam_B t_B."""
    t_c = p.lambda_A * t_a + p.lambda_B * t_b
    lhs = mix(add_noise(a, t_a), add_noise(b, t_b), p)
    rhs = add_noise(mix(a, b, p), t_c)
    dev_g = float(np.max(np.abs(lhs.gamma - rhs.gamma)))
    dev_d = float(np.max(np.abs(lhs.d - rhs.d)))
    return CommutationRecord(dev_g, dev_d, t_c, dev_g <= tol and dev_d <= tol)
