"""Gaussian state data model and entropy functionals.

Conventions: quadratures are interleaved (Q1, P1, ..., Qn, Pn), the
vacuum covariance matrix is the identity, so symplectic eigenvalues
satisfy nu >= 1 and a single thermal mode with mean photon number N has
gamma = (2N+1) * I and entropy g(N).  All entropies are in nats.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

SYMMETRY_TOL = 1e-12
PHYSICALITY_TOL = 1e-9


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class ValidationError(ValueError):
    """A state or matrix violates a structural invariant."""


def symplectic_form(n: int) -> np.ndarray:
    """2n x 2n symplectic form, block diagonal of [[0,1],[-1,0]]."""
    if n < 1:
        raise DomainError(f"mode count must be positive, got {n}")
    omega = np.zeros((2 * n, 2 * n))
    for j in range(n):
        omega[2 * j, 2 * j + 1] = 1.0
        omega[2 * j + 1, 2 * j] = -1.0
    return omega


@dataclass(frozen=True)
class SymplecticForm:
    n: int
    matrix: np.ndarray

    @classmethod
    def of(cls, n: int) -> "SymplecticForm":
        return cls(n=n, matrix=symplectic_form(n))


@dataclass(frozen=True)
class SpectrumReport:
    nus: np.ndarray       # sorted ascending, length n
    min_nu: float
    physical: bool


@dataclass(frozen=True)
class GaussianState:
    """n-mode Gaussian state: covariance matrix gamma and displacement d."""

    n: int
    gamma: np.ndarray
    d: np.ndarray

    def __init__(self, n: int, gamma, d=None, validate: bool = True):
        gamma = np.array(gamma, dtype=float)
        if d is None:
            d = np.zeros(2 * n)
        d = np.array(d, dtype=float)
        if gamma.shape != (2 * n, 2 * n):
            raise ValidationError(
                f"covariance matrix must be {2*n}x{2*n}, got {gamma.shape}")
        if d.shape != (2 * n,):
            raise ValidationError(
                f"displacement must have length {2*n}, got {d.shape}")
        if validate:
            asym = np.max(np.abs(gamma - gamma.T))
            if asym > SYMMETRY_TOL:
                raise ValidationError(
                    f"covariance matrix asymmetry {asym:.3e} exceeds {SYMMETRY_TOL}")
            gamma = 0.5 * (gamma + gamma.T)
        gamma.flags.writeable = False
        d.flags.writeable = False
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "d", d)
        if validate:
            rep = symplectic_eigenvalues(self)
            if not rep.physical:
                raise ValidationError(
                    f"unphysical state: min symplectic eigenvalue {rep.min_nu}")

    @classmethod
    def vacuum(cls, n: int = 1) -> "GaussianState":
        return cls(n, np.eye(2 * n), validate=False)

    @classmethod
    def thermal(cls, mean_photons: float, n: int = 1) -> "GaussianState":
        if mean_photons < 0:
            raise DomainError("mean photon number must be nonnegative")
        return cls(n, (2.0 * mean_photons + 1.0) * np.eye(2 * n), validate=False)

    def to_json(self) -> str:
        return json.dumps({
            "n": self.n,
            "gamma": [float(x) for x in self.gamma.ravel()],
            "d": [float(x) for x in self.d],
        })

    @classmethod
    def from_json(cls, text: str) -> "GaussianState":
        obj = json.loads(text)
        n = int(obj["n"])
        gamma = np.array(obj["gamma"], dtype=float).reshape(2 * n, 2 * n)
        return cls(n, gamma, np.array(obj["d"], dtype=float))


def symplectic_eigenvalues(state: GaussianState) -> SpectrumReport:
    """Symplectic spectrum of the covariance matrix.

    The eigenvalues of Omega @ gamma come in pairs +-i*nu; the returned
    nus are the n distinct moduli, sorted ascending.
    """
    gamma = state.gamma
    asym = np.max(np.abs(gamma - gamma.T))
    if asym > SYMMETRY_TOL:
        raise ValidationError(f"covariance matrix asymmetry {asym:.3e}")
    omega = symplectic_form(state.n)
    evals = np.linalg.eigvals(omega @ gamma)
    nus = np.sort(np.abs(evals))[::2]  # each nu appears twice
    min_nu = float(nus[0])
    return SpectrumReport(nus=nus, min_nu=min_nu,
                          physical=min_nu >= 1.0 - PHYSICALITY_TOL)


def g(mean_photons) -> float:
    """Entropy in nats of a thermal mode with the given mean photon number."""
    N = np.asarray(mean_photons, dtype=float)
    if np.any(~np.isfinite(N)) or np.any(N < 0):
        raise DomainError(f"mean photon number must be finite and >= 0, got {mean_photons}")
    # (N+1)ln(N+1) - N ln N rewritten as ln(N+1) + N ln(1 + 1/N); the naive
    # form loses all precision to cancellation for large N
    flat = np.atleast_1d(N).astype(float)
    out = np.zeros_like(flat)
    # ln(1 + 1/N) is safe down to normal floats; below that, 1/N overflows,
    # so use the tiny-N expansion N(1 - ln N) instead
    tiny = (flat > 0) & (flat < 1e-290)
    out[tiny] = flat[tiny] * (1.0 - np.log(flat[tiny]))
    pos = flat >= 1e-290
    out[pos] = np.log1p(flat[pos]) + flat[pos] * np.log1p(1.0 / flat[pos])
    out = out.reshape(np.shape(N))
    return float(out) if out.ndim == 0 else out


def g_inv(entropy_nats) -> float:
    """Inverse of g: mean photon number of a thermal mode with given entropy."""
    s = np.asarray(entropy_nats, dtype=float)
    if np.any(~np.isfinite(s)) or np.any(s < 0):
        raise DomainError(f"entropy must be finite and >= 0, got {entropy_nats}")
    if s.ndim == 0:
        return _g_inv_scalar(float(s))
    return np.array([_g_inv_scalar(float(v)) for v in s.ravel()]).reshape(s.shape)


def _g_inv_scalar(s: float) -> float:
    if s == 0.0:
        return 0.0
    # Bracket then bisect coarsely; polish with Newton (g is smooth and
    # strictly increasing, g'(N) = ln((N+1)/N) > 0).
    lo, hi = 0.0, max(1.0, math.exp(s))
    while g(hi) < s:
        hi *= 2.0
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if g(mid) < s:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-6 * max(1.0, hi):
            break
    x = 0.5 * (lo + hi)
    for _ in range(50):
        fx = g(x) - s
        dfx = math.log((x + 1.0) / x)
        step = fx / dfx
        x -= step
        if x <= 0:
            x = 1e-300
        if abs(step) < 1e-14 * max(1.0, x):
            break
    return x


def entropy(state: GaussianState) -> float:
    """Von Neumann entropy of a Gaussian state, sum of g((nu-1)/2)."""
    rep = symplectic_eigenvalues(state)
    if not rep.physical:
        raise ValidationError(f"unphysical state: min nu {rep.min_nu}")
    nus = np.maximum(rep.nus, 1.0)
    return float(np.sum(g((nus - 1.0) / 2.0)))


def entropy_power(entropy_nats: float, n: int) -> float:
    """exp(S/n), the quantity the entropy power inequality bounds linearly."""
    if entropy_nats < 0 or n < 1:
        raise DomainError("need S >= 0 and n >= 1")
    return math.exp(entropy_nats / n)


def photon_number(entropy_nats: float, n: int) -> float:
    """Mean photon number per mode of a thermal state with the same entropy."""
    if n < 1:
        raise DomainError("need n >= 1")
    return g_inv(entropy_nats / n)


def delta(x) -> float:
    """Gap between the entropy-power-to-photon-number map and its linear fit.

    delta(x) = g_inv(ln x) - x/e + 1/2, defined for x >= 1; nonnegative,
    decreasing, convex, with delta(1) = 1/2 - 1/e.
    """
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 1.0):
        raise DomainError(f"entropy power must be >= 1, got {x}")
    out = g_inv(np.log(xa)) - xa / math.e + 0.5
    return float(out) if xa.ndim == 0 else out


def _embed_block(n: int, j: int, block: np.ndarray) -> np.ndarray:
    m = np.eye(2 * n)
    m[2 * j:2 * j + 2, 2 * j:2 * j + 2] = block
    return m


def _rotation(phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, s], [-s, c]])


def _squeezer(r: float) -> np.ndarray:
    return np.diag([math.exp(r), math.exp(-r)])


def _mode_mixer(n: int, j: int, k: int, theta: float) -> np.ndarray:
    m = np.eye(2 * n)
    c, s = math.cos(theta), math.sin(theta)
    for q in range(2):
        m[2 * j + q, 2 * j + q] = c
        m[2 * k + q, 2 * k + q] = c
        m[2 * j + q, 2 * k + q] = s
        m[2 * k + q, 2 * j + q] = -s
    return m


def random_gaussian_state(n: int, seed, nu_max: float = 10.0,
                          r_max: float = 1.0) -> GaussianState:
    """Random physical Gaussian state, deterministic for a fixed seed.

    gamma = S diag(nu_1, nu_1, ..., nu_n, nu_n) S^T with the nu_k drawn
    log-uniformly from [1, nu_max] and S a product of random per-mode
    rotations, squeezers (|r| <= r_max) and adjacent mode mixers.
    """
    if nu_max < 1.0 or r_max < 0.0:
        raise DomainError("need nu_max >= 1 and r_max >= 0")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    nus = np.exp(rng.uniform(0.0, math.log(nu_max), size=n)) if nu_max > 1.0 \
        else np.ones(n)
    core = np.diag(np.repeat(nus, 2))
    s_total = np.eye(2 * n)
    for j in range(n):
        s_total = s_total @ _embed_block(n, j, _rotation(rng.uniform(0, 2 * math.pi)))
        s_total = s_total @ _embed_block(n, j, _squeezer(rng.uniform(-r_max, r_max)))
        s_total = s_total @ _embed_block(n, j, _rotation(rng.uniform(0, 2 * math.pi)))
    for j in range(n - 1):
        s_total = s_total @ _mode_mixer(n, j, j + 1, rng.uniform(0, 2 * math.pi))
    gamma = s_total @ core @ s_total.T
    gamma = 0.5 * (gamma + gamma.T)
    return GaussianState(n, gamma, validate=False)
