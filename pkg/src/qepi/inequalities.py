"""Entropy inequalities as checkable predicates.

Covers: the entropy power inequality for beam splitters and amplifiers,
its linear corollaries, the photon-number gap bound, the minimum-output
entropy bound and its gap surface, the monotone proof trajectory, the
asymptotic entropy-power scaling, and a randomized verification harness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channels import AMPLIFIER, BEAM_SPLITTER, MixingParams, add_noise, mix
from .fisher import fisher_total_gaussian, stam_check
from .symplectic import (DomainError, GaussianState, entropy, g, g_inv,
                         photon_number, random_gaussian_state,
                         symplectic_eigenvalues)

GAUSSIAN_SLACK_TOL = 1e-9
ORACLE_SLACK_TOL = 1e-6
EPNI_FLOOR = 1.0 / math.e - 0.5


@dataclass(frozen=True)
class InequalityReport:
    name: str
    lhs: float
    rhs: float
    slack: float
    holds: bool
    inputs: dict = field(default_factory=dict)

    @classmethod
    def build(cls, name: str, lhs: float, rhs: float, tol: float = GAUSSIAN_SLACK_TOL,
              inputs: dict | None = None) -> "InequalityReport":
        slack = lhs - rhs
        return cls(name=name, lhs=lhs, rhs=rhs, slack=slack,
                   holds=slack >= -tol * max(1.0, abs(rhs)),
                   inputs=dict(inputs or {}))

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
                "slack": self.slack, "holds": self.holds, "inputs": self.inputs}


def qepi_check(s_a: float, s_b: float, s_c: float, n: int, p: MixingParams,
               tol: float = GAUSSIAN_SLACK_TOL) -> InequalityReport:
    """Entropy power inequality: e^{S_C/n} >= lam_A e^{S_A/n} + lam_B e^{S_B/n}."""
    if min(s_a, s_b, s_c) < 0:
        raise DomainError("entropies must be nonnegative")
    lhs = math.exp(s_c / n)
    rhs = p.lambda_A * math.exp(s_a / n) + p.lambda_B * math.exp(s_b / n)
    return InequalityReport.build("qepi", lhs, rhs, tol=tol,
                                  inputs={"S_A": s_a, "S_B": s_b, "S_C": s_c,
                                          "n": n, "kind": p.kind,
                                          "lambda_A": p.lambda_A})


def linear_check(s_a: float, s_b: float, s_c: float, n: int, p: MixingParams,
                 tol: float = GAUSSIAN_SLACK_TOL) -> InequalityReport:
    """Linear corollary of the entropy power inequality.

    Beam splitter: S_C >= lam S_A + (1-lam) S_B.
    Amplifier:     S_C >= (k S_A + (k-1) S_B)/(2k-1) + ln(2k-1).
    """
    if min(s_a, s_b, s_c) < 0:
        raise DomainError("entropies must be nonnegative")
    if p.kind == BEAM_SPLITTER:
        rhs = p.lambda_A * s_a + p.lambda_B * s_b
    else:
        total = p.lambda_A + p.lambda_B          # 2k - 1
        rhs = (p.lambda_A * s_a + p.lambda_B * s_b) / total + math.log(total)
    return InequalityReport.build("linear", s_c, rhs, tol=tol,
                                  inputs={"S_A": s_a, "S_B": s_b, "S_C": s_c,
                                          "n": n, "kind": p.kind,
                                          "lambda_A": p.lambda_A})


def epni_gap(n_a: float, n_b: float, n_c: float, transmissivity: float,
             tol: float = GAUSSIAN_SLACK_TOL) -> InequalityReport:
    """Photon-number gap N_C - lam N_A - (1-lam) N_B and its proven floor.

    The raw gap probes the (open) photon-number inequality; the report
    asserts only the proven bound gap >= 1/e - 1/2.
    """
    if min(n_a, n_b, n_c) < 0 or not (0.0 <= transmissivity <= 1.0):
        raise DomainError("need nonnegative photon numbers and lam in [0,1]")
    gap = n_c - transmissivity * n_a - (1.0 - transmissivity) * n_b
    return InequalityReport.build("epni_floor", gap, EPNI_FLOOR, tol=tol,
                                  inputs={"N_A": n_a, "N_B": n_b, "N_C": n_c,
                                          "lambda": transmissivity, "gap": gap})


def amplifier_photon_gap(n_a: float, n_b: float, n_c: float, gain: float) -> float:
    """Raw gap of the conjectured amplifier photon-number inequality (unasserted)."""
    return n_c - gain * n_a - (gain - 1.0) * (n_b + 1.0)


# ---------------------------------------------------------------------------
# minimum output entropy bound and its gap surface

def moe_bound(s_bar: float, transmissivity: float) -> float:
    """Proven lower bound ln[lam e^{S} + (1-lam)] on the output entropy."""
    if s_bar < 0 or not (0.0 <= transmissivity <= 1.0):
        raise DomainError("need S >= 0 and lam in [0,1]")
    return math.log(transmissivity * math.exp(s_bar) + 1.0 - transmissivity)


def moe_conjectured(s_bar: float, transmissivity: float) -> float:
    """Conjectured minimum g(lam g_inv(S)), attained by the thermal input."""
    if s_bar < 0 or not (0.0 <= transmissivity <= 1.0):
        raise DomainError("need S >= 0 and lam in [0,1]")
    return g(transmissivity * g_inv(s_bar))


def moe_delta(s_bar: float, transmissivity: float) -> float:
    """Gap between the conjectured minimum and the proven bound; >= 0."""
    return moe_conjectured(s_bar, transmissivity) - moe_bound(s_bar, transmissivity)


def delta_surface(s_grid=None, lam_grid=None):
    """Evaluate moe_delta on a grid; returns (s_grid, lam_grid, surface)."""
    if s_grid is None:
        s_grid = np.geomspace(0.01, 6.0, 200)
    if lam_grid is None:
        lam_grid = np.linspace(0.0, 1.0, 201)
    surface = np.empty((len(s_grid), len(lam_grid)))
    for i, s in enumerate(s_grid):
        n_th = g_inv(float(s))
        ebar = math.exp(s)
        for j, lam in enumerate(lam_grid):
            surface[i, j] = g(lam * n_th) - math.log(lam * ebar + 1.0 - lam)
    return np.asarray(s_grid), np.asarray(lam_grid), surface


def _golden_max(f, lo: float, hi: float, iters: int = 60) -> float:
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - phi * (b - a)
    d = a + phi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def delta_surface_max(s_grid=None, lam_grid=None):
    """Grid search plus coordinate-wise golden-section refinement.

    Returns (max_delta, s_bar_at_max, lam_at_max).
    """
    s_grid, lam_grid, surface = delta_surface(s_grid, lam_grid)
    i, j = np.unravel_index(int(np.argmax(surface)), surface.shape)
    s_best, lam_best = float(s_grid[i]), float(lam_grid[j])
    s_lo = float(s_grid[max(i - 1, 0)])
    s_hi = float(s_grid[min(i + 1, len(s_grid) - 1)])
    lam_lo = float(lam_grid[max(j - 1, 0)])
    lam_hi = float(lam_grid[min(j + 1, len(lam_grid) - 1)])
    for _ in range(4):
        lam_best = _golden_max(lambda x: moe_delta(s_best, x), lam_lo, lam_hi)
        s_best = _golden_max(lambda x: moe_delta(x, lam_best), s_lo, s_hi)
    return moe_delta(s_best, lam_best), s_best, lam_best


# ---------------------------------------------------------------------------
# proof trajectory and asymptotics

@dataclass(frozen=True)
class TrajectoryPoint:
    t: float
    t_A: float
    t_B: float
    t_C: float
    S_A: float
    S_B: float
    S_C: float
    ratio: float


def ratio_trajectory(a: GaussianState, b: GaussianState, p: MixingParams,
                     t_max: float = 200.0) -> list[TrajectoryPoint]:
    """Integrate the reparametrized-noise trajectory and emit the monotone ratio.

    The per-input times satisfy dt_X/dt = e^{S_X(t_X)/n} with t_X(0) = 0,
    t_C = lam_A t_A + lam_B t_B, and
    ratio(t) = (lam_A e^{S_A/n} + lam_B e^{S_B/n}) / e^{S_C/n}.
    ratio(0) is exactly the entropy power inequality instance; the proof
    guarantees ratio is non-decreasing and tends to 1.
    """
    if t_max <= 0:
        raise DomainError("t_max must be positive")
    n = a.n
    gamma_c0 = mix(a, b, p).gamma
    eye = np.eye(2 * n)

    def ep(gamma0: np.ndarray, t_x: float) -> float:
        state = GaussianState(n, gamma0 + t_x * eye, validate=False)
        return math.exp(entropy(state) / n)

    def rhs(tx: np.ndarray) -> np.ndarray:
        return np.array([ep(a.gamma, tx[0]), ep(b.gamma, tx[1])])

    def ratio_at(tx: np.ndarray) -> tuple[float, float, float, float, float]:
        t_c = p.lambda_A * tx[0] + p.lambda_B * tx[1]
        ep_a, ep_b = ep(a.gamma, tx[0]), ep(b.gamma, tx[1])
        ep_c = ep(gamma_c0, t_c)
        return ((p.lambda_A * ep_a + p.lambda_B * ep_b) / ep_c, t_c,
                math.log(ep_a) * n, math.log(ep_b) * n, math.log(ep_c) * n)

    points = []
    t = 0.0
    tx = np.zeros(2)
    h = 0.01
    while True:
        r, t_c, s_a, s_b, s_c = ratio_at(tx)
        points.append(TrajectoryPoint(t=t, t_A=float(tx[0]), t_B=float(tx[1]),
                                      t_C=t_c, S_A=s_a, S_B=s_b, S_C=s_c, ratio=r))
        if t >= t_max - 1e-12:
            break
        h = min(h, t_max - t)
        k1 = rhs(tx)
        k2 = rhs(tx + 0.5 * h * k1)
        k3 = rhs(tx + 0.5 * h * k2)
        k4 = rhs(tx + h * k3)
        tx = tx + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t += h
        # uniform small steps early, geometric growth once the flow is smooth
        if t >= 10.0:
            h = min(h * 1.05, 1.0)
    return points


@dataclass(frozen=True)
class AsymptoticReport:
    t_grid: np.ndarray
    entropy_power: np.ndarray
    upper_bound: np.ndarray
    ratio_to_linear: np.ndarray
    upper_bound_holds: bool
    ratio_within_tolerance: bool


def asymptotic_check(state: GaussianState, t_grid,
                     upper_margin: float = 0.01) -> AsymptoticReport:
    """Check e^{S(t)/n} <= e(lam0 + t)/2 + margin and convergence to et/2."""
    t_grid = np.asarray(t_grid, dtype=float)
    if np.any(t_grid < 0):
        raise DomainError("times must be nonnegative")
    n = state.n
    lam0 = float(np.max(np.linalg.eigvalsh(state.gamma)))
    eps, bounds, ratios = [], [], []
    for t in t_grid:
        s = entropy(add_noise(state, float(t)))
        ep = math.exp(s / n)
        eps.append(ep)
        bounds.append(math.e * (lam0 + t) / 2.0 + upper_margin)
        ratios.append(ep / (math.e * t / 2.0) - 1.0 if t > 0 else float("nan"))
    eps = np.array(eps)
    bounds = np.array(bounds)
    ratios = np.array(ratios)
    with np.errstate(divide="ignore"):
        tol = (lam0 + 2.0) / t_grid
    ok_ratio = all(abs(r) <= tl for r, tl in zip(ratios, tol) if not math.isnan(r))
    return AsymptoticReport(t_grid=t_grid, entropy_power=eps, upper_bound=bounds,
                            ratio_to_linear=ratios,
                            upper_bound_holds=bool(np.all(eps <= bounds)),
                            ratio_within_tolerance=ok_ratio)


# ---------------------------------------------------------------------------
# randomized verification harness

@dataclass(frozen=True)
class SuiteSummary:
    trials: int
    seed: int
    kind: str
    lambda_A: float
    min_qepi_slack: float
    min_linear_slack: float
    min_stam_slack: float
    min_photon_gap: float
    photon_gap_floor_ok: bool
    failures: list
    gap_histogram: list
    gap_bin_edges: list

    def to_dict(self) -> dict:
        return {"trials": self.trials, "seed": self.seed, "kind": self.kind,
                "lambda_A": self.lambda_A,
                "min_qepi_slack": self.min_qepi_slack,
                "min_linear_slack": self.min_linear_slack,
                "min_stam_slack": self.min_stam_slack,
                "min_photon_gap": self.min_photon_gap,
                "photon_gap_floor_ok": self.photon_gap_floor_ok,
                "failures": self.failures,
                "gap_histogram": self.gap_histogram,
                "gap_bin_edges": self.gap_bin_edges}


def random_qepi_suite(trials: int, seed: int, p: MixingParams,
                      nu_max: float = 10.0, r_max: float = 1.0,
                      with_stam: bool = False) -> SuiteSummary:
    """Run all closed-form inequality checks on random Gaussian pairs.

    Deterministic per seed: each trial draws from an independent stream
    derived from (seed, trial index).
    """
    if trials < 1:
        raise DomainError("need at least one trial")
    min_qepi = min_lin = min_stam = min_gap = float("inf")
    gaps = []
    failures = []
    for idx in range(trials):
        rng_a = np.random.default_rng(np.random.SeedSequence((seed, idx, 0)))
        rng_b = np.random.default_rng(np.random.SeedSequence((seed, idx, 1)))
        a = random_gaussian_state(1, rng_a, nu_max=nu_max, r_max=r_max)
        b = random_gaussian_state(1, rng_b, nu_max=nu_max, r_max=r_max)
        s_a, s_b = entropy(a), entropy(b)
        s_c = entropy(mix(a, b, p))
        rep_q = qepi_check(s_a, s_b, s_c, 1, p)
        rep_l = linear_check(s_a, s_b, s_c, 1, p)
        min_qepi = min(min_qepi, rep_q.slack)
        min_lin = min(min_lin, rep_l.slack)
        for rep in (rep_q, rep_l):
            if not rep.holds:
                failures.append(rep.to_dict() | {"trial": idx})
        if p.kind == BEAM_SPLITTER:
            n_a, n_b = g_inv(s_a), g_inv(s_b)
            n_c = g_inv(s_c)
            rep_g = epni_gap(n_a, n_b, n_c, p.lambda_A)
            gaps.append(rep_g.inputs["gap"])
            min_gap = min(min_gap, rep_g.inputs["gap"])
            if not rep_g.holds:
                failures.append(rep_g.to_dict() | {"trial": idx})
        else:
            gaps.append(amplifier_photon_gap(g_inv(s_a), g_inv(s_b), g_inv(s_c),
                                             p.lambda_A))
        if with_stam:
            try:
                j_a = fisher_total_gaussian(a).total
                j_b = fisher_total_gaussian(b).total
                j_c = fisher_total_gaussian(mix(a, b, p)).total
            except Exception:
                continue  # near-pure draws are out of Stam's domain
            rep_s = stam_check(j_a, j_b, j_c, p)
            min_stam = min(min_stam, rep_s.slack)
            if not rep_s.holds:
                failures.append(rep_s.to_dict() | {"trial": idx})
    hist, edges = np.histogram(np.array(gaps), bins=40)
    return SuiteSummary(trials=trials, seed=seed, kind=p.kind, lambda_A=p.lambda_A,
                        min_qepi_slack=min_qepi, min_linear_slack=min_lin,
                        min_stam_slack=min_stam, min_photon_gap=min_gap,
                        photon_gap_floor_ok=min_gap >= EPNI_FLOOR - GAUSSIAN_SLACK_TOL
                        if math.isfinite(min_gap) else True,
                        failures=failures,
                        gap_histogram=[int(x) for x in hist],
                        gap_bin_edges=[float(x) for x in edges])
