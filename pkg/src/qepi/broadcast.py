"""Bosonic broadcast-channel rate regions.

One sender feeds two receivers through a beam splitter of transmissivity
lam >= 1/2 under a mean-photon-number constraint n_bar; beta is the
fraction of photons carrying receiver-B information.  Two outer bounds
on R_C are computed: the conjectured region (photon-number inequality)
and the proven, slightly weaker entropy-power bound.  Rates in nats per
channel use.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .symplectic import DomainError, g


@dataclass(frozen=True)
class CapacityPoint:
    beta: float
    R_B: float
    R_C_conjectured: float
    R_C_qepi: float

    @property
    def feasible(self) -> bool:
        return self.R_C_conjectured >= 0.0


def capacity_point(transmissivity: float, n_bar: float, beta: float) -> CapacityPoint:
    """Rate pair bounds at a single power split beta.

    R_B               = g(lam beta n_bar)
    R_C (conjectured) = g((1-lam) n_bar) - g((1-lam) beta n_bar)
    R_C (proven)      = g((1-lam) n_bar)
                        - ln[((1-lam) e^{g(lam beta n_bar)} + 2 lam - 1) / lam]
    Negative R_C values are reported raw; they are meaningful near beta = 1.
    """
    if not (0.5 <= transmissivity <= 1.0):
        raise DomainError(f"transmissivity must be in [1/2, 1], got {transmissivity}")
    if n_bar < 0 or not (0.0 <= beta <= 1.0):
        raise DomainError("need n_bar >= 0 and beta in [0, 1]")
    lam = transmissivity
    r_b = g(lam * beta * n_bar)
    base = g((1.0 - lam) * n_bar)
    r_c_conj = base - g((1.0 - lam) * beta * n_bar)
    # (1-lam) e^{R_B} + 2 lam - 1 rewritten as lam + (1-lam)(e^{R_B} - 1) so
    # the subtracted term is exactly zero at beta = 0
    r_c_qepi = base - math.log(1.0 + (1.0 - lam) * math.expm1(r_b) / lam)
    return CapacityPoint(beta=beta, R_B=r_b, R_C_conjectured=r_c_conj,
                         R_C_qepi=r_c_qepi)


def capacity_region(transmissivity: float, n_bar: float,
                    grid_size: int = 101) -> list[CapacityPoint]:
    """Sweep beta over a uniform grid."""
    if grid_size < 2:
        raise DomainError("grid_size must be at least 2")
    betas = np.linspace(0.0, 1.0, grid_size)
    return [capacity_point(transmissivity, n_bar, float(b)) for b in betas]


def write_region_csv(path, points: list[CapacityPoint]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["beta", "R_B", "R_C_conj", "R_C_qepi", "feasible"])
        for pt in points:
            writer.writerow([f"{pt.beta:.10g}", f"{pt.R_B:.12g}",
                             f"{pt.R_C_conjectured:.12g}", f"{pt.R_C_qepi:.12g}",
                             int(pt.feasible)])
