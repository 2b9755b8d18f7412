"""Existence phase diagram over (eps, gamma, N).

The classifier applies the proved windows only and never extrapolates:

* n = 1 is always classical (a ball),
* n = 2 delegates to the exact two-charge solver (the 8 pi / eps threshold
  is its asymptotic annotation),
* n >= 3 uses the threshold windows with configurable constants: existence
  for gamma > gamma0 and n < C/(eps*gamma); non-existence for
  C/(gamma*eps) < n < delta0/eps^2; Unknown elsewhere.

The default constants C = 32 pi and gamma0 = 64 pi come from explicit
inequalities inside the proofs; delta0 = 1e-2 is a placeholder scalar (its
gamma-dependence is not quantified), so cells beyond delta0/eps^2 stay
Unknown.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import two_charge
from .charges import packing_feasible, upper_bound_energy
from .errors import DomainError

__all__ = [
    "Label",
    "ClassifierConstants",
    "RegimeCell",
    "classify",
    "sweep",
    "two_charge_boundary_curve",
    "REGIME_CSV_FIELDS",
]

_PI = math.pi


class Label(str, Enum):
    EXISTS = "Exists"
    NOT_EXISTS = "NotExists"
    UNKNOWN = "Unknown"
    INFEASIBLE = "Infeasible"


@dataclass(frozen=True)
class ClassifierConstants:
    """Threshold constants; defaults lifted from proof-internal inequalities."""

    C_threshold: float = 32.0 * _PI
    gamma0: float = 64.0 * _PI
    delta0: float = 1e-2

    def __post_init__(self):
        if min(self.C_threshold, self.gamma0, self.delta0) <= 0.0:
            raise DomainError("classifier constants must be positive")


@dataclass(frozen=True)
class RegimeCell:
    eps: float
    gamma: float
    n: int
    label: Label
    split_energy: float | None = None
    classical_estimate: float | None = None


def _witness(eps: float, gamma: float, n: int) -> tuple[float | None, float | None]:
    """Split competitor energy and a continuum-style classical estimate.

    The classical estimate tests a unit ball with the charge spread over the
    boundary, i.e. 4 pi + gamma eps^3 n^2 / 2 (uniform measure energy 1).
    """
    try:
        split = upper_bound_energy(n, eps)
    except DomainError:
        return None, None
    classical = 4.0 * _PI + gamma * eps ** 3 * n * n / 2.0
    return split, classical


def classify(eps: float, gamma: float, n: int,
             constants: ClassifierConstants | None = None) -> RegimeCell:
    """Deterministic label for one (eps, gamma, n) point."""
    if eps <= 0.0 or gamma <= 0.0 or n < 1:
        raise DomainError(f"need eps, gamma > 0 and n >= 1, got {(eps, gamma, n)}")
    constants = constants or ClassifierConstants()
    if not packing_feasible(n, eps, 1.0):
        return RegimeCell(eps, gamma, n, Label.INFEASIBLE)
    split, classical = _witness(eps, gamma, n)
    if n == 1:
        return RegimeCell(eps, gamma, n, Label.EXISTS, split, classical)
    if n == 2:
        if eps <= two_charge.EPS_MAX_DEFAULT:
            sol = two_charge.minimize(eps, gamma, polish=False)
            label = Label.EXISTS if sol.exists else Label.NOT_EXISTS
            return RegimeCell(eps, gamma, n, label, sol.split_energy, sol.energy.total)
        # outside the exact solver's validated range the theorems say nothing
        return RegimeCell(eps, gamma, n, Label.UNKNOWN, split, classical)
    dividing = constants.C_threshold / (eps * gamma)
    if gamma > constants.gamma0 and n < dividing:
        return RegimeCell(eps, gamma, n, Label.EXISTS, split, classical)
    if dividing < n < constants.delta0 / eps ** 2:
        return RegimeCell(eps, gamma, n, Label.NOT_EXISTS, split, classical)
    return RegimeCell(eps, gamma, n, Label.UNKNOWN, split, classical)


def sweep(eps_values, gamma_values, n_values,
          constants: ClassifierConstants | None = None) -> list[RegimeCell]:
    """Cartesian-product classification, rows in ascending (eps, gamma, n) order."""
    if not (len(eps_values) and len(gamma_values) and len(n_values)):
        raise DomainError("sweep grid must be non-empty in every axis")
    cells = []
    for eps in sorted(eps_values):
        for gamma in sorted(gamma_values):
            for n in sorted(n_values):
                cells.append(classify(eps, gamma, n, constants))
    return cells


def two_charge_boundary_curve(eps_values, *, bracket_factors=(0.5, 2.0),
                              rel_width: float = 1e-6) -> list[tuple[float, float, float]]:
    """(eps, gamma_c, gamma_c * eps) rows; gamma_c * eps tends to 8 pi."""
    rows = []
    for eps in eps_values:
        base = 8.0 * _PI / eps
        gamma_c = two_charge.existence_boundary(
            eps, (bracket_factors[0] * base, bracket_factors[1] * base),
            rel_width=rel_width)
        rows.append((eps, gamma_c, gamma_c * eps))
    return rows


REGIME_CSV_FIELDS = ("eps", "gamma", "n", "label", "split_energy", "classical_estimate")
