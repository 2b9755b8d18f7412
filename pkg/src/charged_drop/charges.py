"""Many-charge machinery: Coulomb energy, admissibility, and optimization.

The host drop is a fixed ball; only the charge positions move.  Minimizing
the pairwise 1/r sum subject to ball containment is done with projected
gradient descent (the feasible set |x| <= R - eps is convex) plus Armijo
backtracking and a growing trial step, restarted from several seeded draws.

The coupling enters the energy as a multiplicative factor gamma * eps^3, so
the minimizing configuration is identical for all couplings; the optimizer
works on the bare geometric sum.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InfeasibleError

__all__ = [
    "Ball",
    "ChargeConfig",
    "Violation",
    "OptimizeOptions",
    "coulomb_energy",
    "validate",
    "optimize",
    "evaporation_margin",
    "scaled_riesz",
    "uniformity_stats",
    "upper_bound_energy",
    "packing_feasible",
    "pairwise_distances",
    "config_record",
]

_PI = math.pi
_CONTAINMENT_SLACK = 1e-12  # rounding guard for the closed constraints


@dataclass(frozen=True)
class Ball:
    center: tuple[float, float, float] = (0.0, 0.0, 0.0)
    radius: float = 1.0


@dataclass(frozen=True)
class ChargeConfig:
    """N charge centers of radius eps inside a host ball."""

    centers: np.ndarray          # (N, 3)
    eps: float
    host: Ball = field(default_factory=Ball)

    def __post_init__(self):
        arr = np.asarray(self.centers, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 3 or arr.shape[0] < 1:
            raise DomainError(f"centers must be (N, 3) with N >= 1, got {arr.shape}")
        object.__setattr__(self, "centers", arr)
        if not 0.0 < self.eps < self.host.radius:
            raise DomainError(f"need 0 < eps < R, got eps={self.eps}, R={self.host.radius}")

    @property
    def n(self) -> int:
        return self.centers.shape[0]


@dataclass(frozen=True)
class Violation:
    """One admissibility failure; margin is how far inside the forbidden set."""

    kind: str                    # "overlap" or "containment"
    indices: tuple[int, ...]
    margin: float


@dataclass(frozen=True)
class OptimizeOptions:
    restarts: int = 8
    tol: float = 1e-9            # projected-gradient norm target
    max_iter: int = 100_000
    backtracks: int = 60
    step_growth: float = 1.3


def pairwise_distances(centers: np.ndarray) -> np.ndarray:
    d = centers[:, None, :] - centers[None, :, :]
    return np.sqrt((d * d).sum(axis=-1))


def _pair_sum_inverse(centers: np.ndarray) -> float:
    r = pairwise_distances(centers)
    iu = np.triu_indices(len(centers), k=1)
    rij = r[iu]
    if rij.size and rij.min() == 0.0:
        raise DomainError("coincident charge centers")
    return float((1.0 / rij).sum()) if rij.size else 0.0


def coulomb_energy(config: ChargeConfig, gamma: float) -> float:
    """gamma * eps^3 * sum_{i<j} 1/|x_i - x_j|; zero for a single charge."""
    return gamma * config.eps ** 3 * _pair_sum_inverse(config.centers)


def scaled_riesz(config: ChargeConfig) -> float:
    """(2/N^2) sum_{i<j} 1/|x_i - x_j|, the empirical-measure Coulomb energy."""
    if config.n < 2:
        raise DomainError("scaled Riesz energy needs N >= 2")
    return 2.0 * _pair_sum_inverse(config.centers) / config.n ** 2


def validate(config: ChargeConfig) -> list[Violation]:
    """All admissibility violations (empty list means admissible).

    Both constraints are closed: centers exactly 2*eps apart or exactly on
    the containment sphere are valid.
    """
    out: list[Violation] = []
    x = config.centers - np.asarray(config.host.center)
    rmax = config.host.radius - config.eps
    nrm = np.linalg.norm(x, axis=1)
    slack = _CONTAINMENT_SLACK * config.host.radius
    for i in np.nonzero(nrm > rmax + slack)[0]:
        out.append(Violation("containment", (int(i),), float(nrm[i] - rmax)))
    r = pairwise_distances(config.centers)
    iu, ju = np.triu_indices(config.n, k=1)
    bad = r[iu, ju] < 2.0 * config.eps - slack
    for i, j in zip(iu[bad], ju[bad]):
        out.append(Violation("overlap", (int(i), int(j)),
                             float(2.0 * config.eps - r[i, j])))
    return out


def packing_feasible(n: int, eps: float, R: float) -> bool:
    """Cube-cell packing heuristic: n cells of side 2*eps must fit the ball volume."""
    return n * (2.0 * eps) ** 3 <= 4.0 * _PI / 3.0 * R ** 3


def evaporation_margin(config: ChargeConfig, gamma: float) -> tuple[float, int]:
    """Worst single-charge detachment margin 8 pi eps^2 - gamma eps^3 sum_j 1/r_ij.

    Negative margin means sending that charge (with its eps-ball) to infinity
    lowers the energy, so the configuration cannot be a minimizer.
    """
    eps = config.eps
    if config.n == 1:
        return 8.0 * _PI * eps * eps, 0
    r = pairwise_distances(config.centers)
    np.fill_diagonal(r, np.inf)
    potentials = (1.0 / r).sum(axis=1)
    margins = 8.0 * _PI * eps * eps - gamma * eps ** 3 * potentials
    idx = int(np.argmin(margins))
    return float(margins[idx]), idx


def upper_bound_energy(n: int, eps: float) -> float:
    """Split competitor: one large ball plus n-1 evaporated unit charges.

    4 pi (r1^2 + eps^2 (n-1)) with r1 = (1 - (n-1) eps^3)^(1/3); an upper
    bound on the generalized minimum.
    """
    if n < 1:
        raise DomainError(f"n={n} < 1")
    rest = (n - 1) * eps ** 3
    if rest >= 1.0:
        raise DomainError(f"(n-1)*eps^3 = {rest} >= 1 exhausts the drop volume")
    r1 = (1.0 - rest) ** (1.0 / 3.0)
    return 4.0 * _PI * (r1 * r1 + eps * eps * (n - 1))


# -- optimization -------------------------------------------------------------

def _energy_grad(x: np.ndarray) -> tuple[float, np.ndarray]:
    d = x[:, None, :] - x[None, :, :]
    r = np.sqrt((d * d).sum(-1))
    np.fill_diagonal(r, np.inf)
    energy = 0.5 * float((1.0 / r).sum())
    grad = -(d / (r ** 3)[:, :, None]).sum(axis=1)
    return energy, grad


def _project(x: np.ndarray, rmax: float) -> np.ndarray:
    nrm = np.linalg.norm(x, axis=1, keepdims=True)
    return x * np.minimum(1.0, rmax / np.maximum(nrm, 1e-300))


def _projected_grad_norm(x: np.ndarray, g: np.ndarray, rmax: float) -> float:
    nrm = np.linalg.norm(x, axis=1)
    pg = g.copy()
    active = nrm >= rmax * (1.0 - 1e-12)
    if active.any():
        xhat = x[active] / nrm[active, None]
        radial = (g[active] * xhat).sum(axis=1)
        blocked = np.minimum(radial, 0.0)  # outward descent blocked by the wall
        pg[active] = g[active] - blocked[:, None] * xhat
    return float(np.linalg.norm(pg))


def _descend(x0: np.ndarray, rmax: float, opts: OptimizeOptions) -> tuple[np.ndarray, float]:
    x = _project(x0, rmax)
    energy, grad = _energy_grad(x)
    step = 0.1 * rmax ** 3 / max(len(x), 2)
    stalled = 0
    for _ in range(opts.max_iter):
        if _projected_grad_norm(x, grad, rmax) <= opts.tol:
            break
        for _ in range(opts.backtracks):
            cand = _project(x - step * grad, rmax)
            cand_energy, cand_grad = _energy_grad(cand)
            decrease = float((grad * (x - cand)).sum())
            if cand_energy <= energy - 1e-4 * decrease or cand_energy < energy:
                stalled = stalled + 1 if energy - cand_energy <= 4e-16 * abs(energy) else 0
                x, energy, grad = cand, cand_energy, cand_grad
                step *= opts.step_growth
                break
            step *= 0.5
        else:
            break  # step underflow: converged to rounding level
        if stalled >= 50:
            break  # progress below double resolution
    return x, energy


def _sample_admissible(rng: np.random.Generator, n: int, eps: float, rmax: float
                       ) -> np.ndarray:
    pts = np.empty((n, 3))
    placed = 0
    for _ in range(1000 * n):
        v = rng.normal(size=3)
        v /= np.linalg.norm(v)
        p = v * rmax * rng.uniform() ** (1.0 / 3.0)
        if placed == 0 or np.linalg.norm(pts[:placed] - p, axis=1).min() >= 2.0 * eps:
            pts[placed] = p
            placed += 1
            if placed == n:
                return pts
    raise InfeasibleError(f"could not draw {n} separated centers (eps={eps}, rmax={rmax})")


def optimize(n: int, eps: float, R: float, seed: int,
             opts: OptimizeOptions | None = None) -> ChargeConfig:
    """Locally minimal Coulomb configuration of n charges in the ball of radius R.

    Multi-start projected gradient descent keyed by a counter-based RNG
    (Philox), so results are reproducible across runs and platforms.
    """
    if n < 1:
        raise DomainError(f"n={n} < 1")
    if not packing_feasible(n, eps, R):
        raise InfeasibleError(f"{n} charges of radius {eps} do not pack into a ball of radius {R}")
    opts = opts or OptimizeOptions()
    rmax = R - eps
    if n == 1:
        return ChargeConfig(np.zeros((1, 3)), eps, Ball(radius=R))
    rng = np.random.Generator(np.random.Philox(key=seed))
    best_x, best_energy = None, math.inf
    for _ in range(opts.restarts):
        x0 = _sample_admissible(rng, n, eps, rmax)
        x, energy = _descend(x0, rmax, opts)
        if energy < best_energy:
            best_x, best_energy = x, energy
    config = ChargeConfig(best_x, eps, Ball(radius=R))
    overlaps = [v for v in validate(config) if v.kind == "overlap"]
    if overlaps:
        warnings.warn(f"optimizer result violates the 2*eps separation at "
                      f"{len(overlaps)} pairs (worst margin {max(v.margin for v in overlaps):.3e})",
                      stacklevel=2)
    return config


# -- uniformity diagnostics ----------------------------------------------------

_N_CAP_AXES = 16
_CAP_COSINES = (0.75, 0.5, 0.0, -0.5)  # area fractions 1/8, 1/4, 1/2, 3/4


def _fibonacci_directions(n: int) -> np.ndarray:
    i = np.arange(n, dtype=float)
    golden = (1.0 + math.sqrt(5.0)) / 2.0
    z = 1.0 - 2.0 * (i + 0.5) / n
    theta = 2.0 * _PI * i / golden
    rho = np.sqrt(1.0 - z * z)
    return np.stack([rho * np.cos(theta), rho * np.sin(theta), z], axis=1)


def cap_axes() -> np.ndarray:
    """The fixed 64-cap test family: 16 Fibonacci axes x 4 opening angles."""
    return _fibonacci_directions(_N_CAP_AXES)


def uniformity_stats(config: ChargeConfig, shell_delta: float) -> dict:
    """Shell occupancy, Riesz gap, and spherical-cap discrepancy.

    Convergence of optimized configurations to the uniform boundary measure
    shows up as shell_fraction -> 1, riesz_gap -> 0, cap_discrepancy -> 0.
    """
    if config.n < 2:
        raise DomainError("uniformity stats need N >= 2")
    x = config.centers - np.asarray(config.host.center)
    nrm = np.linalg.norm(x, axis=1)
    rmax = config.host.radius - config.eps
    shell_fraction = float((nrm >= rmax - shell_delta).mean())
    riesz_gap = abs(scaled_riesz(config) - 1.0)
    if nrm.min() < 1e-12 * config.host.radius:
        raise DomainError("charge at the host center has no direction")
    u = x / nrm[:, None]
    discrepancy = 0.0
    for axis in cap_axes():
        dots = u @ axis
        for cos_t in _CAP_COSINES:
            emp = float((dots >= cos_t).mean())
            discrepancy = max(discrepancy, abs(emp - (1.0 - cos_t) / 2.0))
    return {
        "shell_fraction": shell_fraction,
        "riesz_gap": riesz_gap,
        "cap_discrepancy": discrepancy,
    }


def config_record(config: ChargeConfig) -> dict:
    """Wire format {eps, R, centers}."""
    return {
        "eps": config.eps,
        "R": config.host.radius,
        "centers": [[float(v) for v in row] for row in config.centers],
    }
