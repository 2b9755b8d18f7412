"""Exact minimization of the two-charge drop energy.

For two charges of radius ``eps`` and coupling ``gamma``, the drop boundary
is a single unduloid section tangent to both charge spheres, closed off by
spherical caps.  Three topologies are admissible, indexed by how far the
section extends along the period:

* case 1 - the section stays inside one period (never reaches the neck),
* case 2 - it spans exactly one full period (reaches the neck once),
* case 3 - it continues past both necks (reaches the neck twice).

Each case is a one-parameter family in the contact height ``h``: the neck
height ``a`` follows from tangency, the bulge height ``c`` from the volume
constraint (total volume 4 pi / 3), and the energy is perimeter plus
gamma eps^3 / L with L the charge separation.  The minimizer over all cases
is compared against the split (two-ball) competitor to decide existence.

Double precision localizes the minimum value of the energy to ~1e-14 but,
because the landscape near h* is extremely flat (curvature ~ gamma eps^2),
the *location* h* only to a few percent when eps is small.  An optional
high-precision polish (mpmath) re-localizes h* on the double-precision
bracket; existence decisions never need it.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import mpmath as mp
from scipy.optimize import brentq, minimize_scalar

from . import elliptic
from .errors import BadBracketError, ChargedDropError, DomainError, NoRootError
from .unduloid import CaseKind, UnduloidSection, contact_incomplete_fe, contact_params

__all__ = [
    "EnergyBreakdown",
    "TwoChargeSolution",
    "generalized_energy",
    "solve_c",
    "energy_of_h",
    "minimize",
    "asymptotic_solution",
    "existence_boundary",
    "OutOfWindowWarning",
    "EPS_MAX_DEFAULT",
]

_PI = math.pi

EPS_MAX_DEFAULT = 0.05
H_MIN_FACTOR = 1e-4          # scan lower cutoff h_min = eps * H_MIN_FACTOR
C_BRACKET = (0.5, 1.05)      # bulge-height root bracket; c = 1 - O(eps) in range
VOLUME_RESIDUAL_TOL = 1e-10
SPLIT_TIE_MARGIN = 1e-12     # exists only when beating the split by this relative margin
SCAN_POINTS = 200
WINDOW_C1 = 1.0              # asymptotic window: C1/log(1/eps) < gamma < 8 pi/eps - C
WINDOW_C = 16.0 * _PI

_GEOMETRY_CASES = (CaseKind.CASE1, CaseKind.CASE2, CaseKind.CASE3)


class OutOfWindowWarning(UserWarning):
    """gamma outside the regime where the closed-form asymptotics are valid."""


@dataclass(frozen=True)
class EnergyBreakdown:
    """Perimeter + Coulomb split of a drop energy; total is the exact sum."""

    perimeter: float
    coulomb: float
    total: float

    @classmethod
    def from_parts(cls, perimeter: float, coulomb: float) -> "EnergyBreakdown":
        return cls(perimeter, coulomb, perimeter + coulomb)


@dataclass(frozen=True)
class TwoChargeSolution:
    """Minimizer record for one (eps, gamma) point."""

    eps: float
    gamma: float
    exists: bool
    case_kind: CaseKind
    h_star: float
    c_star: float
    L_star: float
    energy: EnergyBreakdown
    asymptotic: dict
    split_energy: float
    convex_at_min: bool | None = None
    case_minima: dict = field(default_factory=dict, repr=False, compare=False)

    def as_record(self) -> dict:
        """Flat record with the wire-format keys."""
        return {
            "eps": self.eps,
            "gamma": self.gamma,
            "exists": self.exists,
            "case": self.case_kind.value,
            "h_star": self.h_star,
            "c_star": self.c_star,
            "L_star": self.L_star,
            "E_perimeter": self.energy.perimeter,
            "E_coulomb": self.energy.coulomb,
            "E_total": self.energy.total,
            "h_asym": self.asymptotic["h"],
            "L_asym": self.asymptotic["L"],
            "E_asym": self.asymptotic["E"],
        }


def generalized_energy(eps: float) -> float:
    """Energy 4 pi (eps^2 + (1 - eps^3)^(2/3)) of the two-ball split state."""
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps={eps} outside (0, 1)")
    return 4.0 * _PI * (eps * eps + (1.0 - eps ** 3) ** (2.0 / 3.0))


def _case_relations(case_kind: CaseKind, h: float, eps: float, c: float):
    """Shared closed forms: returns (a, scaled_volume, perimeter, L).

    ``scaled_volume`` is the drop volume times 3/(2 pi); the volume
    constraint |Omega| = 4 pi / 3 reads scaled_volume = 2.
    """
    a, _t0 = contact_params(c, h, eps)
    d = math.sqrt(max(eps * eps - h * h, 0.0))
    cross = h * math.sqrt(max((c * c - h * h) * (h * h - a * a), 0.0))
    if case_kind is CaseKind.CASE1:
        f0, e0 = contact_incomplete_fe(a, c, h)
        vol = (2.0 * eps ** 3 - d * (2.0 * eps ** 2 + h * h) + cross
               - a * a * c * f0 + (2.0 * c * (a * a + c * c) + 3.0 * a * c * c) * e0)
        per = 4.0 * _PI * ((a + c) * c * e0 + eps * (eps - d))
        sep = 2.0 * (a * f0 + c * e0 - d)
    elif case_kind is CaseKind.CASE2:
        mc = (a * a) / (c * c)
        fc = elliptic.complete_f_from_complement(mc)
        ec = elliptic.complete_e_from_complement(mc)
        vol = ((2.0 * c * (a * a + c * c) + 3.0 * a * c * c) * ec
               - a * a * c * fc + 2.0 * eps ** 3)
        per = 4.0 * _PI * c * (a + c) * ec + 4.0 * _PI * eps * eps
        sep = 2.0 * a * fc + 2.0 * c * ec
    elif case_kind is CaseKind.CASE3:
        f0, e0 = contact_incomplete_fe(a, c, h)
        mc = (a * a) / (c * c)
        fc = elliptic.complete_f_from_complement(mc)
        ec = elliptic.complete_e_from_complement(mc)
        vol = ((2.0 * c * (a * a + c * c) + 3.0 * a * c * c) * (2.0 * ec - e0)
               - a * a * c * (2.0 * fc - f0)
               - cross + 2.0 * eps ** 3 + d * (2.0 * eps ** 2 + h * h))
        per = (8.0 * _PI * c * (a + c) * ec - 4.0 * _PI * c * (a + c) * e0
               + 4.0 * _PI * eps * (eps + d))
        sep = 2.0 * (d + 2.0 * a * fc + 2.0 * c * ec - a * f0 - c * e0)
    else:
        raise DomainError(f"{case_kind} is not a geometry case")
    return a, vol, per, sep


def solve_c(case_kind: CaseKind, h: float, eps: float) -> float:
    """Bulge height c solving the case's volume constraint, residual <= 1e-10."""
    if not 0.0 < h <= eps:
        raise DomainError(f"need 0 < h <= eps, got h={h}, eps={eps}")
    lo, hi = C_BRACKET

    def resid(c: float) -> float:
        return _case_relations(case_kind, h, eps, c)[1] - 2.0

    r_lo, r_hi = resid(lo), resid(hi)
    if r_lo == 0.0:
        return lo
    if r_hi == 0.0:
        return hi
    if r_lo * r_hi > 0.0:
        raise NoRootError(
            f"{case_kind.value} volume constraint has no sign change on "
            f"[{lo}, {hi}] for h={h}, eps={eps}: residuals ({r_lo:.3e}, {r_hi:.3e})")
    c = brentq(resid, lo, hi, xtol=1e-15, rtol=4 * 2.3e-16)
    r = resid(c)
    if abs(r) > VOLUME_RESIDUAL_TOL:
        raise NoRootError(f"volume residual {r:.3e} above tolerance at c={c}")
    return c


def energy_of_h(case_kind: CaseKind, h: float, eps: float, gamma: float
                ) -> tuple[EnergyBreakdown, UnduloidSection]:
    """Closed-form energy of the case's configuration at contact height h."""
    c = solve_c(case_kind, h, eps)
    a, _vol, per, sep = _case_relations(case_kind, h, eps, c)
    _a, t0 = contact_params(c, h, eps)
    breakdown = EnergyBreakdown.from_parts(per, gamma * eps ** 3 / sep)
    section = UnduloidSection(a=a, c=c, h=h, t0=t0, case_kind=case_kind, eps=eps)
    return breakdown, section


def asymptotic_solution(eps: float, gamma: float, *,
                        window_c1: float = WINDOW_C1,
                        window_c: float = WINDOW_C,
                        warn: bool = True) -> dict:
    """Leading-order h*, L*, E* with the remainder terms dropped."""
    if eps <= 0.0 or gamma <= 0.0:
        raise DomainError(f"need eps, gamma > 0, got {eps}, {gamma}")
    lo = window_c1 / math.log(1.0 / eps)
    hi = 8.0 * _PI / eps - window_c
    if warn and not lo < gamma < hi:
        warnings.warn(
            f"gamma={gamma} outside the asymptotic window ({lo:.4g}, {hi:.4g}) "
            f"for eps={eps}; values computed anyway", OutOfWindowWarning, stacklevel=2)
    log_ge4 = math.log(gamma * eps ** 4)
    return {
        "h": math.sqrt(gamma * eps ** 4 / (8.0 * _PI)),
        "L": 2.0 - 2.0 * eps - gamma * eps ** 3 / (8.0 * _PI) * log_ge4,
        "E": (4.0 * _PI + gamma * eps ** 3 / 2.0 * (1.0 + eps + eps * eps)
              + gamma ** 2 * eps ** 6 / (64.0 * _PI) * log_ge4),
    }


def _scan_h_values(eps: float, gamma: float, n: int) -> list[float]:
    if n < 2:
        raise DomainError(f"scan needs at least 2 points, got {n}")
    h_min = eps * H_MIN_FACTOR
    ratio = (eps / h_min) ** (1.0 / (n - 1))
    hs = [h_min * ratio ** i for i in range(n)]
    hs[-1] = eps
    h_seed = math.sqrt(gamma * eps ** 4 / (8.0 * _PI))
    if h_min < h_seed < eps:
        hs.append(h_seed)
        hs.sort()
    return hs


def _minimize_case(case_kind: CaseKind, eps: float, gamma: float, scan_points: int):
    """Scan + bounded 1-D refinement for one case; None if nowhere solvable."""
    hs = _scan_h_values(eps, gamma, scan_points)
    energies = []
    for h in hs:
        try:
            energies.append(energy_of_h(case_kind, h, eps, gamma)[0].total)
        except ChargedDropError:
            energies.append(math.inf)
    best = min(range(len(hs)), key=lambda i: energies[i])
    if not math.isfinite(energies[best]):
        return None
    lo = hs[max(best - 1, 0)]
    hi = hs[min(best + 1, len(hs) - 1)]

    def objective(h: float) -> float:
        try:
            return energy_of_h(case_kind, h, eps, gamma)[0].total
        except ChargedDropError:
            return math.inf

    if lo < hi:
        res = minimize_scalar(objective, bounds=(lo, hi), method="bounded",
                              options={"xatol": eps * 1e-12, "maxiter": 200})
        h_star, e_star = float(res.x), float(res.fun)
    else:
        h_star, e_star = hs[best], energies[best]
    if energies[best] < e_star:  # refinement must never lose to the scan
        h_star, e_star = hs[best], energies[best]
    return h_star, e_star


# -- high-precision polish ---------------------------------------------------

_POLISH_DPS = 30
_POLISH_GOLDEN_ITERS = 52


def _mp_case_energy(case_kind: CaseKind, h, eps, gamma, c_seed):
    """(energy, c, L) at working mpmath precision; mirrors _case_relations."""
    h, eps, gamma = mp.mpf(h), mp.mpf(eps), mp.mpf(gamma)

    def relations(c):
        a = h * h * (c - eps) / (c * eps - h * h)
        k = (c * c - a * a) / (c * c)
        u0 = mp.asin(mp.sqrt((c * c - h * h) / (c * c - a * a)))
        d = mp.sqrt(eps * eps - h * h)
        cross = h * mp.sqrt((c * c - h * h) * (h * h - a * a))
        if case_kind is CaseKind.CASE1:
            f0, e0 = mp.ellipf(u0, k), mp.ellipe(u0, k)
            vol = (2 * eps ** 3 - d * (2 * eps ** 2 + h * h) + cross
                   - a * a * c * f0 + (2 * c * (a * a + c * c) + 3 * a * c * c) * e0)
            per = 4 * mp.pi * ((a + c) * c * e0 + eps * (eps - d))
            sep = 2 * (a * f0 + c * e0 - d)
        elif case_kind is CaseKind.CASE2:
            fc, ec = mp.ellipf(mp.pi / 2, k), mp.ellipe(mp.pi / 2, k)
            vol = ((2 * c * (a * a + c * c) + 3 * a * c * c) * ec
                   - a * a * c * fc + 2 * eps ** 3)
            per = 4 * mp.pi * c * (a + c) * ec + 4 * mp.pi * eps * eps
            sep = 2 * a * fc + 2 * c * ec
        else:
            f0, e0 = mp.ellipf(u0, k), mp.ellipe(u0, k)
            fc, ec = mp.ellipf(mp.pi / 2, k), mp.ellipe(mp.pi / 2, k)
            vol = ((2 * c * (a * a + c * c) + 3 * a * c * c) * (2 * ec - e0)
                   - a * a * c * (2 * fc - f0)
                   - cross + 2 * eps ** 3 + d * (2 * eps ** 2 + h * h))
            per = (8 * mp.pi * c * (a + c) * ec - 4 * mp.pi * c * (a + c) * e0
                   + 4 * mp.pi * eps * (eps + d))
            sep = 2 * (d + 2 * a * fc + 2 * c * ec - a * f0 - c * e0)
        return vol - 2, per, sep

    c = mp.findroot(lambda c: relations(c)[0], mp.mpf(c_seed),
                    tol=mp.mpf(10) ** (-(_POLISH_DPS - 6)))
    _, per, sep = relations(c)
    return per + gamma * eps ** 3 / sep, c, sep


def _polish_minimum(case_kind: CaseKind, eps: float, gamma: float,
                    h0: float, c0: float):
    """Golden-section re-localization of h* in mpmath around the double result."""
    with mp.workdps(_POLISH_DPS):
        invphi = (mp.sqrt(5) - 1) / 2
        a_br, b_br = mp.mpf(h0) / 2, min(mp.mpf(h0) * 2, mp.mpf(eps))
        cache = {}

        def f(hv):
            if hv not in cache:
                cache[hv] = _mp_case_energy(case_kind, hv, eps, gamma, c0)
            return cache[hv][0]

        x1 = b_br - invphi * (b_br - a_br)
        x2 = a_br + invphi * (b_br - a_br)
        f1, f2 = f(x1), f(x2)
        for _ in range(_POLISH_GOLDEN_ITERS):
            if f1 < f2:
                b_br, x2, f2 = x2, x1, f1
                x1 = b_br - invphi * (b_br - a_br)
                f1 = f(x1)
            else:
                a_br, x1, f1 = x1, x2, f2
                x2 = a_br + invphi * (b_br - a_br)
                f2 = f(x2)
        h_star = (a_br + b_br) / 2
        e_star, c_star, sep = _mp_case_energy(case_kind, h_star, eps, gamma, c0)
        # strict local convexity via a symmetric second difference
        delta = h_star * mp.mpf("1e-3")
        e_m = _mp_case_energy(case_kind, h_star - delta, eps, gamma, c0)[0]
        e_p = _mp_case_energy(case_kind, h_star + delta, eps, gamma, c0)[0]
        convex = (e_m - 2 * e_star + e_p) > 0
        return float(h_star), float(e_star), float(c_star), float(sep), bool(convex)


def minimize(eps: float, gamma: float, *, eps_max: float = EPS_MAX_DEFAULT,
             polish: bool = True, scan_points: int = SCAN_POINTS) -> TwoChargeSolution:
    """Minimize the two-charge energy over all cases and decide existence.

    ``polish=True`` re-localizes h* of the winning case at high precision;
    existence decisions and energy values do not depend on it.
    """
    if not 0.0 < eps <= eps_max:
        raise DomainError(f"eps={eps} outside (0, {eps_max}]")
    if gamma <= 0.0:
        raise DomainError(f"gamma={gamma} must be positive")

    case_minima: dict[CaseKind, tuple[float, float]] = {}
    for case_kind in _GEOMETRY_CASES:
        found = _minimize_case(case_kind, eps, gamma, scan_points)
        if found is not None:
            case_minima[case_kind] = found
    if not case_minima:
        raise NoRootError(f"no case admits a solvable geometry at eps={eps}, gamma={gamma}")

    winner = min(case_minima, key=lambda kind: case_minima[kind][1])
    h_star, e_star = case_minima[winner]
    split = generalized_energy(eps)
    exists = e_star < split - SPLIT_TIE_MARGIN * abs(split)

    convex = None
    if polish:
        c_seed = solve_c(winner, h_star, eps)
        h_star, e_star, c_star, sep, convex = _polish_minimum(
            winner, eps, gamma, h_star, c_seed)
        breakdown = EnergyBreakdown.from_parts(e_star - gamma * eps ** 3 / sep,
                                               gamma * eps ** 3 / sep)
        exists = e_star < split - SPLIT_TIE_MARGIN * abs(split)
    else:
        breakdown, section = energy_of_h(winner, h_star, eps, gamma)
        c_star = section.c
        sep = gamma * eps ** 3 / breakdown.coulomb

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OutOfWindowWarning)
        asym = asymptotic_solution(eps, gamma)

    return TwoChargeSolution(
        eps=eps, gamma=gamma,
        exists=exists,
        case_kind=winner if exists else CaseKind.SPLIT,
        h_star=h_star, c_star=c_star, L_star=sep,
        energy=breakdown,
        asymptotic=asym,
        split_energy=split,
        convex_at_min=convex,
        case_minima={k.value: v for k, v in case_minima.items()},
    )


def existence_boundary(eps: float, gamma_bracket: tuple[float, float], *,
                       rel_width: float = 1e-6,
                       scan_points: int = SCAN_POINTS) -> float:
    """Bisect gamma between an existing and a non-existing endpoint."""
    lo, hi = gamma_bracket
    if not 0.0 < lo < hi:
        raise BadBracketError(f"need 0 < lo < hi, got ({lo}, {hi})")
    if not minimize(eps, lo, polish=False, scan_points=scan_points).exists:
        raise BadBracketError(f"minimizer must exist at gamma={lo}")
    if minimize(eps, hi, polish=False, scan_points=scan_points).exists:
        raise BadBracketError(f"minimizer must not exist at gamma={hi}")
    while (hi - lo) > rel_width * hi:
        mid = 0.5 * (lo + hi)
        if minimize(eps, mid, polish=False, scan_points=scan_points).exists:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
