"""Axisymmetric constant-mean-curvature geometry: elliptic-catenary profiles.

One period of the meridian of an unduloid with neck height ``a`` and bulge
height ``c`` is parametrized for t in [-pi/2, 3pi/2] by

    x(t) = a F(t/2 - pi/4, k) + c E(t/2 - pi/4, k),     k = (c^2 - a^2)/c^2,
    z(t) = sqrt( (c^2 - a^2)/2 sin t + (c^2 + a^2)/2 ),

with the bulge z = c at t = pi/2 (located at x = 0) and necks z = a at
t = -pi/2 and t = 3pi/2.  The surface has mean curvature H = 1/(a+c).

The parameter ``k`` is never formed explicitly: its complement
1 - k = a^2/c^2 is exact, and all elliptic calls go through the
complement-parameter entry points to stay accurate when a << c.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import elliptic
from .errors import DegenerateGeometryError, DomainError

__all__ = [
    "CaseKind",
    "UnduloidSection",
    "profile_point",
    "contact_params",
    "contact_incomplete_fe",
    "full_period_area",
    "full_period_volume",
    "cmc_residual",
    "sample_profile",
]

_PI = math.pi
_T_LO = -_PI / 2
_T_HI = 3 * _PI / 2


class CaseKind(str, Enum):
    """Two-charge drop topology; SPLIT marks the two-ball generalized state."""

    CASE1 = "Case1"
    CASE2 = "Case2"
    CASE3 = "Case3"
    SPLIT = "Split"


@dataclass(frozen=True)
class UnduloidSection:
    """A tangency-constrained unduloid section between two charge balls.

    ``a`` and ``c`` are the profile extrema, ``h`` the contact height with
    the sphere of radius ``eps``, ``t0`` the contact parameter.  Always
    0 < a <= h <= eps <= c, with a = h only in the degenerate tangency.
    """

    a: float
    c: float
    h: float
    t0: float
    case_kind: CaseKind
    eps: float

    @property
    def mean_curvature(self) -> float:
        return 1.0 / (self.a + self.c)


def _check_ac(a: float, c: float) -> None:
    if a < 0.0 or a > c or c <= 0.0:
        raise DomainError(f"need 0 <= a <= c with c > 0, got a={a}, c={c}")


def profile_point(a: float, c: float, t: float) -> tuple[float, float]:
    """Point (x, z) on the elliptic catenary at parameter t in [-pi/2, 3pi/2]."""
    _check_ac(a, c)
    if not _T_LO - 1e-12 <= t <= _T_HI + 1e-12:
        raise DomainError(f"t={t} outside [-pi/2, 3pi/2]")
    z = math.sqrt((c * c - a * a) / 2.0 * math.sin(t) + (c * c + a * a) / 2.0)
    u = t / 2.0 - _PI / 4.0
    sign = 1.0 if u >= 0.0 else -1.0
    au = abs(u)
    if a == 0.0:
        return sign * c * math.sin(au), z  # sphere of radius c
    mc = (a * a) / (c * c)
    x = (a * elliptic.ellip_f_from_complement(au, mc)
         + c * elliptic.ellip_e_from_complement(au, mc))
    return sign * x, z


def contact_params(c: float, h: float, eps: float) -> tuple[float, float]:
    """Neck height ``a`` and contact parameter ``t0`` for tangency at height h.

    The profile through (a, c) is C^1-tangent to the sphere of radius ``eps``
    where it reaches height ``h``.
    """
    if not 0.0 < h <= eps < c:
        raise DomainError(f"need 0 < h <= eps < c, got h={h}, eps={eps}, c={c}")
    den = c * eps - h * h
    if den <= 0.0:
        raise DegenerateGeometryError(f"tangency requires c*eps > h^2, got c*eps={c * eps}, h^2={h * h}")
    if h == eps:
        a = eps  # the quotient reduces exactly; avoids ulp overshoot past h
    else:
        a = h * h * (c - eps) / den
        if h < a <= h * (1.0 + 1e-12):
            a = h
    if not 0.0 <= a <= h:
        raise DegenerateGeometryError(f"contact neck a={a} outside [0, h={h}]")
    arg = (2.0 * h * h - (c * c + a * a)) / (c * c - a * a)
    t0 = _PI - math.asin(max(-1.0, min(1.0, arg)))
    return a, t0


def contact_incomplete_fe(a: float, c: float, h: float) -> tuple[float, float]:
    """F(u0, k) and E(u0, k) at the contact amplitude u0 = t0/2 - pi/4.

    Uses the exact trigonometric reductions sin^2 u0 = (c^2-h^2)/(c^2-a^2)
    and 1 - k sin^2 u0 = h^2/c^2, so the Carlson arguments stay accurate in
    the near-degenerate regime a <= h << c.
    """
    if not 0.0 < a <= h <= c:
        raise DomainError(f"need 0 < a <= h <= c, got a={a}, h={h}, c={c}")
    s2 = (c * c - h * h) / (c * c - a * a)
    x = (h * h - a * a) / (c * c - a * a)
    y = (h * h) / (c * c)
    s = math.sqrt(s2)
    rf_v = elliptic.rf(x, y, 1.0)
    rd_v = elliptic.rd(x, y, 1.0)
    f_val = s * rf_v
    e_val = s * (rf_v - ((c * c - h * h) / (3.0 * c * c)) * rd_v)
    return f_val, e_val


def full_period_area(a: float, c: float) -> float:
    """Lateral area of one full unduloid period: 4 pi c (a + c) E(pi/2, k)."""
    _check_ac(a, c)
    if a == 0.0:
        return 4.0 * _PI * c * c  # sphere
    mc = (a * a) / (c * c)
    return 4.0 * _PI * c * (a + c) * elliptic.complete_e_from_complement(mc)


def full_period_volume(a: float, c: float) -> float:
    """Enclosed volume of one full period.

    (2 pi / 3) [ (2(a^2+c^2)c + 3ac^2) E(pi/2, k) - a^2 c F(pi/2, k) ];
    the prefactor is pinned by the sphere limit (0, 1) -> 4 pi / 3.
    """
    _check_ac(a, c)
    if a == 0.0:
        return 4.0 * _PI * c ** 3 / 3.0
    mc = (a * a) / (c * c)
    e_val = elliptic.complete_e_from_complement(mc)
    f_val = elliptic.complete_f_from_complement(mc)
    bracket = (2.0 * (a * a + c * c) * c + 3.0 * a * c * c) * e_val - a * a * c * f_val
    return 2.0 * _PI / 3.0 * bracket


def cmc_residual(a: float, c: float, t: float, dt: float = 1e-4) -> float:
    """|H_numeric - 1/(a+c)| with H from finite differences of the profile.

    Central differences in t give dz/dx and d2z/dx2 through the chain rule;
    the residual is a validation probe, not a production code path.
    """
    _check_ac(a, c)
    if a < c:
        st = math.sin(t)
        if min(abs(st - 1.0), abs(st + 1.0)) < 1e-6:
            raise DomainError(f"t={t} is at a profile extremum")
    if not _T_LO + dt <= t <= _T_HI - dt:
        raise DomainError(f"t={t} too close to the parameter range ends for dt={dt}")
    xm1, zm1 = profile_point(a, c, t - dt)
    x0, z0 = profile_point(a, c, t)
    xp1, zp1 = profile_point(a, c, t + dt)
    xd = (xp1 - xm1) / (2 * dt)
    zd = (zp1 - zm1) / (2 * dt)
    xdd = (xp1 - 2 * x0 + xm1) / (dt * dt)
    zdd = (zp1 - 2 * z0 + zm1) / (dt * dt)
    z_x = zd / xd
    z_xx = (zdd * xd - zd * xdd) / xd ** 3
    w = 1.0 + z_x * z_x
    kappa_meridian = -z_xx / w ** 1.5
    kappa_parallel = 1.0 / (z0 * math.sqrt(w))
    h_numeric = 0.5 * (kappa_meridian + kappa_parallel)
    return abs(h_numeric - 1.0 / (a + c))


def sample_profile(a: float, c: float, n_points: int) -> list[tuple[float, float, float]]:
    """Polyline (t, x, z) over one period, for CSV export and plotting."""
    if n_points < 2:
        raise DomainError(f"n_points={n_points} < 2")
    rows = []
    for i in range(n_points):
        t = _T_LO + (_T_HI - _T_LO) * i / (n_points - 1)
        x, z = profile_point(a, c, t)
        rows.append((t, x, z))
    return rows
