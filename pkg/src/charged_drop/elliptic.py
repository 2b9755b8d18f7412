"""Incomplete elliptic integrals of the first and second kind.

Conventions follow the geometry code in this package: the second argument
``k`` multiplies ``sin^2(theta)`` directly (the "parameter" convention, often
written ``m`` elsewhere),

    F(u, k) = integral_0^u (1 - k sin^2 t)^(-1/2) dt
    E(u, k) = integral_0^u (1 - k sin^2 t)^(+1/2) dt

Evaluation goes through Carlson's symmetric forms R_F and R_D with the
standard duplication algorithm, which is accurate to a few ulp over the whole
range needed here, including k -> 1.

Near-degenerate geometries produce k extremely close to 1 while the
complement 1 - k is known analytically (for unduloids, 1 - k = a^2/c^2).
Forming k = 1 - mc and then 1 - k*sin^2(u) in double precision would destroy
that information, so the ``*_from_complement`` entry points accept 1 - k
directly and build the Carlson arguments without cancellation.
"""

from __future__ import annotations

import math

from .errors import DomainError

__all__ = [
    "rf",
    "rd",
    "ellip_f",
    "ellip_e",
    "ellip_f_from_complement",
    "ellip_e_from_complement",
    "complete_f_from_complement",
    "complete_e_from_complement",
    "expansion_value",
    "EXPANSIONS",
]

_REL_ERR = 1.0e-16
_HALF_PI = math.pi / 2.0


def rf(x: float, y: float, z: float) -> float:
    """Carlson symmetric integral R_F(x, y, z).

    Arguments must be nonnegative with at most one of them zero.
    """
    if x < 0.0 or y < 0.0 or z < 0.0 or (x + y) == 0.0 or (y + z) == 0.0 or (x + z) == 0.0:
        raise DomainError(f"rf requires nonnegative args, at most one zero: {(x, y, z)}")
    xn, yn, zn = x, y, z
    An = (x + y + z) / 3.0
    A0 = An
    Q = (3.0 * _REL_ERR) ** (-1.0 / 6.0) * max(abs(A0 - x), abs(A0 - y), abs(A0 - z))
    f = 1.0
    while f * Q > abs(An):
        sx, sy, sz = math.sqrt(xn), math.sqrt(yn), math.sqrt(zn)
        lam = sx * sy + sx * sz + sy * sz
        xn = 0.25 * (xn + lam)
        yn = 0.25 * (yn + lam)
        zn = 0.25 * (zn + lam)
        An = 0.25 * (An + lam)
        f *= 0.25
    X = (A0 - x) * f / An
    Y = (A0 - y) * f / An
    Z = -X - Y
    E2 = X * Y - Z * Z
    E3 = X * Y * Z
    return (1.0 - E2 / 10.0 + E3 / 14.0 + E2 * E2 / 24.0 - 3.0 * E2 * E3 / 44.0) / math.sqrt(An)


def rd(x: float, y: float, z: float) -> float:
    """Carlson symmetric integral R_D(x, y, z) = R_J(x, y, z, z).

    ``x`` and ``y`` must be nonnegative with at most one zero; ``z`` positive.
    """
    if x < 0.0 or y < 0.0 or z <= 0.0 or (x + y) == 0.0:
        raise DomainError(f"rd requires x,y >= 0 (not both 0) and z > 0: {(x, y, z)}")
    xn, yn, zn = x, y, z
    An = (x + y + 3.0 * z) / 5.0
    A0 = An
    Q = (0.25 * _REL_ERR) ** (-1.0 / 6.0) * max(abs(A0 - x), abs(A0 - y), abs(A0 - z))
    f = 1.0
    acc = 0.0
    while f * Q > abs(An):
        sx, sy, sz = math.sqrt(xn), math.sqrt(yn), math.sqrt(zn)
        lam = sx * sy + sx * sz + sy * sz
        acc += f / (sz * (zn + lam))
        xn = 0.25 * (xn + lam)
        yn = 0.25 * (yn + lam)
        zn = 0.25 * (zn + lam)
        An = 0.25 * (An + lam)
        f *= 0.25
    X = (A0 - x) * f / An
    Y = (A0 - y) * f / An
    Z = -(X + Y) / 3.0
    E2 = X * Y - 6.0 * Z * Z
    E3 = (3.0 * X * Y - 8.0 * Z * Z) * Z
    E4 = 3.0 * (X * Y - Z * Z) * Z * Z
    E5 = X * Y * Z * Z * Z
    series = (1.0 - 3.0 * E2 / 14.0 + E3 / 6.0 + 9.0 * E2 * E2 / 88.0
              - 3.0 * E4 / 22.0 - 9.0 * E2 * E3 / 52.0 + 3.0 * E5 / 26.0)
    return f * An ** (-1.5) * series + 3.0 * acc


def _check_amplitude(u: float) -> None:
    # tiny slack so that u = pi/2 computed in floating point passes
    if not -1e-12 <= u <= _HALF_PI + 1e-12:
        raise DomainError(f"amplitude u={u} outside [0, pi/2]")


def ellip_f(u: float, k: float) -> float:
    """F(u, k) for 0 <= u <= pi/2 and k*sin^2(u) < 1.

    The corner k = 1, u = pi/2 is a logarithmic divergence and is rejected.
    """
    _check_amplitude(u)
    if k < 0.0:
        raise DomainError(f"k={k} < 0 unsupported")
    s = math.sin(u)
    if k * s * s >= 1.0:
        raise DomainError(f"F(u,k) diverges: k*sin^2(u) = {k * s * s} >= 1")
    c2 = math.cos(u) ** 2
    return s * rf(c2, 1.0 - k * s * s, 1.0)


def ellip_e(u: float, k: float) -> float:
    """E(u, k) for 0 <= u <= pi/2 and k <= 1. Finite on the whole closed range."""
    _check_amplitude(u)
    if k > 1.0:
        raise DomainError(f"k={k} > 1")
    if k < 0.0:
        raise DomainError(f"k={k} < 0 unsupported")
    s = math.sin(u)
    if k == 1.0 and 1.0 - s * s == 0.0:
        return 1.0  # E(pi/2, 1) = 1; both Carlson pieces diverge individually
    c2 = math.cos(u) ** 2
    y = 1.0 - k * s * s
    return s * (rf(c2, y, 1.0) - (k / 3.0) * s * s * rd(c2, y, 1.0))


def ellip_f_from_complement(u: float, one_minus_k: float) -> float:
    """F(u, 1 - one_minus_k) with the Carlson argument built from 1 - k directly."""
    _check_amplitude(u)
    if one_minus_k > 1.0:
        raise DomainError(f"1-k={one_minus_k} > 1 means k < 0, unsupported")
    s = math.sin(u)
    c2 = math.cos(u) ** 2
    y = c2 + one_minus_k * s * s
    if y <= 0.0:
        raise DomainError("F diverges at k=1, u=pi/2")
    return s * rf(c2, y, 1.0)


def ellip_e_from_complement(u: float, one_minus_k: float) -> float:
    """E(u, 1 - one_minus_k), complement-parameter entry point."""
    _check_amplitude(u)
    if one_minus_k > 1.0:
        raise DomainError(f"1-k={one_minus_k} > 1 means k < 0, unsupported")
    s = math.sin(u)
    c2 = math.cos(u) ** 2
    y = c2 + one_minus_k * s * s
    if y == 0.0:
        return 1.0
    k = 1.0 - one_minus_k
    return s * (rf(c2, y, 1.0) - (k / 3.0) * s * s * rd(c2, y, 1.0))


def complete_f_from_complement(one_minus_k: float) -> float:
    """F(pi/2, k) from the complement; diverges as -(1/2) log(1-k) near k = 1."""
    if one_minus_k <= 0.0:
        raise DomainError("F(pi/2, 1) diverges")
    if one_minus_k > 1.0:
        raise DomainError(f"1-k={one_minus_k} > 1 means k < 0, unsupported")
    return rf(0.0, one_minus_k, 1.0)


def complete_e_from_complement(one_minus_k: float) -> float:
    """E(pi/2, k) from the complement; E(pi/2, 1) = 1 exactly."""
    if one_minus_k < 0.0:
        raise DomainError(f"k={1.0 - one_minus_k} > 1")
    if one_minus_k > 1.0:
        raise DomainError(f"1-k={one_minus_k} > 1 means k < 0, unsupported")
    if one_minus_k == 0.0:
        return 1.0
    k = 1.0 - one_minus_k
    return rf(0.0, one_minus_k, 1.0) - (k / 3.0) * rd(0.0, one_minus_k, 1.0)


# ---------------------------------------------------------------------------
# Leading-order expansions used as convergence-rate oracles in the tests.
# Only the displayed leading terms are returned; the dropped remainders carry
# unspecified constants, so tests assert boundedness and trends, never exact
# remainder sizes.

EXPANSIONS = ("F_comp", "E_comp", "F_ex", "E_ex", "F_h_big", "E_h_big")

_NEAR_ONE_MIN_K = 0.5
_AWAY_MAX_SIN = 0.99


def expansion_value(which: str, u: float, k: float) -> float:
    """Leading-order value of one of the named elliptic expansions.

    ``u`` is the amplitude angle (ignored by the complete-integral
    expansions ``F_comp``/``E_comp``).  Validity regimes are enforced:
    the near-degenerate family needs k >= 0.5, and ``F_ex``/``E_ex``
    additionally need sin(u) bounded away from 1.
    """
    if which not in EXPANSIONS:
        raise DomainError(f"unknown expansion {which!r}; expected one of {EXPANSIONS}")
    if not _NEAR_ONE_MIN_K <= k <= 1.0:
        raise DomainError(f"expansion {which} valid only for k in [{_NEAR_ONE_MIN_K}, 1], got {k}")
    if which in ("F_comp", "F_h_big"):
        if k == 1.0:
            raise DomainError("F expansion diverges at k = 1")
        return -0.5 * math.log1p(-k)
    if which in ("E_comp", "E_h_big"):
        if k == 1.0:
            return 1.0
        return 1.0 + (k - 1.0) / 4.0 * math.log1p(-k)
    _check_amplitude(u)
    s = math.sin(u)
    if s > _AWAY_MAX_SIN:
        raise DomainError(f"expansion {which} needs sin(u) <= {_AWAY_MAX_SIN}, got {s}")
    if which == "F_ex":
        return math.atanh(s)
    # E_ex
    return s - (k - 1.0) / 2.0 * math.atanh(s)
