"""Reductions that pin down where the gap ratio is extremal.

Three tools live here:

* ``two_value_config`` builds the normalized tuple (x, ..., x, 1-(n-1)x)
  on which the whole extremal problem is decided.

* the three-variable constraint curve: among positive triples with fixed
  sum sum_c and product prod_c (sum_c^3 > 27*prod_c), the ordered
  solutions form a one-parameter family y = t between the two roots of
  kappa(t) = -8t^3 + 4*sum_c*t^2 - 4*prod_c, where the discriminant of
  the remaining quadratic closes up (x = y at the left root, y = z at
  the right).  The power sum x^r + y^r + z^r is strictly monotone in t,
  which is what forces extremal tuples to take at most two distinct
  values.

* perturbation-limit ratios: for tuples base*(1 + eps*d) the difference
  of two power means of orders a and b behaves like
  (a-b)/2 * eps^2 * mean(d^2) * base, so quotients of such differences
  converge to order ratios as eps -> 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .means import SampleVector
from .solver import Bracket, find_root

__all__ = [
    "ConstraintDegenerateError",
    "CurveParams",
    "CurvePoint",
    "curve_params",
    "curve_point",
    "h_power_sum",
    "h_prime",
    "lemma1_coefficient",
    "lemma1_ratio",
    "two_value_config",
]


class ConstraintDegenerateError(ValueError):
    """The (sum, product) constraint admits no one-parameter curve."""


def two_value_config(x: float, n: int) -> SampleVector:
    """Normalized vector with n-1 coordinates at x and the last at 1-(n-1)x."""
    if not isinstance(n, int) or n < 3:
        raise ValueError(f"n must be an integer >= 3, got {n!r}")
    x = float(x)
    hi = 1.0 / (n - 1)
    if not 0.0 <= x <= hi:
        raise ValueError(f"x must lie in [0, {hi}], got {x}")
    return SampleVector((x,) * (n - 1) + (1.0 - (n - 1) * x,))


@dataclass(frozen=True)
class CurveParams:
    """Constraint curve of positive triples with fixed sum and product.

    t_lo and t_hi are the roots of kappa(t) = -8t^3 + 4*sum_c*t^2 - 4*prod_c
    in (0, sum_c/3) and (sum_c/3, sum_c); the middle coordinate y = t
    ranges over [t_lo, t_hi].
    """

    sum_c: float
    prod_c: float
    t_lo: float
    t_hi: float


@dataclass(frozen=True)
class CurvePoint:
    """Ordered triple (x, y, z) on the curve with y = t as the parameter."""

    t: float
    x: float
    y: float
    z: float


def _kappa(t: float, sum_c: float, prod_c: float) -> float:
    return -8.0 * t**3 + 4.0 * sum_c * t**2 - 4.0 * prod_c


def curve_params(sum_c: float, prod_c: float) -> CurveParams:
    """Locate the curve's parameter interval for the constraint pair.

    Requires sum_c, prod_c > 0 and sum_c^3 > 27*prod_c; equality collapses
    the curve to the all-equal triple and is rejected as degenerate.
    """
    sum_c = float(sum_c)
    prod_c = float(prod_c)
    if not (sum_c > 0.0 and prod_c > 0.0):
        raise ConstraintDegenerateError(
            f"constraints must be positive, got sum={sum_c}, product={prod_c}"
        )
    if not sum_c**3 > 27.0 * prod_c:
        raise ConstraintDegenerateError(
            f"need sum^3 > 27*product for a nondegenerate curve, got "
            f"sum^3={sum_c**3}, 27*product={27.0 * prod_c}"
        )
    tol = 1e-15 * max(1.0, sum_c)
    kappa = lambda t: _kappa(t, sum_c, prod_c)
    t_lo = find_root(kappa, Bracket(0.0, sum_c / 3.0), tol=tol)
    t_hi = find_root(kappa, Bracket(sum_c / 3.0, sum_c), tol=tol)
    return CurveParams(
        sum_c=sum_c, prod_c=prod_c, t_lo=t_lo.x_star, t_hi=t_hi.x_star
    )


def curve_point(t: float, cp: CurveParams) -> CurvePoint:
    """Point (x, y=t, z) on the curve, x <= y <= z.

    The discriminant (sum_c-t)^2 - 4*prod_c/t is clamped to zero when a
    rounding-level negative (within -1e-12) appears at the interval ends;
    anything more negative means t is off the curve.
    """
    t = float(t)
    sum_c, prod_c = cp.sum_c, cp.prod_c
    slack = 1e-12 * max(1.0, sum_c)
    if not (cp.t_lo - slack <= t <= cp.t_hi + slack):
        raise ValueError(
            f"t={t} outside the curve interval [{cp.t_lo}, {cp.t_hi}]"
        )
    disc = (sum_c - t) ** 2 - 4.0 * prod_c / t
    if disc < 0.0:
        if disc < -1e-12:
            raise ConstraintDegenerateError(
                f"negative discriminant {disc} at t={t}"
            )
        disc = 0.0
    root = math.sqrt(disc)
    z = 0.5 * ((sum_c - t) + root)
    # x*z = prod_c/t exactly on the curve; dividing avoids the subtractive
    # cancellation near the x = z corner
    x = prod_c / (t * z)
    return CurvePoint(t=t, x=x, y=t, z=z)


def h_power_sum(t: float, cp: CurveParams, r: float) -> float:
    """Power sum x^r + y^r + z^r along the curve."""
    pt = curve_point(t, cp)
    return pt.x**r + pt.y**r + pt.z**r


def h_prime(t: float, cp: CurveParams, r: float) -> float:
    """d/dt of the power sum along the curve, for t strictly inside.

    Equals r*(y-x)*(z-y)/(y*(x-z)) times the difference of the chord
    slopes of u -> u^r over [y, z] and [x, y]; strictly negative for
    r > 1 and strictly positive for r < 0 and 0 < r < 1.  At the interval
    ends two coordinates merge and the chord slopes degenerate, so those
    calls are rejected.
    """
    t = float(t)
    if not cp.t_lo < t < cp.t_hi:
        raise ValueError(
            f"h_prime needs t strictly inside ({cp.t_lo}, {cp.t_hi}), got {t}"
        )
    pt = curve_point(t, cp)
    x, y, z = pt.x, pt.y, pt.z
    if x == y or y == z:
        raise ValueError(f"coordinates merge at t={t}; h_prime is 0/0 there")
    chord_hi = (z**r - y**r) / (z - y)
    chord_lo = (y**r - x**r) / (y - x)
    return r * (y - x) * (z - y) / (y * (x - z)) * (chord_hi - chord_lo)


def _log_power_mean(order: float, eps: float, dirs: np.ndarray) -> float:
    # log of the order-mean of the perturbed tuple 1 + eps*dirs
    lp1 = np.log1p(eps * dirs)
    if order == 0.0:
        return float(np.mean(lp1))
    esum = float(np.sum(np.expm1(order * lp1)))
    return math.log1p(esum / dirs.size) / order


def _direction_array(direction: Sequence[float], eps: float) -> np.ndarray:
    arr = np.asarray(direction, dtype=float)
    if arr.ndim != 1 or arr.size < 2:
        raise ValueError("direction must be a 1-d sequence with >= 2 entries")
    scale = float(np.max(np.abs(arr)))
    if scale == 0.0:
        raise ValueError("direction must be nonzero")
    if abs(float(arr.sum())) > 1e-12 * scale * arr.size:
        raise ValueError("direction must sum to zero")
    if eps <= 0.0 or float(np.min(1.0 + eps * arr)) <= 0.0:
        raise ValueError("eps must be positive and keep all coordinates positive")
    return arr


def lemma1_ratio(
    base: float,
    direction: Sequence[float],
    eps: float,
    a: float,
    b: float,
    c: float,
    d: float,
) -> float:
    """(P_a - P_b) / (P_c - P_d) on the tuple base*(1 + eps*direction).

    direction must sum to zero; the ratio converges to (a-b)/(c-d) as
    eps -> 0, at first order in eps when the direction's third moment is
    nonzero.  The differences are formed as exp(L_b) * expm1(L_a - L_b)
    from the log means, never by subtracting nearly equal mean values;
    base scales every mean alike and drops out of the quotient.
    """
    a, b, c, d = float(a), float(b), float(c), float(d)
    if c == d:
        raise ValueError("denominator orders must differ")
    if not float(base) > 0.0:
        raise ValueError(f"base must be positive, got {base}")
    arr = _direction_array(direction, float(eps))
    la = _log_power_mean(a, eps, arr)
    lb = _log_power_mean(b, eps, arr)
    lc = _log_power_mean(c, eps, arr)
    ld = _log_power_mean(d, eps, arr)
    den = math.expm1(lc - ld)
    if den == 0.0:
        raise ValueError("denominator mean difference vanished")
    return math.expm1(la - lb) / den * math.exp(lb - ld)


def lemma1_coefficient(
    direction: Sequence[float],
    eps: float,
    a: float,
    b: float,
) -> float:
    """Normalized second-order coefficient 2n*(P_a - P_b)/(eps^2 * sum d^2).

    Evaluated on the unit-base tuple 1 + eps*direction with a zero-sum
    direction; the limit as eps -> 0 is a - b.
    """
    a, b = float(a), float(b)
    arr = _direction_array(direction, float(eps))
    ss = float(np.sum(arr * arr))
    la = _log_power_mean(a, eps, arr)
    lb = _log_power_mean(b, eps, arr)
    diff = math.exp(lb) * math.expm1(la - lb)
    return diff * 2.0 * arr.size / (eps**2 * ss)
