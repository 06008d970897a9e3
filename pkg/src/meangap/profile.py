"""One-variable profiles of the mean gap along the two-value family.

Every extremal tuple of the gap ratio can be normalized to

    (x, x, ..., x, 1 - (n-1)x),   0 <= x <= 1/(n-1),

so the whole n-dimensional problem collapses to scalar functions of x:

    g(x) = geometric mean of the tuple
    p(x) = power mean of order alpha = 1/r of the tuple
    f(x) = (g(x) - 1/n) / (p(x) - 1/n)

together with the curvature-comparison weight W = U * V built on the
coordinate ratio s(x) = x / (1 - (n-1)x).  W - 1 changes sign exactly
where the slope ratio g'/p' turns around, which is what the regime
classification keys on.

Everything is evaluated through log1p/expm1 in the shifted variable
a = n*x - 1, which keeps the removable 0/0 at x = 1/n (where both g and
p touch the arithmetic mean 1/n to second order) numerically quiet.
All functions accept a scalar or a 1-d numpy array.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .means import ExponentPair

__all__ = [
    "CENTER_BAND",
    "ProfileParams",
    "ProfilePoint",
    "U_func",
    "V_func",
    "W_func",
    "W_prime",
    "f_profile",
    "f_prime",
    "g_profile",
    "g_prime",
    "g_second",
    "p_profile",
    "p_prime",
    "p_second",
    "profile_point",
    "s_map",
]

# half-width of the removable-singularity band in a = n*x - 1;
# corresponds to |x - 1/n| <= 1e-9/n
CENTER_BAND = 1e-9


@dataclass(frozen=True)
class ProfileParams:
    n: int
    e: ExponentPair

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 3:
            raise ValueError(f"n must be an integer >= 3, got {self.n!r}")

    @property
    def x_hi(self) -> float:
        return 1.0 / (self.n - 1)

    @property
    def x_center(self) -> float:
        return 1.0 / self.n

    @classmethod
    def from_r(cls, n: int, r: float) -> "ProfileParams":
        return cls(n=n, e=ExponentPair.from_r(r))

    @classmethod
    def from_alpha(cls, n: int, alpha: float) -> "ProfileParams":
        return cls(n=n, e=ExponentPair.from_alpha(alpha))


def _prep(x, params: ProfileParams):
    """Validate domain, return (values, at_lo, at_hi, center, interior, scalar)."""
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr).copy()
    hi = params.x_hi
    if np.any(arr < 0.0) or np.any(arr > hi) or not np.all(np.isfinite(arr)):
        raise ValueError(f"x must lie in [0, {hi}]")
    at_lo = arr == 0.0
    at_hi = arr == hi
    a = params.n * arr - 1.0
    center = (np.abs(a) <= CENTER_BAND) & ~at_lo & ~at_hi
    interior = ~(at_lo | at_hi)
    return arr, a, at_lo, at_hi, center, interior, scalar


def _ret(out: np.ndarray, scalar: bool):
    return float(out[0]) if scalar else out


def _log_ng(a: np.ndarray, n: int) -> np.ndarray:
    # log(n * g) on the open interval, exact 0 at a = 0
    return ((n - 1) * np.log1p(a) + np.log1p(-(n - 1) * a)) / n


def _e_sum(a: np.ndarray, n: int, alpha: float) -> np.ndarray:
    # (n-1)*(1+a)^alpha + (1-(n-1)a)^alpha - n, the shifted power sum
    return (n - 1) * np.expm1(alpha * np.log1p(a)) + np.expm1(
        alpha * np.log1p(-(n - 1) * a)
    )


def _log_np(a: np.ndarray, n: int, alpha: float) -> np.ndarray:
    # log(n * p) on the open interval, exact 0 at a = 0
    return np.log1p(_e_sum(a, n, alpha) / n) / alpha


def g_profile(x, params: ProfileParams):
    """Geometric mean of the two-value tuple; 0 at both endpoints."""
    arr, a, at_lo, at_hi, _, interior, scalar = _prep(x, params)
    n = params.n
    out = np.zeros_like(arr)
    ai = a[interior]
    out[interior] = np.exp(_log_ng(ai, n)) / n
    return _ret(out, scalar)


def p_profile(x, params: ProfileParams):
    """Power mean of the two-value tuple.

    Endpoint values are taken in closed form: n^-r and (n-1)^(r-1)/n^r for
    r > 0, and 0 at both ends for r < 0 (a zero coordinate collapses a
    negative-order mean).
    """
    arr, a, at_lo, at_hi, _, interior, scalar = _prep(x, params)
    n = params.n
    r = params.e.r
    alpha = params.e.alpha
    out = np.empty_like(arr)
    if r > 0:
        out[at_lo] = n ** (-r)
        out[at_hi] = (n - 1) ** (r - 1) / n**r
    else:
        out[at_lo | at_hi] = 0.0
    ai = a[interior]
    with np.errstate(over="ignore"):
        out[interior] = np.exp(_log_np(ai, n, alpha)) / n
    return _ret(out, scalar)


def f_profile(x, params: ProfileParams):
    """Gap-ratio profile f = (g - 1/n) / (p - 1/n).

    The 0/0 at x = 1/n is removable; inside the band |x - 1/n| <= 1e-9/n
    the branch value r/(r-1) is returned.  Endpoints take their closed
    forms: 1 at both ends for r < 0, and n^(r-1)/(n^(r-1)-1),
    n^(r-1)/(n^(r-1)-(n-1)^(r-1)) for r > 0.
    """
    arr, a, at_lo, at_hi, center, interior, scalar = _prep(x, params)
    n = params.n
    r = params.e.r
    alpha = params.e.alpha
    out = np.empty_like(arr)
    if r > 0:
        c = n ** (r - 1.0)
        out[at_lo] = c / (c - 1.0)
        out[at_hi] = c / (c - (n - 1) ** (r - 1.0))
    else:
        out[at_lo | at_hi] = 1.0
    out[center] = r / (r - 1.0)
    inner = interior & ~center
    ai = a[inner]
    with np.errstate(over="ignore"):
        out[inner] = np.expm1(_log_ng(ai, n)) / np.expm1(_log_np(ai, n, alpha))
    return _ret(out, scalar)


def g_prime(x, params: ProfileParams):
    """d/dx of g; +inf at x = 0 and -inf at x = 1/(n-1)."""
    arr, a, at_lo, at_hi, _, interior, scalar = _prep(x, params)
    n = params.n
    out = np.empty_like(arr)
    out[at_lo] = math.inf
    out[at_hi] = -math.inf
    ai = a[interior]
    g = np.exp(_log_ng(ai, n)) / n
    out[interior] = -n * (n - 1) * ai * g / ((1.0 + ai) * (1.0 - (n - 1) * ai))
    return _ret(out, scalar)


def p_prime(x, params: ProfileParams):
    """d/dx of p.

    Finite at the endpoints for r < 1 and infinite for r > 1:
        r < 0:      ((n-1)/n)^r at 0,        -(n-1)/n^r at 1/(n-1)
        0 < r < 1:  -(n-1)/n^r at 0,         ((n-1)/n)^r at 1/(n-1)
        r > 1:      +inf at 0,               -inf at 1/(n-1)
    """
    arr, a, at_lo, at_hi, _, interior, scalar = _prep(x, params)
    n = params.n
    r = params.e.r
    alpha = params.e.alpha
    out = np.empty_like(arr)
    if r > 1:
        out[at_lo] = math.inf
        out[at_hi] = -math.inf
    elif r > 0:
        out[at_lo] = -(n - 1) / n**r
        out[at_hi] = ((n - 1) / n) ** r
    else:
        out[at_lo] = ((n - 1) / n) ** r
        out[at_hi] = -(n - 1) / n**r
    ai = a[interior]
    with np.errstate(over="ignore"):
        esum = _e_sum(ai, n, alpha)
        diff = np.expm1((alpha - 1.0) * np.log1p(ai)) - np.expm1(
            (alpha - 1.0) * np.log1p(-(n - 1) * ai)
        )
        p = np.exp(_log_np(ai, n, alpha)) / n
        out[interior] = n * (n - 1) * diff * p / (n + esum)
    return _ret(out, scalar)


def g_second(x, params: ProfileParams):
    """d2/dx2 of g; strictly negative, -inf at both endpoints."""
    arr, a, at_lo, at_hi, _, interior, scalar = _prep(x, params)
    n = params.n
    out = np.empty_like(arr)
    out[at_lo | at_hi] = -math.inf
    ai = a[interior]
    g = np.exp(_log_ng(ai, n)) / n
    denom = ((1.0 + ai) * (1.0 - (n - 1) * ai)) ** 2
    out[interior] = -(n**2) * (n - 1) * g / denom
    return _ret(out, scalar)


def _p_second_endpoint(n: int, r: float, alpha: float, at_lo: bool) -> float:
    # the vanishing coordinate enters with exponent alpha-2 (r>0) or
    # -(alpha+1) (r<0); negative exponent blows up, positive flattens out
    sign = -1.0 if (r > 1.0 or r < 0.0) else 1.0
    expo = (alpha - 2.0) if r > 0 else -(alpha + 1.0)
    if expo < 0.0:
        return sign * math.inf
    if expo > 0.0:
        return sign * 0.0
    if alpha == 2.0:
        return (n - 1) / math.sqrt(n) if at_lo else (n - 1) ** 2.5 / math.sqrt(n)
    # alpha == -1 exactly
    return -2.0 * n / (n - 1) ** 2 if at_lo else -2.0 * n * (n - 1) ** 4


def p_second(x, params: ProfileParams):
    """d2/dx2 of p; its sign is -sign(r/(r-1)).

    Endpoint calls return the one-sided limits: signed infinities where
    the profile curls up, signed zeros where it flattens, and finite
    values exactly at alpha = 2 and alpha = -1.
    """
    arr, a, at_lo, at_hi, _, interior, scalar = _prep(x, params)
    n = params.n
    r = params.e.r
    alpha = params.e.alpha
    out = np.empty_like(arr)
    out[at_lo] = _p_second_endpoint(n, r, alpha, True)
    out[at_hi] = _p_second_endpoint(n, r, alpha, False)
    ai = a[interior]
    with np.errstate(over="ignore"):
        esum = _e_sum(ai, n, alpha)
        p = np.exp(_log_np(ai, n, alpha)) / n
        pw = np.exp((alpha - 2.0) * (np.log1p(ai) + np.log1p(-(n - 1) * ai)))
        out[interior] = (
            -(n**4) * (n - 1) * (r - 1.0) * pw * p / (r * (n + esum) ** 2)
        )
    return _ret(out, scalar)


def _fprime_endpoint(n: int, r: float, at_lo: bool) -> float:
    # signs of the one-sided limits of f' at the domain endpoints
    if r < 0:
        return -math.inf if at_lo else math.inf
    if r < 1:
        return math.inf if at_lo else -math.inf
    if r < 2 and n < r / (r - 1.0):
        return -math.inf if at_lo else math.inf
    if r <= 2 or n >= r:
        return math.inf
    return math.inf if at_lo else -math.inf


def f_prime(x, params: ProfileParams):
    """d/dx of f via f' = (g'/p' - f) * p' / (p - 1/n).

    Undefined inside the removable band around x = 1/n (the identity
    degenerates to 0/0 there); endpoint calls return the signed infinite
    limits.
    """
    arr, a, at_lo, at_hi, center, interior, scalar = _prep(x, params)
    if np.any(center):
        raise ValueError("f_prime is not defined within 1e-9/n of x = 1/n")
    n = params.n
    r = params.e.r
    alpha = params.e.alpha
    out = np.empty_like(arr)
    out[at_lo] = _fprime_endpoint(n, r, True)
    out[at_hi] = _fprime_endpoint(n, r, False)
    ai = a[interior]
    with np.errstate(over="ignore"):
        lg = _log_ng(ai, n)
        esum = _e_sum(ai, n, alpha)
        lp = np.log1p(esum / n) / alpha
        g = np.exp(lg) / n
        p = np.exp(lp) / n
        gp = -n * (n - 1) * ai * g / ((1.0 + ai) * (1.0 - (n - 1) * ai))
        diff = np.expm1((alpha - 1.0) * np.log1p(ai)) - np.expm1(
            (alpha - 1.0) * np.log1p(-(n - 1) * ai)
        )
        pp = n * (n - 1) * diff * p / (n + esum)
        f = np.expm1(lg) / np.expm1(lp)
        pm = np.expm1(lp) / n  # p - 1/n without cancellation
        out[interior] = (gp / pp - f) * pp / pm
    return _ret(out, scalar)


def s_map(x, params: ProfileParams):
    """Coordinate ratio s = x / (1 - (n-1)x); 0 at x=0, 1 at x=1/n, +inf at the top."""
    arr, a, at_lo, at_hi, _, interior, scalar = _prep(x, params)
    n = params.n
    out = np.empty_like(arr)
    out[at_lo] = 0.0
    out[at_hi] = math.inf
    ai = a[interior]
    out[interior] = (1.0 + ai) / (1.0 - (n - 1) * ai)
    return _ret(out, scalar)


def _log_s(a: np.ndarray, n: int) -> np.ndarray:
    return np.log1p(a) - np.log1p(-(n - 1) * a)


def U_func(x, params: ProfileParams):
    """Chord slope of t -> t^(1-1/r) between s(x) and 1, normalized to U(1/n) = 1."""
    arr, a, at_lo, at_hi, center, interior, scalar = _prep(x, params)
    n = params.n
    alpha = params.e.alpha
    c1 = 1.0 - alpha
    out = np.empty_like(arr)
    out[at_lo] = 1.0 / c1 if alpha < 1 else math.inf
    out[at_hi] = math.inf if alpha < 0 else 0.0
    out[center] = 1.0
    inner = interior & ~center
    ai = a[inner]
    with np.errstate(over="ignore"):
        sm1 = n * ai / (1.0 - (n - 1) * ai)
        out[inner] = np.expm1(c1 * _log_s(ai, n)) / (c1 * sm1)
    return _ret(out, scalar)


def V_func(x, params: ProfileParams):
    """Shifted power sum V = ((n-1) s^(1/r) + 1)/n; strictly increasing for r > 0."""
    arr, a, at_lo, at_hi, center, interior, scalar = _prep(x, params)
    n = params.n
    alpha = params.e.alpha
    out = np.empty_like(arr)
    out[at_lo] = 1.0 / n if alpha > 0 else math.inf
    out[at_hi] = math.inf if alpha > 0 else 1.0 / n
    out[center] = 1.0
    inner = interior & ~center
    ai = a[inner]
    with np.errstate(over="ignore"):
        out[inner] = ((n - 1) * np.exp(alpha * _log_s(ai, n)) + 1.0) / n
    return _ret(out, scalar)


def W_func(x, params: ProfileParams):
    """Turning weight W = U * V.  W - 1 flags where g'/p' changes direction.

    Endpoint limits: r/(n(r-1)) and r(n-1)/(n(r-1)) for r > 1, +inf for
    r < 1.  W(1/n) = 1 always.
    """
    arr, a, at_lo, at_hi, center, interior, scalar = _prep(x, params)
    n = params.n
    r = params.e.r
    alpha = params.e.alpha
    out = np.empty_like(arr)
    if r > 1:
        out[at_lo] = r / (n * (r - 1.0))
        out[at_hi] = r * (n - 1) / (n * (r - 1.0))
    else:
        out[at_lo | at_hi] = math.inf
    out[center] = 1.0
    inner = interior & ~center
    ai = a[inner]
    with np.errstate(over="ignore"):
        lns = _log_s(ai, n)
        sm1 = n * ai / (1.0 - (n - 1) * ai)
        u = np.expm1((1.0 - alpha) * lns) / ((1.0 - alpha) * sm1)
        v = ((n - 1) * np.exp(alpha * lns) + 1.0) / n
        out[inner] = u * v
    return _ret(out, scalar)


def W_prime(x, params: ProfileParams):
    """d/dx of W on the open interval.

    The closed form has a double zero against a double pole at x = 1/n;
    inside the removable band the branch value n(n-2)/(2r) is returned.
    Written as a combination of expm1 terms whose linear parts cancel
    analytically, so the evaluation stays accurate near the center.
    """
    arr, a, at_lo, at_hi, center, interior, scalar = _prep(x, params)
    if np.any(at_lo | at_hi):
        raise ValueError("W_prime is defined on the open interval only")
    n = params.n
    r = params.e.r
    alpha = params.e.alpha
    out = np.empty_like(arr)
    out[center] = n * (n - 2) / (2.0 * r)
    inner = interior & ~center
    ai = a[inner]
    with np.errstate(over="ignore"):
        lns = _log_s(ai, n)
        num = (
            (n - 1) * np.expm1((alpha - 1.0) * lns)
            - np.expm1((1.0 - alpha) * lns)
            + (1.0 - r) * np.expm1(-alpha * lns)
            + (n - 1) * (r - 1.0) * np.expm1(alpha * lns)
        )
        out[inner] = num / ((r - 1.0) * n * ai**2)
    return _ret(out, scalar)


@dataclass(frozen=True)
class ProfilePoint:
    """Snapshot of every profile quantity at one x.

    Derivative fields carry signed infinities at the domain endpoints.
    Wp is nan at the exact endpoints (the limit diverges with a
    regime-dependent sign that is not pinned down here) and f itself,
    not recorded per-field, stays available through f_profile.
    """

    x: float
    g: float
    p: float
    f: float
    gp: float
    pp: float
    gpp: float
    ppp: float
    s: float
    U: float
    V: float
    W: float
    Wp: float


def profile_point(x: float, params: ProfileParams) -> ProfilePoint:
    """Evaluate all profile quantities at a single x in [0, 1/(n-1)]."""
    xf = float(x)
    boundary = xf == 0.0 or xf == params.x_hi
    return ProfilePoint(
        x=xf,
        g=g_profile(xf, params),
        p=p_profile(xf, params),
        f=f_profile(xf, params),
        gp=g_prime(xf, params),
        pp=p_prime(xf, params),
        gpp=g_second(xf, params),
        ppp=p_second(xf, params),
        s=s_map(xf, params),
        U=U_func(xf, params),
        V=V_func(xf, params),
        W=W_func(xf, params),
        Wp=math.nan if boundary else W_prime(xf, params),
    )
