"""Statistical utilities for the experiment harness.

Everything here is self-contained: the Shapiro-Wilk test is Royston's
AS R94 approximation, normal quantiles come from the standard library's
rational approximation (Wichura's AS 241, ~1e-15 accuracy), and the
chi-square quantile is Wilson-Hilferty refined by one Newton step on
the regularized incomplete gamma (absolute accuracy ~1e-4 for moderate
df and p in (0.001, 0.999), verified against an independent oracle in
the test suite).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist
from typing import Callable, Sequence

import numpy as np

from .errors import DegenerateCovarianceError, UndefinedMapeError

__all__ = [
    "SampleSummary",
    "summary",
    "shapiro_wilk",
    "mahalanobis_sq",
    "normal_quantile",
    "chi2_quantile",
    "qq_points",
]

_NORMAL = NormalDist()


@dataclass(frozen=True)
class SampleSummary:
    """Location/error summary of a sample against reference values.

    ``mape`` is in percent and is None when not requested.
    """

    n: int
    mean: float
    sd: float
    mae: float
    mape: float | None


def summary(values, references, mape: bool = True) -> SampleSummary:
    """Mean absolute (and percentage) error of ``values`` vs ``references``."""
    v = np.asarray(values, dtype=np.float64)
    r = np.asarray(references, dtype=np.float64)
    if v.ndim != 1 or v.shape != r.shape or v.size < 1:
        raise ValueError("values and references must be equal-length 1-D, size >= 1")
    abs_err = np.abs(v - r)
    mape_value = None
    if mape:
        if np.any(r == 0.0):
            raise UndefinedMapeError("MAPE undefined: a reference value is zero")
        mape_value = float(np.mean(abs_err / np.abs(r)) * 100.0)
    sd = float(np.std(v, ddof=1)) if v.size > 1 else 0.0
    return SampleSummary(int(v.size), float(v.mean()), sd, float(abs_err.mean()), mape_value)


# ---------------------------------------------------------------------------
# Shapiro-Wilk, Algorithm AS R94 (Royston 1995, Appl. Statist. 44)

# polynomial coefficients, highest power first, for np.polyval
_C1 = [-2.706056, 4.434685, -2.071190, -0.147981, 0.221157, 0.0]
_C2 = [-3.582633, 5.682633, -1.752461, -0.293762, 0.042981, 0.0]
_SMALL_MU = [-0.0006714, 0.025054, -0.39978, 0.5440]
_SMALL_LOGSD = [-0.0020322, 0.062767, -0.77857, 1.3822]
_BIG_MU = [0.0038915, -0.083751, -0.31082, -1.5861]
_BIG_LOGSD = [0.0030302, -0.082676, -0.4803]


def shapiro_wilk(sample: Sequence[float]) -> tuple[float, float]:
    """Shapiro-Wilk normality test.

    Args:
        sample: 3 to 5000 observations, not all equal.

    Returns:
        (W, p) where small p casts doubt on normality.
    """
    x = np.sort(np.asarray(sample, dtype=np.float64))
    n = x.size
    if not 3 <= n <= 5000:
        raise ValueError(f"sample size must be in [3, 5000], got {n}")
    if x[0] == x[-1]:
        raise ValueError("sample is constant; W is undefined")

    # expected normal order statistics (Blom scores) and the weights
    m = np.array([_NORMAL.inv_cdf((i - 0.375) / (n + 0.25)) for i in range(1, n + 1)])
    ssq = float(m @ m)
    rsn = 1.0 / math.sqrt(n)
    a = np.empty(n)
    if n == 3:
        a[0], a[2] = -math.sqrt(0.5), math.sqrt(0.5)
        a[1] = 0.0
    else:
        an = np.polyval(_C1, rsn) + m[-1] / math.sqrt(ssq)
        if n > 5:
            an1 = np.polyval(_C2, rsn) + m[-2] / math.sqrt(ssq)
            fac = math.sqrt(
                (ssq - 2.0 * m[-1] ** 2 - 2.0 * m[-2] ** 2)
                / (1.0 - 2.0 * an**2 - 2.0 * an1**2)
            )
            a[2 : n - 2] = m[2 : n - 2] / fac
            a[-2], a[-1] = an1, an
            a[1], a[0] = -an1, -an
        else:
            fac = math.sqrt((ssq - 2.0 * m[-1] ** 2) / (1.0 - 2.0 * an**2))
            a[1 : n - 1] = m[1 : n - 1] / fac
            a[-1] = an
            a[0] = -an

    centred = x - x.mean()
    w = float(a @ x) ** 2 / float(centred @ centred)
    w = min(w, 1.0)

    if n == 3:
        p = 6.0 / math.pi * (math.asin(math.sqrt(w)) - math.asin(math.sqrt(0.75)))
        return w, min(max(p, 0.0), 1.0)
    if n <= 11:
        gamma = -2.273 + 0.459 * n
        shifted = gamma - math.log1p(-w)
        if shifted <= 0.0:  # w below the transform's range: overwhelming rejection
            return w, 0.0
        y = -math.log(shifted)
        mu = float(np.polyval(_SMALL_MU, n))
        sd = math.exp(float(np.polyval(_SMALL_LOGSD, n)))
    else:
        logn = math.log(n)
        y = math.log1p(-w)
        mu = float(np.polyval(_BIG_MU, logn))
        sd = math.exp(float(np.polyval(_BIG_LOGSD, logn)))
    z = (y - mu) / sd
    return w, min(max(1.0 - _NORMAL.cdf(z), 0.0), 1.0)


def mahalanobis_sq(samples, center) -> np.ndarray:
    """Squared Mahalanobis distance of each row of ``samples`` from ``center``,
    scaled by the sample covariance of ``samples``."""
    x = np.asarray(samples, dtype=np.float64)
    c = np.asarray(center, dtype=np.float64)
    if x.ndim != 2 or c.shape != (x.shape[1],):
        raise ValueError("samples must be n-by-k and center length k")
    n, k = x.shape
    if n <= k:
        raise ValueError(f"need more samples than dimensions, got n={n}, k={k}")
    cov = np.cov(x, rowvar=False, ddof=1).reshape(k, k)
    try:
        np.linalg.cholesky(cov)
        solved = np.linalg.solve(cov, (x - c).T)
    except np.linalg.LinAlgError as exc:
        raise DegenerateCovarianceError("sample covariance is singular") from exc
    return np.einsum("ij,ji->i", x - c, solved)


def normal_quantile(p: float) -> float:
    """Standard normal quantile (inverse CDF)."""
    if not (0.0 < p < 1.0):
        raise ValueError(f"p must be strictly inside (0, 1), got {p!r}")
    return _NORMAL.inv_cdf(p)


def _regularized_gamma_p(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x), series/continued fraction."""
    if x < 0.0 or a <= 0.0:
        raise ValueError("require x >= 0 and a > 0")
    if x == 0.0:
        return 0.0
    log_prefactor = -x + a * math.log(x) - math.lgamma(a)
    if x < a + 1.0:
        term = 1.0 / a
        total = term
        denom = a
        for _ in range(500):
            denom += 1.0
            term *= x / denom
            total += term
            if abs(term) < abs(total) * 1e-16:
                break
        return total * math.exp(log_prefactor)
    # modified Lentz continued fraction for Q(a, x)
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 500):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return 1.0 - math.exp(log_prefactor) * h


def chi2_quantile(df: float, p: float) -> float:
    """Chi-square quantile via safeguarded Newton on the gamma CDF.

    The Wilson-Hilferty cube seeds the iteration; a maintained bracket
    catches the cases (small df, far tails) where that start is poor and
    plain Newton would escape or stall.
    """
    if not (math.isfinite(df) and df > 0):
        raise ValueError(f"df must be positive, got {df!r}")
    if not (0.0 < p < 1.0):
        raise ValueError(f"p must be strictly inside (0, 1), got {p!r}")
    a = 0.5 * df
    log_norm = -a * math.log(2.0) - math.lgamma(a)

    lo, hi = 0.0, df
    while _regularized_gamma_p(a, 0.5 * hi) < p:
        lo = hi
        hi *= 2.0

    f = 2.0 / (9.0 * df)
    x = df * (1.0 - f + normal_quantile(p) * math.sqrt(f)) ** 3
    if not lo < x < hi:
        x = 0.5 * (lo + hi)
    for _ in range(200):
        cdf = _regularized_gamma_p(a, 0.5 * x)
        if cdf > p:
            hi = x
        else:
            lo = x
        pdf = math.exp((a - 1.0) * math.log(x) - 0.5 * x + log_norm)
        nxt = x - (cdf - p) / pdf if 0.0 < pdf < math.inf else 0.5 * (lo + hi)
        if not lo < nxt < hi or nxt == x:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - x) <= 1e-14 * nxt:
            return nxt
        x = nxt
    return x


def qq_points(
    sample: Sequence[float], quantile: Callable[[float], float] = normal_quantile
) -> np.ndarray:
    """Quantile-quantile pairs of ``sample`` against a theoretical quantile.

    Uses plotting positions (i - 0.5)/n.  Returns an (n, 2) array whose
    columns are (theoretical quantile, ordered sample value).
    """
    x = np.sort(np.asarray(sample, dtype=np.float64))
    if x.size < 1:
        raise ValueError("sample must be non-empty")
    n = x.size
    theory = np.array([quantile((i - 0.5) / n) for i in range(1, n + 1)])
    return np.column_stack([theory, x])
