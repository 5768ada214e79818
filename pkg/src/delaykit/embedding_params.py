"""Reconstruction parameter selection: classical tau and m heuristics and
the information-storage-optimal selector."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .errors import (
    NoEmbeddingFoundError,
    NoMinimumError,
    NoZeroCrossingError,
    ValidationError,
)
from .estimators import (
    BinningScheme,
    atau_surface,
    autocorrelation,
    binned_mutual_information,
    td_mutual_information_curve,
)
from .timeseries import ScalarSeries, delay_matrix

__all__ = [
    "FnnConfig",
    "ParamChoice",
    "tau_first_min_mi",
    "tau_first_zero_autocorr",
    "fnn_fraction",
    "estimate_m_fnn",
    "atau_optimal_params",
]



@dataclass(frozen=True)
class FnnConfig:
    """False-neighbor test tolerances.

    ``r_tol`` flags pairs whose distance jumps when a dimension is added;
    ``a_tol`` flags pairs that were never close relative to the attractor
    size. The dimension search accepts the first m whose flagged fraction
    drops below ``fraction_threshold``.
    """

    r_tol: float = 10.0
    a_tol: float = 2.0
    fraction_threshold: float = 0.10
    m_max: int = 10

    def __post_init__(self):
        if not self.r_tol > 0:
            raise ValidationError("r_tol must be positive")
        if not self.a_tol > 0:
            raise ValidationError("a_tol must be positive")
        if not 0.0 < self.fraction_threshold < 1.0:
            raise ValidationError("fraction_threshold must lie in (0, 1)")


@dataclass(frozen=True)
class ParamChoice:
    """A selected reconstruction parameter pair and the score behind it."""

    m: int
    tau: int
    method: str
    score: float

    def __post_init__(self):
        if self.m < 1 or self.tau < 1:
            raise ValidationError("require m >= 1 and tau >= 1")


def tau_first_min_mi(series, tau_max: int,
                     scheme: BinningScheme | None = None) -> ParamChoice:
    """Smallest tau that is an interior minimum of the lagged mutual
    information curve, scanning tau = 1..tau_max.

    The lag-0 point (the series' own entropy) anchors the left edge.
    Plateaus extend the scan: a run of equal values counts as a minimum
    only if the curve rises after it, and the run's first lag is reported.

    Raises
    ------
    NoMinimumError
        If the curve never turns back up within ``tau_max`` (an AR(1)
        process decays monotonically, for example).
    """
    if tau_max < 3:
        raise ValidationError("tau_max must be >= 3")
    values = series.values if isinstance(series, ScalarSeries) else np.asarray(series)
    if scheme is None:
        scheme = BinningScheme.from_values(values, 16)
    curve = td_mutual_information_curve(values, tau_max, scheme=scheme)
    mi = np.array([binned_mutual_information(values, values, scheme=scheme)]
                  + [v for _, v in curve])
    tau = 1
    while tau <= tau_max:
        if mi[tau - 1] > mi[tau]:
            end = tau
            while end + 1 <= tau_max and mi[end + 1] == mi[tau]:
                end += 1
            if end + 1 <= tau_max and mi[end + 1] > mi[tau]:
                return ParamChoice(m=1, tau=tau, method="first_min_mi",
                                   score=float(mi[tau]))
            tau = end + 1
        else:
            tau += 1
    raise NoMinimumError(
        f"lagged mutual information has no interior minimum for tau <= {tau_max}"
    )


def tau_first_zero_autocorr(series, tau_max: int) -> ParamChoice:
    """Smallest tau where the autocorrelation reaches or crosses zero.

    A finite sample never lands exactly on zero, so a lag also counts as a
    zero when |R(tau)| falls below the Bartlett standard error of an
    autocorrelation estimate under the null, 1/sqrt(N - tau).

    Raises
    ------
    NoZeroCrossingError
        If R(tau) stays positive through ``tau_max``.
    """
    if tau_max < 1:
        raise ValidationError("tau_max must be >= 1")
    n = len(series)
    prev = autocorrelation(series, 0)
    for tau in range(1, tau_max + 1):
        r = autocorrelation(series, tau)
        if abs(r) <= 1.0 / np.sqrt(n - tau) or (prev > 0.0 > r):
            return ParamChoice(m=1, tau=tau, method="first_zero_autocorr", score=r)
        prev = r
    raise NoZeroCrossingError(
        f"autocorrelation has no zero for tau <= {tau_max}"
    )


def fnn_fraction(series, m: int, tau: int,
                 config: FnnConfig | None = None) -> float:
    """Fraction of reconstruction points whose nearest neighbor is false.

    Each point of the m-dimensional reconstruction that extends to m+1
    dimensions is paired with its nearest neighbor (self excluded) among
    those points. The pair is false when the added coordinate stretches
    it by more than ``r_tol`` relative to its m-dimensional distance, or
    when its (m+1)-dimensional distance exceeds ``a_tol`` attractor sizes.
    Pairs at zero distance are skipped (the stretch ratio is undefined).
    Both criteria are ratios, so the result is scale invariant.
    """
    config = config or FnnConfig()
    values = series.values if isinstance(series, ScalarSeries) else np.asarray(series)
    if m < 1 or tau < 1:
        raise ValidationError("require m >= 1 and tau >= 1")
    ext = delay_matrix(values, m + 1, tau)  # columns 0..m-1 plus the new lag
    if ext.shape[0] < 2:
        raise ValidationError(
            f"series cannot support the false-neighbor test at (m+1={m + 1}, tau={tau})"
        )
    base = ext[:, :m]
    added = ext[:, m]
    _, nbr = cKDTree(base).query(base, k=2, workers=-1)
    nbr = nbr[:, 1]
    d_m = np.sqrt(np.sum((base - base[nbr]) ** 2, axis=1))
    usable = d_m > 0.0
    if not np.any(usable):
        return 0.0
    stretch = np.abs(added - added[nbr])[usable] / d_m[usable]
    d_m1 = np.sqrt(d_m[usable] ** 2 + (np.abs(added - added[nbr])[usable]) ** 2)
    r_a = float(np.std(values))
    false = (stretch > config.r_tol) | (d_m1 / r_a > config.a_tol)
    return float(np.mean(false))


def estimate_m_fnn(series, tau: int,
                   config: FnnConfig | None = None) -> ParamChoice:
    """Smallest dimension whose false-neighbor fraction is at or below the
    configured threshold.

    Raises
    ------
    NoEmbeddingFoundError
        If no m up to ``config.m_max`` meets the threshold; the fraction
        curve is attached for inspection.
    """
    config = config or FnnConfig()
    if config.m_max < 2:
        raise ValidationError("m_max must be >= 2")
    fractions = {}
    for m in range(1, config.m_max + 1):
        frac = fnn_fraction(series, m, tau, config)
        fractions[m] = frac
        if frac <= config.fraction_threshold:
            return ParamChoice(m=m, tau=tau, method="fnn", score=frac)
    raise NoEmbeddingFoundError(fractions, config.fraction_threshold)


def atau_optimal_params(series, m_range, tau_range, h: int = 1, k: int = 4,
                        max_samples: int | None = 20000,
                        jobs: int = 1) -> ParamChoice:
    """Grid argmax of active information storage over (m, tau).

    Exact ties on a plateau resolve to the smallest m, then the smallest
    tau, since lower dimensions cost less and amplify less noise.
    """
    grid = atau_surface(series, m_range, tau_range, h=h, k=k,
                        max_samples=max_samples, jobs=jobs)
    m, tau, score = grid.argbest("max")
    return ParamChoice(m=m, tau=tau, method="atau_optimal", score=score)
