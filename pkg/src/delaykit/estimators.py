"""Information-theoretic estimators on scalar series and point sets.

Binned Shannon entropies and mutual information, the k-nearest-neighbor
(KSG) mutual-information estimator, active information storage of delay
reconstructions, ordinal-pattern entropies (PE / WPE), autocorrelation,
and three-variable information measures.

All quantities are reported in bits. The KSG estimator works in nats
internally and is converted once at the end.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree
from scipy.special import digamma

from .errors import CapacityError, DegenerateSeriesError, ValidationError
from .timeseries import ScalarSeries, delay_matrix

__all__ = [
    "BinningScheme",
    "OrdinalPattern",
    "TripleInfo",
    "SweepGrid",
    "shannon_entropy_binned",
    "binned_mutual_information",
    "td_mutual_information_curve",
    "ksg_mutual_information",
    "active_information_storage",
    "state_active_information_storage",
    "atau_surface",
    "horizon_info_ratio",
    "autocorrelation",
    "ordinal_patterns",
    "permutation_entropy",
    "weighted_permutation_entropy",
    "triple_information",
    "select_word_length",
]

_LN2 = math.log(2.0)

# Default bin counts per axis; totals stay reasonable as dimension grows.
DEFAULT_BINS_1D = 64
DEFAULT_BINS_2D = 16
DEFAULT_BINS_3D = 8

# A_tau sweep cells subsample to at most this many joint samples
# (uniform stride); the estimator stays accurate on small subsets.
DEFAULT_MAX_SAMPLES = 20000


@dataclass(frozen=True)
class BinningScheme:
    """Equal-width binning of one variable; out-of-range values clamp."""

    bins: int
    lo: float
    hi: float

    def __post_init__(self):
        if self.bins < 2:
            raise ValidationError("need at least 2 bins")
        if not self.lo < self.hi:
            raise ValidationError("require lo < hi")

    @classmethod
    def from_values(cls, values: np.ndarray, bins: int) -> "BinningScheme":
        lo = float(np.min(values))
        hi = float(np.max(values))
        if lo == hi:
            lo, hi = lo - 0.5, hi + 0.5
        return cls(bins=bins, lo=lo, hi=hi)

    def indices(self, values: np.ndarray) -> np.ndarray:
        scaled = (np.asarray(values, dtype=np.float64) - self.lo) / (self.hi - self.lo)
        idx = np.floor(scaled * self.bins).astype(np.int64)
        return np.clip(idx, 0, self.bins - 1)


@dataclass(frozen=True)
class OrdinalPattern:
    """Value-order permutation of a window; ``ranks[k]`` is the time index
    of the k-th smallest sample (ties go to the earlier sample)."""

    ell: int
    ranks: tuple

    def __post_init__(self):
        if self.ell < 2:
            raise ValidationError("word length must be >= 2")
        if sorted(self.ranks) != list(range(self.ell)):
            raise ValidationError("ranks must be a permutation of 0..ell-1")


@dataclass(frozen=True)
class TripleInfo:
    """Three-variable information measures, in bits."""

    interaction: float
    binding: float
    total_correlation: float


@dataclass
class SweepGrid:
    """Rectangular (m, tau) grid of scalar results from a parameter sweep.

    Cells that could not be evaluated hold NaN and carry a message in
    ``cell_errors``.
    """

    m_values: tuple
    tau_values: tuple
    values: np.ndarray
    metadata: dict = field(default_factory=dict)
    cell_errors: dict = field(default_factory=dict)

    def argbest(self, mode: str = "max") -> tuple[int, int, float]:
        """Grid arg-optimum as (m, tau, value); ties prefer the smallest m,
        then the smallest tau."""
        vals = self.values
        if np.all(np.isnan(vals)):
            raise ValidationError("grid has no valid cells")
        target = np.nanmax(vals) if mode == "max" else np.nanmin(vals)
        i, j = np.argwhere(vals == target)[0]
        return self.m_values[i], self.tau_values[j], float(vals[i, j])

    def value_at(self, m: int, tau: int) -> float:
        i = self.m_values.index(m)
        j = self.tau_values.index(tau)
        return float(self.values[i, j])

    def to_csv_rows(self):
        """Rows for the ``m,tau,value`` schema; missing cells emit an
        empty value field."""
        yield "m,tau,value"
        for i, m in enumerate(self.m_values):
            for j, tau in enumerate(self.tau_values):
                v = self.values[i, j]
                yield f"{m},{tau}," if np.isnan(v) else f"{m},{tau},{float(v)!r}"


def _entropy_from_counts(counts: np.ndarray) -> float:
    total = counts.sum()
    # summing in sorted order keeps H (hence MI) exactly symmetric in its
    # arguments: the multiset of probabilities determines the float result
    p = np.sort(counts[counts > 0]) / total
    return float(-np.sum(p * np.log2(p))) + 0.0  # avoid -0.0


def _as_values(series) -> np.ndarray:
    if isinstance(series, ScalarSeries):
        return series.values
    return np.asarray(series, dtype=np.float64)


def shannon_entropy_binned(series, scheme: BinningScheme | None = None,
                           bins: int = DEFAULT_BINS_1D) -> float:
    """Shannon entropy of the binned value distribution, in bits.

    With no scheme, equal-width bins span the observed [min, max].
    Empty bins contribute nothing; a constant series has zero entropy.
    """
    values = _as_values(series)
    if scheme is None:
        scheme = BinningScheme.from_values(values, bins)
    counts = np.bincount(scheme.indices(values), minlength=scheme.bins)
    return _entropy_from_counts(counts)


def binned_mutual_information(x, y, scheme: BinningScheme | None = None,
                              bins: int = DEFAULT_BINS_2D) -> float:
    """H[X] + H[Y] - H[X,Y] from a joint histogram, in bits.

    Marginal entropies are taken from the joint table, so the result is
    symmetric and nonnegative up to rounding. A shared ``scheme`` bins
    both variables; otherwise each variable gets its own range.
    """
    xv, yv = _as_values(x), _as_values(y)
    if xv.size != yv.size:
        raise ValidationError("series must have equal lengths")
    sx = scheme or BinningScheme.from_values(xv, bins)
    sy = scheme or BinningScheme.from_values(yv, bins)
    ix, iy = sx.indices(xv), sy.indices(yv)
    joint = np.bincount(ix * sy.bins + iy, minlength=sx.bins * sy.bins)
    joint = joint.reshape(sx.bins, sy.bins)
    h_x = _entropy_from_counts(joint.sum(axis=1))
    h_y = _entropy_from_counts(joint.sum(axis=0))
    h_xy = _entropy_from_counts(joint.ravel())
    return h_x + h_y - h_xy


def td_mutual_information_curve(series, tau_max: int,
                                scheme: BinningScheme | None = None,
                                bins: int = DEFAULT_BINS_2D) -> list[tuple[int, float]]:
    """Binned mutual information between the series and its tau-lagged copy,
    for tau = 1..tau_max, over the overlapping N - tau pairs."""
    values = _as_values(series)
    if tau_max >= values.size:
        raise ValidationError("tau_max must be smaller than the series length")
    if tau_max < 1:
        raise ValidationError("tau_max must be >= 1")
    if scheme is None:
        scheme = BinningScheme.from_values(values, bins)
    out = []
    for tau in range(1, tau_max + 1):
        mi = binned_mutual_information(values[tau:], values[:-tau], scheme=scheme)
        out.append((tau, mi))
    return out


def _marginal_counts(points: np.ndarray, radii: np.ndarray) -> np.ndarray:
    """Neighbors within and on the boundary of each point's max-norm radius,
    excluding the point itself."""
    tree = cKDTree(points)
    counts = tree.query_ball_point(points, radii, p=np.inf,
                                   workers=-1, return_length=True)
    return counts - 1


def ksg_mutual_information(x_points, y_points, k: int = 4) -> float:
    """k-nearest-neighbor mutual information between two point sets, in bits.

    For each sample the k nearest neighbors are located in the joint space
    under the max norm; per-marginal radii are the extents of the smallest
    axis-aligned box around those neighbors. Neighbors within and on the
    boundaries are counted per marginal (n_q, n_r) and

        I = psi(k) - 1/k - <psi(n_q) + psi(n_r)> + psi(N)

    Duplicate points only make boundary counts larger; the estimate stays
    finite (and grows with N when Y is a deterministic copy of X).
    """
    xp = np.asarray(x_points, dtype=np.float64)
    yp = np.asarray(y_points, dtype=np.float64)
    if xp.ndim == 1:
        xp = xp[:, None]
    if yp.ndim == 1:
        yp = yp[:, None]
    n = xp.shape[0]
    if yp.shape[0] != n:
        raise ValidationError("point sets must have equal sizes")
    if not 1 <= k < n:
        raise ValidationError("require 1 <= k < N")
    joint = np.hstack([xp, yp])
    _, idx = cKDTree(joint).query(joint, k=k + 1, p=np.inf, workers=-1)
    nbrs = idx[:, 1:]
    rho_x = np.max(np.abs(xp[:, None, :] - xp[nbrs]), axis=(1, 2))
    rho_y = np.max(np.abs(yp[:, None, :] - yp[nbrs]), axis=(1, 2))
    n_x = _marginal_counts(xp, rho_x)
    n_y = _marginal_counts(yp, rho_y)
    nats = (digamma(k) - 1.0 / k
            - float(np.mean(digamma(n_x) + digamma(n_y)))
            + digamma(n))
    return nats / _LN2


def _delay_state_and_future(values: np.ndarray, m: int, tau: int,
                            h: int) -> tuple[np.ndarray, np.ndarray]:
    span = (m - 1) * tau
    count = values.size - span - h
    if count < 2:
        raise CapacityError(span + h + 2, values.size)
    states = delay_matrix(values, m, tau)[:count]
    future = values[span + h :]
    return states, future


def _subsample(states: np.ndarray, future: np.ndarray,
               max_samples: int | None) -> tuple[np.ndarray, np.ndarray, int]:
    n = states.shape[0]
    if max_samples is None or n <= max_samples:
        return states, future, 1
    stride = int(np.ceil(n / max_samples))
    return states[::stride], future[::stride], stride


def state_active_information_storage(states, future, k: int = 4) -> float:
    """Shared information between an arbitrary state-point set and the
    future observation it is paired with, in bits."""
    return ksg_mutual_information(states, future, k=k)


def active_information_storage(series, m: int, tau: int, h: int = 1,
                               k: int = 4,
                               max_samples: int | None = None) -> float:
    """Mutual information between m-dimensional delay vectors and the
    scalar observation h steps past each vector's anchor, in bits.

    With ``m=1`` the delay is unused and this reduces to the KSG mutual
    information between X_j and X_{j+h}.
    """
    if m < 1 or tau < 1 or h < 1:
        raise ValidationError("require m >= 1, tau >= 1, h >= 1")
    values = _as_values(series)
    states, future = _delay_state_and_future(values, m, tau, h)
    states, future, _ = _subsample(states, future, max_samples)
    return state_active_information_storage(states, future, k=k)


def _atau_cell(args):
    values, m, tau, h, k, max_samples = args
    try:
        return (m, tau, active_information_storage(values, m, tau, h=h, k=k,
                                                   max_samples=max_samples), None)
    except (CapacityError, ValidationError) as err:
        return (m, tau, np.nan, str(err))


def atau_surface(series, m_range, tau_range, h: int = 1, k: int = 4,
                 max_samples: int | None = DEFAULT_MAX_SAMPLES,
                 jobs: int = 1) -> SweepGrid:
    """Active-information-storage values over a rectangular (m, tau) grid.

    Cells are independent; invalid cells are flagged missing (NaN) with
    the error recorded, and the rest of the grid is still returned.
    """
    values = _as_values(series)
    m_values = tuple(int(m) for m in m_range)
    tau_values = tuple(int(t) for t in tau_range)
    if not m_values or not tau_values:
        raise ValidationError("empty parameter grid")
    tasks = [(values, m, tau, h, k, max_samples)
             for m in m_values for tau in tau_values]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_atau_cell, tasks, chunksize=1))
    else:
        results = [_atau_cell(t) for t in tasks]
    grid = np.full((len(m_values), len(tau_values)), np.nan)
    errors = {}
    for m, tau, value, err in results:
        grid[m_values.index(m), tau_values.index(tau)] = value
        if err is not None:
            errors[(m, tau)] = err
    meta = {"h": h, "k": k, "max_samples": max_samples, "quantity": "atau"}
    return SweepGrid(m_values, tau_values, grid, metadata=meta, cell_errors=errors)


def horizon_info_ratio(series, m: int, tau: int, h_max: int, k: int = 4,
                       bins: int = DEFAULT_BINS_1D,
                       max_samples: int | None = None) -> list[tuple[int, float]]:
    """R(h) = A_tau(h) / H[X_{j+h}] for h = 1..h_max, values unclamped.

    The denominator is the binned entropy of the future observations; a
    constant series makes it zero and the ratio undefined.
    """
    values = _as_values(series)
    out = []
    for h in range(1, h_max + 1):
        a = active_information_storage(values, m, tau, h=h, k=k,
                                       max_samples=max_samples)
        future = values[(m - 1) * tau + h :]
        h_future = shannon_entropy_binned(future, bins=bins)
        if h_future == 0.0:
            raise DegenerateSeriesError(
                "future observations have zero entropy; R(h) is undefined"
            )
        out.append((h, a / h_future))
    return out


def autocorrelation(series, tau: int) -> float:
    """Autocorrelation at lag ``tau`` using the full-series mean and
    variance; exactly 1 at lag zero."""
    values = _as_values(series)
    n = values.size
    if not 0 <= tau < n:
        raise ValidationError("require 0 <= tau < series length")
    mu = values.mean()
    var = np.mean((values - mu) ** 2)
    if var == 0.0:
        raise DegenerateSeriesError("zero-variance series has no autocorrelation")
    if tau == 0:
        return 1.0
    dev = values - mu
    return float(np.sum(dev[tau:] * dev[:-tau]) / ((n - tau) * var))


def _pattern_codes(values: np.ndarray, ell: int) -> np.ndarray:
    """Each window's ordinal pattern packed into one integer code."""
    windows = np.lib.stride_tricks.sliding_window_view(values, ell)
    ranks = np.argsort(windows, axis=1, kind="stable")
    weights = ell ** np.arange(ell, dtype=np.int64)
    return ranks @ weights


def ordinal_patterns(series, ell: int) -> list[OrdinalPattern]:
    """Ordinal patterns of every length-``ell`` window, in temporal order.

    Ranks are the window's time indices sorted by value; equal values keep
    temporal order, so the earlier sample gets the lower rank.
    """
    values = _as_values(series)
    if ell < 2:
        raise ValidationError("word length must be >= 2")
    if values.size < ell:
        raise CapacityError(ell, values.size)
    windows = np.lib.stride_tricks.sliding_window_view(values, ell)
    ranks = np.argsort(windows, axis=1, kind="stable")
    return [OrdinalPattern(ell, tuple(int(r) for r in row)) for row in ranks]


def permutation_entropy(series, ell: int, normalized: bool = True) -> float:
    """Shannon entropy of the ordinal-pattern distribution.

    Normalization divides by log2(ell!) so the result lies in [0, 1].
    """
    values = _as_values(series)
    if ell < 2:
        raise ValidationError("word length must be >= 2")
    if values.size < ell:
        raise CapacityError(ell, values.size)
    codes = _pattern_codes(values, ell)
    counts = np.bincount(codes)
    h = _entropy_from_counts(counts[counts > 0])
    if normalized:
        h /= math.log2(math.factorial(ell))
    return h


def weighted_permutation_entropy(series, ell: int, normalized: bool = True) -> float:
    """Permutation entropy with each window weighted by its variance about
    the window mean, so large-amplitude features dominate.

    A series whose every window is constant has zero total weight; that
    case is defined as 0 (maximally structured).
    """
    values = _as_values(series)
    if ell < 2:
        raise ValidationError("word length must be >= 2")
    if values.size < ell:
        raise CapacityError(ell, values.size)
    windows = np.lib.stride_tricks.sliding_window_view(values, ell)
    weights = np.var(windows, axis=1)
    total = weights.sum()
    if total == 0.0:
        return 0.0
    codes = _pattern_codes(values, ell)
    mass = np.bincount(codes, weights=weights)
    p = mass[mass > 0] / total
    h = max(0.0, float(-np.sum(p * np.log2(p))))
    if normalized:
        h /= math.log2(math.factorial(ell))
    return h


def triple_information(x, y, z, scheme: BinningScheme | None = None,
                       bins: int = DEFAULT_BINS_3D) -> TripleInfo:
    """Interaction, binding, and total-correlation measures of three
    series from binned joint histograms, in bits.

    Interaction information is the signed center of the three-set
    information diagram (positive for three identical variables, negative
    for XOR-style synergy); binding and total correlation are nonnegative.
    """
    xv, yv, zv = _as_values(x), _as_values(y), _as_values(z)
    if not (xv.size == yv.size == zv.size):
        raise ValidationError("series must have equal lengths")
    sx = scheme or BinningScheme.from_values(xv, bins)
    sy = scheme or BinningScheme.from_values(yv, bins)
    sz = scheme or BinningScheme.from_values(zv, bins)
    ix, iy, iz = sx.indices(xv), sy.indices(yv), sz.indices(zv)
    flat = (ix * sy.bins + iy) * sz.bins + iz
    joint = np.bincount(flat, minlength=sx.bins * sy.bins * sz.bins)
    joint = joint.reshape(sx.bins, sy.bins, sz.bins)

    h_x = _entropy_from_counts(joint.sum(axis=(1, 2)))
    h_y = _entropy_from_counts(joint.sum(axis=(0, 2)))
    h_z = _entropy_from_counts(joint.sum(axis=(0, 1)))
    h_xy = _entropy_from_counts(joint.sum(axis=2).ravel())
    h_xz = _entropy_from_counts(joint.sum(axis=1).ravel())
    h_yz = _entropy_from_counts(joint.sum(axis=0).ravel())
    h_xyz = _entropy_from_counts(joint.ravel())

    singles = h_x + h_y + h_z
    pairs = h_xy + h_xz + h_yz
    return TripleInfo(
        interaction=singles - pairs + h_xyz,
        binding=pairs - 2.0 * h_xyz,
        total_correlation=singles - h_xyz,
    )


def select_word_length(n: int, lo: int = 2, hi: int = 8,
                       counts_per_pattern: int = 100) -> int:
    """Largest word length whose pattern table is well sampled:
    argmax over ell of n >= 100 * ell!, capped to [lo, hi]."""
    best = lo
    for ell in range(lo, hi + 1):
        if n >= counts_per_pattern * math.factorial(ell):
            best = ell
    return best
