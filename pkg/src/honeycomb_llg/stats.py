"""Squared displacement, its running time average, cycle-length fractions and power-law fits."""
from __future__ import annotations

import csv
import json
from collections import Counter
from dataclasses import asdict, dataclass

import numpy as np

from .cycles import CycleDecomposition
from .dynamics import Trajectory
from .errors import ContractError

MSD = "msd"
TAMSD = "tamsd"
GENERIC = "generic"

DEFAULT_DELTA = 0.08


@dataclass
class Series:
    """values[i] holds the quantity at t = i + 1."""

    values: np.ndarray
    meaning: str = GENERIC

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)

    @property
    def t(self) -> np.ndarray:
        return np.arange(1, len(self.values) + 1)

    def at(self, t: int) -> float:
        return float(self.values[t - 1])

    def __len__(self):
        return len(self.values)


def msd(traj: Trajectory) -> Series:
    dp = traj.p[1:] - traj.p[0]
    dq = traj.q[1:] - traj.q[0]
    return Series((dp * dp + 3 * dq * dq) / 4.0, MSD)


def ensemble_msd(trajs: list[Trajectory]) -> Series:
    if not trajs:
        raise ContractError("empty ensemble")
    n = {len(t) for t in trajs}
    if len(n) != 1:
        raise ContractError(f"trajectories have different lengths {sorted(n)}")
    return Series(np.mean([msd(t).values for t in trajs], axis=0), MSD)


def tamsd(s: Series) -> Series:
    return Series(np.cumsum(s.values) / s.t, TAMSD)


@dataclass
class CycleLengthHistogram:
    counts: dict
    total: int
    horizon: int


def histogram(d: CycleDecomposition) -> CycleLengthHistogram:
    """Completed cycles only; the open tail after the last return is left out."""
    c = Counter(x.length for x in d.cycles)
    return CycleLengthHistogram(dict(sorted(c.items())), sum(c.values()), d.horizon)


def fraction_of_cycles(hist: CycleLengthHistogram) -> dict:
    if hist.total <= 0:
        raise ContractError("histogram is empty")
    return {ell: n / hist.total for ell, n in hist.counts.items()}


@dataclass
class PowerLawFit:
    c: float
    alpha: float
    fit_range: tuple
    residual: float
    n_points: int
    method: str = "loglog"

    def __call__(self, t):
        return self.c * np.asarray(t, dtype=float) ** self.alpha

    def to_dict(self) -> dict:
        d = asdict(self)
        d["fit_range"] = list(self.fit_range)
        return d


def geometric_points(t_min: int, t_max: int, per_decade: int = 32) -> np.ndarray:
    """Distinct integers spaced evenly in log t, endpoints included."""
    n = max(2, int(round(per_decade * np.log10(t_max / t_min))) + 1)
    return np.unique(np.round(np.geomspace(t_min, t_max, n)).astype(np.int64))


def fit_loglog(x, y) -> tuple[float, float, float]:
    """Least squares line through (log x, log y); returns (c, alpha, rms residual)."""
    lx, ly = np.log(np.asarray(x, float)), np.log(np.asarray(y, float))
    A = np.vstack([np.ones_like(lx), lx]).T
    coef, *_ = np.linalg.lstsq(A, ly, rcond=None)
    res = ly - A @ coef
    return float(np.exp(coef[0])), float(coef[1]), float(np.sqrt(np.mean(res**2)))


def fit_power_law(s: Series, t_min: int = 1000, t_max: int | None = None, per_decade: int = 32) -> PowerLawFit:
    """Log-log least squares on geometrically subsampled t in [t_min, t_max]; zeros are skipped."""
    t_max = len(s) if t_max is None else t_max
    if not 1 <= t_min < t_max <= len(s):
        raise ContractError(f"fit range [{t_min}, {t_max}] not inside series of length {len(s)}")
    if np.any(s.values[t_min - 1 : t_max] < 0):
        raise ContractError("negative values in fit range")
    t = geometric_points(t_min, t_max, per_decade)
    y = s.values[t - 1]
    keep = y > 0
    if keep.sum() < 2:
        raise ContractError("fewer than two positive values in fit range")
    c, a, r = fit_loglog(t[keep], y[keep])
    return PowerLawFit(c, a, (int(t_min), int(t_max)), r, int(keep.sum()))


def fit_fraction_decay(F: dict, max_len: int = 200) -> PowerLawFit:
    """Fit F(ell) ~ c ell^alpha over the observed support up to max_len."""
    pts = sorted((ell, f) for ell, f in F.items() if ell <= max_len and f > 0)
    if len(pts) < 2:
        raise ContractError("need at least two lengths to fit")
    x, y = zip(*pts)
    c, a, r = fit_loglog(x, y)
    return PowerLawFit(c, a, (int(x[0]), int(x[-1])), r, len(pts))


BOUNDED = "bounded"
SUBDIFFUSION = "ta-subdiffusion"
DIFFUSION = "ta-diffusion"
SUPERDIFFUSION = "ta-superdiffusion"
PROPAGATION = "ta-propagation"
UNCLASSIFIED = "unclassified"


def floor_diverges(s: Series, windows: int = 4) -> bool:
    """Running minimum over successive geometric windows keeps growing."""
    n = len(s)
    if n < 2 ** windows:
        return False
    edges = np.unique(np.geomspace(n // 2 ** windows, n, windows + 1).astype(int))
    mins = [s.values[a - 1 : b].min() for a, b in zip(edges[:-1], edges[1:])]
    return all(b > a for a, b in zip(mins, mins[1:]))


def classify_growth(fit: PowerLawFit, series: Series | None = None, delta: float = DEFAULT_DELTA) -> str:
    a = fit.alpha
    if abs(a - 1) <= delta:
        return DIFFUSION
    if abs(a - 2) <= delta:
        return PROPAGATION
    if 1 + delta < a < 2 - delta:
        return SUPERDIFFUSION
    if delta < a < 1 - delta:
        if series is None or floor_diverges(series):
            return SUBDIFFUSION
        return BOUNDED
    if a <= delta:
        return BOUNDED
    return UNCLASSIFIED


def counterexample_series(T: int) -> Series:
    """Delta(t) = 0 for even t and 2t - 1 for odd t."""
    t = np.arange(1, T + 1)
    return Series(np.where(t % 2 == 0, 0, 2 * t - 1), MSD)


@dataclass
class TimeAverageReport:
    t_tail: int
    msd_ratio: dict  # alpha -> Delta(t)/t^alpha at the tail
    tamsd_ratio: dict  # alpha -> tamsd(t)/t^alpha at the tail
    msd_ratio_spread: dict  # alpha -> max/min of Delta/t^alpha over the last decade
    msd_label: str
    tamsd_label: str
    consistent: bool

    def to_dict(self) -> dict:
        return asdict(self)


def _spread(v):
    v = np.asarray(v)
    lo = v.min()
    return float("inf") if lo <= 0 else float(v.max() / lo)


def check_time_average_relations(s: Series, t_min: int | None = None) -> TimeAverageReport:
    """Tail ratios of Delta and its time average against t and t^2.

    If Delta(t)/t -> c then the average tends to c/2 times t, and with t^2 to c/3.
    The report is consistent when the average is classified at least as fast as Delta
    whenever Delta itself has a clean power law; the converse is never asserted.
    """
    T = len(s)
    ta = tamsd(s)
    tail = np.arange(max(1, T // 10), T + 1)
    out_m, out_a, spread = {}, {}, {}
    for a in (1, 2):
        out_m[a] = s.at(T) / T**a
        out_a[a] = ta.at(T) / T**a
        spread[a] = _spread(s.values[tail - 1] / tail.astype(float) ** a)
    t_min = t_min or max(1, T // 1000)
    ml = _label_or_none(s, t_min)
    tl = _label_or_none(ta, t_min)
    consistent = True
    if ml is not None and min(spread.values()) < 1.1 and ml != tl:
        consistent = False
    return TimeAverageReport(T, out_m, out_a, spread, ml or UNCLASSIFIED, tl or UNCLASSIFIED, consistent)


def _label_or_none(s: Series, t_min: int):
    try:
        return classify_growth(fit_power_law(s, t_min=t_min), s)
    except ContractError:
        return None


def write_series_csv(s: Series, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "value"])
        for t, v in zip(s.t.tolist(), s.values.tolist()):
            w.writerow([t, repr(v)])


def write_histogram_csv(hist: CycleLengthHistogram, path) -> None:
    F = fraction_of_cycles(hist) if hist.total else {}
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["ell", "count", "fraction"])
        for ell, n in hist.counts.items():
            w.writerow([ell, n, repr(F[ell])])


def write_fit_json(fit: PowerLawFit, path, **extra) -> None:
    d = fit.to_dict()
    d.update(extra)
    d["protocol"] = {"space": "log-log", "subsample": "geometric", "zeros": "excluded"}
    with open(path, "w") as fh:
        json.dump(d, fh, indent=1)
