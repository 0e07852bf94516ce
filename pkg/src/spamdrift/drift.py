"""Data drift detection over word-gram windows, plus baseline detectors.

The proposed detector keeps a past static window P (filled during the
``cold_start`` warm-up) and a current adaptive sliding window CA of word-gram
rows.  Every sample, after the prediction has been made and scored:

1. the (actual, predicted) pair joins the full label history;
2. the row joins P while warming up, and always joins CA;
3. once warm, the chi-square homogeneity p-value between the two summed
   gram vectors and the inter-window absolute accuracy difference (AAD)
   are computed;
4. the CA width moves one step: p <= 0.1 drops the two oldest rows (net -1
   after the append), 0.1 < p < 0.5 drops one (net 0), p >= 0.5 drops none
   (net +1, capped at ``max_width``, floored at 1);
5. drift fires iff p <= 0.05 and AAD >= 0.05; then P becomes a snapshot of
   CA, the caller retrains on the CA samples, and the past accuracy anchor
   is refreshed over the trailing |P| history entries.

EDDM (distance-between-errors) and ADWIN (adaptive windowing with an
exponential bucket histogram) are provided for the detector comparison
harness.  Their update rules are written out in the class docstrings so an
independent transcription produces identical traces.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

from scipy.special import gammaincc

from .config import DetectorConfig

logger = logging.getLogger(__name__)


def sum_wordgrams(window: list[dict[str, int]]) -> dict[str, int]:
    """Per-gram totals over all rows; empty window yields an empty vector."""
    out: dict[str, int] = {}
    for row in window:
        for gram, count in row.items():
            out[gram] = out.get(gram, 0) + count
    return out


def chi2_pvalue(vec_p: dict[str, int], vec_ca: dict[str, int], min_count: int = 6) -> float:
    """Chi-square homogeneity p-value between two gram frequency vectors.

    Columns are aligned on the union of gram keys (missing = 0) and dropped
    when their count is below ``min_count`` in BOTH vectors.  With fewer
    than two surviving columns, or a zero row marginal, there is no evidence
    of change and the p-value is defined as 1.0.  The p-value comes from the
    regularized upper incomplete gamma function Q(dof/2, x/2) with
    dof = V - 1; no continuity correction.
    """
    keys = [k for k in set(vec_p) | set(vec_ca)
            if vec_p.get(k, 0) >= min_count or vec_ca.get(k, 0) >= min_count]
    if len(keys) < 2:
        logger.debug("chi2: %d surviving columns, p defined as 1.0", len(keys))
        return 1.0
    row_p = [float(vec_p.get(k, 0)) for k in keys]
    row_ca = [float(vec_ca.get(k, 0)) for k in keys]
    total_p, total_ca = sum(row_p), sum(row_ca)
    grand = total_p + total_ca
    if total_p == 0 or total_ca == 0:
        logger.debug("chi2: zero marginal, p defined as 1.0")
        return 1.0
    stat = 0.0
    for a, b in zip(row_p, row_ca):
        col = a + b
        exp_p = total_p * col / grand
        exp_ca = total_ca * col / grand
        stat += (a - exp_p) ** 2 / exp_p + (b - exp_ca) ** 2 / exp_ca
    dof = len(keys) - 1
    return float(gammaincc(dof / 2.0, stat / 2.0))


@dataclass(frozen=True)
class DriftReport:
    sample_index: int
    p_value: float
    aad: float
    drift: bool
    w_after: int
    action: str      # shrink | hold | grow | reset


@dataclass
class WindowState:
    """Mutable state of the two-window detector (exposed for inspection)."""

    config: DetectorConfig = field(default_factory=DetectorConfig)
    P: list[dict[str, int]] = field(default_factory=list)
    CA: list[dict[str, int]] = field(default_factory=list)
    list_actual: list[str] = field(default_factory=list)
    list_predicted: list[str] = field(default_factory=list)
    acc_p: float = 0.0
    k: int = 0


class TwoWindowDriftDetector:
    """Algorithm described in the module docstring; observe() is sequential."""

    def __init__(self, config: DetectorConfig | None = None, chi2_func=chi2_pvalue):
        self.state = WindowState(config=config or DetectorConfig())
        self._chi2 = chi2_func
        self._correct: list[bool] = []
        self._correct_total = 0
        self._p_sum: dict[str, int] = {}
        self._ca_sum: dict[str, int] = {}
        self.drift_count = 0

    @property
    def width(self) -> int:
        return len(self.state.CA)

    def _add_to_ca(self, row: dict[str, int]) -> None:
        self.state.CA.append(row)
        for g, c in row.items():
            self._ca_sum[g] = self._ca_sum.get(g, 0) + c

    def _drop_oldest_ca(self, count: int) -> None:
        for _ in range(count):
            row = self.state.CA.pop(0)
            for g, c in row.items():
                left = self._ca_sum[g] - c
                if left:
                    self._ca_sum[g] = left
                else:
                    del self._ca_sum[g]

    def _accuracy_tail(self, length: int) -> float:
        if length <= 0:
            return 0.0
        tail = self._correct[-length:]
        return sum(tail) / len(tail)

    def observe(self, row: dict[str, int], actual: str, predicted: str) -> DriftReport:
        st = self.state
        cfg = st.config
        st.list_actual.append(actual)
        st.list_predicted.append(predicted)
        ok = actual == predicted
        self._correct.append(ok)
        self._correct_total += ok

        if st.k < cfg.cold_start:
            st.P.append(row)
            for g, c in row.items():
                self._p_sum[g] = self._p_sum.get(g, 0) + c
        self._add_to_ca(row)
        st.k += 1

        if st.k == cfg.cold_start:
            st.acc_p = self._correct_total / len(self._correct)

        if st.k < cfg.cold_start:
            return DriftReport(st.k - 1, 1.0, 0.0, False, len(st.CA), "grow")

        p_value = self._chi2(self._p_sum, self._ca_sum, cfg.min_column_count)
        acc_ca = self._accuracy_tail(len(st.CA))
        aad = abs(st.acc_p - acc_ca)

        if p_value <= cfg.p_shrink:
            action, drop = "shrink", 2
        elif p_value < cfg.p_grow:
            action, drop = "hold", 1
        else:
            action, drop = "grow", 0
        self._drop_oldest_ca(min(drop, len(st.CA) - 1))
        if len(st.CA) > cfg.max_width:
            self._drop_oldest_ca(len(st.CA) - cfg.max_width)

        drift = p_value <= cfg.p_drift and aad >= cfg.aad_drift
        if drift:
            st.P = list(st.CA)
            self._p_sum = dict(self._ca_sum)
            st.acc_p = self._accuracy_tail(len(st.P))
            self.drift_count += 1
            action = "reset"
        return DriftReport(st.k - 1, p_value, aad, drift, len(st.CA), action)


class EDDM:
    """Early drift detection from the distances between classification errors.

    Update rule (both this class and any reference transcription): samples
    are counted from 1.  A non-error sample leaves the state untouched.  On
    an error, the distance to the previous error updates a running mean p
    and population standard deviation s of distances; the running maximum of
    (p + 2s) is kept.  Once at least 30 distances have been seen, the ratio
    (p + 2s) / max(p + 2s) signals drift below 0.9 and warning below 0.95.
    Drift resets the full state (except the sample counter).
    """

    WARNING_RATIO = 0.95
    DRIFT_RATIO = 0.9
    MIN_DISTANCES = 30

    def __init__(self) -> None:
        self.samples = 0
        self._reset()

    def _reset(self) -> None:
        self.last_error_at: int | None = None
        self.n_dist = 0
        self.dist_mean = 0.0
        self.dist_m2 = 0.0
        self.max_p2s = 0.0

    def observe(self, error: bool) -> str:
        self.samples += 1
        if not error:
            return "normal"
        if self.last_error_at is None:
            self.last_error_at = self.samples
            return "normal"
        dist = self.samples - self.last_error_at
        self.last_error_at = self.samples
        self.n_dist += 1
        delta = dist - self.dist_mean
        self.dist_mean += delta / self.n_dist
        self.dist_m2 += delta * (dist - self.dist_mean)
        std = math.sqrt(self.dist_m2 / self.n_dist)
        cur = self.dist_mean + 2.0 * std
        if cur > self.max_p2s:
            self.max_p2s = cur
        if self.n_dist < self.MIN_DISTANCES:
            return "normal"
        ratio = cur / self.max_p2s
        if ratio < self.DRIFT_RATIO:
            self._reset()
            return "drift"
        if ratio < self.WARNING_RATIO:
            return "warning"
        return "normal"


class ADWIN:
    """Adaptive windowing over a real-valued stream (0/1 correctness here).

    Documented variant (shared with any reference transcription):

    * Exponential bucket histogram: row i holds buckets summarizing 2^i
      elements as (sum, M2); at most 5 buckets per row, merging the two
      oldest of a row into the next row on overflow.
    * Window mean/variance are maintained incrementally (Welford on insert;
      pairwise M2 decomposition on deleting the oldest bucket).
    * Every 32 insertions, once the window holds at least 10 elements, cut
      points at bucket boundaries (oldest to newest) are tested with
      epsilon = sqrt(2/m' * v * dd) + (2/3) * (1/m') * dd, where
      1/m' = 1/n0 + 1/n1, v = window M2 / width, dd = ln(2 * width / delta),
      requiring n0, n1 >= 5.  While any cut triggers, the oldest bucket is
      dropped and the scan restarts; any drop reports a drift.
    """

    MAX_BUCKETS = 5
    CLOCK = 32
    MIN_WINDOW = 10
    MIN_SUBWINDOW = 5

    def __init__(self, delta: float = 0.002):
        self.delta = delta
        self.rows: list[list[tuple[float, float]]] = [[]]   # row i: (sum, m2) per bucket
        self.width = 0
        self.total = 0.0
        self.m2 = 0.0
        self.seen = 0

    @property
    def mean(self) -> float:
        return self.total / self.width if self.width else 0.0

    def observe(self, value: float) -> bool:
        self.seen += 1
        if self.width > 0:
            delta = value - self.mean
            self.m2 += self.width / (self.width + 1.0) * delta * delta
        self.width += 1
        self.total += value
        self.rows[0].append((value, 0.0))
        self._compress()
        if self.seen % self.CLOCK == 0 and self.width >= self.MIN_WINDOW:
            return self._detect()
        return False

    def _compress(self) -> None:
        i = 0
        while i < len(self.rows):
            if len(self.rows[i]) > self.MAX_BUCKETS:
                (s1, v1), (s2, v2) = self.rows[i][0], self.rows[i][1]
                del self.rows[i][:2]
                n = float(2 ** i)
                u1, u2 = s1 / n, s2 / n
                merged_m2 = v1 + v2 + n * n / (2 * n) * (u1 - u2) ** 2
                if i + 1 == len(self.rows):
                    self.rows.append([])
                self.rows[i + 1].append((s1 + s2, merged_m2))
            i += 1

    def _bucket_sizes(self) -> list[tuple[int, int]]:
        """(row, index) pairs oldest to newest."""
        out = []
        for i in range(len(self.rows) - 1, -1, -1):
            for j in range(len(self.rows[i])):
                out.append((i, j))
        return out

    def _drop_oldest(self) -> None:
        for i in range(len(self.rows) - 1, -1, -1):
            if self.rows[i]:
                s, v = self.rows[i].pop(0)
                n1 = float(2 ** i)
                rest_width = self.width - n1
                if rest_width > 0:
                    u1 = s / n1
                    rest_total = self.total - s
                    u_rest = rest_total / rest_width
                    self.m2 -= v + n1 * rest_width * (u1 - u_rest) ** 2 / (n1 + rest_width)
                    self.m2 = max(self.m2, 0.0)
                else:
                    self.m2 = 0.0
                self.width -= int(n1)
                self.total -= s
                return

    def _detect(self) -> bool:
        changed = False
        cutting = True
        while cutting and self.width >= self.MIN_WINDOW:
            cutting = False
            v = self.m2 / self.width
            dd = math.log(2.0 * self.width / self.delta)
            n0, sum0 = 0.0, 0.0
            for i, j in self._bucket_sizes():
                s, _ = self.rows[i][j]
                n0 += 2 ** i
                sum0 += s
                n1 = self.width - n0
                if n0 < self.MIN_SUBWINDOW or n1 < self.MIN_SUBWINDOW:
                    continue
                u0 = sum0 / n0
                u1 = (self.total - sum0) / n1
                inv_m = 1.0 / n0 + 1.0 / n1
                eps = math.sqrt(2.0 * inv_m * v * dd) + (2.0 / 3.0) * inv_m * dd
                if abs(u0 - u1) >= eps:
                    self._drop_oldest()
                    changed = True
                    cutting = True
                    break
        return changed


class BaselineDetectorAdapter:
    """Gives EDDM/ADWIN the same observe(row, actual, predicted) surface."""

    def __init__(self, kind: str, adwin_delta: float = 0.002):
        if kind == "eddm":
            self._eddm: EDDM | None = EDDM()
            self._adwin: ADWIN | None = None
        elif kind == "adwin":
            self._eddm = None
            self._adwin = ADWIN(adwin_delta)
        else:
            raise ValueError(f"unknown baseline detector: {kind!r}")
        self.kind = kind
        self.drift_count = 0
        self._k = 0

    def observe(self, row: dict[str, int], actual: str, predicted: str) -> DriftReport:
        self._k += 1
        correct = actual == predicted
        if self._eddm is not None:
            drift = self._eddm.observe(not correct) == "drift"
            width = 0
        else:
            drift = self._adwin.observe(1.0 if correct else 0.0)
            width = self._adwin.width
        if drift:
            self.drift_count += 1
        return DriftReport(
            self._k - 1, 1.0, 0.0, drift, width, "reset" if drift else "hold"
        )
