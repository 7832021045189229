"""Reproducible Monte Carlo over random pairings, with statistics.

Sampling is embarrassingly parallel: sample i draws its pairing from the
PRNG stream (seed, i), so the result set is a pure function of
(seed, n, samples) and independent of worker count or scheduling.  All
aggregation happens on integer histograms; floats (means, standard
errors, total-variation distances) are derived from the sorted histograms
at reporting time, which keeps reports bit-identical across runs.
"""

from __future__ import annotations

import copy
import json
import math
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import _kernel
from .exact import enumerate_all_pairings
from .ribbon import sample_sigma
from .series import geodesic_length, mell_limit_pmf
from .words import canonicalize


def poisson_pmf(lam: float, k: int) -> float:
    """Poisson mass lam^k e^(-lam)/k!, computed in log space for large k."""
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    if k < 0:
        raise ValueError("k must be nonnegative")
    if lam == 0.0:
        return 1.0 if k == 0 else 0.0
    return math.exp(k * math.log(lam) - lam - math.lgamma(k + 1))


def tv_distance(p: Dict[int, float], q: Dict[int, float]) -> float:
    """Total variation distance between two pmfs: half the L1 distance.

    Both inputs must sum to 1 within 1e-9.
    """
    for name, pmf in (("p", p), ("q", q)):
        total = sum(pmf.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"{name} sums to {total!r}, not a pmf")
    keys = set(p) | set(q)
    return 0.5 * sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)


def _hist_pmf(hist: Counter, total: int) -> Dict[int, float]:
    return {k: hist[k] / total for k in sorted(hist)}


def _tv_vs_poisson(emp: Dict[int, float], lam: float) -> float:
    """TV against Poisson(lam), lumping the Poisson tail past the support."""
    kmax = max(emp) if emp else 0
    ref = {k: poisson_pmf(lam, k) for k in range(kmax + 1)}
    ref[kmax + 1] = max(0.0, 1.0 - sum(ref.values()))
    return tv_distance(emp, ref)


def _tv_joint_vs_product(emp: Dict[Tuple[int, ...], float],
                         lams: Sequence[float]) -> float:
    """TV of a joint empirical pmf against a product of Poissons."""
    kmax = [max(key[i] for key in emp) for i in range(len(lams))]
    ref: Dict[Tuple[int, ...], float] = {}

    def rec(prefix: Tuple[int, ...], mass: float):
        i = len(prefix)
        if i == len(lams):
            ref[prefix] = mass
            return
        for k in range(kmax[i] + 1):
            rec(prefix + (k,), mass * poisson_pmf(lams[i], k))

    rec((), 1.0)
    tail = max(0.0, 1.0 - sum(ref.values()))
    dist = 0.5 * (sum(abs(emp.get(key, 0.0) - ref[key]) for key in ref)
                  + sum(v for key, v in emp.items() if key not in ref)
                  + tail)
    return dist


@dataclass(frozen=True)
class StatsRequest:
    """Which per-sample statistics to collect."""

    genus: bool = False
    xk_max: int = 0
    z_classes: Tuple[str, ...] = ()
    mell: bool = False
    systole: bool = False
    separating_bound: int = 0

    def any(self) -> bool:
        return (self.genus or self.xk_max > 0 or bool(self.z_classes)
                or self.mell or self.systole or self.separating_bound > 0)


@dataclass(frozen=True)
class RunConfig:
    n: int
    samples: int
    seed: int
    stats: StatsRequest
    workers: int = 1

    def validate(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.samples < 1:
            raise ValueError("samples must be positive")
        if self.workers < 1:
            raise ValueError("workers must be positive")
        if not self.stats.any():
            raise ValueError("no statistics requested")
        if self.stats.xk_max > 2 * self.n:
            raise ValueError(f"xk max length {self.stats.xk_max} exceeds 2n = {2 * self.n}")
        if self.stats.separating_bound:
            if not 2 <= self.stats.separating_bound <= 3 * self.n:
                raise ValueError("separating bound must lie in 2..3n")
        for w in self.stats.z_classes:
            if not w or set(w) - set("LR"):
                raise ValueError(f"invalid word {w!r}")
            if len(w) > 2 * self.n:
                raise ValueError(f"word {w!r} longer than 2n = {2 * self.n}")


@dataclass
class _Aggregate:
    """Mergeable integer tallies; the only thing workers return."""

    samples: int = 0
    genus: Counter = field(default_factory=Counter)
    xk: List[Counter] = field(default_factory=list)
    z: Dict[str, Counter] = field(default_factory=dict)
    z_joint: Counter = field(default_factory=Counter)
    mell: Counter = field(default_factory=Counter)
    trace: Counter = field(default_factory=Counter)
    systole_absent: int = 0
    proxy_skip_samples: int = 0
    proxy_skips: int = 0
    capped: int = 0
    separating: int = 0

    def merge(self, other: "_Aggregate") -> None:
        self.samples += other.samples
        self.genus.update(other.genus)
        if other.xk:
            if not self.xk:
                self.xk = [Counter() for _ in other.xk]
            for mine, theirs in zip(self.xk, other.xk):
                mine.update(theirs)
        for w, c in other.z.items():
            self.z.setdefault(w, Counter()).update(c)
        self.z_joint.update(other.z_joint)
        self.mell.update(other.mell)
        self.trace.update(other.trace)
        self.systole_absent += other.systole_absent
        self.proxy_skip_samples += other.proxy_skip_samples
        self.proxy_skips += other.proxy_skips
        self.capped += other.capped
        self.separating += other.separating


def _canonical_classes(words: Sequence[str]) -> List[str]:
    out = []
    for w in words:
        can = canonicalize(w).canonical.letters
        if can not in out:
            out.append(can)
    return out


def _collect(config: RunConfig, lo: int, hi: int) -> _Aggregate:
    st = config.stats
    classes = _canonical_classes(st.z_classes)
    word_max = max((len(w) for w in classes), default=0)
    want_search = st.mell or st.systole
    agg = _Aggregate()
    if st.xk_max:
        agg.xk = [Counter() for _ in range(st.xk_max)]
    for w in classes:
        agg.z[w] = Counter()
    for i in range(lo, hi):
        sigma = sample_sigma(config.n, config.seed, stream=i)
        stats = _kernel.graph_stats(
            sigma, xk_max=st.xk_max, word_max=word_max,
            want_mell=want_search, want_trace=st.systole,
            sep_bound=st.separating_bound)
        agg.samples += 1
        if st.genus:
            agg.genus[stats["genus"]] += 1
        if st.xk_max:
            for k_idx, cnt in enumerate(stats["xk"]):
                agg.xk[k_idx][cnt] += 1
        if classes:
            counts = stats["words"]
            per = tuple(counts.get(w, 0) for w in classes)
            for w, c in zip(classes, per):
                agg.z[w][c] += 1
            if len(classes) > 1:
                agg.z_joint[per] += 1
        if want_search:
            mell = stats["mell"]
            agg.mell[mell] += 1
            if stats["capped"]:
                agg.capped += 1
            elif mell == 0:
                agg.systole_absent += 1
            elif st.systole:
                agg.trace[stats["min_trace"]] += 1
            if stats["proxy_skips"]:
                agg.proxy_skip_samples += 1
                agg.proxy_skips += stats["proxy_skips"]
        if st.separating_bound and stats["separating"]:
            agg.separating += 1
    return agg


def _collect_star(args) -> _Aggregate:
    return _collect(*args)


@dataclass
class RunReport:
    config: Dict[str, object]
    statistics: Dict[str, object]
    wall_clock_sec: float

    def to_dict(self, include_timing: bool = True) -> Dict[str, object]:
        out = {"config": copy.deepcopy(self.config),
               "statistics": copy.deepcopy(self.statistics)}
        if include_timing:
            out["wall_clock_sec"] = self.wall_clock_sec
        return out

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"run: {self.config}"]
        for name in sorted(self.statistics):
            block = self.statistics[name]
            lines.append(f"\n[{name}]")
            if isinstance(block, dict):
                for key in sorted(block):
                    val = block[key]
                    if isinstance(val, dict):
                        items = ", ".join(f"{k}: {v:.6g}" if isinstance(v, float)
                                          else f"{k}: {v}"
                                          for k, v in sorted(val.items()))
                        lines.append(f"  {key:24s} {{{items}}}")
                    elif isinstance(val, float):
                        lines.append(f"  {key:24s} {val:.6g}")
                    else:
                        lines.append(f"  {key:24s} {val}")
            else:
                lines.append(f"  {block}")
        lines.append(f"\nwall clock: {self.wall_clock_sec:.3f} s")
        return "\n".join(lines)


def _mean_se(hist: Counter, value=lambda k: k) -> Tuple[float, float]:
    total = sum(hist.values())
    if total == 0:
        return float("nan"), float("nan")
    xs = sorted(hist)
    mean = sum(value(x) * hist[x] for x in xs) / total
    if total == 1:
        return mean, float("nan")
    var = sum(hist[x] * (value(x) - mean) ** 2 for x in xs) / (total - 1)
    return mean, math.sqrt(var / total)


def _json_pmf(pmf: Dict, keyfmt=str) -> Dict[str, float]:
    return {keyfmt(k): v for k, v in sorted(pmf.items())}


def _summaries(config: RunConfig, agg: _Aggregate) -> Dict[str, object]:
    st = config.stats
    M = agg.samples
    out: Dict[str, object] = {}
    if st.genus:
        mean, se = _mean_se(agg.genus)
        out["genus"] = {"mean": mean, "se": se,
                        "pmf": _json_pmf(_hist_pmf(agg.genus, M))}
    if st.xk_max:
        xk_block = {}
        for k_idx, hist in enumerate(agg.xk):
            k = k_idx + 1
            lam = 2 ** k / (2 * k)
            emp = _hist_pmf(hist, M)
            mean, se = _mean_se(hist)
            xk_block[str(k)] = {
                "mean": mean, "se": se, "lambda": lam,
                "tv_poisson": _tv_vs_poisson(emp, lam),
                "pmf": _json_pmf(emp),
            }
        out["xk"] = xk_block
    if agg.z:
        z_block = {}
        for w in sorted(agg.z):
            lam = float(canonicalize(w).poisson_mean)
            emp = _hist_pmf(agg.z[w], M)
            mean, se = _mean_se(agg.z[w])
            z_block[w] = {
                "mean": mean, "se": se, "lambda": lam,
                "tv_poisson": _tv_vs_poisson(emp, lam),
                "pmf": _json_pmf(emp),
            }
        out["z"] = z_block
        classes = sorted(agg.z)
        if len(classes) > 1 and agg.z_joint:
            order = _canonical_classes(st.z_classes)
            emp_joint = {key: c / M for key, c in agg.z_joint.items()}
            lams = [float(canonicalize(w).poisson_mean) for w in order]
            out["z_joint"] = {
                "classes": order,
                "tv_product_poisson": _tv_joint_vs_product(emp_joint, lams),
            }
    if st.mell or st.systole:
        pmf = _hist_pmf(agg.mell, M)
        positive = {k: v for k, v in agg.mell.items() if k >= 1}
        pos_total = sum(positive.values())
        block: Dict[str, object] = {
            "pmf": _json_pmf(pmf),
            "genus_zero_fraction": agg.mell.get(0, 0) / M,
            "proxy_skip_sample_fraction": agg.proxy_skip_samples / M,
            "proxy_skips_total": agg.proxy_skips,
            "search_capped": agg.capped,
        }
        if pos_total:
            cond = {k: v / pos_total for k, v in sorted(positive.items())}
            kmax = max(cond)
            ref = {k: mell_limit_pmf(k) for k in range(1, kmax + 1)}
            ref[kmax + 1] = max(0.0, 1.0 - sum(ref.values()))
            block["pmf_conditional"] = _json_pmf(cond)
            block["tv_limit_conditional"] = tv_distance(cond, ref)
            mean, se = _mean_se(Counter(positive))
            block["mean_conditional"] = mean
            block["se_conditional"] = se
        out["mell"] = block
    if st.systole:
        present = sum(agg.trace.values())
        block = {
            "present": present,
            "absent": agg.systole_absent,
            "trace_pmf": _json_pmf(_hist_pmf(agg.trace, present) if present else {}),
        }
        if present:
            mean, se = _mean_se(agg.trace, value=geodesic_length)
            block["mean"] = mean
            block["se"] = se
        out["systole"] = block
    if st.separating_bound:
        f = agg.separating / M
        out["separating"] = {
            "bound": st.separating_bound,
            "count": agg.separating,
            "frequency": f,
            "se": math.sqrt(f * (1 - f) / M),
        }
    return out


def _config_echo(config: RunConfig) -> Dict[str, object]:
    st = config.stats
    return {
        "n": config.n, "samples": config.samples, "seed": config.seed,
        "workers": config.workers, "kernel": _kernel.LANE,
        "stats": {
            "genus": st.genus, "xk_max": st.xk_max,
            "z_classes": list(st.z_classes), "mell": st.mell,
            "systole": st.systole, "separating_bound": st.separating_bound,
        },
    }


def run(config: RunConfig) -> RunReport:
    """Execute the Monte Carlo run described by ``config``.

    Deterministic given (seed, samples, n, statistics); the worker count
    only changes the wall clock.
    """
    config.validate()
    t0 = time.perf_counter()
    if config.workers == 1 or config.samples < 4 * config.workers:
        agg = _collect(config, 0, config.samples)
    else:
        chunks = []
        step = (config.samples + config.workers - 1) // config.workers
        for lo in range(0, config.samples, step):
            chunks.append((config, lo, min(lo + step, config.samples)))
        agg = _Aggregate()
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            for part in pool.map(_collect_star, chunks):
                agg.merge(part)
    elapsed = time.perf_counter() - t0
    return RunReport(config=_config_echo(config),
                     statistics=_summaries(config, agg),
                     wall_clock_sec=elapsed)


def run_exhaustive(n: int, stats: StatsRequest) -> RunReport:
    """Exact statistics over every pairing of {1..6n} (n <= 2 recommended).

    Same report layout as :func:`run`, with the full space as the sample
    set; frequencies are exact rationals reported as floats.
    """
    if not stats.any():
        raise ValueError("no statistics requested")
    t0 = time.perf_counter()
    classes = _canonical_classes(stats.z_classes)
    word_max = max((len(w) for w in classes), default=0)
    want_search = stats.mell or stats.systole
    agg = _Aggregate()
    if stats.xk_max:
        agg.xk = [Counter() for _ in range(stats.xk_max)]
    for w in classes:
        agg.z[w] = Counter()
    for pairing in enumerate_all_pairings(n):
        sigma = pairing.sigma_array()
        gstats = _kernel.graph_stats(
            sigma, xk_max=stats.xk_max, word_max=word_max,
            want_mell=want_search, want_trace=stats.systole,
            sep_bound=stats.separating_bound)
        agg.samples += 1
        if stats.genus:
            agg.genus[gstats["genus"]] += 1
        if stats.xk_max:
            for k_idx, cnt in enumerate(gstats["xk"]):
                agg.xk[k_idx][cnt] += 1
        if classes:
            counts = gstats["words"]
            per = tuple(counts.get(w, 0) for w in classes)
            for w, c in zip(classes, per):
                agg.z[w][c] += 1
            if len(classes) > 1:
                agg.z_joint[per] += 1
        if want_search:
            mell = gstats["mell"]
            agg.mell[mell] += 1
            if gstats["capped"]:
                agg.capped += 1
            elif mell == 0:
                agg.systole_absent += 1
            elif stats.systole:
                agg.trace[gstats["min_trace"]] += 1
            if gstats["proxy_skips"]:
                agg.proxy_skip_samples += 1
                agg.proxy_skips += gstats["proxy_skips"]
        if stats.separating_bound and gstats["separating"]:
            agg.separating += 1
    config = RunConfig(n=n, samples=agg.samples, seed=0, stats=stats)
    report = RunReport(config=_config_echo(config),
                       statistics=_summaries(config, agg),
                       wall_clock_sec=time.perf_counter() - t0)
    report.config["exhaustive"] = True
    return report
