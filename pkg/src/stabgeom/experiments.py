"""Deterministic Monte Carlo and exhaustive experiments.

Each experiment returns an :class:`ExperimentResult` whose rows serialise
to CSV (and JSON) with a fixed header.  Draws are keyed by
``(seed, stream, draw_index)`` and aggregated as integer counters, so the
output is byte-identical for any worker count.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from . import counts
from .errors import ConfigInvalid, OddLForConcentration
from .field import field_of_order
from .homology import PartyStructure, homology_dim, homology_profile
from .linalg import intersect_coordinate
from .sampling import SeedSpec, sample_lagrangian_rng, sample_subspace_rng
from .schubert import (
    brute_tally_A,
    brute_tally_C,
    cells_A,
    cells_C,
    enumerate_grassmannian,
    enumerate_isotropic,
    enumerate_lagrangians,
)

CSV_FIELDS = ("experiment", "q", "l", "k", "j", "s", "N", "epsilon", "trials", "seed",
              "statistic", "exact", "empirical", "bound", "pass")

SIGMAS = 4.0
GHZ_CONSTANT = 1.0 + math.log(2.0)


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    q: int = 2
    l: int = 3
    k: int | None = None
    j: int | None = None
    N_values: tuple[int, ...] = (1, 2, 3, 4)
    epsilon: float | None = None
    trials: int = 10_000
    seed: int = 0
    workers: int = 1
    space: str = "grassmannian"          # intersection experiment: grassmannian | lagrangian
    concentration: bool | None = None    # lag theorem: None = only for even l
    exhaustive_limit: int = 5_000
    stream: int = 0                      # offset selecting an independent family of RNG streams

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigInvalid(f"trials must be >= 1, got {self.trials}")
        if self.workers < 1:
            raise ConfigInvalid(f"workers must be >= 1, got {self.workers}")
        if not self.N_values or min(self.N_values) < 1:
            raise ConfigInvalid(f"N values must be >= 1, got {self.N_values}")
        if not 0 <= self.stream < 2**23:
            raise ConfigInvalid(f"stream must lie in 0..2^23-1, got {self.stream}")
        if self.epsilon is not None and not self.epsilon > 0:
            raise ConfigInvalid(f"epsilon must be > 0, got {self.epsilon}")


@dataclass
class ResultRow:
    experiment: str
    statistic: str
    q: int | None = None
    l: int | None = None
    k: int | None = None
    j: int | None = None
    s: int | None = None
    N: int | None = None
    epsilon: float | None = None
    trials: int | None = None
    seed: int | None = None
    exact: float | Fraction | int | None = None
    empirical: float | Fraction | int | None = None
    bound: float | None = None
    passed: bool | None = None

    def cells(self) -> dict[str, str]:
        def fmt(x):
            if x is None:
                return ""
            if isinstance(x, str):
                return x
            if isinstance(x, bool):
                return "true" if x else "false"
            if isinstance(x, int):
                return str(x)
            return repr(float(x))

        out = {name: fmt(getattr(self, name)) for name in CSV_FIELDS[:-1]}
        out["pass"] = fmt(self.passed)
        return out


@dataclass
class ExperimentResult:
    experiment: str
    rows: list[ResultRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed is not False for r in self.rows)

    @property
    def failures(self) -> list[ResultRow]:
        return [r for r in self.rows if r.passed is False]

    def find(self, statistic: str, **params) -> ResultRow:
        for r in self.rows:
            if r.statistic == statistic and all(getattr(r, k) == v for k, v in params.items()):
                return r
        raise KeyError(f"no row {statistic} {params}")

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in self.rows:
            w.writerow(r.cells())
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps([r.cells() for r in self.rows], indent=2)


# --------------------------------------------------------------------------
# parallel draw machinery


def _trial_gr_meet(params, rng):
    q, n, k, j = params
    L = sample_subspace_rng(field_of_order(q), n, k, rng)
    return intersect_coordinate(L, range(j)).dim


def _trial_lag_meet(params, rng):
    q, m, j = params
    L = sample_lagrangian_rng(field_of_order(q), m, rng)
    return intersect_coordinate(L, list(range(j)) + list(range(m, m + j))).dim


def _trial_css_profile(params, rng):
    q, l, k, N = params
    L = sample_subspace_rng(field_of_order(q), N * l, N * k, rng)
    prof = homology_profile(L, PartyStructure(l, N, "plain"))
    return prof.chain_dims, prof.h_dims


def _trial_lag_profile(params, rng):
    q, l, N = params
    L = sample_lagrangian_rng(field_of_order(q), N * l, rng)
    prof = homology_profile(L, PartyStructure(l, N, "symplectic"))
    return prof.chain_dims, prof.h_dims


def _trial_ghz(params, rng):
    l, N = params
    L = sample_lagrangian_rng(field_of_order(2), N * l, rng)
    return homology_dim(L, PartyStructure(l, N, "symplectic"), 2)


def _trial_sample_gr(params, rng):
    q, l, k = params
    return sample_subspace_rng(field_of_order(q), l, k, rng).rows


def _trial_sample_lag(params, rng):
    q, l = params
    return sample_lagrangian_rng(field_of_order(q), l, rng).rows


TRIALS: dict[str, Callable] = {
    "gr_meet": _trial_gr_meet,
    "lag_meet": _trial_lag_meet,
    "css_profile": _trial_css_profile,
    "lag_profile": _trial_lag_profile,
    "ghz": _trial_ghz,
    "sample_gr": _trial_sample_gr,
    "sample_lag": _trial_sample_lag,
}


def _run_chunk(task: str, params, master: int, stream: int, start: int, stop: int) -> Counter:
    fn = TRIALS[task]
    seed = SeedSpec(master, stream)
    tally: Counter = Counter()
    for idx in range(start, stop):
        tally[fn(params, seed.rng(idx))] += 1
    return tally


def run_draws(task: str, params, trials: int, master: int, stream: int, workers: int = 1) -> Counter:
    """Outcome counts of ``trials`` independent draws, split over ``workers`` processes."""
    if workers <= 1:
        return _run_chunk(task, params, master, stream, 0, trials)
    n_chunks = min(trials, workers * 4)
    bounds = [trials * i // n_chunks for i in range(n_chunks + 1)]
    total: Counter = Counter()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_chunk, task, params, master, stream, a, b)
                   for a, b in zip(bounds, bounds[1:])]
        for fut in futures:
            total.update(fut.result())
    return total


def stream_id(kind: str, N: int, extra: int = 0, offset: int = 0) -> int:
    code = {"intersection": 1, "css_theorem": 2, "lag_theorem": 3, "ghz": 4, "sample": 5}[kind]
    return (offset << 40) | (code << 32) | (N << 16) | extra


def binomial_ok(empirical: Fraction, p: Fraction, trials: int, sigmas: float = SIGMAS) -> bool:
    """|empirical - p| within ``sigmas`` binomial standard deviations."""
    sd = math.sqrt(float(p * (1 - p)) / trials)
    return abs(float(empirical - p)) <= sigmas * sd


def mean_ok(values: Counter, exact: Fraction, sigmas: float = SIGMAS) -> tuple[Fraction, bool]:
    """Sample mean of integer-weighted values and whether it is within ``sigmas`` standard errors of ``exact``."""
    n = sum(values.values())
    mean = Fraction(sum(v * c for v, c in values.items()), n)
    var = sum(c * (v - mean) ** 2 for v, c in values.items()) / max(n - 1, 1)
    se = math.sqrt(float(var) / n)
    if se == 0:
        return mean, mean == exact
    return mean, abs(float(mean - exact)) <= sigmas * se


def _trend_row(experiment, statistic, series: dict[int, float], cfg: ExperimentConfig, **params) -> ResultRow:
    """first-N value as ``exact``, last-N value as ``empirical``; pass iff it went down.

    A series that is zero at both ends passes: there is nothing to decrease.
    """
    Ns = sorted(series)
    first, last = series[Ns[0]], series[Ns[-1]]
    ok = last < first or (first == 0 and last == 0)
    return ResultRow(experiment, f"trend:{statistic}", q=cfg.q, l=cfg.l, N=Ns[-1], trials=cfg.trials,
                     seed=cfg.seed, exact=first, empirical=last, passed=ok, **params)


# --------------------------------------------------------------------------
# intersection experiment


def run_intersection_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Non-generic intersection probability and boundary tail against their bounds."""
    lag = cfg.space == "lagrangian"
    if cfg.space not in ("grassmannian", "lagrangian"):
        raise ConfigInvalid(f"unknown sample space {cfg.space!r}")
    l, j, q = cfg.l, cfg.j, cfg.q
    k = cfg.k
    if j is None or not 0 <= j <= l or (not lag and (k is None or not 0 <= k <= l)):
        raise ConfigInvalid(f"invalid parameters l={l}, k={k}, j={j}")
    field_of_order(q)
    res = ExperimentResult("intersection")
    boundary = (2 * j == l) if lag else (j + k == l)
    tail_applies = (2 * j <= l) if lag else boundary
    eps = cfg.epsilon if cfg.epsilon is not None else 1.0
    base = dict(q=q, l=l, k=None if lag else k, j=j, trials=cfg.trials, seed=cfg.seed)

    for N in cfg.N_values:
        if lag:
            tally = run_draws("lag_meet", (q, N * l, N * j), cfg.trials, cfg.seed,
                              stream_id("intersection", N, 1, offset=cfg.stream), cfg.workers)
            generic = max(0, (2 * j - l) * N)
        else:
            tally = run_draws("gr_meet", (q, N * l, N * k, N * j), cfg.trials, cfg.seed,
                              stream_id("intersection", N, offset=cfg.stream), cfg.workers)
            generic = max(0, (j + k - l) * N)
        n = cfg.trials
        emp = Fraction(sum(c for d, c in tally.items() if d != generic), n)
        if lag:
            exact = counts.lag_nongeneric_probability(l, j, N, q)
        else:
            exact = counts.css_nongeneric_probability(l, k, j, N, q)
        if not boundary:
            bound = counts.deviation_bound_lag(l, j, N, q) if lag else counts.deviation_bound_css(l, k, j, N, q)
            ok = exact <= Fraction(bound) and binomial_ok(emp, exact, n)
        else:
            bound, ok = None, binomial_ok(emp, exact, n)
        res.rows.append(ResultRow("intersection", "P(nongeneric)", N=N, exact=exact, empirical=emp,
                                  bound=bound, passed=ok, **base))

        if tail_applies:
            s0 = math.ceil(Fraction(eps) * N)
            if lag:
                texact = counts.lag_tail_probability(l, j, N, eps, q)
            else:
                texact = counts.css_tail_probability(l, k, j, N, eps, q)
            temp = Fraction(sum(c for d, c in tally.items() if d >= s0), n)
            tbound = counts.tail_bound(q, N, eps)
            ok = texact <= Fraction(tbound) and temp <= Fraction(tbound) and binomial_ok(temp, texact, n)
            res.rows.append(ResultRow("intersection", "P(dim>=N*eps)", N=N, s=s0, epsilon=eps, exact=texact,
                                      empirical=temp, bound=tbound, passed=ok, **base))
            if _enumeration_size(lag, q, N * l, None if lag else N * k) <= cfg.exhaustive_limit:
                hits = _exhaustive_meet_count(lag, q, N * l, None if lag else N * k, N * j, s0)
                size = counts.lagrangian_count(N * l, q) if lag else counts.grassmannian_count(N * l, N * k, q)
                eemp = Fraction(hits, size)
                res.rows.append(ResultRow("intersection", "exhaustive:P(dim>=N*eps)", N=N, s=s0, epsilon=eps,
                                          exact=texact, empirical=eemp, bound=tbound,
                                          passed=eemp == texact and eemp <= Fraction(tbound), **base))
    return res


def _enumeration_size(lag: bool, q: int, n: int, k: int | None) -> int:
    # Lagrangians are enumerated by filtering Gr(2n, n)
    return counts.grassmannian_count(2 * n, n, q) if lag else counts.grassmannian_count(n, k, q)


def _exhaustive_meet_count(lag: bool, q: int, n: int, k: int | None, j: int, s0: int) -> int:
    if lag:
        support = list(range(j)) + list(range(n, n + j))
        return sum(1 for L in enumerate_lagrangians(n, q) if intersect_coordinate(L, support).dim >= s0)
    return sum(1 for L in enumerate_grassmannian(n, k, q) if intersect_coordinate(L, range(j)).dim >= s0)


# --------------------------------------------------------------------------
# theorem experiments


def _profile_rows(res: ExperimentResult, tally: Counter, cfg: ExperimentConfig, N: int, k, degree: int | None,
                  chi: int | None, exact_chain: list[Fraction], euler_sign: int, exhaustive: Fraction | None):
    name = res.experiment
    l, n = cfg.l, cfg.trials
    base = dict(q=cfg.q, l=l, k=k, N=N, trials=n, seed=cfg.seed)
    series = {}
    for j in range(l + 1):
        pc = Fraction(sum(c for (ch, h), c in tally.items() if ch[j]), n)
        ph = Fraction(sum(c for (ch, h), c in tally.items() if h[j]), n)
        res.rows.append(ResultRow(name, "P(C^j!=0)", j=j, empirical=pc, **base))
        res.rows.append(ResultRow(name, "P(H^j!=0)", j=j, empirical=ph, **base))
        series[("C", j)] = pc
        series[("H", j)] = ph

    # finite-N Euler number: exact expectation from the counting formulas
    euler_vals: Counter = Counter()
    for (ch, h), c in tally.items():
        euler_vals[Fraction(euler_sign * sum((-1) ** i * x for i, x in enumerate(ch)), N)] += c
    exact_euler = euler_sign * counts.expected_euler(exact_chain) / N
    mean, ok = mean_ok(euler_vals, exact_euler)
    res.rows.append(ResultRow(name, "mean(sign*euler/N)", exact=exact_euler, empirical=mean, passed=ok, **base))
    for j in range(1, l + 1):
        vals: Counter = Counter()
        for (ch, h), c in tally.items():
            vals[ch[j]] += c
        m, ok = mean_ok(vals, exact_chain[j])
        res.rows.append(ResultRow(name, "mean(dim C^j)", j=j, exact=exact_chain[j], empirical=m, passed=ok, **base))

    if degree is not None:
        vals = Counter()
        for (ch, h), c in tally.items():
            vals[Fraction(h[degree], N)] += c
        m = Fraction(sum(v * c for v, c in vals.items()), n)
        series["mean"] = m
        res.rows.append(ResultRow(name, "mean(dim H^c/N)", j=degree, exact=chi, empirical=m, **base))
        if exhaustive is not None:
            _, ok = mean_ok(vals, exhaustive)
            res.rows.append(ResultRow(name, "exhaustive:mean(dim H^c/N)", j=degree, exact=exhaustive,
                                      empirical=m, passed=ok, **base))
        if cfg.epsilon is not None:
            far = Fraction(sum(c for v, c in vals.items() if abs(v - chi) >= Fraction(cfg.epsilon)), n)
            res.rows.append(ResultRow(name, "P(|dim H^c/N-chi|>=eps)", j=degree, epsilon=cfg.epsilon,
                                      empirical=far, **base))
    return series


def _trend_rows(res: ExperimentResult, cfg: ExperimentConfig, per_N: dict[int, dict], k,
                chain_forbidden: Iterable[int], homology_forbidden: Iterable[int],
                degree: int | None, chi: int | None):
    name = res.experiment
    if len(per_N) < 2:
        return
    for j in chain_forbidden:
        res.rows.append(_trend_row(name, "P(C^j!=0)", {N: float(s[("C", j)]) for N, s in per_N.items()}, cfg, k=k, j=j))
    for j in homology_forbidden:
        res.rows.append(_trend_row(name, "P(H^j!=0)", {N: float(s[("H", j)]) for N, s in per_N.items()}, cfg, k=k, j=j))
    if degree is not None:
        res.rows.append(_trend_row(name, "|mean(dim H^c/N)-chi|",
                                   {N: abs(float(s["mean"]) - chi) for N, s in per_N.items()}, cfg, k=k, j=degree))


def _exhaustive_mean(spaces: Iterable, parties: PartyStructure, degree: int) -> Fraction | None:
    total = count = 0
    for L in spaces:
        total += homology_profile(L, parties).h_dims[degree]
        count += 1
    return Fraction(total, count * parties.N)


def run_css_theorem_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Chain/homology statistics of uniform L in Gr(Nl, Nk), plain layout."""
    l, k, q = cfg.l, cfg.k, cfg.q
    if l < 2 or k is None or not 0 <= k <= l:
        raise ConfigInvalid(f"invalid parameters l={l}, k={k}")
    field_of_order(q)
    res = ExperimentResult("css_theorem")
    chi = counts.expected_euler_css(l, k)
    degree = l - k + 1 if l - k + 1 <= l else None
    per_N = {}
    for N in cfg.N_values:
        tally = run_draws("css_profile", (q, l, k, N), cfg.trials, cfg.seed,
                          stream_id("css_theorem", N, offset=cfg.stream), cfg.workers)
        exhaustive = None
        if degree is not None and counts.grassmannian_count(N * l, N * k, q) <= cfg.exhaustive_limit:
            exhaustive = _exhaustive_mean(enumerate_grassmannian(N * l, N * k, q), PartyStructure(l, N), degree)
        per_N[N] = _profile_rows(res, tally, cfg, N, k, degree, chi, counts.expected_chain_dims_css(l, k, N, q),
                                 (-1) ** (l - k + 1), exhaustive)
    chain_forbidden = range(0, l - k)
    homology_forbidden = [j for j in range(l + 1) if j < l - k or j > l - k + 2]
    _trend_rows(res, cfg, per_N, k, chain_forbidden, homology_forbidden, degree, chi)
    return res


def run_lag_theorem_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Chain/homology statistics of uniform Lagrangians of F_q^{2Nl}, symplectic layout."""
    l, q = cfg.l, cfg.q
    if l < 2:
        raise ConfigInvalid(f"need l >= 2, got {l}")
    field_of_order(q)
    conc = cfg.concentration
    if conc and l % 2:
        raise OddLForConcentration(f"concentration statements need even l, got l={l}")
    if conc is None:
        conc = l % 2 == 0
    res = ExperimentResult("lag_theorem")
    chi = counts.expected_euler_lag(l) if conc else None
    degree = l // 2 + 1 if conc else None
    # sign of the generic Euler number: (-1)^(l/2+1) for even l
    sign = (-1) ** (l // 2 + 1)
    per_N = {}
    for N in cfg.N_values:
        tally = run_draws("lag_profile", (q, l, N), cfg.trials, cfg.seed,
                          stream_id("lag_theorem", N, offset=cfg.stream), cfg.workers)
        exhaustive = None
        if degree is not None and _enumeration_size(True, q, N * l, None) <= cfg.exhaustive_limit:
            exhaustive = _exhaustive_mean(enumerate_lagrangians(N * l, q), PartyStructure(l, N, "symplectic"), degree)
        per_N[N] = _profile_rows(res, tally, cfg, N, None, degree, chi, counts.expected_chain_dims_lag(l, N, q),
                                 sign, exhaustive)
    chain_forbidden = [j for j in range(l + 1) if 2 * j < l]
    homology_forbidden = [j for j in range(l + 1) if 2 * j < l or j > l / 2 + 1]
    _trend_rows(res, cfg, per_N, None, chain_forbidden, homology_forbidden, degree, chi)
    return res


def ghz_bound(l: int, N: int) -> float:
    """(1 + log 2) 2^{-(l-4)N}, padded upward."""
    return math.nextafter(GHZ_CONSTANT * 2.0 ** (-(l - 4) * N) * (1 + 2.0**-48), math.inf)


def run_ghz_extraction_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Probability that a uniform binary Lagrangian admits GHZ extraction."""
    l = cfg.l
    if cfg.q != 2:
        raise ConfigInvalid("GHZ extraction experiment is binary only (q = 2)")
    if l < 4:
        raise ConfigInvalid(f"need l >= 4, got {l}")
    eps = cfg.epsilon if cfg.epsilon is not None else 1.0
    res = ExperimentResult("ghz")
    base = dict(q=2, l=l, j=2, trials=cfg.trials, seed=cfg.seed)
    for N in cfg.N_values:
        tally = run_draws("ghz", (l, N), cfg.trials, cfg.seed, stream_id("ghz", N, offset=cfg.stream), cfg.workers)
        if l >= 5:
            emp = Fraction(sum(c for d, c in tally.items() if d), cfg.trials)
            bound = ghz_bound(l, N)
            res.rows.append(ResultRow("ghz", "P(H^2!=0)", N=N, empirical=emp, bound=bound,
                                      passed=emp <= Fraction(bound), **base))
        else:
            s0 = math.ceil(Fraction(eps) * N)
            emp = Fraction(sum(c for d, c in tally.items() if d >= s0), cfg.trials)
            bound = counts.tail_bound(2, N, eps)
            res.rows.append(ResultRow("ghz", "P(dim H^2>=N*eps)", N=N, s=s0, epsilon=eps, empirical=emp,
                                      bound=bound, passed=emp <= Fraction(bound), **base))
    return res


# --------------------------------------------------------------------------
# sampling frequencies


def run_sample_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Empirical frequency of every outcome of the Gr / LGr sampler."""
    lag = cfg.space == "lagrangian"
    q, l, k = cfg.q, cfg.l, cfg.k
    if lag:
        total = counts.lagrangian_count(l, q)
        tally = run_draws("sample_lag", (q, l), cfg.trials, cfg.seed,
                          stream_id("sample", 0, 1, offset=cfg.stream), cfg.workers)
        outcomes = list(enumerate_lagrangians(l, q)) if total <= cfg.exhaustive_limit else None
    else:
        if k is None or not 0 <= k <= l:
            raise ConfigInvalid(f"invalid parameters l={l}, k={k}")
        total = counts.grassmannian_count(l, k, q)
        tally = run_draws("sample_gr", (q, l, k), cfg.trials, cfg.seed,
                          stream_id("sample", 0, offset=cfg.stream), cfg.workers)
        outcomes = list(enumerate_grassmannian(l, k, q)) if total <= cfg.exhaustive_limit else None
    res = ExperimentResult("sample")
    p = Fraction(1, total)
    keys = [L.rows for L in outcomes] if outcomes is not None else sorted(tally, key=repr)
    amb = 2 * l if lag else l
    for key in keys:
        emp = Fraction(tally.get(key, 0), cfg.trials)
        label = "freq[" + "|".join(_row_label(r, amb) for r in key) + "]"
        res.rows.append(ResultRow("sample", label, q=q, l=l, k=None if lag else k, trials=cfg.trials,
                                  seed=cfg.seed, exact=p, empirical=emp, passed=binomial_ok(emp, p, cfg.trials)))
    return res


def _row_label(row, n: int) -> str:
    if isinstance(row, int):
        return "".join(str(row >> i & 1) for i in range(n))
    return "".join(str(x) for x in row)


# --------------------------------------------------------------------------
# oracle suite


@dataclass(frozen=True)
class OracleRanges:
    type_a: tuple[tuple[int, int], ...] = ((2, 4), (3, 4))      # (q, max l)
    type_c: tuple[tuple[int, int], ...] = ((2, 3), (3, 2))      # (q, max l)
    genfun_l: int = 8
    genfun_q: tuple[int, ...] = (2, 3, 5)


def run_oracle_suite(ranges: OracleRanges = OracleRanges()) -> ExperimentResult:
    """Every closed-form count against exhaustive enumeration, plus identities."""
    res = ExperimentResult("oracle")

    def add(stat, exact, empirical, **params):
        res.rows.append(ResultRow("oracle", stat, exact=exact, empirical=empirical,
                                  passed=exact == empirical, **params))

    for q, lmax in ranges.type_a:
        for l in range(0, lmax + 1):
            for k in range(0, l + 1):
                t = brute_tally_A(l, k, q)
                add("G", counts.grassmannian_count(l, k, q), t.total, q=q, l=l, k=k)
                for j in range(l + 1):
                    add("F", counts.avoid_count_F(l, k, j, q), t.avoid.get(j, 0), q=q, l=l, k=k, j=j)
                    for s in range(max(0, j + k - l), min(j, k) + 1):
                        add("H", counts.intersection_count_H(l, k, j, s, q), t.meet.get((j, s), 0),
                            q=q, l=l, k=k, j=j, s=s)
                    add("sum_s H", counts.grassmannian_count(l, k, q),
                        sum(counts.intersection_count_H(l, k, j, s, q)
                            for s in range(max(0, j + k - l), min(j, k) + 1)), q=q, l=l, k=k, j=j)
                cell_ok = all(t.cells.get(c, 0) == q**d for c, d in cells_A(l, k))
                add("cells_A:q^d", 1, int(cell_ok), q=q, l=l, k=k)

    for q, lmax in ranges.type_c:
        for l in range(1, lmax + 1):
            t = brute_tally_C(l, q)
            add("L", counts.lagrangian_count(l, q), t.total, q=q, l=l)
            for k in range(l + 1):
                iso = sum(1 for _ in enumerate_isotropic(l, k, q))
                add("Lk", counts.isotropic_count(l, k, q), iso, q=q, l=l, k=k)
            for j in range(l + 1):
                add("K", counts.avoidE_count_K(l, j, q), t.avoid_E.get(j, 0), q=q, l=l, j=j)
                add("J", counts.lag_avoid_count_J(l, j, q), t.avoid_EF.get(j, 0), q=q, l=l, j=j)
                for s in range(max(0, 2 * j - l), j + 1):
                    add("M", counts.lag_intersection_count_M(l, j, s, q), t.meet_EF.get((j, s), 0),
                        q=q, l=l, j=j, s=s)
                add("sum_s M", counts.lagrangian_count(l, q),
                    sum(counts.lag_intersection_count_M(l, j, s, q) for s in range(max(0, 2 * j - l), j + 1)),
                    q=q, l=l, j=j)
            cell_ok = all(t.cells.get(c, 0) == q**d for c, d in cells_C(l))
            add("cells_C:q^d", 1, int(cell_ok), q=q, l=l)

    for q in ranges.genfun_q:
        for l in range(ranges.genfun_l + 1):
            for k in range(l + 1):
                add("genfun_A", counts.grassmannian_count(l, k, q), sum(q**d for _, d in cells_A(l, k)),
                    q=q, l=l, k=k)
            add("genfun_C", counts.lagrangian_count(l, q), sum(q**d for _, d in cells_C(l)), q=q, l=l)
    return res


RUNNERS = {
    "intersection": run_intersection_experiment,
    "css_theorem": run_css_theorem_experiment,
    "lag_theorem": run_lag_theorem_experiment,
    "ghz": run_ghz_extraction_experiment,
    "sample": run_sample_experiment,
}


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    try:
        runner = RUNNERS[cfg.kind]
    except KeyError:
        raise ConfigInvalid(f"unknown experiment kind {cfg.kind!r}") from None
    return runner(cfg)


__all__ = [
    "CSV_FIELDS", "ExperimentConfig", "ExperimentResult", "OracleRanges", "ResultRow", "ghz_bound",
    "run_css_theorem_experiment", "run_draws", "run_experiment", "run_ghz_extraction_experiment",
    "run_intersection_experiment", "run_lag_theorem_experiment", "run_oracle_suite", "run_sample_experiment",
]
