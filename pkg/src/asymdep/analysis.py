"""n-sweeps over families and decay classification per AI condition.

A sweep computes a set of dependence metrics for each n in a family, then
classifies each metric series as CONVERGES / STALLS / INCONCLUSIVE. The
thresholds are artifact policy: limits in the source definitions are
asymptotic, so a finite-sample decision rule is required; the defaults are
chosen so the packaged families classify according to their known behavior
with as few as 4 sweep points.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CapabilityError, InputError
from .families import (
    FamilyInstance,
    bernoulli_perturbation_family,
    binary_coding_family,
    markov_shift_family,
    rectangle_gap,
    two_state_chain,
)
from .measures import dependence_matrix
from .metrics import (
    MetricValue,
    alpha_coefficient,
    beta_partition,
    bl_to_product,
    cf_gap_lattice,
    cov_sup_pm1,
    prokhorov_to_product_upper,
    variation_norm,
)
from .spaces import ProductMetricKind

VERDICT_CONVERGES = "CONVERGES"
VERDICT_STALLS = "STALLS"
VERDICT_INCONCLUSIVE = "INCONCLUSIVE"

# metric name -> AI condition it operationalizes (priority order per condition)
AI_CONDITION_METRICS = {
    "AI-4": ("variation", "beta"),
    "AI-3": ("alpha",),
    "AI-2": ("rectangle",),
    "AI-1": ("prokhorov", "bl"),
    "AI-0": ("cov_sup", "cf"),
}

KNOWN_METRICS = ("variation", "alpha", "beta", "rectangle", "cov_sup", "prokhorov", "bl", "cf")

FAMILY_NAMES = ("binary_coding", "bernoulli_perturbation", "markov_shift")


@dataclass(frozen=True)
class DecayVerdict:
    verdict: str
    rate: float | None = None
    fit_quality: float | None = None
    model: str | None = None


@dataclass(frozen=True)
class SweepSpec:
    family: str
    n_values: tuple[int, ...]
    metrics: tuple[str, ...]
    product_metric: ProductMetricKind = ProductMetricKind.SUM
    modes: dict = field(default_factory=dict)  # metric -> "exact" | "heuristic"
    family_params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        ns = tuple(int(n) for n in self.n_values)
        object.__setattr__(self, "n_values", ns)
        if not ns or any(b <= a for a, b in zip(ns, ns[1:])):
            raise InputError("n values must be nonempty and strictly increasing")
        mets = tuple(self.metrics)
        unknown = [m for m in mets if m not in KNOWN_METRICS]
        if unknown:
            raise InputError(f"unknown metrics requested: {unknown}")
        object.__setattr__(self, "metrics", mets)


@dataclass(frozen=True)
class SweepRow:
    family: str
    n: int
    metric: str
    value: Fraction | float | None
    exact: bool
    mode: str
    note: str = ""


@dataclass(frozen=True)
class DecayReport:
    rows: tuple[SweepRow, ...]
    verdicts: dict  # "AI-k" -> DecayVerdict

    def series(self, metric: str) -> list[tuple[int, float]]:
        return [
            (r.n, float(r.value)) for r in self.rows if r.metric == metric and r.value is not None
        ]


def _fit_loglog(xs, ys):
    """Least-squares fit of y against x; returns (slope, r_squared)."""
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    syy = sum((y - my) ** 2 for y in ys)
    if sxx == 0:
        return 0.0, 0.0
    slope = sxy / sxx
    r2 = 1.0 if syy == 0 else (sxy * sxy) / (sxx * syy)
    return slope, r2


def classify_decay(
    series,
    *,
    converge_frac: float = 0.5,
    stall_frac: float = 0.75,
    min_fit_quality: float = 0.8,
) -> DecayVerdict:
    """Classify a (n, value) series as CONVERGES / STALLS / INCONCLUSIVE.

    CONVERGES: the last value dropped below converge_frac of the peak and a
    power-law or exponential fit shows a decreasing trend of sufficient
    quality (or the tail is exactly zero). STALLS: the whole second half of
    the series holds at stall_frac of the peak. Otherwise INCONCLUSIVE.
    Thresholds are configurable; the defaults classify slow 1/sqrt(n)-type
    decay as convergent from as few as 4 points while keeping flat series
    stalled.
    """
    pts = [(int(n), max(float(v), 0.0)) for n, v in series]
    if len(pts) < 4:
        raise InputError("classify_decay needs at least 4 points")
    pts.sort()
    values = [v for _, v in pts]
    if values[-1] == 0.0:
        return DecayVerdict(VERDICT_CONVERGES, rate=None, fit_quality=1.0, model="zero-tail")
    peak = max(values)
    tail = values[len(values) // 2 :]
    if min(tail) >= stall_frac * peak:
        return DecayVerdict(VERDICT_STALLS)
    positive = [(n, v) for n, v in pts if v > 0]
    best = None
    if len(positive) >= 3:
        logs = [math.log(v) for _, v in positive]
        for model, xs in (
            ("power", [math.log(n) for n, _ in positive]),
            ("exponential", [float(n) for n, _ in positive]),
        ):
            slope, r2 = _fit_loglog(xs, logs)
            if best is None or r2 > best[2]:
                best = (model, slope, r2)
    if (
        best is not None
        and values[-1] < converge_frac * peak
        and best[1] < 0
        and best[2] >= min_fit_quality
    ):
        return DecayVerdict(VERDICT_CONVERGES, rate=best[1], fit_quality=best[2], model=best[0])
    return DecayVerdict(VERDICT_INCONCLUSIVE)


def build_family(name: str, n: int, params: dict | None = None) -> FamilyInstance:
    params = dict(params or {})
    if name == "binary_coding":
        return binary_coding_family(n)
    if name == "bernoulli_perturbation":
        return bernoulli_perturbation_family(n)
    if name == "markov_shift":
        p = params.get("p", Fraction(1, 4))
        transition, stationary = two_state_chain(p)
        return markov_shift_family(transition, stationary, n)
    raise InputError(f"unknown family {name!r}")


def _compute_metric(inst: FamilyInstance, metric: str, kind: ProductMetricKind, mode: str):
    """Returns (value, exact, mode) for one sweep cell."""
    j = inst.joint
    if metric == "variation":
        mv = variation_norm(dependence_matrix(j))
    elif metric == "alpha":
        mv = alpha_coefficient(j, mode=mode)
    elif metric == "beta":
        mv = beta_partition(j)
    elif metric == "cov_sup":
        mv = cov_sup_pm1(j, mode=mode)
    elif metric == "prokhorov":
        mv = prokhorov_to_product_upper(j, kind)
    elif metric == "bl":
        mv = bl_to_product(j, kind)
    elif metric == "rectangle":
        rect = inst.params.get("rectangle")
        if rect is None:
            raise CapabilityError(f"family {inst.family!r} declares no AI-2 rectangle")
        return rectangle_gap(j, *rect), True, "exact"
    elif metric == "cf":
        gap, _, _ = cf_gap_lattice(j)
        return gap, False, "lattice"
    else:
        raise InputError(f"unknown metric {metric!r}")
    return mv.value, mv.exact, mode


def sweep(spec: SweepSpec) -> DecayReport:
    """Compute every requested metric at every n and classify each AI condition."""
    rows = []
    for n in spec.n_values:
        inst = build_family(spec.family, n, spec.family_params)
        for metric in spec.metrics:
            mode = spec.modes.get(metric, "exact")
            try:
                value, exact, used_mode = _compute_metric(inst, metric, spec.product_metric, mode)
                rows.append(SweepRow(spec.family, n, metric, value, exact, used_mode))
            except CapabilityError as exc:
                rows.append(SweepRow(spec.family, n, metric, None, False, mode, note=str(exc)))
    rows.sort(key=lambda r: (r.n, r.metric))
    report_rows = tuple(rows)
    verdicts = {}
    for condition, candidates in AI_CONDITION_METRICS.items():
        for metric in candidates:
            series = [
                (r.n, float(r.value))
                for r in report_rows
                if r.metric == metric and r.value is not None
            ]
            if len(series) >= 4:
                verdicts[condition] = classify_decay(series)
                break
    return DecayReport(report_rows, verdicts)


def report_markdown(report: DecayReport) -> str:
    lines = ["| family | n | metric | value | exact | mode |", "|---|---|---|---|---|---|"]
    for r in report.rows:
        val = "-" if r.value is None else (str(r.value) if r.exact else f"{float(r.value):.9g}")
        lines.append(f"| {r.family} | {r.n} | {r.metric} | {val} | {r.exact} | {r.mode} |")
    lines.append("")
    for condition in sorted(report.verdicts):
        v = report.verdicts[condition]
        extra = ""
        if v.rate is not None:
            extra = f" (model={v.model}, rate={v.rate:.3f}, fit={v.fit_quality:.3f})"
        lines.append(f"- {condition}: {v.verdict}{extra}")
    return "\n".join(lines)
