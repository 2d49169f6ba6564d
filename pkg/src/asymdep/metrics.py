"""Dependence functionals and distribution distances.

The five graded independence functionals live here:

* variation_norm        -- total variation of the dependence signed measure
* alpha_coefficient     -- sup over measurable rectangles of the signed mass
* beta_partition        -- sup over finite partition pairs (complete regularity)
* cov_sup_pm1 / cov_gap -- covariance gaps for +-1-valued and general functions
* prokhorov_distance / bl_distance / cf_gap -- weak-convergence distances

Rational-mode metrics (variation, alpha, beta, cov) are exact; the geometric
metrics (Prokhorov, bounded-Lipschitz) are float-valued with stated
tolerances. Each MetricValue carries a certificate that re-evaluates to the
reported value.
"""
from __future__ import annotations

import cmath
import enum
import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .engines import (
    FlowNetwork,
    LinearProgram,
    LPStatus,
    max_flow,
    solve_lp,
)
from .errors import CapabilityError, InputError
from .measures import (
    DependenceMatrix,
    DiscreteMeasure,
    JointMeasure,
    dependence_matrix,
    joint_and_product_on_product,
    marginals,
)
from .spaces import ProductMetricKind

ALPHA_EXACT_CUTOFF = 22
BETA_EXACT_CUTOFF = 5
BL_SUPPORT_CUTOFF = 600
HEURISTIC_RESTARTS = 32
LP_TOL = 1e-9

ZERO = Fraction(0)


class MetricName(enum.Enum):
    VARIATION = "variation"
    ALPHA = "alpha"
    BETA_PARTITION = "beta_partition"
    COV_SUP = "cov_sup"
    PROKHOROV = "prokhorov"
    BL = "bl"
    CF_GAP = "cf_gap"


@dataclass(frozen=True)
class MetricValue:
    name: MetricName
    value: Fraction | float
    exact: bool
    certificate: dict | None = None

    def __post_init__(self) -> None:
        if self.value < 0:
            raise InputError("metric values are nonnegative")
        if self.exact and not isinstance(self.value, (Fraction, int)):
            raise InputError("exact metric values must be rational")

    def as_float(self) -> float:
        return float(self.value)


# ---------------------------------------------------------------------------
# Rational-mode functionals
# ---------------------------------------------------------------------------

def variation_norm(d: DependenceMatrix) -> MetricValue:
    """Total variation: sum of absolute entries (the AI-4 functional)."""
    total = sum(abs(x) for row in d.entries for x in row)
    signs = tuple(tuple(1 if x >= 0 else -1 for x in row) for row in d.entries)
    return MetricValue(MetricName.VARIATION, total, True, {"signs": signs})


def _oriented_entries(d: DependenceMatrix) -> tuple[list[list[Fraction]], bool]:
    """Entries with the smaller side as rows; returns (matrix, swapped)."""
    rows = [list(r) for r in d.entries]
    if len(rows) <= len(rows[0]):
        return rows, False
    ncols = len(rows[0])
    return [[rows[i][j] for i in range(len(rows))] for j in range(ncols)], True


def _best_subset_scan(mat: list[list[Fraction]]):
    """Max over row subsets A of max(pos-part, neg-part) of the aggregated row.

    Gray-code iteration toggles one row per step so the aggregate stays
    incremental. Returns (value, A, B) with deterministic lexicographic
    tie-breaking on A.
    """
    m, k = len(mat), len(mat[0])
    agg = [ZERO] * k
    in_set = [False] * m
    best = (ZERO, (), ())
    for step in range(1, 2 ** m):
        bit = (step & -step).bit_length() - 1
        row = mat[bit]
        if in_set[bit]:
            for j in range(k):
                agg[j] -= row[j]
        else:
            for j in range(k):
                agg[j] += row[j]
        in_set[bit] = not in_set[bit]
        pos = sum(x for x in agg if x > 0)
        neg = -sum(x for x in agg if x < 0)
        a = tuple(i for i in range(m) if in_set[i])
        for val, sel in ((pos, 1), (neg, -1)):
            if val > best[0] or (val == best[0] and a < best[1]):
                b = tuple(j for j in range(k) if (agg[j] > 0 if sel == 1 else agg[j] < 0))
                best = (val, a, b)
    return best


def alpha_coefficient(j: JointMeasure, mode: str = "exact") -> MetricValue:
    """sup over rectangles A x B of |mu(A x B)| for mu the dependence matrix.

    Exact mode enumerates subsets of the smaller side; for a fixed A the
    optimal B collects the columns where the A-aggregated signed row is
    positive (and, separately, negative). Heuristic mode is alternating
    sign-selection ascent with seeded restarts and reports a lower bound.
    """
    d = dependence_matrix(j)
    mat, swapped = _oriented_entries(d)
    m = len(mat)
    if mode == "exact":
        if m > ALPHA_EXACT_CUTOFF:
            raise CapabilityError(
                f"alpha exact mode needs the smaller side <= {ALPHA_EXACT_CUTOFF} points"
            )
        value, a, b = _best_subset_scan(mat)
        if swapped:
            a, b = b, a
        return MetricValue(MetricName.ALPHA, value, True, {"A": a, "B": b})
    if mode == "heuristic":
        value, a, b = _rectangle_ascent(mat)
        if swapped:
            a, b = b, a
        return MetricValue(
            MetricName.ALPHA, value, False, {"A": a, "B": b, "lower_bound": True}
        )
    raise InputError(f"unknown mode {mode!r}")


def _rectangle_ascent(mat: list[list[Fraction]]):
    m, k = len(mat), len(mat[0])
    best = (ZERO, (), ())
    for seed in range(HEURISTIC_RESTARTS):
        rng = random.Random(seed)
        a = [rng.random() < 0.5 for _ in range(m)]
        for sel in (1, -1):
            cur_a = list(a)
            prev = None
            for _ in range(100):
                agg = [sum(mat[i][jj] for i in range(m) if cur_a[i]) for jj in range(k)]
                b = [(x > 0 if sel == 1 else x < 0) for x in agg]
                col = [sum(mat[i][jj] for jj in range(k) if b[jj]) for i in range(m)]
                cur_a = [(x > 0 if sel == 1 else x < 0) for x in col]
                val = abs(sum(col[i] for i in range(m) if cur_a[i]))
                if prev is not None and val <= prev:
                    break
                prev = val
            val = prev if prev is not None else ZERO
            if val > best[0]:
                best = (
                    val,
                    tuple(i for i in range(m) if cur_a[i]),
                    tuple(jj for jj in range(k) if b[jj]),
                )
    return best


def _partitions(n: int, max_parts: int):
    """All set partitions of range(n) with at most max_parts blocks."""
    def rec(i: int, blocks: list[list[int]]):
        if i == n:
            yield tuple(tuple(b) for b in blocks)
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        if len(blocks) < max_parts:
            blocks.append([i])
            yield from rec(i + 1, blocks)
            blocks.pop()
    yield from rec(0, [])


def beta_partition(j: JointMeasure, max_parts: int | None = None) -> MetricValue:
    """sup over partition pairs of half the summed absolute rectangle masses.

    Exact enumeration; feasible only for small supports (Bell-number growth).
    """
    n1, n2 = len(j.space1), len(j.space2)
    if n1 > BETA_EXACT_CUTOFF or n2 > BETA_EXACT_CUTOFF:
        raise CapabilityError(
            f"beta_partition enumerates partitions; needs both sides <= {BETA_EXACT_CUTOFF}"
        )
    if max_parts is None:
        max_parts = max(n1, n2)
    d = dependence_matrix(j).entries
    best = (Fraction(-1), None, None)
    for p1 in _partitions(n1, max_parts):
        # aggregate rows per block once per row-partition
        rows = [
            [sum(d[i][c] for i in block) for c in range(n2)] for block in p1
        ]
        for p2 in _partitions(n2, max_parts):
            total = ZERO
            for r in rows:
                for block in p2:
                    total += abs(sum(r[c] for c in block))
            val = total / 2
            if val > best[0]:
                best = (val, p1, p2)
    value, p1, p2 = best
    return MetricValue(
        MetricName.BETA_PARTITION, value, True, {"partition1": p1, "partition2": p2}
    )


def cov_sup_pm1(j: JointMeasure, mode: str = "exact") -> MetricValue:
    """max over f,g with values in {-1,1} of |sum f(i) g(j) mu(i,j)|.

    |psi| is convex in each coordinate, so the maximum over [-1,1]-valued
    functions is attained at sign vectors; for a fixed f the optimal g is the
    sign of the f-aggregated column vector, hence exact mode enumerates f on
    the smaller side only.
    """
    d = dependence_matrix(j)
    mat, swapped = _oriented_entries(d)
    m, k = len(mat), len(mat[0])
    if mode == "exact":
        if m > ALPHA_EXACT_CUTOFF:
            raise CapabilityError(
                f"cov_sup exact mode needs the smaller side <= {ALPHA_EXACT_CUTOFF} points"
            )
        # start from f = all -1: the aggregate is minus the column sums = 0
        agg = [ZERO] * k
        signs = [-1] * m
        best = (ZERO, tuple(signs))
        for step in range(1, 2 ** m):
            bit = (step & -step).bit_length() - 1
            row = mat[bit]
            delta = 2 * signs[bit] * -1  # flipping -1->1 adds 2, 1->-1 subtracts 2
            for jj in range(k):
                agg[jj] += delta * row[jj]
            signs[bit] = -signs[bit]
            val = sum(abs(x) for x in agg)
            if val > best[0]:
                best = (val, tuple(signs))
        value, f = best
        # recompute the aggregate for the stored f to build g
        agg = [sum(f[i] * mat[i][jj] for i in range(m)) for jj in range(k)]
        g = tuple(1 if x >= 0 else -1 for x in agg)
        exact = True
        cert_extra = {}
    elif mode == "heuristic":
        fm = np.array([[float(x) for x in row] for row in mat])
        from .engines import BilinearInstance, hypercube_bilinear_max

        val, a, b = hypercube_bilinear_max(BilinearInstance(fm), mode="heuristic")
        # re-derive exact rational value from the sign vectors
        f = tuple(int(x) for x in a)
        g = tuple(int(x) for x in b)
        value = abs(
            sum(f[i] * g[jj] * mat[i][jj] for i in range(m) for jj in range(k))
        )
        exact = False
        cert_extra = {"lower_bound": True}
    else:
        raise InputError(f"unknown mode {mode!r}")
    if swapped:
        f, g = g, f
    return MetricValue(
        MetricName.COV_SUP, value, exact, {"f": f, "g": g, **cert_extra}
    )


def cov_gap(j: JointMeasure, f, g):
    """sum f(i) g(j) mu(i,j): the AI-0 gap for a fixed pair of test functions.

    Exact (Fraction) when f and g are rational, float otherwise.
    """
    if len(f) != len(j.space1) or len(g) != len(j.space2):
        raise InputError("test function length mismatch")
    d = dependence_matrix(j).entries
    return sum(
        f[i] * g[k] * d[i][k]
        for i in range(len(j.space1))
        for k in range(len(j.space2))
        if d[i][k]
    )


def integral_gap(j: JointMeasure, h):
    """sum h(i,j) mu(i,j): the AI-1 gap for a fixed bounded test function h.

    Dividing by max(sup|h|, Lip(h)) turns this into a bounded-Lipschitz
    lower bound.
    """
    d = dependence_matrix(j).entries
    n1, n2 = len(j.space1), len(j.space2)
    if len(h) != n1 or any(len(row) != n2 for row in h):
        raise InputError("h is not indexed consistently with the joint measure")
    return sum(h[i][k] * d[i][k] for i in range(n1) for k in range(n2) if d[i][k])


# ---------------------------------------------------------------------------
# Geometric metrics
# ---------------------------------------------------------------------------

def _require_same_space(m1: DiscreteMeasure, m2: DiscreteMeasure) -> None:
    if m1.space is m2.space:
        return
    if m1.space.labels == m2.space.labels and np.array_equal(m1.space.dist, m2.space.dist):
        return
    raise InputError("both measures must live on the same metric space")


def _overlap_flow(m1: DiscreteMeasure, m2: DiscreteMeasure, eps: float):
    """Max coupling mass on pairs with dist <= eps, via exact-capacity max flow."""
    s1, s2 = m1.support(), m2.support()
    dist = m1.space.dist
    n1, n2 = len(s1), len(s2)
    source, sink = 0, 1 + n1 + n2
    edges = []
    for a, i in enumerate(s1):
        edges.append((source, 1 + a, m1.weights[i]))
    pair_edges = []
    for a, i in enumerate(s1):
        for b, k in enumerate(s2):
            if dist[i, k] <= eps:
                pair_edges.append((i, k))
                edges.append((1 + a, 1 + n1 + b, Fraction(1)))
    for b, k in enumerate(s2):
        edges.append((1 + n1 + b, sink, m2.weights[k]))
    net = FlowNetwork(2 + n1 + n2, tuple(edges), source, sink)
    value, flows = max_flow(net)
    coupling = {
        pair: flows[n1 + idx]
        for idx, pair in enumerate(pair_edges)
        if flows[n1 + idx] > 0
    }
    return value, coupling


def prokhorov_distance(m1: DiscreteMeasure, m2: DiscreteMeasure) -> MetricValue:
    """Levy-Prokhorov distance via Strassen's coupling characterization.

    pi <= eps iff some coupling puts mass <= eps on pairs farther than eps
    apart (closed condition dist <= eps). The overlap F(eps) is piecewise
    constant with breakpoints at the observed distances, so the distance is
    min over breakpoints of max(eps, 1 - F(eps)).
    """
    _require_same_space(m1, m2)
    s1, s2 = m1.support(), m2.support()
    dist = m1.space.dist
    breakpoints = sorted({0.0} | {float(dist[i, k]) for i in s1 for k in s2})
    best = None
    for eps in breakpoints:
        if best is not None and eps >= best[0]:
            break
        overlap, coupling = _overlap_flow(m1, m2, eps)
        candidate = max(eps, float(1 - overlap))
        if best is None or candidate < best[0]:
            best = (candidate, eps, overlap, coupling)
    value, eps, overlap, coupling = best
    cert = {
        "epsilon": eps,
        "outside_mass": 1 - overlap,
        "coupling": tuple((pair, flow) for pair, flow in coupling.items()),
    }
    return MetricValue(MetricName.PROKHOROV, value, False, cert)


def bl_distance(m1: DiscreteMeasure, m2: DiscreteMeasure) -> MetricValue:
    """Bounded-Lipschitz distance: max of integral gaps over |h|<=1, Lip(h)<=1.

    Solved as a dense LP over the union support; Lipschitz constraints for
    pairs at distance >= 2 are pruned because |h(z)-h(w)| <= 2 already holds
    from the box bounds.
    """
    _require_same_space(m1, m2)
    support = sorted(set(m1.support()) | set(m2.support()))
    n = len(support)
    if n > BL_SUPPORT_CUTOFF:
        raise CapabilityError(f"bl_distance LP cutoff is {BL_SUPPORT_CUTOFF} support points")
    if n == 0:
        raise InputError("empty support")
    dist = m1.space.dist
    c = [float(m1.weights[i] - m2.weights[i]) for i in support]
    constraints = []
    for a in range(n):
        for b in range(a + 1, n):
            d = float(dist[support[a], support[b]])
            if d >= 2.0:
                continue
            row = [0.0] * n
            row[a], row[b] = 1.0, -1.0
            constraints.append((tuple(row), "<=", d))
            constraints.append((tuple(-x for x in row), "<=", d))
    lp = LinearProgram(
        objective=tuple(c),
        constraints=tuple(constraints),
        variable_bounds=tuple((-1.0, 1.0) for _ in range(n)),
    )
    res = solve_lp(lp)
    if res.status is not LPStatus.OPTIMAL:
        raise InputError(f"BL linear program was {res.status.value}")
    value = max(res.value, 0.0)
    cert = {"support": tuple(support), "h": res.solution}
    return MetricValue(MetricName.BL, value, False, cert)


def prokhorov_to_product_upper(
    j: JointMeasure, kind: ProductMetricKind = ProductMetricKind.SUM
) -> MetricValue:
    """pi(joint, product of marginals) on the metric product space.

    Upper bound for the Prokhorov distance from the joint law to the whole
    set of product measures.
    """
    mu, nu = joint_and_product_on_product(j, kind)
    mv = prokhorov_distance(mu, nu)
    cert = dict(mv.certificate or {})
    cert["upper_bound_for"] = "distance to the set of product measures"
    return MetricValue(MetricName.PROKHOROV, mv.value, False, cert)


def bl_to_product(
    j: JointMeasure, kind: ProductMetricKind = ProductMetricKind.SUM
) -> MetricValue:
    """Bounded-Lipschitz distance between the joint law and its product of marginals."""
    mu, nu = joint_and_product_on_product(j, kind)
    return bl_distance(mu, nu)


# ---------------------------------------------------------------------------
# Characteristic functions
# ---------------------------------------------------------------------------

def _char_fn(weights, coords, t) -> complex:
    return sum(
        float(w) * cmath.exp(1j * float(np.dot(t, x)))
        for w, x in zip(weights, coords)
        if w
    )


def cf_gap(j: JointMeasure, t, s) -> float:
    """|phi_joint(t,s) - phi_X(t) phi_Y(s)| by direct summation over atoms."""
    if j.space1.coords is None or j.space2.coords is None:
        raise CapabilityError("cf_gap needs coordinate-embedded spaces")
    t = np.atleast_1d(np.asarray(t, dtype=float))
    s = np.atleast_1d(np.asarray(s, dtype=float))
    if t.shape[0] != j.space1.dim or s.shape[0] != j.space2.dim:
        raise InputError("t and s must match the coordinate dimensions")
    m1, m2 = marginals(j)
    phi_x = _char_fn(m1.weights, j.space1.coords, t)
    phi_y = _char_fn(m2.weights, j.space2.coords, s)
    phi_joint = sum(
        float(w) * cmath.exp(
            1j * (float(np.dot(t, j.space1.coords[i])) + float(np.dot(s, j.space2.coords[k])))
        )
        for i, row in enumerate(j.weights)
        for k, w in enumerate(row)
        if w
    )
    return abs(phi_joint - phi_x * phi_y)


DEFAULT_CF_LATTICE = (-3.0, -2.0, -1.0, 1.0, 2.0, 3.0)


def cf_gap_lattice(j: JointMeasure, lattice=DEFAULT_CF_LATTICE):
    """Max cf_gap over the default test-point lattice; returns (gap, t, s)."""
    if j.space1.coords is None or j.space2.coords is None:
        raise CapabilityError("cf_gap needs coordinate-embedded spaces")
    d1, d2 = j.space1.dim, j.space2.dim
    best = (-1.0, None, None)
    for t in itertools.product(lattice, repeat=d1):
        for s in itertools.product(lattice, repeat=d2):
            g = cf_gap(j, t, s)
            if g > best[0]:
                best = (g, t, s)
    return best


def gaussian_cf_gap(mean1, mean2, cov11, cov22, cov12, t, s) -> float:
    """Closed-form cf gap for a jointly Gaussian pair:

    |phi_joint - phi_X phi_Y| = |phi_X(t)| |phi_Y(s)| |exp(-t' C12 s) - 1|.
    """
    mean1 = np.atleast_1d(np.asarray(mean1, dtype=float))
    mean2 = np.atleast_1d(np.asarray(mean2, dtype=float))
    cov11 = np.atleast_2d(np.asarray(cov11, dtype=float))
    cov22 = np.atleast_2d(np.asarray(cov22, dtype=float))
    cov12 = np.asarray(cov12, dtype=float).reshape(cov11.shape[0], cov22.shape[0])
    block = np.block([[cov11, cov12], [cov12.T, cov22]])
    eig = np.linalg.eigvalsh((block + block.T) / 2)
    if eig.min() < -1e-9:
        raise InputError("joint covariance block matrix is not positive semidefinite")
    t = np.atleast_1d(np.asarray(t, dtype=float))
    s = np.atleast_1d(np.asarray(s, dtype=float))
    mod_x = math.exp(-0.5 * float(t @ cov11 @ t))
    mod_y = math.exp(-0.5 * float(s @ cov22 @ s))
    return mod_x * mod_y * abs(math.exp(-float(t @ cov12 @ s)) - 1.0)


# ---------------------------------------------------------------------------
# Certificate re-evaluation
# ---------------------------------------------------------------------------

def evaluate_certificate(
    mv: MetricValue,
    *,
    dep: DependenceMatrix | None = None,
    m1: DiscreteMeasure | None = None,
    m2: DiscreteMeasure | None = None,
):
    """Recompute a metric value from its certificate alone.

    Exact metrics re-evaluate to the identical rational; LP/flow metrics to
    within 1e-9.
    """
    cert = mv.certificate
    if cert is None:
        raise InputError("metric value carries no certificate")
    if mv.name is MetricName.VARIATION:
        return sum(
            s * x for srow, row in zip(cert["signs"], dep.entries) for s, x in zip(srow, row)
        )
    if mv.name is MetricName.ALPHA:
        return abs(sum(dep.entries[i][k] for i in cert["A"] for k in cert["B"]))
    if mv.name is MetricName.BETA_PARTITION:
        total = ZERO
        for blk1 in cert["partition1"]:
            for blk2 in cert["partition2"]:
                total += abs(sum(dep.entries[i][k] for i in blk1 for k in blk2))
        return total / 2
    if mv.name is MetricName.COV_SUP:
        f, g = cert["f"], cert["g"]
        return abs(
            sum(
                f[i] * g[k] * dep.entries[i][k]
                for i in range(len(f))
                for k in range(len(g))
            )
        )
    if mv.name is MetricName.PROKHOROV:
        eps = cert["epsilon"]
        dist = m1.space.dist
        outside = Fraction(1)
        for (i, k), flow in cert["coupling"]:
            if float(dist[i, k]) <= eps:
                outside -= flow
        return max(eps, float(outside))
    if mv.name is MetricName.BL:
        support, h = cert["support"], cert["h"]
        dist = m1.space.dist
        for a in range(len(support)):
            if abs(h[a]) > 1 + LP_TOL:
                raise InputError("BL certificate violates the bound |h| <= 1")
            for b in range(a + 1, len(support)):
                if abs(h[a] - h[b]) > float(dist[support[a], support[b]]) + LP_TOL:
                    raise InputError("BL certificate violates the Lipschitz constraint")
        return sum(
            h[a] * float(m1.weights[i] - m2.weights[i]) for a, i in enumerate(support)
        )
    raise InputError(f"no certificate evaluator for {mv.name}")
