"""The paper-verification suite: every acceptance criterion as a programmatic check.

Each criterion returns a CriterionResult with the expected value, computed
value, tolerance, and status; run_all() executes the whole battery. Exact
criteria compare rationals for equality (tolerance 0); geometric criteria
carry their stated float tolerances. Oracles used here (brute-force LP for
flows, vertex enumeration for LPs, full sign enumeration for the bilinear
engine) are independent of the code paths they check.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

from .engines import BilinearInstance, FlowNetwork, hypercube_bilinear_max, max_flow
from .engines import LinearProgram, LPStatus, solve_lp
from .families import (
    bernoulli_perturbation_family,
    binary_coding_family,
    binary_coding_h_matrix,
    binary_coding_sign_matrix,
    conditional_independence_bound_check,
    coupling_tv_bound_check,
    markov_shift_family,
    random_conditional_indep_instance,
    random_coupling_instance,
    random_joint,
    rectangle_gap,
    two_state_chain,
)
from .measures import (
    DiscreteMeasure,
    dependence_matrix,
    marginals,
    pushforward_joint,
)
from .metrics import (
    alpha_coefficient,
    beta_partition,
    bl_distance,
    bl_to_product,
    cov_sup_pm1,
    integral_gap,
    prokhorov_distance,
    prokhorov_to_product_upper,
    variation_norm,
)
from .spaces import ProductMetricKind, line_space

F = Fraction

# the 8x6 weight display for level n = 3: rows are j = 7 .. 0 (top to bottom),
# columns are i = 0 .. 5; q marks an atom of mass 1/24
_Q = F(1, 24)
_DISPLAY_N3 = [
    [_Q, _Q, _Q, 0, 0, 0],  # j = 7
    [0, _Q, _Q, _Q, 0, 0],  # j = 6
    [_Q, 0, _Q, 0, _Q, 0],  # j = 5
    [0, 0, _Q, _Q, _Q, 0],  # j = 4
    [_Q, _Q, 0, 0, 0, _Q],  # j = 3
    [0, _Q, 0, _Q, 0, _Q],  # j = 2
    [_Q, 0, 0, 0, _Q, _Q],  # j = 1
    [0, 0, 0, _Q, _Q, _Q],  # j = 0
]


@dataclass(frozen=True)
class CriterionResult:
    name: str
    expected: str
    computed: str
    tolerance: str
    passed: bool


def _result(name, expected, computed, tolerance, passed) -> CriterionResult:
    return CriterionResult(name, str(expected), str(computed), str(tolerance), bool(passed))


def criterion_01_matrix_reproduction() -> CriterionResult:
    inst = binary_coding_family(3)
    got = inst.joint.weights
    mismatches = sum(
        1
        for i in range(6)
        for j in range(8)
        if got[i][j] != _DISPLAY_N3[7 - j][i]
    )
    return _result(
        "1 matrix reproduction (binary coding n=3 vs printed display)",
        "0 mismatching entries",
        f"{mismatches} mismatching entries",
        "exact",
        mismatches == 0,
    )


def criterion_02_marginals() -> CriterionResult:
    bad = []
    for n in range(1, 11):
        m1, m2 = marginals(binary_coding_family(n).joint)
        if any(w != F(1, 2 * n) for w in m1.weights):
            bad.append((n, "first"))
        if any(w != F(1, 2 ** n) for w in m2.weights):
            bad.append((n, "second"))
    return _result(
        "2 marginals uniform 1/(2n) and 1/2^n (n=1..10)",
        "uniform for all n",
        "uniform for all n" if not bad else f"failures: {bad}",
        "exact",
        not bad,
    )


def criterion_03_integral_gap() -> CriterionResult:
    gaps = [integral_gap(binary_coding_family(n).joint, binary_coding_h_matrix(n)) for n in range(1, 11)]
    ok = all(g == F(1, 4) for g in gaps)
    return _result(
        "3 AI-1 witness: integral gap of the tent-sum test function (n=1..10)",
        "1/4 for all n",
        "1/4 for all n" if ok else f"gaps = {gaps}",
        "exact",
        ok,
    )


def criterion_04_variation() -> CriterionResult:
    vals = [
        variation_norm(dependence_matrix(binary_coding_family(n).joint)).value
        for n in range(1, 9)
    ]
    ok = all(v == 1 for v in vals)
    return _result(
        "4 AI-4 failure: variation norm pinned at 1 (n=1..8)",
        "1 for all n",
        "1 for all n" if ok else f"values = {vals}",
        "exact",
        ok,
    )


def criterion_05_alpha_bound() -> CriterionResult:
    bad = []
    for n in range(1, 5):
        j = binary_coding_family(n).joint
        alpha = alpha_coefficient(j).value
        if alpha * alpha > F(1, n):  # alpha <= 1/sqrt(n), compared exactly
            bad.append((n, "alpha bound"))
        if cov_sup_pm1(j).value != 4 * alpha:
            bad.append((n, "cov_sup identity"))
    return _result(
        "5 AI-3 success: alpha <= 1/sqrt(n) and cov_sup = 4 alpha (n=1..4)",
        "both hold for all n",
        "both hold for all n" if not bad else f"failures: {bad}",
        "exact",
        not bad,
    )


def criterion_06_psi_lemma() -> CriterionResult:
    bad = []
    val3 = None
    for n in range(1, 5):
        val, _, _ = hypercube_bilinear_max(BilinearInstance(binary_coding_sign_matrix(n)))
        v = round(val)  # integer matrix, integer optimum
        if v * v > (4 ** n) * n:  # v <= 2^n sqrt(n), compared in integers
            bad.append(n)
        if n == 3:
            val3 = v
    ok = not bad and val3 == 12
    return _result(
        "6 psi lemma: bilinear max <= 2^n sqrt(n) (n=1..4), value 12 at n=3",
        "bound holds; value 12 at n=3",
        f"bound failures: {bad}; value at n=3: {val3}",
        "exact",
        ok,
    )


def criterion_07_bernoulli_separation() -> CriterionResult:
    bad = []
    for n in range(2, 51):
        inst = bernoulli_perturbation_family(n)
        gap = rectangle_gap(inst.joint, *inst.params["rectangle"])
        if gap != F(1, 8):
            bad.append((n, "rectangle"))
        pk = prokhorov_to_product_upper(inst.joint, ProductMetricKind.SUM).as_float()
        if pk > 1 / n + 1e-9:
            bad.append((n, "prokhorov"))
    for n in range(2, 21):
        inst = bernoulli_perturbation_family(n)
        bl = bl_to_product(inst.joint, ProductMetricKind.SUM).as_float()
        if bl > 3 / n + 1e-9:
            bad.append((n, "bl"))
    return _result(
        "7 Bernoulli family: rectangle gap 1/8 (n=2..50), pi <= 1/n, bl <= 3/n",
        "all bounds hold",
        "all bounds hold" if not bad else f"failures: {bad}",
        "exact / 1e-9",
        not bad,
    )


def criterion_08_bl_witness() -> CriterionResult:
    bad = []
    for n in range(1, 5):
        val = bl_to_product(binary_coding_family(n).joint, ProductMetricKind.SUM).as_float()
        if val < 1 / 16 - 1e-9:
            bad.append((n, "lp", val))
    for n in range(1, 11):
        gap = integral_gap(binary_coding_family(n).joint, binary_coding_h_matrix(n))
        if gap / 4 != F(1, 16):  # h/4 lies in BL_1 under the SUM metric
            bad.append((n, "witness"))
    return _result(
        "8 AI-1 failure: bl >= 1/16 via LP (n=1..4) and via exact witness (n=1..10)",
        "bl >= 1/16 everywhere",
        "holds" if not bad else f"failures: {bad}",
        "1e-9 / exact",
        not bad,
    )


def _random_measure_pair(rng: random.Random, space):
    n = len(space)

    def vec():
        denom = 60
        cuts = sorted(rng.randint(0, denom) for _ in range(n - 1))
        parts = [a - b for a, b in zip(cuts + [denom], [0] + cuts)]
        return tuple(F(p, denom) for p in parts)

    return DiscreteMeasure(space, vec()), DiscreteMeasure(space, vec())


def criterion_09_identity_suite() -> CriterionResult:
    bad = []
    rng = random.Random(20260826)
    # exact identities on 200 random joints (supports <= 6x6)
    for t in range(200):
        n1, n2 = rng.randint(2, 6), rng.randint(2, 6)
        j = random_joint(1000 + t, n1, n2)
        dep = dependence_matrix(j)
        var = variation_norm(dep).value
        alpha = alpha_coefficient(j).value
        if alpha > var / 2:
            bad.append((t, "alpha <= var/2"))
        if cov_sup_pm1(j).value != 4 * alpha:
            bad.append((t, "cov_sup = 4 alpha"))
    # beta identity on 200 random joints within the partition-enumeration cutoff
    for t in range(200):
        n1, n2 = rng.randint(2, 4), rng.randint(2, 4)
        j = random_joint(3000 + t, n1, n2)
        var = variation_norm(dependence_matrix(j)).value
        if beta_partition(j).value != var / 2:
            bad.append((t, "beta = var/2"))
    # metric-space axioms and cross-metric inequalities for prokhorov / bl
    for t in range(60):
        space = line_space(sorted(rng.sample(range(40), rng.randint(3, 7))))
        a, b = _random_measure_pair(rng, space)
        c, _ = _random_measure_pair(rng, space)
        pab = prokhorov_distance(a, b).as_float()
        pba = prokhorov_distance(b, a).as_float()
        if abs(pab - pba) > 1e-9:
            bad.append((t, "symmetry"))
        if prokhorov_distance(a, a).as_float() > 1e-9:
            bad.append((t, "identity"))
        pac = prokhorov_distance(a, c).as_float()
        pcb = prokhorov_distance(c, b).as_float()
        if pab > pac + pcb + 1e-9:
            bad.append((t, "triangle"))
        half_tv = float(sum(abs(x - y) for x, y in zip(a.weights, b.weights))) / 2
        if pab > half_tv + 1e-9:
            bad.append((t, "pi <= tv/2"))
        blv = bl_distance(a, b).as_float()
        if pab * pab > blv + 1e-9:
            bad.append((t, "pi^2 <= bl"))
        if blv > 3 * pab + 1e-9:
            bad.append((t, "bl <= 3 pi"))
    return _result(
        "9 identity suite on random joints and random measure pairs",
        "all identities and inequalities hold",
        "all hold" if not bad else f"failures: {bad[:5]} ({len(bad)} total)",
        "exact / 1e-9",
        not bad,
    )


def criterion_10_markov_decay() -> CriterionResult:
    bad = []
    for p in (F(1, 10), F(1, 4)):
        transition, stationary = two_state_chain(p)
        lam = 1 - 2 * p
        for n in range(1, 21):
            inst = markov_shift_family(transition, stationary, n)
            alpha = alpha_coefficient(inst.joint).value
            if alpha != lam ** n / 4:
                bad.append((float(p), n))
    return _result(
        "10 Markov decay: alpha = (1-2p)^n / 4 exactly (p in {0.1, 0.25}, n=1..20)",
        "closed form matches",
        "matches" if not bad else f"failures: {bad}",
        "exact",
        not bad,
    )


def criterion_11_conditional_independence_bound() -> CriterionResult:
    failures = 0
    for seed in range(500):
        _, _, holds = conditional_independence_bound_check(
            random_conditional_indep_instance(seed)
        )
        failures += not holds
    return _result(
        "11 conditional-independence bound alpha <= 2d(1 + 1/(1-d)) on 500 instances",
        "0 violations",
        f"{failures} violations",
        "exact",
        failures == 0,
    )


def criterion_12_coupling_bound() -> CriterionResult:
    failures = 0
    for seed in range(500):
        _, _, holds = coupling_tv_bound_check(random_coupling_instance(seed))
        failures += not holds
    return _result(
        "12 coupling bound tv <= 2P{pair differs} + 2P{X!=X'} + 2P{Y!=Y'} on 500 instances",
        "0 violations",
        f"{failures} violations",
        "exact",
        failures == 0,
    )


def criterion_13_pushforward_stability() -> CriterionResult:
    bad = []
    rng = random.Random(13)
    for t in range(200):
        n1, n2 = rng.randint(2, 5), rng.randint(2, 5)
        j = random_joint(5000 + t, n1, n2)
        t1 = line_space(range(rng.randint(1, n1)))
        t2 = line_space(range(rng.randint(1, n2)))
        u = [rng.randrange(len(t1)) for _ in range(n1)]
        v = [rng.randrange(len(t2)) for _ in range(n2)]
        pj = pushforward_joint(j, u, v, t1, t2)
        if variation_norm(dependence_matrix(pj)).value > variation_norm(
            dependence_matrix(j)
        ).value:
            bad.append((t, "variation"))
        if alpha_coefficient(pj).value > alpha_coefficient(j).value:
            bad.append((t, "alpha"))
    return _result(
        "13 pushforward stability: alpha and variation never increase (200 instances)",
        "0 violations",
        "0 violations" if not bad else f"failures: {bad}",
        "exact",
        not bad,
    )


def _bipartite_flow_oracle(supplies, demands, edges, caps) -> float:
    """Brute-force LP value of the bipartite max-flow instance."""
    ne = len(edges)
    c = -np.ones(ne)
    rows, rhs = [], []
    for i, s in enumerate(supplies):
        row = np.zeros(ne)
        for e, (a, _) in enumerate(edges):
            if a == i:
                row[e] = 1.0
        rows.append(row)
        rhs.append(float(s))
    for k, d in enumerate(demands):
        row = np.zeros(ne)
        for e, (_, b) in enumerate(edges):
            if b == k:
                row[e] = 1.0
        rows.append(row)
        rhs.append(float(d))
    res = linprog(
        c,
        A_ub=np.array(rows),
        b_ub=np.array(rhs),
        bounds=[(0.0, float(cap)) for cap in caps],
        method="highs",
    )
    return float(-res.fun)


def _vertex_enumeration_oracle(lp: LinearProgram) -> float:
    """Max objective over the feasible vertices of a small bounded LP."""
    nvar = len(lp.objective)
    rows, rhs = [], []
    for coeffs, rel, bound in lp.constraints:
        if rel in ("<=", "="):
            rows.append(np.asarray(coeffs, float))
            rhs.append(bound)
        if rel in (">=", "="):
            rows.append(-np.asarray(coeffs, float))
            rhs.append(-bound)
    for i, (lo, hi) in enumerate(lp.variable_bounds):
        e = np.zeros(nvar)
        e[i] = 1.0
        if hi is not None:
            rows.append(e.copy())
            rhs.append(hi)
        if lo is not None:
            rows.append(-e)
            rhs.append(-lo)
    a = np.array(rows)
    b = np.array(rhs)
    best = -math.inf
    for combo in itertools.combinations(range(len(rows)), nvar):
        sub = a[list(combo)]
        if abs(np.linalg.det(sub)) < 1e-10:
            continue
        x = np.linalg.solve(sub, b[list(combo)])
        if np.all(a @ x <= b + 1e-9):
            best = max(best, float(np.dot(lp.objective, x)))
    return best


def criterion_14_engine_oracles() -> CriterionResult:
    bad = []
    rng = random.Random(14)
    # max-flow vs LP on random bipartite instances
    for t in range(20):
        n1, n2 = rng.randint(2, 4), rng.randint(2, 4)
        supplies = [F(rng.randint(1, 16), 16) for _ in range(n1)]
        demands = [F(rng.randint(1, 16), 16) for _ in range(n2)]
        edges, caps = [], []
        for i in range(n1):
            for k in range(n2):
                if rng.random() < 0.7:
                    edges.append((i, k))
                    caps.append(F(rng.randint(1, 16), 16))
        net_edges = [(0, 1 + i, s) for i, s in enumerate(supplies)]
        net_edges += [(1 + i, 1 + n1 + k, cap) for (i, k), cap in zip(edges, caps)]
        net_edges += [(1 + n1 + k, 1 + n1 + n2, d) for k, d in enumerate(demands)]
        net = FlowNetwork(2 + n1 + n2, tuple(net_edges), 0, 1 + n1 + n2)
        value, _ = max_flow(net)
        oracle = _bipartite_flow_oracle(supplies, demands, edges, caps)
        if abs(float(value) - oracle) > 1e-10:
            bad.append((t, "flow", float(value), oracle))
    # solve_lp vs vertex enumeration on random bounded LPs
    for t in range(50):
        nvar = rng.randint(2, 6)
        x0 = np.array([rng.uniform(-0.5, 0.5) for _ in range(nvar)])
        constraints = []
        for _ in range(nvar + 2):
            row = np.array([rng.uniform(-1, 1) for _ in range(nvar)])
            bound = float(row @ x0 + rng.uniform(0.1, 1.0))
            constraints.append((tuple(row), "<=", bound))
        lp = LinearProgram(
            objective=tuple(rng.uniform(-1, 1) for _ in range(nvar)),
            constraints=tuple(constraints),
            variable_bounds=tuple((-1.0, 1.0) for _ in range(nvar)),
        )
        res = solve_lp(lp)
        oracle = _vertex_enumeration_oracle(lp)
        if res.status is not LPStatus.OPTIMAL or abs(res.value - oracle) > 1e-8:
            bad.append((t, "lp", res.value, oracle))
    # exact bilinear max vs full enumeration
    for t in range(10):
        m, k = rng.randint(1, 8), rng.randint(1, 8)
        mat = np.array([[rng.uniform(-1, 1) for _ in range(k)] for _ in range(m)])
        val, _, _ = hypercube_bilinear_max(BilinearInstance(mat))
        signs_m = np.array(list(itertools.product([-1.0, 1.0], repeat=m)))
        signs_k = np.array(list(itertools.product([-1.0, 1.0], repeat=k)))
        oracle = float(np.abs(signs_m @ mat @ signs_k.T).max())
        if abs(val - oracle) > 1e-10:
            bad.append((t, "bilinear", val, oracle))
    return _result(
        "14 engine oracles: max-flow vs LP, solve_lp vs vertices, bilinear vs enumeration",
        "all engines match their oracles",
        "all match" if not bad else f"failures: {bad}",
        "1e-10 / 1e-8 / 1e-10",
        not bad,
    )


ALL_CRITERIA = (
    criterion_01_matrix_reproduction,
    criterion_02_marginals,
    criterion_03_integral_gap,
    criterion_04_variation,
    criterion_05_alpha_bound,
    criterion_06_psi_lemma,
    criterion_07_bernoulli_separation,
    criterion_08_bl_witness,
    criterion_09_identity_suite,
    criterion_10_markov_decay,
    criterion_11_conditional_independence_bound,
    criterion_12_coupling_bound,
    criterion_13_pushforward_stability,
    criterion_14_engine_oracles,
)


def run_all(name_filter: str | None = None) -> list[CriterionResult]:
    results = []
    for fn in ALL_CRITERIA:
        if name_filter is not None and name_filter not in fn.__name__:
            continue
        results.append(fn())
    return results


def format_result(res: CriterionResult) -> str:
    status = "PASS" if res.passed else "FAIL"
    return (
        f"[{status}] {res.name}: expected {res.expected}; "
        f"computed {res.computed}; tolerance {res.tolerance}"
    )
