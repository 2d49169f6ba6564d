import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from asymdep import (
    CapabilityError,
    DiscreteMeasure,
    InputError,
    MetricName,
    ProductMetricKind,
    alpha_coefficient,
    bernoulli_perturbation_family,
    beta_partition,
    binary_coding_family,
    binary_coding_h_matrix,
    bl_distance,
    bl_to_product,
    cf_gap,
    cf_gap_lattice,
    cov_gap,
    cov_sup_pm1,
    delta,
    dependence_matrix,
    evaluate_certificate,
    gaussian_cf_gap,
    integral_gap,
    line_space,
    marginals,
    product_measure,
    prokhorov_distance,
    prokhorov_to_product_upper,
    uniform,
    variation_norm,
)
from asymdep.families import random_joint
from asymdep.verify import _random_measure_pair

F = Fraction


def brute_force_alpha(j):
    d = dependence_matrix(j).entries
    n1, n2 = len(d), len(d[0])
    best = F(0)
    for a_mask in range(2 ** n1):
        for b_mask in range(2 ** n2):
            s = sum(
                d[i][k]
                for i in range(n1)
                for k in range(n2)
                if a_mask >> i & 1 and b_mask >> k & 1
            )
            best = max(best, abs(s))
    return best


def brute_force_cov_sup(j):
    d = dependence_matrix(j).entries
    n1, n2 = len(d), len(d[0])
    best = F(0)
    for f in itertools.product((-1, 1), repeat=n1):
        for g in itertools.product((-1, 1), repeat=n2):
            s = sum(f[i] * g[k] * d[i][k] for i in range(n1) for k in range(n2))
            best = max(best, abs(s))
    return best


# ---------------------------------------------------------------------------
# Dependence functionals
# ---------------------------------------------------------------------------

def test_variation_norm_of_counterexample_families():
    for n in range(2, 6):
        j = bernoulli_perturbation_family(n).joint
        assert variation_norm(dependence_matrix(j)).value == 1
    for n in range(1, 6):
        j = binary_coding_family(n).joint
        assert variation_norm(dependence_matrix(j)).value == 1


def test_variation_norm_zero_for_product_measures():
    s1, s2 = line_space([0.0, 1.0]), line_space([0.0, 1.0, 2.0])
    p = product_measure(uniform(s1), uniform(s2))
    mv = variation_norm(dependence_matrix(p))
    assert mv.value == 0 and mv.exact


@pytest.mark.parametrize("seed", range(6))
def test_alpha_matches_brute_force_on_random_joints(seed):
    j = random_joint(seed, 4, 3)
    mv = alpha_coefficient(j)
    assert mv.exact
    assert mv.value == brute_force_alpha(j)


def test_alpha_of_bernoulli_perturbation():
    # the optimal rectangle pools both x-atoms with the same y-value: gap 1/4,
    # strictly larger than the 1/8 single-atom rectangle
    j = bernoulli_perturbation_family(4).joint
    mv = alpha_coefficient(j)
    assert mv.value == F(1, 4)
    assert mv.value == brute_force_alpha(j)
    assert evaluate_certificate(mv, dep=dependence_matrix(j)) == F(1, 4)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_alpha_of_binary_coding_decays_like_inverse_sqrt(n):
    j = binary_coding_family(n).joint
    mv = alpha_coefficient(j)
    assert mv.value == brute_force_alpha(j)
    assert mv.value ** 2 <= F(1, n)  # alpha <= 1/sqrt(n), squared to stay rational


def test_alpha_heuristic_is_an_exact_rational_lower_bound():
    j = random_joint(42, 5, 5)
    exact = alpha_coefficient(j, mode="exact")
    heur = alpha_coefficient(j, mode="heuristic")
    assert heur.value <= exact.value
    assert evaluate_certificate(heur, dep=dependence_matrix(j)) == heur.value


@pytest.mark.parametrize("seed", range(5))
def test_beta_is_half_variation(seed):
    j = random_joint(seed, 4, 3)
    assert beta_partition(j).value == variation_norm(dependence_matrix(j)).value / 2


def test_beta_certificate_reevaluates():
    j = random_joint(3, 3, 4)
    mv = beta_partition(j)
    assert evaluate_certificate(mv, dep=dependence_matrix(j)) == mv.value


def test_beta_cutoff_raises_capability_error():
    j = binary_coding_family(3).joint  # 6 x 8 support
    with pytest.raises(CapabilityError):
        beta_partition(j)


@pytest.mark.parametrize("seed", range(5))
def test_cov_sup_is_four_alpha_and_matches_enumeration(seed):
    j = random_joint(seed + 20, 4, 3)
    mv = cov_sup_pm1(j)
    assert mv.value == brute_force_cov_sup(j)
    assert mv.value == 4 * alpha_coefficient(j).value
    assert evaluate_certificate(mv, dep=dependence_matrix(j)) == mv.value


def test_cov_sup_heuristic_lower_bound():
    j = random_joint(5, 5, 4)
    heur = cov_sup_pm1(j, mode="heuristic")
    assert heur.value <= cov_sup_pm1(j).value
    assert not heur.exact


def test_cov_gap_and_integral_gap_examples():
    j = bernoulli_perturbation_family(3).joint
    # f = indicator-style +/-1 split on x, g on y
    gap = cov_gap(j, (F(-1), F(1), F(-1), F(1)), (F(-1), F(1)))
    assert gap == 1  # equals cov_sup for this family
    h = binary_coding_h_matrix(4)
    assert integral_gap(binary_coding_family(4).joint, h) == F(1, 4)


def test_integral_gap_rejects_misshaped_h():
    j = bernoulli_perturbation_family(2).joint
    with pytest.raises(InputError):
        integral_gap(j, ((F(1),),))


# ---------------------------------------------------------------------------
# Prokhorov and bounded-Lipschitz distances
# ---------------------------------------------------------------------------

def test_prokhorov_of_point_masses_is_their_distance():
    s = line_space([0.0, 0.3, 5.0])
    assert prokhorov_distance(delta(s, 0), delta(s, 1)).value == pytest.approx(0.3)
    assert prokhorov_distance(delta(s, 0), delta(s, 0)).value == pytest.approx(0.0)
    # far-apart point masses: distance capped by the outside-mass term at 1
    assert prokhorov_distance(delta(s, 0), delta(s, 2)).value == pytest.approx(1.0)


def test_prokhorov_identity_symmetry_triangle():
    s = line_space([0.0, 0.5, 1.0, 2.0])
    import random

    rng = random.Random(9)
    ms = [_random_measure_pair(rng, s)[0] for _ in range(6)]
    for m1, m2 in itertools.combinations(ms, 2):
        a = prokhorov_distance(m1, m2).value
        assert a == pytest.approx(prokhorov_distance(m2, m1).value, abs=1e-12)
    for m1, m2, m3 in itertools.combinations(ms, 3):
        d12 = prokhorov_distance(m1, m2).value
        d23 = prokhorov_distance(m2, m3).value
        d13 = prokhorov_distance(m1, m3).value
        assert d13 <= d12 + d23 + 1e-12


def test_prokhorov_bounded_by_half_total_variation():
    s = line_space([0.0, 1.0, 3.0])
    m1 = DiscreteMeasure(s, (F(1, 2), F(1, 4), F(1, 4)))
    m2 = DiscreteMeasure(s, (F(1, 8), F(3, 8), F(1, 2)))
    tv = sum(abs(a - b) for a, b in zip(m1.weights, m2.weights))
    assert prokhorov_distance(m1, m2).value <= float(tv) / 2 + 1e-12


def test_prokhorov_certificate_reevaluates():
    s = line_space([0.0, 0.5, 1.0])
    m1 = DiscreteMeasure(s, (F(1, 2), F(1, 2), F(0)))
    m2 = DiscreteMeasure(s, (F(0), F(1, 2), F(1, 2)))
    mv = prokhorov_distance(m1, m2)
    assert evaluate_certificate(mv, m1=m1, m2=m2) == pytest.approx(mv.value, abs=1e-9)


def test_bl_of_point_masses():
    s = line_space([0.0, 0.3, 5.0])
    assert bl_distance(delta(s, 0), delta(s, 1)).value == pytest.approx(0.3, abs=1e-9)
    # at distance >= 2 the Lipschitz constraint is void: bl = 2
    assert bl_distance(delta(s, 0), delta(s, 2)).value == pytest.approx(2.0, abs=1e-9)


def test_bl_and_prokhorov_comparison_inequalities():
    import random

    s = line_space([0.0, 0.4, 1.1, 2.5])
    rng = random.Random(17)
    for _ in range(8):
        m1, m2 = _random_measure_pair(rng, s)
        pi = prokhorov_distance(m1, m2).value
        bl = bl_distance(m1, m2).value
        assert pi ** 2 <= bl + 1e-9
        assert bl <= 3 * pi + 1e-9


def test_bl_certificate_reevaluates():
    s = line_space([0.0, 0.7, 1.5])
    m1 = DiscreteMeasure(s, (F(1, 3), F(1, 3), F(1, 3)))
    m2 = DiscreteMeasure(s, (F(1, 2), F(0), F(1, 2)))
    mv = bl_distance(m1, m2)
    assert evaluate_certificate(mv, m1=m1, m2=m2) == pytest.approx(mv.value, abs=1e-9)


def test_product_form_distances_vanish_for_independent_joints():
    s1, s2 = line_space([0.0, 1.0]), line_space([0.0, 2.0])
    p = product_measure(uniform(s1), uniform(s2))
    assert prokhorov_to_product_upper(p).value == pytest.approx(0.0, abs=1e-12)
    assert bl_to_product(p).value == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize("n", [2, 4, 8])
def test_bernoulli_perturbation_prokhorov_upper_bound(n):
    j = bernoulli_perturbation_family(n).joint
    for kind in ProductMetricKind:
        assert prokhorov_to_product_upper(j, kind).value <= 1 / n + 1e-12


# ---------------------------------------------------------------------------
# Characteristic-function gaps
# ---------------------------------------------------------------------------

def test_cf_gap_vanishes_for_product_measures():
    s1, s2 = line_space([0.0, 1.0]), line_space([0.0, 1.0, 2.0])
    p = product_measure(uniform(s1), uniform(s2))
    assert cf_gap(p, 1.3, -0.7) == pytest.approx(0.0, abs=1e-12)
    gap, _, _ = cf_gap_lattice(p)
    assert gap == pytest.approx(0.0, abs=1e-12)


def test_cf_gap_against_direct_numpy_evaluation():
    j = bernoulli_perturbation_family(3).joint
    t, s = 2.0, -1.0
    x = j.space1.coords[:, 0]
    y = j.space2.coords[:, 0]
    w = np.array([[float(v) for v in row] for row in j.weights])
    phi_joint = np.sum(w * np.exp(1j * (t * x[:, None] + s * y[None, :])))
    phi_x = np.sum(w.sum(axis=1) * np.exp(1j * t * x))
    phi_y = np.sum(w.sum(axis=0) * np.exp(1j * s * y))
    assert cf_gap(j, t, s) == pytest.approx(abs(phi_joint - phi_x * phi_y), abs=1e-12)


def test_cf_gap_of_bernoulli_family_shrinks_with_n():
    gaps = [cf_gap_lattice(bernoulli_perturbation_family(n).joint)[0] for n in (2, 4, 8, 16)]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < gaps[0] / 4


def test_gaussian_cf_gap_closed_form_value():
    # scalar case: e^{-1} * |e^{-1/2} - 1| for unit variances, correlation 1/2
    expected = math.exp(-1.0) * abs(math.exp(-0.5) - 1.0)
    assert gaussian_cf_gap(0.0, 0.0, 1.0, 1.0, 0.5, 1.0, 1.0) == pytest.approx(expected)
    # zero cross-covariance: the gap vanishes identically
    assert gaussian_cf_gap(0.0, 0.0, 1.0, 1.0, 0.0, 1.7, -2.3) == 0.0


def test_gaussian_cf_gap_rejects_invalid_covariance():
    with pytest.raises(InputError):
        gaussian_cf_gap(0.0, 0.0, 1.0, 1.0, 2.0, 1.0, 1.0)  # |corr| > 1


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

def test_variation_certificate_reevaluates_exactly():
    j = random_joint(1, 4, 4)
    d = dependence_matrix(j)
    mv = variation_norm(d)
    assert mv.name is MetricName.VARIATION
    assert evaluate_certificate(mv, dep=d) == mv.value


def test_certificate_required():
    mv = variation_norm(dependence_matrix(random_joint(2, 2, 2)))
    stripped = type(mv)(mv.name, mv.value, mv.exact, None)
    with pytest.raises(InputError):
        evaluate_certificate(stripped, dep=None)
