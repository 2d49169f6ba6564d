"""Counterexample families and finite-instance sufficient-condition checkers.

Two constructions separate the asymptotic-independence conditions:

* binary_coding_family: the binary-digit joint measure on {0..2n-1} x
  {0..2^n-1}. Its rectangle gaps vanish like 1/sqrt(n) (AI-3 holds) while a
  fixed tent-bump test function keeps an integral gap of exactly 1/4
  (AI-1 fails).
* bernoulli_perturbation_family: X_n = X + Y/n, Y_n = Y for independent fair
  bits X, Y. The joint law merges with the product of marginals (AI-1 holds,
  Prokhorov distance <= 1/n) while the rectangle {1} x {1} keeps a gap of
  exactly 1/8 (AI-2 fails).

The Markov-shift family illustrates geometric alpha decay for finite chains,
and the two checkers verify the coupling / conditional-independence
sufficient-condition bounds on exact finite instances.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InputError
from .measures import (
    DiscreteMeasure,
    JointMeasure,
    as_fraction,
    dependence_matrix,
    marginals,
)
from .metrics import alpha_coefficient, gaussian_cf_gap, variation_norm, DEFAULT_CF_LATTICE
from .spaces import line_space

ZERO = Fraction(0)
ONE = Fraction(1)

BINARY_CODING_MAX_N = 16


# ---------------------------------------------------------------------------
# Binary coding construction
# ---------------------------------------------------------------------------

def chi(i: int, j: int) -> int:
    """The i-th binary digit of j (0 beyond the coding length)."""
    if i < 0 or j < 0:
        raise InputError("chi is defined on nonnegative integers")
    return (j >> i) & 1


def sign_fn(i: int, j: int) -> int:
    """2*chi(i,j) - 1, valued in {-1, 1}."""
    return 2 * chi(i, j) - 1


def tent(x: float, y: float) -> float:
    """The bump max{0, 1 - 4|x| - 4|y|}; support in |x|,|y| <= 1/4."""
    return max(0.0, 1.0 - 4.0 * abs(x) - 4.0 * abs(y))


def h_eval(x: float, y: float) -> float:
    """sum_{i,j} chi(i,j) tent(x-i, y-j).

    At most one tent term is nonzero, so it suffices to round (x, y) to the
    nearest lattice point; half-integer ties fall outside every tent support.
    """
    i, j = round(x), round(y)
    if i < 0 or j < 0:
        return 0.0
    t = tent(x - i, y - j)
    return chi(i, j) * t


@dataclass(frozen=True)
class FamilyInstance:
    family: str
    n: int
    joint: JointMeasure | None
    params: dict = field(default_factory=dict)


def binary_coding_weight(n: int, i: int, j: int) -> Fraction:
    """Weight of the binary-coding joint measure at the grid point (i, j)."""
    denom = n * 2 ** n
    if i < n:
        return Fraction(chi(i, j), denom)
    return Fraction(1 - chi(i - n, j), denom)


def binary_coding_family(n: int) -> FamilyInstance:
    """The AI-3-but-not-AI-1 family: support {0..2n-1} x {0..2^n-1} on the line."""
    if not 1 <= n <= BINARY_CODING_MAX_N:
        raise InputError(f"binary coding level must satisfy 1 <= n <= {BINARY_CODING_MAX_N}")
    s1 = line_space(range(2 * n))
    s2 = line_space(range(2 ** n))
    weights = tuple(
        tuple(binary_coding_weight(n, i, j) for j in range(2 ** n)) for i in range(2 * n)
    )
    joint = JointMeasure(s1, s2, weights)
    return FamilyInstance("binary_coding", n, joint)


def binary_coding_h_matrix(n: int):
    """h evaluated on the support grid: h(i,j) = chi(i,j), exact integers."""
    return tuple(
        tuple(Fraction(chi(i, j)) for j in range(2 ** n)) for i in range(2 * n)
    )


def binary_coding_sign_matrix(n: int) -> np.ndarray:
    """The 2^n x n matrix with entries sign(i,j) (rows j, columns i)."""
    return np.array(
        [[sign_fn(i, j) for i in range(n)] for j in range(2 ** n)], dtype=float
    )


# ---------------------------------------------------------------------------
# Bernoulli perturbation construction
# ---------------------------------------------------------------------------

def bernoulli_perturbation_family(n: int) -> FamilyInstance:
    """The AI-1-but-not-AI-2 family: X_n = X + Y/n, Y_n = Y for fair bits X, Y."""
    if n < 2:
        raise InputError("bernoulli perturbation needs n >= 2 (atoms collide at n = 1)")
    xs = [Fraction(0), Fraction(1, n), Fraction(1), 1 + Fraction(1, n)]
    s1 = line_space([float(x) for x in xs], labels=[str(x) for x in xs])
    s2 = line_space([0.0, 1.0], labels=["0", "1"])
    q = Fraction(1, 4)
    weights = (
        (q, ZERO),      # (0, 0)
        (ZERO, q),      # (1/n, 1)
        (q, ZERO),      # (1, 0)
        (ZERO, q),      # (1 + 1/n, 1)
    )
    joint = JointMeasure(s1, s2, weights)
    # the rectangle {X = 1} x {Y = 1} pins the AI-2 gap at 1/8
    return FamilyInstance(
        "bernoulli_perturbation", n, joint, params={"rectangle": ((2,), (1,))}
    )


def rectangle_gap(j: JointMeasure, a_indices, b_indices) -> Fraction:
    """|mu(A x B)| for the dependence matrix mu, exact."""
    d = dependence_matrix(j).entries
    return abs(sum(d[i][k] for i in a_indices for k in b_indices))


# ---------------------------------------------------------------------------
# Markov shift family
# ---------------------------------------------------------------------------

def _as_fraction_matrix(rows):
    return tuple(tuple(as_fraction(x) for x in row) for row in rows)


def _mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p)) for i in range(n)
    )


def matrix_power(t, n: int):
    size = len(t)
    result = tuple(
        tuple(ONE if i == j else ZERO for j in range(size)) for i in range(size)
    )
    base = t
    while n:
        if n & 1:
            result = _mat_mul(result, base)
        base = _mat_mul(base, base)
        n >>= 1
    return result


def markov_shift_family(transition, stationary, n: int) -> FamilyInstance:
    """Joint law of (X_0, X_n) for a stationary finite chain, exact rationals."""
    t = _as_fraction_matrix(transition)
    pi = tuple(as_fraction(x) for x in stationary)
    size = len(t)
    if any(len(row) != size for row in t) or len(pi) != size:
        raise InputError("transition matrix and stationary vector sizes disagree")
    if any(x < 0 for row in t for x in row) or any(sum(row) != ONE for row in t):
        raise InputError("transition rows must be nonnegative and sum to 1")
    if any(x < 0 for x in pi) or sum(pi) != ONE:
        raise InputError("stationary vector must be a probability vector")
    for j in range(size):
        if sum(pi[i] * t[i][j] for i in range(size)) != pi[j]:
            raise InputError("the supplied vector is not stationary for the chain")
    if n < 0:
        raise InputError("n must be nonnegative")
    tn = matrix_power(t, n)
    space = line_space(range(size))
    weights = tuple(tuple(pi[i] * tn[i][j] for j in range(size)) for i in range(size))
    joint = JointMeasure(space, space, weights)
    return FamilyInstance(
        "markov_shift",
        n,
        joint,
        params={"transition": t, "stationary": pi, "rectangle": ((0,), (0,))},
    )


def two_state_chain(p) -> tuple[tuple, tuple]:
    """Symmetric two-state chain with flip probability p; stationary (1/2, 1/2)."""
    p = as_fraction(p)
    if not 0 <= p <= 1:
        raise InputError("flip probability must lie in [0, 1]")
    transition = ((1 - p, p), (p, 1 - p))
    return transition, (Fraction(1, 2), Fraction(1, 2))


def markov_block_family(transition, stationary, n: int, width: int) -> FamilyInstance:
    """Joint law of ((X_0..X_{w-1}), (X_n..X_{n+w-1})) via the w-step block chain.

    Realized as markov_shift_family on the product state space; width <= 3
    keeps the blown-up space at desk scale.
    """
    if not 1 <= width <= 3:
        raise InputError("block width must be between 1 and 3")
    t = _as_fraction_matrix(transition)
    pi = tuple(as_fraction(x) for x in stationary)
    size = len(t)
    states = list(itertools.product(range(size), repeat=width))
    index = {s: i for i, s in enumerate(states)}
    block_t = [[ZERO] * len(states) for _ in states]
    for s in states:
        for nxt in range(size):
            target = s[1:] + (nxt,)
            block_t[index[s]][index[target]] += t[s[-1]][nxt]
    block_pi = []
    for s in states:
        w = pi[s[0]]
        for a, b in zip(s, s[1:]):
            w *= t[a][b]
        block_pi.append(w)
    inst = markov_shift_family(block_t, block_pi, n)
    return FamilyInstance(
        "markov_block", n, inst.joint, params={"width": width, "transition": t}
    )


# ---------------------------------------------------------------------------
# Sufficient-condition checkers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConditionalIndepInstance:
    """Three-way law over E1 x E2 x {Omega, Omega^c}.

    Conditionally on the Omega slice the pair factorizes exactly; delta is the
    mass of Omega^c.
    """

    weights: tuple  # weights[i][k][0] = Omega slice, [1] = complement slice

    def __post_init__(self) -> None:
        w = tuple(
            tuple((as_fraction(cell[0]), as_fraction(cell[1])) for cell in row)
            for row in self.weights
        )
        object.__setattr__(self, "weights", w)
        if any(x < 0 for row in w for cell in row for x in cell):
            raise InputError("weights must be nonnegative")
        total = sum(x for row in w for cell in row for x in cell)
        if total != ONE:
            raise InputError("weights must sum to exactly 1")
        p_omega = sum(cell[0] for row in w for cell in row)
        if p_omega == 0:
            raise InputError("Omega must have positive probability (delta < 1)")
        n1, n2 = len(w), len(w[0])
        row_omega = [sum(w[i][k][0] for k in range(n2)) for i in range(n1)]
        col_omega = [sum(w[i][k][0] for i in range(n1)) for k in range(n2)]
        for i in range(n1):
            for k in range(n2):
                if w[i][k][0] * p_omega != row_omega[i] * col_omega[k]:
                    raise InputError("the pair is not conditionally independent given Omega")

    @property
    def delta(self) -> Fraction:
        return sum(cell[1] for row in self.weights for cell in row)

    def xy_marginal(self) -> JointMeasure:
        n1, n2 = len(self.weights), len(self.weights[0])
        s1, s2 = line_space(range(n1)), line_space(range(n2))
        w = tuple(
            tuple(self.weights[i][k][0] + self.weights[i][k][1] for k in range(n2))
            for i in range(n1)
        )
        return JointMeasure(s1, s2, w)


def conditional_independence_bound_check(
    inst: ConditionalIndepInstance,
) -> tuple[Fraction, Fraction, bool]:
    """alpha of the (X,Y) marginal against the bound 2 delta (1 + 1/(1 - delta))."""
    delta = inst.delta
    if delta >= 1:
        raise InputError("delta must be < 1")
    alpha = alpha_coefficient(inst.xy_marginal()).value
    bound = 2 * delta * (1 + 1 / (1 - delta)) if delta > 0 else ZERO
    return alpha, bound, alpha <= bound


@dataclass(frozen=True)
class CouplingInstance:
    """Four-way law of (X, X', Y, Y') where the primed pair is independent."""

    weights: tuple  # weights[x][xp][y][yp]

    def __post_init__(self) -> None:
        w = tuple(
            tuple(
                tuple(tuple(as_fraction(v) for v in yp_row) for yp_row in y_row)
                for y_row in xp_row
            )
            for xp_row in self.weights
        )
        object.__setattr__(self, "weights", w)
        flat = [v for a in w for b in a for c in b for v in c]
        if any(v < 0 for v in flat):
            raise InputError("weights must be nonnegative")
        if sum(flat) != ONE:
            raise InputError("weights must sum to exactly 1")
        n1, n2 = len(w), len(w[0][0])
        qxp = [
            sum(w[x][xp][y][yp] for x in range(n1) for y in range(n2) for yp in range(n2))
            for xp in range(n1)
        ]
        qyp = [
            sum(w[x][xp][y][yp] for x in range(n1) for xp in range(n1) for y in range(n2))
            for yp in range(n2)
        ]
        for xp in range(n1):
            for yp in range(n2):
                joint = sum(w[x][xp][y][yp] for x in range(n1) for y in range(n2))
                if joint != qxp[xp] * qyp[yp]:
                    raise InputError("the primed pair (X', Y') must be independent")

    def xy_marginal(self) -> JointMeasure:
        w = self.weights
        n1, n2 = len(w), len(w[0][0])
        s1, s2 = line_space(range(n1)), line_space(range(n2))
        m = tuple(
            tuple(
                sum(w[x][xp][y][yp] for xp in range(n1) for yp in range(n2))
                for y in range(n2)
            )
            for x in range(n1)
        )
        return JointMeasure(s1, s2, m)

    def mismatch_probabilities(self) -> tuple[Fraction, Fraction, Fraction]:
        """(P{(X,Y) != (X',Y')}, P{X != X'}, P{Y != Y'})."""
        w = self.weights
        n1, n2 = len(w), len(w[0][0])
        p_pair = sum(
            w[x][xp][y][yp]
            for x in range(n1)
            for xp in range(n1)
            for y in range(n2)
            for yp in range(n2)
            if (x, y) != (xp, yp)
        )
        p_x = sum(
            w[x][xp][y][yp]
            for x in range(n1)
            for xp in range(n1)
            for y in range(n2)
            for yp in range(n2)
            if x != xp
        )
        p_y = sum(
            w[x][xp][y][yp]
            for x in range(n1)
            for xp in range(n1)
            for y in range(n2)
            for yp in range(n2)
            if y != yp
        )
        return p_pair, p_x, p_y


def coupling_tv_bound_check(inst: CouplingInstance) -> tuple[Fraction, Fraction, bool]:
    """Total variation of the (X,Y) dependence vs the coupling mismatch bound."""
    tv = variation_norm(dependence_matrix(inst.xy_marginal())).value
    p_pair, p_x, p_y = inst.mismatch_probabilities()
    bound = 2 * p_pair + 2 * p_x + 2 * p_y
    return tv, bound, tv <= bound


# ---------------------------------------------------------------------------
# Random instance generators (fixed seed schedule for reproducibility)
# ---------------------------------------------------------------------------

def _random_prob_vector(rng: random.Random, n: int, denom: int = 64) -> list[Fraction]:
    cuts = sorted(rng.randint(0, denom) for _ in range(n - 1))
    parts = [a - b for a, b in zip(cuts + [denom], [0] + cuts)]
    return [Fraction(p, denom) for p in parts]


def random_conditional_indep_instance(
    seed: int, n1: int = 3, n2: int = 3
) -> ConditionalIndepInstance:
    rng = random.Random(seed)
    delta = Fraction(rng.randint(0, 31), 64)  # keep delta < 1/2
    ax = _random_prob_vector(rng, n1)
    ay = _random_prob_vector(rng, n2)
    rest = _random_prob_vector(rng, n1 * n2)
    w = []
    for i in range(n1):
        row = []
        for k in range(n2):
            omega = (1 - delta) * ax[i] * ay[k]
            comp = delta * rest[i * n2 + k]
            row.append((omega, comp))
        w.append(tuple(row))
    return ConditionalIndepInstance(tuple(w))


def random_coupling_instance(seed: int, n1: int = 3, n2: int = 3) -> CouplingInstance:
    rng = random.Random(seed)
    q1 = _random_prob_vector(rng, n1)
    q2 = _random_prob_vector(rng, n2)
    w = [
        [[[ZERO] * n2 for _ in range(n2)] for _ in range(n1)] for _ in range(n1)
    ]
    for xp in range(n1):
        for yp in range(n2):
            mass = q1[xp] * q2[yp]
            if mass == 0:
                continue
            kernel = _random_prob_vector(rng, n1 * n2)
            for x in range(n1):
                for y in range(n2):
                    w[x][xp][y][yp] = mass * kernel[x * n2 + y]
    return CouplingInstance(
        tuple(tuple(tuple(tuple(c) for c in b) for b in a) for a in w)
    )


def random_joint(seed: int, n1: int, n2: int, denom: int = 48) -> JointMeasure:
    """A random exact joint measure on two integer line spaces."""
    rng = random.Random(seed)
    s1, s2 = line_space(range(n1)), line_space(range(n2))
    flat = _random_prob_vector(rng, n1 * n2, denom=denom)
    w = tuple(tuple(flat[i * n2 + k] for k in range(n2)) for i in range(n1))
    return JointMeasure(s1, s2, w)


# ---------------------------------------------------------------------------
# Gaussian family check
# ---------------------------------------------------------------------------

def gaussian_family_check(
    means1,
    means2,
    covs,
    *,
    moment_cap: float = 100.0,
    cross_tol: float = 0.05,
    lattice=DEFAULT_CF_LATTICE,
):
    """Check boundedness and vanishing cross-covariance along a Gaussian sequence.

    covs is a sequence of (cov11, cov22, cov12) blocks. Returns
    (bounded, cross_vanishes, traces) where traces holds per-term max cf gaps
    on the default lattice.
    """
    terms = len(covs)
    if terms == 0 or len(means1) != terms or len(means2) != terms:
        raise InputError("means and covariance sequences must have equal positive length")
    bounded = True
    traces = []
    max_cross_tail = 0.0
    tail_start = terms - max(1, terms // 4)
    for idx, (a, b, blocks) in enumerate(zip(means1, means2, covs)):
        cov11 = np.atleast_2d(np.asarray(blocks[0], dtype=float))
        cov22 = np.atleast_2d(np.asarray(blocks[1], dtype=float))
        cov12 = np.asarray(blocks[2], dtype=float).reshape(cov11.shape[0], cov22.shape[0])
        a = np.atleast_1d(np.asarray(a, dtype=float))
        b = np.atleast_1d(np.asarray(b, dtype=float))
        second_x = float(np.trace(cov11) + a @ a)
        second_y = float(np.trace(cov22) + b @ b)
        if max(second_x, second_y, np.abs(a).max(initial=0), np.abs(b).max(initial=0)) > moment_cap:
            bounded = False
        if idx >= tail_start:
            max_cross_tail = max(max_cross_tail, float(np.abs(cov12).max()))
        best = 0.0
        for t in itertools.product(lattice, repeat=cov11.shape[0]):
            for s in itertools.product(lattice, repeat=cov22.shape[0]):
                best = max(best, gaussian_cf_gap(a, b, cov11, cov22, cov12, t, s))
        traces.append(best)
    return bounded, max_cross_tail < cross_tol, traces
