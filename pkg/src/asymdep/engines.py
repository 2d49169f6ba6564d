"""Reusable optimization kernels: max-flow, small dense LP, hypercube bilinear max.

The max-flow solver is a Dinic-style layered augmenting-path implementation
that works over any exact numeric type (Fraction capacities stay exact).
Linear programs are delegated to scipy's HiGHS backend behind a small
maximize-form wrapper.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .errors import CapabilityError, InputError, SolverError

BILINEAR_EXACT_CUTOFF = 22
HEURISTIC_RESTARTS = 32


@dataclass(frozen=True)
class FlowNetwork:
    node_count: int
    edges: tuple[tuple[int, int, object], ...]  # (from, to, capacity)
    source: int
    sink: int

    def __post_init__(self) -> None:
        edges = tuple((int(a), int(b), c) for a, b, c in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.source == self.sink:
            raise InputError("source and sink must differ")
        for a, b, c in edges:
            if a == b:
                raise InputError("self-loops are not allowed")
            if not (0 <= a < self.node_count and 0 <= b < self.node_count):
                raise InputError("edge endpoint out of range")
            if c < 0:
                raise InputError("capacities must be nonnegative")


def max_flow(net: FlowNetwork) -> tuple[object, list[object]]:
    """Maximum flow value and per-edge flows (same order as net.edges).

    Dinic's algorithm: BFS level graph + DFS blocking flows. Arithmetic is
    whatever the capacities use; with Fraction capacities the result is exact.
    """
    n = net.node_count
    # adjacency of edge ids; residual graph stores forward and backward arcs
    head: list[int] = []
    cap: list = []
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b, c in net.edges:
        adj[a].append(len(head))
        head.append(b)
        cap.append(c)
        adj[b].append(len(head))
        head.append(a)
        cap.append(c * 0)  # zero of the same numeric type

    def bfs() -> list[int] | None:
        level = [-1] * n
        level[net.source] = 0
        q = deque([net.source])
        while q:
            u = q.popleft()
            for eid in adj[u]:
                v = head[eid]
                if level[v] < 0 and cap[eid] > 0:
                    level[v] = level[u] + 1
                    q.append(v)
        return level if level[net.sink] >= 0 else None

    def dfs(u: int, pushed, level: list[int], it: list[int]):
        if u == net.sink:
            return pushed
        while it[u] < len(adj[u]):
            eid = adj[u][it[u]]
            v = head[eid]
            if cap[eid] > 0 and level[v] == level[u] + 1:
                d = dfs(v, min(pushed, cap[eid]), level, it)
                if d > 0:
                    cap[eid] -= d
                    cap[eid ^ 1] += d
                    return d
            it[u] += 1
        return pushed * 0

    total = None
    while True:
        level = bfs()
        if level is None:
            break
        it = [0] * n
        while True:
            # sentinel "infinite" capacity: total source capacity + 1
            inf = sum(c for a, _, c in net.edges if a == net.source) + 1
            pushed = dfs(net.source, inf, level, it)
            if pushed == 0:
                break
            total = pushed if total is None else total + pushed
    if total is None:
        total = net.edges[0][2] * 0 if net.edges else 0
    flows = [net.edges[i][2] - cap[2 * i] for i in range(len(net.edges))]
    return total, flows


class LPStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearProgram:
    """Maximize objective . x subject to relational constraints and box bounds."""

    objective: tuple[float, ...]
    constraints: tuple[tuple[tuple[float, ...], str, float], ...] = ()
    variable_bounds: tuple[tuple[float | None, float | None], ...] | None = None

    def __post_init__(self) -> None:
        nvar = len(self.objective)
        for coeffs, rel, _ in self.constraints:
            if len(coeffs) != nvar:
                raise InputError("constraint dimension mismatch")
            if rel not in ("<=", "=", ">="):
                raise InputError(f"unknown relation {rel!r}")
        if self.variable_bounds is not None:
            if len(self.variable_bounds) != nvar:
                raise InputError("bounds dimension mismatch")
            for lo, hi in self.variable_bounds:
                if lo is not None and hi is not None and lo > hi:
                    raise InputError("variable bound lo > hi")


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    value: float | None
    solution: tuple[float, ...] | None


def solve_lp(lp: LinearProgram) -> LPResult:
    """Solve the (maximization) LP with HiGHS; 1e-9 feasibility/optimality target."""
    c = -np.asarray(lp.objective, dtype=float)
    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for coeffs, rel, bound in lp.constraints:
        row = np.asarray(coeffs, dtype=float)
        if rel == "<=":
            a_ub.append(row)
            b_ub.append(bound)
        elif rel == ">=":
            a_ub.append(-row)
            b_ub.append(-bound)
        else:
            a_eq.append(row)
            b_eq.append(bound)
    bounds = lp.variable_bounds if lp.variable_bounds is not None else [(None, None)] * len(c)
    res = linprog(
        c,
        A_ub=np.array(a_ub) if a_ub else None,
        b_ub=np.array(b_ub) if b_ub else None,
        A_eq=np.array(a_eq) if a_eq else None,
        b_eq=np.array(b_eq) if b_eq else None,
        bounds=bounds,
        method="highs",
    )
    if res.status == 0:
        return LPResult(LPStatus.OPTIMAL, float(-res.fun), tuple(float(x) for x in res.x))
    if res.status == 2:
        return LPResult(LPStatus.INFEASIBLE, None, None)
    if res.status == 3:
        return LPResult(LPStatus.UNBOUNDED, None, None)
    raise SolverError(f"LP solver failed: {res.message}")


@dataclass(frozen=True)
class BilinearInstance:
    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2:
            raise InputError("bilinear instance needs a 2-D matrix")
        if not np.all(np.isfinite(m)):
            raise InputError("matrix entries must be finite")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


def _sign_rows(m: int) -> np.ndarray:
    """All 2^m sign vectors in {-1,1}^m, one per row, bitmask order."""
    masks = np.arange(2 ** m, dtype=np.int64)[:, None]
    bits = (masks >> np.arange(m)) & 1
    return (2 * bits - 1).astype(float)


def hypercube_bilinear_max(
    inst: BilinearInstance, mode: str = "exact"
) -> tuple[float, np.ndarray, np.ndarray]:
    """max over a in {-1,1}^m, b in {-1,1}^k of |a^T M b|.

    The maximum of the convex function |a^T M b| over the cube is attained at
    sign vectors; for fixed a the optimal b is sign(a^T M), so exact mode only
    enumerates the smaller side. Heuristic mode runs alternating ascent from
    seeded random starts and reports a lower bound.
    """
    M = inst.matrix
    m, k = M.shape
    transposed = k < m
    if transposed:
        M = M.T
        m, k = k, m
    if mode == "exact":
        if m > BILINEAR_EXACT_CUTOFF:
            raise CapabilityError(
                f"exact bilinear max needs min(m,k) <= {BILINEAR_EXACT_CUTOFF}, got {m}"
            )
        best_val, best_a = -1.0, None
        chunk = 1 << 14
        for start in range(0, 2 ** m, chunk):
            stop = min(start + chunk, 2 ** m)
            masks = np.arange(start, stop, dtype=np.int64)[:, None]
            A = (2 * ((masks >> np.arange(m)) & 1) - 1).astype(float)
            vals = np.abs(A @ M).sum(axis=1)
            i = int(np.argmax(vals))
            if vals[i] > best_val:
                best_val, best_a = float(vals[i]), A[i]
        a = best_a
    elif mode == "heuristic":
        rngs = [np.random.default_rng(seed) for seed in range(HEURISTIC_RESTARTS)]
        best_val, a = -1.0, None
        for rng in rngs:
            cur = rng.choice([-1.0, 1.0], size=m)
            prev = -1.0
            for _ in range(200):
                b = np.where(cur @ M >= 0, 1.0, -1.0)
                cur = np.where(M @ b >= 0, 1.0, -1.0)
                val = float(np.abs(cur @ M).sum())
                if val <= prev:
                    break
                prev = val
            val = float(np.abs(cur @ M).sum())
            if val > best_val:
                best_val, a = val, cur
    else:
        raise InputError(f"unknown mode {mode!r}")
    b = np.where(a @ M >= 0, 1.0, -1.0)
    value = float(abs(a @ M @ b))
    if transposed:
        a, b = b, a
    return value, a, b
