"""
Fundamental and vertex solutions of A x = 0 over the non-negative
integers.

The Hilbert basis (the set of minimal non-zero non-negative integer
solutions) is enumerated by the classic completion scheme of Contejean
and Devie: grow candidate vectors breadth first from the unit vectors,
extending x by a unit e_j only when the residual A x moves closer to
zero in the direction of column j (formally <A x, A e_j> < 0), and
discard any candidate that already dominates a known minimal solution.
Every level of the frontier is deduplicated and processed in sorted
order, so the output is deterministic regardless of batch sizes.

Alongside the enumerator there are direct, definition-level tests:
``is_fundamental`` runs an exhaustive box search below a given solution,
``is_vertex`` checks that the rational kernel restricted to the support
is a single ray, and ``brute_force_minimal_solutions`` re-derives small
Hilbert bases from a coefficient grid over the solution-space basis,
independently of the completion algorithm.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exact
from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    EmptyVector,
    NegativeEntry,
    NotASolution,
)
from .qsystem import QMatrix

# Magnitude guard for the vectorized integer paths; entries beyond this
# would risk silent int64 overflow in the matrix products.
_SAFE_MAGNITUDE = 2 ** 30


@dataclass(frozen=True)
class Budget:
    """Resource limits for enumerations.

    ``max_seconds`` caps wall-clock time, ``max_frontier`` caps both the
    breadth-first frontier size and the number of visited search nodes.
    Exhaustion raises BudgetExceeded; partial results are never
    returned.
    """

    max_seconds: float | None = 60.0
    max_frontier: int | None = 10 ** 7

    def clock(self):
        return _Clock(self)


class _Clock:
    def __init__(self, budget: Budget):
        self.budget = budget
        self.deadline = (None if budget.max_seconds is None
                         else time.monotonic() + budget.max_seconds)
        self.nodes = 0

    def charge(self, amount=1):
        self.nodes += amount
        cap = self.budget.max_frontier
        if cap is not None and self.nodes > cap:
            raise BudgetExceeded(
                f"search visited more than {cap} states")
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded(
                f"search exceeded {self.budget.max_seconds} seconds")

    def check_size(self, size, what="frontier"):
        cap = self.budget.max_frontier
        if cap is not None and size > cap:
            raise BudgetExceeded(f"{what} grew past {cap} states")
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded(
                f"search exceeded {self.budget.max_seconds} seconds")


DEFAULT_BUDGET = Budget()


class SolutionCone:
    """An integer matrix A together with its rational kernel.

    Wraps either a QMatrix or any explicit integer row list.  The
    kernel basis and the primitive extreme rays are computed lazily in
    exact arithmetic and cached.
    """

    def __init__(self, matrix, ncols: int | None = None):
        if isinstance(matrix, QMatrix):
            rows = matrix.rows
            ncols = 3 * matrix.p
        else:
            rows = tuple(tuple(int(x) for x in row) for row in matrix)
            if rows:
                ncols = len(rows[0])
            elif ncols is None:
                raise DimensionMismatch("ncols required for an empty matrix")
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        self.rows = rows
        self.ncols = ncols
        self._kernel = None
        self._rays = None

    @property
    def kernel(self):
        if self._kernel is None:
            self._kernel = tuple(exact.kernel_basis(self.rows, self.ncols))
        return self._kernel

    @property
    def extreme_rays(self):
        if self._rays is None:
            from .rays import extreme_rays_of_kernel_cone
            self._rays = extreme_rays_of_kernel_cone(self.rows, self.ncols)
        return self._rays

    def residual(self, v):
        if len(v) != self.ncols:
            raise DimensionMismatch(
                f"vector length {len(v)} != {self.ncols} columns")
        return tuple(sum(c * x for c, x in zip(row, v) if c)
                     for row in self.rows)

    def is_solution(self, v) -> bool:
        return not any(self.residual(v))

    def check_solution_vector(self, v):
        """Validate a candidate: non-negative, non-zero, integral,
        solves A v = 0.  Returns the tuple form."""
        vec = tuple(int(x) for x in v)
        if any(int(x) != x for x in v):
            raise NotASolution("vector must be integral")
        if len(vec) != self.ncols:
            raise DimensionMismatch(
                f"vector length {len(vec)} != {self.ncols} columns")
        if any(x < 0 for x in vec):
            raise NegativeEntry(f"vector has negative entries: {vec}")
        if not any(vec):
            raise EmptyVector("the zero vector is excluded by definition")
        if not self.is_solution(vec):
            raise NotASolution(f"A . v != 0 for {vec}")
        return vec


def graded_lex_key(v):
    """Sort key: total degree first, then lexicographic."""
    return (sum(v), tuple(v))


def _dominates_any(vectors: np.ndarray, minimal: np.ndarray) -> np.ndarray:
    """Boolean mask of rows of ``vectors`` that dominate (>=) some row
    of ``minimal``, computed in memory-bounded chunks."""
    out = np.zeros(vectors.shape[0], dtype=bool)
    if not minimal.shape[0]:
        return out
    chunk = max(1, 4_000_000 // max(1, minimal.shape[0] * vectors.shape[1]))
    for lo in range(0, vectors.shape[0], chunk):
        part = vectors[lo: lo + chunk]
        out[lo: lo + chunk] = (
            (part[:, None, :] >= minimal[None, :, :]).all(axis=2).any(axis=1))
    return out


def hilbert_basis(cone: SolutionCone, budget: Budget | None = None):
    """All minimal non-zero non-negative integer solutions of A x = 0.

    Completion from the unit vectors: a candidate x grows by e_j only
    when <A x, A e_j> < 0, which preserves reachability of every
    minimal solution.  Two sound prunings keep the frontier finite and
    small: candidates dominating an already-found minimal solution die
    (the primitive extreme rays are themselves minimal and are seeded
    up front), and candidates escaping the entrywise sum of the extreme
    rays die, because every minimal solution is a sub-one combination
    of the rays and therefore lies inside that box.

    Returns a tuple sorted in graded lexicographic order.  Raises
    BudgetExceeded rather than truncating.
    """
    budget = budget or DEFAULT_BUDGET
    clock = budget.clock()
    n = cone.ncols
    if n == 0:
        return ()
    A = np.array(cone.rows, dtype=np.int64).reshape(len(cone.rows), n)
    rays = cone.extreme_rays
    if not rays:
        return ()
    bound = np.array([sum(r[j] for r in rays) for j in range(n)],
                     dtype=np.int64)
    if bound.max(initial=0) > _SAFE_MAGNITUDE:
        raise BudgetExceeded("extreme-ray box exceeds the safe integer "
                             "range")
    minimal = [np.array(r, dtype=np.int64) for r in rays]
    frontier = np.eye(n, dtype=np.int64)
    frontier = frontier[(frontier <= bound).all(axis=1)]
    frontier = frontier[~_dominates_any(frontier, np.array(minimal))]

    while frontier.shape[0]:
        clock.check_size(frontier.shape[0])
        residuals = frontier @ A.T
        sol_mask = (residuals == 0).all(axis=1)
        # np.unique keeps rows lexicographically sorted, so this scan is
        # deterministic.  Same-degree solutions can never dominate each
        # other; only lower levels matter.
        for row in frontier[sol_mask]:
            if not any((row >= m).all() for m in minimal):
                minimal.append(row.copy())
        rest = frontier[~sol_mask]
        if not rest.shape[0]:
            break
        # Extend x by e_j exactly when <A x, A e_j> < 0.
        scores = residuals[~sol_mask] @ A
        where = np.argwhere(scores < 0)
        clock.check_size(where.shape[0], what="extension set")
        if not where.shape[0]:
            break
        children = rest[where[:, 0]].copy()
        children[np.arange(children.shape[0]), where[:, 1]] += 1
        children = np.unique(children, axis=0)
        children = children[(children <= bound).all(axis=1)]
        keep = ~_dominates_any(children, np.array(minimal))
        frontier = children[keep]

    out = [tuple(int(x) for x in m) for m in minimal]
    out.sort(key=graded_lex_key)
    return tuple(out)


def _box_solutions(cone: SolutionCone, bounds, clock, stop_after=None):
    """All integer solutions x with 0 <= x <= bounds, by depth-first
    search with interval pruning on every equation.

    ``bounds`` may be zero on most coordinates; only non-zero ones
    branch.  Returns a list of tuples, always including the zero
    vector; stops early once ``stop_after`` solutions are in hand.
    """
    n = cone.ncols
    A = [list(map(int, row)) for row in cone.rows]
    m = len(A)
    support = [j for j in range(n) if bounds[j] > 0]
    # Remaining-contribution intervals per row, as suffix sums over the
    # support columns.
    lo_suffix = [[0] * m]
    hi_suffix = [[0] * m]
    for j in reversed(support):
        prev_lo, prev_hi = lo_suffix[0], hi_suffix[0]
        lo = prev_lo[:]
        hi = prev_hi[:]
        for r in range(m):
            c = A[r][j] * bounds[j]
            if c < 0:
                lo[r] += c
            else:
                hi[r] += c
        lo_suffix.insert(0, lo)
        hi_suffix.insert(0, hi)

    x = [0] * n
    found = []

    def rec(k, residual):
        if stop_after is not None and len(found) >= stop_after:
            return
        clock.charge()
        if k == len(support):
            if not any(residual):
                found.append(tuple(x))
            return
        lo, hi = lo_suffix[k + 1], hi_suffix[k + 1]
        j = support[k]
        col = [A[r][j] for r in range(m)]
        for val in range(bounds[j] + 1):
            res = [residual[r] + col[r] * val for r in range(m)]
            if all(res[r] + lo[r] <= 0 <= res[r] + hi[r] for r in range(m)):
                x[j] = val
                rec(k + 1, res)
                x[j] = 0
                if stop_after is not None and len(found) >= stop_after:
                    return

    rec(0, [0] * m)
    return found


def is_fundamental(cone: SolutionCone, v, budget: Budget | None = None) -> bool:
    """Definition-level minimality test: no solution v' with 0 < v' < v.

    Searches the box below v restricted to the support of v, pruning
    with the linear equations.  Exact but exponential in the support
    size; meant for the small explicit vectors this package handles.
    """
    budget = budget or DEFAULT_BUDGET
    clock = budget.clock()
    vec = cone.check_solution_vector(v)
    # The box below v always contains the solutions 0 and v itself; any
    # third one is a witness of non-minimality.
    return len(_box_solutions(cone, vec, clock, stop_after=3)) <= 2


def is_vertex(cone: SolutionCone, v) -> bool:
    """True iff v spans an extreme ray of the solution cone.

    Equivalent to the definition "every solution below every multiple
    of v is itself a multiple": the rational kernel of A restricted to
    the support of v must be one-dimensional.
    """
    vec = cone.check_solution_vector(v)
    support = [j for j, x in enumerate(vec) if x]
    sub = exact.restrict_columns(cone.rows, support)
    dim = len(support) - exact.rank(sub)
    if dim < 1:
        # v itself restricts to a kernel vector, so this cannot happen.
        raise NotASolution("support-restricted system lost the solution")
    return dim == 1


def is_vertex_by_search(cone: SolutionCone, v, k: int = 3,
                        budget: Budget | None = None) -> bool:
    """Bounded-search cross-check of ``is_vertex``.

    Enumerates all solutions in [0, k v] and checks each is a multiple
    of v.  Exponential; use only on small vectors.
    """
    budget = budget or DEFAULT_BUDGET
    clock = budget.clock()
    vec = cone.check_solution_vector(v)
    bounds = tuple(k * x for x in vec)
    for sol in _box_solutions(cone, bounds, clock):
        if not any(sol):
            continue
        # sol must be a rational multiple of vec with matching support.
        ratios = {Fraction(s, w) for s, w in zip(sol, vec) if w}
        if len(ratios) != 1 or any(s for s, w in zip(sol, vec) if not w):
            return False
    return True


def _quad_type_patterns(p):
    """Every choice of one quad type per block, odometer order."""
    pattern = [1] * p
    while True:
        yield tuple(pattern)
        k = 0
        while k < p and pattern[k] == 3:
            pattern[k] = 1
            k += 1
        if k == p:
            return
        pattern[k] += 1


def square_fundamental_solutions(matrix: QMatrix,
                                 budget: Budget | None = None,
                                 threads: int = 1):
    """All fundamental solutions of a quad matching system that satisfy
    the square condition, without enumerating the full Hilbert basis.

    The square condition is downward closed: anything below a
    one-type-per-block vector is again one-type-per-block.  A square
    vector is therefore minimal among all solutions exactly when it is
    minimal inside its own pattern subcone (the cone keeping one chosen
    quad column per block and zeroing the rest), and the union of the
    3^p pattern Hilbert bases is precisely the set of square-condition
    fundamental solutions.  Each pattern is a p-variable system, so
    this stays fast long after full enumeration has become infeasible.

    ``threads`` > 1 fans the independent pattern subproblems out to a
    thread pool; the merged, sorted result does not depend on the
    thread count.  Returns a tuple in graded lexicographic order.
    """
    budget = budget or DEFAULT_BUDGET
    deadline = (None if budget.max_seconds is None
                else time.monotonic() + budget.max_seconds)
    p = matrix.p
    n = 3 * p

    def solve_pattern(pattern):
        columns = [3 * i + (pattern[i] - 1) for i in range(p)]
        rows = tuple(tuple(row[c] for c in columns) for row in matrix.rows)
        if deadline is None:
            remaining = None
        else:
            remaining = max(0.001, deadline - time.monotonic())
        sub_budget = Budget(max_seconds=remaining,
                            max_frontier=budget.max_frontier)
        lifted = []
        for small in hilbert_basis(SolutionCone(rows, ncols=p), sub_budget):
            full = [0] * n
            for c, value in zip(columns, small):
                full[c] = value
            lifted.append(tuple(full))
        return lifted

    found = set()
    patterns = _quad_type_patterns(p)
    if threads <= 1:
        for pattern in patterns:
            found.update(solve_pattern(pattern))
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for lifted in pool.map(solve_pattern, patterns, chunksize=64):
                found.update(lifted)
    return tuple(sorted(found, key=graded_lex_key))


def minimal_elements(vectors):
    """The <=-minimal elements of a set of non-negative vectors."""
    ordered = sorted(set(map(tuple, vectors)), key=graded_lex_key)
    kept = []
    for v in ordered:
        if not any(all(x >= y for x, y in zip(v, m)) for m in kept):
            kept.append(v)
    return tuple(kept)


def brute_force_minimal_solutions(tri, a_values, b_values,
                                  budget: Budget | None = None):
    """Independent oracle for small Hilbert bases.

    Sweeps every combination of integer coefficients ``a_values`` and
    grid coefficients ``b_values`` (typically half-integers) over the
    2p-vector solution basis, keeps the integral non-negative non-zero
    results, and filters them down to the minimal elements.  Purely a
    grid sweep plus a definition-level minimality filter, so it shares
    no code path with the completion enumerator it validates.  Feasible
    for p up to about 4.
    """
    budget = budget or DEFAULT_BUDGET
    clock = budget.clock()
    p = tri.p
    a_values = sorted(set(int(a) for a in a_values))
    b_values = sorted(set(Fraction(b) for b in b_values))
    if not a_values or not b_values:
        return ()

    # Work in doubled units so everything stays integral.
    doubled_b = []
    for b in b_values:
        twice = 2 * b
        if twice.denominator != 1:
            raise ValueError(f"b grid must consist of half-integers, got {b}")
        doubled_b.append(int(twice))

    grids_a = np.array(
        np.meshgrid(*([a_values] * p), indexing="ij"),
        dtype=np.int64).reshape(p, -1).T
    grids_b = np.array(
        np.meshgrid(*([doubled_b] * p), indexing="ij"),
        dtype=np.int64).reshape(p, -1).T
    clock.check_size(grids_a.shape[0] * grids_b.shape[0],
                     what="coefficient grid")

    def col(k):  # 0-based column of b_k in the grid, index mod p
        return (k - 1) % p

    # Doubled block tails: 2*(b_{i+1} + b_{i-q}) and 2*(b_i + b_{i-q+1}).
    beta2 = np.empty((grids_b.shape[0], p), dtype=np.int64)
    beta3 = np.empty((grids_b.shape[0], p), dtype=np.int64)
    for i in range(1, p + 1):
        beta2[:, i - 1] = (grids_b[:, col(i + 1)] + grids_b[:, col(i - tri.q)])
        beta3[:, i - 1] = (grids_b[:, col(i)] + grids_b[:, col(i - tri.q + 1)])
    # Integral vectors need both tails even.
    even = ((beta2 % 2 == 0) & (beta3 % 2 == 0)).all(axis=1)
    beta2 = beta2[even] // 2
    beta3 = beta3[even] // 2

    na, nb = grids_a.shape[0], beta2.shape[0]
    if nb == 0:
        return ()
    vectors = np.empty((na, nb, 3 * p), dtype=np.int64)
    vectors[:, :, 0::3] = grids_a[:, None, :]
    vectors[:, :, 1::3] = grids_a[:, None, :] + beta2[None, :, :]
    vectors[:, :, 2::3] = grids_a[:, None, :] + beta3[None, :, :]
    vectors = vectors.reshape(-1, 3 * p)
    clock.check_size(vectors.shape[0], what="candidate set")
    vectors = vectors[(vectors >= 0).all(axis=1)]
    vectors = vectors[vectors.any(axis=1)]
    vectors = np.unique(vectors, axis=0)
    clock.charge(vectors.shape[0])
    return minimal_elements(map(tuple, vectors.tolist()))
