"""Integer matrix arithmetic behind Thurston's construction.

A pair of filling multicurves ``A``, ``B`` is summarised by the matrix
``N[i][j] = i(alpha_i, beta_j)``.  The Perron-Frobenius eigenvalue ``mu`` of
``N N^T`` fixes the representation of ``<T_A, T_B>`` into ``PSL(2, R)``, and
the dilatation of ``T_A T_B^{-1}`` is the spectral radius of a 2x2 matrix with
trace ``2 + mu``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

DEFAULT_TOLERANCE = 1e-10
MAX_ITERATIONS = 10**6
_REFINE_STEPS = 4

# int64 products are exact below this bound; larger inputs fall back to Python ints.
_INT64_SAFE = 2**62


class ReducibleMatrixError(ValueError):
    """The support graph of the matrix is not strongly connected."""


class PFConvergenceError(RuntimeError):
    """Power iteration hit its cap before the bracket closed."""

    def __init__(self, message: str, bracket: "PFBracket"):
        super().__init__(message)
        self.bracket = bracket


@dataclass(frozen=True)
class IntersectionMatrix:
    """Geometric intersection numbers between the curves of ``A`` (rows)
    and ``B`` (columns)."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len({len(row) for row in self.entries}) > 1:
            raise ValueError("intersection matrix rows have unequal length")
        A = np.array(self.entries, dtype=object)
        if A.ndim != 2 or A.size == 0:
            raise ValueError("intersection matrix must be a non-empty 2-d array")
        if not all(type(x) is int for x in A.flat):
            A = np.array([[int(x) for x in row] for row in A.tolist()], dtype=object)
        if (A < 0).any():
            raise ValueError("intersection numbers must be nonnegative")
        support = A != 0
        for i in np.flatnonzero(~support.any(axis=1)):
            raise ValueError(f"row {i} is zero: curve misses every opposite curve")
        for j in np.flatnonzero(~support.any(axis=0)):
            raise ValueError(f"column {j} is zero: curve misses every opposite curve")
        object.__setattr__(self, "entries", tuple(map(tuple, A.tolist())))

    @classmethod
    def from_array(cls, array) -> "IntersectionMatrix":
        return cls(tuple(tuple(int(x) for x in row) for row in np.asarray(array).tolist()))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def to_array(self) -> np.ndarray:
        return _integer_array(self.entries)


@dataclass(frozen=True)
class PFBracket:
    """Certified enclosure ``lower <= mu <= upper`` of a Perron-Frobenius
    eigenvalue.  ``tolerance`` is the width actually targeted, which may be
    larger than the one requested when the request is below the float floor
    for the matrix's scale."""

    lower: np.longdouble
    upper: np.longdouble
    iterations: int
    tolerance: float
    vector: np.ndarray = field(repr=False, compare=False)

    @property
    def midpoint(self) -> np.longdouble:
        return self.lower + (self.upper - self.lower) / 2

    @property
    def width(self) -> float:
        return float(self.upper - self.lower)

    @property
    def upper_float(self) -> float:
        """``upper`` rounded up to a float64, so it still bounds the eigenvalue."""
        u = float(self.upper)
        return u if u >= self.upper else math.nextafter(u, math.inf)

    @property
    def lower_float(self) -> float:
        lo = float(self.lower)
        return lo if lo <= self.lower else math.nextafter(lo, -math.inf)


@dataclass(frozen=True)
class DilatationEstimate:
    mu: float
    trace: float
    dilatation: float
    entropy: float

    def as_dict(self) -> dict:
        return {
            "mu": self.mu,
            "trace": self.trace,
            "lambda": self.dilatation,
            "entropy": self.entropy,
        }


def _integer_array(rows) -> np.ndarray:
    A = np.array(rows, dtype=object)
    if A.size and np.abs(A).max() < 2**31:
        return A.astype(np.int64)
    return A


def _as_intersection(N) -> np.ndarray:
    if isinstance(N, IntersectionMatrix):
        return N.to_array()
    return IntersectionMatrix.from_array(N).to_array()


def _as_square(M) -> np.ndarray:
    A = np.asarray(M)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {A.shape}")
    if (A < 0).any():
        raise ValueError("matrix has negative entries")
    return A


def gram(N: IntersectionMatrix | Sequence[Sequence[int]]) -> np.ndarray:
    """Return ``N N^T`` in exact integer arithmetic.

    Entry ``(i, j)`` is the total weight of length-two paths from red vertex
    ``i`` to red vertex ``j`` through the blue vertices of the intersection
    graph.  Results that could overflow int64 are computed with Python ints.
    """
    A = _as_intersection(N)
    if A.dtype != object:
        peak = int(A.max())
        if peak * peak * A.shape[1] < _INT64_SAFE:
            return A @ A.T
        A = A.astype(object)
    return A.dot(A.T)


def row_sums(M) -> list[int]:
    A = _as_square(M)
    if A.dtype == object or A.dtype.kind == "f":
        return [sum(int(x) for x in row) for row in A.tolist()]
    return [int(x) for x in A.sum(axis=1, dtype=object if A.dtype.kind == "u" else np.int64)]


def max_row_sum(M) -> int:
    """Upper bound on the Perron-Frobenius eigenvalue of a nonnegative matrix."""
    return max(row_sums(M))


def min_row_sum(M) -> int:
    return min(row_sums(M))


def is_irreducible(M) -> bool:
    """True when the directed support graph of ``M`` is strongly connected."""
    A = _as_square(M)
    support = A != 0
    size = A.shape[0]

    def reaches_all(adj) -> bool:
        seen = {0}
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for j in np.flatnonzero(adj[i]):
                j = int(j)
                if j not in seen:
                    seen.add(j)
                    queue.append(j)
        return len(seen) == size

    return reaches_all(support) and reaches_all(support.T)


def _seed_vector(A: np.ndarray) -> np.ndarray:
    """Positive starting vector: the float64 Perron vector when it is usable,
    otherwise all ones.  The certificate never depends on how the seed was
    obtained, only on the Collatz-Wielandt ratios of the final iterate."""
    F = A.astype(np.float64)
    try:
        if np.array_equal(F, F.T):
            _, vecs = np.linalg.eigh(F)
            v = vecs[:, -1]
        else:
            vals, vecs = np.linalg.eig(F)
            v = np.real(vecs[:, int(np.argmax(vals.real))])
    except np.linalg.LinAlgError:
        return np.ones(A.shape[0], dtype=np.longdouble)
    v = np.abs(v)
    if not np.all(np.isfinite(v)) or v.max() == 0:
        return np.ones(A.shape[0], dtype=np.longdouble)
    # Strongly localised Perron vectors come back with exact zeros.
    v = np.maximum(v / v.max(), 1e-30)
    return v.astype(np.longdouble)


def _lu_extended(A: np.ndarray):
    """LU factorisation with partial pivoting in extended precision; numpy's
    LAPACK bindings stop at float64.  Returns None on a zero pivot."""
    LU = A.copy()
    size = LU.shape[0]
    perm = np.arange(size)
    for k in range(size):
        p = k + int(np.argmax(np.abs(LU[k:, k])))
        if LU[p, k] == 0:
            return None
        if p != k:
            LU[[k, p]] = LU[[p, k]]
            perm[[k, p]] = perm[[p, k]]
        LU[k + 1 :, k] /= LU[k, k]
        LU[k + 1 :, k + 1 :] -= LU[k + 1 :, k, None] * LU[k, k + 1 :]
    return LU, perm


def _lu_solve(factors, b: np.ndarray) -> np.ndarray:
    LU, perm = factors
    size = len(b)
    y = b[perm].copy()
    for k in range(1, size):
        y[k] -= LU[k, :k] @ y[:k]
    x = np.empty_like(y)
    for k in range(size - 1, -1, -1):
        x[k] = (y[k] - LU[k, k + 1 :] @ x[k + 1 :]) / LU[k, k]
    return x


def _collatz_wielandt(L: np.ndarray, v: np.ndarray, lo_rs, hi_rs):
    w = L @ v
    ratios = w / v
    return w, max(lo_rs, ratios.min()), min(hi_rs, ratios.max())


def _working_precision(tolerance: float, scale: float):
    """float64 when its rounding floor at this scale is below the requested
    tolerance, extended precision otherwise."""
    for dtype in (np.float64, np.longdouble):
        floor = 64 * float(np.finfo(dtype).eps) * scale
        if floor <= tolerance:
            return dtype, float(tolerance)
    return np.longdouble, floor


def _inverse_iteration(L: np.ndarray, v: np.ndarray, shift, steps: int):
    """Yield iterates of shifted inverse iteration started from ``v``."""
    S = L - np.eye(L.shape[0], dtype=L.dtype) * shift
    if L.dtype == np.float64:
        solve = lambda b: np.linalg.solve(S, b)  # noqa: E731
    else:
        factors = _lu_extended(S)
        if factors is None:
            return
        solve = lambda b: _lu_solve(factors, b)  # noqa: E731
    for _ in range(steps):
        try:
            x = np.abs(solve(v))
        except np.linalg.LinAlgError:
            return
        if not np.all(np.isfinite(x)) or x.max() == 0:
            return
        v = np.maximum(x / x.max(), L.dtype.type(1e-30))
        yield v


def pf_eigenvalue(
    M,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iter: int = MAX_ITERATIONS,
) -> PFBracket:
    """Bracket the Perron-Frobenius eigenvalue of an irreducible nonnegative
    square matrix.

    For any positive vector ``v`` the smallest and largest of
    ``(Mv)_i / v_i`` enclose the eigenvalue (Collatz-Wielandt), so every
    bracket produced along the way is valid; iteration stops once the width
    is below ``tolerance``.  The positive vector starts at the float64 Perron
    vector, is sharpened by a few steps of inverse iteration shifted just
    above the current upper bound, and is then pushed through
    ``v <- (M + I) v`` until the bracket closes or ``max_iter`` steps have
    run.  The identity shift keeps power iteration convergent for periodic
    matrices; its nonnegative arithmetic resolves the tiny components of
    strongly localised Perron vectors that inverse iteration smears.

    Arithmetic is float64 when that can reach ``tolerance`` and extended
    precision otherwise.  A tolerance below ``64 * eps * max_row_sum`` even
    in extended precision is raised to that floor; the effective value is
    reported on the bracket.  Endpoints are ``np.longdouble``.
    """
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")
    A = _as_square(M)
    if not is_irreducible(A):
        raise ReducibleMatrixError("matrix is reducible; the intersection graph is disconnected")

    sums = row_sums(A)
    dtype, target = _working_precision(float(tolerance), float(max(sums)))
    lo_rs, hi_rs = dtype(min(sums)), dtype(max(sums))
    if lo_rs == hi_rs:
        ones = np.ones(A.shape[0], dtype=np.longdouble)
        return PFBracket(np.longdouble(lo_rs), np.longdouble(hi_rs), 0, target, ones)

    L = A.astype(dtype)

    def done(v, lower, upper, iterations):
        return PFBracket(np.longdouble(lower), np.longdouble(upper), iterations, target, v.astype(np.longdouble))

    v = _seed_vector(A).astype(dtype)
    w, lower, upper = _collatz_wielandt(L, v, lo_rs, hi_rs)
    iterations = 1
    if upper - lower <= target:
        return done(v, lower, upper, iterations)

    refine = min(_REFINE_STEPS, max_iter - iterations)
    for v in _inverse_iteration(L, v, upper * (1 + dtype(1e-12)), refine):
        iterations += 1
        w, lower, upper = _collatz_wielandt(L, v, lo_rs, hi_rs)
        if upper - lower <= target:
            return done(v, lower, upper, iterations)

    while iterations < max_iter:
        v = w + v
        v = v / v.max()
        iterations += 1
        w, lower, upper = _collatz_wielandt(L, v, lo_rs, hi_rs)
        if upper - lower <= target:
            return done(v, lower, upper, iterations)
    raise PFConvergenceError(
        f"bracket did not close within {max_iter} iterations",
        done(v, lower, upper, iterations),
    )


def residual(M, bracket: PFBracket) -> float:
    """Sup-norm of ``M v - mu_hat v`` for the bracket's final iterate,
    relative to the sup-norm of ``v``."""
    L = _as_square(M).astype(np.longdouble)
    v = bracket.vector
    mu_hat = np.longdouble(bracket.midpoint)
    r = L @ v - mu_hat * v
    return float(np.max(np.abs(r)) / np.max(np.abs(v)))


def thurston_matrix(mu: float) -> np.ndarray:
    """Image of ``T_A T_B^{-1}`` in ``PSL(2, R)``."""
    s = math.sqrt(mu)
    return np.array([[mu + 1.0, -s], [-s, 1.0]])


def dilatation_from_mu(mu: float) -> DilatationEstimate:
    """Spectral radius of the hyperbolic 2x2 matrix with trace ``2 + mu``."""
    mu = float(mu)
    if not mu > 0 or not math.isfinite(mu):
        raise ValueError(f"mu must be a positive finite real, got {mu}")
    # lambda - 1 written without cancellation so mu -> 0 stays accurate.
    excess = 0.5 * (mu + math.sqrt(mu * mu + 4.0 * mu))
    return DilatationEstimate(
        mu=mu,
        trace=2.0 + mu,
        dilatation=1.0 + excess,
        entropy=math.log1p(excess),
    )


def dilatation_of_filling_pair(intersection: int) -> DilatationEstimate:
    """Single curves ``alpha``, ``beta`` meeting ``i`` times give ``mu = i**2``."""
    i = int(intersection)
    if i < 1:
        raise ValueError("a filling pair must intersect at least once")
    return dilatation_from_mu(float(i * i))
