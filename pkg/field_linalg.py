import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numba
import numpy as np
from numba import njit, prange
from sympy import isprime

from error_handler import ConfigError, DomainError, StructuralError
from log_handler import logger, log_rank

# =================================================================================================
# CONSTANTS
# =================================================================================================

DEFAULT_PRIME = 2147483647   # 2^31 - 1
SECOND_PRIME = 2147483629    # largest prime below 2^31 - 1
MIN_MODULUS = 10**6
MAX_MODULUS = 2**31          # residue products must fit in int64

# =================================================================================================
# FIELD
# =================================================================================================

@dataclass(frozen=True)
class PrimeFieldConfig:
    """A prime field Z/pZ. Residues are canonical int64 values in [0, modulus)."""

    modulus: int = DEFAULT_PRIME

    def __post_init__(self):
        p = self.modulus
        if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
            raise ConfigError(f"modulus must be an integer, got {p!r}")
        object.__setattr__(self, "modulus", int(p))
        if p <= MIN_MODULUS:
            raise ConfigError(f"modulus {p} must exceed {MIN_MODULUS}")
        if p >= MAX_MODULUS:
            raise ConfigError(f"modulus {p} must stay below 2^31 for 64-bit products")
        if not isprime(p):
            raise ConfigError(f"modulus {p} is not prime")

    @property
    def inverse_modulus(self) -> float:
        return 1.0 / self.modulus

    def residues(self, values) -> np.ndarray:
        """Reduce integers (any size, any sign) to a fresh int64 array of residues."""
        arr = np.asarray(values)
        if arr.dtype.kind == "i":
            return np.mod(arr.astype(np.int64), self.modulus)
        if arr.size == 0:
            return np.zeros(arr.shape, dtype=np.int64)
        return (np.asarray(values, dtype=object) % self.modulus).astype(np.int64)


def modular_inverse(a: int, field: PrimeFieldConfig) -> int:
    """Return b with a*b = 1 (mod p)."""
    a = int(a) % field.modulus
    if a == 0:
        raise DomainError("zero has no inverse")
    return pow(a, -1, field.modulus)


def set_threads(count: Optional[int]):
    """Bound the numba worker pool; results never depend on it."""
    if count is None:
        return
    if count < 1:
        raise ConfigError(f"thread count must be positive, got {count}")
    available = numba.config.NUMBA_NUM_THREADS
    if count > available:
        logger.warning(f"⚠️ Requested {count} threads, numba pool has {available}")
    numba.set_num_threads(min(count, available))

# =================================================================================================
# KERNELS
# =================================================================================================

@njit(cache=True)
def _inverse(a, p):
    t, new_t = 0, 1
    r, new_r = p, a
    while new_r != 0:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    return t % p


@njit(cache=True, inline="always")
def _submul(x, f, y, p, pinv):
    # x - f*y mod p; |f*y| < 2^62, the float quotient is off by at most one
    r = x - f * y
    q = np.int64(math.floor(r * pinv))
    r -= q * p
    if r < 0:
        r += p
    elif r >= p:
        r -= p
    return r


@njit(cache=True, parallel=True)
def _echelon_inplace(a, p, pinv, reduced):
    m, n = a.shape
    pivots = np.empty(min(m, n), dtype=np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                t = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = t
        inv = _inverse(a[r, c], p)
        for j in range(c, n):
            a[r, j] = a[r, j] * inv % p
        start = 0 if reduced else r + 1
        for i in prange(start, m):
            f = a[i, c]
            if i != r and f != 0:
                for j in range(c, n):
                    a[i, j] = _submul(a[i, j], f, a[r, j], p, pinv)
        pivots[r] = c
        r += 1
    return r, pivots[:r].copy()


@njit(cache=True)
def _absorb_row(row, basis, owner, rank, p, pinv):
    n = row.shape[0]
    for c in range(n):
        a = row[c]
        if a == 0:
            continue
        k = owner[c]
        if k < 0:
            inv = _inverse(a, p)
            for j in range(c):
                basis[rank, j] = 0
            for j in range(c, n):
                basis[rank, j] = row[j] * inv % p
            owner[c] = rank
            return c
        for j in range(c, n):
            row[j] = _submul(row[j], a, basis[k, j], p, pinv)
    return -1


@njit(cache=True, parallel=True)
def _matvec(a, x, p):
    m, n = a.shape
    out = np.zeros(m, dtype=np.int64)
    for i in prange(m):
        acc = 0
        for j in range(n):
            acc = (acc + a[i, j] * x[j]) % p
        out[i] = acc
    return out


@njit(cache=True, parallel=True)
def _reduce_rows(w, basis, pivots, p, pinv):
    m, n = w.shape
    for i in prange(m):
        for k in range(pivots.shape[0]):
            c = pivots[k]
            f = w[i, c]
            if f != 0:
                for j in range(c, n):
                    w[i, j] = _submul(w[i, j], f, basis[k, j], p, pinv)

# =================================================================================================
# MATRICES
# =================================================================================================

@dataclass(frozen=True, eq=False)
class DenseMatrix:
    """Row-major matrix of residues. Rows are conditions/generators, columns monomials."""

    entries: np.ndarray
    field: PrimeFieldConfig

    def __post_init__(self):
        arr = np.asarray(self.entries)
        if arr.ndim != 2:
            raise StructuralError(f"matrix entries must be two-dimensional, got shape {arr.shape}")
        arr = np.ascontiguousarray(arr, dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() >= self.field.modulus):
            raise StructuralError("matrix entries must be canonical residues")
        if arr is self.entries:
            arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], field: PrimeFieldConfig, ncols: Optional[int] = None) -> "DenseMatrix":
        rows = list(rows)
        if not rows:
            return cls(np.zeros((0, ncols or 0), dtype=np.int64), field)
        width = len(rows[0]) if ncols is None else ncols
        if any(len(r) != width for r in rows):
            raise StructuralError(f"every row must have length {width}")
        return cls(field.residues(rows).reshape(len(rows), width), field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: PrimeFieldConfig) -> "DenseMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), field)

    @classmethod
    def identity(cls, size: int, field: PrimeFieldConfig) -> "DenseMatrix":
        return cls(np.eye(size, dtype=np.int64), field)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix(self.entries.T.copy(), self.field)

    def permute_rows(self, order: Sequence[int]) -> "DenseMatrix":
        return DenseMatrix(self.entries[list(order)], self.field)

    def apply(self, vector) -> np.ndarray:
        """M @ x over the field."""
        x = self.field.residues(vector)
        if x.shape != (self.cols,):
            raise StructuralError(f"vector length {x.shape[0]} does not match {self.cols} columns")
        if self.rows == 0:
            return np.zeros(0, dtype=np.int64)
        return _matvec(self.entries, x, self.field.modulus)

    def left_apply(self, vector) -> np.ndarray:
        """x @ M over the field (row combination)."""
        x = self.field.residues(vector)
        if x.shape != (self.rows,):
            raise StructuralError(f"vector length {x.shape[0]} does not match {self.rows} rows")
        if self.cols == 0:
            return np.zeros(0, dtype=np.int64)
        return _matvec(np.ascontiguousarray(self.entries.T), x, self.field.modulus)


@dataclass(frozen=True)
class RankResult:
    rank: int
    pivot_columns: Tuple[int, ...]
    nullity: int
    rows_consumed: int = 0
    early_exit: bool = False

# =================================================================================================
# ELIMINATION
# =================================================================================================

def echelon_form(M: DenseMatrix, reduced: bool = True) -> Tuple[np.ndarray, Tuple[int, ...]]:
    """Row echelon form (reduced by default) and its pivot columns; zero rows dropped."""
    if M.rows == 0 or M.cols == 0:
        return np.zeros((0, M.cols), dtype=np.int64), ()
    work = np.array(M.entries, dtype=np.int64, copy=True)
    r, pivots = _echelon_inplace(work, M.field.modulus, M.field.inverse_modulus, reduced)
    return work[:r], tuple(int(c) for c in pivots)


def rank(M: DenseMatrix) -> RankResult:
    _, pivots = echelon_form(M, reduced=False)
    log_rank("dense", M.rows, M.cols, len(pivots))
    return RankResult(
        rank=len(pivots),
        pivot_columns=pivots,
        nullity=M.cols - len(pivots),
        rows_consumed=M.rows,
    )


class StreamingEliminator:
    """Incremental echelon basis that retains a row only when it adds rank."""

    def __init__(self, ncols: int, field: PrimeFieldConfig):
        if ncols < 0:
            raise StructuralError(f"column count must be nonnegative, got {ncols}")
        self.ncols = ncols
        self.field = field
        self.rank = 0
        self.rows_consumed = 0
        self._owner = np.full(ncols, -1, dtype=np.int64)
        self._basis = np.zeros((min(ncols, 64), ncols), dtype=np.int64)

    @property
    def full(self) -> bool:
        return self.ncols > 0 and self.rank == self.ncols

    def _grow(self):
        extra = min(self.ncols, 2 * self._basis.shape[0]) - self._basis.shape[0]
        self._basis = np.vstack([self._basis, np.zeros((extra, self.ncols), dtype=np.int64)])

    def absorb(self, row) -> bool:
        if len(row) != self.ncols:
            raise StructuralError(f"row of length {len(row)} in a stream of {self.ncols} columns")
        self.rows_consumed += 1
        if self.ncols == 0 or self.full:
            return False
        vec = self.field.residues(row)
        if self.rank == self._basis.shape[0]:
            self._grow()
        pivot = _absorb_row(vec, self._basis, self._owner, self.rank, self.field.modulus, self.field.inverse_modulus)
        if pivot < 0:
            return False
        self.rank += 1
        return True

    def result(self, early_exit: bool = False) -> RankResult:
        pivots = tuple(int(c) for c in np.flatnonzero(self._owner >= 0))
        return RankResult(
            rank=self.rank,
            pivot_columns=pivots,
            nullity=self.ncols - self.rank,
            rows_consumed=self.rows_consumed,
            early_exit=early_exit,
        )


def rank_streaming(row_source: Iterable[Sequence[int]], ncols: int, field: PrimeFieldConfig) -> RankResult:
    """Rank of a row stream without materializing it; stops once the rank reaches ncols."""
    eliminator = StreamingEliminator(ncols, field)
    for row in row_source:
        eliminator.absorb(row)
        if eliminator.full:
            log_rank("stream", eliminator.rows_consumed, ncols, eliminator.rank)
            return eliminator.result(early_exit=True)
    log_rank("stream", eliminator.rows_consumed, ncols, eliminator.rank)
    return eliminator.result()


def kernel_basis(M: DenseMatrix) -> List[np.ndarray]:
    """Canonical basis of the left kernel {v : v @ M = 0}."""
    p = M.field.modulus
    if M.rows == 0:
        return []
    if M.cols == 0:
        return [row for row in np.eye(M.rows, dtype=np.int64)]
    rref, pivots = echelon_form(M.transpose(), reduced=True)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.rows):
        if free in pivot_set:
            continue
        v = np.zeros(M.rows, dtype=np.int64)
        v[free] = 1
        if pivots:
            v[list(pivots)] = np.mod(-rref[:, free], p)
        basis.append(v)
    return basis


def right_kernel_basis(M: DenseMatrix) -> List[np.ndarray]:
    """Canonical basis of {x : M @ x = 0}; coefficient vectors satisfying every condition row."""
    return kernel_basis(M.transpose())


def span_rank(vectors: Sequence[np.ndarray], field: PrimeFieldConfig, ncols: Optional[int] = None) -> int:
    if not len(vectors):
        return 0
    return rank(DenseMatrix.from_rows(vectors, field, ncols)).rank


def span_contains(basis: Sequence[np.ndarray], vectors: Sequence[np.ndarray], field: PrimeFieldConfig) -> bool:
    """True when every vector lies in span(basis)."""
    base = span_rank(basis, field)
    return span_rank(list(basis) + list(vectors), field) == base


def reduce_modulo(vectors: np.ndarray, rref: np.ndarray, pivots: Tuple[int, ...], field: PrimeFieldConfig) -> np.ndarray:
    """Normal forms of the rows of `vectors` modulo the row space of a reduced echelon matrix."""
    work = np.array(vectors, dtype=np.int64, copy=True)
    if work.size and len(pivots):
        _reduce_rows(work, np.ascontiguousarray(rref), np.asarray(pivots, dtype=np.int64), field.modulus, field.inverse_modulus)
    return work
