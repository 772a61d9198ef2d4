import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple, Union

import numpy as np

from error_handler import DomainError, StructuralError
from field_linalg import PrimeFieldConfig

MAX_DEGREE = 60

# =================================================================================================
# MONOMIALS
# =================================================================================================

def monomial_count(v: int, d: int) -> int:
    """Dimension of the degree-d part of a polynomial ring in v variables."""
    if v < 1:
        raise DomainError(f"need at least one variable, got {v}")
    if d < 0:
        raise DomainError(f"degree must be nonnegative, got {d}")
    return math.comb(d + v - 1, v - 1)


@dataclass(frozen=True)
class Monomial:
    exponents: Tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if not exps:
            raise DomainError("a monomial needs at least one variable")
        if any(e < 0 for e in exps):
            raise DomainError(f"negative exponent in {exps}")
        object.__setattr__(self, "exponents", exps)

    @property
    def degree(self) -> int:
        return sum(self.exponents)


def _descending(v: int, d: int) -> Iterator[Tuple[int, ...]]:
    if v == 1:
        yield (d,)
        return
    for e in range(d, -1, -1):
        for rest in _descending(v - 1, d - e):
            yield (e,) + rest


@lru_cache(maxsize=None)
def _binomials(top: int, width: int) -> np.ndarray:
    table = np.zeros((top + 1, width + 1), dtype=np.int64)
    for a in range(top + 1):
        for b in range(min(a, width) + 1):
            table[a, b] = math.comb(a, b)
    return table


def rank_exponents(exps: np.ndarray, d: int) -> np.ndarray:
    """Positions of exponent vectors (last axis) in the descending-lex basis of degree d."""
    exps = np.asarray(exps, dtype=np.int64)
    v = exps.shape[-1]
    table = _binomials(d + v, v)
    before = np.cumsum(exps, axis=-1) - exps
    index = np.zeros(exps.shape[:-1], dtype=np.int64)
    for i in range(v - 1):
        remaining = d - before[..., i]
        index += table[remaining - exps[..., i] + v - i - 2, v - i - 1]
    return index


@dataclass(frozen=True, eq=False)
class MonomialBasis:
    """Degree-d monomials in v variables, descending lexicographic on exponent vectors."""

    v: int
    d: int
    exponents: np.ndarray

    def __len__(self) -> int:
        return self.exponents.shape[0]

    def __iter__(self) -> Iterator[Monomial]:
        for row in self.exponents:
            yield Monomial(tuple(row))

    def monomial_at(self, index: int) -> Monomial:
        if not 0 <= index < len(self):
            raise StructuralError(f"index {index} outside basis of size {len(self)}")
        return Monomial(tuple(self.exponents[index]))

    def index_of(self, monomial: Union[Monomial, Sequence[int]]) -> int:
        exps = monomial.exponents if isinstance(monomial, Monomial) else tuple(monomial)
        if len(exps) != self.v or any(e < 0 for e in exps) or sum(exps) != self.d:
            raise StructuralError(f"{exps} is not a degree-{self.d} monomial in {self.v} variables")
        return int(rank_exponents(np.array(exps), self.d))


@lru_cache(maxsize=None)
def enumerate_monomials(v: int, d: int) -> MonomialBasis:
    monomial_count(v, d)
    exps = np.array(list(_descending(v, d)), dtype=np.int64).reshape(-1, v)
    exps.flags.writeable = False
    return MonomialBasis(v, d, exps)


@lru_cache(maxsize=None)
def product_table(v: int, d1: int, d2: int) -> np.ndarray:
    """table[i, j] = index of (monomial i of degree d1) * (monomial j of degree d2)."""
    left = enumerate_monomials(v, d1).exponents
    right = enumerate_monomials(v, d2).exponents
    table = rank_exponents(left[:, None, :] + right[None, :, :], d1 + d2)
    table.flags.writeable = False
    return table


@lru_cache(maxsize=None)
def _factorials(p: int, top: int) -> Tuple[np.ndarray, np.ndarray]:
    fact = [1] * (top + 1)
    for i in range(1, top + 1):
        fact[i] = fact[i - 1] * i % p
    inv = [pow(f, -1, p) for f in fact]
    return np.array(fact, dtype=np.int64), np.array(inv, dtype=np.int64)


@lru_cache(maxsize=None)
def _falling_factorials(p: int, top: int) -> np.ndarray:
    """ff[a, b] = a (a-1) ... (a-b+1) mod p; zero whenever b > a."""
    ff = np.zeros((top + 1, top + 1), dtype=np.int64)
    for a in range(top + 1):
        ff[a, 0] = 1
        for b in range(1, a + 1):
            ff[a, b] = ff[a, b - 1] * (a - b + 1) % p
    return ff


def _power_table(values: np.ndarray, top: int, p: int) -> np.ndarray:
    table = np.ones((values.shape[0], top + 1), dtype=np.int64)
    for e in range(1, top + 1):
        table[:, e] = table[:, e - 1] * values % p
    return table

# =================================================================================================
# FORMS
# =================================================================================================

@dataclass(frozen=True, eq=False)
class DegreeSlice:
    """A homogeneous polynomial of degree d: coefficients over enumerate_monomials(v, d)."""

    v: int
    d: int
    coefficients: np.ndarray
    field: PrimeFieldConfig

    def __post_init__(self):
        coeffs = self.field.residues(self.coefficients)
        if coeffs.shape != (monomial_count(self.v, self.d),):
            raise StructuralError(
                f"{coeffs.shape[0] if coeffs.ndim else 0} coefficients for a degree-{self.d} slice in {self.v} variables"
            )
        coeffs.flags.writeable = False
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def zero(cls, v: int, d: int, field: PrimeFieldConfig) -> "DegreeSlice":
        return cls(v, d, np.zeros(monomial_count(v, d), dtype=np.int64), field)

    @classmethod
    def monomial(cls, exponents: Sequence[int], field: PrimeFieldConfig, coefficient: int = 1) -> "DegreeSlice":
        v, d = len(exponents), sum(exponents)
        coeffs = np.zeros(monomial_count(v, d), dtype=np.int64)
        coeffs[enumerate_monomials(v, d).index_of(exponents)] = coefficient
        return cls(v, d, coeffs, field)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DegreeSlice):
            return NotImplemented
        return (self.v, self.d, self.field) == (other.v, other.d, other.field) and np.array_equal(
            self.coefficients, other.coefficients
        )

    def __repr__(self) -> str:
        return f"DegreeSlice(v={self.v}, d={self.d}, nonzero={int(np.count_nonzero(self.coefficients))})"

    def _check_compatible(self, other: "DegreeSlice"):
        if other.v != self.v:
            raise StructuralError(f"variable count mismatch: {self.v} vs {other.v}")
        if other.field != self.field:
            raise StructuralError("slices live over different fields")

    def __add__(self, other: "DegreeSlice") -> "DegreeSlice":
        self._check_compatible(other)
        if other.d != self.d:
            raise StructuralError(f"cannot add degrees {self.d} and {other.d}")
        return DegreeSlice(self.v, self.d, (self.coefficients + other.coefficients) % self.field.modulus, self.field)

    def __sub__(self, other: "DegreeSlice") -> "DegreeSlice":
        return self + other.scale(-1)

    def __mul__(self, other: "DegreeSlice") -> "DegreeSlice":
        return multiply(self, other)

    def scale(self, c: int) -> "DegreeSlice":
        c = int(c) % self.field.modulus
        return DegreeSlice(self.v, self.d, self.coefficients * c % self.field.modulus, self.field)

    @property
    def is_zero(self) -> bool:
        return not self.coefficients.any()

    def evaluate(self, point: Sequence[int]) -> int:
        p = self.field.modulus
        if len(point) != self.v:
            raise StructuralError(f"point has {len(point)} coordinates, slice has {self.v} variables")
        values = derivative_rows(self.v, self.d, [(0,) * self.v], point, self.field)[0]
        return int(sum(int(a) * int(b) for a, b in zip(values, self.coefficients)) % p)

    def partial(self, i: int) -> "DegreeSlice":
        """Derivative with respect to x_i."""
        if not 0 <= i < self.v:
            raise StructuralError(f"no variable x_{i} among {self.v}")
        if self.d == 0:
            return DegreeSlice.zero(self.v, 0, self.field)
        p = self.field.modulus
        exps = enumerate_monomials(self.v, self.d).exponents
        keep = exps[:, i] > 0
        lowered = exps[keep].copy()
        lowered[:, i] -= 1
        out = np.zeros(monomial_count(self.v, self.d - 1), dtype=np.int64)
        out[rank_exponents(lowered, self.d - 1)] = self.coefficients[keep] * exps[keep, i] % p
        return DegreeSlice(self.v, self.d - 1, out, self.field)


@dataclass(frozen=True)
class LinearForm:
    """c_0 x_0 + ... + c_{v-1} x_{v-1}, not identically zero."""

    coefficients: Tuple[int, ...]
    field: PrimeFieldConfig

    def __post_init__(self):
        coeffs = tuple(int(c) % self.field.modulus for c in self.coefficients)
        if not coeffs:
            raise DomainError("a linear form needs at least one variable")
        if not any(coeffs):
            raise DomainError("linear form must have a nonzero coefficient")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def variable(cls, i: int, v: int, field: PrimeFieldConfig) -> "LinearForm":
        return cls(tuple(1 if j == i else 0 for j in range(v)), field)

    @property
    def v(self) -> int:
        return len(self.coefficients)

# =================================================================================================
# OPERATIONS
# =================================================================================================

def expand_power(form: LinearForm, k: int) -> DegreeSlice:
    """form^k: the coefficient of x^a is multinomial(k; a) * prod c_i^a_i."""
    p = form.field.modulus
    if k < 1:
        raise DomainError(f"power must be at least 1, got {k}")
    if k > MAX_DEGREE:
        raise DomainError(f"power {k} exceeds the supported degree cap {MAX_DEGREE}")
    exps = enumerate_monomials(form.v, k).exponents
    fact, inv_fact = _factorials(p, MAX_DEGREE)
    powers = _power_table(np.array(form.coefficients, dtype=np.int64), k, p)
    coeffs = np.full(exps.shape[0], fact[k], dtype=np.int64)
    for i in range(form.v):
        coeffs = coeffs * inv_fact[exps[:, i]] % p
        coeffs = coeffs * powers[i, exps[:, i]] % p
    return DegreeSlice(form.v, k, coeffs, form.field)


def multiply(a: DegreeSlice, b: DegreeSlice) -> DegreeSlice:
    a._check_compatible(b)
    p = a.field.modulus
    table = product_table(a.v, a.d, b.d)
    products = np.outer(a.coefficients, b.coefficients) % p
    out = np.zeros(monomial_count(a.v, a.d + b.d), dtype=np.int64)
    np.add.at(out, table.ravel(), products.ravel())
    return DegreeSlice(a.v, a.d + b.d, out % p, a.field)


def derivative_row_entry(alpha: Sequence[int], beta: Sequence[int], point: Sequence[int], field: PrimeFieldConfig) -> int:
    """(d^beta x^alpha)(point): falling factorials times point^(alpha - beta), zero unless beta <= alpha."""
    p = field.modulus
    if len(alpha) != len(beta) or len(alpha) != len(point):
        raise StructuralError("exponent, derivative and point lengths differ")
    value = 1
    for a, b, x in zip(alpha, beta, point):
        if b > a:
            return 0
        for t in range(a - b + 1, a + 1):
            value = value * t % p
        value = value * pow(int(x) % p, a - b, p) % p
    return value


def derivative_rows(v: int, d: int, betas: Sequence[Sequence[int]], point: Sequence[int], field: PrimeFieldConfig) -> np.ndarray:
    """One row per derivative multi-index beta: d^beta x^alpha evaluated at point, over every alpha of degree d."""
    p = field.modulus
    exps = enumerate_monomials(v, d).exponents
    betas = np.asarray(betas, dtype=np.int64).reshape(-1, v)
    if len(point) != v:
        raise StructuralError(f"point has {len(point)} coordinates, expected {v}")
    rows = np.zeros((betas.shape[0], exps.shape[0]), dtype=np.int64)
    if betas.shape[0] == 0:
        return rows
    ff = _falling_factorials(p, d)
    powers = _power_table(field.residues([int(x) for x in point]), d, p)
    alive = (betas <= d).all(axis=1)
    b = np.minimum(betas, d)
    rows[:] = 1
    for i in range(v):
        a = exps[None, :, i]
        rows = rows * ff[a, b[:, None, i]] % p
        rows = rows * powers[i, np.maximum(a - b[:, None, i], 0)] % p
    rows[~alive] = 0
    return rows

# =================================================================================================
# GENERAL POSITION
# =================================================================================================

class GeneralPosition:
    """Seeded source of general choices: every coordinate is a uniformly random nonzero residue."""

    def __init__(self, seed: int, field: PrimeFieldConfig, attempt: int = 0):
        if seed < 0:
            raise DomainError(f"seed must be nonnegative, got {seed}")
        self.seed = seed
        self.attempt = attempt
        self.field = field
        self.rng = np.random.default_rng(seed if attempt == 0 else [seed, attempt])

    def residues(self, size) -> np.ndarray:
        return self.rng.integers(1, self.field.modulus, size=size, dtype=np.int64)

    def coordinates(self, count: int, length: int) -> List[Tuple[int, ...]]:
        return [tuple(int(x) for x in row) for row in self.residues((count, length))]

    def linear_forms(self, count: int, v: int) -> List[LinearForm]:
        return [LinearForm(coeffs, self.field) for coeffs in self.coordinates(count, v)]

    def linear_form(self, v: int) -> LinearForm:
        return self.linear_forms(1, v)[0]
