import json
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

import numpy as np

from error_handler import ConfigError, DomainError, InvariantError, StructuralError
from field_linalg import DenseMatrix, PrimeFieldConfig, rank
from log_handler import logger
from poly_ring import DegreeSlice, GeneralPosition, LinearForm, derivative_rows, enumerate_monomials, monomial_count

DATA_DIR = Path(__file__).parent / "datas"

# =================================================================================================
# TYPES
# =================================================================================================

@dataclass(frozen=True)
class ProjectivePoint:
    """A point of P^n stored as any nonzero representative."""

    coordinates: Tuple[int, ...]
    field: PrimeFieldConfig

    def __post_init__(self):
        coords = tuple(int(x) % self.field.modulus for x in self.coordinates)
        if len(coords) < 2:
            raise DomainError("a projective point needs at least two coordinates")
        if not any(coords):
            raise DomainError("the zero vector is not a projective point")
        object.__setattr__(self, "coordinates", coords)

    @property
    def n(self) -> int:
        return len(self.coordinates) - 1

    def scaled(self, c: int) -> "ProjectivePoint":
        return ProjectivePoint(tuple(x * c for x in self.coordinates), self.field)


@dataclass(frozen=True)
class FatPointSystem:
    """Degree-d forms on P^n vanishing to order m at each assigned point."""

    n: int
    d: int
    assignments: Tuple[Tuple[ProjectivePoint, int], ...]
    field: PrimeFieldConfig

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"projective dimension must be at least 1, got {self.n}")
        if self.d < 0:
            raise DomainError(f"degree must be nonnegative, got {self.d}")
        assignments = tuple((point, int(m)) for point, m in self.assignments)
        for point, m in assignments:
            if point.n != self.n:
                raise StructuralError(f"point with {point.n + 1} coordinates in P^{self.n}")
            if m < 1:
                raise DomainError(f"multiplicity must be at least 1, got {m}")
        object.__setattr__(self, "assignments", assignments)

    @classmethod
    def uniform(cls, n: int, d: int, points: Sequence[ProjectivePoint], m: int, field: PrimeFieldConfig) -> "FatPointSystem":
        return cls(n, d, tuple((point, m) for point in points), field)

    @property
    def multiplicities(self) -> Tuple[int, ...]:
        return tuple(m for _, m in self.assignments)

    def with_point(self, point: ProjectivePoint, m: int) -> "FatPointSystem":
        return FatPointSystem(self.n, self.d, self.assignments + ((point, m),), self.field)


@dataclass(frozen=True)
class ExpectedDimension:
    value: int
    raw: int


@dataclass(frozen=True)
class SystemDimension:
    actual: int
    expected: int
    raw_expected: int
    conditions: int
    conditions_imposed: int

    @property
    def defect(self) -> int:
        return self.actual - self.expected

    @property
    def special(self) -> bool:
        return self.defect > 0


@dataclass(frozen=True)
class AhSweepRow:
    n: int
    d: int
    s: int
    expected: int
    raw_expected: int
    actual: int
    listed: bool

    @property
    def defect(self) -> int:
        return self.actual - self.expected

    @property
    def consistent(self) -> bool:
        return (self.defect > 0) == self.listed


@dataclass(frozen=True)
class TripleProbe:
    expected: int
    actuals: Tuple[int, ...]

    @property
    def stable(self) -> bool:
        return len(set(self.actuals)) == 1

    @property
    def independent(self) -> bool:
        return self.stable and self.actuals[0] == self.expected

    @property
    def certificate_kind(self) -> str:
        return "proof-mod-p-specialization" if self.independent else "evidence"

# =================================================================================================
# CONDITIONS
# =================================================================================================

def dual_points(forms: Sequence[LinearForm]) -> List[ProjectivePoint]:
    """The coefficient vector of each form read as coordinates, order preserved."""
    points = []
    for form in forms:
        if not any(form.coefficients):
            raise DomainError("the zero form has no dual point")
        points.append(ProjectivePoint(form.coefficients, form.field))
    return points


def condition_count(n: int, m: int) -> int:
    return math.comb(m - 1 + n, n)


def expected_dimension(n: int, d: int, multiplicities: Sequence[int]) -> ExpectedDimension:
    if n < 1:
        raise DomainError(f"projective dimension must be at least 1, got {n}")
    if d < 0:
        raise DomainError(f"degree must be nonnegative, got {d}")
    raw = monomial_count(n + 1, d) - sum(condition_count(n, m) for m in multiplicities)
    return ExpectedDimension(max(0, raw), raw)


def condition_rows(point: ProjectivePoint, m: int, d: int, all_orders: bool = False) -> np.ndarray:
    """Derivative functionals of order m-1 at the point (every order <= m-1 with all_orders)."""
    v = point.n + 1
    top = min(m - 1, d)  # order above d forces the zero form; order-d rows already do
    orders = range(top + 1) if all_orders else [top]
    betas = np.vstack([enumerate_monomials(v, order).exponents for order in orders])
    return derivative_rows(v, d, betas, point.coordinates, point.field)


def condition_matrix(system: FatPointSystem) -> DenseMatrix:
    ncols = monomial_count(system.n + 1, system.d)
    blocks = [condition_rows(point, m, system.d) for point, m in system.assignments]
    if not blocks:
        return DenseMatrix.zeros(0, ncols, system.field)
    return DenseMatrix(np.vstack(blocks), system.field)


def linear_system_dimension(system: FatPointSystem) -> SystemDimension:
    ncols = monomial_count(system.n + 1, system.d)
    matrix = condition_matrix(system)
    imposed = rank(matrix).rank
    expected = expected_dimension(system.n, system.d, system.multiplicities)
    actual = ncols - imposed
    if actual < expected.value:
        raise InvariantError(f"actual dimension {actual} below expected {expected.value}")
    return SystemDimension(
        actual=actual,
        expected=expected.value,
        raw_expected=expected.raw,
        conditions=matrix.rows,
        conditions_imposed=imposed,
    )


def vanishing_residuals(form: DegreeSlice, point: ProjectivePoint, m: int) -> np.ndarray:
    """Every derivative of order <= m-1 of the form at the point; all zero iff the form has multiplicity >= m there."""
    if form.v != point.n + 1:
        raise StructuralError(f"form in {form.v} variables, point in P^{point.n}")
    rows = condition_rows(point, m, form.d, all_orders=True)
    return DenseMatrix(rows, form.field).apply(form.coefficients)


def vanishes_to_order(form: DegreeSlice, points: Sequence[ProjectivePoint], m: int) -> bool:
    return all(not vanishing_residuals(form, point, m).any() for point in points)


def general_points(count: int, n: int, seed: int, field: PrimeFieldConfig, attempt: int = 0) -> List[ProjectivePoint]:
    sampler = GeneralPosition(seed, field, attempt)
    return [ProjectivePoint(coords, field) for coords in sampler.coordinates(count, n + 1)]

# =================================================================================================
# ALEXANDER-HIRSCHOWITZ REFERENCE
# =================================================================================================

@lru_cache(maxsize=1)
def load_ah_reference() -> Dict:
    path = DATA_DIR / "ah_exceptional.json"
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        logger.critical(f"❌ Failed to load AH reference list '{path.name}': {e}")
        raise ConfigError(f"cannot read {path}: {e}") from e


def ah_exceptional(n: int, d: int, s: int, multiplicity: int = 2) -> bool:
    """True iff s general double points fail to impose independent conditions on degree-d forms of P^n."""
    if multiplicity != 2:
        raise DomainError("classification known only for double points")
    reference = load_ah_reference()
    quadrics = reference["quadrics"]
    if d == quadrics["degree"] and quadrics["min_points"] <= s <= n:
        return True
    return any(case["n"] == n and case["d"] == d and case["s"] == s for case in reference["sporadic"])


def ah_sweep(n_max: int, degrees: Sequence[int], s_max: int, seeds: Sequence[int], field: PrimeFieldConfig) -> List[AhSweepRow]:
    """Double-point systems over a grid; the actual dimension is the minimum over seeds."""
    rows = []
    for n in range(1, n_max + 1):
        for d in degrees:
            for s in range(s_max + 1):
                actual = min(
                    linear_system_dimension(FatPointSystem.uniform(n, d, general_points(s, n, seed, field), 2, field)).actual
                    for seed in seeds
                )
                expected = expected_dimension(n, d, [2] * s)
                row = AhSweepRow(n, d, s, expected.value, expected.raw, actual, ah_exceptional(n, d, s))
                if not row.consistent:
                    logger.warning(f"⚠️ AH sweep mismatch at n={n}, d={d}, s={s}: defect {row.defect}, listed {row.listed}")
                rows.append(row)
    return rows

# =================================================================================================
# PROBES
# =================================================================================================

def quintic_triple_probe(seed: int, field: PrimeFieldConfig, trials: int = 3) -> TripleProbe:
    """Quintics of P^5 through 8 general triple points, over `trials` consecutive seeds."""
    expected = expected_dimension(5, 5, [3] * 8).value
    actuals = tuple(
        linear_system_dimension(FatPointSystem.uniform(5, 5, general_points(8, 5, seed + t, field), 3, field)).actual
        for t in range(trials)
    )
    probe = TripleProbe(expected, actuals)
    logger.info(f"🔎 Quintic triple-point probe: expected {expected}, actual {list(actuals)}")
    return probe

# =================================================================================================
# POINTS FILE
# =================================================================================================

_INTEGER = re.compile(r"^[+-]?\d+$")

def load_points_file(path: Path, n: int, field: PrimeFieldConfig) -> List[ProjectivePoint]:
    """One point per line, n+1 whitespace-separated integers, '#' starts a comment."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read points file {path}: {e}") from e

    points = []
    for number, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        tokens = content.split()
        if not all(_INTEGER.fullmatch(token) for token in tokens):
            raise ConfigError(f"{path}:{number}: coordinates must be integers")
        if len(tokens) != n + 1:
            raise ConfigError(f"{path}:{number}: expected {n + 1} coordinates, found {len(tokens)}")
        try:
            points.append(ProjectivePoint(tuple(int(t) for t in tokens), field))
        except DomainError as e:
            raise ConfigError(f"{path}:{number}: {e}") from e
    return points
