import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from error_handler import DomainError, InvariantError, StructuralError
from field_linalg import (
    DenseMatrix,
    PrimeFieldConfig,
    echelon_form,
    rank,
    rank_streaming,
    reduce_modulo,
    span_rank,
)
from log_handler import logger
from poly_ring import (
    DegreeSlice,
    GeneralPosition,
    LinearForm,
    enumerate_monomials,
    expand_power,
    monomial_count,
    product_table,
)

CUBES_VARIABLES = 7
CUBES_GENERATORS = 8
CUBES_POWER = 3
HILBERT_CAP = 30
CROSS_CHECK_LIMIT = 4

# =================================================================================================
# TYPES
# =================================================================================================

@dataclass(frozen=True)
class PowerIdealSpec:
    """I = (L_1^k_1, ..., L_s^k_s) in v variables; A = R/I."""

    v: int
    generators: Tuple[Tuple[LinearForm, int], ...]
    field: PrimeFieldConfig
    seed: Optional[int] = None

    def __post_init__(self):
        gens = tuple((form, int(k)) for form, k in self.generators)
        if not gens:
            raise DomainError("a power ideal needs at least one generator")
        for form, k in gens:
            if form.v != self.v:
                raise StructuralError(f"generator in {form.v} variables inside a {self.v}-variable ring")
            if form.field != self.field:
                raise StructuralError("generator lives over a different field")
            if k < 1:
                raise DomainError(f"generator power must be at least 1, got {k}")
        object.__setattr__(self, "generators", gens)

    @property
    def forms(self) -> Tuple[LinearForm, ...]:
        return tuple(form for form, _ in self.generators)

    @property
    def powers(self) -> Tuple[int, ...]:
        return tuple(k for _, k in self.generators)

    @property
    def common_power(self) -> Optional[int]:
        return self.powers[0] if len(set(self.powers)) == 1 else None

    def extend(self, form: LinearForm, power: int = 1) -> "PowerIdealSpec":
        """I + (form^power), used for A/LA with power 1."""
        return PowerIdealSpec(self.v, self.generators + ((form, power),), self.field, self.seed)


@dataclass(frozen=True)
class HilbertFunction:
    dims: Tuple[int, ...]
    terminated: str      # "vanishing" or "cap"
    cap: int

    def __getitem__(self, d: int) -> int:
        if d < len(self.dims):
            return self.dims[d]
        if self.terminated == "vanishing":
            return 0
        raise StructuralError(f"degree {d} lies beyond the computed cap {self.cap}")

    @property
    def socle_degree(self) -> Optional[int]:
        nonzero = [d for d, dim in enumerate(self.dims) if dim]
        return nonzero[-1] if self.terminated == "vanishing" and nonzero else None


@dataclass(frozen=True)
class SyzygyCount:
    t: int
    dimension: int
    koszul_lower_bound: int


@dataclass(frozen=True)
class KoszulBasis:
    t: int
    vectors: Tuple[np.ndarray, ...]
    warning: Optional[str] = None

    def __len__(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class LefschetzStep:
    degree: int
    dim_source: int
    dim_target: int
    rank: int
    kernel_dim: int
    coker_dim: int
    maximal_rank: bool
    cross_checked: bool = False

    @property
    def injective(self) -> bool:
        return self.kernel_dim == 0

    @property
    def surjective(self) -> bool:
        return self.coker_dim == 0


@dataclass(frozen=True)
class WlpProfile:
    steps: Tuple[LefschetzStep, ...]
    hilbert: HilbertFunction

    @property
    def failing_degrees(self) -> Tuple[int, ...]:
        return tuple(step.degree for step in self.steps if not step.maximal_rank)

    @property
    def injectivity_propagates(self) -> bool:
        """Injective at d implies injective at every degree below d. Steps out of A_d = 0 are skipped."""
        injective = [step.injective for step in self.steps]
        live = [step.dim_source > 0 for step in self.steps]
        return all(all(injective[:d]) for d, ok in enumerate(injective) if ok and live[d])

# =================================================================================================
# CONSTRUCTION
# =================================================================================================

def general_instance(v: int, count: int, power: Union[int, Sequence[int]], seed: int, field: PrimeFieldConfig,
                     attempt: int = 0) -> Tuple[PowerIdealSpec, LinearForm]:
    """`count` general forms raised to `power` (one power per form if a sequence), plus the general form L drawn after them."""
    powers = [power] * count if isinstance(power, int) else list(power)
    if len(powers) != count:
        raise StructuralError(f"{len(powers)} powers given for {count} generators")
    sampler = GeneralPosition(seed, field, attempt)
    forms = sampler.linear_forms(count, v)
    spec = PowerIdealSpec(v, tuple(zip(forms, powers)), field, seed)
    return spec, sampler.linear_form(v)


@lru_cache(maxsize=64)
def eight_cubes(seed: int, field: PrimeFieldConfig, attempt: int = 0) -> Tuple[PowerIdealSpec, LinearForm]:
    """Eight general cubes in seven variables."""
    return general_instance(CUBES_VARIABLES, CUBES_GENERATORS, CUBES_POWER, seed, field, attempt)


@lru_cache(maxsize=1024)
def power_slice(form: LinearForm, k: int) -> DegreeSlice:
    return expand_power(form, k)


def ideal_row_count(spec: PowerIdealSpec, d: int) -> int:
    return sum(monomial_count(spec.v, d - k) for k in spec.powers if k <= d)


def generator_rows(spec: PowerIdealSpec, d: int) -> Iterator[np.ndarray]:
    """Rows m * L_i^k_i for every generator (in order) and every monomial m of degree d - k_i."""
    ncols = monomial_count(spec.v, d)
    for form, k in spec.generators:
        if k > d:
            continue
        power = power_slice(form, k).coefficients
        for shifts in product_table(spec.v, d - k, k):
            row = np.zeros(ncols, dtype=np.int64)
            row[shifts] = power
            yield row


def ideal_matrix(spec: PowerIdealSpec, d: int) -> DenseMatrix:
    """The degree-d part I_d as a materialized row matrix."""
    return DenseMatrix.from_rows(list(generator_rows(spec, d)), spec.field, monomial_count(spec.v, d))

# =================================================================================================
# HILBERT FUNCTION
# =================================================================================================

@lru_cache(maxsize=512)
def hilbert_dimension(spec: PowerIdealSpec, d: int) -> int:
    """dim A_d = dim R_d - rank I_d."""
    if d < 0:
        raise DomainError(f"degree must be nonnegative, got {d}")
    total = monomial_count(spec.v, d)
    if all(k > d for k in spec.powers):
        return total
    result = rank_streaming(generator_rows(spec, d), total, spec.field)
    return total - result.rank


def hilbert_function(spec: PowerIdealSpec, cap: int = HILBERT_CAP, verify_tail: bool = True) -> HilbertFunction:
    """dims per degree until the first zero or the cap."""
    if cap < 0:
        raise DomainError(f"cap must be nonnegative, got {cap}")
    dims = []
    for d in range(cap + 1):
        dim = hilbert_dimension(spec, d)
        dims.append(dim)
        if dim == 0:
            if verify_tail and hilbert_dimension(spec, d + 1) != 0:
                raise InvariantError(f"A_{d} = 0 but A_{d + 1} does not vanish")
            return HilbertFunction(tuple(dims), "vanishing", cap)
    return HilbertFunction(tuple(dims), "cap", cap)


def froberg_expected(v: int, powers: Sequence[int], cap: int) -> Tuple[int, ...]:
    """prod (1 - t^k_i) / (1 - t)^v truncated at its first non-positive coefficient. Annotation only."""
    series = [1] + [0] * cap
    for k in powers:
        series = [series[i] - (series[i - k] if i >= k else 0) for i in range(cap + 1)]
    expected = []
    for d in range(cap + 1):
        value = sum(series[i] * math.comb(d - i + v - 1, v - 1) for i in range(d + 1))
        if value <= 0:
            break
        expected.append(value)
    return tuple(expected + [0] * (cap + 1 - len(expected)))

# =================================================================================================
# SYZYGIES
# =================================================================================================

def _common_power(spec: PowerIdealSpec) -> int:
    k = spec.common_power
    if k is None:
        raise DomainError("syzygy counts need a common generator power")
    return k


def syzygy_matrix(spec: PowerIdealSpec, t: int) -> DenseMatrix:
    """Stacked rows of (f_i) -> sum f_i L_i^k; the left kernel is the syzygy space."""
    k = _common_power(spec)
    return ideal_matrix(spec, t + k)


def syzygy_dimension(spec: PowerIdealSpec, t: int) -> SyzygyCount:
    if t < 0:
        raise DomainError(f"coefficient degree must be nonnegative, got {t}")
    k = _common_power(spec)
    s = len(spec.generators)
    rows = s * monomial_count(spec.v, t)
    result = rank_streaming(generator_rows(spec, t + k), monomial_count(spec.v, t + k), spec.field)
    dimension = rows - result.rank
    bound = math.comb(s, 2) * monomial_count(spec.v, t - k) if t >= k else 0
    # Koszul vectors stay independent below degree 2k
    if t < 2 * k and dimension < bound:
        raise InvariantError(f"{dimension} syzygies in degree {t}, below the Koszul bound {bound}")
    return SyzygyCount(t, dimension, bound)


def koszul_basis(spec: PowerIdealSpec, t: int) -> KoszulBasis:
    """m L_j^k in slot i and -m L_i^k in slot j, for i < j and deg m = t - k; verified in the kernel and independent."""
    k = _common_power(spec)
    if t < k:
        logger.warning(f"⚠️ Koszul basis requested below the generator power (t={t}, k={k})")
        return KoszulBasis(t, (), "coefficient degree below generator power")
    p = spec.field.modulus
    s = len(spec.generators)
    width = monomial_count(spec.v, t)
    powers = [power_slice(form, k).coefficients for form in spec.forms]
    shifts = product_table(spec.v, t - k, k)

    vectors = []
    for i in range(s):
        for j in range(i + 1, s):
            for shift in shifts:
                vec = np.zeros(s * width, dtype=np.int64)
                vec[i * width + shift] = powers[j]
                vec[j * width + shift] = (-powers[i]) % p
                vectors.append(vec)

    matrix = syzygy_matrix(spec, t)
    for vec in vectors:
        if matrix.left_apply(vec).any():
            raise InvariantError("a Koszul vector does not map to zero")
    if span_rank(vectors, spec.field) != len(vectors):
        raise InvariantError(f"the {len(vectors)} Koszul vectors are dependent in degree {t}")
    return KoszulBasis(t, tuple(vectors))

# =================================================================================================
# LEFSCHETZ
# =================================================================================================

def multiplication_map_rank(spec: PowerIdealSpec, L: LinearForm, d: int) -> int:
    """Rank of x L : A_d -> A_{d+1} on standard-monomial bases."""
    n_source = monomial_count(spec.v, d)
    _, source_pivots = echelon_form(ideal_matrix(spec, d))
    pivot_set = set(source_pivots)
    standard = [c for c in range(n_source) if c not in pivot_set]
    if not standard:
        return 0
    target_rref, target_pivots = echelon_form(ideal_matrix(spec, d + 1))
    shifts = product_table(spec.v, d, 1)
    images = np.zeros((len(standard), monomial_count(spec.v, d + 1)), dtype=np.int64)
    for r, c in enumerate(standard):
        images[r, shifts[c]] = L.coefficients
    normal_forms = reduce_modulo(images, target_rref, target_pivots, spec.field)
    return rank(DenseMatrix(normal_forms, spec.field)).rank


def lefschetz_step(spec: PowerIdealSpec, L: LinearForm, d: int, cross_check_limit: int = CROSS_CHECK_LIMIT) -> LefschetzStep:
    if L.v != spec.v:
        raise StructuralError(f"L has {L.v} variables, the ring has {spec.v}")
    source = hilbert_dimension(spec, d)
    target = hilbert_dimension(spec, d + 1)
    # (A/LA)_{d+1} is a quotient of A_{d+1}
    coker = hilbert_dimension(spec.extend(L, 1), d + 1) if target else 0
    step_rank = target - coker
    kernel = source - step_rank
    if kernel < 0:
        raise InvariantError(f"negative kernel at degree {d}: source {source}, rank {step_rank}")

    checked = False
    if d <= cross_check_limit and source and target:
        direct = multiplication_map_rank(spec, L, d)
        if direct != step_rank:
            raise InvariantError(f"degree {d}: quotient-basis rank {direct} differs from hyperplane rank {step_rank}")
        checked = True

    return LefschetzStep(
        degree=d,
        dim_source=source,
        dim_target=target,
        rank=step_rank,
        kernel_dim=kernel,
        coker_dim=coker,
        maximal_rank=step_rank == min(source, target),
        cross_checked=checked,
    )


def wlp_profile(spec: PowerIdealSpec, L: LinearForm, cap: int = HILBERT_CAP) -> WlpProfile:
    """One Lefschetz step per degree 0..cap."""
    hilbert = hilbert_function(spec, cap + 1, verify_tail=True)
    dims = list(hilbert.dims)
    if hilbert.terminated == "vanishing":
        dims += [0] * (cap + 2 - len(dims))

    steps: List[LefschetzStep] = []
    for d in range(min(cap, len(dims) - 2) + 1):
        source, target = dims[d], dims[d + 1]
        if source == 0 or target == 0:
            steps.append(LefschetzStep(d, source, target, 0, source, 0, True))
        else:
            steps.append(lefschetz_step(spec, L, d))

    profile = WlpProfile(tuple(steps), hilbert)
    if profile.failing_degrees:
        logger.info(f"📉 WLP fails in degrees {list(profile.failing_degrees)}")
    if not profile.injectivity_propagates:
        logger.warning("⚠️ Injectivity does not propagate downward in this profile")
    return profile
