import numpy as np
import pytest
import sympy

import oracle
from artinian import PowerIdealSpec, hilbert_dimension
from error_handler import DomainError
from fat_points import FatPointSystem, ProjectivePoint, linear_system_dimension
from field_linalg import PrimeFieldConfig
from poly_ring import LinearForm, enumerate_monomials, expand_power

FIELD = PrimeFieldConfig()
INSTANCES = 200


def small_instance(seed: int):
    """Random small integer data; entries stay small so mod-p and rational ranks agree."""
    rng = np.random.default_rng(seed)
    v = int(rng.integers(1, 4))
    count = int(rng.integers(1, 5))
    forms = []
    while len(forms) < count:
        coeffs = [int(c) for c in rng.integers(-4, 5, size=v)]
        if any(coeffs):
            forms.append(coeffs)
    powers = [int(k) for k in rng.integers(1, 4, size=count)]
    d = int(rng.integers(0, 5))
    return v, forms, powers, d


@pytest.mark.parametrize("seed", range(INSTANCES))
def test_hilbert_dimension_matches_rational_oracle(seed):
    v, forms, powers, d = small_instance(seed)
    spec = PowerIdealSpec(v, tuple((LinearForm(tuple(f), FIELD), k) for f, k in zip(forms, powers)), FIELD)
    assert hilbert_dimension(spec, d) == oracle.hilbert_dimension(v, forms, powers, d)


def small_fat_points(seed: int):
    rng = np.random.default_rng([seed, 1])
    n = int(rng.integers(1, 3))
    d = int(rng.integers(0, 5))
    target = int(rng.integers(1, 5))
    points = []
    while len(points) < target:
        coords = [int(c) for c in rng.integers(-3, 4, size=n + 1)]
        if any(coords):
            points.append(coords)
    mults = [int(m) for m in rng.integers(1, 4, size=len(points))]
    return n, d, points, mults


def imposed(n, d, points, mults):
    system = FatPointSystem(n, d, tuple((ProjectivePoint(tuple(p), FIELD), m) for p, m in zip(points, mults)), FIELD)
    return linear_system_dimension(system).conditions_imposed


@pytest.mark.parametrize("seed", range(0, INSTANCES, 4))
def test_fat_point_rank_matches_rational_oracle(seed):
    n, d, points, mults = small_fat_points(seed)
    assert imposed(n, d, points, mults) == oracle.fat_point_rank(points, mults, d)


@pytest.mark.parametrize("seed", range(0, INSTANCES, 8))
def test_single_order_rows_match_every_order(seed):
    n, d, points, mults = small_fat_points(seed)
    assert imposed(n, d, points, mults) == oracle.fat_point_rank(points, mults, d, all_orders=True)


@pytest.mark.parametrize("n, d, m", [(2, 1, 4), (2, 2, 4), (1, 2, 5), (2, 3, 5)])
def test_multiplicity_above_degree(n, d, m):
    point = [1] + [2] * n
    assert imposed(n, d, [point], [m]) == oracle.fat_point_rank([point], [m], d, all_orders=True)


@pytest.mark.parametrize("coeffs, k", [((1, 2, 3), 3), ((2, -1), 4), ((0, 5, 1), 2), ((7,), 5)])
def test_expand_power_matches_sympy(coeffs, k):
    xs = sympy.symbols(f"x0:{len(coeffs)}")
    poly = sympy.Poly(sum(c * x for c, x in zip(coeffs, xs)) ** k, *xs)
    expected = {exps: int(c) % FIELD.modulus for exps, c in zip(poly.monoms(), poly.coeffs())}

    power = expand_power(LinearForm(coeffs, FIELD), k)
    exponents = enumerate_monomials(len(coeffs), k).exponents
    computed = {tuple(int(e) for e in exps): int(c) for exps, c in zip(exponents, power.coefficients) if c}
    assert computed == expected


def test_oracle_refuses_large_instances():
    with pytest.raises(DomainError):
        oracle.exponent_columns(7, 6)
