"""Exact rational-arithmetic reference computations for small instances (v <= 3, low degree)."""

from typing import Dict, List, Sequence, Tuple

import sympy
from sympy.polys.monomials import itermonomials

from error_handler import DomainError

ORACLE_MAX_COLUMNS = 200


def _variables(v: int) -> Tuple[sympy.Symbol, ...]:
    return sympy.symbols(f"x0:{v}")


def exponent_columns(v: int, d: int) -> Dict[Tuple[int, ...], int]:
    """Degree-d exponent vectors in sympy's own ordering; column layout is irrelevant to rank."""
    xs = _variables(v)
    monos = [sympy.Poly(m, *xs).monoms()[0] for m in itermonomials(xs, d, d)]
    if len(monos) > ORACLE_MAX_COLUMNS:
        raise DomainError(f"oracle limited to {ORACLE_MAX_COLUMNS} columns, got {len(monos)}")
    return {exps: i for i, exps in enumerate(sorted(monos))}


def rational_rank(rows: Sequence[Sequence[int]]) -> int:
    if not rows:
        return 0
    return sympy.Matrix([[sympy.Integer(x) for x in row] for row in rows]).rank()


def ideal_rank(v: int, forms: Sequence[Sequence[int]], powers: Sequence[int], d: int) -> int:
    """Rank over Q of I_d for I = (L_i^k_i), every row expanded by sympy."""
    xs = _variables(v)
    columns = exponent_columns(v, d)
    rows: List[List[int]] = []
    for coeffs, k in zip(forms, powers):
        if k > d:
            continue
        power = sum(c * x for c, x in zip(coeffs, xs)) ** k
        for shift in itermonomials(xs, d - k, d - k):
            poly = sympy.Poly(sympy.expand(shift * power), *xs)
            row = [0] * len(columns)
            for exps, c in zip(poly.monoms(), poly.coeffs()):
                row[columns[exps]] = int(c)
            rows.append(row)
    return rational_rank(rows)


def hilbert_dimension(v: int, forms: Sequence[Sequence[int]], powers: Sequence[int], d: int) -> int:
    return len(exponent_columns(v, d)) - ideal_rank(v, forms, powers, d)


def fat_point_rank(points: Sequence[Sequence[int]], multiplicities: Sequence[int], d: int, all_orders: bool = False) -> int:
    """
    Rank over Q of the derivative conditions, differentiated symbolically.

    By default only order min(m-1, d) is used. With `all_orders` every order 0 .. m-1
    is built, uncapped.
    """
    v = len(points[0])
    xs = _variables(v)
    columns = exponent_columns(v, d)
    monomials = [sympy.Mul(*[x ** e for x, e in zip(xs, exps)]) for exps in sorted(columns, key=columns.get)]
    rows = []
    for point, m in zip(points, multiplicities):
        orders = range(m) if all_orders else [min(m - 1, d)]
        at = dict(zip(xs, point))
        for beta in (b for order in orders for b in itermonomials(xs, order, order)):
            betas = sympy.Poly(beta, *xs).monoms()[0]
            row = []
            for mono in monomials:
                derived = mono
                for x, b in zip(xs, betas):
                    derived = sympy.diff(derived, x, b) if b else derived
                row.append(int(derived.subs(at)))
            rows.append(row)
    return rational_rank(rows)
