"""Closed forms of the generating functions for signed admissible neighborly partitions.

Every identity is computed on both sides independently, as truncated series, so
that the harness can compare them with each other and with enumeration.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Union

from neighborly.constants import ComponentType, SignConvention
from neighborly.errors import ValidationError
from neighborly.qseries import (
    BivariateSeries,
    Series,
    divide_by_product,
    finite_product,
    geometric_inverse_factor,
    infinite_product,
    one_minus_x_q,
    pochhammer,
    pochhammer_exponents,
    x_pochhammer,
    x_pochhammer_inverse_infinite,
)

logger = logging.getLogger(__name__)

AnySeries = Union[Series, BivariateSeries]


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: AnySeries
    rhs: AnySeries
    valid_order: int
    valid_x_order: Optional[int] = None

    @property
    def mismatches(self) -> list:
        return self.lhs.differences(self.rhs)

    @property
    def match(self) -> bool:
        return not self.mismatches

    @property
    def first_mismatch(self):
        return self.lhs.first_mismatch(self.rhs)


def compare(name: str, lhs: AnySeries, rhs: AnySeries) -> IdentityCheck:
    if isinstance(lhs, BivariateSeries):
        return IdentityCheck(
            name,
            lhs,
            rhs,
            valid_order=min(lhs.q_order, rhs.q_order),
            valid_x_order=min(lhs.x_order, rhs.x_order),
        )
    return IdentityCheck(name, lhs, rhs, valid_order=min(lhs.order, rhs.order))


def _inverse_q_pochhammer(k: int, order: int) -> Series:
    """1 / (q; q)_k."""
    result = Series.one(order)
    for i in range(1, k + 1):
        result = result * geometric_inverse_factor(i, order)
    return result


def rr1_product(order: int) -> Series:
    return infinite_product((2, 3, 5), 5, order)


def rr1_bilateral(order: int) -> Series:
    """sum over all integers k of (-1)^k q^(k(5k+1)/2)."""
    terms: dict[int, int] = {}
    for direction in (1, -1):
        k = 0 if direction == 1 else -1
        while k * (5 * k + 1) // 2 <= order:
            exponent = k * (5 * k + 1) // 2
            terms[exponent] = terms.get(exponent, 0) + (-1) ** abs(k)
            k += direction
    return Series.from_terms(terms, order)


def rr1_theorem_form(order: int) -> Series:
    """1 + sum over k >= 1 of (-1)^k q^((5k^2-k)/2) (1 + q^k).

    This is the bilateral sum folded onto k >= 1. The same sum is sometimes printed
    with the exponent 5k^2 - k/2, which is not an integer for odd k.
    """
    terms = {0: 1}
    k = 1
    while (5 * k * k - k) // 2 <= order:
        exponent = (5 * k * k - k) // 2
        for e in (exponent, exponent + k):
            terms[e] = terms.get(e, 0) + (-1) ** k
        k += 1
    return Series.from_terms(terms, order)


def rr2_product(order: int) -> Series:
    return infinite_product((4, 5, 6), 5, order)


def rr2_sum(order: int) -> Series:
    """sum over k >= 0 of (-1)^k q^(k(5k+3)/2) (1 + q + ... + q^(2k))."""
    terms: dict[int, int] = {}
    k = 0
    while k * (5 * k + 3) // 2 <= order:
        start = k * (5 * k + 3) // 2
        for e in range(start, start + 2 * k + 1):
            terms[e] = terms.get(e, 0) + (-1) ** k
        k += 1
    return Series.from_terms(terms, order)


def _shifted_sum(series: Series, exponents: tuple[int, ...]) -> Series:
    total = Series.zero(series.order)
    for e in exponents:
        total = total + series.shift(e)
    return total


def gf_sequence(nmax: int, order: int) -> list[Series]:
    """GF_0..GF_nmax from the parts recurrence with GF_0 = 1 and GF_n = 0 for n < 0."""
    if nmax < 0:
        raise ValidationError(f"nmax must be non-negative, got {nmax}")
    gf = [Series.one(order)]
    zero = Series.zero(order)

    def at(i: int) -> Series:
        return gf[i] if i >= 0 else zero

    for n in range(1, nmax + 1):
        rhs = zero
        if n >= 2:
            rhs = rhs - _shifted_sum(at(n - 2), (2 * n - 2, 3 * n - 3))
        if n >= 3:
            rhs = rhs + _shifted_sum(at(n - 3), (2 * n - 2, 3 * n - 4, 3 * n - 3))
        if n >= 4:
            rhs = rhs - at(n - 4).shift(3 * n - 4)
        gf.append(divide_by_product(rhs, [n]))
    return gf


def h_recurrence_sequence(nmax: int, order: int) -> list[Series]:
    """H_0..H_nmax from the recurrence implied by the functional equation."""
    if nmax < 0:
        raise ValidationError(f"nmax must be non-negative, got {nmax}")
    h = [Series.one(order)]
    zero = Series.zero(order)
    one = Series.one(order)

    def at(i: int) -> Series:
        return h[i] if i >= 0 else zero

    for n in range(1, nmax + 1):
        rhs = -(at(n - 1) * (one - Series.monomial(n - 1, order))).shift(n)
        if n >= 2:
            rhs = rhs - _shifted_sum(at(n - 2), (2 * n - 2, 2 * n - 1))
        if n >= 3:
            rhs = rhs + at(n - 3).shift(2 * n - 2)
        h.append(divide_by_product(rhs, [n]))
    return h


def first_component_terms(n: int, gf: list[Series]) -> dict[ComponentType, Series]:
    """The six pieces of (1 - q^n) GF_n, one per shape of the component holding the part 1."""
    order = gf[0].order
    zero = Series.zero(order)

    def at(i: int) -> Series:
        return gf[i] if i >= 0 else zero

    def piece(i: int, exponent: int, factor: int) -> Series:
        return factor * at(i).shift(exponent) if i >= 0 else zero

    return {
        ComponentType.PAIR: piece(n - 2, 2 * n - 2, -1),
        ComponentType.STEP: piece(n - 2, 3 * n - 3, -1),
        ComponentType.PAIR_STEP: piece(n - 3, 2 * n - 2, 1),
        ComponentType.STEP_PAIR: piece(n - 3, 3 * n - 4, 1),
        ComponentType.RUN: piece(n - 3, 3 * n - 3, 1),
        ComponentType.STEP_PAIR_STEP: piece(n - 4, 3 * n - 4, -1),
    }


def main_theorem_rhs(x_order: int, q_order: int) -> BivariateSeries:
    """1 + sum over k >= 1 of (-1)^k x^2k q^((5k^2-k)/2) (xq;q)_(k-1) (1 - x q^2k) / (q;q)_k."""
    result = BivariateSeries.one(x_order, q_order)
    k = 1
    while (5 * k * k - k) // 2 <= q_order and 2 * k <= x_order:
        scalar = Series.monomial((5 * k * k - k) // 2, q_order, (-1) ** k)
        scalar = scalar * _inverse_q_pochhammer(k, q_order)
        term = BivariateSeries.lift(scalar, 2 * k, x_order)
        term = term * x_pochhammer(1, k - 1, x_order, q_order)
        term = term * one_minus_x_q(2 * k, x_order, q_order)
        result = result + term
        k += 1
    return result


def functional_equation_residual(
    x_order: int, q_order: int, include_qx_term: bool = True
) -> BivariateSeries:
    """H(x)/(xq;q)_inf - H(xq)/(xq^2;q)_inf - qx H(xq^2)/(xq^3;q)_inf, which vanishes."""
    h = main_theorem_rhs(x_order, q_order)
    residual = h * x_pochhammer_inverse_infinite(1, x_order, q_order)
    residual = residual - h.subst_x_scale(1) * x_pochhammer_inverse_infinite(2, x_order, q_order)
    if include_qx_term and x_order >= 1:
        qx = BivariateSeries.lift(Series.monomial(1, q_order), 1, x_order)
        residual = residual - qx * h.subst_x_scale(2) * x_pochhammer_inverse_infinite(
            3, x_order, q_order
        )
    return residual


def classical_lhs(x_order: int, q_order: int) -> BivariateSeries:
    """(xq;q)_inf * sum over k of q^(k^2) x^k / (q;q)_k."""
    total = BivariateSeries.zero(x_order, q_order)
    for k in range(x_order + 1):
        coefficient = Series.monomial(k * k, q_order) * _inverse_q_pochhammer(k, q_order)
        total = total + BivariateSeries.lift(coefficient, k, x_order)
    return x_pochhammer(1, q_order, x_order, q_order) * total


def _edgevertex_numerator(n: int, j: int, order: int) -> Series:
    """(-q;q^2)_(n-j) (q^(2n-2j-1);q^-2)_j."""
    odd_part = pochhammer(1, 2, n - j, order, base_sign=-1)
    descending = finite_product(pochhammer_exponents(2 * n - 2 * j - 1, -2, j), order)
    return odd_part * descending


def _even_exponents(count: int) -> list[int]:
    """Factors of (q^2;q^2)_count."""
    return [2 * i for i in range(1, count + 1)]


def edgevertex_even(n: int, j: int, order: int) -> Series:
    """Signed admissible partitions whose pruned graph has 2n vertices and n+j edges."""
    if j < 0 or n < 2 * j:
        raise ValidationError(f"Even refinement needs 0 <= 2j <= n, got n={n}, j={j}")
    numerator = _edgevertex_numerator(n, j, order)
    numerator = (-1) ** (n + j) * numerator.shift(2 * (n - j) ** 2 + 4 * j * j + 2 * j)
    return divide_by_product(numerator, _even_exponents(2 * j) + _even_exponents(n - 2 * j))


def edgevertex_odd(
    n: int, j: int, order: int, sign_convention: SignConvention = SignConvention.SHIFTED
) -> Series:
    """Signed admissible partitions whose pruned graph has 2n+1 vertices and n+j+1 edges.

    PRINTED uses the prefactor (-1)^(n+j); SHIFTED uses (-1)^(n+j+1), which is the
    one the enumeration agrees with.
    """
    if j < 0 or n < 2 * j + 1:
        raise ValidationError(f"Odd refinement needs 0 <= 2j+1 <= n, got n={n}, j={j}")
    flip = 1 if SignConvention(sign_convention) is SignConvention.SHIFTED else 0
    numerator = _edgevertex_numerator(n, j, order)
    numerator = (-1) ** (n + j + flip) * numerator.shift(2 * (n - j) ** 2 + 4 * j * j + 6 * j + 2)
    return divide_by_product(
        numerator, _even_exponents(2 * j + 1) + _even_exponents(n - 2 * j - 1)
    )
