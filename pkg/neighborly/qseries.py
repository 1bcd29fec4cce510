"""Truncated formal power series in q, and in x and q, with exact integer coefficients.

A series of order N knows its coefficients of q^0..q^N; everything beyond is
unknown rather than zero. Binary operations therefore truncate to the smaller
order of their operands.
"""

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from neighborly.errors import DivisibilityError, SeriesError, ValidationError


def _check_order(order: int):
    if not isinstance(order, int) or isinstance(order, bool) or order < 0:
        raise ValidationError(f"Truncation order must be a non-negative integer, got {order!r}")


@dataclass(frozen=True)
class Series:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if not coeffs:
            raise ValidationError("A series needs at least the constant coefficient")
        for c in coeffs:
            if not isinstance(c, int) or isinstance(c, bool):
                raise ValidationError(f"Coefficients must be integers, got {c!r}")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order: int) -> "Series":
        _check_order(order)
        return cls((0,) * (order + 1))

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls.monomial(0, order)

    @classmethod
    def monomial(cls, exponent: int, order: int, coefficient: int = 1) -> "Series":
        """coefficient * q^exponent; vanishes when the exponent lies past the order."""
        _check_order(order)
        if exponent < 0:
            raise ValidationError(f"Negative exponent {exponent}")
        coeffs = [0] * (order + 1)
        if exponent <= order:
            coeffs[exponent] = coefficient
        return cls(tuple(coeffs))

    @classmethod
    def from_terms(cls, terms: dict[int, int], order: int) -> "Series":
        """Sum of c*q^e over `terms`; exponents past the order are dropped."""
        _check_order(order)
        coeffs = [0] * (order + 1)
        for exponent, coefficient in terms.items():
            if exponent < 0:
                raise ValidationError(f"Negative exponent {exponent}")
            if exponent <= order:
                coeffs[exponent] += coefficient
        return cls(tuple(coeffs))

    @classmethod
    def polynomial(cls, coeffs: Sequence[int], order: int) -> "Series":
        """A polynomial read as a series: padded with zeros or cut at the order."""
        _check_order(order)
        coeffs = list(coeffs)[: order + 1]
        return cls(tuple(coeffs + [0] * (order + 1 - len(coeffs))))

    def coeff(self, exponent: int) -> int:
        if exponent < 0:
            return 0
        if exponent > self.order:
            raise SeriesError(f"Coefficient of q^{exponent} is unknown beyond order {self.order}")
        return self.coeffs[exponent]

    def restrict(self, order: int) -> "Series":
        _check_order(order)
        if order > self.order:
            raise SeriesError(f"Cannot extend a series of order {self.order} to {order}")
        return Series(self.coeffs[: order + 1])

    def shift(self, exponent: int) -> "Series":
        """Multiply by q^exponent, keeping the order."""
        if exponent < 0:
            raise ValidationError(f"Negative shift {exponent}")
        if exponent == 0:
            return self
        n = self.order + 1
        return Series(((0,) * exponent + self.coeffs)[:n] if exponent < n else (0,) * n)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "Series") -> "Series":
        order = min(self.order, other.order)
        return Series(tuple(a + b for a, b in zip(self.coeffs[: order + 1], other.coeffs)))

    def __neg__(self) -> "Series":
        return Series(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __mul__(self, other) -> "Series":
        if isinstance(other, int):
            return Series(tuple(other * c for c in self.coeffs))
        order = min(self.order, other.order)
        result = [0] * (order + 1)
        b = other.coeffs
        for i, a in enumerate(self.coeffs[: order + 1]):
            if a:
                for j in range(order + 1 - i):
                    if b[j]:
                        result[i + j] += a * b[j]
        return Series(tuple(result))

    __rmul__ = __mul__

    def differences(self, other: "Series") -> list[tuple[int, int, int]]:
        """(exponent, self coefficient, other coefficient) wherever the two disagree."""
        order = min(self.order, other.order)
        return [
            (e, self.coeffs[e], other.coeffs[e])
            for e in range(order + 1)
            if self.coeffs[e] != other.coeffs[e]
        ]

    def first_mismatch(self, other: "Series") -> Optional[tuple[int, int, int]]:
        diffs = self.differences(other)
        return diffs[0] if diffs else None

    def to_dict(self) -> dict:
        return {"order": self.order, "coeffs": list(self.coeffs)}

    def to_csv_rows(self) -> list[tuple[int, int]]:
        return list(enumerate(self.coeffs))

    def __str__(self) -> str:
        terms = []
        for e, c in enumerate(self.coeffs):
            if not c:
                continue
            power = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if power and abs(c) == 1:
                body = power
            else:
                body = f"{abs(c)}{'*' if power else ''}{power}"
            terms.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(terms) if terms else "0"
        if text.startswith("+ "):
            text = text[2:]
        elif text.startswith("- "):
            text = "-" + text[2:]
        return f"{text} + O(q^{self.order + 1})"


def negate(a: Series) -> Series:
    return -a


def add(a: Series, b: Series) -> Series:
    return a + b


def mul(a: Series, b: Series) -> Series:
    return a * b


def geometric_inverse_factor(e: int, order: int) -> Series:
    """1 / (1 - q^e) = 1 + q^e + q^2e + ..., truncated."""
    if not isinstance(e, int) or e < 1:
        raise ValidationError(f"Geometric factor exponent must be positive, got {e!r}")
    _check_order(order)
    return Series(tuple(1 if i % e == 0 else 0 for i in range(order + 1)))


def _times_one_minus(a: Series, exponent: int, sign: int = 1) -> Series:
    """a * (1 - sign*q^exponent) without a full Cauchy product."""
    coeffs = list(a.coeffs)
    for i in range(len(coeffs) - 1, exponent - 1, -1):
        coeffs[i] -= sign * coeffs[i - exponent]
    return Series(tuple(coeffs))


def finite_product(
    exponents: Iterable[int], order: int, signs: Optional[Sequence[int]] = None
) -> Series:
    """Product of (1 - s_i q^e_i); a sign s_i = -1 gives the factor (1 + q^e_i)."""
    _check_order(order)
    exponents = list(exponents)
    signs = [1] * len(exponents) if signs is None else list(signs)
    if len(signs) != len(exponents):
        raise ValidationError("One sign per exponent is required")
    result = Series.one(order)
    for exponent, sign in zip(exponents, signs):
        if not isinstance(exponent, int) or exponent < 1:
            raise ValidationError(f"Product exponents must be positive, got {exponent!r}")
        if sign not in (1, -1):
            raise ValidationError(f"Factor sign must be +1 or -1, got {sign!r}")
        result = _times_one_minus(result, exponent, sign)
    return result


def pochhammer_exponents(first: int, step: int, count: int) -> list[int]:
    """Exponents of (q^first; q^step)_count, descending bases included.

    Every expanded exponent first + i*step (i < count) must be positive.
    """
    if count < 0:
        raise ValidationError(f"Negative Pochhammer length {count}")
    exponents = [first + i * step for i in range(count)]
    bad = [e for e in exponents if e < 1]
    if bad:
        raise ValidationError(
            f"(q^{first}; q^{step})_{count} expands to non-positive exponents {bad}"
        )
    return exponents


def pochhammer(first: int, step: int, count: int, order: int, base_sign: int = 1) -> Series:
    """(a; q^step)_count with a = base_sign * q^first; base_sign=-1 gives (-q^first; q^step)."""
    exponents = pochhammer_exponents(first, step, count)
    return finite_product(exponents, order, [base_sign] * len(exponents))


def infinite_product(residues: Sequence[int], modulus: int, order: int) -> Series:
    """Product over k >= 0 and r in residues of (1 - q^(r + k*modulus)), truncated."""
    _check_order(order)
    if not isinstance(modulus, int) or modulus < 1:
        raise ValidationError(f"Modulus must be a positive integer, got {modulus!r}")
    for r in residues:
        if not isinstance(r, int) or r < 1:
            raise ValidationError(f"Residues must be positive integers, got {r!r}")
    exponents = []
    for r in residues:
        exponents.extend(range(r, order + 1, modulus))
    return finite_product(sorted(exponents), order)


def divide_by_product(numerator: Series, exponents: Iterable[int]) -> Series:
    """numerator / prod(1 - q^e), checked by multiplying back."""
    exponents = list(exponents)
    quotient = numerator
    for e in exponents:
        quotient = quotient * geometric_inverse_factor(e, numerator.order)
    if finite_product(exponents, numerator.order) * quotient != numerator:
        raise DivisibilityError(f"Series is not divisible by the product over {exponents}")
    return quotient


@dataclass(frozen=True)
class BivariateSeries:
    """sum over n <= x_order of x^n * slices[n], each slice a Series in q of order q_order."""

    slices: tuple[Series, ...]

    def __post_init__(self):
        slices = tuple(self.slices)
        if not slices:
            raise ValidationError("A bivariate series needs at least the x^0 slice")
        orders = {s.order for s in slices}
        if len(orders) != 1:
            raise ValidationError(f"All x-slices must share one q-order, got {sorted(orders)}")
        object.__setattr__(self, "slices", slices)

    @property
    def x_order(self) -> int:
        return len(self.slices) - 1

    @property
    def q_order(self) -> int:
        return self.slices[0].order

    @classmethod
    def zero(cls, x_order: int, q_order: int) -> "BivariateSeries":
        _check_order(x_order)
        return cls(tuple(Series.zero(q_order) for _ in range(x_order + 1)))

    @classmethod
    def one(cls, x_order: int, q_order: int) -> "BivariateSeries":
        return cls.lift(Series.one(q_order), 0, x_order)

    @classmethod
    def lift(cls, a: Series, x_power: int, x_order: int) -> "BivariateSeries":
        """a * x^x_power."""
        _check_order(x_order)
        if x_power < 0 or x_power > x_order:
            raise SeriesError(f"x^{x_power} does not fit in x-order {x_order}")
        zero = Series.zero(a.order)
        return cls(tuple(a if n == x_power else zero for n in range(x_order + 1)))

    @classmethod
    def from_slices(cls, slices: dict[int, Series], x_order: int, q_order: int) -> "BivariateSeries":
        """Slices given by x-degree; degrees past x_order are dropped."""
        _check_order(x_order)
        result = [Series.zero(q_order) for _ in range(x_order + 1)]
        for n, s in slices.items():
            if n <= x_order:
                result[n] = result[n] + s.restrict(q_order)
        return cls(tuple(result))

    def coeff_x(self, n: int) -> Series:
        if n < 0 or n > self.x_order:
            raise SeriesError(f"x^{n} is beyond x-order {self.x_order}")
        return self.slices[n]

    def coeff(self, n: int, exponent: int) -> int:
        return self.coeff_x(n).coeff(exponent)

    def subst_x_scale(self, m: int) -> "BivariateSeries":
        """x -> x*q^m: the x^n slice gains q^(n*m)."""
        if m < 0:
            raise ValidationError(f"Negative x scaling exponent {m}")
        return BivariateSeries(tuple(s.shift(n * m) for n, s in enumerate(self.slices)))

    def at_x_one(self) -> Series:
        """Sum of all slices.

        This is the x=1 specialization only when no slice past x_order reaches
        the q-order, e.g. when the x^n slice starts at q^n and x_order >= q_order.
        """
        total = Series.zero(self.q_order)
        for s in self.slices:
            total = total + s
        return total

    def is_zero(self) -> bool:
        return all(s.is_zero() for s in self.slices)

    def _aligned(self, other: "BivariateSeries") -> tuple[int, int]:
        return min(self.x_order, other.x_order), min(self.q_order, other.q_order)

    def __add__(self, other: "BivariateSeries") -> "BivariateSeries":
        x_order, _ = self._aligned(other)
        return BivariateSeries(tuple(self.slices[n] + other.slices[n] for n in range(x_order + 1)))

    def __neg__(self) -> "BivariateSeries":
        return BivariateSeries(tuple(-s for s in self.slices))

    def __sub__(self, other: "BivariateSeries") -> "BivariateSeries":
        return self + (-other)

    def __mul__(self, other) -> "BivariateSeries":
        if isinstance(other, int):
            return BivariateSeries(tuple(other * s for s in self.slices))
        x_order, q_order = self._aligned(other)
        result = [Series.zero(q_order) for _ in range(x_order + 1)]
        for i in range(x_order + 1):
            a = self.slices[i]
            if a.is_zero():
                continue
            for j in range(x_order + 1 - i):
                b = other.slices[j]
                if not b.is_zero():
                    result[i + j] = result[i + j] + a * b
        return BivariateSeries(tuple(result))

    __rmul__ = __mul__

    def differences(self, other: "BivariateSeries") -> list[tuple[tuple[int, int], int, int]]:
        """((x-degree, q-exponent), self coefficient, other coefficient) where they disagree."""
        x_order, _ = self._aligned(other)
        return [
            ((n, e), a, b)
            for n in range(x_order + 1)
            for e, a, b in self.slices[n].differences(other.slices[n])
        ]

    def first_mismatch(self, other: "BivariateSeries"):
        diffs = self.differences(other)
        return diffs[0] if diffs else None


def b_mul(a: BivariateSeries, b: BivariateSeries) -> BivariateSeries:
    return a * b


def b_coeff_x(a: BivariateSeries, n: int) -> Series:
    return a.coeff_x(n)


def b_subst_x_scale(a: BivariateSeries, m: int) -> BivariateSeries:
    return a.subst_x_scale(m)


def b_lift(a: Series, x_power: int, x_order: int) -> BivariateSeries:
    return BivariateSeries.lift(a, x_power, x_order)


def one_minus_x_q(q_power: int, x_order: int, q_order: int, coefficient: int = 1) -> BivariateSeries:
    """1 - coefficient * x * q^q_power."""
    slices = {0: Series.one(q_order)}
    if x_order >= 1:
        slices[1] = Series.monomial(q_power, q_order, -coefficient)
    return BivariateSeries.from_slices(slices, x_order, q_order)


def x_pochhammer(first: int, count: int, x_order: int, q_order: int) -> BivariateSeries:
    """(x q^first; q)_count = prod over i < count of (1 - x q^(first+i))."""
    result = BivariateSeries.one(x_order, q_order)
    for i in range(count):
        result = result * one_minus_x_q(first + i, x_order, q_order)
    return result


def x_geometric_inverse(q_power: int, x_order: int, q_order: int) -> BivariateSeries:
    """1 / (1 - x q^q_power) = sum over m of x^m q^(m*q_power)."""
    return BivariateSeries.from_slices(
        {m: Series.monomial(m * q_power, q_order) for m in range(x_order + 1)},
        x_order,
        q_order,
    )


def x_pochhammer_inverse_infinite(first: int, x_order: int, q_order: int) -> BivariateSeries:
    """1 / (x q^first; q)_infinity, keeping factors whose q-power is within q_order."""
    if first < 1:
        raise ValidationError(f"Infinite x-Pochhammer needs a positive first exponent, got {first}")
    result = BivariateSeries.one(x_order, q_order)
    for exponent in range(first, q_order + 1):
        result = result * x_geometric_inverse(exponent, x_order, q_order)
    return result
