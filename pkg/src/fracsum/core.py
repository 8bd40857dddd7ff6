"""Complex branch conventions, Bernoulli numbers, and exact polynomial summation.

Everything here is binary64 complex arithmetic. The one non-obvious
convention: the logarithm's branch cut sits on the negative real axis and
takes its values there *by continuity from above*, so ``principal_log(-1)``
is ``+i*pi``, never ``-i*pi``.  All powers derive from that log.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

#: Degree of the identically-zero polynomial (and of summands that decay to 0).
#: Degree arithmetic works the obvious way: NEG_INF - 1 == NEG_INF.
NEG_INF = float("-inf")

_MAX_BERNOULLI = 60


class DomainError(ValueError):
    """An argument lies outside a function's domain."""


class PoleError(DomainError):
    """Evaluation hit a pole.  ``at`` names the offending point."""

    def __init__(self, message, at=None):
        super().__init__(message)
        self.at = at


def _as_complex_array(z):
    """Coerce to a complex ndarray, remembering whether input was scalar."""
    arr = np.asarray(z, dtype=complex)
    return arr, arr.ndim == 0


def principal_log(z):
    """Principal complex log, with the negative real axis taken from above.

    Accepts scalars or arrays.  Im(result) lies in (-pi, pi]; on the cut the
    imaginary part is +pi.  Raises ``DomainError`` for z = 0.
    """
    arr, scalar = _as_complex_array(z)
    if np.any(arr == 0):
        raise DomainError("log of zero")
    # fold imag = -0.0 onto +0.0 so the cut is approached from above
    arr = np.where(arr.imag == 0.0, arr.real + 0.0j, arr)
    out = np.log(arr)
    return complex(out) if scalar else out


def cpow(z, s, zero_convention=False):
    """z**s computed as exp(s * principal_log(z)).

    z = 0 is allowed when Re(s) > 0 (limit value 0), or whenever the caller
    opts into the convention 0**s := 0 via ``zero_convention``.
    """
    arr, z_scalar = _as_complex_array(z)
    s_arr, s_scalar = _as_complex_array(s)
    zero = arr == 0
    if np.any(zero):
        if not zero_convention and not np.all(s_arr.real > 0):
            raise DomainError(
                "0 raised to a power with nonpositive real part "
                "(set zero_convention to define 0**s = 0)"
            )
        safe = np.where(zero, 1.0, arr)
    else:
        safe = arr
    safe = np.where(safe.imag == 0.0, safe.real + 0.0j, safe)
    out = np.exp(s_arr * np.log(safe))
    out = np.where(zero, 0.0, out)
    return complex(out) if z_scalar and s_scalar else out


@dataclass(frozen=True)
class BernoulliTable:
    """B_0 .. B_max in the convention B_1 = -1/2."""

    values: tuple[float, ...]

    def __getitem__(self, k):
        return self.values[k]

    def __len__(self):
        return len(self.values)

    @property
    def max_index(self):
        return len(self.values) - 1


@lru_cache(maxsize=None)
def bernoulli_numbers(max_index: int) -> BernoulliTable:
    """Bernoulli numbers by the defining recurrence sum(C(m+1,j) B_j) = 0.

    Capped at index 60; past that binary64 cannot represent the values to
    useful relative accuracy.
    """
    if max_index < 0:
        raise DomainError("max_index must be >= 0")
    if max_index > _MAX_BERNOULLI:
        raise DomainError(
            f"Bernoulli index {max_index} > {_MAX_BERNOULLI}: binary64 accuracy exhausted"
        )
    b = [1.0]
    for m in range(1, max_index + 1):
        acc = 0.0
        for j in range(m):
            acc += math.comb(m + 1, j) * b[j]
        b.append(-acc / (m + 1))
    return BernoulliTable(tuple(b))


class Polynomial:
    """Immutable dense polynomial with complex coefficients (coeffs[k] * x**k)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [complex(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("Polynomial is immutable")

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def __call__(self, x):
        """Horner evaluation; works on scalars and arrays."""
        arr, scalar = _as_complex_array(x)
        acc = np.zeros_like(arr)
        for c in reversed(self.coeffs):
            acc = acc * arr + c
        return complex(acc) if scalar else acc

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if not self.coeffs or not other.coeffs:
                return Polynomial()
            out = [0j] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return Polynomial(out)
        return Polynomial([complex(other) * c for c in self.coeffs])

    __rmul__ = __mul__

    def derivative(self, order=1):
        if order < 0:
            raise DomainError("derivative order must be >= 0")
        c = list(self.coeffs)
        for _ in range(order):
            c = [k * c[k] for k in range(1, len(c))]
        return Polynomial(c)

    def shifted(self, c):
        """The polynomial x -> p(x + c)."""
        acc = Polynomial()
        lin = Polynomial([c, 1.0])
        for coef in reversed(self.coeffs):
            acc = acc * lin + coef
        return acc

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"


@lru_cache(maxsize=None)
def faulhaber_polynomial(k: int) -> Polynomial:
    """The unique P_k of degree k+1 with P_k(n) = 1^k + ... + n^k and P_k(0) = 0.

    Built from the Bernoulli numbers:
    P_k(x) = (1/(k+1)) * sum_j C(k+1, j) * (-1)^j * B_j * x^(k+1-j).
    """
    if k < 0:
        raise DomainError("faulhaber_polynomial requires k >= 0")
    bern = bernoulli_numbers(k)
    coeffs = [0j] * (k + 2)
    for j in range(k + 1):
        sign = -1.0 if j % 2 else 1.0
        coeffs[k + 1 - j] = math.comb(k + 1, j) * sign * bern[j] / (k + 1)
    return Polynomial(coeffs)


def poly_frac_sum(p: Polynomial, a, b) -> complex:
    """Exact fractional sum of a polynomial: sum_{v=a}^{b} p(v) = P(b) - P(a-1).

    Total for arbitrary complex bounds; P is the Faulhaber antidifference of p.
    """
    a, b = complex(a), complex(b)
    total = 0j
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        pk = faulhaber_polynomial(k)
        total += c * (pk(b) - pk(a - 1))
    return total


def poly_derivative(p: Polynomial, order: int) -> Polynomial:
    """Coefficient-wise derivative of the given order."""
    return p.derivative(order)
