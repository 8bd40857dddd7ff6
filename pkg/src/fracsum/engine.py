"""The fractional-summation engine.

A sum with complex bounds a, b is defined through approximating polynomials:

    sum_{v=a}^{b} f(v) = lim_n [ S(p_n; n+a, n+b) + sum_{v=1}^{n} (f(v+a-1) - f(v+b)) ]

where p_n interpolates f at the integer nodes n, n+1, ..., n+degree and
S(p; c, d) is the exact polynomial sum from core.poly_frac_sum.  The limit is
taken along a geometric n-schedule and accelerated by Richardson
extrapolation in the variable 1/n.

Summand evaluators should be vectorized over complex ndarrays (a scalar-only
callable is detected and wrapped, at a cost).  Evaluators must be pure: the
engine assumes f(v) depends on nothing but v.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .core import (
    NEG_INF,
    DomainError,
    PoleError,
    Polynomial,
    poly_frac_sum,
)

_INT_TOL = 1e-12  # how close b - a must be to a negative integer to short-circuit


def _is_degree(value):
    return value == NEG_INF or (isinstance(value, (int, np.integer)) and value >= 0)


@dataclass(frozen=True)
class Summand:
    """A function v -> f(v) with its declared approximation degree.

    ``degree`` is the degree of the approximating polynomials (NEG_INF for
    summands that vanish as Re(v) -> +inf).  It is declared by the caller,
    never inferred.  ``domain_ok`` models the summand's domain U, which must
    be closed under +1; bounds are rejected up front when it returns False.
    """

    fn: Callable
    degree: float
    domain_ok: Callable = field(default=lambda z: True)
    label: str = ""

    def __post_init__(self):
        if not _is_degree(self.degree):
            raise DomainError(f"degree must be a nonnegative integer or NEG_INF, got {self.degree!r}")

    def mirrored(self) -> "Summand":
        """The summand v -> f(-v), used to reduce left sums to right sums."""
        fn = self.fn
        ok = self.domain_ok
        return Summand(
            fn=lambda v, _fn=fn: _fn(-np.asarray(v, dtype=complex)),
            degree=self.degree,
            domain_ok=lambda z, _ok=ok: _ok(-z),
            label=f"{self.label or 'f'}(-v)",
        )


@dataclass(frozen=True)
class EngineConfig:
    n_start: int = 16
    n_max: int = 2 ** 20
    growth: float = 2.0
    richardson_order: int = 4
    tol: float = 1e-9
    direct_series_tail_tol: float = 1e-12
    # Optional override of the extrapolation basis: when the error expansion of
    # a summand is known to run over powers n^e (e complex, Re e < 0) instead
    # of integer powers of 1/n, listing those exponents here lets the engine
    # eliminate them directly.  Power summands v**a with complex a need this.
    error_exponents: Optional[tuple] = None

    def __post_init__(self):
        if self.growth <= 1:
            raise DomainError("growth must be > 1")
        if self.richardson_order < 0:
            raise DomainError("richardson_order must be >= 0")
        if self.n_start < 2 or self.n_max < self.n_start:
            raise DomainError("need 2 <= n_start <= n_max")


@dataclass(frozen=True)
class FracSumResult:
    value: complex
    err_estimate: float
    n_used: int
    converged: bool
    samples: Optional[tuple] = None

    def __complex__(self):
        return complex(self.value)


def _evaluate(f: Summand, pts: np.ndarray) -> np.ndarray:
    """Evaluate a summand on an array of points; poles surface as PoleError."""
    with np.errstate(all="ignore"):
        try:
            vals = np.asarray(f.fn(pts), dtype=complex)
            if vals.shape != pts.shape:
                raise TypeError
        except PoleError:
            raise
        except Exception:
            out = np.empty(pts.shape, dtype=complex)
            for i, p in enumerate(pts.ravel()):
                try:
                    out.ravel()[i] = complex(f.fn(complex(p)))
                except PoleError:
                    raise
                except ZeroDivisionError:
                    out.ravel()[i] = complex("inf")
            vals = out
    bad = ~np.isfinite(vals)
    if np.any(bad):
        nu = complex(pts[bad][0])
        raise PoleError(f"summand {f.label or 'f'!s} is singular at nu = {nu}", at=nu)
    return vals


def _newton_shifted(f: Summand, n: int, degree: int) -> Polynomial:
    """Interpolant through (n+u, f(n+u)), u = 0..degree, as a polynomial in u.

    Working in the shifted variable keeps the coefficients O(f(n)) instead of
    O(f(n) * n^degree); the exact shift identity
    S(p; n+a, n+b) = S(p(n+.); a, b) makes both forms interchangeable.
    """
    nodes = n + np.arange(degree + 1, dtype=complex)
    ys = _evaluate(f, nodes)
    poly = Polynomial()
    basis = Polynomial([1.0])
    diffs = ys.copy()
    fact = 1.0
    for k in range(degree + 1):
        if k > 0:
            diffs = np.diff(diffs)
            fact *= k
        poly = poly + (complex(diffs[0]) / fact) * basis
        basis = basis * Polynomial([-k, 1.0])
    return poly


def interpolating_polynomial(f: Summand, n: int) -> Polynomial:
    """The unique polynomial of degree <= f.degree through the nodes n..n+degree.

    Returned in the unshifted variable (its argument is v itself).  The zero
    polynomial for degree NEG_INF.
    """
    if f.degree == NEG_INF:
        return Polynomial()
    return _newton_shifted(f, n, int(f.degree)).shifted(-n)


def _check_bounds(f: Summand, a: complex, b: complex):
    if not f.domain_ok(a):
        raise DomainError(f"lower bound {a} rejected by summand domain")
    if not f.domain_ok(b + 1):
        raise DomainError(f"upper bound {b} rejected by summand domain (b+1 not in U)")


def partial_right(f: Summand, a, b, n: int) -> complex:
    """The n-th approximant of the right fractional sum.

    Exact up to rounding: polynomial part through poly_frac_sum plus the
    termwise correction sum_{v=1}^{n} (f(v+a-1) - f(v+b)).
    """
    a, b = complex(a), complex(b)
    _check_bounds(f, a, b)
    if f.degree == NEG_INF:
        poly_part = 0j
    else:
        poly_part = poly_frac_sum(_newton_shifted(f, n, int(f.degree)), a, b)
    v = np.arange(1, n + 1, dtype=complex)
    corr = np.sum(_evaluate(f, v + (a - 1)) - _evaluate(f, v + b))
    return poly_part + complex(corr)


def partial_left(f: Summand, a, b, n: int) -> complex:
    """The n-th approximant of the left fractional sum (n a negative integer).

    The correction sum over v = 1..n with n < 0 is the usual negative-length
    convention: -sum_{v=n+1}^{0}.
    """
    if n >= 0:
        raise DomainError("partial_left expects a negative n")
    a, b = complex(a), complex(b)
    _check_bounds(f, a, b)
    if f.degree == NEG_INF:
        poly_part = 0j
    else:
        poly_part = poly_frac_sum(_newton_shifted(f, n, int(f.degree)), a, b)
    v = np.arange(n + 1, 1, dtype=complex)
    corr = -np.sum(_evaluate(f, v + (a - 1)) - _evaluate(f, v + b))
    return poly_part + complex(corr)


def negative_length_sum(f: Summand, a, b) -> complex:
    """sum_{v=a}^{b} f(v) for b - a a negative integer: -sum_{v=b+1}^{a-1} f(v).

    The empty case b = a - 1 gives 0.  This is the unique extension compatible
    with continued summation, and it is exact and finite.
    """
    a, b = complex(a), complex(b)
    d = b - a
    if abs(d.imag) > _INT_TOL or abs(d.real - round(d.real)) > _INT_TOL or round(d.real) > -1:
        raise DomainError(f"negative_length_sum needs b - a in {{-1, -2, ...}}, got {d}")
    count = int(-round(d.real)) - 1
    if count == 0:
        return 0j
    pts = b + 1 + np.arange(count, dtype=complex)
    return -complex(np.sum(_evaluate(f, pts)))


def richardson_extrapolate(samples: Sequence, order: int):
    """Extrapolate samples (n, v) to n = inf by a degree-`order` polynomial in 1/n.

    Uses the last order+1 samples; returns (value, err) where err is the
    difference between the final extrapolant and the next-lower-order one.
    """
    if order < 0:
        raise DomainError("order must be >= 0")
    if len(samples) < order + 1:
        raise DomainError(f"need at least {order + 1} samples, got {len(samples)}")
    tail = list(samples)[-(order + 1):]
    ns = [s[0] for s in tail]
    if any(n2 <= n1 for n1, n2 in zip(ns, ns[1:])):
        raise DomainError("samples must be on a strictly increasing n-schedule")
    hs = [1.0 / n for n in ns]
    vs = [complex(s[1]) for s in tail]
    if order == 0:
        prev = complex(samples[-2][1]) if len(samples) >= 2 else vs[-1]
        return vs[-1], abs(vs[-1] - prev)
    tableau = [vs]
    for j in range(1, order + 1):
        row = []
        for i in range(j, order + 1):
            hi, hij = hs[i], hs[i - j]
            row.append((hi * tableau[j - 1][i - j] - hij * tableau[j - 1][i - j + 1]) / (hi - hij))
        tableau.append(row)
    value = tableau[-1][-1]
    return value, abs(value - tableau[-2][-1])


def extrapolate_with_exponents(samples: Sequence, exponents: Sequence) -> complex:
    """Limit of v(n) = S + sum_k c_k n^(e_k) ln^(p_k) n with known error terms.

    Each entry of ``exponents`` is either a complex power e (term n^e) or a
    pair (e, p) for n^e * ln(n)^p.  Least-squares fit over the supplied
    samples (needs len(exponents) + 1 of them); the constant term S is
    returned.  This generalizes Richardson extrapolation to the non-integer,
    complex, and logarithm-carrying error expansions power summands produce.
    """
    if len(samples) < len(exponents) + 1:
        raise DomainError("need more samples than exponents")
    ns = np.array([s[0] for s in samples], dtype=float)
    vs = np.array([complex(s[1]) for s in samples], dtype=complex)
    logn = np.log(ns)
    cols = [np.ones_like(ns, dtype=complex)]
    for e in exponents:
        power, logp = e if isinstance(e, tuple) else (e, 0)
        cols.append(np.exp(complex(power) * logn.astype(complex)) * logn ** logp)
    mat = np.stack(cols, axis=1)
    scale = np.abs(mat).max(axis=0)
    sol, *_ = np.linalg.lstsq(mat / scale, vs, rcond=None)
    return complex(sol[0] / scale[0])


def _schedule(cfg: EngineConfig, degree) -> list:
    n0 = cfg.n_start
    if degree != NEG_INF:
        n0 = max(n0, int(degree) + 2)
    out = [n0]
    while True:
        nxt = max(out[-1] + 1, int(round(out[-1] * cfg.growth)))
        if nxt > cfg.n_max:
            break
        out.append(nxt)
    return out


def _near_negative_integer(d: complex):
    if abs(d.imag) > _INT_TOL:
        return None
    r = round(d.real)
    if r <= -1 and abs(d.real - r) <= _INT_TOL:
        return int(r)
    return None


def frac_sum_right(f: Summand, a, b, cfg: EngineConfig = None) -> FracSumResult:
    """Right fractional sum of f from a to b.

    The limit is evaluated along a geometric n-schedule with Richardson
    acceleration.  Degenerate integer-negative lengths short-circuit to the
    exact finite convention; vanishing summands whose correction terms decay
    geometrically are summed directly until a running tail bound drops below
    cfg.direct_series_tail_tol.  A non-convergent run returns its best
    extrapolant with converged=False rather than raising.
    """
    cfg = cfg or EngineConfig()
    a, b = complex(a), complex(b)
    _check_bounds(f, a, b)
    if _near_negative_integer(b - a) is not None:
        value = negative_length_sum(f, a, b)
        return FracSumResult(value, 0.0, 0, True, ((0, value),))

    order = cfg.richardson_order
    schedule = _schedule(cfg, f.degree)
    samples = []
    corr = 0j
    prev_n = 0
    prev_extrap = None
    best = None  # (err, value, n)
    watch_geometric = f.degree == NEG_INF

    for n in schedule:
        v = np.arange(prev_n + 1, n + 1, dtype=complex)
        block = _evaluate(f, v + (a - 1)) - _evaluate(f, v + b)
        corr += complex(np.sum(block))
        prev_n = n

        if watch_geometric and block.size >= 8:
            mags = np.abs(block)
            if mags[-1] == 0.0 and np.all(mags[-4:] == 0.0):
                return FracSumResult(corr, 0.0, n, True, tuple(samples) + ((n, corr),))
            if np.all(mags > 0.0):
                ratios = mags[1:] / mags[:-1]
                r = float(ratios.max())
                if r < 0.9:
                    bound = float(mags[-1]) * r / (1.0 - r)
                    if bound < cfg.direct_series_tail_tol:
                        return FracSumResult(corr, bound, n, True, tuple(samples) + ((n, corr),))
                elif n >= 256 and float(np.median(ratios)) > 0.97:
                    watch_geometric = False  # power-law decay; rely on extrapolation

        if f.degree == NEG_INF:
            value_n = corr
        else:
            value_n = corr + poly_frac_sum(_newton_shifted(f, n, int(f.degree)), a, b)
        samples.append((n, value_n))

        # Raw agreement: summands the interpolation reproduces (near-)exactly
        # have constant approximants, and pushing n higher only amplifies the
        # |f(n)| * eps cancellation noise.  Stop as soon as two consecutive
        # doublings agree.
        if len(samples) >= 3:
            d1 = abs(samples[-1][1] - samples[-2][1])
            d2 = abs(samples[-2][1] - samples[-3][1])
            scale = max(1.0, abs(value_n))
            if d1 <= cfg.tol * scale and d2 <= 4.0 * cfg.tol * scale:
                return FracSumResult(value_n, d1, n, True, tuple(samples))

        if len(samples) >= order + 1:
            if cfg.error_exponents is not None:
                k = len(cfg.error_exponents)
                extrap = extrapolate_with_exponents(samples[-(k + 1):], cfg.error_exponents)
            else:
                extrap, _ = richardson_extrapolate(samples, order)
            if prev_extrap is not None:
                err = abs(extrap - prev_extrap)
                if best is None or err < best[0]:
                    best = (err, extrap, n)
                if err <= cfg.tol * max(1.0, abs(extrap)):
                    return FracSumResult(extrap, err, n, True, tuple(samples))
            prev_extrap = extrap

    if best is not None:
        err, value, n = best
        return FracSumResult(value, err, n, False, tuple(samples))
    # schedule too short to extrapolate twice: report the raw tail
    n, value = samples[-1]
    err = abs(samples[-1][1] - samples[-2][1]) if len(samples) > 1 else math.inf
    return FracSumResult(value, err, n, False, tuple(samples))


def frac_sum_left(f: Summand, a, b, cfg: EngineConfig = None, direct: bool = False) -> FracSumResult:
    """Left fractional sum of f from a to b (the n -> -inf limit).

    By default this reduces to a right sum through the mirror law
    sum_left_{v=a}^{b} f(v) = sum_right_{v=-b}^{-a} f(-v); with direct=True the
    n -> -inf limit is evaluated literally (slower, for cross-checking).
    """
    cfg = cfg or EngineConfig()
    if not direct:
        return frac_sum_right(f.mirrored(), -complex(b), -complex(a), cfg)

    a, b = complex(a), complex(b)
    _check_bounds(f, a, b)
    if _near_negative_integer(b - a) is not None:
        value = negative_length_sum(f, a, b)
        return FracSumResult(value, 0.0, 0, True, ((0, value),))
    order = cfg.richardson_order
    samples = []
    corr = 0j
    prev_n = 0
    prev_extrap = None
    best = None
    for n in _schedule(cfg, f.degree):
        v = np.arange(-n + 1, -prev_n + 1, dtype=complex)
        block = _evaluate(f, v + (a - 1)) - _evaluate(f, v + b)
        corr -= complex(np.sum(block))
        prev_n = n
        if f.degree == NEG_INF:
            value_n = corr
        else:
            value_n = corr + poly_frac_sum(_newton_shifted(f, -n, int(f.degree)), a, b)
        samples.append((n, value_n))
        if len(samples) >= order + 1:
            extrap, _ = richardson_extrapolate(samples, order)
            if prev_extrap is not None:
                err = abs(extrap - prev_extrap)
                if best is None or err < best[0]:
                    best = (err, extrap, n)
                if err <= cfg.tol * max(1.0, abs(extrap)):
                    return FracSumResult(extrap, err, -n, True, tuple(samples))
            prev_extrap = extrap
    if best is not None:
        err, value, n = best
        return FracSumResult(value, err, -n, False, tuple(samples))
    n, value = samples[-1]
    return FracSumResult(value, math.inf, -n, False, tuple(samples))


def frac_product(log_f: Summand, a, b, cfg: EngineConfig = None) -> FracSumResult:
    """Fractional product exp(sum_{v=a}^{b} log_f(v)).

    ``log_f`` is the log-summand (e.g. v -> log v for the product of v), with
    its own declared degree.  Branch choices inside log_f shift the sum by
    multiples of 2*pi*i which the final exponentiation cancels; the
    exponential is applied only after the sum has converged.
    """
    res = frac_sum_right(log_f, a, b, cfg)
    value = np.exp(res.value)
    samples = tuple((n, np.exp(v)) for n, v in res.samples) if res.samples else None
    return FracSumResult(
        value=value,
        err_estimate=abs(value) * res.err_estimate,
        n_used=res.n_used,
        converged=res.converged,
        samples=samples,
    )


def delta_of_sum(f: Summand, a, x, cfg: EngineConfig = None) -> complex:
    """S(x) - S(x-1) for S(t) = right fractional sum of f from a to t.

    The summation formula for approximate polynomials promises this equals
    f(x); property suites assert exactly that.
    """
    hi = frac_sum_right(f, a, x, cfg)
    lo = frac_sum_right(f, a, complex(x) - 1, cfg)
    return hi.value - lo.value
