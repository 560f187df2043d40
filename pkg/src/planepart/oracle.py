"""Deterministic numeric and exact-arithmetic services.

Generating-function evaluation for the multiset classes behind plane
partitions, size expectation/variance, tuning of the Boltzmann parameter,
exact big-integer coefficient tables, and the analytic rate/cost constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .core import IndexDomain, check_boltzmann_param

# Apery's constant sum k^-3; derived once by Euler-Maclaurin summation and
# pinned here (the derivation is replayed in the test suite).
ZETA3 = 1.2020569031595942854

_CHUNK = 1 << 16


@dataclass(frozen=True)
class OracleConfig:
    """Numeric policy for the infinite-sum evaluations."""

    truncation_tolerance: float = 1e-15
    term_cap: int = 1 << 31
    zeta3: float = ZETA3

    def __post_init__(self):
        if not (0.0 < self.truncation_tolerance <= 1e-6):
            raise ValueError("truncation tolerance must lie in (0, 1e-6]")


DEFAULT_CONFIG = OracleConfig()


@dataclass(frozen=True)
class CountTable:
    """Exact coefficient sequence c_0..c_N of a counting generating function."""

    kind: str  # "unconstrained" | "boxed" | "skew"
    coefficients: tuple
    descriptor: object = None

    def __post_init__(self):
        if self.kind not in ("unconstrained", "boxed", "skew"):
            raise ValueError(f"unknown count table kind {self.kind!r}")
        if not self.coefficients or self.coefficients[0] != 1:
            raise ValueError("coefficient 0 must be 1 (empty object)")
        if any(c < 0 for c in self.coefficients):
            raise ValueError("coefficients must be non-negative")

    def __getitem__(self, n: int) -> int:
        return self.coefficients[n]

    def __len__(self) -> int:
        return len(self.coefficients)


def atom_gf(x: float) -> float:
    """x / (1 - x)^2, the series counting single weighted cells."""
    x = check_boltzmann_param(x)
    return x / (1.0 - x) ** 2


def _chunked_sum(term_fn, r_max: int) -> float:
    """Sum term_fn over r = 1..r_max using vectorised chunks."""
    total = 0.0
    for start in range(1, r_max + 1, _CHUNK):
        r = np.arange(start, min(start + _CHUNK, r_max + 1), dtype=np.float64)
        total += float(term_fn(r).sum())
    return total


def _require_terms(r_max: float, config: OracleConfig, what: str) -> int:
    if r_max > config.term_cap:
        raise ValueError(
            f"{what}: {r_max:.3e} terms needed, beyond the cap {config.term_cap};"
            " the parameter is too close to 1"
        )
    return int(r_max)


def log_multiset_gf(x: float, config: OracleConfig = DEFAULT_CONFIG) -> float:
    """log M(x) = sum_{j>=1} A(x^j)/j with A(x) = x/(1-x)^2.

    Truncated at J such that the residual tail, bounded by 4 x^J/(1-x) once
    x^J <= 1/2, is below the configured tolerance.
    """
    x = check_boltzmann_param(x)
    lnx = math.log(x)
    tol = config.truncation_tolerance
    j_half = math.log(0.5) / lnx
    j_tol = math.log(tol * (1.0 - x) / 4.0) / lnx
    J = _require_terms(max(j_half, j_tol) + 1.0, config, "log_multiset_gf")

    def term(j):
        xj = np.exp(j * lnx)
        return xj / ((1.0 - xj) ** 2 * j)

    return _chunked_sum(term, J)


def multiset_gf(x: float, config: OracleConfig = DEFAULT_CONFIG) -> float:
    """M(x) = exp(sum_j A(x^j)/j), the plane-partition generating function."""
    return math.exp(log_multiset_gf(x, config))


def _stop_index(x: float, power: int, extra: float, config: OracleConfig, what: str) -> int:
    """Smallest R with the residual tail of sum r^power x^r/(1-x^r)^k below tol.

    Uses (R+1+s)^p <= 2^(p-1) ((R+1)^p + s^p) and sum s^p x^s <= p! / (1-x)^(p+1),
    with 1/(1-x^r)^k <= 2^k once x^R <= 1/2; ``extra`` is that 2^k factor.
    """
    lnx = math.log(x)
    tol = config.truncation_tolerance
    one_mx = 1.0 - x
    r_half = math.log(0.5) / lnx
    fact = math.factorial(power)
    coef = extra * 2.0 ** (power - 1)
    R = max(r_half, 1.0)
    for _ in range(64):
        bulk = coef * ((R + 1.0) ** power / one_mx + fact / one_mx ** (power + 1))
        if bulk <= 0:
            break
        need = math.log(tol / bulk) / lnx - 1.0
        new_R = max(r_half, need)
        if new_R <= R + 1.0:
            R = max(R, new_R)
            break
        R = new_R
    return _require_terms(R + 1.0, config, what)


def expected_size(x: float, config: OracleConfig = DEFAULT_CONFIG) -> float:
    """Mean output size of the free sampler: sum_r r^2 x^r / (1 - x^r)."""
    x = check_boltzmann_param(x)
    R = _stop_index(x, 2, 2.0, config, "expected_size")
    lnx = math.log(x)

    def term(r):
        xr = np.exp(r * lnx)
        return r * r * xr / (1.0 - xr)

    return _chunked_sum(term, R)


def variance_size(x: float, config: OracleConfig = DEFAULT_CONFIG) -> float:
    """Size variance of the free sampler: sum_r r^3 x^r / (1 - x^r)^2."""
    x = check_boltzmann_param(x)
    R = _stop_index(x, 3, 4.0, config, "variance_size")
    lnx = math.log(x)

    def term(r):
        xr = np.exp(r * lnx)
        return r ** 3 * xr / (1.0 - xr) ** 2

    return _chunked_sum(term, R)


def tune_unconstrained(n: int, config: OracleConfig = DEFAULT_CONFIG) -> float:
    """Parameter 1 - (2 zeta(3)/n)^(1/3) matching mean size n asymptotically.

    Raises for n <= 2, where the expression is not a valid parameter; callers
    handle such sizes by direct enumeration.
    """
    if n < 1:
        raise ValueError("target size must be >= 1")
    x = 1.0 - (2.0 * config.zeta3 / n) ** (1.0 / 3.0)
    if x <= 0.0:
        raise ValueError(f"no positive tuning parameter for n = {n} (needs n >= 3)")
    return x


def tune_boxed(a: int, b: int, n: int) -> float:
    """Parameter 1 - ab/n for the a x b boxed class; requires n > ab."""
    if a < 1 or b < 1:
        raise ValueError("box dimensions must be >= 1")
    if n <= a * b:
        raise ValueError(f"target size {n} must exceed the cell count {a * b}")
    return 1.0 - (a * b) / n


def domain_mean_size(dom: IndexDomain, x: float) -> float:
    """Mean size over the domain: sum over cells of h x^h / (1 - x^h)."""
    x = check_boltzmann_param(x)
    hooks = dom.hooks[dom.mask]
    vals, counts = np.unique(hooks, return_counts=True)
    xh = np.exp(vals.astype(np.float64) * math.log(x))
    return float((counts * vals * xh / (1.0 - xh)).sum())


def domain_variance_size(dom: IndexDomain, x: float) -> float:
    """Size variance over the domain: sum of h^2 x^h / (1 - x^h)^2 per cell."""
    x = check_boltzmann_param(x)
    hooks = dom.hooks[dom.mask]
    vals, counts = np.unique(hooks, return_counts=True)
    xh = np.exp(vals.astype(np.float64) * math.log(x))
    return float((counts * vals * vals * xh / (1.0 - xh) ** 2).sum())


def solve_target_equation(dom: IndexDomain, n: int) -> float:
    """Parameter x in (0, 1) whose domain mean size is within 0.5 of n.

    The mean is continuous and strictly increasing from 0 to infinity, so
    bisection converges; used when n is not far above the cell count and the
    asymptotic tuning 1 - |D|/n is inaccurate.
    """
    if n < 1:
        raise ValueError("target size must be >= 1")
    lo = 0.0
    hi = 1.0 - min(0.5, dom.ncells / (4.0 * n))
    while domain_mean_size(dom, hi) < n:
        hi = 0.5 * (1.0 + hi)
        if 1.0 - hi < 1e-14:
            raise ValueError("target size too large to tune within float range")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if not 0.0 < mid < 1.0:
            break
        val = domain_mean_size(dom, mid)
        if abs(val - n) <= 0.5:
            return mid
        if val < n:
            lo = mid
        else:
            hi = mid
    raise ArithmeticError("bisection failed to localise the tuning parameter")


def _sigma2(N: int) -> list:
    """sigma_2(k) = sum of squared divisors of k, for k = 0..N."""
    sig = [0] * (N + 1)
    for d in range(1, N + 1):
        dd = d * d
        for k in range(d, N + 1, d):
            sig[k] += dd
    return sig


def exact_counts(N: int) -> CountTable:
    """Plane-partition counts P_0..P_N, exact.

    Computed through the divisor-power recurrence n P_n = sum_k sigma_2(k)
    P_{n-k}, the logarithmic derivative of the Euler-type product
    prod_r (1 - x^r)^(-r).
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    sig = _sigma2(N)
    P = [0] * (N + 1)
    P[0] = 1
    for n in range(1, N + 1):
        acc = sum(sig[k] * P[n - k] for k in range(1, n + 1))
        q, r = divmod(acc, n)
        if r:
            raise ArithmeticError("divisor recurrence produced a non-integer")
        P[n] = q
    return CountTable("unconstrained", tuple(P))


def _geometric_product_counts(hooks, N: int) -> tuple:
    """Coefficients 0..N of prod over hooks h of 1/(1 - x^h), exact."""
    c = [0] * (N + 1)
    c[0] = 1
    for h in hooks:
        for i in range(h, N + 1):
            c[i] += c[i - h]
    return tuple(c)


def boxed_counts(a: int, b: int, N: int) -> CountTable:
    """Counts of a x b boxed plane partitions by size, exact, up to N."""
    if a < 1 or b < 1:
        raise ValueError("box dimensions must be >= 1")
    if N < 0:
        raise ValueError("N must be >= 0")
    hooks = sorted(i + j + 1 for i in range(a) for j in range(b))
    return CountTable("boxed", _geometric_product_counts(hooks, N), (a, b))


def skew_counts(dom: IndexDomain, N: int) -> CountTable:
    """Counts of skew plane partitions on the domain by size, exact, up to N."""
    if N < 0:
        raise ValueError("N must be >= 0")
    hooks = sorted(int(h) for h in dom.hooks[dom.mask])
    return CountTable("skew", _geometric_product_counts(hooks, N), dom)


# Rate constants for the boxed rejection samplers. phi governs the exact-size
# acceptance probability (~ phi(ab)/n) and Phi the window acceptance
# probability limit; alpha = ab is validated <= 200 upstream so the Gamma
# evaluation stays well inside its accurate range.
_ALPHA_CAP = 200.0


def peak_rate_constant(alpha: float) -> float:
    """phi(alpha) = (alpha/e)^alpha / Gamma(alpha)."""
    if not (0.0 < alpha <= _ALPHA_CAP):
        raise ValueError(f"alpha must lie in (0, {_ALPHA_CAP:g}]")
    return math.exp(alpha * (math.log(alpha) - 1.0) - math.lgamma(alpha))


def window_rate_constant(alpha: float, epsilon: float) -> float:
    """Phi(alpha, eps) = phi(alpha) * integral_{-eps}^{eps} (1+s)^(alpha-1) e^(-alpha s) ds."""
    if not (0.0 < epsilon < 1.0):
        raise ValueError("epsilon must lie strictly in (0, 1)")
    c = peak_rate_constant(alpha)

    def integrand(s):
        return (1.0 + s) ** (alpha - 1.0) * math.exp(-alpha * s)

    val, err = integrate.quad(integrand, -epsilon, epsilon, epsabs=1e-12, epsrel=1e-12)
    if err > 1e-9:
        raise ArithmeticError(f"quadrature error estimate too large: {err:.2e}")
    return c * val


def sweep_cost(w: int, h: int) -> int:
    """Total cell updates of the diagonal sweep over a w x h rectangle.

    Direct sum over up-right diagonals: sum_{i=1}^{min(w,h)} i (w - i + h - i + 1).
    """
    if w < 1 or h < 1:
        raise ValueError("rectangle dimensions must be >= 1")
    return sum(i * (w - i + h - i + 1) for i in range(1, min(w, h) + 1))


def sweep_cost_closed(w: int, h: int) -> int:
    """Closed form of sweep_cost: L l (l+1)/2 - (l^3 - l)/6 with L=max, l=min."""
    if w < 1 or h < 1:
        raise ValueError("rectangle dimensions must be >= 1")
    L, l = max(w, h), min(w, h)
    return L * l * (l + 1) // 2 - (l ** 3 - l) // 6


def derive_zeta3(terms: int = 1000) -> float:
    """Recompute zeta(3) by direct summation plus Euler-Maclaurin tail."""
    s = math.fsum(k ** -3 for k in range(1, terms))
    N = float(terms)
    tail = 0.5 * N ** -2 + 0.5 * N ** -3 + 0.25 * N ** -4 - N ** -6 / 12.0
    return s + tail
