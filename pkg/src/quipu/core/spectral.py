"""High-precision spectral radii and limit radii.

Characteristic polynomials of graphs are real-rooted, so the number of sign
variations in the coefficients of ``φ(c + y)`` equals the number of roots
above ``c`` exactly (Descartes' rule is sharp for real-rooted polynomials).
Every bracket used here is certified by that count before it is refined.
"""
# Standard Library Imports
import logging

from dataclasses import dataclass
from typing import Any

# Quipu
import numpy as np

from mpmath import mp, mpf
from quipu.core.charpoly import charpoly_graph, charpoly_tree, eval_poly
from quipu.core.transfer import make_params
from quipu.core.validators import MinValueValidator
from quipu.exceptions import NoSignChangeError, NumericalError, ToleranceUnreachableError
from quipu.globals import get_setting
from quipu.utils import LimitKind, as_mpf

logger = logging.getLogger("quipu.spectral")

#: Half-width of the first bracket around the power-iteration estimate
LOCALIZATION_WIDTH = 1e-3

MAX_ITERATIONS = 20000


@dataclass(frozen=True)
class SpectralResult:
    value: Any
    lo: Any
    hi: Any
    residual: Any
    iterations: int

    @property
    def width(self):
        return self.hi - self.lo


def lambda0():
    """√(2+√5), the limit of minimal radii for fixed e ≥ 6"""
    return mp.sqrt(2 + mp.sqrt(5))


def radius_cap():
    """3√2/2, an upper bound for every minimal radius with e ≥ 6"""
    return 3 * mp.sqrt(2) / 2


def resolve_tol(tol=None):
    """``tol`` (or the configured TOL) as a scalar, refusing tolerances finer
    than the working precision resolves.
    """
    tol = as_mpf(get_setting("TOL") if tol is None else tol)
    floor = mpf(10) ** (-(mp.dps - 20))
    if tol <= 0 or tol < floor:
        raise ToleranceUnreachableError(
            f"tolerance {mp.nstr(tol, 5)} is below 1e-{mp.dps - 20} at {mp.dps} digits"
        )
    return tol


def is_tie(a, b, tie_tol=None):
    tie_tol = as_mpf(get_setting("TIE_TOL") if tie_tol is None else tie_tol)
    return abs(as_mpf(a) - as_mpf(b)) < tie_tol


def sign_variations(coefficients):
    signs = [c > 0 for c in coefficients if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def roots_above(poly, lam):
    """Number of roots of the real-rooted ``poly`` strictly above ``lam``"""
    return sign_variations(poly.taylor_shift(lam))


def _root_bound(poly):
    """Cauchy bound: every root has modulus below it"""
    leading = abs(poly.leading)
    return 1 + max((abs(c) for c in poly.coefficients[:-1]), default=0) / mpf(leading)


def kth_largest_root(poly, j, tol=None):
    """The ``j``-th largest root (with multiplicity) by bisection on the root
    count. Works for repeated roots, where sign-change bisection cannot.
    """
    tol = resolve_tol(tol)
    if not 1 <= j <= poly.degree:
        raise NumericalError(f"polynomial of degree {poly.degree} has no root number {j}")

    bound = _root_bound(poly)
    lo, hi = -bound, bound
    iterations = 0
    while hi - lo > tol:
        iterations += 1
        mid = (lo + hi) / 2
        if roots_above(poly, mid) >= j:
            lo = mid
        else:
            hi = mid
    value = (lo + hi) / 2
    return SpectralResult(value, lo, hi, abs(eval_poly(poly, value)), iterations)


def _perron_estimate(t, max_iter=2000):
    """Double-precision power iteration on A + I.

    Returns the Rayleigh estimate and Collatz-Wielandt bounds of ρ(A). The
    shift makes the Perron root strictly dominant on bipartite graphs.
    """
    matrix = np.eye(t.n)
    for u, v in t.edges():
        matrix[u, v] = matrix[v, u] = 1.0

    x = np.ones(t.n)
    low, high = 0.0, float(t.n)
    for _ in range(max_iter):
        y = matrix @ x
        ratios = y / x
        low, high = ratios.min(), ratios.max()
        x = y / np.linalg.norm(y)
        if high - low < LOCALIZATION_WIDTH:
            break

    rayleigh = float(x @ (matrix @ x) / (x @ x))
    return rayleigh - 1, low - 1, high - 1


def _polish(poly, lo, hi, tol):
    """Safeguarded Newton inside a bracket with φ(lo) < 0 < φ(hi) holding a
    single simple root.
    """
    slope_poly = poly.derivative()
    iterations = 0
    x = (lo + hi) / 2
    while hi - lo > tol:
        iterations += 1
        if iterations > MAX_ITERATIONS:
            raise NumericalError(f"root polish did not converge in {MAX_ITERATIONS} steps")

        fx = eval_poly(poly, x)
        if fx == 0:
            return x, x, x, iterations
        if fx < 0:
            lo = x
        else:
            hi = x

        slope = eval_poly(slope_poly, x)
        candidate = x - fx / slope if slope != 0 else None
        if candidate is None or not lo < candidate < hi:
            x = (lo + hi) / 2
        elif abs(candidate - x) < tol / 4:
            for point in (candidate - tol / 4, candidate + tol / 4):
                if lo < point < hi:
                    if eval_poly(poly, point) < 0:
                        lo = point
                    else:
                        hi = point
            x = (lo + hi) / 2
        else:
            x = candidate
    return (lo + hi) / 2, lo, hi, iterations


def largest_simple_root(poly, estimate, tol, spread=LOCALIZATION_WIDTH):
    """Largest root of a real-rooted polynomial whose largest root is simple,
    starting from a floating-point ``estimate``.
    """
    estimate = mpf(estimate)
    width = mpf(spread)

    hi = estimate + width
    while roots_above(poly, hi) > 0:
        width *= 2
        hi = estimate + width
        logger.debug(f"widened upper bracket end to {mp.nstr(hi, 10)}")

    width = mpf(spread)
    lo = estimate - width
    count = roots_above(poly, lo)
    while count == 0:
        width *= 2
        lo = estimate - width
        count = roots_above(poly, lo)
        logger.debug(f"widened lower bracket end to {mp.nstr(lo, 10)}")

    separations = 0
    while count > 1:
        # the second root sits above lo; split until only the largest remains
        separations += 1
        if separations > MAX_ITERATIONS:
            raise NoSignChangeError("could not isolate the largest root")
        mid = (lo + hi) / 2
        count_mid = roots_above(poly, mid)
        if count_mid == 0:
            hi = mid
        else:
            lo, count = mid, count_mid

    value, lo, hi, iterations = _polish(poly, lo, hi, tol)
    return value, lo, hi, iterations + separations


def rho_tree(t, tol=None, poly=None):
    """Spectral radius of a tree, enclosed to width ``tol``"""
    tol = resolve_tol(tol)
    poly = charpoly_tree(t) if poly is None else poly
    if t.n == 1:
        zero = mpf(0)
        return SpectralResult(zero, -tol / 2, tol / 2, zero, 0)

    estimate, low, high = _perron_estimate(t)
    spread = max(LOCALIZATION_WIDTH, high - low)

    # coefficient growth costs roughly half a digit per vertex near λ = 2
    with mp.workdps(mp.dps + t.n // 2 + 10):
        value, lo, hi, iterations = largest_simple_root(poly, estimate, tol, spread)
        residual = abs(eval_poly(poly, value))

    logger.debug(f"ρ of {t.n}-vertex tree in {iterations} steps: {mp.nstr(value, 20)}")
    return SpectralResult(+value, +lo, +hi, +residual, iterations)


def rho_forest(trees, tol=None):
    """ρ of a disjoint union: the largest component radius"""
    return max((rho_tree(t, tol) for t in trees), key=lambda result: result.value)


def lambda2_tree(t, tol=None):
    """Second largest adjacency eigenvalue of a tree"""
    poly = charpoly_tree(t)
    with mp.workdps(mp.dps + t.n // 2 + 10):
        result = kth_largest_root(poly, 2, tol)
    return SpectralResult(+result.value, +result.lo, +result.hi, +result.residual, result.iterations)


def rho_graph(graph, tol=None):
    """ρ of a small connected graph through its oracle polynomial"""
    poly = charpoly_graph(graph)
    with mp.workdps(mp.dps + poly.degree // 2 + 10):
        result = kth_largest_root(poly, 1, tol)
    return SpectralResult(+result.value, +result.lo, +result.hi, +result.residual, result.iterations)


def limit_rhs(kind, lam, k):
    """Right-hand side of the defining equation ``d₂ = rhs`` of a limit radius"""
    params = make_params(lam)
    x1 = params.x1
    if kind is LimitKind.RhoK:
        return 2 * x1 ** k / (1 - x1 ** (k + 1))
    if kind is LimitKind.RhoPrimeK:
        return mp.sqrt(params.d1 * x1) * x1 ** k
    return x1 ** k


def _limit_gap(kind, lam, k):
    params = make_params(lam)
    return params.d2 - limit_rhs(kind, params, k)


def solve_limit_equation(kind, k, tol=None, widen=True):
    """The unique root above λ₀ of ``d₂ = rhs_k(λ)``, by bisection from
    (λ₀, 3√2/2]. When the cap has no sign change the upper end is doubled
    away from λ₀, unless ``widen`` is false.
    """
    MinValueValidator(1, "k")(k)
    tol = resolve_tol(tol)

    lo, hi = lambda0(), radius_cap()
    while _limit_gap(kind, hi, k) <= 0:
        if not widen:
            raise NoSignChangeError(
                f"{kind.value} with k={k} has no root below 3√2/2; widen the bracket"
            )
        hi = lo + 2 * (hi - lo)
        logger.warning(f"{kind.value} k={k}: bracket widened past 3√2/2 to {mp.nstr(hi, 10)}")

    iterations = 0
    while hi - lo > tol:
        iterations += 1
        mid = (lo + hi) / 2
        if _limit_gap(kind, mid, k) < 0:
            lo = mid
        else:
            hi = mid

    value = (lo + hi) / 2
    return SpectralResult(value, lo, hi, abs(_limit_gap(kind, value, k)), iterations)
