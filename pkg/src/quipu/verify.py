"""Numerical certificates for minimizers and the limit-radius lemmas.

Every check is evaluated at a solved radius, so an inequality ``x <= y`` is
accepted when ``y - x`` is no more negative than ten times the width of the
root enclosure.
"""
# Standard Library Imports
import logging

from dataclasses import dataclass
from typing import Any, Optional, Tuple

# Quipu
from mpmath import mp, mpf
from quipu.core.graph import KVector, from_kvector, two_pendant_tree
from quipu.core.spectral import lambda0, resolve_tol, rho_tree, solve_limit_equation
from quipu.core.transfer import make_params, phi_kvector_at, prefix_pairs, suffix_pairs
from quipu.core.validators import MinValueValidator, StrictlyIncreasingValidator
from quipu.exceptions import InvalidDataError
from quipu.search.families import family_min
from quipu.utils import ConvergenceKind, FamilyId, LimitKind, as_mpf

logger = logging.getLogger("quipu.verify")


@dataclass(frozen=True)
class CheckRow:
    index: int
    check: str
    satisfied: bool
    slack: Any


@dataclass(frozen=True)
class CertificateReport:
    n: int
    e: int
    kv: KVector
    rho: Any
    s: Any
    k_bar: Any
    d2_at_rho: Any
    lower: Any
    upper: Any
    c_bar: Any
    checks: Tuple[CheckRow, ...]
    tolerance: Any

    @property
    def passed(self):
        return all(row.satisfied for row in self.checks)

    @property
    def failures(self):
        return [row for row in self.checks if not row.satisfied]


def _require_p_family(kv):
    if kv.family is not FamilyId.FamP:
        raise InvalidDataError(f"{kv} is not a P-family vector")


def certify_minimizer(n, e, kv, tol=None):
    """Check the d₂ bounds every P-family minimizer satisfies at its radius:

    * (a) ``2x₁ˢ/(1-x₁^{s+1}) <= d₂ <= 2x₁^⌊s⌋/(1-x₁^{⌊s⌋+1})``
    * (b) ``c̄x₁^{kᵢ+1} <= d₂ <= c̄x₁^{kᵢ-1}`` for the middle parts
    * (c) ``√(c̄d₁)x₁^{kⱼ+1} <= d₂ <= √(c̄d₁)x₁^{kⱼ}`` for the two end parts
    """
    _require_p_family(kv)
    if (kv.n, kv.e) != (n, e):
        raise InvalidDataError(f"{kv} has n={kv.n}, e={kv.e}, not n={n}, e={e}")

    result = rho_tree(from_kvector(kv), tol)
    tolerance = 10 * max(result.width, resolve_tol(tol))
    params = make_params(result.value)
    x1, d1, d2, lam = params.x1, params.d1, params.d2, params.lam

    r = kv.r
    s = mpf(n - 2 * e + 2) / r
    floor_s = int(mp.floor(s))
    lower = 2 * x1 ** s / (1 - x1 ** (s + 1))
    upper = 2 * x1 ** floor_s / (1 - x1 ** (floor_s + 1))
    c_bar = (lam + mp.sqrt(lam * lam + 4 * d1 * d2)) / 2

    bounds = [(0, "a", lower, upper)]
    for index, k in enumerate(kv.ks, start=1):
        if index in (1, r):
            scale = mp.sqrt(c_bar * d1)
            bounds.append((index, "c", scale * x1 ** (k + 1), scale * x1 ** k))
        else:
            bounds.append((index, "b", c_bar * x1 ** (k + 1), c_bar * x1 ** (k - 1)))

    checks = []
    for index, name, below, above in bounds:
        for side, slack in (("lower", d2 - below), ("upper", above - d2)):
            checks.append(CheckRow(index, f"{name}-{side}", slack >= -tolerance, slack))

    report = CertificateReport(
        n=n,
        e=e,
        kv=kv,
        rho=result.value,
        s=s,
        k_bar=mpf(sum(kv.ks)) / r,
        d2_at_rho=d2,
        lower=lower,
        upper=upper,
        c_bar=c_bar,
        checks=tuple(checks),
        tolerance=tolerance,
    )
    logger.debug(f"certificate for {kv}: {len(report.failures)} of {len(checks)} checks failed")
    return report


@dataclass(frozen=True)
class PositivityRow:
    side: str
    index: int
    p: Any
    q: Any


def pq_positivity_scan(kv, lam, tol=None):
    """``(p, q)`` of every prefix ``(L_i, v_i)`` and suffix ``(R_j, v_{j-1})``
    at ``lam``. Nonnegative whenever ``lam >= ρ``; below ρ a warning is logged
    and the rows are still returned.
    """
    _require_p_family(kv)
    rho = rho_tree(from_kvector(kv), tol).value
    if as_mpf(lam) < rho:
        logger.warning(f"λ={mp.nstr(as_mpf(lam), 15)} is below ρ={mp.nstr(rho, 15)} of {kv}")

    rows = [PositivityRow("L", i, pq.p, pq.q) for i, pq in enumerate(prefix_pairs(kv, lam))]
    last = kv.r + 1
    rows += [
        PositivityRow("R", last - offset, pq.p, pq.q)
        for offset, pq in enumerate(suffix_pairs(kv, lam))
    ]
    return rows


@dataclass(frozen=True)
class LimitRow:
    size: int
    rho: Any
    difference: Any
    companion: Optional[Any] = None


@dataclass(frozen=True)
class LimitTable:
    kind: ConvergenceKind
    k: int
    limit: Any
    rows: Tuple[LimitRow, ...]

    @property
    def monotone(self):
        """Differences positive and strictly decreasing in the size"""
        differences = [row.difference for row in self.rows]
        return all(d > 0 for d in differences) and all(
            a > b for a, b in zip(differences, differences[1:])
        )


def _convergence_tree(kind, k, size):
    if kind is ConvergenceKind.DoublePrimeIKJ:
        return from_kvector(KVector(FamilyId.FamPDoublePrime, 5, (size, k, size)))
    if kind is ConvergenceKind.PrimeKJ:
        return from_kvector(KVector(FamilyId.FamPPrime, 5, (k, size)))
    return two_pendant_tree(k, size)


_LIMITS = {
    ConvergenceKind.DoublePrimeIKJ: (LimitKind.RhoDoublePrimeK, lambda k: k),
    ConvergenceKind.PrimeKJ: (LimitKind.RhoPrimeK, lambda k: k),
    ConvergenceKind.CorollaryKI: (LimitKind.RhoDoublePrimeK, lambda k: 2 * k + 3),
}


def limit_convergence(kind, k, sizes, tol=None):
    """Radii of a tree sequence against the limit radius it converges to.

    For ``CorollaryKI`` each row also carries the radius of the balanced
    three-leaf tree ``(i, 2k+3, i)``, which equals the row's radius.
    """
    MinValueValidator(1, "k")(k)
    sizes = list(sizes)
    StrictlyIncreasingValidator("sizes")(sizes)

    limit_kind, index = _LIMITS[kind]
    limit = solve_limit_equation(limit_kind, index(k), tol).value

    rows = []
    for size in sizes:
        rho = rho_tree(_convergence_tree(kind, k, size), tol).value
        companion = None
        if kind is ConvergenceKind.CorollaryKI:
            balanced = KVector(FamilyId.FamPDoublePrime, 5, (size, 2 * k + 3, size))
            companion = rho_tree(from_kvector(balanced), tol).value
        rows.append(LimitRow(size, rho, rho - limit, companion))
    return LimitTable(kind, k, limit, tuple(rows))


@dataclass(frozen=True)
class ClosedFormCheck:
    name: str
    lam: Any
    direct: Any
    closed: Any

    @property
    def residual(self):
        return abs(self.direct - self.closed)


def _difference(e, left, right, lam):
    return phi_kvector_at(KVector(FamilyId.FamP, e, left), lam) - phi_kvector_at(
        KVector(FamilyId.FamP, e, right), lam
    )


def closed_form_e7_difference(k, lam):
    """φ(k,k,k) - φ(k,k+1,k-1) for e = 7"""
    p = make_params(lam)
    closed = (
        (p.d2 * p.x1 + 1)
        * (p.lam ** 2 - 1) ** 2
        * (p.d2 ** 2 * p.x2 ** k - p.d1 ** 2 * p.x1 ** k)
        / p.delta ** 2
    )
    direct = _difference(7, (k, k, k), (k, k + 1, k - 1), p)
    return ClosedFormCheck("e7-balanced-vs-shifted", p.lam, direct, closed)


def closed_form_e8_difference(k, lam):
    """φ(k,k+1,k,k) - φ(k,k+1,k+1,k-1) for e = 8"""
    p = make_params(lam)
    u = p.d2 * p.x1 + 1
    closed = (
        u
        * (p.lam ** 2 - 1) ** 2
        * p.x2 ** (2 * k + 1)
        * (
            p.d2 ** 3
            - 2 * p.d1 * p.d2 * p.x1 ** (2 * k + 1)
            - p.d1 ** 3 * p.x1 ** (4 * k + 2)
        )
        / p.delta ** 3
    )
    direct = _difference(8, (k, k + 1, k, k), (k, k + 1, k + 1, k - 1), p)
    return ClosedFormCheck("e8-runner-up", p.lam, direct, closed)


def e8_fourth_place_difference(k, lam):
    """φ(k,k,k+1,k-1) - φ(k,k+1,k,k-1) = d₁d₂λ²(λ²-1)², independent of k"""
    p = make_params(lam)
    closed = p.d1 * p.d2 * p.lam ** 2 * (p.lam ** 2 - 1) ** 2
    direct = _difference(8, (k, k, k + 1, k - 1), (k, k + 1, k, k - 1), p)
    return ClosedFormCheck("e8-fourth-place", p.lam, direct, closed)


def closed_form_double_prime(l, k, lam):
    """φ of the three-leaf tree with parts (l, k, l) in closed form"""
    p = make_params(lam)
    x1, x2, d1, d2 = p.x1, p.x2, p.d1, p.d2
    tail = 2 * l - k + 3
    closed = (
        x2 ** (2 * l - k + 1)
        * (d2 * x2 + x1 ** 2) ** 2
        / p.delta ** 5
        * (
            ((d2 * x2 ** k) ** 2 - 1)
            - 2 * x1 ** tail * (d1 * x1 ** k + d2 * x2 ** k)
            - x1 ** (2 * tail) * ((d1 * x1 ** k) ** 2 - 1)
        )
    )
    direct = phi_kvector_at(KVector(FamilyId.FamPDoublePrime, 5, (l, k, l)), p)
    return ClosedFormCheck("double-prime-lkl", p.lam, direct, closed)


def closed_form_prime(k, j, lam):
    """φ of the P′ tree with parts (k, j) in closed form"""
    p = make_params(lam)
    x1, x2, d1, d2 = p.x1, p.x2, p.d1, p.d2
    closed = (
        p.lam
        * (p.lam ** 2 - 1)
        * x2 ** (j + k + 2)
        / p.delta
        * (
            d2 ** 2
            - d1 * x1 ** (2 * k + 1)
            - d2 * x1 ** (2 * j + 3)
            - d1 ** 2 * x1 ** (2 * j + 2 * k + 4)
        )
    )
    direct = phi_kvector_at(KVector(FamilyId.FamPPrime, 5, (k, j)), p)
    return ClosedFormCheck("prime-kj", p.lam, direct, closed)


def closed_form_checks(lam, k=5):
    """All closed-form identities at one λ"""
    return [
        closed_form_e7_difference(k, lam),
        closed_form_e8_difference(k, lam),
        e8_fourth_place_difference(k, lam),
        closed_form_double_prime(k + 2, k, lam),
        closed_form_prime(k, k + 1, lam),
    ]


@dataclass(frozen=True)
class ProfileRow:
    n: int
    rho: Any
    excess: Any


def asymptotic_profile(e, ns, tol=None, workers=None):
    """``ρ^min - λ₀`` over the P family for each ``n``"""
    base = lambda0()
    rows = []
    for n in ns:
        rho = family_min(n, e, FamilyId.FamP, tol, workers).rho.value
        rows.append(ProfileRow(n, rho, rho - base))
    return rows


@dataclass(frozen=True)
class RadiusBounds:
    n: int
    e: int
    k: Optional[int]
    lower: Any
    upper: Optional[Any]


def rho_bounds(n, e, tol=None):
    """``λ₀ <= ρ^min <= ρ_k`` with ``k`` the largest integer for which the
    tree ``(k-1, k, .., k, k-1)`` has at most ``n`` vertices.
    """
    MinValueValidator(6, "e")(e)
    k = (n - 6) // (e - 4) - 2
    if k < 1:
        return RadiusBounds(n, e, None, lambda0(), None)
    upper = solve_limit_equation(LimitKind.RhoK, k, tol).value
    return RadiusBounds(n, e, k, lambda0(), upper)
