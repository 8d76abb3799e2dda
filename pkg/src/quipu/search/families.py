"""Searches over the three candidate families.

Members are addressed by :class:`~quipu.core.graph.KVector`. A full root solve
per member is avoided where possible: at a trial λ slightly above the best
radius found so far, ``φ(trial) < 0`` or a negative prefix/suffix pair proves
the member's radius exceeds the trial, so it can be dropped unsolved.
"""
# Standard Library Imports
import itertools
import logging
import math

from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Any, Dict, Optional, Tuple

# Quipu
from mpmath import mp
from quipu.core.charpoly import charpoly_tree, eval_poly
from quipu.core.graph import KVector, canonical_code, from_kvector
from quipu.core.spectral import resolve_tol, rho_tree
from quipu.core.transfer import phi_kvector_at, prefix_pairs, suffix_pairs
from quipu.core.validators import ChoiceValidator, MinValueValidator
from quipu.exceptions import EmptyFamilyError, InvalidDataError, NotSupportedError, ValidationError
from quipu.globals import get_namespace, get_setting
from quipu.search.pool import map_ordered
from quipu.search.report import MinimizerReport
from quipu.utils import FamilyId, Scope, as_mpf

logger = logging.getLogger("quipu.search")


def _compositions(total, parts):
    """Compositions of ``total`` into ``parts`` nonnegative parts, in
    lexicographic order.
    """
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_family(n, e, family=FamilyId.FamP, dedup=True):
    """Every member of the family of order ``n`` with parameter ``e``.

    Mirror images are collapsed to their lexicographically smaller form for
    the mirror-symmetric families unless ``dedup`` is false.
    """
    MinValueValidator(5, "e")(e)
    if n < 2 * e:
        raise EmptyFamilyError(f"no {family.name} member has n={n} < 2e={2 * e}")

    for ks in _compositions(n - 2 * e, family.parts(e)):
        if dedup and family.mirror_symmetric and ks > ks[::-1]:
            continue
        yield KVector(family, e, ks)


def theorem_filter(n, e):
    """P-family vectors obeying the balance constraints every minimizer
    satisfies once ``n`` is large.

    With ``s = (n - 6)/(e - 4) - 2`` the end parts lie in ``{⌊s⌋-1, ⌊s⌋}``,
    middle parts in ``[⌊s⌋, ⌈s⌉+1]``, middles exceed ends by 0 to 2, and
    middles differ pairwise by at most one.
    """
    MinValueValidator(6, "e")(e)
    r = e - 4
    s = Fraction(n - 6, r) - 2
    low, high = math.floor(s), math.ceil(s)
    total = n - 2 * e

    end_range = [k for k in (low - 1, low) if k >= 0]
    middle_range = [k for k in range(low, high + 2) if k >= 0]

    found = []
    for first, last in itertools.product(end_range, repeat=2):
        for middles in itertools.product(middle_range, repeat=r - 2):
            ks = (first,) + middles + (last,)
            if sum(ks) != total:
                continue
            if any(not 0 <= m - end <= 2 for m in middles for end in (first, last)):
                continue
            if middles and max(middles) - min(middles) > 1:
                continue
            found.append(KVector(FamilyId.FamP, e, ks))
    return sorted(found, key=lambda kv: kv.ks)


def residue_class(n, e):
    """``(k, residue)`` with ``n - 2e = (e - 4)k + residue``"""
    return divmod(n - 2 * e, e - 4)


def _predicted_patterns(e, k, residue):
    if e == 6:
        return ((k, k + residue),)
    if e == 7:
        return ((k, k + residue, k),)
    if residue == 0:
        return ((k, k, k, k), (k, k, k + 1, k - 1), (k - 1, k + 1, k + 1, k - 1))
    return ((k, k + 1, k + residue - 1, k),)


def predicted_min(n, e):
    """The closed-form minimizers for ``e`` in {6, 7, 8}, by residue of
    ``n - 2e`` modulo ``e - 4``.
    """
    try:
        ChoiceValidator((6, 7, 8), "e")(e)
    except ValidationError as exc:
        raise NotSupportedError(exc.messages)

    k, residue = residue_class(n, e)
    return [KVector(FamilyId.FamP, e, ks) for ks in _predicted_patterns(e, k, residue)]


def _solve_member(kv, tol, memo=None):
    t = from_kvector(kv)
    return rho_tree(t, tol, poly=charpoly_tree(t, memo))


def _dominated(kv, trial):
    """True when the member's radius provably exceeds ``trial``"""
    if phi_kvector_at(kv, trial) < 0:
        return True
    if kv.family is FamilyId.FamP:
        for pair in prefix_pairs(kv, trial) + suffix_pairs(kv, trial):
            if pair.p < 0 or pair.q < 0:
                return True
    return False


def _most_balanced(members):
    return min(members, key=lambda kv: (max(kv.ks) - min(kv.ks), kv.ks))


def _runner_up(solved, best, tie_tol):
    values = [result.value for result in solved.values() if result.value - best >= tie_tol]
    return min(values, default=None)


def family_min(n, e, family=FamilyId.FamP, tol=None, workers=None):
    """Minimizers of the spectral radius over one family.

    Returns every member within TIE_TOL of the minimum. Only members that
    survive the dominance screen are solved; the screen is widened until the
    runner-up is certified as well.
    """
    tol = resolve_tol(tol)
    tie_tol = as_mpf(get_setting("TIE_TOL"))
    search = get_namespace("SEARCH_")
    workers = int(workers or search["workers"])
    margin = max(as_mpf(search["screen_margin"]), 10 * tie_tol)

    members = list(enumerate_family(n, e, family))
    memo = {} if workers <= 1 else None
    solve = partial(_solve_member, tol=tol, memo=memo)

    seeds = []
    if family is FamilyId.FamP and e >= 6:
        member_set = set(members)
        seeds = [kv for kv in {c.canonical() for c in theorem_filter(n, e)} if kv in member_set]
    seeds = sorted(seeds, key=lambda kv: kv.ks) or [_most_balanced(members)]
    solved: Dict[KVector, Any] = dict(zip(seeds, map_ordered(solve, seeds, workers)))

    while True:
        best = min(result.value for result in solved.values())
        trial = best + margin
        unsolved = [kv for kv in members if kv not in solved]
        survivors = [kv for kv in unsolved if not _dominated(kv, trial)]
        logger.debug(
            f"{family.name} n={n} e={e}: {len(survivors)} of {len(unsolved)} unsolved "
            f"members survive the screen at margin {mp.nstr(margin, 3)}"
        )
        solved.update(zip(survivors, map_ordered(solve, survivors, workers)))

        best = min(result.value for result in solved.values())
        runner_up = _runner_up(solved, best, tie_tol)
        if len(solved) == len(members) or (runner_up is not None and runner_up <= trial):
            break
        margin *= 100

    argmin = sorted(
        (kv for kv, result in solved.items() if result.value - best < tie_tol),
        key=lambda kv: kv.ks,
    )
    logger.debug(f"{family.name} n={n} e={e}: solved {len(solved)} of {len(members)} members")
    return MinimizerReport(
        n=n,
        D=n - e,
        scope=Scope.for_family(family),
        argmin=tuple(argmin),
        rho=solved[argmin[0]],
        runner_up_gap=None if runner_up is None else runner_up - best,
        labels=tuple(str(kv) for kv in argmin),
        witnesses=tuple(from_kvector(kv) for kv in argmin),
    )


@dataclass(frozen=True)
class Comparison:
    """``sign`` is +1 when the first graph has the larger radius, -1 when the
    second does, 0 on a tie.
    """

    sign: int
    value: Any
    rho_first: Any


def _leaf_deleted_codes(t):
    codes = set()
    for leaf in t.leaves():
        (rest,) = t.remove_vertex(leaf)
        codes.add(canonical_code(rest))
    return codes


def compare_by_shared_subgraph(g1, g2, tol=None):
    """Order two trees that share a leaf-deleted subtree by the sign of
    ``φ_{G2}(ρ(G1))``.
    """
    if g1.n != g2.n or g1.n < 2:
        raise InvalidDataError("trees of equal order, at least 2, are required")
    if not _leaf_deleted_codes(g1) & _leaf_deleted_codes(g2):
        raise InvalidDataError("the trees have no common leaf-deleted subtree")

    rho_first = rho_tree(g1, tol)
    value = eval_poly(charpoly_tree(g2), rho_first.value)
    if abs(value) <= rho_first.residual * 10 + rho_first.width:
        sign = 0
    else:
        sign = 1 if value > 0 else -1
    return Comparison(sign, value, rho_first.value)


@dataclass(frozen=True)
class Remark3Row:
    index: int
    k: int
    bound: int
    satisfied: bool


@dataclass(frozen=True)
class Remark3Report:
    kv: KVector
    applies: bool
    k_bar: Any
    rows: Tuple[Remark3Row, ...]

    @property
    def satisfied(self):
        return all(row.satisfied for row in self.rows)


def remark3_diagnostic(kv):
    """Lower bounds on each part of a large P-family minimizer.

    Only informative for ``n >= 9e - 30``; below that ``applies`` is false and
    the rows are still reported.
    """
    if kv.family is not FamilyId.FamP:
        raise InvalidDataError(f"{kv} is not a P-family vector")

    r = kv.r
    k_bar = Fraction(sum(kv.ks), r)
    base = math.floor(k_bar + Fraction(2, r))
    rows = []
    for index, k in enumerate(kv.ks, start=1):
        bound = base - 2 if index in (1, r) else base - 3
        rows.append(Remark3Row(index, k, bound, k >= bound))
    return Remark3Report(kv, kv.n >= 9 * kv.e - 30, k_bar, tuple(rows))


@dataclass(frozen=True)
class DominanceReport:
    n: int
    e: int
    bound: int
    reports: Dict[FamilyId, MinimizerReport]

    @property
    def meets_bound(self):
        return self.n >= self.bound

    @property
    def dominates(self):
        """True when the P family strictly beats both other families"""
        best = self.reports[FamilyId.FamP].rho.value
        return all(
            best < report.rho.value
            for family, report in self.reports.items()
            if family is not FamilyId.FamP
        )


def family_dominance(n, e, tol=None, workers=None):
    """Minimize over all three families at ``(n, e)``"""
    MinValueValidator(6, "e")(e)
    bound = 10 * e * e - 74 * e + 142
    if n < bound:
        logger.warning(f"n={n} is below the dominance threshold {bound} for e={e}")
    reports = {family: family_min(n, e, family, tol, workers) for family in FamilyId}
    return DominanceReport(n, e, bound, reports)


@dataclass(frozen=True)
class ReproductionRow:
    n: int
    e: int
    k: int
    residue: int
    predicted: Tuple[KVector, ...]
    found: Tuple[KVector, ...]
    rho: Any
    gap: Optional[Any]
    asymptotic: bool

    @property
    def match(self):
        return bool(self.predicted) and set(self.predicted) == set(self.found)


def reproduction_table(e, ns, tol=None, workers=None):
    """Predicted against found minimizers for each ``n``"""
    stabilization = int(get_setting("STABILIZATION_K"))
    rows = []
    for n in ns:
        k, residue = residue_class(n, e)
        try:
            predicted = tuple(sorted({kv.canonical() for kv in predicted_min(n, e)}, key=lambda kv: kv.ks))
        except NotSupportedError:
            predicted = ()

        report = family_min(n, e, FamilyId.FamP, tol, workers)
        rows.append(
            ReproductionRow(
                n=n,
                e=e,
                k=k,
                residue=residue,
                predicted=predicted,
                found=report.argmin,
                rho=report.rho.value,
                gap=report.runner_up_gap,
                asymptotic=k >= stabilization,
            )
        )
        logger.debug(f"e={e} n={n}: match={rows[-1].match}")
    return rows
