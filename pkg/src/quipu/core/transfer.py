"""The (p, q) decomposition and its transfer matrices.

For a rooted graph ``(G, v)`` and λ > 2 the pair ``(p, q)`` is the unique
split with

    p + q = φ_G(λ)        x₂p + x₁q = φ_{G-v}(λ)

where ``x₁ < 1 < x₂`` solve ``x² - λx + 1 = 0``. Growing the graph by one
vertex along a path acts linearly on ``(p, q)``:

* ``A`` extends by a bare vertex,
* ``B`` by a vertex carrying a pendant leaf,
* ``C`` by a vertex carrying a pendant P₂.

If λ is an ``int`` or ``Fraction`` with ``λ² - 4`` a rational square every
quantity is an exact ``Fraction``; otherwise mpmath scalars are used.
"""
# Standard Library Imports
import logging
import math

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, NamedTuple

# Quipu
from mpmath import mp, mpf
from quipu.core.charpoly import charpoly_forest, charpoly_tree, eval_poly
from quipu.exceptions import ContextMismatchError, DomainError, NumericalError, ValidationError
from quipu.utils import as_mpf, is_exact

logger = logging.getLogger("quipu.transfer")


class Step(Enum):
    A = "A"
    B = "B"
    C = "C"

    @classmethod
    def for_pendant(cls, length):
        try:
            return {0: cls.A, 1: cls.B, 2: cls.C}[length]
        except KeyError:
            raise NumericalError(f"no transfer step for a pendant path of length {length}")


@dataclass(frozen=True)
class TransferParams:
    lam: Any
    x1: Any
    x2: Any
    d1: Any
    d2: Any

    @property
    def exact(self):
        return isinstance(self.lam, Fraction)

    @property
    def delta(self):
        """x₂ - x₁"""
        return self.x2 - self.x1


def _rational_sqrt(value):
    num, den = value.numerator, value.denominator
    root_num, root_den = math.isqrt(num), math.isqrt(den)
    if root_num * root_num == num and root_den * root_den == den:
        return Fraction(root_num, root_den)
    return None


def make_params(lam):
    if isinstance(lam, TransferParams):
        return lam

    root = None
    if is_exact(lam):
        exact = Fraction(lam)
        if exact <= 2:
            raise DomainError(f"λ = {lam} is not above 2")
        root = _rational_sqrt(exact * exact - 4)
        if root is not None:
            lam = exact

    if root is None:
        lam = mpf(lam.numerator) / lam.denominator if isinstance(lam, Fraction) else mpf(lam)
        if lam <= 2:
            raise DomainError(f"λ = {lam} is not above 2")
        root = mp.sqrt(lam * lam - 4)

    x2 = (lam + root) / 2
    x1 = 2 / (lam + root)
    return TransferParams(lam=lam, x1=x1, x2=x2, d1=lam - x1 ** 3, d2=x2 ** 3 - lam)


class PQPair(NamedTuple):
    p: Any
    q: Any
    params: TransferParams

    @property
    def phi(self):
        """φ_G(λ)"""
        return self.p + self.q

    @property
    def phi_minus(self):
        """φ_{G-v}(λ)"""
        return self.params.x2 * self.p + self.params.x1 * self.q

    @property
    def ratio(self):
        """t = q / p"""
        if self.p == 0:
            raise NumericalError(f"p vanishes at λ = {self.params.lam}")
        return self.q / self.p


def pq_from_values(params, phi, phi_minus):
    delta = params.delta
    return PQPair(
        (-params.x1 * phi + phi_minus) / delta, (params.x2 * phi - phi_minus) / delta, params
    )


def pq_of_rooted(t, v, lam, memo=None):
    params = make_params(lam)
    phi = eval_poly(charpoly_tree(t, memo), params.lam)
    phi_minus = eval_poly(charpoly_forest(t.remove_vertex(v), memo), params.lam)
    return pq_from_values(params, phi, phi_minus)


def pq_single_vertex(lam):
    """(P₁, its vertex): (-x₁², x₂²)/(x₂-x₁)"""
    params = make_params(lam)
    return PQPair(-params.x1 ** 2 / params.delta, params.x2 ** 2 / params.delta, params)


def pq_p5_center(lam):
    """(P₅, center) = C·A·(P₁)"""
    return apply_step(apply_step(pq_single_vertex(lam), Step.A), Step.C)


def _phi_path(params, n):
    return (params.x2 ** (n + 1) - params.x1 ** (n + 1)) / params.delta


def pq_path_center(lam, order):
    """(P_order, center) for odd ``order``, from φ(P_n) = (x₂ⁿ⁺¹ - x₁ⁿ⁺¹)/(x₂ - x₁)"""
    if order < 1 or order % 2 == 0:
        raise ValidationError(f"path order must be odd and positive, got {order}")
    params = make_params(lam)
    half = (order - 1) // 2
    return pq_from_values(params, _phi_path(params, order), _phi_path(params, half) ** 2)


def step_matrix(params, step):
    x1, x2, lam, delta = params.x1, params.x2, params.lam, params.delta
    if step is Step.A:
        return ((x1, 0), (0, x2))
    if step is Step.B:
        return ((params.d1 / delta, x1 / delta), (-x2 / delta, params.d2 / delta))
    return (
        ((lam ** 2 - 1 - x1 ** 4) / delta, lam * x1 / delta),
        (-lam * x2 / delta, (x2 ** 4 - lam ** 2 + 1) / delta),
    )


def matmul(left, right):
    return tuple(
        tuple(sum(left[i][k] * right[k][j] for k in range(2)) for j in range(2))
        for i in range(2)
    )


def word_matrix(params, word):
    """Product of step matrices for a word such as ``"ABAA"``, left to right"""
    result = ((1, 0), (0, 1))
    for letter in word:
        result = matmul(result, step_matrix(params, Step(letter)))
    return result


def apply_step(pq, step):
    (a, b), (c, d) = step_matrix(pq.params, step)
    return PQPair(a * pq.p + b * pq.q, c * pq.p + d * pq.q, pq.params)


def extend_path(pq, m):
    """A^m: hang ``m`` bare vertices in a path beyond the root"""
    return PQPair(pq.params.x1 ** m * pq.p, pq.params.x2 ** m * pq.q, pq.params)


def _check_context(left, right):
    if left.params != right.params:
        raise ContextMismatchError(
            f"pairs evaluated at λ = {left.params.lam} and λ = {right.params.lam}"
        )


def phi_join_path(left, right, m):
    """φ of the two rooted graphs joined through a path of ``m`` new vertices
    (``m = 0`` joins the roots by an edge).
    """
    _check_context(left, right)
    x1, x2 = left.params.x1, left.params.x2
    return left.params.delta * (
        x2 ** (m - 1) * left.q * right.q - x1 ** (m - 1) * left.p * right.p
    )


def phi_join(left, right):
    return phi_join_path(left, right, 1)


def shift_difference(left, right, i, j):
    """φ(G_{i,j}) - φ(G_{i+1,j-1}) for the pendant-leaf vertex moved one step"""
    _check_context(left, right)
    if i < 0 or j < 1:
        raise NumericalError(f"shift needs i >= 0 and j >= 1, got ({i}, {j})")
    x1, x2 = left.params.x1, left.params.x2
    return (x1 - x2) * (
        left.p * right.q * x2 ** (j - i - 1) - left.q * right.p * x1 ** (j - i - 1)
    )


def phi_quipu_at(spec, lam):
    """φ of a quipu with pendant paths of length 1 or 2 hung away from vertex 0,
    evaluated by a left-to-right transfer product.
    """
    pq = pq_single_vertex(lam)
    previous = 0
    for m, length in spec.attachments:
        if m == 0:
            raise NumericalError("attachment at the first main-path vertex")
        pq = apply_step(extend_path(pq, m - previous - 1), Step.for_pendant(length))
        previous = m
    return extend_path(pq, spec.p - 1 - previous).phi


def phi_kvector_at(kv, lam):
    return phi_quipu_at(kv.to_quipu(), lam)


def prefix_pairs(kv, lam):
    """``(L_i, v_i)`` for i = 0..r-1: the part of a P-family tree left of and
    including the i-th degree-3 vertex, rooted there.
    """
    params = make_params(lam)
    pq = pq_p5_center(params)
    pairs = [pq]
    for k in kv.ks[:-1]:
        pq = apply_step(extend_path(pq, k), Step.B)
        pairs.append(pq)
    return pairs


def suffix_pairs(kv, lam):
    """``(R_j, v_{j-1})`` for j = r+1 down to 2, nearest the right end first"""
    return prefix_pairs(kv.reversed(), lam)


def limit_equation_residuals(lam, k):
    """Residuals ``lhs - rhs`` of the five equivalent forms of the equation
    defining ρ_k. All vanish together at ρ_k.
    """
    params = make_params(lam)
    if params.exact:
        params = make_params(as_mpf(params.lam))
    x1, x2, d1, d2 = params.x1, params.x2, params.d1, params.d2
    half = mpf(k - 1) / 2
    return [
        d2 - 2 * x1 ** k / (1 - x1 ** (k + 1)),
        d2 * x2 ** k - d1 * x1 ** k - 2,
        d2 - d1 * x1 ** (k - 1),
        d2 * x2 ** half - d1 * x1 ** half,
        d2 - 2 * x1 ** k - d1 * x1 ** (2 * k),
    ]

