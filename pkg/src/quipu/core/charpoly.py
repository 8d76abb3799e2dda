"""Exact characteristic polynomials of trees.

``charpoly_tree`` roots the tree at a center and applies the vertex deletion
recurrence bottom-up. For a rooted subtree ``T_u`` write ``f(u) = phi(T_u)``
and ``g(u) = phi(T_u - u)``; then

    g(u) = prod f(c)
    f(u) = lambda * g(u) - sum_c g(c) * prod_{c' != c} f(c')

over the children ``c`` of ``u``. Results are cached by the AHU code of the
rooted subtree, so repeated limbs are computed once.
"""
# Standard Library Imports
import logging

from dataclasses import dataclass
from typing import Tuple

# Quipu
import sympy

from mpmath import mpf
from quipu.core.graph import centers, rooted_codes
from quipu.exceptions import TooLargeError
from quipu.globals import get_setting
from quipu.utils import is_exact

logger = logging.getLogger("quipu.charpoly")


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial in λ, coefficients low to high"""

    coefficients: Tuple[int, ...]

    def __post_init__(self):
        coefficients = [int(c) for c in self.coefficients]
        while len(coefficients) > 1 and coefficients[-1] == 0:
            coefficients.pop()
        object.__setattr__(self, "coefficients", tuple(coefficients or [0]))

    @classmethod
    def constant(cls, value):
        return cls((value,))

    @classmethod
    def identity(cls):
        """The polynomial λ"""
        return cls((0, 1))

    @property
    def degree(self):
        if self.coefficients == (0,):
            return -1
        return len(self.coefficients) - 1

    @property
    def leading(self):
        return self.coefficients[-1]

    def __getitem__(self, power):
        if 0 <= power < len(self.coefficients):
            return self.coefficients[power]
        return 0

    def __add__(self, other):
        size = max(len(self.coefficients), len(other.coefficients))
        return IntPolynomial(tuple(self[i] + other[i] for i in range(size)))

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(tuple(c * other for c in self.coefficients))
        product = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                product[i + j] += a * b
        return IntPolynomial(tuple(product))

    __rmul__ = __mul__

    def shift(self):
        """Multiply by λ"""
        return IntPolynomial((0,) + self.coefficients)

    def derivative(self):
        return IntPolynomial(
            tuple(i * c for i, c in enumerate(self.coefficients))[1:] or (0,)
        )

    def __call__(self, lam):
        return eval_poly(self, lam)

    def taylor_shift(self, center):
        """Coefficients (low to high) of ``p(center + y)`` as a polynomial in y,
        in the arithmetic of ``center``.
        """
        work = list(reversed(self.coefficients))
        size = len(work)
        for i in range(size - 1):
            for j in range(1, size - i):
                work[j] = work[j] + center * work[j - 1]
        return list(reversed(work))

    def to_json(self):
        return [str(c) for c in self.coefficients]

    def __str__(self):
        terms = []
        for power in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[power]
            if c == 0:
                continue
            magnitude = abs(c)
            if power == 0:
                body = str(magnitude)
            else:
                variable = "λ" if power == 1 else f"λ^{power}"
                body = variable if magnitude == 1 else f"{magnitude}{variable}"
            if not terms:
                terms.append(f"-{body}" if c < 0 else body)
            else:
                terms.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(terms) or "0"


ONE = IntPolynomial.constant(1)
LAMBDA = IntPolynomial.identity()


def eval_poly(poly, lam):
    """Horner evaluation. ints and Fractions are evaluated exactly, anything
    else at the current mpmath precision.
    """
    if not is_exact(lam):
        lam = mpf(lam)
    value = 0
    for c in reversed(poly.coefficients):
        value = value * lam + c
    return value


def _product(polys):
    result = ONE
    for poly in polys:
        result = result * poly
    return result


def charpoly_tree(t, memo=None):
    """Exact φ of a tree. ``memo`` may be shared between calls; it maps rooted
    subtree codes to ``(phi(T_u), phi(T_u - u))``.
    """
    memo = {} if memo is None else memo
    root = centers(t)[0]
    order, parent, codes = rooted_codes(t.adjacency, root)

    for u in reversed(order):
        code = codes[u]
        if code in memo:
            continue
        children = [memo[codes[w]] for w in t.adjacency[u] if parent.get(w) == u]
        memo[code] = _combine(children)

    logger.debug(f"charpoly of {t.n}-vertex tree, {len(memo)} memoized subtrees")
    return memo[codes[root]][0]


def _combine(children):
    """``(f(u), g(u))`` from the children's ``(f, g)`` pairs"""
    fs = [f for f, _ in children]
    prefix = [ONE]
    for f in fs:
        prefix.append(prefix[-1] * f)
    suffix = [ONE]
    for f in reversed(fs):
        suffix.append(suffix[-1] * f)
    suffix.reverse()

    g_u = prefix[-1]
    f_u = g_u.shift()
    for index, (_, g_child) in enumerate(children):
        f_u = f_u - g_child * prefix[index] * suffix[index + 1]
    return f_u, g_u


def charpoly_forest(trees, memo=None):
    """φ of a disjoint union, the product of its components' polynomials"""
    return _product(charpoly_tree(t, memo) for t in trees)


def _adjacency_charpoly(n, edges):
    matrix = sympy.zeros(n, n)
    for u, v in edges:
        matrix[u, v] = matrix[v, u] = 1
    x = sympy.Symbol("x")
    coefficients = matrix.charpoly(x).all_coeffs()
    return IntPolynomial(tuple(int(c) for c in reversed(coefficients)))


def charpoly_det_oracle(t, cap=None):
    """det(λI - A) by exact sympy elimination, independent of the recurrence"""
    cap = get_setting("ORACLE_CAP") if cap is None else cap
    if t.n > cap:
        raise TooLargeError(f"{t.n} vertices exceeds the oracle cap of {cap}")
    return _adjacency_charpoly(t.n, t.edges())


def charpoly_graph(graph, cap=None):
    """Oracle charpoly of an arbitrary networkx graph on small order"""
    cap = get_setting("ORACLE_CAP") if cap is None else cap
    n = graph.number_of_nodes()
    if n > cap:
        raise TooLargeError(f"{n} vertices exceeds the oracle cap of {cap}")
    index = {v: i for i, v in enumerate(sorted(graph.nodes()))}
    return _adjacency_charpoly(n, [(index[u], index[v]) for u, v in graph.edges()])
