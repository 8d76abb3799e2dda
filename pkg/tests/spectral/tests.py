# Standard Library Imports
import random

# Quipu
import networkx as nx
import pytest

from mpmath import mp, mpf
from quipu.core.charpoly import IntPolynomial, charpoly_tree
from quipu.core.graph import (
    KVector,
    QuipuSpec,
    Tree,
    build_quipu,
    from_kvector,
    random_tree,
    subdivide_edge,
)
from quipu.core.spectral import (
    is_tie,
    kth_largest_root,
    lambda0,
    lambda2_tree,
    radius_cap,
    resolve_tol,
    rho_forest,
    rho_graph,
    rho_tree,
    roots_above,
    solve_limit_equation,
)
from quipu.core.transfer import limit_equation_residuals, make_params
from quipu.exceptions import NoSignChangeError, NumericalError, ToleranceUnreachableError, ValidationError
from quipu.utils import FamilyId, LimitKind

CLOSE = mpf(10) ** -45


def path(n):
    return build_quipu(QuipuSpec(n))


def star(leaves):
    return Tree.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


class TestRadius:
    def test_golden_ratio(self):
        assert abs(rho_tree(path(4)).value - (1 + mp.sqrt(5)) / 2) < CLOSE

    @pytest.mark.parametrize("n", range(2, 16))
    def test_paths(self, n):
        assert abs(rho_tree(path(n)).value - 2 * mp.cos(mp.pi / (n + 1))) < CLOSE

    @pytest.mark.parametrize("leaves", [1, 3, 4, 9])
    def test_stars(self, leaves):
        assert abs(rho_tree(star(leaves)).value - mp.sqrt(leaves)) < CLOSE

    def test_single_vertex(self):
        assert rho_tree(path(1)).value == 0

    def test_enclosure(self):
        result = rho_tree(from_kvector(KVector(FamilyId.FamP, 6, (3, 3))))
        assert result.lo <= result.value <= result.hi
        assert result.width <= mpf("1e-50")
        assert result.residual < mpf(10) ** -40

    def test_agrees_with_floating_point(self):
        rng = random.Random(17)
        for _ in range(8):
            t = random_tree(rng.randrange(3, 30), rng)
            estimate = max(nx.adjacency_spectrum(t.to_networkx()).real)
            assert abs(float(rho_tree(t).value) - estimate) < 1e-9

    def test_given_polynomial(self):
        t = path(6)
        assert rho_tree(t, poly=charpoly_tree(t)).value == rho_tree(t).value

    def test_second_eigenvalue(self):
        assert abs(lambda2_tree(path(4)).value - 2 * mp.cos(2 * mp.pi / 5)) < CLOSE

    def test_forest(self):
        assert abs(rho_forest([path(2), path(4), path(1)]).value - (1 + mp.sqrt(5)) / 2) < CLOSE

    def test_graphs(self):
        assert abs(rho_graph(nx.cycle_graph(5)).value - 2) < CLOSE
        assert abs(rho_graph(nx.complete_graph(4)).value - 3) < CLOSE


class TestRootCounting:
    def test_roots_above(self):
        poly = charpoly_tree(path(4))
        assert roots_above(poly, mpf(0)) == 2
        assert roots_above(poly, mpf(-2)) == 4
        assert roots_above(poly, mpf(2)) == 0

    def test_repeated_roots(self):
        poly = IntPolynomial((-1, 0, 1)) * IntPolynomial((-1, 0, 1))
        first = kth_largest_root(poly, 1, "1e-20").value
        second = kth_largest_root(poly, 2, "1e-20").value
        third = kth_largest_root(poly, 3, "1e-20").value
        assert abs(first - 1) < mpf("1e-19")
        assert abs(second - 1) < mpf("1e-19")
        assert abs(third + 1) < mpf("1e-19")

    def test_missing_root(self):
        with pytest.raises(NumericalError):
            kth_largest_root(charpoly_tree(path(3)), 4)


class TestTolerance:
    def test_configured_tolerance(self):
        assert resolve_tol() == mpf("1e-50")
        assert resolve_tol("1e-30") == mpf("1e-30")

    @pytest.mark.parametrize("tol", ["1e-90", 0, "-1e-10"])
    def test_unreachable(self, tol):
        with pytest.raises(ToleranceUnreachableError):
            resolve_tol(tol)

    def test_unreachable_radius(self):
        with pytest.raises(ToleranceUnreachableError):
            rho_tree(path(5), tol="1e-95")

    def test_ties(self):
        assert is_tie(mpf(2), mpf(2) + mpf("1e-35"))
        assert not is_tie(mpf(2), mpf(2) + mpf("1e-25"))
        assert is_tie(1, 1.5, tie_tol=1)


class TestLimitRadii:
    def test_constants(self):
        assert abs(lambda0() - mp.sqrt(2 + mp.sqrt(5))) < CLOSE
        assert abs(make_params(lambda0()).d2) < CLOSE
        assert lambda0() < radius_cap()

    @pytest.mark.parametrize("k", [1, 2, 5, 12])
    def test_equivalent_forms_vanish(self, k):
        rho_k = solve_limit_equation(LimitKind.RhoK, k).value
        for residual in limit_equation_residuals(rho_k, k):
            assert abs(residual) < mpf(10) ** -40

    @pytest.mark.parametrize("k", [4, 5, 6] + list(range(7, 41)))
    def test_ordering(self, k):
        rho = solve_limit_equation(LimitKind.RhoK, k).value
        rho_prime = solve_limit_equation(LimitKind.RhoPrimeK, k).value
        rho_double_prime = solve_limit_equation(LimitKind.RhoDoublePrimeK, k).value
        assert lambda0() < rho_double_prime < rho_prime < rho

    @pytest.mark.parametrize("k", range(7, 41))
    def test_interleaving(self, k):
        rho = solve_limit_equation(LimitKind.RhoK, k).value
        gap = mpf(10) ** -30
        assert rho + gap < solve_limit_equation(LimitKind.RhoDoublePrimeK, k - 4).value
        assert rho + gap < solve_limit_equation(LimitKind.RhoPrimeK, k - 3).value

    def test_decreasing_towards_lambda0(self):
        values = [solve_limit_equation(LimitKind.RhoK, k).value for k in range(4, 12)]
        assert all(a > b for a, b in zip(values, values[1:]))
        assert values[-1] > lambda0()
        assert values[0] <= radius_cap()

    def test_bracket_widening(self):
        with pytest.raises(NoSignChangeError):
            solve_limit_equation(LimitKind.RhoK, 1, widen=False)
        assert solve_limit_equation(LimitKind.RhoK, 1).value > radius_cap()

    def test_index_must_be_positive(self):
        with pytest.raises(ValidationError):
            solve_limit_equation(LimitKind.RhoK, 0)


def random_trees(seed, low=4, high=30):
    rng = random.Random(seed)
    return rng, random_tree(rng.randrange(low, high + 1), rng)


def _reaches_branch(t, previous, current):
    while t.degree(current) == 2:
        previous, current = current, next(w for w in t.adjacency[current] if w != previous)
    return t.degree(current) >= 3


def internal_path_edges(t):
    """Edges on a path between two vertices of degree at least 3 whose inner
    vertices all have degree 2.
    """
    return [(u, v) for u, v in t.edges() if _reaches_branch(t, v, u) and _reaches_branch(t, u, v)]


def is_double_broom(t):
    """Two degree-3 vertices, each carrying two leaves, joined by a path"""
    branches = [v for v in range(t.n) if t.degree(v) >= 3]
    return (
        len(branches) == 2
        and all(t.degree(v) == 3 for v in branches)
        and all(sum(t.degree(w) == 1 for w in t.adjacency[v]) == 2 for v in branches)
    )


def tree_with_internal_path(seed):
    rng = random.Random(seed)
    while True:
        t = random_tree(rng.randrange(6, 31), rng)
        edges = internal_path_edges(t)
        if edges and not is_double_broom(t):
            return rng, t, edges


class TestSpectralProperties:
    @pytest.mark.parametrize("seed", range(50))
    def test_vertex_deletion_interlaces(self, seed):
        rng, t = random_trees(seed)
        v = rng.randrange(t.n)
        rho, second = rho_tree(t), lambda2_tree(t)
        removed = rho_forest(t.remove_vertex(v))
        assert second.value - CLOSE <= removed.value < rho.value

    @pytest.mark.parametrize("seed", range(50))
    def test_leaf_deletion_lowers_the_radius(self, seed):
        rng, t = random_trees(seed)
        (rest,) = t.remove_vertex(rng.choice(t.leaves()))
        assert rho_tree(rest).value < rho_tree(t).value

    @pytest.mark.parametrize("seed", range(50))
    def test_subdividing_a_pendant_edge_raises_the_radius(self, seed):
        rng, t = random_trees(seed)
        leaf = rng.choice(t.leaves())
        longer = subdivide_edge(t, leaf, t.adjacency[leaf][0])
        assert rho_tree(longer).value > rho_tree(t).value

    @pytest.mark.parametrize("seed", range(50))
    def test_subdividing_an_internal_path_lowers_the_radius(self, seed):
        rng, t, edges = tree_with_internal_path(seed)
        u, v = rng.choice(edges)
        before = rho_tree(t).value
        assert before > 2
        assert rho_tree(subdivide_edge(t, u, v)).value < before

    def test_double_broom_keeps_its_radius(self):
        t = Tree.from_edges(7, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (4, 6)])
        assert is_double_broom(t)
        assert sorted(internal_path_edges(t)) == [(0, 3), (3, 4)]
        for u, v in internal_path_edges(t):
            assert abs(rho_tree(subdivide_edge(t, u, v)).value - 2) < CLOSE
        assert abs(rho_tree(t).value - 2) < CLOSE
