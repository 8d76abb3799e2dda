"""Exhaustive searches: every free tree, or every small connected graph"""
# Standard Library Imports
import logging

# Quipu
import networkx as nx
import numpy as np

from quipu.core.graph import Tree, canonical_code, describe_quipu, diameter, quipu_notation
from quipu.core.spectral import is_tie, resolve_tol, rho_graph, rho_tree
from quipu.exceptions import EmptyFamilyError, TooLargeError
from quipu.globals import get_namespace, get_setting
from quipu.search.report import MinimizerReport
from quipu.utils import Scope

logger = logging.getLogger("quipu.search")

#: Double-precision radii within this of the smallest are solved exactly
FLOAT_SCREEN = 1e-8


def _check_cap(n, cap, setting):
    cap = get_setting(setting) if cap is None else cap
    if n > cap:
        raise TooLargeError(f"n={n} exceeds the enumeration cap of {cap}")


def enumerate_trees(n, D, cap=None):
    """One tree per isomorphism class of free trees on ``n`` vertices with
    diameter ``D``.
    """
    _check_cap(n, cap, "TREE_CAP")
    if n <= 2:
        if D == n - 1:
            yield Tree.from_edges(n, [(0, 1)] if n == 2 else [])
        return

    for graph in nx.nonisomorphic_trees(n):
        t = Tree.from_networkx(graph)
        if diameter(t) == D:
            yield t


def _float_rho(edges, n):
    matrix = np.zeros((n, n))
    for u, v in edges:
        matrix[u, v] = matrix[v, u] = 1.0
    return float(np.linalg.eigvalsh(matrix)[-1])


def _screened_min(candidates, float_rho, solve, tie_tol):
    """Solve the candidates whose float radius is near the smallest, plus the
    nearest one beyond, and split the results into ties and runner-up.
    """
    order = sorted(range(len(candidates)), key=lambda i: float_rho[i])
    cutoff = float_rho[order[0]] + FLOAT_SCREEN
    near = [i for i in order if float_rho[i] <= cutoff]
    if len(near) < len(order):
        near.append(order[len(near)])
    logger.debug(f"solving {len(near)} of {len(candidates)} candidates at full precision")

    solved = {i: solve(candidates[i]) for i in near}
    best = min(result.value for result in solved.values())
    ties = sorted(i for i, result in solved.items() if is_tie(result.value, best, tie_tol))
    others = [result.value for i, result in solved.items() if i not in ties]
    runner_up = min(others) - best if others else None
    return ties, solved, runner_up


def _label(t):
    spec = describe_quipu(t)
    return quipu_notation(spec) if spec is not None else canonical_code(t)


def brute_min(n, D, tol=None, scope=Scope.AllTrees, cap=None):
    """Minimizers of the spectral radius over all trees of order ``n`` and
    diameter ``D``, or over all connected graphs when ``scope`` is
    ``AllGraphsSmall``.
    """
    if scope is Scope.AllGraphsSmall:
        return all_graphs_min(n, D, tol, cap)

    tol = resolve_tol(tol)
    candidates = list(enumerate_trees(n, D, cap))
    if not candidates:
        raise EmptyFamilyError(f"no tree has n={n} and diameter {D}")

    float_rho = [_float_rho(t.edges(), t.n) for t in candidates]
    ties, solved, gap = _screened_min(
        candidates, float_rho, lambda t: rho_tree(t, tol), get_setting("TIE_TOL")
    )

    pairs = sorted((canonical_code(candidates[i]), i) for i in ties)
    return MinimizerReport(
        n=n,
        D=D,
        scope=Scope.AllTrees,
        argmin=tuple(code for code, _ in pairs),
        rho=solved[pairs[0][1]],
        runner_up_gap=gap,
        labels=tuple(_label(candidates[i]) for _, i in pairs),
        witnesses=tuple(candidates[i] for _, i in pairs),
    )


#: Orders read straight from the graph atlas
ATLAS_ORDER = 7


def _atlas_graphs(n, D):
    for index, graph in enumerate(nx.graph_atlas_g()):
        if graph.number_of_nodes() != n or not nx.is_connected(graph):
            continue
        if (nx.diameter(graph) if n > 1 else 0) == D:
            yield f"G{index}", graph


def _add_new_class(table, graph):
    """Store ``graph`` unless an isomorphic copy is already in ``table``"""
    bucket = table.setdefault(nx.weisfeiler_lehman_graph_hash(graph), [])
    if any(nx.is_isomorphic(graph, other) for other in bucket):
        return False
    bucket.append(graph)
    return True


def low_radius_graphs(n, D, bound):
    """One connected graph per isomorphism class on ``n`` vertices with
    diameter ``D`` and double-precision spectral radius at most ``bound``.

    Graphs are grown one edge at a time from the trees. Any such graph that
    is not a tree loses a non-bridge edge to a connected graph with a
    strictly smaller radius and no smaller diameter, so it is reached from
    the level below.
    """
    level = {}
    for graph in nx.nonisomorphic_trees(n):
        if nx.diameter(graph) >= D and _float_rho(graph.edges(), n) <= bound:
            _add_new_class(level, graph)

    found, size = [], n - 1
    while level:
        graphs = [graph for bucket in level.values() for graph in bucket]
        found.extend(graph for graph in graphs if nx.diameter(graph) == D)
        logger.debug(f"{len(graphs)} classes with {size} edges below the bound")

        following = {}
        for graph in graphs:
            for u, v in sorted(nx.non_edges(graph)):
                denser = graph.copy()
                denser.add_edge(u, v)
                if _float_rho(denser.edges(), n) > bound or nx.diameter(denser) < D:
                    continue
                _add_new_class(following, denser)
        level, size = following, size + 1
    return found


def _graph_name(graph):
    return "g6:" + nx.to_graph6_bytes(graph, header=False).decode("ascii").strip()


def _tree_bound(n, D, tol):
    """Exact tree minimum of ρ, as a float with the screening margin added"""
    margin = float(get_namespace("SEARCH_")["screen_margin"])
    return float(brute_min(n, D, tol).rho.value) + margin


def _graphs_of_diameter(n, D, tol):
    if n <= ATLAS_ORDER:
        return list(_atlas_graphs(n, D))
    if D == 1:
        return [(f"K{n}", nx.complete_graph(n))]
    if D < 1 or D > n - 1:
        return []
    return [(_graph_name(graph), graph) for graph in low_radius_graphs(n, D, _tree_bound(n, D, tol))]


def all_graphs_min(n, D, tol=None, cap=None):
    """Minimizers over every connected graph on ``n`` vertices with diameter
    ``D``. Small orders come from the graph atlas and are named by atlas
    index; larger ones are grown from the trees below the tree minimum and
    named by their graph6 string.
    """
    _check_cap(n, cap, "ALL_GRAPHS_CAP")
    tol = resolve_tol(tol)

    named = _graphs_of_diameter(n, D, tol)
    if not named:
        raise EmptyFamilyError(f"no connected graph has n={n} and diameter {D}")
    names, graphs = [name for name, _ in named], [graph for _, graph in named]

    float_rho = [_float_rho(graph.edges(), n) for graph in graphs]
    ties, solved, gap = _screened_min(
        graphs, float_rho, lambda graph: rho_graph(graph, tol), get_setting("TIE_TOL")
    )
    return MinimizerReport(
        n=n,
        D=D,
        scope=Scope.AllGraphsSmall,
        argmin=tuple(names[i] for i in ties),
        rho=solved[ties[0]],
        runner_up_gap=gap,
        labels=tuple(names[i] for i in ties),
        witnesses=tuple(graphs[i] for i in ties),
    )
