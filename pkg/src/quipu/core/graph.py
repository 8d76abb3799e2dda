"""Trees, quipus and the three candidate families.

Labeling convention: a quipu's main path occupies labels ``0..p-1`` in path
order, and the pendant path of the i-th attachment takes the next ``n_i``
labels, nearest vertex first. Family trees built by :func:`from_kvector`
follow the same convention, so prefix and suffix subtrees are addressable by
main-path position.
"""
# Standard Library Imports
import logging
import random
import re

from collections import deque
from dataclasses import dataclass
from typing import Optional, Tuple

# Quipu
import networkx as nx

from quipu.core.validators import (
    LengthValidator,
    MaxValueValidator,
    MinValueValidator,
    StrictlyIncreasingValidator,
)
from quipu.exceptions import InvalidDataError, NotATreeError, ParseError, ValidationError
from quipu.utils import FamilyId

logger = logging.getLogger("quipu.graph")


@dataclass(frozen=True)
class Tree:
    """An unrooted tree on vertices ``0..n-1``"""

    n: int
    adjacency: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1 or len(self.adjacency) != self.n:
            raise NotATreeError(
                f"adjacency has {len(self.adjacency)} rows for n={self.n}"
            )

        degree_sum = 0
        for u, neighbors in enumerate(self.adjacency):
            if len(set(neighbors)) != len(neighbors):
                raise NotATreeError(f"vertex {u} has a repeated neighbor")
            for v in neighbors:
                if not 0 <= v < self.n or v == u or u not in self.adjacency[v]:
                    raise NotATreeError(f"edge {u}-{v} is not symmetric")
            degree_sum += len(neighbors)

        if degree_sum != 2 * (self.n - 1):
            raise NotATreeError(
                f"{degree_sum // 2} edges on {self.n} vertices, a tree has {self.n - 1}"
            )
        if len(_reachable(self.adjacency, 0)) != self.n:
            raise NotATreeError("graph is disconnected")

    @classmethod
    def from_edges(cls, n, edges):
        adjacency = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise NotATreeError(f"edge {u}-{v} names a vertex outside 0..{n - 1}")
            if u == v or v in adjacency[u]:
                raise NotATreeError(f"edge {u}-{v} closes a cycle")
            adjacency[u].append(v)
            adjacency[v].append(u)
        return cls(n, tuple(tuple(sorted(row)) for row in adjacency))

    @classmethod
    def from_networkx(cls, graph):
        graph = nx.convert_node_labels_to_integers(graph, ordering="sorted")
        return cls.from_edges(graph.number_of_nodes(), graph.edges())

    def to_networkx(self):
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph

    def edges(self):
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def degree(self, v):
        return len(self.adjacency[v])

    def leaves(self):
        return [v for v in range(self.n) if self.degree(v) <= 1]

    def relabel(self, perm):
        """Tree with vertex ``v`` renamed to ``perm[v]``"""
        return Tree.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def remove_vertex(self, v):
        """Components of ``t - v`` as relabeled trees, in order of smallest vertex"""
        return _split(self, removed_vertex=v)

    def remove_edge(self, u, v):
        """The two components of ``t - uv``"""
        if v not in self.adjacency[u]:
            raise InvalidDataError(f"{u}-{v} is not an edge")
        return _split(self, removed_edge=(u, v))


def _reachable(adjacency, source, blocked=None, cut=None):
    seen = {source}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in adjacency[u]:
            if w in seen or w == blocked or cut in ((u, w), (w, u)):
                continue
            seen.add(w)
            queue.append(w)
    return seen


def _split(t, removed_vertex=None, removed_edge=None):
    remaining = [v for v in range(t.n) if v != removed_vertex]
    assigned = set()
    components = []
    for start in remaining:
        if start in assigned:
            continue
        members = sorted(_reachable(t.adjacency, start, removed_vertex, removed_edge))
        assigned.update(members)
        index = {v: i for i, v in enumerate(members)}
        edges = [
            (index[u], index[w])
            for u, w in t.edges()
            if u in index and w in index and {u, w} != set(removed_edge or ())
        ]
        components.append(Tree.from_edges(len(members), edges))
    return components


@dataclass(frozen=True)
class QuipuSpec:
    """A path on ``p`` vertices with pendant paths hung at distinct positions.

    ``attachments`` holds ``(m_i, n_i)`` pairs: position on the main path and
    pendant path length.
    """

    p: int
    attachments: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        MinValueValidator(1, "main path length")(self.p)
        positions = [m for m, _ in self.attachments]
        StrictlyIncreasingValidator("attachment positions")(positions)
        for m, length in self.attachments:
            MinValueValidator(0, "attachment position")(m)
            MaxValueValidator(self.p - 1, "attachment position")(m)
            MinValueValidator(1, "pendant path length")(length)

    @property
    def order(self):
        return self.p + sum(length for _, length in self.attachments)


@dataclass(frozen=True)
class KVector:
    """Interior counts ``ks`` of the internal paths of a family member"""

    family: FamilyId
    e: int
    ks: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ks", tuple(int(k) for k in self.ks))
        MinValueValidator(5, "e")(self.e)
        LengthValidator(self.family.parts(self.e), f"ks for {self.family.name}")(
            self.ks
        )
        for k in self.ks:
            MinValueValidator(0, "interior count")(k)

    @property
    def r(self):
        return len(self.ks)

    @property
    def n(self):
        return sum(self.ks) + 2 * self.e

    @property
    def diameter(self):
        return self.n - self.e

    def reversed(self):
        return KVector(self.family, self.e, tuple(reversed(self.ks)))

    def canonical(self):
        """Lexicographically smaller of ``ks`` and its mirror image, for the
        mirror-symmetric families.
        """
        if self.family.mirror_symmetric:
            return KVector(self.family, self.e, min(self.ks, self.ks[::-1]))
        return self

    def to_quipu(self):
        p = sum(self.ks) + self.e + 1
        first = 1 if self.family is FamilyId.FamPDoublePrime else 2
        positions = [first]
        for k in self.ks:
            positions.append(positions[-1] + k + 1)

        lengths = [1] * len(positions)
        if self.family in (FamilyId.FamP, FamilyId.FamPPrime):
            lengths[0] = 2
        if self.family is FamilyId.FamP:
            lengths[-1] = 2
        return QuipuSpec(p, tuple(zip(positions, lengths)))

    def __str__(self):
        return format_kvector(self)


def build_quipu(spec):
    edges = [(i, i + 1) for i in range(spec.p - 1)]
    label = spec.p
    for m, length in spec.attachments:
        previous = m
        for _ in range(length):
            edges.append((previous, label))
            previous = label
            label += 1
    return Tree.from_edges(spec.order, edges)


def from_kvector(kv):
    return build_quipu(kv.to_quipu())


def two_pendant_tree(k, i):
    """The tree with three pendant leaves whose two internal paths have ``i``
    and ``k`` interior vertices, the last leaf one step before the path end.
    """
    p = i + k + 5
    return build_quipu(QuipuSpec(p, ((1, 1), (i + 2, 1), (i + k + 3, 1))))


def _bfs_distances(adjacency, source):
    distance = [-1] * len(adjacency)
    parent = [-1] * len(adjacency)
    distance[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in adjacency[u]:
            if distance[w] < 0:
                distance[w] = distance[u] + 1
                parent[w] = u
                queue.append(w)
    return distance, parent


def diameter_path(t):
    """A longest path, found by a double breadth-first sweep"""
    first, _ = _bfs_distances(t.adjacency, 0)
    a = max(range(t.n), key=lambda v: (first[v], -v))
    second, parent = _bfs_distances(t.adjacency, a)
    b = max(range(t.n), key=lambda v: (second[v], -v))
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return path


def diameter(t):
    return len(diameter_path(t)) - 1


def centers(t):
    path = diameter_path(t)
    middle = len(path) // 2
    if len(path) % 2:
        return [path[middle]]
    return sorted([path[middle - 1], path[middle]])


def subdivide_edge(t, u, v):
    if v not in t.adjacency[u]:
        raise InvalidDataError(f"{u}-{v} is not an edge")
    w = t.n
    edges = [(a, b) for a, b in t.edges() if {a, b} != {u, v}]
    edges += [(u, w), (w, v)]
    return Tree.from_edges(t.n + 1, edges)


def rooted_codes(adjacency, root, blocked=None):
    """AHU codes of every subtree hanging below ``root``.

    Returns ``(order, parent, codes)`` with ``order`` a preorder of the
    vertices reachable from ``root`` without crossing ``blocked``.
    """
    parent = {root: None}
    order = [root]
    for u in order:
        for w in adjacency[u]:
            if w != parent[u] and w != blocked:
                parent[w] = u
                order.append(w)

    codes = {}
    for u in reversed(order):
        children = sorted(codes[w] for w in adjacency[u] if parent.get(w) == u)
        codes[u] = "(" + "".join(children) + ")"
    return order, parent, codes


def canonical_code(t):
    """Center-rooted AHU encoding; equal exactly for isomorphic trees"""
    middle = centers(t)
    if len(middle) == 1:
        _, _, codes = rooted_codes(t.adjacency, middle[0])
        return "1" + codes[middle[0]]

    c1, c2 = middle
    _, _, left = rooted_codes(t.adjacency, c1, blocked=c2)
    _, _, right = rooted_codes(t.adjacency, c2, blocked=c1)
    return "2" + "".join(sorted([left[c1], right[c2]]))


def join_tree(h1, v1, h2, v2, path_len=1):
    """``(H1, v1) . P_i . (H2, v2)``: ``v1`` and ``v2`` joined through a path
    of ``path_len`` new vertices.
    """
    offset = h1.n
    edges = list(h1.edges()) + [(a + offset, b + offset) for a, b in h2.edges()]
    label = h1.n + h2.n
    previous = v1
    for _ in range(path_len):
        edges.append((previous, label))
        previous = label
        label += 1
    edges.append((previous, v2 + offset))
    return Tree.from_edges(label, edges)


def shift_pair_tree(h1, v1, h2, v2, i, j):
    """``G_{i,j}``: ``i`` vertices, then a vertex carrying a pendant leaf, then
    ``j`` vertices between ``v1`` and ``v2``.
    """
    joined = join_tree(h1, v1, h2, v2, path_len=i + 1 + j)
    w = h1.n + h2.n + i
    return Tree.from_edges(joined.n + 1, joined.edges() + [(w, joined.n)])


def describe_quipu(t) -> Optional[QuipuSpec]:
    """Recover a quipu description along a longest path, or ``None`` when
    ``t`` is not an open quipu.
    """
    if any(t.degree(v) > 3 for v in range(t.n)):
        return None

    path = diameter_path(t)
    candidates = []
    for oriented in (path, path[::-1]):
        position = {v: i for i, v in enumerate(oriented)}
        attachments = []
        for i, v in enumerate(oriented):
            branches = [w for w in t.adjacency[v] if w not in position]
            if not branches:
                continue
            length = _pendant_length(t, branches[0], v)
            if length is None:
                return None
            attachments.append((i, length))
        candidates.append(QuipuSpec(len(oriented), tuple(attachments)))
    return min(candidates, key=lambda spec: spec.attachments)


def _pendant_length(t, start, anchor):
    length, previous, current = 1, anchor, start
    while True:
        onward = [w for w in t.adjacency[current] if w != previous]
        if not onward:
            return length
        if len(onward) > 1:
            return None
        previous, current = current, onward[0]
        length += 1


def quipu_notation(spec):
    """``P^{m_1,..}_{n_1,..,p}``"""
    if not spec.attachments:
        return f"P_{{{spec.p}}}"
    upper = ",".join(str(m) for m, _ in spec.attachments)
    lower = ",".join(str(length) for _, length in spec.attachments)
    return f"P^{{{upper}}}_{{{lower},{spec.p}}}"


def random_tree(n, rng=None):
    """Uniform random labeled tree through a random Prufer sequence"""
    rng = rng or random.Random()
    if n <= 2:
        return Tree.from_edges(n, [(0, 1)] if n == 2 else [])
    sequence = [rng.randrange(n) for _ in range(n - 2)]
    return Tree.from_networkx(nx.from_prufer_sequence(sequence))


def read_edge_list(text):
    """Parse ``n`` on the first line followed by one ``u v`` pair per line"""
    lines = [
        line.split("#", 1)[0].strip() for line in text.splitlines()
    ]
    lines = [line for line in lines if line]
    if not lines:
        raise ParseError("empty edge list")

    try:
        n = int(lines[0])
        edges = []
        for line in lines[1:]:
            u, v = line.split()
            edges.append((int(u), int(v)))
    except ValueError as exc:
        raise ParseError(f"malformed edge list: {exc}")

    if n < 1:
        raise ParseError(f"vertex count must be positive, got {n}")
    return Tree.from_edges(n, edges)


def write_edge_list(t):
    lines = [str(t.n)] + [f"{u} {v}" for u, v in t.edges()]
    return "\n".join(lines) + "\n"


_KVECTOR_RE = re.compile(
    r"^\s*(?P<family>P2|P1|P)\s*:\s*e\s*=\s*(?P<e>\d+)\s*:\s*k\s*=\s*(?P<ks>[\d\s,]+)$"
)


def looks_like_kvector(text):
    return _KVECTOR_RE.match(text) is not None


def parse_kvector(text):
    """Parse the ``P|P1|P2 : e=<int> : k=<csv ints>`` form"""
    match = _KVECTOR_RE.match(text)
    if match is None:
        raise ParseError(f"not a k-vector: {text!r}")

    try:
        ks = tuple(int(k) for k in match.group("ks").split(","))
    except ValueError:
        raise ParseError(f"malformed interior counts in {text!r}")

    try:
        return KVector(FamilyId.from_code(match.group("family")), int(match.group("e")), ks)
    except ValidationError as exc:
        raise ParseError(exc.messages)


def format_kvector(kv):
    return f"{kv.family.value}:e={kv.e}:k={','.join(str(k) for k in kv.ks)}"
