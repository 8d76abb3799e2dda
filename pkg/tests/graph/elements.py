# Quipu
from quipu.core.graph import QuipuSpec, Tree, build_quipu


def path(n):
    return build_quipu(QuipuSpec(n))


def star(leaves):
    return Tree.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def spider(*legs):
    """A center with one path of each given length hanging from it"""
    edges, label = [], 1
    for length in legs:
        previous = 0
        for _ in range(length):
            edges.append((previous, label))
            previous = label
            label += 1
    return Tree.from_edges(label, edges)
