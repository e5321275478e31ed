"""Named test graphs: complete graphs, cycles, hypercubes, torus products, bridged cliques, random weighted graphs."""

from __future__ import annotations

import numpy as np

from .graph import Graph, gen_bridge_cliques, gen_complete, gen_cycle, gen_hypercube, gen_product

CORPUS_SEED = 20240611


def random_connected_graph(rng: np.random.Generator, n: int, p: float = 0.3, wlo: float = 0.5, whi: float = 2.0) -> Graph:
    """Random spanning tree plus each remaining pair with probability ``p``; weights uniform in [wlo, whi]."""
    order = rng.permutation(n)
    pairs = set()
    for i in range(1, n):
        j = int(rng.integers(i))
        a, b = int(order[i]), int(order[j])
        pairs.add((min(a, b), max(a, b)))
    for a in range(n):
        for b in range(a + 1, n):
            if (a, b) not in pairs and rng.random() < p:
                pairs.add((a, b))
    edges = [(a, b, float(rng.uniform(wlo, whi))) for a, b in sorted(pairs)]
    return Graph.from_edges(edges, [str(i) for i in range(n)])


def random_graphs(count: int = 20, seed: int = CORPUS_SEED, nmin: int = 3, nmax: int = 12) -> list[tuple[str, Graph]]:
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n = int(rng.integers(nmin, nmax + 1))
        out.append((f"random{i:02d}_n{n}", random_connected_graph(rng, n)))
    return out


def corpus(seed: int = CORPUS_SEED) -> list[tuple[str, Graph]]:
    graphs: list[tuple[str, Graph]] = []
    graphs += [(f"K{n}", gen_complete(n)) for n in range(2, 9)]
    graphs += [(f"C{n}", gen_cycle(n)) for n in range(3, 13)]
    graphs += [(f"Q{k}", gen_hypercube(k)) for k in range(1, 5)]
    graphs += [(f"C{n}xC{n}", gen_product(gen_cycle(n), gen_cycle(n))) for n in (3, 4)]
    graphs += [(f"bridge{n}", gen_bridge_cliques(n)) for n in range(3, 9)]
    graphs += random_graphs(seed=seed)
    return graphs
