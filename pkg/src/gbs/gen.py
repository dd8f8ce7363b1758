"""Seeded random instances: graphs, closed factorizations, free-group words.

Everything is driven by a caller-supplied ``random.Random`` so corpora are
reproducible from a single seed.
"""
from __future__ import annotations

import random
import string

from .freegroup import FWord
from .graphs import Edge, GbsGraph, GFactorization, Letter, invert, to_factorization


def _nonzero(rng: random.Random, max_abs: int) -> int:
    v = rng.randint(1, max_abs)
    return -v if rng.random() < 0.5 else v


def random_graph(
    rng: random.Random,
    max_vertices: int = 4,
    max_edge_pairs: int = 6,
    max_label: int = 5,
) -> GbsGraph:
    """A connected graph with an involution: a random tree plus extra pairs,
    alpha and beta drawn from the nonzero integers up to ``max_label``."""
    nv = rng.randint(1, max_vertices)
    vertices = tuple(string.ascii_lowercase[i] for i in range(nv))
    endpoints = []
    for i in range(1, nv):
        endpoints.append((vertices[rng.randrange(i)], vertices[i]))
    lo = len(endpoints)
    for _ in range(rng.randint(max(0, 1 - lo), max(0, max_edge_pairs - lo))):
        endpoints.append((rng.choice(vertices), rng.choice(vertices)))
    edges = []
    for t, (u, v) in enumerate(endpoints):
        a, b = _nonzero(rng, max_label), _nonzero(rng, max_label)
        edges.append(Edge(f"y{t}", u, v, a, b, f"Y{t}"))
        edges.append(Edge(f"Y{t}", v, u, b, a, f"y{t}"))
    return GbsGraph(vertices, tuple(edges))


def random_closed_factorization(
    rng: random.Random,
    graph: GbsGraph,
    max_len: int = 14,
    max_exp: int = 8,
    attempts: int = 10_000,
) -> GFactorization:
    """A closed factorization from a random walk; rejection-samples walks
    until one returns to its start."""
    for _ in range(attempts):
        n = rng.randint(0, max_len)
        base = rng.choice(graph.vertices)
        cur = base
        names = []
        dead = False
        for _ in range(n):
            out = graph.out_edges(cur)
            if not out:
                dead = True
                break
            name = rng.choice(out)
            names.append(name)
            cur = graph.target(name)
        if dead or cur != base:
            continue
        steps = tuple((name, rng.randint(-max_exp, max_exp)) for name in names)
        return GFactorization(graph, base, rng.randint(-max_exp, max_exp), steps)
    raise RuntimeError("no closed walk found within the attempt cap")


def random_conjugator_letters(
    rng: random.Random, graph: GbsGraph, base: str, max_len: int = 6, max_exp: int = 4
) -> tuple[Letter, ...]:
    """Letters of a random word ending at ``base`` (an open path), suitable
    as a conjugator ``z`` in ``z v z^-1`` for v closed at ``base``."""
    n = rng.randint(0, max_len)
    cur = base
    names = []
    for _ in range(n):
        out = graph.out_edges(cur)
        if not out:
            break
        name = rng.choice(out)
        names.append(name)
        cur = graph.target(name)
    # walk away from base, then read it backwards so the path ends at base
    away = GFactorization(
        graph, base, rng.randint(-max_exp, max_exp),
        tuple((name, rng.randint(-max_exp, max_exp)) for name in names),
    )
    return invert(away).letters()


def conjugated_word(
    rng: random.Random, graph: GbsGraph, v: GFactorization, max_len: int = 6
) -> GFactorization:
    """A word equal to ``z v z^-1`` for a random conjugator z."""
    from .conjugacy import invert_letters

    z = random_conjugator_letters(rng, graph, v.base, max_len)
    letters = list(z) + list(v.letters()) + list(invert_letters(z, graph))
    return to_factorization(letters, graph)


def random_fword(
    rng: random.Random, max_rank: int = 8, max_len: int = 64
) -> FWord:
    rank = rng.randint(1, max_rank)
    n = rng.randint(0, max_len)
    return tuple(
        (rng.randint(1, rank), rng.choice((1, -1))) for _ in range(n)
    )
