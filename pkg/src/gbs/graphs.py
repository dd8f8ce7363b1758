"""Graphs of groups with infinite cyclic vertex and edge groups.

A group presentation is a finite connected graph with an involution on edges
and two nonzero integer labels alpha, beta per edge; the edge relation reads
``y * target(y)^beta(y) * inverse(y) = source(y)^alpha(y)``.  Words over the
vertex powers and edge letters whose edges trace a path are normalized into
factorizations ``base^k0 y1 v1^k1 ... yn vn^kn``, the shape every decision
procedure in this package works on.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from . import arith


class GbsError(ValueError):
    """Base class for input and structure errors."""


class GraphError(GbsError):
    pass


class WordError(GbsError):
    pass


@dataclass(frozen=True)
class Edge:
    name: str
    src: str
    dst: str
    alpha: int
    beta: int
    inv: str


@dataclass(frozen=True)
class VertexPower:
    vertex: str
    exp: int


@dataclass(frozen=True)
class EdgeLetter:
    edge: str


Letter = Union[VertexPower, EdgeLetter]

# reserved: prints as the empty word
_EMPTY_TOKEN = "1"


class GbsGraph:
    """Immutable graph with edge involution and labels; indexes are built
    eagerly, deeper well-formedness lives in :func:`validate`."""

    def __init__(self, vertices: Sequence[str], edges: Sequence[Edge]):
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)
        self._vertex_set = set(self.vertices)
        self._by_name = {e.name: e for e in self.edges}
        self._out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            if e.src in self._out:
                self._out[e.src].append(e.name)
        self._primes: Optional[arith.PrimeSet] = None

    def __eq__(self, other):
        return (
            isinstance(other, GbsGraph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"GbsGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    def has_vertex(self, v: str) -> bool:
        return v in self._vertex_set

    def has_edge(self, name: str) -> bool:
        return name in self._by_name

    def edge(self, name: str) -> Edge:
        try:
            return self._by_name[name]
        except KeyError:
            raise GraphError(f"unknown edge {name!r}") from None

    def alpha(self, name: str) -> int:
        return self.edge(name).alpha

    def beta(self, name: str) -> int:
        return self.edge(name).beta

    def source(self, name: str) -> str:
        return self.edge(name).src

    def target(self, name: str) -> str:
        return self.edge(name).dst

    def inverse(self, name: str) -> str:
        return self.edge(name).inv

    def out_edges(self, v: str) -> tuple[str, ...]:
        return tuple(self._out.get(v, ()))

    def prime_set(self) -> arith.PrimeSet:
        """The sign prime -1 followed by all primes dividing any edge label."""
        if self._primes is None:
            ps: set[int] = set()
            for e in self.edges:
                ps.update(arith.prime_factors(e.alpha))
            self._primes = arith.PrimeSet((-1,) + tuple(sorted(ps)))
        return self._primes

    def to_text(self) -> str:
        lines = [f"vertex {v}" for v in self.vertices]
        lines += [
            f"edge {e.name} {e.src} {e.dst} {e.alpha} {e.beta} {e.inv}"
            for e in self.edges
        ]
        return "\n".join(lines) + "\n"


def bs_graph(p: int, q: int) -> GbsGraph:
    """The one-vertex, one-loop graph presenting ``<a, y | y a^p Y = a^q>``."""
    return GbsGraph(
        ("a",),
        (Edge("y", "a", "a", q, p, "Y"), Edge("Y", "a", "a", p, q, "y")),
    )


def _valid_id(tok: str) -> bool:
    return bool(tok) and tok != _EMPTY_TOKEN and not any(c in tok for c in "#^ \t")


def parse_graph(text: str, *, check: bool = True) -> GbsGraph:
    """Parse the line-oriented graph format.

    Either a single ``bs <p> <q>`` line, or ``vertex <id>`` and
    ``edge <id> <src> <dst> <alpha> <beta> <inv-id>`` lines; ``#`` starts a
    comment.  With ``check`` (the default) the parsed graph must also pass
    :func:`validate`.
    """
    vertices: list[str] = []
    edges: list[Edge] = []
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))

    def fail(lineno, msg):
        raise GraphError(f"line {lineno}: {msg}")

    if len(rows) == 1 and rows[0][1][0] == "bs":
        lineno, toks = rows[0]
        if len(toks) != 3:
            fail(lineno, "expected: bs <p> <q>")
        try:
            p, q = int(toks[1]), int(toks[2])
        except ValueError:
            fail(lineno, "p and q must be integers")
        graph = bs_graph(p, q)
    else:
        ids: set[str] = set()
        for lineno, toks in rows:
            kind = toks[0]
            if kind == "vertex":
                if len(toks) != 2:
                    fail(lineno, "expected: vertex <id>")
                if not _valid_id(toks[1]):
                    fail(lineno, f"bad id {toks[1]!r}")
                if toks[1] in ids:
                    fail(lineno, f"duplicate id {toks[1]!r}")
                ids.add(toks[1])
                vertices.append(toks[1])
            elif kind == "edge":
                if len(toks) != 7:
                    fail(lineno, "expected: edge <id> <src> <dst> <alpha> <beta> <inv-id>")
                name, src, dst, a, b, inv = toks[1:]
                if not _valid_id(name):
                    fail(lineno, f"bad id {name!r}")
                if name in ids:
                    fail(lineno, f"duplicate id {name!r}")
                ids.add(name)
                try:
                    alpha, beta = int(a), int(b)
                except ValueError:
                    fail(lineno, "alpha and beta must be integers")
                edges.append(Edge(name, src, dst, alpha, beta, inv))
            elif kind == "bs":
                fail(lineno, "bs must be the only line of the file")
            else:
                fail(lineno, f"unknown directive {kind!r}")
        vset = set(vertices)
        for e in edges:
            if e.src not in vset:
                raise GraphError(f"edge {e.name}: unknown source vertex {e.src!r}")
            if e.dst not in vset:
                raise GraphError(f"edge {e.name}: unknown target vertex {e.dst!r}")
            if not any(o.name == e.inv for o in edges):
                raise GraphError(f"edge {e.name}: unknown inverse edge {e.inv!r}")
        graph = GbsGraph(vertices, edges)

    if check:
        report = validate(graph)
        if report:
            raise GraphError("; ".join(report))
    return graph


def validate(graph: GbsGraph) -> list[str]:
    """All structural violations, as human-readable strings (empty = valid).

    Checked: nonzero labels, the involution being fixed-point free and
    consistent with endpoints and labels, and connectivity.
    """
    report: list[str] = []
    if not graph.vertices:
        report.append("graph has no vertices")
    if len(set(graph.vertices)) != len(graph.vertices):
        report.append("duplicate vertex ids")
    if len({e.name for e in graph.edges}) != len(graph.edges):
        report.append("duplicate edge ids")
    if set(graph.vertices) & {e.name for e in graph.edges}:
        report.append("vertex and edge ids overlap")
    for e in graph.edges:
        if e.alpha == 0 or e.beta == 0:
            report.append(f"edge {e.name}: zero label")
        if not graph.has_edge(e.inv):
            report.append(f"edge {e.name}: missing inverse {e.inv!r}")
            continue
        inv = graph.edge(e.inv)
        if inv.name == e.name:
            report.append(f"edge {e.name}: is its own inverse")
            continue
        if inv.inv != e.name:
            report.append(f"edge {e.name}: involution is not symmetric")
        if inv.src != e.dst or inv.dst != e.src:
            report.append(f"edge {e.name}: inverse endpoints do not match")
        if inv.beta != e.alpha:
            report.append(f"edge {e.name}: alpha differs from beta of inverse")
    if graph.vertices:
        seen = {graph.vertices[0]}
        queue = [graph.vertices[0]]
        while queue:
            v = queue.pop(0)
            for name in graph.out_edges(v):
                w = graph.target(name)
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != len(graph.vertices):
            report.append("graph is not connected")
    return report


@dataclass(frozen=True)
class GFactorization:
    """``base^k0 y1 v1^k1 ... yn vn^kn`` with the edges tracing a path from
    ``base``; closed when the path returns to ``base`` (or has no edges)."""

    graph: GbsGraph
    base: str
    k0: int
    steps: tuple[tuple[str, int], ...]

    def __post_init__(self):
        g = self.graph
        if not g.has_vertex(self.base):
            raise WordError(f"unknown vertex {self.base!r}")
        cur = self.base
        for name, _ in self.steps:
            e = g.edge(name)
            if e.src != cur:
                raise WordError(f"edge {name} does not continue the path at {cur}")
            cur = e.dst

    @property
    def n(self) -> int:
        return len(self.steps)

    @property
    def end(self) -> str:
        return self.graph.target(self.steps[-1][0]) if self.steps else self.base

    @property
    def is_closed(self) -> bool:
        return self.end == self.base

    def letters(self) -> tuple[Letter, ...]:
        out: list[Letter] = []
        if self.k0:
            out.append(VertexPower(self.base, self.k0))
        g = self.graph
        for name, k in self.steps:
            out.append(EdgeLetter(name))
            if k:
                out.append(VertexPower(g.target(name), k))
        return tuple(out)

    def __str__(self):
        return letters_to_text(self.letters())


def parse_word(text: str, graph: GbsGraph) -> tuple[Letter, ...]:
    """Parse whitespace-separated tokens ``<vertex>^<int>``, ``<vertex>``
    (exponent 1) and ``<edge-id>``; the token ``1`` is the empty word."""
    letters: list[Letter] = []
    for tok in text.split():
        if tok == _EMPTY_TOKEN:
            continue
        if "^" in tok:
            name, _, exp = tok.partition("^")
            if not graph.has_vertex(name):
                raise WordError(f"unknown vertex {name!r}")
            try:
                k = int(exp)
            except ValueError:
                raise WordError(f"malformed exponent in {tok!r}") from None
            letters.append(VertexPower(name, k))
        elif graph.has_edge(tok):
            letters.append(EdgeLetter(tok))
        elif graph.has_vertex(tok):
            letters.append(VertexPower(tok, 1))
        else:
            raise WordError(f"unknown id {tok!r}")
    return tuple(letters)


def letters_to_text(letters: Sequence[Letter]) -> str:
    """Canonical word text: exponents always printed, zero powers omitted,
    the empty word printed as ``1``."""
    toks: list[str] = []
    for letter in letters:
        if isinstance(letter, VertexPower):
            if letter.exp:
                toks.append(f"{letter.vertex}^{letter.exp}")
        else:
            toks.append(letter.edge)
    return " ".join(toks) if toks else _EMPTY_TOKEN


def to_factorization(letters: Sequence[Letter], graph: GbsGraph) -> GFactorization:
    """Normalize a letter sequence: merge adjacent vertex powers, insert zero
    exponents between consecutive edges, and check that powers sit at the
    vertex the path is passing through."""
    base: Optional[str] = None
    k0 = 0
    steps: list[list] = []
    cur: Optional[str] = None
    for letter in letters:
        if isinstance(letter, VertexPower):
            if not graph.has_vertex(letter.vertex):
                raise WordError(f"unknown vertex {letter.vertex!r}")
            if cur is None:
                base = cur = letter.vertex
            elif letter.vertex != cur:
                raise WordError(
                    f"vertex power {letter.vertex!r} at path position {cur!r}"
                )
            if steps:
                steps[-1][1] += letter.exp
            else:
                k0 += letter.exp
        else:
            e = graph.edge(letter.edge)
            if cur is None:
                base = cur = e.src
            elif e.src != cur:
                raise WordError(f"edge {e.name} does not continue the path at {cur}")
            steps.append([e.name, 0])
            cur = e.dst
    if base is None:
        if not graph.vertices:
            raise WordError("empty graph")
        base = graph.vertices[0]
    return GFactorization(graph, base, k0, tuple((n, k) for n, k in steps))


def invert(f: GFactorization) -> GFactorization:
    """The formal inverse ``vn^-kn Yn ... Y1 base^-k0``."""
    g = f.graph
    if not f.steps:
        return GFactorization(g, f.base, -f.k0, ())
    exps = [f.k0] + [k for _, k in f.steps]
    steps = tuple(
        (g.inverse(f.steps[i][0]), -exps[i]) for i in range(f.n - 1, -1, -1)
    )
    return GFactorization(g, f.end, -f.steps[-1][1], steps)


def concat(*parts: GFactorization) -> GFactorization:
    """Concatenate factorizations along matching endpoints."""
    if not parts:
        raise WordError("nothing to concatenate")
    letters: list[Letter] = []
    for p in parts:
        letters.extend(p.letters())
    out = to_factorization(letters, parts[0].graph)
    if not out.steps and all(not p.steps for p in parts):
        # keep the left base for pure vertex powers
        return GFactorization(parts[0].graph, parts[0].base, out.k0, ())
    return out


SpanningTree = frozenset


def spanning_tree(graph: GbsGraph) -> frozenset:
    """Deterministic spanning tree: breadth-first from the lexicographically
    least vertex, edges explored in file order.  Contains both directions of
    every selected edge pair."""
    if validate(graph):
        raise GraphError("graph is not valid")
    root = min(graph.vertices)
    seen = {root}
    tree: set[str] = set()
    queue = [root]
    while queue:
        v = queue.pop(0)
        for name in graph.out_edges(v):
            w = graph.target(name)
            if w not in seen:
                seen.add(w)
                tree.add(name)
                tree.add(graph.inverse(name))
                queue.append(w)
    return frozenset(tree)


def tree_path(graph: GbsGraph, tree: frozenset, start: str, goal: str) -> tuple[str, ...]:
    """Edge names of the unique reduced path from start to goal inside a
    spanning tree."""
    if start == goal:
        return ()
    prev: dict[str, tuple[str, str]] = {}
    seen = {start}
    queue = [start]
    while queue:
        v = queue.pop(0)
        for name in graph.out_edges(v):
            if name not in tree:
                continue
            w = graph.target(name)
            if w not in seen:
                seen.add(w)
                prev[w] = (v, name)
                if w == goal:
                    queue.clear()
                    break
                queue.append(w)
    if goal not in prev:
        raise GraphError(f"no tree path from {start} to {goal}")
    path: list[str] = []
    v = goal
    while v != start:
        v, name = prev[v]
        path.append(name)
    path.reverse()
    return tuple(path)


def rebase(
    letters: Sequence[Letter], graph: GbsGraph, tree: frozenset, base: str
) -> GFactorization:
    """Image of a word under the isomorphism onto the fundamental group based
    at ``base``: every edge letter y becomes path(base, source(y)) y
    path(target(y), base) and every power v^k becomes path(base, v) v^k
    path(v, base); the result is a closed factorization at ``base``."""
    if not graph.has_vertex(base):
        raise GraphError(f"unknown vertex {base!r}")
    out: list[Letter] = []

    def extend_path(a: str, b: str):
        out.extend(EdgeLetter(name) for name in tree_path(graph, tree, a, b))

    for letter in letters:
        if isinstance(letter, EdgeLetter):
            e = graph.edge(letter.edge)
            extend_path(base, e.src)
            out.append(letter)
            extend_path(e.dst, base)
        else:
            extend_path(base, letter.vertex)
            out.append(letter)
            extend_path(letter.vertex, base)
    f = to_factorization(out, graph)
    if not f.steps:
        return GFactorization(graph, base, f.k0, ())
    return f


Orientation = tuple


def orientation(graph: GbsGraph) -> tuple[str, ...]:
    """One edge per inverse pair: the one occurring earlier in the edge list."""
    chosen: list[str] = []
    seen: set[str] = set()
    for e in graph.edges:
        if e.name not in seen:
            chosen.append(e.name)
            seen.add(e.name)
            seen.add(e.inv)
    return tuple(chosen)
