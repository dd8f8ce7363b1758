"""Decision machinery for factorizations: interval exponents, the position
coloring, the word problem, and Britton reduction (a direct rewriting oracle
and a fast reduction through the coloring).

Edge positions are 1-based: a factorization ``base^k0 y1 v1^k1 ... yn vn^kn``
has edges 1..n, and interval indices (i, j) with 0 <= i <= j <= n refer to the
slice ``vi^ki y_{i+1} ... y_j vj^kj``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import freegroup
from .arith import ExactRational
from .freegroup import FWord
from .graphs import (
    EdgeLetter,
    GFactorization,
    GbsGraph,
    Letter,
    VertexPower,
    WordError,
    orientation,
)


class PrefixRatios:
    """Prefix products of the edge ratios alpha/beta and the derived interval
    exponents.

    ``ratio(i)`` is the product of alpha/beta over edges 1..i (1 at i=0), and
    ``k(i, j)`` the exact rational sum of the slice exponents, each scaled by
    the ratio product from position i+1 up to it.  All values share one big
    integer table with a common denominator, so a single subtraction and one
    division test serve every interval query.
    """

    def __init__(self, f: GFactorization):
        g = f.graph
        n = f.n
        alpha = [1] * (n + 1)
        beta = [1] * (n + 1)
        for i, (name, _) in enumerate(f.steps, 1):
            e = g.edge(name)
            alpha[i] = e.alpha
            beta[i] = e.beta
        num = [1] * (n + 1)  # prod of alpha, edges 1..i
        den = [1] * (n + 1)  # prod of beta, edges 1..i
        for i in range(1, n + 1):
            num[i] = num[i - 1] * alpha[i]
            den[i] = den[i - 1] * beta[i]
        suf = [1] * (n + 1)  # prod of beta, edges i+1..n
        for i in range(n - 1, -1, -1):
            suf[i] = suf[i + 1] * beta[i + 1]
        exps = [f.k0] + [k for _, k in f.steps]
        acc = 0
        total = [0] * (n + 1)  # scaled prefix sums over the common denominator
        for t in range(n + 1):
            acc += exps[t] * num[t] * suf[t]
            total[t] = acc
        self.n = n
        self.alpha = alpha
        self.beta = beta
        self._num = num
        self._den = den
        self._suf = suf
        self._total = total
        self._scale = [num[i] * suf[i] for i in range(n + 1)]

    def _check(self, i: int, j: int):
        if not 0 <= i <= j <= self.n:
            raise IndexError(f"interval ({i}, {j}) out of range for n={self.n}")

    def ratio(self, i: int) -> ExactRational:
        """Product of alpha/beta over edges 1..i."""
        self._check(i, i)
        return ExactRational(self._num[i], self._den[i])

    def k_numerator(self, i: int, j: int) -> int:
        return self._total[j] - (self._total[i - 1] if i else 0)

    def k(self, i: int, j: int) -> ExactRational:
        self._check(i, j)
        return ExactRational(self.k_numerator(i, j), self._scale[i])

    def k_divisible(self, i: int, j: int, d: int) -> bool:
        """Whether k(i, j) is an integer divisible by d."""
        self._check(i, j)
        num, scale = self.k_numerator(i, j), self._scale[i]
        return num % scale == 0 and (num // scale) % d == 0


def k_interval(f: GFactorization, i: int, j: int) -> ExactRational:
    """Exact rational exponent accumulated by the slice between i and j."""
    return PrefixRatios(f).k(i, j)


def _rho_prefixes(f: GFactorization, oriented: Sequence[str]) -> list[tuple[int, ...]]:
    """Signed oriented-edge counts of every prefix, as hashable tuples."""
    slot: dict[str, tuple[int, int]] = {}
    g = f.graph
    for idx, name in enumerate(oriented):
        slot[name] = (idx, 1)
        slot[g.inverse(name)] = (idx, -1)
    cur = [0] * len(oriented)
    out = [tuple(cur)]
    for name, _ in f.steps:
        idx, sgn = slot[name]
        cur[idx] += sgn
        out.append(tuple(cur))
    return out


def rho(
    f: GFactorization, i: int, j: int, oriented: Optional[Sequence[str]] = None
) -> tuple[int, ...]:
    """Signed count of each oriented edge among the slice's edges i+1..j."""
    if not 0 <= i <= j <= f.n:
        raise IndexError(f"interval ({i}, {j}) out of range for n={f.n}")
    if oriented is None:
        oriented = orientation(f.graph)
    pre = _rho_prefixes(f, oriented)
    return tuple(b - a for a, b in zip(pre[i], pre[j]))


def sim_c(f: GFactorization, i: int, j: int) -> bool:
    """Whether edges i and j are mutually inverse with a cancelable interior:
    the enclosed slice counts zero on every oriented edge and accumulates an
    exponent divisible by beta of the earlier edge."""
    n = f.n
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"positions ({i}, {j}) out of range for n={n}")
    if i == j:
        return False
    if i > j:
        i, j = j, i
    g = f.graph
    if f.steps[j - 1][0] != g.inverse(f.steps[i - 1][0]):
        return False
    pre = _rho_prefixes(f, orientation(g))
    if pre[i] != pre[j - 1]:
        return False
    pr = PrefixRatios(f)
    return pr.k_divisible(i, j - 1, pr.beta[i])


@dataclass(frozen=True)
class ColorTable:
    """Partition of the edge positions 1..n into cancellation-color classes
    with a partial fixed-point-free involution between paired classes.

    The representative of a class is the smallest position in the union of
    the class and its partner; the class holding the representative carries
    sign +1, its partner -1.
    """

    n: int
    class_of: tuple[int, ...]  # position (1-based; slot 0 unused) -> class id
    classes: tuple[tuple[int, ...], ...]
    inverse: tuple[Optional[int], ...]
    representative: tuple[int, ...]
    sign: tuple[int, ...]

    def partition(self) -> tuple[tuple[int, ...], ...]:
        return self.classes

    def letter(self, position: int) -> freegroup.FLetter:
        c = self.class_of[position]
        return (self.representative[c], self.sign[c])

    def slice_word(self, i: int, j: int) -> FWord:
        """Color letters of the slice between interval indices i and j."""
        return tuple(self.letter(t) for t in range(i + 1, j + 1))


def _sim_pairs(f: GFactorization, pr: PrefixRatios):
    """All position pairs i < j with ``sim_c(f, i, j)``, grouped candidates
    first by equal oriented-edge prefix, then filtered by the letter and
    divisibility conditions."""
    n = f.n
    g = f.graph
    inv = [""] + [g.inverse(name) for name, _ in f.steps]
    names = [""] + [name for name, _ in f.steps]
    pre = _rho_prefixes(f, orientation(g))
    groups: dict[tuple[int, ...], list[int]] = {}
    for t in range(1, n + 1):
        groups.setdefault(pre[t], []).append(t)
    total = pr._total
    scale = pr._scale
    for group in groups.values():
        for a, i in enumerate(group):
            want = inv[i]
            mod = scale[i] * pr.beta[i]
            base_num = total[i - 1]
            for t in group[a:]:
                j = t + 1
                if j > n:
                    break
                if names[j] == want and (total[t] - base_num) % mod == 0:
                    yield i, j


def color(f: GFactorization) -> tuple[ColorTable, FWord]:
    """Color the edge positions and return the table plus the color word,
    one letter ``(representative, sign)`` per position.

    Two positions are ``sim_c``-related only if their letters can cancel;
    the classes are the even-distance sides of the connected components of
    that relation, and the involution swaps the two sides of a component.
    """
    n = f.n
    pr = PrefixRatios(f)
    parent = list(range(n + 1))
    parity = [0] * (n + 1)

    def find(x: int) -> tuple[int, int]:
        path = []
        while parent[x] != x:
            path.append(x)
            x = parent[x]
        p = 0
        for node in reversed(path):
            p ^= parity[node]
            parity[node] = p
            parent[node] = x
        return x, parity[path[0]] if path else 0

    for i, j in _sim_pairs(f, pr):
        ri, pi = find(i)
        rj, pj = find(j)
        if ri == rj:
            if pi == pj:
                raise AssertionError("coloring produced an odd cancellation cycle")
            continue
        parent[rj] = ri
        parity[rj] = pi ^ pj ^ 1

    roots = [0] * (n + 1)
    sides = [0] * (n + 1)
    members: dict[int, list[int]] = {}
    for t in range(1, n + 1):
        r, p = find(t)
        roots[t] = r
        sides[t] = p
        members.setdefault(r, []).append(t)

    class_ids: dict[tuple[int, int], int] = {}
    class_of = [0] * (n + 1)
    classes: list[list[int]] = []
    for t in range(1, n + 1):
        key = (roots[t], sides[t])
        if key not in class_ids:
            class_ids[key] = len(classes)
            classes.append([])
        c = class_ids[key]
        class_of[t] = c
        classes[c].append(t)

    inverse: list[Optional[int]] = []
    representative: list[int] = []
    sign: list[int] = []
    for (root, side), c in sorted(class_ids.items(), key=lambda kv: kv[1]):
        partner = class_ids.get((root, 1 - side))
        inverse.append(partner)
        rep = members[root][0]
        representative.append(rep)
        sign.append(1 if sides[rep] == side else -1)

    table = ColorTable(
        n,
        tuple(class_of),
        tuple(tuple(c) for c in classes),
        tuple(inverse),
        tuple(representative),
        tuple(sign),
    )
    word = tuple(table.letter(t) for t in range(1, n + 1))
    return table, word


def word_problem(f: GFactorization) -> bool:
    """Whether a closed factorization represents the identity: the total
    interval exponent is zero and the color word embeds trivially into the
    rank-2 free group."""
    if not f.is_closed:
        raise WordError("word problem needs a closed factorization")
    pr = PrefixRatios(f)
    if pr.k_numerator(0, f.n) != 0:
        return False
    _, cword = color(f)
    return freegroup.is_trivial(freegroup.embed_f2(cword))


def vertex_group_exponent(f: GFactorization, i: int, j: int) -> Optional[int]:
    """The integer exponent the slice between i and j contracts to when it
    lies in the vertex group at its start, else None."""
    if not 0 <= i <= j <= f.n:
        raise IndexError(f"interval ({i}, {j}) out of range for n={f.n}")
    table, _ = color(f)
    if not freegroup.is_trivial(table.slice_word(i, j)):
        return None
    return PrefixRatios(f).k(i, j).as_integer()


def is_britton_reduced(f: GFactorization) -> bool:
    """No factor ``y v^k Y`` with beta(y) dividing k."""
    g = f.graph
    for r in range(f.n - 1):
        name, k = f.steps[r]
        if f.steps[r + 1][0] == g.inverse(name) and k % g.beta(name) == 0:
            return False
    return True


def britton_reduce_naive(f: GFactorization) -> GFactorization:
    """Reference reducer: repeatedly contract the leftmost factor ``y v^k Y``
    with beta(y) | k into a vertex power, merging adjacent powers."""
    g = f.graph
    exps = [f.k0] + [k for _, k in f.steps]
    names = [""] + [name for name, _ in f.steps]
    r = 1
    while r < len(names) - 1:
        name = names[r]
        if names[r + 1] == g.inverse(name) and exps[r] % g.beta(name) == 0:
            exps[r - 1] += g.alpha(name) * (exps[r] // g.beta(name)) + exps[r + 1]
            del names[r : r + 2]
            del exps[r : r + 2]
            r = max(1, r - 1)
        else:
            r += 1
    return GFactorization(
        g, f.base, exps[0], tuple(zip(names[1:], exps[1:]))
    )


def britton_reduce_fast(f: GFactorization) -> GFactorization:
    """Britton-reduce through the coloring: freely reduce the color word by
    cancellation classes and rebuild the factorization from the surviving
    positions, with the interval exponents between them."""
    if f.n == 0:
        return f
    pr = PrefixRatios(f)
    _, cword = color(f)
    survivors = [p + 1 for p in freegroup.reduction_classes(cword).survivors]
    if not survivors:
        return GFactorization(f.graph, f.base, pr.k(0, f.n).as_integer(), ())
    k0 = pr.k(0, survivors[0] - 1).as_integer()
    steps = []
    for r, pos in enumerate(survivors):
        upto = survivors[r + 1] - 1 if r + 1 < len(survivors) else f.n
        steps.append((f.steps[pos - 1][0], pr.k(pos, upto).as_integer()))
    return GFactorization(f.graph, f.base, k0, tuple(steps))


def _rotate_with_conjugator(f: GFactorization, m: int):
    """Cyclic rotation of a closed factorization by m edges, with the letters
    of a word z such that the rotation equals ``z f z^-1``."""
    g = f.graph
    steps = list(f.steps)
    n = len(steps)
    if m == 0:
        if f.k0 == 0:
            return f, ()
        steps[-1] = (steps[-1][0], steps[-1][1] + f.k0)
        rot = GFactorization(g, f.base, 0, tuple(steps))
        return rot, (VertexPower(f.base, -f.k0),)
    tail = steps[m:]
    tail[-1] = (tail[-1][0], tail[-1][1] + f.k0)
    base = g.source(steps[m][0])
    rot = GFactorization(g, base, 0, tuple(tail + steps[:m]))
    conj: list[Letter] = []
    for name, k in f.steps[m:]:
        conj.append(EdgeLetter(name))
        if k:
            conj.append(VertexPower(g.target(name), k))
    return rot, tuple(conj)


def _seam_reducible(f: GFactorization) -> bool:
    """Whether doubling the word creates a new contraction at the seam."""
    g = f.graph
    name, k = f.steps[-1]
    return f.steps[0][0] == g.inverse(name) and (k + f.k0) % g.beta(name) == 0


def cyclically_reduce_with_conjugator(f: GFactorization, reducer=britton_reduce_fast):
    """Cyclically Britton-reduce a closed factorization; also return letters
    of a word z with ``result = z f z^-1``.

    Hyperbolic results are normalized to start with an edge letter.  One
    half-way rotation after reducing suffices: reapplying the reducer to the
    rotation of a Britton-reduced word yields a cyclically reduced word.
    """
    if not f.is_closed:
        raise WordError("cyclic reduction needs a closed factorization")
    h = reducer(f)
    conj: tuple = ()
    while h.n:
        if h.k0 != 0:
            h, z = _rotate_with_conjugator(h, 0)
            conj = tuple(z) + conj
        if not _seam_reducible(h):
            break
        rot, z = _rotate_with_conjugator(h, h.n // 2)
        conj = tuple(z) + conj
        h = reducer(rot)
    return h, conj


def cyclically_reduce(f: GFactorization) -> GFactorization:
    """Cyclically Britton-reduced factorization conjugate to the input."""
    out, _ = cyclically_reduce_with_conjugator(f)
    return out
