"""Conjugacy decision for closed factorizations.

After cyclic Britton reduction a word is either elliptic (a single vertex
power) or hyperbolic (at least one edge).  Hyperbolic pairs are decided by
rotating one operand over the other and solving the exact linear system a
conjugating vertex power must satisfy; with a ratio product of one the system
degenerates into simultaneous congruences.  Elliptic pairs reduce to a
commutative-monoid congruence over the graph's primes; a bounded search may
come back undecided, so the verdict is three-valued.  Every positive answer
carries a conjugator witness that is verified against the word problem.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from . import arith, monoid
from .britton import (
    _rotate_with_conjugator,
    britton_reduce_naive,
    cyclically_reduce_with_conjugator,
    word_problem,
)
from .graphs import (
    EdgeLetter,
    GbsError,
    GbsGraph,
    GFactorization,
    Letter,
    VertexPower,
    WordError,
    invert,
    to_factorization,
)


class ConjVerdict(enum.Enum):
    CONJUGATE = "conjugate"
    NOT_CONJUGATE = "not-conjugate"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ConjResult:
    verdict: ConjVerdict
    witness: Optional[tuple[Letter, ...]] = None
    reason: str = ""


def invert_letters(letters: Sequence[Letter], graph: GbsGraph) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for letter in reversed(letters):
        if isinstance(letter, VertexPower):
            out.append(VertexPower(letter.vertex, -letter.exp))
        else:
            out.append(EdgeLetter(graph.inverse(letter.edge)))
    return tuple(out)


def verify_conjugator(
    witness: Sequence[Letter], v: GFactorization, w: GFactorization
) -> bool:
    """Whether ``witness * v * witness^-1 * w^-1`` is a valid closed word
    representing the identity."""
    graph = v.graph
    letters = (
        list(witness)
        + list(v.letters())
        + list(invert_letters(witness, graph))
        + list(invert(w).letters())
    )
    try:
        f = to_factorization(letters, graph)
    except WordError:
        return False
    return f.is_closed and word_problem(f)


def _underlying_path(f: GFactorization) -> tuple[str, ...]:
    return tuple(name for name, _ in f.steps)


@dataclass(frozen=True)
class HypSystem:
    """The constraint system a conjugating vertex power must satisfy for two
    aligned hyperbolic words.

    When the ratio product around the loop differs from one, ``x`` holds the
    unique rational candidate and ``xs`` the per-edge values it forces; the
    pair is conjugate iff all of them are integers.  With ratio product one,
    ``closing`` must vanish and ``x`` is constrained by ``congruences``
    (pairs c_i, d_i for z = modulus * x); the moduli and the modulus are
    products of edge labels, so they factor over the graph's primes.
    """

    closing: arith.ExactRational
    x: Optional[arith.ExactRational] = None
    xs: tuple = ()
    modulus: Optional[int] = None
    congruences: tuple = ()


def hyperbolic_system(v: GFactorization, w: GFactorization) -> HypSystem:
    """Build the conjugating-power constraints for two cyclically reduced
    hyperbolic factorizations over the same underlying path."""
    g = v.graph
    n = v.n
    ks = [k for _, k in v.steps]
    ls = [k for _, k in w.steps]
    alpha = [g.alpha(name) for name, _ in v.steps]
    beta = [g.beta(name) for name, _ in v.steps]

    # prefix products over edges 1..i (index 0 = empty product)
    pa = [1] * (n + 1)
    pb = [1] * (n + 1)
    for i in range(1, n + 1):
        pa[i] = pa[i - 1] * alpha[i - 1]
        pb[i] = pb[i - 1] * beta[i - 1]
    # suffix beta products over edges nu+1..n
    sb = [1] * (n + 1)
    for i in range(n - 1, -1, -1):
        sb[i] = sb[i + 1] * beta[i]
    # sum over nu of (k - l) * prod_{mu > nu} beta/alpha, over denominator pa[n]
    s_num = sum((ks[nu] - ls[nu]) * sb[nu + 1] * pa[nu + 1] for nu in range(n))

    def chain(x: arith.ExactRational) -> tuple:
        xs = [x / alpha[0]]
        for i in range(n - 1):
            xs.append((xs[-1] * beta[i] + (ks[i] - ls[i])) / alpha[i + 1])
        return tuple(xs)

    if pa[n] != pb[n]:
        x = arith.ExactRational(s_num, pa[n] - pb[n])
        return HypSystem(arith.ExactRational(0), x=x, xs=chain(x))

    closing = arith.ExactRational(s_num, pa[n])
    if not closing.is_zero():
        return HypSystem(closing)
    # every x solves the closing equation; the per-edge integrality
    # constraints become congruences z = c_i mod d_i for z = modulus * x
    big_m = 1
    for i in range(1, n + 1):
        big_m *= pb[i - 1]
    congruences = [(0, big_m)]
    for i in range(1, n + 1):
        scale = big_m // pb[i - 1]
        inner = sum(
            (ks[nu] - ls[nu]) * pa[nu + 1] * (pb[i - 1] // pb[nu + 1])
            for nu in range(i - 1)
        )
        congruences.append((-scale * inner, scale * alpha[i - 1] * pa[i - 1]))
    return HypSystem(closing, modulus=big_m, congruences=tuple(congruences))


def _aligned_power_exponent(v: GFactorization, w: GFactorization) -> Optional[int]:
    """The integer x with ``base^x v base^-x = w`` for two cyclically reduced
    hyperbolic factorizations over the same underlying path, or None.

    Matching the two words through Britton moves forces one linear equation
    per edge; :func:`hyperbolic_system` eliminates them into either a unique
    rational candidate for x or a set of simultaneous congruences.
    """
    system = hyperbolic_system(v, w)
    if not system.closing.is_zero():
        return None
    if system.x is not None:
        if system.x.is_integer() and all(xi.is_integer() for xi in system.xs):
            return system.x.as_integer()
        return None
    sol = arith.crt_solve(system.congruences, v.graph.prime_set())
    if sol is None:
        return None
    z, _ = sol
    assert z % system.modulus == 0
    x = z // system.modulus
    check = (
        (VertexPower(v.base, x),) if x else ()
    ) + v.letters() + (
        (VertexPower(v.base, -x),) if x else ()
    ) + invert(w).letters()
    assert word_problem(to_factorization(check, v.graph))
    return x


def conj_hyperbolic(
    v: GFactorization, w: GFactorization
) -> Optional[tuple[int, int]]:
    """First rotation of w aligning its underlying path with v's that admits
    a conjugating vertex power, as ``(rotation, x)``; None when no rotation
    works.  Both inputs must be cyclically reduced, hyperbolic, and start
    with an edge letter."""
    for f in (v, w):
        if f.n == 0 or f.k0 != 0 or not f.is_closed:
            raise WordError("expected a cyclically reduced hyperbolic word")
    if v.n != w.n:
        return None
    path = _underlying_path(v)
    for r in range(w.n):
        rot, _ = _rotate_with_conjugator(w, r)
        if _underlying_path(rot) != path:
            continue
        x = _aligned_power_exponent(v, rot)
        if x is not None:
            return r, x
    return None


def _power_match(c1: int, m1: int, c2: int, m2: int) -> bool:
    """Whether ``c1 * m1^j == c2 * m2^j`` for some j >= 1 (|m1| != |m2|)."""
    a1, a2 = abs(m1), abs(m2)
    x, y = c1 * m1, c2 * m2
    while True:
        if x == y:
            return True
        if a1 > a2 and abs(x) > abs(y):
            return False
        if a1 < a2 and abs(x) < abs(y):
            return False
        x *= m1
        y *= m2


def conj_elliptic_bs(p: int, q: int, k: int, ell: int) -> bool:
    """Conjugacy of two vertex powers in the one-loop group
    ``<a, y | y a^p Y = a^q>``: some power of q/p carries k to ell, with k
    divisible by p and ell by q for positive powers (swapped for negative)."""
    if p == 0 or q == 0:
        raise GbsError("p and q must be nonzero")
    if k == 0 or ell == 0:
        return k == ell
    if k == ell:
        return True
    pos_ok = k % p == 0 and ell % q == 0
    neg_ok = k % q == 0 and ell % p == 0
    if abs(p) == abs(q):
        # the ratio has magnitude one; only single steps matter
        return (pos_ok and k * q == ell * p) or (neg_ok and ell * q == k * p)
    if pos_ok and _power_match(k, q, ell, p):
        return True
    return neg_ok and _power_match(ell, q, k, p)


def conj_elliptic(
    a: str,
    k: int,
    b: str,
    ell: int,
    graph: GbsGraph,
    bound: Optional[int] = None,
) -> ConjResult:
    """Conjugacy of the vertex powers ``a^k`` and ``b^ell``: residuals over
    the graph's primes must agree, and the exponent vectors must be
    congruent in the derived monoid; a congruence path maps back to an
    edge-letter conjugator."""
    if k == 0 and ell == 0:
        return ConjResult(ConjVerdict.CONJUGATE, ())
    if k == 0 or ell == 0:
        return ConjResult(ConjVerdict.NOT_CONJUGATE, reason="only 1 is conjugate to 1")
    enc = monoid.gbs_to_monoid(graph)
    fk = arith.factor_over(k, enc.primes)
    fl = arith.factor_over(ell, enc.primes)
    if fk.residual != fl.residual:
        return ConjResult(ConjVerdict.NOT_CONJUGATE, reason="residual mismatch")
    res = monoid.congruent(enc.encode(a, k), enc.encode(b, ell), enc.presentation, bound)
    if res.verdict is monoid.Verdict.NOT_CONGRUENT:
        return ConjResult(ConjVerdict.NOT_CONJUGATE, reason=res.reason)
    if res.verdict is monoid.Verdict.UNKNOWN:
        return ConjResult(ConjVerdict.UNKNOWN, reason=res.reason)
    witness = enc.witness_letters(res.path)
    va = GFactorization(graph, a, k, ())
    wb = GFactorization(graph, b, ell, ())
    assert verify_conjugator(witness, va, wb)
    return ConjResult(ConjVerdict.CONJUGATE, witness)


def conjugate(
    v: GFactorization, w: GFactorization, bound: Optional[int] = None
) -> ConjResult:
    """Decide conjugacy of two closed factorizations.

    Both are cyclically reduced first.  Two elliptic words go through the
    monoid route (the one place an UNKNOWN can arise); two hyperbolic words
    go through rotations and the exact conjugating-power system; a mixed
    pair, or hyperbolic words of different lengths, cannot be conjugate.
    """
    if v.graph != w.graph:
        raise GbsError("words live over different graphs")
    if not v.is_closed or not w.is_closed:
        raise WordError("conjugacy needs closed factorizations")
    graph = v.graph
    vh, zv = cyclically_reduce_with_conjugator(v)
    wh, zw = cyclically_reduce_with_conjugator(w)
    zw_inv = invert_letters(zw, graph)

    if vh.n == 0 and wh.n == 0:
        res = conj_elliptic(vh.base, vh.k0, wh.base, wh.k0, graph, bound)
        if res.verdict is not ConjVerdict.CONJUGATE:
            return res
        witness = zw_inv + res.witness + tuple(zv)
        assert verify_conjugator(witness, v, w)
        return ConjResult(ConjVerdict.CONJUGATE, witness)

    if vh.n != wh.n or vh.n == 0 or wh.n == 0:
        return ConjResult(
            ConjVerdict.NOT_CONJUGATE, reason="cyclically reduced shapes differ"
        )

    path = _underlying_path(vh)
    for r in range(wh.n):
        rot, zr = _rotate_with_conjugator(wh, r)
        if _underlying_path(rot) != path:
            continue
        x = _aligned_power_exponent(vh, rot)
        if x is None:
            continue
        middle = (VertexPower(vh.base, x),) if x else ()
        witness = zw_inv + invert_letters(zr, graph) + middle + tuple(zv)
        assert verify_conjugator(witness, v, w)
        return ConjResult(ConjVerdict.CONJUGATE, witness)
    return ConjResult(ConjVerdict.NOT_CONJUGATE, reason="no rotation admits a conjugating power")


def elliptic_closure(
    graph: GbsGraph, vertex: str, k: int, radius: int, node_cap: int = 500_000
):
    """Chain-search closure of a vertex power under single edge-letter
    conjugations with exponents capped at ``radius``.

    Returns ``(parents, capped)`` where parents maps each reached state
    ``(vertex, exponent)`` to ``(previous state, edge letter)`` (None at the
    start state) and ``capped`` reports whether anything was pruned.
    """
    into: dict[str, list] = {u: [] for u in graph.vertices}
    for e in graph.edges:
        into[e.dst].append(e)
    start = (vertex, k)
    parents: dict[tuple[str, int], Optional[tuple]] = {start: None}
    frontier = [start]
    capped = False
    while frontier:
        nxt = []
        for state in frontier:
            u, m = state
            for e in into[u]:
                if m % e.beta:
                    continue
                m2 = e.alpha * (m // e.beta)
                if abs(m2) > radius:
                    capped = True
                    continue
                s2 = (e.src, m2)
                if s2 in parents:
                    continue
                if len(parents) >= node_cap:
                    capped = True
                    continue
                parents[s2] = (state, e.name)
                nxt.append(s2)
        frontier = nxt
    return parents, capped


def _chain_letters(parents, goal) -> tuple[Letter, ...]:
    letters: list[Letter] = []
    state = goal
    while parents[state] is not None:
        state, name = parents[state]
        letters.append(EdgeLetter(name))
    return tuple(letters)


def conj_brute_status(
    v: GFactorization, w: GFactorization, radius: int
) -> tuple[ConjVerdict, Optional[tuple[Letter, ...]]]:
    """Search-only conjugacy oracle.

    Elliptic pairs: breadth-first chain search over (vertex, exponent)
    states; an exhausted closure below the radius is a definitive no.
    Hyperbolic pairs: scan every rotation and every conjugating power with
    |x| <= radius; only a found witness decides.  Everything else is
    UNKNOWN.  Witnesses are verified before being returned.
    """
    graph = v.graph
    vh, zv = cyclically_reduce_with_conjugator(v, reducer=britton_reduce_naive)
    wh, zw = cyclically_reduce_with_conjugator(w, reducer=britton_reduce_naive)
    zw_inv = invert_letters(zw, graph)

    if vh.n == 0 and wh.n == 0:
        parents, capped = elliptic_closure(graph, vh.base, vh.k0, radius)
        goal = (wh.base, wh.k0)
        if goal in parents:
            witness = zw_inv + _chain_letters(parents, goal) + tuple(zv)
            if verify_conjugator(witness, v, w):
                return ConjVerdict.CONJUGATE, witness
            return ConjVerdict.UNKNOWN, None
        return (ConjVerdict.UNKNOWN if capped else ConjVerdict.NOT_CONJUGATE), None

    if vh.n == 0 or wh.n == 0 or vh.n != wh.n:
        return ConjVerdict.UNKNOWN, None

    n = vh.n
    ks = [k for _, k in vh.steps]
    alpha = [graph.alpha(name) for name, _ in vh.steps]
    beta = [graph.beta(name) for name, _ in vh.steps]
    path = _underlying_path(vh)
    for r in range(n):
        rot, zr = _rotate_with_conjugator(wh, r)
        if _underlying_path(rot) != path:
            continue
        ls = [k for _, k in rot.steps]

        def works(x: int) -> bool:
            cur = ks[n - 1] - x - ls[n - 1]
            for i in range(n - 1, -1, -1):
                if cur % beta[i]:
                    return False
                t = alpha[i] * (cur // beta[i])
                if i == 0:
                    return x + t == 0
                cur = ks[i - 1] - ls[i - 1] + t
            return False

        step = abs(beta[n - 1])
        first = -radius + (ks[n - 1] - ls[n - 1] + radius) % step
        for x in range(first, radius + 1, step):
            if not works(x):
                continue
            middle = (VertexPower(vh.base, x),) if x else ()
            witness = zw_inv + invert_letters(zr, graph) + middle + tuple(zv)
            if verify_conjugator(witness, v, w):
                return ConjVerdict.CONJUGATE, witness
    return ConjVerdict.UNKNOWN, None


def conj_brute(
    v: GFactorization, w: GFactorization, radius: int
) -> Optional[tuple[Letter, ...]]:
    """A verified conjugator found by brute search, or None (inconclusive)."""
    verdict, witness = conj_brute_status(v, w, radius)
    return witness if verdict is ConjVerdict.CONJUGATE else None
