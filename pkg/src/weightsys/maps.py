"""Structure maps between the diagram spaces.

* ``disjoint_union`` — the product of the leg space (place diagrams side
  by side); ``connect_sum`` — the product of the circle space (concatenate
  the skeletons; well defined on the quotient, which the tests check).
* ``chi`` — the symmetrization map from legs to the circle: average over
  all orders in which the legs can be planted on the skeleton.
* ``closure`` — sum over all ways to glue the legs pairwise (optionally
  weighting each glued pair), landing in closed leg-space diagrams.
* ``cap`` — pair one diagram's legs into another's: sum over injections
  of the first diagram's legs into the second's, gluing matched pairs.
* wheels: the ``wheel`` diagrams, the modified Bernoulli coefficients of
  log(sinh(y/2)/(y/2)), and the truncated exponential ``omega`` built
  from them.

Gluing two legs fuses their incident edges; chains of fused struts that
close up entirely are recorded in ``free_loops``.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .algebra import DiagramVector
from .diagrams import Diagram, bare_circle, empty_diagram
from .errors import DiagramError, SpaceMismatchError

__all__ = [
    "strut", "theta", "wheel",
    "disjoint_union", "connect_sum", "chi", "closure", "cap",
    "modified_bernoulli", "wheels_vector", "omega", "exp_disjoint",
]


# ---------------------------------------------------------------------------
# builders


def strut() -> Diagram:
    """Two legs joined by an edge: the degree-(0,2) generator."""
    return Diagram._new("B", (), (0, 1), None, ((0, 1),))


def theta() -> Diagram:
    """The closed two-vertex diagram (three parallel edges)."""
    return Diagram._new("B", ((0, 1, 2), (3, 4, 5)), (), None,
                        ((0, 3), (1, 4), (2, 5)))


def wheel(k: int) -> Diagram:
    """The k-wheel: a rim cycle of k vertices, one leg (spoke) each.

    Vertex i carries (rim to i-1, rim to i+1, spoke); odd wheels are zero
    by antisymmetry (reflecting the rim reverses orientation).
    """
    if k < 2:
        raise ValueError("a wheel needs at least 2 rim vertices")
    triples = tuple((3 * i, 3 * i + 1, 3 * i + 2) for i in range(k))
    legs = tuple(3 * k + i for i in range(k))
    pairing = [(3 * i + 1, 3 * ((i + 1) % k)) for i in range(k)]
    pairing += [(3 * i + 2, 3 * k + i) for i in range(k)]
    return Diagram._new("B", triples, legs, None, pairing)


# ---------------------------------------------------------------------------
# unions


def _as_vector(x) -> DiagramVector:
    return x if isinstance(x, DiagramVector) else DiagramVector.single(x)


def _shift(d: Diagram, off: int) -> Diagram:
    return Diagram(
        d.space,
        tuple((a + off, b + off, c + off) for a, b, c in d.triples),
        tuple(g + off for g in d.legs),
        tuple(h + off for h in d.skeleton) if d.skeleton is not None else None,
        tuple(tuple(sorted((a + off, b + off))) for a, b in d.pairing),
        d.free_loops,
    )


def _offset(d: Diagram) -> int:
    return max(d.half_edges(), default=-1) + 1


def _union_diagrams(a: Diagram, b: Diagram) -> Diagram:
    b = _shift(b, _offset(a))
    return Diagram._new("B", a.triples + b.triples, a.legs + b.legs, None,
                        a.pairing + b.pairing, a.free_loops + b.free_loops)


def disjoint_union(x, y) -> DiagramVector:
    """Bilinear product of the leg space: diagrams side by side."""
    out = []
    for a, ca in _as_vector(x)._terms.items():
        if a.space != "B":
            raise SpaceMismatchError("disjoint union is a leg-space product")
        for b, cb in _as_vector(y)._terms.items():
            if b.space != "B":
                raise SpaceMismatchError("disjoint union is a leg-space product")
            out.append((_union_diagrams(a, b), ca * cb))
    return DiagramVector(out)


def connect_sum(x, y) -> DiagramVector:
    """Bilinear product of the circle space: concatenate the skeletons.

    The class of the result does not depend on where the two circles are
    cut, because skeleton-resolution relations let attached pieces slide
    past each other; the test suite checks this on examples.
    """
    out = []
    for a, ca in _as_vector(x)._terms.items():
        if a.space != "A":
            raise SpaceMismatchError("connect sum is a circle-space product")
        for b, cb in _as_vector(y)._terms.items():
            if b.space != "A":
                raise SpaceMismatchError("connect sum is a circle-space product")
            bs = _shift(b, _offset(a))
            d = Diagram._new("A", a.triples + bs.triples, (),
                             a.skeleton + bs.skeleton, a.pairing + bs.pairing,
                             a.free_loops + b.free_loops)
            out.append((d, ca * cb))
    return DiagramVector(out)


# ---------------------------------------------------------------------------
# symmetrization


def chi(x) -> DiagramVector:
    """Average over all orders of planting the legs on a circle.

    A diagram with l legs maps to 1/l! times the sum of the circle-space
    diagrams whose skeleton is one permutation of those legs. Grading is
    preserved: (v, l) lands in total v + l. With no legs the result is the
    diagram floating beside a bare circle.
    """
    out = []
    for d, c in _as_vector(x)._terms.items():
        if d.space != "B":
            raise SpaceMismatchError("symmetrization starts from leg-space diagrams")
        w = Fraction(c, math.factorial(d.l))
        for perm in itertools.permutations(d.legs):
            out.append((Diagram._new("A", d.triples, (), perm, d.pairing,
                                     d.free_loops), w))
    return DiagramVector(out)


# ---------------------------------------------------------------------------
# gluing


def _glue(d: Diagram, pairs) -> Diagram:
    """Glue the given leg pairs of one diagram: each glued pair fuses its
    two incident edges into one; chains closing entirely among glued legs
    become free loops."""
    mate = {}
    legset = set(d.legs)
    for x, y in pairs:
        if x not in legset or y not in legset:
            raise DiagramError("gluing is only defined on legs")
        if x in mate or y in mate or x == y:
            raise DiagramError("gluing pairs must be disjoint")
        mate[x] = y
        mate[y] = x
    pmap = d.partner_map
    new_pairs = []
    seen = set()
    for h in d.half_edges():
        if h in mate or h in seen:
            continue
        p = pmap[h]
        while p in mate:
            seen.add(p)
            q = mate[p]
            seen.add(q)
            p = pmap[q]
        seen.add(p)
        new_pairs.append((h, p))
    loops = d.free_loops
    for x in mate:
        if x in seen:
            continue
        # a cycle of glued legs: follow it, record one loop
        cur = x
        while cur not in seen:
            seen.add(cur)
            nxt = mate[cur]
            seen.add(nxt)
            cur = pmap[nxt]
        loops += 1
    legs = tuple(g for g in d.legs if g not in mate)
    return Diagram._new(d.space, d.triples, legs, d.skeleton, new_pairs, loops)


def _leg_matchings(legs):
    legs = list(legs)
    if not legs:
        yield []
        return
    h = legs[0]
    for i in range(1, len(legs)):
        rest = legs[1:i] + legs[i + 1:]
        for m in _leg_matchings(rest):
            yield [(h, legs[i])] + m


def closure(x, pair_weight=1) -> DiagramVector:
    """Sum over all pairwise gluings of each diagram's legs.

    Each perfect matching of the legs contributes the glued diagram with
    coefficient pair_weight^(pairs). Diagrams with an odd number of legs
    contribute nothing.
    """
    w = Fraction(pair_weight)
    out = []
    for d, c in _as_vector(x)._terms.items():
        if d.space != "B":
            raise SpaceMismatchError("closure acts on leg-space diagrams")
        if d.l % 2:
            continue
        factor = c * w ** (d.l // 2)
        for m in _leg_matchings(d.legs):
            out.append((_glue(d, m), factor))
    return DiagramVector(out)


def cap(x, y) -> DiagramVector:
    """Pair the first argument's legs into the second's.

    For each pair of terms C (with j legs) and D (with k legs), sum over
    all j-element injections of C's legs into D's legs, gluing matched
    pairs; k - j legs survive. Terms with j > k contribute zero.
    """
    out = []
    for cdiag, cc in _as_vector(x)._terms.items():
        if cdiag.space != "B":
            raise SpaceMismatchError("capping acts on leg-space diagrams")
        for ddiag, cd in _as_vector(y)._terms.items():
            if ddiag.space != "B":
                raise SpaceMismatchError("capping acts on leg-space diagrams")
            if cdiag.l > ddiag.l:
                continue
            off = _offset(ddiag)
            cs = _shift(cdiag, off)
            u = Diagram._new("B", ddiag.triples + cs.triples,
                             ddiag.legs + cs.legs, None,
                             ddiag.pairing + cs.pairing,
                             ddiag.free_loops + cdiag.free_loops)
            coeff = cc * cd
            for image in itertools.permutations(ddiag.legs, cdiag.l):
                out.append((_glue(u, list(zip(cs.legs, image))), coeff))
    return DiagramVector(out)


# ---------------------------------------------------------------------------
# wheels


_mb_cache: list = []


def modified_bernoulli(i: int) -> Fraction:
    """Coefficient of y^(2i) in (1/2) log(sinh(y/2)/(y/2)).

    Computed by exact series arithmetic in the variable t = y^2:
    sinh(y/2)/(y/2) = sum_n t^n / (4^n (2n+1)!), and for A(t) with constant
    term 1 the log series L satisfies n*L_n = n*A_n - sum_k k*L_k*A_(n-k).
    First values: 1/48, -1/5760, 1/362880.
    """
    if i < 1:
        raise ValueError("modified Bernoulli coefficients start at i = 1")
    while len(_mb_cache) < i:
        n = len(_mb_cache) + 1
        a = [Fraction(1, 4 ** m * math.factorial(2 * m + 1)) for m in range(n + 1)]
        ln = a[n] - sum((k * _mb_cache[k - 1] * a[n - k]
                         for k in range(1, n)), Fraction(0)) / n
        _mb_cache.append(ln)
    return _mb_cache[i - 1] / 2


def wheels_vector(vmax: int) -> DiagramVector:
    """Sum of modified-Bernoulli multiples of even wheels up to vmax
    internal vertices (odd wheels are antisymmetry-zero and omitted)."""
    return DiagramVector((wheel(2 * i), modified_bernoulli(i))
                         for i in range(1, vmax // 2 + 1))


def _truncate_v(vec: DiagramVector, vmax: int) -> DiagramVector:
    return DiagramVector(_raw={d: c for d, c in vec._terms.items() if d.v <= vmax})


def exp_disjoint(x, vmax: int) -> DiagramVector:
    """exp of a leg-space vector under disjoint union, truncated to at most
    vmax internal vertices. Every term of x must have at least one vertex
    (otherwise the series would not terminate)."""
    x = _as_vector(x)
    if any(d.v == 0 for d in x._terms):
        raise ValueError("exp needs every term to carry internal vertices")
    out = DiagramVector.single(empty_diagram())
    term = out
    k = 0
    while True:
        k += 1
        term = _truncate_v(Fraction(1, k) * disjoint_union(term, x), vmax)
        if not term:
            return out
        out = out + term


def omega(vmax: int) -> DiagramVector:
    """The wheels element: exp (disjoint union) of the modified-Bernoulli
    wheel series, truncated to diagrams with at most vmax vertices."""
    return exp_disjoint(wheels_vector(vmax), vmax)
