"""Jacobi diagrams: validation, canonical forms with signs, enumeration.

A diagram is a vertex-oriented trivalent graph given by half-edges.
Half-edges are arbitrary non-negative integers; every half-edge sits in
exactly one *slot* (a slot of an internal trivalent vertex, a univalent
leg, or a point on the oriented skeleton circle) and a fixed-point-free
involution (the pairing) glues half-edges into edges.

Two spaces:

* B-space: no skeleton; univalent legs allowed; diagrams may have closed
  components (no legs at all).
* A-space: a preferred oriented circle carries the skeleton half-edges in
  cyclic order; no legs; components disjoint from the circle are allowed.

The orientation of an internal vertex is the cyclic order of its triple.
Reversing one triple negates the diagram (antisymmetry); the canonical
form therefore carries a sign in {+1, -1, 0}, where 0 means the diagram
has an orientation-reversing automorphism and hence equals minus itself.

``free_loops`` counts circle components with no vertices at all; they are
carried along as a plain counter (closures can create them).
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional

from .errors import DiagramError, GradingMismatchError, ResourceLimitError, SpaceMismatchError

__all__ = [
    "Diagram",
    "CanonicalForm",
    "validate",
    "canonicalize",
    "is_isomorphic",
    "automorphism_count",
    "enumerate_diagrams",
    "diagram_from_json",
    "diagram_to_json",
    "empty_diagram",
    "bare_circle",
]


class Diagram:
    """Immutable diagram. Use :func:`validate` (or ``diagram_from_json``)
    to build one from untrusted parts; internal code uses ``Diagram._new``
    with already-consistent data."""

    __slots__ = ("space", "triples", "legs", "skeleton", "pairing", "free_loops",
                 "_key", "_hash", "_pmap")

    def __init__(self, space, triples, legs, skeleton, pairing, free_loops):
        self.space = space
        self.triples = triples
        self.legs = legs
        self.skeleton = skeleton
        self.pairing = pairing
        self.free_loops = free_loops
        self._key = (space, free_loops, skeleton, triples, legs, pairing)
        self._hash = hash(self._key)
        self._pmap = None

    @staticmethod
    def _new(space, triples, legs, skeleton, pairing, free_loops=0) -> "Diagram":
        pairing = tuple(sorted(tuple(sorted(p)) for p in pairing))
        return Diagram(space, tuple(tuple(t) for t in triples), tuple(legs),
                       tuple(skeleton) if skeleton is not None else None,
                       pairing, free_loops)

    # --- basic accessors -------------------------------------------------

    @property
    def v(self) -> int:
        return len(self.triples)

    @property
    def l(self) -> int:
        return len(self.legs)

    @property
    def e(self) -> int:
        return len(self.skeleton) if self.skeleton is not None else 0

    @property
    def total(self) -> int:
        """Total grading: internal vertices plus legs (B) or skeleton points (A)."""
        return self.v + (self.e if self.space == "A" else self.l)

    def grading_key(self):
        """Key of the graded piece this diagram lives in (loops tracked apart)."""
        if self.space == "A":
            return ("A", self.total, self.free_loops)
        return ("B", self.v, self.l, self.free_loops)

    @property
    def partner_map(self) -> dict:
        if self._pmap is None:
            m = {}
            for a, b in self.pairing:
                m[a] = b
                m[b] = a
            self._pmap = m
        return self._pmap

    def half_edges(self):
        for t in self.triples:
            yield from t
        yield from self.legs
        if self.skeleton:
            yield from self.skeleton

    def without_loops(self) -> "Diagram":
        if self.free_loops == 0:
            return self
        return Diagram(self.space, self.triples, self.legs, self.skeleton, self.pairing, 0)

    def with_loops(self, k: int) -> "Diagram":
        if k == self.free_loops:
            return self
        return Diagram(self.space, self.triples, self.legs, self.skeleton, self.pairing, k)

    # --- identity --------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Diagram) and self._key == other._key

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return (self.space, self.total, self.v, self.l, self.e, self.free_loops,
                self.pairing, self.triples, self.legs, self.skeleton or ())

    def __repr__(self):
        sk = "" if self.skeleton is None else f", skeleton={list(self.skeleton)}"
        fl = f", free_loops={self.free_loops}" if self.free_loops else ""
        return (f"Diagram({self.space!r}, triples={list(self.triples)}, "
                f"legs={list(self.legs)}{sk}, pairing={list(self.pairing)}{fl})")


class CanonicalForm:
    """A canonical representative together with the antisymmetry sign.

    ``d == sign * diagram`` in the diagram algebra; ``sign == 0`` exactly
    when the input has an orientation-reversing automorphism."""

    __slots__ = ("diagram", "sign")

    def __init__(self, diagram: Diagram, sign: int):
        self.diagram = diagram
        self.sign = sign

    def __iter__(self):
        yield self.diagram
        yield self.sign

    def __repr__(self):
        return f"CanonicalForm(sign={self.sign}, diagram={self.diagram!r})"


# ---------------------------------------------------------------------------
# validation


def _check_id(x, what):
    if type(x) is not int or x < 0:
        raise DiagramError(f"{what} must be a non-negative integer, got {x!r}")


def validate(space, internal=(), legs=(), skeleton=None, pairing=(), free_loops=0) -> Diagram:
    """Build a Diagram from raw parts, checking every structural invariant."""
    if space not in ("A", "B"):
        raise DiagramError(f"space must be 'A' or 'B', got {space!r}")
    if space == "A":
        if skeleton is None:
            raise DiagramError("A-space diagrams require a skeleton (possibly empty)")
        if legs:
            raise DiagramError("A-space diagrams cannot carry legs")
    else:
        if skeleton is not None:
            raise DiagramError("B-space diagrams cannot carry a skeleton")
    if type(free_loops) is not int or free_loops < 0:
        raise DiagramError("free_loops must be a non-negative integer")

    seen = set()

    def claim(h, what):
        _check_id(h, what)
        if h in seen:
            raise DiagramError(f"half-edge {h} used in more than one slot")
        seen.add(h)

    triples = []
    for t in internal:
        t = tuple(t)
        if len(t) != 3:
            raise DiagramError(f"internal vertex {t!r} must have exactly 3 half-edges")
        for h in t:
            claim(h, "internal half-edge")
        triples.append(t)
    for h in legs:
        claim(h, "leg half-edge")
    if skeleton is not None:
        for h in skeleton:
            claim(h, "skeleton half-edge")

    paired = set()
    pairs = []
    for p in pairing:
        p = tuple(p)
        if len(p) != 2:
            raise DiagramError(f"pairing entry {p!r} must have exactly 2 half-edges")
        a, b = p
        _check_id(a, "paired half-edge")
        _check_id(b, "paired half-edge")
        if a == b:
            raise DiagramError(f"pairing fixes half-edge {a}; edges join distinct half-edges")
        for h in (a, b):
            if h not in seen:
                raise DiagramError(f"pairing mentions unknown half-edge {h}")
            if h in paired:
                raise DiagramError(f"half-edge {h} paired more than once")
            paired.add(h)
        pairs.append((a, b))
    dangling = seen - paired
    if dangling:
        raise DiagramError(f"dangling half-edges (unpaired): {sorted(dangling)}")
    return Diagram._new(space, triples, tuple(legs), skeleton, pairs, free_loops)


# ---------------------------------------------------------------------------
# canonical form

_INFV_OFF = 1  # unplaced internal partner sorts before ...
_INFL_OFF = 2  # ... a leg partner


def _component_search(triples, legs, skeleton, partner, n):
    """Lexicographically minimal labeling of one connected component.

    All half-edges are assumed relabeled 0..n-1. Returns
    ``(sig, sign, relabel, nstates, struts)`` where ``relabel[h]`` is the
    canonical label of half-edge ``h``, ``sig`` is a flat integer tuple that
    determines the component up to isomorphism, and ``sign`` is +1/-1/0.
    ``nstates`` is the number of minimal labelings that survive to the end;
    the automorphism group of the component (allowing vertex reflections)
    acts simply transitively on minimal labelings, except that the search
    assigns leg labels by one forced rule per state, so
    ``|Aut| = nstates * 2^struts * struts!``.

    The labeling family searched: choose a rotation of the skeleton (the
    circle is oriented, so no reflections), an order in which to place the
    internal vertices and, for each, one of the six rewritings of its
    triple (three rotations keep the orientation, three reversals flip the
    sign); legs are ordered canonically afterwards. At each stage only the
    choices extending the minimal partial signature survive.
    """
    v = len(triples)
    l = len(legs)
    has_sk = skeleton is not None
    e = len(skeleton) if has_sk else 0
    legset = frozenset(legs)
    inf_v = n + _INFV_OFF
    inf_l = n + _INFL_OFF

    reps = []
    for (a, b, c) in triples:
        reps.append((((a, b, c), 1), ((b, c, a), 1), ((c, a, b), 1),
                     ((c, b, a), -1), ((b, a, c), -1), ((a, c, b), -1)))

    if has_sk and e:
        states = []
        for r in range(e):
            lab = {skeleton[(r + pos) % e]: pos for pos in range(e)}
            states.append((lab, 0, 1))
    else:
        states = [({}, 0, 1)]

    sig = [v, l, e, n]

    for depth in range(v):
        base = e + 3 * depth
        best = None
        chosen = []
        for lab, placed, sgn in states:
            for vi in range(v):
                if placed >> vi & 1:
                    continue
                for trip, s in reps[vi]:
                    cs = []
                    for j in range(3):
                        p = partner[trip[j]]
                        pl = lab.get(p)
                        if pl is None:
                            if p == trip[0]:
                                pl = base
                            elif p == trip[1]:
                                pl = base + 1
                            elif p == trip[2]:
                                pl = base + 2
                            elif p in legset:
                                pl = inf_l
                            else:
                                pl = inf_v
                        cs.append(pl)
                    chunk = (cs[0], cs[1], cs[2])
                    if best is None or chunk < best:
                        best = chunk
                        chosen = [(lab, placed, sgn, vi, trip, s)]
                    elif chunk == best:
                        chosen.append((lab, placed, sgn, vi, trip, s))
        sig.extend(best)
        states = []
        seen = set()
        for lab, placed, sgn, vi, trip, s in chosen:
            lab2 = dict(lab)
            lab2[trip[0]] = base
            lab2[trip[1]] = base + 1
            lab2[trip[2]] = base + 2
            sgn2 = sgn * s
            key = (frozenset(lab2.items()), sgn2)
            if key in seen:
                continue
            seen.add(key)
            states.append((lab2, placed | (1 << vi), sgn2))

    # legs: ordered by the canonical label of their partner; leg-leg pairs
    # (struts) are mutually interchangeable and come last.
    if l:
        best = None
        chosen = []
        for lab, placed, sgn in states:
            ext = sorted(lab[partner[g]] for g in legs if partner[g] not in legset)
            struts = sum(1 for g in legs if partner[g] in legset and partner[g] > g)
            chunk = (len(ext), *ext, struts)
            if best is None or chunk < best:
                best = chunk
                chosen = [(lab, placed, sgn)]
            elif chunk == best:
                chosen.append((lab, placed, sgn))
        sig.extend(best)
        legbase = e + 3 * v
        states = []
        for lab, placed, sgn in chosen:
            lab2 = dict(lab)
            i = legbase
            for g in sorted((g for g in legs if partner[g] not in legset),
                            key=lambda x: lab[partner[x]]):
                lab2[g] = i
                i += 1
            for g in sorted(legs):
                if partner[g] in legset and partner[g] > g:
                    lab2[g] = i
                    lab2[partner[g]] = i + 1
                    i += 2
            states.append((lab2, placed, sgn))

    if has_sk and e:
        best = None
        chosen = []
        for lab, placed, sgn in states:
            inv = [0] * e
            for h in skeleton:
                inv[lab[h]] = h
            chunk = tuple(lab[partner[inv[pos]]] for pos in range(e))
            if best is None or chunk < best:
                best = chunk
                chosen = [(lab, placed, sgn)]
            elif chunk == best:
                chosen.append((lab, placed, sgn))
        sig.extend(best)
        states = chosen

    signs = {sgn for _, _, sgn in states}
    sign = 0 if len(signs) == 2 else signs.pop()
    lab = states[0][0]
    relabel = [0] * n
    for h, x in lab.items():
        relabel[h] = x
    struts = sum(1 for g in legs if partner[g] in legset and partner[g] > g)
    return tuple(sig), sign, relabel, len(states), struts


_comp_memo: dict = {}
_canon_memo: dict = {}


def _min_rotation(t):
    a, b, c = t
    return min((a, b, c), (b, c, a), (c, a, b))


def _canon_component(triples, legs, skeleton, pmap):
    """Canonicalize one component (original ids); memoized on the structure
    normalized by rank-relabeling its half-edges."""
    hes = sorted(set(itertools.chain(*triples)) | set(legs)
                 | (set(skeleton) if skeleton else set())
                 | set(pmap))
    norm = {h: i for i, h in enumerate(hes)}
    n = len(hes)
    ntrip = tuple(sorted(_min_rotation((norm[a], norm[b], norm[c])) for a, b, c in triples))
    nlegs = tuple(sorted(norm[g] for g in legs))
    nskel = tuple(norm[h] for h in skeleton) if skeleton is not None else None
    npart = [0] * n
    for a, b in pmap.items():
        npart[norm[a]] = norm[b]
    key = (ntrip, nlegs, nskel, tuple(npart))
    hit = _comp_memo.get(key)
    if hit is None:
        hit = _component_search(list(ntrip), nlegs, nskel, npart, n)
        _comp_memo[key] = hit
    sig, sign, rel, nstates, struts = hit
    relabel = {h: rel[norm[h]] for h in hes}
    return (sig, sign, relabel, len(ntrip), len(nlegs),
            len(nskel) if nskel is not None else 0, nstates, struts)


def _split_components(d: Diagram):
    """Connected components of ``d``, each canonicalized on its own.

    Returns ``(sk_comp, floats)`` where ``sk_comp`` is the component holding
    the skeleton circle (a synthetic empty one when an A-diagram has no
    skeleton half-edges; ``None`` in B-space) and ``floats`` is the list of
    the remaining components sorted by signature. Entries are tuples
    ``(sig, sign, relabel, v, l, e, nstates, struts)``.
    """
    pmap = d.partner_map
    parent = {h: h for h in pmap}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for t in d.triples:
        union(t[0], t[1])
        union(t[1], t[2])
    for a, b in d.pairing:
        union(a, b)
    if d.skeleton:
        first = d.skeleton[0]
        for h in d.skeleton[1:]:
            union(first, h)

    groups: dict = {}
    for h in pmap:
        groups.setdefault(find(h), []).append(h)

    floats = []
    sk_comp = None
    for _, hes in sorted(groups.items(), key=lambda kv: min(kv[1])):
        hset = set(hes)
        ctrip = [t for t in d.triples if t[0] in hset]
        clegs = [g for g in d.legs if g in hset]
        cpm = {h: pmap[h] for h in hes}
        if d.skeleton and d.skeleton[0] in hset:
            sk_comp = _canon_component(ctrip, clegs, d.skeleton, cpm)
        else:
            floats.append(_canon_component(ctrip, clegs, None, cpm))
    if d.space == "A" and sk_comp is None:
        # bare circle: an empty skeleton component
        sk_comp = ((0, 0, 0, 0), 1, {}, 0, 0, 0, 1, 0)
    floats.sort(key=lambda c: c[0])
    return sk_comp, floats


def canonicalize(d: Diagram) -> CanonicalForm:
    """Canonical representative and antisymmetry sign of ``d``.

    Components are canonicalized independently (an automorphism exchanging
    whole components never reverses a vertex orientation, so the sign is
    the product of component signs). In A-space the component carrying the
    circle comes first; the remaining components are sorted by their
    canonical signatures. Labels: skeleton half-edges first in circle
    order, then vertex triples as consecutive blocks, then legs.
    """
    cached = _canon_memo.get(d._key)
    if cached is not None:
        return cached

    sk_comp, comps = _split_components(d)
    ordered = ([sk_comp] if sk_comp is not None else []) + comps

    e = ordered[0][5] if d.space == "A" else 0
    vtot = sum(c[3] for c in ordered)
    sign = 1
    global_map = {}
    vbase = 0
    lbase = e + 3 * vtot
    for sig, s, relabel, cv, cl, ce, _, _ in ordered:
        sign = sign * s
        voff = e + 3 * vbase - ce  # mini vertex label x -> global x - ce + e + 3*vbase
        loff = lbase - ce - 3 * cv
        for h, x in relabel.items():
            if x < ce:
                global_map[h] = x  # skeleton labels (only the circle component)
            elif x < ce + 3 * cv:
                global_map[h] = x + voff
            else:
                global_map[h] = x + loff
        vbase += cv
        lbase += cl

    triples = tuple((e + 3 * i, e + 3 * i + 1, e + 3 * i + 2) for i in range(vtot))
    ltot = sum(c[4] for c in ordered)
    legs = tuple(range(e + 3 * vtot, e + 3 * vtot + ltot))
    skeleton = tuple(range(e)) if d.space == "A" else None
    pairing = sorted(tuple(sorted((global_map[a], global_map[b]))) for a, b in d.pairing)
    canon = Diagram(d.space, triples, legs, skeleton, tuple(pairing), d.free_loops)
    cf = CanonicalForm(canon, sign)
    _canon_memo[d._key] = cf
    if canon._key not in _canon_memo:
        _canon_memo[canon._key] = CanonicalForm(canon, 0 if sign == 0 else 1)
    return cf


def is_isomorphic(d1: Diagram, d2: Diagram) -> Optional[int]:
    """Relative sign if the diagrams are isomorphic, ``None`` otherwise.

    Agrees with :func:`canonicalize`: if ``d1 = s1*C`` and ``d2 = s2*C``
    then the relative sign is ``s1*s2`` (0 when both are antisymmetry-zero,
    except that a diagram is always +1-isomorphic to itself).
    """
    if d1.space != d2.space:
        raise SpaceMismatchError(f"cannot compare {d1.space}- and {d2.space}-space diagrams")
    if d1.grading_key() != d2.grading_key():
        raise GradingMismatchError(
            f"grading mismatch: {d1.grading_key()} vs {d2.grading_key()}")
    if d1 == d2:
        return 1
    c1 = canonicalize(d1)
    c2 = canonicalize(d2)
    if c1.diagram != c2.diagram:
        return None
    return c1.sign * c2.sign


def automorphism_count(d: Diagram) -> int:
    """Order of the unoriented symmetry group of ``d``.

    Counted symmetries: half-edge permutations preserving the structure that
    act by arbitrary permutations inside each vertex triple (rotations and
    reflections), permutations of legs, permutations of whole components,
    and rotations of the skeleton circle. This is exactly the stabilizer
    relevant to orbit counting of pairings on a fixed slot layout, whose
    full group has order ``v! * 6^v * l! * max(e, 1)``.
    """
    import math

    sk_comp, comps = _split_components(d)
    order = 1
    for c in ([sk_comp] if sk_comp is not None else []) + comps:
        nstates, struts = c[6], c[7]
        order *= nstates * (2 ** struts) * math.factorial(struts)
    # identical floating components are interchangeable
    run = 1
    for i in range(1, len(comps) + 1):
        if i < len(comps) and comps[i][0] == comps[i - 1][0]:
            run += 1
        else:
            order *= math.factorial(run)
            run = 1
    return order


# ---------------------------------------------------------------------------
# enumeration


def _matchings(nsk, nv, nl, collect, max_steps=None):
    """Generate pairings of the half-edges of a fixed slot layout, up to the
    relabelings that are free of charge: permuting not-yet-touched vertices,
    rotating their triples, and permuting legs. Pairs inside one triple are
    skipped (they give antisymmetry-zero diagrams). ``collect`` is called
    with each completed partner array."""
    n = nsk + 3 * nv + nl
    if n % 2:
        return 0
    partner = [-1] * n
    touched = [0] * nv  # matched half-edge count per vertex
    steps = 0

    def vertex_of(h):
        return (h - nsk) // 3

    def rec(h):
        nonlocal steps
        while h < n and partner[h] >= 0:
            h += 1
        if h == n:
            collect(list(partner))
            return
        steps += 1
        if max_steps is not None and steps > max_steps:
            raise ResourceLimitError(f"enumeration exceeded {max_steps} search steps")
        hv = vertex_of(h) if nsk <= h < nsk + 3 * nv else -1
        cands = []
        first_untouched = None
        for vi in range(nv):
            if touched[vi] == 0 and vi != hv:
                first_untouched = vi
                break
        for q in range(h + 1, n):
            if partner[q] >= 0:
                continue
            if q < nsk:
                cands.append(q)
            elif q < nsk + 3 * nv:
                qv = vertex_of(q)
                if qv == hv:
                    continue  # tadpole: antisymmetry-zero
                if touched[qv] > 0:
                    cands.append(q)
                elif qv == first_untouched and q == nsk + 3 * qv:
                    cands.append(q)
            else:
                cands.append(q)  # first unmatched leg
                break
        for q in cands:
            partner[h] = q
            partner[q] = h
            if hv >= 0:
                touched[hv] += 1
            if nsk <= q < nsk + 3 * nv:
                touched[vertex_of(q)] += 1
            rec(h + 1)
            partner[h] = -1
            partner[q] = -1
            if hv >= 0:
                touched[hv] -= 1
            if nsk <= q < nsk + 3 * nv:
                touched[vertex_of(q)] -= 1

    rec(0)
    return steps


def _layout_diagram(space, nsk, nv, nl, partner):
    triples = tuple((nsk + 3 * i, nsk + 3 * i + 1, nsk + 3 * i + 2) for i in range(nv))
    legs = tuple(range(nsk + 3 * nv, nsk + 3 * nv + nl))
    skeleton = tuple(range(nsk)) if space == "A" else None
    pairing = tuple(sorted((h, p) for h, p in enumerate(partner) if h < p))
    return Diagram(space, triples, legs, skeleton, pairing, 0)


_enum_memo: dict = {}


def _enumerate_split_full(space, nsk, nv, nl, max_steps=None):
    """Isomorphism classes of one slot layout, including the classes that
    are zero by antisymmetry: list of ``(canonical_diagram, nonzero_flag)``."""
    key = (space, nsk, nv, nl)
    hit = _enum_memo.get(key)
    if hit is not None:
        return hit
    found = {}

    def collect(partner):
        d = _layout_diagram(space, nsk, nv, nl, partner)
        cf = canonicalize(d)
        if cf.diagram._key not in found:
            found[cf.diagram._key] = (cf.diagram, 1 if cf.sign != 0 else 0)

    _matchings(nsk, nv, nl, collect, max_steps)
    out = sorted(found.values(), key=lambda pair: pair[0].sort_key())
    _enum_memo[key] = out
    return out


def _enumerate_split(space, nsk, nv, nl, max_steps=None):
    return [d for d, nonzero in _enumerate_split_full(space, nsk, nv, nl, max_steps)
            if nonzero]


def enumerate_diagrams(space, v=None, l=None, e=None, total=None, max_steps=None):
    """All isomorphism classes with nonzero canonical sign in a graded piece.

    B-space: pass ``v`` (internal vertices) and ``l`` (legs).
    A-space: pass ``total`` (= v + skeleton points; all splits are included)
    or a specific split via ``e`` and ``v``. Free loops are never produced.
    Returns canonical diagrams in a deterministic order.
    """
    if space == "B":
        if v is None or l is None:
            raise ValueError("B-space enumeration needs v and l")
        if (3 * v + l) % 2:
            return []
        return list(_enumerate_split("B", 0, v, l, max_steps))
    if space != "A":
        raise SpaceMismatchError(f"unknown space {space!r}")
    if total is not None:
        out = []
        for vv in range(total + 1):
            ee = total - vv
            if (ee + 3 * vv) % 2 == 0:
                out.extend(_enumerate_split("A", ee, vv, 0, max_steps))
        return sorted(out, key=Diagram.sort_key)
    if e is None or v is None:
        raise ValueError("A-space enumeration needs total, or e and v")
    if (e + 3 * v) % 2:
        return []
    return list(_enumerate_split("A", e, v, 0, max_steps))


# ---------------------------------------------------------------------------
# small builders and JSON


def empty_diagram() -> Diagram:
    """The empty B-diagram (unit for the disjoint-union product)."""
    return Diagram("B", (), (), None, (), 0)


def bare_circle() -> Diagram:
    """The A-diagram with an empty skeleton (unit for the connect sum)."""
    return Diagram("A", (), (), (), (), 0)


def diagram_to_json(d: Diagram) -> dict:
    obj = {
        "space": d.space,
        "internal": [list(t) for t in d.triples],
        "legs": list(d.legs),
        "pairing": [list(p) for p in d.pairing],
        "free_loops": d.free_loops,
    }
    if d.space == "A":
        obj["skeleton"] = list(d.skeleton)
    return obj


def diagram_from_json(obj) -> Diagram:
    if not isinstance(obj, dict):
        raise DiagramError("diagram JSON must be an object")
    space = obj.get("space")
    known = {"space", "internal", "legs", "skeleton", "pairing", "free_loops"}
    unknown = set(obj) - known
    if unknown:
        raise DiagramError(f"unknown diagram fields: {sorted(unknown)}")
    if space == "A":
        if "skeleton" not in obj:
            raise DiagramError("A-space diagram JSON requires a skeleton array")
        skeleton = obj["skeleton"]
    else:
        if "skeleton" in obj:
            raise DiagramError("skeleton is only allowed when space is 'A'")
        skeleton = None
    return validate(space,
                    internal=obj.get("internal", ()),
                    legs=obj.get("legs", ()),
                    skeleton=skeleton,
                    pairing=obj.get("pairing", ()),
                    free_loops=obj.get("free_loops", 0))
