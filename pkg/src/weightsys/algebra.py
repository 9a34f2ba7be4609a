"""Exact linear algebra on diagrams: vectors, relations, quotient bases.

A :class:`DiagramVector` is a finite rational combination of canonical
diagrams; inserting any diagram first canonicalizes it and folds the
antisymmetry sign into the coefficient, so antisymmetry holds by
construction. The further local relations are generated explicitly:

* the edge-rewrite family valid in both spaces (from the Jacobi identity:
  writing F(a,b,c,d) for the two-vertex tensor with the shared edge, the
  combination F(a,b,c,d) - F(a,c,b,d) + F(b,c,a,d) vanishes), and
* in A-space additionally the skeleton-resolution family: a vertex hooked
  to the circle equals the difference of the two ways of planting its
  remaining half-edges directly on the circle, in circle order minus in
  swapped order.

Quotient bases are computed by exact Gauss-Jordan elimination over
Fraction entries in the coordinates of the deterministic enumeration
order; reduction rewrites any vector over the surviving basis diagrams.

Free-loop components never enter relations: a vector splits by loop count,
each part is reduced with loops stripped, and loops are reattached.
"""

from __future__ import annotations

from fractions import Fraction

from . import cache as cache_mod
from .diagrams import (
    Diagram,
    canonicalize,
    diagram_from_json,
    diagram_to_json,
    enumerate_diagrams,
)
from .errors import DiagramError, GradingMismatchError

__all__ = [
    "DiagramVector",
    "vector_from_json",
    "vector_to_json",
    "ihx_generators",
    "stu_generators",
    "QuotientBasis",
    "quotient_basis",
    "reduce_vector",
    "equal_mod_relations",
]

_ZERO = Fraction(0)


class DiagramVector:
    """A rational linear combination of diagrams, stored over canonical
    representatives with antisymmetry signs folded in."""

    __slots__ = ("_terms",)

    def __init__(self, items=(), _raw=None):
        if _raw is not None:
            self._terms = _raw
            return
        acc = {}
        for d, c in items:
            c = Fraction(c)
            if not c:
                continue
            cf = canonicalize(d)
            if cf.sign == 0:
                continue
            k = cf.diagram
            acc[k] = acc.get(k, _ZERO) + cf.sign * c
        self._terms = {k: v for k, v in acc.items() if v}

    @classmethod
    def single(cls, d: Diagram, coeff=1) -> "DiagramVector":
        return cls([(d, coeff)])

    @classmethod
    def zero(cls) -> "DiagramVector":
        return cls()

    def items(self):
        """(diagram, coefficient) pairs in the deterministic diagram order."""
        return [(d, self._terms[d]) for d in sorted(self._terms, key=Diagram.sort_key)]

    def coefficient(self, d: Diagram) -> Fraction:
        cf = canonicalize(d)
        if cf.sign == 0:
            return _ZERO
        return cf.sign * self._terms.get(cf.diagram, _ZERO)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        return isinstance(other, DiagramVector) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if not isinstance(other, DiagramVector):
            return NotImplemented
        acc = dict(self._terms)
        for d, c in other._terms.items():
            nv = acc.get(d, _ZERO) + c
            if nv:
                acc[d] = nv
            elif d in acc:
                del acc[d]
        return DiagramVector(_raw=acc)

    def __sub__(self, other):
        if not isinstance(other, DiagramVector):
            return NotImplemented
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, scalar):
        c = Fraction(scalar)
        if not c:
            return DiagramVector()
        return DiagramVector(_raw={d: c * v for d, v in self._terms.items()})

    def __mul__(self, scalar):
        return self.__rmul__(scalar)

    def graded_parts(self) -> dict:
        """Split by (space, grading, free loops); each part is homogeneous."""
        parts: dict = {}
        for d, c in self._terms.items():
            parts.setdefault(d.grading_key(), {})[d] = c
        return {k: DiagramVector(_raw=v) for k, v in parts.items()}

    def map_diagrams(self, fn) -> "DiagramVector":
        """Rebuild the vector applying ``fn`` to every diagram (results are
        canonicalized again)."""
        return DiagramVector((fn(d), c) for d, c in self._terms.items())

    def key(self):
        """Hashable normal form: leading coefficient scaled to 1."""
        items = self.items()
        if not items:
            return ()
        lead = items[0][1]
        return tuple((d._key, c / lead) for d, c in items)

    def __repr__(self):
        body = " + ".join(f"({c})*{d!r}" for d, c in self.items())
        return f"DiagramVector({body or '0'})"


# ---------------------------------------------------------------------------
# JSON


def _coeff_from_json(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise DiagramError(f"coefficients must be exact rationals, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise DiagramError(f"bad rational literal {x!r}") from exc
    raise DiagramError(f"coefficients must be exact rationals, got {x!r}")


def vector_from_json(obj) -> DiagramVector:
    """Accepts a bare array of {"coeff","diagram"} entries or an object
    wrapping that array under "terms"."""
    if isinstance(obj, dict) and "terms" in obj:
        obj = obj["terms"]
    if not isinstance(obj, list):
        raise DiagramError("vector JSON must be an array of coeff/diagram entries")
    items = []
    for entry in obj:
        if not isinstance(entry, dict) or "coeff" not in entry or "diagram" not in entry:
            raise DiagramError("vector entries need 'coeff' and 'diagram' fields")
        items.append((diagram_from_json(entry["diagram"]), _coeff_from_json(entry["coeff"])))
    return DiagramVector(items)


def vector_to_json(vec: DiagramVector) -> list:
    return [{"coeff": str(c), "diagram": diagram_to_json(d)} for d, c in vec.items()]


# ---------------------------------------------------------------------------
# relation generators


def ihx_generators(diagrams) -> list:
    """Edge-rewrite relation vectors based at each given diagram.

    For an edge joining internal vertices u and w (half-edges k at u, p at
    w), rotate u to (a, b, k) and w to (p, c, d). The relation is
    D(a,b|c,d) - D(a,c|b,d) + D(b,c|a,d) = 0, where D(x,y|z,t) has
    u = (x, y, k) and w = (p, z, t) and all pairings unchanged. Both edge
    directions are generated; duplicates are removed by normal form.
    """
    gens = []
    seen = set()
    for d in diagrams:
        pmap = d.partner_map
        where = {}
        for i, t in enumerate(d.triples):
            for j, h in enumerate(t):
                where[h] = (i, j)
        for i, t in enumerate(d.triples):
            for j in range(3):
                k = t[j]
                p = pmap[k]
                if p not in where:
                    continue
                w, js = where[p]
                if w == i:
                    continue
                a, b = t[(j + 1) % 3], t[(j + 2) % 3]
                tw = d.triples[w]
                c, dd = tw[(js + 1) % 3], tw[(js + 2) % 3]
                trip2 = list(d.triples)
                trip2[i] = (a, c, k)
                trip2[w] = (p, b, dd)
                trip3 = list(d.triples)
                trip3[i] = (b, c, k)
                trip3[w] = (p, a, dd)
                d2 = Diagram._new(d.space, trip2, d.legs, d.skeleton, d.pairing, d.free_loops)
                d3 = Diagram._new(d.space, trip3, d.legs, d.skeleton, d.pairing, d.free_loops)
                vec = DiagramVector([(d, 1), (d2, -1), (d3, 1)])
                if vec:
                    key = vec.key()
                    if key not in seen:
                        seen.add(key)
                        gens.append(vec)
    return gens


def stu_generators(diagrams) -> list:
    """Skeleton-resolution relation vectors based at each given diagram.

    For a vertex rotated to (h, ha, hb) whose half-edge h is paired with
    skeleton point p: remove the vertex and the h-p edge and plant the two
    remaining half-edges on the circle at p's position, in order (ha, hb)
    for the first resolution and (hb, ha) for the second. The relation is
    S - T + U = 0 with S the vertex form, T the in-order planting, U the
    swapped planting.
    """
    gens = []
    seen = set()
    for d in diagrams:
        if d.space != "A":
            raise GradingMismatchError("skeleton-resolution relations need A-space diagrams")
        pmap = d.partner_map
        skpos = {h: idx for idx, h in enumerate(d.skeleton)}
        for i, t in enumerate(d.triples):
            for j in range(3):
                h = t[j]
                p = pmap[h]
                if p not in skpos:
                    continue
                ha, hb = t[(j + 1) % 3], t[(j + 2) % 3]
                idx = skpos[p]
                trips = d.triples[:i] + d.triples[i + 1:]
                pairing = tuple(pr for pr in d.pairing if h not in pr)
                sk = d.skeleton
                skT = sk[:idx] + (ha, hb) + sk[idx + 1:]
                skU = sk[:idx] + (hb, ha) + sk[idx + 1:]
                dT = Diagram._new("A", trips, (), skT, pairing, d.free_loops)
                dU = Diagram._new("A", trips, (), skU, pairing, d.free_loops)
                vec = DiagramVector([(d, 1), (dT, -1), (dU, 1)])
                if vec:
                    key = vec.key()
                    if key not in seen:
                        seen.add(key)
                        gens.append(vec)
    return gens


# ---------------------------------------------------------------------------
# row reduction (exact, reduced row echelon form)


def _rref(rows: list) -> dict:
    """Reduced row echelon form of sparse Fraction rows.

    Rows are dicts column->Fraction. Returns {pivot_column: row} with each
    row normalized to 1 at its pivot and fully reduced against all other
    pivots (so every non-pivot entry of a pivot row sits in a free column).
    """
    pivots: dict = {}
    for row in rows:
        row = {c: f for c, f in row.items() if f}
        # Eliminate every existing pivot column before choosing a pivot;
        # pivot-row tails hold free columns only, so one sweep suffices,
        # but loop until clean to keep the invariant unconditional.
        while True:
            hit = [c for c in row if c in pivots]
            if not hit:
                break
            for c in hit:
                f = row.pop(c)
                if not f:
                    continue
                for cc, vv in pivots[c].items():
                    if cc == c:
                        continue
                    nv = row.get(cc, _ZERO) - f * vv
                    if nv:
                        row[cc] = nv
                    elif cc in row:
                        del row[cc]
        if not row:
            continue
        c = min(row)
        f = row.pop(c)
        newrow = {c: Fraction(1)}
        for cc, vv in row.items():
            newrow[cc] = vv / f
        for prow in pivots.values():
            if c in prow:
                g = prow.pop(c)
                for cc, vv in newrow.items():
                    if cc == c:
                        continue
                    nv = prow.get(cc, _ZERO) - g * vv
                    if nv:
                        prow[cc] = nv
                    elif cc in prow:
                        del prow[cc]
        pivots[c] = newrow
    return pivots


class QuotientBasis:
    """Basis data of one graded piece of a diagram space modulo relations.

    ``diagrams`` is the full enumeration of the piece in deterministic
    order; ``pivots`` maps eliminated coordinate -> its reduced relation
    row; ``basis`` lists the surviving diagrams (free coordinates).
    """

    __slots__ = ("space", "grading", "diagrams", "pivots", "basis", "_index")

    def __init__(self, space, grading, diagrams, pivots):
        self.space = space
        self.grading = dict(grading)
        self.diagrams = list(diagrams)
        self.pivots = pivots
        self._index = {d._key: i for i, d in enumerate(self.diagrams)}
        self.basis = [d for i, d in enumerate(self.diagrams) if i not in pivots]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _coords(self, vec: DiagramVector) -> dict:
        coords = {}
        for d, c in vec._terms.items():
            base = d.without_loops()
            i = self._index.get(base._key)
            if i is None:
                raise DiagramError(
                    "diagram does not belong to this graded piece's enumeration")
            coords[i] = coords.get(i, _ZERO) + c
        return coords

    def reduce(self, vec: DiagramVector) -> DiagramVector:
        """Canonical coset representative of ``vec`` (which must live in
        this graded piece; free loops are allowed and carried through)."""
        out: dict = {}
        loops = {d.free_loops for d in vec._terms} or {0}
        if len(loops) != 1:
            raise GradingMismatchError("mixed loop counts inside one reduction call")
        k = loops.pop()
        coords = self._coords(vec)
        for c in sorted(coords):
            f = coords[c]
            if not f:
                continue
            prow = self.pivots.get(c)
            if prow is None:
                out[c] = out.get(c, _ZERO) + f
            else:
                for cc, vv in prow.items():
                    if cc == c:
                        continue
                    out[cc] = out.get(cc, _ZERO) - f * vv
        terms = {self.diagrams[i].with_loops(k): v for i, v in out.items() if v}
        return DiagramVector(_raw=terms)

    def coordinates(self, vec: DiagramVector) -> list:
        """Coefficients of ``reduce(vec)`` over ``basis`` (loop-stripped)."""
        red = self.reduce(vec)
        cols = {d.without_loops()._key: c for d, c in red._terms.items()}
        return [cols.get(b._key, _ZERO) for b in self.basis]

    # --- serialization ---------------------------------------------------

    def to_payload(self) -> dict:
        return {
            "space": self.space,
            "grading": self.grading,
            "diagrams": [diagram_to_json(d) for d in self.diagrams],
            "pivots": {str(c): {str(cc): str(vv) for cc, vv in row.items()}
                       for c, row in self.pivots.items()},
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "QuotientBasis":
        diagrams = [diagram_from_json(o) for o in payload["diagrams"]]
        pivots = {int(c): {int(cc): Fraction(vv) for cc, vv in row.items()}
                  for c, row in payload["pivots"].items()}
        return cls(payload["space"], payload["grading"], diagrams, pivots)


_basis_memo: dict = {}


def _basis_key(space, v=None, l=None, total=None):
    if space == "B":
        if v is None or l is None:
            raise GradingMismatchError("B-space bases are keyed by v and l")
        return ("B", v, l)
    if space == "A":
        if total is None:
            raise GradingMismatchError("A-space bases are keyed by total grading")
        return ("A", total)
    raise GradingMismatchError(f"unknown space {space!r}")


def quotient_basis(space, v=None, l=None, total=None, cache_dir=None,
                   max_steps=None) -> QuotientBasis:
    """The quotient basis of one graded piece, computed or loaded.

    In-memory results are memoized per process. With ``cache_dir`` set, a
    versioned JSON copy is loaded if compatible, else computed and saved.
    """
    key = _basis_key(space, v, l, total)
    qb = _basis_memo.get(key)
    if qb is not None:
        return qb
    if cache_dir:
        payload = cache_mod.load_basis(cache_dir, key)
        if payload is not None and payload.get("space") == space:
            qb = QuotientBasis.from_payload(payload)
            _basis_memo[key] = qb
            return qb
    if space == "B":
        diagrams = enumerate_diagrams("B", v=v, l=l, max_steps=max_steps)
        gens = ihx_generators(diagrams)
        grading = {"v": v, "l": l}
    else:
        diagrams = enumerate_diagrams("A", total=total, max_steps=max_steps)
        gens = ihx_generators(diagrams) + stu_generators(diagrams)
        grading = {"total": total}
    index = {d._key: i for i, d in enumerate(diagrams)}
    rows = []
    for g in gens:
        row = {}
        for d, c in g._terms.items():
            i = index.get(d._key)
            if i is None:
                raise DiagramError("relation term escaped its graded piece")
            row[i] = row.get(i, _ZERO) + c
        rows.append(row)
    qb = QuotientBasis(space, grading, diagrams, _rref(rows))
    _basis_memo[key] = qb
    if cache_dir:
        cache_mod.save_basis(cache_dir, key, qb.to_payload())
    return qb


def reduce_vector(vec: DiagramVector, cache_dir=None, max_steps=None) -> DiagramVector:
    """Canonical coset representative of an arbitrary vector: split by
    space, grading and loop count, reduce each part, reassemble."""
    out = DiagramVector()
    for gkey, part in vec.graded_parts().items():
        if gkey[0] == "B":
            qb = quotient_basis("B", v=gkey[1], l=gkey[2], cache_dir=cache_dir,
                                max_steps=max_steps)
        else:
            qb = quotient_basis("A", total=gkey[1], cache_dir=cache_dir,
                                max_steps=max_steps)
        out = out + qb.reduce(part)
    return out


def equal_mod_relations(v1: DiagramVector, v2: DiagramVector, cache_dir=None,
                        max_steps=None) -> bool:
    """Whether two vectors agree modulo antisymmetry and the local relations."""
    return not reduce_vector(v1 - v2, cache_dir=cache_dir, max_steps=max_steps)
