"""Metric Lie algebras, their structure tensors, and exact weight-system
evaluation of diagrams by tensor-network contraction.

Conventions (frozen): each internal vertex contributes the totally
antisymmetric tensor f_{ijk} = b([e_i, e_j], e_k) with indices read in the
vertex's stored cyclic order; each edge contributes the inverse metric
b^{ij}; each skeleton point contributes its representation matrix, the
matrices being multiplied around the circle in skeleton order and traced;
every free loop contributes a factor dim g.  The bare circle therefore
evaluates to dim V.  All arithmetic is exact rational.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .algebra import DiagramVector
from .diagrams import Diagram
from .errors import LieAlgebraError, ResourceLimitError, SpaceMismatchError
from .tensor import ContractionPlan, SparseTensor, contract_network, plan_contraction

_ZERO = Fraction(0)
_ONE = Fraction(1)

DEFAULT_MAX_COST = 50_000_000


def _fraction(x):
    """Exact scalar from JSON-ish input; floats are refused outright."""
    if isinstance(x, bool) or isinstance(x, float):
        raise LieAlgebraError(
            "only exact rationals are accepted (integers or 'p/q' strings)")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise LieAlgebraError(f"bad rational literal {x!r}") from exc
    raise LieAlgebraError(f"bad rational value {x!r}")


def _matrix(rows, n, m, what):
    rows = list(rows)
    if len(rows) != n or any(len(r) != m for r in rows):
        raise LieAlgebraError(f"{what} must be {n}x{m}")
    return tuple(tuple(_fraction(x) for x in r) for r in rows)


@dataclass(frozen=True)
class Representation:
    """A Lie-algebra representation: one square matrix per basis element."""

    dim_V: int
    action: tuple  # dim matrices, each dim_V x dim_V

    def matrix(self, i):
        return self.action[i]


@dataclass(frozen=True)
class MetricLieAlgebra:
    """Structure constants c^k_{ij}, an invariant metric, and named reps."""

    dim: int
    structure_constants: tuple  # c[k][i][j]
    metric: tuple               # b[i][j]
    representations: dict = field(default_factory=dict, compare=False)
    name: str = field(default="", compare=False)

    def bracket(self, i, j):
        return tuple(self.structure_constants[k][i][j] for k in range(self.dim))


@dataclass(frozen=True)
class StructureTensors:
    """The covariant bracket tensor and the inverse metric."""

    f: dict      # (i, j, k) -> Fraction, totally antisymmetric
    c_up: tuple  # b^{ij}


# ---------------------------------------------------------------------------
# validation


def check_lie(g: MetricLieAlgebra):
    """(True, None) when all invariants hold, else (False, description)."""
    n = g.dim
    c = g.structure_constants
    b = g.metric
    if n <= 0:
        return False, "dim must be positive"
    if len(c) != n or any(len(ck) != n or any(len(r) != n for r in ck) for ck in c):
        return False, "structure constants must be dim^3"
    if len(b) != n or any(len(r) != n for r in b):
        return False, "metric must be dim x dim"
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if c[k][i][j] != -c[k][j][i]:
                    return False, f"antisymmetry fails at c^{k}_{{{i}{j}}}"
    for i in range(n):
        for j in range(n):
            if b[i][j] != b[j][i]:
                return False, f"metric not symmetric at ({i},{j})"
    if _invert(b) is None:
        return False, "metric is singular"
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    s = sum((c[m][i][j] * c[l][m][k]
                             + c[m][j][k] * c[l][m][i]
                             + c[m][k][i] * c[l][m][j]) for m in range(n))
                    if s:
                        return False, f"Jacobi fails at (i,j,k,l)=({i},{j},{k},{l})"
    for i in range(n):
        for j in range(n):
            for k in range(n):
                inv = (sum(c[m][i][j] * b[m][k] for m in range(n))
                       + sum(c[m][i][k] * b[j][m] for m in range(n)))
                if inv:
                    return False, f"metric invariance fails at ({i},{j},{k})"
    return True, None


def check_representation(g: MetricLieAlgebra, rep: Representation):
    """(True, None) when rho([x,y]) = rho(x)rho(y) - rho(y)rho(x)."""
    n, m = g.dim, rep.dim_V
    if len(rep.action) != n:
        return False, "representation needs one matrix per basis element"
    for mat in rep.action:
        if len(mat) != m or any(len(r) != m for r in mat):
            return False, "representation matrices must be dim_V square"
    for i in range(n):
        for j in range(i + 1, n):
            comm = _mat_sub(_mat_mul(rep.action[i], rep.action[j]),
                            _mat_mul(rep.action[j], rep.action[i]))
            want = None
            for k in range(n):
                ck = g.structure_constants[k][i][j]
                if ck:
                    term = _mat_scale(rep.action[k], ck)
                    want = term if want is None else _mat_add(want, term)
            if want is None:
                want = tuple(tuple(_ZERO for _ in range(m)) for _ in range(m))
            if comm != want:
                return False, f"representation fails on bracket ({i},{j})"
    return True, None


def _require_valid(g: MetricLieAlgebra, rep: Representation | None = None):
    ok, detail = check_lie(g)
    if not ok:
        raise LieAlgebraError(detail)
    if rep is not None:
        ok, detail = check_representation(g, rep)
        if not ok:
            raise LieAlgebraError(detail)


def _mat_mul(a, b):
    m, n, p = len(a), len(b), len(b[0])
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n))
                       for j in range(p)) for i in range(m))


def _mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat_scale(a, s):
    return tuple(tuple(x * s for x in r) for r in a)


def _invert(m):
    """Exact inverse by Gauss-Jordan, or None when singular."""
    n = len(m)
    aug = [list(r) + [_ONE if i == j else _ZERO for j in range(n)]
           for i, r in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        f = aug[col][col]
        aug[col] = [x / f for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                g = aug[r][col]
                aug[r] = [x - g * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(r[n:]) for r in aug)


# ---------------------------------------------------------------------------
# structure tensors


def derive_tensors(g: MetricLieAlgebra, *, validate: bool = True) -> StructureTensors:
    """f_{ijk} = b([e_i, e_j], e_k) and the inverse metric, exactly."""
    if validate:
        _require_valid(g)
    n = g.dim
    c, b = g.structure_constants, g.metric
    f = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                v = sum(c[m][i][j] * b[m][k] for m in range(n))
                if v:
                    f[(i, j, k)] = v
    c_up = _invert(b)
    return StructureTensors(f=f, c_up=c_up)


# ---------------------------------------------------------------------------
# built-in algebras


def sl2() -> MetricLieAlgebra:
    """sl2 over the rationals: basis (h, e, f), trace-form metric, and its
    two-dimensional fundamental representation."""
    n = 3
    c = [[[_ZERO] * n for _ in range(n)] for _ in range(n)]

    def setb(i, j, k, v):
        c[k][i][j] = Fraction(v)
        c[k][j][i] = Fraction(-v)

    setb(0, 1, 1, 2)    # [h, e] = 2e
    setb(0, 2, 2, -2)   # [h, f] = -2f
    setb(1, 2, 0, 1)    # [e, f] = h
    metric = ((Fraction(2), _ZERO, _ZERO),
              (_ZERO, _ZERO, _ONE),
              (_ZERO, _ONE, _ZERO))
    fund = Representation(2, (
        ((_ONE, _ZERO), (_ZERO, Fraction(-1))),
        ((_ZERO, _ONE), (_ZERO, _ZERO)),
        ((_ZERO, _ZERO), (_ONE, _ZERO)),
    ))
    return MetricLieAlgebra(
        dim=3,
        structure_constants=tuple(tuple(tuple(r) for r in ck) for ck in c),
        metric=metric,
        representations={"fundamental": fund},
        name="sl2")


def abelian(dim: int) -> MetricLieAlgebra:
    """The abelian algebra of a given dimension with the identity metric
    and a one-dimensional trivial representation."""
    if dim < 1:
        raise LieAlgebraError("dim must be positive")
    zero3 = tuple(tuple(tuple(_ZERO for _ in range(dim))
                        for _ in range(dim)) for _ in range(dim))
    metric = tuple(tuple(_ONE if i == j else _ZERO for j in range(dim))
                   for i in range(dim))
    triv = Representation(1, tuple(((_ZERO,),) for _ in range(dim)))
    return MetricLieAlgebra(dim=dim, structure_constants=zero3, metric=metric,
                            representations={"trivial": triv},
                            name=f"abelian{dim}")


def builtin_algebra(name: str) -> MetricLieAlgebra:
    """Resolve a built-in algebra name: 'sl2' or 'abelian<k>'."""
    if name == "sl2":
        return sl2()
    if name.startswith("abelian"):
        try:
            return abelian(int(name[len("abelian"):] or "1"))
        except ValueError:
            pass
    raise LieAlgebraError(f"unknown built-in algebra {name!r}")


# ---------------------------------------------------------------------------
# JSON loader


def lie_algebra_from_json(obj) -> MetricLieAlgebra:
    """Read {"dim", "structure_constants", "metric", "representations"} with
    every scalar an integer or an exact 'p/q' string; floats are rejected."""
    if not isinstance(obj, dict):
        raise LieAlgebraError("algebra file must hold a JSON object")
    try:
        dim = obj["dim"]
    except KeyError as exc:
        raise LieAlgebraError("missing field 'dim'") from exc
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise LieAlgebraError("'dim' must be a positive integer")
    sc = obj.get("structure_constants")
    if not isinstance(sc, list) or len(sc) != dim:
        raise LieAlgebraError("'structure_constants' must list dim matrices")
    structure = tuple(_matrix(ck, dim, dim, "each structure constant slice")
                      for ck in sc)
    metric = _matrix(obj.get("metric", ()), dim, dim, "'metric'")
    reps = {}
    for name, entry in (obj.get("representations") or {}).items():
        if not isinstance(entry, dict):
            raise LieAlgebraError(f"representation {name!r} must be an object")
        dv = entry.get("dim")
        if not isinstance(dv, int) or isinstance(dv, bool) or dv < 1:
            raise LieAlgebraError(f"representation {name!r} needs a positive 'dim'")
        action = entry.get("action")
        if not isinstance(action, list) or len(action) != dim:
            raise LieAlgebraError(
                f"representation {name!r} needs one matrix per basis element")
        reps[name] = Representation(
            dv, tuple(_matrix(m, dv, dv, f"representation {name!r} matrix")
                      for m in action))
    g = MetricLieAlgebra(dim=dim, structure_constants=structure, metric=metric,
                         representations=reps, name=str(obj.get("name", "")))
    ok, detail = check_lie(g)
    if not ok:
        raise LieAlgebraError(detail)
    for name, rep in reps.items():
        ok, detail = check_representation(g, rep)
        if not ok:
            raise LieAlgebraError(f"{name}: {detail}")
    return g


def _scalar_text(x: Fraction) -> object:
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def lie_algebra_to_json(g: MetricLieAlgebra) -> dict:
    """Emit the exact-rational file format read by lie_algebra_from_json."""
    out = {
        "dim": g.dim,
        "structure_constants": [[[_scalar_text(x) for x in row] for row in ck]
                                for ck in g.structure_constants],
        "metric": [[_scalar_text(x) for x in row] for row in g.metric],
    }
    if g.name:
        out["name"] = g.name
    if g.representations:
        out["representations"] = {
            name: {"dim": rep.dim_V,
                   "action": [[[_scalar_text(x) for x in row] for row in mat]
                              for mat in rep.action]}
            for name, rep in g.representations.items()}
    return out


# ---------------------------------------------------------------------------
# the tensor network of a diagram


def _network(d: Diagram, tensors: StructureTensors, rep: Representation | None,
             dim_g: int):
    """Nodes and wiring for one diagram: f per vertex, rho per skeleton
    point, inverse metric per edge.  Returns (shapes, edges, make_tensors)
    so planning can happen without materializing tensors."""
    dim_V = rep.dim_V if rep is not None else 0
    slot_owner = {}
    shapes = []
    builders = []
    for t in d.triples:
        node = len(shapes)
        shapes.append((dim_g, dim_g, dim_g))
        builders.append(("f", None))
        for ax, h in enumerate(t):
            slot_owner[h] = (node, ax)
    skeleton = d.skeleton or ()
    for h in skeleton:
        node = len(shapes)
        shapes.append((dim_g, dim_V, dim_V))
        builders.append(("rho", None))
        slot_owner[h] = (node, 0)
    edges = []
    for h1, h2 in d.pairing:
        node = len(shapes)
        shapes.append((dim_g, dim_g))
        builders.append(("cup", None))
        edges.append(((node, 0), slot_owner[h1]))
        edges.append(((node, 1), slot_owner[h2]))
    nsk = len(skeleton)
    nv = len(d.triples)
    for pos in range(nsk):
        cur = nv + pos
        nxt = nv + (pos + 1) % nsk
        edges.append(((cur, 2), (nxt, 1)))

    def make_tensors():
        f_t = SparseTensor((dim_g,) * 3, tensors.f)
        cup_t = SparseTensor((dim_g, dim_g),
                             {(i, j): v for i, row in enumerate(tensors.c_up)
                              for j, v in enumerate(row) if v})
        out = []
        pos = 0
        for kind, _ in builders:
            if kind == "f":
                out.append(f_t)
            elif kind == "cup":
                out.append(cup_t)
            else:
                data = {}
                for a in range(dim_g):
                    mat = rep.matrix(a)
                    for r in range(dim_V):
                        for cc in range(dim_V):
                            if mat[r][cc]:
                                data[(a, r, cc)] = mat[r][cc]
                out.append(SparseTensor((dim_g, dim_V, dim_V), data))
            pos += 1
        return out

    return shapes, edges, make_tensors


def contraction_plan(d: Diagram, dims, dp_width: int = 8) -> ContractionPlan:
    """Plan the contraction of one diagram's network.

    ``dims`` is (dim_g,) for closed evaluation or (dim_g, dim_V) when the
    diagram sits on the circle.
    """
    dim_g = dims[0]
    dim_V = dims[1] if len(dims) > 1 else 1

    class _Shim:
        f = {}
        c_up = tuple(tuple(_ZERO for _ in range(dim_g)) for _ in range(dim_g))

    rep = Representation(dim_V, tuple(
        tuple(tuple(_ZERO for _ in range(dim_V)) for _ in range(dim_V))
        for _ in range(dim_g))) if d.skeleton else None
    shapes, edges, _ = _network(d, _Shim, rep, dim_g)
    return plan_contraction(shapes, edges, dp_width=dp_width)


def naive_cost(d: Diagram, dim_g: int) -> int:
    """Index assignments enumerated by term-by-term expansion."""
    return dim_g ** len(d.pairing)


def _evaluate_diagram(d: Diagram, g: MetricLieAlgebra,
                      tensors: StructureTensors, rep: Representation | None,
                      max_cost: int, dp_width: int) -> Fraction:
    if d.l:
        raise SpaceMismatchError("weights are defined for legless diagrams")
    loops_factor = Fraction(g.dim) ** d.free_loops
    if not d.triples and not d.pairing:
        base = Fraction(rep.dim_V) if d.space == "A" else _ONE
        return base * loops_factor
    shapes, edges, make_tensors = _network(d, tensors, rep, g.dim)
    plan = plan_contraction(shapes, edges, dp_width=dp_width)
    if max_cost is not None and plan.cost > max_cost:
        raise ResourceLimitError(
            f"planned contraction cost {plan.cost} exceeds the bound {max_cost}")
    value = contract_network(make_tensors(), edges, plan).item()
    if d.space == "A" and not d.skeleton:
        value *= rep.dim_V
    return value * loops_factor


def _as_vector(x) -> DiagramVector:
    if isinstance(x, Diagram):
        return DiagramVector.single(x)
    if isinstance(x, DiagramVector):
        return x
    raise TypeError("expected a Diagram or DiagramVector")


def _evaluate_vector(vec: DiagramVector, space: str, g: MetricLieAlgebra,
                     tensors: StructureTensors, rep: Representation | None,
                     max_cost, dp_width) -> Fraction:
    total = _ZERO
    for d, coeff in vec.items():
        if d.space != space:
            what = "circle-space" if space == "A" else "leg-space"
            raise SpaceMismatchError(f"this evaluation acts on {what} diagrams")
        if space == "B" and d.l:
            raise SpaceMismatchError("closed evaluation needs all legs closed off")
        total += coeff * _evaluate_diagram(d, g, tensors, rep, max_cost, dp_width)
    return total


def evaluate(x, g: MetricLieAlgebra, rep: Representation, *,
             max_cost: int = DEFAULT_MAX_COST, dp_width: int = 8) -> Fraction:
    """Weight of a circle-space diagram or vector against (g, rep)."""
    _require_valid(g, rep)
    tensors = derive_tensors(g, validate=False)
    return _evaluate_vector(_as_vector(x), "A", g, tensors, rep,
                            max_cost, dp_width)


def evaluate_closed(x, g: MetricLieAlgebra, *,
                    max_cost: int = DEFAULT_MAX_COST, dp_width: int = 8) -> Fraction:
    """Weight of a closed leg-space diagram or vector against g alone."""
    _require_valid(g)
    tensors = derive_tensors(g, validate=False)
    return _evaluate_vector(_as_vector(x), "B", g, tensors, None,
                            max_cost, dp_width)


def evaluate_naive(x, g: MetricLieAlgebra, rep: Representation | None = None, *,
                   _validate: bool = True) -> Fraction:
    """Term-by-term expansion over all edge index assignments.

    Deliberately naive; exists so the planned contraction has an in-package
    cross-check, mirroring the independent test oracle.
    """
    if _validate:
        _require_valid(g, rep)
    tensors = derive_tensors(g, validate=False)
    nonzero_pairs = [(i, j, v) for i, row in enumerate(tensors.c_up)
                     for j, v in enumerate(row) if v]
    vec = _as_vector(x)
    total = _ZERO
    for d, coeff in vec.items():
        if d.l:
            raise SpaceMismatchError("weights are defined for legless diagrams")
        if d.space == "A" and rep is None:
            raise LieAlgebraError("circle-space evaluation needs a representation")
        edges = list(d.pairing)
        sub = _ZERO
        for combo in product(nonzero_pairs, repeat=len(edges)):
            idx = {}
            w = _ONE
            for (h1, h2), (a, b, bw) in zip(edges, combo):
                idx[h1] = a
                idx[h2] = b
                w *= bw
            for t in d.triples:
                fv = tensors.f.get((idx[t[0]], idx[t[1]], idx[t[2]]))
                if not fv:
                    w = _ZERO
                    break
                w *= fv
            if not w:
                continue
            if d.space == "A":
                # An empty skeleton leaves the identity, whose trace already
                # contributes the bare-circle factor dim_V.
                m = tuple(tuple(_ONE if i == j else _ZERO
                                for j in range(rep.dim_V))
                          for i in range(rep.dim_V))
                for h in d.skeleton:
                    m = _mat_mul(m, rep.matrix(idx[h]))
                w *= sum(m[i][i] for i in range(rep.dim_V))
            sub += w
        total += coeff * sub * Fraction(g.dim) ** d.free_loops
    return total
