"""Self-checking verification suites.

Each suite runs a battery of exact identities and returns a report dict:
``{"suite": name, "pass": bool, "checks": [{"name", "pass", "seconds", ...}]}``.
A check that hits the contraction resource guard is reported as failed with
an ``error`` field and the suite continues.  All comparisons are exact; the
timing fields are the only non-deterministic bytes in a report.
"""

from __future__ import annotations

import time
from fractions import Fraction

from .algebra import (DiagramVector, _rref, equal_mod_relations,
                      ihx_generators, quotient_basis, stu_generators)
from .diagrams import Diagram, empty_diagram, enumerate_diagrams, validate
from .errors import LieAlgebraError, ResourceLimitError
from .lie import (MetricLieAlgebra, Representation, _evaluate_diagram,
                  _evaluate_vector, _require_valid, builtin_algebra,
                  derive_tensors)
from .maps import cap, chi, closure, connect_sum, disjoint_union, omega, strut, wheel

SUITES = ("relations", "chi-iso", "closure-omega", "wheeling")

# The one global sign fixed by this package's orientation conventions: the
# closure of the wheels series is the exponential of (this sign) * theta/24
# in the pair-weight-2 normalization (theta/48 at pair weight 1).
CLOSURE_SIGN = -1


def _resolve_algebra(algebra, rep):
    if isinstance(algebra, str):
        algebra = builtin_algebra(algebra)
    if not isinstance(algebra, MetricLieAlgebra):
        raise LieAlgebraError("expected an algebra name or MetricLieAlgebra")
    if rep is None:
        if not algebra.representations:
            raise LieAlgebraError("the algebra carries no representations")
        rep = sorted(algebra.representations)[0]
    if isinstance(rep, str):
        try:
            rep = algebra.representations[rep]
        except KeyError as exc:
            raise LieAlgebraError(f"unknown representation {rep!r}") from exc
    return algebra, rep


class _Report:
    def __init__(self, suite):
        self.data = {"suite": suite, "pass": True, "checks": []}

    def run(self, name, fn, **extra):
        t0 = time.perf_counter()
        entry = {"name": name}
        try:
            ok, detail = fn()
            entry["pass"] = bool(ok)
        except ResourceLimitError as exc:
            entry["pass"] = False
            entry["error"] = f"resource cutoff: {exc}"
            detail = None
        entry["seconds"] = round(time.perf_counter() - t0, 3)
        if detail:
            entry.update(detail)
        entry.update(extra)
        if not entry["pass"]:
            self.data["pass"] = False
        self.data["checks"].append(entry)
        return entry


# ---------------------------------------------------------------------------
# relations: every AS / IHX / STU generator is killed by the weight system


def _flip_first_vertex(d: Diagram) -> Diagram:
    t = list(d.triples)
    a, b, c = t[0]
    t[0] = (b, a, c)
    return validate(d.space, internal=tuple(t), legs=d.legs or (),
                    skeleton=d.skeleton, pairing=d.pairing,
                    free_loops=d.free_loops)


def verify_relations(max_total: int = 6, algebra="sl2", rep=None,
                     cache_dir=None, max_cost=None, dp_width: int = 8) -> dict:
    g, rho = _resolve_algebra(algebra, rep)
    _require_valid(g, rho)
    tensors = derive_tensors(g, validate=False)
    report = _Report("relations")

    def eval_vec(vec):
        return _evaluate_vector(vec, "A", g, tensors, rho, max_cost, dp_width)

    for total in range(2, max_total + 1, 2):
        diagrams = enumerate_diagrams("A", total=total)

        def check_flips(diagrams=diagrams):
            flipped = 0
            for d in diagrams:
                if not d.triples:
                    continue
                flipped += 1
                w = _evaluate_diagram(d, g, tensors, rho, max_cost, dp_width)
                wf = _evaluate_diagram(_flip_first_vertex(d), g, tensors, rho,
                                       max_cost, dp_width)
                if w != -wf:
                    return False, {"diagrams": flipped}
            return True, {"diagrams": flipped}

        def check_gens(gens):
            def body(gens=gens):
                for vec in gens:
                    if eval_vec(vec) != 0:
                        return False, {"generators": len(gens)}
                return True, {"generators": len(gens)}
            return body

        report.run(f"orientation-flip-antisymmetry-total-{total}", check_flips)
        report.run(f"ihx-vanishing-total-{total}",
                   check_gens(ihx_generators(diagrams)))
        report.run(f"stu-vanishing-total-{total}",
                   check_gens(stu_generators(diagrams)))
    return report.data


# ---------------------------------------------------------------------------
# chi-iso: leg-averaging is a graded isomorphism onto the circle space


def verify_chi_iso(max_total: int = 4, cache_dir=None, max_steps=None) -> dict:
    report = _Report("chi-iso")
    table = []
    for n in range(max_total + 1):
        def check(n=n):
            a_basis = quotient_basis("A", total=n, cache_dir=cache_dir,
                                     max_steps=max_steps)
            rows = []
            dim_legs = 0
            for v in range(n + 1):
                piece = quotient_basis("B", v=v, l=n - v, cache_dir=cache_dir,
                                       max_steps=max_steps)
                dim_legs += piece.dim
                for d in piece.basis:
                    coords = a_basis.coordinates(chi(DiagramVector.single(d)))
                    rows.append({i: c for i, c in enumerate(coords) if c})
            rank = len(_rref(rows))
            entry = {"total": n, "dim_legs": dim_legs,
                     "dim_circle": a_basis.dim, "rank": rank}
            table.append(entry)
            ok = dim_legs == a_basis.dim == rank
            return ok, dict(entry)

        report.run(f"chi-square-invertible-total-{n}", check)
    report.data["rank_table"] = table
    return report.data


# ---------------------------------------------------------------------------
# closure-omega: the closure of the wheels series is exp(sign * theta / 24)


def verify_closure_omega(vmax: int = 4, cache_dir=None) -> dict:
    report = _Report("closure-omega")
    theta_vec = -closure(DiagramVector.single(wheel(2)))
    one = DiagramVector.single(empty_diagram())
    for pair_weight, denom in ((1, 48), (2, 24)):
        for trunc in range(0, vmax + 1, 2):
            def check(pair_weight=pair_weight, denom=denom, trunc=trunc):
                lhs = closure(omega(trunc), pair_weight=pair_weight)
                rhs = one
                term = one
                k = 0
                while (k + 1) * 2 <= trunc:
                    k += 1
                    term = disjoint_union(term, theta_vec) \
                        * (Fraction(CLOSURE_SIGN, denom) / k)
                    rhs = rhs + term
                ok = equal_mod_relations(lhs, rhs, cache_dir=cache_dir)
                return ok, {"sign": CLOSURE_SIGN}

            report.run(
                f"exp-theta-pair-weight-{pair_weight}-vmax-{trunc}", check)
    return report.data


# ---------------------------------------------------------------------------
# wheeling: cap-by-wheels then average is multiplicative


_WHEELING_PAIRS = (("empty", "empty"), ("strut", "strut"), ("wheel2", "strut"))


def _wheeling_inputs():
    return {
        "empty": DiagramVector.single(empty_diagram()),
        "strut": DiagramVector.single(strut()),
        "wheel2": DiagramVector.single(wheel(2)),
    }


def verify_wheeling(cache_dir=None, pairs=_WHEELING_PAIRS) -> dict:
    report = _Report("wheeling")
    vecs = _wheeling_inputs()

    def wheeled(x):
        legs = max((d.l for d, _ in x.items()), default=0)
        return chi(cap(omega(legs), x))

    for a, b in pairs:
        def check(a=a, b=b):
            x, y = vecs[a], vecs[b]
            lhs = wheeled(disjoint_union(x, y))
            rhs = connect_sum(wheeled(x), wheeled(y))
            return equal_mod_relations(lhs, rhs, cache_dir=cache_dir), None

        report.run(f"multiplicative-{a}-{b}", check)
    return report.data


# ---------------------------------------------------------------------------
# dispatch


def run_suite(name: str, *, max_total=None, vmax=None, algebra="sl2",
              rep=None, cache_dir=None, max_cost=None) -> dict:
    """Run one named suite with its applicable limits."""
    if name == "relations":
        return verify_relations(max_total=max_total if max_total is not None else 6,
                                algebra=algebra, rep=rep, cache_dir=cache_dir,
                                max_cost=max_cost)
    if name == "chi-iso":
        return verify_chi_iso(max_total=max_total if max_total is not None else 4,
                              cache_dir=cache_dir)
    if name == "closure-omega":
        return verify_closure_omega(vmax=vmax if vmax is not None else 4,
                                    cache_dir=cache_dir)
    if name == "wheeling":
        return verify_wheeling(cache_dir=cache_dir)
    raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
