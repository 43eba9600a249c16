"""Classifying-space presentations, k/h tables, torsor relations, grading maps.

The BSpin presentations quotient the BSO ring by the ideal generated by the
first k(n) theta polynomials and adjoin one v-generator of degree 2^k; k(n)
is both read off a residue table (k_expected) and recomputed from scratch by
certifying the theta sequence (k_computed).  The torsor relations check that
theta_{j+1} collapses to the stated quadratic relation modulo the monomial
ideal of squares.  The t/i/h maps translate between the motivic and
topological flavors.
"""

from __future__ import annotations

import functools
import threading
from typing import NamedTuple

from . import formsf2
from .grobner import (
    Budget,
    GroebnerBasis,
    RegularSequenceChecker,
    cached_groebner_basis,
    groebner_basis,
    hilbert_series,
    ideal_member,
)
from .poly import Bidegree, Poly, Ring, RingError, RingMap, bo_ring, bo_top_ring, bso_ring, bso_top_ring
from .steenrod import bso_context, bso_top_context, theta

FAMILIES = ("BO", "BSO", "BSpin", "BG2", "BO_top", "BSO_top", "BSpin_top")

_K8 = {1: 0, 2: 1, 3: 2, 4: 2, 5: 3, 6: 3, 7: 3, 8: 3}


def k_expected(n):
    """Length of the certified theta sequence, by the residue of n mod 8."""
    if n < 2:
        raise ValueError("k(n) is defined for n >= 2")
    l = (n - 1) // 8
    return 4 * l + _K8[n - 8 * l]


def _wrap_budget(n, budget):
    if isinstance(budget, Budget):
        return budget
    b = Budget() if budget is None else Budget(int(budget))
    b.context = f"n={n}"
    return b


_k_cache = {}
_k_lock = threading.Lock()


def k_computed(n, budget=None):
    """Recompute k(n): extend theta while regular, then certify membership.

    The answer is the unique k with theta_0..theta_{k-1} regular and
    theta_k in the ideal they generate.
    """
    if n < 2:
        raise ValueError("k(n) is defined for n >= 2")
    # only the default-budget path is cached: an explicit budget must
    # actually bound the work, not be short-circuited by earlier runs
    if budget is None:
        with _k_lock:
            hit = _k_cache.get(n)
        if hit is not None:
            return hit
    budget = _wrap_budget(n, budget)
    ring = bso_ring(n)
    ctx = bso_context(n)
    checker = RegularSequenceChecker(ring, budget)
    j = 0
    while checker.append(theta(ctx, j)):
        j += 1
    if not ideal_member(theta(ctx, j), checker.basis, budget):
        raise ArithmeticError(
            f"theta_{j} ends the regular sequence but is not in the ideal (n={n})"
        )
    with _k_lock:
        _k_cache[n] = j
    return j


def verify_theta(n, k=None, budget=None):
    """Certify the theta presentation data for one n.

    Checks that theta_0..theta_{k-1} is regular, that theta_k lies in the
    ideal it generates, and that tau followed by the first h(n) thetas is
    regular.  Returns a dict with the three booleans and the parameters.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if k is None:
        k = k_expected(n)
    budget = _wrap_budget(n, budget)
    ring = bso_ring(n)
    ctx = bso_context(n)
    thetas = [theta(ctx, j) for j in range(k + 1)]

    checker = RegularSequenceChecker(ring, budget)
    regular = all(checker.append(f) for f in thetas[:k])
    basis = checker.basis if regular else groebner_basis(ring, thetas[:k], budget)
    in_ideal = ideal_member(thetas[k], basis, budget)

    h = formsf2.h_of(n)
    tau_checker = RegularSequenceChecker(ring, budget)
    tau_prefix = all(tau_checker.append(f) for f in [ring.gen("t")] + thetas[:h])

    return {
        "n": n,
        "k": k,
        "h": h,
        "regular": regular,
        "theta_k_in_ideal": in_ideal,
        "tau_prefix_regular": tau_prefix,
    }


# -- presentations ---------------------------------------------------------------


class Presentation(NamedTuple):
    family: str
    n: int | None
    ring: Ring
    relations: GroebnerBasis
    k: int | None

    def to_json(self):
        return {
            "family": self.family,
            "n": self.n,
            "generators": [
                {"name": name, "p": bd.p, "q": bd.q}
                for name, bd in zip(self.ring.names, self.ring.bidegrees)
            ],
            "relations": [str(p) for p in self.relations],
            "k": self.k,
        }


def _lift(target, x, pad):
    return target.poly(tuple(t) + (0,) * pad for t in x.terms)


def _theta_relations(base, ctx, k, budget):
    thetas = [theta(ctx, j) for j in range(k)]
    if budget is None:
        return cached_groebner_basis(base, thetas)
    return groebner_basis(base, thetas, budget)


def present(family, n=None, budget=None):
    """Build the presentation of one classifying-space family.

    BO/BSO (and their topological shadows) are free; BSpin quotients by the
    theta relations and adjoins v_{2^k}; BG2 is free on t, u4, u6, u7.
    """
    fam = str(family)
    key = fam.lower()
    if key not in {f.lower() for f in FAMILIES}:
        raise ValueError(f"unknown family {family!r}")
    fam = next(f for f in FAMILIES if f.lower() == key)

    if fam == "BG2":
        if n is not None:
            raise ValueError("BG2 takes no n")
        ring = Ring(
            [
                ("t", Bidegree(0, 1)),
                ("u4", Bidegree(4, 2)),
                ("u6", Bidegree(6, 3)),
                ("u7", Bidegree(7, 3)),
            ]
        )
        return Presentation(fam, None, ring, GroebnerBasis(ring, ()), None)

    if n is None or n < 2:
        raise ValueError(f"{fam} needs n >= 2")

    if fam == "BO":
        ring = bo_ring(n)
        return Presentation(fam, n, ring, GroebnerBasis(ring, ()), None)
    if fam == "BSO":
        ring = bso_ring(n)
        return Presentation(fam, n, ring, GroebnerBasis(ring, ()), None)
    if fam == "BO_top":
        ring = bo_top_ring(n)
        return Presentation(fam, n, ring, GroebnerBasis(ring, ()), None)
    if fam == "BSO_top":
        ring = bso_top_ring(n)
        return Presentation(fam, n, ring, GroebnerBasis(ring, ()), None)

    k = k_expected(n)
    vname = f"v{1 << k}"
    motivic = fam == "BSpin"
    vdeg = Bidegree(1 << k, (1 << (k - 1)) if motivic else 0)
    if n == 2:
        gens = ([("t", Bidegree(0, 1))] if motivic else []) + [(vname, vdeg)]
        ring = Ring(gens)
        return Presentation(fam, n, ring, GroebnerBasis(ring, ()), k)

    base = bso_ring(n) if motivic else bso_top_ring(n)
    ctx = bso_context(n) if motivic else bso_top_context(n)
    ambient = Ring(
        list(zip(base.names, base.bidegrees)) + [(vname, vdeg)]
    )
    rel = _theta_relations(base, ctx, k, budget)
    lifted = GroebnerBasis(ambient, [_lift(ambient, p, 1) for p in rel])
    return Presentation(fam, n, ambient, lifted, k)


class PoincareReport(NamedTuple):
    series: object
    expansion: dict

    def to_json(self):
        exp = [[dim, p, q] for (p, q), dim in sorted(self.expansion.items())]
        return {"series": self.series.to_json(), "expansion": exp}


def poincare(pres, max_d):
    """Exact Hilbert series of the quotient plus its expansion to degree max_d."""
    series = hilbert_series(pres.relations)
    return PoincareReport(series, series.expand(max_d))


# -- torsor relations ------------------------------------------------------------


class TorsorRow(NamedTuple):
    j: int
    relation: Poly
    verified: bool


def chern_square_ideal(n, include_u2=True):
    """Monomials u_{2i}^2 and t*u_{2i+1}^2 for class indices 2..n (plus u_2)."""
    ring = bso_ring(n)
    monos = []
    if include_u2:
        monos.append(ring.gen("u2").lead_monomial())
    for c in range(2, n + 1):
        exps = {f"u{c}": 2} if c % 2 == 0 else {"t": 1, f"u{c}": 2}
        monos.append(ring.monomial(exps).lead_monomial())
    return monos


def torsor_relations(n, max_j=None, include_u2=True):
    """For each j with 2^j + 1 <= n, the relation sum_h u_{2^j-h} u_{2^j+1+h}
    and whether theta_{j+1} reduces to it modulo the square ideal.

    Membership in a monomial ideal is per-term divisibility, so no basis
    computation is involved.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    ctx = bso_context(n)
    ideal = chern_square_ideal(n, include_u2)
    rows = []
    j = 0
    while (1 << j) + 1 <= n and (max_j is None or j <= max_j):
        w = 1 << j
        rel = ctx.ring.zero
        for h in range(w + 1):
            rel = rel + ctx.class_poly(w - h) * ctx.class_poly(w + 1 + h)
        diff = theta(ctx, j + 1) + rel
        ok = all(
            any(all(a >= b for a, b in zip(term, mono)) for mono in ideal)
            for term in diff.terms
        )
        rows.append(TorsorRow(j, rel, ok))
        j += 1
    return rows


# -- grading maps ----------------------------------------------------------------


def _class_span(ring, letter, extra=()):
    idx = []
    for name in ring.names:
        if name in extra:
            continue
        if name[0] != letter or not name[1:].isdigit():
            raise RingError(f"{name} is not a {letter}-class; map undefined")
        idx.append(int(name[1:]))
    idx.sort()
    if not idx or idx[0] not in (1, 2) or idx != list(range(idx[0], idx[-1] + 1)):
        raise RingError(f"{letter}-classes must form a contiguous range from 1 or 2")
    return idx[0], idx[-1]


@functools.lru_cache(maxsize=None)
def _t_ringmap(source):
    start, n = _class_span(source, "u", extra=("t",))
    if not source.has("t"):
        raise RingError("t_map expects a motivic ring")
    target = bo_top_ring(n) if start == 1 else bso_top_ring(n)
    images = []
    for name in source.names:
        images.append(target.one if name == "t" else target.gen("w" + name[1:]))
    return RingMap(source, target, images, kind="forget the weight")


def t_map(x):
    """tau to 1 and u_i to w_i: the topological realization."""
    return _t_ringmap(x.ring)(x)


@functools.lru_cache(maxsize=None)
def _i_ringmap(source):
    start, n = _class_span(source, "w")
    target = bo_ring(n) if start == 1 else bso_ring(n)
    images = [target.gen("u" + name[1:]) for name in source.names]
    return RingMap(source, target, images, kind="w_i to u_i")


def i_map(x):
    """w_i to u_i into the motivic ring (no tau adjustment)."""
    return _i_ringmap(x.ring)(x)


def h_map(x):
    """w_i to tau^(p//2 - q) u_i monomialwise: the weight-balancing lift.

    Not a ring map; it satisfies h(xy) = tau^(p(x)p(y) mod 2) h(x)h(y).
    """
    f = _i_ringmap(x.ring)
    target = f.target
    tpos = target.tau_index
    out = []
    for mono in x.terms:
        im = f(Poly(x.ring, (mono,))).lead_monomial()
        bd = target.monomial_bidegree(im)
        c = bd.p // 2 - bd.q
        if c < 0:
            raise ArithmeticError(f"negative tau exponent on {x.ring.names}: {c}")
        e = list(im)
        e[tpos] += c
        out.append(tuple(e))
    return target.poly(out)


# -- the G2 cross-check ----------------------------------------------------------


def g2_gysin_check(budget=None, extend_relations=()):
    """Certify that v8 drops the BSpin_7 series by (1 - T^8 S^4) and that the
    BG2 series equals the dropped series.  extend_relations lets callers
    sabotage the quotient to see the negative answer."""
    pres = present("BSpin", 7, budget)
    ring = pres.ring
    rels = list(pres.relations)
    extra = list(extend_relations)
    if extra:
        gb0 = groebner_basis(ring, rels + extra, budget)
    else:
        gb0 = pres.relations
    hs0 = hilbert_series(gb0)
    v8 = ring.gen("v8")
    gb1 = groebner_basis(ring, list(gb0) + [v8], budget)
    hs1 = hilbert_series(gb1)
    v8_regular = hs1 == hs0.times_factor(8, 4)

    g2 = hilbert_series(present("BG2").relations)
    series_identity = g2 == hs0.times_factor(8, 4)
    return {"v8_regular": v8_regular, "series_identity": series_identity}


def j_lower_bound(n):
    """{2^{j-1} : j >= 1 and 2^j + 1 <= n}."""
    if n < 3:
        raise ValueError("need n >= 3")
    out = set()
    j = 1
    while (1 << j) + 1 <= n:
        out.add(1 << (j - 1))
        j += 1
    return out


# -- tables ----------------------------------------------------------------------


class TableReport:
    __slots__ = ("rows", "notes")

    def __init__(self, rows, notes=""):
        self.rows = list(rows)
        self.notes = notes

    @property
    def all_ok(self):
        return all(r["ok"] for r in self.rows)

    def to_json(self):
        out = {"rows": self.rows}
        if self.notes:
            out["notes"] = self.notes
        return out


def k_row(n, budget=None):
    expected = k_expected(n)
    computed = k_computed(n, budget)
    return {"n": n, "expected": expected, "computed": computed, "ok": expected == computed}


def h_row(n):
    expected = formsf2.h_expected(n)
    computed = formsf2.h_of(n)
    return {"n": n, "expected": expected, "computed": computed, "ok": expected == computed}


def ktable(from_n=2, to_n=10, budget=None):
    return TableReport([k_row(n, budget) for n in range(from_n, to_n + 1)])


def htable(from_n=2, to_n=200):
    return TableReport([h_row(n) for n in range(from_n, to_n + 1)])
