"""Groebner bases, Hilbert series, and regular-sequence certification over F2.

The engine is Buchberger's algorithm with the sugar selection strategy and the
two classical pair criteria (coprime leading terms; the chain criterion).
Reduction runs in the kernel selected by :mod:`subtlesw.backend`.  Bases are
fully interreduced, so each ideal has one canonical basis for the ring's
monomial order regardless of generator order or kernel choice.

Hilbert series of quotients are exact bivariate rational functions computed
from the leading-term ideal by the standard pivot recursion on monomial
ideals: for any monomial p, N(I) = N(I + (p)) + T^pS^q * N(I : p).

Regularity of a homogeneous sequence is certified step by step: f is regular
on R/J exactly when the Hilbert series drops by the factor (1 - T^p S^q) of
f's bidegree, which is decided by exact numerator comparison.
"""

from __future__ import annotations

import functools
import threading

from . import backend
from ._reduction import _merge_xor
from .poly import INHOMOGENEOUS, Poly, RingError, ZERO_DEGREE

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """A Groebner computation ran out of its reduction budget."""

    def __init__(self, used, limit, context=""):
        self.used = used
        self.limit = limit
        self.context = context
        msg = f"budget exceeded after {used} of {limit} reduction steps"
        if context:
            msg += f" ({context})"
        super().__init__(msg)


class InhomogeneousError(ValueError):
    pass


class Budget:
    """Shared counter of reduction work (processed pairs + division steps)."""

    __slots__ = ("limit", "used", "context")

    def __init__(self, limit=DEFAULT_BUDGET, context=""):
        if limit < 0:
            raise ValueError("budget must be nonnegative")
        self.limit = limit
        self.used = 0
        self.context = context

    @property
    def remaining(self):
        return self.limit - self.used

    def charge(self, n=1):
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(self.used, self.limit, self.context)


def _resolve_budget(budget):
    if budget is None:
        return Budget()
    if isinstance(budget, Budget):
        return budget
    return Budget(int(budget))


# -- key-space helpers ---------------------------------------------------------


def _to_keys(x):
    key = x.ring.sort_key
    return tuple(key(m) for m in x.terms)


def _from_keys(ring, terms):
    unkey = ring.from_sort_key
    return Poly(ring, tuple(unkey(k) for k in terms))


def _divides(lt, m, L):
    for r in range(1, L):
        if lt[r] < m[r]:
            return False
    return True


def _kernel_nf(terms, basis, L, budget):
    nf, steps = backend.active().normal_form_terms(terms, basis, L, budget.remaining)
    if steps:
        budget.charge(steps)
    if nf is None:
        budget.charge(1)  # force the exceeded state and raise
        raise BudgetExceeded(budget.used, budget.limit, budget.context)
    return nf


def _buchberger(ring, key_polys, budget):
    """Reduced Groebner basis in key space from nonzero key polynomials."""
    L = ring._key_len
    dperm = ring._dperm

    def lcm_of(a, b):
        body = tuple(min(a[r], b[r]) for r in range(1, L))
        w = 0
        for r in range(L - 1):
            w -= dperm[r] * body[r]
        return (w,) + body

    G = []
    sugars = []
    pairs = {}

    def add_pairs(j):
        ltj = G[j][0]
        for i in range(j):
            lcm = lcm_of(G[i][0], ltj)
            s = max(
                sugars[i] + lcm[0] - G[i][0][0],
                sugars[j] + lcm[0] - ltj[0],
            )
            pairs[(i, j)] = (s, lcm)

    for f in sorted(key_polys):
        nf = _kernel_nf(f, G, L, budget)
        if nf:
            G.append(nf)
            sugars.append(nf[0][0])
            add_pairs(len(G) - 1)

    while pairs:
        (i, j) = min(pairs, key=lambda ij: (pairs[ij][0], pairs[ij][1], ij))
        sugar, lcm = pairs.pop((i, j))
        lti, ltj = G[i][0], G[j][0]
        if all(lti[r] == 0 or ltj[r] == 0 for r in range(1, L)):
            continue  # coprime leading terms reduce to zero
        skip = False
        for k in range(len(G)):
            if k in (i, j) or not _divides(G[k][0], lcm, L):
                continue
            a = (i, k) if i < k else (k, i)
            b = (j, k) if j < k else (k, j)
            if a not in pairs and b not in pairs:
                skip = True  # chain criterion
                break
        if skip:
            continue
        budget.charge(1)
        qf = tuple(lcm[r] - lti[r] for r in range(L))
        qg = tuple(lcm[r] - ltj[r] for r in range(L))
        fa = [tuple(t[r] + qf[r] for r in range(L)) for t in G[i]]
        fb = [tuple(t[r] + qg[r] for r in range(L)) for t in G[j]]
        spoly = tuple(_merge_xor(fa, 0, fb))
        if not spoly:
            continue
        nf = _kernel_nf(spoly, G, L, budget)
        if nf:
            G.append(nf)
            sugars.append(sugar)
            add_pairs(len(G) - 1)

    # Minimal generators: ascending scan keeps only underivable leading terms.
    order = sorted(range(len(G)), key=lambda k: G[k][0])
    keep = []
    for k in order:
        lt = G[k][0]
        if not any(_divides(G[m][0], lt, L) for m in keep):
            keep.append(k)
    final = []
    for k in keep:
        others = [G[m] for m in keep if m != k]
        final.append(_kernel_nf(G[k], others, L, budget))
    final.sort(key=lambda f: f[0], reverse=True)
    return final


# -- public objects ------------------------------------------------------------


class GroebnerBasis:
    """Reduced basis; the tuple of polynomials is sorted by leading term."""

    __slots__ = ("ring", "polys", "_keys")

    def __init__(self, ring, polys):
        self.ring = ring
        self.polys = tuple(polys)
        self._keys = None

    def _key_basis(self):
        if self._keys is None:
            self._keys = [_to_keys(p) for p in self.polys]
        return self._keys

    def lead_exponents(self):
        return [p.lead_monomial() for p in self.polys]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.ring == other.ring
            and self.polys == other.polys
        )

    def __hash__(self):
        return hash((self.ring, self.polys))

    def __repr__(self):
        return "GroebnerBasis[" + "; ".join(str(p) for p in self.polys) + "]"


def groebner_basis(ring, gens, budget=None):
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    budget = _resolve_budget(budget)
    keys = []
    for g in gens:
        if g.ring != ring:
            raise RingError("generator lies in a different ring")
        if g:
            keys.append(_to_keys(g))
    basis = _buchberger(ring, keys, budget)
    return GroebnerBasis(ring, [_from_keys(ring, f) for f in basis])


def normal_form(x, gb, budget=None):
    """Unique remainder of ``x`` modulo the reduced basis ``gb``."""
    if x.ring != gb.ring:
        raise RingError("polynomial lies in a different ring")
    budget = _resolve_budget(budget)
    nf = _kernel_nf(_to_keys(x), gb._key_basis(), x.ring._key_len, budget)
    return _from_keys(x.ring, nf)


def ideal_member(x, gb, budget=None):
    """Whether ``x`` lies in the ideal presented by ``gb``."""
    return not normal_form(x, gb, budget)


_gb_cache = {}
_gb_lock = threading.Lock()


def cached_groebner_basis(ring, gens):
    """Default-budget basis, memoized on (ring, canonicalized generators)."""
    key = (ring, tuple(sorted(g.terms for g in gens if g)))
    with _gb_lock:
        hit = _gb_cache.get(key)
    if hit is not None:
        return hit
    gb = groebner_basis(ring, gens)
    with _gb_lock:
        _gb_cache[key] = gb
    return gb


# -- Hilbert series ------------------------------------------------------------


def _p2_mul(a, b):
    out = {}
    for (p1, q1), c1 in a.items():
        for (p2, q2), c2 in b.items():
            k = (p1 + p2, q1 + q2)
            v = out.get(k, 0) + c1 * c2
            if v:
                out[k] = v
            elif k in out:
                del out[k]
    return out

def _p2_add(a, b):
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


def _p2_shift(a, p, q):
    return {(kp + p, kq + q): v for (kp, kq), v in a.items()}


def _one_minus(p, q):
    return {(0, 0): 1, (p, q): -1}


def _minimalize(monos):
    def div(a, b):
        return all(x <= y for x, y in zip(a, b))

    out = []
    for g in sorted(set(monos), key=lambda t: (sum(t), t)):
        if not any(div(h, g) for h in out):
            out.append(g)
    return out


def _lt_numerator(lt_exps, bidegs):
    """Numerator of the Hilbert series of R/(monomial ideal)."""

    def bideg(g):
        p = q = 0
        for e, (bp, bq) in zip(g, bidegs):
            p += e * bp
            q += e * bq
        return p, q

    memo = {}

    def rec(gens):
        key = tuple(gens)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if not gens:
            res = {(0, 0): 1}
        elif any(sum(g) == 0 for g in gens):
            res = {}
        else:
            npure = [g for g in gens if sum(1 for e in g if e) > 1]
            if not npure:
                res = {(0, 0): 1}
                for g in gens:
                    p, q = bideg(g)
                    res = _p2_mul(res, _one_minus(p, q))
            else:
                counts = {}
                for g in npure:
                    for i, e in enumerate(g):
                        if e:
                            counts[i] = counts.get(i, 0) + 1
                j = max(sorted(counts), key=lambda i: counts[i])
                pivot = tuple(1 if i == j else 0 for i in range(len(bidegs)))
                plus = _minimalize([g for g in gens if g[j] == 0] + [pivot])
                colon = _minimalize(
                    [tuple(e - 1 if i == j and e else e for i, e in enumerate(g)) for g in gens]
                )
                pj, qj = bideg(pivot)
                res = _p2_add(rec(tuple(plus)), _p2_shift(rec(tuple(colon)), pj, qj))
        memo[key] = res
        return res

    return rec(tuple(_minimalize(lt_exps)))


class HilbertSeries:
    """Exact bigraded Hilbert series: numerator over prod(1 - T^p S^q).

    The denominator always lists one factor per ring generator, so equality
    testing cross-multiplies numerators against the uncommon factors.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator):
        self.numerator = {k: v for k, v in numerator.items() if v}
        self.denominator = tuple(sorted(denominator))

    def __eq__(self, other):
        if not isinstance(other, HilbertSeries):
            return NotImplemented
        mine = list(self.denominator)
        theirs = list(other.denominator)
        common = []
        for f in list(mine):
            if f in theirs:
                mine.remove(f)
                theirs.remove(f)
                common.append(f)
        a = dict(self.numerator)
        for p, q in theirs:
            a = _p2_mul(a, _one_minus(p, q))
        b = dict(other.numerator)
        for p, q in mine:
            b = _p2_mul(b, _one_minus(p, q))
        return a == b

    __hash__ = None

    def times_factor(self, p, q):
        """Multiply the series by (1 - T^p S^q)."""
        return HilbertSeries(_p2_mul(self.numerator, _one_minus(p, q)), self.denominator)

    def expand(self, max_d):
        """Coefficients {(p, q): dim} up to combined degree max_d."""
        cur = {k: v for k, v in self.numerator.items() if k[0] + k[1] <= max_d}
        for (p, q) in self.denominator:
            nxt = {}
            for a in range(max_d + 1):
                for b in range(max_d + 1 - a):
                    v = cur.get((a, b), 0)
                    if a >= p and b >= q:
                        v += nxt.get((a - p, b - q), 0)
                    if v:
                        nxt[(a, b)] = v
            cur = nxt
        for v in cur.values():
            if v < 0:
                raise ArithmeticError("negative coefficient in a Hilbert expansion")
        return cur

    def to_json(self):
        num = sorted(((p, q), c) for (p, q), c in self.numerator.items())
        return {
            "numerator": [[c, p, q] for (p, q), c in num],
            "denominator": [[p, q] for (p, q) in self.denominator],
        }

    def expansion_json(self, max_d):
        exp = self.expand(max_d)
        return [[dim, p, q] for (p, q), dim in sorted(exp.items())]

    def __repr__(self):
        return f"HilbertSeries({self.numerator!r} / {self.denominator!r})"


def hilbert_series(gb):
    """Exact Hilbert series of R/I from a reduced basis of a homogeneous I."""
    ring = gb.ring
    for p in gb.polys:
        if p.bidegree() is INHOMOGENEOUS:
            raise InhomogeneousError(f"ideal generator {p} is not bihomogeneous")
    bidegs = [(bd.p, bd.q) for bd in ring.bidegrees]
    num = _lt_numerator(gb.lead_exponents(), bidegs)
    return HilbertSeries(num, bidegs)


def krull_dimension(gb):
    """Dimension of R/I: the largest variable set independent modulo LT(I).

    A set S is independent when no leading-term generator has support inside
    S; the answer is nvars minus a minimum hitting set of the supports.
    """
    ring = gb.ring
    supports = []
    for m in _minimalize(gb.lead_exponents()):
        sup = frozenset(i for i, e in enumerate(m) if e)
        if not sup:
            return -1  # the ideal is the whole ring
        supports.append(sup)

    def min_hit(remaining):
        if not remaining:
            return 0
        sup = min(remaining, key=lambda s: (len(s), sorted(s)))
        best = None
        for v in sorted(sup):
            rest = [s for s in remaining if v not in s]
            cand = 1 + min_hit(rest)
            if best is None or cand < best:
                best = cand
        return best

    return len(ring.names) - min_hit(supports)


class RegularSequenceChecker:
    """Incremental regular-sequence certifier.

    ``append(f)`` decides whether f is a nonzerodivisor on the current
    quotient by the exact Hilbert-series drop; on success the ideal grows by
    f, on failure the state is unchanged.  ``basis`` exposes the reduced
    basis of the ideal accumulated so far.
    """

    __slots__ = ("ring", "budget", "_bidegs", "_num", "_keys", "length")

    def __init__(self, ring, budget=None):
        self.ring = ring
        self.budget = _resolve_budget(budget)
        self._bidegs = [(bd.p, bd.q) for bd in ring.bidegrees]
        self._num = {(0, 0): 1}
        self._keys = []
        self.length = 0

    def append(self, f):
        if f.ring != self.ring:
            raise RingError("sequence element lies in a different ring")
        bd = f.bidegree()
        if bd is INHOMOGENEOUS:
            raise InhomogeneousError(f"{f} is not bihomogeneous")
        if bd is ZERO_DEGREE:
            return False
        if bd.d <= 0:
            raise ValueError("sequence elements must have positive combined degree")
        basis = _buchberger(self.ring, self._keys + [_to_keys(f)], self.budget)
        lt_exps = [self.ring.from_sort_key(g[0]) for g in basis]
        num = _lt_numerator(lt_exps, self._bidegs)
        if num != _p2_mul(self._num, _one_minus(bd.p, bd.q)):
            return False
        self._num, self._keys = num, basis
        self.length += 1
        return True

    @property
    def basis(self):
        return GroebnerBasis(self.ring, [_from_keys(self.ring, f) for f in self._keys])


def is_regular_sequence(ring, seq, budget=None):
    """Certify a homogeneous sequence by exact Hilbert-series drops.

    Returns (True, None) or (False, i) with ``i`` the 1-based index of the
    first element that fails (a zero element fails at its own index).
    Inhomogeneous or degree-zero elements are errors.
    """
    seq = list(seq)
    for idx, f in enumerate(seq, 1):
        if f.ring != ring:
            raise RingError("sequence element lies in a different ring")
        bd = f.bidegree()
        if bd is INHOMOGENEOUS:
            raise InhomogeneousError(f"element {idx} is not bihomogeneous")
        if bd is not ZERO_DEGREE and bd.d <= 0:
            raise ValueError(f"element {idx} must have positive combined degree")
    checker = RegularSequenceChecker(ring, budget)
    for idx, f in enumerate(seq, 1):
        if not checker.append(f):
            return (False, idx)
    return (True, None)
