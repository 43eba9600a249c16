"""Steenrod squares on subtle Stiefel-Whitney classes.

Sq^k is defined on a single class by the Wu formula, extended to products by
the Cartan rule and to sums F2-linearly.  In the motivic flavor the ground
coefficients are H = F2[tau] and the Cartan rule picks up a factor of tau
exactly when both indices are odd; squares obey Sq^{2c}(z^2) = tau^(c mod 2)
(Sq^c z)^2.  The topological flavor (w-generators, no tau) degenerates to the
classical Wu/Cartan calculus.

The theta sequence theta_0 = u2, theta_{j+1} = Sq^{2^j} theta_j drives the
spin presentations in :mod:`subtlesw.spaces`.

Everything here is pure and memoized; contexts are immutable and hashable.
"""

from __future__ import annotations

import functools
import re

from .poly import Poly, RingError, bo_ring, bo_top_ring, bso_ring, bso_top_ring


def binom_mod2(a, b):
    """C(a, b) mod 2 by the bitwise test; 0 for b < 0 or a < b."""
    if b < 0 or a < 0 or a < b:
        return 0
    return 1 if ((a - b) & b) == 0 else 0


_CLASS_RE = re.compile(r"^([uw])([0-9]+)$")


class SteenrodContext:
    """A ring of subtle classes with the index range the action truncates to.

    ``n`` is the largest class index available; classes above it are zero.
    The flavor is read off the ring: a ``t`` generator means motivic
    (u-classes), otherwise topological (w-classes); a class of index 1 means
    O-flavor, otherwise SO-flavor where the index-1 class is the constant 0.
    """

    __slots__ = ("ring", "n", "letter", "motivic", "start", "_class_pos", "_allowed", "_hash")

    def __init__(self, ring, n=None):
        self.ring = ring
        self.motivic = ring.has("t")
        classes = {}
        for pos, name in enumerate(ring.names):
            m = _CLASS_RE.match(name)
            if m:
                classes.setdefault(m.group(1), {})[int(m.group(2))] = pos
        if not classes:
            raise RingError("ring has no u- or w-classes")
        if len(classes) > 1:
            raise RingError("ring mixes u- and w-classes")
        (self.letter, pos_map), = classes.items()
        if (self.letter == "u") != self.motivic:
            raise RingError("u-classes require t in the ring; w-classes forbid it")
        self.start = 1 if 1 in pos_map else 2
        if n is None:
            n = max(pos_map)
        if n < self.start:
            raise RingError(f"need at least the index-{self.start} class")
        for i in range(self.start, n + 1):
            if i not in pos_map:
                raise RingError(f"class {self.letter}{i} missing from the ring")
        self.n = n
        self._class_pos = {i: pos_map[i] for i in range(self.start, n + 1)}
        allowed = set(self._class_pos.values())
        if self.motivic:
            allowed.add(ring.tau_index)
        self._allowed = frozenset(allowed)
        self._hash = hash((ring, n, self.letter))

    @property
    def flavor(self):
        base = ("b" + ("o" if self.start == 1 else "so"))
        return base if self.motivic else base + "_top"

    def class_poly(self, i):
        """The index-i class as a polynomial: 1 at i=0, 0 above n or at a
        missing index-1 class in SO flavor."""
        if i == 0:
            return self.ring.one
        if i > self.n or i < self.start:
            return self.ring.zero
        e = [0] * len(self.ring)
        e[self._class_pos[i]] = 1
        return Poly(self.ring, (tuple(e),))

    def _check_argument(self, x):
        if x.ring != self.ring:
            raise RingError("polynomial lies outside the context ring")
        for mono in x.terms:
            for pos, e in enumerate(mono):
                if e and pos not in self._allowed:
                    raise RingError(
                        f"Steenrod action undefined on generator {self.ring.names[pos]}"
                    )

    def __eq__(self, other):
        return (
            isinstance(other, SteenrodContext)
            and self.ring == other.ring
            and self.n == other.n
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"<SteenrodContext {self.flavor} n={self.n}>"


@functools.lru_cache(maxsize=None)
def bso_context(n):
    return SteenrodContext(bso_ring(n), n)


@functools.lru_cache(maxsize=None)
def bo_context(n):
    return SteenrodContext(bo_ring(n), n)


@functools.lru_cache(maxsize=None)
def bso_top_context(n):
    return SteenrodContext(bso_top_ring(n), n)


@functools.lru_cache(maxsize=None)
def bo_top_context(n):
    return SteenrodContext(bo_top_ring(n), n)


def _tau_shift(ctx, x):
    # multiply by tau; only ever called in the motivic flavor
    t = [0] * len(ctx.ring)
    t[ctx.ring.tau_index] = 1
    return Poly(ctx.ring, (tuple(t),)) * x


@functools.lru_cache(maxsize=None)
def _sq_gen(ctx, k, m):
    """Sq^k on the single index-m class, by the Wu formula."""
    if k == 0:
        return ctx.class_poly(m)
    if k > m:
        return ctx.ring.zero
    if k == m:
        c = ctx.class_poly(m)
        return c * c
    acc = ctx.ring.zero
    for j in range(k + 1):
        if not binom_mod2(m + j - k - 1, j):
            continue
        term = ctx.class_poly(k - j) * ctx.class_poly(m + j)
        acc = acc + term
    return acc


@functools.lru_cache(maxsize=None)
def _sq_mono(ctx, k, mono):
    ring = ctx.ring
    if ctx.motivic and mono[ring.tau_index]:
        a = mono[ring.tau_index]
        rest = list(mono)
        rest[ring.tau_index] = 0
        t = [0] * len(ring)
        t[ring.tau_index] = a
        return Poly(ring, (tuple(t),)) * _sq_mono(ctx, k, tuple(rest))
    if k == 0:
        return Poly(ring, (mono,))
    p = sum(e * bd.p for e, bd in zip(mono, ring.bidegrees) if e)
    if k > p:
        return ring.zero  # instability; also forced by the recursion below
    odd = [pos for pos, e in enumerate(mono) if e & 1]
    if not odd:
        if k & 1:
            return ring.zero
        half = tuple(e >> 1 for e in mono)
        c = k >> 1
        inner = _sq_mono(ctx, c, half)
        res = inner * inner
        if ctx.motivic and (c & 1) and res:
            res = _tau_shift(ctx, res)
        return res
    pos = odd[0]
    m = ring.bidegrees[pos].p  # class index of the split-off generator
    rest = list(mono)
    rest[pos] -= 1
    rest = tuple(rest)
    acc = ring.zero
    for a in range(min(k, m) + 1):
        left = _sq_gen(ctx, a, m)
        if not left:
            continue
        right = _sq_mono(ctx, k - a, rest)
        if not right:
            continue
        part = left * right
        if ctx.motivic and (a & 1) and ((k - a) & 1):
            part = _tau_shift(ctx, part)
        acc = acc + part
    return acc


def sq(ctx, k, x):
    """Sq^k applied to x, termwise over F2.

    Bihomogeneous input of bidegree (q)[p] maps to (q + k//2)[p + k] or to
    zero; v-, x- and y-generators have no defined action and are rejected.
    """
    if k < 0:
        raise ValueError("Sq index must be nonnegative")
    ctx._check_argument(x)
    acc = ctx.ring.zero
    for mono in x.terms:
        acc = acc + _sq_mono(ctx, k, mono)
    return acc


def cartan(ctx, k, x, y):
    """The Cartan expansion sum_{a+b=k} tau^(a,b both odd) Sq^a x * Sq^b y."""
    acc = ctx.ring.zero
    for a in range(k + 1):
        left = sq(ctx, a, x)
        if not left:
            continue
        right = sq(ctx, k - a, y)
        if not right:
            continue
        part = left * right
        if ctx.motivic and (a & 1) and ((k - a) & 1):
            part = _tau_shift(ctx, part)
        acc = acc + part
    return acc


@functools.lru_cache(maxsize=None)
def theta(ctx, j):
    """theta_0 = the index-2 class; theta_{j+1} = Sq^{2^j} theta_j.

    In the topological flavor this is the classical rho sequence.
    """
    if j < 0:
        raise ValueError("theta index must be nonnegative")
    if ctx.start != 2:
        raise RingError("theta is defined in the SO flavors")
    if j == 0:
        return ctx.class_poly(2)
    return sq(ctx, 1 << (j - 1), theta(ctx, j - 1))


class ThomModuleElement:
    """An element w * alpha of the rank-one free module over the class ring.

    alpha is a formal generator of bidegree (ctx.n // 2)[ctx.n]; the squares
    act through Sq^j alpha = u_j alpha for j <= ctx.n and 0 above.
    """

    __slots__ = ("ctx", "coefficient")

    def __init__(self, ctx, coefficient):
        if coefficient.ring != ctx.ring:
            raise RingError("coefficient lies outside the context ring")
        self.ctx = ctx
        self.coefficient = coefficient

    def __add__(self, other):
        if self.ctx != other.ctx:
            raise RingError("Thom elements over different contexts")
        return ThomModuleElement(self.ctx, self.coefficient + other.coefficient)

    def __eq__(self, other):
        return (
            isinstance(other, ThomModuleElement)
            and self.ctx == other.ctx
            and self.coefficient == other.coefficient
        )

    def __hash__(self):
        return hash((self.ctx, self.coefficient))

    def __bool__(self):
        return bool(self.coefficient)

    def bidegree(self):
        from .poly import Bidegree, INHOMOGENEOUS, ZERO_DEGREE

        bd = self.coefficient.bidegree()
        if bd is ZERO_DEGREE or bd is INHOMOGENEOUS:
            return bd
        return bd + Bidegree(self.ctx.n, self.ctx.n // 2)

    def __str__(self):
        if not self.coefficient:
            return "0"
        return f"({self.coefficient})*alpha"

    def __repr__(self):
        return f"ThomModuleElement({self})"


def thom_element(ctx, coefficient):
    return ThomModuleElement(ctx, coefficient)


def thom_sq(ctx, k, e):
    """Sq^k(w * alpha) by the Cartan rule against Sq^b alpha = u_b alpha."""
    if k < 0:
        raise ValueError("Sq index must be nonnegative")
    if e.ctx != ctx:
        raise RingError("element lies over a different context")
    acc = ctx.ring.zero
    for b in range(min(k, ctx.n) + 1):
        factor = ctx.class_poly(b)
        if not factor:
            continue
        left = sq(ctx, k - b, e.coefficient)
        if not left:
            continue
        part = left * factor
        if ctx.motivic and ((k - b) & 1) and (b & 1):
            part = _tau_shift(ctx, part)
        acc = acc + part
    return ThomModuleElement(ctx, acc)
