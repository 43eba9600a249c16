"""Bigraded polynomial arithmetic over F2.

Polynomials live in finitely generated bigraded rings over F2.  Every
generator carries a bidegree, written ``(q)[p]`` with ``p`` the cohomological
degree and ``q`` the weight.  Coefficients are implicit (they are all 1), so a
polynomial is a finite set of monomials and addition is symmetric difference.

The distinguished weight-only generator is printed ``t`` and has bidegree
(1)[0].  Subtle classes ``u_i`` live in ([i/2])[i], their topological shadows
``w_i`` in (0)[i], and the extra spin classes ``v_{2^k}`` in (2^{k-1})[2^k].

Monomials are compared in graded reverse lexicographic order with respect to
the combined degree d = p + q; ties are broken by generator list order with
``t`` last, so ``t`` is the cheapest variable.
"""

from __future__ import annotations

import functools
import re
from typing import Iterable, NamedTuple

MAX_EXPONENT = 2**32 - 1

#: Markers returned by :func:`bidegree_of` for the two degenerate cases.
INHOMOGENEOUS = "inhomogeneous"
ZERO_DEGREE = "zero"  # the zero polynomial is homogeneous of every bidegree


class RingError(ValueError):
    pass


class ParseError(ValueError):
    pass


class ExponentOverflow(OverflowError):
    pass


class Bidegree(NamedTuple):
    """Cohomological degree ``p`` and weight ``q``, printed ``(q)[p]``."""

    p: int
    q: int

    def __add__(self, other):
        return Bidegree(self.p + other.p, self.q + other.q)

    def scaled(self, k):
        return Bidegree(self.p * k, self.q * k)

    @property
    def d(self):
        """Combined degree p + q."""
        return self.p + self.q

    def __str__(self):
        return f"({self.q})[{self.p}]"


_NAME_RE = re.compile(r"^(t|[uwvxy](0|[1-9][0-9]*))$")


def _check_generator(name, bd):
    if not isinstance(name, str) or not _NAME_RE.match(name):
        raise RingError(f"generator name {name!r} is not printable in the term grammar")
    if bd.p < 0 or bd.q < 0:
        raise RingError(f"generator {name}: bidegree components must be nonnegative")
    if bd.p + bd.q == 0:
        raise RingError(f"generator {name}: combined degree must be positive")
    if name == "t":
        if (bd.p, bd.q) != (0, 1):
            raise RingError("t must have bidegree (1)[0]")
        return
    letter, idx = name[0], int(name[1:])
    if letter == "u":
        if idx < 1 or (bd.p, bd.q) != (idx, idx // 2):
            raise RingError(f"u{idx} must have bidegree ({idx // 2})[{idx}]")
    elif letter == "w":
        if idx < 1 or (bd.p, bd.q) != (idx, 0):
            raise RingError(f"w{idx} must have bidegree (0)[{idx}]")
    elif letter == "v":
        if idx < 2 or idx & (idx - 1):
            raise RingError(f"v{idx}: index must be a power of two, at least 2")
        if bd.p != idx or bd.q not in (idx // 2, 0):
            raise RingError(f"v{idx} must have bidegree ({idx // 2})[{idx}] or (0)[{idx}]")
    # x/y generators carry whatever bidegree the caller wants.


class Ring:
    """An ordered list of bigraded generators and the induced monomial order.

    Monomials are exponent tuples aligned with the generator list.  The sort
    key of a monomial is ``(d, -e[perm[0]], -e[perm[1]], ...)`` where ``perm``
    runs through the generators in reversed tie-break order (``t`` first, then
    the list reversed); lexicographic comparison of keys realises the graded
    reverse lexicographic order.
    """

    __slots__ = (
        "names",
        "bidegrees",
        "_index",
        "tau_index",
        "_d",
        "_perm",
        "_dperm",
        "_key_len",
        "_hash",
    )

    def __init__(self, generators):
        gens = []
        for name, bd in generators:
            if not isinstance(bd, Bidegree):
                bd = Bidegree(*bd)
            _check_generator(name, bd)
            gens.append((name, bd))
        names = tuple(name for name, _ in gens)
        if len(set(names)) != len(names):
            raise RingError("duplicate generator names")
        # an empty generator list is allowed: the ring is the ground field
        self.names = names
        self.bidegrees = tuple(bd for _, bd in gens)
        self._index = {name: i for i, name in enumerate(names)}
        self.tau_index = self._index.get("t")
        self._d = tuple(bd.p + bd.q for bd in self.bidegrees)
        tiebreak = [i for i in range(len(names)) if i != self.tau_index]
        if self.tau_index is not None:
            tiebreak.append(self.tau_index)
        self._perm = tuple(reversed(tiebreak))
        self._dperm = tuple(self._d[i] for i in self._perm)
        self._key_len = len(names) + 1
        self._hash = hash((self.names, self.bidegrees))

    # -- basic queries -----------------------------------------------------

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.names == other.names
            and self.bidegrees == other.bidegrees
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Ring(" + ",".join(self.names) + ")"

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise RingError(f"unknown generator {name!r}") from None

    def has(self, name):
        return name in self._index

    def monomial_bidegree(self, mono):
        p = q = 0
        for e, bd in zip(mono, self.bidegrees):
            if e:
                p += e * bd.p
                q += e * bd.q
        return Bidegree(p, q)

    # -- monomial order ----------------------------------------------------

    def sort_key(self, mono):
        w = 0
        for e, d in zip(mono, self._d):
            if e:
                w += e * d
        return (w,) + tuple(-mono[i] for i in self._perm)

    def from_sort_key(self, key):
        exps = [0] * len(self.names)
        for r, i in enumerate(self._perm):
            exps[i] = -key[1 + r]
        return tuple(exps)

    # -- element construction ----------------------------------------------

    @property
    def zero(self):
        return Poly(self, ())

    @property
    def one(self):
        return Poly(self, ((0,) * len(self.names),))

    def gen(self, name):
        exps = [0] * len(self.names)
        exps[self.index(name)] = 1
        return Poly(self, (tuple(exps),))

    def monomial(self, exps):
        """Poly with the single monomial given by a name -> exponent mapping."""
        e = [0] * len(self.names)
        for name, k in exps.items():
            if k < 0 or k > MAX_EXPONENT:
                raise ExponentOverflow(f"exponent {k} for {name} out of range")
            e[self.index(name)] = k
        return Poly(self, (tuple(e),))

    def poly(self, monos):
        """Canonical Poly from an iterable of exponent tuples (XOR semantics)."""
        acc = set()
        for m in monos:
            m = tuple(m)
            acc ^= {m}
        return Poly(self, tuple(sorted(acc, key=self.sort_key, reverse=True)))


class Poly:
    """Immutable F2 polynomial: a tuple of monomials sorted descending.

    Do not build directly from unsorted data; use the Ring helpers,
    :func:`parse_poly`, or arithmetic.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, self.terms))

    def _check_ring(self, other):
        if not isinstance(other, Poly):
            raise TypeError(f"cannot combine Poly with {type(other).__name__}")
        if other.ring != self.ring:
            raise RingError("polynomials belong to different rings")

    def __add__(self, other):
        self._check_ring(other)
        acc = set(self.terms) ^ set(other.terms)
        return Poly(self.ring, tuple(sorted(acc, key=self.ring.sort_key, reverse=True)))

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other):
        self._check_ring(other)
        acc = set()
        for a in self.terms:
            for b in other.terms:
                m = tuple(x + y for x, y in zip(a, b))
                for e in m:
                    if e > MAX_EXPONENT:
                        raise ExponentOverflow("monomial exponent exceeds 32 bits")
                acc ^= {m}
        return Poly(self.ring, tuple(sorted(acc, key=self.ring.sort_key, reverse=True)))

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def lead_monomial(self):
        if not self.terms:
            raise ValueError("the zero polynomial has no leading monomial")
        return self.terms[0]

    def bidegree(self):
        """Common Bidegree, ZERO_DEGREE for 0, or INHOMOGENEOUS."""
        if not self.terms:
            return ZERO_DEGREE
        bd = self.ring.monomial_bidegree(self.terms[0])
        for m in self.terms[1:]:
            if self.ring.monomial_bidegree(m) != bd:
                return INHOMOGENEOUS
        return bd

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        parts = []
        for m in self.terms:
            facs = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(names, m)
                if e
            ]
            parts.append("*".join(facs) if facs else "1")
        return "+".join(parts)

    def __repr__(self):
        return f"<{self}>"


def bidegree_of(x):
    """Bidegree of ``x``; INHOMOGENEOUS for mixed terms, ZERO_DEGREE for 0."""
    return x.bidegree()


def ring_new(generators):
    """Build a bigraded ring from (name, Bidegree) pairs.

    Names must be printable in the term grammar (t, or one of u/w/v/x/y
    followed by an index) and the named classes must carry their standard
    bidegrees; x and y generators are unconstrained apart from positivity.
    """
    return Ring(generators)


# -- parsing and printing ----------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<op>[+*^])|(?P<name>[a-z][0-9]*)|(?P<num>[0-9]+))")


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            tail = text[pos:].lstrip()
            if not tail:
                break
            raise ParseError(f"unexpected character {tail[0]!r}")
        if m.group("op"):
            toks.append(("op", m.group("op")))
        elif m.group("name"):
            toks.append(("name", m.group("name")))
        else:
            toks.append(("num", m.group("num")))
        pos = m.end()
    return toks


def parse_poly(ring, text):
    """Parse ``poly := term ('+' term)*`` with terms ``factor ('*' factor)*``.

    Factors are ``gen ('^' uint)?`` or the literals 0 and 1.  Whitespace is
    ignored; unknown generators are errors.
    """
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial")
    pos = 0
    n = len(ring.names)
    acc = set()

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    while True:
        exps = [0] * n
        dead = False
        while True:
            kind, val = peek()
            if kind == "name":
                pos += 1
                idx = ring.index(val)
                e = 1
                if peek() == ("op", "^"):
                    pos += 1
                    kind2, val2 = peek()
                    if kind2 != "num":
                        raise ParseError("expected an exponent after '^'")
                    pos += 1
                    e = int(val2)
                exps[idx] += e
                if exps[idx] > MAX_EXPONENT:
                    raise ExponentOverflow("monomial exponent exceeds 32 bits")
            elif kind == "num":
                pos += 1
                if val == "0":
                    dead = True
                elif val != "1":
                    raise ParseError(f"bare integer {val} is not a factor")
            else:
                raise ParseError("expected a factor")
            if peek() == ("op", "*"):
                pos += 1
                continue
            break
        if not dead:
            acc ^= {tuple(exps)}
        kind, val = peek()
        if (kind, val) == ("op", "+"):
            pos += 1
            continue
        if kind is None:
            break
        raise ParseError(f"unexpected token {val!r}")
    return Poly(ring, tuple(sorted(acc, key=ring.sort_key, reverse=True)))


# -- ring homomorphisms -------------------------------------------------------


class RingMap:
    """Generator-wise substitution map between rings.

    ``images`` lists one target Poly per source generator.  ``kind`` is a free
    label recording what the map claims to preserve; named constructors check
    those claims at build time.
    """

    __slots__ = ("source", "target", "images", "kind")

    def __init__(self, source, target, images, kind=""):
        images = tuple(images)
        if len(images) != len(source.names):
            raise RingError("need exactly one image per source generator")
        for img in images:
            if img.ring != target:
                raise RingError("image polynomial lies in the wrong ring")
        self.source = source
        self.target = target
        self.images = images
        self.kind = kind

    def __call__(self, x):
        return apply_map(self, x)

    def __repr__(self):
        return f"RingMap({self.source!r} -> {self.target!r}, kind={self.kind!r})"


def apply_map(f, x):
    """Apply a RingMap to a polynomial by substituting generator images."""
    if x.ring != f.source:
        raise RingError("polynomial is not in the map's source ring")
    acc = set()
    for mono in x.terms:
        prod = f.target.one
        for img, e in zip(f.images, mono):
            if e:
                prod = prod * img**e
        acc ^= set(prod.terms)
    return f.target.poly(acc)


# -- standard rings -----------------------------------------------------------


@functools.lru_cache(maxsize=None)
def bo_ring(n):
    """H(BO_n) = F2[t][u1..un]."""
    if n < 1:
        raise RingError("need n >= 1")
    gens = [("t", Bidegree(0, 1))]
    gens += [(f"u{i}", Bidegree(i, i // 2)) for i in range(1, n + 1)]
    return Ring(gens)


@functools.lru_cache(maxsize=None)
def bso_ring(n):
    """H(BSO_n) = F2[t][u2..un]."""
    if n < 2:
        raise RingError("need n >= 2")
    gens = [("t", Bidegree(0, 1))]
    gens += [(f"u{i}", Bidegree(i, i // 2)) for i in range(2, n + 1)]
    return Ring(gens)


@functools.lru_cache(maxsize=None)
def bo_top_ring(n):
    """Classical H(BO_n; F2) = F2[w1..wn]."""
    if n < 1:
        raise RingError("need n >= 1")
    return Ring([(f"w{i}", Bidegree(i, 0)) for i in range(1, n + 1)])


@functools.lru_cache(maxsize=None)
def bso_top_ring(n):
    """Classical H(BSO_n; F2) = F2[w2..wn]."""
    if n < 2:
        raise RingError("need n >= 2")
    return Ring([(f"w{i}", Bidegree(i, 0)) for i in range(2, n + 1)])
