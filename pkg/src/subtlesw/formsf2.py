"""Bilinear forms over F2, radicals, Frobenius stability, and h(n).

The length h(n) of the tau-killed regular sequences is governed by the right
radical of an explicit bilinear form on a small F2 vector space (one form for
even n, one for odd n).  This module builds those forms, computes radicals by
plain Gaussian elimination, produces the Frobenius-twisted generator
sequences B(x, y^{2^l}), and checks Frobenius stability of subspaces over
small fields F_{2^e}.

Field elements of F_{2^e} are ints (bit i = coefficient of x^i) reduced
modulo a fixed irreducible polynomial per e, chosen as the lexicographically
smallest irreducible of that degree so the representation is reproducible
without an external table.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

from .poly import Bidegree, Ring, RingMap


class BilinearFormF2:
    """A form B(x, y) = x^T M y with M a 0/1 matrix."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        m = np.asarray(matrix, dtype=np.uint8) % 2
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("form matrix must be square")
        m.setflags(write=False)
        self.matrix = m

    @property
    def dim(self):
        return self.matrix.shape[0]

    def evaluate(self, x, y):
        x = np.asarray(x, dtype=np.uint8)
        y = np.asarray(y, dtype=np.uint8)
        return int(x @ self.matrix.astype(np.int64) @ y) % 2

    def to_json(self):
        return [[int(v) for v in row] for row in self.matrix]

    def __eq__(self, other):
        return isinstance(other, BilinearFormF2) and np.array_equal(self.matrix, other.matrix)

    def __repr__(self):
        return f"BilinearFormF2({self.to_json()})"


# -- F_{2^e} arithmetic ----------------------------------------------------------

MAX_FIELD_EXP = 16


def _cl_mul(a, b):
    res = 0
    while b:
        if b & 1:
            res ^= a
        a <<= 1
        b >>= 1
    return res


def _cl_mod(a, m):
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def _is_irreducible(m, e):
    for d in range(1, e // 2 + 1):
        for cand in range(1 << d, 1 << (d + 1)):
            if _cl_mod(m, cand) == 0:
                return False
    return True


@functools.lru_cache(maxsize=None)
def field_modulus(e):
    """Smallest irreducible polynomial of degree e over F2, as a bitmask."""
    if not 1 <= e <= MAX_FIELD_EXP:
        raise ValueError(f"field exponent must be in 1..{MAX_FIELD_EXP}")
    for m in range((1 << e) | 1, 1 << (e + 1), 2):
        if _is_irreducible(m, e):
            return m
    raise AssertionError("no irreducible polynomial found")  # unreachable


class Field2e:
    """F_{2^e} with elements 0..2^e-1."""

    __slots__ = ("e", "modulus")

    def __init__(self, e):
        self.e = e
        self.modulus = field_modulus(e)

    @property
    def order(self):
        return 1 << self.e

    def mul(self, a, b):
        return _cl_mod(_cl_mul(a, b), self.modulus)

    def pow(self, a, k):
        res, base = 1, a
        while k:
            if k & 1:
                res = self.mul(res, base)
            base = self.mul(base, base)
            k >>= 1
        return res

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, self.order - 2)

    def frobenius(self, a):
        return self.mul(a, a)

    def __eq__(self, other):
        return isinstance(other, Field2e) and self.e == other.e

    def __hash__(self):
        return self.e

    def __repr__(self):
        return f"Field2e({self.e})"


def _echelonize_f2(rows):
    # rows as bitmasks (leftmost coordinate = highest bit): one XOR per
    # elimination step instead of a field multiply per entry
    width = len(rows[0])
    basis = []
    for row in rows:
        m = 0
        for v in row:
            m = (m << 1) | (v & 1)
        for b in basis:
            if m & (1 << (b.bit_length() - 1)):
                m ^= b
        if m:
            hi = 1 << (m.bit_length() - 1)
            basis = [b ^ m if b & hi else b for b in basis] + [m]
    basis.sort(reverse=True)
    return [tuple((b >> (width - 1 - j)) & 1 for j in range(width)) for b in basis]


def _echelonize(field, rows):
    """Reduced row echelon form over the field; drops zero rows."""
    rows = [list(r) for r in rows]
    if field.e == 1 and rows:
        return _echelonize_f2(rows)
    basis = []
    pivots = []
    for row in rows:
        for pcol, pivot_row in zip(pivots, basis):
            if row[pcol]:
                c = row[pcol]
                for j in range(len(row)):
                    row[j] ^= field.mul(c, pivot_row[j])
        lead = next((j for j, v in enumerate(row) if v), None)
        if lead is None:
            continue
        c = field.inv(row[lead])
        row = [field.mul(c, v) for v in row]
        # clear the new pivot column above
        for pcol, pivot_row in zip(pivots, basis):
            if pivot_row[lead]:
                cc = pivot_row[lead]
                for j in range(len(row)):
                    pivot_row[j] ^= field.mul(cc, row[j])
        basis.append(row)
        pivots.append(lead)
    order = sorted(range(len(basis)), key=lambda i: pivots[i])
    return [tuple(basis[i]) for i in order]


class Subspace:
    """Row space of echelonized vectors over F_{2^e} (e = 1 is plain F2)."""

    __slots__ = ("field", "ambient_dim", "basis")

    def __init__(self, vectors, ambient_dim=None, e=1):
        self.field = Field2e(e)
        vectors = [tuple(int(v) for v in vec) for vec in vectors]
        if ambient_dim is None:
            if not vectors:
                raise ValueError("ambient dimension needed for an empty basis")
            ambient_dim = len(vectors[0])
        for vec in vectors:
            if len(vec) != ambient_dim:
                raise ValueError("vectors of mixed lengths")
            if any(not 0 <= v < self.field.order for v in vec):
                raise ValueError("coordinate outside the field")
        self.ambient_dim = ambient_dim
        self.basis = tuple(_echelonize(self.field, vectors))

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, vec):
        row = [int(v) for v in vec]
        if len(row) != self.ambient_dim:
            raise ValueError("vector of wrong length")
        for pivot_row in self.basis:
            lead = next(j for j, v in enumerate(pivot_row) if v)
            if row[lead]:
                c = row[lead]
                for j in range(self.ambient_dim):
                    row[j] ^= self.field.mul(c, pivot_row[j])
        return not any(row)

    def to_json(self):
        return [list(r) for r in self.basis]

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __repr__(self):
        return f"Subspace(e={self.field.e}, basis={self.to_json()})"


def frobenius_stable(w):
    """Whether coordinatewise squaring maps the subspace into itself.

    Over F_{2^e} this holds exactly for subspaces defined over F2.
    """
    if w.field.e > MAX_FIELD_EXP:
        raise ValueError("field too large")
    return all(w.contains([w.field.frobenius(v) for v in row]) for row in w.basis)


def right_radical(b):
    """rad_r(B) = {y : B(x, y) = 0 for all x}, the nullspace of the matrix."""
    m = b.dim
    rows = _echelonize(Field2e(1), [list(map(int, r)) for r in b.matrix])
    pivots = [next(j for j, v in enumerate(r) if v) for r in rows]
    free = [j for j in range(m) if j not in pivots]
    basis = []
    for f in free:
        vec = [0] * m
        vec[f] = 1
        for r, p in zip(rows, pivots):
            vec[p] = r[f]
        basis.append(vec)
    return Subspace(basis, ambient_dim=m)


def quillen_form(n):
    """The bilinear form whose right radical controls h(n); defined for n >= 4.

    Even n = 2m: on V of dimension m-1, B(x, y) = sum_{i != j} x_i y_j.
    Odd n = 2m+1: on V of dimension m, B(x, y) = sum_{i<m} (x_i + x_m) y_i.
    """
    if n < 4:
        raise ValueError("the form is defined for n >= 4")
    m = n // 2
    if n % 2 == 0:
        d = m - 1
        mat = np.ones((d, d), dtype=np.uint8) - np.eye(d, dtype=np.uint8)
    else:
        d = m
        mat = np.zeros((d, d), dtype=np.uint8)
        for j in range(d - 1):
            mat[j][j] = 1
            mat[d - 1][j] = 1
    return BilinearFormF2(mat)


@functools.lru_cache(maxsize=None)
def form_ring(d):
    """F2[x_1..x_d, y_1..y_d], every generator of bidegree (0)[1]."""
    gens = [(f"x{i}", Bidegree(1, 0)) for i in range(1, d + 1)]
    gens += [(f"y{i}", Bidegree(1, 0)) for i in range(1, d + 1)]
    return Ring(gens)


def twisted_sequence(b, count):
    """[B(x, y), B(x, y^2), ..., B(x, y^{2^{count-1}})] in form_ring(dim)."""
    if count < 1:
        raise ValueError("count must be at least 1")
    d = b.dim
    ring = form_ring(d)
    out = []
    for l in range(count):
        terms = []
        for i in range(d):
            for j in range(d):
                if b.matrix[i][j]:
                    e = [0] * (2 * d)
                    e[i] = 1
                    e[d + j] = 1 << l
                    terms.append(tuple(e))
        out.append(ring.poly(terms))
    return out


# -- h(n) ------------------------------------------------------------------------

_H8 = {1: 0, 2: 1, 3: 1, 4: 1, 5: 2, 6: 3, 7: 3, 8: 3}


def h_expected(n):
    """Closed form of h(n) by the residue of n mod 8."""
    if n < 2:
        raise ValueError("h(n) is defined for n >= 2")
    l = (n - 1) // 8
    return 4 * l + _H8[n - 8 * l]


def h_of(n):
    """h(n) = dim V - dim rad_r(B) + 1 from the form; h(2) = h(3) = 1."""
    if n < 2:
        raise ValueError("h(n) is defined for n >= 2")
    if n in (2, 3):
        return 1
    b = quillen_form(n)
    return b.dim - right_radical(b).dim + 1


# -- specialization of subtle classes into pair coordinates ----------------------


@functools.lru_cache(maxsize=None)
def beta_source_ring(n):
    """Z/2[u_1..u_n]: the subtle-class ring with tau killed."""
    return Ring((f"u{i}", Bidegree(i, i // 2)) for i in range(1, n + 1))


@functools.lru_cache(maxsize=None)
def pair_ring(m, odd):
    """F2[x_1..x_m(, x_{m+1}), y_1..y_m] with x of bidegree (0)[1], y of (1)[2]."""
    xs = m + 1 if odd else m
    gens = [(f"x{i}", Bidegree(1, 0)) for i in range(1, xs + 1)]
    gens += [(f"y{i}", Bidegree(2, 1)) for i in range(1, m + 1)]
    return Ring(gens)


def _elem_sym(ring, names, k):
    """Elementary symmetric polynomial of degree k in the named generators."""
    if k == 0:
        return ring.one
    terms = []
    idx = [ring.index(nm) for nm in names]
    for comb in itertools.combinations(idx, k):
        e = [0] * len(ring)
        for pos in comb:
            e[pos] = 1
        terms.append(tuple(e))
    return ring.poly(terms)


def beta_map(n):
    """The p-degree-preserving map u_i -> pair coordinates.

    u_{2j} goes to sigma_j(y); u_{2j+1} goes to sum_i x_i sigma_j(y without
    y_i), plus x_{m+1} sigma_j(y) when n is odd.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    m = n // 2
    odd = n % 2 == 1
    src = beta_source_ring(n)
    dst = pair_ring(m, odd)
    ys = [f"y{i}" for i in range(1, m + 1)]
    images = {}
    for i in range(1, n + 1):
        j = i // 2
        if i % 2 == 0:
            images[f"u{i}"] = _elem_sym(dst, ys, j)
        else:
            acc = dst.zero
            for drop in range(m):
                rest = ys[:drop] + ys[drop + 1 :]
                xi = dst.gen(f"x{drop + 1}")
                acc = acc + xi * _elem_sym(dst, rest, j)
            if odd:
                acc = acc + dst.gen(f"x{m + 1}") * _elem_sym(dst, ys, j)
            images[f"u{i}"] = acc
    for i in range(1, n + 1):
        img = images[f"u{i}"]
        if img:
            bd = img.bidegree()
            if bd.p != i:
                raise AssertionError(f"beta image of u{i} has p-degree {bd.p}")
    return RingMap(src, dst, [images[name] for name in src.names], kind="p-graded")
