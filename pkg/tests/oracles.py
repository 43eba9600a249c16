"""Independent slow-path oracles for the test suite.

Everything here is deliberately naive (exhaustive enumeration, dense F2
linear algebra, textbook formulas) and shares no code with the kernels under
test, so agreement is meaningful.
"""

import math


def monomials_of_bidegree(ring, p, q):
    """Every exponent tuple of bidegree exactly (q)[p]."""
    n = len(ring)
    out = []
    acc = [0] * n

    def rec(i, p_left, q_left):
        if p_left < 0 or q_left < 0:
            return
        if i == n:
            if p_left == 0 and q_left == 0:
                out.append(tuple(acc))
            return
        bp, bq = ring.bidegrees[i]
        caps = []
        if bp:
            caps.append(p_left // bp)
        if bq:
            caps.append(q_left // bq)
        for e in range(min(caps) + 1):
            acc[i] = e
            rec(i + 1, p_left - e * bp, q_left - e * bq)
        acc[i] = 0

    rec(0, p, q)
    return out


def count_standard_monomials(ring, lead_exponents, p, q):
    """Monomials of bidegree (q)[p] not divisible by any leading exponent."""
    count = 0
    for m in monomials_of_bidegree(ring, p, q):
        if not any(all(a >= b for a, b in zip(m, lt)) for lt in lead_exponents):
            count += 1
    return count


def _row_reduce(rows, target):
    """F2 span membership by Gaussian elimination on sets of monomials."""
    basis = {}

    def reduce(row):
        row = set(row)
        while row:
            lead = max(row)
            if lead in basis:
                row ^= basis[lead]
            else:
                return lead, row
        return None, row

    for row in rows:
        lead, reduced = reduce(row)
        if lead is not None:
            basis[lead] = reduced
    lead, reduced = reduce(target)
    return lead is None


def macaulay_member(x, gens):
    """Degreewise ideal membership over F2 by linear algebra.

    x must be bihomogeneous; gens bihomogeneous and nonzero.  Builds all
    monomial multiples of the generators landing in x's bidegree and checks
    whether x lies in their span.
    """
    if not x.terms:
        return True
    ring = x.ring
    bd = x.bidegree()
    rows = []
    for g in gens:
        if not g.terms:
            continue
        bg = g.bidegree()
        dp, dq = bd.p - bg.p, bd.q - bg.q
        if dp < 0 or dq < 0:
            continue
        for m in monomials_of_bidegree(ring, dp, dq):
            rows.append({tuple(a + b for a, b in zip(m, t)) for t in g.terms})
    return _row_reduce(rows, set(x.terms))


def classical_sq_gen(ring, k, m, n):
    """Textbook Wu formula for Sq^k w_m with classes truncated above n.

    Computed with math.comb, sets, and nothing from the package internals
    (w_1 is treated as a real class when the ring has it, else as 0).
    """
    def cls(i):
        if i == 0:
            return {()}  # marker for the empty product
        if i > n or not ring.has(f"w{i}"):
            return None
        return {(f"w{i}",)}

    def times(a, b):
        if a is None or b is None:
            return None
        return {tuple(sorted(x + y)) for x in a for y in b}

    if k > m:
        return set()
    if k == m:
        base = cls(m)
        return set() if base is None else {tuple(sorted(w + w)) for w in base}
    acc = set()
    for j in range(k + 1):
        if math.comb(m + j - k - 1, j) % 2 == 0:
            continue
        prod = times(cls(k - j), cls(m + j))
        if prod:
            acc ^= prod
    return acc


def names_to_poly(ring, name_tuples):
    """Rebuild a Poly from the name-multiset encoding used by the oracle."""
    monos = []
    for names in name_tuples:
        e = [0] * len(ring)
        for nm in names:
            e[ring.index(nm)] += 1
        monos.append(tuple(e))
    return ring.poly(monos)


def random_monomial(ring, rng, max_factors):
    e = [0] * len(ring)
    for _ in range(rng.randint(1, max_factors)):
        e[rng.randrange(len(ring))] += 1
    return tuple(e)


def random_bihomogeneous(ring, rng, max_factors=4, max_terms=4):
    """A random nonzero bihomogeneous polynomial with a few terms."""
    m0 = random_monomial(ring, rng, max_factors)
    bd = ring.monomial_bidegree(m0)
    pool = monomials_of_bidegree(ring, bd.p, bd.q)
    rng.shuffle(pool)
    take = pool[: rng.randint(1, min(max_terms, len(pool)))]
    return ring.poly(take)
