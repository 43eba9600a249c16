# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled reduction kernel; same contract as ``_reduction``.

Key vectors are flattened into C int64 arrays.  The division loop, the basis
scan, and the XOR merge are the hot paths of every Groebner computation, so
they run without touching Python objects; conversion happens only at the
boundary.
"""

from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memcpy

ctypedef long long i64


cdef inline int _cmp(const i64* a, const i64* b, Py_ssize_t L) noexcept:
    cdef Py_ssize_t r
    for r in range(L):
        if a[r] != b[r]:
            return 1 if a[r] > b[r] else -1
    return 0


cdef i64* _flatten(object rows, Py_ssize_t L, Py_ssize_t* count) except NULL:
    cdef Py_ssize_t n = len(rows)
    cdef i64* data = <i64*> malloc(max(n, 1) * L * sizeof(i64))
    if data == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, r
    cdef object row
    for i in range(n):
        row = rows[i]
        for r in range(L):
            data[i * L + r] = row[r]
    count[0] = n
    return data


def normal_form_terms(terms, basis, Py_ssize_t L, long long max_steps):
    """Fully reduce ``terms`` by ``basis``; return (result, steps)."""
    cdef Py_ssize_t nt = 0, nb = len(basis), i, r, b
    cdef i64* work = _flatten(terms, L, &nt)
    cdef Py_ssize_t wcap = max(nt, 1)

    # Flatten the basis: contiguous terms plus per-element offset/length.
    cdef Py_ssize_t total = 0
    for b in range(nb):
        total += len(basis[b])
    cdef i64* bdata = <i64*> malloc(max(total, 1) * L * sizeof(i64))
    cdef Py_ssize_t* boff = <Py_ssize_t*> malloc(max(nb, 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t* blen = <Py_ssize_t*> malloc(max(nb, 1) * sizeof(Py_ssize_t))
    if bdata == NULL or boff == NULL or blen == NULL:
        free(work); free(bdata); free(boff); free(blen)
        raise MemoryError()
    cdef Py_ssize_t pos = 0
    cdef object g, row
    for b in range(nb):
        g = basis[b]
        boff[b] = pos
        blen[b] = len(g)
        for i in range(blen[b]):
            row = g[i]
            for r in range(L):
                bdata[(pos + i) * L + r] = row[r]
        pos += blen[b]

    cdef i64* out = <i64*> malloc(max(nt, 1) * L * sizeof(i64))
    cdef Py_ssize_t ocap = max(nt, 1), nout = 0
    cdef i64* tmp = NULL
    cdef Py_ssize_t tcap = 0
    cdef i64* quot = <i64*> malloc(L * sizeof(i64))
    if out == NULL or quot == NULL:
        free(work); free(bdata); free(boff); free(blen); free(out); free(quot)
        raise MemoryError()

    cdef long long steps = 0
    cdef Py_ssize_t s = 0, hit, gl, need, wi, gi, ntmp
    cdef i64* head
    cdef i64* lt
    cdef i64* gterm
    cdef int c
    cdef bint budget_hit = False

    while s < nt:
        head = work + s * L
        hit = -1
        for b in range(nb):
            lt = bdata + boff[b] * L
            for r in range(1, L):
                if lt[r] < head[r]:
                    break
            else:
                hit = b
                break
        if hit < 0:
            if nout == ocap:
                ocap *= 2
                out = <i64*> realloc(out, ocap * L * sizeof(i64))
                if out == NULL:
                    free(work); free(bdata); free(boff); free(blen); free(quot); free(tmp)
                    raise MemoryError()
            memcpy(out + nout * L, head, L * sizeof(i64))
            nout += 1
            s += 1
            continue
        if steps >= max_steps:
            budget_hit = True
            break
        steps += 1
        lt = bdata + boff[hit] * L
        for r in range(L):
            quot[r] = head[r] - lt[r]
        gl = blen[hit] - 1
        need = (nt - s - 1) + gl
        if need > tcap:
            tcap = max(need, 2 * tcap if tcap else 16)
            tmp = <i64*> realloc(tmp, tcap * L * sizeof(i64))
            if tmp == NULL:
                free(work); free(bdata); free(boff); free(blen); free(quot); free(out)
                raise MemoryError()
        # merge work[s+1:] with the shifted tail of basis[hit]
        wi = s + 1
        gi = 1
        ntmp = 0
        while wi < nt and gi <= gl:
            gterm = bdata + (boff[hit] + gi) * L
            for r in range(L):
                tmp[ntmp * L + r] = gterm[r] + quot[r]
            c = _cmp(work + wi * L, tmp + ntmp * L, L)
            if c == 0:
                wi += 1
                gi += 1
            elif c > 0:
                memcpy(tmp + ntmp * L, work + wi * L, L * sizeof(i64))
                ntmp += 1
                wi += 1
            else:
                ntmp += 1
                gi += 1
        while wi < nt:
            memcpy(tmp + ntmp * L, work + wi * L, L * sizeof(i64))
            ntmp += 1
            wi += 1
        while gi <= gl:
            gterm = bdata + (boff[hit] + gi) * L
            for r in range(L):
                tmp[ntmp * L + r] = gterm[r] + quot[r]
            ntmp += 1
            gi += 1
        if ntmp > wcap:
            wcap = max(ntmp, 2 * wcap)
            work = <i64*> realloc(work, wcap * L * sizeof(i64))
            if work == NULL:
                free(bdata); free(boff); free(blen); free(quot); free(out); free(tmp)
                raise MemoryError()
        memcpy(work, tmp, ntmp * L * sizeof(i64))
        nt = ntmp
        s = 0

    result = None
    if not budget_hit:
        result = tuple(
            tuple(out[i * L + r] for r in range(L)) for i in range(nout)
        )
    free(work); free(bdata); free(boff); free(blen); free(quot); free(out); free(tmp)
    return result, steps
