# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the kernels in ``_pykernels``.

Coefficients stay Python objects (arbitrary precision); the gain comes from
typed loop indices, direct list access and C-level tuple construction for
exponent vectors.
"""

from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM
from cpython.ref cimport Py_INCREF


def dense_mul(a, b):
    cdef list la = list(a)
    cdef list lb = list(b)
    cdef Py_ssize_t na = len(la), nb = len(lb), i, j
    if na == 0 or nb == 0:
        return []
    cdef list out = [0] * (na + nb - 1)
    cdef object ai, bj
    for i in range(na):
        ai = la[i]
        if not ai:
            continue
        for j in range(nb):
            bj = lb[j]
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def dense_rem_monic(a, m):
    cdef list lm = list(m)
    cdef Py_ssize_t dm = len(lm) - 1, k, j, shift
    cdef list r = list(a)
    cdef object c, mj
    for k in range(len(r) - 1, dm - 1, -1):
        c = r[k]
        if c:
            shift = k - dm
            for j in range(dm):
                mj = lm[j]
                if mj:
                    r[shift + j] = r[shift + j] - c * mj
    r = r[:dm]
    if len(r) < dm:
        r.extend([0] * (dm - len(r)))
    return r


def dense_prem(a, b):
    cdef list lb_ = list(b)
    cdef Py_ssize_t db = len(lb_) - 1, k, i, j, shift
    cdef object lead = lb_[db]
    cdef list r = list(a)
    cdef object c, bj
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        for i in range(k):
            r[i] = r[i] * lead
        if c:
            shift = k - db
            for j in range(db):
                bj = lb_[j]
                if bj:
                    r[shift + j] = r[shift + j] - c * bj
        r[k] = 0
    return r[:db]


cdef inline tuple _add_exps(tuple ea, tuple eb, Py_ssize_t n):
    cdef tuple e = PyTuple_New(n)
    cdef Py_ssize_t k
    cdef object v
    for k in range(n):
        v = <long>ea[k] + <long>eb[k]
        Py_INCREF(v)
        PyTuple_SET_ITEM(e, k, v)
    return e


def sparse_mul(dict ta, dict tb):
    cdef dict out = {}
    cdef list ia = list(ta.items())
    cdef list ib = list(tb.items())
    cdef Py_ssize_t n, x, y, na = len(ia), nb = len(ib)
    cdef tuple ea, eb, e
    cdef object ca, cb, v
    if na == 0 or nb == 0:
        return {}
    n = len(<tuple>(ia[0][0]))
    for x in range(na):
        ea, ca = ia[x]
        for y in range(nb):
            eb, cb = ib[y]
            e = _add_exps(ea, eb, n)
            v = out.get(e)
            if v is None:
                out[e] = ca * cb
            else:
                out[e] = v + ca * cb
    return {e: v for e, v in out.items() if v}
