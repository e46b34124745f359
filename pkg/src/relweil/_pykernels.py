"""Pure-Python polynomial kernels.

These are the reference implementations; ``_ckernels.pyx`` mirrors them
line for line and must return identical results. Coefficients are arbitrary
ring elements (``Fraction``, ``int``, number-field elements, polynomials).
Dense sequences hold the constant term first.
"""


def dense_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def dense_rem_monic(a, m):
    """Remainder of ``a`` modulo the monic ``m``; result has length ``deg m``."""
    dm = len(m) - 1
    r = list(a)
    for k in range(len(r) - 1, dm - 1, -1):
        c = r[k]
        if c:
            shift = k - dm
            for j in range(dm):
                if m[j]:
                    r[shift + j] = r[shift + j] - c * m[j]
    r = r[:dm]
    if len(r) < dm:
        r.extend([0] * (dm - len(r)))
    return r


def dense_prem(a, b):
    """Pseudo-remainder ``lc(b)**(deg a - deg b + 1) * a mod b``.

    Both inputs must be trimmed (non-zero leading entries) with
    ``len(a) >= len(b) >= 1``.
    """
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        for i in range(k):
            r[i] = r[i] * lb
        if c:
            shift = k - db
            for j in range(db):
                if b[j]:
                    r[shift + j] = r[shift + j] - c * b[j]
        r[k] = 0
    return r[:db]


def sparse_mul(ta, tb):
    """Product of two ``{exponent tuple: coefficient}`` maps (zeros dropped)."""
    out = {}
    get = out.get
    for ea, ca in ta.items():
        for eb, cb in tb.items():
            e = tuple([x + y for x, y in zip(ea, eb)])
            v = get(e)
            out[e] = ca * cb if v is None else v + ca * cb
    return {e: c for e, c in out.items() if c}
