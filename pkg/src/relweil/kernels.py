"""Backend selection for the hot polynomial kernels.

The compiled extension ``relweil._ckernels`` is used when it was built;
otherwise the pure-Python module is used. Callers always go through the
module-level names below, so :func:`set_backend` takes effect immediately.
"""

from relweil import _pykernels

try:
    from relweil import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["compiled"] = _ckernels

BACKEND = None
dense_mul = dense_rem_monic = dense_prem = sparse_mul = None


def available_backends():
    return sorted(_BACKENDS)


def set_backend(name):
    """Switch every kernel to backend ``name`` ('python' or 'compiled')."""
    global BACKEND, dense_mul, dense_rem_monic, dense_prem, sparse_mul
    try:
        impl = _BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {available_backends()}") from None
    BACKEND = name
    dense_mul = impl.dense_mul
    dense_rem_monic = impl.dense_rem_monic
    dense_prem = impl.dense_prem
    sparse_mul = impl.sparse_mul


set_backend("compiled" if _ckernels is not None else "python")
