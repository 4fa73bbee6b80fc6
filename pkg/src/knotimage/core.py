"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the numpy
versions in :mod:`knotimage._pycore` take over.  Both expose the same
functions with the same semantics.
"""

from . import _pycore

try:
    from . import _ccore
except ImportError:  # extension not built
    _ccore = None

_impl = _ccore if _ccore is not None else _pycore
BACKEND = "cython" if _ccore is not None else "python"

PROPER = _pycore.PROPER
PARALLEL_OVERLAP = _pycore.PARALLEL_OVERLAP
NEAR_ENDPOINT = _pycore.NEAR_ENDPOINT


def available_backends():
    return ["python"] + (["cython"] if _ccore is not None else [])


def use_backend(name):
    """Switch the process-wide backend; returns the previous name."""
    global _impl, BACKEND
    if name == "cython":
        if _ccore is None:
            raise RuntimeError("compiled extension knotimage._ccore is not built")
        new = _ccore
    elif name == "python":
        new = _pycore
    else:
        raise ValueError(f"unknown backend {name!r}")
    previous = BACKEND
    _impl, BACKEND = new, name
    return previous


def backend_module(name):
    return {"python": _pycore, "cython": _ccore}[name]


def convolve3x3(plane, kernel):
    return _impl.convolve3x3(plane, kernel)


def softmax_pool(plane, target, tau):
    return _impl.softmax_pool(plane, target, tau)


def segment_intersections(xy, tol):
    return _impl.segment_intersections(xy, tol)


def triangle_blocked(pts, i, tol):
    return _impl.triangle_blocked(pts, i, tol)


def reduce_polygon(pts, tol):
    return _impl.reduce_polygon(pts, tol)
