"""Hot reduction kernels used by the quadrature rules.

Every kernel exists twice: a numba ``@njit`` loop and a vectorised numpy
version with the same signature.  The numba path is used when numba imports
and ``ELCAUCHY_DISABLE_NUMBA`` is unset (or ``0``); set it to ``1`` to force
the numpy path.  Both paths are deterministic; they are not bit-identical to
each other because numpy sums pairwise.
"""
import os

import numpy as np

__all__ = [
    "USE_NUMBA",
    "weighted_product_sum",
    "tilde_kernel_sum",
    "numpy_kernels",
    "numba_kernels",
]


def _env_disabled():
    return os.environ.get("ELCAUCHY_DISABLE_NUMBA", "0").strip().lower() not in ("", "0", "false", "no")


try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional accelerator
    numba = None


# -- numpy reference path ----------------------------------------------------

def _weighted_product_sum_np(gre, gim, kre, kim, w, alpha, beta):
    # (g * k) in the algebra: i^2 = -beta*i - alpha
    pre = gre * kre - alpha * gim * kim
    pim = gre * kim + gim * kre - beta * gim * kim
    return float(np.sum(w * pre)), float(np.sum(w * pim))


def _tilde_kernel_sum_np(gre, gim, ure, uim, w, alpha, beta):
    # tilde(u) = (uim, -ure); inverse via x - beta*y - i*y over the norm form
    tx = uim
    ty = -ure
    den = tx * tx - beta * tx * ty + alpha * ty * ty
    kre = (tx - beta * ty) / den
    kim = -ty / den
    return _weighted_product_sum_np(gre, gim, kre, kim, w, alpha, beta)


# -- numba path ---------------------------------------------------------------

if numba is not None:

    @numba.njit(cache=False, fastmath=False)
    def _weighted_product_sum_nb(gre, gim, kre, kim, w, alpha, beta):
        sre = 0.0
        sim = 0.0
        for k in range(gre.shape[0]):
            a = gre[k]
            b = gim[k]
            c = kre[k]
            d = kim[k]
            sre += w[k] * (a * c - alpha * b * d)
            sim += w[k] * (a * d + b * c - beta * b * d)
        return sre, sim

    @numba.njit(cache=False, fastmath=False)
    def _tilde_kernel_sum_nb(gre, gim, ure, uim, w, alpha, beta):
        sre = 0.0
        sim = 0.0
        for k in range(gre.shape[0]):
            tx = uim[k]
            ty = -ure[k]
            den = tx * tx - beta * tx * ty + alpha * ty * ty
            c = (tx - beta * ty) / den
            d = -ty / den
            a = gre[k]
            b = gim[k]
            sre += w[k] * (a * c - alpha * b * d)
            sim += w[k] * (a * d + b * c - beta * b * d)
        return sre, sim

else:  # pragma: no cover
    _weighted_product_sum_nb = None
    _tilde_kernel_sum_nb = None


def _flat(*arrays):
    out = np.broadcast_arrays(*(np.asarray(a, dtype=np.float64) for a in arrays))
    return [np.ascontiguousarray(a).ravel() for a in out]


def _wrap(kernel):
    def call(gre, gim, kre, kim, w, alpha, beta):
        gre, gim, kre, kim, w = _flat(gre, gim, kre, kim, w)
        sre, sim = kernel(gre, gim, kre, kim, w, float(alpha), float(beta))
        return float(sre), float(sim)

    call.__name__ = getattr(kernel, "__name__", "kernel")
    call.__doc__ = kernel.__doc__
    return call


numpy_kernels = {
    "weighted_product_sum": _wrap(_weighted_product_sum_np),
    "tilde_kernel_sum": _wrap(_tilde_kernel_sum_np),
}

if _weighted_product_sum_nb is not None:
    numba_kernels = {
        "weighted_product_sum": _wrap(_weighted_product_sum_nb),
        "tilde_kernel_sum": _wrap(_tilde_kernel_sum_nb),
    }
else:  # pragma: no cover
    numba_kernels = None

USE_NUMBA = numba_kernels is not None and not _env_disabled()

_active = numba_kernels if USE_NUMBA else numpy_kernels

#: sum_k w_k * (g_k * k_k) with the algebra product; returns (re, im).
weighted_product_sum = _active["weighted_product_sum"]

#: sum_k w_k * (g_k * tilde(u_k)^-1); u_k must be nonzero.  Returns (re, im).
tilde_kernel_sum = _active["tilde_kernel_sum"]
