"""Numerical kernel backend selection.

The compiled extension (``_ckernels``) is preferred; the pure NumPy
implementation (``_pykernels``) is the drop-in fallback. Selection happens
once at import. Set ``TRENDINDEX_PURE=1`` to force the fallback, e.g. for
benchmarking or debugging.
"""

import os

from . import _pykernels

if os.environ.get("TRENDINDEX_PURE"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND_NAME

gammaln = _impl.gammaln
reg_gamma_p = _impl.reg_gamma_p
reg_gamma_q = _impl.reg_gamma_q
reg_beta = _impl.reg_beta
normal_sf = _impl.normal_sf
normal_cdf = _impl.normal_cdf
jacobi_eigh = _impl.jacobi_eigh
spd_solve = _impl.spd_solve
spd_inverse = _impl.spd_inverse
ols_core = _impl.ols_core


def active_backend() -> str:
    """Name of the kernel backend selected at import ('cython' or 'pure')."""
    return BACKEND
