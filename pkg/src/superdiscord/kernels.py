"""Backend selection for the basis-objective kernels.

The compiled ``_ckernels`` extension is used when it was built; otherwise
the numerically identical ``_pykernels`` module is loaded. Setting
``SUPERDISCORD_PURE_PYTHON=1`` forces the fallback.
"""
from __future__ import annotations

import os

import numpy as np

from . import qmat

if os.environ.get("SUPERDISCORD_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as _impl
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        from . import _pykernels as _impl
        BACKEND = "python"

objective = _impl.objective
objective_grid = _impl.objective_grid
golden_section = _impl.golden_section


def reduce_blocks(rho) -> np.ndarray:
    """Pack Tr_B[rho (I (x) sigma_mu)], mu = 0..3, into the 16-float kernel layout."""
    m = qmat.as_matrix(np.asarray(rho), dims=(4,))
    out = np.empty(16)
    for mu, s in enumerate((qmat.IDENTITY,) + qmat.PAULIS):
        blk = qmat.partial_trace(m @ np.kron(qmat.IDENTITY, s), "A")
        blk = 0.5 * (blk + blk.conj().T)
        out[4 * mu:4 * mu + 4] = (blk[0, 0].real, blk[1, 1].real,
                                  blk[0, 1].real, blk[0, 1].imag)
    return out
