"""Cone descriptions, scaled-triangle vectorization, and projections.

The PSD cone uses the scaled lower-triangle vectorization (off-diagonal
entries multiplied by sqrt(2)), which makes the vectorized cone self-dual
under the Euclidean inner product and turns trace inner products into dot
products.

A compiled projection kernel (``soskit.conic._cones_cy``) is picked up at
import time when available; set the environment variable ``SOSKIT_NO_EXT=1``
to force the pure-NumPy path.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class Zero:
    dim: int


@dataclass(frozen=True)
class Nonneg:
    dim: int


@dataclass(frozen=True)
class SecondOrder:
    dim: int


@dataclass(frozen=True)
class Psd:
    side: int

    @property
    def dim(self) -> int:
        return self.side * (self.side + 1) // 2


Cone = Zero | Nonneg | SecondOrder | Psd


def cone_dim(cones) -> int:
    return sum(c.dim for c in cones)


def svec_size(side: int) -> int:
    return side * (side + 1) // 2


def svec(M: np.ndarray) -> np.ndarray:
    """Scaled lower-triangle vectorization, row-wise: (0,0),(1,0),(1,1),..."""
    s = M.shape[0]
    out = np.empty(svec_size(s))
    k = 0
    for i in range(s):
        for j in range(i + 1):
            out[k] = M[i, j] if i == j else M[i, j] * SQRT2
            k += 1
    return out


def smat(v: np.ndarray, side: int) -> np.ndarray:
    """Inverse of :func:`svec`."""
    M = np.empty((side, side))
    k = 0
    for i in range(side):
        for j in range(i + 1):
            if i == j:
                M[i, i] = v[k]
            else:
                M[i, j] = M[j, i] = v[k] / SQRT2
            k += 1
    return M


def svec_indices(side: int) -> list[tuple[int, int]]:
    """(i, j) pairs, i >= j, in svec storage order."""
    return [(i, j) for i in range(side) for j in range(i + 1)]


def _project_psd(v: np.ndarray, side: int) -> np.ndarray:
    M = smat(v, side)
    w, V = np.linalg.eigh(M)
    if w[0] >= 0:
        return v
    if w[-1] <= 0:
        return np.zeros_like(v)
    pos = w > 0
    P = (V[:, pos] * w[pos]) @ V[:, pos].T
    return svec(P)


def _project_soc(v: np.ndarray) -> np.ndarray:
    t, z = v[0], v[1:]
    nz = np.linalg.norm(z)
    if nz <= t:
        return v
    if nz <= -t:
        return np.zeros_like(v)
    a = 0.5 * (1.0 + t / nz)
    out = np.empty_like(v)
    out[0] = a * nz
    out[1:] = a * z
    return out


def project_cones_numpy(v: np.ndarray, cones, dual: bool = False) -> np.ndarray:
    """Project onto the cone product (or its dual when ``dual=True``).

    The dual of the zero cone is all of R^k; the other cones are self-dual.
    """
    out = np.array(v, dtype=float, copy=True)
    k = 0
    for c in cones:
        d = c.dim
        if isinstance(c, Zero):
            if not dual:
                out[k:k + d] = 0.0
        elif isinstance(c, Nonneg):
            np.maximum(out[k:k + d], 0.0, out=out[k:k + d])
        elif isinstance(c, SecondOrder):
            out[k:k + d] = _project_soc(out[k:k + d])
        else:
            out[k:k + d] = _project_psd(out[k:k + d], c.side)
        k += d
    return out


def in_cone(v: np.ndarray, cones, tol: float) -> bool:
    return np.linalg.norm(v - project_cones_numpy(v, cones)) <= tol


# ------------------------------------------------------------------ backend pick

_backend_name = "numpy"
_kernel = None
if not os.environ.get("SOSKIT_NO_EXT"):
    try:
        from . import _cones_cy as _kernel  # type: ignore

        _backend_name = "cython"
    except ImportError:
        _kernel = None


def backend() -> str:
    """Name of the active projection backend ('cython' or 'numpy')."""
    return _backend_name


def cone_spec_arrays(cones):
    """Encode the cone list as integer arrays for the compiled kernel.

    kinds: 0 zero, 1 nonneg, 2 soc, 3 psd; sizes hold dim (or side for psd).
    """
    kinds = np.empty(len(cones), dtype=np.int64)
    sizes = np.empty(len(cones), dtype=np.int64)
    for i, c in enumerate(cones):
        if isinstance(c, Zero):
            kinds[i], sizes[i] = 0, c.dim
        elif isinstance(c, Nonneg):
            kinds[i], sizes[i] = 1, c.dim
        elif isinstance(c, SecondOrder):
            kinds[i], sizes[i] = 2, c.dim
        else:
            kinds[i], sizes[i] = 3, c.side
    return kinds, sizes


def make_projector(cones):
    """Return ``proj(v, dual) -> ndarray`` using the fastest available backend."""
    if _kernel is not None:
        kinds, sizes = cone_spec_arrays(cones)
        maxside = max((c.side for c in cones if isinstance(c, Psd)), default=1)

        def proj(v: np.ndarray, dual: bool = False) -> np.ndarray:
            out = np.array(v, dtype=np.float64, copy=True)
            _kernel.project_cones_inplace(out, kinds, sizes, 1 if dual else 0, maxside)
            return out

        return proj

    def proj(v: np.ndarray, dual: bool = False) -> np.ndarray:
        return project_cones_numpy(v, cones, dual=dual)

    return proj
