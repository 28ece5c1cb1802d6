"""Pure numpy implementation of the harmonic basis kernels.

Nondimensional units (wavenumber 1).  Mode ``j`` is
``S_j(y) cos(j x)`` with ``S_j = sinh(j(y+d))/cosh(j d)`` for finite depth
``d`` and ``S_j = exp(j y)`` for ``d = inf``; ``C_j`` is the matching
``cosh`` (or the same exponential).
"""

import numpy as np

BACKEND = "python"


def _profiles(y, n, depth):
    j = np.arange(1, n + 1, dtype=float)
    jy = np.multiply.outer(y, j)
    if np.isinf(depth):
        s = np.exp(jy)
        return j, s, s
    e1 = np.exp(jy)
    e2 = np.exp(-np.multiply.outer(y + 2.0 * depth, j))
    den = 1.0 + np.exp(-2.0 * depth * j)
    return j, (e1 - e2) / den, (e1 + e2) / den


def basis(x, y, n, depth):
    """Per-mode basis values at points; each output has shape (npts, n).

    Returns ``(phi, phi_x, phi_y, phi_xx, phi_xy)``.
    """
    x = np.ascontiguousarray(x, dtype=float).ravel()
    y = np.ascontiguousarray(y, dtype=float).ravel()
    j, s, c = _profiles(y, n, depth)
    jx = np.multiply.outer(x, j)
    cos, sin = np.cos(jx), np.sin(jx)
    phi = s * cos
    return phi, -j * s * sin, j * c * cos, -(j * j) * phi, -(j * j) * c * sin


def series(b, x, y, depth):
    """Contract the basis with coefficients ``b``; outputs have shape (npts,)."""
    b = np.asarray(b, dtype=float)
    out = basis(x, y, b.shape[0], depth)
    return tuple(m @ b for m in out)
