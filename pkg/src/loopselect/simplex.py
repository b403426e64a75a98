"""Small dense primal simplex with Bland's rule.

Solves ``max cᵀx  s.t.  A x <= b, x >= 0`` with ``b >= 0``, which is the only
form the certification LPs need (variable upper bounds are rows of A). The
slack basis is feasible from the start, and Bland's pivoting rule guarantees
termination without cycling. Dense numpy tableau; adequate for the few
thousand variables certification runs at.
"""

from __future__ import annotations

import numpy as np

__all__ = ["simplex_max"]

PIVOT_TOL = 1e-9


def simplex_max(c, A, b):
    """Return ``(x, value)`` maximizing cᵀx over Ax <= b, x >= 0 (b >= 0)."""
    c = np.asarray(c, dtype=float)
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    m, n = A.shape
    if b.shape != (m,) or c.shape != (n,):
        raise ValueError("inconsistent LP dimensions")
    if np.any(b < -PIVOT_TOL):
        raise ValueError("right-hand side must be non-negative")

    # tableau: columns = structural vars, slacks, rhs; last row = objective
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n : n + m] = np.eye(m)
    T[:m, -1] = b
    T[-1, :n] = -c
    basis = list(range(n, n + m))

    while True:
        reduced = T[-1, :-1]
        entering = -1
        for j in range(n + m):  # Bland: lowest index with improving cost
            if reduced[j] < -PIVOT_TOL:
                entering = j
                break
        if entering < 0:
            break
        col = T[:m, entering]
        rows = np.where(col > PIVOT_TOL)[0]
        if rows.size == 0:
            raise ValueError("LP is unbounded")
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        ties = rows[ratios <= best + PIVOT_TOL]
        leaving = min(ties, key=lambda r: basis[r])  # Bland on leaving variable
        pivot = T[leaving, entering]
        T[leaving, :] /= pivot
        for r in range(m + 1):
            if r != leaving and abs(T[r, entering]) > 0:
                T[r, :] -= T[r, entering] * T[leaving, :]
        basis[leaving] = entering

    x = np.zeros(n + m)
    for r, var in enumerate(basis):
        x[var] = T[r, -1]
    return x[:n], float(T[-1, -1])
