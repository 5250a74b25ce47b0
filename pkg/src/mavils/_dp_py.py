"""Pure-numpy forward pass for the alignment dynamic program.

Fallback for environments where the compiled kernel is not built. Produces
bit-identical tables and backpointers to the compiled version: both apply
the same operations in the same order, and both resolve argmax ties toward
the smallest index.
"""

from __future__ import annotations

import numpy as np


def dp_forward(S: np.ndarray, P: np.ndarray, L: np.ndarray):
    """Fill the decision table for similarity S, jump table P, linear table L.

    Args:
        S: (n, m) similarity values.
        P: (m, m) jump penalties, P[k, j] = cost of moving k -> j (0-based).
        L: (n, m) linear penalties.

    Returns:
        (d_last, back): the final table row (m,) and the (n, m) int32
        backpointer array (row 0 unused).
    """
    n, m = S.shape
    back = np.zeros((n, m), dtype=np.int32)
    cols = np.arange(m)
    d = S[0] - L[0]
    for i in range(1, n):
        cand = d[:, None] - P
        arg = np.argmax(cand, axis=0)  # first occurrence: smallest k on ties
        back[i] = arg
        d = (cand[arg, cols] - L[i]) + S[i]
    return d, back
