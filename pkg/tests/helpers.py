"""Shared test helpers, most importantly the exhaustive-enumeration oracle.

The oracle scores every one of the m**n possible slide paths and keeps the
best, building its penalty lookups from the scalar penalty functions in
nested loops. It shares no code with the decoder's forward pass, so
agreement between the two is meaningful evidence.
"""

from __future__ import annotations

import itertools

import numpy as np

from mavils import AlignmentConfig
from mavils.align import jump_penalty, linear_penalty


def scalar_jump_table(m: int, config: AlignmentConfig) -> np.ndarray:
    """(m, m) jump penalties built entry-by-entry from the scalar function."""
    table = np.empty((m, m))
    for k in range(1, m + 1):
        for j in range(1, m + 1):
            table[k - 1, j - 1] = jump_penalty(k, j, config.lambda_jump, config.jump_direction_mode)
    return table


def scalar_linear_table(n: int, m: int, config: AlignmentConfig) -> np.ndarray:
    """(n, m) linear penalties built entry-by-entry from the scalar function."""
    table = np.empty((n, m))
    for i in range(n):
        for j in range(1, m + 1):
            table[i, j - 1] = linear_penalty(i, j, config, n, m)
    return table


def brute_force_best(values: np.ndarray, config: AlignmentConfig) -> tuple[float, np.ndarray]:
    """Optimal cumulative score and one optimal path, by full enumeration.

    Scores accumulate in the same operation order as the decoder's
    recurrence (subtract jump, subtract linear, add similarity), so the
    optimum is comparable bit-for-bit.
    """
    n, m = values.shape
    P = scalar_jump_table(m, config)
    L = scalar_linear_table(n, m, config)
    paths = np.array(list(itertools.product(range(m), repeat=n)), dtype=np.int64)
    acc = values[0, paths[:, 0]] - L[0, paths[:, 0]]
    for i in range(1, n):
        prev = paths[:, i - 1]
        cur = paths[:, i]
        acc = ((acc - P[prev, cur]) - L[i, cur]) + values[i, cur]
    best = int(np.argmax(acc))
    return float(acc[best]), paths[best] + 1


def random_config(rng: np.random.Generator) -> AlignmentConfig:
    """A random but valid decoder configuration, covering all mode combinations."""
    return AlignmentConfig(
        lambda_jump=float(rng.choice([0.0, 0.1, 0.25, rng.uniform(0, 1)])),
        lambda_linear=float(rng.choice([0.0, 1e-4, 1e-3, rng.uniform(0, 0.01)])),
        linear_penalty_mode=str(rng.choice(["slide_deviation", "literal"])),
        jump_direction_mode=str(rng.choice(["as_written", "swapped"])),
    )


def transition_count(path: np.ndarray) -> int:
    path = np.asarray(path)
    return int(np.count_nonzero(path[1:] != path[:-1]))
