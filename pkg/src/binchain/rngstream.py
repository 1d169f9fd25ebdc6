"""Deterministic per-replica random streams.

Each replica r of a run with master seed s gets the generator
PCG64(SeedSequence([s, r])).  SeedSequence hashing is stable across
platforms and numpy versions (it is part of numpy's API contract), so
results are reproducible and independent of scheduling order.
"""

import numpy as np


def replica_rng(master_seed, replica_index):
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence([int(master_seed), int(replica_index)]))
    )


def replica_seed_words(master_seed, replica_index):
    """The 128-bit stream key as four 32-bit words, for run records."""
    ss = np.random.SeedSequence([int(master_seed), int(replica_index)])
    return [int(w) for w in ss.generate_state(4)]
