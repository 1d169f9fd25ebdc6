"""Reflected distance walks and coalescence of leftward particle paths.

The distance between the two rightmost particle paths, updated
rightmost-first, evolves as the reflected chain Y <- |Y - K| with K drawn
from the lag distribution.  Recurrence of this chain (hitting 0) is what
certifies that all particle paths eventually coalesce.
"""

from dataclasses import dataclass

import numpy as np

from .coefficients import validate
from .kernel import LagSampler


@dataclass(frozen=True)
class VonSchellingTrace:
    """One run of the reflected distance chain."""

    y0: int
    hit_zero: bool
    steps: int  # hitting step if hit_zero, else the censoring horizon
    path: tuple | None = None


@dataclass(frozen=True)
class CoalescenceReport:
    window: tuple  # (l, L)
    coalesced: bool
    root: int | None
    draws: int
    depth_limit: int


def von_schelling_step(y, k):
    """One reflected step |y - k|."""
    if y < 0 or k < 1:
        raise ValueError("state must be >= 0 and lag >= 1")
    return abs(y - k)


def hitting_time(model, y0, max_steps, rng, record_path=False):
    """Run the reflected chain from y0 until it hits 0 or is censored."""
    validate(model)
    if y0 < 1:
        raise ValueError("y0 must be >= 1")
    sampler = LagSampler(model)
    lags = sampler.stream(rng)
    y = y0
    path = [y0] if record_path else None
    for step in range(1, max_steps + 1):
        y = abs(y - next(lags))
        if record_path:
            path.append(y)
        if y == 0:
            return VonSchellingTrace(y0, True, step,
                                     tuple(path) if record_path else None)
    return VonSchellingTrace(y0, False, max_steps,
                             tuple(path) if record_path else None)


def hitting_times_batch(model, y0, max_steps, n_walks, rng):
    """Vectorized hitting experiment: n_walks independent reflected chains.

    Returns an int array of hitting steps, with -1 for censored walks.
    All walks advance in lockstep; finished walks drop out of the batch.
    """
    validate(model)
    sampler = LagSampler(model)
    states = np.full(n_walks, y0, dtype=np.int64)
    hit_at = np.full(n_walks, -1, dtype=np.int64)
    alive = np.arange(n_walks)
    step = 0
    while alive.size and step < max_steps:
        step += 1
        ks = sampler.sample(rng.random(alive.size))
        states[alive] = np.abs(states[alive] - ks)
        done = states[alive] == 0
        hit_at[alive[done]] = step
        alive = alive[~done]
    return hit_at


def coalesce_window(model, l, L, depth_limit, rng):
    """Coalesce one particle per site of [l, L] by rightmost-first moves.

    The rightmost active particle jumps left by a sampled lag; landing on
    any occupied site merges it there.  Sites of merged particles stay
    occupied.  Reports the common root when a single particle remains, or
    failure when a position falls below l - depth_limit.
    """
    validate(model)
    if l > L:
        raise ValueError("window requires l <= L")
    n = L - l + 1
    if n == 1:
        return CoalescenceReport((l, L), True, l, 0, depth_limit)
    sampler = LagSampler(model)
    lags = sampler.stream(rng)
    positions = list(range(l, L + 1))
    occupancy = {p: 1 for p in positions}
    active = list(range(n))
    draws = 0
    floor = l - depth_limit
    while len(active) > 1:
        j = max(active, key=lambda i: positions[i])
        k = next(lags)
        draws += 1
        old = positions[j]
        occupancy[old] -= 1
        if occupancy[old] == 0:
            del occupancy[old]
        new_pos = old - k
        positions[j] = new_pos
        if new_pos in occupancy:
            occupancy[new_pos] += 1
            active.remove(j)
        else:
            occupancy[new_pos] = 1
        if new_pos < floor:
            return CoalescenceReport((l, L), False, None, draws, depth_limit)
    return CoalescenceReport((l, L), True, positions[active[0]], draws,
                             depth_limit)
