"""Brute-force ground truth for finite-support models.

A finite coefficient vector with maximum lag m induces an ordinary Markov
chain on the 2^m histories of the last m symbols.  Tabulating it exactly
gives independent answers for everything the sampler produces: stationary
laws (one per recurrent class), exact window distributions, and exact
boundary-conditioned marginals.
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .coefficients import FiniteVector, validate
from .errors import MemoryTooLarge

MAX_MEMORY = 16
_EDGE_TOL = 1e-12
_DENSE_MEMORY = 10


def _history_bits(state, m):
    """Symbols (w_-1, .., w_-m) of an encoded state; w_-1 is bit 0."""
    return [1 if (state >> (k - 1)) & 1 else -1 for k in range(1, m + 1)]


def encode_history(symbols):
    """Encode (w_-1, .., w_-m) with w_-1 as the least significant bit."""
    state = 0
    for k, w in enumerate(symbols, start=1):
        if w == 1:
            state |= 1 << (k - 1)
    return state


@dataclass(frozen=True)
class MarkovOracle:
    model: FiniteVector
    memory: int
    prob_plus: np.ndarray        # P(next = +1 | history), indexed by state
    recurrent_classes: tuple     # tuples of state indices
    stationary: tuple            # one distribution (ndarray) per class
    class_periods: tuple         # cyclic period of each recurrent class

    @property
    def n_states(self):
        return 1 << self.memory

    @property
    def n_degenerate_compatible(self):
        """Count of extreme compatible laws the chain structure exhibits.

        Each recurrent class contributes one law per cyclic phase: a
        periodic class supports phase-locked (non-shift-invariant)
        compatible laws besides its unique stationary mixture.
        """
        return sum(self.class_periods)

    def step_state(self, state, g):
        """Next encoded history after emitting g."""
        gbit = 1 if g == 1 else 0
        return ((state << 1) | gbit) & (self.n_states - 1)


def _transition_prob_plus(model, m):
    n = 1 << m
    thetas = np.array([model.theta(k) for k in range(1, m + 1)])
    p = np.empty(n)
    for state in range(n):
        w = np.array(_history_bits(state, m), dtype=float)
        p[state] = 0.5 + 0.5 * float(thetas @ w)
    # clip pure rounding noise only
    p = np.clip(p, 0.0, 1.0)
    return p


def _stationary_of_class(states, prob_plus, memory):
    """Stationary distribution restricted to one recurrent class."""
    idx = {s: i for i, s in enumerate(states)}
    n = len(states)
    P = np.zeros((n, n))
    mask = (1 << memory) - 1
    for s in states:
        for g, pg in ((1, prob_plus[s]), (-1, 1.0 - prob_plus[s])):
            if pg <= _EDGE_TOL:
                continue
            t = ((s << 1) | (1 if g == 1 else 0)) & mask
            P[idx[s], idx[t]] += pg
    if n <= (1 << _DENSE_MEMORY):
        # null space of (P^T - I) with the normalization row appended
        A = np.vstack([P.T - np.eye(n), np.ones((1, n))])
        b = np.zeros(n + 1)
        b[-1] = 1.0
        pi, *_ = np.linalg.lstsq(A, b, rcond=None)
    else:
        # averaged power iteration; plain iteration would oscillate on
        # periodic classes
        pi = np.full(n, 1.0 / n)
        for _ in range(10 ** 6):
            nxt = 0.5 * (pi + pi @ P)
            if np.abs(nxt - pi).max() < 1e-12:
                pi = nxt
                break
            pi = nxt
    pi = np.clip(pi, 0.0, None)
    pi /= pi.sum()
    return pi


def _class_period(states, edges):
    """Cyclic period of a strongly connected class: gcd of (level(u) + 1 -
    level(v)) over its edges, via BFS levels from an arbitrary state."""
    import math as _math
    from collections import deque

    inside = set(states)
    adj = {}
    for u, v in edges:
        if u in inside and v in inside:
            adj.setdefault(u, []).append(v)
    start = states[0]
    level = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adj.get(u, ()):
            if v not in level:
                level[v] = level[u] + 1
                queue.append(v)
    g = 0
    for u, v in edges:
        if u in inside and v in inside:
            g = _math.gcd(g, level[u] + 1 - level[v])
    return abs(g) if g else 1


def build_oracle(model, max_memory=MAX_MEMORY):
    """Tabulate the exact history chain of a finite-support model."""
    validate(model)
    if not isinstance(model, FiniteVector):
        raise TypeError("the oracle requires a finite coefficient vector")
    m = model.max_lag
    if m > max_memory:
        raise MemoryTooLarge("memory %d exceeds ceiling %d" % (m, max_memory))
    n = 1 << m
    prob_plus = _transition_prob_plus(model, m)
    rows, cols = [], []
    mask = n - 1
    for s in range(n):
        for g, pg in ((1, prob_plus[s]), (-1, 1.0 - prob_plus[s])):
            if pg > _EDGE_TOL:
                rows.append(s)
                cols.append(((s << 1) | (1 if g == 1 else 0)) & mask)
    adj = sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    n_comp, labels = connected_components(adj, directed=True, connection="strong")
    # a strongly connected class is recurrent iff no edge leaves it
    leaves = [False] * n_comp
    for r, c in zip(rows, cols):
        if labels[r] != labels[c]:
            leaves[labels[r]] = True
    classes = []
    for comp in range(n_comp):
        if not leaves[comp]:
            classes.append(tuple(int(s) for s in np.flatnonzero(labels == comp)))
    classes.sort()
    stationary = tuple(
        _stationary_of_class(list(states), prob_plus, m) for states in classes
    )
    edges = list(zip(rows, cols))
    periods = tuple(_class_period(list(states), edges) for states in classes)
    return MarkovOracle(model, m, prob_plus, tuple(classes), stationary, periods)


def stationary_distributions(oracle):
    """Stationary laws over all 2^m histories, one per recurrent class."""
    out = []
    for states, pi in zip(oracle.recurrent_classes, oracle.stationary):
        full = np.zeros(oracle.n_states)
        full[list(states)] = pi
        out.append(full)
    return out


def exact_window_law(oracle, pi, w):
    """Exact law of w consecutive symbols under the stationary chain.

    pi is a distribution over all 2^m histories.  Returns a dict mapping
    +-1 tuples of length w to probabilities.
    """
    pi = np.asarray(pi, dtype=float)
    law = {}

    def extend(vec, prefix):
        if len(prefix) == w:
            law[tuple(prefix)] = float(vec.sum())
            return
        for g in (1, -1):
            nxt = np.zeros_like(vec)
            for s in np.flatnonzero(vec):
                pg = oracle.prob_plus[s] if g == 1 else 1.0 - oracle.prob_plus[s]
                if pg > 0.0:
                    nxt[oracle.step_state(s, g)] += vec[s] * pg
            extend(nxt, prefix + [g])

    extend(pi, [])
    return law


def window_autocovariance(law, k):
    """E[X_0 X_k] under an exact window law of length > k."""
    w = len(next(iter(law)))
    if k >= w:
        raise ValueError("lag %d needs window length > %d" % (k, k))
    total = 0.0
    for pattern, p in law.items():
        total += sum(pattern[i] * pattern[i + k] for i in range(w - k)) / (w - k) * p
    return total


def exact_boundary_law(model, n, boundary, site):
    """Exact P(X_site = +1) for the boundary-conditioned process.

    The path from each site is a single leftward jump whose law does not
    depend on other sites, so the expectation satisfies the linear
    recursion E[X_s] = sum_k theta_k E[X_(s-k)] with boundary values
    below -n.  Equivalent to exhaustive path enumeration, evaluated by
    dynamic programming over sites.
    """
    validate(model)
    if not isinstance(model, FiniteVector):
        raise TypeError("exact boundary law requires a finite coefficient vector")
    if site < -n:
        raise ValueError("site must be >= -n")
    memo = {}

    def mean(s):
        if s < -n:
            return float(boundary.at(-(s + n)))
        if s not in memo:
            memo[s] = sum(
                model.theta(k) * mean(s - k) for k in range(1, model.max_lag + 1)
            )
        return memo[s]

    for s in range(-n, site + 1):  # fill bottom-up, avoids deep recursion
        mean(s)
    return 0.5 * (1.0 + mean(site))


def enumerate_boundary_paths(model, n, boundary, site):
    """Independent check of exact_boundary_law by explicit enumeration of
    all lag sequences from `site` to below -n with their probabilities."""
    validate(model)
    support = model.support()
    total_plus = 0.0

    def walk(pos, prob, sign):
        nonlocal total_plus
        if pos < -n:
            if sign * boundary.at(-(pos + n)) == 1:
                total_plus += prob
            return
        for k in support:
            walk(pos - k, prob * model.abs_theta(k), sign * model.sign_theta(k))

    walk(site, 1.0, 1)
    return total_plus


def random_finite_model(rng, max_lag, require_gcd_one=True, require_unique=False):
    """Random normalized finite coefficient vector, for test corpora."""
    from . import coefficients

    while True:
        m = int(rng.integers(1, max_lag + 1))
        magnitudes = rng.random(m)
        keep = rng.random(m) < 0.8
        keep[int(rng.integers(0, m))] = True
        magnitudes = magnitudes * keep
        if magnitudes.sum() == 0.0:
            continue
        signs = rng.choice([-1.0, 1.0], size=m)
        values = signs * magnitudes / magnitudes.sum()
        model = FiniteVector(tuple(values))
        # renormalize exactly within float tolerance
        total = sum(abs(v) for v in model.values)
        model = FiniteVector(tuple(v / total for v in model.values))
        try:
            validate(model)
        except Exception:
            continue
        if require_gcd_one and model.support_gcd() != 1:
            continue
        if require_unique and not coefficients.classify(model).is_unique:
            continue
        return model
