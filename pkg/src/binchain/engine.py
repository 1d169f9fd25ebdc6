"""Perfect sampling by coalescing signed particles.

One particle starts at each site of the output window and walks left by
sampled lags, always the rightmost active one first, accumulating the
product of coefficient signs along its path.  A particle landing on an
occupied site freezes there, recording its sign relative to the occupant.
When a single active particle remains it receives a fair random sign and
every frozen particle's sign is recovered by chasing freeze-parents and
multiplying relative signs.  The output window is then an exact draw from
the unique compatible process (when uniqueness holds).
"""

from dataclasses import dataclass, field

from .coefficients import BiasedModel, validate
from .errors import CycleError, GuardExceeded
from .kernel import BiasedLagSampler, LagSampler

DEFAULT_GUARD = 10 ** 7


@dataclass
class ParticleSystem:
    """State of one run: positions, path signs, active flags, freeze tree.

    Particles are indexed 0..L-1 for window sites 1..L.  parent[i] and
    rel_sign[i] are set when particle i freezes; parent is None while i
    is active.  terminal_sign[i] is set instead of parent for particles
    that stick in the biased variant.
    """

    length: int
    positions: list = field(init=False)
    path_signs: list = field(init=False)
    active: list = field(init=False)
    parent: list = field(init=False)
    rel_sign: list = field(init=False)
    terminal_sign: list = field(init=False)

    def __post_init__(self):
        L = self.length
        self.positions = list(range(1, L + 1))
        self.path_signs = [1] * L
        self.active = [True] * L
        self.parent = [None] * L
        self.rel_sign = [None] * L
        self.terminal_sign = [None] * L

    def active_indices(self):
        return [i for i in range(self.length) if self.active[i]]


@dataclass(frozen=True)
class SampleWindow:
    """Resolved +-1 values over window sites 1..L."""

    values: tuple
    draws: int
    seed: object = None

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class BoundarySpec:
    """Fixed past configuration w_(-1), w_(-2), ... below the window."""

    kind: str  # "all_plus" | "all_minus" | "periodic"
    pattern: tuple = ()

    def __post_init__(self):
        if self.kind not in ("all_plus", "all_minus", "periodic"):
            raise ValueError("unknown boundary kind %r" % self.kind)
        if self.kind == "periodic":
            if not self.pattern or any(v not in (-1, 1) for v in self.pattern):
                raise ValueError("periodic boundary needs a nonempty +-1 pattern")
        object.__setattr__(self, "pattern", tuple(self.pattern))

    def at(self, i):
        """Boundary symbol w_(-i), i >= 1."""
        if self.kind == "all_plus":
            return 1
        if self.kind == "all_minus":
            return -1
        return self.pattern[(i - 1) % len(self.pattern)]


ALL_PLUS = BoundarySpec("all_plus")
ALL_MINUS = BoundarySpec("all_minus")


def resolve_signs(system, root_sign):
    """Assign every particle its sign from the root's, via parent chains.

    Particles with a terminal sign (biased variant) are their own roots:
    their resolved sign is path sign times terminal sign.  Frozen
    particles multiply the relative signs along the chain to their root.
    Equivalent to applying the L-th power of the signed freeze matrix
    with frozen diagonals cleared.
    """
    L = system.length
    resolved = [None] * L
    for i in range(L):
        if system.active[i]:
            resolved[i] = root_sign
        elif system.terminal_sign[i] is not None:
            resolved[i] = system.path_signs[i] * system.terminal_sign[i]
    for i in range(L):
        if resolved[i] is not None:
            continue
        chain = []
        j = i
        seen = set()
        while resolved[j] is None:
            if j in seen:
                raise CycleError("freeze-parent cycle at particle %d" % j)
            seen.add(j)
            chain.append(j)
            j = system.parent[j]
        sign = resolved[j]
        for j in reversed(chain):
            sign = sign * system.rel_sign[j]
            resolved[j] = sign
    return resolved


def _freeze(system, occupants, j, site):
    """Freeze particle j against the earliest occupant of its site."""
    i = occupants[site][0]
    system.active[j] = False
    system.parent[j] = i
    system.rel_sign[j] = system.path_signs[j] * system.path_signs[i]
    occupants[site].append(j)


def _run(system, draw_lag, rng, guard, stop_active, terminal_plus=None):
    """Common particle loop for the unbiased and biased variants.

    draw_lag() returns the next lag; lag 0 sticks the particle (biased
    only).  Runs until `stop_active` active particles remain (1 for the
    unbiased sampler, 0 for the biased one).
    """
    occupants = {p: [i] for i, p in enumerate(system.positions)}
    stuck_signs = {}  # site -> shared terminal sign
    draws = 0
    while True:
        actives = system.active_indices()
        if len(actives) <= stop_active:
            break
        if draws >= guard:
            raise GuardExceeded(guard, len(actives))
        j = max(actives, key=lambda i: system.positions[i])
        k = draw_lag()
        draws += 1
        if k == 0:
            # biased variant: particle sticks where it stands
            site = system.positions[j]
            if site not in stuck_signs:
                stuck_signs[site] = 1 if rng.random() < terminal_plus else -1
            system.active[j] = False
            system.terminal_sign[j] = stuck_signs[site]
            continue
        old = system.positions[j]
        occupants[old].remove(j)
        if not occupants[old]:
            del occupants[old]
        new_pos = old - k
        system.positions[j] = new_pos
        system.path_signs[j] *= draw_lag.sign(k)
        if new_pos in occupants:
            _freeze(system, occupants, j, new_pos)
        else:
            occupants[new_pos] = [j]
    return draws


class _UnbiasedDraw:
    """Lag stream bound to a model, exposing coefficient signs."""

    def __init__(self, model, rng):
        self.model = model
        self._stream = LagSampler(model).stream(rng)

    def __call__(self):
        return next(self._stream)

    def sign(self, k):
        return self.model.sign_theta(k)


class _BiasedDraw:
    def __init__(self, bmodel, rng):
        self._sampler = BiasedLagSampler(bmodel)
        self._rng = rng
        self.base = bmodel.base

    def __call__(self):
        return self._sampler.sample_one(self._rng)

    def sign(self, k):
        return self.base.sign_theta(k)


def perfect_simulate(model, L, rng, guard=DEFAULT_GUARD):
    """Exact draw of window sites 1..L from the compatible process.

    When the classification verdict is Unique this is the unique
    compatible law; otherwise the run still samples the coalescing-forest
    law whenever it coalesces, and raises GuardExceeded when it does not.
    """
    validate(model)
    if L < 1:
        raise ValueError("window length must be >= 1")
    system = ParticleSystem(L)
    draws = _run(system, _UnbiasedDraw(model, rng), rng, guard, stop_active=1)
    root_sign = 1 if rng.random() < 0.5 else -1
    values = resolve_signs(system, root_sign)
    return SampleWindow(tuple(values), draws)


def perfect_simulate_biased(bmodel, L, rng, guard=DEFAULT_GUARD):
    """Exact draw for the biased kernel (constant term, sub-unit lag mass).

    Every particle eventually sticks (probability 1 - r0 per draw) or
    freezes onto one that does; stuck particles at the same site share a
    single terminal-sign draw.
    """
    validate(bmodel)
    if not isinstance(bmodel, BiasedModel):
        raise TypeError("expected a BiasedModel")
    if L < 1:
        raise ValueError("window length must be >= 1")
    system = ParticleSystem(L)
    draw = _BiasedDraw(bmodel, rng)
    draws = _run(system, draw, rng, guard, stop_active=0,
                 terminal_plus=bmodel.prob_terminal_plus())
    values = resolve_signs(system, root_sign=None)
    return SampleWindow(tuple(values), draws)


def boundary_simulate(model, n, boundary, m, rng):
    """Value at site m of the boundary-conditioned process.

    Follows the single sampled lag path from m until it drops below -n,
    then returns the boundary symbol at the landing site times the
    product of traversed coefficient signs.
    """
    validate(model)
    if m < -n:
        raise ValueError("target site must be >= -n")
    sampler = LagSampler(model)
    lags = sampler.stream(rng)
    pos = m
    sign = 1
    while pos >= -n:
        k = next(lags)
        sign *= model.sign_theta(k)
        pos -= k
    # landing site pos < -n corresponds to boundary index i = -(pos + n)
    return sign * boundary.at(-(pos + n))
