"""The biased sampler: a lag-zero atom that tilts the marginal.

Giving lag zero probability 1 - r0 makes particles stick in place; a
stuck site resolves with a biased terminal coin whose tilt is theta0.
The stationary marginal is no longer symmetric.  We sweep the bias and
watch the plus-frequency move, including the degenerate endpoints.
"""

from binchain import FiniteVector, perfect_simulate
from binchain.coefficients import BiasedModel
from binchain.engine import perfect_simulate_biased
from binchain.rngstream import replica_rng
from binchain.stats import marginal_plus_frequency

base = FiniteVector((0.5, -0.5))
replicas = 20_000
L = 2

print(" theta0    r0     P(stick)  terminal P(+)   sampled P(+)")
for theta0 in (-1.0, -0.5, 0.0, 0.5, 1.0):
    if theta0 == 0.0:
        # no lag-zero atom at all: the plain sampler, fair marginal
        windows = [perfect_simulate(base, L, replica_rng(55, r))
                   for r in range(replicas)]
        freq = marginal_plus_frequency(windows)
        print("%+6.2f  %5.3f   %7.4f     %7s       %8.4f +- %.4f"
              % (0.0, 1.0, 0.0, "n/a", freq.value, freq.stderr))
        continue
    model = BiasedModel(base, theta0=theta0, r0=1.0 - abs(theta0))
    windows = [perfect_simulate_biased(model, L, replica_rng(55, r))
               for r in range(replicas)]
    freq = marginal_plus_frequency(windows)
    print("%+6.2f  %5.3f   %7.4f     %7.4f       %8.4f +- %.4f"
          % (theta0, model.r0, model.prob_stick(), model.prob_terminal_plus(),
             freq.value, freq.stderr))

print()
print("theta0 = +-1 freezes every site immediately and forces the all-plus")
print("or all-minus configuration; theta0 = 0 recovers the fair marginal.")
