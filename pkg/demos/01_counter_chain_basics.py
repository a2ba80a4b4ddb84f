#!/usr/bin/env python3
"""A tour of the two coupled processes and the counting combinatorics.

The data process emits symbols i.i.d. from a fixed categorical parameter.
The counter starts at a strictly positive vector and adds a one-hot per
observed symbol; because that is exactly how a Dirichlet hyperparameter
absorbs categorical data, the counter state always parameterizes the Bayesian
posterior over the data parameter, yet its dynamics never mention beliefs.

Run:  python3 demos/01_counter_chain_basics.py
"""

import math

from infoclosure import (
    CategoricalParam,
    Hyperparameter,
    count,
    count_log_prob,
    enumerate_counts,
    inverse_count_cardinality,
    sample_trajectory,
    trajectory_log_prob,
    update,
)

phi = CategoricalParam((0.2, 0.3, 0.5))
xi = Hyperparameter((1, 1, 1))

print("data parameter phi =", phi.probs)
print("counter start xi_0 =", xi.as_floats())
print()

# --- one sampled run of the chain -------------------------------------------
traj = sample_trajectory(phi, 12, seed=7)
print("sampled trajectory:", traj)
state = xi
for step, symbol in enumerate(traj, start=1):
    state = update(state, symbol)
print("counter after the run:", state.as_floats())
print("start plus counts:   ", [float(a + n) for a, n in zip(xi.alpha, count(traj, 3).counts)])
print("(single steps and one batch addition land on the same state)")
print()

# --- trajectory and count probabilities --------------------------------------
print("log p(trajectory | phi) =", trajectory_log_prob(phi, traj))
c = count(traj, 3)
print("count vector:", c.counts, " total:", c.total)
print("trajectories sharing this count:", inverse_count_cardinality(c))
print("log p(count | phi) =", count_log_prob(phi, c))
print()

# --- count space is tiny compared to trajectory space ------------------------
t = 8
counts = list(enumerate_counts(3, t))
print(f"length-{t} trajectories: 3^{t} = {3 ** t}, distinct counts: {len(counts)}")
total = math.fsum(math.exp(count_log_prob(phi, c)) for c in counts)
print("count probabilities sum to", total)
