"""Informational-closure measures of the counter chain, in closed form.

Closure at time t compares what the trajectory's past reveals about the
counter state against the transfer entropy flowing from the last observation
into the counter.  For the IID categorical process all four variants reduce
to count combinatorics:

* full-past expectation:   entropy of the count vector minus the entropy of a
  single observation;
* full-past pointwise:     log p(last symbol) - log p(count of trajectory);
* one-step pointwise:      log of the relative frequency of the last symbol
  within the trajectory (no dependence on the data parameter or the counter
  start);
* one-step expectation:    mean of the one-step pointwise value under the
  trajectory distribution.

Expected quantities are computed by enumerating count space (polynomial in t
for fixed alphabet size) instead of trajectory space (exponential).  The
grouping that makes this possible -- the number of length-t trajectories with
count c and last symbol x is |c^{-1}(c - onehot(x))| -- is validated against
full trajectory enumeration by the oracle module's tests.  All sums use
exactly rounded ``math.fsum``, so results do not depend on any partitioning
of the enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import DomainError, ResourceCapError
from .process import (
    NEG_INFINITY,
    CategoricalParam,
    CountVector,
    count,
    count_log_prob,
    count_space_size,
    enumerate_counts,
    log_count_cardinality,
    symbol_prob,
    validate_trajectory,
)

#: Default cap on the number of count vectors an exact enumeration may visit.
DEFAULT_COUNT_CAP = 10**7


@dataclass(frozen=True)
class NticReport:
    """A closure value at time t together with its two constituent terms.

    ``value`` is ``mi_term - te_term``; carrying both terms lets tests check
    the decomposition rather than just the difference.
    """

    t: int
    value: float
    mi_term: float
    te_term: float

    def to_json_dict(self, units: str = "nats") -> dict:
        scale = _unit_scale(units)
        return {
            "t": self.t,
            "value": self.value * scale,
            "mi_term": self.mi_term * scale,
            "te_term": self.te_term * scale,
            "units": units,
        }


@dataclass(frozen=True)
class EmpiricalDistribution:
    """Relative-frequency vector of a nonempty trajectory, exact in rationals."""

    probs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if sum(self.probs, Fraction(0)) != 1:
            raise DomainError("empirical probabilities must sum to exactly 1")

    def as_floats(self) -> tuple[float, ...]:
        return tuple(float(p) for p in self.probs)


def _unit_scale(units: str) -> float:
    if units == "nats":
        return 1.0
    if units == "bits":
        return 1.0 / math.log(2.0)
    raise DomainError(f"unknown units {units!r}, expected 'nats' or 'bits'")


def _check_count_cap(k: int, t: int, cap: int) -> None:
    size = count_space_size(k, t)
    if size > cap:
        raise ResourceCapError(
            f"count-space enumeration for k={k}, t={t} has {size} elements, "
            f"exceeding the cap of {cap}; use Monte Carlo mode (sampled "
            f"trajectories with plug-in pointwise estimates) or raise the cap"
        )


# ---------------------------------------------------------------------------
# Entropies
# ---------------------------------------------------------------------------


def symbol_entropy(phi: CategoricalParam) -> float:
    """Entropy (nats) of a single observation, with 0*log(0) = 0."""
    return -math.fsum(p * math.log(p) for p in phi.probs if p > 0.0)


def count_entropy(phi: CategoricalParam, t: int, cap: int = DEFAULT_COUNT_CAP) -> float:
    """Entropy (nats) of the count vector of a length-t trajectory.

    Exact summation over all count vectors; raises ``ResourceCapError`` when
    the count space exceeds ``cap``.
    """
    if t < 0:
        raise DomainError(f"time index must be >= 0, got {t}")
    _check_count_cap(phi.size, t, cap)
    terms = []
    for c in enumerate_counts(phi.size, t):
        log_p = count_log_prob(phi, c)
        if log_p == NEG_INFINITY:
            continue
        terms.append(-math.exp(log_p) * log_p)
    return math.fsum(terms)


# ---------------------------------------------------------------------------
# Full-past closure
# ---------------------------------------------------------------------------


def ntic(phi: CategoricalParam, t: int, cap: int = DEFAULT_COUNT_CAP) -> NticReport:
    """Expected full-past closure at time t >= 1.

    The mutual-information term is the count entropy, the transfer-entropy
    term the single-observation entropy; the counter start never enters, so
    the result is independent of it by construction.
    """
    if t < 1:
        raise DomainError(f"closure is defined for t >= 1, got {t}")
    mi = count_entropy(phi, t, cap=cap)
    te = symbol_entropy(phi)
    return NticReport(t=t, value=mi - te, mi_term=mi, te_term=te)


def pointwise_ntic(phi: CategoricalParam, traj: Sequence[int]) -> float:
    """Pointwise full-past closure of one trajectory (nats).

    Equals log p(last symbol) - log p(count of the trajectory).  The
    trajectory must have nonzero probability under ``phi``.
    """
    traj = validate_trajectory(traj, phi.size)
    if len(traj) < 1:
        raise DomainError("pointwise closure needs a nonempty trajectory")
    lp_last = symbol_prob(phi, traj[-1])
    lp_count = count_log_prob(phi, count(traj, phi.size))
    if lp_last == NEG_INFINITY or lp_count == NEG_INFINITY:
        raise DomainError("trajectory has zero probability under the given parameter")
    return lp_last - lp_count


# ---------------------------------------------------------------------------
# One-step closure
# ---------------------------------------------------------------------------


def one_step_pointwise_ntic(traj: Sequence[int]) -> float:
    """Log relative frequency of the last symbol within the trajectory.

    Depends only on the trajectory itself: neither the data parameter nor the
    counter start appear.  Always <= 0, with equality iff the trajectory is
    constant.
    """
    traj = tuple(int(x) for x in traj)
    if len(traj) < 1:
        raise DomainError("one-step pointwise closure needs a nonempty trajectory")
    return math.log(traj.count(traj[-1]) / len(traj))


def count_last_distribution(
    phi: CategoricalParam, t: int, cap: int = DEFAULT_COUNT_CAP
) -> Iterator[tuple[CountVector, int, float]]:
    """Joint distribution of (count vector, last symbol) for length-t trajectories.

    Yields ``(c, x, p)`` triples with p > 0.  Trajectories are grouped rather
    than enumerated: the number of length-t trajectories with count c and last
    symbol x is |c^{-1}(c - onehot(x))| whenever c_x >= 1, so
    p = |c^{-1}(c - onehot(x))| * prod(phi**c).
    """
    if t < 1:
        raise DomainError(f"need t >= 1, got {t}")
    _check_count_cap(phi.size, t, cap)
    log_phi = [math.log(p) if p > 0.0 else NEG_INFINITY for p in phi.probs]
    for c in enumerate_counts(phi.size, t):
        log_p_traj = 0.0
        supported = True
        for n, lp in zip(c.counts, log_phi):
            if n == 0:
                continue
            if lp == NEG_INFINITY:
                supported = False
                break
            log_p_traj += n * lp
        if not supported:
            continue
        for x, n in enumerate(c.counts):
            if n == 0:
                continue
            reduced = list(c.counts)
            reduced[x] -= 1
            weight = math.exp(log_count_cardinality(CountVector(tuple(reduced))) + log_p_traj)
            yield c, x, weight


def one_step_ntic(phi: CategoricalParam, t: int, cap: int = DEFAULT_COUNT_CAP) -> float:
    """Expected one-step closure at time t >= 1 (nats).

    Expectation of ``one_step_pointwise_ntic`` under the trajectory
    distribution, computed exactly over count space via
    ``count_last_distribution``.
    """
    if t < 1:
        raise DomainError(f"closure is defined for t >= 1, got {t}")
    terms = [
        p * math.log(c.counts[x] / t) for c, x, p in count_last_distribution(phi, t, cap=cap)
    ]
    return math.fsum(terms)


def empirical_distribution(traj: Sequence[int], k: int | None = None) -> EmpiricalDistribution:
    """Relative-frequency vector of a nonempty trajectory over k symbols.

    When ``k`` is omitted it defaults to ``max(traj) + 1``.
    """
    traj = tuple(int(x) for x in traj)
    if len(traj) < 1:
        raise DomainError("empirical distribution needs a nonempty trajectory")
    if k is None:
        k = max(traj) + 1
    c = count(traj, k)
    return EmpiricalDistribution(tuple(Fraction(n, c.total) for n in c.counts))
