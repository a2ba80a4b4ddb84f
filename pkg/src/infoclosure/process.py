"""Alphabet, IID data process, hyperparameter counter, and counting combinatorics.

The data process emits symbols 0..K-1 i.i.d. from a fixed categorical
parameter.  The companion counter chain starts at a strictly positive
concentration vector and adds a one-hot increment per observed symbol; its
state after a trajectory is therefore the start vector plus the trajectory's
count vector.  Everything downstream (closure measures, belief layer, oracle)
consumes the types and counting primitives defined here.

Numeric conventions used throughout the package:

* probabilities are carried in natural-log domain (nats); a probability of
  exactly zero is represented by ``NEG_INFINITY``;
* multinomial coefficients are exact arbitrary-precision integers; their
  logarithms come from the exact integer while the total is <= 64 and from
  ``log_gamma`` above that;
* concentration vectors store exact rationals so that one-hot updates, batch
  updates, and posterior construction agree to the bit, not merely to a
  tolerance (repeated float ``+1.0`` provably drifts from a single ``+n``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .errors import AlphabetMismatchError, DomainError
from .special import log_gamma

NEG_INFINITY = float("-inf")

#: A trajectory is an ordered tuple of symbol indices.
Trajectory = tuple[int, ...]

# Largest count total whose multinomial coefficient is logged from the exact
# integer; beyond it the log-gamma route is both cheaper and stable.
_EXACT_LOG_TOTAL = 64


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Alphabet:
    """A finite sample space of ``size`` symbols indexed 0..size-1."""

    size: int

    def __post_init__(self) -> None:
        if not isinstance(self.size, int) or self.size < 1:
            raise DomainError(f"alphabet size must be a positive integer, got {self.size!r}")

    @property
    def symbols(self) -> range:
        return range(self.size)


@dataclass(frozen=True)
class CategoricalParam:
    """The true environment parameter: a probability vector over K symbols.

    Components must be nonnegative and sum to 1 within 1e-12.
    """

    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        probs = tuple(float(p) for p in self.probs)
        if len(probs) < 1:
            raise DomainError("categorical parameter needs at least one component")
        for p in probs:
            if not (p >= 0.0):  # also rejects NaN
                raise DomainError(f"probabilities must be >= 0, got {p!r}")
        total = math.fsum(probs)
        if abs(total - 1.0) > 1e-12:
            raise DomainError(f"probabilities must sum to 1 within 1e-12, got {total!r}")
        object.__setattr__(self, "probs", probs)

    @property
    def size(self) -> int:
        return len(self.probs)

    @property
    def support(self) -> tuple[int, ...]:
        """Symbols with strictly positive probability."""
        return tuple(x for x, p in enumerate(self.probs) if p > 0.0)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.probs, dtype=float)


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    try:
        # Floats convert to the exact binary value of the double; strings and
        # integer-likes go through Fraction's own parsing.
        return Fraction(value)
    except (TypeError, ValueError, OverflowError) as exc:
        raise DomainError(f"cannot interpret {value!r} as a concentration component") from exc


@dataclass(frozen=True)
class Hyperparameter:
    """Concentration vector of the counter chain (Dirichlet parameters).

    Components are stored as exact rationals: floats convert exactly to their
    binary value and updates add exact integers, so two construction paths
    that agree mathematically compare equal here bit for bit.
    """

    alpha: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        alpha = tuple(_to_fraction(a) for a in self.alpha)
        if len(alpha) < 1:
            raise DomainError("hyperparameter needs at least one component")
        for a in alpha:
            if not a > 0:
                raise DomainError(f"concentration components must be > 0, got {a!r}")
        object.__setattr__(self, "alpha", alpha)

    @property
    def size(self) -> int:
        return len(self.alpha)

    @property
    def total(self) -> Fraction:
        """Sum of the components, exact."""
        return sum(self.alpha, Fraction(0))

    def as_floats(self) -> tuple[float, ...]:
        return tuple(float(a) for a in self.alpha)

    def as_array(self) -> np.ndarray:
        return np.array([float(a) for a in self.alpha], dtype=float)


@dataclass(frozen=True)
class CountVector:
    """Per-symbol occurrence counts of a trajectory."""

    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        counts = tuple(int(c) for c in self.counts)
        if len(counts) < 1:
            raise DomainError("count vector needs at least one component")
        for c in counts:
            if c < 0:
                raise DomainError(f"counts must be nonnegative, got {c!r}")
        object.__setattr__(self, "counts", counts)

    @property
    def size(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)


def validate_trajectory(traj: Sequence[int], k: int) -> Trajectory:
    """Return ``traj`` as a tuple after checking every symbol is < k."""
    out = tuple(int(x) for x in traj)
    for x in out:
        if x < 0 or x >= k:
            raise AlphabetMismatchError(f"symbol {x} outside alphabet of size {k}")
    return out


# ---------------------------------------------------------------------------
# Data-process probabilities
# ---------------------------------------------------------------------------


def symbol_prob(phi: CategoricalParam, x: int) -> float:
    """Log-probability (nats) of one symbol under the data process.

    Returns ``NEG_INFINITY`` for a zero-probability symbol.
    """
    if x < 0 or x >= phi.size:
        raise AlphabetMismatchError(f"symbol {x} outside alphabet of size {phi.size}")
    p = phi.probs[x]
    return math.log(p) if p > 0.0 else NEG_INFINITY


def trajectory_log_prob(phi: CategoricalParam, traj: Sequence[int]) -> float:
    """Log-probability (nats) of a whole trajectory; the empty one has 0."""
    traj = validate_trajectory(traj, phi.size)
    total = 0.0
    for x in traj:
        lp = symbol_prob(phi, x)
        if lp == NEG_INFINITY:
            return NEG_INFINITY
        total += lp
    return total


# ---------------------------------------------------------------------------
# Counting
# ---------------------------------------------------------------------------


def count(traj: Sequence[int], k: int) -> CountVector:
    """Occurrence counts of each symbol of an alphabet of size k."""
    traj = validate_trajectory(traj, k)
    counts = [0] * k
    for x in traj:
        counts[x] += 1
    return CountVector(tuple(counts))


def update(xi: Hyperparameter, x: int) -> Hyperparameter:
    """One observation step of the counter: add a one-hot at symbol x."""
    if x < 0 or x >= xi.size:
        raise AlphabetMismatchError(f"symbol {x} outside alphabet of size {xi.size}")
    alpha = list(xi.alpha)
    alpha[x] = alpha[x] + 1
    return Hyperparameter(tuple(alpha))


def add_counts(xi: Hyperparameter, c: CountVector) -> Hyperparameter:
    """Batch form of ``update``: add a whole count vector at once."""
    if c.size != xi.size:
        raise AlphabetMismatchError(
            f"count vector of size {c.size} does not match hyperparameter of size {xi.size}"
        )
    return Hyperparameter(tuple(a + n for a, n in zip(xi.alpha, c.counts)))


def inverse_count_cardinality(c: CountVector) -> int:
    """Number of trajectories producing the count ``c``, exactly.

    This is the multinomial coefficient total! / prod(counts!), computed in
    arbitrary-precision integer arithmetic, so it never overflows.
    """
    result = math.factorial(c.total)
    for n in c.counts:
        result //= math.factorial(n)
    return result


def log_count_cardinality(c: CountVector) -> float:
    """Natural log of ``inverse_count_cardinality(c)``.

    Uses the exact integer while total <= 64, log-gamma above.
    """
    total = c.total
    if total <= _EXACT_LOG_TOTAL:
        return math.log(inverse_count_cardinality(c))
    return log_gamma(total + 1.0) - math.fsum(log_gamma(n + 1.0) for n in c.counts)


def count_log_prob(phi: CategoricalParam, c: CountVector) -> float:
    """Log-probability (nats) that a trajectory of length total(c) has count c.

    This is the multinomial pmf in log domain:
    log |c^{-1}(c)| + sum_x c_x log phi_x.  Returns ``NEG_INFINITY`` when a
    positive count sits on a zero-probability symbol.
    """
    if c.size != phi.size:
        raise AlphabetMismatchError(
            f"count vector of size {c.size} does not match parameter of size {phi.size}"
        )
    log_p = 0.0
    for n, p in zip(c.counts, phi.probs):
        if n == 0:
            continue
        if p == 0.0:
            return NEG_INFINITY
        log_p += n * math.log(p)
    return log_count_cardinality(c) + log_p


def count_space_size(k: int, t: int) -> int:
    """Number of distinct count vectors of length-t trajectories over k symbols."""
    if k < 1 or t < 0:
        raise DomainError(f"need k >= 1 and t >= 0, got k={k}, t={t}")
    return math.comb(t + k - 1, k - 1)


def enumerate_counts(k: int, t: int) -> Iterator[CountVector]:
    """Yield every nonnegative k-vector summing to t, each exactly once.

    Lexicographically ascending; the stream has ``count_space_size(k, t)``
    elements (compositions of t into k parts).
    """
    if k < 1 or t < 0:
        raise DomainError(f"need k >= 1 and t >= 0, got k={k}, t={t}")

    def rec(parts: int, remaining: int) -> Iterator[tuple[int, ...]]:
        if parts == 1:
            yield (remaining,)
            return
        for first in range(remaining + 1):
            for rest in rec(parts - 1, remaining - first):
                yield (first,) + rest

    for counts in rec(k, t):
        yield CountVector(counts)


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def sample_trajectory(phi: CategoricalParam, t: int, seed: int) -> Trajectory:
    """Draw a length-t trajectory i.i.d. from phi, deterministically per seed.

    Symbols come from inverse-CDF lookups on a seeded PCG64 uniform stream, so
    a fixed (phi, t, seed) always yields the same trajectory.
    """
    if t < 0:
        raise DomainError(f"trajectory length must be >= 0, got {t}")
    if t == 0:
        return ()
    rng = np.random.default_rng(seed)
    u = rng.random(t)
    cum = np.cumsum(phi.as_array())
    symbols = np.searchsorted(cum, u, side="right")
    # Float cumsum can land just below 1; fold the sliver onto the last
    # positive-probability symbol.
    last_support = phi.support[-1]
    symbols = np.minimum(symbols, last_support)
    return tuple(int(x) for x in symbols)
