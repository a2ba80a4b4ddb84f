"""Brute-force and quadrature oracles for the closed-form measures.

Everything here recomputes quantities from first-principles definitions so
the closed forms elsewhere in the package can be machine-checked:

* ``build_joint`` unrolls the chain to depth t by enumerating every
  nonzero-probability trajectory; the counter states before and after the
  last observation are derived per trajectory (the kernel is deterministic,
  so the table is keyed by trajectory alone and no float-valued keys arise);
* the mutual-information / transfer-entropy oracles evaluate their
  definitional sums over the joint's marginals, with no closed-form
  shortcuts -- the transfer-entropy oracle additionally computes the
  unsimplified conditional information against the whole past and insists the
  two agree;
* the quadrature oracle integrates the Beta-Beta KL divergence numerically to
  validate the log-gamma/digamma closed form of the full-past information
  gain.

Counter states are grouped by the trajectory count vectors that determine
them (for a fixed start the map count -> state is a bijection), and all
probability sums use exactly rounded ``math.fsum``, so marginal values are
independent of enumeration order.

The quadrature normalizes its integrands with ``scipy.special.betaln`` rather
than this package's own log-gamma, keeping the two routes of every
closed-form-vs-oracle comparison free of shared code.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterator, Literal, Sequence

import numpy as np
from scipy.integrate import IntegrationWarning, quad
from scipy.special import betaln

from .errors import (
    DomainError,
    InternalConsistencyError,
    QuadratureError,
    ResourceCapError,
)
from .process import (
    CategoricalParam,
    Hyperparameter,
    add_counts,
    count,
    validate_trajectory,
)

#: Default cap on the number of trajectories a joint table may enumerate.
DEFAULT_JOINT_CAP = 10**6

#: Tolerance of the internal d-separation consistency check.
_DSEP_TOL = 1e-10

Mode = Literal["full_past", "one_step"]


@dataclass
class JointTable:
    """Joint distribution of (trajectory, previous counter state, counter state).

    Rows enumerate every nonzero-probability trajectory of length t; both
    counter states are uniquely determined per row, so only the trajectory is
    stored.  Marginals over the counter states group rows by the count
    vectors that determine them.
    """

    k: int
    t: int
    phi: CategoricalParam
    xi0: Hyperparameter
    trajectories: np.ndarray  # (n, t) int8
    probs: np.ndarray  # (n,) float
    counts: np.ndarray  # (n, k) int16
    _groups: dict | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return self.trajectories.shape[0]

    def entries(self) -> Iterator[tuple[tuple, float]]:
        """Yield ((trajectory, previous state, state), probability) per row.

        Counter states are exact rational vectors derived from the start
        vector plus the relevant counts.
        """
        for row, p in zip(self.trajectories.tolist(), self.probs.tolist()):
            traj = tuple(row)
            xi_t = add_counts(self.xi0, count(traj, self.k))
            xi_prev = add_counts(self.xi0, count(traj[:-1], self.k))
            yield (traj, xi_prev.alpha, xi_t.alpha), p

    def prob(self, traj: Sequence[int]) -> float:
        """Probability of one trajectory, recomputed the same way the table was built."""
        traj = validate_trajectory(traj, self.k)
        if len(traj) != self.t:
            raise DomainError(f"trajectory length {len(traj)} does not match table depth {self.t}")
        p = 1.0
        c = count(traj, self.k)
        for x, n in enumerate(c.counts):
            if n:
                p *= self.phi.probs[x] ** n
        return p

    # -- marginal groupings ------------------------------------------------
    def _ensure_groups(self) -> dict:
        if self._groups is not None:
            return self._groups
        count_keys = [tuple(row) for row in self.counts.tolist()]
        lasts = [int(x) for x in self.trajectories[:, -1]]
        probs = self.probs.tolist()

        state: dict[tuple, list] = {}
        prev_state: dict[tuple, list] = {}
        last: dict[int, list] = {}
        last_state: dict[tuple, list] = {}
        last_prev: dict[tuple, list] = {}
        state_pair: dict[tuple, list] = {}
        triple: dict[tuple, list] = {}
        prev_keys = []
        for key, x, p in zip(count_keys, lasts, probs):
            reduced = list(key)
            reduced[x] -= 1
            prev = tuple(reduced)
            prev_keys.append(prev)
            state.setdefault(key, []).append(p)
            prev_state.setdefault(prev, []).append(p)
            last.setdefault(x, []).append(p)
            last_state.setdefault((x, key), []).append(p)
            last_prev.setdefault((x, prev), []).append(p)
            state_pair.setdefault((key, prev), []).append(p)
            triple.setdefault((key, x, prev), []).append(p)

        def reduce(groups: dict) -> dict:
            return {key: math.fsum(values) for key, values in groups.items()}

        self._groups = {
            "count_keys": count_keys,
            "prev_keys": prev_keys,
            "lasts": lasts,
            "probs": probs,
            "p_state": reduce(state),
            "p_prev": reduce(prev_state),
            "p_last": reduce(last),
            "p_last_state": reduce(last_state),
            "p_last_prev": reduce(last_prev),
            "p_state_pair": reduce(state_pair),
            "p_triple": reduce(triple),
        }
        return self._groups


def build_joint(
    phi: CategoricalParam,
    xi0: Hyperparameter,
    t: int,
    cap: int = DEFAULT_JOINT_CAP,
) -> JointTable:
    """Enumerate all nonzero-probability trajectories of length t >= 1.

    Raises ``ResourceCapError`` when the enumeration would exceed ``cap``
    trajectories, and ``InternalConsistencyError`` if the resulting
    probabilities fail to sum to 1 within 1e-12.
    """
    if xi0.size != phi.size:
        raise DomainError(
            f"hyperparameter of size {xi0.size} does not match parameter of size {phi.size}"
        )
    if t < 1:
        raise DomainError(f"the joint is defined for t >= 1, got {t}")
    support = phi.support
    m = len(support)
    n = m**t
    if n > cap:
        raise ResourceCapError(
            f"joint table for t={t} would enumerate {n} trajectories, exceeding "
            f"the cap of {cap}; reduce t or raise the cap"
        )

    idx = np.arange(n, dtype=np.int64)
    trajs = np.empty((n, t), dtype=np.int8)
    divisor = n
    for j in range(t):
        divisor //= m
        trajs[:, j] = (idx // divisor) % m
    support_map = np.asarray(support, dtype=np.int8)
    trajs = support_map[trajs]

    k = phi.size
    counts = np.empty((n, k), dtype=np.int16)
    for x in range(k):
        counts[:, x] = (trajs == x).sum(axis=1)

    probs = np.ones(n, dtype=float)
    for x in support:
        probs *= phi.probs[x] ** counts[:, x]

    total = math.fsum(probs.tolist())
    if abs(total - 1.0) > 1e-12:
        raise InternalConsistencyError(
            f"joint probabilities sum to {total!r}, off from 1 by more than 1e-12"
        )
    return JointTable(k=k, t=t, phi=phi, xi0=xi0, trajectories=trajs, probs=probs, counts=counts)


# ---------------------------------------------------------------------------
# Definitional information measures
# ---------------------------------------------------------------------------


def oracle_mutual_information(joint: JointTable, mode: Mode) -> float:
    """I(whole past : state) or I(last observation : state) by definitional sums."""
    groups = joint._ensure_groups()
    p_state = groups["p_state"]
    if mode == "full_past":
        terms = []
        for key, p in zip(groups["count_keys"], groups["probs"]):
            # p(trajectory, state) equals p(trajectory): the state is determined.
            p_joint = p
            terms.append(p_joint * math.log(p_joint / (p * p_state[key])))
        return math.fsum(terms)
    if mode == "one_step":
        p_last = groups["p_last"]
        terms = []
        for (x, key), p_joint in groups["p_last_state"].items():
            terms.append(p_joint * math.log(p_joint / (p_last[x] * p_state[key])))
        return math.fsum(terms)
    raise DomainError(f"unknown mode {mode!r}, expected 'full_past' or 'one_step'")


def _te_simplified(groups: dict) -> float:
    p_prev = groups["p_prev"]
    p_pair = groups["p_state_pair"]
    p_last_prev = groups["p_last_prev"]
    terms = []
    for (key, x, prev), p in groups["p_triple"].items():
        num = p_prev[prev] * p
        den = p_pair[(key, prev)] * p_last_prev[(x, prev)]
        terms.append(p * math.log(num / den))
    return math.fsum(terms)


def _te_unsimplified(groups: dict) -> float:
    p_prev = groups["p_prev"]
    p_pair = groups["p_state_pair"]
    terms = []
    for key, prev, p in zip(groups["count_keys"], groups["prev_keys"], groups["probs"]):
        # p(state, trajectory, previous) and p(trajectory, previous) both
        # equal p(trajectory): the states are determined.
        num = p_prev[prev] * p
        den = p_pair[(key, prev)] * p
        terms.append(p * math.log(num / den))
    return math.fsum(terms)


def oracle_transfer_entropy(joint: JointTable) -> float:
    """I(state : last observation | previous state) by definitional sums.

    Also evaluates the unsimplified I(state : whole past | previous state)
    and raises ``InternalConsistencyError`` if the two disagree beyond 1e-10
    (they coincide by the chain's conditional-independence structure).
    """
    groups = joint._ensure_groups()
    simplified = _te_simplified(groups)
    unsimplified = _te_unsimplified(groups)
    if abs(simplified - unsimplified) > _DSEP_TOL:
        raise InternalConsistencyError(
            f"transfer entropy against the last observation ({simplified!r}) and "
            f"against the whole past ({unsimplified!r}) differ by more than {_DSEP_TOL}"
        )
    return simplified


def oracle_ntic(
    phi: CategoricalParam,
    xi0: Hyperparameter,
    t: int,
    mode: Mode,
    cap: int = DEFAULT_JOINT_CAP,
    joint: JointTable | None = None,
) -> float:
    """Closure at time t recomputed from the definitional joint table."""
    if joint is None:
        joint = build_joint(phi, xi0, t, cap=cap)
    return oracle_mutual_information(joint, mode) - oracle_transfer_entropy(joint)


def oracle_pointwise_ntic(joint: JointTable, traj: Sequence[int], mode: Mode) -> float:
    """Pointwise closure of one trajectory from the joint's marginals.

    Definitional log-ratios only; no closed-form shortcuts.
    """
    traj = validate_trajectory(traj, joint.k)
    if len(traj) != joint.t:
        raise DomainError(f"trajectory length {len(traj)} does not match table depth {joint.t}")
    p_traj = joint.prob(traj)
    if p_traj == 0.0:
        raise DomainError("trajectory has zero probability under the table's parameter")
    groups = joint._ensure_groups()
    c = count(traj, joint.k)
    key = c.counts
    x = traj[-1]
    reduced = list(key)
    reduced[x] -= 1
    prev = tuple(reduced)

    if mode == "full_past":
        # log p(state | whole past) - log p(state)
        p_state_given_past = p_traj / p_traj  # state is determined by the past
        mi_pw = math.log(p_state_given_past) - math.log(groups["p_state"][key])
    elif mode == "one_step":
        p_state_given_last = groups["p_last_state"][(x, key)] / groups["p_last"][x]
        mi_pw = math.log(p_state_given_last) - math.log(groups["p_state"][key])
    else:
        raise DomainError(f"unknown mode {mode!r}, expected 'full_past' or 'one_step'")

    p_last_given_both = groups["p_triple"][(key, x, prev)] / groups["p_state_pair"][(key, prev)]
    p_last_given_prev = groups["p_last_prev"][(x, prev)] / groups["p_prev"][prev]
    te_pw = math.log(p_last_given_both) - math.log(p_last_given_prev)
    return mi_pw - te_pw


# ---------------------------------------------------------------------------
# Quadrature oracles (Beta case)
# ---------------------------------------------------------------------------


def beta_log_moment_quadrature(
    a: float, b: float, kappa: tuple[float, float, float], abs_tol: float = 1e-8
) -> float:
    """Integrate Beta(x; a, b) * (k0 + k1*ln(x) + k2*ln(1-x)) over (0, 1).

    The density's endpoint singularities (exponents in (-1, 0) when a or b is
    below 1) and the logarithm factors are handled by QUADPACK's weighted
    rules (``weight='alg' / 'alg-loga' / 'alg-logb'``), which integrate
    x^alpha (1-x)^beta [ln x] [ln(1-x)] analytically against a smooth
    residual; only the bounded part of the density is evaluated in code, in
    log domain.  Raises ``QuadratureError`` when the combined error estimate
    exceeds ``abs_tol``.
    """
    if not (a > 0.0 and b > 0.0):
        raise DomainError(f"Beta exponents must be positive, got ({a!r}, {b!r})")
    k0, k1, k2 = kappa
    log_norm = betaln(a, b)
    # Split each density exponent into a singular weight part in (-1, 0]
    # (handed to QUADPACK) and a smooth nonnegative remainder.
    smooth_a = a - 1.0 if a >= 1.0 else 0.0
    smooth_b = b - 1.0 if b >= 1.0 else 0.0
    weight_var = (a - 1.0 - smooth_a, b - 1.0 - smooth_b)

    def smooth(x: float) -> float:
        # Continuous limit values at the endpoints (QUADPACK may probe them).
        log_value = -log_norm
        if smooth_a:
            if x <= 0.0:
                return 0.0
            log_value += smooth_a * math.log(x)
        if smooth_b:
            if x >= 1.0:
                return 0.0
            log_value += smooth_b * math.log1p(-x)
        return math.exp(log_value)

    pieces = [
        (k0, "alg"),
        (k1, "alg-loga"),
        (k2, "alg-logb"),
    ]
    active = [(coeff, weight) for coeff, weight in pieces if coeff != 0.0]
    if not active:
        return 0.0
    piece_tol = abs_tol / len(active)
    value = 0.0
    total_err = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        for coeff, weight in active:
            piece, piece_err = quad(
                lambda x: coeff * smooth(x),
                0.0,
                1.0,
                weight=weight,
                wvar=weight_var,
                epsabs=0.5 * piece_tol,
                epsrel=1e-12,
                limit=400,
            )
            value += piece
            total_err += piece_err
    if not math.isfinite(value) or total_err > abs_tol:
        raise QuadratureError(
            f"quadrature error estimate {total_err!r} exceeds the requested {abs_tol!r} "
            f"for Beta exponents ({a!r}, {b!r}) with log coefficients {kappa!r}"
        )
    return value


def oracle_kl_quadrature(
    xi_post: Hyperparameter, xi_prior: Hyperparameter, abs_tol: float = 1e-8
) -> float:
    """KL divergence between two Beta beliefs by numerical integration.

    Only the two-symbol case is supported: the Dirichlet density then reduces
    to a one-dimensional Beta density and the KL integrand can be integrated
    on (0, 1) to a proven absolute accuracy.
    """
    if xi_post.size != 2 or xi_prior.size != 2:
        raise DomainError("the quadrature oracle covers the two-symbol (Beta) case only")
    a1, b1 = xi_post.as_floats()
    a0, b0 = xi_prior.as_floats()
    k0 = betaln(a0, b0) - betaln(a1, b1)
    return beta_log_moment_quadrature(a1, b1, (k0, a1 - a0, b1 - b0), abs_tol=abs_tol)


def oracle_expected_log_predictive(
    xi: Hyperparameter, x: int, abs_tol: float = 1e-10
) -> float:
    """Belief-expected log probability of x by numerical integration.

    Uses the Beta marginal of a single Dirichlet component, so it works for
    any alphabet size; serves as the independent route against the digamma
    closed form.
    """
    if x < 0 or x >= xi.size:
        raise DomainError(f"symbol {x} outside alphabet of size {xi.size}")
    if xi.size == 1:
        return 0.0  # the belief is a point mass at probability 1
    a = float(xi.alpha[x])
    b = float(xi.total - xi.alpha[x])
    return beta_log_moment_quadrature(a, b, (0.0, 1.0, 0.0), abs_tol=abs_tol)
