"""Data-processing inequality checks, classical and quantum.

Classical: pushing the outcome distribution through a stochastic map can
only lose Fisher (and Bayesian) information, with equality for permutations.
Quantum: attaching a parameter-independent channel can only lower the
context-maximized information and the SLD quantum Fisher information.

Closed-form pushforwards are held to 1e-9; statements whose two sides both
come from the numerical optimizer get 1e-3.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fisher import (
    CURVATURE_STEP,
    classical_fisher,
    information_from_outcomes,
    sld_solve,
)
from .models import ParameterizedModel
from .optimize import ContextSpace, ModelFamily, maximize_fisher
from .quantum import Povm, born_probabilities, dual_channel
from .sampling import (
    random_channel,
    random_hermitian,
    random_projective_povm,
    random_pure_state,
    random_stochastic_map,
    trial_seeds,
)

CLASSICAL_TOL = 1e-9    # closed-form pushforward comparisons
QUANTUM_TOL = 1e-3      # optimizer-owned comparisons
SLD_TOL = 1e-7          # SLD monotonicity at a fixed state
DUAL_TOL = 1e-12        # Heisenberg-picture identity
COLUMN_SUM_ATOL = 1e-12

J_GRID = 31             # quadrature nodes for per-trial Bayesian checks
J_RANGE = (0.2, 1.2)    # uniform prior window for per-trial Bayesian checks

# Screening budget for the per-trial optimizations.  The structured warm
# start already lands on the bare model's exact optimum, and a truncated
# search can only under-report i_after, which keeps the inequality check
# conservative; a full-depth polish would change nothing but the runtime.
OPT_MAXITER = 100


class StochasticMap:
    """Column-stochastic matrix: column x holds Pr(y | x)."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        m = np.asarray(matrix, dtype=float)
        if m.ndim != 2:
            raise ValueError(f"stochastic map must be a matrix, got shape {m.shape}")
        if np.any(m < 0):
            raise ValueError("stochastic map entries must be nonnegative")
        defect = float(np.max(np.abs(m.sum(axis=0) - 1.0)))
        if defect > COLUMN_SUM_ATOL:
            raise ValueError(f"column sums deviate from 1 by {defect:.3e}")
        self.matrix = m

    @property
    def in_count(self) -> int:
        return self.matrix.shape[1]

    @property
    def out_count(self) -> int:
        return self.matrix.shape[0]

    def push(self, p: np.ndarray) -> np.ndarray:
        return self.matrix @ np.asarray(p, dtype=float)


@dataclass
class PushedDistribution:
    """Post-processed outcome probabilities and their theta-derivative."""

    probabilities: np.ndarray
    derivatives: np.ndarray


@dataclass
class DpiTrialReport:
    trial: int
    seed: int
    kind: str
    i_before: float
    i_after: float
    gap: float
    violated: bool
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "trial": self.trial,
            "seed": self.seed,
            "kind": self.kind,
            "i_before": self.i_before,
            "i_after": self.i_after,
            "gap": self.gap,
            "violated": self.violated,
        }
        out.update(self.extra)
        return out


def _raw_probabilities(model: ParameterizedModel, povm: Povm, theta: float):
    p = born_probabilities(model.state_at(theta), povm)
    drho = model.derivative_at(theta)
    dp = np.array([np.trace(drho @ e).real for e in povm.effects])
    return p, dp


def pushforward_likelihood(model: ParameterizedModel, povm: Povm,
                           tmap: StochasticMap, theta: float) -> PushedDistribution:
    """Push the Born distribution and its derivative through a stochastic map.

    The derivative is pushed linearly: d(T p) = T dp.
    """
    if tmap.in_count != len(povm):
        raise ValueError(
            f"map expects {tmap.in_count} outcomes, POVM has {len(povm)}"
        )
    p, dp = _raw_probabilities(model, povm, theta)
    return PushedDistribution(probabilities=tmap.push(p), derivatives=tmap.push(dp))


def postprocessed_fisher(model: ParameterizedModel, povm: Povm,
                         tmap: StochasticMap, theta: float) -> float:
    """Fisher information of the post-processed outcome distribution."""
    pushed = pushforward_likelihood(model, povm, tmap, theta)

    def curvature(y: int) -> float:
        h = CURVATURE_STEP
        _, hi = _raw_probabilities(model, povm, theta + h)
        _, lo = _raw_probabilities(model, povm, theta - h)
        return float((tmap.push(hi)[y] - tmap.push(lo)[y]) / (2.0 * h))

    return information_from_outcomes(pushed.probabilities, pushed.derivatives, curvature)


def postprocess_likelihood(model: ParameterizedModel, povm: Povm,
                           tmap: StochasticMap, theta: float) -> tuple[float, float]:
    """Fisher information before and after post-processing, as (i_x, i_y)."""
    i_x = classical_fisher(model, povm, theta).value
    return i_x, postprocessed_fisher(model, povm, tmap, theta)


def _bayesian_pair(model, povm, tmap, nodes, weights):
    """Prior-averaged information before and after post-processing."""
    j_before = 0.0
    j_after = 0.0
    for t, w in zip(nodes, weights):
        j_before += w * classical_fisher(model, povm, t).value
        j_after += w * postprocessed_fisher(model, povm, tmap, t)
    return j_before, j_after


def classical_dpi_suite(trials: int, seed: int, dims=(2, 3)) -> list[DpiTrialReport]:
    """Randomized classical data-processing checks.

    Each trial draws a model, a projective measurement and a stochastic
    post-processing map, then verifies that neither the pointwise Fisher
    information nor its prior average increases, to within CLASSICAL_TOL.
    """
    seeds = trial_seeds(seed, trials)
    lo, hi = J_RANGE
    nodes = np.linspace(lo, hi, J_GRID)
    weights = np.full(J_GRID, (hi - lo) / (J_GRID - 1))
    weights[0] *= 0.5
    weights[-1] *= 0.5
    weights /= weights.sum()

    reports = []
    for trial in range(trials):
        rng = np.random.default_rng(int(seeds[trial]))
        dim = int(rng.choice(dims))
        model = ModelFamily(random_hermitian(rng, dim)).build(random_pure_state(rng, dim))
        povm = random_projective_povm(rng, dim)
        tmap = StochasticMap(random_stochastic_map(rng, int(rng.integers(2, 5)), dim))
        theta = float(rng.uniform(lo, hi))

        i_before, i_after = postprocess_likelihood(model, povm, tmap, theta)
        j_before, j_after = _bayesian_pair(model, povm, tmap, nodes, weights)
        violated = bool(i_after > i_before + CLASSICAL_TOL
                        or j_after > j_before + CLASSICAL_TOL)
        reports.append(DpiTrialReport(
            trial=trial, seed=int(seeds[trial]), kind="classical",
            i_before=i_before, i_after=i_after, gap=i_before - i_after,
            violated=violated,
            extra={"j_before": j_before, "j_after": j_after, "theta": theta, "dim": dim},
        ))
    return reports


def quantum_dpi_suite(trials: int, seed: int, dim: int = 2, kraus_count: int = 2,
                      restarts: int = 3) -> list[DpiTrialReport]:
    """Randomized quantum data-processing checks.

    Each trial draws a unitary family and a random channel, maximizes the
    Fisher information over contexts with and without the channel, and
    verifies the channel never helps (within the optimizer's QUANTUM_TOL).
    At the optimizer's favourite state it additionally checks the SLD
    quantum Fisher information is monotone and the Heisenberg dual identity
    holds.
    """
    seeds = trial_seeds(seed, trials)
    space = ContextSpace(dim)
    reports = []
    for trial in range(trials):
        rng = np.random.default_rng(int(seeds[trial]))
        family = ModelFamily(random_hermitian(rng, dim))
        channel = random_channel(rng, dim, kraus_count)
        noisy = family.with_channel(channel, "post")
        theta = float(rng.uniform(*J_RANGE))
        opt_seed = int(rng.integers(2 ** 31))

        before = maximize_fisher(family, space, theta, restarts=restarts, seed=opt_seed,
                                 maxiter=OPT_MAXITER)
        after = maximize_fisher(noisy, space, theta, restarts=restarts, seed=opt_seed + 1,
                                maxiter=OPT_MAXITER)

        state = after.best_state
        sld_before = sld_solve(family.build(state), theta).qfi
        sld_after = sld_solve(noisy.build(state), theta).qfi

        rho = family.build(state).state_at(theta).mat
        dual = dual_channel(channel)
        pushed = sum(k @ rho @ np.conj(k.T) for k in channel.kraus)
        dual_defect = max(
            abs(np.trace(pushed @ e).real - np.trace(rho @ dual.apply(e)).real)
            for e in after.best_povm.effects
        )

        violated = bool(
            after.best_value > before.best_value + QUANTUM_TOL
            or sld_after > sld_before + SLD_TOL
            or dual_defect > DUAL_TOL
        )
        reports.append(DpiTrialReport(
            trial=trial, seed=int(seeds[trial]), kind="quantum",
            i_before=before.best_value, i_after=after.best_value,
            gap=before.best_value - after.best_value, violated=violated,
            extra={"sld_before": sld_before, "sld_after": sld_after,
                   "dual_defect": float(dual_defect), "theta": theta},
        ))
    return reports


__all__ = [
    "CLASSICAL_TOL", "QUANTUM_TOL", "SLD_TOL", "DUAL_TOL",
    "StochasticMap", "PushedDistribution", "DpiTrialReport",
    "pushforward_likelihood", "postprocess_likelihood", "postprocessed_fisher",
    "classical_dpi_suite", "quantum_dpi_suite", "random_channel",
]
