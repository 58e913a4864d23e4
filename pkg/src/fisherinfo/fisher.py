"""Fisher information functionals: classical, Bayesian, and quantum (SLD).

The classical score sums (dp_x)^2 / p_x over measurement outcomes.  An
outcome whose probability and probability-derivative both (numerically)
vanish sits at a removable singularity of that ratio; its contribution is
the limit 2 * d2p_x, obtained by differencing the model's analytic first
derivative.  A vanishing probability with a non-vanishing derivative has
divergent information and raises SingularOutcome instead.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DerivativeOffSupport, DimensionMismatch, SingularOutcome
from .linalg import adjoint
from .models import ParameterizedModel
from .quantum import DensityMatrix, Povm, born_probabilities, projective_povm

P_FLOOR = 1e-12       # probabilities at or below this count as zero
D_FLOOR = 1e-9        # derivative magnitude above this at p ~ 0 is divergent
CURVATURE_STEP = 1e-6  # step for the second-derivative limit at removable points

EPS_SLD = 1e-10       # eigenvalue-pair sums at or below this are off support
DELTA_SLD = 1e-8      # derivative weight allowed on the off-support block


@dataclass
class FisherValue:
    """Classical Fisher information of one (model, POVM, theta) evaluation."""

    value: float
    theta: float
    context_description: str = ""


@dataclass
class SldResult:
    """Symmetric logarithmic derivative and the quantum Fisher information."""

    sld: np.ndarray
    qfi: float
    support_rank: int


def information_from_outcomes(p, dp, curvature=None, *,
                              p_floor: float = P_FLOOR,
                              d_floor: float = D_FLOOR) -> float:
    """Score an outcome-probability vector and its derivative.

    ``curvature``, if given, maps an outcome index to d2p_x/dtheta2 and is
    only consulted for outcomes at a removable singularity.  Without it
    such outcomes contribute zero.
    """
    total = 0.0
    for x in range(len(p)):
        px = float(p[x])
        dx = float(dp[x])
        if px > p_floor:
            total += dx * dx / px
        elif abs(dx) > d_floor:
            raise SingularOutcome(
                f"outcome {x} has probability {px:.3e} but derivative {dx:.3e}"
            )
        elif curvature is not None:
            total += max(0.0, 2.0 * float(curvature(x)))
    return total


def _probability_derivatives(model: ParameterizedModel, povm: Povm, theta: float) -> np.ndarray:
    drho = model.derivative_at(theta)
    return np.array([np.trace(drho @ e).real for e in povm.effects])


def classical_fisher(model: ParameterizedModel, povm: Povm, theta: float,
                     description: str = "") -> FisherValue:
    """Fisher information of the Born distribution at ``theta``.

    Probability derivatives come from the model's derivative_at; they are
    never re-differenced from probabilities.
    """
    if model.dim != povm.dim:
        raise DimensionMismatch("model and POVM dimensions differ")
    p = born_probabilities(model.state_at(theta), povm)
    dp = _probability_derivatives(model, povm, theta)

    def curvature(x: int) -> float:
        h = CURVATURE_STEP
        hi = _probability_derivatives(model, povm, theta + h)[x]
        lo = _probability_derivatives(model, povm, theta - h)[x]
        return (hi - lo) / (2.0 * h)

    value = information_from_outcomes(p, dp, curvature)
    return FisherValue(value=value, theta=float(theta), context_description=description)


def bayesian_information(model: ParameterizedModel, povm: Povm, prior) -> float:
    """Average Fisher information of the measurement under a prior grid."""
    values = [classical_fisher(model, povm, t).value for t in prior.nodes]
    return float(np.dot(prior.weights, values))


def sld_solve(model: ParameterizedModel, theta: float) -> SldResult:
    """Solve rho' = (rho L + L rho) / 2 for the SLD L, and the QFI.

    Works in the eigenbasis of rho(theta): L_ij = 2 rho'_ij / (l_i + l_j)
    wherever the eigenvalue pair-sum is above EPS_SLD.  Derivative weight
    above DELTA_SLD on the remaining block means no SLD exists.
    """
    rho = model.state_at(theta)
    drho = model.derivative_at(theta)
    w, v = rho.eig()
    d_eig = adjoint(v) @ drho @ v

    pair_sums = w[:, None] + w[None, :]
    on_support = pair_sums > EPS_SLD
    off_weight = np.abs(np.where(on_support, 0.0, d_eig))
    worst = float(off_weight.max()) if off_weight.size else 0.0
    if worst > DELTA_SLD:
        raise DerivativeOffSupport(
            f"derivative has weight {worst:.3e} outside the state support"
        )
    l_eig = np.where(on_support, 2.0 * d_eig / np.where(on_support, pair_sums, 1.0), 0.0)
    qfi = float(np.sum(w[:, None] * np.abs(l_eig) ** 2).real)
    sld = v @ l_eig @ adjoint(v)
    sld = (sld + adjoint(sld)) / 2.0
    support_rank = int(np.sum(w > EPS_SLD / 2.0))
    return SldResult(sld=sld, qfi=qfi, support_rank=support_rank)


def sld_optimal_povm(result: SldResult) -> Povm:
    """Projective measurement in the SLD eigenbasis.

    For a scalar parameter this measurement's classical Fisher information
    equals the QFI.
    """
    _, v = np.linalg.eigh((result.sld + adjoint(result.sld)) / 2.0)
    return projective_povm(v)
