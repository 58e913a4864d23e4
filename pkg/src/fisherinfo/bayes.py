"""Grid-based Bayesian estimation: priors, posteriors, risk, and the
Bayesian Cramer-Rao bound.

Priors live on a fixed quadrature grid (trapezoid weights times density,
normalized).  All downstream quantities are finite sums over that grid, so
the two textbook routes to the Bayes risk ought to agree to roundoff.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DocumentError, ZeroEvidence
from .fisher import bayesian_information
from .models import ParameterizedModel
from .quantum import Povm, born_probabilities

DEFAULT_GRID = 201
MIN_GRID = 3
WEIGHT_SUM_ATOL = 1e-10
EVIDENCE_FLOOR = 1e-300
BCRB_SLACK = 1e-9
VACUOUS_J = 1e-12


class PriorGrid:
    """Quadrature nodes with normalized nonnegative weights."""

    __slots__ = ("nodes", "weights")

    def __init__(self, nodes, weights):
        nodes = np.asarray(nodes, dtype=float)
        weights = np.asarray(weights, dtype=float)
        if nodes.ndim != 1 or nodes.shape != weights.shape:
            raise ValueError("nodes and weights must be 1-d arrays of equal length")
        if len(nodes) < MIN_GRID:
            raise ValueError(f"need at least {MIN_GRID} grid nodes, got {len(nodes)}")
        if np.any(np.diff(nodes) <= 0):
            raise ValueError("nodes must be strictly ascending")
        if np.any(weights < 0):
            raise ValueError("weights must be nonnegative")
        total = float(np.sum(weights))
        if abs(total - 1.0) > WEIGHT_SUM_ATOL:
            raise ValueError(f"weights sum to {total!r}, not 1")
        self.nodes = nodes
        self.weights = weights

    def mean(self) -> float:
        return float(np.dot(self.nodes, self.weights))

    def variance(self) -> float:
        m = self.mean()
        return float(np.dot(self.weights, (self.nodes - m) ** 2))


class PosteriorGrid(PriorGrid):
    """Posterior over the prior's nodes for one observed outcome."""

    __slots__ = ("outcome", "evidence")

    def __init__(self, nodes, weights, outcome: int, evidence: float):
        super().__init__(nodes, weights)
        if evidence <= 0:
            raise ZeroEvidence(f"evidence {evidence!r} is not positive")
        self.outcome = int(outcome)
        self.evidence = float(evidence)


def _trapezoid_weights(nodes: np.ndarray) -> np.ndarray:
    h = np.diff(nodes)
    w = np.zeros_like(nodes)
    w[:-1] += h / 2.0
    w[1:] += h / 2.0
    return w


def grid_prior(nodes, density) -> PriorGrid:
    """Prior from node positions and (unnormalized) density values."""
    nodes = np.asarray(nodes, dtype=float)
    density = np.asarray(density, dtype=float)
    raw = _trapezoid_weights(nodes) * density
    total = float(np.sum(raw))
    if total <= 0:
        raise ValueError("prior density integrates to zero on the grid")
    return PriorGrid(nodes, raw / total)


def uniform_prior(a: float, b: float, n: int = DEFAULT_GRID) -> PriorGrid:
    if not b > a:
        raise ValueError(f"need b > a, got [{a!r}, {b!r}]")
    nodes = np.linspace(a, b, int(n))
    return grid_prior(nodes, np.ones_like(nodes))


def gaussian_prior(mu: float, sigma: float, a: float, b: float, n: int = DEFAULT_GRID) -> PriorGrid:
    """Gaussian truncated to [a, b] and renormalized on the grid."""
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma!r}")
    if not b > a:
        raise ValueError(f"need b > a, got [{a!r}, {b!r}]")
    nodes = np.linspace(a, b, int(n))
    density = np.exp(-0.5 * ((nodes - mu) / sigma) ** 2)
    return grid_prior(nodes, density)


def parse_prior_spec(spec: str, n: int = DEFAULT_GRID) -> PriorGrid:
    """Parse "uniform:a,b" or "gauss:mu,sigma,a,b" into a PriorGrid."""
    try:
        kind, _, rest = spec.partition(":")
        args = [float(x) for x in rest.split(",")] if rest else []
    except ValueError as exc:
        raise DocumentError(f"bad prior spec {spec!r}: {exc}") from None
    if kind == "uniform" and len(args) == 2:
        return uniform_prior(args[0], args[1], n)
    if kind == "gauss" and len(args) == 4:
        return gaussian_prior(args[0], args[1], args[2], args[3], n)
    raise DocumentError(f"bad prior spec {spec!r}; expected uniform:a,b or gauss:mu,sigma,a,b")


def likelihood_table(model: ParameterizedModel, povm: Povm, nodes) -> np.ndarray:
    """Pr(x | theta_i) with rows indexed by grid node, columns by outcome."""
    return np.array([born_probabilities(model.state_at(t), povm) for t in nodes])


def posterior(prior: PriorGrid, model: ParameterizedModel, povm: Povm, outcome: int) -> PosteriorGrid:
    """Bayes rule on the grid for one outcome (by position in the POVM)."""
    like = likelihood_table(model, povm, prior.nodes)[:, outcome]
    raw = prior.weights * like
    evidence = float(np.sum(raw))
    if evidence <= EVIDENCE_FLOOR:
        raise ZeroEvidence(f"outcome {outcome} has evidence {evidence!r}")
    return PosteriorGrid(prior.nodes, raw / evidence, outcome, evidence)


def bayes_estimator(post: PosteriorGrid) -> float:
    """Posterior mean, the Bayes estimator for squared error."""
    return post.mean()


def bayes_risk(prior: PriorGrid, model: ParameterizedModel, povm: Povm,
               method: str = "posterior-variance") -> float:
    """Expected squared error of the posterior-mean estimator.

    "posterior-variance" sums Pr(x) * Var(theta | x); "estimator-mse"
    averages the conditional squared error over the prior and likelihood.
    The two are the same finite sum reorganized, and agree to roundoff.
    Outcomes with zero evidence are skipped: they occur with probability
    zero and contribute nothing to the risk.
    """
    like = likelihood_table(model, povm, prior.nodes)
    joint = prior.weights[:, None] * like            # Pr(theta_i, x)
    evidence = joint.sum(axis=0)                     # Pr(x)
    risk = 0.0
    for x in range(like.shape[1]):
        if evidence[x] <= EVIDENCE_FLOOR:
            continue
        post = joint[:, x] / evidence[x]
        estimate = float(np.dot(prior.nodes, post))
        if method == "posterior-variance":
            risk += evidence[x] * float(np.dot(post, (prior.nodes - estimate) ** 2))
        elif method == "estimator-mse":
            risk += float(np.dot(joint[:, x], (prior.nodes - estimate) ** 2))
        else:
            raise ValueError(f"unknown method {method!r}")
    return risk


@dataclass
class BcrbReport:
    """Bayes risk against the inverse of the prior-averaged information."""

    risk: float
    j: float
    satisfied: bool
    vacuous: bool


def check_bcrb(prior: PriorGrid, model: ParameterizedModel, povm: Povm) -> BcrbReport:
    """Compare the Bayes risk with 1/J.

    J is the prior average of the classical Fisher information.  The bound
    reads risk >= 1/J; with J at numerical zero it is vacuous and reported
    as such (satisfied trivially, since 1/J is +inf).
    """
    risk = bayes_risk(prior, model, povm)
    j = bayesian_information(model, povm, prior)
    if j <= VACUOUS_J:
        return BcrbReport(risk=risk, j=j, satisfied=True, vacuous=True)
    return BcrbReport(risk=risk, j=j, satisfied=bool(risk >= 1.0 / j - BCRB_SLACK), vacuous=False)
