"""Parameterized families of quantum states theta -> rho(theta).

Each model exposes the state and its analytic (or finite-difference)
derivative with respect to the scalar parameter.  Information functionals
always consume the model's own derivative; they never re-difference.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, InvalidState
from .linalg import adjoint, eig_hermitian, require_hermitian
from .quantum import DensityMatrix, KrausChannel, apply_channel_matrix

FD_STEP = 1e-5  # central-difference step for families without analytic rules


class ParameterizedModel:
    """Base class; concrete families implement state_at / derivative_at."""

    kind = "abstract"

    @property
    def dim(self) -> int:
        raise NotImplementedError

    def state_at(self, theta: float) -> DensityMatrix:
        raise NotImplementedError

    def derivative_at(self, theta: float) -> np.ndarray:
        """d rho / d theta, Hermitian and traceless."""
        raise NotImplementedError

    def with_initial_state(self, rho0: DensityMatrix) -> "ParameterizedModel":
        raise NotImplementedError(f"{self.kind} does not expose an initial state")


class UnitaryFamily(ParameterizedModel):
    """rho(theta) = U rho0 U^dag with U = exp(-i theta passes G).

    ``passes`` counts repeated applications of the same generator, so the
    effective generator is passes * G.  The generator's eigendecomposition
    is cached; evaluating the family at any theta is then two small matrix
    products.
    """

    kind = "UnitaryFamily"

    def __init__(self, generator, rho0: DensityMatrix, passes: int = 1, *, _gen_eig=None):
        self.generator = require_hermitian(generator, "generator")
        if not isinstance(rho0, DensityMatrix):
            raise InvalidState("rho0 must be a DensityMatrix")
        if rho0.dim != self.generator.shape[0]:
            raise DimensionMismatch("generator and initial state dimensions differ")
        if int(passes) < 1:
            raise ValueError(f"passes must be a positive integer, got {passes!r}")
        self.rho0 = rho0
        self.passes = int(passes)
        self._gen_eig = _gen_eig if _gen_eig is not None else eig_hermitian(self.generator)

    @property
    def dim(self) -> int:
        return self.generator.shape[0]

    def propagator(self, theta: float) -> np.ndarray:
        w, v = self._gen_eig
        phases = np.exp(-1j * theta * self.passes * w)
        return (v * phases) @ adjoint(v)

    def state_at(self, theta: float) -> DensityMatrix:
        u = self.propagator(theta)
        # unitary conjugation of a valid state stays valid
        return DensityMatrix(u @ self.rho0.mat @ adjoint(u), validate=False)

    def derivative_at(self, theta: float) -> np.ndarray:
        rho = self.state_at(theta).mat
        comm = self.generator @ rho - rho @ self.generator
        return -1j * self.passes * comm

    def with_initial_state(self, rho0: DensityMatrix) -> "UnitaryFamily":
        return UnitaryFamily(self.generator, rho0, self.passes, _gen_eig=self._gen_eig)


class KrausFamily(ParameterizedModel):
    """rho(theta) = E_theta(rho0) for a theta-dependent Kraus channel.

    ``kraus_at`` maps theta to a KrausChannel.  No analytic derivative is
    assumed; a central finite difference of the state serves instead.
    """

    kind = "KrausFamily"

    def __init__(self, kraus_at, rho0: DensityMatrix, fd_step: float = FD_STEP):
        if not isinstance(rho0, DensityMatrix):
            raise InvalidState("rho0 must be a DensityMatrix")
        self.kraus_at = kraus_at
        self.rho0 = rho0
        self.fd_step = float(fd_step)

    @property
    def dim(self) -> int:
        return self.rho0.dim

    def state_at(self, theta: float) -> DensityMatrix:
        channel = self.kraus_at(theta)
        if channel.dim != self.rho0.dim:
            raise DimensionMismatch("channel and initial state dimensions differ")
        return DensityMatrix(apply_channel_matrix(channel, self.rho0.mat), validate=False)

    def derivative_at(self, theta: float) -> np.ndarray:
        h = self.fd_step
        hi = self.state_at(theta + h).mat
        lo = self.state_at(theta - h).mat
        d = (hi - lo) / (2.0 * h)
        # symmetrize away the last bits of roundoff
        return (d + adjoint(d)) / 2.0

    def with_initial_state(self, rho0: DensityMatrix) -> "KrausFamily":
        return KrausFamily(self.kraus_at, rho0, self.fd_step)


class ComposedModel(ParameterizedModel):
    """A model with a fixed (theta-independent) channel attached.

    placement "post" applies the channel after the inner family, so the
    derivative is the channel applied to the inner derivative.  placement
    "pre" rebuilds the inner family from the transformed initial state.
    """

    kind = "Composed"

    def __init__(self, inner: ParameterizedModel, channel: KrausChannel, placement: str = "post"):
        if placement not in ("pre", "post"):
            raise ValueError(f"placement must be 'pre' or 'post', got {placement!r}")
        if channel.dim != inner.dim:
            raise DimensionMismatch("channel and model dimensions differ")
        self.inner = inner
        self.channel = channel
        self.placement = placement
        if placement == "pre":
            rho0 = DensityMatrix(apply_channel_matrix(channel, inner.rho0.mat))
            self._effective = inner.with_initial_state(rho0)
        else:
            self._effective = None

    @property
    def dim(self) -> int:
        return self.inner.dim

    def state_at(self, theta: float) -> DensityMatrix:
        if self.placement == "pre":
            return self._effective.state_at(theta)
        rho = self.inner.state_at(theta)
        return DensityMatrix(apply_channel_matrix(self.channel, rho.mat), validate=False)

    def derivative_at(self, theta: float) -> np.ndarray:
        if self.placement == "pre":
            return self._effective.derivative_at(theta)
        return apply_channel_matrix(self.channel, self.inner.derivative_at(theta))

    def with_initial_state(self, rho0: DensityMatrix) -> "ComposedModel":
        return ComposedModel(self.inner.with_initial_state(rho0), self.channel, self.placement)


def make_unitary_family(generator, rho0: DensityMatrix, passes: int = 1) -> UnitaryFamily:
    """Validated constructor for unitary families."""
    return UnitaryFamily(generator, rho0, passes)


def compose(model: ParameterizedModel, channel: KrausChannel, placement: str = "post") -> ComposedModel:
    """Attach a fixed channel to a model, before or after the dynamics."""
    return ComposedModel(model, channel, placement)
