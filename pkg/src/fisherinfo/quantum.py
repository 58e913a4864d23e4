"""Validated quantum objects: states, measurements, channels.

Density matrices, POVMs and Kraus channels check their defining invariants
at construction, so downstream numerics can assume well-formed inputs.
Channels are represented by Kraus operators only.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidChannel,
    InvalidPovm,
    InvalidState,
    NotNormalized,
    NotUnitary,
)
from .linalg import adjoint, as_complex_matrix, hermiticity_defect, identity

STATE_HERMITIAN_ATOL = 1e-12
STATE_TRACE_ATOL = 1e-10
STATE_EIG_FLOOR = -1e-10          # eigenvalues above this are clamped to zero
POVM_ATOL = 1e-10                 # effect positivity and completeness
CHANNEL_ATOL = 1e-10              # Kraus completeness
UNITARY_ATOL = 1e-10
NORMALIZATION_ATOL = 1e-10
BORN_CLAMP = -1e-12               # probabilities above this are clamped to zero
BORN_SUM_ATOL = 1e-10


class DensityMatrix:
    """A Hermitian, unit-trace, positive-semidefinite matrix.

    Tiny negative eigenvalues (roundoff from channel composition) are
    clamped to zero at construction; anything below STATE_EIG_FLOOR is an
    error.  ``validate=False`` skips the checks for internal callers that
    construct states from operations which provably preserve validity.
    """

    __slots__ = ("mat",)

    def __init__(self, mat, *, validate: bool = True):
        m = as_complex_matrix(mat, "density matrix")
        if validate:
            defect = hermiticity_defect(m)
            if defect > STATE_HERMITIAN_ATOL:
                raise InvalidState(f"density matrix is non-Hermitian by {defect:.3e}")
            m = (m + adjoint(m)) / 2.0
            tr = np.trace(m).real
            if abs(tr - 1.0) > STATE_TRACE_ATOL:
                raise InvalidState(f"density matrix trace {tr!r} is not 1")
            w = np.linalg.eigvalsh(m)
            if w[0] < STATE_EIG_FLOOR:
                raise InvalidState(f"density matrix has eigenvalue {w[0]:.3e} < {STATE_EIG_FLOOR}")
            if w[0] < 0.0:
                w_full, v = np.linalg.eigh(m)
                w_full = np.clip(w_full, 0.0, None)
                m = (v * w_full) @ adjoint(v)
                m = m / np.trace(m).real
        self.mat = m

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def eig(self) -> tuple[np.ndarray, np.ndarray]:
        return np.linalg.eigh((self.mat + adjoint(self.mat)) / 2.0)


class Povm:
    """A measurement: positive effects that sum to the identity.

    Labels are stable integers so classical post-processing maps can refer
    to outcomes by index.
    """

    __slots__ = ("effects", "labels")

    def __init__(self, effects, labels=None, *, validate: bool = True):
        effects = tuple(as_complex_matrix(e, "POVM effect") for e in effects)
        if not effects:
            raise InvalidPovm("a POVM needs at least one effect")
        dim = effects[0].shape[0]
        if any(e.shape[0] != dim for e in effects):
            raise DimensionMismatch("POVM effects have mixed dimensions")
        if labels is None:
            labels = tuple(range(len(effects)))
        else:
            labels = tuple(int(x) for x in labels)
            if len(labels) != len(effects) or len(set(labels)) != len(labels):
                raise InvalidPovm("labels must be distinct and match the effect count")
        if validate:
            for k, e in enumerate(effects):
                defect = hermiticity_defect(e)
                if defect > POVM_ATOL:
                    raise InvalidPovm(f"effect {k} is non-Hermitian by {defect:.3e}")
                w = np.linalg.eigvalsh((e + adjoint(e)) / 2.0)
                if w[0] < -POVM_ATOL:
                    raise InvalidPovm(f"effect {k} has negative eigenvalue {w[0]:.3e}")
            total = sum(effects)
            defect = float(np.max(np.abs(total - identity(dim))))
            if defect > POVM_ATOL:
                raise InvalidPovm(f"effects sum deviates from identity by {defect:.3e}")
        self.effects = effects
        self.labels = labels

    @property
    def dim(self) -> int:
        return self.effects[0].shape[0]

    def __len__(self) -> int:
        return len(self.effects)


class KrausChannel:
    """A completely positive trace-preserving map, as Kraus operators."""

    __slots__ = ("kraus",)

    def __init__(self, kraus, *, validate: bool = True):
        kraus = tuple(as_complex_matrix(k, "Kraus operator") for k in kraus)
        if not kraus:
            raise InvalidChannel("a channel needs at least one Kraus operator")
        dim = kraus[0].shape[0]
        if any(k.shape[0] != dim for k in kraus):
            raise DimensionMismatch("Kraus operators have mixed dimensions")
        if validate:
            total = sum(adjoint(k) @ k for k in kraus)
            defect = float(np.max(np.abs(total - identity(dim))))
            if defect > CHANNEL_ATOL:
                raise InvalidChannel(f"Kraus completeness violated by {defect:.3e}")
        self.kraus = kraus

    @property
    def dim(self) -> int:
        return self.kraus[0].shape[0]


class DualChannel:
    """The Heisenberg-picture dual of a Kraus channel.

    Shares the channel's Kraus operators but acts as
    A -> sum_j K_j^dag A K_j.  Unital rather than trace-preserving, so it
    is a distinct type from KrausChannel.
    """

    __slots__ = ("kraus",)

    def __init__(self, kraus):
        self.kraus = tuple(kraus)

    @property
    def dim(self) -> int:
        return self.kraus[0].shape[0]

    def apply(self, a) -> np.ndarray:
        m = as_complex_matrix(a, "operator")
        if m.shape[0] != self.dim:
            raise DimensionMismatch("operator dimension does not match the channel")
        return sum(adjoint(k) @ m @ k for k in self.kraus)


def apply_channel_matrix(channel: KrausChannel, a: np.ndarray) -> np.ndarray:
    """Linear action sum_j K_j A K_j^dag on an arbitrary matrix.

    Used for states and for state derivatives alike, since the map is the
    same linear map in both cases.
    """
    m = as_complex_matrix(a, "operator")
    if m.shape[0] != channel.dim:
        raise DimensionMismatch("operator dimension does not match the channel")
    return sum(k @ m @ adjoint(k) for k in channel.kraus)


def apply_channel(channel: KrausChannel, rho: DensityMatrix, *, validate: bool = True) -> DensityMatrix:
    """Apply a channel to a state, returning a validated state."""
    return DensityMatrix(apply_channel_matrix(channel, rho.mat), validate=validate)


def dual_channel(channel: KrausChannel) -> DualChannel:
    """Heisenberg dual satisfying tr(E(rho) X) = tr(rho E^dag(X))."""
    dual = DualChannel(channel.kraus)
    defect = float(np.max(np.abs(dual.apply(identity(channel.dim)) - identity(channel.dim))))
    if defect > CHANNEL_ATOL:
        # cannot happen for a valid KrausChannel; guards hand-built inputs
        raise InvalidChannel(f"dual is not unital, defect {defect:.3e}")
    return dual


def dual_povm(dual: DualChannel, povm: Povm) -> Povm:
    """Pull a POVM back through the dual map; the result is again a POVM."""
    return Povm([dual.apply(e) for e in povm.effects], povm.labels)


def born_probabilities(rho: DensityMatrix, povm: Povm) -> np.ndarray:
    """Outcome probabilities tr(rho E_x), clamped against tiny negatives."""
    if rho.dim != povm.dim:
        raise DimensionMismatch("state and POVM dimensions differ")
    p = np.array([np.trace(rho.mat @ e).real for e in povm.effects])
    if np.min(p) < BORN_CLAMP:
        raise InvalidPovm(f"probability {np.min(p):.3e} below clamp floor")
    p = np.clip(p, 0.0, None)
    total = float(np.sum(p))
    if abs(total - 1.0) > BORN_SUM_ATOL:
        raise InvalidPovm(f"probabilities sum to {total!r}, not 1")
    return p


def pure_state(amplitudes) -> DensityMatrix:
    """|psi><psi| from a normalized amplitude vector."""
    psi = np.asarray(amplitudes, dtype=complex).reshape(-1)
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > NORMALIZATION_ATOL:
        raise NotNormalized(f"state vector has norm {norm!r}")
    return DensityMatrix(np.outer(psi, np.conj(psi)), validate=False)


def maximally_mixed(dim: int) -> DensityMatrix:
    return DensityMatrix(identity(dim) / dim, validate=False)


def require_unitary(u, name: str = "matrix") -> np.ndarray:
    m = as_complex_matrix(u, name)
    defect = float(np.max(np.abs(adjoint(m) @ m - identity(m.shape[0]))))
    if defect > UNITARY_ATOL:
        raise NotUnitary(f"{name} deviates from unitarity by {defect:.3e}")
    return m


def projective_povm(basis) -> Povm:
    """Rank-one projectors onto the columns of a unitary basis matrix."""
    u = require_unitary(basis, "measurement basis")
    effects = [np.outer(u[:, k], np.conj(u[:, k])) for k in range(u.shape[0])]
    return Povm(effects, validate=False)


def unitary_channel(u) -> KrausChannel:
    return KrausChannel([require_unitary(u, "unitary")], validate=False)


def depolarizing_channel(strength: float) -> KrausChannel:
    """Qubit depolarizing channel; strength 1 sends every state to I/2."""
    from .linalg import PAULI_X, PAULI_Y, PAULI_Z

    if not 0.0 <= strength <= 1.0:
        raise InvalidChannel(f"depolarizing strength {strength!r} outside [0, 1]")
    p = float(strength)
    return KrausChannel([
        np.sqrt(1.0 - 3.0 * p / 4.0) * identity(2),
        np.sqrt(p / 4.0) * PAULI_X,
        np.sqrt(p / 4.0) * PAULI_Y,
        np.sqrt(p / 4.0) * PAULI_Z,
    ])
