"""Dense state vectors over mixed-radix registers.

Amplitude ordering is row-major over the site list: the first site is the
most significant digit of the flattened index, so a layout with dimensions
(2, 2, 2, 2) stores the basis state with digits (0, 1, 0, 1) at flat index
0b0101 = 5. Every operation is value-in/value-out; internal buffers may be
mutated but inputs never are. The squared norm is checked after each
state-changing call and a drift beyond ``NORM_TOLERANCE`` raises
:class:`NormDriftError` instead of renormalizing, so kernel bugs surface
instead of being papered over.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInputError, NormDriftError

NORM_TOLERANCE = 1e-10
APPLY_UNITARY_TOLERANCE = 1e-10


class Role(Enum):
    """What a register site is for.

    Wire roles (REFERENCE, ARRAY) appear only in full-circuit layouts where
    the classical inputs travel on simulated wires.
    """

    REFERENCE = "ref"
    ARRAY = "arr"
    COPY = "copy"
    INDEX = "index"
    SCORE = "score"


@dataclass(frozen=True)
class Site:
    role: Role
    dimension: int
    label: str

    def __post_init__(self) -> None:
        if self.dimension < 2:
            raise InvalidInputError(
                f"site {self.label!r}: dimension must be >= 2, got {self.dimension}"
            )


@dataclass(frozen=True)
class RegisterLayout:
    """Ordered sites defining a mixed-radix tensor space and its strides."""

    sites: tuple[Site, ...]

    def __post_init__(self) -> None:
        sites = tuple(self.sites)
        if not sites:
            raise InvalidInputError("layout needs at least one site")
        object.__setattr__(self, "sites", sites)
        dims = tuple(s.dimension for s in sites)
        strides = [1] * len(dims)
        for i in range(len(dims) - 2, -1, -1):
            strides[i] = strides[i + 1] * dims[i + 1]
        object.__setattr__(self, "_dims", dims)
        object.__setattr__(self, "_strides", tuple(strides))
        object.__setattr__(self, "_total", strides[0] * dims[0])

    @property
    def dims(self) -> tuple[int, ...]:
        return self._dims  # type: ignore[attr-defined]

    @property
    def strides(self) -> tuple[int, ...]:
        return self._strides  # type: ignore[attr-defined]

    @property
    def total_dimension(self) -> int:
        return self._total  # type: ignore[attr-defined]

    def flatten(self, digits: Sequence[int]) -> int:
        """Flat amplitude index of a per-site digit tuple."""
        digits = tuple(digits)
        if len(digits) != len(self.sites):
            raise InvalidInputError(
                f"expected {len(self.sites)} digits, got {len(digits)}"
            )
        flat = 0
        for site, dim, stride, digit in zip(self.sites, self.dims, self.strides, digits):
            if not 0 <= digit < dim:
                raise InvalidInputError(
                    f"digit {digit} out of range for site {site.label!r} (dim {dim})"
                )
            flat += digit * stride
        return flat

    def unflatten(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.total_dimension:
            raise InvalidInputError(f"flat index {index} out of range")
        return tuple((index // s) % d for s, d in zip(self.strides, self.dims))

    def sites_of(self, role: Role) -> tuple[int, ...]:
        """Indices of all sites with the given role, in layout order."""
        return tuple(i for i, s in enumerate(self.sites) if s.role is role)

    def single(self, role: Role) -> int:
        """Index of the unique site with the given role."""
        found = self.sites_of(role)
        if len(found) != 1:
            raise InvalidInputError(f"layout has {len(found)} sites of role {role}")
        return found[0]


@dataclass(frozen=True, eq=False)
class StateVector:
    """Unit-norm complex amplitudes over a :class:`RegisterLayout`.

    Construct through :func:`init_basis_state` or :meth:`from_amplitudes`;
    the raw constructor trusts its arguments. The amplitude array is frozen
    so shared states cannot be corrupted across threads.
    """

    layout: RegisterLayout
    amplitudes: np.ndarray

    @classmethod
    def from_amplitudes(cls, layout: RegisterLayout, amplitudes: Iterable[complex]) -> StateVector:
        amps = np.asarray(list(amplitudes) if not isinstance(amplitudes, np.ndarray) else amplitudes,
                          dtype=np.complex128).copy()
        if amps.shape != (layout.total_dimension,):
            raise InvalidInputError(
                f"expected {layout.total_dimension} amplitudes, got shape {amps.shape}"
            )
        _check_norm(amps)
        amps.flags.writeable = False
        return cls(layout, amps)


def _check_norm(amplitudes: np.ndarray) -> None:
    drift = abs(float(np.sum(np.abs(amplitudes) ** 2)) - 1.0)
    if drift > NORM_TOLERANCE:
        raise NormDriftError(f"squared norm drifted by {drift:.3e}")


def init_basis_state(layout: RegisterLayout, digits: Sequence[int]) -> StateVector:
    """Basis state with amplitude 1 at the flattened index of ``digits``."""
    amps = np.zeros(layout.total_dimension, dtype=np.complex128)
    amps[layout.flatten(digits)] = 1.0
    amps.flags.writeable = False
    return StateVector(layout, amps)


def apply_controlled(
    state: StateVector,
    controls: Sequence[tuple[int, int]],
    target: int,
    matrix: np.ndarray,
) -> StateVector:
    """Apply a unitary to the target site wherever all controls match.

    ``controls`` is a sequence of ``(site, required digit)`` pairs; a pair
    with digit 0 is a negative control, so no X-conjugation sandwich is
    needed. The sub-vector along the target axis is multiplied by ``matrix``
    exactly in the amplitude groups whose control digits all match, and left
    untouched elsewhere.
    """
    layout = state.layout
    nsites = len(layout.sites)
    if not 0 <= target < nsites:
        raise InvalidInputError(f"unknown target site {target}")
    seen = {target}
    for site, digit in controls:
        if not 0 <= site < nsites:
            raise InvalidInputError(f"unknown control site {site}")
        if site in seen:
            raise InvalidInputError(f"site {site} used more than once in controls/target")
        seen.add(site)
        if not 0 <= digit < layout.dims[site]:
            raise InvalidInputError(
                f"control digit {digit} out of range for site {site} (dim {layout.dims[site]})"
            )
    d = layout.dims[target]
    mat = np.asarray(matrix, dtype=np.complex128)
    if mat.shape != (d, d):
        raise InvalidInputError(f"matrix shape {mat.shape} does not match target dimension {d}")
    defect = float(np.max(np.abs(mat @ mat.conj().T - np.eye(d))))
    if defect > APPLY_UNITARY_TOLERANCE:
        raise InvalidInputError(f"matrix is not unitary (defect {defect:.3e})")

    out = state.amplitudes.copy().reshape(layout.dims)
    selector: list[object] = [slice(None)] * nsites
    for site, digit in controls:
        selector[site] = digit
    block = out[tuple(selector)]  # view: integer indexing drops control axes
    axis = target - sum(1 for site, _ in controls if site < target)
    moved = np.moveaxis(block, axis, -1)
    moved[...] = moved @ mat.T
    flat = out.reshape(-1)
    _check_norm(flat)
    flat.flags.writeable = False
    return StateVector(layout, flat)


def marginal_probabilities(
    state: StateVector, sites: Sequence[int]
) -> dict[tuple[int, ...], float]:
    """Outcome probabilities for a subset of sites.

    Keys are digit tuples in the order the sites were given; values sum to 1.
    """
    order = tuple(sites)
    if not order:
        raise InvalidInputError("site subset must be nonempty")
    if len(set(order)) != len(order):
        raise InvalidInputError("duplicate sites in subset")
    nsites = len(state.layout.sites)
    for s in order:
        if not 0 <= s < nsites:
            raise InvalidInputError(f"unknown site {s}")
    probs = np.abs(state.amplitudes.reshape(state.layout.dims)) ** 2
    drop = tuple(ax for ax in range(nsites) if ax not in order)
    marg = probs.sum(axis=drop) if drop else probs
    kept = [ax for ax in range(nsites) if ax in order]
    marg = np.transpose(marg, [kept.index(s) for s in order])
    return {tuple(int(v) for v in idx): float(p) for idx, p in np.ndenumerate(marg)}


def inner_product(a: StateVector, b: StateVector) -> complex:
    """Hermitian inner product, conjugate-linear in ``a``."""
    if a.layout != b.layout:
        raise InvalidInputError("states live on different layouts")
    return complex(np.vdot(a.amplitudes, b.amplitudes))
