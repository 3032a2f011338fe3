"""Pure states, coefficient-matrix reshapes, and local operators.

Index convention, fixed throughout the package: amplitudes are stored flat
in lexicographic order with the FIRST subsystem index most significant, so
for dims ``(d1, ..., dN)`` the multi-index ``(i1, ..., iN)`` (0-based) sits
at flat offset ``i1*d2*...*dN + ... + iN``. Subsystem indices at public
interfaces are 1-based.

States are never normalized implicitly; classification is invariant under
nonzero rescaling, so the amplitudes are kept verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadPivot, DimensionMismatch, SingularOperator, ZeroState

_DET_FLOOR = float(np.finfo(np.float64).tiny)


@dataclass(frozen=True)
class PureState:
    """Unnormalized pure state: subsystem dimensions plus flat amplitudes."""

    dims: tuple[int, ...]
    amps: np.ndarray

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per subsystem."""
        return self.amps.reshape(self.dims)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


@dataclass(frozen=True)
class CoeffMatrix:
    """Reshape of a state with one subsystem indexing rows, the rest columns.

    Row r holds every amplitude whose pivot-subsystem index equals r; the
    columns run lexicographically over the remaining subsystem indices in
    their original order (``col_subsystems``, 1-based).
    """

    pivot: int
    entries: np.ndarray
    col_subsystems: tuple[int, ...]

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]


class LocalOperatorSet:
    """One square operator per subsystem, each required to be invertible."""

    def __init__(self, ops):
        mats = tuple(np.asarray(op, dtype=complex) for op in ops)
        for op in mats:
            if op.ndim != 2 or op.shape[0] != op.shape[1]:
                raise DimensionMismatch(f"local operator must be square, got shape {op.shape}")
        dets = tuple(abs(complex(np.linalg.det(op))) for op in mats)
        for op, d in zip(mats, dets):
            if not np.isfinite(d) or d <= _DET_FLOOR:
                raise SingularOperator(f"|det| = {d:.3e} is at the machine floor")
        for op in mats:
            op.flags.writeable = False
        self.ops = mats
        self.det_abs = dets

    def __iter__(self):
        return iter(self.ops)

    def __len__(self):
        return len(self.ops)


def make_state(dims, amps) -> PureState:
    """Validate and build a :class:`PureState`; amplitudes stored verbatim."""
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise DimensionMismatch(f"subsystem dimensions must be positive, got {dims}")
    total = int(np.prod(dims))
    if total < 2:
        raise DimensionMismatch("the total dimension must be at least 2")
    a = np.asarray(amps, dtype=complex).reshape(-1)
    if a.size != total:
        raise DimensionMismatch(
            f"got {a.size} amplitudes, dims {dims} require {total}"
        )
    if np.abs(a).max() == 0.0:
        raise ZeroState("the zero vector does not define a state")
    a = a.copy()
    a.flags.writeable = False
    return PureState(dims=dims, amps=a)


def coefficient_matrix(state: PureState, pivot: int) -> CoeffMatrix:
    """Matrix of the state for the partition pivot | rest (pivot is 1-based)."""
    n = state.n_subsystems
    if not 1 <= pivot <= n:
        raise BadPivot(f"pivot {pivot} out of range 1..{n}")
    t = np.moveaxis(state.tensor(), pivot - 1, 0)
    entries = t.reshape(state.dims[pivot - 1], -1)
    entries = np.ascontiguousarray(entries)
    entries.flags.writeable = False
    cols = tuple(k for k in range(1, n + 1) if k != pivot)
    return CoeffMatrix(pivot=pivot, entries=entries, col_subsystems=cols)


def apply_local_operators(state: PureState, ops) -> PureState:
    """Apply one invertible operator per subsystem by mode-k contractions.

    For pivot 1 the coefficient matrix transforms as
    ``C -> F1 @ C @ kron(F2, ..., FN).T``.
    """
    if not isinstance(ops, LocalOperatorSet):
        ops = LocalOperatorSet(ops)
    if len(ops) != state.n_subsystems:
        raise DimensionMismatch(
            f"{len(ops)} operators for {state.n_subsystems} subsystems"
        )
    for k, op in enumerate(ops):
        if op.shape[0] != state.dims[k]:
            raise DimensionMismatch(
                f"operator {k + 1} is {op.shape[0]}x{op.shape[1]}, subsystem has dimension {state.dims[k]}"
            )
    t = state.tensor()
    for k, op in enumerate(ops):
        t = np.moveaxis(np.tensordot(op, t, axes=(1, k)), 0, k)
    return make_state(state.dims, t.reshape(-1))


def permute_subsystems(state: PureState, order) -> PureState:
    """Reorder subsystems; ``order`` lists the old 1-based indices, new first.

    ``permute_subsystems(s, (2, 1, 3))`` swaps the first two subsystems.
    """
    order = tuple(int(k) for k in order)
    if sorted(order) != list(range(1, state.n_subsystems + 1)):
        raise BadPivot(f"{order} is not a permutation of 1..{state.n_subsystems}")
    axes = tuple(k - 1 for k in order)
    dims = tuple(state.dims[a] for a in axes)
    return make_state(dims, state.tensor().transpose(axes).reshape(-1))
