"""Numeric kernels with an explicit tolerance policy.

All rank and degeneracy decisions in the package go through the thresholds
collected in :class:`TolerancePolicy`, so that classification is
scale-invariant and the sensitivity to the cutoffs can be probed by running
the same analysis under a different policy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptySpectrum, NonFinite, SingularMatrix


@dataclass(frozen=True)
class TolerancePolicy:
    """Relative thresholds used by every numerical decision.

    rank_rel_tol: singular values below ``rank_rel_tol * sigma_1`` count as
        zero when computing a numerical rank.
    deg_tol: relative threshold for declaring two eigenvalues (or the two
        roots of a quadratic) coincident.
    residual_tol: maximum relative reconstruction / reduction residual.
    """

    rank_rel_tol: float = 1e-9
    deg_tol: float = 1e-8
    residual_tol: float = 1e-8

    def __post_init__(self):
        for name in ("rank_rel_tol", "deg_tol", "residual_tol"):
            value = getattr(self, name)
            if not (0.0 < value < 1.0):
                raise ValueError(f"{name} must lie strictly between 0 and 1, got {value}")


DEFAULT_POLICY = TolerancePolicy()


@dataclass(frozen=True)
class SvdResult:
    """Singular value decomposition ``Q = V @ diag(sigma) @ W.conj().T``.

    V is m x m unitary, W is n x n unitary (columns are the right singular
    vectors), sigma is nonincreasing, and ``residual`` is the relative
    Frobenius reconstruction error.
    """

    V: np.ndarray
    sigma: np.ndarray
    W: np.ndarray
    residual: float


def _fix_column_phase(M, k):
    """Divide column k by the phase of its first significant component."""
    col = M[:, k]
    idx = np.flatnonzero(np.abs(col) > 1e-8)
    if idx.size == 0:
        return 1.0
    phase = col[idx[0]] / abs(col[idx[0]])
    M[:, k] = col / phase
    return phase


def svd(matrix) -> SvdResult:
    """SVD with a pinned phase convention so results are deterministic.

    The first significant component of each left singular vector is made
    real positive; the compensating phase is absorbed into the paired right
    singular vector. Left-over null-space columns are phase-fixed on their
    own.
    """
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.size == 0:
        raise NonFinite(f"expected a nonempty 2-d matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise NonFinite("matrix contains non-finite entries")

    m, n = a.shape
    U, s, Vh = np.linalg.svd(a, full_matrices=True)
    V = U
    W = Vh.conj().T

    k = min(m, n)
    for j in range(m):
        phase = _fix_column_phase(V, j)
        if j < k:
            W[:, j] = W[:, j] / phase
    for j in range(k, n):
        _fix_column_phase(W, j)

    norm = np.linalg.norm(a)
    if norm == 0.0:
        residual = 0.0
    else:
        recon = (V[:, :k] * s) @ W[:, :k].conj().T
        residual = float(np.linalg.norm(a - recon) / norm)

    V.flags.writeable = False
    W.flags.writeable = False
    s.flags.writeable = False
    return SvdResult(V=V, sigma=s, W=W, residual=residual)


def numerical_rank(sigma, pol: TolerancePolicy = DEFAULT_POLICY) -> int:
    """Count singular values above ``rank_rel_tol`` relative to the largest."""
    s = np.asarray(sigma, dtype=float)
    if s.size == 0 or s[0] <= 0.0:
        raise EmptySpectrum("rank needs at least one positive singular value")
    return int(np.count_nonzero(s > pol.rank_rel_tol * s[0]))


def eig2(matrix) -> tuple[complex, complex]:
    """Both eigenvalues of a 2x2 matrix, larger magnitude first.

    Roots of ``lam^2 - tr*lam + det`` via the numerically stable quadratic
    formula; the companion root is recovered as ``det / lam1`` when lam1 is
    nonzero.
    """
    m = np.asarray(matrix, dtype=complex)
    tr = m[0, 0] + m[1, 1]
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    disc = np.sqrt(complex(tr * tr - 4.0 * det))
    if abs(tr + disc) >= abs(tr - disc):
        lam1 = (tr + disc) / 2.0
    else:
        lam1 = (tr - disc) / 2.0
    lam2 = det / lam1 if lam1 != 0 else complex(0.0)
    return complex(lam1), complex(lam2)


def is_degenerate(pair, scale: float, pol: TolerancePolicy = DEFAULT_POLICY) -> bool:
    """True when the two eigenvalues coincide at the policy's tolerance.

    ``scale`` is a caller-supplied spectral scale (typically the norm of the
    matrix whose spectrum is tested) so that a pair of near-zero eigenvalues
    of a non-zero matrix still registers as degenerate.
    """
    lam1, lam2 = pair
    return abs(lam1 - lam2) <= pol.deg_tol * max(scale, abs(lam1) + abs(lam2))


def inv2(matrix, pol: TolerancePolicy = DEFAULT_POLICY) -> np.ndarray:
    """Adjugate-over-determinant inverse of a 2x2 matrix."""
    m = np.asarray(matrix, dtype=complex)
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    scale = np.linalg.norm(m) ** 2
    if abs(det) <= pol.rank_rel_tol * scale:
        raise SingularMatrix(f"|det| = {abs(det):.3e} at matrix scale {scale:.3e}")
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]], dtype=complex) / det
