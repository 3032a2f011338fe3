"""Reproducible generators and brute-force oracles for the property suites.

The random source is counter-based (Philox keyed through SeedSequence), so a
given seed produces the same draws on every platform. Sources are values:
use ``split`` to derive independent child sources instead of sharing one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DependentGenerators
from .states import PureState, make_state

MANY = "many"


@dataclass(frozen=True)
class RandomSource:
    seed: int
    key: tuple[int, ...] = ()

    def generator(self) -> np.random.Generator:
        return np.random.Generator(
            np.random.Philox(np.random.SeedSequence(self.seed, spawn_key=self.key))
        )

    def split(self, index: int) -> "RandomSource":
        return RandomSource(self.seed, self.key + (int(index),))


def random_state(dims, src: RandomSource) -> PureState:
    """State with independent standard-normal real and imaginary parts."""
    dims = tuple(int(d) for d in dims)
    total = int(np.prod(dims))
    g = src.generator()
    while True:
        amps = g.standard_normal(total) + 1j * g.standard_normal(total)
        if np.linalg.norm(amps) > 1e-6 * np.sqrt(2 * total):
            return make_state(dims, amps)


def random_ilo(dim: int, src: RandomSource, cond_cap: float = 1e3) -> np.ndarray:
    """Random invertible matrix, resampled until its condition number fits."""
    if cond_cap <= 1.0:
        raise ValueError("cond_cap must exceed 1")
    g = src.generator()
    while True:
        m = g.standard_normal((dim, dim)) + 1j * g.standard_normal((dim, dim))
        s = np.linalg.svd(m, compute_uv=False)
        if s[-1] > 0 and s[0] / s[-1] <= cond_cap:
            return m


def random_ilo_list(dims, src: RandomSource, cond_cap: float = 1e3) -> list[np.ndarray]:
    return [random_ilo(d, src.split(i), cond_cap) for i, d in enumerate(dims)]


_GRID_CACHE: dict[int, tuple] = {}


def _sphere_grid(n_points):
    """Grid over the projective line as (alpha, beta) pairs on the 2-sphere."""
    if n_points in _GRID_CACHE:
        return _GRID_CACHE[n_points]
    n_theta = max(int(np.sqrt(n_points / 2.0)), 8)
    n_phi = 2 * n_theta
    theta = np.linspace(0.0, np.pi, n_theta)
    phi = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    tt = tt.reshape(-1)
    pp = pp.reshape(-1)
    alpha = np.cos(tt / 2.0).astype(complex)
    beta = np.sin(tt / 2.0) * np.exp(1j * pp)
    spacing = np.pi / (n_theta - 1)
    _GRID_CACHE[n_points] = (alpha, beta, spacing)
    return _GRID_CACHE[n_points]


def _abs_det(W1, W2, alpha, beta):
    m00 = alpha * W1[0, 0] + beta * W2[0, 0]
    m01 = alpha * W1[0, 1] + beta * W2[0, 1]
    m10 = alpha * W1[1, 0] + beta * W2[1, 0]
    m11 = alpha * W1[1, 1] + beta * W2[1, 1]
    return np.abs(m00 * m11 - m01 * m10)


def _refine_batch(W1, W2, alpha, beta, depth, half0=0.5, avoid=None):
    """Shrinking local search around each candidate, all in one batch.

    Moves live in the projective tangent space at each current point, so
    the search has no coordinate pinch anywhere on the sphere. With
    ``avoid`` set, minimizes |det| deflated by the chordal distance to that
    point, which digs out a second zero sharing a basin with a found one.
    """
    offsets = np.linspace(-1.0, 1.0, 5)
    dx, dy = np.meshgrid(offsets, offsets, indexing="ij")
    step = (dx + 1j * dy).reshape(-1)
    a = np.asarray(alpha, dtype=complex).copy()
    b = np.asarray(beta, dtype=complex).copy()
    rows = np.arange(a.size)
    half = half0
    for _ in range(depth):
        perp_a = -np.conj(b)
        perp_b = np.conj(a)
        ca = a[:, None] + half * step[None, :] * perp_a[:, None]
        cb = b[:, None] + half * step[None, :] * perp_b[:, None]
        norm = np.sqrt(np.abs(ca) ** 2 + np.abs(cb) ** 2)
        ca /= norm
        cb /= norm
        vals = _abs_det(W1, W2, ca, cb)
        if avoid is not None:
            overlap = ca * np.conj(avoid[0]) + cb * np.conj(avoid[1])
            dist = np.sqrt(np.maximum(0.0, 1.0 - np.abs(overlap) ** 2))
            vals = vals / np.maximum(dist, 1e-7)
        pick = np.argmin(vals, axis=1)
        a = ca[rows, pick]
        b = cb[rows, pick]
        half *= 0.5
    return a, b, _abs_det(W1, W2, a, b)


def _projective_distance(p, q):
    a = np.array(p) / np.linalg.norm(p)
    b = np.array(q) / np.linalg.norm(q)
    return float(np.sqrt(max(0.0, 1.0 - abs(np.vdot(a, b)) ** 2)))


def brute_product_count(w1, w2, grid_n: int = 10_000, depth: int = 20):
    """Count product directions in span{w1, w2} by sweeping |det| to zero.

    Sweeps the projective line (as the 2-sphere of normalized (alpha, beta)
    pairs), refines the candidate minima of |det(alpha*W1 + beta*W2)|, and
    merges refined zeros closer than 1e-6. Returns 0, 1, 2, or ``MANY``.
    Used only as an independent cross-check of the analytic root finder.
    """
    v1 = np.asarray(w1, dtype=complex).reshape(-1)
    v2 = np.asarray(w2, dtype=complex).reshape(-1)
    gram = (
        float(np.vdot(v1, v1).real) * float(np.vdot(v2, v2).real)
        - abs(np.vdot(v1, v2)) ** 2
    )
    if gram <= 1e-9 * float(np.vdot(v1, v1).real) * float(np.vdot(v2, v2).real):
        raise DependentGenerators("the generators are numerically parallel")
    W1 = v1.reshape(2, 2).T
    W2 = v2.reshape(2, 2).T
    scale = (np.linalg.norm(W1) + np.linalg.norm(W2)) ** 2

    alpha, beta, spacing = _sphere_grid(grid_n)
    vals = _abs_det(W1, W2, alpha, beta)
    if float(vals.max()) <= 1e-10 * scale:
        return MANY
    # |det| is tiny on a large fraction of the sphere only when it vanishes
    # identically up to noise.
    if float(np.mean(vals <= 1e-8 * scale)) > 0.1:
        return MANY

    # Spatially distinct starts: the smallest grid values, skipping
    # candidates projectively adjacent to an already chosen one.
    top = np.argpartition(vals, 200)[:200]
    top = top[np.argsort(vals[top])]
    cand_a = [complex(z) for z in alpha[top]]
    cand_b = [complex(z) for z in beta[top]]
    min_overlap_sq = 1.0 - (2.0 * spacing) ** 2
    starts_rows: list[int] = []
    for i in range(top.size):
        a_i = cand_a[i]
        b_i = cand_b[i]
        if any(
            abs(cand_a[j].conjugate() * a_i + cand_b[j].conjugate() * b_i) ** 2
            > min_overlap_sq
            for j in starts_rows
        ):
            continue
        starts_rows.append(i)
        if len(starts_rows) >= 8:
            break
    picked = top[starts_rows]
    q_scale = float(vals.max())

    def _find_zeros(zeros, avoid=None):
        a0, b0, _ = _refine_batch(W1, W2, alpha[picked], beta[picked], depth, avoid=avoid)
        # Polish from the refined positions so converged zeros separate
        # cleanly (by many orders of magnitude) from stalled descents.
        als, bes, refined = _refine_batch(W1, W2, a0, b0, 16, half0=1e-4)
        for al, be, val in zip(als, bes, refined):
            if val > 1e-7 * q_scale:
                continue
            point = (complex(al), complex(be))
            if all(_projective_distance(point, z) > 1e-6 for z in zeros):
                zeros.append(point)
        return zeros

    zeros = _find_zeros([])
    if len(zeros) == 1:
        # A second zero can share the basin of the first; deflate and retry.
        zeros = _find_zeros(zeros, avoid=zeros[0])
    count = len(zeros)
    if count > 2:
        return MANY
    return count
