"""Structure of 1- and 2-dimensional subspaces of C^2 (x) C^2.

A vector w in C^2 (x) C^2 written as w = e1 (x) w_1 + e2 (x) w_2 maps to the
2x2 slice matrix [w_1 w_2]; w is a product vector exactly when the slice has
rank 1. For a two-dimensional span the projective roots of
``q(a, b) = det(a*W1 + b*W2)`` locate the product directions, and their count
(two, one double, or a continuum) names the span structure. A span always
contains at least one product direction, which is what makes the structure
analysis exhaustive.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DependentGenerators, DimensionMismatch, ToleranceBreakdown, ZeroVector
from .numerics import DEFAULT_POLICY, TolerancePolicy, numerical_rank, svd

_EPS = 1e-13


class RootKind(enum.Enum):
    INFINITELY_MANY = "InfinitelyMany"
    TWO_DISTINCT = "TwoDistinct"
    ONE_DOUBLE = "OneDouble"


class StructureTag(enum.Enum):
    PRODUCT_LINE = "ProductLine"
    ENTANGLED_LINE = "EntangledLine"
    LEFT_FACTOR = "LeftFactor"
    RIGHT_FACTOR = "RightFactor"
    TWO_PRODUCTS = "TwoProducts"
    ONE_PRODUCT_PLUS_ENTANGLED = "OneProductPlusEntangled"


@dataclass(frozen=True)
class RootReport:
    """Projective roots of ``det(a*W1 + b*W2)``, normalized to max component 1."""

    kind: RootKind
    roots: tuple[tuple[complex, complex], ...]


@dataclass(frozen=True)
class SubspaceStructure:
    """Span (or line) structure with its product-vector witnesses.

    ``witnesses`` lists the product vectors found (none for an entangled
    line or a factor span, one or two otherwise); ``factor`` carries the
    common single-qubit factor for the LeftFactor / RightFactor spans.
    """

    tag: StructureTag
    witnesses: tuple[np.ndarray, ...] = ()
    factor: np.ndarray | None = None


def slice_matrix(w) -> np.ndarray:
    """2x2 slice of a 4-vector indexed as (11, 12, 21, 22)."""
    v = np.asarray(w, dtype=complex).reshape(-1)
    if v.size != 4:
        raise DimensionMismatch(f"expected a 4-vector, got length {v.size}")
    return v.reshape(2, 2).T.copy()


def unslice(matrix) -> np.ndarray:
    """Inverse of :func:`slice_matrix` (exact round trip)."""
    m = np.asarray(matrix, dtype=complex)
    return m.T.reshape(-1).copy()


def _normalize_root(alpha: complex, beta: complex) -> tuple[complex, complex]:
    if abs(alpha) >= abs(beta):
        return complex(1.0), complex(beta / alpha)
    return complex(alpha / beta), complex(1.0)


def projective_quadratic_roots(a, b, c, zero_tol: float, deg_tol: float):
    """Roots of ``a*x^2 + b*x*y + c*y^2`` on the projective line.

    Returns ``(RootKind, roots)``. The double root comes from the stable
    vertex formula, so its position is first-order accurate even though the
    two split roots would each carry sqrt-of-noise error.
    """
    a, b, c = complex(a), complex(b), complex(c)
    s = max(abs(a), abs(b), abs(c))
    if s <= zero_tol:
        return RootKind.INFINITELY_MANY, ()
    disc = b * b - 4.0 * a * c
    if abs(disc) <= deg_tol * s * s:
        if abs(a) >= abs(c):
            root = _normalize_root(-b, 2.0 * a)
        else:
            root = _normalize_root(2.0 * c, -b)
        return RootKind.ONE_DOUBLE, (root,)
    if abs(a) <= _EPS * s:
        r1 = (complex(1.0), complex(0.0))
        if abs(b) <= _EPS * s:
            return RootKind.ONE_DOUBLE, (r1,)
        return RootKind.TWO_DISTINCT, (r1, _normalize_root(-c, b))
    sd = np.sqrt(disc)
    t = -b - sd if abs(-b - sd) >= abs(-b + sd) else -b + sd
    return RootKind.TWO_DISTINCT, (
        _normalize_root(t, 2.0 * a),
        _normalize_root(2.0 * c, t),
    )


def _det2(m) -> complex:
    return complex(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def _check_independent(w1, w2, pol):
    g11 = float(np.vdot(w1, w1).real)
    g22 = float(np.vdot(w2, w2).real)
    g12 = complex(np.vdot(w1, w2))
    gram = g11 * g22 - abs(g12) ** 2
    if g11 == 0.0 or g22 == 0.0 or gram <= pol.rank_rel_tol * g11 * g22:
        raise DependentGenerators("the generators are numerically parallel")


def pencil_quadratic(W1, W2) -> tuple[complex, complex, complex]:
    """Coefficients (a, b, c) of ``det(alpha*W1 + beta*W2)``."""
    a = _det2(W1)
    c = _det2(W2)
    b = _det2(np.asarray(W1) + np.asarray(W2)) - a - c
    return a, b, c


def product_roots(W1, W2, pol: TolerancePolicy = DEFAULT_POLICY) -> RootReport:
    """Classify the product directions of span{w1, w2} from the slice pencil.

    An identically vanishing pencil (all three quadratic coefficients below
    tolerance at the spans' scale) means every vector of the span is a
    product vector.
    """
    W1 = np.asarray(W1, dtype=complex)
    W2 = np.asarray(W2, dtype=complex)
    _check_independent(unslice(W1), unslice(W2), pol)
    a, b, c = pencil_quadratic(W1, W2)
    scale = (np.linalg.norm(W1) + np.linalg.norm(W2)) ** 2
    kind, roots = projective_quadratic_roots(
        a, b, c, zero_tol=pol.rank_rel_tol * scale, deg_tol=pol.deg_tol
    )
    return RootReport(kind=kind, roots=roots)


def product_factors(w, pol: TolerancePolicy = DEFAULT_POLICY) -> tuple[np.ndarray, np.ndarray]:
    """Split a (near-)product 4-vector as a (x) b with a of unit norm."""
    S = slice_matrix(w)
    res = svd(S)
    b = res.sigma[0] * res.V[:, 0]
    a = res.W[:, 0].conj()
    return a, b


def orthogonal_complement(v) -> np.ndarray:
    """Unit vector orthogonal to a nonzero 2-vector."""
    v = np.asarray(v, dtype=complex)
    out = np.array([-np.conj(v[1]), np.conj(v[0])])
    n = np.linalg.norm(out)
    if n == 0.0:
        raise ZeroVector("cannot complement the zero vector")
    return out / n


def _overlap(x, y) -> float:
    nx = np.linalg.norm(x)
    ny = np.linalg.norm(y)
    if nx == 0.0 or ny == 0.0:
        return 0.0
    return float(abs(np.vdot(x, y)) / (nx * ny))


def classify_line(w, pol: TolerancePolicy = DEFAULT_POLICY) -> SubspaceStructure:
    """Name a one-dimensional subspace: product line or entangled line."""
    v = np.asarray(w, dtype=complex).reshape(-1)
    if v.size != 4:
        raise DimensionMismatch(f"expected a 4-vector, got length {v.size}")
    if np.abs(v).max() == 0.0:
        raise ZeroVector("the zero vector spans no line")
    rank = numerical_rank(svd(slice_matrix(v)).sigma, pol)
    if rank == 1:
        return SubspaceStructure(tag=StructureTag.PRODUCT_LINE, witnesses=(v.copy(),))
    return SubspaceStructure(tag=StructureTag.ENTANGLED_LINE)


def classify_span(w1, w2, pol: TolerancePolicy = DEFAULT_POLICY) -> SubspaceStructure:
    """Name the structure of span{w1, w2} and return its witnesses.

    When the pencil vanishes identically the span is a full factor space;
    the side of the common factor is read off by comparing the factors of
    three sample product vectors (w1, w2, w1 + w2).
    """
    v1 = np.asarray(w1, dtype=complex).reshape(-1)
    v2 = np.asarray(w2, dtype=complex).reshape(-1)
    report = product_roots(slice_matrix(v1), slice_matrix(v2), pol)

    if report.kind is RootKind.INFINITELY_MANY:
        samples = (v1, v2, v1 + v2)
        factors = [product_factors(s, pol) for s in samples]
        lefts = [f[0] for f in factors]
        rights = [f[1] for f in factors]
        left_common = min(_overlap(lefts[0], lefts[1]), _overlap(lefts[0], lefts[2]))
        right_common = min(_overlap(rights[0], rights[1]), _overlap(rights[0], rights[2]))
        if left_common >= 1.0 - pol.deg_tol and left_common >= right_common:
            return SubspaceStructure(tag=StructureTag.LEFT_FACTOR, factor=lefts[0].copy())
        if right_common >= 1.0 - pol.deg_tol:
            common = rights[0] / np.linalg.norm(rights[0])
            return SubspaceStructure(tag=StructureTag.RIGHT_FACTOR, factor=common)
        raise ToleranceBreakdown(
            "pencil vanishes identically but neither factor is shared"
        )

    witnesses = tuple(alpha * v1 + beta * v2 for alpha, beta in report.roots)
    if report.kind is RootKind.TWO_DISTINCT:
        return SubspaceStructure(tag=StructureTag.TWO_PRODUCTS, witnesses=witnesses)
    return SubspaceStructure(
        tag=StructureTag.ONE_PRODUCT_PLUS_ENTANGLED, witnesses=witnesses
    )


@dataclass(frozen=True)
class AdaptedSpanBasis:
    """Adapted generators of a one-product span{a (x) b, a (x) b' + a' (x) b}.

    ``leak`` is the relative coordinate of the span on the forbidden
    direction a' (x) b'; it vanishes exactly when only one product direction
    exists.
    """

    left: np.ndarray
    right: np.ndarray
    left_comp: np.ndarray
    right_comp: np.ndarray
    entangled: np.ndarray
    leak: float


def one_product_span_basis(
    w1, w2, witness, pol: TolerancePolicy = DEFAULT_POLICY
) -> AdaptedSpanBasis:
    """Adapted basis of a OneProductPlusEntangled span around its witness.

    Projects the span's complement of the witness onto the product basis
    built from the witness factors and their orthogonal complements; the
    component on (left_comp (x) right_comp) must vanish, and the remaining
    two cross coordinates are folded into the complements so the entangled
    generator takes the symmetric form a (x) b' + a' (x) b.
    """
    v1 = np.asarray(w1, dtype=complex).reshape(-1)
    v2 = np.asarray(w2, dtype=complex).reshape(-1)
    g = np.asarray(witness, dtype=complex).reshape(-1)
    ng = np.linalg.norm(g)
    if ng == 0.0:
        raise ZeroVector("witness must be nonzero")
    ghat = g / ng
    a, b = product_factors(g, pol)
    b = b / np.linalg.norm(b)
    a_perp = orthogonal_complement(a)
    b_perp = orthogonal_complement(b)

    h1 = v1 - np.vdot(ghat, v1) * ghat
    h2 = v2 - np.vdot(ghat, v2) * ghat
    h = h1 if np.linalg.norm(h1) >= np.linalg.norm(h2) else h2
    nh = np.linalg.norm(h)
    if nh == 0.0:
        raise DependentGenerators("span collapses onto the witness")

    basis = {
        (0, 0): np.kron(a, b),
        (0, 1): np.kron(a, b_perp),
        (1, 0): np.kron(a_perp, b),
        (1, 1): np.kron(a_perp, b_perp),
    }
    beta = {key: complex(np.vdot(vec, h)) for key, vec in basis.items()}
    leak = abs(beta[(1, 1)]) / nh
    if abs(beta[(0, 1)]) <= _EPS * nh or abs(beta[(1, 0)]) <= _EPS * nh:
        raise ToleranceBreakdown(
            "complement of the witness has no cross component; span is not of one-product type"
        )
    right_comp = beta[(0, 1)] * b_perp
    left_comp = beta[(1, 0)] * a_perp
    entangled = np.kron(a, right_comp) + np.kron(left_comp, b)
    return AdaptedSpanBasis(
        left=a,
        right=b,
        left_comp=left_comp,
        right_comp=right_comp,
        entangled=entangled,
        leak=float(leak),
    )
