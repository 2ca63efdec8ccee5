"""Floating-point primitives for angles, point sets, and rays.

Angles are radians throughout. Points and vectors are 1-D numpy arrays of
float64; a PointSet wraps an (n, dim) array and validates it once at
construction so downstream code can trust the invariants.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateTriple, OutOfRange

# Points closer than this are considered coincident; normalized directions
# between them would be numerically meaningless.
DISTINCTNESS_TOL = 1e-9

UNIT_NORM_TOL = 1e-12


def _as_point(x) -> np.ndarray:
    p = np.asarray(x, dtype=float)
    if p.ndim != 1 or p.size < 1:
        raise OutOfRange(f"point must be a 1-D coordinate vector, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise OutOfRange("point has non-finite coordinates")
    return p


@dataclass(frozen=True)
class PointSet:
    """Ordered list of pairwise-distinct points sharing one ambient dimension."""

    points: np.ndarray
    dim: int = field(init=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise OutOfRange(f"expected an (n, dim) array with n, dim >= 1, got {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise OutOfRange("point set has non-finite coordinates")
        n = pts.shape[0]
        if n > 1:
            d2 = np.sum((pts[:, None, :] - pts[None, :, :]) ** 2, axis=-1)
            iu = np.triu_indices(n, k=1)
            if np.min(d2[iu]) <= DISTINCTNESS_TOL**2:
                i, j = map(int, np.unravel_index(int(np.argmin(np.where(
                    np.eye(n, dtype=bool), np.inf, d2))), d2.shape))
                raise OutOfRange(
                    f"points {i} and {j} are closer than {DISTINCTNESS_TOL}"
                )
        pts = pts.copy()
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "dim", int(pts.shape[1]))

    def __len__(self) -> int:
        return int(self.points.shape[0])

    @classmethod
    def from_rows(cls, rows) -> "PointSet":
        return cls(np.asarray(rows, dtype=float))


def as_unit(v) -> np.ndarray:
    """Validate that v is a unit vector (norm within tolerance of 1)."""
    u = _as_point(v)
    if abs(np.linalg.norm(u) - 1.0) > UNIT_NORM_TOL:
        raise OutOfRange(f"vector has norm {np.linalg.norm(u):.12g}, expected 1")
    return u


def normalize(v) -> np.ndarray:
    v = _as_point(v)
    nrm = float(np.linalg.norm(v))
    if nrm <= DISTINCTNESS_TOL:
        raise DegenerateTriple("cannot normalize a (near-)zero vector")
    return v / nrm


def angle_at(x, y, z) -> float:
    """Angle in [0, pi] at vertex y between rays toward x and z.

    Symmetric in x and z. The normalized dot product is clamped to [-1, 1]
    before arccos to absorb floating-point overshoot near 0 and pi.
    """
    x, y, z = _as_point(x), _as_point(y), _as_point(z)
    u = x - y
    v = z - y
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu <= DISTINCTNESS_TOL or nv <= DISTINCTNESS_TOL:
        raise DegenerateTriple("angle vertex coincides with one of its ray endpoints")
    c = float(np.dot(u, v)) / (nu * nv)
    return float(np.arccos(min(1.0, max(-1.0, c))))


def max_angle_triple(points: np.ndarray) -> tuple[float, tuple[int, int, int]]:
    """Return (max angle, (i, j, k)) over all triples with vertex j.

    Direct O(n^3 * dim) scan, vectorized per vertex; the winning triple's
    angle is recomputed with angle_at so the result is bit-identical to a
    scalar triple enumeration. For n <= 2 there is no triple and the result
    is (0.0, (-1, -1, -1)).
    """
    pts = np.asarray(points, dtype=float)
    n = pts.shape[0]
    if n <= 2:
        return 0.0, (-1, -1, -1)
    best = -1.0
    best_triple = (-1, -1, -1)
    idx = np.arange(n)
    for j in range(n):
        others = idx[idx != j]
        rays = pts[others] - pts[j]
        norms = np.linalg.norm(rays, axis=1)
        rays = rays / norms[:, None]
        gram = rays @ rays.T
        np.fill_diagonal(gram, 1.0)
        flat = int(np.argmin(gram))
        a, b = divmod(flat, gram.shape[0])
        c = float(gram[a, b])
        ang = float(np.arccos(min(1.0, max(-1.0, c))))
        if ang > best:
            best = ang
            best_triple = (int(others[a]), j, int(others[b]))
    i, j, k = best_triple
    return angle_at(pts[i], pts[j], pts[k]), best_triple


def max_angle(A: PointSet) -> float:
    """Largest angle formed at any point of A by two others; 0 if |A| <= 2."""
    return max_angle_triple(A.points)[0]


def geodesic_diameter(H) -> float:
    """Max pairwise angular distance arccos(u . v) over unit vectors H; 0 for a singleton."""
    vecs = np.asarray([as_unit(h) for h in np.asarray(H, dtype=float)])
    m = vecs.shape[0]
    if m < 1:
        raise OutOfRange("need at least one unit vector")
    if m == 1:
        return 0.0
    gram = vecs @ vecs.T
    iu = np.triu_indices(m, k=1)
    c = float(np.min(gram[iu]))
    return float(np.arccos(min(1.0, max(-1.0, c))))


def rays_from(apex, A: PointSet) -> np.ndarray:
    """Unit vectors from apex toward each point of A, order preserved.

    Raises DegenerateTriple if the apex coincides with a point of A.
    """
    apex = _as_point(apex)
    if apex.shape[0] != A.dim:
        raise OutOfRange("apex dimension does not match point set")
    diffs = A.points - apex[None, :]
    norms = np.linalg.norm(diffs, axis=1)
    if np.any(norms <= DISTINCTNESS_TOL):
        raise DegenerateTriple("apex coincides with a point of the set")
    return diffs / norms[:, None]
