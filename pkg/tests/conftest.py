"""Shared test fixtures and independent oracle implementations.

Oracles here deliberately avoid the library's vectorized code paths: hull
membership is decided by exhaustive subset enumeration with least-squares
barycentric solves, and maximum angles by a scalar triple loop.
"""

import itertools
import math

import numpy as np

from anglebound.geometry import angle_at


def brute_max_angle(points) -> float:
    """Scalar triple enumeration of the maximum angle (same clamping as angle_at)."""
    pts = np.asarray(points, dtype=float)
    n = pts.shape[0]
    if n <= 2:
        return 0.0
    best = 0.0
    for i, j, k in itertools.permutations(range(n), 3):
        if i < k:  # angle_at is symmetric in the outer points
            best = max(best, angle_at(pts[i], pts[j], pts[k]))
    return best


def oracle_in_hull(p, S, tol: float = 1e-9) -> bool:
    """Exhaustive hull-membership test: some subset of <= D+1 points of S
    admits nonnegative barycentric coordinates for p."""
    p = np.asarray(p, dtype=float)
    S = np.asarray(S, dtype=float)
    n, D = S.shape
    scale = max(1.0, float(np.abs(S).max()), float(np.abs(p).max()))
    for k in range(1, min(n, D + 1) + 1):
        for comb in itertools.combinations(range(n), k):
            V = S[list(comb)]
            A = np.vstack([V.T, np.ones((1, k))])
            b = np.concatenate([p, [1.0]])
            coeffs, _, rank, _ = np.linalg.lstsq(A, b, rcond=None)
            if rank < k:
                continue
            if (np.linalg.norm(A @ coeffs - b) <= tol * scale
                    and np.all(coeffs >= -1e-9)):
                return True
    return False


def oracle_convex_position(points) -> bool:
    pts = np.asarray(points, dtype=float)
    return not any(
        oracle_in_hull(pts[i], np.delete(pts, i, axis=0)) for i in range(len(pts))
    )


def random_rotation(rng: np.random.Generator, dim: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(dim, dim)))
    return q * np.sign(np.diag(r))


def unit_simplex(dim: int) -> np.ndarray:
    """Regular simplex on the unit sphere, built from the centered identity."""
    corners = np.eye(dim + 1) - np.full((dim + 1, dim + 1), 1.0 / (dim + 1))
    u, s, _ = np.linalg.svd(corners)
    pts = u[:, :dim] * s[:dim]
    return pts / np.linalg.norm(pts, axis=1)[:, None]


def sample_simplex_with_interior_origin(rng: np.random.Generator, d: int) -> np.ndarray:
    """d+1 points in R^d forming a simplex with the origin strictly interior.

    v_0 = -sum(lam_i v_i) with lam_i > 0 makes the origin a strictly positive
    convex combination of the vertices.
    """
    while True:
        V = rng.normal(size=(d, d))
        lam = rng.exponential(size=d) + 0.05
        v0 = -(lam[:, None] * V).sum(axis=0)
        pts = np.vstack([v0, V])
        A = np.vstack([pts.T, np.ones((1, d + 1))])
        if np.linalg.matrix_rank(A) == d + 1 and np.min(np.linalg.norm(pts, axis=1)) > 1e-6:
            return pts


def sample_cap_points(rng: np.random.Generator, ambient: int, n: int,
                      cap_radius: float) -> np.ndarray:
    """n unit vectors within angular distance cap_radius of a random center."""
    center = rng.normal(size=ambient)
    center /= np.linalg.norm(center)
    out = np.empty((n, ambient))
    for i in range(n):
        t = rng.normal(size=ambient)
        t -= (t @ center) * center
        t /= np.linalg.norm(t)
        r = cap_radius * rng.random()
        out[i] = math.cos(r) * center + math.sin(r) * t
    return out


def planar_interior_angles(polygon: np.ndarray) -> np.ndarray:
    """Interior angle at each vertex of a convex polygon given in order."""
    n = polygon.shape[0]
    return np.array([
        angle_at(polygon[(i - 1) % n], polygon[i], polygon[(i + 1) % n])
        for i in range(n)
    ])
