"""Convex-position decisions with constructive witnesses.

A set is in convex position when every point is a vertex (extreme point) of
its convex hull; points on facets or edges of the hull do not count. A
negative verdict comes with a witness: the offending point together with an
affinely independent subset (at most dim+1 points) of the others whose hull
contains it, from which an obtuse-angle witness can be extracted.

Hull-membership questions are solved by a small dense phase-1 simplex method
on the convex-combination system; problem sizes here are tiny, so no
external solver is used.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateSimplex, NotInHull, NotInterior, OutOfRange
from .geometry import PointSet, angle_at, rays_from

# Barycentric/convex coefficients above -1e-10 count as nonnegative; strict
# interiority requires them above +1e-10.
COEFF_TOL = 1e-10
FEAS_TOL = 1e-9
PIVOT_TOL = 1e-11


@dataclass(frozen=True)
class ConvexPositionVerdict:
    in_convex_position: bool
    witness_point: Optional[np.ndarray] = None
    witness_simplex: Optional[np.ndarray] = None


@dataclass(frozen=True)
class ObtuseWitness:
    vi: np.ndarray
    v: np.ndarray
    vj: np.ndarray
    angle: float


def min_pairwise_dot(W) -> float:
    """Minimum of w_i . w_j over unordered pairs of the given unit vectors."""
    vecs = np.asarray(W, dtype=float)
    if vecs.ndim != 2 or vecs.shape[0] < 2:
        raise OutOfRange("need at least two vectors")
    gram = vecs @ vecs.T
    iu = np.triu_indices(vecs.shape[0], k=1)
    return float(np.min(gram[iu]))


def _phase1_simplex(A: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
    """Find x >= 0 with A x = b, or None if infeasible.

    Dense phase-1 simplex with Bland's rule. The returned x is a basic
    feasible solution, so it has at most rank(A) positive entries whose
    columns of A are linearly independent.
    """
    m, n = A.shape
    A = A.copy()
    b = b.copy()
    # Row equilibration, then sign-flip rows so b >= 0.
    for i in range(m):
        s = max(np.max(np.abs(A[i])), abs(b[i]), 1e-30)
        A[i] /= s
        b[i] /= s
    neg = b < 0
    A[neg] *= -1.0
    b[neg] *= -1.0

    # Tableau columns: [structural | artificial | rhs]; artificial basis.
    T = np.hstack([A, np.eye(m), b[:, None]])
    basis = np.arange(n, n + m)
    cost = np.zeros(n + m)
    cost[n:] = 1.0

    for _ in range(200 * (n + m)):
        # Reduced costs recomputed from the tableau each pivot; at these
        # problem sizes that is cheap and avoids incremental drift.
        art_rows = np.flatnonzero(basis >= n)
        z = cost - T[art_rows, :-1].sum(axis=0)
        in_basis = np.zeros(n + m, dtype=bool)
        in_basis[basis] = True
        candidates = np.flatnonzero(~in_basis & (z < -PIVOT_TOL))
        if candidates.size == 0:
            break
        enter = int(candidates[0])  # Bland's rule: lowest index enters
        col = T[:, enter]
        rows = np.flatnonzero(col > PIVOT_TOL)
        if rows.size == 0:
            return None  # numerically stuck; phase-1 cannot be unbounded
        ratios = T[rows, -1] / col[rows]
        best = np.min(ratios)
        tied = rows[ratios <= best + 1e-15]
        leave = int(tied[np.argmin(basis[tied])])  # Bland: lowest basic index leaves
        T[leave] /= T[leave, enter]
        for i in range(m):
            if i != leave and T[i, enter] != 0.0:
                T[i] -= T[i, enter] * T[leave]
        basis[leave] = enter
    residual = float(sum(max(T[i, -1], 0.0) for i in range(m) if basis[i] >= n))
    if residual > FEAS_TOL:
        return None
    x = np.zeros(n)
    for i, j in enumerate(basis):
        if j < n:
            x[j] = max(float(T[i, -1]), 0.0)
    return x


def _convex_coefficients(p: np.ndarray, S: np.ndarray) -> Optional[np.ndarray]:
    """Coefficients lam >= 0 with sum lam = 1 and S^T lam = p, or None."""
    n = S.shape[0]
    A = np.vstack([S.T, np.ones((1, n))])
    b = np.concatenate([p, [1.0]])
    return _phase1_simplex(A, b)


def _barycentric(p: np.ndarray, V: np.ndarray):
    """Barycentric coordinates of p in the affine frame of V, with residual.

    Returns (coords, residual, rank). V is a (k+1, D) array of simplex
    vertices; coords solves [V^T; 1] c = [p; 1] in least squares.
    """
    A = np.vstack([V.T, np.ones((1, V.shape[0]))])
    b = np.concatenate([p, [1.0]])
    coords, _, rank, _ = np.linalg.lstsq(A, b, rcond=None)
    residual = float(np.linalg.norm(A @ coords - b))
    return coords, residual, int(rank)


def simplex_contains_origin(V, strict: bool = False) -> bool:
    """True when the simplex with vertices V contains the origin.

    V holds k+1 affinely independent points of R^D (k <= D). With strict=True
    the origin must be interior (all barycentric coordinates > tolerance);
    otherwise boundary points count as contained.
    """
    V = np.asarray(V, dtype=float)
    if V.ndim != 2 or V.shape[0] < 2:
        raise OutOfRange("simplex needs at least two vertices")
    k1, D = V.shape
    if k1 > D + 1:
        raise DegenerateSimplex(f"{k1} points cannot be affinely independent in R^{D}")
    scale = max(1.0, float(np.max(np.abs(V))))
    coords, residual, rank = _barycentric(np.zeros(D), V)
    if rank < k1:
        raise DegenerateSimplex("simplex vertices are affinely dependent")
    if residual > FEAS_TOL * scale:
        return False  # origin outside the affine hull
    if strict:
        return bool(np.all(coords > COEFF_TOL))
    return bool(np.all(coords >= -COEFF_TOL))


def caratheodory_decompose(p, S: PointSet) -> np.ndarray:
    """Affinely independent points of S (at most dim+1) whose hull contains p.

    Solves the convex-combination feasibility program; the basic solution's
    support is the simplex, after dropping zero-coefficient points.
    """
    p = np.asarray(p, dtype=float)
    pts = S.points
    lam = _convex_coefficients(p, pts)
    if lam is None:
        raise NotInHull("point is not in the convex hull of the set")
    support = np.flatnonzero(lam > COEFF_TOL)
    if support.size == 0:
        raise NotInHull("feasible solution has empty support")
    simplex = pts[support]
    # Basic solutions keep lifted columns independent; verify and, if float
    # drift produced a dependent support, retry without its weakest member.
    while simplex.shape[0] > 1:
        _, residual, rank = _barycentric(p, simplex)
        if rank == simplex.shape[0] and residual <= FEAS_TOL * max(1.0, np.abs(pts).max()):
            break
        order = np.argsort(lam[support])
        support = np.delete(support, order[0])
        simplex = pts[support]
        lam_r = _convex_coefficients(p, simplex)
        if lam_r is None:
            raise NotInHull("support refinement failed; point may sit outside the hull")
    return simplex


def is_convex_position(A: PointSet) -> ConvexPositionVerdict:
    """Decide whether every point of A is a vertex of conv(A).

    The first point (lowest index) found inside the hull of the others is
    returned as the witness, together with its containing simplex. Points on
    the boundary of the others' hull are counted as inside: they are not
    vertices of conv(A).
    """
    pts = A.points
    n = len(A)
    if n <= 2:
        return ConvexPositionVerdict(True)
    for i in range(n):
        others = np.delete(pts, i, axis=0)
        lam = _convex_coefficients(pts[i], others)
        if lam is not None:
            rest = PointSet(others)
            simplex = caratheodory_decompose(pts[i], rest)
            return ConvexPositionVerdict(
                in_convex_position=False,
                witness_point=pts[i].copy(),
                witness_simplex=simplex,
            )
    return ConvexPositionVerdict(True)


def obtuse_witness(p, simplex) -> ObtuseWitness:
    """Widest-angle pair seen from p among rays to the simplex vertices.

    p must lie strictly inside the simplex (relative interior). For a
    simplex with k+1 affinely independent vertices the returned angle is at
    least arccos(-1/k): some pair of unit rays from an interior point has
    dot product at most -1/k, with equality exactly for the regular
    configuration.
    """
    p = np.asarray(p, dtype=float)
    V = np.asarray(simplex, dtype=float)
    if V.ndim != 2 or V.shape[0] < 2:
        raise DegenerateSimplex("simplex needs at least two vertices")
    coords, residual, rank = _barycentric(p, V)
    if rank < V.shape[0]:
        raise DegenerateSimplex("simplex vertices are affinely dependent")
    scale = max(1.0, float(np.max(np.abs(V))))
    if residual > FEAS_TOL * scale or np.any(coords <= COEFF_TOL):
        raise NotInterior("point is not strictly inside the simplex")
    rays = rays_from(p, PointSet(V))
    gram = rays @ rays.T
    iu, ju = np.triu_indices(V.shape[0], k=1)
    pair = int(np.argmin(gram[iu, ju]))
    a, b = int(iu[pair]), int(ju[pair])
    ang = angle_at(V[a], p, V[b])
    return ObtuseWitness(vi=V[a].copy(), v=p.copy(), vj=V[b].copy(), angle=ang)
