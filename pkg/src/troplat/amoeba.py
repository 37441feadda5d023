"""Sampled amoebas of lattices and their distance to the tropical complex.

For ``0 < t < 1`` the amoeba is the image of ``{y A(t) : y in D^r}`` under
``Log_t(z) = (log|z_1| / log t, ..., log|z_n| / log t)``, where ``D`` is the
closed unit disk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entropy import LatticeMatrix
from .errors import NotMemberError

ZERO_GUARD = 1e-300


def evaluate_matrix(A, t: float) -> np.ndarray:
    A = LatticeMatrix.coerce(A)
    return np.array([[a.evaluate(t) for a in row] for row in A.rows], dtype=complex)


def _check_t(t):
    if not 0 < t < 1:
        raise ValueError(f"t must lie in (0, 1), got {t}")


def log_t_image(A, t: float, y) -> tuple | None:
    """``Log_t(y A(t))``, or ``None`` when some coordinate vanishes numerically."""
    _check_t(t)
    z = np.asarray(y, dtype=complex) @ evaluate_matrix(A, t)
    mod = np.abs(z)
    if (mod < ZERO_GUARD).any():
        return None
    return tuple(float(v) for v in np.log(mod) / math.log(t))


@dataclass(frozen=True)
class AmoebaCloud:
    t: float
    points: np.ndarray  # shape (k, n)
    count: int
    seed: int

    @property
    def lam(self) -> float:
        return -math.log(self.t)


def uniform_disk(rng: np.random.Generator, shape) -> np.ndarray:
    """Independent uniform points of the closed unit disk by rejection from the square."""
    size = int(np.prod(shape))
    out = np.empty(size, dtype=complex)
    filled = 0
    while filled < size:
        m = 2 * (size - filled) + 16
        z = rng.uniform(-1, 1, m) + 1j * rng.uniform(-1, 1, m)
        z = z[np.abs(z) <= 1][: size - filled]
        out[filled : filled + len(z)] = z
        filled += len(z)
    return out.reshape(shape)


def sample_amoeba(A, t: float, count: int, seed: int = 0) -> AmoebaCloud:
    """``count`` draws of ``y`` uniform on ``D^r``; draws hitting a coordinate zero are dropped."""
    _check_t(t)
    M = evaluate_matrix(A, t)
    rng = np.random.default_rng(seed)
    if count == 0:
        return AmoebaCloud(t, np.zeros((0, M.shape[1])), 0, seed)
    Y = uniform_disk(rng, (count, M.shape[0]))
    mod = np.abs(Y @ M)
    keep = (mod >= ZERO_GUARD).all(axis=1)
    pts = np.log(mod[keep]) / math.log(t)
    return AmoebaCloud(t, pts, count, seed)


def shear_region_violation(points: np.ndarray, lam: float) -> float:
    """Largest violation of the closed-form region for ``A = [[1, 1], [0, t]]`` with ``t = e^-lam``.

    The region is ``x >= 0``, ``y >= x - log(1 + e^{lam(x-1)}) / lam`` and,
    for ``x < 1``, ``y <= x - log(1 - e^{lam(x-1)}) / lam``.
    """
    if len(points) == 0:
        return 0.0
    x, y = points[:, 0], points[:, 1]
    worst = np.maximum(-x, 0.0)
    lower = x - np.logaddexp(0.0, lam * (x - 1)) / lam
    worst = np.maximum(worst, lower - y)
    inside = x < 1
    with np.errstate(divide="ignore", invalid="ignore"):
        upper = x - np.log1p(-np.exp(lam * (x - 1))) / lam
    worst = np.where(inside, np.maximum(worst, y - upper), worst)
    return float(worst.max())


@dataclass(frozen=True)
class _AffinePiece:
    """A cell as ``{x : E x = b, G x <= g}`` together with the orthogonal projection onto ``E x = b``."""

    P: np.ndarray
    q: np.ndarray
    G: np.ndarray
    g: np.ndarray


def _piece(cell) -> _AffinePiece:
    P_h = cell.hrep
    n = P_h.n
    E = np.array([[float(a) for a in row] for row, _ in P_h.equalities]).reshape(-1, n)
    b = np.array([float(v) for _, v in P_h.equalities])
    G = np.array([[float(a) for a in row] for row, _ in P_h.inequalities]).reshape(-1, n)
    g = np.array([float(v) for _, v in P_h.inequalities])
    if len(E):
        pinv = np.linalg.pinv(E)
        P = np.eye(n) - pinv @ E
        q = pinv @ b
    else:
        P, q = np.eye(n), np.zeros(n)
    return _AffinePiece(P, q, G, g)


def distance_to_sigma(cloud, sigma, tol: float = 1e-9) -> float:
    """One-sided distance ``max_point min_cell dist`` from the cloud to the support of Sigma.

    Every point of a closed Sigma cell lies in the relative interior of some
    Sigma cell, because Sigma is closed under faces. So the distance to the
    support is the least distance to an affine hull whose foot point lies in
    the corresponding cell.
    """
    pts = cloud.points if isinstance(cloud, AmoebaCloud) else np.asarray(cloud, dtype=float)
    return float(point_distances(pts, sigma, tol).max()) if len(pts) else 0.0


def point_distances(pts: np.ndarray, sigma, tol: float = 1e-9) -> np.ndarray:
    cells = sigma.sigma_cells()
    if not cells:
        raise NotMemberError("Sigma is empty")
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    best = np.full(len(pts), np.inf)
    for cell in cells:
        pc = _piece(cell)
        foot = pts @ pc.P.T + pc.q
        if len(pc.G):
            ok = (foot @ pc.G.T <= pc.g + tol).all(axis=1)
        else:
            ok = np.ones(len(pts), dtype=bool)
        d = np.linalg.norm(pts - foot, axis=1)
        best = np.where(ok, np.minimum(best, d), best)
    return best
