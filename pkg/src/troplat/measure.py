"""Survival functions ``Q(x) = exp(-alpha * phi_h(x))`` and their box masses.

The mass of a box ``[u, v]`` is the signed corner sum
``sum_w (-1)^{#v-coordinates of w} Q(w)``. It is nonnegative for every box
exactly when ``Q`` is the survival function of a measure.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate

from .entropy import EntropyVector
from .errors import SupermodularError, UnknownExampleError
from .series import INF, ext
from .subsets import elements, full, popcount

NUMERIC_ZERO = -1e-12


@dataclass(frozen=True)
class SurvivalSpec:
    h: EntropyVector
    alpha: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if not isinstance(self.h, EntropyVector):
            raise TypeError("h must be an EntropyVector")

    @property
    def n(self):
        return self.h.n


def phi_float(h: EntropyVector, x) -> float:
    """``max_J (x_J - h_J)`` in floating point; ``-inf`` coordinates drop their monomials, ``+inf`` ones dominate."""
    best = -math.inf
    for J in h.finite_masks():
        s = 0.0
        skip = False
        for j in elements(J):
            xj = float(x[j])
            if xj == -math.inf:
                skip = True
                break
            s += xj
        if skip:
            continue
        best = max(best, s - float(h[J]))
    return best


def _is_rational(v) -> bool:
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


def survival_q(s: SurvivalSpec, x) -> float:
    """``exp(-alpha phi_h(x))``; ``phi`` is exact when every coordinate is rational."""
    if len(x) != s.n:
        raise ValueError(f"point has {len(x)} coordinates, expected {s.n}")
    if all(_is_rational(v) for v in x):
        vals = [sum((Fraction(x[j]) for j in elements(J)), Fraction(0)) - s.h[J] for J in s.h.finite_masks()]
        return math.exp(-s.alpha * float(max(vals)))
    return math.exp(-s.alpha * phi_float(s.h, x))


def cube_mass(s: SurvivalSpec, u, v) -> float:
    """Signed corner sum of ``Q`` over the box ``[u, v]`` with compensated summation."""
    if len(u) != s.n or len(v) != s.n:
        raise ValueError("corner vectors must have length n")
    if any(not a < b for a, b in zip(u, v)):
        raise ValueError("need u < v in every coordinate")
    terms = []
    for pick in itertools.product((0, 1), repeat=s.n):
        w = [v[i] if pick[i] else u[i] for i in range(s.n)]
        sign = -1 if sum(pick) % 2 else 1
        terms.append(sign * survival_q(s, w))
    return math.fsum(terms)


@dataclass(frozen=True)
class ScanReport:
    min_mass: float
    cube: tuple
    trials: int
    negative: int

    @property
    def consistent(self) -> bool:
        return self.min_mass >= NUMERIC_ZERO


def _phi_rows(h: EntropyVector, X: np.ndarray) -> np.ndarray:
    """Vectorised ``phi_h`` on the rows of ``X``."""
    n = h.n
    best = np.full(len(X), -np.inf)
    for J in h.finite_masks():
        idx = elements(J)
        s = X[:, idx].sum(axis=1) if idx else np.zeros(len(X))
        best = np.maximum(best, s - float(h[J]))
    return best


def positivity_scan(s: SurvivalSpec, trials: int, box_radius: float, seed: int = 0, denominator: int = 8) -> ScanReport:
    """Random boxes with corners in ``(1/denominator) Z`` inside ``[-R, R]^n``; reports the least mass."""
    rng = np.random.default_rng(seed)
    n = s.n
    R = int(round(box_radius * denominator))
    a = rng.integers(-R, R + 1, size=(trials, n))
    b = rng.integers(-R, R + 1, size=(trials, n))
    b = np.where(a == b, b + 1, b)
    u = np.minimum(a, b) / denominator
    v = np.maximum(a, b) / denominator
    corners = list(itertools.product((0, 1), repeat=n))
    terms = np.empty((trials, len(corners)))
    for k, pick in enumerate(corners):
        W = np.where(np.array(pick, dtype=bool), v, u)
        sign = -1.0 if sum(pick) % 2 else 1.0
        terms[:, k] = sign * np.exp(-s.alpha * _phi_rows(s.h, W))
    masses = np.array([math.fsum(row) for row in terms])
    i = int(masses.argmin())
    return ScanReport(float(masses[i]), (tuple(u[i]), tuple(v[i])), trials, int((masses < NUMERIC_ZERO).sum()))


@dataclass(frozen=True)
class NegativeCube:
    u: tuple
    v: tuple
    mass: float
    predicted: float


def find_negative_cube_n2(h: EntropyVector, alpha: float) -> NegativeCube:
    """Box of negative mass when ``h_12 < h_1 + h_2``.

    After ``x_i -> x_i - h_i`` the singletons vanish and ``h'_12 = h_12 - h_1 - h_2 < 0``;
    the box ``[(h'_12, h'_12), (0, 0)]`` then has mass ``exp(alpha h'_12) - 1``.
    """
    if h.n != 2:
        raise ValueError("expected n = 2")
    h1, h2, h12 = h[1], h[2], h[3]
    if INF in (h1, h2, h12) or not h12 < h1 + h2:
        raise SupermodularError("h is supermodular; no box of negative mass exists")
    d = h12 - h1 - h2
    u = (float(d + h1), float(d + h2))
    v = (float(h1), float(h2))
    s = SurvivalSpec(h, alpha)
    return NegativeCube(u, v, cube_mass(s, u, v), math.expm1(alpha * float(d)))


def local_violations(h: EntropyVector) -> list[tuple[int, int, int]]:
    """Triples ``(I, i, j)`` with ``h_Ii + h_Ij > h_I + h_Iij`` (all four finite)."""
    out = []
    n = h.n
    for I in range(1 << n):
        for i, j in itertools.combinations([k for k in range(n) if not I >> k & 1], 2):
            a, b, c, d = h[I | 1 << i], h[I | 1 << j], h[I], h[I | 1 << i | 1 << j]
            if INF not in (a, b, c, d) and a + b > c + d:
                out.append((I, i, j))
    return out


def find_negative_cube(h: EntropyVector, alpha: float, threshold: float | None = None) -> NegativeCube:
    """Negative box for any non-supermodular ``h`` by conditioning on a local violation.

    For a violation ``(I, i, j)``, coordinates in ``I`` run from a large
    threshold ``A`` to ``+inf``, coordinates outside ``I + {i, j}`` span the
    whole line, and the ``(i, j)`` face is the two-dimensional box for
    ``h'_S = h_{I+S} - h_I``. The mass is ``exp(-alpha(|I| A - h_I))`` times
    the two-dimensional mass, so it is negative but may be tiny.
    """
    viol = local_violations(h)
    if not viol:
        raise SupermodularError("h is supermodular; no box of negative mass exists")
    I, i, j = min(viol, key=lambda t: (popcount(t[0]), t))
    if h.n == 2:
        return find_negative_cube_n2(h, alpha)
    hI = h[I]
    h2 = EntropyVector(2, (Fraction(0), h[I | 1 << i] - hI, h[I | 1 << j] - hI, h[I | 1 << i | 1 << j] - hI))
    base = find_negative_cube_n2(h2, alpha)
    spread = sum(abs(float(x)) for x in h if x != INF) + sum(abs(c) for c in base.u + base.v)
    A = 2 * spread + 1 if threshold is None else threshold
    u, v = [], []
    for k in range(h.n):
        if I >> k & 1:
            u.append(A)
            v.append(math.inf)
        elif k == i:
            u.append(base.u[0] + 0.0)
            v.append(base.v[0])
        elif k == j:
            u.append(base.u[1])
            v.append(base.v[1])
        else:
            u.append(-math.inf)
            v.append(math.inf)
    s = SurvivalSpec(h, alpha)
    mass = cube_mass(s, u, v)
    predicted = math.exp(-alpha * (popcount(I) * A - float(hI))) * base.predicted
    return NegativeCube(tuple(u), tuple(v), mass, predicted)


# -- closed-form projected densities --------------------------------------------

DENSITY_EXAMPLES = ("shear", "identity3", "inverse-powers")


def projected_density(example: str, alpha: float, point) -> float:
    """Continuous part of the projected measure of a named example.

    ``shear``: ``(a e^-a / 2) e^{-a|u|}`` on the line (plus an atom, see :func:`projected_atom`);
    ``identity3``: ``(alpha^2 / 3) exp(-alpha max(u+v, v-2u, u-2v))`` on the plane;
    ``inverse-powers``: ``(alpha / 3) e^{-alpha t}`` at parameter ``t >= 0`` of each ray.
    """
    if example == "shear":
        (u,) = _coords(point, 1)
        return alpha * math.exp(-alpha) / 2 * math.exp(-alpha * abs(u))
    if example == "identity3":
        u, v = _coords(point, 2)
        return alpha**2 / 3 * math.exp(-alpha * max(u + v, v - 2 * u, u - 2 * v))
    if example == "inverse-powers":
        (t,) = _coords(point, 1)
        if t < 0:
            raise ValueError("ray parameter must be nonnegative")
        return alpha / 3 * math.exp(-alpha * t)
    raise UnknownExampleError(f"no closed-form density for {example!r}; choose from {', '.join(DENSITY_EXAMPLES)}")


def projected_atom(example: str, alpha: float) -> float:
    """Mass of the atom at the origin (only ``shear`` has one)."""
    if example == "shear":
        return -math.expm1(-alpha)
    if example in DENSITY_EXAMPLES:
        return 0.0
    raise UnknownExampleError(f"no closed-form density for {example!r}")


def _coords(point, k):
    pt = [float(point)] if np.isscalar(point) else [float(c) for c in point]
    if len(pt) != k:
        raise ValueError(f"expected {k} coordinate(s)")
    return pt


def identity3_total_mass(alpha: float = 1.0, radius: float | None = None) -> float:
    """Numerical integral of the planar density, split along its kinks ``u = 0``, ``v = 0``, ``u = v``."""
    R = 60.0 / alpha if radius is None else radius

    def inner(u):
        pts = sorted({0.0, u})
        return integrate.quad(lambda v: projected_density("identity3", alpha, (u, v)), -R, R, points=pts, limit=200)[0]

    return integrate.quad(inner, -R, R, points=[0.0], limit=200, epsabs=1e-11)[0]


def total_mass(s: SurvivalSpec, radius: float) -> float:
    return cube_mass(s, [-radius] * s.n, [radius] * s.n)


def random_entropy_like(n: int, rng: random.Random, spread: int = 3) -> EntropyVector:
    """Arbitrary finite integer vector with ``h_empty = 0`` (not necessarily supermodular)."""
    vals = [Fraction(0)] + [Fraction(rng.randint(-spread, spread)) for _ in range(full(n))]
    return EntropyVector(n, tuple(vals))
