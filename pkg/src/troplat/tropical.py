"""Entropy polynomial, pointwise membership, generators and reconstruction.

Tropical arithmetic is (min, +): ``x (+) y`` is the componentwise minimum and
``lam (.) x`` adds ``lam`` to every coordinate. ``math.inf`` is the neutral
element of ``(+)`` and absorbs under ``(.)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .entropy import EntropyVector
from .errors import NegativeScalarError, NonFiniteError, NotMemberError
from .series import INF, ext, is_finite
from .subsets import elements, from_elements, full, popcount


def _finite_point(v) -> tuple:
    pt = tuple(ext(x) for x in v)
    for j, x in enumerate(pt):
        if not is_finite(x):
            raise NonFiniteError(f"coordinate {j + 1} is not finite", coordinate=j + 1)
    return pt


def subset_sum(v, mask: int):
    return sum((v[j] for j in elements(mask)), Fraction(0))


def _monomial_values(h: EntropyVector, v) -> dict[int, Fraction]:
    return {J: subset_sum(v, J) - h[J] for J in h.finite_masks()}


def phi_eval(h: EntropyVector, v) -> tuple[Fraction, tuple]:
    """``max_J (v_J - h_J)`` over finite ``h_J`` and the sorted tuple of maximising ``J``."""
    v = _finite_point(v)
    if len(v) != h.n:
        raise ValueError(f"point has {len(v)} coordinates, expected {h.n}")
    vals = _monomial_values(h, v)
    best = max(vals.values())
    return best, tuple(sorted(J for J, x in vals.items() if x == best))


active_set = phi_eval


def phi(h: EntropyVector, v) -> Fraction:
    return phi_eval(h, v)[0]


def union_of(masks) -> int:
    out = 0
    for m in masks:
        out |= m
    return out


def is_member(h: EntropyVector, v) -> bool:
    """Is ``v`` in the support of Sigma: do the active subsets cover [n]?"""
    _, act = phi_eval(h, v)
    return union_of(act) == full(h.n)


def small_step(h: EntropyVector, v) -> Fraction:
    """Half the smallest positive gap between distinct monomial values at ``v``."""
    vals = sorted(set(_monomial_values(h, _finite_point(v)).values()))
    gaps = [b - a for a, b in zip(vals, vals[1:])]
    return min(gaps) / 2 if gaps else Fraction(1)


def directional_member(h: EntropyVector, v, t=None) -> bool:
    """``phi(v + t e_j) = phi(v) + t`` for every coordinate ``j`` and small ``t > 0``."""
    v = _finite_point(v)
    t = small_step(h, v) if t is None else Fraction(t)
    base = phi(h, v)
    for j in range(h.n):
        w = list(v)
        w[j] += t
        if phi(h, w) != base + t:
            return False
    return True


def generators(h: EntropyVector) -> dict[int, tuple]:
    """``u_J`` for every proper ``J`` with finite ``h_J``: ``h_{J+j} - h_J`` off ``J``, ``inf`` on ``J``."""
    n = h.n
    out = {}
    for J in h.finite_masks():
        if J == full(n):
            continue
        out[J] = tuple(INF if J >> j & 1 else h[J | 1 << j] - h[J] for j in range(n))
    return out


def trop_add(x, y) -> tuple:
    if len(x) != len(y):
        raise ValueError("points of different lengths")
    return tuple(min(ext(a), ext(b)) for a, b in zip(x, y))


def trop_scale(lam, x) -> tuple:
    lam = ext(lam)
    if lam < 0:
        raise NegativeScalarError(f"scalar {lam} is negative")
    return tuple(lam + ext(a) for a in x)


def trop_sum(points, n: int) -> tuple:
    out = (INF,) * n
    for p in points:
        out = trop_add(out, p)
    return out


@dataclass(frozen=True)
class Reconstruction:
    lambdas: dict
    recombined: tuple
    ok: bool
    bad_coordinate: int | None = None


def reconstruct(h: EntropyVector, x) -> Reconstruction:
    """Coefficients ``lam_J = phi(x) + h_J - x_J`` and the check ``x = (+)_J lam_J (.) u_J``."""
    x = _finite_point(x)
    if not is_member(h, x):
        raise NotMemberError(f"{[str(c) for c in x]} is not in the support of Sigma")
    value = phi(h, x)
    gens = generators(h)
    lambdas = {J: value + h[J] - subset_sum(x, J) for J in gens}
    combo = trop_sum((trop_scale(lam, gens[J]) for J, lam in lambdas.items()), h.n)
    bad = next((j for j in range(h.n) if combo[j] != x[j]), None)
    return Reconstruction(lambdas, combo, bad is None, bad)


def span_coefficients(h: EntropyVector, x) -> dict[int, object]:
    """Largest ``mu_J >= 0`` with ``mu_J (.) u_J >= x`` componentwise (``inf`` if none exists)."""
    x = tuple(ext(c) for c in x)
    out = {}
    for J, u in generators(h).items():
        mu = Fraction(0)
        for xj, uj in zip(x, u):
            if uj == INF:
                continue
            if xj == INF:
                mu = INF
                break
            mu = max(mu, xj - uj)
        out[J] = mu
    return out


def in_span(h: EntropyVector, x) -> bool:
    """Is ``x`` (possibly with ``inf`` coordinates) a non-negative tropical combination of the ``u_J``?"""
    x = tuple(ext(c) for c in x)
    gens = generators(h)
    mus = span_coefficients(h, x)
    combo = trop_sum((trop_scale(mu, gens[J]) for J, mu in mus.items() if mu != INF), h.n)
    return combo == x


def plucker_from_entropy(h: EntropyVector, r: int | None = None) -> dict[int, object]:
    """Restriction of ``h`` to the ``r``-subsets of [n]."""
    r = h.rank if r is None else r
    return {J: h[J] for J in range(1 << h.n) if popcount(J) == r}


def trop_linear_member(p: dict, w, n: int | None = None) -> bool:
    """Circuit test: for each (r+1)-subset ``S`` the minimum of ``p(S - j) + w_j`` is attained twice."""
    if not p:
        raise ValueError("empty Pluecker vector")
    r = popcount(next(iter(p)))
    n = len(w) if n is None else n
    w = tuple(ext(c) for c in w)
    for S in combinations(range(n), r + 1):
        mask = from_elements(S)
        terms = [ext(p.get(mask & ~(1 << j), INF)) + w[j] for j in S]
        m = min(terms)
        if m != INF and terms.count(m) < 2:
            return False
    return True


def projects_into_sigma(h: EntropyVector, w) -> bool:
    """Is ``w + L*1`` in the support of Sigma for all large ``L``?

    For large ``L`` only the monomials of top cardinality stay maximal, so the
    test reduces to the active ``r``-subsets of ``w_J - h_J``.
    """
    w = _finite_point(w)
    r = h.rank
    vals = {J: subset_sum(w, J) - h[J] for J in h.finite_masks() if popcount(J) == r}
    best = max(vals.values())
    return union_of(J for J, x in vals.items() if x == best) == full(h.n)
