"""Independent checks on lattices: random lattice points, generator witnesses
and a finite-field sampler for the survival function.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .entropy import LatticeMatrix, entropy_vector, minor_determinants
from .errors import BadPrimeError, RankError, RetryBudgetError, TruncationError
from .series import INF, ONE, ZERO, PuiseuxPoly, ext
from .subsets import elements
from .tropical import generators, phi

MAX_RETRIES = 100


@dataclass(frozen=True)
class SampleConfig:
    """Random ``y in O_K^r``: each entry has up to ``support_size`` terms with
    exponents in ``{0, 1/N, ..., max_exponent}`` and coefficients in ``+-{1..pool}``."""

    seed: int = 0
    trials: int = 100
    pool: int = 1000
    support_size: int = 3
    exponent_denominator: int = 1
    max_exponent: int = 4

    def __post_init__(self):
        if self.pool < 1 or self.trials < 1 or self.support_size < 1:
            raise ValueError("pool, trials and support_size must be positive")


@dataclass(frozen=True)
class FfConfig:
    prime: int = 101
    trunc: int = 10
    exponent_denominator: int = 1
    trials: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if self.prime < 2 or any(self.prime % d == 0 for d in range(2, math.isqrt(self.prime) + 1)):
            raise BadPrimeError(f"{self.prime} is not prime", prime=self.prime)
        if self.trunc < 1:
            raise ValueError("truncation must be at least 1")


def _coefficient(rng: random.Random, pool: int) -> int:
    c = rng.randint(1, pool)
    return c if rng.random() < 0.5 else -c


def random_series(rng: random.Random, cfg: SampleConfig) -> PuiseuxPoly:
    N = cfg.exponent_denominator
    slots = cfg.max_exponent * N + 1
    k = rng.randint(1, min(cfg.support_size, slots))
    exps = rng.sample(range(slots), k)
    return PuiseuxPoly({Fraction(e, N): _coefficient(rng, cfg.pool) for e in exps})


def valuation(x) -> tuple:
    return tuple(c.val() for c in x)


def sample_lattice_valuation(A, cfg: SampleConfig = SampleConfig()) -> list[tuple]:
    """Valuations ``val(y A)`` of random lattice points with all coordinates nonzero."""
    A = LatticeMatrix.coerce(A)
    rng = random.Random(cfg.seed)
    out = []
    for _ in range(cfg.trials):
        for _attempt in range(MAX_RETRIES):
            y = [random_series(rng, cfg) for _ in range(A.r)]
            v = valuation(A.row_combination(y))
            if INF not in v:
                out.append(v)
                break
        else:
            raise RetryBudgetError(f"no lattice point off the coordinate hyperplanes in {MAX_RETRIES} draws")
    return out


@dataclass(frozen=True)
class HermiteForm:
    matrix: LatticeMatrix
    pivots: tuple  # exponents alpha_i of the diagonal entries


def hermite_reduce(A, J) -> HermiteForm:
    """Row-reduce over ``O_K`` so the columns ``J`` (in the given order) are upper triangular.

    With pivot ``a_kc = t^alpha u`` (``u`` a unit), row ``i`` below becomes
    ``u row_i - (a_ic t^-alpha) row_k``. Both multipliers lie in ``O_K`` and
    the first is a unit, so the lattice is unchanged and no series inverse is
    ever needed.
    """
    A = LatticeMatrix.coerce(A)
    cols = elements(J) if isinstance(J, int) else list(J)
    if len(cols) > A.r:
        raise RankError(f"{len(cols)} columns exceed the rank {A.r}")
    rows = [list(r) for r in A.rows]
    alphas = []
    for k, c in enumerate(cols):
        cand = [(rows[i][c].val(), i) for i in range(k, A.r) if rows[i][c]]
        if not cand:
            raise RankError(f"columns {[j + 1 for j in cols]} are rank deficient", columns=[j + 1 for j in cols])
        alpha, p = min(cand)
        rows[k], rows[p] = rows[p], rows[k]
        unit = rows[k][c].shift(-alpha)
        for i in range(k + 1, A.r):
            a = rows[i][c]
            if not a:
                continue
            m = a.shift(-alpha)
            rows[i] = [unit * x - m * y for x, y in zip(rows[i], rows[k])]
        alphas.append(alpha)
    return HermiteForm(LatticeMatrix(rows, label=A.label, check=False), tuple(alphas))


def witness_for_generator(A, J: int, cfg: SampleConfig = SampleConfig(), h=None) -> tuple:
    """A lattice element ``x`` with ``val(x) = u_J``: ``x_j = 0`` on ``J`` and ``val x_j = h_{Jj} - h_J`` off it."""
    A = LatticeMatrix.coerce(A)
    h = entropy_vector(A) if h is None else h
    if h[J] == INF:
        raise ValueError("h_J is infinite")
    target = generators(h)[J]
    form = hermite_reduce(A, J)
    d = len(elements(J))
    rest = form.matrix.rows[d:]
    rng = random.Random(cfg.seed)
    for _ in range(MAX_RETRIES):
        x = [ZERO] * A.n
        for row in rest:
            c = PuiseuxPoly.constant(_coefficient(rng, cfg.pool))
            x = [xi + c * a for xi, a in zip(x, row)]
        if valuation(x) == target:
            return tuple(x)
    raise RetryBudgetError(f"no generic combination reached {target} in {MAX_RETRIES} draws")


# -- finite fields -------------------------------------------------------------


def _mod_p(c: Fraction, p: int) -> int:
    if c.denominator % p == 0:
        raise BadPrimeError(f"coefficient {c} has denominator divisible by {p}", prime=p)
    return c.numerator * pow(c.denominator, -1, p) % p


def _reduce(f: PuiseuxPoly, p: int) -> dict:
    out = {}
    for e, c in f.items():
        r = _mod_p(c, p)
        if r:
            out[e] = r
    return out


def entropy_mod_p(A, p: int):
    """Entropy vector of the lattice spanned by ``A`` reduced modulo ``p``."""
    from .entropy import EntropyVector

    A = LatticeMatrix.coerce(A)
    for row in A.rows:
        for a in row:
            _reduce(a, p)
    vals = [INF] * (1 << A.n)
    for (I, J), d in minor_determinants(A).items():
        red = _reduce(d, p)
        if red:
            vals[J] = min(vals[J], min(red))
    vals[0] = Fraction(0)
    return EntropyVector(A.n, tuple(vals))


class _FfColumns:
    """Column ``j`` of ``A`` over ``F_p`` with exponents in units of ``1/N``, as (row, exponent, coeff) triples."""

    def __init__(self, A: LatticeMatrix, p: int, N: int):
        self.cols = []
        for j in range(A.n):
            terms = []
            for i in range(A.r):
                for e, c in _reduce(A.rows[i][j], p).items():
                    s = e * N
                    if s.denominator != 1:
                        raise ValueError(f"exponent {e} is not in (1/{N})Z")
                    terms.append((i, int(s), c))
            if not terms:
                raise BadPrimeError(f"column {j + 1} vanishes modulo {p}", prime=p)
            self.cols.append(terms)
        self.p, self.N, self.r = p, N, A.r

    def min_exponent(self, j):
        return min(s for _, s, _ in self.cols[j])

    def coefficients(self, Y: np.ndarray, j: int, lo: int, hi: int) -> np.ndarray:
        """Coefficients of ``s^lo .. s^(hi-1)`` in ``(y A)_j`` for each row of ``Y`` (shape trials x r x T)."""
        T = Y.shape[2]
        out = np.zeros((Y.shape[0], max(hi - lo, 0)), dtype=np.int64)
        for i, a, c in self.cols[j]:
            for e in range(lo, hi):
                k = e - a
                if 0 <= k < T:
                    out[:, e - lo] += c * Y[:, i, k]
            out %= self.p
        return out


def required_truncation(A, v, N: int = 1) -> int:
    """Least ``T`` for which ``val(yA) >= v`` is decided by ``y mod s^T`` (``s = t^(1/N)``)."""
    A = LatticeMatrix.coerce(A)
    need = 1
    for j in range(A.n):
        lo = min(int(e * N) for i in range(A.r) for e in A.rows[i][j].terms)
        need = max(need, math.ceil(ext(v[j]) * N) - lo)
    return need


@dataclass(frozen=True)
class SurvivalEstimate:
    empirical: float
    exact: float
    hits: int
    trials: int

    @property
    def sigma(self) -> float:
        return math.sqrt(self.exact * (1 - self.exact) / self.trials)

    def within(self, k: float = 3.0) -> bool:
        return abs(self.empirical - self.exact) <= k * self.sigma


def _draw(rng: np.random.Generator, trials: int, r: int, T: int, p: int) -> np.ndarray:
    return rng.integers(0, p, size=(trials, r, T), dtype=np.int64)


def ff_survival(A, v, cfg: FfConfig = FfConfig(), chunk: int = 20_000) -> SurvivalEstimate:
    """Fraction of uniform ``y in (F_p[[s]]/s^T)^r`` with ``val(yA) >= v``, against ``p^(-N phi(v))``."""
    A = LatticeMatrix.coerce(A)
    p, N, T = cfg.prime, cfg.exponent_denominator, cfg.trunc
    cols = _FfColumns(A, p, N)
    h = entropy_mod_p(A, p)
    v = tuple(ext(x) for x in v)
    need = required_truncation(A, v, N)
    if T < need:
        raise TruncationError(f"truncation {T} cannot certify val >= v; need at least {need}", needed=need)
    exact = float(p) ** (-N * float(phi(h, v)))
    rng = np.random.default_rng(cfg.seed)
    hits = 0
    done = 0
    while done < cfg.trials:
        m = min(chunk, cfg.trials - done)
        Y = _draw(rng, m, A.r, T, p)
        ok = np.ones(m, dtype=bool)
        for j in range(A.n):
            lo = cols.min_exponent(j)
            hi = math.ceil(v[j] * N)
            if hi > lo:
                ok &= ~cols.coefficients(Y, j, lo, hi).any(axis=1)
        hits += int(ok.sum())
        done += m
    return SurvivalEstimate(hits / cfg.trials, exact, hits, cfg.trials)


def ff_sample_valuations(A, cfg: FfConfig = FfConfig(), window: int | None = None) -> list[tuple]:
    """Valuations ``val(yA)`` for uniform ``y`` over ``F_p``; coordinates undecided within the truncation are ``None``.

    Coordinate ``j`` is decided up to exponent ``min_exponent_j + T`` (in units of ``1/N``).
    """
    A = LatticeMatrix.coerce(A)
    p, N, T = cfg.prime, cfg.exponent_denominator, cfg.trunc
    cols = _FfColumns(A, p, N)
    rng = np.random.default_rng(cfg.seed)
    Y = _draw(rng, cfg.trials, A.r, T, p)
    per_col = []
    for j in range(A.n):
        lo = cols.min_exponent(j)
        hi = lo + (T if window is None else min(window, T))
        coeffs = cols.coefficients(Y, j, lo, hi)
        nz = coeffs != 0
        first = np.where(nz.any(axis=1), nz.argmax(axis=1) + lo, -1 << 40)
        per_col.append(first)
    out = []
    for t in range(cfg.trials):
        out.append(tuple(None if per_col[j][t] == -1 << 40 else Fraction(int(per_col[j][t]), N) for j in range(A.n)))
    return out


def first_hit(A, target, cfg: FfConfig) -> int | None:
    """Index of the first sample whose valuation equals ``target``, or ``None``."""
    target = tuple(ext(x) for x in target)
    for k, v in enumerate(ff_sample_valuations(A, cfg)):
        if v == target:
            return k
    return None
