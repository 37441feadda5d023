"""Dense two-phase simplex over the rationals.

Small exact linear programs only: the tableau is a list of ``gmpy2.mpq``
rows and pivoting follows Bland's least-index rule, so runs are
deterministic and always terminate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    x: list | None = None
    value: Fraction | None = None
    duals_ub: list | None = None


def to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def _pivot(tab, obj, basis, row, col):
    prow = tab[row]
    p = prow[col]
    if p != 1:
        inv = 1 / p
        prow = [v * inv for v in prow]
        tab[row] = prow
    for i, other in enumerate(tab):
        if i != row:
            f = other[col]
            if f:
                tab[i] = [a - f * b for a, b in zip(other, prow)]
    f = obj[col]
    if f:
        obj[:] = [a - f * b for a, b in zip(obj, prow)]
    basis[row] = col


def _run(tab, obj, basis, allowed):
    """Maximise; ``obj`` holds reduced costs ``c_B B^-1 A_j - c_j`` plus the value in the last slot."""
    while True:
        col = next((j for j in allowed if obj[j] < 0), None)
        if col is None:
            return OPTIMAL
        best = None
        for i, row in enumerate(tab):
            a = row[col]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return UNBOUNDED
        _pivot(tab, obj, basis, best[1], col)


def linprog(c, A_ub=(), b_ub=(), A_eq=(), b_eq=()) -> LPResult:
    """Maximise ``c.x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq`` with ``x`` free.

    Returns the optimal point, value and the dual multipliers of the
    inequality rows (non-negative at optimality).
    """
    n = len(c)
    m_ub, m_eq = len(A_ub), len(A_eq)
    m = m_ub + m_eq
    nx = 2 * n
    n_slack = m_ub
    # columns: x+ (n), x- (n), slacks (m_ub), artificials (added per row as needed), rhs
    rows, rhs, signs = [], [], []
    for i in range(m):
        a = A_ub[i] if i < m_ub else A_eq[i - m_ub]
        b = mpq(b_ub[i] if i < m_ub else b_eq[i - m_ub])
        coeffs = [mpq(v) for v in a]
        row = coeffs + [-v for v in coeffs] + [mpq(0)] * n_slack
        if i < m_ub:
            row[nx + i] = mpq(1)
        sign = 1
        if b < 0:
            row = [-v for v in row]
            b = -b
            sign = -1
        rows.append(row)
        rhs.append(b)
        signs.append(sign)

    art_rows = [i for i in range(m) if not (i < m_ub and signs[i] > 0)]
    n_art = len(art_rows)
    width = nx + n_slack + n_art
    tab = []
    basis = []
    for i in range(m):
        row = rows[i] + [mpq(0)] * n_art + [rhs[i]]
        tab.append(row)
        basis.append(nx + i if i < m_ub and signs[i] > 0 else None)
    for k, i in enumerate(art_rows):
        tab[i][nx + n_slack + k] = mpq(1)
        basis[i] = nx + n_slack + k

    # phase 1: maximise -sum(artificials)
    obj = [mpq(0)] * (width + 1)
    for k in range(n_art):
        obj[nx + n_slack + k] = mpq(1)
    for i in art_rows:
        obj = [a - b for a, b in zip(obj, tab[i])]
    if n_art:
        _run(tab, obj, basis, range(width))
        if obj[-1] < 0:
            return LPResult(INFEASIBLE)
        # drive zero-level artificials out of the basis, dropping redundant rows
        first_art = nx + n_slack
        i = 0
        while i < len(tab):
            if basis[i] >= first_art:
                col = next((j for j in range(first_art) if tab[i][j] != 0), None)
                if col is None:
                    del tab[i]
                    del basis[i]
                    continue
                _pivot(tab, obj, basis, i, col)
            i += 1
        tab = [row[:first_art] + row[-1:] for row in tab]
        width = first_art

    # phase 2
    cost = [mpq(v) for v in c] + [-mpq(v) for v in c] + [mpq(0)] * n_slack
    obj = [-v for v in cost] + [mpq(0)]
    for i, j in enumerate(basis):
        if cost[j]:
            obj = [a + cost[j] * b for a, b in zip(obj, tab[i])]
    status = _run(tab, obj, basis, range(width))
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    z = [mpq(0)] * width
    for i, j in enumerate(basis):
        z[j] = tab[i][-1]
    x = [to_fraction(z[j] - z[n + j]) for j in range(n)]
    # reduced cost of slack i is the dual multiplier of inequality row i
    duals = [to_fraction(obj[nx + i]) for i in range(m_ub)]
    return LPResult(OPTIMAL, x, to_fraction(obj[-1]), duals)


def rank(vectors) -> int:
    """Rank of a list of rational vectors by exact Gaussian elimination."""
    rows = [[mpq(v) for v in vec] for vec in vectors]
    if not rows:
        return 0
    r = 0
    ncols = len(rows[0])
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][col]
            if f:
                f = f / p[col]
                rows[i] = [a - f * b for a, b in zip(rows[i], p)]
        r += 1
        if r == len(rows):
            break
    return r


def nullspace(vectors, n: int) -> list[list[Fraction]]:
    """Basis of ``{d : v.d = 0 for all v}`` in Q^n."""
    rows = [[mpq(v) for v in vec] for vec in vectors]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for fj in free:
        d = [mpq(0)] * n
        d[fj] = mpq(1)
        for i, pj in enumerate(pivots):
            d[pj] = -rows[i][fj]
        basis.append([to_fraction(v) for v in d])
    return basis


def solve_square(M, b) -> list[Fraction] | None:
    """Unique solution of ``M x = b`` or ``None`` when ``M`` is singular."""
    k = len(M)
    rows = [[mpq(v) for v in row] + [mpq(bi)] for row, bi in zip(M, b)]
    for col in range(k):
        piv = next((i for i in range(col, k) if rows[i][col] != 0), None)
        if piv is None:
            return None
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [v * inv for v in rows[col]]
        for i in range(k):
            if i != col and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * bb for a, bb in zip(rows[i], rows[col])]
    return [to_fraction(row[-1]) for row in rows]
