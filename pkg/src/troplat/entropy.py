"""Lattice matrices, minor valuations and entropy vectors.

A lattice ``L = O_K^r A`` is presented by a full-rank ``r x n`` matrix of
Puiseux polynomials. Its entropy vector assigns to each column subset ``J``
the least valuation of a ``|J| x |J|`` minor supported on ``J``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import GuardError, HyperplaneError, MatrixShapeError, RankError
from .series import INF, ONE, ZERO, ExtRational, PuiseuxPoly, ext, parse_puiseux
from .subsets import elements, full, mask_to_str, masks_of_size, popcount, str_to_mask

MAX_COLUMNS = 12


class LatticeMatrix:
    """Full-rank ``r x n`` matrix whose rows span the lattice over the valuation ring."""

    __slots__ = ("rows", "label")

    def __init__(self, rows: Iterable[Iterable], label: str | None = None, check: bool = True):
        self.rows = tuple(
            tuple(x if isinstance(x, PuiseuxPoly) else _entry(x) for x in row) for row in rows
        )
        self.label = label
        if check:
            self.validate_shape()

    @classmethod
    def coerce(cls, A) -> "LatticeMatrix":
        return A if isinstance(A, LatticeMatrix) else cls(A)

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[str]], label=None) -> "LatticeMatrix":
        return cls([[parse_puiseux(s) for s in row] for row in rows], label=label)

    @property
    def r(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def validate_shape(self):
        if not self.rows or not self.rows[0]:
            raise MatrixShapeError("lattice matrix must have at least one row and column")
        n = len(self.rows[0])
        if any(len(row) != n for row in self.rows):
            raise MatrixShapeError("ragged lattice matrix")
        if self.r > n:
            raise MatrixShapeError(f"need r <= n, got r={self.r}, n={n}", r=self.r, n=n)
        for j in range(n):
            if all(row[j].is_zero() for row in self.rows):
                raise HyperplaneError(j)

    def column(self, j: int) -> tuple[PuiseuxPoly, ...]:
        return tuple(row[j] for row in self.rows)

    def row_combination(self, y: Sequence[PuiseuxPoly]) -> tuple[PuiseuxPoly, ...]:
        """The lattice element ``y A``."""
        out = []
        for j in range(self.n):
            acc = ZERO
            for yi, row in zip(y, self.rows):
                if yi and row[j]:
                    acc = acc + yi * row[j]
            out.append(acc)
        return tuple(out)

    def left_multiply(self, U: Sequence[Sequence[PuiseuxPoly]]) -> "LatticeMatrix":
        rows = []
        for urow in U:
            rows.append(self.row_combination(urow))
        return LatticeMatrix(rows, label=self.label, check=False)

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.rows]

    def __eq__(self, other):
        if not isinstance(other, LatticeMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"LatticeMatrix({self.to_strings()!r})"


def _entry(x) -> PuiseuxPoly:
    if isinstance(x, str):
        return parse_puiseux(x)
    if isinstance(x, (int, Fraction)):
        return PuiseuxPoly.constant(x) if x else ZERO
    raise TypeError(f"cannot use {x!r} as a matrix entry")


@dataclass(frozen=True)
class RationalLatticeMatrix:
    """Matrix ``numerator / denominator`` with a common scalar denominator.

    Produced by a change of basis whose determinant is not a monomial; a
    ``k x k`` minor has valuation ``val(minor of numerator) - k val(denominator)``.
    """

    numerator: LatticeMatrix
    denominator: PuiseuxPoly

    @property
    def r(self):
        return self.numerator.r

    @property
    def n(self):
        return self.numerator.n


@dataclass(frozen=True)
class EntropyVector:
    """Map from subsets of [n] (bitmasks) to extended rationals, ``h[0] == 0``."""

    n: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} values, got {len(self.values)}")
        vals = tuple(ext(v) for v in self.values)
        if vals[0] != 0:
            raise ValueError("h of the empty set must be 0")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_dict(cls, n: int, table: Mapping, default=INF) -> "EntropyVector":
        """Build from ``{"12": 3, "": 0, ...}`` or ``{mask: value}``; missing subsets get ``default``."""
        vals = [ext(default)] * (1 << n)
        vals[0] = Fraction(0)
        for key, v in table.items():
            mask = str_to_mask(key, n) if isinstance(key, str) else int(key)
            vals[mask] = ext(v)
        return cls(n, tuple(vals))

    def __getitem__(self, mask: int) -> ExtRational:
        return self.values[mask]

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    @property
    def rank(self) -> int:
        return max(popcount(m) for m, v in enumerate(self.values) if v != INF)

    def finite_masks(self) -> list[int]:
        return [m for m, v in enumerate(self.values) if v != INF]

    def as_dict(self) -> dict[str, ExtRational]:
        return {mask_to_str(m, self.n): v for m, v in enumerate(self.values)}


@dataclass(frozen=True)
class BimatroidTable:
    """Values ``nu(I, J)`` for row subsets ``I`` of [r] and column subsets ``J`` of [n], ``|I| = |J|``."""

    r: int
    n: int
    values: Mapping = field(hash=False)

    def __getitem__(self, key) -> ExtRational:
        return self.values[key]

    def pairs(self):
        return self.values.keys()


def minor_determinants(A: LatticeMatrix, max_size: int | None = None) -> dict:
    """Every minor ``det(A[I x J])`` with ``|I| = |J| <= max_size``, keyed by ``(I, J)`` masks.

    Minors of size ``k`` are expanded along the first row of ``I`` and reuse
    the size ``k - 1`` table, so each is a single pass over ``J``.
    """
    r, n = A.r, A.n
    if n > MAX_COLUMNS:
        raise GuardError(f"n = {n} exceeds the guard n <= {MAX_COLUMNS}", n=n)
    top = r if max_size is None else min(r, max_size)
    dets = {(0, 0): ONE}
    prev = {0: [0]}
    col_masks = {k: masks_of_size(n, k) for k in range(top + 1)}
    row_masks = {k: masks_of_size(r, k) for k in range(top + 1)}
    for k in range(1, top + 1):
        for I in row_masks[k]:
            rows = elements(I)
            i0, rest = rows[0], I & ~(1 << rows[0])
            arow = A.rows[i0]
            for J in col_masks[k]:
                total = ZERO
                for pos, j in enumerate(elements(J)):
                    a = arow[j]
                    if not a:
                        continue
                    sub = dets[(rest, J & ~(1 << j))]
                    if not sub:
                        continue
                    term = a * sub
                    total = total - term if pos & 1 else total + term
                dets[(I, J)] = total
    return dets


def minor_valuations(A) -> BimatroidTable:
    """Valuation of every square minor of ``A`` (``inf`` for vanishing minors)."""
    if isinstance(A, RationalLatticeMatrix):
        shift = A.denominator.val()
        table = minor_valuations(A.numerator)
        vals = {
            (I, J): v - popcount(J) * shift if v != INF else INF
            for (I, J), v in table.values.items()
        }
        return BimatroidTable(A.r, A.n, vals)
    A = LatticeMatrix.coerce(A)
    dets = minor_determinants(A)
    return BimatroidTable(A.r, A.n, {key: d.val() for key, d in dets.items()})


def entropy_from_bimatroid(nu: BimatroidTable) -> EntropyVector:
    """``h_J = min_I nu(I, J)`` over row subsets of the same size; ``inf`` if there is none."""
    vals = [INF] * (1 << nu.n)
    for (I, J), v in nu.values.items():
        if v < vals[J]:
            vals[J] = v
    vals[0] = Fraction(0)
    return EntropyVector(nu.n, tuple(vals))


def entropy_vector(A) -> EntropyVector:
    """Entropy vector of the lattice spanned by the rows of ``A``.

    Raises :class:`HyperplaneError` if some singleton entry is infinite and
    :class:`RankError` if every maximal minor vanishes.
    """
    if not isinstance(A, RationalLatticeMatrix):
        A = LatticeMatrix.coerce(A)
    h = entropy_from_bimatroid(minor_valuations(A))
    for j in range(h.n):
        if h[1 << j] == INF:
            raise HyperplaneError(j)
    if all(h[m] == INF for m in masks_of_size(h.n, A.r)):
        raise RankError(f"matrix does not have full row rank {A.r}", r=A.r)
    return h


def supermodularity_violations(h: EntropyVector) -> list[tuple[int, int]]:
    """Pairs ``(I, J)``, ``I < J``, with ``h_I + h_J > h_{I&J} + h_{I|J}``.

    Only finite left-hand sides can violate; an infinite right-hand side
    never does.
    """
    out = []
    size = 1 << h.n
    vals = h.values
    for I in range(size):
        hI = vals[I]
        if hI == INF:
            continue
        for J in range(I + 1, size):
            hJ = vals[J]
            if hJ == INF or (I & J) in (I, J):
                continue
            rhs = vals[I & J] + vals[I | J]
            if rhs != INF and hI + hJ > rhs:
                out.append((I, J))
    return out


def is_supermodular(h: EntropyVector) -> bool:
    return not supermodularity_violations(h)


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    first: tuple[int, int]
    second: tuple[int, int]
    element: int | None = None

    def describe(self, r: int, n: int) -> str:
        (I, J), (I2, J2) = self.first, self.second
        return (
            f"axiom {self.axiom}: (I,J)=({mask_to_str(I, r)},{mask_to_str(J, n)}) "
            f"(I',J')=({mask_to_str(I2, r)},{mask_to_str(J2, n)}) element={self.element}"
        )


def bimatroid_axiom_check(nu: BimatroidTable) -> list[AxiomViolation]:
    """Exhaustively test the valuated bimatroid exchange axioms; return every failing instance.

    For each ordered pair ``(I, J), (I', J')`` with ``S = nu(I,J) + nu(I',J')``:

    * for every ``i'`` in ``I' - I`` we need some ``i`` in ``I - I'`` with
      ``S >= nu(I-i+i', J) + nu(I'-i'+i, J')`` or some ``j'`` in ``J' - J`` with
      ``S >= nu(I+i', J+j') + nu(I'-i', J'-j')``;
    * for every ``j`` in ``J - J'`` we need some ``i`` in ``I - I'`` with
      ``S >= nu(I-i, J-j) + nu(I'+i, J'+j)`` or some ``j'`` in ``J' - J`` with
      ``S >= nu(I, J-j+j') + nu(I', J'-j'+j)``.
    """
    if nu.r + nu.n > 14:
        raise GuardError(f"r + n = {nu.r + nu.n} exceeds the guard 14", r=nu.r, n=nu.n)
    val = nu.values
    out: list[AxiomViolation] = []
    if val.get((0, 0), INF) != 0:
        out.append(AxiomViolation("1", (0, 0), (0, 0)))
    keys = sorted(val)
    for I, J in keys:
        for I2, J2 in keys:
            S = val[(I, J)] + val[(I2, J2)]
            if S == INF:
                continue
            only_I = elements(I & ~I2)
            only_J2 = elements(J2 & ~J)
            for i2 in elements(I2 & ~I):
                b2 = 1 << i2
                ok = any(
                    S >= val[((I & ~(1 << i)) | b2, J)] + val[((I2 & ~b2) | (1 << i), J2)]
                    for i in only_I
                ) or any(
                    S >= val[(I | b2, J | (1 << j2))] + val[(I2 & ~b2, J2 & ~(1 << j2))]
                    for j2 in only_J2
                )
                if not ok:
                    out.append(AxiomViolation("2a", (I, J), (I2, J2), i2 + 1))
            for j in elements(J & ~J2):
                bj = 1 << j
                ok = any(
                    S >= val[(I & ~(1 << i), J & ~bj)] + val[(I2 | (1 << i), J2 | bj)]
                    for i in only_I
                ) or any(
                    S >= val[(I, (J & ~bj) | (1 << j2))] + val[(I2, (J2 & ~(1 << j2)) | bj)]
                    for j2 in only_J2
                )
                if not ok:
                    out.append(AxiomViolation("2b", (I, J), (I2, J2), j + 1))
    return out
