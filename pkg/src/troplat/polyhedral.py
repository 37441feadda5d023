"""The polyhedral complex of linearity regions of the entropy polynomial.

Cells are keyed by their active set: the monomials ``v_J - h_J`` that attain
the maximum on the relative interior. The closed cell with key ``T`` is

    {v : v_J - h_J = v_K - h_K for J, K in T,  v_J - h_J >= v_I - h_I otherwise}

so faces correspond to enlarging the key, and containment of cells is
containment of keys in the opposite direction.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from . import lp
from .entropy import EntropyVector
from .errors import GuardError
from .series import INF
from .subsets import elements, full
from .tropical import active_set

MAX_MONOMIALS = 1 << 12


@dataclass(frozen=True)
class HPolyhedron:
    """``{x in Q^n : a.x = b for equalities, a.x <= b for inequalities}``."""

    n: int
    equalities: tuple = ()
    inequalities: tuple = ()

    def __post_init__(self):
        def norm(rows):
            out = []
            for a, b in rows:
                a = tuple(Fraction(v) for v in a)
                if len(a) != self.n:
                    raise ValueError(f"coefficient vector of length {len(a)}, expected {self.n}")
                out.append((a, Fraction(b)))
            return tuple(out)

        object.__setattr__(self, "equalities", norm(self.equalities))
        object.__setattr__(self, "inequalities", norm(self.inequalities))

    def contains(self, x, strict: bool = False) -> bool:
        for a, b in self.equalities:
            if _dot(a, x) != b:
                return False
        for a, b in self.inequalities:
            s = _dot(a, x)
            if s > b or (strict and s == b):
                return False
        return True

    def with_equalities(self, indices) -> "HPolyhedron":
        """Turn the inequalities with the given indices into equalities."""
        idx = set(indices)
        eqs = self.equalities + tuple(self.inequalities[i] for i in sorted(idx))
        ineqs = tuple(row for i, row in enumerate(self.inequalities) if i not in idx)
        return HPolyhedron(self.n, eqs, ineqs)


def _dot(a, x):
    return sum((ai * xi for ai, xi in zip(a, x) if ai), Fraction(0))


@dataclass(frozen=True)
class RelativeInterior:
    point: tuple
    implicit: frozenset


def relative_interior(P: HPolyhedron) -> RelativeInterior | None:
    """A point strictly satisfying every non-implicit inequality, or ``None`` if ``P`` is empty.

    Maximises the minimum slack ``s`` (capped at 1). While the optimum is
    ``s = 0``, the inequalities carrying positive dual weight hold with
    equality on all of ``P``; they are moved to the implicit set and the
    programme is solved again.
    """
    n = P.n
    implicit: set[int] = set()
    while True:
        live = [i for i in range(len(P.inequalities)) if i not in implicit]
        A_eq = [list(a) + [0] for a, _ in P.equalities]
        b_eq = [b for _, b in P.equalities]
        for i in sorted(implicit):
            a, b = P.inequalities[i]
            A_eq.append(list(a) + [0])
            b_eq.append(b)
        A_ub = [list(P.inequalities[i][0]) + [1] for i in live]
        b_ub = [P.inequalities[i][1] for i in live]
        A_ub.append([0] * n + [1])
        b_ub.append(1)
        c = [0] * n + [1]
        res = lp.linprog(c, A_ub, b_ub, A_eq, b_eq)
        if res.status != lp.OPTIMAL or res.value < 0:
            return None
        if res.value > 0:
            return RelativeInterior(tuple(res.x[:n]), frozenset(implicit))
        tight = [i for i, y in zip(live, res.duals_ub) if y > 0]
        if not tight:
            tight = [i for i in live if _is_implicit(P, i, implicit)]
        implicit.update(tight)


def _is_implicit(P: HPolyhedron, i: int, implicit: set) -> bool:
    """Per-inequality check: does ``a_i.x <= b_i`` hold with equality on all of ``P``?"""
    a, b = P.inequalities[i]
    A_ub = [list(P.inequalities[k][0]) for k in range(len(P.inequalities)) if k not in implicit]
    b_ub = [P.inequalities[k][1] for k in range(len(P.inequalities)) if k not in implicit]
    A_eq = [list(r) for r, _ in P.equalities] + [list(P.inequalities[k][0]) for k in sorted(implicit)]
    b_eq = [s for _, s in P.equalities] + [P.inequalities[k][1] for k in sorted(implicit)]
    res = lp.linprog([-v for v in a], A_ub, b_ub, A_eq, b_eq)
    return res.status == lp.OPTIMAL and -res.value == b


def lp_feasible(P: HPolyhedron):
    """Relative-interior witness of ``P`` as a tuple of Fractions, or ``None`` if infeasible."""
    ri = relative_interior(P)
    return None if ri is None else ri.point


def affine_dim(P: HPolyhedron) -> int:
    """Dimension of the affine hull of ``P``; ``-1`` for the empty set."""
    ri = relative_interior(P)
    if ri is None:
        return -1
    normals = [a for a, _ in P.equalities] + [P.inequalities[i][0] for i in ri.implicit]
    return P.n - lp.rank(normals)


def _indicator(mask: int, n: int) -> tuple:
    return tuple(Fraction(mask >> j & 1) for j in range(n))


def _diff(I: int, J: int, n: int) -> tuple:
    return tuple(Fraction((I >> j & 1) - (J >> j & 1)) for j in range(n))


def build_region(h: EntropyVector, J: int) -> HPolyhedron:
    """Region where monomial ``J`` is maximal: ``v_I - h_I <= v_J - h_J`` for every finite ``I != J``."""
    if h[J] == INF:
        raise ValueError(f"h_J is infinite for J={J}")
    n = h.n
    ineqs = tuple((_diff(I, J, n), h[I] - h[J]) for I in h.finite_masks() if I != J)
    return HPolyhedron(n, (), ineqs)


def cell_polyhedron(h: EntropyVector, key: Sequence[int]) -> HPolyhedron:
    """Closed set where every monomial in ``key`` attains the maximum."""
    n = h.n
    key = sorted(key)
    J0 = key[0]
    eqs = tuple((_diff(J, J0, n), h[J] - h[J0]) for J in key[1:])
    keyset = set(key)
    ineqs = tuple((_diff(I, J0, n), h[I] - h[J0]) for I in h.finite_masks() if I not in keyset)
    return HPolyhedron(n, eqs, ineqs)


@dataclass(frozen=True)
class Cell:
    id: int
    key: tuple
    dim: int
    hrep: HPolyhedron
    witness: tuple
    label: int | None = None
    face_ids: frozenset = frozenset()

    @property
    def is_full_dimensional(self):
        return self.dim == self.hrep.n


@dataclass(frozen=True)
class Complex:
    n: int
    h: EntropyVector
    cells: tuple
    maximal_ids: tuple
    sigma_ids: tuple = ()
    labeled: bool = False
    _by_key: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_key", {c.key: c.id for c in self.cells})

    def cell_by_key(self, key) -> Cell | None:
        i = self._by_key.get(tuple(sorted(key)))
        return None if i is None else self.cells[i]

    def locate(self, v) -> Cell | None:
        """The cell whose relative interior contains ``v``."""
        _, act = active_set(self.h, v)
        return self.cell_by_key(act)

    def f_vector(self, ids=None) -> dict[int, int]:
        ids = range(len(self.cells)) if ids is None else ids
        out: dict[int, int] = {}
        for i in ids:
            d = self.cells[i].dim
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def sigma_cells(self) -> list[Cell]:
        return [self.cells[i] for i in self.sigma_ids]

    def sigma_maximal_ids(self) -> list[int]:
        """Cells of Sigma that are not proper faces of another Sigma cell."""
        sig = set(self.sigma_ids)
        covered = set()
        for i in sig:
            covered |= self.cells[i].face_ids & sig
        return sorted(sig - covered)

    def sigma_maximal_dims(self) -> dict[int, int]:
        return self.f_vector(self.sigma_maximal_ids())

    def dim_sigma(self) -> int:
        return max((self.cells[i].dim for i in self.sigma_ids), default=-1)


def enumerate_complex(h: EntropyVector) -> Complex:
    """All cells of the subdivision of R^n induced by ``max_J (v_J - h_J)``.

    Full-dimensional regions seed a breadth-first search; every cell spawns
    candidate faces by additionally forcing one more monomial into the
    maximum. Each candidate is realised by a relative-interior witness whose
    active set is the canonical key, so faces reached from different parents
    are merged.
    """
    n = h.n
    finite = h.finite_masks()
    if len(finite) > MAX_MONOMIALS:
        raise GuardError(f"{len(finite)} finite monomials exceed the guard {MAX_MONOMIALS}")

    found: dict[tuple, tuple] = {}  # key -> witness
    queue: deque = deque()
    for J in finite:
        ri = relative_interior(build_region(h, J))
        if ri is not None and not ri.implicit:
            key = active_set(h, ri.point)[1]
            if key not in found:
                found[key] = ri.point
                queue.append(key)

    tried: set = set()
    while queue:
        key = queue.popleft()
        keyset = set(key)
        for I in finite:
            if I in keyset:
                continue
            cand = tuple(sorted(keyset | {I}))
            if cand in tried:
                continue
            tried.add(cand)
            ri = relative_interior(cell_polyhedron(h, cand))
            if ri is None:
                continue
            face_key = active_set(h, ri.point)[1]
            tried.add(face_key)
            if face_key not in found:
                found[face_key] = ri.point
                queue.append(face_key)

    records = []
    for key, w in found.items():
        P = cell_polyhedron(h, key)
        dim = n - lp.rank([a for a, _ in P.equalities])
        records.append((dim, key, P, w))
    records.sort(key=lambda r: (r[0], r[1]))
    keys = [r[1] for r in records]
    keysets = [frozenset(k) for k in keys]
    cells = []
    for i, (dim, key, P, w) in enumerate(records):
        faces = frozenset(j for j, ks in enumerate(keysets) if j != i and keysets[i] < ks)
        cells.append(Cell(i, key, dim, P, w, None, faces))
    maximal = tuple(c.id for c in cells if c.dim == n)
    return Complex(n, h, tuple(cells), maximal)


def label_and_extract_sigma(c: Complex) -> Complex:
    """Label every cell by the union of the monomials of the full-dimensional cells containing it.

    Full-dimensional cells carry their own monomial; ``sigma_ids`` lists the
    cells whose label is all of [n].
    """
    top = full(c.n)
    maximal_monomials = {c.cells[i].key[0] for i in c.maximal_ids}
    cells = []
    for cell in c.cells:
        label = 0
        for J in cell.key:
            if J in maximal_monomials:
                label |= J
        cells.append(replace(cell, label=label))
    sigma = tuple(cell.id for cell in cells if cell.label == top)
    return replace(c, cells=tuple(cells), sigma_ids=sigma, labeled=True)


def sigma_complex(h: EntropyVector) -> Complex:
    return label_and_extract_sigma(enumerate_complex(h))


def union_label(key) -> int:
    """Union of all monomials in an active set (the membership criterion used pointwise)."""
    out = 0
    for J in key:
        out |= J
    return out


# -- V-representation ----------------------------------------------------------


@dataclass(frozen=True)
class VRep:
    vertices: tuple
    rays: tuple
    lineality: tuple


def _primitive(d):
    """Scale a rational direction to a primitive integer vector."""
    from math import gcd

    den = 1
    for v in d:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in d]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    return tuple(Fraction(v // g) for v in ints)


def vrep_for_plot(cell_or_poly, max_dim: int = 3) -> VRep:
    """Vertices, extreme rays and lineality basis of a cell by active-constraint enumeration."""
    P = cell_or_poly.hrep if isinstance(cell_or_poly, Cell) else cell_or_poly
    n = P.n
    if n > max_dim:
        raise GuardError(f"V-representation limited to n <= {max_dim}, got n = {n}", n=n)
    eqs = [a for a, _ in P.equalities]
    ineqs = [a for a, _ in P.inequalities]
    lineality = lp.nullspace(eqs + ineqs, n)
    # restrict to the orthogonal complement of the lineality space
    base_eq = list(P.equalities) + [(tuple(d), Fraction(0)) for d in lineality]
    eq_rows = _independent([a for a, _ in base_eq])
    eq_sys = [base_eq[i] for i in eq_rows]
    k = n - len(eq_sys)

    vertices = set()
    for combo in itertools.combinations(range(len(P.inequalities)), k):
        M = [a for a, _ in eq_sys] + [P.inequalities[i][0] for i in combo]
        b = [s for _, s in eq_sys] + [P.inequalities[i][1] for i in combo]
        x = lp.solve_square(M, b)
        if x is not None and P.contains(x):
            vertices.add(tuple(x))

    rays = set()
    if k >= 1:
        cone_eq = [a for a, _ in eq_sys]
        for combo in itertools.combinations(range(len(ineqs)), k - 1):
            rows = cone_eq + [ineqs[i] for i in combo]
            ns = lp.nullspace(rows, n)
            if len(ns) != 1:
                continue
            for sgn in (1, -1):
                d = tuple(sgn * v for v in ns[0])
                if all(_dot(a, d) <= 0 for a in ineqs):
                    rays.add(_primitive(d))
    return VRep(tuple(sorted(vertices)), tuple(sorted(rays)), tuple(tuple(d) for d in lineality))


def _independent(vectors) -> list[int]:
    chosen = []
    for i, v in enumerate(vectors):
        if lp.rank([vectors[j] for j in chosen] + [v]) > len(chosen):
            chosen.append(i)
    return chosen


def interiors_overlap(P: HPolyhedron, Q: HPolyhedron) -> bool:
    """Do the relative interiors of two full-dimensional polyhedra intersect?"""
    R = HPolyhedron(P.n, P.equalities + Q.equalities, P.inequalities + Q.inequalities)
    ri = relative_interior(R)
    return ri is not None and not ri.implicit and not R.equalities
