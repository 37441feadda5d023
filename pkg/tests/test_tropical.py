from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_lattice_entropy, random_point, seeded
from troplat import catalog
from troplat.entropy import EntropyVector, entropy_vector
from troplat.errors import NegativeScalarError, NonFiniteError, NotMemberError
from troplat.series import INF
from troplat.subsets import str_to_mask
from troplat.tropical import (
    directional_member,
    generators,
    in_span,
    is_member,
    phi_eval,
    plucker_from_entropy,
    projects_into_sigma,
    reconstruct,
    trop_add,
    trop_linear_member,
    trop_scale,
)

F = Fraction


def h_of(name):
    return entropy_vector(catalog.matrix(name))


def test_phi_and_active_sets():
    h = h_of("square")
    assert phi_eval(h, (0, 1)) == (0, (0, 1, 2))
    assert phi_eval(h, (0, 0)) == (0, (0, 1))
    assert phi_eval(EntropyVector(2, (0, 0, 0, 0)), (0, 0))[1][0] == 0


def test_phi_rejects_infinite():
    with pytest.raises(NonFiniteError):
        phi_eval(h_of("square"), (0, INF))


def test_membership_examples():
    h = h_of("square")
    assert is_member(h, (0, 1))
    assert not is_member(h, (0, 0))
    assert is_member(h_of("full3"), (0, 0, 0))


def test_generators_square():
    gens = generators(h_of("square"))
    assert gens == {0: (0, 1), 1: (INF, 3), 2: (2, INF)}


def test_semimodule_operations():
    assert trop_add((0, 1), (2, INF)) == (0, 1)
    assert trop_scale(0, (3, 4)) == (3, 4)
    assert trop_scale(1, (INF, 3)) == (INF, 4)
    with pytest.raises(NegativeScalarError):
        trop_scale(-1, (0, 0))


def test_reconstruct_square_vertices():
    h = h_of("square")
    rec = reconstruct(h, (0, 1))
    assert rec.ok and rec.lambdas == {0: 0, 1: 0, 2: 0}
    rec = reconstruct(h, (2, 3))
    assert rec.ok and rec.recombined == (2, 3)
    assert rec.lambdas == {0: 2, 1: 0, 2: 0}
    with pytest.raises(NotMemberError):
        reconstruct(h, (0, 0))


def test_generators_lie_in_span():
    for name in catalog.WORKED:
        h = h_of(name)
        for u in generators(h).values():
            assert in_span(h, u)


def test_span_matches_membership_on_finite_points():
    rng = seeded(2)
    for name in catalog.WORKED:
        h = h_of(name)
        for _ in range(100):
            v = random_point(rng, h.n)
            assert in_span(h, v) == is_member(h, v)


def test_plucker_restriction():
    p = plucker_from_entropy(h_of("rank2-cubic"), 2)
    assert p == {3: 1, 5: 2, 6: 1}
    assert plucker_from_entropy(EntropyVector(2, (0, 0, 0, 0)), 2) == {3: 0}


def test_trop_linear_member_examples():
    assert trop_linear_member({1: 0, 2: 0}, (0, 0))
    p = plucker_from_entropy(h_of("rank2-cubic"), 2)
    assert trop_linear_member(p, (0, 0, 0)) == projects_into_sigma(h_of("rank2-cubic"), (0, 0, 0))
    assert not trop_linear_member(p, (0, 0, 10))


def test_projection_agrees_on_grid():
    for name in ("rank2-cubic", "rank2-quartic", "char2", "inverse-powers"):
        h = h_of(name)
        p = plucker_from_entropy(h)
        for w in product(range(-3, 4), repeat=h.n):
            assert trop_linear_member(p, w) == projects_into_sigma(h, w), (name, w)


def test_projection_of_members():
    rng = seeded(3)
    h = h_of("rank2-cubic")
    p = plucker_from_entropy(h)
    for _ in range(300):
        v = random_point(rng, 3)
        if is_member(h, v):
            assert trop_linear_member(p, v)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_directional_criterion_matches_union(seed):
    rng = seeded(seed)
    h = random_lattice_entropy(rng)
    for _ in range(20):
        v = random_point(rng, h.n)
        assert directional_member(h, v) == is_member(h, v)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_closure_and_reconstruction(seed):
    rng = seeded(seed)
    h = random_lattice_entropy(rng)
    members = [v for v in (random_point(rng, h.n) for _ in range(60)) if is_member(h, v)]
    for x, y in zip(members, members[1:]):
        assert is_member(h, trop_add(x, y))
        lam = F(rng.randint(0, 12), 4)
        assert is_member(h, tuple(c + lam for c in x))
    for x in members:
        assert reconstruct(h, x).ok
