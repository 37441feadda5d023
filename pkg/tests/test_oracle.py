from fractions import Fraction

import pytest

from troplat import catalog
from troplat.entropy import LatticeMatrix, entropy_vector
from troplat.errors import BadPrimeError, RankError, RetryBudgetError, TruncationError
from troplat.oracle import (
    FfConfig,
    SampleConfig,
    entropy_mod_p,
    ff_sample_valuations,
    ff_survival,
    first_hit,
    hermite_reduce,
    required_truncation,
    sample_lattice_valuation,
    valuation,
    witness_for_generator,
)
from troplat.series import INF, PuiseuxPoly
from troplat.tropical import generators, is_member

I2 = LatticeMatrix([["1", "0"], ["0", "1"]])


def test_identity_samples_with_unit_coefficients():
    cfg = SampleConfig(trials=50, max_exponent=0)
    assert set(sample_lattice_valuation(I2, cfg)) == {(0, 0)}


@pytest.mark.parametrize("name", catalog.WORKED + ("inverse-powers",))
def test_samples_are_members(name):
    A = catalog.matrix(name)
    h = entropy_vector(A)
    for v in sample_lattice_valuation(A, SampleConfig(trials=300, seed=7)):
        assert is_member(h, v)


def test_samples_are_deterministic():
    A = catalog.matrix("square")
    cfg = SampleConfig(trials=20, seed=3)
    assert sample_lattice_valuation(A, cfg) == sample_lattice_valuation(A, cfg)


def test_specific_combination():
    A = catalog.matrix("rank2-quartic")
    x = A.row_combination([PuiseuxPoly.constant(1), PuiseuxPoly.monomial(1, 1)])
    assert valuation(x) == (0, 0, 0)


def test_retry_budget():
    # y in {+-1}^2 makes one of y1 + y2, y1 - y2 vanish every time
    A = LatticeMatrix([["1", "1"], ["1", "-1"]])
    cfg = SampleConfig(trials=1, pool=1, support_size=1, max_exponent=0)
    with pytest.raises(RetryBudgetError):
        sample_lattice_valuation(A, cfg)


def test_hermite_identity_unchanged():
    form = hermite_reduce(I2, 0b01)
    assert form.matrix == I2 and form.pivots == (0,)


def test_hermite_already_triangular():
    A = catalog.matrix("rank2-quartic")
    assert hermite_reduce(A, 0b001).matrix == A


def test_hermite_square_first_column():
    A = catalog.matrix("square")
    form = hermite_reduce(A, [0])
    col = [row[0] for row in form.matrix.rows]
    assert col[0].val() == 0 and col[1].is_zero()
    assert entropy_vector(form.matrix) == entropy_vector(A)


def test_hermite_rank_deficiency():
    with pytest.raises(RankError):
        hermite_reduce(catalog.matrix("rank2-cubic"), 0b111)


@pytest.mark.parametrize("name", catalog.WORKED + ("inverse-powers", "identity3"))
def test_witnesses_match_generators(name):
    A = catalog.matrix(name)
    h = entropy_vector(A)
    for J, u in generators(h).items():
        x = witness_for_generator(A, J, h=h)
        assert valuation(x) == u
        assert entropy_vector(hermite_reduce(A, J).matrix) == h


def test_witness_quartic_first_generator():
    A = catalog.matrix("rank2-quartic")
    x = witness_for_generator(A, 0b001)
    assert valuation(x) == (INF, 4, 2)


def test_ff_identity():
    est = ff_survival(I2, (1, 1), FfConfig(prime=5, trunc=2, trials=40_000, seed=1))
    assert est.exact == pytest.approx(0.04)
    assert est.within(3)


def test_ff_exact_values():
    est = ff_survival(catalog.matrix("rank2-cubic"), (0, 0, 0), FfConfig(trials=100))
    assert est.exact == 1 and est.empirical == 1
    est = ff_survival(catalog.matrix("square"), (1, 1), FfConfig(trials=100))
    assert est.exact == pytest.approx(1 / 101)


def test_ff_errors():
    with pytest.raises(BadPrimeError):
        FfConfig(prime=12)
    A = LatticeMatrix([["1/5", "1"], ["0", "1"]])
    with pytest.raises(BadPrimeError):
        ff_survival(A, (0, 0), FfConfig(prime=5))
    with pytest.raises(TruncationError):
        ff_survival(catalog.matrix("square"), (5, 5), FfConfig(trunc=2))


def test_required_truncation():
    assert required_truncation(catalog.matrix("square"), (2, 2)) == 2
    assert required_truncation(catalog.matrix("inverse-powers"), (0, 0, 0)) == 1


def test_entropy_mod_p_can_drop():
    A = LatticeMatrix([["1", "1"], ["1", "1+3*t"]])
    assert entropy_vector(A)[3] == 1
    assert entropy_mod_p(A, 3)[3] == INF
    assert entropy_mod_p(A, 5)[3] == 1


def test_char2_caveat():
    A = catalog.matrix("char2")
    assert first_hit(A, (0, 0, 0), FfConfig(prime=2, trials=20_000, trunc=3)) is None
    assert first_hit(A, (0, 0, 0), FfConfig(prime=101, trials=1000, trunc=3)) is not None
    vals = ff_sample_valuations(A, FfConfig(prime=2, trials=2000, trunc=4))
    assert all(sum(1 for v in s if v == 0) < 3 for s in vals)
    assert any(s == (0, 0, 1) for s in vals)
