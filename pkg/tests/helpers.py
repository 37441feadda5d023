"""Random lattices and entropy-like vectors shared by the test modules."""

import random
from fractions import Fraction

from troplat.entropy import EntropyVector, LatticeMatrix, entropy_vector
from troplat.errors import HyperplaneError, RankError
from troplat.series import PuiseuxPoly


def random_poly(rng, max_exp=3, terms=2, zero_prob=0.15):
    if rng.random() < zero_prob:
        return PuiseuxPoly()
    k = rng.randint(1, terms)
    return PuiseuxPoly({rng.randint(0, max_exp): rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(k)})


def random_matrix(rng, r, n, **kw):
    """Full-rank ``r x n`` matrix with no zero column."""
    while True:
        A = LatticeMatrix([[random_poly(rng, **kw) for _ in range(n)] for _ in range(r)], check=False)
        try:
            entropy_vector(A)
        except (HyperplaneError, RankError):
            continue
        return A


def random_lattice_entropy(rng, n_max=3):
    n = rng.randint(1, n_max)
    r = rng.randint(1, n)
    return entropy_vector(random_matrix(rng, r, n))


def elementary_product(rng, A, steps=4):
    """``U A`` for a random product of elementary operations in ``GL_r(O_K)``."""
    rows = [list(row) for row in A.rows]
    r = len(rows)
    for _ in range(steps):
        op = rng.randrange(3)
        i = rng.randrange(r)
        if op == 0 and r > 1:
            j = rng.choice([k for k in range(r) if k != i])
            m = PuiseuxPoly({rng.randint(0, 2): rng.choice([-2, -1, 1, 2])})
            rows[i] = [a + m * b for a, b in zip(rows[i], rows[j])]
        elif op == 1:
            unit = PuiseuxPoly({0: rng.choice([-2, -1, 1, 3]), rng.randint(1, 3): rng.randint(-2, 2)})
            rows[i] = [unit * a for a in rows[i]]
        elif r > 1:
            j = rng.randrange(r)
            rows[i], rows[j] = rows[j], rows[i]
    return LatticeMatrix(rows)


def random_point(rng, n, spread=6, den=4):
    return tuple(Fraction(rng.randint(-spread * den, spread * den), den) for _ in range(n))


def seeded(seed):
    return random.Random(seed)


def from_table(n, table):
    return EntropyVector.from_dict(n, table)
