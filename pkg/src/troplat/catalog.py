"""Named lattice matrices used by tests, demos and the command line."""

from __future__ import annotations

from .entropy import LatticeMatrix
from .errors import UnknownExampleError

MATRICES = {
    # rank 2 in K^3, h_123 infinite
    "rank2-cubic": [["1", "1", "1"], ["0", "t", "t^2"]],
    # full rank in K^2 with h = (0, 0, 1, 3)
    "square": [["1-t^5", "t+t^3"], ["3+t^2", "3*t+t^3"]],
    # full rank in K^3
    "full3": [
        ["1", "1", "1"],
        ["1", "1+t^2", "1+t+t^2"],
        ["1+t^3", "1+2*t^2+t^3", "1+t+2*t^2+t^3"],
    ],
    # rank 2 in K^3 with unequal gaps
    "rank2-quartic": [["1", "1", "1"], ["0", "t^4", "t^2"]],
    # rank 2 in K^3; over F_2 the all-zero valuation is not realised
    "char2": [["1", "t", "1"], ["t", "1", "1"]],
    # full rank in K^2 with h = (0, 0, 0, 1)
    "shear": [["1", "1"], ["0", "t"]],
    "identity3": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
    # rank 2 in K^3 with negative exponents
    "inverse-powers": [["1", "t", "t^-1"], ["0", "1", "t^-1"]],
}

# matrices whose entropy vectors and complexes are checked throughout the suite
WORKED = ("rank2-cubic", "square", "full3", "rank2-quartic", "char2")


def names() -> list[str]:
    return sorted(MATRICES)


def matrix(name: str) -> LatticeMatrix:
    try:
        rows = MATRICES[name]
    except KeyError:
        raise UnknownExampleError(f"unknown example {name!r}; choose from {', '.join(names())}") from None
    return LatticeMatrix.from_strings(rows, label=name)
