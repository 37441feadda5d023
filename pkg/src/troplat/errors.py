"""Exception hierarchy.

Every error carries a stable ``code`` string; the command line layer puts it
into the machine-readable error payload.
"""


class TroplatError(Exception):
    code = "error"

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details

    def to_json(self):
        payload = {"error": self.code, "message": str(self)}
        for k, v in self.details.items():
            if v is not None:
                payload[k] = v if isinstance(v, (bool, int, str, list)) else str(v)
        return payload


class PuiseuxSyntaxError(TroplatError, ValueError):
    code = "puiseux_syntax"

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}", position=position)
        self.position = position


class ZeroDenominatorError(PuiseuxSyntaxError):
    code = "zero_denominator"


class MatrixShapeError(TroplatError, ValueError):
    code = "matrix_shape"


class HyperplaneError(TroplatError, ValueError):
    """Some column of the lattice matrix vanishes identically."""

    code = "hyperplane"

    def __init__(self, column):
        super().__init__(
            f"column {column + 1} is identically zero; the lattice lies in a "
            f"coordinate hyperplane",
            column=column + 1,
        )
        self.column = column


class RankError(TroplatError, ValueError):
    code = "rank_deficient"


class SingularMatrixError(TroplatError, ValueError):
    code = "singular"


class GuardError(TroplatError, ValueError):
    code = "size_guard"


class NotMemberError(TroplatError, ValueError):
    code = "not_member"


class NonFiniteError(TroplatError, ValueError):
    code = "non_finite"


class RetryBudgetError(TroplatError, RuntimeError):
    code = "retry_budget"


class BadPrimeError(TroplatError, ValueError):
    code = "bad_prime"


class TruncationError(TroplatError, ValueError):
    code = "truncation"


class SupermodularError(TroplatError, ValueError):
    code = "supermodular"


class UnknownExampleError(TroplatError, KeyError):
    code = "unknown_example"

    def __str__(self):
        return self.args[0]


class NegativeScalarError(TroplatError, ValueError):
    code = "negative_scalar"
