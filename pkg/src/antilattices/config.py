"""Capacity bounds and the exception hierarchy shared by every module."""
import os

#: largest carrier a product construction may produce
MAX_CARRIER = 4096
#: default order bound for exhaustive enumeration
ENUM_MAX_ORDER = 8
#: default order bound for brute-force isomorphism search
ISO_MAX_ORDER = 8
#: subalgebra brute force tests all 2^n subsets
SUBALGEBRA_MAX_ORDER = 16
#: congruence brute force tests Bell(n) partitions
CONGRUENCE_MAX_ORDER = 8


def enum_max_order():
    """Enumeration bound, overridable with ``ANTILATTICE_MAX_ORDER``."""
    value = os.environ.get("ANTILATTICE_MAX_ORDER")
    if value is None:
        return ENUM_MAX_ORDER
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"ANTILATTICE_MAX_ORDER must be an integer, got {value!r}") from None


class AlgebraError(Exception):
    pass


class ShapeError(AlgebraError, ValueError):
    pass


class ValidationError(AlgebraError, ValueError):
    pass


class ContractViolation(AlgebraError, ValueError):
    """An operation was called on input outside its precondition."""


class CapacityError(AlgebraError):
    pass


class WellDefinednessError(AlgebraError):
    """A quotient was requested by a partition that is not a congruence."""

    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple


class ConsistencyError(AlgebraError):
    """An internal check that the theory guarantees has failed (a bug)."""
