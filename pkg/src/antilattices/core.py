"""Finite binary operations, double algebras and their axiom predicates.

Elements are the integers ``0..n-1``. A table is read ``t[x, y] = x * y``
with the row index as the left operand.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .config import MAX_CARRIER, CapacityError, ShapeError, ValidationError


class FlatClass(str, enum.Enum):
    """First letter describes the join, second the meet (L = left-zero)."""

    LL = "LL"
    LR = "LR"
    RL = "RL"
    RR = "RR"

    @property
    def join_side(self) -> str:
        return self.value[0]

    @property
    def meet_side(self) -> str:
        return self.value[1]

    def __str__(self) -> str:
        return self.value


FLAT_ORDER = (FlatClass.LL, FlatClass.LR, FlatClass.RL, FlatClass.RR)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class OpTable:
    n: int
    table: np.ndarray

    def __call__(self, x, y):
        return self.table[x, y]

    def rows(self) -> list[list[int]]:
        return self.table.tolist()

    def __eq__(self, other):
        if not isinstance(other, OpTable):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.n, self.table.tobytes()))

    def __repr__(self):
        return f"OpTable(n={self.n}, table={self.rows()})"


@dataclass(frozen=True, eq=True)
class DoubleAlgebra:
    join: OpTable
    meet: OpTable

    def __post_init__(self):
        if self.join.n != self.meet.n:
            raise ShapeError(f"join has {self.join.n} elements but meet has {self.meet.n}")

    @property
    def n(self) -> int:
        return self.join.n

    def to_json(self) -> dict:
        return {"n": self.n, "join": self.join.rows(), "meet": self.meet.rows()}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict) -> "DoubleAlgebra":
        if not isinstance(data, dict):
            raise ShapeError("algebra JSON must be an object with keys n, join, meet")
        missing = {"n", "join", "meet"} - set(data)
        if missing:
            raise ShapeError(f"algebra JSON is missing keys: {sorted(missing)}")
        n = data["n"]
        return cls(make_op_table(n, data["join"]), make_op_table(n, data["meet"]))

    @classmethod
    def loads(cls, text: str) -> "DoubleAlgebra":
        return cls.from_json(json.loads(text))


def make_op_table(n: int, entries: Sequence[Sequence[int]] | np.ndarray) -> OpTable:
    """Validate an ``n x n`` table of element indices.

    No algebraic axioms are assumed; out-of-range entries raise
    :class:`ValidationError` naming the offending cell.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise ShapeError(f"carrier size must be a positive integer, got {n!r}")
    n = int(n)
    if isinstance(entries, np.ndarray):
        rows = entries.tolist()
    else:
        rows = entries
    if len(rows) != n:
        raise ShapeError(f"expected {n} rows, got {len(rows)}")
    for i, row in enumerate(rows):
        if isinstance(row, (str, bytes)) or not hasattr(row, "__len__"):
            raise ShapeError(f"row {i} is not a sequence")
        if len(row) != n:
            raise ShapeError(f"row {i} has {len(row)} entries, expected {n}")
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise ValidationError(f"entry at row {i}, column {j} is not an integer: {v!r}")
            if not 0 <= v < n:
                raise ValidationError(f"entry at row {i}, column {j} is {v}, outside [0, {n})")
    return OpTable(n, _frozen(np.array(rows, dtype=np.int64).reshape(n, n)))


def left_zero(n: int) -> OpTable:
    return OpTable(n, _frozen(np.repeat(np.arange(n)[:, None], n, axis=1)))


def right_zero(n: int) -> OpTable:
    return OpTable(n, _frozen(np.repeat(np.arange(n)[None, :], n, axis=0)))


# --- single-operation predicates --------------------------------------------

def is_idempotent(t: OpTable) -> bool:
    return bool(np.all(np.diagonal(t.table) == np.arange(t.n)))


def is_associative(t: OpTable) -> bool:
    a = t.table
    # (xy)z against x(yz) over every triple
    return bool(np.array_equal(a[a, :], a[:, a]))


def is_band(t: OpTable) -> bool:
    return is_idempotent(t) and is_associative(t)


def is_rectangular(t: OpTable) -> bool:
    if not is_band(t):
        return False
    a = t.table
    # xyz = xz: a[a[x, y], z] against a[x, z] broadcast over y
    return bool(np.all(a[a, :] == a[:, None, :]))


def is_left_zero(t: OpTable) -> bool:
    return bool(np.all(t.table == np.arange(t.n)[:, None]))


def is_right_zero(t: OpTable) -> bool:
    return bool(np.all(t.table == np.arange(t.n)[None, :]))


def is_commutative(t: OpTable) -> bool:
    return bool(np.array_equal(t.table, t.table.T))


def is_anticommutative(t: OpTable) -> bool:
    """True iff ``xy = yx`` only when ``x = y``."""
    commuting = t.table == t.table.T
    return bool(np.array_equal(commuting, np.eye(t.n, dtype=bool)))


# --- double-algebra predicates ----------------------------------------------

def is_double_band(A: DoubleAlgebra) -> bool:
    return is_band(A.join) and is_band(A.meet)


def is_antilattice(A: DoubleAlgebra) -> bool:
    return is_rectangular(A.join) and is_rectangular(A.meet)


def _grid(n):
    x = np.arange(n)[:, None]
    y = np.arange(n)[None, :]
    return x, y


def is_quasilattice(A: DoubleAlgebra) -> bool:
    """Modified absorption: x^(yvxvy)^x = x = xv(y^x^y)vx."""
    j, m = A.join.table, A.meet.table
    x, y = _grid(A.n)
    first = m[m[x, j[j[y, x], y]], x]
    second = j[j[x, m[m[y, x], y]], x]
    return bool(np.all(first == x) and np.all(second == x))


def is_skew_lattice(A: DoubleAlgebra) -> bool:
    """The four absorption identities

    ``x^(xvy) = x = (yvx)^x`` and ``xv(x^y) = x = (y^x)vx``.

    On antilattices this holds exactly when ``x^y = yvx``.
    """
    j, m = A.join.table, A.meet.table
    x, y = _grid(A.n)
    return bool(
        np.all(m[x, j[x, y]] == x)
        and np.all(m[j[y, x], x] == x)
        and np.all(j[x, m[x, y]] == x)
        and np.all(j[m[y, x], x] == x)
    )


def flat_class(A: DoubleAlgebra) -> Optional[FlatClass]:
    """Class of a flat antilattice, or ``None`` when a reduct is two-sided.

    The 1-point algebra satisfies all four identity pairs; it reports
    ``LL`` by convention.
    """
    if is_left_zero(A.join):
        join_side = "L"
    elif is_right_zero(A.join):
        join_side = "R"
    else:
        return None
    if is_left_zero(A.meet):
        meet_side = "L"
    elif is_right_zero(A.meet):
        meet_side = "R"
    else:
        return None
    return FlatClass(join_side + meet_side)


def make_flat(n: int, c: FlatClass | str) -> DoubleAlgebra:
    c = FlatClass(c)
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise ValidationError(f"flat algebras need n >= 1, got {n!r}")
    if n > MAX_CARRIER:
        raise CapacityError(f"carrier size {n} exceeds maximum {MAX_CARRIER}")
    side = {"L": left_zero, "R": right_zero}
    return DoubleAlgebra(side[c.join_side](n), side[c.meet_side](n))


def trivial_algebra() -> DoubleAlgebra:
    return make_flat(1, FlatClass.LL)


def _product_table(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    na, nb = len(a), len(b)
    # element i*nb + j  <->  pair (i, j)
    i = np.repeat(np.arange(na), nb)
    j = np.tile(np.arange(nb), na)
    return a[i[:, None], i[None, :]] * nb + b[j[:, None], j[None, :]]


def direct_product(A: DoubleAlgebra, B: DoubleAlgebra, max_carrier: int = MAX_CARRIER) -> DoubleAlgebra:
    """Componentwise product; the pair ``(i, j)`` is encoded as ``i*|B| + j``."""
    size = A.n * B.n
    if size > max_carrier:
        raise CapacityError(f"product carrier {A.n}*{B.n} = {size} exceeds maximum {max_carrier}")
    join = OpTable(size, _frozen(_product_table(A.join.table, B.join.table)))
    meet = OpTable(size, _frozen(_product_table(A.meet.table, B.meet.table)))
    return DoubleAlgebra(join, meet)
