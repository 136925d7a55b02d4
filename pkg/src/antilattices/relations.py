"""Partitions, Green's relations, congruence tests and quotients."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .config import ConsistencyError, ContractViolation, ShapeError, WellDefinednessError
from .core import DoubleAlgebra, OpTable, _frozen, is_band


def _normalize(labels) -> tuple[int, ...]:
    seen: dict = {}
    out = []
    for lab in labels:
        if lab not in seen:
            seen[lab] = len(seen)
        out.append(seen[lab])
    return tuple(out)


@dataclass(frozen=True)
class Partition:
    """An equivalence on ``0..n-1`` stored as normalized class ids.

    Ids run ``0..k-1`` in order of first appearance, so two partitions are
    equal exactly when their ``class_of`` tuples are.
    """

    n: int
    class_of: tuple[int, ...]

    @classmethod
    def from_labels(cls, labels: Iterable) -> "Partition":
        class_of = _normalize(labels)
        return cls(len(class_of), class_of)

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]]) -> "Partition":
        labels = [-1] * n
        for k, block in enumerate(classes):
            for x in block:
                if not 0 <= x < n:
                    raise ShapeError(f"element {x} outside carrier of size {n}")
                if labels[x] != -1:
                    raise ShapeError(f"element {x} appears in two classes")
                labels[x] = k
        if -1 in labels:
            raise ShapeError(f"element {labels.index(-1)} is in no class")
        return cls.from_labels(labels)

    @classmethod
    def identity(cls, n: int) -> "Partition":
        return cls(n, tuple(range(n)))

    @classmethod
    def universal(cls, n: int) -> "Partition":
        return cls(n, (0,) * n)

    @property
    def num_classes(self) -> int:
        return max(self.class_of) + 1 if self.n else 0

    def classes(self) -> list[list[int]]:
        blocks: list[list[int]] = [[] for _ in range(self.num_classes)]
        for x, c in enumerate(self.class_of):
            blocks[c].append(x)
        return blocks

    def representatives(self) -> list[int]:
        """Least element of each class, indexed by class id."""
        return [block[0] for block in self.classes()]

    def related(self, x: int, y: int) -> bool:
        return self.class_of[x] == self.class_of[y]

    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (x, y) for x in range(self.n) for y in range(self.n) if self.class_of[x] == self.class_of[y]
        )

    def labels(self) -> np.ndarray:
        return np.array(self.class_of, dtype=np.int64)

    def to_json(self) -> dict:
        return {"n": self.n, "classes": self.classes()}

    @classmethod
    def from_json(cls, data: dict) -> "Partition":
        return cls.from_classes(data["n"], data["classes"])


def _check_same_size(n1: int, n2: int):
    if n1 != n2:
        raise ShapeError(f"size mismatch: {n1} vs {n2}")


# --- Green's relations -------------------------------------------------------

def _partition_from_relation(rel: np.ndarray, name: str) -> Partition:
    n = len(rel)
    if not np.all(np.diagonal(rel)) or not np.array_equal(rel, rel.T):
        raise ConsistencyError(f"{name} is not reflexive and symmetric")
    closure = (rel.astype(np.int64) @ rel.astype(np.int64)) > 0
    if not np.array_equal(closure, rel):
        raise ConsistencyError(f"{name} is not transitive on a band")
    # least related element names each class
    return Partition.from_labels(int(np.argmax(rel[x])) for x in range(n))


def _require_band(t: OpTable):
    if not is_band(t):
        raise ContractViolation("Green's relations are only defined here for bands")


def greens_L(t: OpTable) -> Partition:
    """x L y iff xy = x and yx = y."""
    _require_band(t)
    a = t.table
    x = np.arange(t.n)
    rel = (a == x[:, None]) & (a.T == x[None, :])
    return _partition_from_relation(rel, "L")


def greens_R(t: OpTable) -> Partition:
    """x R y iff xy = y and yx = x."""
    _require_band(t)
    a = t.table
    x = np.arange(t.n)
    rel = (a == x[None, :]) & (a.T == x[:, None])
    return _partition_from_relation(rel, "R")


def greens_D(t: OpTable) -> Partition:
    """x D y iff xyx = x and yxy = y."""
    _require_band(t)
    a = t.table
    x = np.arange(t.n)
    xyx = a[a, x[:, None]]
    rel = (xyx == x[:, None]) & (xyx.T == x[None, :])
    return _partition_from_relation(rel, "D")


# --- lattice of partitions ---------------------------------------------------

class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if rx < ry:
                self.parent[ry] = rx
            else:
                self.parent[rx] = ry


def partition_join(p: Partition, q: Partition) -> Partition:
    """Smallest partition coarser than both."""
    _check_same_size(p.n, q.n)
    uf = _UnionFind(p.n)
    for part in (p, q):
        for block in part.classes():
            for x in block[1:]:
                uf.union(block[0], x)
    return Partition.from_labels(uf.find(x) for x in range(p.n))


def partition_meet(p: Partition, q: Partition) -> Partition:
    _check_same_size(p.n, q.n)
    return Partition.from_labels(zip(p.class_of, q.class_of))


def partition_leq(p: Partition, q: Partition) -> bool:
    """True when p refines q."""
    _check_same_size(p.n, q.n)
    return partition_join(p, q) == q


def relations_compose(p: Partition, q: Partition) -> frozenset[tuple[int, int]]:
    """``{(x, z) : x p y and y q z for some y}`` as a pair set."""
    _check_same_size(p.n, q.n)
    pm = p.labels()[:, None] == p.labels()[None, :]
    qm = q.labels()[:, None] == q.labels()[None, :]
    comp = (pm.astype(np.int64) @ qm.astype(np.int64)) > 0
    xs, zs = np.nonzero(comp)
    return frozenset(zip(xs.tolist(), zs.tolist()))


# --- congruences -------------------------------------------------------------

def is_congruence(p: Partition, t: OpTable) -> bool:
    """Full scan of ``x p y => xz p yz and zx p zy``.

    With ``M[x, z] = class(x*z)`` and ``r`` the class representative of each
    element, compatibility on both sides is exactly ``M[x, z] == M[r(x), r(z)]``
    for every pair.
    """
    _check_same_size(p.n, t.n)
    labels = p.labels()
    reps = np.array(p.representatives(), dtype=np.int64)[labels]
    m = labels[t.table]
    return bool(np.array_equal(m, m[reps][:, reps]))


def congruence_violation(p: Partition, t: OpTable) -> Optional[tuple[int, int, int, str]]:
    """First ``(x, y, z, side)`` with ``x p y`` but the products unrelated.

    ``side`` is ``"right"`` when ``x*z`` and ``y*z`` differ in class and
    ``"left"`` for ``z*x`` against ``z*y``. Returns ``None`` for congruences.
    """
    _check_same_size(p.n, t.n)
    c = p.class_of
    a = t.table.tolist()
    n = p.n
    for x in range(n):
        for y in range(n):
            if x == y or c[x] != c[y]:
                continue
            for z in range(n):
                if c[a[x][z]] != c[a[y][z]]:
                    return x, y, z, "right"
                if c[a[z][x]] != c[a[z][y]]:
                    return x, y, z, "left"
    return None


def is_congruence_double(p: Partition, A: DoubleAlgebra) -> bool:
    return is_congruence(p, A.join) and is_congruence(p, A.meet)


def quotient(A: DoubleAlgebra, p: Partition) -> DoubleAlgebra:
    """Induced algebra on the classes of ``p``, computed on least representatives.

    Raises :class:`WellDefinednessError` carrying the violating triple when
    ``p`` is not a congruence.
    """
    _check_same_size(p.n, A.n)
    for name, t in (("join", A.join), ("meet", A.meet)):
        if is_congruence(p, t):
            continue
        bad = congruence_violation(p, t)
        if bad is None:
            raise ConsistencyError("congruence scan and triple search disagree")
        x, y, z, side = bad
        raise WellDefinednessError(
            f"partition is not a congruence of the {name}: {x} ~ {y} but "
            f"{'(x*z, y*z)' if side == 'right' else '(z*x, z*y)'} unrelated for z = {z}",
            triple=bad,
        )
    labels = p.labels()
    reps = np.array(p.representatives(), dtype=np.int64)
    k = len(reps)
    tables = []
    for t in (A.join, A.meet):
        tables.append(OpTable(k, _frozen(labels[t.table[np.ix_(reps, reps)]])))
    return DoubleAlgebra(*tables)


def projection_is_homomorphism(A: DoubleAlgebra, p: Partition, Q: DoubleAlgebra) -> bool:
    """Full scan: class(x op y) == class(x) op_Q class(y) for both operations."""
    labels = p.labels()
    for t, q in ((A.join, Q.join), (A.meet, Q.meet)):
        if not np.array_equal(labels[t.table], q.table[labels[:, None], labels[None, :]]):
            return False
    return True


def all_partitions(n: int):
    """Every partition of ``0..n-1``, as restricted growth strings."""
    if n == 0:
        yield Partition(0, ())
        return
    labels = [0] * n

    def extend(i, top):
        if i == n:
            yield Partition(n, tuple(labels))
            return
        for c in range(top + 2):
            labels[i] = c
            yield from extend(i + 1, max(top, c))

    labels[0] = 0
    yield from extend(1, 0)
