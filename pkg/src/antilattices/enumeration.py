"""Exhaustive oracles: labeled rectangular bands, antilattice census,
brute-force subalgebras and congruences, non-regular witnesses."""
from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from math import factorial
from typing import Optional

import numpy as np

from .config import (
    CONGRUENCE_MAX_ORDER,
    SUBALGEBRA_MAX_ORDER,
    CapacityError,
    ConsistencyError,
    enum_max_order,
)
from .core import DoubleAlgebra, OpTable, _frozen, is_rectangular
from .counting import rho
from .relations import all_partitions, greens_L, greens_R, is_congruence_double
from .structure import FlatSignature, regularity_certificate


def _check_bound(n, max_order, what):
    bound = enum_max_order() if max_order is None else max_order
    if n > bound:
        raise CapacityError(f"{what} is limited to order {bound}, got {n} (raise the bound to override)")
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")


def _grid_tables(n: int, a: int, b: int, chunk: int = 50000):
    """Tables of every placement of ``0..n-1`` on an ``a x b`` grid, with
    x*y the element in the row of x and the column of y."""
    perms = permutations(range(n))
    while True:
        block = np.array([p for _, p in zip(range(chunk), perms)], dtype=np.int64)
        if len(block) == 0:
            return
        pos = np.argsort(block, axis=1)  # cell index of each element
        row, col = pos // b, pos % b
        cells = row[:, :, None] * b + col[:, None, :]
        yield np.take_along_axis(block, cells.reshape(len(block), -1), axis=1).reshape(-1, n, n)


def all_rectangular_tables(n: int, max_order: Optional[int] = None) -> list[OpTable]:
    """Every labeled rectangular band on ``0..n-1``, sorted lexicographically.

    One shape ``a x b`` per factorization ``n = a*b``; grid placements that
    give the same table are merged by hashing table contents. Each shape
    contributes ``n!/(a! b!)`` tables, which is checked.
    """
    _check_bound(n, max_order, "rectangular band generation")
    seen: dict[bytes, np.ndarray] = {}
    for a in range(1, n + 1):
        if n % a:
            continue
        b = n // a
        shape_tables: dict[bytes, np.ndarray] = {}
        for block in _grid_tables(n, a, b):
            for t in block:
                shape_tables.setdefault(t.tobytes(), t)
        expected = factorial(n) // (factorial(a) * factorial(b))
        if len(shape_tables) != expected:
            raise ConsistencyError(f"shape {a}x{b}: {len(shape_tables)} tables, expected {expected}")
        seen.update(shape_tables)
    tables = sorted((OpTable(n, _frozen(t)) for t in seen.values()), key=lambda t: t.table.ravel().tolist())
    for t in tables:
        if not is_rectangular(t):
            raise ConsistencyError("generated a table that is not a rectangular band")
    return tables


def count_rectangular_by_shape(n: int) -> dict[tuple[int, int], int]:
    """Labeled tables per shape, keyed by (number of rows, number of columns)."""
    out = {}
    for t in all_rectangular_tables(n, max_order=max(n, 1)):
        key = (greens_R(t).num_classes, greens_L(t).num_classes)
        out[key] = out.get(key, 0) + 1
    return out


# --- the pair census ---------------------------------------------------------

@dataclass
class EnumerationReport:
    n: int
    total_antilattices: int
    regular_labeled: int
    regular_up_to_iso: int
    signatures: dict = field(default_factory=dict)  # FlatSignature -> labeled count
    nonregular_witness: Optional[DoubleAlgebra] = None
    witness_certificate: Optional[dict] = None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "total_antilattices": self.total_antilattices,
            "regular_labeled": self.regular_labeled,
            "regular_up_to_iso": self.regular_up_to_iso,
            "signatures": [{"sig": list(s), "labeled_count": c} for s, c in sorted(self.signatures.items())],
            "nonregular_witness": None if self.nonregular_witness is None else self.nonregular_witness.to_json(),
            "witness_certificate": self.witness_certificate,
        }


class _TableBank:
    """Stacked tables with Green's labels and class representatives."""

    def __init__(self, tables: list[OpTable]):
        self.tables = tables
        self.T = np.stack([t.table for t in tables])
        self.L = np.stack([np.array(greens_L(t).class_of) for t in tables])
        self.R = np.stack([np.array(greens_R(t).class_of) for t in tables])
        self.L_rep = self._reps(self.L)
        self.R_rep = self._reps(self.R)

    @staticmethod
    def _reps(labels):
        # least element of each element's class
        n = labels.shape[1]
        same = labels[:, :, None] == labels[:, None, :]
        return np.argmax(same, axis=2) if n else labels


def _compatible_with_all(labels, reps, T):
    """For one partition, is it a congruence of each stacked table?"""
    M = labels[T]
    return (M == M[:, reps][:, :, reps]).all(axis=(1, 2))


def _all_compatible_with(labels, reps, t):
    """For stacked partitions, is each a congruence of one table?"""
    K = len(labels)
    M = labels[:, t]
    idx = np.arange(K)[:, None, None]
    return (M == M[idx, reps[:, :, None], reps[:, None, :]]).all(axis=(1, 2))


def _regular_mask(bank: _TableBank, j: int) -> np.ndarray:
    """Regularity of (join = table j, meet = every table)."""
    T = bank.T
    ok = _compatible_with_all(bank.L[j], bank.L_rep[j], T)
    ok &= _compatible_with_all(bank.R[j], bank.R_rep[j], T)
    ok &= _all_compatible_with(bank.L, bank.L_rep, T[j])
    ok &= _all_compatible_with(bank.R, bank.R_rep, T[j])
    return ok


def _join_count(p, q) -> int:
    n = len(p)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for labels in (p, q):
        first = {}
        for x, c in enumerate(labels):
            if c in first:
                rx, ry = find(first[c]), find(x)
                if rx != ry:
                    parent[ry] = rx
            else:
                first[c] = x
    return len({find(x) for x in range(n)})


def _scan(bank: _TableBank, js) -> tuple[int, Counter, Optional[tuple[int, int]]]:
    regular = 0
    sigs: Counter = Counter()
    first_bad = None
    L = bank.L.tolist()
    R = bank.R.tolist()
    for j in js:
        mask = _regular_mask(bank, j)
        ks = np.flatnonzero(mask).tolist()
        regular += len(ks)
        if first_bad is None and len(ks) < len(mask):
            first_bad = (j, int(np.flatnonzero(~mask)[0]))
        for k in ks:
            sigs[
                FlatSignature(
                    _join_count(R[j], R[k]),
                    _join_count(R[j], L[k]),
                    _join_count(L[j], R[k]),
                    _join_count(L[j], L[k]),
                )
            ] += 1
    return regular, sigs, first_bad


_WORKER_BANK: Optional[_TableBank] = None


def _init_worker(n):
    global _WORKER_BANK
    _WORKER_BANK = _TableBank(all_rectangular_tables(n, max_order=n))


def _scan_worker(js):
    return _scan(_WORKER_BANK, js)


def default_jobs() -> int:
    return os.cpu_count() or 1


def enumerate_antilattices(n: int, max_order: Optional[int] = None, jobs: int = 1, check: bool = True) -> EnumerationReport:
    """Scan every ordered pair of labeled rectangular tables as (join, meet).

    Every pair is an antilattice. Regular pairs are bucketed by their flat
    signature (class counts of the four factor congruences). With
    ``check`` the number of distinct signatures must equal ``rho(n)``.
    The reported witness is the lexicographically least non-regular pair,
    independent of ``jobs``.
    """
    _check_bound(n, max_order, "antilattice enumeration")
    tables = all_rectangular_tables(n, max_order=n)
    bank = _TableBank(tables)
    K = len(tables)
    js = list(range(K))
    if jobs > 1 and K > 1:
        chunks = [js[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(n,)) as pool:
            parts = list(pool.map(_scan_worker, chunks))
    else:
        parts = [_scan(bank, js)]
    regular = sum(p[0] for p in parts)
    sigs: Counter = Counter()
    for p in parts:
        sigs.update(p[1])
    bads = [p[2] for p in parts if p[2] is not None]
    witness = cert = None
    if bads:
        j, k = min(bads)
        witness = DoubleAlgebra(tables[j], tables[k])
        cert = regularity_certificate(witness)
    report = EnumerationReport(
        n=n,
        total_antilattices=K * K,
        regular_labeled=regular,
        regular_up_to_iso=len(sigs),
        signatures=dict(sorted(sigs.items())),
        nonregular_witness=witness,
        witness_certificate=cert,
    )
    if check and report.regular_up_to_iso != rho(n):
        raise ConsistencyError(f"found {report.regular_up_to_iso} signatures at n={n}, expected {rho(n)}")
    return report


def regular_antilattices(n: int, max_order: Optional[int] = None) -> list[DoubleAlgebra]:
    """All labeled regular antilattices of order ``n``."""
    _check_bound(n, max_order, "antilattice enumeration")
    tables = all_rectangular_tables(n, max_order=n)
    bank = _TableBank(tables)
    out = []
    for j in range(len(tables)):
        for k in np.flatnonzero(_regular_mask(bank, j)).tolist():
            out.append(DoubleAlgebra(tables[j], tables[k]))
    return out


def all_antilattices(n: int, max_order: Optional[int] = None):
    tables = all_rectangular_tables(n, max_order=max_order)
    for t in tables:
        for s in tables:
            yield DoubleAlgebra(t, s)


@dataclass(frozen=True)
class Witness:
    algebra: DoubleAlgebra
    certificate: dict

    def to_json(self) -> dict:
        return {"algebra": self.algebra.to_json(), "certificate": self.certificate}


def find_nonregular_witness(n: int, max_order: Optional[int] = None) -> Optional[Witness]:
    """Lexicographically least non-regular antilattice of order ``n``, if any."""
    _check_bound(n, max_order, "witness search")
    tables = all_rectangular_tables(n, max_order=n)
    bank = _TableBank(tables)
    for j in range(len(tables)):
        mask = _regular_mask(bank, j)
        if not mask.all():
            k = int(np.flatnonzero(~mask)[0])
            A = DoubleAlgebra(tables[j], tables[k])
            cert = regularity_certificate(A)
            if cert is None:
                raise ConsistencyError("vectorized scan and certificate search disagree")
            return Witness(A, cert)
    return None


def smallest_nonregular_order(max_n: int = 8) -> Optional[tuple[int, Witness]]:
    for n in range(1, max_n + 1):
        w = find_nonregular_witness(n, max_order=max(max_n, n))
        if w is not None:
            return n, w
    return None


# --- brute-force subalgebras and congruences ----------------------------------------

def _closed_mask(A: DoubleAlgebra) -> np.ndarray:
    n = A.n
    masks = np.arange(1 << n, dtype=np.int64)
    bits = [((masks >> x) & 1).astype(bool) for x in range(n)]
    closed = np.ones(1 << n, dtype=bool)
    for t in (A.join.table.tolist(), A.meet.table.tolist()):
        for x in range(n):
            for y in range(n):
                z = t[x][y]
                if z != x and z != y:
                    closed &= ~(bits[x] & bits[y]) | bits[z]
    return closed


def subalgebras_bruteforce(A: DoubleAlgebra, max_order: int = SUBALGEBRA_MAX_ORDER) -> list[tuple[int, ...]]:
    """Every subset closed under both operations, the empty set included."""
    if A.n > max_order:
        raise CapacityError(f"subalgebra brute force limited to order {max_order}, got {A.n}")
    n = A.n
    return [tuple(x for x in range(n) if s >> x & 1) for s in np.flatnonzero(_closed_mask(A)).tolist()]


def count_subalgebras_bruteforce(A: DoubleAlgebra, max_order: int = SUBALGEBRA_MAX_ORDER) -> int:
    if A.n > max_order:
        raise CapacityError(f"subalgebra brute force limited to order {max_order}, got {A.n}")
    return int(_closed_mask(A).sum())


def congruences_bruteforce(A: DoubleAlgebra, max_order: int = CONGRUENCE_MAX_ORDER):
    """Every partition of the carrier that is a congruence of both operations."""
    if A.n > max_order:
        raise CapacityError(f"congruence brute force limited to order {max_order}, got {A.n}")
    return [p for p in all_partitions(A.n) if is_congruence_double(p, A)]
