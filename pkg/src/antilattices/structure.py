"""Regularity, the four-factor flat decomposition, signatures and isomorphism."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Optional

import numpy as np

from .config import ISO_MAX_ORDER, MAX_CARRIER, CapacityError, ConsistencyError, ContractViolation
from .core import (
    FLAT_ORDER,
    DoubleAlgebra,
    FlatClass,
    direct_product,
    flat_class,
    is_antilattice,
    make_flat,
    trivial_algebra,
)
from .relations import (
    Partition,
    all_partitions,
    congruence_violation,
    greens_L,
    greens_R,
    is_congruence_double,
    partition_join,
    partition_meet,
    projection_is_homomorphism,
    quotient,
    relations_compose,
)
from .terms import holds_all, j, m, map_identities, mirror, swap_ops


class FlatSignature(NamedTuple):
    n_LL: int
    n_LR: int
    n_RL: int
    n_RR: int

    @classmethod
    def of(cls, values) -> "FlatSignature":
        values = tuple(values)
        if len(values) != 4:
            raise ValueError(f"a signature has four components, got {len(values)}")
        if any(isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v < 1 for v in values):
            raise ValueError(f"signature components must be positive integers, got {values}")
        return cls(*(int(v) for v in values))

    @property
    def order(self) -> int:
        return self.n_LL * self.n_LR * self.n_RL * self.n_RR

    def __str__(self):
        return ",".join(str(v) for v in self)


@dataclass(frozen=True)
class Decomposition:
    signature: FlatSignature
    factors: tuple[DoubleAlgebra, DoubleAlgebra, DoubleAlgebra, DoubleAlgebra]
    iso: tuple[tuple[int, int, int, int], ...]

    def to_json(self) -> dict:
        return {
            "signature": list(self.signature),
            "iso": [list(t) for t in self.iso],
            "factors": {str(c): f.to_json() for c, f in zip(FLAT_ORDER, self.factors)},
        }


def _require_antilattice(A: DoubleAlgebra):
    if not is_antilattice(A):
        raise ContractViolation("input is not an antilattice (a reduct is not a rectangular band)")


def greens_four(A: DoubleAlgebra) -> dict[str, Partition]:
    return {
        "L(join)": greens_L(A.join),
        "R(join)": greens_R(A.join),
        "L(meet)": greens_L(A.meet),
        "R(meet)": greens_R(A.meet),
    }


def regularity_certificate(A: DoubleAlgebra) -> Optional[dict]:
    """Why ``A`` fails to be regular, or ``None`` when it is regular.

    The certificate names the Green's relation, the operation it is not
    compatible with, and a triple ``(x, y, z)`` with ``x ~ y`` whose products
    with ``z`` on ``side`` fall in different classes.
    """
    _require_antilattice(A)
    for name, p in greens_four(A).items():
        for op_name, t in (("join", A.join), ("meet", A.meet)):
            bad = congruence_violation(p, t)
            if bad is not None:
                x, y, z, side = bad
                return {"relation": name, "operation": op_name, "triple": [x, y, z], "side": side}
    return None


def is_regular(A: DoubleAlgebra) -> bool:
    _require_antilattice(A)
    return all(is_congruence_double(p, A) for p in greens_four(A).values())


# Compatibility of L(join) with the meet. L(join)-classes are {u v x : u}, so it
# suffices that y^x and y^(u v x) are L(join)-related, and likewise on the right.
_x, _y, _u = "x", "y", "u"
LJOIN_IDENTITIES = [
    (j(m(_y, _x), m(_y, j(_u, _x))), m(_y, _x)),
    (j(m(_y, j(_u, _x)), m(_y, _x)), m(_y, j(_u, _x))),
    (j(m(_x, _y), m(j(_u, _x), _y)), m(_x, _y)),
    (j(m(j(_u, _x), _y), m(_x, _y)), m(j(_u, _x), _y)),
]
# The same quadruple with (y ^ x) in the last left-hand side, as it is
# sometimes printed; it rejects flat RR algebras and is kept only for tests.
LJOIN_IDENTITIES_MISPRINT = LJOIN_IDENTITIES[:3] + [
    (j(m(j(_u, _x), _y), m(_y, _x)), m(j(_u, _x), _y)),
]


def derive_regularity_families(base) -> dict[str, list]:
    """Identity families for all four Green's relations from the L(join) one.

    Mirroring the join swaps L(join) and R(join); exchanging the operations
    sends L(join) to L(meet); mirroring the meet then gives R(meet).
    """
    to_meet = map_identities(swap_ops, base)
    return {
        "L(join)": list(base),
        "R(join)": map_identities(lambda t: mirror(t, "j"), base),
        "L(meet)": to_meet,
        "R(meet)": map_identities(lambda t: mirror(t, "m"), to_meet),
    }


REGULARITY_FAMILIES = derive_regularity_families(LJOIN_IDENTITIES)


def is_regular_by_identities(A: DoubleAlgebra, families: Optional[dict] = None) -> bool:
    families = REGULARITY_FAMILIES if families is None else families
    return all(holds_all(idents, A) for idents in families.values())


# --- decomposition -----------------------------------------------------------

def factor_congruences(A: DoubleAlgebra) -> dict[FlatClass, Partition]:
    """The four joins whose quotients are the maximal flat images.

    Collapsing R(join) makes the join left-zero, hence the letter pattern.
    """
    g = greens_four(A)
    return {
        FlatClass.LL: partition_join(g["R(join)"], g["R(meet)"]),
        FlatClass.LR: partition_join(g["R(join)"], g["L(meet)"]),
        FlatClass.RL: partition_join(g["L(join)"], g["R(meet)"]),
        FlatClass.RR: partition_join(g["L(join)"], g["L(meet)"]),
    }


def decompose(A: DoubleAlgebra) -> Decomposition:
    """Factor a regular antilattice into its four flat images.

    Every step the theory guarantees is checked; a failure raises
    :class:`ConsistencyError`.
    """
    if not is_regular(A):
        cert = regularity_certificate(A)
        raise ContractViolation(
            f"not a regular antilattice: {cert['relation']} is not a congruence of the "
            f"{cert['operation']} (triple {cert['triple']}, {cert['side']} side)"
        )
    thetas = factor_congruences(A)
    factors = []
    for c in FLAT_ORDER:
        theta = thetas[c]
        if not is_congruence_double(theta, A):
            raise ConsistencyError(f"the {c} factor relation is not a congruence")
        F = quotient(A, theta)
        if F.n > 1 and flat_class(F) != c:
            raise ConsistencyError(f"quotient for {c} is not flat of class {c}")
        if not projection_is_homomorphism(A, theta, F):
            raise ConsistencyError(f"projection onto the {c} factor is not a homomorphism")
        factors.append(F)
    sig = FlatSignature(*(F.n for F in factors))
    iso = tuple(zip(*(thetas[c].class_of for c in FLAT_ORDER)))
    if sig.order != A.n or len(set(iso)) != A.n:
        raise ConsistencyError(f"factor map onto signature {tuple(sig)} is not a bijection")
    return Decomposition(sig, tuple(factors), iso)


def signature(A: DoubleAlgebra) -> FlatSignature:
    return decompose(A).signature


def fast_signature(A: DoubleAlgebra) -> FlatSignature:
    """Class counts of the four factor congruences, without verification."""
    thetas = factor_congruences(A)
    return FlatSignature(*(thetas[c].num_classes for c in FLAT_ORDER))


def canonical_product(sig, max_carrier: int = MAX_CARRIER) -> DoubleAlgebra:
    sig = FlatSignature.of(sig)
    if sig.order > max_carrier:
        raise CapacityError(f"signature {tuple(sig)} has order {sig.order} > {max_carrier}")
    result = trivial_algebra()
    for size, c in zip(sig, FLAT_ORDER):
        if size > 1:
            result = make_flat(size, c) if result.n == 1 else direct_product(result, make_flat(size, c))
    return result


def are_isomorphic(A: DoubleAlgebra, B: DoubleAlgebra) -> bool:
    for X in (A, B):
        if not is_antilattice(X) or not is_regular(X):
            raise ContractViolation("are_isomorphic needs regular antilattices; use are_isomorphic_bruteforce")
    return A.n == B.n and signature(A) == signature(B)


# --- brute-force isomorphism -------------------------------------------------

def _element_invariants(A: DoubleAlgebra) -> list[tuple]:
    n = A.n
    x = np.arange(n)
    inv = []
    for t in (A.join.table, A.meet.table):
        in_degree = np.bincount(t.ravel(), minlength=n)
        fixes_right = (t == x[:, None]).sum(axis=1)  # #{y: xy = x}
        fixes_left = (t == x[None, :]).sum(axis=0)  # #{y: yx = x}
        idem = np.diagonal(t) == x
        inv.append(np.stack([in_degree, fixes_right, fixes_left, idem]).T)
    both = np.concatenate(inv, axis=1)
    return [tuple(row) for row in both.tolist()]


def is_isomorphism(A: DoubleAlgebra, B: DoubleAlgebra, f) -> bool:
    f = np.asarray(f)
    if A.n != B.n or sorted(f.tolist()) != list(range(B.n)):
        return False
    for ta, tb in ((A.join.table, B.join.table), (A.meet.table, B.meet.table)):
        if not np.array_equal(f[ta], tb[f[:, None], f[None, :]]):
            return False
    return True


def are_isomorphic_bruteforce(A: DoubleAlgebra, B: DoubleAlgebra, max_order: int = ISO_MAX_ORDER):
    """Search for a bijection preserving both operations.

    Images are restricted to elements with equal invariants (in-degree and
    fixed-point counts per operation), and partial maps are pruned as soon
    as a product of mapped elements is mapped inconsistently. Returns the
    bijection as a tuple, or ``None``.
    """
    if A.n != B.n:
        return None
    n = A.n
    if n > max_order:
        raise CapacityError(f"brute-force isomorphism limited to order {max_order}, got {n}")
    inv_a, inv_b = _element_invariants(A), _element_invariants(B)
    if sorted(inv_a) != sorted(inv_b):
        return None
    candidates = [[y for y in range(n) if inv_b[y] == inv_a[x]] for x in range(n)]
    order = sorted(range(n), key=lambda x: len(candidates[x]))
    ops = [(A.join.table.tolist(), B.join.table.tolist()), (A.meet.table.tolist(), B.meet.table.tolist())]
    f = [-1] * n
    used = [False] * n

    def consistent(x):
        for ta, tb in ops:
            for a in range(n):
                if f[a] < 0:
                    continue
                for p, q in ((x, a), (a, x)):
                    prod = ta[p][q]
                    if f[prod] >= 0 and f[prod] != tb[f[p]][f[q]]:
                        return False
        return True

    def search(i):
        if i == n:
            return True
        x = order[i]
        for y in candidates[x]:
            if used[y]:
                continue
            f[x] = y
            used[y] = True
            if consistent(x) and search(i + 1):
                return True
            f[x] = -1
            used[y] = False
        return False

    if search(0) and is_isomorphism(A, B, f):
        return tuple(f)
    return None


# --- irreducibility ----------------------------------------------------------

def is_prime(k: int) -> bool:
    if k < 2:
        return False
    d = 2
    while d * d <= k:
        if k % d == 0:
            return False
        d += 1
    return True


def is_directly_irreducible(A: DoubleAlgebra) -> bool:
    _require_antilattice(A)
    if not is_regular(A):
        raise ContractViolation("is_directly_irreducible expects a regular antilattice")
    return A.n == 1 or is_prime(A.n)


def direct_factor_pair(A: DoubleAlgebra, max_order: int = 8) -> Optional[tuple[Partition, Partition]]:
    """A pair of nontrivial complementary permuting congruences, if any.

    Such a pair exists iff ``A`` is a nontrivial direct product. Exhaustive
    over all partitions, so only for small carriers.
    """
    n = A.n
    if n > max_order:
        raise CapacityError(f"direct factor search limited to order {max_order}, got {n}")
    identity, universal = Partition.identity(n), Partition.universal(n)
    congs = [p for p in all_partitions(n) if p not in (identity, universal) and is_congruence_double(p, A)]
    full = universal.pairs()
    for p, q in combinations(congs, 2):
        if partition_meet(p, q) == identity and relations_compose(p, q) == full:
            return p, q
    return None
