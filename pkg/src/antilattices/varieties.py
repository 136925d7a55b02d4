"""The sixteen positive subvarieties of regular antilattices.

A variety is identified with its set of flat atoms; join, meet and
complement are union, intersection and complement of atom sets. Membership
is read off the flat signature, and each variety also carries a defining
identity set used as an independent check.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import FLAT_ORDER, DoubleAlgebra, FlatClass
from .structure import FlatSignature, signature
from .terms import holds_all, j, m, map_identities, mirror

ATOMS = frozenset(FLAT_ORDER)


@dataclass(frozen=True)
class Variety:
    atoms: frozenset

    def __post_init__(self):
        object.__setattr__(self, "atoms", frozenset(FlatClass(a) for a in self.atoms))

    @classmethod
    def of(cls, *atoms) -> "Variety":
        return cls(frozenset(atoms))

    def __str__(self):
        return variety_name(self)

    def __le__(self, other):
        return self.atoms <= other.atoms

    def __lt__(self, other):
        return self.atoms < other.atoms


LL, LR, RL, RR = FLAT_ORDER

_NAMES = {
    frozenset(): "1",
    frozenset({LL}): "LL",
    frozenset({LR}): "LR",
    frozenset({RL}): "RL",
    frozenset({RR}): "RR",
    frozenset({LL, LR}): "L*",
    frozenset({RL, RR}): "R*",
    frozenset({LL, RL}): "*L",
    frozenset({LR, RR}): "*R",
    frozenset({LR, RL}): "s",
    frozenset({LL, RR}): "s*",
    frozenset({LL, LR, RL}): "RR^C",
    frozenset({LL, LR, RR}): "RL^C",
    frozenset({LL, RL, RR}): "LR^C",
    frozenset({LR, RL, RR}): "LL^C",
    ATOMS: "RA",
}
_BY_NAME = {name: Variety(atoms) for atoms, name in _NAMES.items()}

#: symbols in the order of the published Hasse-diagram table
SYMBOLS = ("RA", "RR^C", "RL^C", "LR^C", "LL^C", "s", "L*", "*R", "*L", "R*", "s*", "LL", "LR", "RL", "RR", "1")

DESCRIPTIONS = {
    "RA": "regular antilattices",
    "RR^C": "complement of RR",
    "RL^C": "complement of RL",
    "LR^C": "complement of LR",
    "LL^C": "complement of LL",
    "s": "skew antilattices",
    "L*": "L* semi-flat",
    "*R": "*R semi-flat",
    "*L": "*L semi-flat",
    "R*": "R* semi-flat",
    "s*": "skew* antilattices",
    "LL": "LL-flat",
    "LR": "LR-flat",
    "RL": "RL-flat",
    "RR": "RR-flat",
    "1": "trivial antilattice",
}


def all_varieties() -> list[Variety]:
    return [_BY_NAME[s] for s in SYMBOLS]


def variety_name(V: Variety) -> str:
    return _NAMES[V.atoms]


def parse_variety(symbol: str) -> Variety:
    try:
        return _BY_NAME[symbol]
    except KeyError:
        raise ValueError(f"unknown variety {symbol!r}; valid symbols: {', '.join(SYMBOLS)}") from None


def _as_variety(V) -> Variety:
    return parse_variety(V) if isinstance(V, str) else V


def variety_join(V, W) -> Variety:
    return Variety(_as_variety(V).atoms | _as_variety(W).atoms)


def variety_meet(V, W) -> Variety:
    return Variety(_as_variety(V).atoms & _as_variety(W).atoms)


def variety_complement(V) -> Variety:
    return Variety(ATOMS - _as_variety(V).atoms)


def subvarieties(V) -> list[Variety]:
    atoms = sorted(_as_variety(V).atoms)
    return [Variety(frozenset(c)) for k in range(len(atoms) + 1) for c in combinations(atoms, k)]


def membership_of_signature(sig: FlatSignature) -> Variety:
    return Variety(frozenset(c for c, size in zip(FLAT_ORDER, sig) if size > 1))


def membership(A: DoubleAlgebra) -> Variety:
    """Smallest variety containing ``A``: the atoms whose factor is nontrivial."""
    return membership_of_signature(signature(A))


def contains(V, A: DoubleAlgebra) -> bool:
    return membership(A).atoms <= _as_variety(V).atoms


# --- defining identities -------------------------------------------------------

_x, _y = "x", "y"
# no copy of 2_RR: x v (x ^ y) = x and its join/meet dual
_NO_RR = [(j(_x, m(_x, _y)), _x), (m(_x, j(_x, _y)), _x)]


def _mirror_join(t):
    return mirror(t, "j")


def _mirror_meet(t):
    return mirror(t, "m")


def _both(t):
    return mirror(t, "jm")


_SEMI = {
    "L*": [(j(_x, _y), _x)],
    "R*": [(j(_x, _y), _y)],
    "*L": [(m(_x, _y), _x)],
    "*R": [(m(_x, _y), _y)],
}

# Mirroring the join flips the first letter of every atom and mirroring the
# meet flips the second, so the RR-free identities map to the other three.
IDENTITIES: dict[str, list] = {
    "RA": [],
    "RR^C": _NO_RR,
    "LR^C": map_identities(_mirror_join, _NO_RR),
    "RL^C": map_identities(_mirror_meet, _NO_RR),
    "LL^C": map_identities(_both, _NO_RR),
    "s": [(j(_x, _y), m(_y, _x))],
    "s*": [(j(_x, _y), m(_x, _y))],
    **_SEMI,
    "LL": _SEMI["L*"] + _SEMI["*L"],
    "LR": _SEMI["L*"] + _SEMI["*R"],
    "RL": _SEMI["R*"] + _SEMI["*L"],
    "RR": _SEMI["R*"] + _SEMI["*R"],
    "1": [(_x, _y)],
}


def satisfies_defining_identities(V, A: DoubleAlgebra) -> bool:
    return holds_all(IDENTITIES[variety_name(_as_variety(V))], A)


def membership_by_identities(A: DoubleAlgebra) -> Variety:
    """Least variety whose identities ``A`` satisfies, found by scanning all 16."""
    fits = [V for V in all_varieties() if satisfies_defining_identities(V, A)]
    least = min(fits, key=lambda V: len(V.atoms))
    return least
