"""Closed-form counts: rho(n), per-variety counts, subalgebras, congruences.

All arithmetic is exact (Python integers), so nothing wraps around.
"""
from __future__ import annotations

import json
import threading
from math import comb, prod

from .structure import FlatSignature
from .varieties import SYMBOLS, parse_variety, subvarieties

BELL_CACHE_SIZE = 64


def _check_positive(n, what="n"):
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError(f"{what} must be a positive integer, got {n!r}")


def factorize(n: int) -> list[tuple[int, int]]:
    """Trial division; ``1`` factors as the empty list."""
    _check_positive(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def compositions(e: int, k: int) -> int:
    """Ways to place ``e`` identical balls into ``k`` labeled boxes."""
    if e < 0:
        raise ValueError(f"e must be nonnegative, got {e}")
    _check_positive(k, "k")
    return comb(e + k - 1, k - 1)


def rho(n: int) -> int:
    """Number of regular antilattices of order ``n`` up to isomorphism."""
    return prod(compositions(e, 4) for _, e in factorize(n))


def count_in_variety(V, n: int) -> int:
    _check_positive(n)
    V = parse_variety(V) if isinstance(V, str) else V
    k = len(V.atoms)
    if k == 0:
        return 1 if n == 1 else 0
    return prod(compositions(e, k) for _, e in factorize(n))


def exact_membership_count(V, n: int) -> int:
    """Algebras whose least variety is exactly ``V``, by inclusion-exclusion."""
    V = parse_variety(V) if isinstance(V, str) else V
    total = 0
    for W in subvarieties(V):
        sign = -1 if (len(V.atoms) - len(W.atoms)) % 2 else 1
        total += sign * count_in_variety(W, n)
    return total


def subalgebra_count(sig) -> int:
    """``1 + prod(2^k - 1)``; the leading 1 is the empty subalgebra."""
    sig = FlatSignature.of(sig)
    return 1 + prod(2**k - 1 for k in sig)


def _bell_triangle(upto: int) -> list[int]:
    bells = [1]
    row = [1]
    for _ in range(upto):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
        bells.append(row[0])
    return bells


_bell_lock = threading.Lock()
_BELL = _bell_triangle(BELL_CACHE_SIZE)


def bell(k: int) -> int:
    """Number of partitions of a ``k``-set."""
    if k < 0:
        raise ValueError(f"Bell numbers need k >= 0, got {k}")
    if k < len(_BELL):
        return _BELL[k]
    with _bell_lock:
        return _bell_triangle(k)[k]


def congruence_count(sig) -> int:
    """Each factor's congruences are all equivalences of its carrier."""
    sig = FlatSignature.of(sig)
    return prod(bell(k) for k in sig)


# --- independent arithmetic used as cross-checks ----------------------------------

def divisor_count(n: int) -> int:
    _check_positive(n)
    return sum(1 for d in range(1, n + 1) if n % d == 0)


def ordered_factorizations(n: int, k: int) -> list[tuple[int, ...]]:
    """All ordered ``k``-tuples of positive integers with product ``n``."""
    _check_positive(n)
    if k == 1:
        return [(n,)]
    return [(d,) + rest for d in range(1, n + 1) if n % d == 0 for rest in ordered_factorizations(n // d, k - 1)]


def d3(n: int) -> int:
    _check_positive(n)
    return sum(1 for a in range(1, n + 1) if n % a == 0 for b in range(1, n // a + 1) if (n // a) % b == 0)


# --- the grouped table ------------------------------------------------------------

GROUPS = (
    ("RA", ("RA",), "A007426"),
    ("RR^c, RL^c, LR^c, LL^c", ("RR^C", "RL^C", "LR^C", "LL^C"), "A007425"),
    ("s, L*, *R, *L, R*, s*", ("s", "L*", "*R", "*L", "R*", "s*"), "A000005"),
    ("LL, LR, RL, RR", ("LL", "LR", "RL", "RR"), "A000012"),
    ("1", ("1",), ""),
)
COLUMN_KEYS = ("RA", "three_atom", "two_atom", "one_atom", "trivial")


def oeis_table(max_n: int) -> list[dict]:
    """Rows ``n = 1..max_n`` with one value per variety family.

    Each family shares one value per row; this is asserted, not assumed.
    """
    _check_positive(max_n, "max_n")
    rows = []
    for n in range(1, max_n + 1):
        row = {"n": n}
        for key, (_, symbols, _) in zip(COLUMN_KEYS, GROUPS):
            values = {count_in_variety(s, n) for s in symbols}
            if len(values) != 1:
                raise AssertionError(f"varieties {symbols} disagree at n={n}: {sorted(values)}")
            row[key] = values.pop()
        rows.append(row)
    return rows


def format_table(rows: list[dict]) -> str:
    header = ["n"] + [label for label, _, _ in GROUPS]
    oeis = ["OEIS"] + [code for _, _, code in GROUPS]
    body = [[str(r["n"])] + [str(r[k]) for k in COLUMN_KEYS] for r in rows]
    lines = [header, oeis] + body
    widths = [max(len(line[i]) for line in lines) for i in range(len(header))]

    def fmt(cells):
        return " | ".join(c.rjust(w) for c, w in zip(cells, widths)).rstrip()

    rule = "-+-".join("-" * w for w in widths)
    out = [fmt(header), rule, fmt(oeis), rule] + [fmt(b) for b in body]
    return "\n".join(out) + "\n"


def table_json(rows: list[dict]) -> str:
    return json.dumps(rows, indent=2) + "\n"


def all_variety_counts(n: int) -> dict[str, int]:
    return {s: count_in_variety(s, n) for s in SYMBOLS}

