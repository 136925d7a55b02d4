"""Terms over join/meet, identity checking by full ground scan, and the
symmetries of the signature {join, meet}.

A term is a variable name (``str``) or a triple ``(op, left, right)`` with
``op`` either ``"j"`` (join) or ``"m"`` (meet).
"""
from __future__ import annotations

from typing import Iterable, Union

import numpy as np

from .core import DoubleAlgebra

Term = Union[str, tuple]
Identity = tuple  # (lhs, rhs)

_SYMBOL = {"j": "v", "m": "^"}


def j(a: Term, b: Term) -> Term:
    return ("j", a, b)


def m(a: Term, b: Term) -> Term:
    return ("m", a, b)


def variables(term: Term) -> set[str]:
    if isinstance(term, str):
        return {term}
    return variables(term[1]) | variables(term[2])


def show(term: Term) -> str:
    if isinstance(term, str):
        return term
    op, a, b = term
    left = show(a) if isinstance(a, str) else f"({show(a)})"
    right = show(b) if isinstance(b, str) else f"({show(b)})"
    return f"{left} {_SYMBOL[op]} {right}"


def show_identity(ident: Identity) -> str:
    return f"{show(ident[0])} = {show(ident[1])}"


def evaluate(term: Term, A: DoubleAlgebra, env: dict[str, np.ndarray]) -> np.ndarray:
    if isinstance(term, str):
        return env[term]
    op, a, b = term
    table = A.join.table if op == "j" else A.meet.table
    return table[evaluate(a, A, env), evaluate(b, A, env)]


def _env(names: list[str], n: int) -> dict[str, np.ndarray]:
    k = len(names)
    env = {}
    for axis, name in enumerate(names):
        shape = [1] * k
        shape[axis] = n
        env[name] = np.arange(n).reshape(shape)
    return env


def holds(ident: Identity, A: DoubleAlgebra) -> bool:
    """Check the identity on every assignment of its variables."""
    lhs, rhs = ident
    names = sorted(variables(lhs) | variables(rhs))
    env = _env(names, A.n)
    return bool(np.all(evaluate(lhs, A, env) == evaluate(rhs, A, env)))


def holds_all(idents: Iterable[Identity], A: DoubleAlgebra) -> bool:
    return all(holds(ident, A) for ident in idents)


def counterexample(ident: Identity, A: DoubleAlgebra):
    """An assignment falsifying the identity, or ``None``."""
    lhs, rhs = ident
    names = sorted(variables(lhs) | variables(rhs))
    env = _env(names, A.n)
    ok = np.broadcast_to(evaluate(lhs, A, env) == evaluate(rhs, A, env), (A.n,) * len(names))
    bad = np.argwhere(~ok)
    if len(bad) == 0:
        return None
    return dict(zip(names, bad[0].tolist()))


# --- symmetries ----------------------------------------------------------------

def mirror(term: Term, ops: str = "jm") -> Term:
    """Swap argument order of every operation listed in ``ops``."""
    if isinstance(term, str):
        return term
    op, a, b = term
    a, b = mirror(a, ops), mirror(b, ops)
    return (op, b, a) if op in ops else (op, a, b)


def swap_ops(term: Term) -> Term:
    """Exchange join and meet."""
    if isinstance(term, str):
        return term
    op, a, b = term
    return ("m" if op == "j" else "j", swap_ops(a), swap_ops(b))


def map_identities(fn, idents: Iterable[Identity]) -> list[Identity]:
    return [(fn(lhs), fn(rhs)) for lhs, rhs in idents]
