"""Exact vacuum expectations of ladder-operator products, two ways.

Operators are tokens ``("a", i)``, ``("ad", i)`` or ``("A", i)`` where
``A_i = a_i - a_i^dagger`` is the field quadrature appearing in the force
operator.  :func:`contraction_expectation` sums over pair contractions;
:func:`fock_expectation` applies the operators to occupation states with
integer arithmetic.  Both are exact, so they must agree exactly.
"""
from __future__ import annotations

from collections import defaultdict
from itertools import product


def _expand(op):
    kind, i = op
    if kind == "A":
        return [(1, ("a", i)), (-1, ("ad", i))]
    if kind in ("a", "ad"):
        return [(1, op)]
    raise ValueError(f"unknown operator {kind!r}")


def _two_point(x, y):
    # <0| x y |0> for single ladder operators
    return 1 if x[0] == "a" and y[0] == "ad" and x[1] == y[1] else 0


def contraction_expectation(ops):
    """Sum over all complete pairings, each pair keeping its operator order."""
    ops = list(ops)
    if len(ops) % 2:
        return 0
    total = 0
    for terms in product(*(_expand(op) for op in ops)):
        sign = 1
        for s, _ in terms:
            sign *= s
        total += sign * _pairings([t for _, t in terms])
    return total


def _pairings(ladder):
    if not ladder:
        return 1
    first, rest = ladder[0], ladder[1:]
    total = 0
    for j, other in enumerate(rest):
        c = _two_point(first, other)
        if c:
            total += c * _pairings(rest[:j] + rest[j + 1:])
    return total


def fock_expectation(ops, n_modes):
    """``<0| ops[0] ops[1] ... |0>`` by explicit action on occupation states.

    Amplitudes are stored as integers ``c`` multiplying ``sqrt(prod n_i!)|n>``,
    under which ``a^dagger`` leaves ``c`` unchanged and ``a`` multiplies it
    by ``n_i``.
    """
    state = {(0,) * n_modes: 1}
    for op in reversed(list(ops)):
        new = defaultdict(int)
        for sign, (kind, i) in _expand(op):
            for occ, c in state.items():
                if kind == "ad":
                    nxt = occ[:i] + (occ[i] + 1,) + occ[i + 1:]
                    new[nxt] += sign * c
                elif occ[i]:
                    nxt = occ[:i] + (occ[i] - 1,) + occ[i + 1:]
                    new[nxt] += sign * c * occ[i]
        state = {k: v for k, v in new.items() if v}
    return state.get((0,) * n_modes, 0)


def quadratic_form_variance(C, method="contraction"):
    """Vacuum variance of ``F = sum_ij C_ij A_i A_j`` for a small integer matrix.

    ``method='contraction'`` uses the closed Wick result ``2 sum_ij C_ij^2``
    for symmetric C (the reduction used by the variance oracle);
    ``method='fock'`` does the full operator algebra.
    """
    n = len(C)
    if method == "contraction":
        if any(C[i][j] != C[j][i] for i in range(n) for j in range(n)):
            raise ValueError("closed contraction form needs a symmetric matrix")
        return 2 * sum(C[i][j] ** 2 for i in range(n) for j in range(n))
    if method != "fock":
        raise ValueError(f"unknown method {method!r}")
    idx = [(i, j) for i in range(n) for j in range(n)]
    mean = sum(C[i][j] * fock_expectation([("A", i), ("A", j)], n) for i, j in idx)
    square = sum(C[i][j] * C[k][l] * fock_expectation([("A", i), ("A", j), ("A", k), ("A", l)], n)
                 for (i, j) in idx for (k, l) in idx)
    return square - mean * mean
