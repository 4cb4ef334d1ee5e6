"""Finite Abelian group algebra: Cayley tables, permutation representation, circulants.

Elements are canonically labeled ``0 .. q-1`` with ``0`` the identity; callers
with other labelings must relabel first.  Groups carry a dense Cayley table,
which keeps every operation exact for the desk scale this library targets
(q <= 64; the associativity check is O(q^3)).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np


class GroupTableError(ValueError):
    """A candidate Cayley table violates a group axiom.

    ``code`` is one of ``"not_latin_square"``, ``"bad_identity"``,
    ``"missing_inverse"``, ``"not_commutative"``, ``"not_associative"``.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True, eq=False)
class FiniteAbelianGroup:
    """An Abelian group of order ``q`` given by its Cayley table.

    ``cayley[x][y]`` is x (+) y.  Instances are immutable and safe to share.
    """

    order: int
    cayley: np.ndarray = field(repr=False)
    _inverse: np.ndarray = field(repr=False, compare=False)

    def add(self, x: int, y: int) -> int:
        return int(self.cayley[x, y])

    def inverse(self, x: int) -> int:
        return int(self._inverse[x])

    def elements(self) -> range:
        return range(self.order)

    def to_json(self) -> str:
        return json.dumps({"order": self.order, "table": self.cayley.tolist()})


def _build(table: np.ndarray) -> FiniteAbelianGroup:
    q = table.shape[0]
    inv = np.empty(q, dtype=int)
    for x in range(q):
        inv[x] = int(np.nonzero(table[x] == 0)[0][0])
    table = table.copy()
    table.flags.writeable = False
    inv.flags.writeable = False
    return FiniteAbelianGroup(order=q, cayley=table, _inverse=inv)


def validate_group(table) -> FiniteAbelianGroup:
    """Check all five group axioms on a q x q table and wrap it on success.

    Raises GroupTableError with a distinct code per failed axiom, checked in
    the order: latin square, identity, inverses, commutativity, associativity.
    """
    t = np.asarray(table, dtype=int)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise ValueError(f"Cayley table must be a nonempty square matrix, got shape {t.shape}")
    q = t.shape[0]
    if t.min() < 0 or t.max() >= q:
        raise ValueError(f"Cayley table entries must lie in 0..{q - 1}")

    full = set(range(q))
    for x in range(q):
        if set(t[x].tolist()) != full or set(t[:, x].tolist()) != full:
            raise GroupTableError(
                "not_latin_square", f"row/column {x} is not a permutation of 0..{q - 1}"
            )
    for x in range(q):
        if t[0, x] != x or t[x, 0] != x:
            raise GroupTableError("bad_identity", f"element 0 does not act as identity on {x}")
    for x in range(q):
        if not np.any(t[x] == 0):
            raise GroupTableError("missing_inverse", f"element {x} has no inverse")
    for x in range(q):
        for y in range(x + 1, q):
            if t[x, y] != t[y, x]:
                raise GroupTableError("not_commutative", f"{x}+{y} != {y}+{x}")
    # exhaustive O(q^3) associativity check; vectorized one x at a time
    for x in range(q):
        if not np.array_equal(t[t[x], :], t[x, t]):
            raise GroupTableError("not_associative", f"associativity fails for some (x={x},y,z)")
    return _build(t)


def cyclic_group(q: int) -> FiniteAbelianGroup:
    """Integers mod q under addition."""
    if q < 1:
        raise ValueError(f"group order must be >= 1, got {q}")
    idx = np.arange(q)
    return _build((idx[:, None] + idx[None, :]) % q)


def direct_product(g: FiniteAbelianGroup, h: FiniteAbelianGroup) -> FiniteAbelianGroup:
    """Component-wise product group, with (a, b) encoded as a*|h| + b."""
    qg, qh = g.order, h.order
    table = np.empty((qg * qh, qg * qh), dtype=int)
    for a1 in range(qg):
        for b1 in range(qh):
            row = g.cayley[a1][:, None] * qh + h.cayley[b1][None, :]
            table[a1 * qh + b1] = row.reshape(-1)
    return _build(table)


def group_from_json(text: str) -> FiniteAbelianGroup:
    """Load and validate a group from ``{"order": q, "table": [[...], ...]}``."""
    data = json.loads(text)
    table = np.asarray(data["table"], dtype=int)
    if table.shape != (data["order"], data["order"]):
        raise ValueError("table shape does not match declared order")
    return validate_group(table)


def permutation_matrix(group: FiniteAbelianGroup, x: int) -> np.ndarray:
    """Permutation matrix of left addition by x.

    Column y holds the standard basis vector e_{x (+) y}, so for a row vector
    v, (v P_x)[y] = v[x (+) y].  P_0 is the identity and x -> P_x is a group
    homomorphism.
    """
    q = group.order
    if not 0 <= x < q:
        raise ValueError(f"element {x} out of range for group of order {q}")
    p = np.zeros((q, q))
    p[group.cayley[x], np.arange(q)] = 1.0
    return p


def circulant(group: FiniteAbelianGroup, vec) -> np.ndarray:
    """Group circulant of a length-q row vector: entry (a, b) is vec[-a (+) b].

    Doubly stochastic whenever vec is a pmf; all circulants of one group
    commute and multiply by convolving their defining vectors.
    """
    v = np.asarray(vec, dtype=float)
    q = group.order
    if v.shape != (q,):
        raise ValueError(f"vector length {v.shape} does not match group order {q}")
    rows = group.cayley[group._inverse]  # rows[a][b] = (-a) (+) b
    return v[rows]


def group_convolve(group: FiniteAbelianGroup, x, y) -> np.ndarray:
    """Group convolution of two row vectors: x . circulant(y).  Commutative."""
    xv = np.asarray(x, dtype=float)
    q = group.order
    if xv.shape != (q,):
        raise ValueError(f"vector length {xv.shape} does not match group order {q}")
    return xv @ circulant(group, y)
