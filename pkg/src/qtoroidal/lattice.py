"""Rank-2 weight lattice P = Z e1 + Z e2 and its root sublattice Q = Z alpha0.

Indices are folded mod 2 (e_{i+2} = e_i), so e0 is the same vector as e2.
"""

from __future__ import annotations

from typing import NamedTuple

from .qscalar import QScalar


class Weight(NamedTuple):
    c1: int
    c2: int

    def __add__(self, other):
        return Weight(self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other):
        return Weight(self.c1 - other.c1, self.c2 - other.c2)

    def __neg__(self):
        return Weight(-self.c1, -self.c2)

    def scale(self, k: int) -> "Weight":
        return Weight(k * self.c1, k * self.c2)

    def is_zero(self) -> bool:
        return self.c1 == 0 and self.c2 == 0


class RootElt(NamedTuple):
    """The element m * alpha0 with alpha0 = e1 - e2."""

    m: int

    def weight(self) -> Weight:
        return Weight(self.m, -self.m)

    def __add__(self, other):
        return RootElt(self.m + other.m)

    def __neg__(self):
        return RootElt(-self.m)


def fold(i: int) -> int:
    """Map any integer index to its representative in {1, 2}."""
    return 2 if i % 2 == 0 else 1


def basis(i: int) -> Weight:
    return Weight(1, 0) if fold(i) == 1 else Weight(0, 1)


ALPHA0 = Weight(1, -1)


def root_of(i: int, j: int) -> RootElt:
    """e_i - e_j as an element of Q (indices folded)."""
    w = basis(i) - basis(j)
    if w.c1 != -w.c2:
        raise ValueError("not in the root lattice")
    return RootElt(w.c1)


def bilinear(a: Weight, b: Weight) -> int:
    return a.c1 * b.c1 + a.c2 * b.c2


def bilinear_idx(i: int, j: int) -> int:
    return 1 if fold(i) == fold(j) else 0


def cocycle(a: RootElt, b: RootElt) -> int:
    # bimultiplicative with eps(alpha0, alpha0) = -1
    return -1 if (a.m * b.m) % 2 else 1


def zero_mode(b: Weight, point: RootElt) -> int:
    """Eigenvalue of b(0) on e^point."""
    return bilinear(b, point.weight())


def valuation(mu: QScalar, a: Weight, point: RootElt) -> QScalar:
    """mu^{(a, beta)} acting on e^beta."""
    mu = QScalar.coerce(mu)
    if mu.is_zero():
        raise ValueError("valuation base must be non-zero")
    return mu ** bilinear(a, point.weight())
