"""Finite windows of bivariate formal distributions applied to Fock vectors.

A window cell (m, n) holds the coefficient of z^{-m} w^{-n}.  Operators enter
as component maps ``op(k, vec)`` returning the coefficient of var^{-k}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .fock import FockVector, vector_sum
from .qscalar import ONE, QScalar, ZERO, q_pow
from .report import Report
from .vertexop import uv_component, x_component

ComponentOp = Callable[[int, FockVector], FockVector]


def _span(r) -> range:
    lo, hi = r
    return range(lo, hi + 1)


@dataclass
class Window2:
    m_range: tuple
    n_range: tuple
    cells: dict = field(default_factory=dict)

    def __post_init__(self):
        for (m, n) in self.cells:
            if m not in _span(self.m_range) or n not in _span(self.n_range):
                raise ValueError(f"cell {(m, n)} outside window")
        self.cells = {k: v for k, v in self.cells.items() if v}

    @classmethod
    def square(cls, radius: int) -> "Window2":
        return cls((-radius, radius), (-radius, radius))

    def keys(self):
        for m in _span(self.m_range):
            for n in _span(self.n_range):
                yield m, n

    def get(self, m: int, n: int) -> FockVector:
        return self.cells.get((m, n), FockVector())

    def _same_shape(self, other):
        if (self.m_range, self.n_range) != (other.m_range, other.n_range):
            raise ValueError("window shapes differ")

    def __add__(self, other: "Window2") -> "Window2":
        self._same_shape(other)
        return Window2(self.m_range, self.n_range, {k: self.get(*k) + other.get(*k) for k in self.keys()})

    def __sub__(self, other: "Window2") -> "Window2":
        self._same_shape(other)
        return Window2(self.m_range, self.n_range, {k: self.get(*k) - other.get(*k) for k in self.keys()})

    def scale(self, c) -> "Window2":
        return Window2(self.m_range, self.n_range, {k: v.scale(c) for k, v in self.cells.items()})

    def __eq__(self, other):
        if not isinstance(other, Window2):
            return NotImplemented
        return (self.m_range, self.n_range) == (other.m_range, other.n_range) and self.cells == other.cells

    def compare(self, other: "Window2", report: Report, tag=None) -> Report:
        self._same_shape(other)
        for k in self.keys():
            loc = {"cell": list(k)}
            if isinstance(tag, dict):
                loc.update(tag)
            elif tag is not None:
                loc["state"] = tag
            report.check(loc, self.get(*k), other.get(*k))
        return report


def delta_support(diff: Window2):
    """Return s in {1, -1} if diff = delta(s w/z) D(w) on the window, else None.

    Such a difference has cells (m, n) = s^m D_{m+n}; an all-zero diff returns 0.
    """
    if not diff.cells:
        return 0
    for s in (1, -1):
        seen: dict = {}
        ok = True
        for (m, n), v in ((k, diff.get(*k)) for k in diff.keys()):
            v = v.scale(ONE if s == 1 or m % 2 == 0 else -ONE)
            if seen.setdefault(m + n, v) != v:
                ok = False
                break
        if ok:
            return s
    return None


def build_window(fn: Callable[[int, int], FockVector], m_range, n_range) -> Window2:
    return Window2(m_range, n_range, {(m, n): fn(m, n) for m in _span(m_range) for n in _span(n_range)})


def product_window(a_op: ComponentOp, b_op: ComponentOp, vec: FockVector, m_range, n_range, reverse=False) -> Window2:
    """Cells of A(z)B(w) vec, or of B(w)A(z) vec when ``reverse``."""
    cache: dict = {}

    def inner(op, k):
        if (op is a_op, k) not in cache:
            cache[(op is a_op, k)] = op(k, vec)
        return cache[(op is a_op, k)]

    if reverse:
        return build_window(lambda m, n: b_op(n, inner(a_op, m)), m_range, n_range)
    return build_window(lambda m, n: a_op(m, inner(b_op, n)), m_range, n_range)


def delta_window(f_op: ComponentOp, scale, vec: FockVector, m_range, n_range, side: str = "w") -> Window2:
    """F(var) * delta(scale * w / z).

    side='w': F(w), cell (m, n) = scale^m F_{m+n};
    side='z': F(z), cell (m, n) = scale^{-n} F_{m+n}.
    """
    scale = QScalar.coerce(scale)
    if scale.is_zero():
        raise ValueError("delta scale must be invertible")
    comps: dict = {}

    def cell(m, n):
        k = m + n
        if k not in comps:
            comps[k] = f_op(k, vec)
        c = scale**m if side == "w" else scale ** (-n)
        return comps[k].scale(c)

    if side not in ("w", "z"):
        raise ValueError("side must be 'w' or 'z'")
    return build_window(cell, m_range, n_range)


def prefactor_window(poly: dict, cell_fn: Callable[[int, int], FockVector], m_range, n_range) -> Window2:
    """Multiply a distribution by a Laurent polynomial sum c_ab z^a w^b."""

    def cell(m, n):
        return vector_sum(cell_fn(m + a, n + b).scale(c) for (a, b), c in poly.items())

    return build_window(cell, m_range, n_range)


def series_window(coeffs: list, scale, cell_fn: Callable[[int, int], FockVector], m_range, n_range, var="w/z") -> Window2:
    """Multiply by sum_p coeffs[p] (scale*w/z)^p, or (scale*z/w)^p when var='z/w'."""
    scale = QScalar.coerce(scale)

    def cell(m, n):
        parts = []
        sp = ONE
        for p, c in enumerate(coeffs):
            if p:
                sp = sp * scale
            if c.is_zero():
                continue
            v = cell_fn(m - p, n + p) if var == "w/z" else cell_fn(m + p, n - p)
            if v:
                parts.append(v.scale(c * sp))
        return vector_sum(parts)

    return build_window(cell, m_range, n_range)


def partial_fraction_check(a, b, order: int) -> Report:
    """(1-az)^-1 (1-bz)^-1 = z^-1/(a-b) ((1-az)^-1 - (1-bz)^-1), coefficientwise."""
    a, b = QScalar.coerce(a), QScalar.coerce(b)
    rep = Report("lemma4", {"a": str(a), "b": str(b), "order": order})
    if a == b:
        raise ValueError("partial fractions need a != b")
    pa = [a**k for k in range(order + 2)]
    pb = [b**k for k in range(order + 2)]
    inv = (a - b).inverse()
    for n in range(order + 1):
        lhs = ZERO
        for k in range(n + 1):
            lhs = lhs + pa[k] * pb[n - k]
        rhs = (pa[n + 1] - pb[n + 1]) * inv
        rep.check({"z": n}, lhs, rhs)
    return rep


def random_monomial_pairs(count: int, seed: int = 0, max_exp: int = 6) -> list:
    """Distinct pairs (a, b) of signed monomials +-q^(k/2)."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        a = q_pow(rng.randint(-max_exp, max_exp) / 2, rng.choice((1, -1)))
        b = q_pow(rng.randint(-max_exp, max_exp) / 2, rng.choice((1, -1)))
        if a != b:
            out.append((a, b))
    return out


def commutator_prefactor(i: int, j: int) -> QScalar:
    return (q_pow(i - j) + q_pow(j - i)) * 2 / (q_pow(j - i) - q_pow(i - j))


def commutator_sides(i: int, j: int, a, b, vec: FockVector, m_range, n_range):
    """Both sides of [X_ij(a,z), X_ji(b,w)] = A {u delta - v delta} as windows."""
    a, b = QScalar.coerce(a), QScalar.coerce(b)
    xa = lambda k, v: x_component(i, j, a, k, v)
    xb = lambda k, v: x_component(j, i, b, k, v)
    lhs = product_window(xa, xb, vec, m_range, n_range) - product_window(xa, xb, vec, m_range, n_range, reverse=True)

    su = b * q_pow((j - i) / 2)
    sv = q_pow((j - i) / 2)
    binv = b.inverse()

    def u_op(k, v):
        # u_ij(b^-1, su * w) = sum_k u(b^-1, k) su^-k w^-k
        return uv_component("u", i, j, binv, k, v).scale(su ** (-k)) if k >= 0 else FockVector()

    def v_op(k, v):
        # v_ij(b, sv * z) = sum_n v(b, n) sv^n z^n; coefficient of z^-k has n = -k
        return uv_component("v", i, j, b, -k, v).scale(sv ** (-k)) if k <= 0 else FockVector()

    pref = commutator_prefactor(i, j)
    rhs = (
        delta_window(u_op, b * q_pow(j - i), vec, m_range, n_range, "w")
        - delta_window(v_op, b * q_pow(i - j), vec, m_range, n_range, "z")
    ).scale(pref)
    return lhs, rhs


def verify_commutator(i: int, j: int, a, b, states: Iterable, radius: int) -> Report:
    a, b = QScalar.coerce(a), QScalar.coerce(b)
    if a * b != ONE:
        raise ValueError("commutator formula needs a*b = 1")
    if i == j:
        raise ValueError("commutator formula needs i != j")
    rep = Report("prop5", {"i": i, "j": j, "a": str(a), "b": str(b), "window": radius})
    win = (-radius, radius)
    for s in states:
        vec = FockVector.basis(s)
        lhs, rhs = commutator_sides(i, j, a, b, vec, win, win)
        lhs.compare(rhs, rep, tag=str(s))
    return rep
