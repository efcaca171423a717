"""Named verification suites for the Fock-space building blocks.

Each suite returns a Report; the acceptance script and the CLI call these
directly alongside the relation checks in ``toroidal`` and ``polyid``.
"""

from __future__ import annotations

import itertools
import time

from .distr import build_window, partial_fraction_check, random_monomial_pairs, series_window, verify_commutator
from .fock import FockVector, enumerate_basis, heisenberg_apply
from .lattice import basis
from .qscalar import ONE, QScalar, q_pow, quantum_integer
from .report import Report
from .toroidal import apply_h, exchange_check
from .vertexop import (
    MINUS,
    PLUS,
    ExpFactor,
    contraction_kernel,
    e_component,
    exchange_kernel,
    kernel_expand,
    normal_ordered,
    specialize_limit,
    uv_component,
    x_component,
    x_word,
)

PAIRS = ((0, 1), (1, 0))
SIGNS_A = (1, -1)


def _timed(fn):
    def run(*args, **kw):
        t0 = time.perf_counter()
        rep = fn(*args, **kw)
        rep.millis = int((time.perf_counter() - t0) * 1000)
        return rep

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


@_timed
def heisenberg_suite(max_mode: int = 7, max_degree: int = 8) -> Report:
    """[e_i(m), e_j(n)] = m/2 delta_ij delta_{m,-n} on every basis state."""
    rep = Report("heisenberg", {"max_mode": max_mode, "max_degree": max_degree})
    modes = [m for m in range(-max_mode, max_mode + 1) if m % 2]
    states = enumerate_basis(max_degree)
    for s in states:
        v = FockVector.basis(s)
        for i, j in itertools.product((1, 2), repeat=2):
            for m in modes:
                vm = heisenberg_apply(i, m, v)
                for n in modes:
                    lhs = heisenberg_apply(i, m, heisenberg_apply(j, n, v)) - heisenberg_apply(j, n, vm)
                    val = QScalar(m, 2) if (i == j and m == -n) else QScalar(0)
                    rep.check({"i": i, "j": j, "m": m, "n": n, "state": str(s)}, lhs, v.scale(val))
    return rep


WEIGHTS = {"+e1": basis(1), "-e1": -basis(1), "+e2": basis(2), "-e2": -basis(2)}


@_timed
def exchange_suite(kmax: int = 6, max_degree: int = 6) -> Report:
    """E_+(a, z) E_-(b, w) = E_-(b, w) E_+(a, z) ((1 - w/z)/(1 + w/z))^{<a,b>}."""
    rep = Report("exchange", {"kmax": kmax, "max_degree": max_degree})
    states = enumerate_basis(max_degree)
    for (na, a), (nb, b) in itertools.product(WEIGHTS.items(), repeat=2):
        fp, fm = ExpFactor(PLUS, a, ONE), ExpFactor(MINUS, b, ONE)
        # component maps: coefficient of var^{-k}
        plus = lambda k, v, f=fp: e_component(f, -k, v)
        minus = lambda k, v, f=fm: e_component(f, -k, v)
        coeffs = kernel_expand(exchange_kernel(a, b), 2 * kmax + max_degree)
        exchange_check(rep, states, kmax, plus, minus, coeffs, "w/z", {"alpha": na, "beta": nb})
    return rep


@_timed
def contraction_suite(radius: int = 6, max_degree: int = 4) -> Report:
    """X_ij(a1,z) X_kl(a2,w) = :X_ij(a1,z) X_kl(a2,w): * kernel(w/z), cellwise."""
    rep = Report("contraction", {"window": radius, "max_degree": max_degree})
    states = enumerate_basis(max_degree)
    win = (-radius, radius)
    order = 2 * radius + max_degree + 1
    for (i, j), (k, l) in itertools.product(PAIRS, repeat=2):
        for a1, a2 in itertools.product(SIGNS_A, repeat=2):
            no = normal_ordered(x_word(i, j, a1), x_word(k, l, a2))
            coeffs = kernel_expand(contraction_kernel(i, j, a1, k, l, a2), order)
            tag = {"ij": f"{i}{j}", "kl": f"{k}{l}", "a1": a1, "a2": a2}
            for s in states:
                v = FockVector.basis(s)
                inner = {}

                def cell(m, n, v=v, inner=inner):
                    if n not in inner:
                        inner[n] = x_component(k, l, a2, n, v)
                    return x_component(i, j, a1, m, inner[n])

                lhs = build_window(cell, win, win)
                table = no.component_table(v)
                rhs = series_window(coeffs, ONE, lambda m, n: table((m, n)), win, win)
                lhs.compare(rhs, rep, tag={**tag, "state": str(s)})
    return rep


@_timed
def limits_suite(radius: int = 6, max_degree: int = 3) -> Report:
    """On the u/v lines the normal-ordered product collapses to u_ij or v_ij."""
    rep = Report("limits", {"window": radius, "max_degree": max_degree})
    states = enumerate_basis(max_degree)
    for (i, j), a1 in itertools.product(PAIRS, SIGNS_A):
        a1 = QScalar.coerce(a1)
        a2 = a1.inverse()
        for kind in ("u", "v"):
            tag = {"kind": kind, "i": i, "j": j, "a1": str(a1)}
            try:
                word = specialize_limit(kind, i, j, a1, a2)
            except ArithmeticError as exc:
                rep.check({**tag, "stage": "word"}, str(exc), "cancelled")
                continue
            rep.check({**tag, "stage": "word"}, "cancelled", "cancelled")
            if kind == "u":
                b, s = a2.inverse(), a2 * q_pow((j - i) / 2)
            else:
                b, s = a1.inverse(), q_pow((j - i) / 2)
            for st in states:
                v = FockVector.basis(st)
                for k in range(-radius, radius + 1):
                    lhs = word.component((k,), v)
                    if kind == "u":
                        rhs = uv_component("u", i, j, b, k, v).scale(s ** (-k)) if k >= 0 else FockVector()
                    else:
                        rhs = uv_component("v", i, j, b, -k, v).scale(s ** (-k)) if k <= 0 else FockVector()
                    rep.check({**tag, "k": k, "state": str(st)}, lhs, rhs)
    return rep


@_timed
def lemma4_suite(order: int = 40, random_pairs: int = 20, seed: int = 0) -> Report:
    """Partial fractions for (1-az)^-1 (1-bz)^-1 and the [n+1] pattern at (q, q^-1)."""
    rep = Report("lemma4", {"order": order, "random_pairs": random_pairs, "seed": seed})
    pairs = [(QScalar(2), QScalar(3)), (q_pow(1), q_pow(-1))] + random_monomial_pairs(random_pairs, seed)
    for a, b in pairs:
        rep.merge(partial_fraction_check(a, b, order))
    a, b = q_pow(1), q_pow(-1)
    for n in range(order + 1):
        lhs = sum((a**k * b ** (n - k) for k in range(n + 1)), QScalar(0))
        rep.check({"a": "q", "b": "q^-1", "z": n, "expect": f"[{n + 1}]"}, lhs, quantum_integer(n + 1))
    return rep


@_timed
def prop5_suite(radius: int = 4, max_degree: int = 3) -> Report:
    """[X_ij(a,z), X_ji(b,w)] against the u/v delta form, plus the h_11 bracket value."""
    rep = Report("prop5", {"window": radius, "max_degree": max_degree})
    states = enumerate_basis(max_degree)
    for (i, j), a in itertools.product(PAIRS, SIGNS_A):
        sub = verify_commutator(i, j, a, a, states, radius)
        rep.merge(sub)
    # [pi(h_11), pi(h_1,-1)] = [2]/2 [1] = (q + q^-1)/2
    target = (q_pow(1) + q_pow(-1)) / 2
    for s in states:
        v = FockVector.basis(s)
        lhs = apply_h(1, 1, apply_h(1, -1, v)) - apply_h(1, -1, apply_h(1, 1, v))
        rep.check({"bracket": "h11,h1-1", "state": str(s)}, lhs, v.scale(target))
    return rep
