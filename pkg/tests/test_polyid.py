import itertools
import time

import sympy as sp

from conftest import Q, V
from qtoroidal.polyid import (
    WV,
    Z1,
    Z2,
    Z3,
    MPoly,
    alternating_sign_check,
    brace,
    lemma7_check,
    lemma7_polynomial,
    qcoef,
    quartic_bracket_identity,
    symmetrize_S3,
    vandermonde,
)

z1, z2, z3, w = sp.symbols("z1 z2 z3 w")
ZSYM = (z1, z2, z3)


def to_sympy(p: MPoly):
    out = 0
    for e, c in p.terms.items():
        coeff = sum(k * V**x for x, k in c.items())
        out += coeff * z1 ** e[0] * z2 ** e[1] * z3 ** e[2] * w ** e[3]
    return sp.expand(out)


def test_poly_ops_examples():
    assert (Z1 - Z2) * (Z1 + Z2) == Z1 * Z1 - Z2 * Z2
    assert (Z1 * WV) * MPoly() == MPoly()
    assert MPoly().is_zero()


def test_w0_coefficient_of_product():
    d = qcoef(2) - qcoef(-2)
    prod = MPoly.const(1)
    for z in (Z1, Z2, Z3):
        prod = prod * (z * z - (z * WV).scale(d) - WV * WV)
    assert prod.coeff_w(0) == (Z1 * Z2 * Z3) ** 2


def test_symmetrize_examples():
    assert symmetrize_S3(Z1) == (Z1 + Z2 + Z3).scale(qcoef(0, 2))
    e = Z1 * Z2 + Z2 * Z3 + Z1 * Z3
    assert symmetrize_S3(e) == e.scale(qcoef(0, 6))
    assert symmetrize_S3(vandermonde()).is_zero()


def test_alternating():
    assert alternating_sign_check(Z1 * Z1 + WV).passed


def _sympy_lemma7():
    # independent construction straight from the definition
    d = Q**2 - Q**-2

    def quad(z, s):
        return z**2 + s * d * z * w - w**2

    m = [quad(z, -1) for z in ZSYM]
    p = [quad(z, 1) for z in ZSYM]
    br = m[0] * m[1] * m[2] + m[0] * m[1] * p[2] + m[0] * p[1] * p[2] + p[0] * p[1] * p[2]
    dv = (z1 - z2) * (z1 - z3) * (z2 - z3)
    return sp.expand(br * dv)


def test_raw_product_matches_sympy_construction():
    assert sp.expand(to_sympy(brace() * vandermonde()) - _sympy_lemma7()) == 0


def test_lemma7_vanishes_in_sympy():
    raw = _sympy_lemma7()
    total = 0
    for perm in itertools.permutations(ZSYM):
        total += raw.subs(dict(zip(ZSYM, perm)), simultaneous=True)
    assert sp.expand(total) == 0
    assert lemma7_polynomial().is_zero()


def test_lemma7_check_report():
    t0 = time.perf_counter()
    rep = lemma7_check()
    assert time.perf_counter() - t0 < 10
    assert rep.passed
    parts = {m["part"] for m in rep.mismatches}
    assert not parts
    # full + seven w-coefficients + three displayed forms
    assert rep.cells == 11
    forms = rep.notes["displayed_forms"]
    assert all(forms[k]["displayed_equals_coefficient"] for k in ("w^0", "w^1", "w^5"))


def test_lemma7_w_coefficients_in_sympy():
    raw = sp.Poly(_sympy_lemma7(), w)
    for k in range(7):
        c = raw.coeff_monomial(w**k)
        tot = sum(c.subs(dict(zip(ZSYM, perm)), simultaneous=True) for perm in itertools.permutations(ZSYM))
        assert sp.expand(tot) == 0


def test_quartic_bracket_identity():
    rep = quartic_bracket_identity()
    assert rep.passed, rep.mismatches
    assert rep.cells == 5


def test_brace_at_q1():
    target = MPoly.const(4)
    for z in (Z1, Z2, Z3):
        target = target * (z * z - WV * WV)
    assert brace().at_q1() == target
