import sympy as sp

from qtoroidal.qscalar import QScalar

V = sp.Symbol("v", positive=True)
Q = V**2


def to_sympy(x: QScalar):
    """Independent view of a QScalar as a sympy rational function of v."""
    s, n, d = x.parts()
    num = sum(sp.Rational(int(c.p), int(c.q)) * V**k for k, c in enumerate(n.coeffs()))
    den = 1 if d is None else sum(int(c) * V**k for k, c in enumerate(d.coeffs()))
    return V**s * num / den


def same(x: QScalar, expr) -> bool:
    return sp.simplify(to_sympy(x) - expr) == 0


# criterion number -> "PASS"/"FAIL", filled by test_acceptance
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {k:2d}: {ACCEPTANCE[k]}")
