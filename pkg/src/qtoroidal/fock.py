"""The twisted Fock space V_Q = S(H^-) (x) C[Q].

Basis states are monomials in the creation operators e_i(-n) (n odd, i in
{1, 2}) times a group-algebra element e^{m alpha0}.  The Heisenberg algebra
acts with [e_i(m), e_j(n)] = (m/2) delta_ij delta_{m,-n}.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Iterable, NamedTuple

from flint import fmpq, fmpq_mpoly_ctx, fmpq_poly

from .lattice import RootElt, cocycle, fold
from .qscalar import ONE, QScalar, ZERO


class BasisState(NamedTuple):
    modes: tuple = ()  # sorted tuple of (i, n), i in {1, 2}, n > 0 odd
    lattice: int = 0

    @property
    def degree(self) -> int:
        return sum(n for _, n in self.modes)

    def __str__(self):
        ops = "".join(f"e{i}(-{n})" for i, n in self.modes)
        lat = f"e^{{{self.lattice}a}}" if self.lattice else ""
        body = ops + lat
        return (body or "1") + "|0>"


VACUUM = BasisState()


# Polynomial model: e_i(-n) is the variable x_(i,n) and e_i(n) acts as
# (n/2) d/dx_(i,n).  Variable 0 is v = q^(1/2); Laurent coefficients are
# carried by a per-vector offset, rational ones by a v-only denominator.
MAX_MODE = 63
_CTX = fmpq_mpoly_ctx.get(("v", ("x", MAX_MODE + 1)), ordering="lex")
_NV = MAX_MODE + 2
_ZEXP = (0,) * _NV
_VGEN = _CTX.gen(0)
_VPOWS: dict = {}


def _var(i: int, n: int) -> int:
    if n > MAX_MODE:
        raise ValueError(f"mode {n} exceeds the supported maximum {MAX_MODE}")
    return n + i - 1


def _mode_of(idx: int) -> tuple:
    # inverse of _var: odd n, colour i
    return (1, idx) if idx % 2 else (2, idx - 1)


def _vpow(k: int):
    p = _VPOWS.get(k)
    if p is None:
        p = _VPOWS[k] = _VGEN**k
    return p


def _monomial(state: BasisState):
    e = [0] * _NV
    for i, n in state.modes:
        e[_var(i, n)] += 1
    return _CTX.term(exp_vec=tuple(e), coeff=fmpq(1))


def _vpoly(p):
    """fmpq_poly or fmpz_poly in v -> polynomial in the context."""
    d = {}
    for k, c in enumerate(p.coeffs()):
        if c:
            e = list(_ZEXP)
            e[0] = k
            d[tuple(e)] = c
    return _CTX.from_dict(d)


def _to_qpoly(P) -> fmpq_poly:
    # v-only polynomial back to a univariate one
    coeffs: dict = {}
    for e, c in P.to_dict().items():
        coeffs[e[0]] = c
    top = max(coeffs)
    return fmpq_poly([coeffs.get(k, 0) for k in range(top + 1)])


_SCALARS: dict = {}


def _scalar(c: QScalar) -> tuple:
    """(s, N, D) with c = v^s N / D, N and D in the context (D may be None)."""
    hit = _SCALARS.get(c)
    if hit is None:
        s, n, d = c.parts()
        hit = (s, _vpoly(n), None if d is None else _vpoly(d))
        if len(_SCALARS) > 4096:
            _SCALARS.clear()
        _SCALARS[c] = hit
    return hit


def _lift(p: dict, k: int) -> dict:
    if not k:
        return p
    vk = _vpow(k)
    return {lam: P * vk for lam, P in p.items()}


def _align(a: "FockVector", b: "FockVector"):
    """Bring both vectors to a common offset and denominator."""
    o = max(a._o, b._o)
    pa, pb = _lift(a._p, o - a._o), _lift(b._p, o - b._o)
    da, db = a._d, b._d
    if da is None and db is None:
        return pa, pb, o, None
    if da is not None and db is not None and da == db:
        return pa, pb, o, da
    if db is not None:
        pa = {lam: P * db for lam, P in pa.items()}
    if da is not None:
        pb = {lam: P * da for lam, P in pb.items()}
    d = db if da is None else (da if db is None else da * db)
    return pa, pb, o, d


class FockVector:
    """Finite linear combination of basis states with QScalar coefficients.

    Stored as v^-o / d * sum_lambda e^(lambda alpha0) P_lambda(v, x) with
    polynomials P_lambda.  The representation is not unique; comparisons
    and hashing go through the state-wise content.
    """

    __slots__ = ("_p", "_o", "_d", "_t")

    def __init__(self, terms=None):
        acc = FockVector._raw({})
        for st, c in dict(terms or {}).items():
            c = QScalar.coerce(c)
            if c:
                acc = acc + FockVector.basis(st).scale(c)
        self._p, self._o, self._d, self._t = acc._p, acc._o, acc._d, None

    @classmethod
    def _raw(cls, p: dict, o: int = 0, d=None) -> "FockVector":
        obj = cls.__new__(cls)
        obj._p, obj._o, obj._d, obj._t = p, o, d, None
        return obj

    @classmethod
    def basis(cls, state: BasisState) -> "FockVector":
        return cls._raw({state.lattice: _monomial(state)})

    @classmethod
    def vacuum(cls) -> "FockVector":
        return cls.basis(VACUUM)

    def _terms(self) -> dict:
        if self._t is None:
            t = {}
            den = None if self._d is None else _to_qpoly(self._d)
            for lam, P in self._p.items():
                groups: dict = {}
                for e, c in P.to_dict().items():
                    groups.setdefault(e[1:], {})[e[0]] = c
                for ex, cs in groups.items():
                    modes = []
                    for idx, mult in enumerate(ex, start=1):
                        modes.extend([_mode_of(idx)] * mult)
                    lo = min(cs)
                    num = fmpq_poly([cs.get(k, 0) for k in range(lo, max(cs) + 1)])
                    c = QScalar.from_parts(lo - self._o, num, den)
                    t[BasisState(tuple(sorted(modes)), lam)] = c
            self._t = t
        return self._t

    def items(self):
        return self._terms().items()

    def __iter__(self):
        return iter(self._terms())

    def __len__(self):
        return len(self._terms())

    def coeff(self, state: BasisState) -> QScalar:
        return self._terms().get(state, ZERO)

    def is_zero(self) -> bool:
        return not self._p

    def __bool__(self):
        return bool(self._p)

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        if self._p.keys() != other._p.keys():
            return False
        pa, pb, _, _ = _align(self, other)
        return all(pa[lam] == pb[lam] for lam in pa)

    def __hash__(self):
        # the x-support does not depend on the offset or denominator
        return hash(frozenset((lam, P.degrees()[1:]) for lam, P in self._p.items()))

    def __add__(self, other: "FockVector") -> "FockVector":
        if not other._p:
            return self
        if not self._p:
            return other
        pa, pb, o, d = _align(self, other)
        out = dict(pa)
        for lam, P in pb.items():
            old = out.get(lam)
            if old is None:
                out[lam] = P
            else:
                new = old + P
                if new.is_zero():
                    del out[lam]
                else:
                    out[lam] = new
        return FockVector._raw(out, o, d)

    def __neg__(self):
        return FockVector._raw({lam: -P for lam, P in self._p.items()}, self._o, self._d)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-other)

    def _shifted(self, p: dict, k: int, d) -> "FockVector":
        # multiply by v^k: lower the offset, lifting the polynomials if needed
        o = self._o - k
        if o < 0:
            p, o = _lift(p, -o), 0
        return FockVector._raw(p, o, d)

    def scale(self, c) -> "FockVector":
        c = QScalar.coerce(c)
        if c.is_zero() or not self._p:
            return FockVector()
        mono = c.as_monomial()
        if mono is not None:
            sgn, k = mono
            p = self._p if sgn == 1 else {lam: -P for lam, P in self._p.items()}
            return self._shifted(p, k, self._d)
        s, N, D = _scalar(c)
        p = {lam: P * N for lam, P in self._p.items()}
        d = self._d if D is None else (D if self._d is None else self._d * D)
        return self._shifted(p, s, d)

    __rmul__ = scale

    def times(self, other: "FockVector") -> "FockVector":
        """Product with a lattice-0 vector, read as a polynomial in creation operators."""
        if not self._p or not other._p:
            return FockVector()
        if set(other._p) != {0}:
            raise ValueError("multiplier must live in lattice sector 0")
        Q = other._p[0]
        p = {lam: P * Q for lam, P in self._p.items()}
        d = other._d if self._d is None else (self._d if other._d is None else self._d * other._d)
        return FockVector._raw(p, self._o + other._o, d)

    def derivative(self, i: int, n: int) -> "FockVector":
        """d/dx_(i,n) on every sector (no n/2 factor)."""
        idx = _var(i, n)
        p = {}
        for lam, P in self._p.items():
            dP = P.derivative(idx)
            if not dP.is_zero():
                p[lam] = dP
        return FockVector._raw(p, self._o, self._d)

    def max_mode(self) -> int:
        """Largest n with some e_i(-n) present, 0 for pure lattice states."""
        top = 0
        for P in self._p.values():
            degs = P.degrees()
            for idx in range(len(degs) - 1, 0, -1):
                if degs[idx]:
                    top = max(top, _mode_of(idx)[1])
                    break
        return top

    def degrees(self) -> set:
        return {s.degree for s in self._terms()}

    def __str__(self):
        t = self._terms()
        if not t:
            return "0"
        return " + ".join(f"({t[s]}){s}" for s in sorted(t))

    def __repr__(self):
        return f"FockVector({self})"


def vector_sum(vectors: Iterable[FockVector]) -> FockVector:
    out = FockVector()
    for v in vectors:
        out = out + v
    return out


def degree(vec: FockVector) -> set:
    return vec.degrees()


def _check_mode(n: int):
    if n % 2 == 0:
        raise ValueError(f"only odd Heisenberg modes exist in the twisted algebra (got {n})")


def linear_form(n: int, coeffs) -> FockVector:
    """c1 e1(-n) + c2 e2(-n) as a lattice-0 vector."""
    out = FockVector()
    for i, c in zip((1, 2), coeffs):
        if c:
            out = out + FockVector.basis(BasisState(((i, n),))).scale(c)
    return out


def apply_modes(vec: FockVector, n: int, coeffs) -> FockVector:
    """Apply sum_i coeffs[i] * e_i(n) for a single odd n != 0.

    ``coeffs`` is a pair (c1, c2) of QScalars for e1 and e2.
    """
    c1, c2 = (QScalar.coerce(c) for c in coeffs)
    if n < 0:
        return vec.times(linear_form(-n, (c1, c2)))
    half = QScalar(n, 2)
    out = FockVector()
    for i, ci in ((1, c1), (2, c2)):
        if ci:
            out = out + vec.derivative(i, n).scale(ci * half)
    return out


def heisenberg_apply(i: int, n: int, vec: FockVector) -> FockVector:
    """Act with e_i(n); index 0 is folded to 2."""
    _check_mode(n)
    i = fold(i)
    coeffs = (ONE, ZERO) if i == 1 else (ZERO, ONE)
    return apply_modes(vec, n, coeffs)


def group_translate(a: RootElt, vec: FockVector) -> FockVector:
    """e^a . e^beta = eps(a, beta) e^{a+beta}; the Heisenberg part is untouched."""
    a = RootElt(int(a.m if isinstance(a, RootElt) else a))
    if a.m == 0:
        return vec
    p = {}
    for lam, P in vec._p.items():
        p[lam + a.m] = P if cocycle(a, RootElt(lam)) == 1 else -P
    return FockVector._raw(p, vec._o, vec._d)


def _odd_partitions(total: int, max_part: int):
    if total == 0:
        yield ()
        return
    p = max_part if max_part % 2 else max_part - 1
    while p >= 1:
        if p <= total:
            for rest in _odd_partitions(total - p, p):
                yield (p,) + rest
        p -= 2


def states_of_degree(d: int, lattice: int = 0) -> list:
    out = []
    for parts in _odd_partitions(d, d):
        # distribute each part among two colours; use multiset colourings
        groups: dict = {}
        for p in parts:
            groups[p] = groups.get(p, 0) + 1
        choices = [[]]
        for p, mult in sorted(groups.items()):
            new = []
            for colours in combinations_with_replacement((1, 2), mult):
                for prefix in choices:
                    new.append(prefix + [(i, p) for i in colours])
            choices = new
        for ch in choices:
            out.append(BasisState(tuple(sorted(ch)), lattice))
    return sorted(set(out))


def enumerate_basis(maxdeg: int, lattice_range: int = 0) -> list:
    """All basis states of degree <= maxdeg and |lattice| <= lattice_range."""
    if maxdeg < 0:
        raise ValueError("maxdeg must be non-negative")
    out = []
    for m in sorted(range(-lattice_range, lattice_range + 1), key=lambda x: (abs(x), x)):
        for d in range(maxdeg + 1):
            out.extend(states_of_degree(d, m))
    return out
