"""Vertex-operator words and their exact components on the Fock space.

A word is ``prefactor * e^{translation} * prod E_-(...) * prod E_+(...)``
with E_pm(alpha, s z) = exp(-2 sum_{n in pm(2N+1)} alpha(n)/n (s z)^{-n}).
Every word is graded, so the coefficient of a fixed power of z applied to
a fixed vector is a finite sum and is computed exactly.

Component conventions: ``word.component(ks, vec)`` returns the coefficient
of prod_v z_v^{-k_v}.  ``e_component`` follows the power-of-z convention
(coefficient of z^k).
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

from .fock import BasisState, FockVector, group_translate, linear_form, vector_sum
from .lattice import RootElt, Weight, basis, bilinear, bilinear_idx, cocycle, fold, root_of
from .qscalar import ONE, QScalar, ZERO, q_pow, series_mul, v_pow

PLUS = 1  # E_+ : annihilation side
MINUS = -1  # E_- : creation side


def _unit(s) -> tuple:
    s = QScalar.coerce(s)
    mono = s.as_monomial()
    if mono is None:
        raise ValueError(f"scale {s} is not a unit monomial +-q^(k/2)")
    return mono


class ExpFactor(NamedTuple):
    sign: int  # PLUS or MINUS
    weight: Weight
    scale: QScalar
    var: int = 0

    def canonical(self) -> "ExpFactor":
        # odd modes only: E(alpha, -s z) = E(-alpha, s z)
        sgn, k = _unit(self.scale)
        w = self.weight if sgn == 1 else -self.weight
        return ExpFactor(self.sign, w, v_pow(k), self.var)


class KernelFactor(NamedTuple):
    """((1 - scale*u)/(1 + scale*u))^exponent with u = w/z."""

    scale: QScalar
    exponent: int


# -- mode series: exp(sum_p (c1(p) e1(-+p) + c2(p) e2(-+p)) z^{+-p}) -----------


class ModeSeries:
    """Exponential of a linear combination of odd modes on one side.

    ``creation``: exp(sum_p (c1 e1(-p) + c2 e2(-p)) z^p)
    otherwise:    exp(sum_p (c1 e1(p)  + c2 e2(p))  z^-p)
    """

    __slots__ = ("creation", "key", "_fn", "_coeffs", "_powers")

    def __init__(self, creation: bool, key, fn: Callable[[int], tuple]):
        self.creation = creation
        self.key = (creation, key)
        self._fn = fn
        self._coeffs: dict = {}
        self._powers: list = []

    def coeffs(self, p: int) -> tuple:
        c = self._coeffs.get(p)
        if c is None:
            c = tuple(QScalar.coerce(x) for x in self._fn(p))
            self._coeffs[p] = c
        return c

    @classmethod
    def from_factors(cls, factors: Sequence[ExpFactor]) -> "ModeSeries":
        factors = tuple(factors)
        if not factors:
            return _IDENTITY_SERIES
        side = factors[0].sign
        if any(f.sign != side for f in factors):
            raise ValueError("mixed E_+/E_- factors in one mode series")
        data = []
        for f in factors:
            sgn, k = _unit(f.scale)
            w = f.weight if sgn == 1 else -f.weight
            data.append((w.c1, w.c2, k))
        data = tuple(sorted(data))
        hit = _SERIES.get((side, data))
        if hit is not None:
            return hit

        def fn(p, data=data, side=side):
            c1 = c2 = ZERO
            for a1, a2, k in data:
                if side == MINUS:
                    s = v_pow(k * p)
                    f = QScalar(2, p) * s
                else:
                    s = v_pow(-k * p)
                    f = QScalar(-2, p) * s
                if a1:
                    c1 = c1 + f * a1
                if a2:
                    c2 = c2 + f * a2
            return c1, c2

        out = _SERIES[(side, data)] = cls(side == MINUS, ("E", data), fn)
        return out

    def is_identity(self) -> bool:
        return self.key[1] == "id"


_SERIES: dict = {}
_IDENTITY_SERIES = ModeSeries(False, "id", lambda p: (ZERO, ZERO))

_ANN_CACHE: OrderedDict = OrderedDict()
_ANN_LIMIT = 256


def clear_caches():
    _ANN_CACHE.clear()
    _TABLES.clear()


def _creation_power(series: ModeSeries, k: int) -> FockVector:
    """z^k coefficient of exp(sum_p L_p z^p) as a polynomial in creation modes.

    Uses k S_k = sum_p p L_p S_{k-p}; the list is cached on the series.
    """
    pw = series._powers
    if not pw:
        pw.append(FockVector.vacuum())
    while len(pw) <= k:
        j = len(pw)
        acc = FockVector()
        for p in range(1, j + 1, 2):
            c = series.coeffs(p)
            if c[0].is_zero() and c[1].is_zero() or not pw[j - p]:
                continue
            acc = acc + pw[j - p].times(linear_form(p, c)).scale(p)
        pw.append(acc.scale(QScalar(1, j)))
    return pw[k]


def _annihilation_components(series: ModeSeries, vec: FockVector, kmax=None) -> list:
    """Components 0..kmax (or until they vanish) of exp(sum_p D_p z^-p) on vec.

    D_p = c1 e1(p) + c2 e2(p) acts by derivatives, and k A_k = sum_p p D_p A_{k-p}.
    """
    ck = (series.key, vec)
    hit = _ANN_CACHE.get(ck)
    if hit is not None and (kmax is None and hit[1] or kmax is not None and (hit[1] or len(hit[0]) > kmax)):
        _ANN_CACHE.move_to_end(ck)
        return hit[0]
    top = vec.max_mode()
    comps = [vec]
    done = False
    j = 0
    while kmax is None or j < kmax:
        j += 1
        acc = FockVector()
        for p in range(1, min(j, top) + 1, 2):
            prev = comps[j - p]
            if not prev:
                continue
            c1, c2 = series.coeffs(p)
            # p * D_p = p^2/2 (c1 d/dx1 + c2 d/dx2)
            w = QScalar(p * p, 2)
            for i, ci in ((1, c1), (2, c2)):
                if ci:
                    acc = acc + prev.derivative(i, p).scale(ci * w)
        comps.append(acc.scale(QScalar(1, j)))
        # every later term draws on the last `top` components only
        if j >= top and not any(comps[j - top + 1 :]):
            done = True
            break
    _ANN_CACHE[ck] = (comps, done)
    if len(_ANN_CACHE) > _ANN_LIMIT:
        _ANN_CACHE.popitem(last=False)
    return comps


def series_component(series: ModeSeries, k: int, vec: FockVector) -> FockVector:
    """Coefficient of z^{k} (creation) or z^{-k} (annihilation), k >= 0."""
    if k < 0 or not vec:
        return FockVector()
    if series.is_identity():
        return vec if k == 0 else FockVector()
    if series.creation:
        return vec.times(_creation_power(series, k))
    comps = _annihilation_components(series, vec, k)
    return comps[k] if k < len(comps) else FockVector()


def series_components(series: ModeSeries, vec: FockVector, kmax=None) -> list:
    """Components 0..kmax; with kmax None, annihilation components until they vanish."""
    if kmax is None:
        if series.creation:
            raise ValueError("creation series need an explicit kmax")
        if series.is_identity():
            return [vec]
        comps = _annihilation_components(series, vec)
        while len(comps) > 1 and not comps[-1]:
            comps = comps[:-1]
        return comps
    return [series_component(series, k, vec) for k in range(kmax + 1)]


# -- words ----------------------------------------------------------------------


@dataclass(frozen=True)
class VertexWord:
    prefactor: QScalar = ONE
    translation: int = 0
    factors: tuple = ()
    nvars: int = 1
    _series: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def canonical(self) -> "VertexWord":
        """Merge factors with equal (side, variable, scale) by adding weights."""
        acc: dict = {}
        for f in self.factors:
            f = f.canonical()
            key = (f.sign, f.var, _unit(f.scale)[1])
            acc[key] = acc.get(key, Weight(0, 0)) + f.weight
        facs = tuple(
            ExpFactor(sign, w, v_pow(k), var)
            for (sign, var, k), w in sorted(acc.items(), key=lambda kv: (-kv[0][0], kv[0][1], kv[0][2]))
            if not w.is_zero()
        )
        return VertexWord(self.prefactor, self.translation, facs, self.nvars)

    def same_as(self, other: "VertexWord") -> bool:
        a, b = self.canonical(), other.canonical()
        return (a.prefactor, a.translation, a.factors, a.nvars) == (
            b.prefactor,
            b.translation,
            b.factors,
            b.nvars,
        )

    def is_normal_ordered(self) -> bool:
        seen_plus = False
        for f in self.factors:
            if f.sign == PLUS:
                seen_plus = True
            elif seen_plus:
                return False
        return True

    def series(self, side: int, var: int) -> ModeSeries:
        key = (side, var)
        s = self._series.get(key)
        if s is None:
            s = ModeSeries.from_factors([f for f in self.factors if f.sign == side and f.var == var])
            self._series[key] = s
        return s

    def substitute(self, var: int, scale, target: int) -> "VertexWord":
        """Set z_var = scale * z_target and drop one variable."""
        scale = QScalar.coerce(scale)
        facs = []
        for f in self.factors:
            if f.var == var:
                f = ExpFactor(f.sign, f.weight, f.scale * scale, target)
            facs.append(f)
        # renumber remaining variables
        used = sorted({f.var for f in facs} | {target})
        ren = {v: i for i, v in enumerate(used)}
        facs = tuple(ExpFactor(f.sign, f.weight, f.scale, ren[f.var]) for f in facs)
        return VertexWord(self.prefactor, self.translation, facs, len(used))

    def rescale(self, scale, var: int = 0) -> "VertexWord":
        """Word for z_var -> scale * z_var."""
        scale = QScalar.coerce(scale)
        facs = tuple(
            ExpFactor(f.sign, f.weight, f.scale * scale, f.var) if f.var == var else f for f in self.factors
        )
        return VertexWord(self.prefactor, self.translation, facs, self.nvars)

    def component(self, ks, vec: FockVector) -> FockVector:
        """Coefficient of prod z_v^{-k_v} applied to ``vec``."""
        if isinstance(ks, int):
            ks = (ks,)
        return self.component_table(vec)(tuple(ks))

    def component_table(self, vec: FockVector) -> Callable:
        """Memoized map ks -> component on a fixed vector.

        The annihilation side is expanded once; creation pieces are shared
        between cells with the same per-variable creation index.
        """
        if not self.is_normal_ordered():
            raise ValueError("component() needs a normal-ordered word")
        # annihilation side: indices a_v >= 0, bounded by degree
        partial = [((), vec)]
        for var in range(self.nvars):
            ser = self.series(PLUS, var)
            nxt = []
            for idx, w in partial:
                if not w:
                    continue
                if ser.is_identity():
                    nxt.append((idx + (0,), w))
                    continue
                for a, comp in enumerate(series_components(ser, w)):
                    if comp:
                        nxt.append((idx + (a,), comp))
            partial = nxt
        # creation is linear: merge pieces that share an annihilation index
        grouped: dict = {}
        for idx, w in partial:
            grouped.setdefault(idx, []).append(w)
        partial = [(idx, ws[0] if len(ws) == 1 else vector_sum(ws)) for idx, ws in grouped.items()]
        partial = [(idx, w) for idx, w in partial if w]
        creation = [self.series(MINUS, var) for var in range(self.nvars)]
        pieces: dict = {}

        def piece(e, cs):
            # creation components cs[0..r) applied to entry e, last variable first
            key = (e, cs)
            hit = pieces.get(key)
            if hit is None:
                if not cs:
                    hit = partial[e][1]
                else:
                    inner = piece(e, cs[1:])
                    hit = series_component(creation[self.nvars - len(cs)], cs[0], inner) if inner else inner
                pieces[key] = hit
            return hit

        cells: dict = {}
        shift, pre = RootElt(self.translation), self.prefactor

        def table(ks):
            if len(ks) != self.nvars:
                raise ValueError(f"word has {self.nvars} variables, got {len(ks)} indices")
            hit = cells.get(ks)
            if hit is not None:
                return hit
            out = []
            for e, (idx, _) in enumerate(partial):
                cs = tuple(a - k for a, k in zip(idx, ks))
                if min(cs) < 0:
                    continue
                w = piece(e, cs)
                if w:
                    out.append(w)
            res = group_translate(shift, vector_sum(out)).scale(pre)
            cells[ks] = res
            return res

        return table


def _qexp(e) -> QScalar:
    return q_pow(e)


def x_word(i: int, j: int, a) -> VertexWord:
    """X_ij(a, z) = e^{e_i - e_j} E_-(e_i,z) E_-(-e_j,a q^{i-j} z) E_+(e_i,z) E_+(-e_j,a q^{j-i} z)."""
    if fold(i) == fold(j):
        raise ValueError("X_ij needs i != j")
    a = QScalar.coerce(a)
    _unit(a)
    ei, ej = basis(i), basis(j)
    facs = (
        ExpFactor(MINUS, ei, ONE),
        ExpFactor(MINUS, -ej, a * _qexp(i - j)),
        ExpFactor(PLUS, ei, ONE),
        ExpFactor(PLUS, -ej, a * _qexp(j - i)),
    )
    return VertexWord(ONE, root_of(i, j).m, facs, 1)


def normal_ordered(w1: VertexWord, w2: VertexWord) -> VertexWord:
    """:w1(z1) w2(z2): with the cocycle sign applied once (w2's variables shifted)."""
    shift = w1.nvars
    f1 = [f for f in w1.factors]
    f2 = [ExpFactor(f.sign, f.weight, f.scale, f.var + shift) for f in w2.factors]
    minus = [f for f in f1 + f2 if f.sign == MINUS]
    plus = [f for f in f1 + f2 if f.sign == PLUS]
    sign = cocycle(RootElt(w1.translation), RootElt(w2.translation))
    pre = w1.prefactor * w2.prefactor * sign
    return VertexWord(pre, w1.translation + w2.translation, tuple(minus + plus), w1.nvars + w2.nvars)


def uv_word(kind: str, i: int, j: int, a) -> VertexWord:
    """u_ij(a, z) or v_ij(a, z) rewritten as a product of E-factors."""
    if fold(i) == fold(j):
        raise ValueError("u/v need i != j")
    a = QScalar.coerce(a)
    ei, ej = basis(i), basis(j)
    d = j - i
    if kind == "u":
        facs = (
            ExpFactor(PLUS, -ei, _qexp(-3 * d / 2)),
            ExpFactor(PLUS, ei, _qexp(d / 2)),
            ExpFactor(PLUS, ej, a * _qexp(-d / 2)),
            ExpFactor(PLUS, -ej, a * _qexp(3 * d / 2)),
        )
    elif kind == "v":
        ainv = a.inverse()
        facs = (
            ExpFactor(MINUS, ei, _qexp(-d / 2)),
            ExpFactor(MINUS, -ei, _qexp(3 * d / 2)),
            ExpFactor(MINUS, -ej, ainv * _qexp(-3 * d / 2)),
            ExpFactor(MINUS, ej, ainv * _qexp(d / 2)),
        )
    else:
        raise ValueError(f"kind must be 'u' or 'v', got {kind!r}")
    return VertexWord(-ONE, 0, facs, 1)


# -- direct component operations ---------------------------------------------------


def e_component(f: ExpFactor, k: int, vec: FockVector) -> FockVector:
    """Coefficient of z^k in E_pm(weight, scale*z) applied to vec."""
    ser = ModeSeries.from_factors([ExpFactor(f.sign, f.weight, f.scale, 0)])
    if f.sign == PLUS:
        return series_component(ser, -k, vec) if k <= 0 else FockVector()
    return series_component(ser, k, vec) if k >= 0 else FockVector()


_X_CACHE: dict = {}
_TABLES: OrderedDict = OrderedDict()
_TABLE_LIMIT = 48


def x_component(i: int, j: int, a, n: int, vec: FockVector) -> FockVector:
    """Coefficient of z^{-n} in X_ij(a, z) applied to vec."""
    key = (i, j, QScalar.coerce(a))
    w = _X_CACHE.get(key)
    if w is None:
        w = _X_CACHE[key] = x_word(i, j, a)
    # windows hit the same vector with many n; keep its table around
    tk = (key, vec)
    table = _TABLES.get(tk)
    if table is None:
        table = _TABLES[tk] = w.component_table(vec)
        if len(_TABLES) > _TABLE_LIMIT:
            _TABLES.popitem(last=False)
    else:
        _TABLES.move_to_end(tk)
    return table((n,))


def _uv_series(kind: str, i: int, j: int, a: QScalar) -> ModeSeries:
    d = j - i

    def fn(n):
        if kind == "u":
            diff = q_pow(d * n) - q_pow(-d * n)
        else:
            diff = q_pow(-d * n) - q_pow(d * n)
        base = diff * QScalar(2, n)
        ci = base * q_pow(d * n / 2)
        cj = -base * (a ** (-n)) * q_pow(-d * n / 2)
        out = [ZERO, ZERO]
        out[fold(i) - 1] = ci
        out[fold(j) - 1] = cj
        return tuple(out)

    return ModeSeries(kind == "v", ("uv", kind, i, j, a), fn)


_UV_CACHE: dict = {}


def uv_series(kind: str, i: int, j: int, a) -> ModeSeries:
    a = QScalar.coerce(a)
    key = (kind, i, j, a)
    s = _UV_CACHE.get(key)
    if s is None:
        s = _UV_CACHE[key] = _uv_series(kind, i, j, a)
    return s


def uv_component(kind: str, i: int, j: int, a, n: int, vec: FockVector) -> FockVector:
    """u_ij(a, n) (coefficient of z^{-n}) or v_ij(a, n) (coefficient of z^{n}).

    Built straight from the defining exponential, including the overall -1.
    """
    if n < 0:
        raise ValueError("u/v components are indexed by n >= 0")
    if fold(i) == fold(j):
        raise ValueError("u/v need i != j")
    return series_component(uv_series(kind, i, j, a), n, vec).scale(-ONE)


def contraction_kernel(i: int, j: int, a1, k: int, l: int, a2) -> list:
    """Four-factor kernel of X_ij(a1,z1) X_kl(a2,z2) relative to its normal ordering."""
    a1, a2 = QScalar.coerce(a1), QScalar.coerce(a2)
    d = bilinear_idx
    raw = [
        (ONE, d(i, k)),
        (a2 * q_pow(k - l), -d(i, l)),
        (a1.inverse() * a2 * q_pow(k + i - 2 * j), d(j, l)),
        (a1.inverse() * q_pow(i - j), -d(j, k)),
    ]
    return [KernelFactor(s, e) for s, e in raw if e]


def _ratio_series(s: QScalar, order: int) -> list:
    # (1 - s u)/(1 + s u) = 1 + sum_k 2 (-s)^k u^k
    out = [ONE]
    p = ONE
    for _ in range(order):
        p = p * (-s)
        out.append(p * 2)
    return out


def kernel_expand(kernel: Sequence[KernelFactor], order: int) -> list:
    """Taylor coefficients in u = w/z (region |u| < 1) up to ``order``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    out = [ONE] + [ZERO] * order
    for f in kernel:
        s = QScalar.coerce(f.scale)
        base = _ratio_series(s if f.exponent > 0 else -s, order)
        for _ in range(abs(f.exponent)):
            out = series_mul(out, base, order)
    return out


def exchange_kernel(alpha: Weight, beta: Weight, s1=ONE, s2=ONE) -> list:
    """Kernel of E_+(alpha, s1 z) E_-(beta, s2 w) = E_- E_+ * kernel(w/z)."""
    e = bilinear(alpha, beta)
    if not e:
        return []
    return [KernelFactor(QScalar.coerce(s2) / QScalar.coerce(s1), e)]


def specialize_limit(kind: str, i: int, j: int, a1, a2) -> VertexWord:
    """Evaluate :X_ij(a1,z1) X_ji(a2,z2): on the line where the E-factors cancel.

    ``u-limit`` sets z1 = a2 q^{j-i} z2; ``v-limit`` sets z2 = a1 q^{j-i} z1.
    The result is checked against the u/v word and returned in canonical form.
    """
    a1, a2 = QScalar.coerce(a1), QScalar.coerce(a2)
    if a1 * a2 != ONE:
        raise ValueError("limit formula needs a1*a2 = 1")
    no = normal_ordered(x_word(i, j, a1), x_word(j, i, a2))
    if kind in ("u", "u-limit"):
        word = no.substitute(0, a2 * q_pow(j - i), 1).canonical()
        expect = uv_word("u", i, j, a2.inverse()).rescale(a2 * q_pow((j - i) / 2)).canonical()
        leftover = [f for f in word.factors if f.sign == MINUS]
    elif kind in ("v", "v-limit"):
        word = no.substitute(1, a1 * q_pow(j - i), 0).canonical()
        expect = uv_word("v", i, j, a1.inverse()).rescale(q_pow((j - i) / 2)).canonical()
        leftover = [f for f in word.factors if f.sign == PLUS]
    else:
        raise ValueError(f"unknown limit kind {kind!r}")
    if leftover:
        raise ArithmeticError(f"factors failed to cancel: {leftover}")
    if not word.same_as(expect):
        raise ArithmeticError(f"limit word {word} differs from {expect}")
    return word
