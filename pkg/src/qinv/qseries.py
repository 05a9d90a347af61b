"""Exact truncated series in q with rational exponents.

A ``QSeries`` holds finitely many terms c*q^e with e on a grid (1/D)Z and
exact rational c, and is known modulo q^trunc.  ``trunc`` may be
``math.inf``, in which case the value is an exact Laurent polynomial.
Coefficients are Python ints where integral, ``Fraction`` otherwise.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping

from . import kernels

INF = math.inf

# dense integer convolution goes through the kernel above this size
_DENSE_MIN = 64


class DivisionByNonUnitError(ZeroDivisionError):
    pass


class InexactDivisionError(ValueError):
    pass


class NoTrailingTermError(ValueError):
    pass


def _coef(x):
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _exp(x):
    if x == INF:
        return INF
    return Fraction(x)


class QSeries:
    """Truncated series sum c_e q^e + O(q^trunc)."""

    __slots__ = ("_D", "_c", "_trunc")

    def __init__(self, terms: Mapping | Iterable = (), trunc=INF):
        trunc = _exp(trunc)
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Fraction, object] = {}
        for e, c in items:
            e = Fraction(e)
            if e >= trunc:
                continue
            acc[e] = acc.get(e, 0) + _coef(c)
        D = 1
        for e in acc:
            D = math.lcm(D, e.denominator)
        if trunc != INF:
            D = math.lcm(D, trunc.denominator)
        self._D = D
        self._c = {int(e * D): _coef(c) for e, c in acc.items() if c != 0}
        self._trunc = trunc

    @classmethod
    def _raw(cls, D: int, c: dict, trunc) -> "QSeries":
        """Build from grid numerators, reducing the grid to lowest terms."""
        c = {k: v for k, v in c.items() if v != 0}
        if trunc != INF:
            trunc = Fraction(trunc)
            if trunc.denominator > 1 and D % trunc.denominator:
                f = math.lcm(D, trunc.denominator) // D
                D *= f
                c = {k * f: v for k, v in c.items()}
        g = D
        for k in c:
            g = math.gcd(g, k)
            if g == 1:
                break
        if trunc != INF and g > 1:
            g = math.gcd(g, int(trunc * D))
        out = cls.__new__(cls)
        if g > 1:
            out._D = D // g
            out._c = {k // g: v for k, v in c.items()}
        else:
            out._D = D
            out._c = c
        out._trunc = trunc
        return out

    # construction helpers
    @classmethod
    def monomial(cls, c, e, T=INF) -> "QSeries":
        return cls({Fraction(e): c}, T)

    @classmethod
    def zero(cls, T=INF) -> "QSeries":
        return cls((), T)

    @classmethod
    def one(cls, T=INF) -> "QSeries":
        return cls({0: 1}, T)

    @classmethod
    def from_coefficients(cls, coeffs: Iterable, T=None, start=0) -> "QSeries":
        """Integer-exponent series from a list of coefficients."""
        coeffs = list(coeffs)
        if T is None:
            T = start + len(coeffs)
        return cls({start + i: c for i, c in enumerate(coeffs)}, T)

    # accessors
    @property
    def grid(self) -> int:
        return self._D

    @property
    def trunc(self):
        return self._trunc

    @property
    def terms(self) -> dict[Fraction, object]:
        D = self._D
        return {Fraction(k, D): v for k, v in sorted(self._c.items())}

    def items(self):
        D = self._D
        for k in sorted(self._c):
            yield Fraction(k, D), self._c[k]

    def coefficient(self, e):
        e = Fraction(e)
        if e >= self._trunc:
            raise ValueError(f"coefficient of q^{e} unknown beyond O(q^{self._trunc})")
        k = e * self._D
        if k.denominator != 1:
            return 0
        return self._c.get(k.numerator, 0)

    __getitem__ = coefficient

    def is_zero(self) -> bool:
        return not self._c

    def is_exact(self) -> bool:
        return self._trunc == INF

    @property
    def ord(self):
        """Trailing exponent; the truncation for a series known to be zero."""
        if not self._c:
            return self._trunc
        return Fraction(min(self._c), self._D)

    @property
    def degree(self):
        if not self._c:
            return None
        return Fraction(max(self._c), self._D)

    def __len__(self) -> int:
        return len(self._c)

    # arithmetic
    @staticmethod
    def _common(a: "QSeries", b: "QSeries"):
        D = math.lcm(a._D, b._D)
        fa, fb = D // a._D, D // b._D
        ca = a._c if fa == 1 else {k * fa: v for k, v in a._c.items()}
        cb = b._c if fb == 1 else {k * fb: v for k, v in b._c.items()}
        return D, ca, cb

    def _lift(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        return QSeries({0: other}, INF)

    def __add__(self, other) -> "QSeries":
        other = self._lift(other)
        T = min(self._trunc, other._trunc)
        D, ca, cb = self._common(self, other)
        out = dict(ca)
        for k, v in cb.items():
            out[k] = out.get(k, 0) + v
        if T != INF:
            lim = T * D
            out = {k: v for k, v in out.items() if k < lim}
        return QSeries._raw(D, out, T)

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries._raw(self._D, {k: -v for k, v in self._c.items()}, self._trunc)

    def __sub__(self, other) -> "QSeries":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "QSeries":
        return self._lift(other) - self

    def scale(self, c) -> "QSeries":
        c = _coef(c)
        if c == 0:
            return QSeries.zero(self._trunc)
        return QSeries._raw(self._D, {k: _coef(v * c) for k, v in self._c.items()}, self._trunc)

    def shift(self, e) -> "QSeries":
        """Multiply by q^e (exactly)."""
        e = Fraction(e)
        D = math.lcm(self._D, e.denominator)
        f = D // self._D
        s = int(e * D)
        T = self._trunc + e if self._trunc != INF else INF
        return QSeries._raw(D, {k * f + s: v for k, v in self._c.items()}, T)

    def __mul__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            return self.scale(other)
        a, b = self, other
        T = min(a._trunc + b.ord, b._trunc + a.ord)
        if not a._c or not b._c:
            return QSeries.zero(T)
        D, ca, cb = self._common(a, b)
        lim = T * D if T != INF else None
        out = _convolve(ca, cb, lim)
        return QSeries._raw(D, out, T)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QSeries":
        if k < 0:
            return QSeries.one(INF).div_by_unit(self ** (-k))
        out = QSeries.one(INF)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def truncate(self, T) -> "QSeries":
        T = _exp(T)
        if T >= self._trunc:
            if T > self._trunc:
                raise ValueError(f"cannot extend O(q^{self._trunc}) to O(q^{T})")
            return self
        if T == INF:
            return self
        D = math.lcm(self._D, T.denominator)
        f = D // self._D
        lim = T * D
        return QSeries._raw(D, {k * f: v for k, v in self._c.items() if k * f < lim}, T)

    def div_by_unit(self, b: "QSeries", trunc=None) -> "QSeries":
        """Exact series quotient self/b.

        With both operands exact and no ``trunc`` cap, performs exact
        polynomial division and raises if b does not divide self.
        """
        a = self
        b = self._lift(b)
        if not b._c:
            raise DivisionByNonUnitError("divisor has no nonzero term to its truncation")
        eb = b.ord
        ea = a.ord
        if not a._c:
            T = a._trunc - eb if a._trunc != INF else INF
            if trunc is not None:
                T = min(T, _exp(trunc))
            return QSeries.zero(T)
        T = min(a._trunc - eb, b._trunc - 2 * eb + ea)
        if trunc is not None:
            T = min(T, _exp(trunc))
        if T == INF:
            return a._exact_div(b)
        return _series_div(a, b, T)

    __truediv__ = div_by_unit

    def __rtruediv__(self, other) -> "QSeries":
        return self._lift(other).div_by_unit(self)

    def _exact_div(self, b: "QSeries") -> "QSeries":
        a = self
        # series quotient holds every term up to deg(a) - deg(b)
        q = _series_div(a, b, a.degree - b.degree + Fraction(1, math.lcm(a._D, b._D)))
        q = QSeries._raw(q._D, dict(q._c), INF)
        if q * b != a:
            raise InexactDivisionError("exact division leaves a remainder")
        return q

    # comparison
    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (
            self._trunc == other._trunc
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self._trunc, tuple(self.items())))

    def agreement_order(self, other: "QSeries"):
        return agreement_order(self, other)

    def __repr__(self) -> str:
        return f"QSeries({format_series(self)})"

    def __str__(self) -> str:
        return format_series(self)


def _convolve(ca: dict, cb: dict, lim) -> dict:
    if len(ca) > len(cb):
        ca, cb = cb, ca
    ia = sorted(ca)
    ib = sorted(cb)
    lo_a, lo_b = ia[0], ib[0]
    span_a = ia[-1] - lo_a + 1
    span_b = ib[-1] - lo_b + 1
    integral = all(isinstance(v, int) for v in ca.values()) and all(
        isinstance(v, int) for v in cb.values()
    )
    n = span_a + span_b - 1
    if lim is not None:
        n = min(n, math.ceil(lim - lo_a - lo_b))
    if n <= 0:
        return {}
    dense = (len(ca) * 2 >= span_a) and (len(cb) * 2 >= span_b)
    if integral and dense and min(len(ca), len(cb)) >= _DENSE_MIN:
        da = [0] * span_a
        for k, v in ca.items():
            da[k - lo_a] = v
        db = [0] * span_b
        for k, v in cb.items():
            db[k - lo_b] = v
        prod = kernels.mul_trunc(da, db, n)
        base = lo_a + lo_b
        return {base + i: v for i, v in enumerate(prod) if v}
    out: dict[int, object] = {}
    for ka in ia:
        va = ca[ka]
        for kb in ib:
            k = ka + kb
            if lim is not None and k >= lim:
                break
            out[k] = out.get(k, 0) + va * cb[kb]
    return {k: _coef(v) for k, v in out.items() if v != 0}


def _series_div(a: QSeries, b: QSeries, T) -> QSeries:
    D, ca, cb = QSeries._common(a, b)
    T = Fraction(T)
    D = math.lcm(D, T.denominator)
    fa = D // math.lcm(a._D, b._D)
    if fa != 1:
        ca = {k * fa: v for k, v in ca.items()}
        cb = {k * fa: v for k, v in cb.items()}
    kb0 = min(cb)
    ka0 = min(ca)
    b0 = cb[kb0]
    tail = sorted((k - kb0, v) for k, v in cb.items() if k != kb0)
    start = ka0 - kb0
    n = math.ceil(T * D) - start
    quot = [0] * max(n, 0)
    inv_int = b0 in (1, -1)
    for i in range(max(n, 0)):
        s = ca.get(ka0 + i, 0)
        for j, v in tail:
            if j > i:
                break
            qv = quot[i - j]
            if qv:
                s -= v * qv
        if s:
            quot[i] = s * b0 if inv_int else _coef(Fraction(s) / b0)
    out = {start + i: _coef(v) for i, v in enumerate(quot) if v}
    return QSeries._raw(D, out, T)


def monomial(c, e, T=INF) -> QSeries:
    return QSeries.monomial(c, e, T)


def euler_product(T) -> QSeries:
    """(q;q)_inf = prod_{k>=1} (1 - q^k) mod q^T, via pentagonal numbers."""
    T = Fraction(T)
    terms = {0: 1}
    m = 1
    while True:
        g1 = m * (3 * m - 1) // 2
        if g1 >= T:
            break
        s = -1 if m % 2 else 1
        terms[g1] = s
        g2 = m * (3 * m + 1) // 2
        if g2 < T:
            terms[g2] = s
        m += 1
    return QSeries(terms, T)


def euler_product_naive(T) -> QSeries:
    """Same series by multiplying the factors out directly."""
    T = Fraction(T)
    out = QSeries.one(T)
    k = 1
    while k < T:
        out = out * QSeries({0: 1, k: -1}, T)
        k += 1
    return out


def trailing_normalize(a: QSeries):
    """Return (a / (c q^e), e, sign(c)) for the trailing term c q^e."""
    if a.is_zero():
        raise NoTrailingTermError("series has no nonzero term to its truncation")
    e = a.ord
    c = a.coefficient(e)
    sign = 1 if c > 0 else -1
    inv = Fraction(1) / Fraction(c)
    return a.shift(-e).scale(inv), e, sign


def agreement_order(a: QSeries, b: QSeries):
    """Least exponent below min truncation where a and b differ, or INF."""
    T = min(a.trunc, b.trunc)
    diff = (a - b)
    if diff.is_zero():
        return INF
    e = diff.ord
    return e if e < T else INF


def is_integral(a: QSeries) -> bool:
    return all(e.denominator == 1 and e >= 0 for e in a.terms) and all(
        isinstance(c, int) for c in a._c.values()
    )


def prod_one_minus(exponents: Iterable, T=INF) -> QSeries:
    """prod (1 - q^h) over the given positive exponents."""
    out = QSeries.one(T)
    for h in exponents:
        out = out * QSeries({0: 1, h: -1}, T)
    return out


def div_prod_one_minus(a: QSeries, exponents: Iterable, T=None) -> QSeries:
    """a / prod (1 - q^h), h > 0, via the recurrence c_k = a_k + c_{k-h}.

    For an exact ``a`` the division must be exact (checked) unless a finite
    cap ``T`` is given.
    """
    exps = [Fraction(h) for h in exponents]
    if T is None and a.trunc == INF:
        return a.div_by_unit(prod_one_minus(exps))
    T = a.trunc if T is None else min(_exp(T), a.trunc)
    if T == INF:
        raise ValueError("need a finite truncation")
    out = a.truncate(T) if T < a.trunc else a
    for h in exps:
        D = math.lcm(out._D, h.denominator, Fraction(T).denominator)
        f = D // out._D
        c = {k * f: v for k, v in out._c.items()}
        if not c:
            out = QSeries.zero(T)
            continue
        step = int(h * D)
        lo = min(c)
        hi = math.ceil(T * D)
        for k in range(lo + step, hi):
            v = c.get(k - step)
            if v:
                c[k] = c.get(k, 0) + v
        out = QSeries._raw(D, c, Fraction(T))
    return out


def format_series(a: QSeries, var: str = "q") -> str:
    parts = []
    for e, c in a.items():
        if e == 0:
            mono = ""
        elif e == 1:
            mono = var
        else:
            mono = f"{var}^{e}" if e.denominator == 1 and e > 0 else f"{var}^({e})"
        if mono:
            if c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = f"{c}*{mono}"
        else:
            s = str(c)
        parts.append(s)
    body = " + ".join(parts).replace("+ -", "- ")
    if a.trunc != INF:
        t = a.trunc
        big_o = f"O({var}^{t})" if t.denominator == 1 else f"O({var}^({t}))"
        body = f"{body} + {big_o}" if body else big_o
    body = body or "0"
    return body


def to_record(a: QSeries) -> dict:
    """Serialization: exponents as numerators over the grid D."""
    T = a.trunc
    D = a.grid
    return {
        "grid": D,
        "trunc": None if T == INF else [T.numerator, T.denominator],
        "terms": [
            [k, Fraction(v).numerator, Fraction(v).denominator]
            for k, v in sorted(a._c.items())
        ],
    }


def from_record(rec: Mapping) -> QSeries:
    D = int(rec["grid"])
    T = INF if rec.get("trunc") is None else Fraction(*rec["trunc"])
    terms = {Fraction(k, D): Fraction(n, d) for k, n, d in rec["terms"]}
    return QSeries(terms, T)
