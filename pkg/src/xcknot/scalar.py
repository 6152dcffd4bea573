"""Exact scalars: Gaussian rationals, multivariate polynomials and rational functions.

Everything here is immutable.  Three layers:

* :class:`GaussianRational` -- an element of Q(i), stored as ``(a + b*i) / d``
  with integers ``a, b`` and ``d > 0`` in lowest terms.
* :class:`Polynomial` -- a sparse polynomial over Q(i) in named parameters.
* :class:`Scalar` -- a rational function ``num / den``.  The denominator is kept
  as a multiset of normalized factors; factors are cancelled against the
  numerator by trial division only (there is no multivariate GCD).  Equality is
  decided by cross-multiplication, so correctness never depends on how far a
  value has been reduced.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from numbers import Rational

__all__ = [
    "GaussianRational",
    "Polynomial",
    "Scalar",
    "SingularSample",
    "as_scalar",
    "monomial_key",
    "natural_key",
]


class SingularSample(ZeroDivisionError):
    """A denominator vanishes at the requested parameter assignment."""


# --------------------------------------------------------------------------
# Q(i)
# --------------------------------------------------------------------------


class GaussianRational:
    """An exact complex rational ``re + im*i``."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        self._set(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    def _set(self, a, b, d):
        g = gcd(a, b, d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        self._a = a
        self._b = b
        self._d = d

    @classmethod
    def _raw(cls, a, b, d):
        obj = cls.__new__(cls)
        obj._set(a, b, d)
        return obj

    # -- accessors -------------------------------------------------------

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_real(self) -> bool:
        return self._b == 0

    def conjugate(self) -> GaussianRational:
        return GaussianRational._raw(self._a, -self._b, self._d)

    def complexity(self) -> int:
        return max(abs(self._a), abs(self._b), self._d).bit_length()

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, int):
            return GaussianRational._raw(other, 0, 1)
        if isinstance(other, Rational):
            return GaussianRational._raw(other.numerator, 0, other.denominator)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._d == o._d:
            return GaussianRational._raw(self._a + o._a, self._b + o._b, self._d)
        return GaussianRational._raw(
            self._a * o._d + o._a * self._d, self._b * o._d + o._b * self._d, self._d * o._d
        )

    __radd__ = __add__

    def __neg__(self):
        obj = GaussianRational.__new__(GaussianRational)
        obj._a, obj._b, obj._d = -self._a, -self._b, self._d
        return obj

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, e = self._a, self._b, o._a, o._b
        if b == 0 and e == 0:
            return GaussianRational._raw(a * c, 0, self._d * o._d)
        return GaussianRational._raw(a * c - b * e, a * e + b * c, self._d * o._d)

    __rmul__ = __mul__

    def inverse(self) -> GaussianRational:
        a, b, d = self._a, self._b, self._d
        n = a * a + b * b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        # d / (a + bi) = d (a - bi) / (a^2 + b^2)
        return GaussianRational._raw(d * a, -d * b, n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = GaussianRational._raw(1, 0, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return self._a != 0 or self._b != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._a == o._a and self._b == o._b and self._d == o._d

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        re_, im_ = self.re, self.im
        if im_ == 0:
            return str(re_)
        if re_ == 0:
            return _imag_str(im_)
        sign = "-" if im_ < 0 else "+"
        return f"{re_} {sign} {_imag_str(abs(im_))}"


def _imag_str(q: Fraction) -> str:
    if q == 1:
        return "i"
    if q == -1:
        return "-i"
    if q.denominator == 1:
        return f"{q.numerator}*i"
    return f"{q.numerator}*i/{q.denominator}"


ONE_Q = GaussianRational(1)
ZERO_Q = GaussianRational(0)


# --------------------------------------------------------------------------
# Monomials
# --------------------------------------------------------------------------
#
# A monomial is a tuple of (name, exponent) pairs sorted by name, exponents
# positive.  The empty tuple is 1.

_SENTINEL = ("\U0010ffff",)
_NAT_RE = re.compile(r"(\d+)")


def natural_key(name: str):
    """Sort key placing ``l2`` before ``l10``."""
    return tuple(int(p) if p.isdigit() else p for p in _NAT_RE.split(name))


def mono_mul(m1: tuple, m2: tuple) -> tuple:
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 == v2:
            out.append((v1, e1 + e2))
            i += 1
            j += 1
        elif v1 < v2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def mono_div(m1: tuple, m2: tuple):
    """``m1 / m2`` or ``None`` when ``m2`` does not divide ``m1``."""
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        have = d.get(v, 0)
        if have < e:
            return None
        if have == e:
            del d[v]
        else:
            d[v] = have - e
    return tuple(sorted(d.items()))


def mono_degree(m: tuple) -> int:
    return sum(e for _, e in m)


def monomial_key(m: tuple):
    """Key for graded-lex order (variables by name); *smaller* key = *larger* monomial."""
    return (-mono_degree(m), tuple((v, -e) for v, e in m) + (_SENTINEL,))


# --------------------------------------------------------------------------
# Polynomials over Q(i)
# --------------------------------------------------------------------------


class Polynomial:
    """Sparse polynomial in named parameters with :class:`GaussianRational` coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = dict(terms)
        self.terms = {m: c for m, c in terms.items() if c}
        # Make sure everything is a GaussianRational.
        for m, c in self.terms.items():
            if not isinstance(c, GaussianRational):
                self.terms[m] = GaussianRational._coerce(c)
        self._hash = None

    @classmethod
    def _from_clean(cls, terms: dict) -> Polynomial:
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> Polynomial:
        c = GaussianRational._coerce(c) if not isinstance(c, GaussianRational) else c
        return cls._from_clean({(): c} if c else {})

    @classmethod
    def var(cls, name: str) -> Polynomial:
        return cls._from_clean({((name, 1),): ONE_Q})

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((), ZERO_Q)

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def __len__(self):
        return len(self.terms)

    def leading(self):
        """(monomial, coefficient) of the leading term in graded-lex order."""
        m = min(self.terms, key=monomial_key)
        return m, self.terms[m]

    def monomial_content(self) -> tuple:
        """Largest monomial dividing every term."""
        it = iter(self.terms)
        try:
            first = next(it)
        except StopIteration:
            return ()
        common = dict(first)
        for m in it:
            if not common:
                break
            md = dict(m)
            for v in list(common):
                e = md.get(v, 0)
                if e == 0:
                    del common[v]
                elif e < common[v]:
                    common[v] = e
        return tuple(sorted(common.items()))

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        if len(self.terms) < len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for m, c in b.items():
            if m in out:
                s = out[m] + c
                if s:
                    out[m] = s
                else:
                    del out[m]
            else:
                out[m] = c
        return Polynomial._from_clean(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._from_clean({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return Polynomial.constant(other) - self

    def scale(self, c) -> Polynomial:
        if not c:
            return Polynomial()
        return Polynomial._from_clean({m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(GaussianRational._coerce(other))
        if not self.terms or not other.terms:
            return Polynomial()
        a, b = self.terms, other.terms
        if len(a) == 1 and () in a:
            return other.scale(a[()])
        if len(b) == 1 and () in b:
            return self.scale(b[()])
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = mono_mul(m1, m2)
                c = c1 * c2
                if m in out:
                    s = out[m] + c
                    if s:
                        out[m] = s
                    else:
                        del out[m]
                else:
                    out[m] = c
        return Polynomial._from_clean(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, mono: tuple, c=ONE_Q) -> Polynomial:
        return Polynomial._from_clean({mono_mul(m, mono): v * c for m, v in self.terms.items()})

    def div_monomial(self, mono: tuple) -> Polynomial:
        out = {}
        for m, c in self.terms.items():
            q = mono_div(m, mono)
            if q is None:
                raise ValueError("monomial does not divide polynomial")
            out[q] = c
        return Polynomial._from_clean(out)

    def exact_div(self, other: Polynomial):
        """Return ``self / other`` if the division is exact, otherwise ``None``."""
        if not other.terms:
            raise ZeroDivisionError("polynomial division by zero")
        if not self.terms:
            return Polynomial()
        lm, lc = other.leading()
        if len(other.terms) == 1:
            out = {}
            inv = lc.inverse()
            for m, c in self.terms.items():
                q = mono_div(m, lm)
                if q is None:
                    return None
                out[q] = c * inv
            return Polynomial._from_clean(out)
        other_max = other.degree()
        inv = lc.inverse()
        rem = dict(self.terms)
        quot = {}
        while rem:
            m = min(rem, key=monomial_key)
            q = mono_div(m, lm)
            if q is None:
                return None
            c = rem[m] * inv
            quot[q] = c
            for m2, c2 in other.terms.items():
                mm = mono_mul(m2, q)
                v = rem.get(mm, ZERO_Q) - c2 * c
                if v:
                    rem[mm] = v
                else:
                    rem.pop(mm, None)
            if rem and mono_degree(min(rem, key=monomial_key)) < other_max:
                return None
        return Polynomial._from_clean(quot)

    # -- evaluation ------------------------------------------------------

    def evaluate(self, assignment: dict) -> GaussianRational:
        total = ZERO_Q
        cache = {}
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                key = (v, e)
                p = cache.get(key)
                if p is None:
                    try:
                        base = assignment[v]
                    except KeyError:
                        raise KeyError(f"no value for parameter {v!r}") from None
                    if not isinstance(base, GaussianRational):
                        base = GaussianRational._coerce(base)
                    p = cache[key] = base**e
                t = t * p
            total = total + t
        return total

    def substitute(self, assignment: dict):
        """Substitute Scalars (or anything Scalar-coercible) for some parameters."""
        total = Scalar.zero()
        cache = {}
        for m, c in self.terms.items():
            rest = []
            t = None
            for v, e in m:
                if v in assignment:
                    key = (v, e)
                    p = cache.get(key)
                    if p is None:
                        p = cache[key] = as_scalar(assignment[v]) ** e
                    t = p if t is None else t * p
                else:
                    rest.append((v, e))
            piece = Scalar(Polynomial._from_clean({tuple(rest): c}))
            total = total + (piece if t is None else piece * t)
        return total

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        c = GaussianRational._coerce(other)
        if c is None:
            return NotImplemented
        return self.terms == ({(): c} if c else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- printing -------------------------------------------------------

    def sorted_terms(self, order=None):
        """Terms in grevlex order (largest first) w.r.t. the given variable order."""
        names = sorted(self.variables(), key=natural_key) if order is None else list(order)
        extra = sorted(self.variables() - set(names), key=natural_key)
        names = names + extra
        rank = {v: k for k, v in enumerate(names)}

        def key(item):
            m = item[0]
            vec = [0] * len(names)
            for v, e in m:
                vec[rank[v]] = e
            # grevlex: higher degree first; ties broken by smaller last exponent.
            return (-sum(vec), tuple(vec[::-1]))

        return sorted(self.terms.items(), key=key)

    def to_str(self, order=None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms(order):
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            parts.append(_term_str(c, mono))
        s = parts[0]
        for p in parts[1:]:
            s += " - " + p[1:] if p.startswith("-") else " + " + p
        return s

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r})"


def _gr_expr(c: GaussianRational) -> str:
    re_, im_ = c.re, c.im
    parts = []
    if re_:
        parts.append(_frac_expr(re_))
    if im_:
        s = _frac_expr(abs(im_))
        s = "i" if s == "1" else f"{s}*i"
        if parts:
            parts.append(("- " if im_ < 0 else "+ ") + s)
        else:
            parts.append(("-" if im_ < 0 else "") + s)
    return " ".join(parts)


def _frac_expr(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _term_str(c: GaussianRational, mono: str) -> str:
    if c.is_real():
        q = c.re
        neg = q < 0
        q = abs(q)
        if not mono:
            body = _frac_expr(q)
        elif q == 1:
            body = mono
        elif q.denominator == 1:
            body = f"{q.numerator}*{mono}"
        else:
            body = f"{q.numerator}*{mono}/{q.denominator}"
        return ("-" if neg else "") + body
    inner = f"({_gr_expr(c)})"
    return inner if not mono else f"{inner}*{mono}"


# --------------------------------------------------------------------------
# Rational functions
# --------------------------------------------------------------------------


def _normalize_factor(p: Polynomial):
    """Split ``p`` into ``(constant, monomial_content, monic_rest)``."""
    content = p.monomial_content()
    rest = p.div_monomial(content) if content else p
    _, lc = rest.leading()
    if lc != ONE_Q:
        rest = rest.scale(lc.inverse())
    return lc, content, rest


_ONE_POLY = Polynomial.constant(1)


class Scalar:
    """A rational function over Q(i): ``num / prod(f**k for f, k in den)``.

    ``den`` maps normalized factor polynomials (monic, no monomial content,
    or a single variable) to positive multiplicities.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None):
        if not isinstance(num, Polynomial):
            num = Polynomial.constant(num)
        self.num = num
        self.den = {}
        if den is not None:
            if not isinstance(den, Polynomial):
                den = Polynomial.constant(den)
            if den.is_zero():
                raise ZeroDivisionError("zero denominator")
            const, content, rest = _normalize_factor(den)
            factors = {}
            _add_factors(factors, content, rest)
            self.num = num.scale(const.inverse())
            self.den = factors
            self._cancel()
        if self.num.is_zero():
            self.den = {}

    @classmethod
    def _make(cls, num: Polynomial, den: dict, cancel=True) -> Scalar:
        s = cls.__new__(cls)
        s.num = num
        s.den = den
        if num.is_zero():
            s.den = {}
        elif cancel and den:
            s._cancel()
        return s

    @classmethod
    def zero(cls) -> Scalar:
        return cls._make(Polynomial(), {}, False)

    @classmethod
    def one(cls) -> Scalar:
        return cls._make(_ONE_POLY, {}, False)

    @classmethod
    def var(cls, name: str) -> Scalar:
        return cls._make(Polynomial.var(name), {}, False)

    def _cancel(self):
        num = self.num
        den = dict(self.den)
        for f in list(den):
            k = den[f]
            while k:
                q = num.exact_div(f)
                if q is None:
                    break
                num = q
                k -= 1
            if k:
                den[f] = k
            else:
                del den[f]
        self.num = num
        self.den = den

    # -- structure -------------------------------------------------------

    @property
    def denominator(self) -> Polynomial:
        out = _ONE_POLY
        for f, k in self.den.items():
            out = out * f**k
        return out

    @property
    def numerator(self) -> Polynomial:
        return self.num

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return not self.den and self.num.is_constant()

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError("scalar is not constant")
        return self.num.constant_value()

    def variables(self) -> set:
        out = self.num.variables()
        for f in self.den:
            out |= f.variables()
        return out

    def complexity(self) -> int:
        return len(self.num.terms) + sum(len(f.terms) * k for f, k in self.den.items())

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Scalar):
            return other
        if isinstance(other, Polynomial):
            return Scalar._make(other, {}, False)
        c = GaussianRational._coerce(other)
        if c is None:
            return None
        return Scalar._make(Polynomial._from_clean({(): c} if c else {}), {}, False)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num.terms:
            return self
        if not self.num.terms:
            return o
        if not self.den and not o.den:
            return Scalar._make(self.num + o.num, {}, False)
        if self.den == o.den:
            return Scalar._make(self.num + o.num, dict(self.den))
        lcm = dict(self.den)
        for f, k in o.den.items():
            if lcm.get(f, 0) < k:
                lcm[f] = k
        a = self.num * _factor_product(lcm, self.den)
        b = o.num * _factor_product(lcm, o.den)
        return Scalar._make(a + b, lcm)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._make(-self.num, self.den, False)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num.terms or not o.num.terms:
            return Scalar.zero()
        if not self.den and not o.den:
            return Scalar._make(self.num * o.num, {}, False)
        a_num, a_den = _cancel_against(self.num, o.den)
        b_num, b_den = _cancel_against(o.num, self.den)
        den = dict(a_den)
        for f, k in b_den.items():
            den[f] = den.get(f, 0) + k
        return Scalar._make(a_num * b_num, den, False)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        if self.num.is_zero():
            raise ZeroDivisionError("division by the zero scalar")
        const, content, rest = _normalize_factor(self.num)
        den = {}
        _add_factors(den, content, rest)
        num = self.denominator.scale(const.inverse())
        return Scalar._make(num, den, False)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero scalar")
        if o.num.is_constant():
            c = o.num.constant_value().inverse()
            return self * Scalar._make(o.denominator.scale(c), {}, False)
        # x / x shortcut and friends: cancel the divisor's numerator outright.
        q = self.num.exact_div(o.num)
        if q is not None:
            return Scalar._make(q, dict(self.den), False) * Scalar._make(o.denominator, {}, False)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        num = self.num**k
        den = {f: m * k for f, m in self.den.items()} if k else {}
        return Scalar._make(num, den, False)

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.den and not o.den:
            return self.num == o.num
        # cross-multiplication: a/b == c/d  iff  a*d - c*b == 0
        lcm = dict(self.den)
        for f, k in o.den.items():
            if lcm.get(f, 0) < k:
                lcm[f] = k
        a = self.num * _factor_product(lcm, self.den)
        b = o.num * _factor_product(lcm, o.den)
        return (a - b).is_zero()

    __hash__ = None

    # -- evaluation ------------------------------------------------------

    def eval_at(self, assignment: dict) -> GaussianRational:
        d = ONE_Q
        for f, k in self.den.items():
            v = f.evaluate(assignment)
            if not v:
                raise SingularSample(f"denominator factor {f} vanishes at the sample point")
            d = d * v**k
        return self.num.evaluate(assignment) / d

    def substitute(self, assignment: dict) -> Scalar:
        if not (self.variables() & set(assignment)):
            return self
        out = self.num.substitute(assignment)
        for f, k in self.den.items():
            v = f.substitute(assignment)
            if v.is_zero():
                raise SingularSample(f"denominator factor {f} vanishes under substitution")
            out = out / v**k
        return out

    # -- printing --------------------------------------------------------

    def to_str(self, order=None) -> str:
        n = self.num.to_str(order)
        if not self.den:
            return n
        d = " * ".join(
            f"({f.to_str(order)})" + (f"^{k}" if k > 1 else "")
            for f, k in sorted(self.den.items(), key=lambda fk: fk[0].to_str(order))
        )
        if len(self.num.terms) > 1:
            n = f"({n})"
        if len(self.den) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Scalar({self.to_str()!r})"


def _add_factors(factors: dict, content: tuple, rest: Polynomial):
    for v, e in content:
        f = Polynomial.var(v)
        factors[f] = factors.get(f, 0) + e
    if not rest.is_constant():
        factors[rest] = factors.get(rest, 0) + 1


def _factor_product(target: dict, have: dict) -> Polynomial:
    """``prod(target) / prod(have)`` for factor multisets with ``have <= target``."""
    out = _ONE_POLY
    for f, k in target.items():
        e = k - have.get(f, 0)
        if e:
            out = out * (f**e if e > 1 else f)
    return out


def _cancel_against(num: Polynomial, den: dict):
    """Cancel factors of ``den`` dividing ``num``; returns the reduced pair."""
    if not den:
        return num, {}
    den = dict(den)
    for f in list(den):
        k = den[f]
        while k:
            q = num.exact_div(f)
            if q is None:
                break
            num = q
            k -= 1
        if k:
            den[f] = k
        else:
            del den[f]
    return num, den


def as_scalar(x) -> Scalar:
    """Coerce ints, Fractions, GaussianRationals and Polynomials to :class:`Scalar`."""
    s = Scalar._coerce(x)
    if s is None:
        raise TypeError(f"cannot interpret {x!r} as a scalar")
    return s
