"""Polynomial ideals, multivariate division and Buchberger's algorithm.

Polynomials live in a :class:`PolyRing` with an explicit variable list and a
monomial order.  The coefficient field is ``Q(i)`` or, when the ring declares
constant parameters, the rational functions ``Q(i)(constants)`` (as
:class:`~xcknot.scalar.Scalar`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .algebra import Tensor, tensor_product
from .expr import parse_scalar
from .scalar import ONE_Q, GaussianRational, Polynomial, Scalar

__all__ = [
    "MonomialOrder",
    "PolyRing",
    "Poly",
    "Ideal",
    "ResourceCaps",
    "ResourceCapExceeded",
    "Division",
    "divide",
    "normal_form",
    "s_polynomial",
    "buchberger",
    "is_groebner_basis",
    "ideal_membership",
    "XC0Coefficients",
    "xc0_coefficients",
    "xc0_ideal",
]


class ResourceCapExceeded(RuntimeError):
    pass


class MonomialOrder:
    """``lex`` or ``grevlex`` over an explicit variable order (first = largest)."""

    KINDS = ("lex", "grevlex")

    def __init__(self, kind: str, variables):
        if kind not in self.KINDS:
            raise ValueError(f"unknown monomial order {kind!r}; expected lex or grevlex")
        self.kind = kind
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")

    def key(self, exps: tuple):
        """Sort key: a larger monomial has a larger key."""
        if self.kind == "lex":
            return exps
        return (sum(exps), tuple(-e for e in reversed(exps)))

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.variables) == (
            other.kind,
            other.variables,
        )

    def __hash__(self):
        return hash((self.kind, self.variables))

    def __repr__(self):
        return f"MonomialOrder({self.kind!r}, {list(self.variables)})"


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


class PolyRing:
    """Polynomial ring ``K[variables]`` with ``K = Q(i)`` or ``Q(i)(constants)``."""

    def __init__(self, variables, constants=(), order: str = "grevlex"):
        self.variables = tuple(variables)
        self.constants = tuple(constants)
        clash = set(self.variables) & set(self.constants)
        if clash:
            raise ValueError(f"names used both as variables and constants: {sorted(clash)}")
        self.order = MonomialOrder(order, self.variables)
        self.index = {v: i for i, v in enumerate(self.variables)}
        self.nvars = len(self.variables)

    @property
    def symbolic(self) -> bool:
        return bool(self.constants)

    def coeff(self, c):
        if self.constants:
            return c if isinstance(c, Scalar) else Scalar(c)
        if isinstance(c, GaussianRational):
            return c
        if isinstance(c, Scalar):
            if not c.is_constant():
                raise ValueError(f"coefficient {c} is not a number")
            return c.constant_value()
        return GaussianRational(c)

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return self.constant(1)

    def constant(self, c) -> Poly:
        c = self.coeff(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> Poly:
        e = [0] * self.nvars
        e[self.index[name]] = 1
        return Poly(self, {tuple(e): self.coeff(1)})

    def __eq__(self, other):
        return isinstance(other, PolyRing) and (self.variables, self.constants, self.order.kind) == (
            other.variables,
            other.constants,
            other.order.kind,
        )

    def __hash__(self):
        return hash((self.variables, self.constants, self.order.kind))

    def __repr__(self):
        return f"PolyRing({list(self.variables)}, constants={list(self.constants)}, order={self.order.kind!r})"

    # conversions -------------------------------------------------------

    def from_polynomial(self, p: Polynomial) -> Poly:
        """Split each monomial into its variable part and its constant part."""
        consts = set(self.constants)
        terms = {}
        for mono, c in p.terms.items():
            e = [0] * self.nvars
            cpart = []
            for name, k in mono:
                if name in self.index:
                    e[self.index[name]] = k
                elif name in consts:
                    cpart.append((name, k))
                else:
                    raise ValueError(f"unknown name {name!r} in polynomial")
            e = tuple(e)
            cval = Scalar(Polynomial._from_clean({tuple(cpart): c})) if cpart else self.coeff(c)
            if self.constants:
                cval = self.coeff(cval)
            terms[e] = terms[e] + cval if e in terms else cval
        return Poly(self, {e: c for e, c in terms.items() if c})

    def from_scalar(self, s) -> Poly:
        s = Scalar(s) if not isinstance(s, Scalar) else s
        num = self.from_polynomial(s.num)
        if not s.den:
            return num
        den = s.denominator
        bad = den.variables() - set(self.constants)
        if bad:
            raise ValueError(f"denominator involves variables {sorted(bad)}")
        return num.scale(1 / Scalar(den))

    def parse(self, text) -> Poly:
        return self.from_scalar(parse_scalar(text, set(self.variables) | set(self.constants)))

    def to_scalar(self, f: Poly) -> Scalar:
        """Back to a Scalar in ``Q(i)(variables, constants)``."""
        total = Scalar(0)
        for e, c in f.terms.items():
            mono = tuple(sorted(((v, k) for v, k in zip(self.variables, e) if k), key=lambda t: t[0]))
            total = total + Scalar(Polynomial._from_clean({mono: ONE_Q})) * c
        return total


class Poly:
    """Sparse polynomial ``{exponent tuple: coefficient}`` in a :class:`PolyRing`."""

    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lm = None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def lm(self) -> tuple:
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading monomial")
            self._lm = max(self.terms, key=self.ring.order.key)
        return self._lm

    @property
    def lc(self):
        return self.terms[self.lm]

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def _check(self, other):
        if self.ring != other.ring:
            raise ValueError("polynomials from different rings")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = self.ring.constant(other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out[e] + c if e in out else c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = self.ring.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> Poly:
        c = self.ring.coeff(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul_term(self, mono: tuple, c) -> Poly:
        return Poly(self.ring, {_add(e, mono): v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add(e1, e2)
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return Poly(self.ring, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def monic(self) -> Poly:
        return self.scale(1 / self.lc) if self.terms else self

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = self.ring.constant(other)
        return (self - other).is_zero()

    __hash__ = None

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: self.ring.order.key(t[0]), reverse=True)

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.ring.variables, e) if k
            )
            cs = c.to_str() if isinstance(c, Scalar) else str(c)
            if not mono:
                parts.append(f"({cs})")
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append(f"-{mono}")
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.to_str()!r})"


# --------------------------------------------------------------------------
# division
# --------------------------------------------------------------------------


@dataclass
class Division:
    """``f = sum(q_i g_i) + remainder``; no remainder term is divisible by any ``LM(g_i)``."""

    quotients: list
    remainder: Poly

    def reconstruct(self, G) -> Poly:
        total = self.remainder
        for q, g in zip(self.quotients, G):
            total = total + q * g
        return total


def divide(f: Poly, G, max_terms: int | None = None) -> Division:
    """Multivariate division of ``f`` by the list ``G`` (first divisor wins)."""
    ring = f.ring
    G = [g for g in G]
    if any(g.is_zero() for g in G):
        raise ValueError("division by the zero polynomial")
    lead = [(g.lm, g.lc) for g in G]
    quot = [dict() for _ in G]
    rem = {}
    p = dict(f.terms)
    key = ring.order.key
    while p:
        m = max(p, key=key)
        c = p[m]
        for idx, (lm, lc) in enumerate(lead):
            if _divides(lm, m):
                shift = _sub(m, lm)
                factor = c / lc
                q = quot[idx]
                q[shift] = q[shift] + factor if shift in q else factor
                for e, v in G[idx].terms.items():
                    e2 = _add(e, shift)
                    nv = p[e2] - factor * v if e2 in p else -factor * v
                    if nv:
                        p[e2] = nv
                    else:
                        p.pop(e2, None)
                if max_terms is not None and len(p) > max_terms:
                    raise ResourceCapExceeded(f"intermediate polynomial exceeds {max_terms} terms")
                break
        else:
            rem[m] = c
            del p[m]
    quotients = [Poly(ring, {e: c for e, c in q.items() if c}) for q in quot]
    return Division(quotients, Poly(ring, rem))


def normal_form(f: Poly, G, order: MonomialOrder | str | None = None) -> Poly:
    """Remainder of ``f`` under division by ``G``.

    ``order`` may override the ring's order (``"lex"``/``"grevlex"`` or a
    :class:`MonomialOrder` on the same variables).
    """
    if order is not None:
        f, G = _reorder(f, G, order)
    return divide(f, G).remainder


def _reorder(f, G, order):
    kind = order.kind if isinstance(order, MonomialOrder) else order
    variables = order.variables if isinstance(order, MonomialOrder) else f.ring.variables
    ring = PolyRing(variables, f.ring.constants, kind)
    perm = [f.ring.index[v] for v in variables]

    def move(p):
        return Poly(ring, {tuple(e[i] for i in perm): c for e, c in p.terms.items()})

    return move(f), [move(g) for g in G]


def s_polynomial(f: Poly, g: Poly) -> Poly:
    m = _lcm(f.lm, g.lm)
    a = f.mul_term(_sub(m, f.lm), 1 / f.lc)
    b = g.mul_term(_sub(m, g.lm), 1 / g.lc)
    return a - b


# --------------------------------------------------------------------------
# Buchberger
# --------------------------------------------------------------------------


@dataclass
class ResourceCaps:
    max_basis: int = 400
    max_terms: int = 20000
    max_pairs: int = 200000


@dataclass
class Ideal:
    generators: list
    ring: PolyRing

    def __post_init__(self):
        self.generators = [g for g in self.generators if not g.is_zero()]
        for g in self.generators:
            if g.ring != self.ring:
                raise ValueError("generator from a different ring")

    @classmethod
    def from_exprs(cls, variables, gens, constants=(), order="grevlex") -> Ideal:
        ring = PolyRing(variables, constants, order)
        return cls([ring.parse(g) for g in gens], ring)

    def to_json(self) -> dict:
        return {
            "vars": list(self.ring.variables),
            "constants": list(self.ring.constants),
            "order": self.ring.order.kind,
            "gens": [self.ring.to_scalar(g).to_str() for g in self.generators],
        }

    @classmethod
    def from_json(cls, data: dict) -> Ideal:
        for k in ("vars", "gens"):
            if k not in data:
                raise ValueError(f"ideal JSON lacks {k!r}")
        return cls.from_exprs(data["vars"], data["gens"], data.get("constants", []), data.get("order", "grevlex"))

    @classmethod
    def load(cls, path) -> Ideal:
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


@dataclass
class _Run:
    basis: list = field(default_factory=list)
    pairs: set = field(default_factory=set)
    reductions: int = 0
    skipped: int = 0


def _coprime(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _pair_key(run, ring, pair):
    i, j = pair
    m = _lcm(run.basis[i].lm, run.basis[j].lm)
    return (sum(m), ring.order.key(m), i, j)


def _chain_skip(run, pairs, i, j) -> bool:
    """Buchberger's chain criterion."""
    m = _lcm(run.basis[i].lm, run.basis[j].lm)
    for k, g in enumerate(run.basis):
        if k in (i, j) or not _divides(g.lm, m):
            continue
        if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
            return True
    return False


def _buchberger_iter(I: Ideal, caps: ResourceCaps):
    """Yield the basis after each new element is added (and finally the full basis)."""
    ring = I.ring
    run = _Run()
    for g in I.generators:
        run.basis.append(g.monic())
    n = len(run.basis)
    pairs = {(i, j) for i in range(n) for j in range(i + 1, n)}
    yield run.basis
    done = 0
    while pairs:
        pair = min(pairs, key=lambda p: _pair_key(run, ring, p))
        pairs.discard(pair)
        i, j = pair
        done += 1
        if done > caps.max_pairs:
            raise ResourceCapExceeded(f"more than {caps.max_pairs} pairs processed")
        gi, gj = run.basis[i], run.basis[j]
        if _coprime(gi.lm, gj.lm) or _chain_skip(run, pairs, i, j):
            run.skipped += 1
            continue
        r = divide(s_polynomial(gi, gj), run.basis, caps.max_terms).remainder
        run.reductions += 1
        if r.is_zero():
            continue
        if len(r) > caps.max_terms:
            raise ResourceCapExceeded(f"basis element exceeds {caps.max_terms} terms")
        run.basis.append(r.monic())
        if len(run.basis) > caps.max_basis:
            raise ResourceCapExceeded(f"basis exceeds {caps.max_basis} elements")
        new = len(run.basis) - 1
        pairs.update((k, new) for k in range(new))
        yield run.basis


def _reduce_basis(G):
    """Minimal, interreduced, monic basis sorted by leading monomial."""
    G = [g.monic() for g in G if not g.is_zero()]
    minimal = []
    for idx, g in enumerate(G):
        dominated = False
        for jdx, h in enumerate(G):
            if jdx == idx:
                continue
            if _divides(h.lm, g.lm) and (h.lm != g.lm or jdx < idx):
                dominated = True
                break
        if not dominated:
            minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        r = divide(g, others).remainder if others else g
        out.append(r.monic())
    if out:
        key = out[0].ring.order.key
        out.sort(key=lambda g: key(g.lm))
    return out


def buchberger(I: Ideal, caps: ResourceCaps | None = None, reduce: bool = True) -> list:
    """Gröbner basis of ``I`` (reduced unless ``reduce=False``).

    Pairs are taken by the normal strategy (smallest lcm by degree, then by
    the order) and pruned by the coprime and chain criteria.  Raises
    :class:`ResourceCapExceeded` when a cap in ``caps`` is hit.
    """
    caps = caps or ResourceCaps()
    basis = None
    for basis in _buchberger_iter(I, caps):
        pass
    basis = list(basis or [])
    return _reduce_basis(basis) if reduce else basis


def is_groebner_basis(G) -> bool:
    """Every S-polynomial of ``G`` reduces to zero modulo ``G``."""
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            if not divide(s_polynomial(G[i], G[j]), G).remainder.is_zero():
                return False
    return True


def ideal_membership(f, I: Ideal, caps: ResourceCaps | None = None, basis=None) -> bool:
    """Decide ``f in I``.

    With a precomputed Gröbner ``basis`` this is one normal form.  Otherwise
    Buchberger runs with an early exit: a zero remainder modulo any subset of
    the ideal already certifies membership, and ``False`` is only returned
    once the full basis is known.
    """
    if not isinstance(f, Poly):
        f = I.ring.parse(f) if isinstance(f, str) else I.ring.from_scalar(f)
    if f.is_zero():
        return True
    if basis is not None:
        return normal_form(f, basis).is_zero()
    if not I.generators:
        return False
    caps = caps or ResourceCaps()
    current = None
    for current in _buchberger_iter(I, caps):
        if divide(f, current, caps.max_terms).remainder.is_zero():
            return True
    return divide(f, current, caps.max_terms).remainder.is_zero()


# --------------------------------------------------------------------------
# the (XC0) coefficients on SW
# --------------------------------------------------------------------------


@dataclass
class XC0Coefficients:
    """``p[(a, b, sign)] = numerators[...] / denominator ** powers[...]``.

    Keys use basis names, e.g. ``("w", "1", "+")`` is the coefficient of
    ``w (x) 1`` in ``(k (x) k) R (k^-1 (x) k^-1) - R``.
    """

    numerators: dict
    powers: dict
    denominator: Polynomial

    def rational(self, key) -> Scalar:
        return Scalar(self.numerators[key]) / Scalar(self.denominator) ** self.powers[key]

    def nonzero(self) -> dict:
        return {k: v for k, v in self.numerators.items() if not v.is_zero()}


def _sym_names():
    kappa = [f"l{i}" for i in range(1, 5)]
    R = [[f"m{i}{j}" for j in range(1, 5)] for i in range(1, 5)]
    Rinv = [[f"mp{i}{j}" for j in range(1, 5)] for i in range(1, 5)]
    return kappa, R, Rinv


def xc0_coefficients(kappa=None, R=None, Rinv=None) -> XC0Coefficients:
    """The polynomials ``p_{a,b}^{+-}`` of (XC0) on SW with cleared denominators.

    Defaults: ``kappa = sum l_i e_i``, ``R = sum m_ij e_i (x) e_j`` and
    ``R^-1 = sum mp_ij e_i (x) e_j`` (indices from 1).  ``kappa^-1`` is
    ``(2 l1 - kappa) / (l1^2 - l2^2)``.
    """
    from .sweedler import SW

    kn, Rn, Rbn = _sym_names()
    var = Scalar.var
    if kappa is None:
        kappa = SW.element([var(x) for x in kn])
    if R is None:
        R = Tensor(SW, 2, {(a, b): var(Rn[a][b]) for a in range(4) for b in range(4)})
    if Rinv is None:
        Rinv = Tensor(SW, 2, {(a, b): var(Rbn[a][b]) for a in range(4) for b in range(4)})
    c1, c2 = kappa.coeffs[0], kappa.coeffs[1]
    D = c1 * c1 - c2 * c2
    kinv = (2 * c1 * SW.unit - kappa) / D
    kk = tensor_product([kappa, kappa])
    kki = tensor_product([kinv, kinv])
    Dpoly = D.num if isinstance(D, Scalar) and not D.den else None
    if Dpoly is None:
        raise ValueError("l1^2 - l2^2 must be a polynomial")
    nums, pows = {}, {}
    names = SW.basis
    for sign, T in (("+", R), ("-", Rinv)):
        P = kk * T * kki - T
        for a in range(4):
            for b in range(4):
                c = P.coeffs.get((a, b), Scalar(0))
                key = (names[a], names[b], sign)
                for k in range(0, 5):
                    q = c * D**k
                    if not q.den:
                        nums[key], pows[key] = q.num, k
                        break
                else:
                    raise ValueError(f"unexpected denominator in {key}")
    return XC0Coefficients(nums, pows, Dpoly)


def xc0_ideal(constants=("l1", "l2"), order: str = "grevlex", signs="+-") -> Ideal:
    """Ideal of the cleared (XC0) numerators; ``constants`` go to the coefficient field."""
    coeffs = xc0_coefficients()
    kn, Rn, Rbn = _sym_names()
    names = kn + [x for row in Rn for x in row]
    if "-" in signs:
        names += [x for row in Rbn for x in row]
    variables = [v for v in names if v not in constants]
    ring = PolyRing(variables, constants, order)
    gens = [ring.from_polynomial(p) for (a, b, s), p in sorted(coeffs.nonzero().items()) if s in signs]
    return Ideal(gens, ring)
