"""Finite-dimensional associative unital algebras given by structure constants.

An :class:`AlgebraSpec` fixes a basis ``e_0 .. e_{n-1}`` and the products
``e_i e_j = sum_k c_ij^k e_k``.  :class:`Element` is a dense coefficient
vector, :class:`Tensor` a sparse element of a tensor power ``A^{(x)m}`` keyed
by tuples of basis indices.

Coefficients live in one of two fields: symbolic (:class:`~xcknot.scalar.Scalar`)
or numeric (:class:`~xcknot.scalar.GaussianRational`).  ``specialize`` maps a
symbolic object to the numeric field at a parameter assignment.

Leg and slot positions are 0-based throughout.
"""

from __future__ import annotations

import itertools

from . import linalg
from .scalar import GaussianRational, Scalar, as_scalar

__all__ = [
    "AlgebraMismatch",
    "SingularElement",
    "SingularTensor",
    "AlgebraSpec",
    "Element",
    "Tensor",
    "check_algebra",
    "tensor_product",
    "mul_tensor",
    "invert_element",
    "invert_tensor",
    "permute",
    "embed",
    "contract",
    "contract_element",
    "left_mult_matrix",
    "tensor_left_mult_matrix",
    "system_determinant",
    "truncated_polynomial_algebra",
    "direct_product",
    "change_basis",
    "algebra_from_json",
    "algebra_to_json",
]


class AlgebraMismatch(ValueError):
    pass


class SingularElement(ArithmeticError):
    pass


class SingularTensor(ArithmeticError):
    pass


def _to_gr(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, Scalar):
        return x.constant_value()
    c = GaussianRational._coerce(x)
    if c is None:
        raise TypeError(f"cannot interpret {x!r} as a number")
    return c


class AlgebraSpec:
    """Structure-constant presentation of an algebra.

    ``unit`` is a length-``n`` coefficient vector; ``mul[i][j]`` is the
    coefficient vector of ``e_i e_j``.  ``numeric=True`` stores everything as
    Gaussian rationals.
    """

    def __init__(self, name, basis, unit, mul, params=(), numeric=False):
        self.name = name
        self.basis = tuple(basis)
        self.dim = n = len(self.basis)
        self.params = tuple(params)
        self.numeric = numeric
        self.coerce = _to_gr if numeric else as_scalar
        self.zero = self.coerce(0)
        self.one = self.coerce(1)
        if len(unit) != n or len(mul) != n or any(len(row) != n for row in mul):
            raise ValueError("unit/mul table size does not match the basis")
        self.unit_coeffs = tuple(self.coerce(c) for c in unit)
        self.table = tuple(
            tuple(tuple(self.coerce(c) for c in vec) for vec in row) for row in mul
        )
        for row in self.table:
            for vec in row:
                if len(vec) != n:
                    raise ValueError("product vector has the wrong length")
        # sparse[i][j] = [(k, c, sign)] with sign = +-1 when c is +-1, else 0
        self.sparse = tuple(
            tuple(
                tuple((k, c, 1 if c == 1 else (-1 if c == -1 else 0)) for k, c in enumerate(vec) if c)
                for vec in row
            )
            for row in self.table
        )
        self._word_cache = {}

    # -- constructors ----------------------------------------------------

    def element(self, coeffs) -> Element:
        return Element(self, coeffs)

    def basis_element(self, i: int) -> Element:
        return Element(self, [self.one if k == i else self.zero for k in range(self.dim)])

    def by_name(self, name: str) -> Element:
        return self.basis_element(self.basis.index(name))

    @property
    def unit(self) -> Element:
        return Element(self, self.unit_coeffs)

    def zero_element(self) -> Element:
        return Element(self, [self.zero] * self.dim)

    def specialize(self, assignment) -> AlgebraSpec:
        """Numeric copy with every structure constant evaluated at ``assignment``."""
        if self.numeric:
            return self
        return AlgebraSpec(
            self.name,
            self.basis,
            [c.eval_at(assignment) for c in self.unit_coeffs],
            [[[c.eval_at(assignment) for c in vec] for vec in row] for row in self.table],
            self.params,
            numeric=True,
        )

    def __repr__(self):
        kind = "numeric" if self.numeric else "symbolic"
        return f"AlgebraSpec({self.name!r}, dim={self.dim}, {kind})"

    # -- basis word products ------------------------------------------------

    def word_product(self, word: tuple):
        """Sparse coefficient list of ``e_{w0} e_{w1} ... e_{wr}`` (cached)."""
        cache = self._word_cache
        hit = cache.get(word)
        if hit is not None:
            return hit
        if not word:
            res = tuple((k, c) for k, c in enumerate(self.unit_coeffs) if c)
        elif len(word) == 1:
            res = ((word[0], self.one),)
        else:
            acc = {}
            for k, c in self.word_product(word[:-1]):
                for k2, c2, s in self.sparse[k][word[-1]]:
                    v = c if s == 1 else (-c if s == -1 else c * c2)
                    acc[k2] = acc[k2] + v if k2 in acc else v
            res = tuple((k, c) for k, c in sorted(acc.items()) if c)
        cache[word] = res
        return res


# --------------------------------------------------------------------------
# Elements
# --------------------------------------------------------------------------


class Element:
    """An element of an algebra as a dense coefficient vector."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: AlgebraSpec, coeffs):
        coeffs = tuple(algebra.coerce(c) for c in coeffs)
        if len(coeffs) != algebra.dim:
            raise ValueError(f"expected {algebra.dim} coefficients, got {len(coeffs)}")
        self.algebra = algebra
        self.coeffs = coeffs

    @classmethod
    def _raw(cls, algebra, coeffs):
        e = cls.__new__(cls)
        e.algebra = algebra
        e.coeffs = tuple(coeffs)
        return e

    def _check(self, other):
        if other.algebra is not self.algebra and other.algebra.basis != self.algebra.basis:
            raise AlgebraMismatch(f"{self.algebra.name} vs {other.algebra.name}")

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        return Element._raw(self.algebra, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        return Element._raw(self.algebra, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return Element._raw(self.algebra, [-a for a in self.coeffs])

    def scale(self, c) -> Element:
        c = self.algebra.coerce(c)
        return Element._raw(self.algebra, [c * a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        if isinstance(other, (Tensor,)):
            return NotImplemented
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        return self.scale(1 / self.algebra.coerce(other))

    def __pow__(self, k: int) -> Element:
        if k < 0:
            return invert_element(self) ** (-k)
        result = self.algebra.unit
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        if other.algebra.basis != self.algebra.basis:
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def commutes_with(self, other: Element) -> bool:
        return self * other == other * self

    def map(self, fn, algebra=None) -> Element:
        alg = algebra if algebra is not None else self.algebra
        return Element(alg, [fn(c) for c in self.coeffs])

    def specialize(self, assignment, algebra=None) -> Element:
        alg = algebra if algebra is not None else self.algebra.specialize(assignment)
        return Element._raw(alg, [_eval(c, assignment) for c in self.coeffs])

    def to_str(self, order=None) -> str:
        parts = []
        for c, name in zip(self.coeffs, self.algebra.basis):
            if not c:
                continue
            parts.append(_coef_times(c, name, order))
        return _join_terms(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Element({self.to_str()})"


def _eval(c, assignment):
    if isinstance(c, Scalar):
        return c.eval_at(assignment)
    return c


def _coef_str(c, order=None) -> str:
    if isinstance(c, Scalar):
        return c.to_str(order)
    return str(c)


def _coef_times(c, name: str, order=None) -> str:
    s = _coef_str(c, order)
    if name == "1":
        return s if _is_atomic(s) else f"({s})"
    if s == "1":
        return name
    if s == "-1":
        return f"-{name}"
    if not _is_atomic(s):
        s = f"({s})"
    return f"{s}*{name}"


def _is_atomic(s: str) -> bool:
    body = s[1:] if s.startswith("-") else s
    return not any(ch in body for ch in "+- /") or (s.startswith("(") and s.endswith(")"))


def _join_terms(parts) -> str:
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def mul(x: Element, y: Element) -> Element:
    """Bilinear extension of the multiplication table."""
    x._check(y)
    alg = x.algebra
    zero = alg.zero
    out = [zero] * alg.dim
    sparse = alg.sparse
    for i, xi in enumerate(x.coeffs):
        if not xi:
            continue
        row = sparse[i]
        for j, yj in enumerate(y.coeffs):
            if not yj:
                continue
            p = xi * yj
            for k, c, s in row[j]:
                if s == 1:
                    out[k] = out[k] + p
                elif s == -1:
                    out[k] = out[k] - p
                else:
                    out[k] = out[k] + p * c
    return Element._raw(alg, out)


def check_algebra(spec: AlgebraSpec) -> dict:
    """Exhaustive associativity and unit-law check over basis triples/pairs."""
    n = spec.dim
    e = [spec.basis_element(i) for i in range(n)]
    failures = []
    associative = True
    for i, j, k in itertools.product(range(n), repeat=3):
        if (e[i] * e[j]) * e[k] != e[i] * (e[j] * e[k]):
            associative = False
            failures.append(("associativity", (spec.basis[i], spec.basis[j], spec.basis[k])))
            break
    unital = True
    u = spec.unit
    for i in range(n):
        if u * e[i] != e[i] or e[i] * u != e[i]:
            unital = False
            failures.append(("unit", spec.basis[i]))
            break
    return {"associative": associative, "unital": unital, "failures": failures}


def left_mult_matrix(x: Element):
    """Matrix ``M`` with ``M[k][j]`` = coefficient of ``e_k`` in ``x e_j``."""
    alg = x.algebra
    n = alg.dim
    M = [[alg.zero] * n for _ in range(n)]
    for i, xi in enumerate(x.coeffs):
        if not xi:
            continue
        for j in range(n):
            for k, c, _ in alg.sparse[i][j]:
                M[k][j] = M[k][j] + xi * c
    return M


def invert_element(x: Element) -> Element:
    """Two-sided inverse by linear solve of ``x y = 1``, checked on the left too."""
    alg = x.algebra
    try:
        y = linalg.solve(left_mult_matrix(x), list(alg.unit_coeffs), alg.zero)
    except linalg.SingularMatrix:
        raise SingularElement(f"{x} is not invertible") from None
    inv = Element._raw(alg, y)
    if inv * x != alg.unit:
        raise SingularElement(f"{x} has a right inverse that is not a left inverse")
    return inv


# --------------------------------------------------------------------------
# Tensors
# --------------------------------------------------------------------------


class Tensor:
    """Sparse element of ``A^{(x)order}``: ``coeffs[(i_0, .., i_{m-1})]``."""

    __slots__ = ("algebra", "order", "coeffs")

    def __init__(self, algebra: AlgebraSpec, order: int, coeffs=None):
        if order < 1:
            raise ValueError("tensor order must be positive")
        self.algebra = algebra
        self.order = order
        out = {}
        n = algebra.dim
        for key, c in (coeffs or {}).items():
            key = tuple(key)
            if len(key) != order or any(not 0 <= k < n for k in key):
                raise ValueError(f"bad tensor index {key}")
            c = algebra.coerce(c)
            if c:
                out[key] = c
        self.coeffs = out

    @classmethod
    def _raw(cls, algebra, order, coeffs):
        t = cls.__new__(cls)
        t.algebra = algebra
        t.order = order
        t.coeffs = {k: v for k, v in coeffs.items() if v}
        return t

    @classmethod
    def from_element(cls, x: Element) -> Tensor:
        return cls._raw(x.algebra, 1, {(k,): c for k, c in enumerate(x.coeffs)})

    @classmethod
    def from_matrix(cls, algebra, matrix) -> Tensor:
        """Order-2 tensor from ``matrix[i][j]`` = coefficient of ``e_i (x) e_j``."""
        return cls(
            algebra,
            2,
            {(i, j): c for i, row in enumerate(matrix) for j, c in enumerate(row)},
        )

    @classmethod
    def unit(cls, algebra, order=2) -> Tensor:
        return tensor_product([algebra.unit] * order)

    def to_element(self) -> Element:
        if self.order != 1:
            raise ValueError("only order-1 tensors convert to elements")
        alg = self.algebra
        return Element._raw(alg, [self.coeffs.get((k,), alg.zero) for k in range(alg.dim)])

    def to_matrix(self):
        if self.order != 2:
            raise ValueError("only order-2 tensors convert to matrices")
        alg = self.algebra
        n = alg.dim
        return [[self.coeffs.get((i, j), alg.zero) for j in range(n)] for i in range(n)]

    def vector(self):
        """Dense coefficients in lexicographic index order."""
        alg = self.algebra
        return [
            self.coeffs.get(key, alg.zero)
            for key in itertools.product(range(alg.dim), repeat=self.order)
        ]

    def _check(self, other):
        if other.algebra.basis != self.algebra.basis:
            raise AlgebraMismatch(f"{self.algebra.name} vs {other.algebra.name}")
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return Tensor._raw(self.algebra, self.order, out)

    def __neg__(self):
        return Tensor._raw(self.algebra, self.order, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> Tensor:
        c = self.algebra.coerce(c)
        return Tensor._raw(self.algebra, self.order, {k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, Tensor):
            return mul_tensor(self, other)
        if isinstance(other, Element):
            return NotImplemented
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        if other.order != self.order or other.algebra.basis != self.algebra.basis:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def support(self) -> set:
        return set(self.coeffs)

    def specialize(self, assignment, algebra=None) -> Tensor:
        alg = algebra if algebra is not None else self.algebra.specialize(assignment)
        return Tensor._raw(alg, self.order, {k: _eval(c, assignment) for k, c in self.coeffs.items()})

    def to_str(self, order=None) -> str:
        names = self.algebra.basis
        parts = []
        for key in sorted(self.coeffs):
            label = " (x) ".join(names[k] for k in key)
            s = _coef_str(self.coeffs[key], order)
            if s == "1":
                parts.append(label)
            elif s == "-1":
                parts.append(f"-{label}")
            else:
                parts.append(f"({s})*{label}" if not _is_atomic(s) else f"{s}*{label}")
        return _join_terms(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Tensor(order={self.order}, {self.to_str()})"


def _as_tensor(x) -> Tensor:
    if isinstance(x, Tensor):
        return x
    if isinstance(x, Element):
        return Tensor.from_element(x)
    raise TypeError(f"expected Tensor or Element, got {type(x).__name__}")


def tensor_product(items) -> Tensor:
    """Outer product of Tensors/Elements; orders add, coefficients multiply."""
    items = [_as_tensor(x) for x in items]
    if not items:
        raise ValueError("empty tensor product")
    alg = items[0].algebra
    acc = {(): alg.one}
    order = 0
    for t in items:
        if t.algebra.basis != alg.basis:
            raise AlgebraMismatch(f"{alg.name} vs {t.algebra.name}")
        nxt = {}
        for k1, c1 in acc.items():
            for k2, c2 in t.coeffs.items():
                nxt[k1 + k2] = c1 * c2
        acc = nxt
        order += t.order
    return Tensor._raw(alg, order, acc)


def mul_tensor(P: Tensor, Q: Tensor) -> Tensor:
    """Slotwise product in ``A^{(x)m}``."""
    P._check(Q)
    alg = P.algebra
    sparse = alg.sparse
    out = {}
    for kp, cp in P.coeffs.items():
        for kq, cq in Q.coeffs.items():
            c0 = cp * cq
            slots = [sparse[a][b] for a, b in zip(kp, kq)]
            if any(not s for s in slots):
                continue
            for combo in itertools.product(*slots):
                c = c0
                for _, ck, sg in combo:
                    if sg == 1:
                        continue
                    c = -c if sg == -1 else c * ck
                key = tuple(k for k, _, _ in combo)
                out[key] = out[key] + c if key in out else c
    return Tensor._raw(alg, P.order, out)


def tensor_left_mult_matrix(Q: Tensor):
    """Matrix of ``Q' -> Q Q'`` on ``A (x) A`` with pair index ``(a, b) -> a*n + b``."""
    if Q.order != 2:
        raise ValueError("expected an order-2 tensor")
    alg = Q.algebra
    n = alg.dim
    N = n * n
    M = [[alg.zero] * N for _ in range(N)]
    for (a, b), q in Q.coeffs.items():
        for c in range(n):
            for k, ck, _ in alg.sparse[a][c]:
                qk = q * ck
                for d in range(n):
                    for l, cl, _ in alg.sparse[b][d]:
                        row = k * n + l
                        col = c * n + d
                        M[row][col] = M[row][col] + qk * cl
    return M


def invert_tensor(Q: Tensor) -> Tensor:
    """Two-sided inverse in ``A (x) A`` by an exact ``n^2 x n^2`` solve."""
    if Q.order != 2:
        raise ValueError("invert_tensor expects an order-2 tensor")
    alg = Q.algebra
    n = alg.dim
    one2 = Tensor.unit(alg, 2)
    rhs = one2.vector()
    try:
        y = linalg.solve(tensor_left_mult_matrix(Q), rhs, alg.zero)
    except linalg.SingularMatrix:
        raise SingularTensor("tensor is not invertible") from None
    inv = Tensor._raw(alg, 2, {(k // n, k % n): v for k, v in enumerate(y)})
    if inv * Q != one2:
        raise SingularTensor("right inverse is not a left inverse")
    return inv


def _check_perm(sigma, m):
    if sorted(sigma) != list(range(m)):
        raise ValueError(f"{sigma!r} is not a permutation of range({m})")


def permute(Q: Tensor, sigma) -> Tensor:
    """Move the leg in slot ``i`` to slot ``sigma[i]``."""
    sigma = tuple(sigma)
    _check_perm(sigma, Q.order)
    out = {}
    for key, c in Q.coeffs.items():
        new = [0] * Q.order
        for i, k in enumerate(key):
            new[sigma[i]] = k
        out[tuple(new)] = c
    return Tensor._raw(Q.algebra, Q.order, out)


def embed(Q: Tensor, slots, m: int) -> Tensor:
    """Place the legs of an order-2 tensor in ``slots = (i, j)`` of ``A^{(x)m}``."""
    i, j = slots
    if Q.order != 2:
        raise ValueError("embed expects an order-2 tensor")
    if not (0 <= i < m and 0 <= j < m) or i == j:
        raise ValueError(f"bad slots {slots} for order {m}")
    full = tensor_product([Q] + [Q.algebra.unit] * (m - 2))
    rest = [s for s in range(m) if s not in (i, j)]
    return permute(full, [i, j] + rest)


def contract(T: Tensor, words) -> Tensor:
    """Multiply legs of ``T`` together according to ``words``.

    Each word is a sequence of leg positions (ints) and fixed Elements; the
    result has one slot per word holding the product of the word's items in
    order.  Every leg must appear exactly once across all words.
    """
    alg = T.algebra
    words = [tuple(w) for w in words]
    legs = sorted(x for w in words for x in w if isinstance(x, int))
    if legs != list(range(T.order)):
        raise ValueError("each leg must be used exactly once")
    # Per word: consecutive runs of legs between fixed elements.
    plans = []
    for w in words:
        plan = []
        run = []
        for x in w:
            if isinstance(x, int):
                run.append(x)
            else:
                if x.algebra.basis != alg.basis:
                    raise AlgebraMismatch("fixed element from another algebra")
                plan.append(("legs", tuple(run)))
                plan.append(("elem", x))
                run = []
        plan.append(("legs", tuple(run)))
        plans.append(plan)
    caches = [{} for _ in words]
    out = {}
    for key, c in T.coeffs.items():
        factors = []
        for plan, cache in zip(plans, caches):
            idx = tuple(key[l] for kind, leg in plan if kind == "legs" for l in leg)
            val = cache.get(idx)
            if val is None:
                val = cache[idx] = _word_value(alg, plan, key)
            if not val:
                factors = None
                break
            factors.append(val)
        if factors is None:
            continue
        for combo in itertools.product(*factors):
            v = c
            for _, ck in combo:
                v = v * ck
            k = tuple(k for k, _ in combo)
            out[k] = out[k] + v if k in out else v
    return Tensor._raw(alg, len(words), out)


def _word_value(alg, plan, key):
    """Sparse product of one word for the given leg indices."""
    acc = None
    for kind, item in plan:
        if kind == "legs":
            part = alg.word_product(tuple(key[l] for l in item))
        else:
            part = tuple((k, c) for k, c in enumerate(item.coeffs) if c)
        if acc is None:
            acc = part
            continue
        nxt = {}
        for k1, c1 in acc:
            for k2, c2 in part:
                p = c1 * c2
                for k, ck, s in alg.sparse[k1][k2]:
                    v = p if s == 1 else (-p if s == -1 else p * ck)
                    nxt[k] = nxt[k] + v if k in nxt else v
        acc = tuple((k, v) for k, v in sorted(nxt.items()) if v)
    return acc


def contract_element(T: Tensor, word) -> Element:
    """Single-word :func:`contract`, returned as an Element."""
    return contract(T, [word]).to_element()


# --------------------------------------------------------------------------
# system determinants
# --------------------------------------------------------------------------


def system_determinant(x):
    """Determinant of the linear system ``x y = 1`` (Element) or ``Q Q' = 1(x)1`` (order-2 Tensor).

    Unknowns and equations are both ordered by basis index (pairs
    lexicographically).
    """
    alg = x.algebra
    if isinstance(x, Element):
        M = left_mult_matrix(x)
    elif isinstance(x, Tensor) and x.order == 2:
        M = tensor_left_mult_matrix(x)
    else:
        raise ValueError("expected an Element or an order-2 Tensor")
    return linalg.determinant(M, alg.zero, alg.one)


# --------------------------------------------------------------------------
# constructions of commutative algebras
# --------------------------------------------------------------------------


def truncated_polynomial_algebra(m: int, var: str = "x", numeric: bool = False) -> AlgebraSpec:
    """``Q(i)[x] / (x^m)`` with basis ``1, x, .., x^(m-1)``."""
    if m < 1:
        raise ValueError("need m >= 1")
    names = ["1"] + [var if k == 1 else f"{var}^{k}" for k in range(1, m)]
    mul = [[[1 if (i + j == k) else 0 for k in range(m)] for j in range(m)] for i in range(m)]
    return AlgebraSpec(f"Q(i)[{var}]/({var}^{m})", names, [1] + [0] * (m - 1), mul, numeric=numeric)


def direct_product(specs, name: str | None = None) -> AlgebraSpec:
    """Block-diagonal product ``A_1 x .. x A_r``."""
    specs = list(specs)
    offsets = []
    n = 0
    for s in specs:
        offsets.append(n)
        n += s.dim
    unit = [0] * n
    mul = [[[0] * n for _ in range(n)] for _ in range(n)]
    basis = []
    for b, (s, off) in enumerate(zip(specs, offsets)):
        basis += [f"{e}_{b + 1}" for e in s.basis]
        for i, c in enumerate(s.unit_coeffs):
            unit[off + i] = c
        for i in range(s.dim):
            for j in range(s.dim):
                for k, c in enumerate(s.table[i][j]):
                    mul[off + i][off + j][off + k] = c
    numeric = all(s.numeric for s in specs)
    return AlgebraSpec(name or " x ".join(s.name for s in specs), basis, unit, mul, numeric=numeric)


def change_basis(spec: AlgebraSpec, P, name: str | None = None) -> AlgebraSpec:
    """Same algebra in the basis ``f_j = sum_i P[i][j] e_i`` (``P`` invertible)."""
    n = spec.dim
    zero, one = spec.zero, spec.one
    Pinv_cols = [
        linalg.solve([[spec.coerce(P[i][j]) for j in range(n)] for i in range(n)], [one if r == k else zero for r in range(n)], zero)
        for k in range(n)
    ]
    # Pinv[j][k] = coordinate j of e_k in the f-basis
    Pinv = [[Pinv_cols[k][j] for k in range(n)] for j in range(n)]
    f = [Element(spec, [spec.coerce(P[i][j]) for i in range(n)]) for j in range(n)]

    def coords(x: Element):
        return [sum((Pinv[j][k] * x.coeffs[k] for k in range(n)), zero) for j in range(n)]

    mul = [[coords(f[a] * f[b]) for b in range(n)] for a in range(n)]
    unit = coords(spec.unit)
    return AlgebraSpec(name or spec.name, [f"f{j + 1}" for j in range(n)], unit, mul, spec.params, spec.numeric)


# --------------------------------------------------------------------------
# JSON
# --------------------------------------------------------------------------


def algebra_from_json(data: dict) -> AlgebraSpec:
    """``{"name", "dim", "basis", "unit": [expr], "mul": n x n x [expr], "params"}``."""
    from .expr import parse_scalar

    for key in ("basis", "unit", "mul"):
        if key not in data:
            raise ValueError(f"algebra JSON lacks {key!r}")
    params = data.get("params", [])
    basis = data["basis"]
    if "dim" in data and data["dim"] != len(basis):
        raise ValueError("dim does not match the basis length")
    p = lambda e: parse_scalar(e, params)  # noqa: E731
    unit = [p(e) for e in data["unit"]]
    mul = [[[p(e) for e in vec] for vec in row] for row in data["mul"]]
    return AlgebraSpec(data.get("name", "A"), basis, unit, mul, params)


def algebra_to_json(spec: AlgebraSpec) -> dict:
    s = lambda c: as_scalar(c).to_str()  # noqa: E731
    return {
        "name": spec.name,
        "dim": spec.dim,
        "basis": list(spec.basis),
        "unit": [s(c) for c in spec.unit_coeffs],
        "mul": [[[s(c) for c in vec] for vec in row] for row in spec.table],
        "params": list(spec.params),
    }
