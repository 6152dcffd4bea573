"""The Sweedler algebra ``SW = <s, w | s^2 = 1, w^2 = 0, sw = -ws>`` and its XC-structures.

Basis order is ``1, s, w, sw`` (indices 0..3).  The radical ``J = span(w, sw)``
is the square-zero two-sided ideal used by the commutator and permutation
checks.
"""

from __future__ import annotations

from .algebra import AlgebraSpec, Element, Tensor, tensor_product
from .expr import parse_scalar
from .xc import ConstraintViolation, XCStructure

__all__ = [
    "BASIS",
    "RADICAL",
    "sweedler_spec",
    "SW",
    "generators",
    "idempotent_p",
    "standard_ribbon",
    "example_xc",
    "example4_as_printed",
    "builtin_structure",
    "BUILTIN_STRUCTURES",
    "radical_projection",
    "in_radical_square",
    "in_U",
]

BASIS = ("1", "s", "w", "sw")
RADICAL = frozenset({2, 3})

# basis index -> exponents (p, q) of s^p w^q
_NORMAL_FORM = ((0, 0), (1, 0), (0, 1), (1, 1))


def _basis_product(i, j):
    """``e_i e_j`` as ``(sign, index)`` or ``None`` when it vanishes.

    s^p1 w^q1 s^p2 w^q2 = (-1)^(q1 p2) s^(p1+p2) w^(q1+q2), using ws = -sw.
    """
    p1, q1 = _NORMAL_FORM[i]
    p2, q2 = _NORMAL_FORM[j]
    if q1 + q2 > 1:
        return None
    sign = -1 if (q1 and p2) else 1
    return sign, _NORMAL_FORM.index(((p1 + p2) % 2, q1 + q2))


def sweedler_spec() -> AlgebraSpec:
    table = []
    for i in range(4):
        row = []
        for j in range(4):
            vec = [0, 0, 0, 0]
            prod = _basis_product(i, j)
            if prod is not None:
                vec[prod[1]] = prod[0]
            row.append(vec)
        table.append(row)
    return AlgebraSpec("SW", BASIS, [1, 0, 0, 0], table)


SW = sweedler_spec()


def generators(alg: AlgebraSpec = SW):
    """``(1, s, w, sw)`` as Elements."""
    return tuple(alg.basis_element(i) for i in range(4))


def idempotent_p(alg: AlgebraSpec = SW) -> Element:
    one, s, _, _ = generators(alg)
    return (one - s) / 2


def _t(x, y) -> Tensor:
    return tensor_product([x, y])


def _v(text, params):
    return parse_scalar(text, params)


def standard_ribbon(lam="l") -> XCStructure:
    """``R = 1(x)1 - 2p(x)p + l(w(x)w + 2wp(x)wp - 2w(x)wp)``, ``kappa = s``.

    ``lam`` is a scalar expression (a parameter name by default).
    """
    lam_s = parse_scalar(lam)
    params = sorted(lam_s.variables())
    one, s, w, _ = generators()
    p = idempotent_p()
    wp = w * p
    R = _t(one, one) - 2 * _t(p, p) + lam_s * (_t(w, w) + 2 * _t(wp, wp) - 2 * _t(w, wp))
    return XCStructure(SW, R, s, params=params, name="sw:standard")


def _example1():
    P = ["l"]
    l = _v("l", P)
    one, s, w, sw = generators()
    a = one + s + w + sw
    b = s + w + sw
    R = l * _t(one, one) + _t(a, b)
    kappa = -s - w - sw
    Rinv = (
        _v("1/(4-l^2)", P) * _t(a, b)
        + _v("2/(l*(l^2-4))", P) * _t(b, one)
        + _v("(l^2-2)/(l*(l^2-4))", P) * _t(one, one)
    )
    cons = [_v("l", P), _v("l^2-4", P)]
    return XCStructure(SW, R, kappa, Rinv, kappa, P, cons, "sw:ex1")


def _example2():
    P = ["l", "m", "g"]
    l, m, g = (_v(x, P) for x in P)
    i = _v("i", P)
    one, s, w, sw = generators()
    R = (
        l * (_t(s, one) - i * _t(one, s))
        - l * g * (_t(w, one) - i * _t(one, w))
        + m * (_t(w, w) - _t(sw, sw))
        + _t(sw, w)
        - _t(w, sw)
    )
    kappa = -s + g * w
    Rinv = (1 / (2 * l * l)) * (
        l * (_t(s, one) + i * _t(one, s))
        - l * g * (_t(w, one) + i * _t(one, w))
        + m * i * (-_t(w, w) + _t(sw, sw))
        + i * (-_t(sw, w) + _t(w, sw))
    )
    return XCStructure(SW, R, kappa, Rinv, kappa, P, [l], "sw:ex2")


def _example3():
    P = [f"l{k}" for k in range(1, 7)]
    l1, l2, l3, l4, l5, l6 = (_v(x, P) for x in P)
    one, s, w, sw = generators()
    N = l2 * _t(one, w) + l3 * _t(w, w) + l4 * _t(one, sw) + l5 * _t(w, sw) + l6 * _t(sw, sw) + _t(sw, w)
    R = l1 * _t(one, one) + N
    Rinv = (1 / l1) * _t(one, one) - (1 / (l1 * l1)) * N
    return XCStructure(SW, R, one, Rinv, one, P, [l1], "sw:ex3")


def _example4(as_printed: bool = False):
    """Five-parameter family with a non-involutive ``kappa``.

    The literal transcription (``as_printed=True``) lacks the ``s(x)sw`` term in
    the l3 group and puts two coefficients on ``sw(x)w``; it fails (XC0)-(XC3).
    The default reading adds ``+l3 s(x)sw`` and moves the last fraction to
    ``sw(x)sw``, which satisfies every axiom.
    """
    P = [f"l{k}" for k in range(1, 6)]
    l1, l2, l3, l4, l5 = (_v(x, P) for x in P)
    one, s, w, sw = generators()
    l3_group = _t(w, s) - _t(s, w) - _t(sw, s)
    if not as_printed:
        l3_group = l3_group + _t(s, sw)
    last = _t(sw, w) if as_printed else _t(sw, sw)
    R = (
        l1 * _t(one, one)
        + l2 * (_t(sw, one) - _t(one, sw) + _t(one, w) - _t(w, one))
        + l3 * l3_group
        + l4 * _t(w, w)
        + l5 * _t(sw, w)
        + ((2 * l2 * l2 - 2 * l3 * l3 - l1 * l5) / l1) * _t(w, sw)
        + ((2 * l3 * l3 - 2 * l2 * l2 - l1 * l4) / l1) * last
    )
    kappa = one + (2 * l3 / l1) * (w - sw)
    # kappa^-1 = (2 c_1 - kappa) / (c_1^2 - c_2^2) with c = coordinates of kappa
    c1, c2 = kappa.coeffs[0], kappa.coeffs[1]
    kappa_inv = (2 * c1 * one - kappa) / (c1 * c1 - c2 * c2)
    name = "sw:ex4-printed" if as_printed else "sw:ex4"
    return XCStructure(SW, R, kappa, None, kappa_inv, P, [l1], name)


def example4_as_printed() -> XCStructure:
    """Example 4 transcribed literally, kept for comparison with the corrected reading."""
    return _example4(as_printed=True)


_EXAMPLES = {1: _example1, 2: _example2, 3: _example3, 4: _example4}


def example_xc(k: int, params: dict | None = None) -> XCStructure:
    """Example families 1..4; ``params`` optionally fixes some parameter values."""
    try:
        X = _EXAMPLES[k]()
    except KeyError:
        raise ValueError(f"no example {k}; expected 1..4") from None
    if params:
        unknown = set(params) - set(X.params)
        if unknown:
            raise ValueError(f"unknown parameters {sorted(unknown)} for example {k}")
        values = {p: parse_scalar(v) for p, v in params.items()}
        for c in X.constraints:
            if c.substitute(values).is_zero():
                raise ConstraintViolation(f"parameter values {params} violate {c} != 0")
        X = X.substitute(values)
    return X


BUILTIN_STRUCTURES = ("sw:standard", "sw:ex1", "sw:ex2", "sw:ex3", "sw:ex4", "sw:ex4-printed")


def builtin_structure(name: str) -> XCStructure:
    if name == "sw:standard":
        return standard_ribbon()
    if name == "sw:ex4-printed":
        return example4_as_printed()
    if name.startswith("sw:ex") and name[5:].isdigit():
        return example_xc(int(name[5:]))
    raise ValueError(f"unknown built-in structure {name!r}; expected one of {BUILTIN_STRUCTURES}")


# --------------------------------------------------------------------------
# radical quotients
# --------------------------------------------------------------------------


def in_radical_square(key) -> bool:
    """Basis tensor ``e_a (x) e_b`` lies in J (x) J."""
    return key[0] in RADICAL and key[1] in RADICAL


def in_U(key) -> bool:
    """Basis tensor lies in U = JJA + JAJ + AJJ (at least two radical legs)."""
    return sum(k in RADICAL for k in key) >= 2


def radical_projection(Q: Tensor, pattern: str) -> Tensor:
    """Drop coefficients on basis tensors in ``J(x)J`` ("mod-JJ") or ``U`` ("mod-U")."""
    if pattern == "mod-JJ":
        if Q.order != 2:
            raise ValueError("mod-JJ projection needs an order-2 tensor")
        inside = in_radical_square
    elif pattern == "mod-U":
        if Q.order != 3:
            raise ValueError("mod-U projection needs an order-3 tensor")
        inside = in_U
    else:
        raise ValueError(f"unknown pattern {pattern!r}")
    return Tensor._raw(Q.algebra, Q.order, {k: c for k, c in Q.coeffs.items() if not inside(k)})
