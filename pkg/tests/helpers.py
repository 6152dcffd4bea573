"""Shared generators for the test suite."""

import random
from fractions import Fraction

from xcknot.algebra import (
    Element,
    SingularElement,
    SingularTensor,
    Tensor,
    change_basis,
    direct_product,
    invert_element,
    invert_tensor,
    truncated_polynomial_algebra,
)
from xcknot.scalar import GaussianRational
from xcknot.xc import XCStructure


def rand_q(rng, bound=9):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def rand_gr(rng, bound=9):
    return GaussianRational(rand_q(rng, bound), rand_q(rng, bound))


def random_commutative_algebra(rng, max_dim=3):
    """Product of truncated polynomial algebras, dim <= max_dim, in a random basis.

    Returns ``(spec, blocks)`` where ``blocks`` lists the block sizes.
    """
    dim = rng.randint(1, max_dim)
    blocks = []
    left = dim
    while left:
        b = rng.randint(1, left)
        blocks.append(b)
        left -= b
    base = direct_product([truncated_polynomial_algebra(b, numeric=True) for b in blocks])
    while True:
        P = [[rand_gr(rng, 5) for _ in range(dim)] for _ in range(dim)]
        try:
            spec = change_basis(base, P, name=f"comm{blocks}")
            break
        except Exception:
            continue
    return spec, blocks, base, P


def block_idempotents(spec, blocks, P):
    """Coordinates (in ``spec``'s basis) of the block units of the product."""
    from xcknot import linalg

    n = spec.dim
    zero = spec.zero
    mat = [[spec.coerce(P[i][j]) for j in range(n)] for i in range(n)]
    units = []
    off = 0
    for b in blocks:
        e = [zero] * n
        e[off] = spec.one
        # coordinates y with P y = e
        units.append(Element(spec, linalg.solve(mat, e, zero)))
        off += b
    return units


def random_invertible_tensor(rng, spec):
    while True:
        coeffs = {}
        for a in range(spec.dim):
            for b in range(spec.dim):
                if rng.random() < 0.7:
                    coeffs[(a, b)] = spec.coerce(rand_gr(rng))
        R = Tensor(spec, 2, coeffs)
        try:
            return R, invert_tensor(R)
        except SingularTensor:
            continue


def random_commutative_structure(rng, kappa_mode="sqrt"):
    """Random ``(A, R, kappa)`` on a commutative algebra.

    ``kappa_mode="sqrt"`` picks ``kappa`` with ``kappa^2 = 1`` (signs on the
    blocks); ``"any"`` picks a random invertible element; ``"perturbed"``
    adds a small random element to a square root of unity.
    """
    spec, blocks, _, P = random_commutative_algebra(rng)
    R, Rinv = random_invertible_tensor(rng, spec)
    if kappa_mode in ("sqrt", "perturbed"):
        units = block_idempotents(spec, blocks, P)
        kappa = spec.zero_element()
        for u in units:
            kappa = kappa + (u if rng.random() < 0.5 else -u)
        if kappa_mode == "perturbed":
            base = kappa
            while True:
                z = Element(spec, [spec.coerce(rand_q(rng)) for _ in range(spec.dim)])
                kappa = base + z * Fraction(1, rng.randint(2, 9))
                try:
                    invert_element(kappa)
                    break
                except SingularElement:
                    continue
    else:
        while True:
            kappa = Element(spec, [spec.coerce(rand_gr(rng)) for _ in range(spec.dim)])
            try:
                invert_element(kappa)
                break
            except SingularElement:
                continue
    return XCStructure(spec, R, kappa, Rinv, None, name=f"comm{blocks}")


# filled by the acceptance suite and echoed in the terminal summary
ACCEPTANCE_LINES = []
