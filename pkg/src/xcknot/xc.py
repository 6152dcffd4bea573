"""XC-structures: container, axiom checks, derived elements and the defining system.

With ``R = sum_i a_i (x) b_i`` (legs 0 and 1 of an order-2 tensor) and
``R^-1 = sum_i ab_i (x) bb_i``, the axioms checked are::

    XC0    R^{+-1} = (k (x) k) R^{+-1} (k^-1 (x) k^-1)
    XC1f   sum b_i k a_i = sum a_i k^-1 b_i
    XC2c   1 (x) k^-1   = sum_{i,j} a_i ab_j (x) bb_j k^-1 b_i
    XC2d   k (x) 1      = sum_{i,j} ab_i k a_j (x) b_j bb_i
    XC3    R12 R13 R23 = R23 R13 R12

plus invertibility of ``R`` and ``k``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .algebra import (
    AlgebraSpec,
    Element,
    SingularElement,
    SingularTensor,
    Tensor,
    contract,
    contract_element,
    embed,
    invert_element,
    invert_tensor,
    permute,
    tensor_product,
)
from .scalar import GaussianRational, Polynomial, Scalar, SingularSample, as_scalar

__all__ = [
    "AXIOMS",
    "ConstraintViolation",
    "UnsatisfiableSampling",
    "XCStructure",
    "DerivedElements",
    "AxiomReport",
    "sample_assignments",
    "verify_axiom",
    "verify_all",
    "axiom_holds",
    "derived_elements",
    "is_triangular",
    "check_commutators",
    "check_theta_xi_identities",
    "mu",
    "check_permutation_property",
    "sign_pattern",
    "admissible_pairs",
    "XCSystem",
    "xc_equations",
    "generic_structure",
    "structure_point",
    "structure_from_json",
    "structure_to_json",
]

AXIOMS = ("invR", "invKappa", "XC0", "XC1f", "XC2c", "XC2d", "XC3")


class ConstraintViolation(ValueError):
    pass


class UnsatisfiableSampling(RuntimeError):
    pass


class XCStructure:
    """An algebra with ``R``, ``R^-1``, ``kappa``, ``kappa^-1`` and parameter data.

    Missing inverses are computed by linear solving; when that fails the
    inverse is left as ``None`` and the corresponding axiom reports it.
    """

    def __init__(
        self,
        algebra: AlgebraSpec,
        R: Tensor,
        kappa: Element,
        Rinv: Tensor | None = None,
        kappaInv: Element | None = None,
        params=(),
        constraints=(),
        name: str = "",
    ):
        if R.order != 2:
            raise ValueError("R must be an order-2 tensor")
        self.algebra = algebra
        self.R = R
        self.kappa = kappa
        self.params = tuple(params)
        self.constraints = tuple(constraints)
        self.name = name
        self.computed = []
        self.errors = {}
        if Rinv is None:
            try:
                Rinv = invert_tensor(R)
                self.computed.append("Rinv")
            except SingularTensor as exc:
                self.errors["invR"] = str(exc)
        if kappaInv is None:
            try:
                kappaInv = invert_element(kappa)
                self.computed.append("kappaInv")
            except SingularElement as exc:
                self.errors["invKappa"] = str(exc)
        self.Rinv = Rinv
        self.kappaInv = kappaInv

    @property
    def numeric(self) -> bool:
        return self.algebra.numeric

    def check_constraints(self):
        for c in self.constraints:
            if isinstance(c, Scalar) and c.is_zero():
                raise ConstraintViolation(f"constraint {c} != 0 fails identically")

    def specialize(self, assignment) -> XCStructure:
        """Numeric copy at a parameter assignment (raises SingularSample)."""
        for c in self.constraints:
            if not c.eval_at(assignment):
                raise SingularSample(f"constraint {c} vanishes")
        alg = self.algebra.specialize(assignment)
        X = XCStructure.__new__(XCStructure)
        X.algebra = alg
        X.R = self.R.specialize(assignment, alg)
        X.kappa = self.kappa.specialize(assignment, alg)
        X.Rinv = None if self.Rinv is None else self.Rinv.specialize(assignment, alg)
        X.kappaInv = None if self.kappaInv is None else self.kappaInv.specialize(assignment, alg)
        X.params = ()
        X.constraints = ()
        X.name = self.name
        X.computed = list(self.computed)
        X.errors = dict(self.errors)
        return X

    def substitute(self, values: dict) -> XCStructure:
        """Symbolic structure with some parameters replaced by Scalars/numbers."""
        sub = lambda c: c.substitute(values)  # noqa: E731
        alg = self.algebra
        constraints = tuple(sub(c) for c in self.constraints)
        for c in constraints:
            if c.is_zero():
                raise ConstraintViolation(f"constraint vanishes after substitution {values}")
        return XCStructure(
            alg,
            Tensor(alg, 2, {k: sub(c) for k, c in self.R.coeffs.items()}),
            self.kappa.map(sub),
            None if self.Rinv is None else Tensor(alg, 2, {k: sub(c) for k, c in self.Rinv.coeffs.items()}),
            None if self.kappaInv is None else self.kappaInv.map(sub),
            params=[p for p in self.params if p not in values],
            constraints=constraints,
            name=self.name,
        )

    def __repr__(self):
        return f"XCStructure({self.name or self.algebra.name!r}, params={self.params})"


@dataclass
class DerivedElements:
    nu: Element
    theta: Element
    xi: Element
    u: Element
    xi_bar: Element | None = None


def derived_elements(X: XCStructure) -> DerivedElements:
    """nu = sum b k a, theta = sum a b, xi = sum b a, u = sum ab bb (plus sum bb ab)."""
    R, k = X.R, X.kappa
    nu = contract_element(R, [1, k, 0])
    theta = contract_element(R, [0, 1])
    xi = contract_element(R, [1, 0])
    if X.Rinv is not None:
        u = contract_element(X.Rinv, [0, 1])
        xi_bar = contract_element(X.Rinv, [1, 0])
    else:
        u = xi_bar = None
    return DerivedElements(nu, theta, xi, u, xi_bar)


# --------------------------------------------------------------------------
# axioms
# --------------------------------------------------------------------------


def _inv_r(X):
    if X.Rinv is None:
        return False, X.errors.get("invR", "R^-1 missing")
    one = Tensor.unit(X.algebra, 2)
    if X.R * X.Rinv != one:
        return False, "R R^-1 != 1(x)1"
    if X.Rinv * X.R != one:
        return False, "R^-1 R != 1(x)1"
    return True, ""


def _inv_kappa(X):
    if X.kappaInv is None:
        return False, X.errors.get("invKappa", "kappa^-1 missing")
    one = X.algebra.unit
    if X.kappa * X.kappaInv != one or X.kappaInv * X.kappa != one:
        return False, "kappa kappa^-1 != 1"
    return True, ""


def _needs(X, *names):
    missing = [n for n in names if getattr(X, n) is None]
    if missing:
        return False, "missing inverse: " + ", ".join(missing)
    return None


def _xc0(X):
    bad = _needs(X, "Rinv", "kappaInv")
    if bad:
        return bad
    kk = tensor_product([X.kappa, X.kappa])
    kki = tensor_product([X.kappaInv, X.kappaInv])
    for label, T in (("R", X.R), ("R^-1", X.Rinv)):
        if kk * T * kki != T:
            return False, f"(k(x)k) {label} (k^-1(x)k^-1) != {label}"
    return True, ""


def _xc1f(X):
    bad = _needs(X, "kappaInv")
    if bad:
        return bad
    lhs = contract_element(X.R, [1, X.kappa, 0])
    rhs = contract_element(X.R, [0, X.kappaInv, 1])
    return (lhs == rhs), "" if lhs == rhs else "sum b k a != sum a k^-1 b"


def _xc2c(X):
    bad = _needs(X, "Rinv", "kappaInv")
    if bad:
        return bad
    # legs: 0 = a_i, 1 = b_i, 2 = ab_j, 3 = bb_j
    T = tensor_product([X.R, X.Rinv])
    rhs = contract(T, [[0, 2], [3, X.kappaInv, 1]])
    lhs = tensor_product([X.algebra.unit, X.kappaInv])
    ok = lhs == rhs
    return ok, "" if ok else "1 (x) k^-1 mismatch"


def _xc2d(X):
    bad = _needs(X, "Rinv")
    if bad:
        return bad
    # legs: 0 = ab_i, 1 = bb_i, 2 = a_j, 3 = b_j
    T = tensor_product([X.Rinv, X.R])
    rhs = contract(T, [[0, X.kappa, 2], [3, 1]])
    lhs = tensor_product([X.kappa, X.algebra.unit])
    ok = lhs == rhs
    return ok, "" if ok else "k (x) 1 mismatch"


def _xc3(X):
    R12 = embed(X.R, (0, 1), 3)
    R13 = embed(X.R, (0, 2), 3)
    R23 = embed(X.R, (1, 2), 3)
    ok = R12 * R13 * R23 == R23 * R13 * R12
    return ok, "" if ok else "Yang-Baxter equation fails"


_CHECKS = {
    "invR": _inv_r,
    "invKappa": _inv_kappa,
    "XC0": _xc0,
    "XC1f": _xc1f,
    "XC2c": _xc2c,
    "XC2d": _xc2d,
    "XC3": _xc3,
}


def axiom_holds(X: XCStructure, axiom: str) -> bool:
    return _CHECKS[axiom](X)[0]


@dataclass
class AxiomReport:
    axiom: str
    passed: bool
    mode: str
    samples: int = 0
    failures: list = field(default_factory=list)

    def as_dict(self):
        return {
            "axiom": self.axiom,
            "passed": self.passed,
            "mode": self.mode,
            "samples": self.samples,
            "failures": self.failures,
        }


def _random_gaussian(rng: random.Random, bound=100) -> GaussianRational:
    re_ = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    im_ = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    return GaussianRational(re_, im_)


def sample_assignments(X: XCStructure, count: int, seed: int = 0, max_tries: int = 1000):
    """Yield ``(assignment, specialized_structure)`` at random admissible points."""
    rng = random.Random(seed)
    produced = 0
    tries = 0
    while produced < count:
        if tries >= max_tries:
            raise UnsatisfiableSampling(
                f"no admissible sample after {max_tries} attempts ({produced} found)"
            )
        tries += 1
        point = {p: _random_gaussian(rng) for p in X.params}
        try:
            Xs = X.specialize(point)
        except SingularSample:
            continue
        produced += 1
        yield point, Xs


def verify_axiom(X: XCStructure, axiom: str, samples: int | None = None, seed: int = 0):
    """Check one axiom symbolically (``samples=None``) or at random sample points."""
    if axiom not in _CHECKS:
        raise ValueError(f"unknown axiom {axiom!r}; expected one of {AXIOMS}")
    check = _CHECKS[axiom]
    if samples is None or not X.params or X.numeric:
        ok, detail = check(X)
        return AxiomReport(axiom, ok, "symbolic", 0, [] if ok else [detail])
    failures = []
    for idx, (point, Xs) in enumerate(sample_assignments(X, samples, seed)):
        ok, detail = check(Xs)
        if not ok:
            failures.append({"sample": idx, "point": {k: str(v) for k, v in point.items()}, "detail": detail})
    return AxiomReport(axiom, not failures, "sampled", samples, failures)


def verify_all(X: XCStructure, axioms=AXIOMS, samples=None, seed=0):
    return [verify_axiom(X, a, samples, seed) for a in axioms]


# --------------------------------------------------------------------------
# structural checks
# --------------------------------------------------------------------------


def is_triangular(X: XCStructure) -> bool:
    return X.Rinv is not None and X.Rinv == permute(X.R, (1, 0))


def check_commutators(X: XCStructure) -> dict:
    """The eight commutators [R^{+-1}, k^{+-1} (x) 1] and [R^{+-1}, 1 (x) k^{+-1}] mod J(x)J."""
    from .sweedler import radical_projection

    one = X.algebra.unit
    out = {}
    for rname, T in (("R", X.R), ("R^-1", X.Rinv)):
        for kname, k in (("k", X.kappa), ("k^-1", X.kappaInv)):
            for side, K in (
                (f"{kname}(x)1", tensor_product([k, one])),
                (f"1(x){kname}", tensor_product([one, k])),
            ):
                c = T * K - K * T
                out[f"[{rname}, {side}]"] = radical_projection(c, "mod-JJ").is_zero()
    return out


def check_theta_xi_identities(X: XCStructure) -> dict:
    d = derived_elements(X)
    k = X.kappa
    one = X.algebra.unit
    return {
        "theta = k^2 xi": d.theta == k * k * d.xi,
        "nu = k xi": d.nu == k * d.xi,
        "theta xi = xi theta": d.theta * d.xi == d.xi * d.theta,
        "theta * sum(ab bb) = 1": d.theta * d.u == one,
        "xi * sum(bb ab) = 1": d.xi * d.xi_bar == one,
    }


def mu(T: Tensor, sigma) -> Element:
    """Permute legs by ``sigma`` then multiply all slots in order."""
    P = permute(T, sigma)
    return contract_element(P, list(range(T.order)))


def sign_pattern(sigma) -> tuple:
    """Signs of ``sigma(2i+1) - sigma(2i)`` for each leg pair."""
    return tuple(1 if sigma[2 * i + 1] > sigma[2 * i] else -1 for i in range(len(sigma) // 2))


def admissible_pairs(n: int):
    """All ``(sigma, tau)`` in S_2n with equal sign patterns, ``sigma != tau``."""
    groups = {}
    for p in permutations(range(2 * n)):
        groups.setdefault(sign_pattern(p), []).append(p)
    out = []
    for perms in groups.values():
        for a in range(len(perms)):
            for b in range(a + 1, len(perms)):
                out.append((perms[a], perms[b]))
    return out


def _power_tensor(X, n, r):
    parts = [X.R] * r + [X.Rinv] * (n - r)
    return tensor_product(parts)


def check_permutation_property(
    X: XCStructure, n: int, r: int, sigma, tau, samples: int | None = None, seed: int = 0
) -> dict:
    """mu_sigma(R^{(x)r} (x) (R^-1)^{(x)(n-r)}) == mu_tau(...) for equal sign patterns."""
    sigma, tau = tuple(sigma), tuple(tau)
    if sorted(sigma) != list(range(2 * n)) or sorted(tau) != list(range(2 * n)):
        raise ValueError("sigma and tau must be permutations of range(2n)")
    if not 0 <= r <= n:
        raise ValueError("need 0 <= r <= n")
    if sign_pattern(sigma) != sign_pattern(tau):
        raise ValueError(f"sign patterns differ: {sign_pattern(sigma)} vs {sign_pattern(tau)}")
    if samples is None or not X.params or X.numeric:
        T = _power_tensor(X, n, r)
        ok = mu(T, sigma) == mu(T, tau)
        return {"passed": ok, "mode": "symbolic", "failures": [] if ok else [0]}
    failures = []
    for idx, (_, Xs) in enumerate(sample_assignments(X, samples, seed)):
        T = _power_tensor(Xs, n, r)
        if mu(T, sigma) != mu(T, tau):
            failures.append(idx)
    return {"passed": not failures, "mode": "sampled", "failures": failures}


# --------------------------------------------------------------------------
# the defining system
# --------------------------------------------------------------------------


@dataclass
class XCSystem:
    unknowns: list
    equations: list  # (label, Polynomial)

    @property
    def polynomials(self):
        return [p for _, p in self.equations]


def _unknown_names(n):
    idx = range(1, n + 1)
    R = [[f"r_{a}_{b}" for b in idx] for a in idx]
    Rb = [[f"rb_{a}_{b}" for b in idx] for a in idx]
    k = [f"k_{a}" for a in idx]
    kb = [f"kb_{a}" for a in idx]
    return R, Rb, k, kb


def generic_structure(algebra: AlgebraSpec):
    """Structure whose coordinates are fresh unknowns (no inverses computed)."""
    n = algebra.dim
    Rn, Rbn, kn, kbn = _unknown_names(n)
    var = Scalar.var
    R = Tensor(algebra, 2, {(a, b): var(Rn[a][b]) for a in range(n) for b in range(n)})
    Rb = Tensor(algebra, 2, {(a, b): var(Rbn[a][b]) for a in range(n) for b in range(n)})
    k = Element(algebra, [var(x) for x in kn])
    kb = Element(algebra, [var(x) for x in kbn])
    X = XCStructure.__new__(XCStructure)
    X.algebra, X.R, X.Rinv, X.kappa, X.kappaInv = algebra, R, Rb, k, kb
    X.params = tuple(x for row in Rn for x in row) + tuple(x for row in Rbn for x in row) + tuple(kn) + tuple(kbn)
    X.constraints = ()
    X.name = f"generic({algebra.name})"
    X.computed, X.errors = [], {}
    return X


def xc_equations(algebra: AlgebraSpec) -> XCSystem:
    """Polynomial equations (= 0) in ``2n^2 + 2n`` unknowns defining XC-structures."""
    X = generic_structure(algebra)
    alg = algebra
    names = alg.basis
    one2 = Tensor.unit(alg, 2)
    eqs = []

    def emit_tensor(label, T):
        for key in sorted(T.coeffs):
            c = T.coeffs[key]
            eqs.append((f"{label}[{','.join(names[k] for k in key)}]", _poly(c)))

    def emit_element(label, x):
        for k, c in enumerate(x.coeffs):
            if c:
                eqs.append((f"{label}[{names[k]}]", _poly(c)))

    emit_tensor("R*Rinv-1", X.R * X.Rinv - one2)
    emit_tensor("Rinv*R-1", X.Rinv * X.R - one2)
    emit_element("k*kinv-1", X.kappa * X.kappaInv - alg.unit)
    emit_element("kinv*k-1", X.kappaInv * X.kappa - alg.unit)
    kk = tensor_product([X.kappa, X.kappa])
    kki = tensor_product([X.kappaInv, X.kappaInv])
    emit_tensor("XC0+", kk * X.R * kki - X.R)
    emit_tensor("XC0-", kk * X.Rinv * kki - X.Rinv)
    emit_element(
        "XC1f",
        contract_element(X.R, [1, X.kappa, 0]) - contract_element(X.R, [0, X.kappaInv, 1]),
    )
    T = tensor_product([X.R, X.Rinv])
    emit_tensor("XC2c", contract(T, [[0, 2], [3, X.kappaInv, 1]]) - tensor_product([alg.unit, X.kappaInv]))
    T = tensor_product([X.Rinv, X.R])
    emit_tensor("XC2d", contract(T, [[0, X.kappa, 2], [3, 1]]) - tensor_product([X.kappa, alg.unit]))
    R12 = embed(X.R, (0, 1), 3)
    R13 = embed(X.R, (0, 2), 3)
    R23 = embed(X.R, (1, 2), 3)
    emit_tensor("XC3", R12 * R13 * R23 - R23 * R13 * R12)
    return XCSystem(list(X.params), eqs)


def _poly(c) -> Polynomial:
    if isinstance(c, Scalar):
        if c.den:
            raise ValueError("unexpected denominator in the XC system")
        return c.num
    return Polynomial.constant(c)


def structure_point(X: XCStructure) -> dict:
    """Assignment of the system unknowns to the coordinates of ``X``."""
    n = X.algebra.dim
    Rn, Rbn, kn, kbn = _unknown_names(n)
    zero = X.algebra.zero
    point = {}
    for a in range(n):
        for b in range(n):
            point[Rn[a][b]] = X.R.coeffs.get((a, b), zero)
            point[Rbn[a][b]] = X.Rinv.coeffs.get((a, b), zero)
    for a in range(n):
        point[kn[a]] = X.kappa.coeffs[a]
        point[kbn[a]] = X.kappaInv.coeffs[a]
    return point


# --------------------------------------------------------------------------
# JSON
# --------------------------------------------------------------------------


def _resolve_algebra(ref):
    from .algebra import algebra_from_json
    from .sweedler import SW

    if isinstance(ref, dict):
        return algebra_from_json(ref)
    if isinstance(ref, str) and ref.lower() == "sw":
        return SW
    raise ValueError(f"unknown algebra {ref!r}; use 'sw' or an inline algebra object")


def structure_from_json(data: dict) -> XCStructure:
    """``{"algebra", "params", "constraints", "R": n x n, "kappa": n, "Rinv"?, "kappaInv"?}``."""
    from .expr import parse_scalar

    for key in ("algebra", "R", "kappa"):
        if key not in data:
            raise ValueError(f"structure JSON lacks {key!r}")
    alg = _resolve_algebra(data["algebra"])
    params = list(data.get("params", []))
    names = set(params) | set(alg.params)
    p = lambda e: parse_scalar(e, names)  # noqa: E731
    n = alg.dim

    def matrix(rows, label):
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"{label} must be a {n}x{n} array")
        return Tensor(alg, 2, {(a, b): p(rows[a][b]) for a in range(n) for b in range(n)})

    def vector(vals, label):
        if len(vals) != n:
            raise ValueError(f"{label} must have {n} entries")
        return Element(alg, [p(v) for v in vals])

    R = matrix(data["R"], "R")
    kappa = vector(data["kappa"], "kappa")
    Rinv = matrix(data["Rinv"], "Rinv") if data.get("Rinv") is not None else None
    kinv = vector(data["kappaInv"], "kappaInv") if data.get("kappaInv") is not None else None
    constraints = [p(c) for c in data.get("constraints", [])]
    X = XCStructure(alg, R, kappa, Rinv, kinv, params, constraints, data.get("name", ""))
    X.check_constraints()
    return X


def structure_to_json(X: XCStructure) -> dict:
    from .algebra import algebra_to_json
    from .sweedler import SW

    n = X.algebra.dim
    s = lambda c: as_scalar(c).to_str()  # noqa: E731

    def matrix(T):
        if T is None:
            return None
        z = X.algebra.zero
        return [[s(T.coeffs.get((a, b), z)) for b in range(n)] for a in range(n)]

    def vector(x):
        return None if x is None else [s(c) for c in x.coeffs]

    return {
        "name": X.name,
        "algebra": "sw" if X.algebra is SW else algebra_to_json(X.algebra),
        "params": list(X.params),
        "constraints": [s(c) for c in X.constraints],
        "R": matrix(X.R),
        "kappa": vector(X.kappa),
        "Rinv": matrix(X.Rinv),
        "kappaInv": vector(X.kappaInv),
    }
