"""Evaluation of the universal invariant of a bead word against an XC-structure.

The value is the sum, over a choice of basis-index pair for every crossing, of
the product of the chosen ``R^{+-1}`` coefficients times the algebra product of
the beads.  The product is formed right to left: scanning in traversal order,
each bead multiplies the running value from the left.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import AlgebraMismatch, Element
from .diagram import AlphaLeg, BeadWord, RotDiagram, builtin, parse_diagram, stats, to_bead_word, to_diagram
from .xc import XCStructure, derived_elements, sample_assignments

__all__ = [
    "MissingInverse",
    "evaluate",
    "expected",
    "check_triviality",
    "TrivialityReport",
    "as_bead_word",
    "EXPANSION_LIMIT",
]

# crossings up to which the automatic strategy uses full expansion
EXPANSION_LIMIT = 5


class MissingInverse(ValueError):
    pass


def as_bead_word(D) -> BeadWord:
    """Accept a BeadWord, a RotDiagram, a built-in name or a token string."""
    if isinstance(D, BeadWord):
        return D
    if isinstance(D, RotDiagram):
        return to_bead_word(D)
    if isinstance(D, str):
        try:
            return to_bead_word(builtin(D))
        except ValueError:
            return to_bead_word(parse_diagram(D))
    raise TypeError(f"cannot interpret {type(D).__name__} as a bead word")


def _crossing_tensors(X: XCStructure, W: BeadWord):
    out = {}
    for cid, sign in W.signs.items():
        T = X.R if sign > 0 else X.Rinv
        if T is None:
            raise MissingInverse("R^-1 is required for negative crossings")
        out[cid] = T
    return out


def _kappa(X: XCStructure, exp: int) -> Element:
    k = X.kappa if exp > 0 else X.kappaInv
    if k is None:
        raise MissingInverse("kappa^-1 is required for C+ rotations")
    return k


def _left_mul_basis(alg, k, vec, zero):
    """``e_k * vec`` for a sparse vector ``{index: coeff}``."""
    out = {}
    row = alg.sparse[k]
    for j, c in vec.items():
        for m, cm, s in row[j]:
            v = c if s == 1 else (-c if s == -1 else c * cm)
            out[m] = out[m] + v if m in out else v
    return {m: v for m, v in out.items() if v}


def _left_mul_elem(alg, x: Element, vec):
    out = {}
    for i, ci in enumerate(x.coeffs):
        if not ci:
            continue
        for m, v in _left_mul_basis(alg, i, vec, None).items():
            v = ci * v
            out[m] = out[m] + v if m in out else v
    return {m: v for m, v in out.items() if v}


def _unit_vec(alg):
    return {i: c for i, c in enumerate(alg.unit.coeffs) if c}


def _to_element(alg, vec) -> Element:
    zero = alg.zero
    return Element(alg, [vec.get(i, zero) for i in range(alg.dim)])


def _evaluate_expand(X, W):
    alg = X.algebra
    tensors = _crossing_tensors(X, W)
    cids = list(W.signs)
    supports = [sorted(tensors[c].coeffs.items()) for c in cids]
    pos = {c: i for i, c in enumerate(cids)}
    total = {}
    for choice in itertools.product(*supports):
        coef = None
        for _, c in choice:
            coef = c if coef is None else coef * c
        vec = _unit_vec(alg)
        for bead in W.beads:
            if isinstance(bead, AlphaLeg):
                idx = choice[pos[bead.copy]][0][bead.leg - 1]
                vec = _left_mul_basis(alg, idx, vec, None)
            else:
                vec = _left_mul_elem(alg, _kappa(X, bead.exp), vec)
            if not vec:
                break
        if not vec:
            continue
        for m, v in vec.items():
            v = v if coef is None else coef * v
            total[m] = total[m] + v if m in total else v
    return _to_element(alg, {m: v for m, v in total.items() if v})


def _evaluate_dp(X, W):
    """Frontier DP: states keyed by the pending leg index of every open crossing."""
    alg = X.algebra
    tensors = _crossing_tensors(X, W)
    # state: tuple of (crossing id, pending basis index), sorted -> sparse vector
    states = {(): _unit_vec(alg)}
    for bead in W.beads:
        nxt = {}

        def push(key, vec):
            if not vec:
                return
            cur = nxt.get(key)
            if cur is None:
                nxt[key] = vec
                return
            for m, v in vec.items():
                cur[m] = cur[m] + v if m in cur else v
            for m in [m for m, v in cur.items() if not v]:
                del cur[m]

        if isinstance(bead, AlphaLeg):
            cid = bead.copy
            for key, vec in states.items():
                pending = dict(key)
                if cid in pending:
                    idx = pending.pop(cid)
                    push(tuple(sorted(pending.items())), _left_mul_basis(alg, idx, vec, None))
                    continue
                other = 2 - bead.leg  # 0-based position of the remaining leg
                by_first = {}
                for ab, c in tensors[cid].coeffs.items():
                    by_first.setdefault(ab[bead.leg - 1], []).append((ab[other], c))
                for first, rest in sorted(by_first.items()):
                    moved = _left_mul_basis(alg, first, vec, None)
                    if not moved:
                        continue
                    for second, c in rest:
                        new = dict(pending)
                        new[cid] = second
                        push(tuple(sorted(new.items())), {m: c * v for m, v in moved.items()})
        else:
            k = _kappa(X, bead.exp)
            for key, vec in states.items():
                push(key, _left_mul_elem(alg, k, vec))
        states = nxt
    return _to_element(alg, states.get((), {}))


def evaluate(X: XCStructure, W, strategy: str = "auto") -> Element:
    """The universal invariant of ``W`` (bead word, diagram, built-in name or tokens).

    ``strategy`` is ``"expand"``, ``"dp"`` or ``"auto"``; with ``auto``, numeric
    structures with at most :data:`EXPANSION_LIMIT` crossings use full
    expansion and everything else uses the frontier DP.
    """
    W = as_bead_word(W)
    if strategy == "auto":
        small = len(W.signs) <= EXPANSION_LIMIT
        strategy = "expand" if small and (X.numeric or not X.params) else "dp"
    if strategy == "expand":
        return _evaluate_expand(X, W)
    if strategy == "dp":
        return _evaluate_dp(X, W)
    raise ValueError(f"unknown strategy {strategy!r}; expected auto, expand or dp")


def expected(X: XCStructure, framing: int) -> Element:
    """``nu ** framing``; negative powers go through the inverse of nu."""
    nu = derived_elements(X).nu
    return nu**framing


def _framing(W: BeadWord) -> int:
    return sum(1 if s > 0 else -1 for s in W.signs.values())


@dataclass
class TrivialityReport:
    passed: bool
    mode: str
    framing: int
    value: Element | None = None
    expected: Element | None = None
    samples: int = 0
    failures: list = field(default_factory=list)

    def as_dict(self) -> dict:
        out = {
            "passed": self.passed,
            "mode": self.mode,
            "framing": self.framing,
            "samples": self.samples,
            "failures": self.failures,
        }
        if self.value is not None:
            out["value"] = [str(c) for c in self.value.coeffs]
            out["expected"] = [str(c) for c in self.expected.coeffs]
        return out


def check_triviality(
    X: XCStructure, D, samples: int | None = None, seed: int = 0, strategy: str = "auto"
) -> TrivialityReport:
    """Compare ``evaluate(X, D)`` with ``nu ** framing(D)``.

    Symbolic when ``samples`` is None (or ``X`` has no parameters), otherwise
    at ``samples`` random admissible parameter points.
    """
    W = as_bead_word(D)
    fr = _framing(W)
    if X.algebra.basis != X.R.algebra.basis:
        raise AlgebraMismatch("structure and R live in different algebras")
    if samples is None or not X.params or X.numeric:
        value = evaluate(X, W, strategy)
        target = expected(X, fr)
        return TrivialityReport(value == target, "symbolic", fr, value, target)
    failures = []
    for idx, (point, Xs) in enumerate(sample_assignments(X, samples, seed)):
        value = evaluate(Xs, W, strategy)
        target = expected(Xs, fr)
        if value != target:
            failures.append(
                {
                    "sample": idx,
                    "point": {k: str(v) for k, v in point.items()},
                    "value": [str(c) for c in value.coeffs],
                    "expected": [str(c) for c in target.coeffs],
                }
            )
    return TrivialityReport(not failures, "sampled", fr, samples=samples, failures=failures)


def diagram_framing(D) -> int:
    """Framing (writhe) of a diagram-like input."""
    W = as_bead_word(D)
    return stats(to_diagram(W)).framing
