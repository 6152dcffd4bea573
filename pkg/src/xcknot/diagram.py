"""Rotational long-knot diagrams, their statistics and bead words.

A diagram is the sequence of events met while walking along the long knot:
``O+id`` / ``U+id`` (passing over / under a positive crossing), ``O-id`` /
``U-id`` for negative crossings, and ``C+`` / ``C-`` for full rotations.

Bead convention, fixed by the curl identities: at a positive crossing the
Over event carries the first leg of ``R`` and the Under event the second; at
a negative crossing the same holds for ``R^-1``.  ``C+`` carries ``kappa^-1``
and ``C-`` carries ``kappa``.
"""

from __future__ import annotations

import re
import warnings
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

__all__ = [
    "DiagramSyntaxError",
    "DiagramValidationError",
    "ParityWarning",
    "Over",
    "Under",
    "Rot",
    "RotDiagram",
    "DiagramStats",
    "AlphaLeg",
    "KappaPow",
    "BeadWord",
    "parse_diagram",
    "load_diagram",
    "format_diagram",
    "stats",
    "to_bead_word",
    "to_diagram",
    "builtin",
    "BUILTIN_NAMES",
    "FIGURE8_WORD",
]


class DiagramSyntaxError(ValueError):
    pass


class DiagramValidationError(ValueError):
    pass


class ParityWarning(UserWarning):
    """rot + writhe is odd: the event sequence is not a rotational diagram."""


@dataclass(frozen=True)
class Over:
    sign: int
    id: str

    def token(self) -> str:
        return f"O{'+' if self.sign > 0 else '-'}{self.id}"


@dataclass(frozen=True)
class Under:
    sign: int
    id: str

    def token(self) -> str:
        return f"U{'+' if self.sign > 0 else '-'}{self.id}"


@dataclass(frozen=True)
class Rot:
    dir: int

    def token(self) -> str:
        return "C+" if self.dir > 0 else "C-"


_TOKEN = re.compile(r"^(?:([OU])([+-])([A-Za-z0-9]+)|C([+-]))$")


def _validate(events):
    seen = {}
    for ev in events:
        if isinstance(ev, Rot):
            if ev.dir not in (1, -1):
                raise DiagramValidationError(f"rotation direction must be +-1, got {ev.dir}")
            continue
        if ev.sign not in (1, -1):
            raise DiagramValidationError(f"crossing sign must be +-1, got {ev.sign}")
        seen.setdefault(ev.id, []).append(ev)
    for cid, evs in seen.items():
        if len(evs) != 2:
            raise DiagramValidationError(f"crossing {cid!r} appears {len(evs)} time(s), expected 2")
        a, b = evs
        if a.sign != b.sign:
            raise DiagramValidationError(f"crossing {cid!r} has mismatched signs")
        if type(a) is type(b):
            kind = "Over" if isinstance(a, Over) else "Under"
            raise DiagramValidationError(f"crossing {cid!r} appears twice as {kind}")


@dataclass(frozen=True)
class RotDiagram:
    events: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        _validate(self.events)

    def crossings(self) -> list:
        """Crossing ids in order of first appearance."""
        out = []
        for ev in self.events:
            if not isinstance(ev, Rot) and ev.id not in out:
                out.append(ev.id)
        return out

    def signs(self) -> dict:
        return {ev.id: ev.sign for ev in self.events if not isinstance(ev, Rot)}

    @property
    def n_crossings(self) -> int:
        return len(self.signs())

    def stats(self) -> DiagramStats:
        return stats(self)

    def __add__(self, other: RotDiagram) -> RotDiagram:
        """Concatenation; crossing ids must be disjoint."""
        return RotDiagram(self.events + other.events)

    def __str__(self):
        return format_diagram(self)


@dataclass(frozen=True)
class DiagramStats:
    n_plus: int = 0
    n_minus: int = 0
    m_plus: int = 0
    m_minus: int = 0
    n_plus_1: int = 0
    n_plus_2: int = 0
    n_minus_1: int = 0
    n_minus_2: int = 0

    @property
    def writhe(self) -> int:
        return self.n_plus - self.n_minus

    @property
    def rot(self) -> int:
        return self.m_plus - self.m_minus

    @property
    def framing(self) -> int:
        return self.writhe

    @property
    def parity_ok(self) -> bool:
        return (self.rot + self.writhe) % 2 == 0

    def as_dict(self) -> dict:
        return {
            "n_plus": self.n_plus,
            "n_minus": self.n_minus,
            "m_plus": self.m_plus,
            "m_minus": self.m_minus,
            "n_plus_1": self.n_plus_1,
            "n_plus_2": self.n_plus_2,
            "n_minus_1": self.n_minus_1,
            "n_minus_2": self.n_minus_2,
            "writhe": self.writhe,
            "rot": self.rot,
            "framing": self.framing,
        }


def stats(D: RotDiagram) -> DiagramStats:
    """Counts of crossings and rotations.

    ``n_plus_1`` counts positive crossings met first as Under, ``n_plus_2``
    those met first as Over; likewise for the negative ones.
    """
    counts = Counter()
    first = {}
    for ev in D.events:
        if isinstance(ev, Rot):
            counts["m_plus" if ev.dir > 0 else "m_minus"] += 1
        elif ev.id not in first:
            first[ev.id] = ev
    for ev in first.values():
        side = "plus" if ev.sign > 0 else "minus"
        counts[f"n_{side}"] += 1
        counts[f"n_{side}_{1 if isinstance(ev, Under) else 2}"] += 1
    return DiagramStats(**counts)


def _warn_parity(D: RotDiagram):
    st = stats(D)
    if not st.parity_ok:
        warnings.warn(
            f"rot + writhe = {st.rot + st.writhe} is odd; not realizable as a rotational diagram",
            ParityWarning,
            stacklevel=3,
        )


def parse_diagram(text: str) -> RotDiagram:
    """Parse whitespace-separated event tokens into a validated diagram."""
    events = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if m is None:
            raise DiagramSyntaxError(f"bad diagram token {tok!r}")
        kind, sign, cid, rot = m.groups()
        if rot is not None:
            events.append(Rot(1 if rot == "+" else -1))
        else:
            cls = Over if kind == "O" else Under
            events.append(cls(1 if sign == "+" else -1, cid))
    D = RotDiagram(tuple(events))
    _warn_parity(D)
    return D


def load_diagram(path) -> RotDiagram:
    """Read a diagram file; ``#`` starts a comment and lines are concatenated."""
    text = Path(path).read_text(encoding="utf-8")
    tokens = " ".join(line.split("#", 1)[0] for line in text.splitlines())
    return parse_diagram(tokens)


def format_diagram(D: RotDiagram) -> str:
    return " ".join(ev.token() for ev in D.events)


# --------------------------------------------------------------------------
# bead words
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class AlphaLeg:
    """Leg of the copy ``copy`` of R (or of R^-1 when ``barred``); leg 1 = alpha, 2 = beta."""

    copy: str
    barred: bool
    leg: int

    def label(self) -> str:
        name = "a" if self.leg == 1 else "b"
        return f"{name}{'b' if self.barred else ''}_{self.copy}"


@dataclass(frozen=True)
class KappaPow:
    exp: int

    def label(self) -> str:
        return "k" if self.exp == 1 else "k^-1"


@dataclass(frozen=True)
class BeadWord:
    """Beads in traversal order (the first bead is the rightmost factor)."""

    beads: tuple = ()
    signs: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "beads", tuple(self.beads))
        legs = Counter()
        for b in self.beads:
            if isinstance(b, AlphaLeg):
                if b.leg not in (1, 2):
                    raise DiagramValidationError(f"leg must be 1 or 2, got {b.leg}")
                if b.copy not in self.signs:
                    raise DiagramValidationError(f"crossing {b.copy!r} has no sign")
                if b.barred != (self.signs[b.copy] < 0):
                    raise DiagramValidationError(f"crossing {b.copy!r}: bar does not match its sign")
                legs[(b.copy, b.leg)] += 1
            elif not isinstance(b, KappaPow) or b.exp not in (1, -1):
                raise DiagramValidationError(f"bad bead {b!r}")
        for cid in self.signs:
            if legs[(cid, 1)] != 1 or legs[(cid, 2)] != 1:
                raise DiagramValidationError(f"crossing {cid!r} must contribute exactly two legs")

    @classmethod
    def from_written(cls, beads, signs) -> BeadWord:
        """Build from the product as written left to right."""
        return cls(tuple(reversed(tuple(beads))), dict(signs))

    def written(self) -> tuple:
        """Beads as the product is written, left to right."""
        return tuple(reversed(self.beads))

    def __str__(self):
        return " ".join(b.label() for b in self.written())


def to_bead_word(D: RotDiagram) -> BeadWord:
    beads = []
    for ev in D.events:
        if isinstance(ev, Rot):
            beads.append(KappaPow(-ev.dir))
        else:
            beads.append(AlphaLeg(ev.id, ev.sign < 0, 1 if isinstance(ev, Over) else 2))
    return BeadWord(tuple(beads), D.signs())


def to_diagram(W: BeadWord) -> RotDiagram:
    """Inverse of :func:`to_bead_word`."""
    events = []
    for b in W.beads:
        if isinstance(b, KappaPow):
            events.append(Rot(-b.exp))
        else:
            sign = W.signs[b.copy]
            events.append((Over if b.leg == 1 else Under)(sign, b.copy))
    return RotDiagram(tuple(events))


# --------------------------------------------------------------------------
# built-ins
# --------------------------------------------------------------------------


def _a(cid, barred=False):
    return AlphaLeg(cid, barred, 1)


def _b(cid, barred=False):
    return AlphaLeg(cid, barred, 2)


# sum ab_r bb_j a_i k^-1 b_l ab_j k bb_r a_l b_i, written left to right
FIGURE8_WORD = BeadWord.from_written(
    [
        _a("r", True),
        _b("j", True),
        _a("i"),
        KappaPow(-1),
        _b("l"),
        _a("j", True),
        KappaPow(1),
        _b("r", True),
        _a("l"),
        _b("i"),
    ],
    {"i": 1, "l": 1, "j": -1, "r": -1},
)

_FIXED = {
    "unknot": "",
    "curl+R": "O+1 C- U+1",
    "curl+L": "U+1 C+ O+1",
    "curl-R": "O-1 C+ U-1",
    "curl-L": "U-1 C- O-1",
    "trefoil": "O+1 U+2 O+3 C- U+1 O+2 U+3",
}

BUILTIN_NAMES = tuple(_FIXED) + ("curls(k)", "figure8")

_CURLS = re.compile(r"^curls\((-?\d+)\)$")


def _curls(k: int) -> RotDiagram:
    if k >= 0:
        text = " ".join(f"O+{c} C- U+{c}" for c in range(1, k + 1))
    else:
        text = " ".join(f"O-{c} C+ U-{c}" for c in range(1, -k + 1))
    return parse_diagram(text)


def builtin(name: str) -> RotDiagram:
    """Built-in diagram by name (``curls(k)`` for any integer ``k``)."""
    key = name.strip().replace("−", "-").replace(" ", "")
    if key in _FIXED:
        return parse_diagram(_FIXED[key])
    if key == "figure8":
        return to_diagram(FIGURE8_WORD)
    m = _CURLS.match(key)
    if m:
        return _curls(int(m.group(1)))
    raise ValueError(f"unknown built-in diagram {name!r}; expected one of {BUILTIN_NAMES}")
