"""Exact-arithmetic vocabulary shared by every min-cut entropy model.

Conventions used throughout the package:

* Parties are the integers 1..n; the purifier is party n + 1.
* Party letters map A -> 1, B -> 2, and so on.  The purifier is the
  (n+1)-th letter; it may label an external element of a model but is
  rejected inside subsystem expressions.
* A subsystem is a nonempty frozenset of party indices drawn from [n].
* Entropy vectors carry all 2**n - 1 subsystem entropies, ordered by
  subsystem cardinality and lexicographically within each cardinality.
* Every quantity is a fractions.Fraction; floats never take part in a
  comparison.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

Subsystem = frozenset[int]
Bits = tuple[int, ...]

_TERM_RE = re.compile(r"^\s*(?:(\d+(?:\s*/\s*\d+)?)\s+|(\d+(?:\s*/\s*\d+)?)\s*\*\s*)?S\(\s*([A-Z]+)\s*\)\s*$")


class InequalityParseError(ValueError):
    """Malformed inequality text, or a party letter outside the declared range."""


def party_letter(index: int) -> str:
    """Letter for party `index` (1 -> A, 2 -> B, ...)."""
    if not 1 <= index <= 26:
        raise ValueError(f"party index {index} out of supported range 1..26")
    return string.ascii_uppercase[index - 1]


def party_index(letter: str, n: int) -> int:
    """Party index for a letter, restricted to the n genuine parties."""
    if len(letter) != 1 or letter not in string.ascii_uppercase:
        raise InequalityParseError(f"invalid party letter {letter!r}")
    idx = string.ascii_uppercase.index(letter) + 1
    if idx > n:
        raise InequalityParseError(f"party letter {letter!r} outside the {n} declared parties")
    return idx


def subsystem_from_letters(letters: str, n: int) -> Subsystem:
    """Parse a subsystem like ``"ACD"`` against the declared party count."""
    if not letters:
        raise InequalityParseError("empty subsystem")
    seen: set[int] = set()
    for ch in letters:
        idx = party_index(ch, n)
        if idx in seen:
            raise InequalityParseError(f"duplicate party letter {ch!r} in subsystem {letters!r}")
        seen.add(idx)
    return frozenset(seen)


def subsystem_label(subsystem: Subsystem) -> str:
    return "".join(party_letter(i) for i in sorted(subsystem))


def subsystem_sort_key(subsystem: Subsystem) -> tuple[int, tuple[int, ...]]:
    return (len(subsystem), tuple(sorted(subsystem)))


_SUBSYSTEM_ORDER: dict[int, tuple[Subsystem, ...]] = {}
_SUBSYSTEM_INDEX: dict[int, dict[Subsystem, int]] = {}


def all_subsystems(n: int) -> tuple[Subsystem, ...]:
    """All 2**n - 1 subsystems in canonical (cardinality, then lex) order."""
    if n < 1:
        raise ValueError("need at least one party")
    if n not in _SUBSYSTEM_ORDER:
        order = tuple(
            frozenset(combo)
            for size in range(1, n + 1)
            for combo in combinations(range(1, n + 1), size)
        )
        _SUBSYSTEM_ORDER[n] = order
        _SUBSYSTEM_INDEX[n] = {sub: i for i, sub in enumerate(order)}
    return _SUBSYSTEM_ORDER[n]


def subsystem_position(subsystem: Subsystem, n: int) -> int:
    all_subsystems(n)
    try:
        return _SUBSYSTEM_INDEX[n][frozenset(subsystem)]
    except KeyError:
        raise ValueError(f"{set(subsystem)} is not a subsystem of [{n}]") from None


@dataclass(frozen=True)
class EntropyVector:
    """All subsystem entropies of an n-party model, in canonical order."""

    n: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        expected = 2 ** self.n - 1
        if len(self.entries) != expected:
            raise ValueError(f"expected {expected} entries for n={self.n}, got {len(self.entries)}")
        entries = tuple(Fraction(e) for e in self.entries)
        if any(e < 0 for e in entries):
            raise ValueError("entropy entries must be nonnegative")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_mapping(cls, n: int, mapping: dict[Subsystem, Fraction]) -> "EntropyVector":
        return cls(n, tuple(Fraction(mapping[sub]) for sub in all_subsystems(n)))

    def value(self, subsystem: Subsystem | str) -> Fraction:
        if isinstance(subsystem, str):
            subsystem = subsystem_from_letters(subsystem, self.n)
        return self.entries[subsystem_position(subsystem, self.n)]

    def labeled(self) -> list[tuple[str, Fraction]]:
        return [(subsystem_label(sub), val) for sub, val in zip(all_subsystems(self.n), self.entries)]


@dataclass(frozen=True)
class LinearInequality:
    """Canonical-form entropy inequality: positive-coefficient terms on both sides."""

    n: int
    lhs: tuple[tuple[Subsystem, Fraction], ...]
    rhs: tuple[tuple[Subsystem, Fraction], ...]

    def __post_init__(self) -> None:
        for side_name, side in (("lhs", self.lhs), ("rhs", self.rhs)):
            if not side:
                raise ValueError(f"{side_name} must contain at least one term")
            seen: set[Subsystem] = set()
            for subsystem, coeff in side:
                if not subsystem or not subsystem <= set(range(1, self.n + 1)):
                    raise ValueError(f"bad subsystem {set(subsystem)} for n={self.n}")
                if coeff <= 0:
                    raise ValueError("coefficients must be strictly positive")
                if subsystem in seen:
                    raise ValueError(f"subsystem {subsystem_label(subsystem)} repeated on {side_name}")
                seen.add(subsystem)

    @property
    def lhs_subsystems(self) -> tuple[Subsystem, ...]:
        return tuple(sub for sub, _ in self.lhs)

    @property
    def rhs_subsystems(self) -> tuple[Subsystem, ...]:
        return tuple(sub for sub, _ in self.rhs)

    @property
    def lhs_coeffs(self) -> tuple[Fraction, ...]:
        return tuple(c for _, c in self.lhs)

    @property
    def rhs_coeffs(self) -> tuple[Fraction, ...]:
        return tuple(c for _, c in self.rhs)


def _parse_side(text: str, n: int, side_name: str) -> tuple[tuple[Subsystem, Fraction], ...]:
    pieces = text.split("+")
    if not text.strip():
        raise InequalityParseError(f"empty {side_name}")
    terms: list[tuple[Subsystem, Fraction]] = []
    index_of: dict[Subsystem, int] = {}
    for piece in pieces:
        match = _TERM_RE.match(piece)
        if match is None:
            raise InequalityParseError(f"malformed term {piece.strip()!r}")
        coeff_text = match.group(1) or match.group(2)
        coeff = Fraction(coeff_text.replace(" ", "")) if coeff_text else Fraction(1)
        if coeff <= 0:
            raise InequalityParseError(f"nonpositive coefficient in term {piece.strip()!r}")
        subsystem = subsystem_from_letters(match.group(3), n)
        if subsystem in index_of:
            # duplicate subsystems on one side are merged by summing coefficients
            pos = index_of[subsystem]
            terms[pos] = (subsystem, terms[pos][1] + coeff)
        else:
            index_of[subsystem] = len(terms)
            terms.append((subsystem, coeff))
    return tuple(terms)


def parse_inequality(text: str, n: int) -> LinearInequality:
    """Parse ``"<terms> >= <terms>"`` with terms like ``2 S(ACE)`` or ``S(AB)``."""
    if n < 1:
        raise InequalityParseError("need at least one party")
    parts = text.split(">=")
    if len(parts) != 2:
        raise InequalityParseError("expected exactly one '>=' separator")
    lhs = _parse_side(parts[0], n, "left-hand side")
    rhs = _parse_side(parts[1], n, "right-hand side")
    return LinearInequality(n, lhs, rhs)


def serialize_inequality(ineq: LinearInequality) -> str:
    def side(terms: tuple[tuple[Subsystem, Fraction], ...]) -> str:
        rendered = []
        for subsystem, coeff in terms:
            label = f"S({subsystem_label(subsystem)})"
            rendered.append(label if coeff == 1 else f"{coeff} {label}")
        return " + ".join(rendered)

    return f"{side(ineq.lhs)} >= {side(ineq.rhs)}"


def occurrence_bitstrings(ineq: LinearInequality) -> tuple[tuple[Bits, ...], tuple[Bits, ...]]:
    """Membership bitstrings of each party (and the purifier) in the LHS and RHS terms.

    Returns one (x, y) pair per i in 1..n+1, where x has length L and
    x_l = 1 iff party i occurs in the l-th LHS subsystem, and similarly
    for y over the RHS.  The purifier occurs nowhere, so its strings are
    all-zero.
    """
    xs = []
    ys = []
    for party in range(1, ineq.n + 2):
        xs.append(tuple(1 if party in sub else 0 for sub in ineq.lhs_subsystems))
        ys.append(tuple(1 if party in sub else 0 for sub in ineq.rhs_subsystems))
    return tuple(xs), tuple(ys)


def weighted_hamming_norm(vector, gamma) -> Fraction:
    """Sum of gamma_j * |vector_j|, exactly."""
    vec = tuple(vector)
    weights = tuple(Fraction(g) for g in gamma)
    if len(vec) != len(weights):
        raise ValueError(f"length mismatch: vector has {len(vec)} entries, gamma has {len(weights)}")
    return sum((g * abs(Fraction(v)) for v, g in zip(vec, weights)), Fraction(0))


def mixed_indicator(bits) -> int:
    """0 when every bit agrees (all 0s or all 1s), 1 otherwise."""
    seq = tuple(bits)
    if not seq:
        raise ValueError("need at least one bit")
    return 0 if all(b == seq[0] for b in seq) else 1


def evaluate_inequality(ineq: LinearInequality, vector: EntropyVector) -> tuple[bool, Fraction, Fraction]:
    """Exact comparison of the two sides on an entropy vector."""
    if ineq.n != vector.n:
        raise ValueError(f"party-count mismatch: inequality n={ineq.n}, vector n={vector.n}")
    lhs_value = sum((coeff * vector.value(sub) for sub, coeff in ineq.lhs), Fraction(0))
    rhs_value = sum((coeff * vector.value(sub) for sub, coeff in ineq.rhs), Fraction(0))
    return lhs_value >= rhs_value, lhs_value, rhs_value


def complement_subsystem(subsystem: Subsystem, n: int) -> frozenset[int]:
    """Complement within [n+1]; used for purification symmetry S(I) = S(I-complement)."""
    if not subsystem or not subsystem <= set(range(1, n + 1)):
        raise ValueError(f"bad subsystem {set(subsystem)} for n={n}")
    return frozenset(range(1, n + 2)) - subsystem
