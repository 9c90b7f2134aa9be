"""Combinatorics on words and the partial algebra of affix pairs.

Words here are plain strings over the binary alphabet ``0 < 1`` (the
comparison helpers also accept any sequences of mutually comparable
elements).  The lexicographic order ``u < v`` holds when u and v first
differ at a position where u has the smaller letter, or when u is a proper
prefix of v.

Around a fixed primitive word, the *period*, live the affix pairs: a proper
suffix of the period together with a proper prefix of it.  Each pair stands
for the language  lead . period* . trail  (plus one short residue word when
lead and trail together overflow a full period).  These languages cover
exactly the factors of powers of the period, and pairs compose partially:
the composite of two pairs exists when the trailing and leading affixes mend
to a whole period or vanish, and then the pair languages concatenate into a
single pair language again.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache


class Order(Enum):
    """Outcome of a lexicographic comparison."""

    LESS_STRICT = "less-strict"
    LESS_PREFIX = "less-prefix"
    EQUAL = "equal"
    GREATER_PREFIX = "greater-prefix"
    GREATER_STRICT = "greater-strict"


def lex_compare(u, v) -> Order:
    """Compare two words; prefixes come before their extensions."""
    for a, b in zip(u, v):
        if a < b:
            return Order.LESS_STRICT
        if a > b:
            return Order.GREATER_STRICT
    if len(u) < len(v):
        return Order.LESS_PREFIX
    if len(u) > len(v):
        return Order.GREATER_PREFIX
    return Order.EQUAL


def lex_less(u, v) -> bool:
    return lex_compare(u, v) in (Order.LESS_STRICT, Order.LESS_PREFIX)


def prefix_incomparable(u, v) -> bool:
    """Neither word is a prefix of the other."""
    return lex_compare(u, v) in (Order.LESS_STRICT, Order.GREATER_STRICT)


def primitive_root(w: str) -> str:
    """The shortest word whose repetition yields ``w``."""
    if not w:
        raise ValueError("the empty word has no primitive root")
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return w[:d]
    raise AssertionError("unreachable")


def is_primitive(w: str) -> bool:
    return primitive_root(w) == w


def is_conjugate(u: str, v: str) -> bool:
    """True when one word is a rotation of the other."""
    if len(u) != len(v):
        return False
    return v in u + u


def conjugates(w: str) -> list[str]:
    """All rotations of ``w`` in rotation order, starting at ``w`` itself."""
    return [w[i:] + w[:i] for i in range(len(w))]


class NotPeriodicFactorError(ValueError):
    """A word is not a factor of any power of the period."""


class Undefined:
    """Absorbing value of the partial pair composition."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNDEFINED"


UNDEFINED = Undefined()


@dataclass(frozen=True)
class AffixPair:
    """A proper suffix and a proper prefix of the period.

    Stands for the language  lead . period* . trail, together with the
    residue word left of lead+trail after removing one full period when the
    two affixes overflow it.
    """

    lead: str
    trail: str
    period: str

    def __post_init__(self):
        n = len(self.period)
        if not is_primitive(self.period):
            raise ValueError(f"period {self.period!r} is not primitive")
        if len(self.lead) >= n or not self.period.endswith(self.lead):
            raise ValueError(f"{self.lead!r} is not a proper suffix of the period")
        if len(self.trail) >= n or not self.period.startswith(self.trail):
            raise ValueError(f"{self.trail!r} is not a proper prefix of the period")

    def __repr__(self) -> str:
        return f"({self.lead!r}, {self.trail!r})@{self.period!r}"

    @property
    def residue(self) -> str | None:
        """The extra short member, present when |lead|+|trail| >= |period|."""
        combined = self.lead + self.trail
        if len(combined) < len(self.period):
            return None
        return combined[len(self.period):]


def affix_pairs(u0: str) -> tuple[AffixPair, ...]:
    """All affix pairs of a primitive period, in a fixed order."""
    if not is_primitive(u0):
        raise ValueError(f"period {u0!r} is not primitive")
    n = len(u0)
    leads = [u0[n - i:] for i in range(n)]
    trails = [u0[:i] for i in range(n)]
    return tuple(
        AffixPair(lead, trail, u0) for lead in leads for trail in trails
    )


def pair_language_member(w: str, p: AffixPair) -> bool:
    """Membership of ``w`` in the language of the pair."""
    if w == p.residue:
        return True
    n = len(p.period)
    middle_len = len(w) - len(p.lead) - len(p.trail)
    if middle_len < 0 or middle_len % n:
        return False
    if not (w.startswith(p.lead) and w.endswith(p.trail)):
        return False
    middle = w[len(p.lead):len(w) - len(p.trail)]
    return middle == p.period * (middle_len // n)


def is_periodic_factor(w: str, u0: str) -> bool:
    """True when ``w`` occurs inside some power of ``u0``."""
    if not w:
        return True
    reps = -(-len(w) // len(u0)) + 1
    return w in u0 * reps


def containing_pairs(w: str, u0: str) -> tuple[AffixPair, ...]:
    """All affix pairs whose language contains ``w``."""
    return _algebra(u0).pairs_containing(w)


def pair_of_word(w: str, u0: str) -> AffixPair:
    """The unique pair containing a word at least one period long.

    Raises :class:`NotPeriodicFactorError` when no pair contains the word,
    which certifies that the word escapes every periodic pattern of ``u0``.
    """
    if len(w) < len(u0):
        raise ValueError("pair_of_word needs |w| >= |period|")
    found = containing_pairs(w, u0)
    if not found:
        raise NotPeriodicFactorError(
            f"{w!r} is not a factor of any power of {u0!r}"
        )
    assert len(found) == 1, f"pair of {w!r} over {u0!r} is not unique"
    return found[0]


class _PairAlgebra:
    """Per-period caches used by the composition operation."""

    def __init__(self, u0: str):
        self.u0 = u0
        self.pairs = affix_pairs(u0)
        self._containing: dict[str, tuple[AffixPair, ...]] = {}

    def pairs_containing(self, w: str) -> tuple[AffixPair, ...]:
        cached = self._containing.get(w)
        if cached is None:
            cached = tuple(
                p for p in self.pairs if pair_language_member(w, p)
            )
            self._containing[w] = cached
        return cached


@lru_cache(maxsize=256)
def _algebra(u0: str) -> _PairAlgebra:
    return _PairAlgebra(u0)


def _seam_mends(trail: str, lead: str, u0: str) -> bool:
    seam = trail + lead
    return seam == "" or seam == u0


def otimes(a, b, u0: str):
    """Partial composition of chain values over the period ``u0``.

    Chain values are plain words, affix pairs of the period, or UNDEFINED.
    Two words concatenate.  Two pairs compose when the seam between them
    mends to a whole period or vanishes.  A word against a pair is promoted
    to the unique qualifying pair containing it, when there is one.
    UNDEFINED absorbs everything.
    """
    if a is UNDEFINED or b is UNDEFINED:
        return UNDEFINED
    if isinstance(a, str) and isinstance(b, str):
        return a + b

    if isinstance(a, AffixPair) and a.period != u0:
        raise ValueError(f"pair {a!r} does not belong to period {u0!r}")
    if isinstance(b, AffixPair) and b.period != u0:
        raise ValueError(f"pair {b!r} does not belong to period {u0!r}")

    if isinstance(a, AffixPair) and isinstance(b, AffixPair):
        if _seam_mends(a.trail, b.lead, u0):
            return AffixPair(a.lead, b.trail, u0)
        return UNDEFINED
    if isinstance(a, AffixPair):
        for q in _algebra(u0).pairs_containing(b):
            if _seam_mends(a.trail, q.lead, u0):
                return AffixPair(a.lead, q.trail, u0)
        return UNDEFINED
    for q in _algebra(u0).pairs_containing(a):
        if _seam_mends(q.trail, b.lead, u0):
            return AffixPair(q.lead, b.trail, u0)
    return UNDEFINED


def chain_eval(items, u0: str):
    """Left fold of :func:`otimes` over ``items``; empty chains give ``''``."""
    value = ""
    for item in items:
        value = otimes(value, item, u0)
        if value is UNDEFINED:
            return UNDEFINED
    return value
