"""Sentence carriers and the finite-or-cofinite subset algebra.

A carrier is either finite (sentences ``0..n-1``) or countable (sentences
are the naturals).  On a countable carrier only finite and cofinite subsets
are representable; that algebra is closed under union, intersection,
difference and complement, and every atomic condition used by rule-based
structures is decidable on it.

The same class doubles as a set of model indices (anti-model structures
over countable model domains need cofinite model sets), so a ``ModelSet``
alias is exported from :mod:`amstlab.core`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


@dataclass(frozen=True)
class Carrier:
    """Sentence domain: ``size`` is ``None`` for the countable carrier."""

    size: int | None = None
    names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.size is not None:
            if self.size < 1:
                raise ValueError("finite carrier needs at least one sentence")
            if self.names is not None and len(self.names) != self.size:
                raise ValueError("name list length must match carrier size")
        elif self.names is not None:
            raise ValueError("countable carriers cannot carry a name list")

    @property
    def is_finite(self) -> bool:
        return self.size is not None

    def sentences(self) -> range:
        if self.size is None:
            raise ValueError("cannot iterate the countable carrier")
        return range(self.size)

    def universe(self) -> "SentenceSet":
        if self.size is not None:
            return SentenceSet.of(range(self.size))
        return SentenceSet.cofinite_of(())

    def admits(self, s: "SentenceSet") -> bool:
        """Whether ``s`` is a representable subset of this carrier."""
        if self.size is None:
            return True
        return not s.cofinite and all(e < self.size for e in s.elems)


FINITE = "finite"
COFINITE = "cofinite"


@dataclass(frozen=True, order=False)
class SentenceSet:
    """Canonical finite or cofinite subset of a carrier.

    ``elems`` lists the members (finite form) or the non-members (cofinite
    form), sorted and duplicate-free.  The cofinite form is only meaningful
    on countable carriers; finite-carrier code never constructs it.
    """

    elems: tuple[int, ...]
    cofinite: bool = False

    def __post_init__(self) -> None:
        elems = self.elems
        if any(e < 0 for e in elems):
            raise ValueError("negative sentence index")
        if list(elems) != sorted(set(elems)):
            object.__setattr__(self, "elems", tuple(sorted(set(elems))))

    # -- constructors ------------------------------------------------------

    @staticmethod
    def of(elements: Iterable[int]) -> "SentenceSet":
        return SentenceSet(tuple(sorted(set(elements))))

    @staticmethod
    def cofinite_of(complement_elements: Iterable[int]) -> "SentenceSet":
        return SentenceSet(tuple(sorted(set(complement_elements))), cofinite=True)

    @staticmethod
    def empty() -> "SentenceSet":
        return _EMPTY

    @staticmethod
    def singleton(e: int) -> "SentenceSet":
        return SentenceSet((e,))

    @staticmethod
    def from_mask(mask: int) -> "SentenceSet":
        out, i = [], 0
        while mask:
            if mask & 1:
                out.append(i)
            mask >>= 1
            i += 1
        return SentenceSet(tuple(out))

    # -- basic queries -----------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return not self.cofinite

    def is_empty(self) -> bool:
        return not self.cofinite and not self.elems

    def __contains__(self, e: int) -> bool:
        return (e in self.elems) != self.cofinite

    def __len__(self) -> int:
        # Length of the *representation*; use cardinality_class for meaning.
        return len(self.elems)

    def cardinality_class(self) -> tuple[str, int]:
        """``("finite", n)`` or ``("cofinite", co_n)``."""
        return (COFINITE, len(self.elems)) if self.cofinite else (FINITE, len(self.elems))

    def iter_finite(self) -> Iterator[int]:
        if self.cofinite:
            raise ValueError("cannot enumerate a cofinite set")
        return iter(self.elems)

    def is_full(self, carrier: Carrier) -> bool:
        if self.cofinite:
            return not self.elems
        return carrier.size is not None and len(self.elems) == carrier.size

    def is_proper(self, carrier: Carrier) -> bool:
        return not self.is_full(carrier)

    def mask(self) -> int:
        if self.cofinite:
            raise ValueError("cofinite sets have no bitmask form")
        m = 0
        for e in self.elems:
            m |= 1 << e
        return m

    # -- algebra (closed on the finite-or-cofinite family) ------------------

    def union(self, other: "SentenceSet") -> "SentenceSet":
        a, b = self, other
        if not a.cofinite and not b.cofinite:
            return SentenceSet.of(set(a.elems) | set(b.elems))
        if a.cofinite and b.cofinite:
            return SentenceSet.cofinite_of(set(a.elems) & set(b.elems))
        fin, cof = (a, b) if not a.cofinite else (b, a)
        return SentenceSet.cofinite_of(set(cof.elems) - set(fin.elems))

    def intersection(self, other: "SentenceSet") -> "SentenceSet":
        a, b = self, other
        if not a.cofinite and not b.cofinite:
            return SentenceSet.of(set(a.elems) & set(b.elems))
        if a.cofinite and b.cofinite:
            return SentenceSet.cofinite_of(set(a.elems) | set(b.elems))
        fin, cof = (a, b) if not a.cofinite else (b, a)
        return SentenceSet.of(set(fin.elems) - set(cof.elems))

    def difference(self, other: "SentenceSet") -> "SentenceSet":
        a, b = self, other
        if not a.cofinite and not b.cofinite:
            return SentenceSet.of(set(a.elems) - set(b.elems))
        if not a.cofinite and b.cofinite:
            return SentenceSet.of(set(a.elems) & set(b.elems))
        if a.cofinite and not b.cofinite:
            return SentenceSet.cofinite_of(set(a.elems) | set(b.elems))
        return SentenceSet.of(set(b.elems) - set(a.elems))

    def issubset(self, other: "SentenceSet") -> bool:
        a, b = self, other
        if not a.cofinite and not b.cofinite:
            return set(a.elems) <= set(b.elems)
        if not a.cofinite and b.cofinite:
            return not (set(a.elems) & set(b.elems))
        if a.cofinite and not b.cofinite:
            return False  # a cofinite set is infinite, b is finite
        return set(b.elems) <= set(a.elems)

    def complement(self, carrier: Carrier) -> "SentenceSet":
        if carrier.size is None:
            return SentenceSet(self.elems, cofinite=not self.cofinite)
        if self.cofinite:
            raise ValueError("cofinite representation on a finite carrier")
        return SentenceSet.of(set(range(carrier.size)) - set(self.elems))

    def add(self, e: int) -> "SentenceSet":
        return self.union(SentenceSet.singleton(e))

    def remove(self, e: int) -> "SentenceSet":
        return self.difference(SentenceSet.singleton(e))

    # -- ordering and display ------------------------------------------------

    def sort_key(self) -> tuple:
        """Deterministic total order: finite sets by (cardinality, elements),
        then cofinite sets, smallest first (largest complement first)."""
        if not self.cofinite:
            return (0, len(self.elems), self.elems)
        return (1, -len(self.elems), self.elems)

    def to_json(self) -> dict:
        key = "complement" if self.cofinite else "elements"
        return {key: list(self.elems)}

    def __str__(self) -> str:
        inner = "{" + ",".join(map(str, self.elems)) + "}"
        return f"N\\{inner}" if self.cofinite else inner


_EMPTY = SentenceSet(())

COUNTABLE = Carrier(None)


def subsets_of_mask(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in ascending integer order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        # next submask in ascending order
        sub = (sub - mask) & mask
