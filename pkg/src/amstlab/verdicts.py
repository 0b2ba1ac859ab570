"""Verdicts for checks that may quantify over an infinite carrier.

Every checker that ranges over subsets of a countable carrier can end in one
of four ways: the property was confirmed everywhere it was tested and the
test set was provably sufficient (``VERIFIED``), a concrete refuting
instantiation was found (``REFUTED``, always with a re-checkable witness),
the search ran out at a bound without deciding (``UNKNOWN``), or the check's
hypotheses were not met so neither outcome applies (``NOT_APPLICABLE``).

Finite-carrier checks are always decided exactly and never return
``UNKNOWN``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping


class Status(Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"
    UNKNOWN = "unknown"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a bounded check.

    ``witness`` carries the refuting instantiation for REFUTED verdicts.
    ``witnesses`` carries a witness map for VERIFIED verdicts of
    exists-statements (for example, per-sentence partners for a holding
    explosion principle).  ``bound`` records the search bound that was
    exhausted for UNKNOWN verdicts.
    """

    status: Status
    witness: Any = None
    witnesses: Mapping[Any, Any] | None = field(default=None, compare=False)
    bound: int | None = None
    note: str = ""

    @property
    def is_verified(self) -> bool:
        return self.status is Status.VERIFIED

    @property
    def is_refuted(self) -> bool:
        return self.status is Status.REFUTED

    @property
    def is_unknown(self) -> bool:
        return self.status is Status.UNKNOWN

    @property
    def is_applicable(self) -> bool:
        return self.status is not Status.NOT_APPLICABLE

    def expect_decided(self, context: str = "") -> "Verdict":
        if self.status is Status.UNKNOWN:
            raise ValueError(f"undecided verdict{': ' + context if context else ''}")
        return self

    def to_json(self) -> dict:
        out: dict[str, Any] = {"status": self.status.value}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.witnesses:
            out["witnesses"] = {str(k): _jsonable(v) for k, v in self.witnesses.items()}
        if self.bound is not None:
            out["bound"] = self.bound
        if self.note:
            out["note"] = self.note
        return out

    def __str__(self) -> str:
        s = self.status.value
        if self.is_refuted and self.witness is not None:
            s += f" (witness: {self.witness})"
        if self.is_unknown and self.bound is not None:
            s += f" (at bound {self.bound})"
        if self.status is Status.NOT_APPLICABLE and self.note:
            s += f" ({self.note})"
        return s


def verified(witnesses: Mapping | None = None, note: str = "") -> Verdict:
    return Verdict(Status.VERIFIED, witnesses=witnesses, note=note)


def refuted(witness: Any, note: str = "") -> Verdict:
    return Verdict(Status.REFUTED, witness=witness, note=note)


def unknown(bound: int, note: str = "") -> Verdict:
    return Verdict(Status.UNKNOWN, bound=bound, note=note)


def not_applicable(note: str) -> Verdict:
    return Verdict(Status.NOT_APPLICABLE, note=note)


def _jsonable(value: Any) -> Any:
    to_json = getattr(value, "to_json", None)
    if callable(to_json):
        return to_json()
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)
