"""Exceptions and validity reports shared by every module.

Validators never raise on a failed axiom; they return a :class:`Report`
whose violations carry an element-level witness.  Exceptions are reserved
for requests that cannot be carried out at all (composing maps whose
boundaries differ, inverting a non-bijection, ...).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class DeltaLensError(Exception):
    """Base class for all errors raised by this package."""


class StructureError(DeltaLensError, ValueError):
    """Data does not even have the shape required (e.g. a partial map)."""


class CarrierMismatch(DeltaLensError, ValueError):
    """Two maps or functors do not meet at a common boundary."""

    def __init__(self, what: str, left: Any, right: Any):
        self.left = left
        self.right = right
        super().__init__(f"{what}: {_carrier_name(left)} != {_carrier_name(right)}")


class WitnessedError(DeltaLensError, ValueError):
    """An error that points at a specific offending element."""

    def __init__(self, message: str, witness: Any = None):
        self.witness = witness
        super().__init__(message if witness is None else f"{message} (witness: {witness!r})")


class ConeError(WitnessedError):
    """A cone over a cospan does not commute, so no mediating map exists."""


class NotBijective(WitnessedError):
    """An inverse was requested for a map that is not a bijection."""


class CycleError(WitnessedError):
    """A graph that must be acyclic contains a directed cycle."""


class NotDiscreteOpfibration(WitnessedError):
    pass


class NotIsoOnObjects(WitnessedError):
    pass


class TriangleError(WitnessedError):
    """A triangle of functors that should commute does not."""


class LawViolation(WitnessedError):
    """A named algebraic law fails; ``law`` records which one."""

    def __init__(self, law: str, witness: Any = None):
        self.law = law
        super().__init__(f"{law} law fails", witness)


class NotSplitOpfibration(WitnessedError):
    """The lens has no comparison structure; ``axiom`` names what failed."""

    def __init__(self, axiom: str, witness: Any = None):
        self.axiom = axiom
        super().__init__(f"not a split opfibration: {axiom}", witness)


class InvalidInput(WitnessedError):
    """An operation's precondition (a validity report) does not hold."""

    def __init__(self, message: str, report: "Report | None" = None):
        self.report = report
        witness = None
        if report is not None and report.first() is not None:
            witness = report.first().witness
        super().__init__(message, witness)


class ConfigError(DeltaLensError, ValueError):
    """Generator bounds that cannot be satisfied."""


def _carrier_name(x: Any) -> str:
    name = getattr(x, "name", "")
    if name:
        return name
    return repr(x)


@dataclass(frozen=True)
class Violation:
    """One failed diagram check together with the element that breaks it."""

    check: str
    witness: Any
    detail: str = ""

    def __str__(self) -> str:
        text = f"{self.check}: witness {self.witness!r}"
        return f"{text} ({self.detail})" if self.detail else text


@dataclass
class Report:
    subject: str
    violations: list[Violation] = field(default_factory=list)
    nested: dict[str, "Report"] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations and all(r.ok for r in self.nested.values())

    def __bool__(self) -> bool:
        return self.ok

    def add(self, check: str, witness: Any, detail: str = "") -> None:
        self.violations.append(Violation(check, witness, detail))

    def checks_failed(self) -> list[str]:
        """Names of failed checks, nested ones prefixed by their key."""
        names = [v.check for v in self.violations]
        for key, sub in self.nested.items():
            names.extend(f"{key}/{n}" for n in sub.checks_failed())
        return names

    def first(self) -> Violation | None:
        for sub in self.nested.values():
            v = sub.first()
            if v is not None:
                return v
        return self.violations[0] if self.violations else None

    def find(self, check: str) -> list[Violation]:
        found = [v for v in self.violations if v.check == check]
        for sub in self.nested.values():
            found.extend(sub.find(check))
        return found

    def lines(self, indent: str = "") -> list[str]:
        out = [f"{indent}{self.subject}: {'valid' if self.ok else 'INVALID'}"]
        for v in self.violations:
            out.append(f"{indent}  - {v}")
        for key, sub in self.nested.items():
            if not sub.ok:
                out.extend(sub.lines(indent + "  "))
        return out

    def require(self, message: str | None = None) -> None:
        if not self.ok:
            raise InvalidInput(message or f"{self.subject} is not valid", self)
