"""Exception hierarchy shared by every module."""

from __future__ import annotations


class GrowthError(Exception):
    """Base class for all errors raised by growsched."""


class GraphError(GrowthError, ValueError):
    """Invalid graph construction (self-loop, endpoint out of range, ...)."""


class FormatError(GrowthError, ValueError):
    """Malformed text input.

    ``where`` names the line number or the JSON path of the offending item.
    """

    def __init__(self, message: str, where: str | None = None):
        self.where = where
        self.message = message
        super().__init__(f"{where}: {message}" if where else message)


class ScheduleError(GrowthError):
    """A schedule broke one of the growth rules while being simulated.

    ``code`` is one of the class-level constants below, ``slot`` the 1-based
    slot index (0 for problems with the schedule header) and ``item`` the
    offending generation tuple or edge.
    """

    ILLEGAL_ACTIVATION = "ILLEGAL_ACTIVATION"
    DUPLICATE_PARENT = "DUPLICATE_PARENT"
    DUPLICATE_CHILD = "DUPLICATE_CHILD"
    UNKNOWN_PARENT = "UNKNOWN_PARENT"
    MISSING_PARENT_EDGE = "MISSING_PARENT_EDGE"
    DISCONNECTING_DELETION = "DISCONNECTING_DELETION"
    UNKNOWN_EDGE_DELETION = "UNKNOWN_EDGE_DELETION"
    TARGET_MISMATCH = "TARGET_MISMATCH"

    def __init__(self, code: str, slot: int, item=None, detail: str = ""):
        self.code = code
        self.slot = slot
        self.item = item
        msg = f"{code} in slot {slot}"
        if item is not None:
            msg += f": {item!r}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class TargetMismatch(ScheduleError):
    """The simulated final instance differs from the requested target."""

    def __init__(self, slot: int, missing, unexpected, detail: str = ""):
        self.missing = sorted(missing)
        self.unexpected = sorted(unexpected)
        super().__init__(
            ScheduleError.TARGET_MISMATCH,
            slot,
            None,
            detail or f"missing {self.missing[:10]}, unexpected {self.unexpected[:10]}",
        )

    @property
    def symmetric_difference(self):
        return sorted(self.missing + self.unexpected)


class UnsupportedSize(GrowthError, ValueError):
    """Algorithm only defined for some input sizes (e.g. powers of two)."""


class CapExceeded(GrowthError, ValueError):
    """Exhaustive search requested beyond its configured size cap."""
