"""Structured errors shared across modules, with CLI exit codes."""


class QWSError(Exception):
    exit_code = 1


class ShapeError(QWSError):
    """Input matrix or series violates a required structural shape."""

    exit_code = 2


class WindowError(QWSError):
    """A result cannot be certified on the requested mode window."""

    exit_code = 3


class ExcludedTypeError(QWSError):
    """Root-system type outside the supported family (E6 in particular)."""

    exit_code = 4


class DegenerateLatticeError(QWSError):
    """Lattice length makes a required operator singular."""

    exit_code = 5
