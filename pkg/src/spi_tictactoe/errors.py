"""Exception types shared across the package."""


class SpiTicTacToeError(Exception):
    """Base class for all package-specific errors."""


class TerminalStateError(SpiTicTacToeError):
    """An operation that needs a live game was called on a finished one."""


class OccupiedSquareError(SpiTicTacToeError):
    """A move targeted a square that is not empty."""


class NotHumansTurnError(SpiTicTacToeError):
    """A human move was submitted when it is not the human's turn."""


class NotSpisTurnError(SpiTicTacToeError):
    """The machine player was asked to move out of turn."""


class KeyOutOfRangeError(SpiTicTacToeError, ValueError):
    """A state key lies outside [0, 19682]."""


class UnknownStateError(SpiTicTacToeError, KeyError):
    """Lookup hit a board absent from the policy table.

    Signals an unreachable or corrupted detection; the caller must abort
    the turn rather than guess a move.
    """


class CorruptTableError(SpiTicTacToeError):
    """A serialized policy table failed structural validation."""


class InvalidGeometryError(SpiTicTacToeError, ValueError):
    """Board-layout regions overlap or fall outside the image."""


class DimensionMismatchError(SpiTicTacToeError, ValueError):
    """Scene and illumination mask have different pixel dimensions."""


class EmptyMaskError(SpiTicTacToeError, ValueError):
    """An illumination mask with no lit pixels cannot be measured."""


class DetectionMismatchError(SpiTicTacToeError):
    """Optical scan classified a board different from the session board."""
