"""Exceptions raised by e7_forge.

Every error derives from :class:`E7ForgeError` and from the builtin it refines,
so callers can catch either the library-wide base or the usual builtin.
"""


class E7ForgeError(Exception):
    """Base class for all e7_forge failures."""


class ExactFieldOverflow(E7ForgeError, ArithmeticError):
    """A value left the field Q(i, sqrt2, sqrt3)."""


class DimensionMismatch(E7ForgeError, ValueError):
    """A constructed span or kernel has the wrong dimension."""


class NotClosed(E7ForgeError, RuntimeError):
    """A commutator does not lie in the span of the generator set."""

    def __init__(self, message, residual=None, pair=None):
        super().__init__(message)
        self.residual = residual
        self.pair = pair


class NotSubalgebra(E7ForgeError, ValueError):
    """The requested compact subset is not closed under the bracket."""


class PeriodMismatch(E7ForgeError, RuntimeError):
    """A one-parameter subgroup does not have the expected period."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class StructureMismatch(E7ForgeError, RuntimeError):
    """Two realizations disagree on their structure constants."""

    def __init__(self, message, worst=None, residual=None):
        super().__init__(message)
        self.worst = worst
        self.residual = residual


class OutOfRange(E7ForgeError, ValueError):
    """Coordinates violate the range polytope of a chart."""


class NotUnitary(E7ForgeError, ValueError):
    """A matrix expected in SU(n) is not unitary or has det != 1."""


class NotCommuting(E7ForgeError, ValueError):
    """Cartan generators do not commute."""


class NotDiagonalizable(E7ForgeError, RuntimeError):
    """Simultaneous diagonalization left off-diagonal mass."""


class WrongType(E7ForgeError, RuntimeError):
    """A root system has the wrong Dynkin type."""

    def __init__(self, message, cartan=None):
        super().__init__(message)
        self.cartan = cartan


class NotRepresentable(E7ForgeError, ArithmeticError):
    """A symbolic quantity cannot be expressed in the requested form."""


class NotTraceless(E7ForgeError, ValueError):
    """A Jordan matrix expected in the traceless part has nonzero trace."""


class FormatError(E7ForgeError, ValueError):
    """An E7MAT stream is malformed."""
