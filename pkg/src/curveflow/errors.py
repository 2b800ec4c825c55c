"""Exception hierarchy.

Three failure families matter to callers.  Malformed *input* (an
unreadable file, bad JSON, a rational that is not "p/q") maps to exit
code 1 at the command line.  A *contract* violation — data that parses
fine but breaks a documented precondition or invariant, such as an
inadmissible surface, a self-crossing curve, or a certificate whose
witnesses do not check out — maps to exit code 2 together with the
module's error text.  Internal invariant failures are bugs and are
reported separately (exit code 70).
"""


class CurveflowError(Exception):
    """Base class for all errors raised by this package."""


class InputError(CurveflowError):
    """The input data is malformed and could not be interpreted."""


class ContractError(CurveflowError):
    """Well-formed input violates a documented contract or invariant."""


class GeometryError(CurveflowError):
    """An internal geometric invariant failed; indicates a bug."""
