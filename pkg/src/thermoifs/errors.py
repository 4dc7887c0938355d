"""Exception classes shared across the package.

Each class carries an ``exit_class`` used by the command-line front end to
pick its exit status.
"""


class ThermoIFSError(Exception):
    exit_class = "error"


class InputError(ThermoIFSError, ValueError):
    """Invalid user input: out-of-range symbols, non-admissible potentials."""

    exit_class = "input"


class NumericalError(ThermoIFSError, ArithmeticError):
    """A root bracket could not be found or a consistency check failed."""

    exit_class = "numerical"


class ResourceError(ThermoIFSError, RuntimeError):
    """A requested enumeration exceeds the configured cylinder budget."""

    exit_class = "resource"
