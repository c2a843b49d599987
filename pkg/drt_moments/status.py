"""Process exit codes returned by the command-line front end."""

from enum import IntEnum


class ExitCode(IntEnum):
    """Exit codes of the ``drt-moments`` command."""

    OK = 0
    # parse errors, compute errors, unwritable destinations
    FAILURE = 1
    # bad flags or flag values
    USAGE = 2
