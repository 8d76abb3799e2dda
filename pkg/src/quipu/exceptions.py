"""
Custom Quipu exception classes

Every exception raised on purpose inside Quipu derives from
:class:`QuipuException` and carries the process exit code the command line
front end reports for it.
"""
# Standard Library Imports
import logging

logger = logging.getLogger("quipu")

#: Exit codes used by the command line front end
EXIT_CHECK_FAILURE = 1
EXIT_PARSE_ERROR = 2
EXIT_NUMERIC_ERROR = 3


class QuipuException(Exception):
    """Base class for all Exceptions raised within Quipu"""

    exit_code = EXIT_PARSE_ERROR

    def __init__(self, messages, **kwargs):
        logger.debug(f"Exception:: {messages}")
        self.messages = messages
        super().__init__(**kwargs)

    def __str__(self):
        return f"{self.__class__.__name__}: {self.messages}"


class ConfigurationError(QuipuException):
    """Improper Configuration encountered like:
        * A configuration variable holds a value of the wrong type
        * A settings file named in the environment cannot be loaded
    """


class ValidationError(QuipuException):
    """Raised when validation fails on a value. Validators should raise this
    exception.

    :param messages: An error message or a list of error messages or a
    dictionary of error message where key is field name and value is error
    """


class InvalidDataError(QuipuException):
    """Data (type, value) is invalid"""


class ParseError(InvalidDataError):
    """Text input (edge list, k-vector) could not be parsed"""


class NotATreeError(InvalidDataError):
    """Input graph is disconnected or contains a cycle"""


class NotSupportedError(QuipuException):
    """Object does not support the operation being performed"""


class TooLargeError(QuipuException):
    """Input exceeds a configured cap (tree enumeration, determinant oracle)"""


class EmptyFamilyError(QuipuException):
    """No family member realizes the requested order"""


class NumericalError(QuipuException):
    """Base for failures of the numerical machinery"""

    exit_code = EXIT_NUMERIC_ERROR


class DomainError(NumericalError):
    """λ lies outside the domain λ > 2 of the transfer calculus"""


class ContextMismatchError(NumericalError):
    """Two (p, q) pairs evaluated at different λ were combined"""


class ToleranceUnreachableError(NumericalError):
    """Requested tolerance is finer than the working precision can resolve"""


class NoSignChangeError(NumericalError):
    """A root bracket failed to enclose a sign change"""


class CheckFailure(QuipuException):
    """One or more numerical certificate checks did not pass"""

    exit_code = EXIT_CHECK_FAILURE
