import sys
import traceback
from log_handler import logger

# =================================================================================================
# EXCEPTIONS
# =================================================================================================

class LefschetzError(Exception):
    """Base class for every error raised by the toolkit."""
    exit_code = 2

class DomainError(LefschetzError, ValueError):
    """Mathematically invalid input (zero inverse, zero form, negative degree...)."""

class StructuralError(LefschetzError, ValueError):
    """Shape mismatch: row lengths, index ranges, variable counts."""

class ConfigError(LefschetzError):
    """Invalid run configuration, pins file or points file."""

class InvariantError(LefschetzError):
    """A checked identity failed (two computation paths disagree, actual < expected...)."""

class ScenarioFailure(LefschetzError):
    """A scenario dimension mismatch that survived every re-seed."""

    def __init__(self, message: str, attempts: int = 0):
        super().__init__(message)
        self.attempts = attempts

# =================================================================================================
# GLOBAL HANDLER
# =================================================================================================

def handle_error(error: BaseException, command: str = "unknown", stream=None) -> int:
    """Report an error on stderr and return the process exit code."""
    stream = stream or sys.stderr

    if isinstance(error, DomainError):
        logger.warning(f"⚠️ DOMAIN ERROR | Command: {command} | Error: {error}")
        stream.write(f"error: {error}\n")

    elif isinstance(error, StructuralError):
        logger.warning(f"⚠️ STRUCTURAL ERROR | Command: {command} | Error: {error}")
        stream.write(f"error: malformed input: {error}\n")

    elif isinstance(error, ConfigError):
        logger.warning(f"⚠️ CONFIG ERROR | Command: {command} | Error: {error}")
        stream.write(f"error: invalid configuration: {error}\n")

    elif isinstance(error, ScenarioFailure):
        logger.error(f"❌ SCENARIO FAILURE | Command: {command} | Attempts: {error.attempts} | Error: {error}")
        stream.write(f"error: scenario failed after {error.attempts} attempt(s): {error}\n")

    elif isinstance(error, InvariantError):
        logger.error(f"❌ INVARIANT VIOLATION | Command: {command} | Error: {error}")
        stream.write(f"error: internal check failed: {error}\n")

    else:
        # Unexpected errors
        logger.error(f"❌ COMMAND ERROR | Command: {command} | Error: {error}", exc_info=error)
        traceback.print_exception(type(error), error, error.__traceback__, file=stream)

    return getattr(error, "exit_code", 2)
