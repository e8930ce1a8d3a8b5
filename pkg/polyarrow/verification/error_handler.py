import logging
import sys
from typing import Any, Dict, TextIO

from ..errors import (
    CertificateError, ConfigError, DimensionCapExceededError, GeometryError, HypothesisError,
    OperatorError, ToolkitError,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


def handle_toolkit_error(
    error: ToolkitError,
    logger: logging.Logger,
    strings: Dict[str, Any],
    stream: TextIO = sys.stderr,
) -> int:
    """
    Logs the error, prints its one-line summary and returns the exit code:
    2 for configuration and input errors, 1 for failed checks and unmet hypotheses.
    """
    messages = strings.get("errors", {})
    if isinstance(error, ConfigError):
        logger.error(f"Configuration error: {error.message}")
        print(messages.get("config", "{message}").format(message=error.message), file=stream)
        return EXIT_CONFIG

    if isinstance(error, DimensionCapExceededError):
        logger.error(f"Dimension cap exceeded: {error.message}")
        print(messages.get("dimension_cap", "{message}").format(
            dim=error.dim, cap=error.cap, vertices=error.vertex_count if error.vertex_count is not None else "?",
            message=error.message,
        ), file=stream)
        return EXIT_CONFIG

    if isinstance(error, (GeometryError, OperatorError)):
        logger.error(f"Invalid input ({error.code}): {error.message}")
        print(messages.get("input", "{message}").format(code=error.code, message=error.message), file=stream)
        return EXIT_CONFIG

    if isinstance(error, CertificateError):
        failed = ", ".join(error.details.get("failed", [])) or "-"
        logger.warning(f"Certificate failed: {error.message}")
        print(messages.get("certificate", "{message}").format(message=error.message, failed=failed), file=stream)
        return EXIT_FAILED

    if isinstance(error, HypothesisError):
        logger.warning(f"Hypothesis not met: {error.message}")
        print(messages.get("hypothesis", "{message}").format(message=error.message), file=stream)
        return EXIT_FAILED

    logger.error(f"Unhandled toolkit error: {error}", exc_info=True)
    print(messages.get("internal", "{message}").format(message=str(error)), file=stream)
    return EXIT_FAILED
