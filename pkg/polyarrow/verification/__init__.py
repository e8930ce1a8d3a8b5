from .base_suite import BaseSuite
from .instances import InstanceGenerator
from .orchestrator import SUITES, SuiteOrchestrator, resolve_suites
from .error_handler import EXIT_CONFIG, EXIT_FAILED, EXIT_OK, handle_toolkit_error

__all__ = [
    "BaseSuite", "InstanceGenerator", "SUITES", "SuiteOrchestrator", "resolve_suites",
    "EXIT_CONFIG", "EXIT_FAILED", "EXIT_OK", "handle_toolkit_error",
]
