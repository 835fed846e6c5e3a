"""
Base service class for all matfn service modules.
Provides timing, logging and the error-to-report mapping.
"""

import logging
import time
from typing import Callable

from app.models.errors import MatfnError
from app.models.pydantic.models import MatfnRequest, Report


class BaseService:
    """Base class for all matfn service modules"""

    def __init__(self, logger=None):
        self.logger = logger or logging.getLogger(__name__)

    def _run(self, operation_name: str, request: MatfnRequest,
             compute: Callable[[MatfnRequest], Report]) -> Report:
        """Run one operation, timing it and turning library failures into a failed Report"""
        start = time.perf_counter()
        self._safe_log_request(operation_name, request)
        try:
            report = compute(request)
        except MatfnError as error:
            report = self._handle_exception(request, error, operation_name)
        report = report.model_copy(update={"timing_ms": (time.perf_counter() - start) * 1000.0})
        if report.exit_code == 0:
            self._log_success(operation_name, report)
        return report

    def _handle_exception(self, request: MatfnRequest, error: MatfnError, operation_name: str) -> Report:
        """Common exception handling: log, then report the error's exit code and message"""
        if self.logger.isEnabledFor(logging.DEBUG):
            self.logger.exception(f"[{operation_name}] Failed with error: {str(error)}")
        else:
            self.logger.error(f"[{operation_name}] Failed with error: {str(error)}")
        return Report(
            command=request.command,
            n=request.matrix.shape[0],
            verdict=getattr(error, "verdict", None),
            exit_code=error.exit_code,
            message=str(error),
        )

    def _log_success(self, operation_name: str, report: Report):
        self.logger.debug(f"[{operation_name}] residual={report.residual} in {report.timing_ms:.1f} ms")

    def _safe_log_request(self, operation_name: str, request: MatfnRequest):
        self.logger.debug(f"[{operation_name}] n={request.matrix.shape[0]} tolerances={request.tolerances.model_dump()}")
