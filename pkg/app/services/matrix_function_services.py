"""
Matrix Function Services for matfn.
Handles existence checks, logarithms, roots, the exponential, the inverse
scaling and squaring logarithm and residual verification.
"""

import numpy as np

from app.logic.iss import iss_log, residual
from app.logic.linalg_core import relative_error
from app.logic.matfuncs import (
    expm,
    has_real_log,
    has_real_sqrt,
    principal_log,
    principal_root,
    principal_sqrt,
    real_log,
    real_sqrt,
)
from app.models.pydantic.models import FnResult, MatfnRequest, Report, ResidualKind
from app.utils.base_service import BaseService

EXISTENCE_FAILURE = 2


def _fn_report(req: MatfnRequest, result: FnResult) -> Report:
    return Report(
        command=req.command,
        n=req.matrix.shape[0],
        matrix=result.value,
        residual=result.residual,
        branch=result.branch.value,
        domain_ok=result.domain_ok,
        warnings=result.warnings,
    )


class MatrixFunctionServices(BaseService):
    """Service for real matrix functions"""

    # ─────────────────────────────────────────────────────────────────────────────
    # Existence
    # ─────────────────────────────────────────────────────────────────────────────

    def CheckLog(self, request: MatfnRequest) -> Report:
        """Existence of a real logarithm"""
        def compute(req):
            verdict = has_real_log(req.matrix, req.tolerances)
            return Report(command=req.command, n=req.matrix.shape[0], verdict=verdict,
                          exit_code=0 if verdict.exists else EXISTENCE_FAILURE,
                          message=None if verdict.exists else f"no real logarithm: {verdict.describe()}")
        return self._run("CheckLog", request, compute)

    def CheckSqrt(self, request: MatfnRequest) -> Report:
        """Existence of a real square root"""
        def compute(req):
            verdict = has_real_sqrt(req.matrix, req.tolerances)
            return Report(command=req.command, n=req.matrix.shape[0], verdict=verdict,
                          exit_code=0 if verdict.exists else EXISTENCE_FAILURE,
                          message=None if verdict.exists else f"no real square root: {verdict.describe()}")
        return self._run("CheckSqrt", request, compute)

    # ─────────────────────────────────────────────────────────────────────────────
    # Logarithms and roots
    # ─────────────────────────────────────────────────────────────────────────────

    def Log(self, request: MatfnRequest) -> Report:
        """Principal logarithm, or any real logarithm with branch=any"""
        def compute(req):
            if req.branch == "any":
                return _fn_report(req, real_log(req.matrix, req.tolerances))
            return _fn_report(req, principal_log(req.matrix, req.tolerances))
        return self._run("Log", request, compute)

    def Sqrt(self, request: MatfnRequest) -> Report:
        """Principal square root, or any real square root with branch=any"""
        def compute(req):
            if req.branch == "any":
                return _fn_report(req, real_sqrt(req.matrix, req.tolerances))
            return _fn_report(req, principal_sqrt(req.matrix, req.tolerances))
        return self._run("Sqrt", request, compute)

    def Root(self, request: MatfnRequest) -> Report:
        """Principal p-th root"""
        def compute(req):
            report = _fn_report(req, principal_root(req.matrix, req.p, req.tolerances))
            return report.model_copy(update={"details": {"p": req.p}})
        return self._run("Root", request, compute)

    def Exp(self, request: MatfnRequest) -> Report:
        """Matrix exponential; the residual is ||e^A e^-A - I||_1"""
        def compute(req):
            A = req.matrix
            E = expm(A)
            identity = np.eye(A.shape[0])
            return Report(command=req.command, n=A.shape[0], matrix=E,
                          residual=relative_error(E @ expm(-A), identity))
        return self._run("Exp", request, compute)

    def IssLog(self, request: MatfnRequest) -> Report:
        """Logarithm by inverse scaling and squaring"""
        def compute(req):
            report = iss_log(req.matrix, tol=req.tolerances)
            return Report(command=req.command, n=req.matrix.shape[0], matrix=report.value,
                          residual=report.residual, branch="principal", domain_ok=True,
                          details={"k": report.k, "series_terms": report.series_terms,
                                   "final_closeness": report.final_closeness})
        return self._run("IssLog", request, compute)

    def Verify(self, request: MatfnRequest) -> Report:
        """Residual of a candidate logarithm or root read from a second file"""
        def compute(req):
            kind = req.kind or ResidualKind.LOG
            value = residual(req.matrix, req.candidate, kind, req.p)
            details = {"kind": kind.value}
            if kind is ResidualKind.ROOT:
                details["p"] = req.p
            return Report(command=req.command, n=req.matrix.shape[0], residual=value, details=details)
        return self._run("Verify", request, compute)
