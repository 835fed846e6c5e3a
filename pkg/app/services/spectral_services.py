"""
Spectral Services for matfn.
Handles eigenvalues, complex Jordan structure and the real Jordan form.
"""

import numpy as np

from app.logic.jordan import jordan_chains, jordan_structure, real_jordan_form
from app.logic.linalg_core import eigenvalues, operator_norm
from app.models.pydantic.models import MatfnRequest, Report
from app.utils.base_service import BaseService


class SpectralServices(BaseService):
    """Service for eigenvalue and Jordan form operations"""

    def Eig(self, request: MatfnRequest) -> Report:
        """Clustered eigenvalues; the residual compares the trace with the weighted eigenvalue sum"""
        def compute(req):
            A = req.matrix
            spectrum = eigenvalues(A, req.tolerances)
            total = sum(e.algebraic_multiplicity * e.value for e in spectrum)
            residual = abs(np.trace(A) - total) / max(operator_norm(A), 1.0)
            return Report(command=req.command, n=A.shape[0], eigenvalues=spectrum, residual=residual)
        return self._run("Eig", request, compute)

    def Jordan(self, request: MatfnRequest) -> Report:
        """Complex Jordan structure, verified through its chains"""
        def compute(req):
            form = jordan_chains(req.matrix, jordan_structure(req.matrix, req.tolerances), req.tolerances)
            return Report(command=req.command, n=req.matrix.shape[0],
                          blocks=form.structure.counts(), residual=form.residual)
        return self._run("Jordan", request, compute)

    def RealJordan(self, request: MatfnRequest) -> Report:
        """Real Jordan form A = P J P^-1 with real P; the matrix printed is P"""
        def compute(req):
            form = real_jordan_form(req.matrix, req.tolerances)
            return Report(command=req.command, n=req.matrix.shape[0], matrix=form.P,
                          blocks=form.structure.counts(), residual=form.residual)
        return self._run("RealJordan", request, compute)
