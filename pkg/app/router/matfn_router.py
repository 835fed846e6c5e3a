"""
Main matfn router that combines all individual service modules.
This provides a single entry point while maintaining modular structure.
"""

from app.models.errors import InvalidMatrix
from app.models.pydantic.models import MatfnRequest, Report
from app.services.matrix_function_services import MatrixFunctionServices
from app.services.spectral_services import SpectralServices


class MatfnRouter:
    """
    Dispatches each subcommand to the service module that handles it.
    """

    def __init__(self, logger=None):
        self.spectral_service = SpectralServices(logger)
        self.function_service = MatrixFunctionServices(logger)
        self._routes = {
            "eig": self.Eig,
            "jordan": self.Jordan,
            "real-jordan": self.RealJordan,
            "check-log": self.CheckLog,
            "check-sqrt": self.CheckSqrt,
            "log": self.Log,
            "sqrt": self.Sqrt,
            "root": self.Root,
            "exp": self.Exp,
            "iss-log": self.IssLog,
            "verify": self.Verify,
        }

    @property
    def commands(self):
        return list(self._routes)

    def dispatch(self, request: MatfnRequest) -> Report:
        try:
            handler = self._routes[request.command]
        except KeyError:
            raise InvalidMatrix(f"unknown subcommand {request.command!r}") from None
        return handler(request)

    # ─────────────────────────────────────────────────────────────────────────────
    # Spectral Services
    # ─────────────────────────────────────────────────────────────────────────────

    def Eig(self, request):
        return self.spectral_service.Eig(request)

    def Jordan(self, request):
        return self.spectral_service.Jordan(request)

    def RealJordan(self, request):
        return self.spectral_service.RealJordan(request)

    # ─────────────────────────────────────────────────────────────────────────────
    # Matrix Function Services
    # ─────────────────────────────────────────────────────────────────────────────

    def CheckLog(self, request):
        return self.function_service.CheckLog(request)

    def CheckSqrt(self, request):
        return self.function_service.CheckSqrt(request)

    def Log(self, request):
        """Principal or constructed real logarithm"""
        return self.function_service.Log(request)

    def Sqrt(self, request):
        """Principal or constructed real square root"""
        return self.function_service.Sqrt(request)

    def Root(self, request):
        return self.function_service.Root(request)

    def Exp(self, request):
        return self.function_service.Exp(request)

    def IssLog(self, request):
        """Logarithm by inverse scaling and squaring"""
        return self.function_service.IssLog(request)

    def Verify(self, request):
        return self.function_service.Verify(request)
