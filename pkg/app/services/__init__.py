"""
Services module for matfn.
Contains the service modules the router delegates to.
"""

from app.utils.base_service import BaseService
from app.services.spectral_services import SpectralServices
from app.services.matrix_function_services import MatrixFunctionServices

__all__ = [
    "BaseService",
    "SpectralServices",
    "MatrixFunctionServices",
]
