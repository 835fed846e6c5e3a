# Utils package initialization
# Matrix file IO and report rendering

from .matrix_io import read_matrix, write_matrix, format_matrix
from .report_formatter import render

__all__ = [
    'read_matrix',
    'write_matrix',
    'format_matrix',
    'render'
]
