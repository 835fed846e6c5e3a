"""
Matrix files: dense text (one row per line, whitespace separated) or JSON
{"n": int, "rows": [[...], ...]}. Values are written with 17 significant
digits so float64 entries read back bit-exactly.
"""

from pathlib import Path
from typing import Union

import numpy as np
from pydantic import ValidationError

from app.logic.linalg_core import as_real_matrix
from app.models.errors import InvalidMatrix
from app.models.pydantic.models import MatrixPayload

PathLike = Union[str, Path]


def format_value(x: float) -> str:
    return format(float(x), ".17g")


def format_matrix(A) -> str:
    return "\n".join(" ".join(format_value(x) for x in row) for row in np.asarray(A, dtype=np.float64))


def parse_dense_text(text: str) -> np.ndarray:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rows.append([float(token) for token in line.split()])
        except ValueError as e:
            raise InvalidMatrix(f"line {lineno}: {e}") from e
    if not rows:
        raise InvalidMatrix("matrix file is empty")
    if any(len(row) != len(rows[0]) for row in rows):
        raise InvalidMatrix("rows have unequal lengths")
    if len(rows) != len(rows[0]):
        raise InvalidMatrix(f"{len(rows)} rows of length {len(rows[0])} is not a square matrix")
    return as_real_matrix(rows)


def parse_json(text: str) -> np.ndarray:
    try:
        payload = MatrixPayload.model_validate_json(text)
    except ValidationError as e:
        raise InvalidMatrix(f"invalid matrix JSON: {e.errors()[0]['msg']}") from e
    return as_real_matrix(payload.rows)


def read_matrix(path: PathLike) -> np.ndarray:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise InvalidMatrix(f"cannot read {path}: {e.strerror}") from e
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_dense_text(text)


def write_matrix(path: PathLike, A) -> None:
    """Dense text, or JSON when the path ends in .json"""
    path = Path(path)
    A = np.asarray(A, dtype=np.float64)
    if path.suffix.lower() == ".json":
        body = MatrixPayload(n=A.shape[0], rows=A.tolist()).model_dump_json()
    else:
        body = format_matrix(A) + "\n"
    try:
        path.write_text(body)
    except OSError as e:
        raise InvalidMatrix(f"cannot write {path}: {e.strerror}") from e
