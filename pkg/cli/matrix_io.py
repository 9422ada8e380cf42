"""Matrix file parsing and emission."""
import json
import logging
from pathlib import Path
from typing import Union

import numpy as np
from pydantic import ValidationError

from shared.exceptions import InputError, MatrixFileError
from shared.schemas import MatrixFile
from shared.utils import atomic_write_text, to_json
from spectrum.matcore import as_matrix

logger = logging.getLogger(__name__)


def _read_source(source: Union[str, Path]) -> str:
    if isinstance(source, str) and source.lstrip().startswith("{"):
        return source
    path = Path(source)
    try:
        return path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read matrix file {path}: {e}")


def parse_matrix(source: Union[str, Path]) -> np.ndarray:
    """Matrix from a file path or from JSON text."""
    text = _read_source(source)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise MatrixFileError(f"malformed JSON: {e.msg}", line=e.lineno, column=e.colno)
    try:
        matrix = MatrixFile.model_validate(doc)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"]) or "document"
        raise MatrixFileError(f"invalid matrix file at {where}: {first['msg']}")
    return as_matrix(matrix.to_array())


def emit_matrix(A) -> str:
    """Canonical JSON text of a matrix."""
    return to_json(MatrixFile.from_array(as_matrix(A)).model_dump())


def write_matrix(path: Union[str, Path], A) -> Path:
    logger.info(f"writing matrix to {path}")
    return atomic_write_text(path, emit_matrix(A))
