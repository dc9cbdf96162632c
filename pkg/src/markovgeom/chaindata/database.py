# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.


# Future Modules:
from __future__ import annotations

# Built-in Modules:
import logging
import math
import os.path
from collections.abc import Callable, Mapping, Sequence
from functools import lru_cache
from typing import Any, Optional, Union

# Third-party Modules:
import fastjsonschema
import numpy as np
import orjson

# Local Modules:
from ..errors import KernelFileError
from ..typedef import EDGE_TYPE, JSON_TYPE, MATRIX_TYPE
from ..utils import getDataPath
from .objects import DivergenceValue, EdgeSet, ExperimentReport, edgesFromPairs


KERNEL_SCHEMA_VERSION: int = 1  # Increment this when the kernel schema changes.
KERNEL_SCHEMA_PATH: str = getDataPath(f"kernel_v{KERNEL_SCHEMA_VERSION}.schema")
DUMP_OPTIONS: int = orjson.OPT_APPEND_NEWLINE | orjson.OPT_INDENT_2
SIGNIFICANT_DIGITS: int = 17
INFINITY: str = "infinity"


logger: logging.Logger = logging.getLogger(__name__)


class ChartDocument(dict[str, float]):
	"""A coordinate map whose keys are serialized in chart order instead of sorted."""


@lru_cache(maxsize=None)
def getValidator(schemaPath: str) -> Callable[..., None]:  # type: ignore[misc]
	with open(schemaPath, "rb") as fileObj:
		validator: Callable[..., None] = fastjsonschema.compile(orjson.loads(fileObj.read()))
	return validator


def _validate(document: Mapping[str, Any], schemaPath: str) -> None:
	"""
	Validates a document against a schema.

	Args:
		document: The document to be validated.
		schemaPath: The location of the schema.

	Raises:
		KernelFileError: The document does not satisfy the schema.
	"""
	validator = getValidator(schemaPath)
	try:
		validator(document)
	except fastjsonschema.JsonSchemaException as e:
		raise KernelFileError(f"Data failed validation: {e.message}") from None


def _load(path: str) -> dict[str, Any]:
	"""
	Loads a JSON document into memory.

	Args:
		path: The location of the document.

	Returns:
		The parsed document.

	Raises:
		KernelFileError: The file is missing, unreadable, or corrupted.
	"""
	if not os.path.exists(path):
		raise KernelFileError(f"'{path}' doesn't exist.")
	if os.path.isdir(path):
		raise KernelFileError(f"'{path}' is a directory, not a file.")
	try:
		with open(path, "rb") as fileObj:
			document: Any = orjson.loads(fileObj.read())
	except IOError as e:
		raise KernelFileError(f"IOError: {e}") from None
	except orjson.JSONDecodeError as e:
		raise KernelFileError(f"'{path}' is corrupted. {e}") from None
	if not isinstance(document, dict):
		raise KernelFileError(f"'{path}' must contain a JSON object.")
	return document


def parseMatrixDocument(document: Mapping[str, Any]) -> tuple[str, MATRIX_TYPE, Optional[EdgeSet]]:
	"""
	Converts a validated kernel or edge measure document to arrays.

	Args:
		document: The document, with 1-based support pairs.

	Returns:
		The kind ("kernel" unless declared), the matrix, and the declared support or None when it is
		to be inferred.

	Raises:
		KernelFileError: The document is malformed.
	"""
	_validate(document, KERNEL_SCHEMA_PATH)
	size: int = document["size"]
	rows: list[list[float]] = document["matrix"]
	if len(rows) != size or any(len(row) != size for row in rows):
		raise KernelFileError(f"Matrix must be {size} by {size}.")
	kind: str = document.get("kind", "kernel")
	matrix: MATRIX_TYPE = np.array(rows, dtype=np.float64)
	if "support" not in document:
		return kind, matrix, None
	pairs: list[list[int]] = document["support"]
	if any(x > size or y > size for x, y in pairs):
		raise KernelFileError(f"Support pairs must index states 1 to {size}.")
	return kind, matrix, edgesFromPairs(size, pairs)


def loadMatrix(path: str) -> tuple[str, MATRIX_TYPE, Optional[EdgeSet]]:
	"""
	Loads a kernel or edge measure file.

	Args:
		path: The location of the file.

	Returns:
		The kind, the matrix, and the declared support or None when it is to be inferred.
	"""
	logger.debug(f"Loading matrix from {path}.")
	return parseMatrixDocument(_load(path))


def supportPairs(support: EdgeSet) -> list[list[int]]:
	"""The support as sorted 1-based pairs."""
	return [[x + 1, y + 1] for x, y in support]


def matrixDocument(matrix: MATRIX_TYPE, support: EdgeSet, kind: str = "kernel") -> JSON_TYPE:
	"""
	Builds the file representation of a kernel or edge measure.

	Args:
		matrix: The matrix.
		support: Its support.
		kind: Either "kernel" or "edge_measure".

	Returns:
		The document.
	"""
	return {
		"kind": kind,
		"size": support.size,
		"matrix": np.asarray(matrix, dtype=np.float64).tolist(),
		"support": supportPairs(support),
	}


def coordinateKey(index: EDGE_TYPE) -> str:
	"""The 1-based '(i,j)' key of a chart index."""
	return f"({index[0] + 1},{index[1] + 1})"


def coordinateDocument(coordinates: Mapping[EDGE_TYPE, float]) -> JSON_TYPE:
	"""
	Builds the {"(i,j)": value} map of a chart point.

	Args:
		coordinates: The values keyed by 0-based chart index, in chart order.

	Returns:
		The document, keeping chart order through serialization.
	"""
	return ChartDocument((coordinateKey(index), float(value)) for index, value in coordinates.items())


def divergenceDocument(divergence: DivergenceValue) -> JSON_TYPE:
	return {"value": INFINITY if divergence.isInfinite else divergence.finite()}


def reportDocument(report: ExperimentReport) -> JSON_TYPE:
	return report.asDict()


def _encodeFloat(value: float) -> Union[orjson.Fragment, str]:
	if math.isinf(value) and value > 0:
		return INFINITY
	if not math.isfinite(value):
		raise KernelFileError(f"Cannot encode non-finite value {value!r}.")
	return orjson.Fragment(f"{value:.{SIGNIFICANT_DIGITS}g}".encode("ascii"))


def _prepare(value: Any) -> Any:
	"""
	Replaces every float in a document with its fixed precision encoding.

	Args:
		value: A document, or part of one.

	Returns:
		A document orjson can serialize deterministically.
	"""
	if isinstance(value, (bool, np.bool_)):
		return bool(value)
	if isinstance(value, (int, np.integer)):
		return int(value)
	if isinstance(value, (float, np.floating)):
		return _encodeFloat(float(value))
	if isinstance(value, np.ndarray):
		return _prepare(value.tolist())
	if isinstance(value, ChartDocument):
		return {key: _prepare(item) for key, item in value.items()}
	if isinstance(value, Mapping):
		return {str(key): _prepare(value[key]) for key in sorted(value, key=str)}
	if isinstance(value, Sequence) and not isinstance(value, str):
		return [_prepare(item) for item in value]
	return value


def dumps(document: Any) -> bytes:
	"""
	Serializes a document.

	Keys are sorted except in chart documents. Floats carry 17 significant digits, and a
	trailing newline is appended.

	Args:
		document: The document to serialize.

	Returns:
		The encoded bytes.

	Raises:
		KernelFileError: The document cannot be encoded.
	"""
	try:
		return orjson.dumps(_prepare(document), option=DUMP_OPTIONS)
	except orjson.JSONEncodeError as e:
		raise KernelFileError(f"Cannot encode document. {e}") from None


def dumpDocument(document: Any, path: str) -> bytes:
	"""
	Saves a document to disk.

	Args:
		document: The document to be saved.
		path: The location where the document should be saved.

	Returns:
		The bytes written.

	Raises:
		KernelFileError: The document cannot be encoded or written.
	"""
	if isinstance(document, Mapping) and "matrix" in document:
		_validate(document, KERNEL_SCHEMA_PATH)
	data: bytes = dumps(document)
	try:
		with open(path, "wb") as fileObj:
			fileObj.write(data)
	except IOError as e:
		raise KernelFileError(f"IOError: {e}") from None
	logger.debug(f"Wrote {len(data)} bytes to {path}.")
	return data
