# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.


# Future Modules:
from __future__ import annotations

# Built-in Modules:
import os.path

# Third-party Modules:
import numpy as np
import numpy.typing as npt
from knickknacks.platforms import getDirectoryPath, isFrozen
from scipy.linalg import svdvals

# Local Modules:
from .typedef import MATRIX_TYPE


DATA_DIRECTORY: str = "markovgeom_data"
RANK_TOLERANCE: float = 1e-8  # Relative to the largest singular value.


def getDataPath(*args: str) -> str:
	"""
	Retrieves the path of the data directory.

	Args:
		*args: Positional arguments to be passed to os.join after the data path.

	Returns:
		The path.
	"""
	path: str = getDirectoryPath(os.path.curdir if isFrozen() else os.path.pardir, DATA_DIRECTORY)
	return os.path.realpath(os.path.join(path, *args))


def numericalRank(rows: npt.ArrayLike, tolerance: float = RANK_TOLERANCE) -> int:
	"""
	Computes the numerical rank of a stack of vectors.

	Args:
		rows: A 2-dimensional array, one vector per row.
		tolerance: Singular values below this fraction of the largest one count as zero.

	Returns:
		The number of singular values above the threshold.
	"""
	matrix: MATRIX_TYPE = np.atleast_2d(np.asarray(rows, dtype=np.float64))
	if matrix.size == 0:
		return 0
	singular = svdvals(matrix)
	if singular[0] == 0.0:
		return 0
	return int(np.count_nonzero(singular > tolerance * singular[0]))


def maxAbs(values: npt.ArrayLike) -> float:
	"""The largest absolute entry, or 0 for an empty array."""
	array = np.asarray(values, dtype=np.float64)
	return float(np.max(np.abs(array))) if array.size else 0.0
