# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.


# Future Modules:
from __future__ import annotations

# Built-in Modules:
import sys
from typing import Any

# Third-party Modules:
import numpy as np
import numpy.typing as npt


if sys.version_info < (3, 10):  # pragma: no cover
	from typing_extensions import TypeAlias
else:  # pragma: no cover
	from typing import TypeAlias


MATRIX_TYPE: TypeAlias = "npt.NDArray[np.float64]"
VECTOR_TYPE: TypeAlias = "npt.NDArray[np.float64]"
MASK_TYPE: TypeAlias = "npt.NDArray[np.bool_]"
EDGE_TYPE: TypeAlias = "tuple[int, int]"  # (source, target), 0-based.
JSON_TYPE: TypeAlias = "dict[str, Any]"
