# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.


# Future Modules:
from __future__ import annotations

# Built-in Modules:
import os.path
from unittest import TestCase

# Third-party Modules:
import numpy as np

# Markovgeom Modules:
from markovgeom import utils


class TestUtils(TestCase):
	def test_getDataPath(self) -> None:
		subdirectory: tuple[str, ...] = ("level1", "level2")
		output: str = os.path.join(
			os.path.dirname(utils.__file__), os.path.pardir, utils.DATA_DIRECTORY, *subdirectory
		)
		self.assertEqual(utils.getDataPath(*subdirectory), os.path.realpath(output))

	def test_numericalRank(self) -> None:
		self.assertEqual(utils.numericalRank(np.eye(3)), 3)
		self.assertEqual(utils.numericalRank([[1.0, 2.0], [2.0, 4.0]]), 1)
		self.assertEqual(utils.numericalRank([[1.0, 0.0], [0.0, 1e-12]]), 1)
		self.assertEqual(utils.numericalRank([[1.0, 0.0], [0.0, 1e-12]], tolerance=1e-14), 2)
		self.assertEqual(utils.numericalRank(np.zeros((2, 3))), 0)
		self.assertEqual(utils.numericalRank(np.zeros((0, 3))), 0)
		self.assertEqual(utils.numericalRank([1.0, 2.0, 3.0]), 1)

	def test_maxAbs(self) -> None:
		self.assertEqual(utils.maxAbs([[1.0, -3.0], [2.0, 0.5]]), 3.0)
		self.assertEqual(utils.maxAbs([]), 0.0)
