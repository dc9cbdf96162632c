# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.


# Future Modules:
from __future__ import annotations

# Built-in Modules:
from unittest import TestCase
from unittest.mock import Mock, patch

# Third-party Modules:
import numpy as np
from numpy.testing import assert_allclose

# Markovgeom Modules:
from markovgeom.chaindata.objects import EdgeMeasure, EdgeSet, Kernel
from markovgeom.core import (
	birthDeathSupport,
	cycleSupport,
	edgeMeasure,
	kernelFromEdgeMeasure,
	marginalImbalance,
	memorylessKernel,
	stationaryDistribution,
	strongConnectivity,
	timeReversal,
	uniformKernel,
	validateEdgeMeasure,
	validateKernel,
)
from markovgeom.errors import (
	DegenerateMarginalError,
	InvalidSizeError,
	NotIrreducibleError,
	NotStochasticError,
	SupportMismatchError,
	UnbalancedMarginalsError,
)
from markovgeom.sampling import randomKernel, randomReversibleKernel


DIRECTED_CYCLE: list[list[float]] = [[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]


class TestValidation(TestCase):
	def testValidKernel(self) -> None:
		kernel: Kernel = validateKernel([[0.9, 0.1], [0.5, 0.5]])
		self.assertEqual(kernel.support, EdgeSet.complete(2))
		assert_allclose(kernel.matrix.sum(axis=1), 1.0)

	@patch("markovgeom.core.logger")
	def testRenormalization(self, mockLogger: Mock) -> None:
		kernel: Kernel = validateKernel([[0.5, 0.5 + 5e-10], [1.0, 0.0]])
		mockLogger.debug.assert_called_once()
		mockLogger.warning.assert_not_called()
		assert_allclose(kernel.matrix.sum(axis=1), 1.0, rtol=0.0, atol=1e-15)
		self.assertEqual(kernel.support, EdgeSet(2, frozenset({(0, 0), (0, 1), (1, 0)})))

	def testZeroThreshold(self) -> None:
		kernel: Kernel = validateKernel([[0.5, 0.5], [1.0 - 1e-13, 1e-13]])
		self.assertNotIn((1, 1), kernel.support)
		self.assertEqual(kernel.matrix[1, 1], 0.0)

	def testRejections(self) -> None:
		with self.assertRaises(InvalidSizeError):
			validateKernel([[1.0]])
		with self.assertRaises(InvalidSizeError):
			validateKernel([[0.5, 0.5]])
		with self.assertRaises(NotStochasticError):
			validateKernel([[0.5, 0.4], [0.5, 0.5]])
		with self.assertRaises(NotStochasticError):
			validateKernel([[1.5, -0.5], [0.5, 0.5]])
		with self.assertRaises(NotStochasticError):
			validateKernel([[np.nan, 1.0], [0.5, 0.5]])
		with self.assertRaises(NotIrreducibleError):
			validateKernel([[1.0, 0.0], [0.0, 1.0]])
		with self.assertRaises(NotIrreducibleError):
			validateKernel([[0.5, 0.5], [0.0, 1.0]])
		with self.assertRaises(SupportMismatchError):
			validateKernel([[0.0, 1.0], [1.0, 0.0]], support=EdgeSet.complete(2))

	def testEdgeMeasureValidation(self) -> None:
		measure: EdgeMeasure = validateEdgeMeasure([[0.1, 0.2], [0.2, 0.5]])
		self.assertAlmostEqual(float(measure.matrix.sum()), 1.0)
		with self.assertRaises(UnbalancedMarginalsError):
			validateEdgeMeasure([[0.1, 0.2], [0.3, 0.4]])
		with self.assertRaises(NotStochasticError):
			validateEdgeMeasure([[0.1, 0.2], [0.2, 0.2]])
		self.assertAlmostEqual(marginalImbalance([[0.1, 0.2], [0.3, 0.4]]), 0.1)

	def testSupports(self) -> None:
		self.assertTrue(strongConnectivity(cycleSupport(5)))
		self.assertTrue(strongConnectivity(birthDeathSupport(5)))
		self.assertTrue(strongConnectivity(EdgeSet(3, frozenset({(0, 1), (1, 2), (2, 0)}))))
		self.assertFalse(strongConnectivity(EdgeSet(3, frozenset({(0, 1), (1, 2), (2, 1)}))))


class TestStationary(TestCase):
	def testTwoStates(self) -> None:
		pi = stationaryDistribution(validateKernel([[0.9, 0.1], [0.5, 0.5]])).probabilities
		assert_allclose(pi, [5.0 / 6.0, 1.0 / 6.0], atol=1e-14)

	def testPeriodicKernel(self) -> None:
		pi = stationaryDistribution(validateKernel(DIRECTED_CYCLE)).probabilities
		assert_allclose(pi, np.full(3, 1.0 / 3.0), atol=1e-14)

	def testRandomKernels(self) -> None:
		rng: np.random.Generator = np.random.default_rng(1)
		for size in (2, 3, 5, 8):
			kernel: Kernel = randomKernel(rng, size)
			pi = stationaryDistribution(kernel).probabilities
			assert_allclose(pi @ kernel.matrix, pi, atol=1e-12)
			self.assertAlmostEqual(float(pi.sum()), 1.0)
			self.assertTrue(np.all(pi > 0.0))


class TestReversalAndEdgeMeasures(TestCase):
	def testTimeReversal(self) -> None:
		adjoint: Kernel = timeReversal(validateKernel(DIRECTED_CYCLE))
		assert_allclose(adjoint.matrix, np.asarray(DIRECTED_CYCLE).T, atol=1e-14)
		self.assertEqual(adjoint.support, EdgeSet(3, frozenset({(1, 0), (2, 1), (0, 2)})))
		rng: np.random.Generator = np.random.default_rng(2)
		reversible: Kernel = randomReversibleKernel(rng, 4)
		assert_allclose(timeReversal(reversible).matrix, reversible.matrix, atol=1e-12)
		kernel: Kernel = randomKernel(rng, 4)
		assert_allclose(timeReversal(timeReversal(kernel)).matrix, kernel.matrix, atol=1e-12)
		pi = stationaryDistribution(kernel).probabilities
		assert_allclose(stationaryDistribution(timeReversal(kernel)).probabilities, pi, atol=1e-12)

	def testTimeReversalKeepsSmallEntries(self) -> None:
		kernel: Kernel = validateKernel([[0.999, 0.001, 0.0], [5e-11, 0.5, 0.5 - 5e-11], [0.5, 0.0, 0.5]])
		adjoint: Kernel = timeReversal(kernel)
		self.assertEqual(adjoint.support, kernel.support.transpose())
		self.assertGreater(adjoint.matrix[0, 1], 0.0)
		assert_allclose(adjoint.matrix.sum(axis=1), 1.0, rtol=0.0, atol=1e-15)
		assert_allclose(timeReversal(adjoint).matrix, kernel.matrix, rtol=1e-9, atol=1e-15)

	def testTwoStateKernelsAreSelfAdjoint(self) -> None:
		rng: np.random.Generator = np.random.default_rng(4)
		matrices: list[list[list[float]]] = [[[0.0, 1.0], [1.0, 0.0]], [[0.0, 1.0], [0.3, 0.7]]]
		for up, down in rng.uniform(0.01, 1.0, size=(50, 2)):
			matrices.append([[1.0 - up, up], [down, 1.0 - down]])
		for matrix in matrices:
			kernel: Kernel = validateKernel(matrix)
			adjoint: Kernel = timeReversal(kernel)
			self.assertEqual(adjoint.support, kernel.support)
			assert_allclose(adjoint.matrix, kernel.matrix, atol=1e-14)

	def testEdgeMeasureRoundTrip(self) -> None:
		rng: np.random.Generator = np.random.default_rng(3)
		kernel: Kernel = randomKernel(rng, 4, EdgeSet.birthDeath(4))
		measure: EdgeMeasure = edgeMeasure(kernel)
		self.assertAlmostEqual(float(measure.matrix.sum()), 1.0)
		self.assertLess(marginalImbalance(measure.matrix), 1e-12)
		self.assertEqual(measure.support, kernel.support)
		assert_allclose(kernelFromEdgeMeasure(measure).matrix, kernel.matrix, atol=1e-12)

	def testDegenerateMarginal(self) -> None:
		support: EdgeSet = EdgeSet(2, frozenset({(0, 0), (0, 1)}))
		measure: EdgeMeasure = EdgeMeasure(np.asarray([[0.5, 0.5], [0.0, 0.0]]), support)
		with self.assertRaises(DegenerateMarginalError):
			kernelFromEdgeMeasure(measure)

	def testSpecialKernels(self) -> None:
		assert_allclose(uniformKernel(4).matrix, np.full((4, 4), 0.25))
		kernel: Kernel = memorylessKernel([1.0, 3.0])
		assert_allclose(kernel.matrix, [[0.25, 0.75], [0.25, 0.75]])
		assert_allclose(stationaryDistribution(kernel).probabilities, [0.25, 0.75], atol=1e-14)
