# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.


# Future Modules:
from __future__ import annotations

# Built-in Modules:
import math
from unittest import TestCase

# Third-party Modules:
import numpy as np
from numpy.testing import assert_allclose

# Markovgeom Modules:
from markovgeom.chaindata.objects import (
	EdgeFunction,
	EdgeSet,
	EFamilySpec,
	ExpectationCoords,
	Kernel,
	NaturalCoords,
)
from markovgeom.core import edgeMeasure, timeReversal, validateKernel
from markovgeom.errors import (
	AsymmetricSupportError,
	InfeasibleCoordsError,
	NotReversibleError,
	ParameterRangeError,
	SupportMismatchError,
)
from markovgeom.geometry import (
	basisFunction,
	chartFamily,
	eGeodesic,
	efamilyExpectation,
	efamilyKernel,
	efamilyPotential,
	expectationCoords,
	fisherMetric,
	geodesicPath,
	kernelFromExpectation,
	kernelFromNatural,
	logKernel,
	mGeodesic,
	naturalCoords,
	psiGradient,
	psiHessian,
	reversibleBasis,
	reversibleDimension,
	tilt,
)
from markovgeom.reversibility import balanceResidual
from markovgeom.sampling import (
	randomGradientFunction,
	randomKernel,
	randomReversibleFromExpectation,
	randomReversibleKernel,
	randomSymmetricKernel,
)


class TestTiltsAndGeodesics(TestCase):
	def testTilt(self) -> None:
		rng: np.random.Generator = np.random.default_rng(14)
		kernel: Kernel = randomKernel(rng, 4, EdgeSet.cycle(4))
		self.assertIs(tilt(kernel, randomGradientFunction(rng, kernel.support), 0.0), kernel)
		gradient: EdgeFunction = randomGradientFunction(rng, kernel.support)
		assert_allclose(tilt(kernel, gradient, 1.7).matrix, kernel.matrix, atol=1e-10)
		constant: EdgeFunction = EdgeFunction.onSupport(np.ones((4, 4)), kernel.support)
		assert_allclose(tilt(kernel, constant, -3.0).matrix, kernel.matrix, atol=1e-10)
		loops: EdgeFunction = EdgeFunction.onSupport(np.eye(4), kernel.support)
		tilted: Kernel = tilt(kernel, loops, 1.0)
		self.assertEqual(tilted.support, kernel.support)
		self.assertTrue(np.all(np.diag(tilted.matrix) > np.diag(kernel.matrix)))
		everywhere: EdgeFunction = EdgeFunction(np.ones((3, 3)), EdgeSet.complete(3))
		with self.assertRaises(SupportMismatchError):
			tilt(randomKernel(rng, 3, EdgeSet.birthDeath(3)), everywhere, 1.0)

	def testEGeodesic(self) -> None:
		rng: np.random.Generator = np.random.default_rng(15)
		start: Kernel = randomReversibleKernel(rng, 4)
		end: Kernel = randomReversibleKernel(rng, 4)
		self.assertIs(eGeodesic(start, end, 0.0), start)
		self.assertIs(eGeodesic(start, end, 1.0), end)
		for t in (-0.5, 0.3, 0.5, 1.5):
			point: Kernel = eGeodesic(start, end, t)
			assert_allclose(point.matrix.sum(axis=1), 1.0, atol=1e-12)
			self.assertLess(balanceResidual(point), 1e-12)
		with self.assertRaises(SupportMismatchError):
			eGeodesic(start, randomReversibleKernel(rng, 4, EdgeSet.birthDeath(4)), 0.5)

	def testMGeodesic(self) -> None:
		rng: np.random.Generator = np.random.default_rng(16)
		start: Kernel = randomReversibleKernel(rng, 3, EdgeSet.birthDeath(3))
		end: Kernel = randomReversibleKernel(rng, 3)
		self.assertIs(mGeodesic(start, end, 0.0), start)
		self.assertIs(mGeodesic(start, end, 1.0), end)
		middle: Kernel = mGeodesic(start, end, 0.25)
		self.assertEqual(middle.support, EdgeSet.complete(3))
		self.assertLess(balanceResidual(middle), 1e-12)
		mixture = 0.75 * edgeMeasure(start).matrix + 0.25 * edgeMeasure(end).matrix
		assert_allclose(edgeMeasure(middle).matrix, mixture, atol=1e-12)
		with self.assertRaises(ParameterRangeError):
			mGeodesic(start, end, 1.5)
		with self.assertRaises(ParameterRangeError):
			mGeodesic(start, end, -0.1)

	def testMGeodesicKeepsSymmetry(self) -> None:
		rng: np.random.Generator = np.random.default_rng(40)
		for size in (2, 3, 5):
			start: Kernel = randomSymmetricKernel(rng, size)
			end: Kernel = randomSymmetricKernel(rng, size)
			for t in (0.1, 0.5, 0.8):
				point: Kernel = mGeodesic(start, end, t)
				assert_allclose(point.matrix, point.matrix.T, atol=1e-13)
				assert_allclose(point.matrix, (1.0 - t) * start.matrix + t * end.matrix, atol=1e-13)

	def testTiltReversal(self) -> None:
		rng: np.random.Generator = np.random.default_rng(41)
		forward: EdgeSet = EdgeSet(3, frozenset({(0, 1), (1, 2), (2, 0)}))
		for support in (EdgeSet.complete(4), EdgeSet.cycle(5), forward):
			kernel: Kernel = randomKernel(rng, support.size, support)
			g: EdgeFunction = EdgeFunction.onSupport(rng.normal(size=(support.size, support.size)), support)
			for theta in (-0.7, 1.3):
				reversedTilt: Kernel = timeReversal(tilt(kernel, g, theta))
				tiltedReversal: Kernel = tilt(timeReversal(kernel), g.transpose(), theta)
				self.assertEqual(reversedTilt.support, support.transpose())
				assert_allclose(reversedTilt.matrix, tiltedReversal.matrix, atol=1e-10)

	def testGeodesicPath(self) -> None:
		rng: np.random.Generator = np.random.default_rng(17)
		start: Kernel = randomKernel(rng, 3)
		end: Kernel = randomKernel(rng, 3)
		for kind in ("e", "m"):
			path: list[Kernel] = geodesicPath(start, end, kind, 4)
			self.assertEqual(len(path), 5)
			self.assertIs(path[0], start)
			self.assertIs(path[-1], end)
		with self.assertRaises(ParameterRangeError):
			geodesicPath(start, end, "e", 0)


class TestCharts(TestCase):
	def testBasis(self) -> None:
		support: EdgeSet = EdgeSet.complete(3)
		assert_allclose(basisFunction((1, 1), support).matrix, [[0, 0, 0], [0, 2, 0], [0, 0, 0]])
		assert_allclose(basisFunction((2, 0), support).matrix, [[0, 0, 1], [0, 0, 0], [1, 0, 0]])
		self.assertEqual(len(reversibleBasis(support)), 5)

	def testDimensions(self) -> None:
		for size in range(2, 7):
			self.assertEqual(reversibleDimension(EdgeSet.complete(size)), size * (size + 1) // 2 - 1)
			self.assertEqual(reversibleDimension(EdgeSet.birthDeath(size)), 2 * size - 2)
			self.assertEqual(len(EdgeSet.complete(size).chartIndices()), size * (size + 1) // 2 - 1)
		with self.assertRaises(AsymmetricSupportError):
			reversibleDimension(EdgeSet(3, frozenset({(0, 1), (1, 2), (2, 0)})))

	def testRoundTrips(self) -> None:
		rng: np.random.Generator = np.random.default_rng(18)
		supports = (EdgeSet.complete(3), EdgeSet.complete(5), EdgeSet.birthDeath(4), EdgeSet.cycle(5))
		for index in range(100):
			support: EdgeSet = supports[index % 4]
			kernel: Kernel = randomReversibleKernel(rng, support.size, support)
			natural: NaturalCoords = naturalCoords(kernel)
			self.assertEqual(len(natural.values), reversibleDimension(support))
			assert_allclose(kernelFromNatural(natural).matrix, kernel.matrix, atol=1e-9)
			expectation: ExpectationCoords = expectationCoords(kernel)
			assert_allclose(kernelFromExpectation(expectation).matrix, kernel.matrix, atol=1e-9)
			sampled: Kernel = randomReversibleFromExpectation(rng, support)
			self.assertEqual(sampled.support, support)
			self.assertLess(balanceResidual(sampled), 1e-12)

	def testPotentialIsExcludedEdge(self) -> None:
		rng: np.random.Generator = np.random.default_rng(19)
		for support in (EdgeSet.complete(4), EdgeSet.birthDeath(4)):
			kernel: Kernel = randomReversibleKernel(rng, 4, support)
			spec: EFamilySpec = chartFamily(support, naturalCoords(kernel).values)
			last: int = support.size - 1
			star: int = support.xStar
			expected: float = -0.5 * math.log(kernel.matrix[last, star] * kernel.matrix[star, last])
			self.assertAlmostEqual(efamilyPotential(spec), expected, places=9)
			assert_allclose(efamilyExpectation(spec), expectationCoords(kernel).values, atol=1e-9)

	def testChartErrors(self) -> None:
		support: EdgeSet = EdgeSet.complete(3)
		cycle: Kernel = validateKernel([[0.1, 0.9, 0.0], [0.0, 0.1, 0.9], [0.9, 0.0, 0.1]])
		with self.assertRaises(NotReversibleError):
			naturalCoords(cycle)
		rng: np.random.Generator = np.random.default_rng(20)
		with self.assertRaises(NotReversibleError):
			expectationCoords(randomKernel(rng, 3))
		with self.assertRaises(InfeasibleCoordsError):
			kernelFromExpectation(ExpectationCoords(np.asarray([0.2, -0.1, 0.2, 0.2, 0.2]), support))
		with self.assertRaises(InfeasibleCoordsError):
			kernelFromExpectation(ExpectationCoords(np.asarray([0.3, 0.3, 0.3, 0.3, 0.3]), support))


class TestFisher(TestCase):
	def testMetricIsPotentialHessian(self) -> None:
		support: EdgeSet = EdgeSet.complete(3)
		spec: EFamilySpec = chartFamily(support, [0.2, -0.1, 0.3, 0.1, -0.2])
		metric = fisherMetric(spec)
		assert_allclose(metric, metric.T)
		assert_allclose(metric, psiHessian(spec), atol=1e-5)
		self.assertTrue(np.all(np.linalg.eigvalsh(metric) > 0.0))
		assert_allclose(psiGradient(spec), efamilyExpectation(spec), atol=1e-8)

	def testMetricMatchesHessianOnRandomFamilies(self) -> None:
		rng: np.random.Generator = np.random.default_rng(3)
		for index in range(20):
			size: int = 3 + index % 3
			dimension: int = 1 + index % 2
			support: EdgeSet = EdgeSet.complete(size)
			generators = tuple(
				EdgeFunction(rng.normal(size=(size, size)), support) for _ in range(dimension)
			)
			theta = rng.normal(0.0, 0.5, dimension)
			spec = EFamilySpec(logKernel(randomKernel(rng, size)), generators, theta)
			hessian = psiHessian(spec)
			error: float = float(np.max(np.abs(fisherMetric(spec) - hessian)))
			self.assertLess(error, 1e-4 * float(np.max(np.abs(hessian))))

	def testKernelMatchesNaturalChart(self) -> None:
		support: EdgeSet = EdgeSet.birthDeath(3)
		theta = np.asarray([0.1, 0.2, -0.3, 0.4])
		kernel: Kernel = efamilyKernel(chartFamily(support, theta))
		assert_allclose(naturalCoords(kernel).values, theta, atol=1e-10)
