# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""
Seeded random kernels and functions.

Every sampler takes an explicit numpy.random.Generator, so experiments are reproducible from their seed.
"""


# Future Modules:
from __future__ import annotations

# Built-in Modules:
from typing import Optional

# Third-party Modules:
import numpy as np

# Local Modules:
from .chaindata.objects import EdgeFunction, EdgeSet, ExpectationCoords, Kernel, PositiveEdgeFunction
from .core import memorylessKernel, validateKernel
from .errors import AsymmetricSupportError
from .geometry import kernelFromExpectation
from .typedef import MATRIX_TYPE, VECTOR_TYPE


LOW: float = 0.1  # Smallest raw entry, keeping samples away from the boundary.
HIGH: float = 1.0


def _support(size: int, support: Optional[EdgeSet]) -> EdgeSet:
	return EdgeSet.complete(size) if support is None else support


def _symmetricSupport(size: int, support: Optional[EdgeSet]) -> EdgeSet:
	edges: EdgeSet = _support(size, support)
	if not edges.isSymmetric:
		raise AsymmetricSupportError("A symmetric support is required.")
	return edges


def _symmetricUniform(rng: np.random.Generator, size: int) -> MATRIX_TYPE:
	upper: MATRIX_TYPE = np.triu(rng.uniform(LOW, HIGH, (size, size)))
	return upper + np.triu(upper, 1).T


def randomKernel(rng: np.random.Generator, size: int, support: Optional[EdgeSet] = None) -> Kernel:
	"""
	A kernel with uniform(0.1, 1) entries on the support, rows normalized.

	Args:
		rng: The random generator.
		size: The number of states.
		support: A strongly connected support, or None for all edges.

	Returns:
		The kernel.
	"""
	edges: EdgeSet = _support(size, support)
	matrix: MATRIX_TYPE = np.where(edges.mask, rng.uniform(LOW, HIGH, (size, size)), 0.0)
	return validateKernel(matrix / matrix.sum(axis=1, keepdims=True), support=edges)


def randomPositiveFunction(
	rng: np.random.Generator, size: int, support: Optional[EdgeSet] = None
) -> PositiveEdgeFunction:
	"""A function with uniform(0.1, 2) values on the support."""
	edges: EdgeSet = _support(size, support)
	return PositiveEdgeFunction(np.where(edges.mask, rng.uniform(LOW, 2.0, (size, size)), 0.0), edges)


def randomSymmetricFunction(rng: np.random.Generator, support: EdgeSet) -> EdgeFunction:
	"""A symmetric function with standard normal values."""
	values: MATRIX_TYPE = rng.normal(size=(support.size, support.size))
	return EdgeFunction.onSupport(np.triu(values) + np.triu(values, 1).T, support)


def randomSkewFunction(rng: np.random.Generator, support: EdgeSet) -> EdgeFunction:
	"""A function with g(x, x') = -g(x', x), zero on self-loops."""
	values: MATRIX_TYPE = np.triu(rng.normal(size=(support.size, support.size)), 1)
	return EdgeFunction.onSupport(values - values.T, support)


def randomGradientFunction(rng: np.random.Generator, support: EdgeSet) -> EdgeFunction:
	"""A function f(x') - f(x) for a standard normal potential f."""
	potential: VECTOR_TYPE = rng.normal(size=support.size)
	return EdgeFunction.onSupport(potential[None, :] - potential[:, None], support)


def randomReversibleFunction(
	rng: np.random.Generator, size: int, support: Optional[EdgeSet] = None, scale: float = 0.5
) -> PositiveEdgeFunction:
	"""
	A reversible positive function exp(s(x, x') + f(x') - f(x) + c).

	Args:
		rng: The random generator.
		size: The number of states.
		support: A symmetric support, or None for all edges.
		scale: The standard deviation of s, f and c.

	Returns:
		The function.
	"""
	edges: EdgeSet = _symmetricSupport(size, support)
	symmetric: MATRIX_TYPE = scale * randomSymmetricFunction(rng, edges).matrix
	gradient: MATRIX_TYPE = scale * randomGradientFunction(rng, edges).matrix
	logValues: MATRIX_TYPE = symmetric + gradient + scale * rng.normal()
	return PositiveEdgeFunction(np.where(edges.mask, np.exp(logValues), 0.0), edges)


def randomReversibleKernel(rng: np.random.Generator, size: int, support: Optional[EdgeSet] = None) -> Kernel:
	"""
	A reversible kernel S(x, x')/Σ S(x, ·) for a random symmetric positive S.

	Args:
		rng: The random generator.
		size: The number of states.
		support: A symmetric support, or None for all edges.

	Returns:
		The kernel, whose stationary distribution is proportional to the row sums of S.
	"""
	edges: EdgeSet = _symmetricSupport(size, support)
	weights: MATRIX_TYPE = np.where(edges.mask, _symmetricUniform(rng, size), 0.0)
	return validateKernel(weights / weights.sum(axis=1, keepdims=True), support=edges)


def randomSymmetricKernel(rng: np.random.Generator, size: int) -> Kernel:
	"""
	A symmetric kernel with full support.

	Off-diagonal entries are uniform(0.1, 1), scaled so each off-diagonal row sum stays below 1.
	The diagonal takes the remaining mass.

	Args:
		rng: The random generator.
		size: The number of states.

	Returns:
		The kernel.
	"""
	offDiagonal: MATRIX_TYPE = _symmetricUniform(rng, size)
	np.fill_diagonal(offDiagonal, 0.0)
	largest: float = float(offDiagonal.sum(axis=1).max())
	offDiagonal = offDiagonal * rng.uniform(0.5, 0.95) / largest
	matrix: MATRIX_TYPE = offDiagonal + np.diag(1.0 - offDiagonal.sum(axis=1))
	return validateKernel(matrix)


def randomMemorylessKernel(rng: np.random.Generator, size: int) -> Kernel:
	"""The kernel 1ᵀπ for a random strictly positive π."""
	return memorylessKernel(rng.uniform(LOW, HIGH, size))


def randomReversibleFromExpectation(rng: np.random.Generator, support: EdgeSet) -> Kernel:
	"""
	A reversible kernel drawn through random expectation coordinates.

	Random positive weights, one per chart index plus one for the excluded edge, are normalized
	to 1 and mapped to η_ij = (1 + δ_ij) w_ij.

	Args:
		rng: The random generator.
		support: A symmetric, strongly connected support.

	Returns:
		The kernel.
	"""
	indices = support.chartIndices()
	weights: VECTOR_TYPE = rng.uniform(LOW, HIGH, len(indices) + 1)
	weights = weights / weights.sum()
	eta: list[float] = [(2.0 if i == j else 1.0) * weight for (i, j), weight in zip(indices, weights)]
	return kernelFromExpectation(ExpectationCoords(np.asarray(eta), support))
