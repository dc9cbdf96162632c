# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.


# Future Modules:
from __future__ import annotations

# Built-in Modules:
import logging
from typing import Optional

# Third-party Modules:
import networkx as nx
import numpy as np
import numpy.typing as npt
from scipy.linalg import LinAlgError, solve

# Local Modules:
from .chaindata.objects import Distribution, EdgeMeasure, EdgeSet, Kernel
from .errors import (
	DegenerateMarginalError,
	InvalidSizeError,
	NotIrreducibleError,
	NotStochasticError,
	NumericalFailureError,
	SupportMismatchError,
	UnbalancedMarginalsError,
)
from .typedef import MATRIX_TYPE, VECTOR_TYPE


ZERO_THRESHOLD: float = 1e-12
ROW_SUM_TOLERANCE: float = 1e-9  # Rows further than this from 1 are rejected, not renormalized.
STATIONARY_TOLERANCE: float = 1e-10
MARGINAL_TOLERANCE: float = 1e-9


logger: logging.Logger = logging.getLogger(__name__)


def supportGraph(support: EdgeSet) -> nx.DiGraph:
	"""
	The directed graph of an edge set.

	Args:
		support: The edge set.

	Returns:
		A graph on the nodes 0..size-1 with one arc per edge.
	"""
	graph = nx.DiGraph()
	graph.add_nodes_from(range(support.size))
	graph.add_edges_from(support.edges)
	return graph


def strongConnectivity(edges: EdgeSet) -> bool:
	"""
	Determines whether a single strongly connected component covers every state.

	Args:
		edges: The edge set.

	Returns:
		True if the support graph is strongly connected.
	"""
	return bool(nx.is_strongly_connected(supportGraph(edges)))


def cycleSupport(size: int) -> EdgeSet:
	return EdgeSet.cycle(size)


def birthDeathSupport(size: int) -> EdgeSet:
	return EdgeSet.birthDeath(size)


def _squareArray(matrix: npt.ArrayLike, zeroThreshold: float) -> MATRIX_TYPE:
	"""
	Converts input to a clean non-negative square array.

	Entries at or below the zero threshold become structural zeros.
	"""
	array = np.array(matrix, dtype=np.float64)
	if array.ndim != 2 or array.shape[0] != array.shape[1]:
		raise InvalidSizeError(f"Expected a square matrix, got shape {array.shape}.")
	if array.shape[0] <= 1:
		raise InvalidSizeError("At least two states are required.")
	if not np.all(np.isfinite(array)):
		raise NotStochasticError("Matrix has non-finite entries.")
	if np.any(array < -zeroThreshold):
		raise NotStochasticError(f"Matrix has entries below -{zeroThreshold}.")
	array[array <= zeroThreshold] = 0.0
	return array


def _checkSupport(array: MATRIX_TYPE, support: Optional[EdgeSet]) -> EdgeSet:
	inferred: EdgeSet = EdgeSet.fromMask(array > 0.0)
	if support is not None and support != inferred:
		missing = sorted(support.edges - inferred.edges)
		extra = sorted(inferred.edges - support.edges)
		raise SupportMismatchError(
			f"Declared support disagrees with the values: "
			f"{len(missing)} declared edges are zero, {len(extra)} positive entries are undeclared."
		)
	if not strongConnectivity(inferred):
		raise NotIrreducibleError("The support graph is not strongly connected.")
	return inferred


def validateKernel(
	matrix: npt.ArrayLike,
	zeroThreshold: float = ZERO_THRESHOLD,
	support: Optional[EdgeSet] = None,
) -> Kernel:
	"""
	Builds a checked transition kernel.

	Args:
		matrix: A square matrix, row = source state.
		zeroThreshold: Entries at or below this value are structural zeros.
		support: The declared support, or None to infer it.

	Returns:
		The kernel, with rows renormalized to sum to 1.

	Raises:
		InvalidSizeError: The matrix is not square or has fewer than two states.
		NotStochasticError: An entry is negative or a row sum deviates from 1 by more than 1e-9.
		SupportMismatchError: The declared support disagrees with the positive entries.
		NotIrreducibleError: The support is not strongly connected.
	"""
	array: MATRIX_TYPE = _squareArray(matrix, zeroThreshold)
	rowSums: VECTOR_TYPE = array.sum(axis=1)
	deviation: float = float(np.max(np.abs(rowSums - 1.0)))
	if deviation > ROW_SUM_TOLERANCE:
		raise NotStochasticError(f"A row sum deviates from 1 by {deviation:.3g}.")
	inferred: EdgeSet = _checkSupport(array, support)
	if deviation > ZERO_THRESHOLD:
		logger.debug(f"Renormalizing rows deviating from 1 by up to {deviation:.3g}.")
	return Kernel(array / rowSums[:, None], inferred)


def validateEdgeMeasure(
	matrix: npt.ArrayLike,
	zeroThreshold: float = ZERO_THRESHOLD,
	support: Optional[EdgeSet] = None,
) -> EdgeMeasure:
	"""
	Builds a checked edge measure.

	Args:
		matrix: A square matrix of pair probabilities.
		zeroThreshold: Entries at or below this value are structural zeros.
		support: The declared support, or None to infer it.

	Returns:
		The edge measure, rescaled to total mass 1.

	Raises:
		NotStochasticError: An entry is negative or the total deviates from 1 by more than 1e-9.
		UnbalancedMarginalsError: Row and column marginals differ by more than 1e-9.
	"""
	array: MATRIX_TYPE = _squareArray(matrix, zeroThreshold)
	total: float = float(array.sum())
	if abs(total - 1.0) > ROW_SUM_TOLERANCE:
		raise NotStochasticError(f"Edge measure sums to {total!r}, not 1.")
	inferred: EdgeSet = _checkSupport(array, support)
	array = array / total
	imbalance: float = marginalImbalance(array)
	if imbalance > MARGINAL_TOLERANCE:
		raise UnbalancedMarginalsError(f"Row and column marginals differ by {imbalance:.3g}.")
	return EdgeMeasure(array, inferred)


def marginalImbalance(matrix: npt.ArrayLike) -> float:
	"""
	The largest gap between a row marginal and the matching column marginal.

	Args:
		matrix: A square matrix.

	Returns:
		max over x of |Σ_x' Q(x, x') - Σ_x' Q(x', x)|.
	"""
	array = np.asarray(matrix, dtype=np.float64)
	return float(np.max(np.abs(array.sum(axis=1) - array.sum(axis=0))))


def stationaryDistribution(kernel: Kernel) -> Distribution:
	"""
	Solves πP = π with Σπ = 1.

	The last equation of (Pᵀ - I)πᵀ = 0 is replaced by the normalization.

	Args:
		kernel: The kernel.

	Returns:
		The stationary distribution.

	Raises:
		NumericalFailureError: The solve is singular or its residual exceeds 1e-10.
	"""
	size: int = kernel.size
	system: MATRIX_TYPE = kernel.matrix.T - np.eye(size)
	system[-1, :] = 1.0
	rhs: VECTOR_TYPE = np.zeros(size)
	rhs[-1] = 1.0
	try:
		probabilities: VECTOR_TYPE = solve(system, rhs)
	except LinAlgError as e:
		raise NumericalFailureError(f"Stationary solve failed: {e}") from None
	probabilities = probabilities / probabilities.sum()
	residual: float = float(np.max(np.abs(probabilities @ kernel.matrix - probabilities)))
	if residual > STATIONARY_TOLERANCE or np.any(probabilities <= 0.0):
		raise NumericalFailureError(f"Stationary distribution is inaccurate (residual {residual:.3g}).")
	return Distribution(probabilities)


def timeReversal(kernel: Kernel) -> Kernel:
	"""
	The adjoint kernel P*(x, x') = π(x')P(x', x)/π(x).

	The entries are not compared against the zero threshold again, so a small
	π(x')P(x', x) stays on the transposed support.

	Args:
		kernel: The kernel.

	Returns:
		The time reversal, on the transposed support.

	Raises:
		NumericalFailureError: A row of the adjoint deviates from 1 by more than 1e-9.
	"""
	pi: VECTOR_TYPE = stationaryDistribution(kernel).probabilities
	adjoint: MATRIX_TYPE = kernel.matrix.T * pi[None, :] / pi[:, None]
	rowSums: VECTOR_TYPE = adjoint.sum(axis=1)
	deviation: float = float(np.max(np.abs(rowSums - 1.0)))
	if deviation > ROW_SUM_TOLERANCE:
		raise NumericalFailureError(f"A row of the time reversal deviates from 1 by {deviation:.3g}.")
	return Kernel(adjoint / rowSums[:, None], kernel.support.transpose())


def edgeMeasure(kernel: Kernel) -> EdgeMeasure:
	"""
	The stationary pair probabilities Q = diag(π)P.

	Args:
		kernel: The kernel.

	Returns:
		The edge measure, on the kernel's support.
	"""
	pi: VECTOR_TYPE = stationaryDistribution(kernel).probabilities
	return EdgeMeasure(pi[:, None] * kernel.matrix, kernel.support)


def kernelFromEdgeMeasure(measure: EdgeMeasure, zeroThreshold: float = ZERO_THRESHOLD) -> Kernel:
	"""
	Conditions an edge measure on its source state.

	Args:
		measure: The edge measure.
		zeroThreshold: Marginals at or below this value are rejected.

	Returns:
		The kernel P(x, x') = Q(x, x')/π(x), with π the row marginal.

	Raises:
		DegenerateMarginalError: A row marginal is at or below the zero threshold.
	"""
	marginal: VECTOR_TYPE = measure.matrix.sum(axis=1)
	if np.any(marginal <= zeroThreshold):
		state: int = int(np.argmin(marginal))
		raise DegenerateMarginalError(f"State {state + 1} has marginal {marginal[state]!r}.")
	return validateKernel(measure.matrix / marginal[:, None], zeroThreshold, support=measure.support)


def uniformKernel(size: int) -> Kernel:
	"""The kernel with every entry 1/size."""
	return validateKernel(np.full((size, size), 1.0 / size))


def memorylessKernel(probabilities: npt.ArrayLike) -> Kernel:
	"""
	The kernel 1ᵀπ whose every row is the given distribution.

	Args:
		probabilities: A strictly positive distribution.

	Returns:
		The kernel.
	"""
	pi = np.asarray(probabilities, dtype=np.float64)
	return validateKernel(np.tile(pi / pi.sum(), (pi.shape[0], 1)))
