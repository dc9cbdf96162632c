# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.


# Future Modules:
from __future__ import annotations

# Built-in Modules:
import logging
import math
from collections.abc import Callable, Sequence
from itertools import permutations
from typing import Any, Optional

# Third-party Modules:
import numpy as np
import numpy.typing as npt
from scipy.special import softmax

# Local Modules:
from . import LITERAL_FAMILY_TAGS
from .chaindata.objects import (
	EdgeFunction,
	EdgeMeasure,
	EdgeSet,
	EFamilySpec,
	ExperimentReport,
	Kernel,
	SimplexPoint,
)
from .core import (
	marginalImbalance,
	memorylessKernel,
	timeReversal,
	validateEdgeMeasure,
	validateKernel,
)
from .errors import (
	InvalidSizeError,
	NotSymmetricError,
	ParameterRangeError,
	SupportMismatchError,
	TooLargeError,
)
from .geometry import basisFunction, eGeodesic, efamilyKernel, fisherMetric, mGeodesic, reversibleBasis
from .projections import bisectionCheck, eProjection, klDivergence, mProjection
from .reversibility import REVERSIBILITY_TOLERANCE, balanceResidual, shiftSpaceBasis
from .sampling import randomSymmetricKernel
from .typedef import MATRIX_TYPE, VECTOR_TYPE
from .utils import RANK_TOLERANCE, maxAbs, numericalRank


FAMILY_ALIASES: dict[str, LITERAL_FAMILY_TAGS] = {
	"rev": "reversible",
	"sym": "symmetric",
	"bis": "bistochastic",
	"iid": "memoryless",
}
COUNTEREXAMPLE_START: tuple[tuple[int, ...], ...] = ((1, 1, 2), (2, 1, 2), (1, 3, 1))
COUNTEREXAMPLE_END: tuple[tuple[int, ...], ...] = ((1, 3, 1), (2, 1, 2), (2, 1, 1))
COUNTEREXAMPLE_IMBALANCE: float = 1e-3
HULL_T: float = 0.25
MAX_BIRKHOFF_STATES: int = 6
TANGENT_STEP: float = 1e-5
FISHER_TOLERANCE: float = 1e-4
CLOSED_FORM_TOLERANCE: float = 1e-10


logger: logging.Logger = logging.getLogger(__name__)


def familyMembership(kernel: Kernel, tag: LITERAL_FAMILY_TAGS, tol: float = REVERSIBILITY_TOLERANCE) -> bool:
	"""
	Tests whether a kernel belongs to one of the remarkable families.

	Args:
		kernel: The kernel.
		tag: One of "reversible", "symmetric", "bistochastic", or "memoryless".
		tol: The tolerance of the test.

	Returns:
		True if the kernel is a member.
	"""
	matrix: MATRIX_TYPE = kernel.matrix
	if tag == "reversible":
		return balanceResidual(kernel) <= tol
	if tag == "symmetric":
		return maxAbs(matrix - matrix.T) <= tol
	if tag == "bistochastic":
		return maxAbs(matrix.sum(axis=0) - 1.0) <= tol
	if tag == "memoryless":
		return maxAbs(matrix - matrix[0][None, :]) <= tol
	raise ParameterRangeError(f"Unknown family {tag!r}.")


def familyDimension(tag: LITERAL_FAMILY_TAGS, size: int) -> int:
	"""The dimension of a family of positive kernels over size states."""
	dimensions: dict[str, int] = {
		"reversible": size * (size + 1) // 2 - 1,
		"symmetric": size * (size - 1) // 2,
		"bistochastic": (size - 1) ** 2,
		"memoryless": size - 1,
	}
	return dimensions[tag]


def _pairIndices(size: int) -> list[tuple[int, int]]:
	return [(i, j) for i in range(size) for j in range(i + 1, size)]


def flatteningMaps(size: int) -> tuple[MATRIX_TYPE, MATRIX_TYPE]:
	"""
	The two column stochastic maps between reversible edge measures and the pair simplex.

	Edge measures are vectorized row by row. Simplex coordinates list the diagonal first, then the pairs
	i < j in lexicographic order.

	Args:
		size: The number of states.

	Returns:
		The flattening map (m(m+1)/2 by m²) and the embedding map (m² by m(m+1)/2).
		Their product flattening @ embedding is the identity.
	"""
	pairs: list[tuple[int, int]] = _pairIndices(size)
	count: int = size + len(pairs)
	flatten: MATRIX_TYPE = np.zeros((count, size * size))
	embed: MATRIX_TYPE = np.zeros((size * size, count))
	for state in range(size):
		flatten[state, state * size + state] = 1.0
		embed[state * size + state, state] = 1.0
	for offset, (i, j) in enumerate(pairs, start=size):
		for cell in (i * size + j, j * size + i):
			flatten[offset, cell] = 1.0
			embed[cell, offset] = 0.5
	return flatten, embed


def flattenMatrix(matrix: npt.ArrayLike) -> VECTOR_TYPE:
	"""Applies the flattening map to a square matrix."""
	array = np.asarray(matrix, dtype=np.float64)
	flatten, _ = flatteningMaps(array.shape[0])
	return flatten @ array.reshape(-1)


def flattenReversible(measure: EdgeMeasure, tol: float = REVERSIBILITY_TOLERANCE) -> SimplexPoint:
	"""
	Maps a reversible edge measure to the pair simplex.

	Args:
		measure: A symmetric edge measure with full support.
		tol: The symmetry tolerance.

	Returns:
		(Q(1,1), ..., Q(m,m), 2Q(1,2), ..., 2Q(m-1,m)).

	Raises:
		NotSymmetricError: The measure is not symmetric.
		SupportMismatchError: The support is not complete.
	"""
	if len(measure.support) != measure.size**2:
		raise SupportMismatchError("Flattening requires a full support.")
	asymmetry: float = maxAbs(measure.matrix - measure.matrix.T)
	if asymmetry > tol:
		raise NotSymmetricError(f"The edge measure is asymmetric by {asymmetry:.3g}.")
	return SimplexPoint(flattenMatrix(measure.matrix))


def unflattenReversible(point: SimplexPoint) -> EdgeMeasure:
	"""
	Maps a point of the pair simplex back to a symmetric edge measure.

	Args:
		point: The simplex point.

	Returns:
		The edge measure.
	"""
	size: int = point.stateCount
	_, embed = flatteningMaps(size)
	return validateEdgeMeasure((embed @ point.probabilities).reshape(size, size))


def _integerMeasure(rows: Sequence[Sequence[int]], size: int) -> MATRIX_TYPE:
	padded: MATRIX_TYPE = np.ones((size, size))
	padded[:3, :3] = np.asarray(rows, dtype=np.float64)
	return padded / padded.sum()


def paddedCounterexampleEdgeMeasures(size: int) -> tuple[EdgeMeasure, EdgeMeasure, MATRIX_TYPE]:
	"""
	Two balanced edge measures whose e-geodesic midpoint is unbalanced.

	The three-state integer matrices are padded with ones for larger state spaces and normalized.

	Args:
		size: The number of states, at least 3.

	Returns:
		Both endpoints, and the normalized midpoint proportional to sqrt(Q0∘Q1).
	"""
	if size < 3:
		raise InvalidSizeError(f"The counterexample needs at least 3 states, got {size}.")
	start: EdgeMeasure = validateEdgeMeasure(_integerMeasure(COUNTEREXAMPLE_START, size))
	end: EdgeMeasure = validateEdgeMeasure(_integerMeasure(COUNTEREXAMPLE_END, size))
	midpoint: MATRIX_TYPE = np.sqrt(start.matrix * end.matrix)
	return start, end, midpoint / midpoint.sum()


def counterexampleEdgeMeasures() -> tuple[EdgeMeasure, EdgeMeasure, MATRIX_TYPE]:
	"""The three-state counterexample showing edge measures are not an e-family."""
	return paddedCounterexampleEdgeMeasures(3)


def _checkOpenUnit(name: str, value: float) -> None:
	if not 0.0 < value < 1.0:
		raise ParameterRangeError(f"{name} must lie strictly between 0 and 1, got {value!r}.")


def memorylessMixtureCounterexample(size: int, p: float) -> tuple[Kernel, Kernel, Kernel]:
	"""
	Two memoryless kernels whose m-geodesic midpoint is not memoryless.

	The rows are π_p = (p, 1 - p, 1, ..., 1)/(m - 1) and π_(1-p).

	Args:
		size: The number of states, at least 2.
		p: The parameter, in (0, 1).

	Returns:
		Both endpoints and the midpoint.
	"""
	if size < 2:
		raise InvalidSizeError(f"At least two states are required, got {size}.")
	_checkOpenUnit("p", p)
	weights: VECTOR_TYPE = np.ones(size)
	weights[:2] = (p, 1.0 - p)
	start: Kernel = memorylessKernel(weights)
	weights[:2] = (1.0 - p, p)
	end: Kernel = memorylessKernel(weights)
	return start, end, mGeodesic(start, end, 0.5)


def symmetricGeodesicCounterexample(alpha: float, size: int = 3) -> tuple[Kernel, Kernel, Kernel]:
	"""
	Two symmetric kernels whose e-geodesic midpoint is not symmetric.

	For more than three states, each kernel P is padded as (1/m)[[3P, 1], [1, 1]].

	Args:
		alpha: The free parameter, in (0, 2/3).
		size: The number of states, at least 3.

	Returns:
		Both endpoints and the midpoint.
	"""
	if size < 3:
		raise InvalidSizeError(f"The counterexample needs at least 3 states, got {size}.")
	if not 0.0 < alpha < 2.0 / 3.0:
		raise ParameterRangeError(f"alpha must lie strictly between 0 and 2/3, got {alpha!r}.")
	third: float = 1.0 / 3.0
	base: MATRIX_TYPE = np.asarray(
		[[alpha, 2.0 * third - alpha, third], [2.0 * third - alpha, alpha, third], [third, third, third]]
	)
	kernels: list[Kernel] = []
	for block in (base, np.full((3, 3), third)):
		padded: MATRIX_TYPE = np.ones((size, size))
		padded[:3, :3] = 3.0 * block
		kernels.append(validateKernel(padded / size))
	start, end = kernels
	return start, end, eGeodesic(start, end, 0.5)


def iidFamilyCoordinates(kernel: Kernel) -> tuple[VECTOR_TYPE, VECTOR_TYPE]:
	"""
	The coordinates of a positive kernel in the parametrization adapted to memoryless kernels.

	θⁱ = log[P(m, i)P(i, m)/P(m, m)²] and θ^ij = log[P(i, j)P(m, m)/(P(m, j)P(i, m))] for i, j < m.

	Args:
		kernel: A kernel with full support.

	Returns:
		The m - 1 values θⁱ, and the (m - 1)² values θ^ij in lexicographic order.
		All θ^ij vanish exactly when the kernel is memoryless.

	Raises:
		SupportMismatchError: The support is not complete.
	"""
	size: int = kernel.size
	if len(kernel.support) != size**2:
		raise SupportMismatchError("These coordinates require a full support.")
	logs: MATRIX_TYPE = np.log(kernel.matrix)
	last: int = size - 1
	head = slice(0, last)
	single: VECTOR_TYPE = logs[last, head] + logs[head, last] - 2.0 * logs[last, last]
	pairs: MATRIX_TYPE = logs[head, head] + logs[last, last]
	pairs = pairs - logs[last, head][None, :] - logs[head, last][:, None]
	return single, pairs.reshape(-1)


def lazyCycleKernel(size: int, theta1: float, theta2: float) -> Kernel:
	"""
	The biased lazy random walk on the cycle.

	Args:
		size: The number of states, at least 3.
		theta1: The laziness parameter.
		theta2: The bias parameter.

	Returns:
		The kernel with P(x, x) ∝ e^θ1, P(x, x+1) ∝ e^θ2 and P(x+1, x) ∝ e^-θ2.
	"""
	if size < 3:
		raise InvalidSizeError(f"The lazy cycle needs at least 3 states, got {size}.")
	total: float = math.exp(theta1) + math.exp(theta2) + math.exp(-theta2)
	matrix: MATRIX_TYPE = np.zeros((size, size))
	for state in range(size):
		matrix[state, state] = math.exp(theta1) / total
		matrix[state, (state + 1) % size] = math.exp(theta2) / total
		matrix[state, (state - 1) % size] = math.exp(-theta2) / total
	return validateKernel(matrix)


def lazyCycleFamily(size: int, theta: npt.ArrayLike, biased: bool = True) -> EFamilySpec:
	"""
	The lazy random walks on the cycle as an exponential family.

	Args:
		size: The number of states, at least 3.
		theta: (θ1, θ2), or (θ1,) when unbiased.
		biased: False restricts the family to the laziness generator.

	Returns:
		The family with zero carrier on the cycle support.
	"""
	if size < 3:
		raise InvalidSizeError(f"The lazy cycle needs at least 3 states, got {size}.")
	support: EdgeSet = EdgeSet.cycle(size)
	laziness: MATRIX_TYPE = np.eye(size)
	bias: MATRIX_TYPE = np.zeros((size, size))
	for state in range(size):
		bias[state, (state + 1) % size] += 1.0
		bias[(state + 1) % size, state] -= 1.0
	generators: list[EdgeFunction] = [EdgeFunction(laziness, support)]
	if biased:
		generators.append(EdgeFunction(bias, support))
	zero = EdgeFunction(np.zeros((size, size)), support)
	return EFamilySpec(zero, tuple(generators), np.asarray(theta, dtype=np.float64))


def birthDeathFamily(size: int, theta: Optional[npt.ArrayLike] = None) -> EFamilySpec:
	"""
	The birth-and-death chains as an exponential family with the symmetric generators g_ij.

	Args:
		size: The number of states.
		theta: The natural coordinates, zero by default.

	Returns:
		The family of dimension 2m - 2.
	"""
	support: EdgeSet = EdgeSet.birthDeath(size)
	basis: list[EdgeFunction] = reversibleBasis(support)
	values = np.zeros(len(basis)) if theta is None else np.asarray(theta, dtype=np.float64)
	zero = EdgeFunction(np.zeros((size, size)), support)
	return EFamilySpec(zero, tuple(basis), values)


def _requireHullSize(size: int) -> None:
	if size < 3:
		raise InvalidSizeError(
			f"Symmetric kernels generate the reversible family only from 3 states, got {size}."
		)


def hullKernel(size: int, pair: tuple[int, int], t: float) -> Kernel:
	"""
	The symmetric kernel P_ij,t used to generate the reversible family.

	Args:
		size: The number of states.
		pair: The 0-based states (i, j), i ≠ j.
		t: The parameter, in (0, 1).

	Returns:
		The kernel equal to 2(1 - t)/m on (i, i) and (j, j), 2t/m on (i, j) and (j, i), and 1/m elsewhere.
	"""
	i, j = pair
	matrix: MATRIX_TYPE = np.full((size, size), 1.0 / size)
	matrix[i, i] = matrix[j, j] = 2.0 * (1.0 - t) / size
	matrix[i, j] = matrix[j, i] = 2.0 * t / size
	return validateKernel(matrix)


def hullGeneratorResidual(size: int, t: float = HULL_T) -> float:
	"""
	Rebuilds every g_ij from logarithms of symmetric kernels and reports the worst error.

	With a = log 2(1 - t) and b = log 2t, the shifted logs ĥ of P_ij,t and h̃ of P_ij,1-t give
	g_ij = (bĥ - ah̃)/(b² - a²) and h_ij = (aĥ - bh̃)/(a² - b²) = δᵢᵀδᵢ + δⱼᵀδⱼ.
	The diagonal g_jj then follow from the h_ij and the identity 1ᵀ1 - Σ g_ij.

	Args:
		size: The number of states, at least 3.
		t: The parameter, in (0, 1) and not 1/2.

	Returns:
		The largest entrywise error over all g_ij with (i, j) in T(X²).
	"""
	_requireHullSize(size)
	_checkOpenUnit("t", t)
	if t == 0.5:
		raise ParameterRangeError("t = 1/2 makes both kernels equal.")
	a: float = math.log(2.0 * (1.0 - t))
	b: float = math.log(2.0 * t)
	support: EdgeSet = EdgeSet.complete(size)
	offDiagonal: dict[tuple[int, int], MATRIX_TYPE] = {}
	diagonalPairs: dict[tuple[int, int], MATRIX_TYPE] = {}
	for i in range(size):
		for j in range(i):
			hat: MATRIX_TYPE = math.log(size) + np.log(hullKernel(size, (i, j), t).matrix)
			tilde: MATRIX_TYPE = math.log(size) + np.log(hullKernel(size, (i, j), 1.0 - t).matrix)
			offDiagonal[(i, j)] = (b * hat - a * tilde) / (b**2 - a**2)
			diagonalPairs[(i, j)] = (a * hat - b * tilde) / (a**2 - b**2)
	identity: MATRIX_TYPE = np.ones((size, size)) - sum(offDiagonal.values(), np.zeros((size, size)))
	error: float = 0.0
	for (i, j), recovered in offDiagonal.items():
		error = max(error, maxAbs(recovered - basisFunction((i, j), support).matrix))
	for state in range(size):
		total: MATRIX_TYPE = sum(
			(matrix for (i, j), matrix in diagonalPairs.items() if state in (i, j)), np.zeros((size, size))
		)
		recovered = 2.0 / (size - 2) * (total - identity)
		error = max(error, maxAbs(recovered - basisFunction((state, state), support).matrix))
	return error


def ehullRankExperiment(size: int, samples: int, seed: int) -> tuple[int, int]:
	"""
	Measures the span of the logarithms of random symmetric kernels, together with N.

	Args:
		size: The number of states, at least 3.
		samples: The number of symmetric kernels.
		seed: The random seed.

	Returns:
		The numerical rank and the dimension (m(m+1)/2 - 1) + m of the reversible functions.
	"""
	_requireHullSize(size)
	rng: np.random.Generator = np.random.default_rng(seed)
	support: EdgeSet = EdgeSet.complete(size)
	rows: list[VECTOR_TYPE] = [
		np.log(randomSymmetricKernel(rng, size).matrix).reshape(-1) for _ in range(samples)
	]
	rows.extend(function.matrix.reshape(-1) for function in shiftSpaceBasis(support))
	rank: int = numericalRank(rows)
	expected: int = size * (size + 1) // 2 - 1 + size
	logger.debug(f"e-hull rank {rank} of {expected} from {samples} samples over {size} states.")
	return rank, expected


def mhullRank(size: int, epsilon: float) -> tuple[int, int]:
	"""
	Measures the span of the edge measures of the mixtures π_ij,ε.

	π_ij,ε = (ε/m)1 + (1 - ε)(δᵢ + δⱼ)/2 for i ≥ j, with edge measure π_ij,ε(x)π_ij,ε(x').

	Args:
		size: The number of states, at least 2.
		epsilon: The mixing weight, in [0, 1].

	Returns:
		The numerical rank of the flattened measures and m(m+1)/2.
	"""
	if size < 2:
		raise InvalidSizeError(f"At least two states are required, got {size}.")
	if not 0.0 <= epsilon <= 1.0:
		raise ParameterRangeError(f"epsilon must lie in [0, 1], got {epsilon!r}.")
	rows: list[VECTOR_TYPE] = []
	for i in range(size):
		for j in range(i + 1):
			corner: VECTOR_TYPE = np.zeros(size)
			corner[i] += 0.5
			corner[j] += 0.5
			pi: VECTOR_TYPE = epsilon / size + (1.0 - epsilon) * corner
			rows.append(flattenMatrix(np.outer(pi, pi)))
	return numericalRank(rows, RANK_TOLERANCE), size * (size + 1) // 2


def mhullBasisExperiment(size: int, epsilon: float) -> bool:
	"""True if the mixtures π_ij,ε yield a basis of the symmetric edge measures."""
	rank, expected = mhullRank(size, epsilon)
	return rank == expected


def largestFullRankEpsilon(size: int, candidates: Optional[Sequence[float]] = None) -> Optional[float]:
	"""
	The largest mixing weight whose mixtures still form a basis.

	Args:
		size: The number of states.
		candidates: The weights to try, by default a grid refined towards 1.

	Returns:
		The largest passing candidate, or None if none pass.
	"""
	if candidates is None:
		candidates = [*np.linspace(0.0, 0.9, 10), *(1.0 - np.logspace(-2, -12, 11))]
	passing: list[float] = [float(epsilon) for epsilon in candidates if mhullBasisExperiment(size, epsilon)]
	return max(passing) if passing else None


def _reversibleChart(size: int) -> tuple[int, Callable[[VECTOR_TYPE], MATRIX_TYPE]]:
	upper = np.triu_indices(size)

	def kernel(parameters: VECTOR_TYPE) -> MATRIX_TYPE:
		weights: MATRIX_TYPE = np.zeros((size, size))
		weights[upper] = parameters
		weights = weights + np.triu(weights, 1).T
		return weights / weights.sum(axis=1, keepdims=True)

	return len(upper[0]), kernel


def _symmetricChart(size: int) -> tuple[int, Callable[[VECTOR_TYPE], MATRIX_TYPE]]:
	upper = np.triu_indices(size, 1)

	def kernel(parameters: VECTOR_TYPE) -> MATRIX_TYPE:
		offDiagonal: MATRIX_TYPE = np.zeros((size, size))
		offDiagonal[upper] = parameters
		offDiagonal = offDiagonal + offDiagonal.T
		return offDiagonal + np.diag(1.0 - offDiagonal.sum(axis=1))

	return len(upper[0]), kernel


def _bistochasticChart(size: int) -> tuple[int, Callable[[VECTOR_TYPE], MATRIX_TYPE]]:
	if size > MAX_BIRKHOFF_STATES:
		raise TooLargeError(f"Permutation mixtures are limited to {MAX_BIRKHOFF_STATES} states.")
	identity: MATRIX_TYPE = np.eye(size)
	vertices: list[MATRIX_TYPE] = [identity[list(order)] for order in permutations(range(size))]

	def kernel(parameters: VECTOR_TYPE) -> MATRIX_TYPE:
		mixture: MATRIX_TYPE = np.tensordot(parameters, vertices, axes=1)
		return mixture / float(np.sum(parameters))

	return len(vertices), kernel


def _memorylessChart(size: int) -> tuple[int, Callable[[VECTOR_TYPE], MATRIX_TYPE]]:
	def kernel(parameters: VECTOR_TYPE) -> MATRIX_TYPE:
		return np.tile(softmax(parameters), (size, 1))

	return size, kernel


def tangentRank(tag: LITERAL_FAMILY_TAGS, size: int, samples: int = 1, seed: int = 0) -> int:
	"""
	The numerical rank of a family's tangent space at random positive members.

	Each family is given an over-complete parametrization whose Jacobian is taken by central differences.

	Args:
		tag: The family.
		size: The number of states.
		samples: The number of random base points.
		seed: The random seed.

	Returns:
		The largest rank over the base points.
	"""
	charts: dict[str, Callable[[int], tuple[int, Callable[[VECTOR_TYPE], MATRIX_TYPE]]]] = {
		"reversible": _reversibleChart,
		"symmetric": _symmetricChart,
		"bistochastic": _bistochasticChart,
		"memoryless": _memorylessChart,
	}
	count, kernel = charts[tag](size)
	rng: np.random.Generator = np.random.default_rng(seed)
	# Off-diagonal weights of symmetric kernels must keep every row sum below 1.
	high: float = 0.9 / size if tag == "symmetric" else 1.0
	best: int = 0
	for _ in range(samples):
		base: VECTOR_TYPE = rng.uniform(0.1 * high, high, count)
		columns: list[VECTOR_TYPE] = []
		for index in range(count):
			step: VECTOR_TYPE = np.zeros(count)
			step[index] = TANGENT_STEP
			columns.append((kernel(base + step) - kernel(base - step)).reshape(-1) / (2.0 * TANGENT_STEP))
		best = max(best, numericalRank(columns))
	return best


def experimentReport(
	experiment: str,
	params: dict[str, Any],
	rank: Optional[int],
	expected: Optional[int],
	passed: Optional[bool] = None,
	**extras: Any,
) -> ExperimentReport:
	"""
	Builds a report, passing when the rank matches unless a verdict is given.

	Args:
		experiment: The experiment name.
		params: The parameters it ran with.
		rank: The measured rank, if any.
		expected: The expected rank, if any.
		passed: An explicit verdict, or None to compare rank with expected.
		**extras: Experiment specific values.

	Returns:
		The report.
	"""
	verdict: bool = rank == expected if passed is None else passed
	if not verdict:
		logger.info(f"Experiment {experiment} failed with parameters {params}.")
	return ExperimentReport(experiment, params, rank, expected, verdict, dict(extras))


def hullsReport(
	size: int, seed: int, samples: int = 40, epsilon: float = 0.01, t: float = HULL_T
) -> list[ExperimentReport]:
	"""
	Runs both hull experiments.

	Args:
		size: The number of states, at least 3.
		seed: The random seed of the e-hull samples.
		samples: The number of symmetric kernels.
		epsilon: The mixing weight of the m-hull experiment.
		t: The parameter of the generator reconstruction.

	Returns:
		The e-hull report and the m-hull report.
	"""
	rank, expected = ehullRankExperiment(size, samples, seed)
	residual: float = hullGeneratorResidual(size, t)
	ehull = experimentReport(
		"ehull",
		{"m": size, "samples": samples, "seed": seed, "t": t},
		rank,
		expected,
		passed=rank == expected and residual <= 1e-9,
		generator_residual=residual,
	)
	mRank, mExpected = mhullRank(size, epsilon)
	mhull = experimentReport(
		"mhull",
		{"m": size, "epsilon": epsilon},
		mRank,
		mExpected,
		largest_full_rank_epsilon=largestFullRankEpsilon(size),
	)
	return [ehull, mhull]


def counterexampleReport(size: int = 3, p: float = 0.3, alpha: float = 0.2) -> list[ExperimentReport]:
	"""
	Evaluates the three counterexample constructions.

	Args:
		size: The number of states, at least 3.
		p: The memoryless construction parameter.
		alpha: The symmetric construction parameter.

	Returns:
		Reports for the edge measure, memoryless, and symmetric counterexamples.
	"""
	start, end, midpoint = paddedCounterexampleEdgeMeasures(size)
	endpointImbalance: float = max(marginalImbalance(start.matrix), marginalImbalance(end.matrix))
	midpointImbalance: float = marginalImbalance(midpoint)
	edges = experimentReport(
		"edge_measure_counterexample",
		{"m": size},
		None,
		None,
		passed=endpointImbalance <= 1e-12 and midpointImbalance > COUNTEREXAMPLE_IMBALANCE,
		endpoint_imbalance=endpointImbalance,
		midpoint_imbalance=midpointImbalance,
		midpoint=midpoint,
	)
	*_, mixture = memorylessMixtureCounterexample(size, p)
	memoryless = experimentReport(
		"memoryless_counterexample",
		{"m": size, "p": p},
		None,
		None,
		passed=not familyMembership(mixture, "memoryless"),
		midpoint_max_theta=maxAbs(iidFamilyCoordinates(mixture)[1]),
	)
	*_, geodesicMidpoint = symmetricGeodesicCounterexample(alpha, size)
	symmetric = experimentReport(
		"symmetric_counterexample",
		{"m": size, "alpha": alpha},
		None,
		None,
		passed=not familyMembership(geodesicMidpoint, "symmetric"),
		midpoint_asymmetry=maxAbs(geodesicMidpoint.matrix - geodesicMidpoint.matrix.T),
	)
	return [edges, memoryless, symmetric]


def _lazyFisherClosedForm(theta1: float, theta2: float) -> float:
	total: float = math.exp(theta1) + math.exp(theta2) + math.exp(-theta2)
	even: float = (math.exp(theta2) + math.exp(-theta2)) / total
	odd: float = (math.exp(theta2) - math.exp(-theta2)) / total
	return even - odd**2


def lazyCycleReport(
	size: int = 3, theta: tuple[float, float] = (0.0, math.log(2.0))
) -> list[ExperimentReport]:
	"""
	Checks the lazy cycle against its closed forms.

	Args:
		size: The number of states, at least 3.
		theta: (θ1, θ2).

	Returns:
		A single report.
	"""
	theta1, theta2 = theta
	kernel: Kernel = lazyCycleKernel(size, theta1, theta2)
	family: EFamilySpec = lazyCycleFamily(size, theta)
	mixed: Kernel = mProjection(kernel)
	geometric: Kernel = eProjection(kernel)
	errors: dict[str, float] = {
		"family_error": maxAbs(efamilyKernel(family).matrix - kernel.matrix),
		"reversal_error": maxAbs(timeReversal(kernel).matrix - lazyCycleKernel(size, theta1, -theta2).matrix),
		"m_projection_error": maxAbs(
			mixed.matrix - lazyCycleKernel(size, theta1 - math.log(math.cosh(theta2)), 0.0).matrix
		),
		"e_projection_error": maxAbs(geometric.matrix - lazyCycleKernel(size, theta1, 0.0).matrix),
	}
	fisher: float = float(fisherMetric(family)[1, 1])
	closedForm: float = _lazyFisherClosedForm(theta1, theta2)
	mGap, eGap = bisectionCheck(kernel)
	passed: bool = (
		max(errors.values()) <= CLOSED_FORM_TOLERANCE
		and abs(fisher - closedForm) <= FISHER_TOLERANCE
		and max(mGap, eGap) <= REVERSIBILITY_TOLERANCE
	)
	report = experimentReport(
		"lazycycle",
		{"m": size, "theta": list(theta)},
		None,
		None,
		passed=passed,
		kernel=kernel.matrix,
		m_projection=mixed.matrix,
		e_projection=geometric.matrix,
		divergence_to_m_projection=klDivergence(kernel, mixed).finite(),
		fisher_22=fisher,
		fisher_22_closed_form=closedForm,
		bisection_gaps=[mGap, eGap],
		**errors,
	)
	return [report]
