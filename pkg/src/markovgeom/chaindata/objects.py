# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.


# Future Modules:
from __future__ import annotations

# Built-in Modules:
import sys
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import total_ordering
from typing import Any, Optional

# Third-party Modules:
import numpy as np
import numpy.typing as npt

# Local Modules:
from ..errors import AsymmetricSupportError, InvalidSizeError, NotIrreducibleError, SupportMismatchError
from ..typedef import EDGE_TYPE, MASK_TYPE, MATRIX_TYPE, VECTOR_TYPE


VALUE_DATACLASS_KWARGS: dict[str, bool] = {"frozen": True}
# Arrays are compared with tolerances, never with ==.
ARRAY_DATACLASS_KWARGS: dict[str, bool] = {"frozen": True, "eq": False}


if sys.version_info >= (3, 10):  # pragma: no cover
	# Python 3.10 and up adds a "slots" argument to automatically generate a __slots__ attribute.
	VALUE_DATACLASS_KWARGS["slots"] = True
	ARRAY_DATACLASS_KWARGS["slots"] = True


def readOnlyArray(values: npt.ArrayLike, ndim: int) -> npt.NDArray[np.float64]:
	"""
	Copies values into a read-only float array.

	Args:
		values: The values to copy.
		ndim: The required number of dimensions.

	Returns:
		The frozen copy.
	"""
	array = np.array(values, dtype=np.float64)
	if array.ndim != ndim:
		raise InvalidSizeError(f"Expected a {ndim}-dimensional array, got shape {array.shape}.")
	array.setflags(write=False)
	return array


@dataclass(**VALUE_DATACLASS_KWARGS)
class EdgeSet:
	"""
	A set of directed edges over the states 0..size-1.
	"""

	size: int
	edges: frozenset[EDGE_TYPE] = field(default_factory=frozenset)

	def __post_init__(self) -> None:
		if self.size < 1:
			raise InvalidSizeError(f"An edge set needs at least one state, got {self.size}.")
		edges: frozenset[EDGE_TYPE] = frozenset((int(x), int(y)) for x, y in self.edges)
		for x, y in edges:
			if not (0 <= x < self.size and 0 <= y < self.size):
				raise SupportMismatchError(f"Edge ({x}, {y}) lies outside {self.size} states.")
		object.__setattr__(self, "edges", edges)

	@classmethod
	def fromMask(cls, mask: npt.ArrayLike) -> EdgeSet:
		"""
		Builds an edge set from a boolean adjacency matrix.

		Args:
			mask: A square array, truthy where an edge exists.

		Returns:
			The edge set.
		"""
		array = np.asarray(mask, dtype=bool)
		if array.ndim != 2 or array.shape[0] != array.shape[1]:
			raise InvalidSizeError(f"Expected a square mask, got shape {array.shape}.")
		rows, columns = np.nonzero(array)
		return cls(array.shape[0], frozenset(zip(rows.tolist(), columns.tolist())))

	@classmethod
	def complete(cls, size: int) -> EdgeSet:
		"""The full support X²."""
		return cls.fromMask(np.ones((size, size), dtype=bool))

	@classmethod
	def birthDeath(cls, size: int) -> EdgeSet:
		"""The birth-and-death support {(i, j) : |i - j| <= 1}."""
		indices = np.arange(size)
		return cls.fromMask(np.abs(indices[:, None] - indices[None, :]) <= 1)

	@classmethod
	def cycle(cls, size: int) -> EdgeSet:
		"""The lazy m-cycle support: self-loops and both neighbours modulo size."""
		indices = np.arange(size)
		offsets = (indices[None, :] - indices[:, None]) % size
		return cls.fromMask((offsets == 0) | (offsets == 1) | (offsets == size - 1))

	@property
	def mask(self) -> MASK_TYPE:
		"""The boolean adjacency matrix."""
		array = np.zeros((self.size, self.size), dtype=bool)
		for x, y in self.edges:
			array[x, y] = True
		return array

	def __len__(self) -> int:
		return len(self.edges)

	def __contains__(self, edge: object) -> bool:
		return edge in self.edges

	def __iter__(self) -> Iterator[EDGE_TYPE]:
		return iter(sorted(self.edges))

	@property
	def isSymmetric(self) -> bool:
		"""True when E = E*."""
		return all((y, x) in self.edges for x, y in self.edges)

	def transpose(self) -> EdgeSet:
		"""The reversed edge set E*."""
		return EdgeSet(self.size, frozenset((y, x) for x, y in self.edges))

	def _checkSize(self, other: EdgeSet) -> None:
		if other.size != self.size:
			raise SupportMismatchError(f"Edge sets over {self.size} and {other.size} states.")

	def union(self, other: EdgeSet) -> EdgeSet:
		self._checkSize(other)
		return EdgeSet(self.size, self.edges | other.edges)

	def intersection(self, other: EdgeSet) -> EdgeSet:
		self._checkSize(other)
		return EdgeSet(self.size, self.edges & other.edges)

	def issubset(self, other: EdgeSet) -> bool:
		self._checkSize(other)
		return self.edges <= other.edges

	@property
	def selfLoops(self) -> tuple[EDGE_TYPE, ...]:
		"""T0(E), the self-loops, in lexicographic order."""
		return tuple(sorted((x, y) for x, y in self.edges if x == y))

	@property
	def lowerEdges(self) -> tuple[EDGE_TYPE, ...]:
		"""T+(E), the edges (x, x') with x' < x, in lexicographic order."""
		return tuple(sorted((x, y) for x, y in self.edges if y < x))

	@property
	def xStar(self) -> int:
		"""The smallest state reachable in one step from the last state."""
		targets: list[int] = [y for x, y in self.edges if x == self.size - 1]
		if not targets:
			raise NotIrreducibleError(f"State {self.size} has no outgoing edge.")
		return min(targets)

	def chartIndices(self) -> tuple[EDGE_TYPE, ...]:
		"""
		The index set T(E) of the reversible charts.

		Pairs (i, j) in E with j <= i, in lexicographic order, minus (m, x_star).

		Returns:
			The ordered index pairs.
		"""
		if not self.isSymmetric:
			raise AsymmetricSupportError("Chart indices require a symmetric support.")
		excluded: EDGE_TYPE = (self.size - 1, self.xStar)
		return tuple(sorted((x, y) for x, y in self.edges if y <= x and (x, y) != excluded))


@dataclass(**ARRAY_DATACLASS_KWARGS)
class _SupportedMatrix:
	matrix: MATRIX_TYPE
	support: EdgeSet

	def __post_init__(self) -> None:
		matrix = readOnlyArray(self.matrix, 2)
		if matrix.shape != (self.support.size, self.support.size):
			raise InvalidSizeError(
				f"Matrix of shape {matrix.shape} does not match {self.support.size} states."
			)
		if np.any(matrix[~self.support.mask] != 0.0):
			raise SupportMismatchError("Matrix has non-zero entries outside its support.")
		object.__setattr__(self, "matrix", matrix)

	@property
	def size(self) -> int:
		"""The number of states."""
		return self.support.size


@dataclass(**ARRAY_DATACLASS_KWARGS)
class Kernel(_SupportedMatrix):
	"""
	A row-stochastic irreducible transition matrix, row = source state.

	Build instances through markovgeom.core.validateKernel, which enforces the invariants.
	"""


@dataclass(**ARRAY_DATACLASS_KWARGS)
class EdgeMeasure(_SupportedMatrix):
	"""
	Stationary pair probabilities Q = diag(π)P with balanced marginals.

	Build instances through markovgeom.core.validateEdgeMeasure or markovgeom.core.edgeMeasure.
	"""


@dataclass(**ARRAY_DATACLASS_KWARGS)
class EdgeFunction(_SupportedMatrix):
	"""
	A real function on an edge set, zero outside it.
	"""

	@classmethod
	def onSupport(cls, matrix: npt.ArrayLike, support: EdgeSet) -> EdgeFunction:
		"""Builds an edge function, discarding values outside the support."""
		array = np.array(matrix, dtype=np.float64)
		array[~support.mask] = 0.0
		return cls(array, support)

	def transpose(self) -> EdgeFunction:
		"""The function (x, x') -> g(x', x) on E*."""
		return EdgeFunction(self.matrix.T, self.support.transpose())


@dataclass(**ARRAY_DATACLASS_KWARGS)
class PositiveEdgeFunction(_SupportedMatrix):
	"""
	A non-negative function, positive exactly on its support.
	"""

	def __post_init__(self) -> None:
		_SupportedMatrix.__post_init__(self)
		if np.any(self.matrix[self.support.mask] <= 0.0):
			raise SupportMismatchError("A positive function must be positive on its whole support.")

	@classmethod
	def fromMatrix(cls, matrix: npt.ArrayLike) -> PositiveEdgeFunction:
		"""Builds a positive function whose support is the set of positive entries."""
		array = np.array(matrix, dtype=np.float64)
		if np.any(array < 0.0):
			raise SupportMismatchError("A positive function cannot have negative entries.")
		return cls(array, EdgeSet.fromMask(array > 0.0))

	@classmethod
	def fromLog(cls, logValues: EdgeFunction) -> PositiveEdgeFunction:
		"""The entrywise exponential of a real function, zero outside its support."""
		mask: MASK_TYPE = logValues.support.mask
		return cls(np.where(mask, np.exp(np.where(mask, logValues.matrix, 0.0)), 0.0), logValues.support)


@dataclass(**ARRAY_DATACLASS_KWARGS)
class Distribution:
	"""
	A strictly positive probability vector over the states.
	"""

	probabilities: VECTOR_TYPE

	def __post_init__(self) -> None:
		object.__setattr__(self, "probabilities", readOnlyArray(self.probabilities, 1))

	@property
	def size(self) -> int:
		return int(self.probabilities.shape[0])


@dataclass(**ARRAY_DATACLASS_KWARGS)
class PFData:
	"""
	Perron-Frobenius data of a non-negative irreducible matrix.

	The right eigenvector has maximum entry 1 and the left one is normalized so that u·vᵀ = 1.
	"""

	rho: float
	right: VECTOR_TYPE
	left: VECTOR_TYPE
	projection: MATRIX_TYPE

	def __post_init__(self) -> None:
		object.__setattr__(self, "right", readOnlyArray(self.right, 1))
		object.__setattr__(self, "left", readOnlyArray(self.left, 1))
		object.__setattr__(self, "projection", readOnlyArray(self.projection, 2))


@dataclass(**ARRAY_DATACLASS_KWARGS)
class LogReversibleDecomposition:
	"""
	The split g(x, x') = s(x, x') + f(x') - f(x) of a function on a symmetric support.

	When valid is False, potential holds the spanning-tree candidate that failed verification.
	"""

	symmetricPart: EdgeFunction
	potential: VECTOR_TYPE
	valid: bool
	residual: float

	def __post_init__(self) -> None:
		object.__setattr__(self, "potential", readOnlyArray(self.potential, 1))

	def reconstruct(self) -> MATRIX_TYPE:
		"""The function s(x, x') + f(x') - f(x) on the support."""
		potential = self.potential
		values = self.symmetricPart.matrix + potential[None, :] - potential[:, None]
		return np.where(self.symmetricPart.support.mask, values, 0.0)


@dataclass(**ARRAY_DATACLASS_KWARGS)
class EFamilySpec:
	"""
	A member of a tilted exponential family: log P̃ = K + Σ θⁱ gᵢ, rescaled to a kernel.
	"""

	carrier: EdgeFunction
	generators: tuple[EdgeFunction, ...]
	theta: VECTOR_TYPE

	def __post_init__(self) -> None:
		theta = readOnlyArray(np.atleast_1d(np.asarray(self.theta, dtype=np.float64)), 1)
		generators: tuple[EdgeFunction, ...] = tuple(self.generators)
		if theta.shape[0] != len(generators):
			raise InvalidSizeError(f"{len(generators)} generators but {theta.shape[0]} parameters.")
		object.__setattr__(self, "generators", generators)
		object.__setattr__(self, "theta", theta)

	@property
	def support(self) -> EdgeSet:
		return self.carrier.support

	@property
	def dimension(self) -> int:
		return len(self.generators)

	def withTheta(self, theta: npt.ArrayLike) -> EFamilySpec:
		"""The same family at another parameter."""
		return EFamilySpec(self.carrier, self.generators, np.asarray(theta, dtype=np.float64))

	def logMatrix(self) -> MATRIX_TYPE:
		"""K + Σ θⁱ gᵢ on the support, zero elsewhere."""
		values = np.array(self.carrier.matrix, dtype=np.float64)
		for coefficient, generator in zip(self.theta, self.generators):
			values = values + coefficient * generator.matrix
		return np.where(self.support.mask, values, 0.0)


@dataclass(**ARRAY_DATACLASS_KWARGS)
class _ChartPoint:
	values: VECTOR_TYPE
	support: EdgeSet

	def __post_init__(self) -> None:
		values = readOnlyArray(np.atleast_1d(np.asarray(self.values, dtype=np.float64)), 1)
		if values.shape[0] != len(self.support.chartIndices()):
			raise SupportMismatchError(
				f"{values.shape[0]} coordinates for {len(self.support.chartIndices())} chart indices."
			)
		object.__setattr__(self, "values", values)

	@property
	def indices(self) -> tuple[EDGE_TYPE, ...]:
		return self.support.chartIndices()

	def asDict(self) -> dict[EDGE_TYPE, float]:
		"""The coordinates keyed by 0-based (i, j), in T(E) order."""
		return {index: float(value) for index, value in zip(self.indices, self.values)}

	@classmethod
	def _valuesFromMapping(cls, mapping: Mapping[EDGE_TYPE, float], support: EdgeSet) -> list[float]:
		indices: tuple[EDGE_TYPE, ...] = support.chartIndices()
		if set(mapping) != set(indices):
			raise SupportMismatchError("Coordinate keys must be exactly the chart indices T(E).")
		return [float(mapping[index]) for index in indices]


@dataclass(**ARRAY_DATACLASS_KWARGS)
class NaturalCoords(_ChartPoint):
	"""
	Natural (θ) coordinates of a reversible kernel, indexed by T(E).
	"""

	@classmethod
	def fromMapping(cls, mapping: Mapping[EDGE_TYPE, float], support: EdgeSet) -> NaturalCoords:
		return cls(np.asarray(cls._valuesFromMapping(mapping, support)), support)


@dataclass(**ARRAY_DATACLASS_KWARGS)
class ExpectationCoords(_ChartPoint):
	"""
	Expectation (η) coordinates of a reversible kernel, indexed by T(E).
	"""

	@classmethod
	def fromMapping(cls, mapping: Mapping[EDGE_TYPE, float], support: EdgeSet) -> ExpectationCoords:
		return cls(np.asarray(cls._valuesFromMapping(mapping, support)), support)


@total_ordering
@dataclass(**VALUE_DATACLASS_KWARGS)
class DivergenceValue:
	"""
	A non-negative divergence, or an explicit infinity.
	"""

	value: Optional[float] = None

	@classmethod
	def infinity(cls) -> DivergenceValue:
		return cls(None)

	@property
	def isInfinite(self) -> bool:
		return self.value is None

	def finite(self) -> float:
		"""
		The divergence as a float.

		Raises:
			ValueError: The divergence is infinite.
		"""
		if self.value is None:
			raise ValueError("The divergence is infinite.")
		return self.value

	def __lt__(self, other: object) -> bool:
		if not isinstance(other, DivergenceValue):
			return NotImplemented
		if self.value is None:
			return False
		return other.value is None or self.value < other.value

	def __str__(self) -> str:
		return "infinity" if self.value is None else repr(self.value)


@dataclass(**ARRAY_DATACLASS_KWARGS)
class SimplexPoint:
	"""
	A probability vector over the m(m+1)/2 unordered state pairs.
	"""

	probabilities: VECTOR_TYPE

	def __post_init__(self) -> None:
		object.__setattr__(self, "probabilities", readOnlyArray(self.probabilities, 1))

	@property
	def stateCount(self) -> int:
		"""The m with m(m+1)/2 equal to the number of coordinates."""
		count: int = int(self.probabilities.shape[0])
		size: int = int(round((np.sqrt(8 * count + 1) - 1) / 2))
		if size * (size + 1) // 2 != count:
			raise InvalidSizeError(f"{count} is not a triangular number.")
		return size


@dataclass
class ExperimentReport:
	"""
	The outcome of a numerical experiment, as serialized by the command line front end.
	"""

	experiment: str
	params: dict[str, Any]
	rank: Optional[int]
	expected: Optional[int]
	passed: bool
	extras: dict[str, Any] = field(default_factory=dict)

	def asDict(self) -> dict[str, Any]:
		output: dict[str, Any] = {
			"experiment": self.experiment,
			"params": dict(self.params),
			"rank": self.rank,
			"expected": self.expected,
			"pass": self.passed,
		}
		output.update(self.extras)
		return output


def edgesFromPairs(size: int, pairs: Iterable[Iterable[int]], oneBased: bool = True) -> EdgeSet:
	"""
	Builds an edge set from index pairs.

	Args:
		size: The number of states.
		pairs: The (x, x') pairs.
		oneBased: True when the pairs number states from 1, as files do.

	Returns:
		The edge set.
	"""
	offset: int = 1 if oneBased else 0
	edges: set[EDGE_TYPE] = set()
	for pair in pairs:
		x, y = tuple(pair)
		edges.add((int(x) - offset, int(y) - offset))
	return EdgeSet(size, frozenset(edges))
