# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.


# Future Modules:
from __future__ import annotations

# Built-in Modules:
import logging
import math
from collections.abc import Sequence

# Third-party Modules:
import networkx as nx
import numpy as np

# Local Modules:
from . import LITERAL_CHECK_METHODS
from .chaindata.objects import EdgeFunction, EdgeSet, EFamilySpec, Kernel, LogReversibleDecomposition
from .core import edgeMeasure, strongConnectivity, supportGraph
from .errors import (
	AsymmetricSupportError,
	DependentGeneratorsError,
	NotIrreducibleError,
	SupportMismatchError,
	TooLargeError,
)
from .perron import POSITIVE_FUNCTION_TYPE, asPositiveFunction, pfProjection, stochasticRescale
from .typedef import MATRIX_TYPE, VECTOR_TYPE
from .utils import maxAbs, numericalRank


REVERSIBILITY_TOLERANCE: float = 1e-9
MAX_CYCLE_STATES: int = 8


logger: logging.Logger = logging.getLogger(__name__)


def _asKernel(h: POSITIVE_FUNCTION_TYPE) -> Kernel:
	return h if isinstance(h, Kernel) else stochasticRescale(h)


def balanceResidual(h: POSITIVE_FUNCTION_TYPE) -> float:
	"""
	The largest detailed balance violation |π(x)P(x, x') - π(x')P(x', x)|.

	Positive functions that are not kernels are rescaled first, which preserves reversibility.

	Args:
		h: A kernel or positive function.

	Returns:
		The residual.
	"""
	measure: MATRIX_TYPE = edgeMeasure(_asKernel(h)).matrix
	return maxAbs(measure - measure.T)


def isReversibleBalance(kernel: POSITIVE_FUNCTION_TYPE, tol: float = REVERSIBILITY_TOLERANCE) -> bool:
	"""
	Tests detailed balance.

	Args:
		kernel: The kernel.
		tol: The absolute tolerance on the edge measure asymmetry.

	Returns:
		True if the kernel is reversible.
	"""
	return balanceResidual(kernel) <= tol


def kolmogorovResidual(h: POSITIVE_FUNCTION_TYPE) -> float:
	"""
	Compares log products along every simple cycle and its reversal.

	Cycles of length 1 and 2 balance trivially and are skipped.

	Args:
		h: A positive function.

	Returns:
		The largest |Σ log h(γ) - Σ log h(γ*)|, or infinity when the support is not symmetric.

	Raises:
		TooLargeError: There are more than 8 states.
	"""
	positive = asPositiveFunction(h)
	if positive.size > MAX_CYCLE_STATES:
		raise TooLargeError(f"Cycle enumeration is limited to {MAX_CYCLE_STATES} states.")
	if not positive.support.isSymmetric:
		return math.inf
	logs: MATRIX_TYPE = np.log(np.where(positive.support.mask, positive.matrix, 1.0))
	residual: float = 0.0
	count: int = 0
	for cycle in nx.simple_cycles(supportGraph(positive.support)):
		if len(cycle) < 3:
			continue
		count += 1
		sources: list[int] = list(cycle)
		targets: list[int] = sources[1:] + sources[:1]
		forward: float = float(np.sum(logs[sources, targets]))
		backward: float = float(np.sum(logs[targets, sources]))
		residual = max(residual, abs(forward - backward))
	logger.debug(f"Checked {count} cycles over {positive.size} states.")
	return residual


def kolmogorovCycleCheck(h: POSITIVE_FUNCTION_TYPE, tol: float = REVERSIBILITY_TOLERANCE) -> bool:
	"""
	Applies the Kolmogorov criterion.

	Args:
		h: A positive function on at most 8 states.
		tol: The tolerance on the log products.

	Returns:
		True if every cycle balances its reversal.
	"""
	return kolmogorovResidual(h) <= tol


def pfResidual(h: POSITIVE_FUNCTION_TYPE) -> float:
	"""
	The relative asymmetry ‖M - Mᵀ‖/‖M‖ of M = Π∘hᵀ, in the largest-entry norm.

	Args:
		h: A positive function.

	Returns:
		The residual, or infinity when the support is not symmetric.
	"""
	positive = asPositiveFunction(h)
	if not positive.support.isSymmetric:
		return math.inf
	product: MATRIX_TYPE = pfProjection(positive) * positive.matrix.T
	return maxAbs(product - product.T) / maxAbs(product)


def isReversiblePF(h: POSITIVE_FUNCTION_TYPE, tol: float = REVERSIBILITY_TOLERANCE) -> bool:
	"""
	Tests reversibility through the symmetry of Π∘hᵀ.

	Args:
		h: A positive function.
		tol: The relative tolerance.

	Returns:
		True if h is reversible.
	"""
	return pfResidual(h) <= tol


def reversibilityResidual(h: POSITIVE_FUNCTION_TYPE, method: LITERAL_CHECK_METHODS) -> float:
	"""
	The residual behind one reversibility verdict.

	Args:
		h: A kernel or positive function.
		method: One of "balance", "pf", or "kolmogorov".

	Returns:
		The residual.
	"""
	if method == "balance":
		return balanceResidual(h)
	if method == "pf":
		return pfResidual(h)
	if method == "kolmogorov":
		return kolmogorovResidual(h)
	raise ValueError(f"{method!r} is not a single reversibility test.")


def _requireSymmetric(support: EdgeSet) -> None:
	if not support.isSymmetric:
		raise AsymmetricSupportError("The support must equal its transpose.")


def logReversibleDecompose(
	g: EdgeFunction, tol: float = REVERSIBILITY_TOLERANCE
) -> LogReversibleDecomposition:
	"""
	Splits a function into a symmetric part and a gradient.

	The potential is propagated along a breadth first tree rooted at the first state, with f = 0 there,
	and then checked on every edge.

	Args:
		g: A function on a symmetric, strongly connected support.
		tol: The tolerance of the edge check.

	Returns:
		The decomposition, valid when g = s + f(x') - f(x) holds on every edge.

	Raises:
		AsymmetricSupportError: The support is not symmetric.
		NotIrreducibleError: The support is not connected.
	"""
	support: EdgeSet = g.support
	_requireSymmetric(support)
	symmetric: MATRIX_TYPE = (g.matrix + g.matrix.T) / 2.0
	skew: MATRIX_TYPE = (g.matrix - g.matrix.T) / 2.0
	graph = supportGraph(support)
	potential: VECTOR_TYPE = np.zeros(support.size)
	reached: set[int] = {0}
	for parent, child in nx.bfs_edges(graph, 0):
		potential[child] = potential[parent] + skew[parent, child]
		reached.add(child)
	if len(reached) != support.size:
		raise NotIrreducibleError("The support graph is not connected.")
	gradient: MATRIX_TYPE = potential[None, :] - potential[:, None]
	residual: float = maxAbs((skew - gradient)[support.mask])
	return LogReversibleDecomposition(
		EdgeFunction(symmetric, support), potential, valid=residual <= tol, residual=residual
	)


def isLogReversible(g: EdgeFunction, tol: float = REVERSIBILITY_TOLERANCE) -> bool:
	return g.support.isSymmetric and logReversibleDecompose(g, tol).valid


def isReversibleEFamily(spec: EFamilySpec, tol: float = REVERSIBILITY_TOLERANCE) -> bool:
	"""
	Tests whether every member of an exponential family is reversible.

	Args:
		spec: The family.
		tol: The tolerance of each decomposition.

	Returns:
		True if the support is symmetric and the carrier and all generators are log-reversible.
	"""
	if not spec.support.isSymmetric:
		return False
	return all(isLogReversible(function, tol) for function in (spec.carrier, *spec.generators))


def shiftSpaceBasis(support: EdgeSet) -> list[EdgeFunction]:
	"""
	Spans the space N of functions f(x') - f(x) + c restricted to a support.

	Args:
		support: The support.

	Returns:
		The gradients of the indicators of the first size-1 states, followed by the constant function.
	"""
	basis: list[EdgeFunction] = []
	for state in range(support.size - 1):
		indicator: VECTOR_TYPE = np.zeros(support.size)
		indicator[state] = 1.0
		basis.append(EdgeFunction.onSupport(indicator[None, :] - indicator[:, None], support))
	basis.append(EdgeFunction.onSupport(np.ones((support.size, support.size)), support))
	return basis


def quotientRank(functions: Sequence[EdgeFunction], support: EdgeSet) -> int:
	"""
	The dimension of the span of functions modulo N.

	Args:
		functions: Functions on the support.
		support: The support.

	Returns:
		rank(functions ∪ basis of N) - rank(basis of N).
	"""
	mask = support.mask
	shifts: list[VECTOR_TYPE] = [function.matrix[mask] for function in shiftSpaceBasis(support)]
	rows: list[VECTOR_TYPE] = [function.matrix[mask] for function in functions]
	return numericalRank(rows + shifts) - numericalRank(shifts)


def validateEFamily(spec: EFamilySpec) -> EFamilySpec:
	"""
	Checks an exponential family specification.

	Args:
		spec: The family.

	Returns:
		The same family.

	Raises:
		SupportMismatchError: A generator lives on a different support from the carrier.
		NotIrreducibleError: The support is not strongly connected.
		DependentGeneratorsError: The generators are linearly dependent modulo N.
	"""
	support: EdgeSet = spec.support
	for index, generator in enumerate(spec.generators, start=1):
		if generator.support != support:
			raise SupportMismatchError(f"Generator {index} does not share the carrier's support.")
	if not strongConnectivity(support):
		raise NotIrreducibleError("The family's support is not strongly connected.")
	rank: int = quotientRank(spec.generators, support)
	if rank != spec.dimension:
		raise DependentGeneratorsError(f"{spec.dimension} generators span only {rank} dimensions modulo N.")
	return spec


def expectationIdentityResiduals(kernel: Kernel, g: EdgeFunction) -> dict[str, float]:
	"""
	Evaluates the three expectation identities for a kernel and a function.

	Args:
		kernel: The kernel.
		g: A function on a symmetric support.

	Returns:
		"skew": |Q[(g - gᵀ)/2]|, zero whenever the kernel is reversible.
		"gradient": |Q[f(x') - f(x)]| for the potential f of g, zero for every kernel.
		"reversal": |Q[g] - Q*[g]|, zero whenever g is log-reversible.
	"""
	measure: MATRIX_TYPE = edgeMeasure(kernel).matrix
	skew: MATRIX_TYPE = (g.matrix - g.matrix.T) / 2.0
	potential: VECTOR_TYPE = logReversibleDecompose(g).potential
	gradient: MATRIX_TYPE = potential[None, :] - potential[:, None]
	return {
		"skew": abs(float(np.sum(measure * skew))),
		"gradient": abs(float(np.sum(measure * gradient))),
		"reversal": abs(float(np.sum((measure - measure.T) * g.matrix))),
	}
