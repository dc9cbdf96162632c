# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.


# Future Modules:
from __future__ import annotations

# Built-in Modules:
import logging

# Third-party Modules:
import numpy as np
from scipy.special import rel_entr

# Local Modules:
from . import LITERAL_PROJECTION_MODES
from .chaindata.objects import DivergenceValue, EdgeSet, Kernel, PositiveEdgeFunction
from .core import stationaryDistribution, strongConnectivity, timeReversal, validateKernel
from .errors import (
	IntersectionNotConnectedError,
	NotReversibleError,
	ParameterRangeError,
	SupportMismatchError,
)
from .perron import stochasticRescale
from .reversibility import REVERSIBILITY_TOLERANCE, balanceResidual
from .typedef import MATRIX_TYPE, VECTOR_TYPE


logger: logging.Logger = logging.getLogger(__name__)


def klDivergence(first: Kernel, second: Kernel) -> DivergenceValue:
	"""
	The divergence rate D(P1‖P2) = Σ π1(x)P1(x, x') log(P1(x, x')/P2(x, x')).

	Args:
		first: P1.
		second: P2.

	Returns:
		The divergence, infinite when P1 has an edge P2 lacks.
	"""
	if first.size != second.size:
		raise SupportMismatchError(f"Kernels over {first.size} and {second.size} states.")
	if not first.support.issubset(second.support):
		return DivergenceValue.infinity()
	pi: VECTOR_TYPE = stationaryDistribution(first).probabilities
	mask = first.support.mask
	terms: MATRIX_TYPE = np.where(mask, rel_entr(first.matrix, np.where(mask, second.matrix, 1.0)), 0.0)
	value: float = float(pi @ terms.sum(axis=1))
	return DivergenceValue(max(value, 0.0))


def mProjection(kernel: Kernel) -> Kernel:
	"""
	The additive reversiblization (P + P*)/2.

	It minimizes D(P‖·) over the reversible kernels on E ∪ E* and keeps the stationary distribution.

	Args:
		kernel: P.

	Returns:
		The projection, on E ∪ E*.
	"""
	adjoint: Kernel = timeReversal(kernel)
	support: EdgeSet = kernel.support.union(adjoint.support)
	return validateKernel((kernel.matrix + adjoint.matrix) / 2.0, support=support)


def eProjection(kernel: Kernel) -> Kernel:
	"""
	The exponential reversiblization 𝔰(sqrt(P∘P*)).

	It minimizes D(·‖P) over the reversible kernels on E ∩ E*.

	Args:
		kernel: P.

	Returns:
		The projection, on E ∩ E*.

	Raises:
		IntersectionNotConnectedError: E ∩ E* is not strongly connected.
	"""
	adjoint: Kernel = timeReversal(kernel)
	support: EdgeSet = kernel.support.intersection(adjoint.support)
	if not strongConnectivity(support):
		raise IntersectionNotConnectedError("E ∩ E* is not strongly connected.")
	mean: MATRIX_TYPE = np.where(support.mask, np.sqrt(kernel.matrix * adjoint.matrix), 0.0)
	return stochasticRescale(PositiveEdgeFunction(mean, support))


def project(kernel: Kernel, mode: LITERAL_PROJECTION_MODES) -> Kernel:
	"""Dispatches to the m- or e-projection."""
	if mode == "m":
		return mProjection(kernel)
	if mode == "e":
		return eProjection(kernel)
	raise ParameterRangeError(f"Projection mode must be 'm' or 'e', got {mode!r}.")


def projectionSupport(kernel: Kernel, mode: LITERAL_PROJECTION_MODES) -> EdgeSet:
	"""The support E ∪ E* (mode m) or E ∩ E* (mode e) of the projection."""
	transposed: EdgeSet = kernel.support.transpose()
	if mode == "m":
		return kernel.support.union(transposed)
	return kernel.support.intersection(transposed)


def _finite(value: DivergenceValue, label: str) -> float:
	if value.isInfinite:
		raise SupportMismatchError(f"{label} is infinite.")
	return value.finite()


def pythagoreanResidual(
	kernel: Kernel,
	reference: Kernel,
	mode: LITERAL_PROJECTION_MODES,
	tol: float = REVERSIBILITY_TOLERANCE,
) -> float:
	"""
	Evaluates the Pythagorean identity of a projection.

	Mode m gives D(P‖P̄) - D(P‖Pm) - D(Pm‖P̄). Mode e gives D(P̄‖P) - D(P̄‖Pe) - D(Pe‖P).

	Args:
		kernel: P.
		reference: A reversible P̄ on the projection's support.
		mode: "m" or "e".
		tol: The detailed balance tolerance for P̄.

	Returns:
		The residual, zero up to rounding.

	Raises:
		NotReversibleError: P̄ fails detailed balance.
		SupportMismatchError: P̄ does not live on the projection's support.
	"""
	if not reference.support.isSymmetric or balanceResidual(reference) > tol:
		raise NotReversibleError("The reference kernel is not reversible.")
	if reference.support != projectionSupport(kernel, mode):
		raise SupportMismatchError("The reference kernel must live on the projection's support.")
	projected: Kernel = project(kernel, mode)
	if mode == "m":
		return (
			_finite(klDivergence(kernel, reference), "D(P‖P̄)")
			- _finite(klDivergence(kernel, projected), "D(P‖Pm)")
			- _finite(klDivergence(projected, reference), "D(Pm‖P̄)")
		)
	return (
		_finite(klDivergence(reference, kernel), "D(P̄‖P)")
		- _finite(klDivergence(reference, projected), "D(P̄‖Pe)")
		- _finite(klDivergence(projected, kernel), "D(Pe‖P)")
	)


def bisectionCheck(kernel: Kernel) -> tuple[float, float]:
	"""
	Measures how far each projection is from equidistant to P and P*.

	Args:
		kernel: P, with E ∩ E* strongly connected.

	Returns:
		|D(P‖Pm) - D(P*‖Pm)| and |D(Pe‖P) - D(Pe‖P*)|.
	"""
	adjoint: Kernel = timeReversal(kernel)
	mixed: Kernel = mProjection(kernel)
	geometric: Kernel = eProjection(kernel)
	mGap: float = abs(
		_finite(klDivergence(kernel, mixed), "D(P‖Pm)")
		- _finite(klDivergence(adjoint, mixed), "D(P*‖Pm)")
	)
	eGap: float = abs(
		_finite(klDivergence(geometric, kernel), "D(Pe‖P)")
		- _finite(klDivergence(geometric, adjoint), "D(Pe‖P*)")
	)
	return mGap, eGap
