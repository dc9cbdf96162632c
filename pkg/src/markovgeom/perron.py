# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.


# Future Modules:
from __future__ import annotations

# Built-in Modules:
import logging
from typing import Union

# Third-party Modules:
import numpy as np
from scipy.linalg import eig

# Local Modules:
from .chaindata.objects import EdgeFunction, Kernel, PFData, PositiveEdgeFunction
from .core import strongConnectivity, validateKernel
from .errors import ConvergenceError, NotIrreducibleError
from .typedef import MATRIX_TYPE, VECTOR_TYPE


MAX_ITERATIONS: int = 100_000
CONVERGENCE_TOLERANCE: float = 1e-13  # Infinity norm between successive normalized iterates.
EIGEN_RESIDUAL_TOLERANCE: float = 1e-10  # Relative to rho.


logger: logging.Logger = logging.getLogger(__name__)


POSITIVE_FUNCTION_TYPE = Union[PositiveEdgeFunction, Kernel]


def asPositiveFunction(h: POSITIVE_FUNCTION_TYPE) -> PositiveEdgeFunction:
	if isinstance(h, PositiveEdgeFunction):
		return h
	return PositiveEdgeFunction(h.matrix, h.support)


def _perronVector(matrix: MATRIX_TYPE, side: str) -> VECTOR_TYPE:
	"""
	Computes the Perron vector of a non-negative irreducible matrix.

	A dense eigensolve supplies the starting point. Power iteration on matrix + I then refines it,
	since the shift keeps the iteration convergent on periodic supports.

	Args:
		matrix: The matrix, acting on column vectors.
		side: "right" or "left", for log messages.

	Returns:
		The positive eigenvector, scaled to maximum entry 1.

	Raises:
		ConvergenceError: The iteration budget is exhausted.
	"""
	size: int = matrix.shape[0]
	values, vectors = eig(matrix)
	vector: VECTOR_TYPE = np.abs(np.real(vectors[:, int(np.argmax(np.real(values)))]))
	if not np.all(np.isfinite(vector)) or vector.max() <= 0.0:
		vector = np.ones(size)
	vector = vector / vector.max()
	shifted: MATRIX_TYPE = matrix + np.eye(size)
	for iteration in range(1, MAX_ITERATIONS + 1):
		following: VECTOR_TYPE = shifted @ vector
		following = following / following.max()
		change: float = float(np.max(np.abs(following - vector)))
		vector = following
		if change < CONVERGENCE_TOLERANCE:
			logger.debug(f"{side} Perron vector converged after {iteration} iterations.")
			return vector
	raise ConvergenceError(f"The {side} Perron vector did not converge in {MAX_ITERATIONS} iterations.")


def pfData(h: POSITIVE_FUNCTION_TYPE) -> PFData:
	"""
	Computes the Perron-Frobenius root, eigenvectors and projection.

	Args:
		h: A non-negative function with strongly connected support.

	Returns:
		ρ, v (maximum entry 1), u (u·vᵀ = 1), and Π = vᵀu.

	Raises:
		NotIrreducibleError: The support is not strongly connected.
		ConvergenceError: An eigenvector iteration failed, or the eigen-equations do not hold to 1e-10.
	"""
	positive: PositiveEdgeFunction = asPositiveFunction(h)
	if not strongConnectivity(positive.support):
		raise NotIrreducibleError("Perron-Frobenius data requires a strongly connected support.")
	matrix: MATRIX_TYPE = positive.matrix
	right: VECTOR_TYPE = _perronVector(matrix, "right")
	raw: VECTOR_TYPE = _perronVector(matrix.T, "left")
	left: VECTOR_TYPE = raw / float(raw @ right)
	rho: float = float(left @ matrix @ right)
	residual: float = max(
		float(np.max(np.abs(matrix @ right - rho * right))),
		float(np.max(np.abs(left @ matrix - rho * left))),
	)
	if residual > EIGEN_RESIDUAL_TOLERANCE * rho:
		raise ConvergenceError(f"Perron eigen-equations hold only to {residual / rho:.3g}.")
	return PFData(rho, right, left, np.outer(right, left))


def pfProjection(h: POSITIVE_FUNCTION_TYPE) -> MATRIX_TYPE:
	"""The rank one projection Π = vᵀu, the limit of Cesàro averages of (h/ρ)^k."""
	return pfData(h).projection


def stochasticRescale(h: POSITIVE_FUNCTION_TYPE) -> Kernel:
	"""
	Turns a positive irreducible function into a kernel.

	Args:
		h: The function.

	Returns:
		The kernel P(x, x') = h(x, x')v(x')/(ρ v(x)), on the support of h.
	"""
	positive: PositiveEdgeFunction = asPositiveFunction(h)
	data: PFData = pfData(positive)
	matrix: MATRIX_TYPE = positive.matrix * data.right[None, :] / (data.rho * data.right[:, None])
	return validateKernel(matrix, support=positive.support)


def logPFRoot(h: POSITIVE_FUNCTION_TYPE) -> float:
	"""The logarithm of the Perron-Frobenius root."""
	return float(np.log(pfData(h).rho))


def _shiftedExp(logValues: EdgeFunction) -> tuple[PositiveEdgeFunction, float]:
	mask = logValues.support.mask
	shift: float = float(np.max(logValues.matrix[mask]))
	shifted = EdgeFunction.onSupport(logValues.matrix - shift, logValues.support)
	return PositiveEdgeFunction.fromLog(shifted), shift


def rescaleLog(logValues: EdgeFunction) -> Kernel:
	"""
	Rescales exp(g) to a kernel without overflowing.

	The constant max(g) is subtracted first, which leaves the kernel unchanged.

	Args:
		logValues: The logarithm of a positive function, on its support.

	Returns:
		The kernel 𝔰(exp g).
	"""
	positive, _ = _shiftedExp(logValues)
	return stochasticRescale(positive)


def logPFRootOfLog(logValues: EdgeFunction) -> float:
	"""
	Computes log ρ(exp g) without overflowing.

	Args:
		logValues: The logarithm of a positive function, on its support.

	Returns:
		max(g) + log ρ(exp(g - max(g))).
	"""
	positive, shift = _shiftedExp(logValues)
	return shift + logPFRoot(positive)
