# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.


# Future Modules:
from __future__ import annotations

# Built-in Modules:
import logging

# Third-party Modules:
import numpy as np
import numpy.typing as npt

# Local Modules:
from . import LITERAL_PROJECTION_MODES
from .chaindata.objects import (
	EdgeFunction,
	EdgeMeasure,
	EdgeSet,
	EFamilySpec,
	ExpectationCoords,
	Kernel,
	NaturalCoords,
)
from .core import edgeMeasure, kernelFromEdgeMeasure, validateEdgeMeasure
from .errors import (
	AsymmetricSupportError,
	InfeasibleCoordsError,
	NotReversibleError,
	ParameterRangeError,
	SupportMismatchError,
)
from .perron import logPFRootOfLog, rescaleLog
from .reversibility import REVERSIBILITY_TOLERANCE, balanceResidual
from .typedef import EDGE_TYPE, MATRIX_TYPE, VECTOR_TYPE


DERIVATIVE_STEP: float = 1e-5
HESSIAN_STEP: float = 1e-3


logger: logging.Logger = logging.getLogger(__name__)


def logKernel(kernel: Kernel) -> EdgeFunction:
	"""The entrywise logarithm of a kernel on its support."""
	mask = kernel.support.mask
	return EdgeFunction(np.log(np.where(mask, kernel.matrix, 1.0)), kernel.support)


def tilt(kernel: Kernel, g: EdgeFunction, theta: float) -> Kernel:
	"""
	Exponentially tilts a kernel: 𝔰(P∘exp(θg)).

	Args:
		kernel: The kernel.
		g: The direction, vanishing outside the kernel's support.
		theta: The step.

	Returns:
		The tilted kernel, on the kernel's support.

	Raises:
		SupportMismatchError: g is non-zero off the kernel's support.
	"""
	if g.size != kernel.size or np.any(g.matrix[~kernel.support.mask] != 0.0):
		raise SupportMismatchError("The tilting direction must live on the kernel's support.")
	if theta == 0.0:
		return kernel
	logValues: MATRIX_TYPE = logKernel(kernel).matrix + theta * g.matrix
	return rescaleLog(EdgeFunction.onSupport(logValues, kernel.support))


def eGeodesic(start: Kernel, end: Kernel, t: float) -> Kernel:
	"""
	The exponential geodesic 𝔰(P0^(1-t) P1^t).

	Args:
		start: P0.
		end: P1, on the same support.
		t: The position, any real number.

	Returns:
		The kernel at t.

	Raises:
		SupportMismatchError: The supports differ.
	"""
	if start.support != end.support:
		raise SupportMismatchError("An e-geodesic requires both kernels to share a support.")
	if t == 0.0:
		return start
	if t == 1.0:
		return end
	logValues: MATRIX_TYPE = (1.0 - t) * logKernel(start).matrix + t * logKernel(end).matrix
	return rescaleLog(EdgeFunction.onSupport(logValues, start.support))


def mGeodesic(start: Kernel, end: Kernel, t: float) -> Kernel:
	"""
	The mixture geodesic, conditioning (1-t)Q0 + tQ1.

	Args:
		start: P0.
		end: P1.
		t: The position, in [0, 1].

	Returns:
		The kernel at t, on the union of the supports when 0 < t < 1.

	Raises:
		ParameterRangeError: t lies outside [0, 1].
	"""
	if not 0.0 <= t <= 1.0:
		raise ParameterRangeError(f"An m-geodesic is defined for t in [0, 1], got {t!r}.")
	if t == 0.0:
		return start
	if t == 1.0:
		return end
	support: EdgeSet = start.support.union(end.support)
	mixture: MATRIX_TYPE = (1.0 - t) * edgeMeasure(start).matrix + t * edgeMeasure(end).matrix
	return kernelFromEdgeMeasure(EdgeMeasure(mixture, support))


def geodesic(start: Kernel, end: Kernel, kind: LITERAL_PROJECTION_MODES, t: float) -> Kernel:
	"""Dispatches to the e- or m-geodesic."""
	return eGeodesic(start, end, t) if kind == "e" else mGeodesic(start, end, t)


def geodesicPath(start: Kernel, end: Kernel, kind: LITERAL_PROJECTION_MODES, steps: int) -> list[Kernel]:
	"""
	Samples a geodesic at t = k/steps for k = 0..steps.

	Args:
		start: P0.
		end: P1.
		kind: "e" or "m".
		steps: The number of intervals, at least 1.

	Returns:
		steps + 1 kernels, from P0 to P1.
	"""
	if steps < 1:
		raise ParameterRangeError(f"A geodesic path needs at least one step, got {steps}.")
	return [geodesic(start, end, kind, index / steps) for index in range(steps + 1)]


def basisFunction(index: EDGE_TYPE, support: EdgeSet) -> EdgeFunction:
	"""
	The symmetric function g_ij = δᵢᵀδⱼ + δⱼᵀδᵢ, so g_ii = 2δᵢᵀδᵢ.

	Args:
		index: The 0-based pair (i, j).
		support: The support holding both (i, j) and (j, i).

	Returns:
		The basis function.
	"""
	i, j = index
	matrix: MATRIX_TYPE = np.zeros((support.size, support.size))
	matrix[i, j] += 1.0
	matrix[j, i] += 1.0
	return EdgeFunction(matrix, support)


def reversibleBasis(support: EdgeSet) -> list[EdgeFunction]:
	"""The functions g_ij for (i, j) in T(E), in chart order."""
	return [basisFunction(index, support) for index in support.chartIndices()]


def chartFamily(support: EdgeSet, theta: npt.ArrayLike) -> EFamilySpec:
	"""
	The exponential family of reversible kernels on a symmetric support.

	Args:
		support: The support.
		theta: Natural coordinates in chart order.

	Returns:
		The family with zero carrier and the g_ij as generators.
	"""
	zero = EdgeFunction(np.zeros((support.size, support.size)), support)
	return EFamilySpec(zero, tuple(reversibleBasis(support)), np.asarray(theta, dtype=np.float64))


def reversibleDimension(support: EdgeSet) -> int:
	"""
	The dimension (|E| + |T0(E)|)/2 - 1 of the reversible kernels on a support.

	Raises:
		AsymmetricSupportError: The support is not symmetric.
	"""
	if not support.isSymmetric:
		raise AsymmetricSupportError("Reversible kernels need a symmetric support.")
	return (len(support) + len(support.selfLoops)) // 2 - 1


def _requireReversible(kernel: Kernel, tol: float) -> None:
	if not kernel.support.isSymmetric:
		raise NotReversibleError("A kernel with an asymmetric support is not reversible.")
	residual: float = balanceResidual(kernel)
	if residual > tol:
		raise NotReversibleError(f"Detailed balance fails by {residual:.3g}.")


def naturalCoords(kernel: Kernel, tol: float = REVERSIBILITY_TOLERANCE) -> NaturalCoords:
	"""
	The natural coordinates of a reversible kernel.

	θ^ij = log[P(i, j)P(j, i)/(P(m, x*)P(x*, m))] / (2(1 + δ_ij)) for (i, j) in T(E).

	Args:
		kernel: A reversible kernel.
		tol: The detailed balance tolerance.

	Returns:
		The coordinates.

	Raises:
		NotReversibleError: The kernel fails detailed balance.
	"""
	_requireReversible(kernel, tol)
	support: EdgeSet = kernel.support
	last: int = support.size - 1
	star: int = support.xStar
	matrix: MATRIX_TYPE = kernel.matrix
	reference: float = float(np.log(matrix[last, star]) + np.log(matrix[star, last]))
	values: list[float] = []
	for i, j in support.chartIndices():
		logProduct: float = float(np.log(matrix[i, j]) + np.log(matrix[j, i]))
		values.append((logProduct - reference) / (2.0 * (2.0 if i == j else 1.0)))
	return NaturalCoords(np.asarray(values), support)


def kernelFromNatural(coords: NaturalCoords) -> Kernel:
	"""
	The reversible kernel 𝔰(exp Σ θ^ij g_ij).

	Args:
		coords: The natural coordinates.

	Returns:
		The kernel.
	"""
	return efamilyKernel(chartFamily(coords.support, coords.values))


def expectationCoords(kernel: Kernel, tol: float = REVERSIBILITY_TOLERANCE) -> ExpectationCoords:
	"""
	The expectation coordinates η_ij = Q(i, j) + Q(j, i) of a reversible kernel.

	Raises:
		NotReversibleError: The kernel fails detailed balance.
	"""
	_requireReversible(kernel, tol)
	measure: MATRIX_TYPE = edgeMeasure(kernel).matrix
	indices = kernel.support.chartIndices()
	return ExpectationCoords(np.asarray([measure[i, j] + measure[j, i] for i, j in indices]), kernel.support)


def kernelFromExpectation(coords: ExpectationCoords) -> Kernel:
	"""
	Rebuilds a reversible kernel from its expectation coordinates.

	Each η_ij is split evenly over (i, j) and (j, i). The mass left over goes to (m, x*) and (x*, m).

	Args:
		coords: The expectation coordinates.

	Returns:
		The kernel.

	Raises:
		InfeasibleCoordsError: A coordinate or the leftover mass is not positive.
	"""
	support: EdgeSet = coords.support
	measure: MATRIX_TYPE = np.zeros((support.size, support.size))
	for (i, j), value in coords.asDict().items():
		if value <= 0.0:
			raise InfeasibleCoordsError(f"Coordinate ({i + 1},{j + 1}) is {value!r}, not positive.")
		measure[i, j] = measure[j, i] = value / 2.0
	residual: float = 1.0 - float(measure.sum())
	if residual <= 0.0:
		raise InfeasibleCoordsError(f"The coordinates leave mass {residual!r} for the excluded edge.")
	last: int = support.size - 1
	star: int = support.xStar
	measure[last, star] = measure[star, last] = residual / 2.0
	return kernelFromEdgeMeasure(validateEdgeMeasure(measure, support=support))


def efamilyLog(spec: EFamilySpec) -> EdgeFunction:
	"""The log function K + Σ θⁱgᵢ of a family member."""
	return EdgeFunction(spec.logMatrix(), spec.support)


def efamilyKernel(spec: EFamilySpec) -> Kernel:
	"""The kernel P_θ = 𝔰(exp(K + Σ θⁱgᵢ))."""
	return rescaleLog(efamilyLog(spec))


def efamilyPotential(spec: EFamilySpec) -> float:
	"""The potential ψ(θ), the log Perron-Frobenius root of exp(K + Σ θⁱgᵢ)."""
	return logPFRootOfLog(efamilyLog(spec))


def efamilyExpectation(spec: EFamilySpec) -> VECTOR_TYPE:
	"""
	The expectation parameters η_i = Q_θ[g_i].

	Args:
		spec: The family member.

	Returns:
		One expectation per generator.
	"""
	measure: MATRIX_TYPE = edgeMeasure(efamilyKernel(spec)).matrix
	return np.asarray([float(np.sum(measure * generator.matrix)) for generator in spec.generators])


def _shifted(spec: EFamilySpec, offsets: dict[int, float]) -> EFamilySpec:
	theta: VECTOR_TYPE = np.array(spec.theta, dtype=np.float64)
	for index, offset in offsets.items():
		theta[index] += offset
	return spec.withTheta(theta)


def fisherMetric(spec: EFamilySpec, step: float = DERIVATIVE_STEP) -> MATRIX_TYPE:
	"""
	The Fisher metric 𝔤_ij = Σ Q_θ ∂_i log P_θ ∂_j log P_θ.

	The score functions are central differences of log P_θ.

	Args:
		spec: The family member.
		step: The difference step.

	Returns:
		The d by d metric.
	"""
	measure: MATRIX_TYPE = edgeMeasure(efamilyKernel(spec)).matrix
	scores: list[MATRIX_TYPE] = []
	for index in range(spec.dimension):
		forward: MATRIX_TYPE = logKernel(efamilyKernel(_shifted(spec, {index: step}))).matrix
		backward: MATRIX_TYPE = logKernel(efamilyKernel(_shifted(spec, {index: -step}))).matrix
		scores.append((forward - backward) / (2.0 * step))
	metric: MATRIX_TYPE = np.zeros((spec.dimension, spec.dimension))
	for i in range(spec.dimension):
		for j in range(i, spec.dimension):
			metric[i, j] = metric[j, i] = float(np.sum(measure * scores[i] * scores[j]))
	return metric


def psiHessian(spec: EFamilySpec, step: float = HESSIAN_STEP) -> MATRIX_TYPE:
	"""
	The Hessian of ψ by central second differences.

	Args:
		spec: The family member.
		step: The difference step.

	Returns:
		The d by d Hessian.
	"""
	size: int = spec.dimension
	centre: float = efamilyPotential(spec)
	hessian: MATRIX_TYPE = np.zeros((size, size))
	for i in range(size):
		plus: float = efamilyPotential(_shifted(spec, {i: step}))
		minus: float = efamilyPotential(_shifted(spec, {i: -step}))
		hessian[i, i] = (plus - 2.0 * centre + minus) / step**2
		for j in range(i + 1, size):
			corners: list[float] = [
				efamilyPotential(_shifted(spec, {i: signI * step, j: signJ * step}))
				for signI, signJ in ((1, 1), (1, -1), (-1, 1), (-1, -1))
			]
			mixed: float = corners[0] - corners[1] - corners[2] + corners[3]
			hessian[i, j] = hessian[j, i] = mixed / (4.0 * step**2)
	return hessian


def psiGradient(spec: EFamilySpec, step: float = DERIVATIVE_STEP) -> VECTOR_TYPE:
	"""The gradient of ψ by central differences, which equals the expectation parameters."""
	return np.asarray([
		(efamilyPotential(_shifted(spec, {i: step})) - efamilyPotential(_shifted(spec, {i: -step})))
		/ (2.0 * step)
		for i in range(spec.dimension)
	])
