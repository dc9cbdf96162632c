# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.


# Future Modules:
from __future__ import annotations


EXIT_SUCCESS: int = 0
EXIT_FALSE: int = 1
EXIT_INPUT: int = 2
EXIT_NUMERICAL: int = 3


class MarkovGeometryError(Exception):
	"""Implements the base class for toolkit exceptions."""

	exitCode: int = EXIT_NUMERICAL


class InputError(MarkovGeometryError):
	"""Implements the base class for rejected inputs."""

	exitCode: int = EXIT_INPUT


class NumericalError(MarkovGeometryError):
	"""Implements the base class for numerical failures on valid inputs."""

	exitCode: int = EXIT_NUMERICAL


class UsageError(InputError):
	"""Raised when command line arguments cannot be parsed."""


class KernelFileError(InputError):
	"""Raised when a kernel or edge measure file cannot be read or fails its schema."""


class InvalidSizeError(InputError):
	"""Raised when the number of states is outside the supported range."""


class NotStochasticError(InputError):
	"""Raised when a matrix is not row-stochastic."""


class NotIrreducibleError(InputError):
	"""Raised when a support graph is not strongly connected."""


class SupportMismatchError(InputError):
	"""Raised when a declared or required support disagrees with the values."""


class DegenerateMarginalError(InputError):
	"""Raised when an edge measure has a vanishing marginal."""


class UnbalancedMarginalsError(InputError):
	"""Raised when the row and column marginals of an edge measure differ."""


class AsymmetricSupportError(InputError):
	"""Raised when an operation requires E = E*."""


class NotReversibleError(InputError):
	"""Raised when a kernel fails detailed balance."""


class NotSymmetricError(InputError):
	"""Raised when an edge measure is not symmetric."""


class InfeasibleCoordsError(InputError):
	"""Raised when expectation coordinates do not describe a positive edge measure."""


class IntersectionNotConnectedError(InputError):
	"""Raised when E ∩ E* is not strongly connected."""


class TooLargeError(InputError):
	"""Raised when a cycle enumeration would be too large."""


class DependentGeneratorsError(InputError):
	"""Raised when family generators are linearly dependent modulo N."""


class ParameterRangeError(InputError):
	"""Raised when a numeric parameter lies outside its admissible range."""


class NumericalFailureError(NumericalError):
	"""Raised when a linear solve or a numerical check fails beyond tolerance."""


class ConvergenceError(NumericalError):
	"""Raised when an iteration exhausts its budget."""


class VerdictDisagreementError(NumericalError):
	"""Raised when independent reversibility tests disagree."""
