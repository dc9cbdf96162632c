# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.


# Future Modules:
from __future__ import annotations

# Built-in Modules:
import logging
import sys
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any, Literal, NoReturn, Optional, get_args

# Third-party Modules:
import numpy as np
import orjson
from rapidfuzz import fuzz
from tap import Tap

# Local Modules:
from . import (
	LITERAL_CHARTS,
	LITERAL_CHECK_METHODS,
	LITERAL_DEMOS,
	LITERAL_PROJECTION_MODES,
	__version__,
	cfg,
	configureLogging,
)
from .chaindata.database import (
	coordinateDocument,
	divergenceDocument,
	dumpDocument,
	dumps,
	loadMatrix,
	matrixDocument,
	reportDocument,
)
from .chaindata.objects import ExperimentReport, Kernel
from .config import Config
from .core import (
	kernelFromEdgeMeasure,
	stationaryDistribution,
	timeReversal,
	validateEdgeMeasure,
	validateKernel,
)
from .errors import (
	EXIT_FALSE,
	EXIT_NUMERICAL,
	EXIT_SUCCESS,
	MarkovGeometryError,
	UsageError,
	VerdictDisagreementError,
)
from .families import FAMILY_ALIASES, counterexampleReport, familyMembership, hullsReport, lazyCycleReport
from .geometry import expectationCoords, geodesic, geodesicPath, naturalCoords
from .projections import klDivergence, project, projectionSupport, pythagoreanResidual
from .reversibility import MAX_CYCLE_STATES, reversibilityResidual
from .sampling import randomReversibleKernel
from .typedef import JSON_TYPE


LITERAL_FAMILY_ALIASES = Literal["rev", "sym", "bis", "iid"]
LITERAL_VERBS = Literal[
	"check", "reverse", "project", "divergence", "geodesic", "coords", "stationary", "family", "demo"
]
VERBS: tuple[LITERAL_VERBS, ...] = get_args(LITERAL_VERBS)
SINGLE_METHODS: tuple[LITERAL_CHECK_METHODS, ...] = ("balance", "pf", "kolmogorov")


logger: logging.Logger = logging.getLogger(__name__)


class VerbArguments(Tap):
	"""The options shared by every verb."""

	def configure(self) -> None:
		version: str = (
			f"%(prog)s v{__version__} "
			+ f"(Python {'.'.join(str(i) for i in sys.version_info[:3])} {sys.version_info.releaselevel})"
		)
		self.add_argument(
			"-v",
			"--version",
			help="Print the program version as well as the Python version.",
			action="version",
			version=version,
		)

	def error(self, message: str) -> NoReturn:
		raise UsageError(f"{self.prog}: {message}")


class CheckArguments(VerbArguments):
	file: str
	"""The kernel file."""
	method: LITERAL_CHECK_METHODS = "balance"
	"""The reversibility test, or all of them."""
	tol: Optional[float] = None
	"""The tolerance on the residual."""

	def configure(self) -> None:
		super().configure()
		self.add_argument("file")


class ReverseArguments(VerbArguments):
	file: str
	"""The kernel file."""
	out: Optional[str] = None
	"""Also write the time reversal to this file."""

	def configure(self) -> None:
		super().configure()
		self.add_argument("file")
		self.add_argument("-o", "--out", metavar="path")


class ProjectArguments(VerbArguments):
	file: str
	"""The kernel file."""
	mode: LITERAL_PROJECTION_MODES
	"""Project by mixture (m) or exponentially (e)."""
	out: Optional[str] = None
	"""Also write the projected kernel to this file."""
	seed: Optional[int] = None
	"""The seed of the reference kernel behind the Pythagorean residual."""

	def configure(self) -> None:
		super().configure()
		self.add_argument("file")
		self.add_argument("-o", "--out", metavar="path")


class DivergenceArguments(VerbArguments):
	first: str
	"""The kernel file of P1."""
	second: str
	"""The kernel file of P2."""

	def configure(self) -> None:
		super().configure()
		self.add_argument("first")
		self.add_argument("second")


class GeodesicArguments(VerbArguments):
	start: str
	"""The kernel file of P0."""
	end: str
	"""The kernel file of P1."""
	kind: LITERAL_PROJECTION_MODES
	"""Interpolate exponentially (e) or by mixture (m)."""
	t: Optional[float] = None
	"""The single point to compute."""
	steps: Optional[int] = None
	"""Compute the points t = k/steps for k = 0 to steps."""

	def configure(self) -> None:
		super().configure()
		self.add_argument("start")
		self.add_argument("end")

	def process_args(self) -> None:
		if (self.t is None) == (self.steps is None):
			raise UsageError("geodesic: exactly one of --t and --steps is required.")
		if self.steps is not None and self.steps < 1:
			raise UsageError(f"geodesic: --steps must be at least 1, got {self.steps}.")


class CoordsArguments(VerbArguments):
	file: str
	"""The kernel file of a reversible kernel."""
	chart: LITERAL_CHARTS
	"""The coordinate system."""

	def configure(self) -> None:
		super().configure()
		self.add_argument("file")


class StationaryArguments(VerbArguments):
	file: str
	"""The kernel file."""

	def configure(self) -> None:
		super().configure()
		self.add_argument("file")


class FamilyArguments(VerbArguments):
	file: str
	"""The kernel file."""
	test: LITERAL_FAMILY_ALIASES
	"""The family: reversible, symmetric, bistochastic, or memoryless (i.i.d.)."""
	tol: Optional[float] = None
	"""The tolerance of the membership test."""

	def configure(self) -> None:
		super().configure()
		self.add_argument("file")


class DemoArguments(VerbArguments):
	experiment: LITERAL_DEMOS
	"""The experiment to run."""
	m: Optional[int] = None
	"""The number of states."""
	seed: Optional[int] = None
	"""The random seed."""
	samples: Optional[int] = None
	"""The number of random symmetric kernels in the hulls experiment."""
	epsilon: Optional[float] = None
	"""The mixing weight of the m-hull experiment."""

	def configure(self) -> None:
		super().configure()
		self.add_argument("experiment")


PARSERS: dict[str, type[VerbArguments]] = {
	"check": CheckArguments,
	"reverse": ReverseArguments,
	"project": ProjectArguments,
	"divergence": DivergenceArguments,
	"geodesic": GeodesicArguments,
	"coords": CoordsArguments,
	"stationary": StationaryArguments,
	"family": FamilyArguments,
	"demo": DemoArguments,
}


@dataclass(frozen=True)
class Command:
	verb: str
	arguments: VerbArguments


def parse(argv: Sequence[str]) -> Command:
	"""
	Parses a command line.

	Args:
		argv: The arguments, starting with the verb.

	Returns:
		The parsed command.

	Raises:
		UsageError: The verb or one of its arguments is invalid.
	"""
	if not argv:
		raise UsageError(f"Missing verb. Expected one of {', '.join(VERBS)}.")
	verb, *remaining = argv
	if verb not in PARSERS:
		similarVerbs: list[str] = sorted(VERBS, key=lambda name: fuzz.ratio(name, verb), reverse=True)
		raise UsageError(f"Unknown verb {verb!r}. Did you mean {', '.join(similarVerbs[0:3])}?")
	parser: VerbArguments = PARSERS[verb](underscores_to_dashes=True, prog=f"markovgeom {verb}")
	return Command(verb, parser.parse_args(remaining))


class Executor:
	"""
	Runs parsed commands.

	Each verb is handled by a command_<verb> method returning the exit code and the output document.
	"""

	def __init__(self, config: Config = cfg) -> None:
		self.config: Config = config

	@property
	def tolerance(self) -> float:
		return self.config.getFloat("reversibility_tolerance")

	@property
	def zeroThreshold(self) -> float:
		return self.config.getFloat("zero_threshold")

	def loadKernel(self, path: str) -> Kernel:
		"""
		Loads a kernel file, converting edge measure files to their kernels.

		Args:
			path: The location of the file.

		Returns:
			The validated kernel.
		"""
		kind, matrix, support = loadMatrix(path)
		if kind == "edge_measure":
			return kernelFromEdgeMeasure(validateEdgeMeasure(matrix, self.zeroThreshold, support))
		return validateKernel(matrix, self.zeroThreshold, support)

	def execute(self, command: Command) -> tuple[int, Any]:
		logger.info(f"Executing {command.verb}.")
		result: tuple[int, Any] = getattr(self, f"command_{command.verb}")(command.arguments)
		return result

	def command_check(self, args: CheckArguments) -> tuple[int, Any]:
		kernel: Kernel = self.loadKernel(args.file)
		tol: float = self.tolerance if args.tol is None else args.tol
		if args.method != "all":
			residual: float = reversibilityResidual(kernel, args.method)
			reversible: bool = residual <= tol and kernel.support.isSymmetric
			document: dict[str, Any] = {"reversible": reversible, "method": args.method, "residual": residual}
			return EXIT_SUCCESS if reversible else EXIT_FALSE, document
		methods = [
			method for method in SINGLE_METHODS if method != "kolmogorov" or kernel.size <= MAX_CYCLE_STATES
		]
		residuals: dict[str, float] = {method: reversibilityResidual(kernel, method) for method in methods}
		verdicts: set[bool] = {residual <= tol for residual in residuals.values()}
		if not kernel.support.isSymmetric:
			# A kernel on an asymmetric support is never reversible, whatever its balance residual.
			verdicts = {False}
		if len(verdicts) != 1:
			raise VerdictDisagreementError(f"Reversibility tests disagree: {residuals}.")
		reversible = verdicts.pop()
		document = {
			"reversible": reversible,
			"method": "all",
			"residual": max(residuals.values()),
			"residuals": residuals,
		}
		return EXIT_SUCCESS if reversible else EXIT_FALSE, document

	def command_reverse(self, args: ReverseArguments) -> tuple[int, Any]:
		adjoint: Kernel = timeReversal(self.loadKernel(args.file))
		document: JSON_TYPE = matrixDocument(adjoint.matrix, adjoint.support)
		if args.out is not None:
			dumpDocument(document, args.out)
		return EXIT_SUCCESS, document

	def command_project(self, args: ProjectArguments) -> tuple[int, Any]:
		kernel: Kernel = self.loadKernel(args.file)
		projected: Kernel = project(kernel, args.mode)
		seed: int = self.config.getInt("demo_seed") if args.seed is None else args.seed
		reference: Kernel = randomReversibleKernel(
			np.random.default_rng(seed), kernel.size, projectionSupport(kernel, args.mode)
		)
		kernelDocument: dict[str, Any] = matrixDocument(projected.matrix, projected.support)
		if args.out is not None:
			dumpDocument(kernelDocument, args.out)
		residual: float = pythagoreanResidual(kernel, reference, args.mode, self.tolerance)
		return EXIT_SUCCESS, {**kernelDocument, "pythagorean_residual_sample": residual}

	def command_divergence(self, args: DivergenceArguments) -> tuple[int, Any]:
		divergence = klDivergence(self.loadKernel(args.first), self.loadKernel(args.second))
		return EXIT_SUCCESS, divergenceDocument(divergence)

	def command_geodesic(self, args: GeodesicArguments) -> tuple[int, Any]:
		start: Kernel = self.loadKernel(args.start)
		end: Kernel = self.loadKernel(args.end)
		if args.steps is not None:
			path: list[Kernel] = geodesicPath(start, end, args.kind, args.steps)
			return EXIT_SUCCESS, [matrixDocument(point.matrix, point.support) for point in path]
		assert args.t is not None
		point: Kernel = geodesic(start, end, args.kind, args.t)
		return EXIT_SUCCESS, matrixDocument(point.matrix, point.support)

	def command_coords(self, args: CoordsArguments) -> tuple[int, Any]:
		kernel: Kernel = self.loadKernel(args.file)
		if args.chart == "natural":
			return EXIT_SUCCESS, coordinateDocument(naturalCoords(kernel, self.tolerance).asDict())
		return EXIT_SUCCESS, coordinateDocument(expectationCoords(kernel, self.tolerance).asDict())

	def command_stationary(self, args: StationaryArguments) -> tuple[int, Any]:
		distribution = stationaryDistribution(self.loadKernel(args.file))
		return EXIT_SUCCESS, {"pi": distribution.probabilities}

	def command_family(self, args: FamilyArguments) -> tuple[int, Any]:
		tag = FAMILY_ALIASES[args.test]
		tol: float = self.tolerance if args.tol is None else args.tol
		member: bool = familyMembership(self.loadKernel(args.file), tag, tol)
		return EXIT_SUCCESS if member else EXIT_FALSE, {"family": tag, "member": member}

	def command_demo(self, args: DemoArguments) -> tuple[int, Any]:
		size: int = self.config.getInt("demo_size") if args.m is None else args.m
		reports: list[ExperimentReport]
		if args.experiment == "hulls":
			reports = hullsReport(
				size,
				self.config.getInt("demo_seed") if args.seed is None else args.seed,
				self.config.getInt("hull_samples") if args.samples is None else args.samples,
				self.config.getFloat("mhull_epsilon") if args.epsilon is None else args.epsilon,
			)
		elif args.experiment == "counterexample":
			reports = counterexampleReport(size)
		else:
			reports = lazyCycleReport(size)
		passed: bool = all(report.passed for report in reports)
		return EXIT_SUCCESS if passed else EXIT_FALSE, [reportDocument(report) for report in reports]


def errorDocument(error: BaseException) -> bytes:
	"""The one line JSON description of a failure."""
	return orjson.dumps(
		{"error": type(error).__name__, "message": str(error)}, option=orjson.OPT_APPEND_NEWLINE
	)


def execute(command: Command, executor: Optional[Executor] = None) -> tuple[int, bytes, bytes]:
	"""
	Executes a parsed command.

	Args:
		command: The command.
		executor: The executor, or None for one bound to the global configuration.

	Returns:
		The exit code, the standard output bytes, and the standard error bytes.
	"""
	try:
		code, document = (executor or Executor()).execute(command)
		return code, dumps(document), b""
	except MarkovGeometryError as e:
		logger.debug(f"{command.verb} failed: {e}")
		return e.exitCode, b"", errorDocument(e)
	except Exception as e:
		logger.exception(f"Unexpected failure in {command.verb}.")
		return EXIT_NUMERICAL, b"", errorDocument(e)


def main(argv: Sequence[str], executor: Optional[Executor] = None) -> tuple[int, bytes, bytes]:
	"""
	Parses and executes a command line.

	Args:
		argv: The arguments, starting with the verb.
		executor: The executor, or None for one bound to the global configuration.

	Returns:
		The exit code, the standard output bytes, and the standard error bytes.
	"""
	try:
		command: Command = parse(argv)
	except UsageError as e:
		return e.exitCode, b"", errorDocument(e)
	return execute(command, executor)


def run() -> None:
	configureLogging()
	code, output, errors = main(sys.argv[1:])
	sys.stdout.buffer.write(output)
	sys.stderr.buffer.write(errors)
	logging.shutdown()
	sys.exit(code)
