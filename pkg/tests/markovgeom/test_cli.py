# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.


# Future Modules:
from __future__ import annotations

# Built-in Modules:
import os.path
import tempfile
from typing import Any
from unittest import TestCase
from unittest.mock import Mock, patch

# Third-party Modules:
import orjson
from numpy.testing import assert_allclose

# Markovgeom Modules:
from markovgeom import cli
from markovgeom.config import Config
from markovgeom.errors import UsageError


TWO_STATE: list[list[float]] = [[0.9, 0.1], [0.5, 0.5]]
LAZY_FORWARD: list[list[float]] = [[0.2, 0.6, 0.2], [0.2, 0.2, 0.6], [0.6, 0.2, 0.2]]
SYMMETRIC: list[list[float]] = [[0.5, 0.3, 0.2], [0.3, 0.4, 0.3], [0.2, 0.3, 0.5]]
BIRTH_DEATH: list[list[float]] = [[0.5, 0.5, 0.0], [0.25, 0.5, 0.25], [0.0, 0.5, 0.5]]
LEAKY_CYCLE: list[list[float]] = [[0.5, 0.5, 0.0], [0.5, 0.5 - 1e-6, 1e-6], [0.5, 0.0, 0.5]]


class TestParse(TestCase):
	def testVerbs(self) -> None:
		with self.assertRaisesRegex(UsageError, "Missing verb"):
			cli.parse([])
		with self.assertRaisesRegex(UsageError, "Did you mean check"):
			cli.parse(["chek", "kernel.json"])
		command: cli.Command = cli.parse(["check", "kernel.json"])
		self.assertEqual(command.verb, "check")
		self.assertEqual(command.arguments.file, "kernel.json")  # type: ignore[attr-defined]
		self.assertEqual(command.arguments.method, "balance")  # type: ignore[attr-defined]
		command = cli.parse(["check", "kernel.json", "--method", "all", "--tol", "1e-6"])
		self.assertEqual(command.arguments.method, "all")  # type: ignore[attr-defined]
		self.assertEqual(command.arguments.tol, 1e-6)  # type: ignore[attr-defined]
		command = cli.parse(["project", "kernel.json", "--mode", "e", "-o", "out.json"])
		self.assertEqual(command.arguments.out, "out.json")  # type: ignore[attr-defined]
		command = cli.parse(["family", "kernel.json", "--test", "iid"])
		self.assertEqual(command.arguments.test, "iid")  # type: ignore[attr-defined]

	def testInvalidArguments(self) -> None:
		with self.assertRaises(UsageError):
			cli.parse(["check"])
		with self.assertRaises(UsageError):
			cli.parse(["check", "kernel.json", "--method", "junk"])
		with self.assertRaises(UsageError):
			cli.parse(["project", "kernel.json"])
		with self.assertRaises(UsageError):
			cli.parse(["family", "kernel.json", "--test", "reversible"])
		with self.assertRaisesRegex(UsageError, "exactly one"):
			cli.parse(["geodesic", "a.json", "b.json", "--kind", "e"])
		with self.assertRaisesRegex(UsageError, "exactly one"):
			cli.parse(["geodesic", "a.json", "b.json", "--kind", "e", "--t", "0.5", "--steps", "2"])
		with self.assertRaisesRegex(UsageError, "at least 1"):
			cli.parse(["geodesic", "a.json", "b.json", "--kind", "m", "--steps", "0"])

	def testErrorDocument(self) -> None:
		self.assertEqual(
			cli.errorDocument(UsageError("bad")), b'{"error":"UsageError","message":"bad"}\n'
		)


class TestMain(TestCase):
	def setUp(self) -> None:
		self.directory = tempfile.TemporaryDirectory()
		self.executor: cli.Executor = cli.Executor(Config())

	def tearDown(self) -> None:
		self.directory.cleanup()
		del self.executor

	def writeDocument(self, name: str, matrix: list[list[float]], **extra: Any) -> str:
		path: str = os.path.join(self.directory.name, name)
		document: dict[str, Any] = {"size": len(matrix), "matrix": matrix, **extra}
		with open(path, "wb") as fileObj:
			fileObj.write(orjson.dumps(document))
		return path

	def run_(self, *argv: str) -> tuple[int, Any, bytes]:
		code, output, errors = cli.main(argv, self.executor)
		return code, orjson.loads(output) if output else None, errors

	def testStationary(self) -> None:
		code, document, errors = self.run_("stationary", self.writeDocument("two.json", TWO_STATE))
		self.assertEqual((code, errors), (0, b""))
		assert_allclose(document["pi"], [5.0 / 6.0, 1.0 / 6.0], atol=1e-14)
		measure: str = self.writeDocument("q.json", [[0.1, 0.2], [0.2, 0.5]], kind="edge_measure")
		code, document, _ = self.run_("stationary", measure)
		self.assertEqual(code, 0)
		assert_allclose(document["pi"], [0.3, 0.7], atol=1e-14)
		code, output, errors = cli.execute(cli.parse(["stationary", measure]), self.executor)
		self.assertEqual((code, errors), (0, b""))
		self.assertEqual(output, cli.dumps({"pi": orjson.loads(output)["pi"]}))

	def testCheck(self) -> None:
		code, document, _ = self.run_("check", self.writeDocument("two.json", TWO_STATE))
		self.assertEqual(code, 0)
		self.assertEqual((document["reversible"], document["method"]), (True, "balance"))
		forward: str = self.writeDocument("forward.json", LAZY_FORWARD)
		for method in ("balance", "pf", "kolmogorov"):
			code, document, _ = self.run_("check", forward, "--method", method)
			self.assertEqual(code, 1)
			self.assertFalse(document["reversible"])
		code, document, _ = self.run_("check", forward, "--method", "all")
		self.assertEqual(code, 1)
		self.assertEqual(sorted(document["residuals"]), ["balance", "kolmogorov", "pf"])
		self.assertEqual(document["residual"], max(document["residuals"].values()))
		code, document, _ = self.run_("check", self.writeDocument("sym.json", SYMMETRIC), "--method", "all")
		self.assertEqual(code, 0)
		self.assertTrue(document["reversible"])
		code, document, _ = self.run_("check", forward, "--tol", "1.0")
		self.assertEqual(code, 0)

	def testCheckAsymmetricSupport(self) -> None:
		path: str = self.writeDocument("leaky.json", LEAKY_CYCLE)
		for method in ("all", "balance"):
			code, document, _ = self.run_("check", path, "--method", method, "--tol", "1e-3")
			self.assertEqual(code, 1)
			self.assertFalse(document["reversible"])
		code, document, _ = self.run_("check", path, "--method", "all", "--tol", "1e-3")
		self.assertLess(document["residuals"]["balance"], 1e-3)
		self.assertEqual(document["residuals"]["pf"], "infinity")
		self.assertEqual(document["residual"], "infinity")

	def testInputErrors(self) -> None:
		code, output, errors = self.run_("check", os.path.join(self.directory.name, "missing.json"))
		self.assertEqual((code, output), (2, None))
		self.assertEqual(orjson.loads(errors)["error"], "KernelFileError")
		code, _, errors = self.run_("check", self.writeDocument("bad.json", [[0.5, 0.4], [0.5, 0.5]]))
		self.assertEqual(code, 2)
		self.assertEqual(orjson.loads(errors)["error"], "NotStochasticError")
		reducible: str = self.writeDocument("reducible.json", [[1.0, 0.0], [0.5, 0.5]])
		code, _, errors = self.run_("stationary", reducible)
		self.assertEqual((code, orjson.loads(errors)["error"]), (2, "NotIrreducibleError"))
		code, _, errors = self.run_("frobnicate")
		self.assertEqual((code, orjson.loads(errors)["error"]), (2, "UsageError"))
		forward: str = self.writeDocument("forward.json", LAZY_FORWARD)
		code, _, errors = self.run_("coords", forward, "--chart", "natural")
		self.assertEqual((code, orjson.loads(errors)["error"]), (2, "NotReversibleError"))

	def testReverse(self) -> None:
		out: str = os.path.join(self.directory.name, "reversed.json")
		code, output, errors = cli.main(
			["reverse", self.writeDocument("forward.json", LAZY_FORWARD), "-o", out], self.executor
		)
		self.assertEqual((code, errors), (0, b""))
		with open(out, "rb") as fileObj:
			self.assertEqual(fileObj.read(), output)
		assert_allclose(orjson.loads(output)["matrix"], [[0.2, 0.2, 0.6], [0.6, 0.2, 0.2], [0.2, 0.6, 0.2]])

	def testProject(self) -> None:
		out: str = os.path.join(self.directory.name, "projected.json")
		forward: str = self.writeDocument("forward.json", LAZY_FORWARD)
		code, document, _ = self.run_("project", forward, "--mode", "m", "-o", out, "--seed", "3")
		self.assertEqual(code, 0)
		assert_allclose(document["matrix"], [[0.2, 0.4, 0.4], [0.4, 0.2, 0.4], [0.4, 0.4, 0.2]], atol=1e-12)
		self.assertLess(abs(document["pythagorean_residual_sample"]), 1e-10)
		with open(out, "rb") as fileObj:
			written: dict[str, Any] = orjson.loads(fileObj.read())
		self.assertNotIn("pythagorean_residual_sample", written)
		self.assertEqual(written["matrix"], document["matrix"])
		code, document, _ = self.run_("project", self.writeDocument("bd.json", BIRTH_DEATH), "--mode", "e")
		self.assertEqual(code, 0)
		assert_allclose(document["matrix"], BIRTH_DEATH, atol=1e-10)
		self.assertEqual(document["support"], [[1, 1], [1, 2], [2, 1], [2, 2], [2, 3], [3, 2], [3, 3]])

	def testDivergence(self) -> None:
		full: str = self.writeDocument("sym.json", SYMMETRIC)
		sparse: str = self.writeDocument("bd.json", BIRTH_DEATH)
		code, document, _ = self.run_("divergence", full, full)
		self.assertEqual((code, document), (0, {"value": 0.0}))
		code, document, _ = self.run_("divergence", full, sparse)
		self.assertEqual((code, document), (0, {"value": "infinity"}))
		code, document, _ = self.run_("divergence", sparse, full)
		self.assertGreater(document["value"], 0.0)

	def testGeodesic(self) -> None:
		start: str = self.writeDocument("sym.json", SYMMETRIC)
		end: str = self.writeDocument("forward.json", LAZY_FORWARD)
		code, document, _ = self.run_("geodesic", start, end, "--kind", "m", "--steps", "2")
		self.assertEqual(code, 0)
		self.assertEqual(len(document), 3)
		assert_allclose(document[0]["matrix"], SYMMETRIC)
		assert_allclose(document[2]["matrix"], LAZY_FORWARD)
		code, document, _ = self.run_("geodesic", start, end, "--kind", "e", "--t", "0.5")
		self.assertEqual(code, 0)
		assert_allclose([sum(row) for row in document["matrix"]], 1.0)
		code, _, errors = self.run_("geodesic", start, end, "--kind", "m", "--t", "2")
		self.assertEqual((code, orjson.loads(errors)["error"]), (2, "ParameterRangeError"))

	def testCoords(self) -> None:
		path: str = self.writeDocument("bd.json", BIRTH_DEATH)
		code, document, _ = self.run_("coords", path, "--chart", "expectation")
		self.assertEqual(code, 0)
		self.assertEqual(sorted(document), ["(1,1)", "(2,1)", "(2,2)", "(3,3)"])
		assert_allclose(document["(2,1)"], 0.25, atol=1e-12)
		code, document, _ = self.run_("coords", path, "--chart", "natural")
		self.assertEqual(code, 0)
		self.assertEqual(len(document), 4)

	def testFamily(self) -> None:
		path: str = self.writeDocument("sym.json", SYMMETRIC)
		code, document, _ = self.run_("family", path, "--test", "sym")
		self.assertEqual((code, document), (0, {"family": "symmetric", "member": True}))
		code, document, _ = self.run_("family", path, "--test", "iid")
		self.assertEqual((code, document), (1, {"family": "memoryless", "member": False}))
		code, document, _ = self.run_("family", path, "--test", "bis")
		self.assertEqual(code, 0)

	def testDemo(self) -> None:
		code, document, _ = self.run_("demo", "lazycycle")
		self.assertEqual(code, 0)
		self.assertEqual(len(document), 1)
		self.assertTrue(document[0]["pass"])
		code, document, _ = self.run_("demo", "counterexample", "--m", "4")
		self.assertEqual(code, 0)
		self.assertEqual([report["params"]["m"] for report in document], [4, 4, 4])
		code, document, _ = self.run_("demo", "hulls", "--m", "3", "--seed", "0")
		self.assertEqual(code, 0)
		self.assertEqual([(report["rank"], report["expected"]) for report in document], [(8, 8), (6, 6)])

	def testDeterministicOutput(self) -> None:
		path: str = self.writeDocument("forward.json", LAZY_FORWARD)
		first = cli.main(["project", path, "--mode", "e"], self.executor)
		second = cli.main(["project", path, "--mode", "e"], self.executor)
		self.assertEqual(first, second)
		self.assertTrue(first[1].endswith(b"\n"))

	@patch("markovgeom.cli.logger")
	@patch.object(cli.Executor, "command_stationary", side_effect=RuntimeError("boom"))
	def testUnexpectedFailure(self, mockCommand: Mock, mockLogger: Mock) -> None:
		code, output, errors = cli.main(["stationary", "kernel.json"], self.executor)
		self.assertEqual((code, output), (3, b""))
		self.assertEqual(orjson.loads(errors), {"error": "RuntimeError", "message": "boom"})
		mockLogger.exception.assert_called_once()


class TestRun(TestCase):
	@patch("markovgeom.cli.configureLogging")
	@patch("markovgeom.cli.sys")
	def testRun(self, mockSys: Mock, mockConfigureLogging: Mock) -> None:
		mockSys.argv = ["markovgeom", "frobnicate"]
		cli.run()
		mockConfigureLogging.assert_called_once()
		mockSys.stdout.buffer.write.assert_called_once_with(b"")
		written: bytes = mockSys.stderr.buffer.write.call_args.args[0]
		self.assertEqual(orjson.loads(written)["error"], "UsageError")
		mockSys.exit.assert_called_once_with(2)
