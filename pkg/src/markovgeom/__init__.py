# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.


# Future Modules:
from __future__ import annotations

# Built-in Modules:
import logging
import os.path
from typing import Any, Literal, Union, get_args

# Local Modules:
from .config import Config
from .utils import getDataPath


__version__: str = "0.0.0"


LITERAL_FAMILY_TAGS = Literal["reversible", "symmetric", "bistochastic", "memoryless"]
FAMILY_TAGS: tuple[LITERAL_FAMILY_TAGS, ...] = get_args(LITERAL_FAMILY_TAGS)
LITERAL_PROJECTION_MODES = Literal["m", "e"]
PROJECTION_MODES: tuple[LITERAL_PROJECTION_MODES, ...] = get_args(LITERAL_PROJECTION_MODES)
LITERAL_CHECK_METHODS = Literal["balance", "pf", "kolmogorov", "all"]
CHECK_METHODS: tuple[LITERAL_CHECK_METHODS, ...] = get_args(LITERAL_CHECK_METHODS)
LITERAL_CHARTS = Literal["natural", "expectation"]
CHARTS: tuple[LITERAL_CHARTS, ...] = get_args(LITERAL_CHARTS)
LITERAL_DEMOS = Literal["hulls", "counterexample", "lazycycle"]
DEMOS: tuple[LITERAL_DEMOS, ...] = get_args(LITERAL_DEMOS)


cfg: Config = Config()


LEVEL_NAMES: tuple[str, ...] = ("NOTSET", "DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
LOG_FORMAT: str = '{levelname}: from {name} in {threadName}: "{message}"'


def levelName(level: Union[str, int, None]) -> str:
	"""
	Normalizes a configured logging level.

	Args:
		level: A level name, a numeric level, or a number from 0 to 5 counting up from NOTSET.

	Returns:
		The level name, or NOTSET if the value can't be interpreted.
	"""
	if isinstance(level, str):
		name: str = level.strip().upper()
		return name if name in LEVEL_NAMES else LEVEL_NAMES[0]
	if isinstance(level, int) and 0 <= level <= logging.CRITICAL:
		return LEVEL_NAMES[level if level < len(LEVEL_NAMES) else level // 10]
	return LEVEL_NAMES[0]


def _withFormat(handler: logging.Handler, level: str, fmt: str, **kwargs: Any) -> logging.Handler:
	handler.setLevel(level)
	handler.setFormatter(logging.Formatter(fmt, style="{", **kwargs))
	return handler


def configureLogging(logFilePath: Union[str, None] = None) -> None:
	"""
	Installs the file and console log handlers.

	Library modules only create loggers; handlers are installed once by the command line front end.
	The console handler writes to standard error, which also carries the JSON error line,
	so it defaults to WARNING.

	Args:
		logFilePath: The debug log location, or None for the default next to the data directory.
	"""
	configured: Any = cfg.get("logging_level")
	fileLevel: str = levelName(configured)
	if fileLevel == LEVEL_NAMES[0] and configured not in (LEVEL_NAMES[0], 0):
		cfg["logging_level"] = fileLevel
		cfg.save()
	logFile = logging.FileHandler(
		logFilePath or getDataPath(os.path.pardir, "debug.log"), mode="a", encoding="utf-8"
	)
	handlers: list[logging.Handler] = [
		_withFormat(logFile, fileLevel, f"{LOG_FORMAT} @ {{asctime}}", datefmt="%Y-%m-%d %H:%M:%S"),
		_withFormat(logging.StreamHandler(), levelName(cfg.get("console_logging_level")), LOG_FORMAT),
	]
	logging.basicConfig(level=logging.NOTSET, handlers=handlers, force=True)
