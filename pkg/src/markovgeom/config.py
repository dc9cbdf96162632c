# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""
Toolkit settings.

Settings are layered: built-in defaults, then the shipped <name>.json.sample, then the user's <name>.json.
Numerical modules never read settings; the command line uses them to fill in omitted flags.
"""


# Future Modules:
from __future__ import annotations

# Built-in Modules:
import logging
import math
import os.path
import threading
from collections.abc import Iterator
from typing import Any, MutableMapping, Optional

# Third-party Modules:
import orjson

# Local Modules:
from .utils import getDataPath


DATA_DIRECTORY: str = getDataPath()
DEFAULTS: dict[str, Any] = {
	"logging_level": "INFO",
	"console_logging_level": "WARNING",
	"reversibility_tolerance": 1e-9,
	"zero_threshold": 1e-12,
	"demo_seed": 0,
	"demo_size": 3,
	"hull_samples": 40,
	"mhull_epsilon": 0.01,
}
SAVE_OPTIONS: int = orjson.OPT_APPEND_NEWLINE | orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS


logger: logging.Logger = logging.getLogger(__name__)


class ConfigError(Exception):
	"""Implements the base class for Config exceptions."""


def readLayer(path: str) -> dict[str, Any]:
	"""
	Reads one layer of settings.

	Args:
		path: The location of the JSON file.

	Returns:
		The settings, or an empty dict if the file doesn't exist.

	Raises:
		ConfigError: The path is a directory, or the file doesn't hold a JSON object.
	"""
	if not os.path.exists(path):
		return {}
	if os.path.isdir(path):
		raise ConfigError(f"'{path}' is a directory, not a file.")
	try:
		with open(path, "rb") as fileObj:
			layer: Any = orjson.loads(fileObj.read())
	except IOError as e:  # pragma: no cover
		raise ConfigError(f"{e.strerror}: '{e.filename}'") from None
	except orjson.JSONDecodeError:
		raise ConfigError(f"Corrupted json file: {path}") from None
	if not isinstance(layer, dict):
		raise ConfigError(f"'{path}' must contain a JSON object, not {type(layer).__name__}.")
	return layer


class Config(MutableMapping[str, Any]):
	"""Layered toolkit settings, shared between threads."""

	_configLock: threading.RLock = threading.RLock()

	def __init__(self, name: str = "config") -> None:
		"""
		Defines the constructor for the object.

		Args:
			name: The base name of the settings files.
		"""
		super().__init__()
		self._name: str = name
		self._settings: dict[str, Any] = {}
		self.sources: list[str] = []
		self.reload()

	@property
	def name(self) -> str:
		"""The base name of the settings files."""
		return self._name

	@property
	def userPath(self) -> str:
		"""The location of the user's settings file."""
		return os.path.join(DATA_DIRECTORY, f"{self.name}.json")

	def reload(self) -> None:
		"""Rebuilds the settings from the defaults and every layer on disc."""
		with self._configLock:
			self._settings = dict(DEFAULTS)
			self.sources.clear()
			for path in (f"{self.userPath}.sample", self.userPath):
				layer: dict[str, Any] = readLayer(path)
				if layer:
					self.sources.append(path)
					self._settings.update(layer)
		logger.debug(f"Loaded settings from {self.sources or 'defaults only'}.")

	def save(self) -> None:
		"""Writes the current settings to the user's settings file."""
		with self._configLock, open(self.userPath, "wb") as fileObj:
			fileObj.write(orjson.dumps(self._settings, option=SAVE_OPTIONS))

	def _number(self, key: str, default: Optional[float], kinds: tuple[type, ...]) -> Any:
		value: Any = self._settings.get(key)
		if isinstance(value, bool) or not isinstance(value, kinds) or not math.isfinite(value):
			if value is not None:
				logger.warning(f"Ignoring invalid value {value!r} for setting {key}.")
			return DEFAULTS[key] if default is None else default
		return value

	def getFloat(self, key: str, default: Optional[float] = None) -> float:
		"""
		Retrieves a numeric setting.

		Args:
			key: The setting name.
			default: The value used when the setting is missing or invalid, or None for the built-in default.

		Returns:
			The setting as a float.
		"""
		return float(self._number(key, default, (int, float)))

	def getInt(self, key: str, default: Optional[int] = None) -> int:
		"""
		Retrieves an integer setting.

		Args:
			key: The setting name.
			default: The value used when the setting is missing or invalid, or None for the built-in default.

		Returns:
			The setting as an int.
		"""
		return int(self._number(key, default, (int,)))

	def __getitem__(self, key: str) -> Any:
		return self._settings[key]

	def __setitem__(self, key: str, value: Any) -> None:
		self._settings[key] = value

	def __delitem__(self, key: str) -> None:
		del self._settings[key]

	def __iter__(self) -> Iterator[str]:
		return iter(self._settings)

	def __len__(self) -> int:
		return len(self._settings)
