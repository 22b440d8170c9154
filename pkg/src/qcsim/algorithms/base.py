"""Common initialize/execute contract for algorithms."""
from __future__ import annotations

from ..backend import AcceleratorBuffer
from ..errors import AlgorithmError
from ..registry import HeterogeneousMap, as_het_map


class Algorithm:
    """Base class: subclasses declare required option keys and implement
    ``_execute``."""

    algorithm_name = "algorithm"
    required_keys: tuple[str, ...] = ()

    def __init__(self):
        self.options = HeterogeneousMap()
        self._initialized = False

    def name(self) -> str:
        return self.algorithm_name

    def initialize(self, options: "HeterogeneousMap | dict") -> "Algorithm":
        options = as_het_map(options)
        missing = [key for key in self.required_keys if not options.contains(key)]
        if missing:
            raise AlgorithmError(
                f"{self.algorithm_name} is missing required option(s): "
                + ", ".join(missing)
            )
        self.options = options
        self._validate()
        self._initialized = True
        return self

    def _validate(self) -> None:
        """Optional extra option validation in subclasses."""

    def execute(self, buffer: AcceleratorBuffer) -> None:
        if not self._initialized:
            raise AlgorithmError(
                f"{self.algorithm_name} must be initialized before execute"
            )
        self._execute(buffer)

    def _execute(self, buffer: AcceleratorBuffer) -> None:
        raise NotImplementedError
