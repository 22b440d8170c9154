"""Hybrid quantum-classical algorithms.

Each algorithm follows the same contract: ``initialize(options)`` with a
heterogeneous key-value map, then ``execute(buffer)`` which persists its
results into the buffer's metadata.
"""
from .base import Algorithm
from .vqe import VQE
from .adapt import AdaptVQE
from .qite import QITE
from .qcmx import QCMX
from .qeom import QEOM

__all__ = ["Algorithm", "VQE", "AdaptVQE", "QITE", "QCMX", "QEOM"]
