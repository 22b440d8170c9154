"""Statevector accelerator, qubit-register buffer, and expectation values.

Conventions (single source of truth for the whole framework):
qubit 0 is the leftmost character of every bitstring, the most
significant bit of a statevector amplitude index, and the leftmost
Kronecker factor of ``pauli.to_matrix``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import BackendError
from .ir import CompositeInstruction, gate_matrix
from .pauli import PauliKey, PauliOperator, PauliTerm, expectation_from_counts, observe
from .registry import HeterogeneousMap, as_het_map

MAX_QUBITS = 20
_PROB_CUTOFF = 1e-16


@dataclass
class ExecutionResult:
    """Outcome distribution of one executed circuit on a buffer."""

    circuit_name: str
    counts: dict[str, int] = field(default_factory=dict)
    probabilities: dict[str, float] = field(default_factory=dict)
    measured_qubits: tuple[int, ...] = ()

    @property
    def outcomes(self) -> dict[str, float]:
        """Sampled counts when present, exact weights otherwise."""
        return self.counts if self.counts else self.probabilities


class AcceleratorBuffer:
    """Register handle collecting execution results and metadata."""

    def __init__(self, size: int):
        if size < 1:
            raise BackendError(f"buffer size must be >= 1, got {size}")
        self.size = size
        self.executions: list[ExecutionResult] = []
        self.metadata = HeterogeneousMap()

    @property
    def counts(self) -> dict[str, int]:
        return self.executions[-1].counts if self.executions else {}

    @property
    def probabilities(self) -> dict[str, float]:
        return self.executions[-1].probabilities if self.executions else {}

    def __getitem__(self, key: str):
        kind = self.metadata.kind_of(key)
        return self.metadata.get(key, kind)

    def __contains__(self, key: str) -> bool:
        return self.metadata.contains(key)

    def __repr__(self) -> str:
        return f"AcceleratorBuffer(size={self.size}, executions={len(self.executions)})"


def qalloc(n: int) -> AcceleratorBuffer:
    return AcceleratorBuffer(n)


@dataclass
class AcceleratorConfig:
    """shots == 0 selects exact-expectation mode."""

    shots: int = 0
    seed: int | None = None


class StatevectorAccelerator:
    """Noiseless dense statevector backend (shot sampling or exact mode)."""

    def __init__(self):
        self.config = AcceleratorConfig()
        self._rng = np.random.default_rng()

    def name(self) -> str:
        return "statevector"

    def initialize(
        self, options: "AcceleratorConfig | HeterogeneousMap | dict | None" = None
    ) -> "StatevectorAccelerator":
        if isinstance(options, AcceleratorConfig):
            config = options
        else:
            het = as_het_map(options)
            config = AcceleratorConfig(
                shots=het.get_or("shots", "int", 0),
                seed=het.get_or("seed", "int", None),
            )
        if config.shots < 0:
            raise BackendError(f"shots must be >= 0, got {config.shots}")
        self.config = config
        self._rng = np.random.default_rng(config.seed)
        return self

    @property
    def exact_mode(self) -> bool:
        return self.config.shots == 0

    def execute(
        self,
        buffer: AcceleratorBuffer,
        circuits: "CompositeInstruction | Sequence[CompositeInstruction]",
    ) -> list[ExecutionResult]:
        if isinstance(circuits, CompositeInstruction):
            circuits = [circuits]
        results = []
        for circuit in circuits:
            results.append(self._execute_one(buffer, circuit))
        buffer.executions.extend(results)
        return results

    def _execute_one(
        self, buffer: AcceleratorBuffer, circuit: CompositeInstruction
    ) -> ExecutionResult:
        if not circuit.is_concrete:
            raise BackendError(
                f"circuit '{circuit.name}' has free variables {circuit.variables}"
            )
        if circuit.max_qubit() >= buffer.size:
            raise BackendError(
                f"circuit '{circuit.name}' touches qubit {circuit.max_qubit()} "
                f"but buffer has {buffer.size}"
            )
        n = buffer.size
        state = _zero_state(n)
        measured: list[int] = []
        for inst in circuit.instructions():
            if inst.name == "Measure":
                if inst.qubits[0] not in measured:
                    measured.append(inst.qubits[0])
                continue
            if any(q in measured for q in inst.qubits):
                raise BackendError(
                    f"gate {inst.name} on {inst.qubits} after Measure"
                )
            state = _apply_gate(state, inst)
        if not measured:
            measured = list(range(n))
        measured_sorted = tuple(sorted(measured))
        marginal = _marginal_probabilities(state, measured_sorted)
        result = ExecutionResult(circuit.name, measured_qubits=measured_sorted)
        if self.exact_mode:
            result.probabilities = _weights_to_bitstrings(marginal, measured_sorted, n)
        else:
            flat = marginal.reshape(-1)
            flat = flat / flat.sum()
            draws = self._rng.choice(flat.size, size=self.config.shots, p=flat)
            counts: dict[str, int] = {}
            width = len(measured_sorted)
            for idx, hits in zip(*np.unique(draws, return_counts=True)):
                bits = format(int(idx), f"0{width}b")
                counts[_embed_bits(bits, measured_sorted, n)] = int(hits)
            result.counts = counts
        return result

    def execute_and_reduce(
        self, circuit: CompositeInstruction, term: PauliTerm, n_qubits: int
    ) -> float:
        """Run one measured circuit and return the term's parity average."""
        scratch = AcceleratorBuffer(n_qubits)
        result = self._execute_one(scratch, circuit)
        return expectation_from_counts(
            PauliTerm(term.ops, 1.0), result.outcomes
        )


def _zero_state(n: int) -> np.ndarray:
    if n > MAX_QUBITS:
        raise BackendError(f"statevector capped at {MAX_QUBITS} qubits, got {n}")
    state = np.zeros((2,) * n, dtype=complex)
    state[(0,) * n] = 1.0
    return state


def _apply_gate(state: np.ndarray, inst) -> np.ndarray:
    matrix = gate_matrix(inst)
    n = state.ndim
    if len(inst.qubits) == 1:
        q = inst.qubits[0]
        out = np.tensordot(matrix, state, axes=([1], [q]))
        return np.moveaxis(out, 0, q)
    q1, q2 = inst.qubits
    tensor = matrix.reshape(2, 2, 2, 2)
    out = np.tensordot(tensor, state, axes=([2, 3], [q1, q2]))
    return np.moveaxis(out, [0, 1], [q1, q2])


def _marginal_probabilities(state: np.ndarray, measured: tuple[int, ...]) -> np.ndarray:
    probs = np.abs(state) ** 2
    unmeasured = tuple(q for q in range(state.ndim) if q not in measured)
    if unmeasured:
        probs = probs.sum(axis=unmeasured)
    return probs


def _embed_bits(bits: str, measured: tuple[int, ...], n: int) -> str:
    full = ["0"] * n
    for bit, q in zip(bits, measured):
        full[q] = bit
    return "".join(full)


def _weights_to_bitstrings(
    marginal: np.ndarray, measured: tuple[int, ...], n: int
) -> dict[str, float]:
    width = len(measured)
    flat = marginal.reshape(-1)
    out = {}
    for idx in np.flatnonzero(flat > _PROB_CUTOFF):
        bits = format(int(idx), f"0{width}b")
        out[_embed_bits(bits, measured, n)] = float(flat[idx])
    return out


def statevector(circuit: CompositeInstruction, n: int) -> np.ndarray:
    """Amplitudes of circuit|0...0>; index bit order puts qubit 0 first."""
    if not circuit.is_concrete:
        raise BackendError(f"circuit '{circuit.name}' has free variables")
    if any(inst.name == "Measure" for inst in circuit.instructions()):
        raise BackendError("statevector of a measured circuit is undefined")
    if circuit.max_qubit() >= n:
        raise BackendError(
            f"circuit touches qubit {circuit.max_qubit()} but n={n}"
        )
    state = _zero_state(n)
    for inst in circuit.instructions():
        state = _apply_gate(state, inst)
    return state.reshape(-1)


def apply_instructions(state: np.ndarray, instructions) -> np.ndarray:
    """Evolve a state tensor through a sequence of concrete gates."""
    for inst in instructions:
        if inst.name == "Measure":
            raise BackendError("apply_instructions cannot process Measure")
        state = _apply_gate(state, inst)
    return state


def apply_pauli_string(state: np.ndarray, key: PauliKey) -> np.ndarray:
    """Apply one Pauli string to a state tensor of shape (2,)*n."""
    n = state.ndim
    out = state.copy()
    for q, letter in key:
        if letter in ("X", "Y"):
            out = np.flip(out, axis=q)
        index1 = tuple(1 if i == q else slice(None) for i in range(n))
        if letter == "Y":
            index0 = tuple(0 if i == q else slice(None) for i in range(n))
            out[index0] *= -1j
            out[index1] *= 1j
        elif letter == "Z":
            out[index1] *= -1.0
    return out


def apply_pauli(op: PauliOperator, state: np.ndarray) -> np.ndarray:
    """Apply a PauliOperator term-by-term to a state tensor or flat vector."""
    flat_input = state.ndim == 1
    if flat_input:
        n = int(round(np.log2(state.size)))
        state = state.reshape((2,) * n)
    out = np.zeros_like(state)
    for term in op.terms():
        out = out + term.coefficient * apply_pauli_string(state, term.ops)
    return out.reshape(-1) if flat_input else out


def statevector_expectation(op: PauliOperator, state: np.ndarray) -> complex:
    """<psi|op|psi> for a flat amplitude vector (op need not be Hermitian)."""
    n = int(round(np.log2(state.size)))
    tensor = state.reshape((2,) * n)
    return complex(np.vdot(state, apply_pauli(op, tensor).reshape(-1)))


def expectation(
    obs: PauliOperator,
    circuit: CompositeInstruction,
    accelerator: StatevectorAccelerator,
) -> float:
    """<psi|obs|psi> through the observe/measure/reduce pipeline.

    Exact mode combines exact outcome weights; sampled mode combines
    sampled counts.  The identity term enters as a constant offset.
    """
    if not obs.is_hermitian():
        raise ValueError("expectation requires a Hermitian observable")
    value = operator_expectation(obs, circuit, accelerator)
    return value.real


def operator_expectation(
    op: PauliOperator,
    circuit: CompositeInstruction,
    accelerator: StatevectorAccelerator,
) -> complex:
    """<psi|op|psi> for a general (possibly non-Hermitian) Pauli sum.

    Exact mode evaluates directly on the statevector; sampled mode
    measures each bare Pauli string separately and recombines with the
    complex coefficients.
    """
    n = max(circuit.max_qubit() + 1, op.n_qubits(), 1)
    if accelerator.exact_mode:
        state = statevector(circuit, n)
        return statevector_expectation(op, state)
    total = complex(op.identity_coefficient)
    hermitian_strings = PauliOperator.from_terms(
        {term.ops: 1.0 for term in op.terms() if term.ops}
    )
    parities = {}
    for term, measured in observe(hermitian_strings, circuit):
        parities[term.ops] = accelerator.execute_and_reduce(measured, term, n)
    for term in op.terms():
        if term.ops:
            total += term.coefficient * parities[term.ops]
    return total
