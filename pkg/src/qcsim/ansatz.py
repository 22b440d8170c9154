"""Circuit generators: Hartree-Fock prep, Pauli-string exponentials,
first-order Trotterized UCCSD, and operator pools for adaptive ansatze.

All generators emit flat composites (leaf instructions only) so circuits
round-trip through the kernel serializer unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable

from .errors import IRError
from .fermion import (
    anti_hermitian_excitation,
    double_excitations,
    jordan_wigner,
    occupied_spin_orbitals,
    single_excitations,
)
from .ir import CompositeInstruction, Parameter, as_parameter, create_composite, create_instruction
from .pauli import PauliOperator

ANTI_HERMITIAN_TOLERANCE = 1e-12


@dataclass(frozen=True)
class UccsdSpec:
    """Electron/spin-orbital counts for the closed-shell UCCSD ansatz."""

    ne: int
    nq: int

    def __post_init__(self):
        if self.nq % 2 != 0:
            raise ValueError(f"nq must be even, got {self.nq}")
        if not 0 < self.ne <= self.nq:
            raise ValueError(f"need 0 < ne <= nq, got ne={self.ne}, nq={self.nq}")
        if self.ne % 2 != 0:
            raise ValueError(f"closed-shell ansatz needs even ne, got {self.ne}")


@dataclass
class OperatorPool:
    """Labeled anti-Hermitian generators for adaptive ansatz growth."""

    name: str
    elements: list[tuple[str, PauliOperator]]

    def __len__(self) -> int:
        return len(self.elements)

    def labels(self) -> list[str]:
        return [label for label, _ in self.elements]


def hartree_fock_circuit(ne: int, nq: int) -> CompositeInstruction:
    """X layer preparing the closed-shell reference determinant.

    Alpha spin-orbitals map to the first half of the register, so the
    occupied qubits are 0..ne/2-1 and nq/2..nq/2+ne/2-1.
    """
    UccsdSpec(ne, nq)
    return reference_circuit(ne, nq, name="hf")


def reference_circuit(ne: int, nq: int, name: str = "reference") -> CompositeInstruction:
    """X layer for an arbitrary electron count (odd counts fill alpha first)."""
    circuit = create_composite(name)
    for q in occupied_spin_orbitals(ne, nq):
        circuit.add(create_instruction("X", [q]))
    return circuit


def _validate_anti_hermitian(generator: PauliOperator) -> list[tuple]:
    """Split sum_k i c_k P_k into [(ops, c_k)]; rejects Hermitian parts."""
    scale = max((abs(t.coefficient) for t in generator.terms()), default=1.0)
    terms = []
    for term in generator.terms():
        if abs(term.coefficient.real) > ANTI_HERMITIAN_TOLERANCE * scale:
            raise ValueError(
                f"generator is not anti-Hermitian: term {term.pauli_string()} "
                f"has real coefficient {term.coefficient.real}"
            )
        terms.append((term.ops, term.coefficient.imag))
    return terms


def exp_pauli(
    generator: PauliOperator, angle: "Parameter | float | str"
) -> CompositeInstruction:
    """First-order product circuit for exp(angle * generator).

    The generator must be anti-Hermitian, written as sum_k i c_k P_k with
    real c_k.  Each term contributes basis changes into Z, a CNOT parity
    ladder onto its highest support qubit, and Rz(-2 c_k angle).  Terms
    are laid down in canonical (sorted Pauli string) order; identity
    terms only shift global phase and emit nothing.
    """
    angle = as_parameter(angle)
    circuit = create_composite("exp_pauli")
    for ops, c in _validate_anti_hermitian(generator):
        if not ops:
            continue
        qubits = [q for q, _ in ops]
        if angle.is_symbolic:
            rz_param = Parameter.symbolic(angle.var, angle.scale * (-2.0 * c))
        else:
            rz_param = Parameter.concrete(-2.0 * c * angle.value)
        for q, letter in ops:
            if letter == "X":
                circuit.add(create_instruction("H", [q]))
            elif letter == "Y":
                circuit.add(create_instruction("Sdg", [q]))
                circuit.add(create_instruction("H", [q]))
        for lo, hi in zip(qubits, qubits[1:]):
            circuit.add(create_instruction("CNOT", [lo, hi]))
        circuit.add(create_instruction("Rz", [qubits[-1]], [rz_param]))
        for lo, hi in reversed(list(zip(qubits, qubits[1:]))):
            circuit.add(create_instruction("CNOT", [lo, hi]))
        for q, letter in reversed(ops):
            if letter == "X":
                circuit.add(create_instruction("H", [q]))
            elif letter == "Y":
                circuit.add(create_instruction("H", [q]))
                circuit.add(create_instruction("S", [q]))
    return circuit


def uccsd_excitations(ne: int, nq: int) -> list[tuple[list[int], list[int]]]:
    """Excitation index pairs in canonical singles-then-doubles order."""
    singles = sorted(single_excitations(ne, nq, spin_preserving=True))
    doubles = sorted(double_excitations(ne, nq, sz_preserving=True))
    return singles + doubles


def uccsd_circuit(spec: UccsdSpec) -> CompositeInstruction:
    """Hartree-Fock prep + first-order Trotterized UCCSD rotations.

    One symbolic variable t<k> per excitation amplitude: spin-resolved
    spin-preserving singles followed by spin-projection-conserving
    doubles, index-lexicographic within each group.
    """
    circuit = create_composite("uccsd")
    circuit.add_all(hartree_fock_circuit(spec.ne, spec.nq).children)
    for k, (occ, virt) in enumerate(uccsd_excitations(spec.ne, spec.nq)):
        generator = jordan_wigner(
            anti_hermitian_excitation(occ, virt, f"t{k}"), spec.nq
        )
        circuit.add_all(exp_pauli(generator, Parameter.symbolic(f"t{k}")).children)
    return circuit


def count_double_excitations(nq: int, ne: int) -> int:
    """Reporting formula C(nq/2, ne)^2 for the benchmark harness.

    This is the count quoted alongside construction timings, not the
    number of spin-resolved double rotations the circuit lays down.
    """
    if nq % 2 != 0:
        raise ValueError(f"nq must be even, got {nq}")
    if not ne < nq // 2:
        raise ValueError(f"reporting condition ne < nq/2 violated: ne={ne}, nq={nq}")
    return comb(nq // 2, ne) ** 2


def _excitation_label(occ: Iterable[int], virt: Iterable[int]) -> str:
    o = ",".join(str(i) for i in occ)
    v = ",".join(str(a) for a in virt)
    return f"({o})->({v})"


def build_pool(name: str, ne: int, nq: int) -> OperatorPool:
    """Construct an operator pool for adaptive ansatz growth.

    "uccsd": every particle-conserving single and double excitation
    generator (JW image).  "singlet-adapted-uccsd": spin-summed linear
    combinations of the spin-preserving generators, normalized and
    deduplicated.
    """
    if nq % 2 != 0:
        raise ValueError(f"nq must be even, got {nq}")
    if not 0 < ne <= nq:
        raise ValueError(f"need 0 < ne <= nq, got ne={ne}")
    if name == "uccsd":
        elements = []
        pairs = sorted(single_excitations(ne, nq, spin_preserving=False)) + sorted(
            double_excitations(ne, nq, sz_preserving=False)
        )
        for occ, virt in pairs:
            generator = jordan_wigner(anti_hermitian_excitation(occ, virt), nq)
            if generator.is_zero():
                continue
            elements.append((_excitation_label(occ, virt), generator))
        return OperatorPool(name, elements)
    if name == "singlet-adapted-uccsd":
        return _singlet_adapted_pool(ne, nq)
    raise ValueError(
        f"unknown pool '{name}'; supported: uccsd, singlet-adapted-uccsd"
    )


def _normalized(op: PauliOperator) -> PauliOperator:
    norm = sum(abs(t.coefficient) ** 2 for t in op.terms()) ** 0.5
    return op * (1.0 / norm) if norm > 0 else op


def _spatial_signature(indices: Iterable[int], n_spatial: int) -> tuple[int, ...]:
    return tuple(sorted(i % n_spatial for i in indices))


def _singlet_adapted_pool(ne: int, nq: int) -> OperatorPool:
    n_spatial = nq // 2
    groups: dict[tuple, PauliOperator] = {}
    for occ, virt in single_excitations(ne, nq, spin_preserving=True) + double_excitations(
        ne, nq, sz_preserving=True
    ):
        signature = (
            _spatial_signature(occ, n_spatial),
            _spatial_signature(virt, n_spatial),
        )
        generator = jordan_wigner(anti_hermitian_excitation(occ, virt), nq)
        groups[signature] = groups.get(signature, PauliOperator.zero()) + generator
    elements = []
    seen: list[PauliOperator] = []
    for signature in sorted(groups):
        combined = _normalized(groups[signature])
        if combined.is_zero() or any(combined.isclose(p) for p in seen):
            continue
        seen.append(combined)
        occ_sig, virt_sig = signature
        elements.append((f"singlet_{_excitation_label(occ_sig, virt_sig)}", combined))
    return OperatorPool("singlet-adapted-uccsd", elements)
