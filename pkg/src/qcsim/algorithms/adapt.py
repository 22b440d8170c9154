"""Adaptive ansatz growth driven by pool gradients.

Each iteration measures g_i = <psi|[H, A_i]|psi> for every pool operator;
if ||g|| clears the threshold, the operator with the largest |g_i| is
appended (new parameter at zero) and the whole parameter vector is
re-optimized with the VQE sub-algorithm.
"""
from __future__ import annotations

import numpy as np

from ..ansatz import build_pool, exp_pauli, reference_circuit
from ..backend import AcceleratorBuffer, expectation, operator_expectation, qalloc
from ..errors import AlgorithmError
from ..ir import CompositeInstruction, Parameter, create_composite, evaluate
from ..pauli import commutator
from .base import Algorithm
from .vqe import VQE


class AdaptVQE(Algorithm):
    algorithm_name = "adapt"
    required_keys = (
        "optimizer",
        "observable",
        "sub-algorithm",
        "n-electrons",
        "pool",
        "accelerator",
    )

    def _validate(self):
        sub = self.options.get_string("sub-algorithm")
        if sub != "vqe":
            raise AlgorithmError(f"unsupported sub-algorithm '{sub}' (only 'vqe')")

    def _symbolic_ansatz(self, reference, chosen) -> CompositeInstruction:
        circuit = create_composite("adapt_ansatz")
        circuit.add_all(reference.children)
        for k, (_, generator) in enumerate(chosen):
            circuit.add_all(exp_pauli(generator, Parameter.symbolic(f"t{k}")).children)
        return circuit

    def _execute(self, buffer: AcceleratorBuffer) -> None:
        observable = self.options.get_observable("observable")
        optimizer = self.options.get_optimizer("optimizer")
        accelerator = self.options.get_accelerator("accelerator")
        n_electrons = self.options.get_int("n-electrons")
        pool_name = self.options.get_string("pool")
        threshold = self.options.get_or("grad-threshold", "real", 1e-2)

        n_qubits = max(observable.n_qubits(), buffer.size)
        if n_qubits % 2:
            n_qubits += 1
        pool = build_pool(pool_name, n_electrons, n_qubits)
        if len(pool) == 0:
            raise AlgorithmError(f"pool '{pool_name}' is empty for this system")
        max_iter = self.options.get_or("max-iter", "int", len(pool))

        commutators = [commutator(observable, op) for _, op in pool.elements]
        reference = reference_circuit(n_electrons, n_qubits)

        chosen: list[tuple[str, object]] = []
        params: list[float] = []
        gradient_norms: list[float] = []
        energy = expectation(observable, reference, accelerator)

        while True:
            ansatz = self._symbolic_ansatz(reference, chosen)
            state = evaluate(ansatz, params)
            gradients = np.array(
                [
                    operator_expectation(c, state, accelerator).real
                    for c in commutators
                ]
            )
            norm = float(np.linalg.norm(gradients))
            gradient_norms.append(norm)
            if norm < threshold or len(chosen) >= max_iter:
                break

            winner = int(np.argmax(np.abs(gradients)))
            chosen.append(pool.elements[winner])
            params.append(0.0)

            vqe = VQE().initialize(
                {
                    "ansatz": self._symbolic_ansatz(reference, chosen),
                    "optimizer": optimizer,
                    "observable": observable,
                    "accelerator": accelerator,
                    "initial-point": list(params),
                }
            )
            scratch = qalloc(buffer.size)
            vqe.execute(scratch)
            params = scratch.metadata.get_real_list("opt-params")
            energy = scratch.metadata.get_real("opt-val")

        buffer.metadata.insert("opt-val", energy)
        buffer.metadata.insert("opt-params", list(params))
        buffer.metadata.insert("adapt-ops", [label for label, _ in chosen])
        buffer.metadata.insert("adapt-gradient-norms", gradient_norms)
