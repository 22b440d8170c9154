import numpy as np
import pytest

import qcsim
from qcsim import pauli

H2_HAMILTONIAN_TEXT = """\
# two-qubit H2 Hamiltonian, energies in Hartree
0.2976
0.3593 Z0
-0.4826 Z1
0.5818 Z0 Z1
0.0896 X0 X1
0.0896 Y0 Y1
"""


@pytest.fixture(scope="session")
def h2():
    return pauli.parse_hamiltonian(H2_HAMILTONIAN_TEXT)


@pytest.fixture(scope="session")
def h2_eigensystem(h2):
    """Exact-diagonalization oracle: (eigenvalues ascending, eigenvectors)."""
    matrix = pauli.to_matrix(h2, 2)
    return np.linalg.eigh(matrix)


@pytest.fixture()
def exact_accelerator():
    return qcsim.get_accelerator("statevector", {"shots": 0})


@pytest.fixture()
def hf_circuit_2q():
    """|10>: the 2-qubit reference determinant used throughout."""
    circuit = qcsim.create_composite("kernel")
    circuit.add(qcsim.create_instruction("X", [0]))
    return circuit


@pytest.fixture()
def pair_rotation_ansatz(hf_circuit_2q):
    """X(q0) followed by the one-parameter pair-rotation generator."""
    from qcsim import ansatz, fermion

    generator = fermion.jordan_wigner(
        fermion.anti_hermitian_excitation([0], [1]), 2
    )
    circuit = qcsim.create_composite("pair")
    circuit.add_all(hf_circuit_2q.children)
    circuit.add_all(ansatz.exp_pauli(generator, "t0").children)
    return circuit
