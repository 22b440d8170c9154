import numpy as np
import pytest

from qcsim.fermion import (
    FermionOperator,
    FermionTerm,
    anti_hermitian_excitation,
    double_excitations,
    excitation_term,
    jordan_wigner,
    occupied_spin_orbitals,
    single_excitations,
)
from qcsim.pauli import PauliOperator, to_matrix


def ladder_matrix(mode: int, create: bool, n_modes: int) -> np.ndarray:
    """Dense fermionic ladder operator oracle (JW-independent construction).

    Built directly from the occupation-number basis with the same mode
    ordering convention as the qubit register (mode 0 leftmost).
    """
    dim = 2**n_modes
    out = np.zeros((dim, dim), dtype=complex)
    for basis in range(dim):
        bits = [(basis >> (n_modes - 1 - m)) & 1 for m in range(n_modes)]
        if create and bits[mode] == 0:
            sign = (-1) ** sum(bits[:mode])
            new = basis | (1 << (n_modes - 1 - mode))
            out[new, basis] = sign
        if not create and bits[mode] == 1:
            sign = (-1) ** sum(bits[:mode])
            new = basis & ~(1 << (n_modes - 1 - mode))
            out[new, basis] = sign
    return out


def fermion_matrix(op: FermionOperator, n_modes: int) -> np.ndarray:
    dim = 2**n_modes
    total = np.zeros((dim, dim), dtype=complex)
    for term in op.terms:
        product = np.eye(dim, dtype=complex)
        for mode, create in term.ladder_ops:
            product = product @ ladder_matrix(mode, create, n_modes)
        total += term.coefficient * product
    return total


class TestJordanWigner:
    def test_annihilation_mode0(self):
        got = jordan_wigner(FermionOperator.ladder([(0, False)]), 1)
        assert got.coefficient({0: "X"}) == pytest.approx(0.5)
        assert got.coefficient({0: "Y"}) == pytest.approx(0.5j)

    def test_creation_mode1_matches_ladder_oracle(self):
        f = FermionOperator.ladder([(1, True)])
        got = to_matrix(jordan_wigner(f, 2), 2)
        assert np.abs(got - ladder_matrix(1, True, 2)).max() < 1e-12

    def test_number_operator(self):
        f = FermionOperator.ladder([(0, True), (0, False)])
        got = jordan_wigner(f, 1)
        assert got.identity_coefficient == pytest.approx(0.5)
        assert got.coefficient({0: "Z"}) == pytest.approx(-0.5)
        assert np.allclose(to_matrix(got, 1), np.diag([0.0, 1.0]))

    def test_mode_out_of_range(self):
        with pytest.raises(ValueError):
            jordan_wigner(FermionOperator.ladder([(3, True)]), 2)

    def test_jw_matches_matrix_oracle_on_products(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            n = int(rng.integers(1, 5))
            length = int(rng.integers(1, 4))
            ops = [
                (int(rng.integers(0, n)), bool(rng.integers(0, 2)))
                for _ in range(length)
            ]
            f = FermionOperator.ladder(ops, complex(rng.normal(), rng.normal()))
            got = to_matrix(jordan_wigner(f, n), n)
            assert np.abs(got - fermion_matrix(f, n)).max() < 1e-10

    def test_anti_commutation_relations(self):
        n = 4
        for p in range(n):
            for q in range(n):
                a_p = to_matrix(
                    jordan_wigner(FermionOperator.ladder([(p, False)]), n), n
                )
                adag_q = to_matrix(
                    jordan_wigner(FermionOperator.ladder([(q, True)]), n), n
                )
                anti = a_p @ adag_q + adag_q @ a_p
                expected = np.eye(2**n) if p == q else np.zeros((2**n, 2**n))
                assert np.abs(anti - expected).max() < 1e-10


class TestAntiHermitianExcitation:
    def test_single_structure(self):
        gen = anti_hermitian_excitation([0], [1], "t")
        assert gen.symbol == "t"
        assert len(gen.terms) == 2
        assert gen.terms[0].ladder_ops == ((1, True), (0, False))
        assert gen.terms[1].ladder_ops == ((0, True), (1, False))
        assert gen.terms[1].coefficient == pytest.approx(-1.0)

    def test_single_jw_image(self):
        # matrix oracle fixes the sign: a†1 a0 - a†0 a1 -> (i/2)(Y0 X1 - X0 Y1)
        gen = jordan_wigner(anti_hermitian_excitation([0], [1]), 2)
        assert gen.coefficient({0: "Y", 1: "X"}) == pytest.approx(0.5j)
        assert gen.coefficient({0: "X", 1: "Y"}) == pytest.approx(-0.5j)
        matrix = to_matrix(gen, 2)
        t = excitation_term([0], [1])
        oracle = fermion_matrix(t - t.dagger(), 2)
        assert np.abs(matrix - oracle).max() < 1e-12

    def test_anti_hermitian_matrix_image(self):
        cases = [(([0], [1]), 2), (([0, 1], [2, 3]), 4), (([0, 2], [1, 3]), 4)]
        for (occ, virt), n in cases:
            matrix = to_matrix(jordan_wigner(anti_hermitian_excitation(occ, virt), n), n)
            assert np.abs(matrix + matrix.conj().T).max() < 1e-10

    def test_overlap_rejected(self):
        with pytest.raises(ValueError):
            anti_hermitian_excitation([0], [0])

    def test_bad_lengths_rejected(self):
        with pytest.raises(ValueError):
            anti_hermitian_excitation([0, 1, 2], [3, 4, 5])
        with pytest.raises(ValueError):
            anti_hermitian_excitation([0], [1, 2])


class TestEnumeration:
    def test_occupied_layout(self):
        assert occupied_spin_orbitals(4, 8) == [0, 1, 4, 5]
        assert occupied_spin_orbitals(2, 4) == [0, 2]
        assert occupied_spin_orbitals(1, 2) == [0]

    def test_occupied_validation(self):
        with pytest.raises(ValueError):
            occupied_spin_orbitals(0, 4)
        with pytest.raises(ValueError):
            occupied_spin_orbitals(3, 2)

    def test_spin_preserving_singles(self):
        assert single_excitations(2, 4) == [([0], [1]), ([2], [3])]

    def test_all_singles_include_spin_flips(self):
        got = single_excitations(2, 4, spin_preserving=False)
        assert ([0], [3]) in got and len(got) == 4

    def test_doubles_h2(self):
        assert double_excitations(2, 4) == [([0, 2], [1, 3])]

    def test_doubles_sz_filter(self):
        with_filter = double_excitations(2, 8)
        without = double_excitations(2, 8, sz_preserving=False)
        assert len(with_filter) == 9
        assert len(without) == 15  # C(6, 2) virtual pairs, one occupied pair
