"""Second-quantized fermionic operators and the Jordan-Wigner transform.

Spin-orbital layout: alpha spin-orbitals occupy qubits 0..nq/2-1, beta
spin-orbitals the second half.  The Jordan-Wigner string places Z on all
modes strictly below the ladder operator's mode.
"""
from __future__ import annotations

from dataclasses import dataclass

from .pauli import PauliOperator

# ladder op: (mode index, is_creation)
LadderOp = tuple[int, bool]


@dataclass(frozen=True)
class FermionTerm:
    """Ordered product of ladder operators with a coefficient.

    Order is significant; anti-commutation is never applied here.
    """

    ladder_ops: tuple[LadderOp, ...]
    coefficient: complex = 1.0

    def dagger(self) -> "FermionTerm":
        flipped = tuple((mode, not create) for mode, create in reversed(self.ladder_ops))
        return FermionTerm(flipped, self.coefficient.conjugate())

    def __str__(self) -> str:
        ops = " ".join(f"a{'†' if c else ''}_{m}" for m, c in self.ladder_ops)
        return f"({self.coefficient}) {ops or '1'}"


class FermionOperator:
    """Plain list of FermionTerms; zero-coefficient terms are dropped."""

    def __init__(self, terms: "list[FermionTerm] | FermionTerm | None" = None):
        if terms is None:
            terms = []
        if isinstance(terms, FermionTerm):
            terms = [terms]
        self.terms: list[FermionTerm] = [t for t in terms if t.coefficient != 0]

    @staticmethod
    def ladder(ops: list[LadderOp], coefficient: complex = 1.0) -> "FermionOperator":
        return FermionOperator(FermionTerm(tuple(ops), coefficient))

    def __add__(self, other: "FermionOperator") -> "FermionOperator":
        return FermionOperator(self.terms + other.terms)

    def __sub__(self, other: "FermionOperator") -> "FermionOperator":
        return self + (other * -1.0)

    def __mul__(self, scalar: complex) -> "FermionOperator":
        return FermionOperator(
            [FermionTerm(t.ladder_ops, t.coefficient * scalar) for t in self.terms]
        )

    __rmul__ = __mul__

    def dagger(self) -> "FermionOperator":
        return FermionOperator([t.dagger() for t in self.terms])

    def max_mode(self) -> int:
        return max((m for t in self.terms for m, _ in t.ladder_ops), default=-1)

    def __str__(self) -> str:
        return " + ".join(str(t) for t in self.terms) or "0"

    __repr__ = __str__


def _jw_ladder(mode: int, is_creation: bool) -> PauliOperator:
    # a†_p = Z_0..Z_{p-1} (X_p - iY_p)/2 ; a_p has +iY_p
    z_string = {q: "Z" for q in range(mode)}
    sign = -0.5j if is_creation else 0.5j
    x_part = PauliOperator({**z_string, mode: "X"}, 0.5)
    y_part = PauliOperator({**z_string, mode: "Y"}, sign)
    return x_part + y_part


def jordan_wigner(f: FermionOperator, n_modes: int) -> PauliOperator:
    """Map a FermionOperator onto qubits, one mode per qubit."""
    if f.max_mode() >= n_modes:
        raise ValueError(
            f"operator touches mode {f.max_mode()} but n_modes={n_modes}"
        )
    total = PauliOperator.zero()
    for term in f.terms:
        product = PauliOperator.identity(term.coefficient)
        for mode, is_creation in term.ladder_ops:
            product = product * _jw_ladder(mode, is_creation)
        total = total + product
    return total


def excitation_term(occ: list[int], virt: list[int]) -> FermionOperator:
    """T = a†_virt... a_occ... for a single or double excitation."""
    ops = [(v, True) for v in virt] + [(o, False) for o in reversed(occ)]
    return FermionOperator.ladder(ops)


def anti_hermitian_excitation(
    occ: list[int], virt: list[int], coeff_symbol: str = "t"
) -> FermionOperator:
    """Anti-Hermitian generator T - T† of a single or double excitation.

    The amplitude stays symbolic (unit magnitude here); ``coeff_symbol``
    is carried on the result for circuit-variable naming.
    """
    if len(occ) not in (1, 2) or len(virt) not in (1, 2) or len(occ) != len(virt):
        raise ValueError(f"excitation needs 1 or 2 index pairs, got {occ} -> {virt}")
    if set(occ) & set(virt):
        raise ValueError(f"occupied and virtual indices overlap: {occ} vs {virt}")
    if len(set(occ)) != len(occ) or len(set(virt)) != len(virt):
        raise ValueError(f"repeated index in excitation {occ} -> {virt}")
    t = excitation_term(occ, virt)
    generator = t - t.dagger()
    generator.symbol = coeff_symbol  # type: ignore[attr-defined]
    return generator


def occupied_spin_orbitals(n_electrons: int, n_qubits: int) -> list[int]:
    """Reference-determinant occupation under the alpha-then-beta layout.

    Electrons fill alpha modes first (ceil(ne/2)), then beta modes; for
    even ne this is the closed-shell Hartree-Fock occupation.
    """
    if n_qubits % 2 != 0:
        raise ValueError(f"n_qubits must be even, got {n_qubits}")
    if not 0 < n_electrons <= n_qubits:
        raise ValueError(f"need 0 < n_electrons <= n_qubits, got {n_electrons}")
    n_alpha = (n_electrons + 1) // 2
    n_beta = n_electrons // 2
    n_spatial = n_qubits // 2
    if n_alpha > n_spatial:
        raise ValueError(f"{n_electrons} electrons do not fit {n_qubits} spin-orbitals")
    return list(range(n_alpha)) + [n_spatial + i for i in range(n_beta)]


def _spin(mode: int, n_spatial: int) -> int:
    return 0 if mode < n_spatial else 1


def single_excitations(
    n_electrons: int, n_qubits: int, spin_preserving: bool = True
) -> list[tuple[list[int], list[int]]]:
    """(occ, virt) index pairs for single excitations off the reference."""
    occupied = occupied_spin_orbitals(n_electrons, n_qubits)
    virtual = [q for q in range(n_qubits) if q not in occupied]
    n_spatial = n_qubits // 2
    pairs = []
    for i in occupied:
        for a in virtual:
            if spin_preserving and _spin(i, n_spatial) != _spin(a, n_spatial):
                continue
            pairs.append(([i], [a]))
    return pairs


def double_excitations(
    n_electrons: int, n_qubits: int, sz_preserving: bool = True
) -> list[tuple[list[int], list[int]]]:
    """(occ, virt) index pairs for double excitations off the reference.

    Enumerates unordered occupied pairs against unordered virtual pairs;
    ``sz_preserving`` keeps only spin-projection-conserving excitations.
    """
    occupied = occupied_spin_orbitals(n_electrons, n_qubits)
    virtual = [q for q in range(n_qubits) if q not in occupied]
    n_spatial = n_qubits // 2
    pairs = []
    for idx_i, i in enumerate(occupied):
        for j in occupied[idx_i + 1 :]:
            for idx_a, a in enumerate(virtual):
                for b in virtual[idx_a + 1 :]:
                    if sz_preserving:
                        sz_occ = _spin(i, n_spatial) + _spin(j, n_spatial)
                        sz_virt = _spin(a, n_spatial) + _spin(b, n_spatial)
                        if sz_occ != sz_virt:
                            continue
                    pairs.append(([i, j], [a, b]))
    return pairs
