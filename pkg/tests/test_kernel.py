import pytest

from qcsim.errors import KernelParseError
from qcsim.ir import create_composite, create_instruction, pretty_print
from qcsim.kernel import parse_kernel

FIG_KERNEL = """__qpu__ void kernel(qbit q) {
  X(q[0]);
}"""


def test_minimal_kernel():
    c = parse_kernel(FIG_KERNEL)
    assert c.name == "kernel"
    assert c.variables == []
    (inst,) = list(c.instructions())
    assert inst.name == "X" and inst.qubits == (0,)


def test_declared_variable():
    c = parse_kernel("__qpu__ void a(qbit q, double t) { Ry(q[0], t); }")
    assert c.variables == ["t"]
    (inst,) = list(c.instructions())
    assert inst.parameters[0].var == "t"
    assert inst.parameters[0].scale == 1.0


def test_unknown_gate():
    with pytest.raises(KernelParseError) as err:
        parse_kernel("__qpu__ void a(qbit q) { Foo(q[0]); }")
    assert "Foo" in str(err.value)
    assert err.value.line == 1


def test_undeclared_variable():
    with pytest.raises(KernelParseError) as err:
        parse_kernel("__qpu__ void a(qbit q) { Ry(q[0], t); }")
    assert "undeclared" in str(err.value)


def test_scaled_angles():
    c = parse_kernel(
        "__qpu__ void a(qbit q, double t0) {\n"
        "  Rz(q[0], -2*t0);\n"
        "  Rz(q[1], 0.5*t0);\n"
        "  Rz(q[2], -t0);\n"
        "  Rz(q[3], 1.5e-3);\n"
        "}"
    )
    params = [i.parameters[0] for i in c.instructions()]
    assert (params[0].scale, params[0].var) == (-2.0, "t0")
    assert (params[1].scale, params[1].var) == (0.5, "t0")
    assert (params[2].scale, params[2].var) == (-1.0, "t0")
    assert params[3].value == pytest.approx(1.5e-3)


def test_two_qubit_statement():
    c = parse_kernel("__qpu__ void a(qbit q) { CNOT(q[0], q[1]); }")
    (inst,) = list(c.instructions())
    assert inst.qubits == (0, 1)


def test_error_positions():
    with pytest.raises(KernelParseError) as err:
        parse_kernel("__qpu__ void a(qbit q) {\n  X(q[0]);\n  Y(q[1])\n}")
    assert err.value.line >= 3
    assert err.value.column >= 1


def test_wrong_register_name():
    with pytest.raises(KernelParseError):
        parse_kernel("__qpu__ void a(qbit q) { X(r[0]); }")


def test_unterminated_body():
    with pytest.raises(KernelParseError):
        parse_kernel("__qpu__ void a(qbit q) { X(q[0]);")


def test_duplicate_parameter():
    with pytest.raises(KernelParseError):
        parse_kernel("__qpu__ void a(qbit q, double t, double t) { }")


def test_round_trip_of_parsed_kernel():
    source = (
        "__qpu__ void k(qbit q, double a, double b) {\n"
        "  X(q[0]);\n"
        "  H(q[1]);\n"
        "  CNOT(q[0], q[1]);\n"
        "  Rz(q[1], -2.0*a);\n"
        "  Ry(q[0], b);\n"
        "  Swap(q[1], q[2]);\n"
        "  Measure(q[2]);\n"
        "}\n"
    )
    first = parse_kernel(source)
    second = parse_kernel(pretty_print(first))
    assert first == second


def test_round_trip_of_generated_circuit():
    c = create_composite("gen")
    c.add(create_instruction("X", [0]))
    c.add(create_instruction("Rz", [0], ["t0"]))
    assert parse_kernel(pretty_print(c)) == c
