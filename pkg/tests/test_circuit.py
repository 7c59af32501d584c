import unittest

from domain.circuit import (
    NONLOCAL_CNOT,
    TELEPORT,
    CircuitParseError,
    CircuitProgram,
    Instruction,
    NoiseParams,
    Opcode,
    build_experiment,
    census,
    parse,
    serialize,
)
from domain.circuit.builder import ProgramBuilder
from domain.codes import build_code


class TestInstruction(unittest.TestCase):
    def test_validation(self) -> None:
        with self.assertRaises(ValueError):
            Instruction(Opcode.NOISE_DEP1, (0,), prob=1.5)
        with self.assertRaises(ValueError):
            Instruction(Opcode.CNOT, (0, 1, 2))
        with self.assertRaises(ValueError):
            Instruction(Opcode.COND_X, (0,))
        with self.assertRaises(ValueError):
            Instruction(Opcode.DETECTOR, (0,), (1,))
        with self.assertRaises(ValueError):
            Instruction(Opcode.H, (0,), (0,))
        with self.assertRaises(ValueError):
            Instruction(Opcode.H, (-1,))

    def test_pairs(self) -> None:
        ins = Instruction(Opcode.CNOT, (0, 1, 2, 3))
        self.assertEqual(ins.pairs, [(0, 1), (2, 3)])
        self.assertFalse(ins.is_noise)

    def test_program_validate(self) -> None:
        program = CircuitProgram(
            qubit_count=1,
            instructions=[
                Instruction(Opcode.MEASURE_Z, (0,)),
                Instruction(Opcode.DETECTOR, records=(1,)),
            ],
        )
        with self.assertRaises(ValueError):
            program.validate()
        with self.assertRaises(ValueError):
            CircuitProgram(1, [Instruction(Opcode.H, (3,))]).validate()


class TestProgramBuilder(unittest.TestCase):
    def setUp(self) -> None:
        self.builder = ProgramBuilder(4, NoiseParams(p=0.01, p_ebit=0.1))

    def opcodes(self) -> list:
        return [ins.opcode for ins in self.builder.instructions]

    def test_noise_follows_gates_and_precedes_measurements(self) -> None:
        self.builder.reset_z([0])
        self.builder.hadamard([0])
        self.builder.cnot([(0, 1)])
        records = self.builder.measure_z([0, 1])
        self.assertEqual(records, [0, 1])
        self.assertEqual(
            self.opcodes(),
            [
                Opcode.RESET_Z,
                Opcode.NOISE_BITFLIP,
                Opcode.H,
                Opcode.NOISE_DEP1,
                Opcode.CNOT,
                Opcode.NOISE_DEP2,
                Opcode.NOISE_BITFLIP,
                Opcode.MEASURE_Z,
            ],
        )

    def test_bell_pairs_use_ebit_rate(self) -> None:
        self.builder.bell([(0, 2), (1, 3)])
        bell, noise = self.builder.instructions
        self.assertEqual(bell.opcode, Opcode.BELL_INIT)
        self.assertEqual(noise.opcode, Opcode.NOISE_DEP2)
        self.assertEqual(noise.prob, 0.1)
        self.assertEqual(noise.qubits, (0, 2, 1, 3))

    def test_zero_probability_and_idle(self) -> None:
        builder = ProgramBuilder(2, NoiseParams(p=0.0, p_ebit=0.0))
        builder.hadamard([0])
        builder.idle([1])
        self.assertEqual([i.opcode for i in builder.instructions], [Opcode.H])
        idle = ProgramBuilder(2, NoiseParams(p=0.01, p_ebit=0.0, idle_enabled=True))
        idle.idle([1])
        self.assertEqual(idle.instructions[0].opcode, Opcode.NOISE_DEP1)

    def test_conditionals(self) -> None:
        (record,) = self.builder.measure_x([0])
        self.builder.cond_z([(record, 2)])
        cond = self.builder.instructions[-2]
        self.assertEqual(cond.opcode, Opcode.COND_Z)
        self.assertEqual(cond.records, (0,))
        self.assertEqual(self.builder.instructions[-1].opcode, Opcode.NOISE_DEP1)


class TestTextFormat(unittest.TestCase):
    SAMPLE = (
        "#! qubits=3\n"
        "#! note=toy\n"
        "R 0 1\n"
        "X_ERROR(0.125) 0\n"
        "CX 0 1\n"
        "DEPOLARIZE2(0.01) 0 1\n"
        "M 0 1\n"
        "CX rec[-1] 2\n"
        "DETECTOR rec[-1] rec[-2]\n"
        "M 2 #!final\n"
        "OBSERVABLE_INCLUDE(0) rec[-1]\n"
    )

    def test_parse(self) -> None:
        program = parse(self.SAMPLE)
        self.assertEqual(program.qubit_count, 3)
        self.assertEqual(program.metadata, {"note": "toy"})
        self.assertEqual(program.measurement_count, 3)
        self.assertEqual(program.detector_count, 1)
        self.assertEqual(program.observable_count, 1)
        cond = program.instructions[5]
        self.assertEqual(cond.opcode, Opcode.COND_X)
        self.assertEqual((cond.records, cond.qubits), ((1,), (2,)))
        self.assertEqual(program.instructions[6].records, (1, 0))
        self.assertEqual(program.instructions[7].tag, "final")

    def test_serialize_is_stable(self) -> None:
        text = serialize(parse(self.SAMPLE))
        self.assertEqual(serialize(parse(text)), text)
        self.assertIn("CX rec[-1] 2", text)
        self.assertIn("M 2 #!final", text)

    def test_errors_carry_line_numbers(self) -> None:
        cases = {
            "R 0\nFOO 1\n": 2,
            "M 0\nDETECTOR rec[-2]\n": 2,
            "X_ERROR 0\n": 1,
            "X_ERROR(2) 0\n": 1,
            "R 0\n\nCX 0 1 2\n": 3,
            "OBSERVABLE_INCLUDE rec[-1]\n": 1,
        }
        for text, line in cases.items():
            with self.assertRaises(CircuitParseError, msg=text) as ctx:
                parse(text)
            self.assertEqual(ctx.exception.line_number, line, text)
            self.assertTrue(str(ctx.exception).startswith(f"line {line}:"))

    def test_declared_qubits_too_small(self) -> None:
        with self.assertRaises(CircuitParseError):
            parse("#! qubits=1\nR 3\n")


class TestExperiments(unittest.TestCase):
    def test_nonlocal_cnot_structure(self) -> None:
        code = build_code("sc3")
        noise = NoiseParams(p=0.001, p_ebit=0.01)
        program = build_experiment(NONLOCAL_CNOT, code, noise)
        program.validate()
        self.assertEqual(program.observable_count, 2 * code.k)
        self.assertEqual(program.detector_count, 4 * 16)
        self.assertEqual(program.metadata["circuit"], NONLOCAL_CNOT)
        self.assertEqual(program.metadata["code"], "sc3")

    def test_teleport_structure(self) -> None:
        code = build_code("bb18")
        program = build_experiment(TELEPORT, code, NoiseParams(p=0.001, p_ebit=0.001))
        program.validate()
        self.assertEqual(program.observable_count, code.k)
        self.assertEqual(program.detector_count, 9 * 20)

    def test_builders_are_deterministic(self) -> None:
        code = build_code("sc3")
        noise = NoiseParams(p=0.002, p_ebit=0.02)
        first = serialize(build_experiment(TELEPORT, code, noise))
        second = serialize(build_experiment(TELEPORT, code, noise))
        self.assertEqual(first, second)
        self.assertEqual(serialize(parse(first)), first)

    def test_unknown_kind(self) -> None:
        with self.assertRaises(ValueError):
            build_experiment("swap", build_code("sc3"), NoiseParams(0.001, 0.001))

    def test_noiseless_program_has_no_channels(self) -> None:
        code = build_code("sc3")
        program = build_experiment(NONLOCAL_CNOT, code, NoiseParams(0.0, 0.0))
        self.assertFalse(any(ins.is_noise for ins in program.instructions))
        noisy = build_experiment(NONLOCAL_CNOT, code, NoiseParams(0.01, 0.1))
        self.assertEqual(census(program), census(noisy))


if __name__ == "__main__":
    unittest.main()
