import contextlib
import io
import json
import tempfile
import unittest
from pathlib import Path
from typing import List, Tuple

from cli import (
    EXIT_BUILD,
    EXIT_OK,
    EXIT_RUNTIME,
    EXIT_USAGE,
    RunConfig,
    build_parser,
    main,
)


def run_main(argv: List[str]) -> Tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def run_line(line: str) -> Tuple[int, str, str]:
    return run_main(line.split())


class TestCLI(unittest.TestCase):
    def setUp(self) -> None:
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self) -> None:
        self.tmp.cleanup()

    def test_build_code_report(self) -> None:
        code, out, _ = run_line("build-code bb144")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("n=144 k=12", out)
        self.assertIn("css=ok", out)

    def test_build_code_dump_and_file(self) -> None:
        specs = self.dir / "codes.txt"
        specs.write_text("sc3\nbb18\n", encoding="utf-8")
        code, out, _ = run_main(["build-code", "--from-file", str(specs), "--dump"])
        self.assertEqual(code, EXIT_OK)
        self.assertIn("[[9,1,3]]", out)
        self.assertIn("n=18 k=4", out)

    def test_build_errors_exit_two(self) -> None:
        code, _, err = run_main(["build-code", "sc d=4"])
        self.assertEqual(code, EXIT_BUILD)
        self.assertIn("error:", err)
        code, _, _ = run_main(["build-code", "tc d=3"])
        self.assertEqual(code, EXIT_BUILD)

    def test_usage_errors_exit_one(self) -> None:
        for line in (
            "run --code sc3 --p 0.001 --shots 0",
            "emit --code sc3 --p 2",
            "build-code",
            "emit --code sc3 --p 0.001 --ebit-ratio 2 --ebit-p 0.1",
        ):
            with self.subTest(line=line):
                self.assertEqual(run_line(line)[0], EXIT_USAGE)
        self.assertEqual(run_main([])[0], EXIT_USAGE)

    def test_run_config_ebit_rate(self) -> None:
        parser = build_parser()
        for line, expected in (
            ("emit --code sc3 --p 0.001 --ebit-ratio 10", 0.01),
            ("emit --code sc3 --p 0.2 --ebit-ratio 10", 1.0),
            ("emit --code sc3 --p 0.001 --ebit-p 0.05", 0.05),
            ("emit --code sc3 --p 0.003", 0.003),
        ):
            with self.subTest(line=line):
                args = parser.parse_args(line.split())
                self.assertAlmostEqual(RunConfig.from_args(args).p_ebit, expected)

    def test_emit_sample_decode(self) -> None:
        circuit = self.dir / "c.txt"
        dem = self.dir / "m.dem"
        shots = self.dir / "shots.bin"
        cell = "--code sc3 --circuit teleport --p 0.005"
        code, out, _ = run_main(
            f"emit {cell}".split() + ["--out", str(circuit), "--dem-out", str(dem)]
        )
        self.assertEqual(code, EXIT_OK)
        self.assertIn("2q=", out)
        self.assertTrue(circuit.read_text(encoding="utf-8").startswith("#! qubits="))
        self.assertTrue(dem.read_text(encoding="utf-8").startswith("dem detectors="))

        code, out, _ = run_main(
            f"sample {cell} --shots 40 --seed 3 --binary".split()
            + ["--out", str(shots)]
        )
        self.assertEqual(code, EXIT_OK)
        self.assertIn("shots=40", out)

        flags = self.dir / "flags.txt"
        code, out, _ = run_main(
            ["decode", "--dem", str(dem), "--batch", str(shots), "--binary"]
            + ["--flags-out", str(flags)]
        )
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith("shots=40 fails="))
        self.assertEqual(len(flags.read_text(encoding="utf-8").split()), 40)

    def test_emit_to_stdout_keeps_census_on_stderr(self) -> None:
        code, out, err = run_line("emit --code sc3 --p 0.001")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith("#! qubits="))
        self.assertIn("M_total=", err)

    def test_run_csv_and_json(self) -> None:
        base = "run --code sc3 --p 0 --shots 30 --workers 1".split()
        code, out, _ = run_main(base)
        self.assertEqual(code, EXIT_OK)
        header, row = out.strip().splitlines()
        self.assertTrue(header.startswith("code,circuit,p,p_ebit,shots,fails"))
        self.assertIn("sc3,nonlocal-cnot,0.0,0.0,30,0,", row)
        result = self.dir / "r.json"
        code, _, _ = run_main(base + ["--format", "json", "--out", str(result)])
        self.assertEqual(code, EXIT_OK)
        data = json.loads(result.read_text(encoding="utf-8"))
        self.assertEqual(data["rows"][0]["fails"], 0)

    def test_sweep_reports_failed_cells(self) -> None:
        code, out, _ = run_line(
            "sweep --code sc3 --code sc4 --p 0 --ebit-p 0 --shots 10 --workers 1"
        )
        self.assertEqual(code, EXIT_OK)
        lines = out.strip().splitlines()
        self.assertEqual(len(lines), 3)
        self.assertTrue(lines[2].startswith("sc4,"))

    def test_extrapolate(self) -> None:
        code, out, _ = run_line(
            "extrapolate --p 0.001 --p-th 0.01 --d0 7 --p0 1e-5 "
            "--target 1e-8 1e-12 --circuit teleport"
        )
        self.assertEqual(code, EXIT_OK)
        lines = out.strip().splitlines()
        self.assertEqual(lines[0], "circuit,p,ebit_ratio,target,d")
        self.assertEqual([line.split(",")[-1] for line in lines[1:]], ["13", "21"])

    def test_extrapolate_default_threshold_by_circuit(self) -> None:
        code, out, _ = run_line(
            "extrapolate --p 0.001 --d0 7 --p0 1e-5 --target 1e-8 --circuit teleport"
        )
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.strip().endswith(",27"))
        code, _, err = run_line("extrapolate --p 0.001 --d0 7 --p0 1e-5 --target 1e-8")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("--p-th", err)

    def test_extrapolate_above_threshold_is_runtime_error(self) -> None:
        code, _, err = run_line(
            "extrapolate --p 0.02 --p-th 0.01 --d0 7 --p0 1e-5 --target 1e-8"
        )
        self.assertEqual(code, EXIT_RUNTIME)
        self.assertIn("threshold", err)


if __name__ == "__main__":
    unittest.main()
