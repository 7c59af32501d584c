import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

from domain.codes import (
    BBParams,
    CodeConstructionError,
    CodeSpecError,
    MonomialTerm,
    ResourceGuardError,
    build_bb,
    build_code,
    build_rotated_sc,
    dump_check_matrices,
    load_code_specs,
    min_logical_weight_bruteforce,
    parse_code_spec,
)
from domain.codes.code_spec import parse_polynomial


class TestBivariateBicycle(unittest.TestCase):
    def test_preset_parameters(self) -> None:
        presets = {"bb18": (18, 4), "bb54": (54, 4), "bb144": (144, 12)}
        for preset, (n, k) in presets.items():
            code = build_code(preset)
            self.assertEqual((code.n, code.k), (n, k), preset)
            self.assertTrue(code.css_condition_holds())
            self.assertTrue(code.idle_noise)
            self.assertEqual(code.tick_count, 7)

    def test_gross_code_report(self) -> None:
        code = build_code("bb l=12 m=6 a=x3+y+y2 b=x+x2+y3")
        report = code.report()
        self.assertEqual((report.n, report.k), (144, 12))
        self.assertEqual(report.encoding_rate, Fraction(1, 24))
        self.assertIn("css=ok", report.summary())

    def test_checks_have_weight_six(self) -> None:
        code = build_code("bb18")
        for matrix in (code.h_x, code.h_z):
            for r in range(matrix.rows):
                self.assertEqual(len(matrix.row_support(r)), 6)

    def test_relabel_exchanges_check_sets(self) -> None:
        code = build_code("bb54")
        x_rows = {tuple(code.h_x.row_support(r)) for r in range(code.h_x.rows)}
        mapped = {
            tuple(sorted(code.h_relabel[q] for q in code.h_z.row_support(r)))
            for r in range(code.h_z.rows)
        }
        self.assertEqual(mapped, x_rows)
        inverse = code.inverse_relabel()
        self.assertTrue(all(inverse[code.h_relabel[q]] == q for q in range(code.n)))

    def test_repeated_terms_rejected(self) -> None:
        params = BBParams(3, 3, parse_polynomial("1+x+x4"), parse_polynomial("1+y+y2"))
        with self.assertRaises(CodeConstructionError):
            build_bb(params)


class TestRotatedSurface(unittest.TestCase):
    def test_parameters(self) -> None:
        for d in (3, 5, 7, 11):
            code = build_rotated_sc(d)
            self.assertEqual((code.n, code.k), (d * d, 1))
            self.assertEqual(code.check_count, d * d - 1)
            self.assertFalse(code.idle_noise)
            self.assertEqual(code.name, f"[[{d * d},1,{d}]]")

    def test_logicals_are_rows_and_columns(self) -> None:
        code = build_rotated_sc(5)
        self.assertEqual(code.logical_z[0].support(), [0, 1, 2, 3, 4])
        self.assertEqual(code.logical_x[0].support(), [0, 5, 10, 15, 20])

    def test_even_or_small_distance_rejected(self) -> None:
        for d in (1, 2, 4):
            with self.assertRaises(CodeConstructionError):
                build_rotated_sc(d)
        with self.assertRaises(CodeConstructionError):
            build_code("sc d=4")


class TestCodeSpec(unittest.TestCase):
    def test_monomials(self) -> None:
        terms = parse_polynomial("1+x2+xy3")
        expected = (MonomialTerm(0, 0), MonomialTerm(2, 0), MonomialTerm(1, 3))
        self.assertEqual(terms, expected)
        self.assertEqual("+".join(str(t) for t in terms), "1+x2+xy3")

    def test_presets_and_names(self) -> None:
        spec = parse_code_spec("SC5")
        self.assertEqual((spec.family, spec.distance, spec.name), ("sc", 5, "sc5"))
        self.assertEqual(build_code("sc5").spec, "sc5")

    def test_errors(self) -> None:
        for line in (
            "",
            "tc d=3",
            "sc",
            "sc d=x",
            "sc d=3 q=1",
            "bb l=3 m=3 a=1+x+y",
            "bb l=3 m=3 a=1+x+z b=1+y+y2",
        ):
            with self.assertRaises(CodeSpecError, msg=line):
                parse_code_spec(line)

    def test_load_file_skips_comments(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "codes.txt"
            path.write_text("# presets\n\nbb18\nsc d=3  # small\n", encoding="utf-8")
            specs = load_code_specs(path)
        self.assertEqual([s.family for s in specs], ["bb", "sc"])

    def test_dump_check_matrices(self) -> None:
        text = dump_check_matrices(build_rotated_sc(3))
        lines = text.strip().splitlines()
        self.assertTrue(lines[0].startswith("# [[9,1,3]]"))
        self.assertEqual(len(lines), 1 + 8)
        self.assertTrue(any(line.startswith("X0:") for line in lines))


class TestBruteForceDistance(unittest.TestCase):
    def test_bb18_distance_is_four(self) -> None:
        code = build_code("bb18")
        self.assertIsNone(min_logical_weight_bruteforce(code, 3))
        self.assertEqual(min_logical_weight_bruteforce(code, 4), 4)

    def test_surface_code_distance(self) -> None:
        self.assertEqual(min_logical_weight_bruteforce(build_rotated_sc(3), 3), 3)

    def test_budget_guard(self) -> None:
        with self.assertRaises(ResourceGuardError):
            min_logical_weight_bruteforce(build_code("bb144"), 6, budget=1000)


if __name__ == "__main__":
    unittest.main()
