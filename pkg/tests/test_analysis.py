import json
import math
import os
import unittest

from scipy.stats import binom

from domain.analysis import (
    DistanceWitness,
    NoCrossingError,
    ResultRow,
    ScalingFit,
    distance_table,
    fit_threshold,
    ler_interval,
    required_distance,
    scaling_form,
    search_circuit_distance,
    witness_report,
)
from domain.circuit import NONLOCAL_CNOT, TELEPORT, NoiseParams, build_experiment
from domain.codes import build_code
from domain.dem import DetectorErrorModel, extract_dem

SLOW = os.getenv("DQCSIM_SLOW_TESTS") == "1"


def circuit_model(preset: str, kind: str = NONLOCAL_CNOT) -> DetectorErrorModel:
    code = build_code(preset)
    return extract_dem(build_experiment(kind, code, NoiseParams(0.001, 0.001)))


class TestLerInterval(unittest.TestCase):
    def test_zero_failures_closed_form(self) -> None:
        for shots in (10, 1000, 10**6):
            estimate = ler_interval(0, shots)
            self.assertEqual(estimate.interval_low, 0.0)
            self.assertAlmostEqual(
                estimate.interval_high, 1.0 - 1000.0 ** (-1.0 / shots), delta=1e-12
            )

    def test_all_failures(self) -> None:
        estimate = ler_interval(20, 20)
        self.assertEqual(estimate.interval_high, 1.0)
        expected = 1000.0 ** (-1.0 / 20)
        self.assertAlmostEqual(estimate.interval_low, expected, delta=1e-12)

    def test_endpoints_sit_on_the_likelihood_floor(self) -> None:
        fails, shots = 37, 5000
        estimate = ler_interval(fails, shots)
        self.assertLess(estimate.interval_low, estimate.point)
        self.assertGreater(estimate.interval_high, estimate.point)
        top = binom.logpmf(fails, shots, estimate.point)
        for q in (estimate.interval_low, estimate.interval_high):
            drop = top - binom.logpmf(fails, shots, q)
            self.assertAlmostEqual(drop, math.log(1000.0), places=6)

    def test_smaller_bayes_factor_narrows(self) -> None:
        wide = ler_interval(5, 100)
        narrow = ler_interval(5, 100, bayes_factor=10.0)
        self.assertLess(
            narrow.interval_high - narrow.interval_low,
            wide.interval_high - wide.interval_low,
        )
        self.assertTrue(wide.overlaps(narrow))
        self.assertFalse(ler_interval(0, 10**6).overlaps(ler_interval(500, 1000)))

    def test_invalid_arguments(self) -> None:
        with self.assertRaises(ValueError):
            ler_interval(0, 0)
        with self.assertRaises(ValueError):
            ler_interval(11, 10)
        with self.assertRaises(ValueError):
            ler_interval(1, 10, bayes_factor=1.0)


def _synthetic_curves(fit: ScalingFit, distances: tuple, ps: tuple) -> list:
    curves = []
    for d in distances:
        for p in ps:
            rate = scaling_form(p, d, fit)
            shots = 10**9
            estimate = ler_interval(round(rate * shots), shots)
            curves.append((d, p, estimate))
    return curves


class TestThresholdFit(unittest.TestCase):
    def test_recovers_synthetic_scaling(self) -> None:
        truth = ScalingFit(p_th=0.01, alpha=0.01)
        curves = _synthetic_curves(truth, (3, 5, 7), (0.004, 0.007, 0.013, 0.02))
        fit = fit_threshold(curves)
        self.assertAlmostEqual(fit.p_th, 0.01, delta=1e-4)
        self.assertAlmostEqual(fit.alpha, 0.01, delta=2e-4)
        self.assertEqual(len(fit.points), 12)

    def test_no_crossing(self) -> None:
        curves = []
        for d, scale in ((3, 10.0), (5, 1.0)):
            for p in (0.001, 0.002, 0.004):
                curves.append((d, p, ler_interval(round(scale * p * p * 1e8), 10**8)))
        with self.assertRaises(NoCrossingError):
            fit_threshold(curves)

    def test_needs_enough_data(self) -> None:
        estimate = ler_interval(1, 100)
        with self.assertRaises(ValueError):
            fit_threshold([(3, p, estimate) for p in (0.01, 0.02, 0.03)])
        with self.assertRaises(ValueError):
            fit_threshold([(3, 0.01, estimate), (5, 0.01, estimate)])
        with self.assertRaises(ValueError):
            ScalingFit(p_th=0.0, alpha=1.0)


class TestExtrapolation(unittest.TestCase):
    def test_decade_steps(self) -> None:
        # Two distance units per decade of suppression at p = p_th / 10
        self.assertEqual(required_distance(1e-3, 1e-2, 7, 1e-5, 1e-8), 13)
        self.assertEqual(required_distance(1e-3, 1e-2, 7, 1e-5, 1e-12), 21)

    def test_anchor_target_returns_anchor(self) -> None:
        self.assertEqual(required_distance(2e-3, 7e-3, 11, 3e-6, 3e-6), 11)

    def test_odd_rounding(self) -> None:
        self.assertEqual(required_distance(1e-3, 1e-2, 8, 1e-5, 1e-8), 14)
        self.assertEqual(required_distance(1e-3, 1e-2, 8, 1e-5, 1e-8, odd=True), 15)

    def test_table(self) -> None:
        rows = distance_table(
            1e-3,
            1e-2,
            (7, 1e-5),
            (1e-8, 1e-10, 1e-12),
            circuit="nonlocal-cnot",
            ebit_ratio=10.0,
        )
        self.assertEqual([r.distance for r in rows], [13, 17, 21])
        self.assertEqual({r.circuit for r in rows}, {"nonlocal-cnot"})
        self.assertEqual(rows[0].ebit_ratio, 10.0)

    def test_invalid(self) -> None:
        with self.assertRaises(ValueError):
            required_distance(1e-2, 1e-2, 7, 1e-5, 1e-8)
        with self.assertRaises(ValueError):
            required_distance(1e-3, 1e-2, 7, 1e-5, 1e-4)


class TestDistanceSearch(unittest.TestCase):
    def setUp(self) -> None:
        # Chain D0 - D1 closed by a mechanism that also flips L0
        self.model = DetectorErrorModel(
            2, 1, [[0], [0, 1], [1]], [[0], [], []], [0.01] * 3
        )

    def test_small_model_witness(self) -> None:
        witness = search_circuit_distance(self.model)
        assert witness is not None
        self.assertEqual(witness.weight, 3)
        self.assertEqual(witness.mechanisms, (0, 1, 2))
        self.assertEqual(witness.observables_flipped, (0,))
        self.assertTrue(witness.verify(self.model))

    def test_verify_rejects_detectable_sets(self) -> None:
        for mechanisms in ((0,), (1, 2)):
            witness = DistanceWitness.from_mechanisms(self.model, mechanisms)
            self.assertFalse(witness.verify(self.model))

    def test_none_found_and_no_observables(self) -> None:
        silent = DetectorErrorModel(1, 1, [[0]], [[]], [0.01])
        self.assertIsNone(search_circuit_distance(silent))
        with self.assertRaises(ValueError):
            search_circuit_distance(DetectorErrorModel(1, 0, [[0]], [[]], [0.01]))

    def test_report(self) -> None:
        witness = DistanceWitness.from_mechanisms(self.model, (0, 1, 2))
        data = json.loads(witness_report(witness, self.model))
        self.assertEqual(data["weight"], 3)
        self.assertEqual(data["observables"], [0])
        self.assertTrue(data["verified"])
        self.assertNotIn("verified", json.loads(witness_report(witness)))

    def test_circuit_witness_is_valid(self) -> None:
        model = circuit_model("sc3")
        witness = search_circuit_distance(model)
        assert witness is not None
        self.assertTrue(witness.verify(model))
        self.assertEqual(witness.weight, 3)

    def test_teleport_witness(self) -> None:
        model = circuit_model("sc3", TELEPORT)
        witness = search_circuit_distance(model)
        assert witness is not None
        self.assertTrue(witness.verify(model))
        self.assertGreaterEqual(witness.weight, 2)
        self.assertLessEqual(witness.weight, 3)

    @unittest.skipUnless(SLOW, "set DQCSIM_SLOW_TESTS=1 for the full search")
    def test_surface_code_bound(self) -> None:
        model = circuit_model("sc5")
        witness = search_circuit_distance(model)
        assert witness is not None
        self.assertTrue(witness.verify(model))
        self.assertLessEqual(witness.weight, 5)


class TestResultRow(unittest.TestCase):
    def test_from_estimate_and_dict(self) -> None:
        interval = ler_interval(3, 100)
        row = ResultRow.from_estimate("sc3", "teleport", 1e-3, 1e-2, interval, 42)
        self.assertTrue(row.ok)
        again = ResultRow.from_dict({k: str(v) for k, v in row.to_dict().items()})
        self.assertEqual(again, row)
        estimate = again.estimate()
        assert estimate is not None
        self.assertEqual((estimate.fails, estimate.shots), (3, 100))

    def test_failed_row(self) -> None:
        row = ResultRow.failed("sc4", "teleport", 1e-3, 1e-3, 100, 7, "even distance")
        self.assertFalse(row.ok)
        self.assertIsNone(row.estimate())
        self.assertTrue(math.isnan(row.ler))
        blanked = {**row.to_dict(), "ler": None, "ler_lo": "", "ler_hi": ""}
        again = ResultRow.from_dict(blanked)
        self.assertEqual(again.error, "even distance")
        self.assertTrue(math.isnan(again.ler_hi))


if __name__ == "__main__":
    unittest.main()
