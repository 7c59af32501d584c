import os
import unittest
from itertools import combinations

import numpy as np

from domain.circuit import NONLOCAL_CNOT, NoiseParams, build_experiment
from domain.codes import build_code
from domain.decoder import (
    BpConfig,
    BpOsdDecoder,
    OsdConfig,
    TannerGraph,
    bp_decode,
    decode_batch,
    osd_postprocess,
)
from domain.decoder.osd import reliability_order
from domain.dem import DetectorErrorModel, extract_dem
from domain.linalg import BitVector
from domain.sim import ShotBatch

SLOW = os.getenv("DQCSIM_SLOW_TESTS") == "1"


def circuit_model() -> DetectorErrorModel:
    code = build_code("sc3")
    return extract_dem(build_experiment(NONLOCAL_CNOT, code, NoiseParams(0.001, 0.001)))


def repetition_model(prior: float = 0.1) -> DetectorErrorModel:
    """Three bits, two parity checks; bit 0 also flips the observable."""
    return DetectorErrorModel(2, 1, [[0], [0, 1], [1]], [[0], [], []], [prior] * 3)


class TestConfig(unittest.TestCase):
    def test_validation(self) -> None:
        with self.assertRaises(ValueError):
            BpConfig(max_iterations=0)
        with self.assertRaises(ValueError):
            BpConfig(variant="sum-product")
        with self.assertRaises(ValueError):
            BpConfig(schedule="random")
        with self.assertRaises(ValueError):
            BpConfig(variant="min-sum", scaling=0.0)
        with self.assertRaises(ValueError):
            OsdConfig(order=-1)
        with self.assertRaises(ValueError):
            OsdConfig(mode="greedy")


class TestTannerGraph(unittest.TestCase):
    def test_edges_and_sums(self) -> None:
        graph = TannerGraph(repetition_model().pcm)
        counts = (graph.check_count, graph.variable_count, graph.edge_count)
        self.assertEqual(counts, (2, 3, 4))
        np.testing.assert_array_equal(graph.edge_var, [0, 1, 1, 2])
        messages = np.array([1.0, 2.0, 3.0, 4.0])
        np.testing.assert_array_equal(graph.check_sum(messages), [3.0, 7.0])
        np.testing.assert_array_equal(graph.variable_sum(messages), [1.0, 5.0, 4.0])
        np.testing.assert_array_equal(graph.syndrome_of(np.array([1, 1, 0])), [0, 1])


class TestBeliefPropagation(unittest.TestCase):
    def setUp(self) -> None:
        self.model = repetition_model()

    def test_zero_syndrome_converges_immediately(self) -> None:
        result = bp_decode(self.model, np.zeros(2, dtype=np.uint8))
        self.assertTrue(result.converged)
        self.assertEqual(result.iterations, 1)
        self.assertFalse(result.hard_decision.any())
        self.assertTrue(np.all(result.posteriors < 0.1))

    def test_every_variant_and_schedule(self) -> None:
        for variant in ("product-sum", "min-sum"):
            for schedule in ("parallel", "serial"):
                cfg = BpConfig(max_iterations=20, variant=variant, schedule=schedule)
                for bit in range(3):
                    syndrome = self.model.syndrome([bit])
                    with self.subTest(variant=variant, schedule=schedule, bit=bit):
                        result = bp_decode(self.model, syndrome, cfg)
                        self.assertTrue(result.converged)
                        flipped = np.flatnonzero(result.hard_decision).tolist()
                        self.assertEqual(flipped, [bit])

    def test_bitvector_syndrome(self) -> None:
        result = bp_decode(self.model, BitVector.from_dense([1, 1]))
        self.assertEqual(result.hard_decision.tolist(), [0, 1, 0])

    def test_length_mismatch(self) -> None:
        with self.assertRaises(ValueError):
            bp_decode(self.model, np.zeros(3, dtype=np.uint8))

    def test_symmetric_ambiguity_does_not_converge(self) -> None:
        model = DetectorErrorModel(1, 1, [[0], [0]], [[0], []], [0.1, 0.1])
        result = bp_decode(model, np.array([1]), BpConfig(max_iterations=5))
        self.assertFalse(result.converged)
        self.assertEqual(result.iterations, 5)
        np.testing.assert_allclose(result.posteriors, [0.5, 0.5])


class TestOrderedStatistics(unittest.TestCase):
    def setUp(self) -> None:
        self.model = repetition_model()
        self.syndrome = np.array([1, 1], dtype=np.uint8)
        # Misleading posteriors push the two outer bits to the front
        self.posteriors = np.array([0.5, 0.1, 0.5])

    def test_reliability_order_is_stable(self) -> None:
        self.assertEqual(reliability_order([0.2, 0.7, 0.2, 0.7]).tolist(), [1, 3, 0, 2])

    def test_order_zero_keeps_pivot_solution(self) -> None:
        outcome = osd_postprocess(
            self.model, self.posteriors, self.syndrome, OsdConfig(order=0)
        )
        self.assertEqual(outcome.mechanism_estimate, [0, 2])
        self.assertTrue(outcome.osd_used)
        syndrome = self.model.syndrome(outcome.mechanism_estimate)
        np.testing.assert_array_equal(syndrome, [1, 1])

    def test_higher_order_finds_lighter_solution(self) -> None:
        for mode in ("combination-sweep", "exhaustive"):
            with self.subTest(mode=mode):
                cfg = OsdConfig(order=2, mode=mode)
                outcome = osd_postprocess(
                    self.model, self.posteriors, self.syndrome, cfg
                )
                self.assertEqual(outcome.mechanism_estimate, [1])
                np.testing.assert_array_equal(outcome.predicted_obs_flips, [0])

    def test_single_mechanism_recovered(self) -> None:
        model = circuit_model()
        uniform = np.full(model.mechanism_count, 0.5)
        for j in (0, model.mechanism_count // 2, model.mechanism_count - 1):
            syndrome = model.syndrome([j])
            outcome = osd_postprocess(model, uniform, syndrome, OsdConfig(order=0))
            recovered = model.syndrome(outcome.mechanism_estimate)
            np.testing.assert_array_equal(recovered, syndrome)


class TestBpOsdDecoder(unittest.TestCase):
    def test_falls_back_to_osd(self) -> None:
        model = DetectorErrorModel(1, 1, [[0], [0]], [[0], []], [0.1, 0.1])
        decoder = BpOsdDecoder(model, BpConfig(max_iterations=3))
        outcome = decoder.decode(np.array([1]))
        self.assertFalse(outcome.bp_converged)
        self.assertTrue(outcome.osd_used)
        self.assertEqual(outcome.iterations_used, 3)
        self.assertEqual(outcome.mechanism_estimate, [0])
        self.assertEqual(decoder.osd_runs, 1)

    def test_cache(self) -> None:
        model = DetectorErrorModel(1, 1, [[0], [0]], [[0], []], [0.1, 0.1])
        decoder = BpOsdDecoder(model, BpConfig(max_iterations=3))
        first = decoder.decode(np.array([1]))
        self.assertIs(decoder.decode(np.array([1])), first)
        self.assertEqual(decoder.osd_runs, 1)
        decoder.clear_cache()
        decoder.decode(np.array([1]))
        self.assertEqual(decoder.osd_runs, 2)

    def test_decode_batch_flags(self) -> None:
        model = repetition_model()
        batch = ShotBatch(
            np.array([[1, 0], [0, 0], [1, 1], [0, 1]]),
            np.array([[1], [0], [1], [0]]),
        )
        fails, flags = decode_batch(model, batch)
        self.assertEqual(fails, 1)
        self.assertEqual(flags.tolist(), [False, False, True, False])

    def test_decode_batch_dimension_mismatch(self) -> None:
        batch = ShotBatch(np.zeros((2, 3)), np.zeros((2, 1)))
        with self.assertRaises(ValueError):
            decode_batch(repetition_model(), batch)

    def test_weight_one_faults_are_corrected(self) -> None:
        model = circuit_model()
        picks = list(range(model.mechanism_count))
        batch = ShotBatch(
            np.array([model.syndrome([j]) for j in picks]),
            np.array([model.observable_flips([j]) for j in picks]),
        )
        fails, _ = decode_batch(model, batch, BpConfig(max_iterations=50))
        self.assertEqual(fails, 0)

    def test_estimate_is_the_cheapest_explanation(self) -> None:
        # Two detectors; the heavy mechanism 0 is one explanation of [1, 1],
        # the light pair 1 + 2 another.
        model = DetectorErrorModel(
            2, 1, [[0, 1], [0], [1]], [[0], [], []], [0.45, 0.3, 0.3]
        )
        decoder = BpOsdDecoder(model, BpConfig(max_iterations=50))
        outcome = decoder.decode(np.array([1, 1]))
        self.assertEqual(decoder.osd_runs, 1)
        chosen = decoder.cost(outcome.mechanism_estimate)
        self.assertLessEqual(chosen, decoder.cost([0]) + 1e-12)
        self.assertLessEqual(chosen, decoder.cost([1, 2]) + 1e-12)
        np.testing.assert_array_equal(
            model.syndrome(outcome.mechanism_estimate), [1, 1]
        )

    def test_zero_syndrome_skips_osd(self) -> None:
        decoder = BpOsdDecoder(repetition_model())
        outcome = decoder.decode(np.zeros(2, dtype=np.uint8))
        self.assertEqual(outcome.mechanism_estimate, [])
        self.assertTrue(outcome.bp_converged)
        self.assertEqual(decoder.osd_runs, 0)


def _injections(model: DetectorErrorModel, faults: list) -> ShotBatch:
    return ShotBatch(
        np.array([model.syndrome(f) for f in faults]),
        np.array([model.observable_flips(f) for f in faults]),
    )


def uniform_model(model: DetectorErrorModel, prior: float) -> DetectorErrorModel:
    """Same columns with equal priors, so the cheapest explanation is the lightest."""
    return DetectorErrorModel(
        model.detector_count,
        model.observable_count,
        model.detector_columns,
        model.observable_columns,
        [prior] * model.mechanism_count,
    )


class TestInjections(unittest.TestCase):
    bp = BpConfig(max_iterations=50)

    def test_bb18_weight_one(self) -> None:
        code = build_code("bb18")
        noise = NoiseParams(0.001, 0.001, idle_enabled=code.idle_noise)
        model = extract_dem(build_experiment(NONLOCAL_CNOT, code, noise))
        faults = [[j] for j in range(model.mechanism_count)]
        fails, flags = decode_batch(model, _injections(model, faults), self.bp)
        self.assertEqual(fails, 0, np.flatnonzero(flags).tolist()[:10])

    def test_sc5_weight_one_and_two(self) -> None:
        code = build_code("sc5")
        program = build_experiment(NONLOCAL_CNOT, code, NoiseParams(0.001, 0.001))
        model = uniform_model(extract_dem(program), 0.001)
        decoder = BpOsdDecoder(model, self.bp)
        m = model.mechanism_count
        faults = [[j] for j in range(m)]
        if SLOW:
            faults += [[a, b] for a, b in combinations(range(m), 2)]
        else:
            rng = np.random.default_rng(17)
            for _ in range(300):
                a, b = rng.choice(m, size=2, replace=False).tolist()
                faults.append([a, b])
        batch = _injections(model, faults)
        fails, flags = decode_batch(model, batch, decoder=decoder)
        self.assertEqual(fails, 0, [faults[i] for i in np.flatnonzero(flags)[:10]])


if __name__ == "__main__":
    unittest.main()
