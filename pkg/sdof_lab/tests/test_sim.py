import math

from django.test import SimpleTestCase

from sdof_lab import sim
from sdof_lab.align import (
    build_blind_plan,
    build_helper_plan,
    default_gamma,
    min_distance_oracle,
    pam_params,
    receiver_constellation,
)
from sdof_lab.exceptions import AmbiguousAlignment, DomainError, LeakageOverflow
from sdof_lab.model import ChannelInstance, HelperWiretap, sample_channel

P_LIST = [1e4, 1e6, 1e8, 1e10, 1e12]


def helper_setup(seed, P=1e5, delta=0.5):
    """M=2 helper scheme at Q=2 (L=3 dims at the legitimate receiver)."""
    ch = sample_channel(HelperWiretap(2), seed)
    plan = build_helper_plan(ch)
    legit = receiver_constellation(plan, ch, sim.LEGIT)
    pam = pam_params(P, len(legit.dims), delta, default_gamma(plan))
    return ch, plan, legit, pam


class LeakageTests(SimpleTestCase):
    def test_one_message_per_dim(self):
        self.assertAlmostEqual(sim.leakage_exact(1, [2]), 0.612, delta=0.001)

    def test_two_helpers(self):
        self.assertAlmostEqual(sim.leakage_exact(1, [2, 2]), 1.224, delta=0.002)

    def test_jamming_alone_leaks_nothing(self):
        for Q in (1, 5, 40):
            self.assertEqual(sim.leakage_exact(Q, [1, 1]), 0.0)

    def test_bound_suite(self):
        for Q in range(1, 65):
            exact = sim.leakage_exact(Q, [2])
            bound = sim.leakage_upper_bound(Q, [2])
            self.assertLessEqual(exact, bound + 1e-12)
            self.assertLessEqual(bound, 1.0)
            self.assertAlmostEqual(bound, math.log2((4 * Q + 1) / (2 * Q + 1)))

    def test_large_groups_stay_exact(self):
        self.assertLessEqual(sim.leakage_exact(1000, [6]), sim.leakage_upper_bound(1000, [6]))

    def test_cap(self):
        with self.assertRaises(LeakageOverflow):
            sim.leakage_exact(10, [2], q_cap=5)

    def test_domain(self):
        with self.assertRaises(DomainError):
            sim.leakage_exact(0, [2])
        with self.assertRaises(DomainError):
            sim.leakage_exact(2, [0])


class RateTests(SimpleTestCase):
    def test_rate_lower_bound(self):
        self.assertAlmostEqual(sim.rate_lower_bound(2, 2, 0.0), 2 * math.log2(5) - 1)
        self.assertAlmostEqual(sim.rate_lower_bound(2, 2, 0.0), 3.644, places=3)
        self.assertEqual(sim.rate_lower_bound(2, 2, 1.0), 0.0)
        self.assertAlmostEqual(sim.rate_lower_bound(1, 1, 0.0), 0.585, places=3)

    def test_secrecy_rate(self):
        self.assertAlmostEqual(sim.secrecy_rate_lb(3.644, 1.224), 2.420)
        self.assertEqual(sim.secrecy_rate_lb(0.0, 2.0), 0.0)
        self.assertEqual(sim.secrecy_rate_lb(1.5, 0.0), 1.5)
        with self.assertRaises(DomainError):
            sim.secrecy_rate_lb(-1.0, 0.0)

    def test_secrecy_rate_monotone(self):
        grid = [0.0, 0.5, 1.0, 2.5, 4.0]
        for x in grid:
            for low, high in zip(grid, grid[1:]):
                self.assertLessEqual(sim.secrecy_rate_lb(low, x), sim.secrecy_rate_lb(high, x))
                self.assertGreaterEqual(sim.secrecy_rate_lb(x, low), sim.secrecy_rate_lb(x, high))

    def test_error_rate_domain(self):
        with self.assertRaises(DomainError):
            sim.rate_lower_bound(2, 2, 1.5)


class TransmitAndDecodeTests(SimpleTestCase):
    def test_near_noiseless(self):
        ch, plan, legit, pam = helper_setup(seed=2)
        self.assertEqual(pam.Q, 2)
        ch = ch.with_noise(legit=1e-12)
        result = sim.transmit_and_decode(sim.SimConfig(plan, ch, pam, 2000, seed=0))
        self.assertEqual(result.error_rate, 0.0)
        self.assertEqual(result.errors, 0)

    def test_reproducible(self):
        ch, plan, legit, pam = helper_setup(seed=2)
        ch = ch.with_noise(legit=(pam.a / 4) ** 2)
        cfg = sim.SimConfig(plan, ch, pam, 500, seed=17)
        self.assertEqual(sim.transmit_and_decode(cfg), sim.transmit_and_decode(cfg))

    def test_error_rate_within_union_bound(self):
        for seed in range(20):
            ch, plan, legit, pam = helper_setup(seed)
            widths = [pam.Q * len(d.streams) for d in legit.dims]
            d_min = min_distance_oracle(legit.coefficients, pam.Q, pam.a, widths=widths)
            ch = ch.with_noise(legit=d_min ** 2 / 72)
            result = sim.transmit_and_decode(sim.SimConfig(plan, ch, pam, 10 ** 4, seed=seed))
            self.assertAlmostEqual(result.error_bound, math.exp(-9))
            self.assertLessEqual(result.error_rate, 3 * math.exp(-9) + 3 * result.standard_error)

    def test_unit_gains_collapse(self):
        ch = ChannelInstance(kind=HelperWiretap(1), h=(1.0, 1.0), g=(1.0, 1.0), noise_var=(1.0, 1.0))
        plan = build_helper_plan(ch)
        pam = pam_params(100, 2, 0.5, 1.0)
        with self.assertRaises(AmbiguousAlignment):
            sim.transmit_and_decode(sim.SimConfig(plan, ch, pam, 10, seed=0))

    def test_dimension_count_must_match(self):
        ch, plan, legit, pam = helper_setup(seed=2)
        wrong = pam_params(1e5, 2, 0.5, pam.gamma)
        with self.assertRaises(DomainError):
            sim.transmit_and_decode(sim.SimConfig(plan, ch, wrong, 10, seed=0))

    def test_trials(self):
        ch, plan, legit, pam = helper_setup(seed=2)
        with self.assertRaises(DomainError):
            sim.SimConfig(plan, ch, pam, 0, seed=0)


class BlindSpanTests(SimpleTestCase):
    def test_spans_eavesdropper_space(self):
        ch, plan = sim.build_scheme("blind", 2, 5)
        report = sim.blind_span_check(plan, ch)
        self.assertEqual(report.jamming_streams, 3)
        self.assertEqual(report.eve_jamming_dims, 3)
        self.assertEqual(report.legit_jamming_dims, 1)
        self.assertTrue(report.spans_entire_space)

    def test_unit_gains(self):
        ch = ChannelInstance(kind=HelperWiretap(2), h=(1.0,) * 3, g=(1.0,) * 3, noise_var=(1.0, 1.0))
        plan = build_blind_plan(ch, (1.2, 1.7))
        with self.assertRaises(AmbiguousAlignment):
            sim.blind_span_check(plan, ch)

    def test_needs_blind_plan(self):
        ch, plan = sim.build_scheme("helper", 2, 5)
        with self.assertRaises(DomainError):
            sim.blind_span_check(plan, ch)


class SweepTests(SimpleTestCase):
    def test_helper_slopes(self):
        slopes = []
        for M in (1, 2, 3):
            result = sim.sdof_sweep("helper", M, 0, 0.05, P_LIST)
            target = M * 0.95 / (M + 1.05)
            self.assertAlmostEqual(result.predicted, target)
            self.assertLess(abs(result.slope - target), 0.1 * target)
            slopes.append(result.slope)
        self.assertLess(slopes[0], slopes[1])
        self.assertLess(slopes[1], slopes[2])
        self.assertLess(slopes[2], 3 / 4)

    def test_helper_reports(self):
        result = sim.sdof_sweep("helper", 2, 0, 0.05, P_LIST)
        self.assertEqual([r.Q for r in result.reports][-3:], [17, 36, 73])
        for r in result.reports:
            self.assertIsNone(r.error_bound)
            self.assertLessEqual(r.leakage_bits, 2.0)
            self.assertAlmostEqual(r.secrecy_rate_bits, r.rate_lb_bits - r.leakage_bits)
            self.assertLess(r.normalized_rate, 2 / 3 * 2)

    def test_mac_three_users(self):
        result = sim.sdof_sweep("mac", 3, 0, 0.05, P_LIST)
        target = 6 * 0.95 / 7.05
        self.assertAlmostEqual(result.predicted, target)
        self.assertLess(abs(result.slope - target), 0.1 * target)
        self.assertLess(result.predicted, 6 / 7)

    def test_blind(self):
        result = sim.sdof_sweep("blind", 2, 0, 0.05, P_LIST)
        self.assertTrue(result.structure.spans_entire_space)
        self.assertTrue(all(r.leakage_bits is None for r in result.reports))
        self.assertEqual(result.reports[-1].csv_row()[6], "")
        self.assertLess(abs(result.slope - result.predicted), 0.1 * result.predicted)

    def test_measured_errors(self):
        result = sim.sdof_sweep("helper", 1, 0, 0.5, [1e4, 1e6, 1e8], measure_errors=True, trials=200)
        for r in result.reports:
            self.assertIsNotNone(r.error_bound)
            self.assertGreaterEqual(r.error_rate, 0.0)

    def test_deterministic(self):
        first = sim.sdof_sweep("mac", 2, 4, 0.05, P_LIST)
        second = sim.sdof_sweep("mac", 2, 4, 0.05, P_LIST)
        self.assertEqual(first.reports, second.reports)
        self.assertEqual(first.slope, second.slope)

    def test_power_list(self):
        with self.assertRaises(DomainError):
            sim.sdof_sweep("helper", 2, 0, 0.05, [1e4, 1e6])
        with self.assertRaises(DomainError):
            sim.sdof_sweep("helper", 2, 0, 0.05, [1e6, 1e4, 1e8])
        with self.assertRaises(DomainError):
            sim.sdof_sweep("relay", 2, 0, 0.05, P_LIST)

    def test_csv_row(self):
        result = sim.sdof_sweep("helper", 1, 0, 0.05, P_LIST)
        row = result.reports[0].csv_row()
        self.assertEqual(len(row), len(sim.CSV_HEADER))
        self.assertEqual(row[0], "10000.0")
        self.assertEqual(row[4], "")
