import numpy as np
from django.test import SimpleTestCase

from sdof_lab.exceptions import DomainError, RejectionCapExceeded
from sdof_lab.model import (
    EVE,
    ChannelInstance,
    GainSampler,
    HelperWiretap,
    InterferenceEE,
    MacWiretap,
    awgn,
    sample_channel,
    stream_rng,
)


class ChannelKindTests(SimpleTestCase):
    def test_sizes(self):
        self.assertEqual(HelperWiretap(2).n_transmitters, 3)
        self.assertEqual(MacWiretap(3).n_transmitters, 3)
        self.assertEqual(InterferenceEE(3).receivers, (1, 2, 3, EVE))
        self.assertEqual(str(MacWiretap(3)), "MacWiretap(K=3)")

    def test_invalid(self):
        with self.assertRaises(DomainError):
            MacWiretap(1)
        with self.assertRaises(DomainError):
            HelperWiretap(0)


class SampleChannelTests(SimpleTestCase):
    def test_shape_and_floor(self):
        ch = sample_channel(HelperWiretap(2), seed=7)
        self.assertEqual(len(ch.h), 3)
        self.assertEqual(len(ch.g), 3)
        self.assertTrue(all(abs(x) >= 1e-3 for x in ch.h + ch.g))
        self.assertEqual(ch.noise_var, (1.0, 1.0))

    def test_deterministic(self):
        self.assertEqual(sample_channel(MacWiretap(3), seed=7), sample_channel(MacWiretap(3), seed=7))
        self.assertNotEqual(sample_channel(MacWiretap(3), seed=7), sample_channel(MacWiretap(3), seed=8))

    def test_interference_gain_matrix(self):
        ch = sample_channel(InterferenceEE(3), seed=1)
        self.assertEqual(len(ch.h), 3)
        self.assertTrue(all(len(row) == 3 for row in ch.h))
        self.assertEqual(ch.gain(2, 3), ch.h[1][2])
        self.assertEqual(ch.gain(2, EVE), ch.g[1])

    def test_rejection_cap(self):
        sampler = GainSampler(distribution="constant", scale=1e-12, rejection_cap=100)
        with self.assertRaises(RejectionCapExceeded):
            sample_channel(HelperWiretap(1), seed=3, sampler=sampler)

    def test_gain_ratios_are_distinct(self):
        for seed in range(1000):
            ch = sample_channel(MacWiretap(3), seed=seed)
            gains = [ch.gain(t, r) for t in range(1, 4) for r in ch.kind.receivers]
            ratios = [x / y for i, x in enumerate(gains) for y in gains[i + 1:]]
            self.assertEqual(len(set(ratios)), len(ratios), seed)

    def test_unknown_distribution(self):
        with self.assertRaises(DomainError):
            GainSampler(distribution="rayleigh")


class ChannelInstanceTests(SimpleTestCase):
    def test_zero_gain_rejected(self):
        with self.assertRaises(DomainError):
            ChannelInstance(kind=HelperWiretap(1), h=(1.0, 0.0), g=(1.0, 1.0), noise_var=(1.0, 1.0))

    def test_noise_per_receiver(self):
        with self.assertRaises(DomainError):
            ChannelInstance(kind=HelperWiretap(1), h=(1.0, 1.0), g=(1.0, 1.0), noise_var=(1.0,))

    def test_single_legitimate_receiver(self):
        ch = ChannelInstance(kind=HelperWiretap(1), h=(1.0, 2.0), g=(3.0, 4.0), noise_var=(1.0, 1.0))
        with self.assertRaises(DomainError):
            ch.gain(1, 2)

    def test_with_noise(self):
        ch = sample_channel(HelperWiretap(2), seed=7).with_noise(legit=0.25)
        self.assertEqual(ch.noise_of(1), 0.25)
        self.assertEqual(ch.noise_of(EVE), 1.0)

    def test_json_document(self):
        ch = sample_channel(InterferenceEE(2), seed=5)
        doc = ch.to_json()
        self.assertEqual(doc["kind"], {"family": "ic", "size": 2})
        self.assertEqual(ChannelInstance.from_json(doc), ch)

    def test_json_document_is_validated(self):
        doc = sample_channel(MacWiretap(2), seed=5).to_json()
        doc["g"] = [1.0, 0.0]
        with self.assertRaises(DomainError):
            ChannelInstance.from_json(doc)


class RandomStreamTests(SimpleTestCase):
    def test_substreams(self):
        a = stream_rng(11, 0).integers(0, 2 ** 32, size=4)
        b = stream_rng(11, 0).integers(0, 2 ** 32, size=4)
        c = stream_rng(11, 1).integers(0, 2 ** 32, size=4)
        np.testing.assert_array_equal(a, b)
        self.assertFalse(np.array_equal(a, c))

    def test_negative_seed(self):
        stream_rng(-1, 0).normal()


class AwgnTests(SimpleTestCase):
    def test_scalar(self):
        y = awgn(2.0, 1.0, stream_rng(0, 0))
        self.assertIsInstance(y, float)
        self.assertTrue(np.isfinite(y))

    def test_moments(self):
        z = awgn(np.zeros(10 ** 6), 1.0, stream_rng(1, 0))
        self.assertAlmostEqual(float(z.mean()), 0.0, delta=0.01)
        self.assertAlmostEqual(float(z.var()), 1.0, delta=0.02)

    def test_positive_variance(self):
        with self.assertRaises(DomainError):
            awgn(0.0, 0.0, stream_rng(0, 0))
