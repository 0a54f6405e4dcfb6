"""
Gaussian channel instances for the three network families, seeded gain
sampling and the additive noise used by the Monte Carlo evaluator.

Transmitters and legitimate receivers are numbered from 1 as in the channel
equations; transmitter 1 of a helper network is the legitimate transmitter
and transmitters 2..M+1 are the helpers. The eavesdropper is addressed by
the ``EVE`` receiver id.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple, Union

import numpy as np

from sdof_lab import conf
from sdof_lab.exceptions import DomainError, RejectionCapExceeded

logger = logging.getLogger(__name__)

EVE = "eve"

HELPER = "helper"
MAC = "mac"
IC = "ic"
FAMILIES = (HELPER, MAC, IC)

# substream ids reserved for model-level draws
CHANNEL_STREAM = 0
ALPHA_STREAM = 1

_MASK64 = (1 << 64) - 1

Receiver = Union[int, str]


@dataclass(frozen=True)
class ChannelKind:
    """Network family plus its size: M helpers, or K users."""

    family: str
    size: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError("Unknown channel family: {!r}".format(self.family))
        minimum = 1 if self.family == HELPER else 2
        if int(self.size) != self.size or self.size < minimum:
            raise DomainError(
                "{} channel needs size >= {}, got {}".format(self.family, minimum, self.size)
            )

    @property
    def n_transmitters(self):
        return self.size + 1 if self.family == HELPER else self.size

    @property
    def n_legit_receivers(self):
        return self.size if self.family == IC else 1

    @property
    def receivers(self):
        return tuple(range(1, self.n_legit_receivers + 1)) + (EVE,)

    def __str__(self):
        if self.family == HELPER:
            return "HelperWiretap(M={})".format(self.size)
        if self.family == MAC:
            return "MacWiretap(K={})".format(self.size)
        return "InterferenceEE(K={})".format(self.size)


def HelperWiretap(M: int) -> ChannelKind:
    return ChannelKind(HELPER, M)


def MacWiretap(K: int) -> ChannelKind:
    return ChannelKind(MAC, K)


def InterferenceEE(K: int) -> ChannelKind:
    return ChannelKind(IC, K)


def _check_gain(value, what):
    if not math.isfinite(value) or value == 0:
        raise DomainError("{} must be finite and nonzero, got {!r}".format(what, value))


@dataclass(frozen=True)
class ChannelInstance:
    """
    Real channel gains of one network realization.

    ``h`` holds the gains to the legitimate receiver (a K x K matrix
    ``h[j][i]``, transmitter j+1 to receiver i+1, for the interference
    channel); ``g`` the gains to the eavesdropper. ``noise_var`` has one
    entry per receiver in ``kind.receivers`` order, eavesdropper last.
    """

    kind: ChannelKind
    h: Tuple
    g: Tuple[float, ...]
    noise_var: Tuple[float, ...]
    seed: Optional[int] = None

    def __post_init__(self):
        n = self.kind.n_transmitters
        if len(self.h) != n or len(self.g) != n:
            raise DomainError(
                "{} needs {} h and g gains, got {} and {}".format(self.kind, n, len(self.h), len(self.g))
            )
        if self.kind.family == IC:
            for j, row in enumerate(self.h, start=1):
                if len(row) != n:
                    raise DomainError("h row {} must have {} entries".format(j, n))
                for i, value in enumerate(row, start=1):
                    _check_gain(value, "h[{}][{}]".format(j, i))
        else:
            for j, value in enumerate(self.h, start=1):
                _check_gain(value, "h[{}]".format(j))
        for j, value in enumerate(self.g, start=1):
            _check_gain(value, "g[{}]".format(j))
        if len(self.noise_var) != len(self.kind.receivers):
            raise DomainError(
                "noise_var needs {} entries, got {}".format(len(self.kind.receivers), len(self.noise_var))
            )
        for value in self.noise_var:
            if not (value > 0 and math.isfinite(value)):
                raise DomainError("noise_var must be positive, got {!r}".format(value))

    def gain(self, transmitter: int, receiver: Receiver):
        """Gain from transmitter (1-based) to receiver (1-based or EVE)."""
        if receiver == EVE:
            return self.g[transmitter - 1]
        if self.kind.family == IC:
            return self.h[transmitter - 1][receiver - 1]
        if receiver != 1:
            raise DomainError("{} has a single legitimate receiver".format(self.kind))
        return self.h[transmitter - 1]

    def noise_of(self, receiver: Receiver):
        return self.noise_var[self.kind.receivers.index(receiver)]

    def to_json(self):
        from sdof_lab.serializers import ChannelInstanceSerializer

        return ChannelInstanceSerializer(self).data

    @classmethod
    def from_json(cls, data):
        from sdof_lab.serializers import channel_from_json

        return channel_from_json(data)

    def with_noise(self, legit: Optional[float] = None, eve: Optional[float] = None):
        """Copy with the legitimate and/or eavesdropper noise variance replaced."""
        values = list(self.noise_var)
        if legit is not None:
            values[:-1] = [legit] * (len(values) - 1)
        if eve is not None:
            values[-1] = eve
        return replace(self, noise_var=tuple(values))


def stream_rng(seed: int, stream_id: int) -> np.random.Generator:
    """
    Independent generator for (seed, stream_id).

    Philox is counter based and its bit stream is fixed across platforms;
    the SeedSequence hashes both integers into the key, so substreams never
    share state and can be forked per worker or per trial.
    """
    sequence = np.random.SeedSequence([int(seed) & _MASK64, int(stream_id) & _MASK64])
    return np.random.Generator(np.random.Philox(sequence))


@dataclass(frozen=True)
class GainSampler:
    """
    Continuous gain law: a magnitude distribution with a uniform random sign.

    ``distribution`` is one of ``normal`` (|N(0, scale^2)|), ``uniform``
    (U(0, scale)) or ``constant`` (exactly ``scale``). Draws with
    |gain| < eps_gain are rejected and redrawn.
    """

    distribution: str = "normal"
    scale: float = 1.0
    eps_gain: Optional[float] = None
    rejection_cap: Optional[int] = None

    def __post_init__(self):
        if self.distribution not in ("normal", "uniform", "constant"):
            raise DomainError("Unknown gain distribution: {!r}".format(self.distribution))
        if not self.scale > 0:
            raise DomainError("Gain scale must be positive")

    def _magnitude(self, rng: np.random.Generator):
        if self.distribution == "normal":
            return abs(rng.normal(0.0, self.scale))
        if self.distribution == "uniform":
            return rng.uniform(0.0, self.scale)
        return self.scale

    def draw(self, rng: np.random.Generator, count: int):
        eps = conf.resolve("EPS_GAIN", self.eps_gain)
        cap = conf.resolve("REJECTION_CAP", self.rejection_cap)
        gains = []
        rejections = 0
        while len(gains) < count:
            magnitude = self._magnitude(rng)
            sign = 1.0 if rng.integers(0, 2) else -1.0
            if magnitude < eps:
                rejections += 1
                if rejections >= cap:
                    raise RejectionCapExceeded(
                        "Gain sampler rejected {} draws below eps_gain={}; "
                        "check the sampler configuration".format(rejections, eps)
                    )
                continue
            gains.append(sign * float(magnitude))
        if rejections:
            logger.debug("Gain sampler rejected %d draws", rejections)
        return tuple(gains)


def sample_channel(
    kind: ChannelKind,
    seed: int,
    sampler: Optional[GainSampler] = None,
    noise_var: Optional[float] = None,
) -> ChannelInstance:
    """Deterministic channel realization for (kind, seed)."""
    sampler = sampler or GainSampler()
    variance = conf.resolve("NOISE_VAR", noise_var)
    rng = stream_rng(seed, CHANNEL_STREAM)
    n = kind.n_transmitters
    if kind.family == IC:
        flat = sampler.draw(rng, n * n)
        h = tuple(tuple(flat[j * n:(j + 1) * n]) for j in range(n))
    else:
        h = sampler.draw(rng, n)
    g = sampler.draw(rng, n)
    return ChannelInstance(
        kind=kind,
        h=h,
        g=g,
        noise_var=(float(variance),) * len(kind.receivers),
        seed=seed,
    )


def awgn(value, noise_var: float, rng: np.random.Generator):
    """``value`` plus zero-mean Gaussian noise of variance ``noise_var``."""
    if not noise_var > 0:
        raise DomainError("noise_var must be positive, got {!r}".format(noise_var))
    sigma = math.sqrt(noise_var)
    if np.ndim(value) == 0:
        return float(value) + float(rng.normal(0.0, sigma))
    value = np.asarray(value, dtype=float)
    return value + rng.normal(0.0, sigma, size=value.shape)
