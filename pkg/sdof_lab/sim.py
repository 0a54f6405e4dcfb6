"""
Numerical evaluation of the alignment schemes.

Monte Carlo transmission with nearest-point decoding at the legitimate
receiver, exact eavesdropper leakage by integer convolution, the Fano rate
bound and power sweeps that estimate the secure degrees of freedom.
All logarithms are base 2.
"""
from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import entropy

from sdof_lab import conf
from sdof_lab.align import (
    BLIND_CJ,
    PamParams,
    SignalPlan,
    build_blind_plan,
    build_helper_plan,
    build_mac_plan,
    check_grid,
    default_gamma,
    grid_values,
    min_distance_oracle,
    pam_params,
    receiver_constellation,
    sample_alphas,
)
from sdof_lab.exceptions import DomainError, LeakageOverflow
from sdof_lab.model import (
    ALPHA_STREAM,
    EVE,
    ChannelInstance,
    HelperWiretap,
    MacWiretap,
    awgn,
    sample_channel,
    stream_rng,
)

logger = logging.getLogger(__name__)

LEGIT = 1

CSV_HEADER = (
    "P",
    "Q",
    "a",
    "error_rate",
    "error_bound",
    "rate_lb_bits",
    "leakage_bits",
    "secrecy_rate_bits",
    "normalized_rate",
)


@dataclass(frozen=True)
class SimConfig:
    plan: SignalPlan
    channel: ChannelInstance
    pam: PamParams
    trials: int
    seed: int

    def __post_init__(self):
        if int(self.trials) != self.trials or self.trials < 1:
            raise DomainError("trials must be a positive integer")


@dataclass(frozen=True)
class DecodeResult:
    error_rate: float
    error_bound: float
    d_min: float
    errors: int
    trials: int

    @property
    def standard_error(self):
        p = self.error_rate
        return math.sqrt(p * (1 - p) / self.trials)


@dataclass(frozen=True)
class SimReport:
    P: float
    Q: int
    a: float
    error_rate: float
    error_bound: Optional[float]
    rate_lb_bits: float
    leakage_bits: Optional[float]
    secrecy_rate_bits: Optional[float]
    normalized_rate: float

    def csv_row(self):
        def fmt(value):
            if value is None:
                return ""
            if isinstance(value, int):
                return str(value)
            return repr(float(value))

        return tuple(fmt(getattr(self, name)) for name in CSV_HEADER)


def _decoding_widths(constellation, Q):
    """Alphabet half-width per legitimate dimension; m aligned jammers span C(a, mQ)."""
    widths = []
    for dim in constellation.dims:
        if dim.messages and dim.jamming:
            raise DomainError("Dimension {} mixes message and jamming streams".format([str(s) for s in dim.streams]))
        if len(dim.messages) > 1:
            raise DomainError("Message streams {} are aligned and cannot be separated".format([str(s) for s in dim.messages]))
        widths.append(Q * len(dim.streams))
    return tuple(widths)


def transmit_and_decode(cfg: SimConfig) -> DecodeResult:
    """
    Send uniform PAM symbols on every stream and decode the legitimate
    receiver's observation to the nearest point of its constellation grid.

    Ties go to the lowest lexicographic grid index. A trial counts as an
    error when any message stream is misdecoded.
    """
    plan, ch, pam = cfg.plan, cfg.channel, cfg.pam
    legit = receiver_constellation(plan, ch, LEGIT)
    if pam.L != len(legit.dims):
        raise DomainError("pam.L={} but the legitimate receiver sees {} dims".format(pam.L, len(legit.dims)))
    Q, a = pam.Q, pam.a
    widths = _decoding_widths(legit, Q)
    size = check_grid(widths)
    shape = tuple(2 * w + 1 for w in widths)
    coeffs = legit.coefficients

    values = a * grid_values(coeffs, widths)
    order = np.argsort(values, kind="stable")
    distinct, first = np.unique(values[order], return_index=True)
    representative = order[first]

    d_min = min_distance_oracle(coeffs, Q, a, widths=widths)
    sigma2 = ch.noise_of(LEGIT)
    error_bound = math.exp(-d_min ** 2 / (8 * sigma2))
    logger.debug("Decoding over %d grid points, d_min=%g, bound=%g", size, d_min, error_bound)

    stream_dim = {s: i for i, dim in enumerate(legit.dims) for s in dim.streams}
    dim_index = np.array([stream_dim[s] for s in plan.streams])
    message_dims = [i for i, dim in enumerate(legit.dims) if dim.messages]
    offsets = np.array(widths)

    errors = 0
    for trial in range(cfg.trials):
        rng = stream_rng(cfg.seed, trial)
        draws = rng.integers(-Q, Q + 1, size=len(plan.streams))
        symbols = np.bincount(dim_index, weights=draws, minlength=len(widths)).astype(int)
        sent = np.ravel_multi_index(tuple(symbols + offsets), shape)
        y = awgn(values[sent], sigma2, rng)

        pos = int(np.searchsorted(distinct, y))
        candidates = [i for i in (pos - 1, pos) if 0 <= i < len(distinct)]
        best = min(candidates, key=lambda i: (abs(y - distinct[i]), representative[i]))
        decoded = np.array(np.unravel_index(representative[best], shape)) - offsets
        if any(decoded[i] != symbols[i] for i in message_dims):
            errors += 1

    return DecodeResult(
        error_rate=errors / cfg.trials,
        error_bound=error_bound,
        d_min=d_min,
        errors=errors,
        trials=cfg.trials,
    )


def _box_convolve(counts: np.ndarray, width: int):
    """Convolve integer counts with a box of ones of length ``width``, exactly."""
    n = len(counts)
    prefix = np.concatenate([np.zeros(1, dtype=counts.dtype), np.cumsum(counts)])
    k = np.arange(n + width - 1)
    return prefix[np.minimum(k, n - 1) + 1] - prefix[np.maximum(0, k - width + 1)]


@functools.lru_cache(maxsize=256)
def _dim_leakage(Q: int, size: int):
    if size == 1:
        return 0.0
    width = 2 * Q + 1
    dtype = object if width ** (size - 1) >= 2 ** 62 else np.int64
    counts = np.ones(width, dtype=dtype)
    for _ in range(size - 1):
        counts = _box_convolve(counts, width)
    h_sum = entropy(np.asarray(counts, dtype=float), base=2)
    return max(0.0, float(h_sum) - math.log2(width))


def leakage_exact(Q: int, group_sizes: Sequence[int], q_cap: int = None) -> float:
    """
    Noiseless leakage to the eavesdropper in bits.

    Each group is one eavesdropper dimension holding one jamming stream and
    ``size - 1`` message streams, all uniform on {-Q..Q}; its leakage is
    H(U + sum V) - H(U). Dimensions are separable for generic gains, so the
    total is the sum over groups.
    """
    cap = conf.resolve("LEAKAGE_Q_CAP", q_cap)
    if int(Q) != Q or Q < 1:
        raise DomainError("Q must be a positive integer")
    if Q > cap:
        raise LeakageOverflow("Q={} exceeds the leakage cap {}".format(Q, cap))
    if any(int(m) != m or m < 1 for m in group_sizes):
        raise DomainError("Group sizes must be positive integers")
    return sum(_dim_leakage(int(Q), int(m)) for m in group_sizes)


def leakage_upper_bound(Q: int, group_sizes: Sequence[int]) -> float:
    """sum of log2((2mQ+1)/(2Q+1)): the uniform law on each dimension's support."""
    return sum(math.log2((2 * m * Q + 1) / (2 * Q + 1)) for m in group_sizes)


def rate_lower_bound(Q: int, M_streams: int, error_rate: float) -> float:
    """Fano bound (1 - Pe) M log2(2Q+1) - 1, floored at 0."""
    if not 0 <= error_rate <= 1:
        raise DomainError("error_rate must lie in [0, 1]")
    return max(0.0, (1 - error_rate) * M_streams * math.log2(2 * Q + 1) - 1)


def secrecy_rate_lb(rate_lb_bits: float, leakage_bits: float) -> float:
    if rate_lb_bits < 0 or leakage_bits < 0:
        raise DomainError("Rates must be nonnegative")
    return max(0.0, rate_lb_bits - leakage_bits)


def predicted_slope(message_streams: int, L: int, delta: float) -> float:
    """Finite-delta pre-log L_msg (1 - delta) / (L + delta) of the rate bound."""
    return message_streams * (1 - delta) / (L + delta)


@dataclass(frozen=True)
class BlindSpanReport:
    jamming_streams: int
    eve_dims: int
    eve_jamming_dims: int
    legit_dims: int
    legit_jamming_dims: int

    @property
    def spans_entire_space(self):
        return self.eve_jamming_dims == self.jamming_streams and self.legit_jamming_dims == 1


def blind_span_check(plan: SignalPlan, ch: ChannelInstance, rtol: float = None) -> BlindSpanReport:
    """
    Structural security check of blind cooperative jamming: the M+1
    jamming streams must occupy M+1 distinct eavesdropper dimensions and a
    single dimension at the legitimate receiver.
    """
    if plan.scheme != BLIND_CJ:
        raise DomainError("blind_span_check needs a BlindCJ plan, got {}".format(plan.scheme))
    eve = receiver_constellation(plan, ch, EVE, rtol=rtol)
    legit = receiver_constellation(plan, ch, LEGIT, rtol=rtol)
    report = BlindSpanReport(
        jamming_streams=len(plan.streams) - len(plan.message_streams),
        eve_dims=len(eve.dims),
        eve_jamming_dims=sum(1 for d in eve.dims if not d.messages),
        legit_dims=len(legit.dims),
        legit_jamming_dims=sum(1 for d in legit.dims if d.jamming),
    )
    if not report.spans_entire_space:
        logger.warning("Blind jamming does not span the eavesdropper space: %s", report)
    return report


def fit_slope(P_list: Sequence[float], rates: Sequence[float]) -> float:
    """Least-squares slope of rate against (1/2) log2 P over the upper half of the points."""
    start = len(P_list) // 2
    x = 0.5 * np.log2(np.asarray(P_list[start:], dtype=float))
    y = np.asarray(rates[start:], dtype=float)
    return float(np.polyfit(x, y, 1)[0])


SWEEP_SCHEMES = ("helper", "mac", "blind")


def build_scheme(scheme: str, size: int, ch_seed: int) -> Tuple[ChannelInstance, SignalPlan]:
    """Sample the channel for ``ch_seed`` and lay out the named scheme on it."""
    if scheme == "helper":
        ch = sample_channel(HelperWiretap(size), ch_seed)
        return ch, build_helper_plan(ch)
    if scheme == "mac":
        ch = sample_channel(MacWiretap(size), ch_seed)
        return ch, build_mac_plan(ch)
    if scheme == "blind":
        ch = sample_channel(HelperWiretap(size), ch_seed)
        alphas = sample_alphas(size, stream_rng(ch_seed, ALPHA_STREAM))
        return ch, build_blind_plan(ch, alphas)
    raise DomainError("Unknown scheme {!r}; expected one of {}".format(scheme, ", ".join(SWEEP_SCHEMES)))


@dataclass(frozen=True)
class SweepResult:
    scheme: str
    size: int
    delta: float
    reports: Tuple[SimReport, ...]
    slope: float
    predicted: float
    channel: ChannelInstance
    plan: SignalPlan
    structure: Optional[BlindSpanReport] = None


def sdof_sweep(
    scheme: str,
    size: int,
    ch_seed: int,
    delta: float,
    P_list: Sequence[float],
    measure_errors: bool = False,
    trials: int = 1000,
    sim_seed: int = 0,
) -> SweepResult:
    """
    Secrecy rate bound over a list of powers and its fitted pre-log.

    By default decoding is taken as error free, which makes the sweep a
    deterministic evaluation of the rate accounting; ``measure_errors``
    plugs in Monte Carlo error rates instead.
    """
    P_list = [float(P) for P in P_list]
    if len(P_list) < 3:
        raise DomainError("A sweep needs at least 3 powers")
    if any(P <= 1 for P in P_list) or any(b <= a for a, b in zip(P_list, P_list[1:])):
        raise DomainError("Powers must be increasing and greater than 1")

    ch, plan = build_scheme(scheme, size, ch_seed)
    legit = receiver_constellation(plan, ch, LEGIT)
    L = len(legit.dims)
    messages = len(plan.message_streams)
    gamma = default_gamma(plan)

    structure = None
    groups = None
    if plan.scheme == BLIND_CJ:
        structure = blind_span_check(plan, ch)
    else:
        eve = receiver_constellation(plan, ch, EVE)
        groups = [len(d.streams) for d in eve.dims]

    reports: List[SimReport] = []
    for P in P_list:
        pam = pam_params(P, L, delta, gamma)
        error_rate, error_bound = 0.0, None
        if measure_errors:
            result = transmit_and_decode(SimConfig(plan, ch, pam, trials, sim_seed))
            error_rate, error_bound = result.error_rate, result.error_bound
        rate = rate_lower_bound(pam.Q, messages, error_rate)
        leakage = secrecy = None
        if groups is not None:
            leakage = leakage_exact(pam.Q, groups)
            secrecy = secrecy_rate_lb(rate, leakage)
        reports.append(
            SimReport(
                P=P,
                Q=pam.Q,
                a=pam.a,
                error_rate=error_rate,
                error_bound=error_bound,
                rate_lb_bits=rate,
                leakage_bits=leakage,
                secrecy_rate_bits=secrecy,
                normalized_rate=rate / (0.5 * math.log2(P)),
            )
        )
        logger.info("%s sweep P=%g Q=%d rate=%.4f", scheme, P, pam.Q, rate)

    fitted = [r.secrecy_rate_bits if r.secrecy_rate_bits is not None else r.rate_lb_bits for r in reports]
    return SweepResult(
        scheme=scheme,
        size=size,
        delta=delta,
        reports=tuple(reports),
        slope=fit_slope(P_list, fitted),
        predicted=predicted_slope(messages, L, delta),
        channel=ch,
        plan=plan,
        structure=structure,
    )
