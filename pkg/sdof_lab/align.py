"""
Signalling schemes as explicit linear plans, the constellations they induce
at each receiver, PAM parameter selection and the minimum-distance oracle.

Plan coefficients are kept as sympy expressions in the channel gains. The
effective coefficient of a stream at a receiver is the product of the
link gain symbol and the transmit coefficient; sympy cancels it to a
canonical form, so streams that the scheme aligns end up with the *same*
expression and therefore the same float, bit for bit. Two dimensions that
differ symbolically but land within rtol numerically are reported as an
``AmbiguousAlignment``.
"""
from __future__ import annotations

import functools
import logging
import math
from collections import OrderedDict, namedtuple
from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np
import sympy

from sdof_lab import conf
from sdof_lab.exceptions import AmbiguousAlignment, DomainError, TooLarge
from sdof_lab.model import EVE, HELPER, IC, MAC, ChannelInstance, Receiver

logger = logging.getLogger(__name__)

HELPER_ALIGNED = "HelperAligned"
MAC_ALIGNED = "MacAligned"
BLIND_CJ = "BlindCJ"
SCHEMES = (HELPER_ALIGNED, MAC_ALIGNED, BLIND_CJ)

MESSAGE = "V"
JAMMING = "U"


@dataclass(frozen=True, order=True)
class StreamId:
    """A message sub-signal V(owner, slot) or the jamming signal U(owner)."""

    tag: str
    owner: int
    slot: Optional[int] = None

    @property
    def is_message(self):
        return self.tag == MESSAGE

    @property
    def label(self):
        if self.is_message:
            return "V{},{}".format(self.owner, self.slot)
        return "U{}".format(self.owner)

    def __str__(self):
        return self.label


def Message(owner: int, slot: int) -> StreamId:
    return StreamId(MESSAGE, owner, slot)


def Jamming(owner: int) -> StreamId:
    return StreamId(JAMMING, owner)


# Gain symbols. Legitimate-link gains are h<t> (h<t>_<r> for the interference
# channel), eavesdropper gains g<t>, blind alignment scalars alpha<k>.

@functools.lru_cache(maxsize=None)
def _symbol(name: str):
    return sympy.Symbol(name, real=True, nonzero=True)


def gain_symbol(ch: ChannelInstance, transmitter: int, receiver: Receiver) -> sympy.Symbol:
    if receiver == EVE:
        return _symbol("g{}".format(transmitter))
    if ch.kind.family == IC:
        return _symbol("h{}_{}".format(transmitter, receiver))
    return _symbol("h{}".format(transmitter))


def alpha_symbol(k: int) -> sympy.Symbol:
    return _symbol("alpha{}".format(k))


def symbol_values(ch: ChannelInstance, alphas: Mapping[int, float] = None) -> Dict[sympy.Symbol, float]:
    values = {}
    n = ch.kind.n_transmitters
    for t in range(1, n + 1):
        values[gain_symbol(ch, t, EVE)] = ch.gain(t, EVE)
        for r in ch.kind.receivers[:-1]:
            values[gain_symbol(ch, t, r)] = ch.gain(t, r)
    for k, value in (alphas or {}).items():
        values[alpha_symbol(k)] = value
    return values


@functools.lru_cache(maxsize=4096)
def _compiled(expr):
    symbols = tuple(sorted(expr.free_symbols, key=str))
    return symbols, sympy.lambdify(symbols, expr, modules="math")


def evaluate(expr, values: Mapping[sympy.Symbol, float]) -> float:
    """Float value of a plan expression; equal expressions give equal floats."""
    symbols, fn = _compiled(expr)
    return float(fn(*(values[s] for s in symbols)))


@dataclass(frozen=True)
class PlanTerm:
    stream: StreamId
    expr: sympy.Expr
    coeff: float


@dataclass(frozen=True)
class TxInput:
    tx_index: int
    terms: Tuple[PlanTerm, ...]


@dataclass(frozen=True)
class SignalPlan:
    """Each transmitter's input as a linear combination of stream values."""

    scheme: str
    size: int
    streams: Tuple[StreamId, ...]
    tx: Tuple[TxInput, ...]
    alphas: Tuple[Tuple[int, float], ...] = ()

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise DomainError("Unknown scheme: {!r}".format(self.scheme))
        seen = {}
        for tx in self.tx:
            for term in tx.terms:
                if term.stream in seen:
                    raise DomainError(
                        "Stream {} sent by transmitters {} and {}".format(term.stream, seen[term.stream], tx.tx_index)
                    )
                seen[term.stream] = tx.tx_index
                if not math.isfinite(term.coeff) or term.coeff == 0:
                    raise DomainError("Coefficient of {} must be finite and nonzero".format(term.stream))
        if set(seen) != set(self.streams):
            raise DomainError("Every stream must be sent by exactly one transmitter")
        messages = len(self.message_streams)
        jammers = len(self.streams) - messages
        expected = {
            HELPER_ALIGNED: (self.size, self.size),
            MAC_ALIGNED: (self.size * (self.size - 1), self.size),
            BLIND_CJ: (self.size, self.size + 1),
        }[self.scheme]
        if (messages, jammers) != expected:
            raise DomainError(
                "{} with size {} needs {} message and {} jamming streams, got {} and {}".format(
                    self.scheme, self.size, expected[0], expected[1], messages, jammers
                )
            )

    @property
    def message_streams(self):
        return tuple(s for s in self.streams if s.is_message)

    @property
    def tx_coeffs(self):
        return {tx.tx_index: [(t.stream, t.coeff) for t in tx.terms] for tx in self.tx}

    @property
    def owner_of(self):
        return {t.stream: tx.tx_index for tx in self.tx for t in tx.terms}

    @property
    def term_of(self):
        return {t.stream: t for tx in self.tx for t in tx.terms}


def _plan(scheme, size, ch, inputs, alphas=None):
    values = symbol_values(ch, alphas)
    tx = []
    streams = []
    for tx_index, pairs in inputs:
        terms = []
        for stream, expr in pairs:
            terms.append(PlanTerm(stream, expr, evaluate(expr, values)))
            streams.append(stream)
        tx.append(TxInput(tx_index, tuple(terms)))
    return SignalPlan(
        scheme=scheme,
        size=size,
        streams=tuple(streams),
        tx=tuple(tx),
        alphas=tuple(sorted((alphas or {}).items())),
    )


def _require(ch: ChannelInstance, family: str):
    if ch.kind.family != family:
        raise DomainError("Scheme needs a {} channel, got {}".format(family, ch.kind))


def build_helper_plan(ch: ChannelInstance) -> SignalPlan:
    """
    Wiretap channel with M helpers: the legitimate transmitter sends
    V_k with coefficient g_k/(g_1 h_k), helper k sends U_k with 1/h_k, so
    each U_k lands on top of V_k at the eavesdropper and all U's share one
    dimension at the legitimate receiver.
    """
    _require(ch, HELPER)
    M = ch.kind.size
    h = lambda t: gain_symbol(ch, t, 1)
    g = lambda t: gain_symbol(ch, t, EVE)
    inputs = [(1, [(Message(1, k), g(k) / (g(1) * h(k))) for k in range(2, M + 2)])]
    inputs += [(j, [(Jamming(j), 1 / h(j))]) for j in range(2, M + 2)]
    return _plan(HELPER_ALIGNED, M, ch, inputs)


def build_mac_plan(ch: ChannelInstance) -> SignalPlan:
    """K-user MAC: X_i = sum_{j != i} g_j/(g_i h_j) V_{i,j} + U_i / h_i."""
    _require(ch, MAC)
    K = ch.kind.size
    h = lambda t: gain_symbol(ch, t, 1)
    g = lambda t: gain_symbol(ch, t, EVE)
    inputs = []
    for i in range(1, K + 1):
        pairs = [(Message(i, j), g(j) / (g(i) * h(j))) for j in range(1, K + 1) if j != i]
        pairs.append((Jamming(i), 1 / h(i)))
        inputs.append((i, pairs))
    return _plan(MAC_ALIGNED, K, ch, inputs)


def build_blind_plan(ch: ChannelInstance, alphas: Sequence[float]) -> SignalPlan:
    """
    Helper network without eavesdropper CSI: every transmitter jams with
    U_j / h_j and the message streams ride on free scalars alpha_k, so no
    g gain enters any transmit coefficient.
    """
    _require(ch, HELPER)
    M = ch.kind.size
    if len(alphas) != M:
        raise DomainError("Blind plan needs {} alphas, got {}".format(M, len(alphas)))
    if any(a == 0 or not math.isfinite(a) for a in alphas):
        raise DomainError("Blind alphas must be finite and nonzero")
    h = lambda t: gain_symbol(ch, t, 1)
    alpha_values = {k: float(a) for k, a in zip(range(2, M + 2), alphas)}
    first = [(Jamming(1), 1 / h(1))] + [(Message(1, k), alpha_symbol(k)) for k in range(2, M + 2)]
    inputs = [(1, first)] + [(j, [(Jamming(j), 1 / h(j))]) for j in range(2, M + 2)]
    return _plan(BLIND_CJ, M, ch, inputs, alpha_values)


def sample_alphas(M: int, rng: np.random.Generator, alpha_range=None) -> Tuple[float, ...]:
    low, high = conf.resolve("ALPHA_RANGE", alpha_range)
    return tuple(float(x) for x in rng.uniform(low, high, size=M))


@dataclass(frozen=True)
class PamParams:
    P: float
    L: int
    delta: float
    gamma: float
    Q: int
    a: float


def pam_params(P: float, L: int, delta: float, gamma: float) -> PamParams:
    """Q = P^((1-delta)/(2(L+delta))) floored to an integer >= 1, a = gamma sqrt(P)/Q."""
    if not P > 0:
        raise DomainError("P must be positive")
    if int(L) != L or L < 1:
        raise DomainError("L must be a positive integer")
    if not 0 < delta < 1:
        raise DomainError("delta must lie in (0, 1)")
    if not gamma > 0:
        raise DomainError("gamma must be positive")
    exact = P ** ((1 - delta) / (2 * (L + delta)))
    # integer powers such as 1024^0.1 may evaluate a hair below the integer
    Q = max(1, math.floor(exact * (1 + 1e-12)))
    a = gamma * math.sqrt(P) / Q
    return PamParams(P=float(P), L=int(L), delta=float(delta), gamma=float(gamma), Q=Q, a=a)


def default_gamma(plan: SignalPlan) -> float:
    """gamma putting the largest peak amplitude sum |coeff| * a * Q at exactly sqrt(P)."""
    peak = max(sum(abs(t.coeff) for t in tx.terms) for tx in plan.tx)
    return 1.0 / peak


@dataclass(frozen=True)
class Dimension:
    coeff: float
    streams: Tuple[StreamId, ...]
    expr: sympy.Expr

    @property
    def jamming(self):
        return tuple(s for s in self.streams if not s.is_message)

    @property
    def messages(self):
        return tuple(s for s in self.streams if s.is_message)


@dataclass(frozen=True)
class ReceiverConstellation:
    receiver: Receiver
    dims: Tuple[Dimension, ...]

    @property
    def coefficients(self):
        return tuple(d.coeff for d in self.dims)

    @property
    def sizes(self):
        return tuple(len(d.streams) for d in self.dims)

    def dim_of(self, stream: StreamId):
        for dim in self.dims:
            if stream in dim.streams:
                return dim
        raise KeyError(stream)


def receiver_constellation(
    plan: SignalPlan, ch: ChannelInstance, receiver: Receiver, rtol: float = None
) -> ReceiverConstellation:
    rtol = conf.resolve("RTOL", rtol)
    if receiver not in ch.kind.receivers:
        raise DomainError("{} has no receiver {!r}".format(ch.kind, receiver))
    n = ch.kind.n_transmitters
    owners = plan.owner_of
    if max(owners.values()) > n:
        raise DomainError("Plan uses more transmitters than {} has".format(ch.kind))
    values = symbol_values(ch, dict(plan.alphas))
    groups = OrderedDict()
    for stream in plan.streams:
        term = plan.term_of[stream]
        expr = gain_symbol(ch, owners[stream], receiver) * term.expr
        groups.setdefault(expr, []).append(stream)
    dims = tuple(
        Dimension(coeff=evaluate(expr, values), streams=tuple(streams), expr=expr)
        for expr, streams in groups.items()
    )
    ordered = sorted(dims, key=lambda d: d.coeff)
    for left, right in zip(ordered, ordered[1:]):
        scale = max(abs(left.coeff), abs(right.coeff))
        if abs(right.coeff - left.coeff) <= rtol * scale:
            raise AmbiguousAlignment(
                "Dimensions {} and {} at receiver {} coincide within rtol={} ({!r} vs {!r})".format(
                    [str(s) for s in left.streams],
                    [str(s) for s in right.streams],
                    receiver,
                    rtol,
                    left.coeff,
                    right.coeff,
                )
            )
    return ReceiverConstellation(receiver=receiver, dims=dims)


def grid_values(dims: Sequence[float], widths: Sequence[int]) -> np.ndarray:
    """sum_i dims_i * b_i over b in prod_i {-w_i..w_i}, in lexicographic order of b."""
    values = np.zeros(1)
    for coeff, width in zip(dims, widths):
        values = np.add.outer(values, coeff * np.arange(-width, width + 1, dtype=float)).ravel()
    return values


def check_grid(widths: Sequence[int], guard: int = None) -> int:
    guard = conf.resolve("GRID_GUARD", guard)
    size = 1
    for width in widths:
        size *= 2 * width + 1
    if size > guard:
        raise TooLarge("Constellation grid has {} points, guard is {}".format(size, guard))
    return size


def min_distance_oracle(
    dims: Sequence[float], Q: int, a: float, widths: Sequence[int] = None, guard: int = None
) -> float:
    """
    Exact min over nonzero integer difference vectors of a * |sum dims_i Delta_i|.

    Every difference vector with |Delta_i| <= 2 w_i is a difference of two
    grid points, so the minimum equals the smallest gap between sorted grid
    values; a repeated value (rationally dependent dims) gives 0.
    """
    if not dims:
        raise DomainError("Need at least one dimension")
    if Q < 1:
        raise DomainError("Q must be a positive integer")
    widths = tuple(widths) if widths is not None else (Q,) * len(dims)
    if len(widths) != len(dims):
        raise DomainError("widths and dims differ in length")
    size = check_grid(widths, guard)
    logger.debug("Minimum distance over %d grid points", size)
    values = np.sort(grid_values(dims, widths))
    return float(a * np.min(np.diff(values)))


KGCheck = namedtuple("KGCheck", ["d_min", "bound", "holds"])


def kg_bound_check(dims: Sequence[float], Q: int, a: float, delta: float, k_delta: float, guard: int = None) -> KGCheck:
    """Compare d_min with the Khintchine-Groshev bound k_delta * a / Q^(L-1+delta)."""
    d_min = min_distance_oracle(dims, Q, a, guard=guard)
    bound = k_delta * a / Q ** (len(dims) - 1 + delta)
    return KGCheck(d_min=d_min, bound=bound, holds=d_min >= bound)


def calibrate_k_delta(dim_sets: Sequence[Sequence[float]], Q: int, a: float, delta: float) -> float:
    """Empirical k_delta: the smallest d_min * Q^(L-1+delta) / a over the given dimension sets."""
    worst = math.inf
    for dims in dim_sets:
        d_min = min_distance_oracle(dims, Q, a)
        worst = min(worst, d_min * Q ** (len(dims) - 1 + delta) / a)
    return worst
