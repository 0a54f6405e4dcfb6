"""
Run one Monte Carlo transmission of an alignment scheme at a single power
and report decoding, leakage and rates as JSON.
"""
import math

from sdof_lab.align import BLIND_CJ, default_gamma, pam_params, receiver_constellation
from sdof_lab.exceptions import DomainError
from sdof_lab.management.commands._base import LabCommand
from sdof_lab.model import EVE
from sdof_lab.serializers import (
    BlindSpanReportSerializer,
    ChannelInstanceSerializer,
    DecodeResultSerializer,
    ReceiverConstellationSerializer,
    SignalPlanSerializer,
    SimReportSerializer,
    render_json,
)
from sdof_lab.sim import (
    LEGIT,
    SWEEP_SCHEMES,
    SimConfig,
    SimReport,
    blind_span_check,
    build_scheme,
    leakage_exact,
    rate_lower_bound,
    secrecy_rate_lb,
    transmit_and_decode,
)


def scheme_size(params):
    """--m sizes the helper and blind schemes, --k the MAC scheme."""
    name = "k" if params["scheme"] == "mac" else "m"
    if params.get(name) is None:
        raise DomainError("--{} is required for the {} scheme".format(name, params["scheme"]))
    return params[name]


def add_scheme_options(parser):
    parser.add_argument("--scheme", choices=SWEEP_SCHEMES, help="Signalling scheme")
    parser.add_argument("--m", type=int, help="Number of helpers (helper, blind)")
    parser.add_argument("--k", type=int, help="Number of users (mac)")
    parser.add_argument("--delta", type=float, help="PAM exponent margin in (0, 1)")
    parser.add_argument("--seed", type=int, help="Channel seed")


class Command(LabCommand):
    help = "Simulate one alignment scheme at a single power"
    defaults = {"delta": 0.05, "seed": 0, "trials": 1000, "sim_seed": 0}

    def add_options(self, parser):
        add_scheme_options(parser)
        parser.add_argument("--p", type=float, help="Transmit power P")
        parser.add_argument("--trials", type=int, help="Monte Carlo trials (default 1000)")
        parser.add_argument("--sim-seed", type=int, help="Seed of the per-trial noise streams")
        parser.add_argument("--noise-var", type=float, help="Noise variance at every receiver")

    def run(self, params):
        scheme = self.require(params, "scheme")
        P = self.require(params, "p")
        if not P > 1:
            raise DomainError("--p must be greater than 1")
        ch, plan = build_scheme(scheme, scheme_size(params), params["seed"])
        if params["noise_var"] is not None:
            ch = ch.with_noise(legit=params["noise_var"], eve=params["noise_var"])

        legit = receiver_constellation(plan, ch, LEGIT)
        eve = receiver_constellation(plan, ch, EVE)
        pam = pam_params(P, len(legit.dims), params["delta"], default_gamma(plan))
        result = transmit_and_decode(SimConfig(plan, ch, pam, params["trials"], params["sim_seed"]))

        rate = rate_lower_bound(pam.Q, len(plan.message_streams), result.error_rate)
        leakage = secrecy = None
        if plan.scheme != BLIND_CJ:
            leakage = leakage_exact(pam.Q, [len(d.streams) for d in eve.dims])
            secrecy = secrecy_rate_lb(rate, leakage)
        report = SimReport(
            P=pam.P,
            Q=pam.Q,
            a=pam.a,
            error_rate=result.error_rate,
            error_bound=result.error_bound,
            rate_lb_bits=rate,
            leakage_bits=leakage,
            secrecy_rate_bits=secrecy,
            normalized_rate=rate / (0.5 * math.log2(P)),
        )
        doc = {
            "channel": ChannelInstanceSerializer(ch).data,
            "plan": SignalPlanSerializer(plan).data,
            "constellations": ReceiverConstellationSerializer([legit, eve], many=True).data,
            "decode": dict(DecodeResultSerializer(result).data, standard_error=result.standard_error),
            "report": SimReportSerializer(report).data,
        }
        if plan.scheme == BLIND_CJ:
            doc["structure"] = BlindSpanReportSerializer(blind_span_check(plan, ch)).data
        return render_json(doc).splitlines()
