"""
Exact minimum distance of a real-alignment constellation and the
Khintchine-Groshev bound check. With --samples, draws random dimension
sets and reports the empirical k_delta instead.
"""
from sdof_lab.align import calibrate_k_delta, kg_bound_check, min_distance_oracle
from sdof_lab.exceptions import DomainError
from sdof_lab.management.commands._base import LabCommand
from sdof_lab.model import GainSampler, stream_rng
from sdof_lab.utils import parse_float_list


def sample_dim_sets(samples, L, seed):
    sampler = GainSampler()
    return [sampler.draw(stream_rng(seed, i), L) for i in range(samples)]


class Command(LabCommand):
    help = "Minimum distance of sum_i dims_i * C(a, Q) and the Khintchine-Groshev bound"
    defaults = {"a": 1.0, "delta": 0.1, "seed": 0, "l": 2}

    def add_options(self, parser):
        parser.add_argument("--dims", help="Comma-separated real dimension coefficients")
        parser.add_argument("--q", type=int, help="PAM half-width Q")
        parser.add_argument("--a", type=float, help="PAM spacing (default 1)")
        parser.add_argument("--delta", type=float, help="Bound exponent margin (default 0.1)")
        parser.add_argument("--k-delta", type=float, help="Constant of the bound to check against")
        parser.add_argument("--samples", type=int, help="Calibrate k_delta over this many sampled dimension sets")
        parser.add_argument("--l", type=int, help="Dimensions per sampled set (default 2)")
        parser.add_argument("--seed", type=int, help="Seed of the sampled dimension sets")

    def run(self, params):
        Q = self.require(params, "q")
        a, delta = params["a"], params["delta"]

        if params["samples"] is not None:
            if params["samples"] < 1:
                raise DomainError("--samples must be positive")
            dim_sets = sample_dim_sets(params["samples"], params["l"], params["seed"])
            zero = sum(1 for dims in dim_sets if min_distance_oracle(dims, Q, a) == 0)
            k_delta = calibrate_k_delta(dim_sets, Q, a, delta)
            return [
                "samples: {}".format(len(dim_sets)),
                "L: {}".format(params["l"]),
                "Q: {}".format(Q),
                "k_delta: {!r}".format(k_delta),
                "zero_distance: {}".format(zero),
            ]

        dims = parse_float_list(self.require(params, "dims"))
        lines = [
            "dims: {}".format(", ".join(repr(d) for d in dims)),
            "Q: {}".format(Q),
            "a: {!r}".format(a),
        ]
        if params["k_delta"] is None:
            lines.append("d_min: {!r}".format(min_distance_oracle(dims, Q, a)))
            return lines
        check = kg_bound_check(dims, Q, a, delta, params["k_delta"])
        lines += [
            "d_min: {!r}".format(check.d_min),
            "bound: {!r}".format(check.bound),
            "holds: {}".format("yes" if check.holds else "no"),
        ]
        return lines
