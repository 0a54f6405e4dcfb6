"""
Sweep the power of an alignment scheme and write the rate table as CSV,
with the fitted and predicted pre-log in a comment footer.
"""
import csv
import io

from sdof_lab.management.commands._base import LabCommand
from sdof_lab.management.commands.simulate import add_scheme_options, scheme_size
from sdof_lab.sim import CSV_HEADER, sdof_sweep
from sdof_lab.utils import parse_p_range


class Command(LabCommand):
    help = "Sweep P for one scheme and write the secrecy rate bound as CSV"
    defaults = {
        "delta": 0.05,
        "seed": 0,
        "p": "1e4..1e12:x100",
        "measure_errors": False,
        "trials": 1000,
        "sim_seed": 0,
    }

    def add_options(self, parser):
        add_scheme_options(parser)
        parser.add_argument("--p", help="Powers as start..stop:xfactor or a comma list")
        parser.add_argument(
            "--measure-errors",
            action="store_true",
            default=None,
            help="Measure decoding errors by Monte Carlo instead of assuming none",
        )
        parser.add_argument("--trials", type=int, help="Monte Carlo trials per power")
        parser.add_argument("--sim-seed", type=int, help="Seed of the per-trial noise streams")

    def run(self, params):
        scheme = self.require(params, "scheme")
        result = sdof_sweep(
            scheme,
            scheme_size(params),
            params["seed"],
            params["delta"],
            parse_p_range(params["p"]),
            measure_errors=params["measure_errors"],
            trials=params["trials"],
            sim_seed=params["sim_seed"],
        )

        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for report in result.reports:
            writer.writerow(report.csv_row())
        lines = buffer.getvalue().splitlines()

        lines.append("# slope={!r} predicted={!r}".format(result.slope, result.predicted))
        if result.structure is not None:
            s = result.structure
            lines.append(
                "# structure jamming_streams={} eve_dims={} eve_jamming_dims={} "
                "legit_dims={} legit_jamming_dims={} spans_entire_space={}".format(
                    s.jamming_streams,
                    s.eve_dims,
                    s.eve_jamming_dims,
                    s.legit_dims,
                    s.legit_jamming_dims,
                    str(s.spans_entire_space).lower(),
                )
            )
        return lines
