"""
Print a secure degrees of freedom region: its inequalities, extreme points
and maximum sum, optionally checking a point or the pairwise rows.
"""
from sdof_lab import regions
from sdof_lab.management.commands._base import LabCommand
from sdof_lab.serializers import ExtremePointSetSerializer, RegionSpecSerializer, render_json
from sdof_lab.utils import format_point, format_rational, parse_rational_vector


def check_lines(spec, point):
    violated = regions.violated_rows(spec, point)
    if violated:
        return ["infeasible: violates {}".format(", ".join(spec.row_text(i) for i in violated))]
    tight = regions.tight_rows(spec, point)
    return [
        "feasible: {}".format(format_point(point)),
        "tight: {}".format(", ".join(spec.row_text(i) for i in tight) or "none"),
    ]


def redundancy_lines(spec, guard=None):
    pairwise = spec.rows_of(regions.PAIRWISE)
    if not pairwise:
        return ["pairwise rows: none"]
    needed = [i for i in pairwise if not regions.is_redundant(spec, i, guard)]
    if not needed:
        return ["pairwise rows: all redundant"]
    return ["pairwise rows: non-redundant {}".format(", ".join(spec.row_text(i) for i in needed))]


class Command(LabCommand):
    help = "List the inequalities, extreme points and maximum sum of an SDoF region"
    defaults = {"k": 2, "json": False, "redundancy": False}

    def add_options(self, parser):
        parser.add_argument("--family", choices=("mac", "ic"), help="Region family")
        parser.add_argument("--k", type=int, help="Number of users (default 2)")
        parser.add_argument("--check", help="Point to test, e.g. 3/5,3/5,0,0")
        parser.add_argument(
            "--redundancy",
            action="store_true",
            default=None,
            help="Test whether each pairwise row can be dropped",
        )
        parser.add_argument("--guard", type=int, help="Maximum number of row subsets to enumerate")
        parser.add_argument("--json", action="store_true", default=None, help="Emit JSON instead of a table")

    def run(self, params):
        family = self.require(params, "family")
        K = params["k"]
        guard = params["guard"]
        spec = regions.region_for(family, K)
        points = regions.extreme_points(spec, guard)
        best = regions.max_sum(spec, guard)

        extra = []
        if params["check"]:
            extra += check_lines(spec, parse_rational_vector(params["check"]))
        if params["redundancy"]:
            extra += redundancy_lines(spec, guard)

        if params["json"]:
            doc = {
                "region": RegionSpecSerializer(spec).data,
                "vertices": ExtremePointSetSerializer(points).data["points"],
                "max_sum": format_rational(best),
                "notes": extra,
            }
            return render_json(doc).splitlines()

        width = max(len(str(label)) for label in spec.labels)
        lines = ["region {} K={}".format(family, K), "inequalities:"]
        lines += ["  {}  {}".format(str(spec.labels[i]).ljust(width), spec.row_text(i)) for i in range(spec.m)]
        lines.append("vertices ({}):".format(len(points)))
        lines += ["  {}".format(format_point(p)) for p in points]
        lines.append("max_sum: {}".format(format_rational(best)))
        return lines + extra
