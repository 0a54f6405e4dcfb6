"""Dump the extreme points of an SDoF region as JSON."""
from sdof_lab import regions
from sdof_lab.management.commands._base import LabCommand
from sdof_lab.serializers import ExtremePointSetSerializer, render_json
from sdof_lab.utils import format_rational


class Command(LabCommand):
    help = "Write the extreme points of a region as JSON"
    defaults = {"k": 2}

    def add_options(self, parser):
        parser.add_argument("--family", choices=("mac", "ic"), help="Region family")
        parser.add_argument("--k", type=int, help="Number of users (default 2)")
        parser.add_argument("--guard", type=int, help="Maximum number of row subsets to enumerate")

    def run(self, params):
        family = self.require(params, "family")
        spec = regions.region_for(family, params["k"])
        points = regions.extreme_points(spec, params["guard"])
        optimal = regions.sum_optimal_points(spec, params["guard"])
        doc = {
            "family": family,
            "K": params["k"],
            "count": len(points),
            "vertices": ExtremePointSetSerializer(points).data["points"],
            "max_sum": format_rational(regions.max_sum(spec, params["guard"])),
            "sum_optimal": [[format_rational(c) for c in p] for p in optimal],
            "permutation_closed": regions.is_permutation_closed(points),
        }
        return render_json(doc).splitlines()
