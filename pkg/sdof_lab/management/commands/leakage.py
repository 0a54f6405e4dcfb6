"""Tabulate the exact eavesdropper leakage per dimension against its closed-form bound."""
from sdof_lab.exceptions import DomainError
from sdof_lab.management.commands._base import LabCommand
from sdof_lab.sim import leakage_exact, leakage_upper_bound
from sdof_lab.utils import parse_int_list


class Command(LabCommand):
    help = "Exact leakage H(U + sum V) - H(U) per eavesdropper dimension"
    defaults = {"groups": "2"}

    def add_options(self, parser):
        parser.add_argument("--q", type=int, help="PAM half-width Q")
        parser.add_argument("--groups", help="Streams per eavesdropper dimension, e.g. 2,2 (default 2)")

    def run(self, params):
        Q = self.require(params, "q")
        groups = parse_int_list(params["groups"])
        if not groups:
            raise DomainError("--groups needs at least one size")

        rows = [("dim", "size", "leakage_bits", "bound_bits")]
        for i, size in enumerate(groups, start=1):
            rows.append(
                (
                    str(i),
                    str(size),
                    "{:.6f}".format(leakage_exact(Q, [size])),
                    "{:.6f}".format(leakage_upper_bound(Q, [size])),
                )
            )
        rows.append(
            (
                "total",
                str(sum(groups)),
                "{:.6f}".format(leakage_exact(Q, groups)),
                "{:.6f}".format(leakage_upper_bound(Q, groups)),
            )
        )
        widths = [max(len(row[c]) for row in rows) for c in range(len(rows[0]))]
        return ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
