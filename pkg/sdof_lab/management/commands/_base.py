"""
Shared plumbing for the sdof_lab management commands.

Options default to None so that a value can come from, in order of
precedence, the command line, the ``--config`` file, or the command's
``defaults``. Domain errors exit with status 1, guard errors with status 2.
"""
import logging
import sys

from django.core.management.base import BaseCommand, CommandError

from sdof_lab.exceptions import AmbiguousAlignment, DomainError, GuardError
from sdof_lab.utils import load_config_file, provenance_header

logger = logging.getLogger(__name__)

USAGE_ERROR = 1
GUARD_ERROR = 2


class LabCommand(BaseCommand):
    defaults = {}

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)

        def error(message):
            if parser.called_from_command_line:
                parser.print_usage(sys.stderr)
                parser.exit(USAGE_ERROR, "{}: error: {}\n".format(parser.prog, message))
            raise CommandError("Error: {}".format(message), returncode=USAGE_ERROR)

        parser.error = error
        return parser

    def add_arguments(self, parser):
        before = {action.dest for action in parser._actions}
        parser.add_argument("--config", help="Flat JSON file of option values")
        parser.add_argument("--out", help="Write the output to this file instead of stdout")
        self.add_options(parser)
        self.option_actions = {
            action.dest: action
            for action in parser._actions
            if action.dest not in before and action.dest not in ("config", "out")
        }

    def add_options(self, parser):
        pass

    def resolve_options(self, options):
        from_file = {}
        if options.get("config"):
            from_file = load_config_file(options["config"])
            unknown = sorted(set(from_file) - set(self.option_actions))
            if unknown:
                raise DomainError("Unknown keys in config file: {}".format(", ".join(unknown)))
        params = {}
        for name, action in self.option_actions.items():
            value = options.get(name)
            if value is None and name in from_file:
                value = self._coerce(action, from_file[name])
            if value is None:
                value = self.defaults.get(name)
            params[name] = value
        return params

    def _coerce(self, action, value):
        # untyped options are parsed from their command-line text
        if action.type is None and action.nargs != 0 and value is not None:
            value = str(value)
        if action.type is not None and value is not None:
            try:
                value = action.type(value)
            except (TypeError, ValueError):
                raise DomainError("Bad value {!r} for {}".format(value, action.option_strings[0]))
        if action.choices is not None and value not in action.choices:
            raise DomainError("{} must be one of {}".format(action.option_strings[0], ", ".join(action.choices)))
        return value

    def require(self, params, name):
        if params.get(name) is None:
            raise DomainError("--{} is required".format(name.replace("_", "-")))
        return params[name]

    @property
    def command_name(self):
        return self.__module__.rsplit(".", 1)[-1]

    def handle(self, *args, **options):
        try:
            params = self.resolve_options(options)
            lines = self.run(params)
        except DomainError as e:
            raise CommandError(str(e), returncode=USAGE_ERROR)
        except (GuardError, AmbiguousAlignment) as e:
            logger.warning("%s stopped: %s", self.command_name, e)
            raise CommandError(str(e), returncode=GUARD_ERROR)

        seed = params.get("seed")
        header = provenance_header(self.command_name, "-" if seed is None else seed, params)
        text = "\n".join([header] + list(lines)) + "\n"
        if options.get("out"):
            with open(options["out"], "w", newline="") as f:
                f.write(text)
            self.stderr.write(self.style.SUCCESS("Wrote {}".format(options["out"])))
        else:
            self.stdout.write(text, ending="")

    def run(self, params):
        """Return the output lines for the resolved options."""
        raise NotImplementedError
