import argparse
import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from subset_syzygy import config
from subset_syzygy.commands.experiments import command as experiments_command
from subset_syzygy.commands.liaison import command as liaison_command
from subset_syzygy.commands.resolutions import command as resolutions_command
from subset_syzygy.commands.subsets import command as subsets_command
from subset_syzygy.errors import SyzygyError
from subset_syzygy.models import CommandConfig
from subset_syzygy.routing import CommandApp
from subset_syzygy.version import __version__

logger = logging.getLogger(__name__)

app = CommandApp(
    title="subset-syzygy",
    description="Hilbert functions, Betti numbers and subset predictions for points in P^n.",
    version=__version__,
)

app.include_router(resolutions_command.router)
app.include_router(subsets_command.router)
app.include_router(liaison_command.router)
app.include_router(experiments_command.router)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=app.title, description=app.description)
    parser.add_argument("--version", action="version", version=f"%(prog)s {app.version}")
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, route in app.routes.items():
        command = commands.add_parser(name, help=route.summary, description=route.summary)
        source = command.add_argument_group("input")
        source.add_argument("--input", help="point-set JSON file")
        source.add_argument("--random", help="seeded generic points, e.g. n=6,d=22,seed=42")
        source.add_argument("--prime", type=int, default=config.DEFAULT_PRIME)
        command.add_argument("--m", type=int, help="subset size")
        command.add_argument("--window", help="twists j = p + q, e.g. twist=5 or 3:6")
        command.add_argument("--ci", help="complete intersection degrees a,b")
        command.add_argument("--seed", type=int)
        command.add_argument("--budget", type=int, help="candidate cap for searches")
        command.add_argument("--full", action="store_true", help="complete Betti tables")
        command.add_argument("--workers", type=int, help="threads for rank computations")
        command.add_argument("--output", help="write the result here instead of stdout")
        command.add_argument("--format", choices=["json", "text"], default="json")
        command.add_argument(
            "--log-level",
            default=config.LOG_LEVEL,
            choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        )
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one command and return its exit status: 0 on success, 2 for invalid
    input or a refused operation, 3 when a search falsifies a prediction.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=args.log_level, format=config.LOG_FORMAT, stream=sys.stderr, force=True
    )
    values = {
        key: value
        for key, value in vars(args).items()
        if value is not None and key not in {"log_level", "window"}
    }
    if args.window is not None:
        values["twists"] = args.window

    try:
        command_config = CommandConfig.model_validate(values)
        response = app.dispatch(command_config)
    except ValidationError as error:
        for item in error.errors():
            location = ".".join(str(part) for part in item["loc"]) or args.command
            print(f"{location}: {item['msg']}", file=sys.stderr)
        return 2
    except SyzygyError as error:
        logger.debug("command failed", exc_info=True)
        print(f"{args.command}: {error}", file=sys.stderr)
        return error.exit_code
    except OSError as error:
        print(f"{args.command}: {error}", file=sys.stderr)
        return 2

    if command_config.format == "text":
        rendered = response.to_text()
    else:
        rendered = response.model_dump_json(indent=2)
    if command_config.output is not None:
        with open(command_config.output, "w") as f:
            f.write(rendered + "\n")
    else:
        sys.stdout.write(rendered + "\n")
    return response.exit_code


if __name__ == "__main__":
    sys.exit(main())
