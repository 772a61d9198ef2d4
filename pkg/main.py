import argparse
import importlib
import os
import sys
import tempfile
import time
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Sequence

from dotenv import load_dotenv

from config import TOOL_NAME, VERSION, RunConfig, load_config
from error_handler import handle_error
from field_linalg import set_threads
from log_handler import logger
from reports import FORMATS, ReportDocument, render_report

load_dotenv(Path(__file__).parent / ".env")

EXTENSIONS = ["algebra_commands", "geometry_commands", "claim_commands"]

Handler = Callable[[argparse.Namespace, RunConfig], ReportDocument]


class UsageError(Exception):
    def __init__(self, message: str, usage: str):
        super().__init__(message)
        self.usage = usage


class CommandParser(argparse.ArgumentParser):
    """Raises on bad usage so the caller decides where the message goes."""

    def error(self, message: str):
        raise UsageError(message, self.format_usage())


def _common_arguments() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=None, help="field modulus (env LEFSCHETZ_PRIME)")
    common.add_argument("--seed", type=int, default=None, help="seed of the general choices (env LEFSCHETZ_SEED)")
    common.add_argument("--max-degree", type=int, default=None, help="degree cap for Hilbert functions")
    common.add_argument("--trials", type=int, default=None, help="seeds per stability check")
    common.add_argument("--format", choices=FORMATS, default=None, help="output format")
    common.add_argument("--json", dest="json_path", default=None, metavar="PATH", help="shorthand for --format json --output PATH")
    common.add_argument("--output", default=None, metavar="PATH", help="output file, '-' for stdout")
    common.add_argument("--threads", type=int, default=None, help="numba worker threads (env LEFSCHETZ_THREADS)")
    common.add_argument("--pins", default=None, metavar="PATH", help="claim pins file (env LEFSCHETZ_PINS)")
    common.add_argument("--timings", action="store_true", default=None, help="add wall time to the report header")
    return common


class CommandRegistry:
    def __init__(self):
        self.parser = CommandParser(prog=TOOL_NAME, description="Exact prime-field probes of Lefschetz properties and fat point systems.")
        self.parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {VERSION}")
        self.common = _common_arguments()
        self.subparsers = self.parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=CommandParser)
        self.subparsers.required = True
        self.handlers: Dict[str, Handler] = {}

    def add_command(self, name: str, handler: Handler, help: str) -> argparse.ArgumentParser:
        parser = self.subparsers.add_parser(name, help=help, description=help, parents=[self.common])
        self.handlers[name] = handler
        return parser

    def load_extensions(self, extensions: Sequence[str]):
        loaded = []
        for ext in extensions:
            try:
                importlib.import_module(ext).setup(self)
                loaded.append(ext)
            except Exception as e:
                logger.critical(f"❌ Failed to load extension {ext}: {e}")

        if loaded:
            logger.info(f"Loaded {len(loaded)} extensions: {', '.join(loaded)}")


def _flags(args: argparse.Namespace) -> Dict[str, Any]:
    output_format, output_path = args.format, args.output
    if args.json_path is not None:
        output_format, output_path = "json", args.json_path
    return {
        "prime": args.prime,
        "seed": args.seed,
        "max_degree": args.max_degree,
        "trials": args.trials,
        "output_format": output_format,
        "output_path": output_path,
        "threads": args.threads,
        "pins_path": args.pins,
        "timings": args.timings,
    }


def write_output(data: bytes, config: RunConfig, stdout):
    """Emit the whole report at once; files are replaced atomically."""
    if config.writes_stdout:
        stdout.write(data.decode("utf-8"))
        stdout.flush()
        return
    path = Path(config.output_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with tempfile.NamedTemporaryFile("wb", dir=path.parent, prefix=f".{path.name}.", delete=False) as tmp:
        tmp.write(data)
    os.replace(tmp.name, path)
    logger.info(f"✅ Report written to {path}")


def run_command(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    """Parse, run one subcommand, render its report. Returns 0, 1 (a pinned claim failed) or 2."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    registry = CommandRegistry()
    registry.load_extensions(EXTENSIONS)

    try:
        args = registry.parser.parse_args(list(sys.argv[1:] if argv is None else argv))
    except UsageError as e:
        stderr.write(e.usage)
        stderr.write(f"{TOOL_NAME}: error: {e}\n")
        return 2
    except SystemExit as e:
        # --help and --version
        return e.code if isinstance(e.code, int) else 0

    try:
        config = load_config(_flags(args))
        set_threads(config.threads)
        started = time.perf_counter()
        doc = registry.handlers[args.command](args, config)
        if config.timings:
            elapsed_ms = int((time.perf_counter() - started) * 1000)
            doc = ReportDocument({**doc.meta, "wall_time_ms": elapsed_ms}, doc.claims)
        write_output(render_report(doc, config.output_format), config, stdout)
    except Exception as e:
        return handle_error(e, args.command, stderr)

    logger.info(f"{args.command} finished with exit status {doc.exit_status}")
    return doc.exit_status


if __name__ == "__main__":
    sys.exit(run_command())
