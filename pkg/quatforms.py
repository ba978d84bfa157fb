import argparse
import logging
import sys
import traceback

# Version information
from modules.version import APP_VERSION_DISPLAY

from modules.commands import COMMANDS, RunConfig, create_command
from modules.errors import QmfError
from modules.metadata_utils import dump_json
from modules.settings import Settings

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2

logger = logging.getLogger("quatforms")


def parse_split(text):
    try:
        n1, n2 = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N1,N2, got {text!r}")
    return n1, n2


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quatforms",
        description="Quaternionic modular forms: class sets, Brandt matrices, Eisenstein congruences and toric periods.",
    )
    parser.add_argument("--version", action="version", version=f"quatforms {APP_VERSION_DISPLAY}")
    parser.add_argument("--log-level", type=str, default=None, help="Logging level (default from settings)")
    parser.add_argument("--cache-dir", type=str, default=None, help="Class-set cache directory")
    parser.add_argument("--no-cache", action="store_true", help="Do not read or write the class-set cache")
    parser.add_argument("--output", "-o", type=str, default=None, help="Write JSON here instead of stdout")

    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name)
        if name in ("mass", "classes", "brandt", "congruence", "lvalue"):
            cmd.add_argument("--level", type=int, required=True)
            cmd.add_argument("--split", type=parse_split, default=None, help="N1,N2 (default: largest mass numerator)")
        if name in ("brandt", "congruence", "lvalue", "scan"):
            cmd.add_argument("--l-max", dest="ell_max", type=int, default=None)
        if name in ("congruence", "lvalue"):
            cmd.add_argument("--p", type=int, default=None)
            cmd.add_argument("--r", type=int, default=None)
        if name == "congruence":
            cmd.add_argument("--n-max", type=int, default=None)
        if name == "brandt":
            cmd.add_argument("--check-neighbors", action="store_true", help="Also count neighbors for each B(l)")
        if name == "lvalue":
            cmd.add_argument("--disc", dest="discriminant", type=int, default=None)
            cmd.add_argument("--disc-bound", type=int, default=None, help="All fundamental D with |D| <= bound")
            cmd.add_argument("--char", dest="character", type=int, default=None)
        if name == "scan":
            cmd.add_argument("--min-level", type=int, default=None)
            cmd.add_argument("--max-level", type=int, required=True)
            cmd.add_argument("--workers", type=int, default=None)
            cmd.add_argument("--no-progress", action="store_true")
        if name == "verify-examples":
            cmd.add_argument("--case", dest="cases", action="append", default=None)
    return parser


def config_from_args(args) -> RunConfig:
    config = RunConfig(command=args.command)
    for key in ("level", "split", "p", "r", "discriminant", "disc_bound", "character", "ell_max", "n_max",
                "min_level", "max_level", "cache_dir", "output", "workers"):
        if hasattr(args, key):
            setattr(config, key, getattr(args, key))
    if args.no_cache:
        config.use_cache = False
    if getattr(args, "no_progress", False):
        config.progress = False
    config.check_neighbors = getattr(args, "check_neighbors", False)
    config.extras["cases"] = getattr(args, "cases", None)
    return config


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = Settings()

    logging.basicConfig(
        level=(args.log_level or settings.get("log_level", "WARNING")).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    command = create_command(args.command, settings)
    config = config_from_args(args)
    try:
        config = command.prepare_parameters(config)
        is_valid, error_message = command.validate_parameters(config)
        if not is_valid:
            parser.error(error_message)
        document, ok = command.run(config)
    except QmfError as e:
        logger.debug(traceback.format_exc())
        sys.stdout.write(dump_json({"error": {"type": type(e).__name__, "message": str(e)}}) + "\n")
        return EXIT_VERIFICATION_FAILED
    if document is not None:
        text = dump_json(document, config.output)
        if not config.output:
            sys.stdout.write(text + "\n")
    return EXIT_OK if ok else EXIT_VERIFICATION_FAILED


if __name__ == "__main__":
    sys.exit(main())
