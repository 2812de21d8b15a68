"""gmp-pool command line.

    gmp-pool pool DESCRIPTORS --config pipeline.json --output pooled.csv
    gmp-pool kde-demo --output kde.csv
    gmp-pool bench --config synthetic.json --output report.csv
    gmp-pool verify --output verify.json
    gmp-pool weightmap DESCRIPTORS --config pipeline.json --output maps/

Exit status: 0 on success, 1 when verification checks fail, 2 on input,
configuration or numerical errors.
"""
import argparse
import logging
import sys
from typing import List, Optional

from ..errors import GmpError
from .bench import cmd_synthetic_bench
from .jobs import resolve_jobs
from .kde_demo import cmd_kde_demo
from .pool import cmd_pool
from .router import CommandRouter
from .verify import cmd_verify
from .weightmap import cmd_weightmap

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECKS_FAILED = 1
EXIT_ERROR = 2

router = CommandRouter()


@router.add_command_route("pool")
def handle_pool(args) -> int:
    return cmd_pool(args.descriptors, args.config, args.output, seed=args.seed, jobs=resolve_jobs(args.jobs))


@router.add_command_route("kde-demo")
def handle_kde_demo(args) -> int:
    return cmd_kde_demo(args.output)


@router.add_command_route("bench")
def handle_bench(args) -> int:
    return cmd_synthetic_bench(args.config, args.output, seed=args.seed, jobs=resolve_jobs(args.jobs))


@router.add_command_route("verify")
def handle_verify(args) -> int:
    return cmd_verify(args.output, seed=args.seed, fault=args.inject_fault)


@router.add_command_route("weightmap")
def handle_weightmap(args) -> int:
    return cmd_weightmap(args.descriptors, args.config, args.output, height=args.height, width=args.width,
                         seed=args.seed, jobs=resolve_jobs(args.jobs))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="override the seed of the config file")
    common.add_argument("--jobs", type=int, default=None,
                        help="concurrent per-image jobs (GMP_POOL_JOBS takes precedence)")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logging")

    parser = argparse.ArgumentParser(prog="gmp-pool", description="Generalized max pooling of local descriptors")
    verbs = parser.add_subparsers(dest="verb", required=True)

    pool = verbs.add_parser("pool", parents=[common], help="pool descriptor sets into fixed-length vectors")
    pool.add_argument("descriptors", help="descriptor CSV file")
    pool.add_argument("--config", required=True, help="pipeline JSON config")
    pool.add_argument("--output", required=True, help="pooled vectors CSV")

    kde_demo = verbs.add_parser("kde-demo", parents=[common], help="emit the KDE flattening curves")
    kde_demo.add_argument("--output", required=True, help="curves CSV")

    bench = verbs.add_parser("bench", parents=[common], help="run the synthetic burstiness benchmark")
    bench.add_argument("--config", required=True, help="synthetic spec JSON")
    bench.add_argument("--output", required=True, help="accuracy report CSV")

    verify = verbs.add_parser("verify", parents=[common], help="run the oracle verification suite")
    verify.add_argument("--output", required=True, help="JSON report")
    verify.add_argument("--inject-fault", default=None, help=argparse.SUPPRESS)

    weightmap = verbs.add_parser("weightmap", parents=[common], help="render GMP dual-weight maps")
    weightmap.add_argument("descriptors", help="descriptor CSV file with x,y,w,h geometry columns")
    weightmap.add_argument("--config", required=True, help="pipeline JSON config with gmp pooling")
    weightmap.add_argument("--output", required=True, help="output directory for <image_id>.pgm/.csv")
    weightmap.add_argument("--height", type=int, default=None, help="map height in pixels")
    weightmap.add_argument("--width", type=int, default=None, help="map width in pixels")
    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        return router.route(args)
    except GmpError as e:
        logger.debug("%s: failed", args.verb, exc_info=True)
        print(f"gmp-pool {args.verb}: error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as e:
        print(f"gmp-pool {args.verb}: error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
