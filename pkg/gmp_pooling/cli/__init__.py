"""File-based front end: pooling, figure data, synthetic benchmark and verification."""
from .bench import cmd_synthetic_bench, run_bench
from .kde_demo import build_kde_demo, cmd_kde_demo
from .main import main
from .pool import cmd_pool
from .verify import cmd_verify, run_checks
from .weightmap import cmd_weightmap

__all__ = [
    'build_kde_demo',
    'cmd_kde_demo',
    'cmd_pool',
    'cmd_synthetic_bench',
    'cmd_verify',
    'cmd_weightmap',
    'main',
    'run_bench',
    'run_checks',
]
