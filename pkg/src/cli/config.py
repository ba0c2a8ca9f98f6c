"""Command-line configuration"""

import argparse
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Sequence

from .. import __version__
from ..utils.settings import get_settings
from .parser import parse_n_values

COMMANDS = ("sumset", "validate", "bound", "construct", "verify", "remark-p11", "peng", "thresholds")
FORMATS = ("human", "json", "csv")
CONSTRUCTIONS = ("extremal", "B", "B_prime", "floor")


@dataclass(frozen=True)
class CliConfig:
    """One parsed invocation"""

    command: str
    format: str = "human"
    literal: Optional[str] = None
    p: Optional[int] = None
    m: Optional[int] = None
    k: Optional[int] = None
    n: Optional[int] = None
    n_values: Optional[List[int]] = None
    construction: Optional[str] = None
    all_certificates: bool = False
    shards: int = 1
    shard_id: int = 0
    workers: int = 1
    checkpoint: Optional[str] = None
    resume: bool = False
    allow_large: bool = False
    witnesses: Optional[int] = None
    seed: Optional[int] = None
    verbose: bool = False
    quiet: bool = False

    def echo(self) -> Dict[str, Any]:
        """Config as embedded in every report (logging switches left out)"""
        data = asdict(self)
        data.pop("verbose")
        data.pop("quiet")
        return {k: v for k, v in data.items() if v is not None}


def _common(parser: argparse.ArgumentParser):
    parser.add_argument("--format", choices=FORMATS, default="human", help="Report format")
    parser.add_argument("--seed", type=int, default=None, help="Seed echoed into the report")
    noise = parser.add_mutually_exclusive_group()
    noise.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    noise.add_argument("--quiet", "-q", action="store_true", help="Warnings only")


def _scan_options(parser: argparse.ArgumentParser):
    parser.add_argument("--shards", type=int, default=1)
    parser.add_argument("--shard-id", type=int, default=0)
    parser.add_argument("--workers", type=int, default=1, help="Scan all shards on a process pool")
    parser.add_argument("--checkpoint", default=None, help="Checkpoint file")
    parser.add_argument("--resume", action="store_true", help="Continue from --checkpoint")
    parser.add_argument("--allow-large", action="store_true", help="Override the orbit budget")
    parser.add_argument("--witnesses", type=int, default=None, help="Witnesses kept per size")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumset-toolkit",
        description="Exact sumsets of multisets in Z_p^m, lower-bound certificates and exhaustive checks",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, text in (
        ("sumset", "Size and members of the sumset of a multiset"),
        ("validate", "Check a multiset against the validity conditions"),
        ("bound", "Best lower-bound certificate for a multiset"),
    ):
        cmd = sub.add_parser(name, help=text)
        cmd.add_argument("literal", help='Multiset literal, e.g. "p=5 m=2 : (1,0)*4 (0,1)*2"')
        if name == "bound":
            cmd.add_argument("--all", dest="all_certificates", action="store_true",
                             help="List every certificate")
        _common(cmd)

    cmd = sub.add_parser("construct", help="Build a named extremal multiset")
    cmd.add_argument("construction", choices=CONSTRUCTIONS)
    cmd.add_argument("--p", type=int, required=True)
    cmd.add_argument("--m", type=int, default=2)
    cmd.add_argument("--k", type=int, default=None, help="k for 'extremal'")
    cmd.add_argument("--n", type=int, default=None, help="Size for 'floor'")
    _common(cmd)

    cmd = sub.add_parser("verify", help="Exhaustive minimum of #Sigma(A) per size")
    cmd.add_argument("--p", type=int, required=True)
    cmd.add_argument("--m", type=int, required=True)
    cmd.add_argument("--n", dest="n_values", type=parse_n_values, required=True,
                     help="Sizes: 5, 3..5 or 3,4,7")
    _scan_options(cmd)
    _common(cmd)

    cmd = sub.add_parser("peng", help="Full sumset for every valid multiset of size 2p-1 in Z_p^2")
    cmd.add_argument("--p", type=int, required=True)
    _scan_options(cmd)
    _common(cmd)

    cmd = sub.add_parser("remark-p11", help="Structured six-point search in Z_11^2")
    _common(cmd)

    cmd = sub.add_parser("thresholds", help="Hypothesis thresholds for (p, k)")
    cmd.add_argument("--p", type=int, required=True)
    cmd.add_argument("--k", type=int, required=True)
    _common(cmd)
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> CliConfig:
    """
    Parse command-line arguments into a CliConfig

    Exits with status 2 on usage errors (argparse behaviour).
    """
    ns = build_parser().parse_args(argv)
    values = {k: v for k, v in vars(ns).items() if k in CliConfig.__dataclass_fields__}
    config = CliConfig(**values)
    if config.seed is None:
        config = CliConfig(**{**values, "seed": get_settings().seed})
    return config
