"""Command-line interface: encode, erase, decode, verify, audit and simulate.

Reports are ``key=value`` lines on stdout; logs go to stderr. Exit status is
0 on success, 1 when decoding, verification or an audit fails, and 2 on bad
usage or input.
"""

import argparse
import logging
import sys
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .audit import run_audit
from .base import GraphCode
from .codes import CODE_NAMES, build_code
from .config import LOG_LEVELS, Settings, load_settings
from .exceptions import (
    CoverWeightMismatchError,
    DecodingError,
    GraphCodeError,
    GraphFormatError,
    InvalidParametersError,
)
from .graph import DirectedGraph, ErasedGraph, UndirectedGraph, erase_nodes
from .parser import GraphFileParser, InfoBlock
from .simulation import simulate

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def parse_nodes(text: str) -> Tuple[int, ...]:
    """Parse ``--nodes 3,5`` into a tuple of node indices."""
    if text.strip() == "":
        return ()
    try:
        nodes = tuple(int(part) for part in text.split(","))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"node list must be comma-separated integers: {text!r}") from e
    if any(node < 0 for node in nodes):
        raise argparse.ArgumentTypeError("node indices must not be negative")
    return nodes


def _add_code_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--code", required=True, choices=CODE_NAMES)
    parser.add_argument("--n", type=int, required=True, help="number of nodes")
    parser.add_argument("--rho", type=int, default=None, help="node failures to correct")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graph-codes",
        description="Node-erasure codes over complete graphs",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", choices=LOG_LEVELS, default=None)
    parser.add_argument("--env-file", default=None, help="read settings from this .env file")
    sub = parser.add_subparsers(dest="command", required=True)

    encode = sub.add_parser("encode", help="encode an information block into a codeword graph")
    _add_code_args(encode)
    encode.add_argument("--in", dest="input", default=None,
                        help="information file; random information when omitted")
    encode.add_argument("--out", dest="output", required=True)
    encode.add_argument("--seed", type=int, default=None)

    erase = sub.add_parser("erase", help="mark the neighborhoods of failed nodes Unknown")
    erase.add_argument("--in", dest="input", required=True)
    erase.add_argument("--out", dest="output", required=True)
    erase.add_argument("--nodes", type=parse_nodes, required=True)

    decode = sub.add_parser("decode", help="recover an erased graph")
    _add_code_args(decode)
    decode.add_argument("--in", dest="input", required=True)
    decode.add_argument("--out", dest="output", required=True)
    decode.add_argument("--nodes", type=parse_nodes, required=True)

    verify = sub.add_parser("verify", help="check every code constraint")
    _add_code_args(verify)
    verify.add_argument("--in", dest="input", required=True)

    audit = sub.add_parser("audit", help="rank, optimality and structural checks")
    _add_code_args(audit)
    audit.add_argument("--exhaustive", action="store_true",
                       help="decode every failure set on random codewords")
    audit.add_argument("--seed", type=int, default=None)

    sim = sub.add_parser("simulate", help="decode random codewords under random failures")
    _add_code_args(sim)
    sim.add_argument("--trials", type=int, default=None)
    sim.add_argument("--seed", type=int, default=None)
    return parser


def _emit(lines: Sequence[Tuple[str, object]]) -> None:
    for key, value in lines:
        if isinstance(value, bool):
            value = "true" if value else "false"
        print(f"{key}={value}")


def _code_lines(code: GraphCode) -> List[Tuple[str, object]]:
    return [
        ("code", code.name),
        ("n", code.n),
        ("rho", code.rho),
        ("k_G", code.k),
        ("r_G", code.redundancy),
        ("rate", f"{code.rate:.6f}"),
    ]


def _read_info(path: str, code: GraphCode) -> np.ndarray:
    item = GraphFileParser.read(path)
    if isinstance(item, ErasedGraph):
        raise GraphFormatError("information files must not contain '?'")
    if item.field != code.field:
        raise InvalidParametersError(
            f"{code.name} information is over {code.field.tag}, file is {item.field.tag}"
        )
    if isinstance(item, InfoBlock):
        values = item.values
    else:
        values = item.matrix()
    if values.shape != code.info_shape:
        rows, cols = code.info_shape
        raise InvalidParametersError(
            f"{code.name} needs a {rows}x{cols} information block, got {values.shape[0]}x{values.shape[1]}"
        )
    return np.array(values, dtype=np.int64)


def _read_erased(path: str) -> ErasedGraph:
    item = GraphFileParser.read(path)
    if isinstance(item, InfoBlock):
        raise GraphFormatError("expected a GRAPH or UGRAPH file, got INFO")
    if isinstance(item, (DirectedGraph, UndirectedGraph)):
        return ErasedGraph.from_graph(item)
    return item


def cmd_encode(args: argparse.Namespace, settings: Settings) -> int:
    code = build_code(args.code, args.n, args.rho)
    if args.input is None:
        seed = settings.seed if args.seed is None else args.seed
        info = code.random_info(np.random.default_rng(seed))
    else:
        info = _read_info(args.input, code)
    graph = code.encode(info)
    GraphFileParser.write(args.output, graph)
    logger.info("Wrote %s codeword to %s", code.name, args.output)
    _emit(_code_lines(code))
    return EXIT_OK


def cmd_erase(args: argparse.Namespace, settings: Settings) -> int:
    item = GraphFileParser.read(args.input)
    if not isinstance(item, (DirectedGraph, UndirectedGraph)):
        raise GraphFormatError("erase needs a complete GRAPH or UGRAPH file")
    for node in args.nodes:
        if node >= item.n:
            raise InvalidParametersError(f"node {node} out of range for n={item.n}")
    erased = erase_nodes(item, args.nodes)
    GraphFileParser.write(args.output, erased)
    _emit([("n", item.n), ("failed", ",".join(str(v) for v in sorted(set(args.nodes)))),
           ("unknown", erased.unknown_count())])
    return EXIT_OK


def cmd_decode(args: argparse.Namespace, settings: Settings) -> int:
    code = build_code(args.code, args.n, args.rho)
    erased = _read_erased(args.input)
    graph = code.decode(erased, args.nodes)
    GraphFileParser.write(args.output, graph)
    logger.info("Wrote recovered graph to %s", args.output)
    _emit([("code", code.name), ("recovered", erased.unknown_count())])
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    code = build_code(args.code, args.n, args.rho)
    item = GraphFileParser.read(args.input)
    if not isinstance(item, (DirectedGraph, UndirectedGraph)):
        raise GraphFormatError("verify needs a complete GRAPH or UGRAPH file")
    valid = code.check(item)
    _emit([("code", code.name), ("valid", valid)])
    return EXIT_OK if valid else EXIT_FAILURE


def cmd_audit(args: argparse.Namespace, settings: Settings) -> int:
    code = build_code(args.code, args.n, args.rho)
    seed = settings.seed if args.seed is None else args.seed
    report = run_audit(
        code,
        np.random.default_rng(seed),
        samples=settings.audit_samples,
        exhaustive=args.exhaustive,
        sweep_codewords=settings.sweep_codewords,
    )
    sys.stdout.write(report.render())
    return EXIT_OK if report.passed else EXIT_FAILURE


def cmd_simulate(args: argparse.Namespace, settings: Settings) -> int:
    trials = settings.trials if args.trials is None else args.trials
    if trials < 1:
        raise InvalidParametersError(f"trials must be at least 1, got {trials}")
    code = build_code(args.code, args.n, args.rho)
    seed = settings.seed if args.seed is None else args.seed
    summary = simulate(code, trials, seed)
    _emit([("code", code.name), ("n", code.n), ("rho", code.rho), ("seed", seed)])
    sys.stdout.write(summary.render())
    return EXIT_OK if summary.failures == 0 else EXIT_FAILURE


COMMANDS = {
    "encode": cmd_encode,
    "erase": cmd_erase,
    "decode": cmd_decode,
    "verify": cmd_verify,
    "audit": cmd_audit,
    "simulate": cmd_simulate,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        settings = load_settings(args.env_file)
    except GraphCodeError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    level = args.log_level or settings.log_level
    logging.basicConfig(
        level=getattr(logging, level),
        stream=sys.stderr,
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
    )

    try:
        return COMMANDS[args.command](args, settings)
    except (DecodingError, CoverWeightMismatchError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except GraphCodeError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
