#!/usr/bin/env python3
"""
Main entry point for the conformal blocks toolkit.
Argparse command surface over the fusion, divisors, nefcone and pullbacks packages.
"""

import argparse
import sys
from typing import Callable, Dict, List, Optional

from app.config import config, parse_int_list, parse_rational, parse_rational_list, parse_weights, OUTPUT_FORMATS
from app.errors import ContractViolation, IntegralityError
from app.fusion.cache import fusion_cache
from app.cli import commands
from app.cli.records import OutputRecord
from app.cli.claims import run_claims

EXIT_OK = 0
EXIT_CLAIM_FAILED = 1
EXIT_CONTRACT = 3
EXIT_INTEGRALITY = 4

VERIFY_COMMANDS = ('verify-paper', 'verify-claims')


class ConformalBlocksApp:
    """Command dispatcher; each handler returns an OutputRecord."""

    def __init__(self, fmt: Optional[str] = None):
        """Initialize the application."""
        self.fmt = fmt or config.output_format
        self.handlers: Dict[str, Callable[[argparse.Namespace], OutputRecord]] = {
            "rank": self.handle_rank,
            "rank-table": self.handle_rank_table,
            "reflect": self.handle_reflect,
            "deg4": self.handle_deg4,
            "intersect": self.handle_intersect,
            "class": self.handle_class,
            "nef-face": self.handle_nef_face,
            "logcan": self.handle_logcan,
            "pullback": self.handle_pullback,
            "fdiv-check": self.handle_fdiv_check,
            "flag-program": self.handle_flag_program,
        }

    def handle_rank(self, args: argparse.Namespace) -> OutputRecord:
        return commands.rank_command(args.level, args.weights)

    def handle_rank_table(self, args: argparse.Namespace) -> OutputRecord:
        return commands.rank_table_command(args.level, args.max_j)

    def handle_reflect(self, args: argparse.Namespace) -> OutputRecord:
        return commands.reflect_command(args.level, args.j, args.t)

    def handle_deg4(self, args: argparse.Namespace) -> OutputRecord:
        return commands.deg4_command(args.level, args.mu)

    def handle_intersect(self, args: argparse.Namespace) -> OutputRecord:
        return commands.intersect_command(args.level, args.n, args.fcurve)

    def handle_class(self, args: argparse.Namespace) -> OutputRecord:
        return commands.class_command(args.level, args.n, args.closed_form, args.tag)

    def handle_nef_face(self, args: argparse.Namespace) -> OutputRecord:
        return commands.nef_face_command(args.level, args.n)

    def handle_logcan(self, args: argparse.Namespace) -> OutputRecord:
        return commands.logcan_command(args.level, args.n)

    def handle_pullback(self, args: argparse.Namespace) -> OutputRecord:
        return commands.pullback_command(args.kind, args.h, args.a, args.b)

    def handle_fdiv_check(self, args: argparse.Namespace) -> OutputRecord:
        return commands.fdiv_check_command(args.h, args.a, args.b)

    def handle_flag_program(self, args: argparse.Namespace) -> OutputRecord:
        return commands.flag_program_command(args.tag, args.g, args.a, args.b, args.d)

    def run(self, args: argparse.Namespace) -> int:
        """Dispatch one parsed command and print its record."""
        if args.command in VERIFY_COMMANDS:
            # progress lines on stderr keep stdout a single record
            ok, checker = run_claims(args.max_n, stream=sys.stderr)
            print(checker.to_record().render(self.fmt))
            return EXIT_OK if ok else EXIT_CLAIM_FAILED
        record = self.handlers[args.command](args)
        print(record.render(self.fmt))
        return EXIT_OK


def _arg_type(parse: Callable):
    """Wrap a config parser so malformed values become argparse usage errors (exit 2)."""
    def convert(text: str):
        try:
            return parse(text)
        except ContractViolation as e:
            raise argparse.ArgumentTypeError(str(e))
    convert.__name__ = parse.__name__
    return convert


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Exact ranks, divisor classes and nef cone checks for sl2 conformal blocks",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python -m app.main rank --level 3 --weights 1x15,3
  python -m app.main intersect --level 2 --n 16 --fcurve 1,1,2,12
  python -m app.main class --level 1 --n 6 --closed-form
  python -m app.main --format json verify-paper --max-n 16
        """
    )
    parser.add_argument('--format', choices=OUTPUT_FORMATS, default=config.output_format,
                        help=f'Output format (default: {config.output_format})')
    parser.add_argument('--cache', default=config.cache_file,
                        help='JSON file to load and save the fusion memo table')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('rank', help='Rank of V(sl2, level, weights)')
    p.add_argument('--level', type=int, required=True)
    p.add_argument('--weights', type=_arg_type(parse_weights), required=True,
                   help='Comma list; WxK repeats weight W K times (1x15,3)')

    p = sub.add_parser('rank-table', help='r_level(j, t) by all four algorithms')
    p.add_argument('--level', type=int, required=True)
    p.add_argument('--max-j', type=int, required=True)

    p = sub.add_parser('reflect', help='Reflection terms of r_level(j, t)')
    p.add_argument('--level', type=int, required=True)
    p.add_argument('--j', type=int, required=True)
    p.add_argument('--t', type=int, required=True)

    p = sub.add_parser('deg4', help='Degree of a four-point bundle')
    p.add_argument('--level', type=int, required=True)
    p.add_argument('--mu', type=_arg_type(parse_int_list), required=True)

    p = sub.add_parser('intersect', help='D_level . F_{a,b,c,d}')
    p.add_argument('--level', type=int, required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--fcurve', type=_arg_type(parse_int_list), required=True)

    p = sub.add_parser('class', help='Class of D_level in the B basis')
    p.add_argument('--level', type=int, required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--closed-form', action='store_true', help='Also evaluate the closed formula')
    p.add_argument('--tag', help='Closed formula tag (1, 2, 3, 4, g-2, g-1, g)')

    p = sub.add_parser('nef-face', help='Vanishing F-curves and face codimension of D_level')
    p.add_argument('--level', type=int, required=True)
    p.add_argument('--n', type=int, required=True)

    p = sub.add_parser('logcan', help='Symmetric log canonical certificate for D_level')
    p.add_argument('--level', type=int, required=True)
    p.add_argument('--n', type=int, required=True)

    p = sub.add_parser('pullback', help='Pull back a*lambda - sum b_i delta_i')
    p.add_argument('kind', choices=('h', 'flag'))
    p.add_argument('--h', type=int, required=True, help='Genus of the ambient M_h')
    p.add_argument('--a', type=_arg_type(parse_rational), required=True)
    p.add_argument('--b', type=_arg_type(parse_rational_list), required=True, help='b_0,b_1,... as exact rationals')

    p = sub.add_parser('fdiv-check', help='F-divisor inequalities on M_h, h even')
    p.add_argument('--h', type=int, required=True)
    p.add_argument('--a', type=_arg_type(parse_rational), required=True)
    p.add_argument('--b', type=_arg_type(parse_rational_list), required=True)

    p = sub.add_parser('flag-program', help='Flag pullback program for tags 1, 2, g-1, g')
    p.add_argument('--tag', required=True, choices=('1', '2', 'g-1', 'g'))
    p.add_argument('--g', type=int, required=True)
    p.add_argument('--a', type=_arg_type(parse_rational))
    p.add_argument('--b', type=_arg_type(parse_rational))
    p.add_argument('--d', type=_arg_type(parse_rational))

    p = sub.add_parser('verify-paper', aliases=['verify-claims'], help='Run the full reproduction suite')
    p.add_argument('--max-n', type=int, default=config.max_n)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one command and map errors to exit codes."""
    parser = create_parser()
    args = parser.parse_args(argv)

    if args.cache:
        fusion_cache.load(args.cache)
    try:
        return ConformalBlocksApp(args.format).run(args)
    except ContractViolation as e:
        print(f"❌ Contract violated: {e}", file=sys.stderr)
        return EXIT_CONTRACT
    except IntegralityError as e:
        print(f"❌ Integrality failure: {e}", file=sys.stderr)
        return EXIT_INTEGRALITY
    finally:
        if args.cache:
            fusion_cache.save(args.cache)


if __name__ == "__main__":
    sys.exit(main())
