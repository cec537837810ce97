#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Command line surface.

Exit status: 0 success, 1 domain error, 2 usage error, 3 resource bound exceeded.
"""
import os
import sys
import argparse
from typing import List, Optional

from luckydonaldUtils.logger import logging

from . import __version__
from .certifiers import certifiers, certificate_report
from .data import Bounds, to_json_str, validation_timestamp
from .dynamics import CyclicConfig, orbit, attractors, pattern, PATTERN_LENGTHS
from .exceptions import CaConsensusError, ResourceBoundError
from .rules import (
    Rule, Block, parse_rule_id, format_rule_id, canonicalize, compose, extend_to_block, export_table,
    extents_for_radius,
)
from .scan import (
    ScanJob, run_scan, read_records, read_certificate_lines, revalidate_certificates, pattern_report,
)
from .utils import parse_length_range

__author__ = 'luckydonald'

logger = logging.getLogger(__name__)
if __name__ == '__main__':
    logging.add_colored_handler(level=logging.DEBUG)
# end if


EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_USAGE_ERROR = 2
EXIT_RESOURCE_ERROR = 3

WORKERS_ENVIRONMENT_VARIABLE = 'CACONSENSUS_WORKERS'

_handler_installed = False

BOUND_FLAGS = {
    'm_max': 'largest composition exponent for class A',
    'b_n1_max': 'largest exponent for the class B 00 preservation and creation checks',
    'b_n2_max': 'largest exponent for the class B 00 growth check',
    'c_n1_max': 'largest failing graph order for class C',
    'c_n2_max': 'largest exponent for the class C 000 growth check',
    'max_table_bits': 'log2 of the largest composed truth table',
    'max_block_bits': 'log2 of the largest block enumeration',
    'max_length': 'largest L for exact state space analysis',
    'max_automaton_bits': 'log2 of the largest failing automaton',
}


def _radius(text: str) -> str:
    try:
        extents_for_radius(text)
    except CaConsensusError as e:
        raise argparse.ArgumentTypeError(str(e))
    # end try
    return text
# end def


def _lengths(text: str) -> List[int]:
    try:
        return parse_length_range(text)
    except (CaConsensusError, ValueError) as e:
        raise argparse.ArgumentTypeError(str(e))
    # end try
# end def


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f'not an integer: {text!r}')
    # end try
    if value < 1:
        raise argparse.ArgumentTypeError(f'must be positive: {text!r}')
    # end if
    return value
# end def


def _default_workers() -> int:
    value = os.environ.get(WORKERS_ENVIRONMENT_VARIABLE)
    if not value:
        return 1
    # end if
    try:
        return max(1, int(value))
    except ValueError:
        logger.warning(f'ignoring {WORKERS_ENVIRONMENT_VARIABLE}={value!r}, not an integer')
        return 1
    # end try
# end def


def _add_rule_arguments(parser: argparse.ArgumentParser, multiple: bool = False) -> None:
    parser.add_argument('--radius', type=_radius, default='2', help='radius (0.5 steps), used for bare rule numbers')
    if multiple:
        parser.add_argument('--rule', action='append', required=True, help='rule number or id like r2:3233857728, repeatable')
    else:
        parser.add_argument('--rule', required=True, help='rule number or id like r2:3233857728')
    # end if
# end def


def _add_bound_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group('bounds')
    for name, description in BOUND_FLAGS.items():
        group.add_argument(
            '--' + name.replace('_', '-'), dest=name, type=_positive, default=None,
            help=f'{description} (default {getattr(Bounds, name)})',
        )
    # end for
# end def


def _bounds(args: argparse.Namespace) -> Bounds:
    return Bounds().replace(**{name: getattr(args, name, None) for name in BOUND_FLAGS})
# end def


def _rule(args: argparse.Namespace, text: str = None) -> Rule:
    return parse_rule_id(args.rule if text is None else text, default_radius=args.radius)
# end def


def cmd_simulate(args: argparse.Namespace) -> int:
    rule = _rule(args)
    if args.block:
        block = Block.from_bits(args.config)
        print(block)
        while block.length >= rule.size:
            block = extend_to_block(rule, block)
            print(block)
        # end while
        return EXIT_OK
    # end if
    config = CyclicConfig.from_bits(args.config)
    steps = config.length if args.steps is None else args.steps
    for row in orbit(rule, config, steps):
        print(row)
    # end for
    return EXIT_OK
# end def


def cmd_attractors(args: argparse.Namespace) -> int:
    rule = _rule(args)
    report = attractors(rule, args.length, max_length=_bounds(args).max_length)
    if args.format == 'jsonl':
        print(report.to_json_str())
    else:
        print(report.to_text())
    # end if
    return EXIT_OK
# end def


def cmd_pattern(args: argparse.Namespace) -> int:
    rule = _rule(args)
    vector = pattern(rule, args.lengths, max_length=_bounds(args).max_length)
    print(f'{rule.rule_id}\t{vector}\t{vector.pattern_class() or "-"}')
    return EXIT_OK
# end def


def cmd_canon(args: argparse.Namespace) -> int:
    for text in args.rule:
        print(canonicalize(_rule(args, text)).number)
    # end for
    return EXIT_OK
# end def


def cmd_compose(args: argparse.Namespace) -> int:
    rule = _rule(args)
    composed = compose(rule, args.power, max_table_bits=_bounds(args).max_table_bits)
    written = export_table(composed, args.output)
    print(f'{rule.rule_id}^{args.power}\textents={composed.left_extent},{composed.right_extent}\tbits={composed.table.shape[0]}\tbytes={written}\t{args.output}')
    return EXIT_OK
# end def


def cmd_certify(args: argparse.Namespace) -> int:
    bounds = _bounds(args)
    for text in args.rule:
        rule = _rule(args, text)
        certificate = certifiers.certify(rule, bounds=bounds)
        if args.format == 'jsonl':
            if certificate is not None:
                print(to_json_str({
                    'rule': format_rule_id(rule),
                    'class': certificate.kind,
                    'certificate': certificate.to_dict(),
                    'validated_at': validation_timestamp(),
                }))
            # end if
            continue
        # end if
        if certificate is None:
            print(f'{rule.rule_id}\tnone')
        else:
            print(f'{rule.rule_id}\t{certificate.kind}\t{to_json_str(certificate.to_dict())}')
        # end if
    # end for
    return EXIT_OK
# end def


def cmd_scan(args: argparse.Namespace) -> int:
    if args.resume:
        given = {name: getattr(args, name) for name in BOUND_FLAGS if getattr(args, name, None) is not None}
        progress = run_scan(resume=args.resume, bound_overrides=given)
    else:
        radius = extents_for_radius(args.radius)
        job = ScanJob(
            extents=radius,
            lengths=args.lengths,
            bounds=_bounds(args),
            subspace=args.subspace,
            seed=args.seed,
            workers=args.workers,
            output=args.output,
            certificates=args.certificates,
            checkpoint=args.checkpoint,
            batch_size=args.batch_size,
            retries=args.retries,
        )
        progress = run_scan(job)
    # end if
    logger.info(f'scan finished: {progress.records} records')
    return EXIT_OK
# end def


def cmd_report(args: argparse.Namespace) -> int:
    extents = extents_for_radius(args.radius)
    report = pattern_report(read_records(args.input), extents=extents, lengths=tuple(args.lengths))
    print(report.to_text(min_count=args.min_count, with_rules=args.rules))
    if args.certificates:
        lines = list(read_certificate_lines(args.certificates))
        print(certificate_report(line['certificate'] for line in lines).to_text())
    # end if
    if args.compare_reference:
        for line in report.compare_reference():
            print(line)
        # end for
    # end if
    return EXIT_OK
# end def


def cmd_revalidate(args: argparse.Namespace) -> int:
    failed = 0
    for rule_id, valid in revalidate_certificates(read_certificate_lines(args.input), bounds=_bounds(args)):
        print(f'{rule_id}\t{"ok" if valid else "FAILED"}')
        failed += 0 if valid else 1
    # end for
    if failed:
        logger.error(f'{failed} certificates did not re-validate')
        return EXIT_DOMAIN_ERROR
    # end if
    return EXIT_OK
# end def


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='caconsensus', description='Consensus rules of binary one-dimensional cellular automata.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='more logging, repeat for debug output')
    parser.add_argument('-q', '--quiet', action='store_true', help='only log errors')
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    simulate = commands.add_parser('simulate', help='trajectory of one configuration')
    _add_rule_arguments(simulate)
    simulate.add_argument('--config', required=True, help='initial configuration as bit string')
    simulate.add_argument('--steps', type=int, default=None, help='number of steps (default: the length)')
    simulate.add_argument('--block', action='store_true', help='apply the open block extension until the block is too short')
    simulate.set_defaults(handler=cmd_simulate)

    attractor = commands.add_parser('attractors', help='attractors and basin sizes at one length')
    _add_rule_arguments(attractor)
    attractor.add_argument('--length', '-L', type=_positive, required=True)
    attractor.add_argument('--format', choices=('plain', 'jsonl'), default='plain')
    _add_bound_arguments(attractor)
    attractor.set_defaults(handler=cmd_attractors)

    pattern_parser = commands.add_parser('pattern', help='size of the basin of 1^L over a length range')
    _add_rule_arguments(pattern_parser)
    pattern_parser.add_argument('--lengths', type=_lengths, default=list(PATTERN_LENGTHS), help='e.g. 5-20')
    _add_bound_arguments(pattern_parser)
    pattern_parser.set_defaults(handler=cmd_pattern)

    canon = commands.add_parser('canon', help='smallest rule number of the symmetry class')
    _add_rule_arguments(canon, multiple=True)
    canon.set_defaults(handler=cmd_canon)

    composer = commands.add_parser('compose', help='export the truth table of f^m as packed bits')
    _add_rule_arguments(composer)
    composer.add_argument('--power', '-m', type=_positive, required=True)
    composer.add_argument('--output', '-o', required=True)
    _add_bound_arguments(composer)
    composer.set_defaults(handler=cmd_compose)

    certify = commands.add_parser('certify', help='run the class A, B and C certifiers')
    _add_rule_arguments(certify, multiple=True)
    certify.add_argument('--format', choices=('plain', 'jsonl'), default='plain')
    _add_bound_arguments(certify)
    certify.set_defaults(handler=cmd_certify)

    scanner = commands.add_parser('scan', help='scan a rule space')
    scanner.add_argument('--radius', type=_radius, default='2')
    scanner.add_argument('--lengths', type=_lengths, default=list(PATTERN_LENGTHS))
    scanner.add_argument('--subspace', default='full', help='full, range:A-B, list:N,N,... or sample:N')
    scanner.add_argument('--seed', type=int, default=None, help='seed for sample subspaces')
    scanner.add_argument('--workers', type=_positive, default=_default_workers(), help=f'worker processes (default ${WORKERS_ENVIRONMENT_VARIABLE} or 1)')
    scanner.add_argument('--output', '-o', help='CSV output')
    scanner.add_argument('--certificates', help='JSON lines certificate output (default next to the CSV)')
    scanner.add_argument('--checkpoint', help='checkpoint file, rewritten after every batch')
    scanner.add_argument('--resume', metavar='CHECKPOINT', help='continue the job stored in this checkpoint')
    scanner.add_argument('--batch-size', type=_positive, default=256)
    scanner.add_argument('--retries', type=int, default=2)
    _add_bound_arguments(scanner)
    scanner.set_defaults(handler=cmd_scan)

    report = commands.add_parser('report', help='group scan output by pattern')
    report.add_argument('--input', '-i', required=True, help='CSV written by scan')
    report.add_argument('--certificates', help='certificate file written by scan')
    report.add_argument('--radius', type=_radius, default='2')
    report.add_argument('--lengths', type=_lengths, default=list(PATTERN_LENGTHS))
    report.add_argument('--rules', action='store_true', help='list the rules of every pattern')
    report.add_argument('--min-count', type=_positive, default=1, help='hide patterns with fewer rules')
    report.add_argument('--compare-reference', action='store_true', help='compare with the published full radius 2 counts')
    report.set_defaults(handler=cmd_report)

    revalidate = commands.add_parser('revalidate', help='re-check stored certificates')
    revalidate.add_argument('--input', '-i', required=True, help='certificate file')
    _add_bound_arguments(revalidate)
    revalidate.set_defaults(handler=cmd_revalidate)
    return parser
# end def


def _validate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    if args.command == 'scan':
        if args.resume and args.output:
            parser.error('--resume takes the output paths from the checkpoint, do not pass --output')
        # end if
        if not args.resume and not args.output:
            parser.error('scan needs --output (or --resume CHECKPOINT)')
        # end if
        if args.retries < 0:
            parser.error('--retries must not be negative')
        # end if
    # end if
    if args.command == 'simulate' and args.steps is not None and args.steps < 0:
        parser.error('--steps must not be negative')
    # end if
# end def


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    if args.quiet:
        level = logging.ERROR
    elif args.verbose >= 2:
        level = logging.DEBUG
    elif args.verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    # end if
    global _handler_installed
    if not _handler_installed:
        logging.add_colored_handler(level=level)
        _handler_installed = True
    # end if
    logging.getLogger().setLevel(level)
    try:
        return args.handler(args)
    except ResourceBoundError as e:
        logger.error(f'resource bound exceeded: {e}')
        return EXIT_RESOURCE_ERROR
    except CaConsensusError as e:
        logger.error(str(e))
        return EXIT_DOMAIN_ERROR
    except OSError as e:
        logger.error(f'{e.filename}: {e.strerror}')
        return EXIT_DOMAIN_ERROR
    # end try
# end def


if __name__ == '__main__':
    sys.exit(main())
# end if
