"""Subcommand handlers for the lab command line."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Iterable

from sortengine.dynamics import (
    READINGS,
    PERIODIC,
    Members,
    OrdHistogram,
    orbit,
    periodic_points,
)
from sortengine.enumeration import check_ceiling, iter_shards, scan
from sortengine.errors import SortEngineError
from sortengine.families import KINDS, family, iter_minimally_sorted, max_ord
from sortengine.machine import DEFAULT, PatternSet, apply, apply_traced
from sortengine.perms import format_permutation, parse_permutation
from sortlab import VERSION, config, setup_logging
from sortlab.archive import ReportArchive
from sortlab.checkers import TARGETS, CheckContext, run
from sortlab.reports import INFO, EnumerationReport, Record

logger = logging.getLogger(__name__)

QUANTITIES = ('ord-distribution', 'minimally-sorted', 'periodic-points', 'sortable-count')

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(',') if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected comma separated integers, got {text!r}')


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--patterns', help='pattern set T, e.g. 123,132 or 21')
    common.add_argument('--threads', type=int, help='worker processes for S_n scans')
    common.add_argument('--ceiling', type=int, help='largest n allowed for S_n scans')
    common.add_argument('--format', choices=('csv', 'json'), help='report format')
    common.add_argument('--out', help='report path, stdout when omitted')
    common.add_argument('--archive', help='SQLite file that keeps every report')
    common.add_argument('--config', help='yaml config file')
    common.add_argument('--log-level', help='debug, info, warning, error')

    parser = argparse.ArgumentParser(
        prog='sortlab', description='generalized stack-sorting laboratory')
    parser.add_argument('--version', action='version', version=VERSION)
    sub = parser.add_subparsers(dest='command', required=True)

    sort = sub.add_parser('sort', parents=[common], help='apply s_T to a permutation')
    sort.add_argument('--perm', required=True)
    sort.add_argument('--passes', type=int, default=1)
    sort.add_argument('--trace', action='store_true', help='print the events of the last pass')

    orb = sub.add_parser('orbit', parents=[common], help='tail, cycle and entry point under s_T')
    orb.add_argument('--perm', required=True)

    verify = sub.add_parser('verify', parents=[common], help='exhaustive checks over S_n')
    verify.add_argument('target', choices=sorted(TARGETS))
    verify.add_argument('--n-min', type=int, default=1)
    verify.add_argument('--n-max', type=int, default=7)
    verify.add_argument('--t', type=_int_list, default=(1, 2), help='t values, e.g. 1,2')
    verify.add_argument('--sorted-reading', choices=READINGS, default=PERIODIC)

    enum = sub.add_parser('enumerate', parents=[common], help='counts and lists over S_n')
    enum.add_argument('quantity', choices=QUANTITIES)
    enum.add_argument('--n', type=int, required=True)
    enum.add_argument('--t', type=_int_list, default=(1,))
    enum.add_argument('--sorted-reading', choices=READINGS, default=PERIODIC)
    enum.add_argument('--dump', help='write the permutations, one per line')

    fam = sub.add_parser('families', parents=[common], help='print gamma_n or delta_n')
    fam.add_argument('--kind', choices=KINDS, default='gamma')
    fam.add_argument('--n-min', type=int, default=5)
    fam.add_argument('--n-max', type=int)
    return parser


def _patterns(args) -> PatternSet:
    return PatternSet.parse(config.patterns(args.patterns))


def _emit(lines: Iterable[str]) -> None:
    for line in lines:
        print(line)


def cmd_sort(args) -> int:
    perm = parse_permutation(args.perm)
    patterns = _patterns(args)
    if args.passes < 0:
        raise argparse.ArgumentTypeError('--passes must be non-negative')
    trace = None
    for k in range(args.passes):
        if args.trace and k == args.passes - 1:
            perm, trace = apply_traced(perm, patterns)
        else:
            perm = apply(perm, patterns)
    print(format_permutation(perm))
    if trace is not None:
        _emit(trace.to_lines())
    return EXIT_OK


def cmd_orbit(args) -> int:
    summary = orbit(parse_permutation(args.perm), _patterns(args))
    _emit(summary.render())
    return EXIT_OK


def _publish(args, report: EnumerationReport) -> None:
    ''' the only writer of report output, after every shard is merged '''
    report.stamp()
    fmt = config.reportFormat(args.format)
    out = config.out(args.out)
    if out:
        report.write(out, fmt)
    else:
        sys.stdout.write(report.render(fmt))
    archive = config.archive(args.archive)
    if archive:
        store = ReportArchive(archive)
        try:
            store.store(report)
        finally:
            store.close()


def _context(args, n_min: int, n_max: int) -> CheckContext:
    if n_min < 1 or n_max < n_min:
        raise SortEngineError(f'bad n range {n_min}..{n_max}')
    return CheckContext(
        n_min=n_min,
        n_max=n_max,
        jobs=config.threads(args.threads),
        ceiling=config.ceiling(args.ceiling),
        reading=args.sorted_reading,
        ts=args.t)


def _warn_fixed_patterns(args, fixed: str) -> None:
    if args.patterns is not None:
        logger.warning('%s runs on %s, ignoring --patterns %s', args.command, fixed, args.patterns)


def cmd_verify(args) -> int:
    _warn_fixed_patterns(args, TARGETS[args.target].patterns)
    ctx = _context(args, args.n_min, args.n_max)
    records = run(args.target, ctx)
    report = EnumerationReport(
        target=args.target,
        patterns=TARGETS[args.target].patterns,
        n_min=ctx.n_min,
        n_max=ctx.n_max,
        records=records,
        options={'reading': ctx.reading, 't': ','.join(str(t) for t in ctx.ts)})
    _publish(args, report)
    for failure in report.failures():
        logger.warning('%s fails at n=%d (%s): %s',
                       args.target, failure.n, failure.quantity, failure.counterexample)
    return report.exit_code()


def _dump(path: str | None, perms: Iterable) -> int:
    count = 0
    if path is None:
        for _ in perms:
            count += 1
        return count
    with open(path, mode='w') as f:
        for perm in perms:
            f.write(format_permutation(perm) + '\n')
            count += 1
    return count


def _streamed_members(n: int, patterns: PatternSet, template: Members, ctx: CheckContext):
    for shard in iter_shards(n, patterns, template, jobs=ctx.jobs, ceiling=ctx.ceiling):
        yield from shard.members


def cmd_enumerate(args) -> int:
    n = args.n
    ctx = _context(args, n, n)
    check_ceiling(n, ctx.ceiling)
    patterns = _patterns(args)
    text = str(patterns)
    records: list[Record] = []
    if args.quantity == 'ord-distribution':
        histogram = scan(n, patterns, OrdHistogram(), jobs=ctx.jobs, ceiling=ctx.ceiling).histogram()
        records = [Record(n, text, f'ord={k}', int(c)) for k, c in enumerate(histogram) if c]
    elif args.quantity == 'periodic-points':
        points = sorted(periodic_points(n, patterns, jobs=ctx.jobs, ceiling=ctx.ceiling))
        records = [Record(n, text, 'periodic points', _dump(args.dump, points))]
    elif args.quantity == 'minimally-sorted':
        if patterns == DEFAULT:
            target = max_ord(n)
            members = iter_minimally_sorted(n, jobs=ctx.jobs, ceiling=ctx.ceiling)
        else:
            target = scan(n, patterns, OrdHistogram(), jobs=ctx.jobs, ceiling=ctx.ceiling).maximum
            members = _streamed_members(n, patterns, Members(ord_equals=target), ctx)
        records = [
            Record(n, text, 'max ord', target),
            Record(n, text, 'minimally sorted', _dump(args.dump, members)),
        ]
    elif args.quantity == 'sortable-count':
        if args.dump is not None and len(ctx.ts) > 1:
            raise SortEngineError('--dump takes a single --t value')
        for t in ctx.ts:
            template = Members(t=t, reading=ctx.reading, keep=args.dump is not None)
            if args.dump is not None:
                count = _dump(args.dump, _streamed_members(n, patterns, template, ctx))
            else:
                count = scan(n, patterns, template, jobs=ctx.jobs, ceiling=ctx.ceiling).count
            records.append(Record(n, text, f'|Sort_t={t}|', count))
    report = EnumerationReport(
        target=args.quantity,
        patterns=text,
        n_min=n,
        n_max=n,
        records=records,
        options={'reading': ctx.reading})
    _publish(args, report)
    return EXIT_OK


def cmd_families(args) -> int:
    _warn_fixed_patterns(args, str(DEFAULT))
    n_max = args.n_max if args.n_max is not None else args.n_min
    for n in range(args.n_min, n_max + 1):
        print(format_permutation(family(args.kind, n).value))
    return EXIT_OK


HANDLERS = {
    'sort': cmd_sort,
    'orbit': cmd_orbit,
    'verify': cmd_verify,
    'enumerate': cmd_enumerate,
    'families': cmd_families,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    config.use(args.config)
    setup_logging(args.log_level)
    try:
        return HANDLERS[args.command](args)
    except (SortEngineError, argparse.ArgumentTypeError) as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_USAGE
