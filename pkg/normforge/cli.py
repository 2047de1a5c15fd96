import argparse
import logging
import sys
from typing import Optional

from .characterize import CharacterizeConfig
from .consts import ExitCode
from .core import cmd_characterize, cmd_rate, cmd_rv_check, cmd_sandwich, cmd_schatten_check
from .io import OutputWriter
from .parser import COMMANDS, KINDS, RunConfig, build_config, describe, gen_config, load_config


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=__package__)
    parser.add_argument('command', nargs='?', choices=COMMANDS)
    parser.add_argument('-c', '--config', help='TOML run file')
    parser.add_argument('-g', '--generate-config', action='store_true')
    parser.add_argument('-v', '--verbose', action='count', default=0)

    parser.add_argument('--x', help='sequence, comma separated')
    parser.add_argument('--input', help='JSON file holding the sequence')
    parser.add_argument('--p')
    parser.add_argument('--n', help='comma separated list')
    parser.add_argument('--epsilon', type=float)
    parser.add_argument('--t-grid', help='comma separated list')
    parser.add_argument('--t-grid-size', type=int)
    parser.add_argument('--seed', type=int)
    parser.add_argument('--samples', type=int)
    parser.add_argument('--dim-max', type=int)
    parser.add_argument('--tolerance', type=float)
    parser.add_argument('--norm', help='lp:<p>, kyfan:<k> or schatten-diag:<p>')
    parser.add_argument('--sizes', help='comma separated list')
    parser.add_argument('--p-list', help='comma separated list')
    parser.add_argument('--trials', type=int)
    parser.add_argument('--n-max', type=int)
    parser.add_argument('--kind', choices=KINDS)
    parser.add_argument('--format', choices=('csv', 'json'))
    parser.add_argument('--out', help='output path, default stdout')
    return parser


_FLAGS = (
    'command', 'x', 'input', 'p', 'n', 'epsilon', 't_grid', 't_grid_size', 'seed',
    'samples', 'dim_max', 'tolerance', 'norm', 'sizes', 'p_list', 'trials',
    'n_max', 'kind', 'format', 'out',
)


def _merge(args: argparse.Namespace) -> RunConfig:
    values = load_config(args.config) if args.config else {}
    for flag in _FLAGS:
        value = getattr(args, flag)
        if value is not None:
            values[flag] = value
    return build_config(values)


def run(config: RunConfig) -> ExitCode:
    logging.info('running %s', describe(config))
    with OutputWriter(config.out, config.output_format or 'csv') as writer:
        match config.command:
            case 'rate':
                table, code = cmd_rate(config.x, config.t_grid, config.n)
            case 'sandwich':
                table, code = cmd_sandwich(
                    config.x, config.p, config.epsilon, config.n, config.t_grid_size
                )
            case 'characterize':
                if config.output_format == 'csv':
                    logging.warning('characterize writes a JSON report, ignoring --format csv')
                report, code = cmd_characterize(
                    config.norm,
                    CharacterizeConfig(
                        seed=config.seed,
                        samples=config.samples,
                        dim_max=config.dim_max,
                        tolerance=config.tolerance,
                    ),
                )
                writer.write_report(report.to_json())
                return code
            case 'schatten-check':
                table, code = cmd_schatten_check(
                    config.sizes, config.p_list, config.trials, config.seed, config.kind
                )
            case 'rv-check':
                table, code = cmd_rv_check(config.n_max, config.p_list)
        writer.write_table(table)
    return code


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]
    logging.basicConfig(level=level, format='%(levelname)s: %(message)s', stream=sys.stderr)

    if args.generate_config:
        print(f'wrote {gen_config()}', file=sys.stderr)
        return ExitCode.OK
    if args.command is None and args.config is None:
        parser.print_help()
        return ExitCode.USAGE

    try:
        return run(_merge(args))
    except (ValueError, OSError) as e:
        print(f'{parser.prog}: error: {e}', file=sys.stderr)
        return ExitCode.USAGE
