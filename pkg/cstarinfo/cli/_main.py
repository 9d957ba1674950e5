"""Argument parsing and the `cstarinfo` console script"""
import argparse
import json
import logging
import sys
from typing import Dict, List, Optional

from ..utils import GuardExceededError, NotConvergedError
from ._commands import run
from ._config import COMMANDS, load_config_file, resolve_config

log = logging.getLogger(__name__)

# command -> params keys given as flags
_PARAM_FLAGS: Dict[str, List[str]] = {
    'lln': ['n', 'p', 'values', 'eps', 'k', 'method', 'n_max'],
    'aep': ['n', 'p', 'eps', 'method'],
    'code': ['state', 'huffman', 'lengths', 'words', 'alphabet'],
    'channel-info': ['channel', 'state'],
    'capacity': ['channel', 'tol', 'max_iter'],
    'coding-experiment': ['channel', 'state', 'rate', 'ks', 'trials'],
}

_FLAG_HELP = {
    'n': 'grid of block lengths, `4:20`, `4:20:2` or `1,2,4`',
    'p': 'state weights or a bundled state name',
    'values': 'values of the observable, coordinate values by default',
    'eps': 'deviation epsilon',
    'k': 'order of the central moment',
    'method': 'computation route',
    'n_max': 'largest n searched for the Chebyshev threshold',
    'state': 'state weights or a bundled state name',
    'huffman': 'build a Huffman code',
    'lengths': 'code word lengths to test against Kraft and construct',
    'words': 'comma separated code words',
    'alphabet': 'code alphabet size',
    'channel': 'channel constructor such as `bsc(0.11)`, a bundled name or a JSON file',
    'tol': 'capacity tolerance in bits',
    'max_iter': 'capacity iteration limit',
    'rate': 'transmission rate in bits per symbol',
    'ks': 'grid of block lengths',
    'trials': 'codebooks per block length',
}

_FLAG_TYPES = {'eps': float, 'k': int, 'n_max': int, 'alphabet': int, 'tol': float, 'max_iter': int,
               'rate': float, 'trials': int}

EXIT_CONFIG, EXIT_GUARD, EXIT_NOT_CONVERGED = 1, 2, 3


def build_parser() -> argparse.ArgumentParser:
    """The argument parser. Every flag defaults to None so that config file values survive."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', default=None, help='TOML or JSON configuration file')
    common.add_argument('--output', dest='output_path', default=None, help='artifact path, standard output if absent')
    common.add_argument('--format', choices=('json', 'csv'), default=None)
    common.add_argument('--seed', type=int, default=None)
    common.add_argument('--guard-override', dest='guard_override', action='store_const', const=True, default=None,
                        help='lift the enumeration guards')
    common.add_argument('--log-level', default='WARNING', choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'))

    parser = argparse.ArgumentParser(prog='cstarinfo', description='Information theory experiments on '
                                     'finite dimensional commutative C*-algebras')
    subparsers = parser.add_subparsers(dest='command', required=True)
    for command in COMMANDS:
        sub = subparsers.add_parser(command, parents=[common])
        for key in _PARAM_FLAGS[command]:
            flag = '--' + key.replace('_', '-')
            if key == 'huffman':
                sub.add_argument(flag, dest=key, action='store_const', const=True, default=None,
                                 help=_FLAG_HELP[key])
            else:
                sub.add_argument(flag, dest=key, type=_FLAG_TYPES.get(key, str), default=None,
                                 help=_FLAG_HELP[key])
    return parser


def _report(error: Exception, exit_code: int) -> int:
    payload = {'error': type(error).__name__, 'message': str(error), 'exit_code': exit_code}
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)
    return exit_code


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point of the `cstarinfo` console script; returns the exit status.

    Exit codes: 0 success, 1 configuration or input error, 2 enumeration guard
    exceeded, 3 iterative solver did not converge.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level), stream=sys.stderr,
                        format='%(asctime)s %(name)s %(levelname)s: %(message)s')
    try:
        file_values = load_config_file(args.config) if args.config else {}
        if file_values.get('command', args.command) != args.command:
            raise ValueError(f'Configuration is for {file_values["command"]!r}, not {args.command!r}')
        config = resolve_config(file_values, command=args.command, seed=args.seed, format=args.format,
                                output_path=args.output_path, guard_override=args.guard_override,
                                params={key: getattr(args, key) for key in _PARAM_FLAGS[args.command]})
        text = run(config)
        if config.output_path is None:
            sys.stdout.write(text)
        else:
            with open(config.output_path, 'w', newline='') as f:
                f.write(text)
            log.info('Wrote %s', config.output_path)
    except GuardExceededError as error:
        return _report(error, EXIT_GUARD)
    except NotConvergedError as error:
        return _report(error, EXIT_NOT_CONVERGED)
    except (ValueError, OSError) as error:
        return _report(error, EXIT_CONFIG)
    return 0
