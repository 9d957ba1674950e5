"""Commands of the command line interface and their artifact writers"""
import csv
import io
import json
import logging
from typing import Any, Callable, Dict, List, NamedTuple

from ..algebra import Element
from ..channel import classify, info_metrics, capacity, check_coding, coding_trials, summarize_trials
from ..information import (aep_sweep, mass_threshold, entropy, Code, kraft, code_metrics, huffman_code,
                           is_prefix_free)
from ..probability import State, evaluate, coordinate_observable, sample_mean_distribution, chebyshev_threshold
from ._config import ExperimentConfig, parse_channel, parse_state

log = logging.getLogger(__name__)


class CommandResult(NamedTuple):
    rows: List[Dict[str, Any]]
    summary: Dict[str, Any]


def run_lln(config: ExperimentConfig) -> CommandResult:
    params = config.typed_params()
    omega = parse_state(params.p)
    observable = coordinate_observable(omega) if params.values is None else Element(omega.dim, params.values)
    mu = float(evaluate(omega, observable).real)
    rows = []
    for n in params.n:
        distribution = sample_mean_distribution(omega, n, observable, method=params.method,
                                                guard_override=config.guard_override)
        variance = distribution.moment(2, mu)
        rows.append({
            'n': n,
            'variance': variance,
            f'moment_{params.k}': distribution.moment(params.k, mu),
            'tail': distribution.tail(mu, params.eps),
            'chebyshev_bound': variance / params.eps ** 2,
        })
    threshold = chebyshev_threshold(omega, params.eps, params.n_max, observable)
    return CommandResult(rows, {'state': omega.to_dict(), 'mean': mu, 'chebyshev_threshold': threshold})


def run_aep(config: ExperimentConfig) -> CommandResult:
    params = config.typed_params()
    omega = parse_state(params.p)
    reports = aep_sweep(omega, params.n, params.eps, method=params.method, guard_override=config.guard_override)
    return CommandResult([report.to_dict() for report in reports],
                         {'state': omega.to_dict(), 'H': entropy(omega), 'threshold': mass_threshold(reports)})


def run_code(config: ExperimentConfig) -> CommandResult:
    params = config.typed_params()
    omega = parse_state(params.state)
    summary: Dict[str, Any] = {'state': omega.to_dict(), 'H': entropy(omega)}
    if params.huffman:
        code = huffman_code(omega, params.alphabet)
    elif params.words is not None:
        code = Code.from_strings(params.words, params.alphabet)
    elif params.lengths is not None:
        code = kraft(params.lengths, params.alphabet, mode='construct')
    else:
        raise ValueError('code needs one of huffman, words or lengths')
    summary['code'] = code.to_dict()
    summary['prefix_free'] = is_prefix_free(code)
    summary['kraft'] = kraft(code.lengths, params.alphabet)
    metrics = code_metrics(code, omega)
    summary['expected_length'] = metrics.expected_length
    summary['bound_value'] = metrics.bound_value
    rows = [{'letter': i, 'weight': float(w), 'length': length}
            for i, (w, length) in enumerate(zip(omega.weights, code.lengths))]
    return CommandResult(rows, summary)


def run_channel_info(config: ExperimentConfig) -> CommandResult:
    params = config.typed_params()
    c = parse_channel(params.channel)
    omega = State.uniform(c.input_dim) if params.state is None else parse_state(params.state)
    classification = classify(c, None if params.state is None else omega)
    metrics = info_metrics(c, omega)
    row = {**metrics._asdict(), 'rank': classification.rank}
    return CommandResult([row], {'channel': c.to_dict(), 'state': omega.to_dict(),
                                 'classification': classification.to_dict()})


def run_capacity(config: ExperimentConfig) -> CommandResult:
    params = config.typed_params()
    c = parse_channel(params.channel)
    C, optimal = capacity(c, tol=params.tol, max_iter=params.max_iter)
    row = {'capacity': C, **{f'p{i}': float(w) for i, w in enumerate(optimal.weights)}}
    return CommandResult([row], {'channel': c.to_dict(), 'capacity': C, 'optimal_input': optimal.to_dict()})


def run_coding_experiment(config: ExperimentConfig) -> CommandResult:
    params = config.typed_params()
    c = parse_channel(params.channel)
    omega = State.uniform(c.input_dim) if params.state is None else parse_state(params.state)
    check_coding(c, params.rate)
    trials = coding_trials(c, omega, params.rate, params.ks, params.trials, config.seed, config.guard_override)
    summary = summarize_trials(trials, config.seed)
    rows = [{'k': t.k, 'rate': t.rate, 'trial': t.trial, 'deviation': t.deviation, 'error_prob': t.error_prob}
            for t in trials]
    return CommandResult(rows, {'channel': c.to_dict(), 'state': omega.to_dict(),
                                'results': [result.to_dict() for result in summary]})


COMMANDS: Dict[str, Callable[[ExperimentConfig], CommandResult]] = {
    'lln': run_lln,
    'aep': run_aep,
    'code': run_code,
    'channel-info': run_channel_info,
    'capacity': run_capacity,
    'coding-experiment': run_coding_experiment,
}


def _csv_cell(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return format(value, '.17g')
    return str(value)


def render(config: ExperimentConfig, result: CommandResult) -> str:
    """Artifact text: JSON with the resolved config, results and summary, or CSV
    with a `#` column header line and a `# config=` line."""
    resolved = config.model_dump()
    if config.format == 'json':
        return json.dumps({'config': resolved, 'results': result.rows, 'summary': result.summary},
                          sort_keys=True, indent=2) + '\n'
    columns = list(result.rows[0]) if result.rows else []
    buffer = io.StringIO()
    buffer.write('# ' + ','.join(columns) + '\n')
    buffer.write('# config=' + json.dumps(resolved, sort_keys=True, separators=(',', ':')) + '\n')
    writer = csv.writer(buffer, lineterminator='\n')
    for row in result.rows:
        writer.writerow([_csv_cell(row[column]) for column in columns])
    return buffer.getvalue()


def run(config: ExperimentConfig) -> str:
    """Runs the configured command and returns the artifact text.

    Examples:
        >>> from cstarinfo.cli import ExperimentConfig, run
        >>> text = run(ExperimentConfig(command='code', params={'state': '0.5,0.25,0.25', 'huffman': True}))
        >>> import json; json.loads(text)['summary']['expected_length']
        1.5
    """
    log.info('Running %s', config.command)
    return render(config, COMMANDS[config.command](config))
