import json

import numpy as np
import pytest

from cstarinfo.cli import ExperimentConfig, main, parse_channel, parse_grid, parse_state, resolve_config, run
from cstarinfo.datasets import load_csv_data, load_csv_config


def _run_json(capsys, argv):
    assert main(argv) == 0
    return json.loads(capsys.readouterr().out)


def _error(capsys):
    return json.loads(capsys.readouterr().err.strip().splitlines()[-1])


def test_aep_command(capsys):
    artifact = _run_json(capsys, ['aep', '--p', '0.9,0.1', '--eps', '0.2', '--n', '4:20'])
    assert len(artifact['results']) == 17
    assert [row['n'] for row in artifact['results']] == list(range(4, 21))
    assert all(row['upper_ok'] for row in artifact['results'])
    assert artifact['config']['command'] == 'aep'
    assert artifact['config']['params']['n'] == list(range(4, 21))

    # 1 - every n from the threshold on keeps the typical mass
    threshold = artifact['summary']['threshold']
    for row in artifact['results']:
        if threshold is not None and row['n'] >= threshold:
            assert row['mass_ok']

    # 2 - both routes agree
    types = _run_json(capsys, ['aep', '--p', '0.9,0.1', '--eps', '0.2', '--n', '4:20', '--method', 'types'])
    for a, b in zip(artifact['results'], types['results']):
        assert a['count'] == b['count']
        assert abs(a['prob_mass'] - b['prob_mass']) <= 1e-12


def test_capacity_command(capsys):
    artifact = _run_json(capsys, ['capacity', '--channel', 'bsc(0.11)'])
    assert abs(artifact['summary']['capacity'] - 0.5) <= 1e-4
    assert abs(artifact['results'][0]['p0'] - 0.5) <= 1e-6


def test_code_command(capsys):
    artifact = _run_json(capsys, ['code', '--state', '0.5,0.25,0.25', '--huffman'])
    assert [row['length'] for row in artifact['results']] == [1, 2, 2]
    assert artifact['summary']['expected_length'] == 1.5
    assert artifact['summary']['H'] == 1.5
    assert artifact['summary']['prefix_free']

    # 1 - lengths are tested against Kraft and a code is constructed
    artifact = _run_json(capsys, ['code', '--state', 'dyadic_3', '--lengths', '1,2,2'])
    assert artifact['summary']['kraft'] and artifact['summary']['prefix_free']
    assert _run_json(capsys, ['code', '--words', '0,10,11'])['summary']['expected_length'] == 1.5


def test_channel_info_command(capsys):
    artifact = _run_json(capsys, ['channel-info', '--channel', 'identity(2)'])
    assert artifact['summary']['classification']['kind'] == 'lossless'
    assert artifact['results'][0]['I_XY'] == 1.0

    artifact = _run_json(capsys, ['channel-info', '--channel', 'useless_0.3', '--state', '0.2,0.8'])
    assert artifact['summary']['classification']['kind'] == 'useless'
    assert abs(artifact['results'][0]['I_XY']) <= 1e-12


def test_lln_csv_round_trip(tmp_path):
    path = tmp_path / 'lln.csv'
    assert main(['lln', '--p', '0.5,0.5', '--n', '1,2,4,8', '--format', 'csv', '--output', str(path)]) == 0

    data, header = load_csv_data(path)
    assert header == ['n', 'variance', 'moment_4', 'tail', 'chebyshev_bound']
    assert data[:, 0].tolist() == [1, 2, 4, 8]
    assert np.allclose(data[:, 1], 0.25 / data[:, 0], rtol=0, atol=1e-12)
    assert np.all(np.diff(data[:, 2]) < 0)

    config = load_csv_config(path)
    assert config['command'] == 'lln' and config['seed'] == 0
    assert ExperimentConfig(**config).params == config['params']

    # 1 - the dense route writes the same table
    dense = tmp_path / 'dense.csv'
    assert main(['lln', '--p', '0.5,0.5', '--n', '1,2,4,8', '--format', 'csv', '--output', str(dense),
                 '--method', 'dense']) == 0
    assert np.allclose(load_csv_data(dense)[0], data, rtol=0, atol=1e-12)


def test_byte_reproducible(tmp_path):
    argv = ['coding-experiment', '--channel', 'bsc(0.05)', '--rate', '0.5', '--ks', '4,6', '--trials', '3',
            '--seed', '2']
    for index, fmt in enumerate(('json', 'csv', 'json')):
        first, second = tmp_path / f'a{index}.{fmt}', tmp_path / f'b{index}.{fmt}'
        assert main(argv + ['--format', fmt, '--output', str(first)]) == 0
        assert main(argv + ['--format', fmt, '--output', str(second)]) == 0
        assert first.read_text().replace(str(first), '') == second.read_text().replace(str(second), '')

    artifact = json.loads((tmp_path / 'a0.json').read_text())
    assert artifact['config']['seed'] == 2
    assert [result['k'] for result in artifact['summary']['results']] == [4, 6]
    assert len(artifact['results']) == 6


def test_config_file(tmp_path, capsys):
    path = tmp_path / 'capacity.toml'
    path.write_text('command = "capacity"\nseed = 4\n\n[params]\nchannel = "bsc(0.11)"\ntol = 1e-8\n')
    artifact = _run_json(capsys, ['capacity', '--config', str(path), '--channel', 'identity(4)'])
    assert artifact['config']['seed'] == 4
    assert artifact['config']['params'] == {'channel': 'identity(4)', 'tol': 1e-8, 'max_iter': 10000}
    assert abs(artifact['summary']['capacity'] - 2) <= 1e-8

    # 1 - json files are read too
    path = tmp_path / 'code.json'
    path.write_text(json.dumps({'command': 'code', 'params': {'state': [0.5, 0.5], 'huffman': True}}))
    assert _run_json(capsys, ['code', '--config', str(path)])['summary']['expected_length'] == 1.0

    # 2 - a file for another command is refused
    assert main(['aep', '--config', str(path)]) == 1
    assert _error(capsys)['exit_code'] == 1


def test_exit_codes(tmp_path, capsys):
    # 1 - configuration errors
    assert main(['capacity', '--channel', 'foo(0.1)']) == 1
    error = _error(capsys)
    assert error['error'] == 'ValueError' and error['exit_code'] == 1

    path = tmp_path / 'extra.json'
    path.write_text(json.dumps({'command': 'capacity', 'params': {'chanel': 'bsc(0.1)'}}))
    assert main(['capacity', '--config', str(path)]) == 1
    assert _error(capsys)['exit_code'] == 1

    path.write_text(json.dumps({'command': 'capacity', 'colour': 'red'}))
    assert main(['capacity', '--config', str(path)]) == 1
    assert main(['capacity', '--config', str(tmp_path / 'missing.json')]) == 1

    # 2 - guard exceeded
    assert main(['aep', '--n', '30', '--p', '0.5,0.5']) == 2
    error = _error(capsys)
    assert error['error'] == 'GuardExceededError' and error['exit_code'] == 2

    # 3 - no convergence
    assert main(['capacity', '--channel', 'z_0.5', '--max-iter', '0']) == 3
    error = _error(capsys)
    assert error['error'] == 'NotConvergedError' and error['exit_code'] == 3

    # 4 - useless channels cannot carry a code
    assert main(['coding-experiment', '--channel', 'useless(0.3,0.7)']) == 1
    assert _error(capsys)['error'] == 'UselessChannelError'

    # 5 - a state of the wrong dimension
    assert main(['channel-info', '--channel', 'bsc(0.1)', '--state', '0.2,0.3,0.5']) == 1
    error = _error(capsys)
    assert error['error'] == 'AlgebraMismatchError' and error['exit_code'] == 1

    # 6 - an unwritable artifact path
    output = tmp_path / 'missing' / 'out.json'
    assert main(['capacity', '--channel', 'bsc(0.1)', '--output', str(output)]) == 1
    assert _error(capsys)['error'] == 'FileNotFoundError'
    assert not output.exists()


def test_parsers():
    assert parse_grid(5) == [5]
    assert parse_grid([3, 1]) == [3, 1]
    with pytest.raises(ValueError):
        parse_grid('1:2:3:4')
    with pytest.raises(ValueError):
        parse_grid('1:5:0')

    assert parse_state({'dim': 2, 'weights': [0.25, 0.75]}).weights.tolist() == [0.25, 0.75]
    assert parse_state([0.5, 0.5]).dim == 2
    assert parse_channel('bec(0.25)').output_dim == 3
    assert parse_channel('useless(0.3,0.7)').matrix.tolist() == [[0.3, 0.7], [0.3, 0.7]]
    assert parse_channel('z_0.5').matrix.tolist() == [[1.0, 0.0], [0.5, 0.5]]
    with pytest.raises(ValueError):
        parse_channel('bsc(0.1,0.2)')
    with pytest.raises(ValueError):
        parse_channel('nothing')


def test_resolve_config():
    config = resolve_config({'command': 'aep', 'params': {'eps': 0.3, 'n': '2:3'}}, seed=None,
                            params={'n': '5', 'eps': None})
    assert config.params['n'] == [5] and config.params['eps'] == 0.3
    assert config.seed == 0 and config.format == 'json'

    with pytest.raises(ValueError):
        ExperimentConfig(command='aep', params={'size': 3})
    with pytest.raises(ValueError):
        ExperimentConfig(command='plot')

    text = run(ExperimentConfig(command='aep', params={'n': [2]}, format='csv'))
    assert text.splitlines()[0].startswith('# n,eps,H,count')
