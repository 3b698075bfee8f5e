import os
import io
import json

import pytest

from beliefchange.formula import parse, equivalent
from beliefchange.cli import (main, build_parser, RunConfig, UsageError,
                              EXIT_OK, EXIT_USAGE, EXIT_FALSE, EXIT_INCONSISTENT)

FOLDER = os.path.abspath(os.path.dirname(__file__))

KB1 = os.path.join(FOLDER, 'kb1', 'kb.txt')
KB3 = os.path.join(FOLDER, 'kb3', 'kb.txt')


def test_revise_show_eq():
    status, lines = _run(['revise', KB1, '~p | ~q', '--show-eq'])
    assert status == EXIT_OK
    assert lines[:2] == ['EQ1 = {p}', 'EQ2 = {q}']
    assert lines[2].startswith('result: ')
    assert equivalent(parse(lines[2][len('result: '):]), parse('p <-> ~q'))


def test_revise_choice_order():
    status, lines = _run(['revise', KB1, '~p | ~q', '--variant', 'choice', '--order', 'q'])
    assert status == EXIT_OK
    assert equivalent(parse(lines[-1][len('result: '):]), parse('~p & q'))


def test_revise_models():
    status, lines = _run(['revise', KB1, '~q', '--models'])
    assert status == EXIT_OK
    assert [l for l in lines if l.startswith('model:')] == ['model: {p, ~q}']


def test_contract():
    status, lines = _run(['contract', KB1, 'q'])
    assert status == EXIT_OK
    assert lines == ['result: p']


def test_update():
    kb = os.path.join(FOLDER, 'kb2', 'kb.txt')
    status, lines = _run(['update', kb, '~p', '--format', 'records'])
    record = json.loads(lines[0])
    assert status == EXIT_OK
    assert record['operation'] == 'update'
    assert record['eq_sets'] is None
    assert equivalent(parse(record['result']), parse('~p & (q | r)'))


def test_query():
    assert _run(['query', KB1, '~q', 'p']) == (EXIT_OK, ['result: true'])
    assert _run(['query', KB1, '~p | ~q', 'p']) == (EXIT_FALSE, ['result: false'])
    status, lines = _run(['query', KB1, '~p | ~q', 'p', '--variant', 'choice'])
    assert status == EXIT_OK


def test_records():
    status, lines = _run(['revise', KB1, '~q', '--show-eq', '--format', 'records'])
    assert len(lines) == 1
    record = json.loads(lines[0])
    assert sorted(record) == ['eq_sets', 'inputs', 'operation', 'result', 'status']
    assert record['operation'] == 'revise'
    assert record['inputs'] == {'kb': 'p & q', 'formula': '~q'}
    assert record['eq_sets'] == [['p']]
    assert record['status'] == 'ok'
    assert equivalent(parse(record['result']), parse('p & ~q'))


def test_integrity_constraints():
    ic_r = os.path.join(FOLDER, 'kb3', 'ic_r.txt')
    status, lines = _run(['revise', KB3, '~p | q', '--ic-entailment', ic_r, '--format', 'records'])
    record = json.loads(lines[0])
    assert status == EXIT_OK
    assert record['inputs']['ic_r'] == ['r']
    assert equivalent(parse(record['result']), parse('p & q & r'))


def test_dynamic_inconsistent():
    dynamic = os.path.join(FOLDER, 'kb3', 'dynamic.txt')
    status, lines = _run(['revise', KB3, '~p', '--dynamic', dynamic])
    assert status == EXIT_INCONSISTENT
    assert lines == ['result: false']


def test_extensions():
    status, lines = _run(['extensions', KB1, '~p | ~q'])
    assert status == EXIT_OK
    text = '\n'.join(lines)
    assert 'EQ = {p}' in text and 'EQ = {q}' in text

    status, lines = _run(['extensions', KB1, 'p & q', '--contraction', '--format', 'records'])
    record = json.loads(lines[0])
    assert record['eq_sets'] == [['p'], ['q']]
    assert [parse(f) for f in record['result']] == [parse('p'), parse('q')]
    assert record['inputs']['scenario'] == 'contraction'


def test_laws():
    status, lines = _run(['laws', '--suite', 'revision'])
    assert status == EXIT_OK
    text = '\n'.join(lines)
    assert 'K*5w' in text and 'VIOLATED' in text

    status, lines = _run(['laws', '--suite', 'identities', '--format', 'records'])
    records = [json.loads(l) for l in lines]
    assert [r['law'] for r in records] == ['Levi', 'Harper', 'Iterated']
    assert all(r['verdict'] == 'HOLDS-ON-GRID' for r in records)


def test_output_is_deterministic():
    argv = ['revise', KB1, '~p | ~q', '--show-eq', '--format', 'records']
    assert _run(argv) == _run(argv)


def test_usage_errors(capsys):
    assert _run(['revise', KB1, 'q', '--order', 'q'])[0] == EXIT_USAGE
    assert 'usage error' in capsys.readouterr().err
    assert _run(['frobnicate'])[0] == EXIT_USAGE
    assert _run([])[0] == EXIT_USAGE
    with pytest.raises(UsageError):
        RunConfig('query', order='p')
    args = build_parser().parse_args(['query', KB1, 'q', 'p', '--order', 'p', '--show-eq'])
    assert RunConfig.from_args(args).order == 'p'


def test_input_errors(capsys):
    assert _run(['revise', KB1, 'p &'])[0] == EXIT_USAGE
    assert 'parse error' in capsys.readouterr().err

    bad = os.path.join(FOLDER, 'kb3', 'bad.txt')
    assert _run(['revise', bad, 'p'])[0] == EXIT_USAGE
    err = capsys.readouterr().err
    assert 'bad.txt' in err and 'line 2' in err

    assert _run(['revise', KB1, "p'"])[0] == EXIT_USAGE
    assert 'primed atom' in capsys.readouterr().err

    missing = os.path.join(FOLDER, 'kb1', 'missing.txt')
    assert _run(['revise', missing, 'p'])[0] == EXIT_USAGE
    assert 'cannot read input' in capsys.readouterr().err


##########

def _run(argv):
    out = io.StringIO()
    status = main(argv, out)
    return status, out.getvalue().splitlines()
