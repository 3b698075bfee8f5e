from __future__ import print_function, division

import sys
import json
import logging
import argparse

from .config import load_config
from .formula import (BeliefBase, parse, read_formulas, render, models,
                      FormulaSyntaxError, PrimedAtomError, EnumerationLimitError)
from .solvers import get_backend
from .scenario import max_eq, INCLUSION, CARDINALITY, ALL, CHOICE
from .change import (ChangeOptions, IntegrityConstraints, SKEPTICAL, revise,
                     contract, revise_ic, query, family_for, revision_scenario,
                     contraction_scenario, ic_scenario)
from .update import update
from . import laws

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FALSE = 2
EXIT_INCONSISTENT = 3

SUITES = ('revision', 'contraction', 'identities', 'dp', 'update')


class UsageError(ValueError):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """Raises UsageError instead of exiting with argparse's status 2."""
    def error(self, message):
        raise UsageError(message)


def initLogging(filename=None, logger=None, level=logging.WARNING):
    if logger is None:
        logger = logging.getLogger()
    for handler in logger.handlers[:]:
        if getattr(handler, '_beliefchange', False):
            logger.removeHandler(handler)

    logger.setLevel(level)
    formatter = logging.Formatter(fmt='%(asctime)s: %(levelname)s: %(message)s')

    handlers = [logging.StreamHandler(sys.stderr)]
    if filename is not None:
        handlers.append(logging.FileHandler(filename))
    for h in handlers:
        h.setFormatter(formatter)
        h._beliefchange = True
        logger.addHandler(h)
    return logger


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='settings file (configobj ini)')
    common.add_argument('--backend', choices=['auto', 'enumerate', 'pysat'],
                        help='satisfiability backend')
    common.add_argument('--format', choices=['text', 'records'], default='text',
                        help='plain text or one JSON record per result')
    common.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    common.add_argument('--logfile', help='also log to this file')

    change = argparse.ArgumentParser(add_help=False)
    change.add_argument('--variant', choices=[SKEPTICAL, CHOICE], default=SKEPTICAL)
    change.add_argument('--mode', choices=[INCLUSION, CARDINALITY], default=INCLUSION)
    change.add_argument('--order', help='comma-separated atom names, most preferred first')
    change.add_argument('--show-eq', action='store_true', help='print the maximal EQ sets')

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument('--models', action='store_true', help='list the models of the result')

    parser = ArgumentParser(prog='beliefchange',
                            description='Consistency-based belief revision, contraction and update.')
    sub = parser.add_subparsers(dest='command', parser_class=ArgumentParser)
    sub.required = True

    p = sub.add_parser('revise', parents=[common, change, output], help='revise KB by a formula')
    p.add_argument('kb')
    p.add_argument('formula')
    p.add_argument('--ic-consistency', help='file of constraints that must stay consistent')
    p.add_argument('--ic-entailment', help='file of constraints that must be entailed')
    p.add_argument('--dynamic', help="file of dynamic constraints (primed atoms allowed)")

    p = sub.add_parser('contract', parents=[common, change, output], help='contract a formula from KB')
    p.add_argument('kb')
    p.add_argument('formula')

    p = sub.add_parser('update', parents=[common, output], help='update KB by a formula')
    p.add_argument('kb')
    p.add_argument('formula')
    p.add_argument('--mode', choices=[INCLUSION, CARDINALITY], default=INCLUSION)

    p = sub.add_parser('query', parents=[common, change], help='does revising KB by ALPHA entail BETA?')
    p.add_argument('kb')
    p.add_argument('formula')
    p.add_argument('beta')

    p = sub.add_parser('extensions', parents=[common], help='list the EQ family and its extensions')
    p.add_argument('kb')
    p.add_argument('formula')
    p.add_argument('--contraction', action='store_true', help='contraction instead of revision scenario')
    p.add_argument('--mode', choices=[INCLUSION, CARDINALITY], default=INCLUSION)
    p.add_argument('--order', help='comma-separated atom names for the greedy search')

    p = sub.add_parser('laws', parents=[common], help='audit postulates on a grid')
    p.add_argument('--grid', type=int, default=2, help='atoms (exhaustive up to 2, random beyond)')
    p.add_argument('--samples', type=int, help='random instances per law')
    p.add_argument('--seed', type=int, help='random seed')
    p.add_argument('--variant', choices=[SKEPTICAL, CHOICE], default=SKEPTICAL)
    p.add_argument('--suite', choices=SUITES + ('all',), default='all')
    return parser


class RunConfig(object):
    """One command-line invocation."""
    FIELDS = ('command', 'kb', 'formula', 'beta', 'variant', 'mode', 'order',
              'ic_consistency', 'ic_entailment', 'dynamic', 'format', 'show_eq',
              'models', 'contraction', 'grid', 'samples', 'seed', 'suite',
              'backend', 'config', 'verbose', 'logfile')

    def __init__(self, command, **kwargs):
        self.command = command
        for f in self.FIELDS[1:]:
            setattr(self, f, kwargs.get(f))
        if self.format is None:
            self.format = 'text'
        if self.variant is None:
            self.variant = SKEPTICAL
        if self.mode is None:
            self.mode = INCLUSION
        if (self.order and self.variant == SKEPTICAL and not self.show_eq
                and self.command in ('revise', 'contract', 'query')):
            raise UsageError('--order only applies to --variant choice (or with --show-eq).')

    @classmethod
    def from_args(cls, args):
        kwargs = dict((f, getattr(args, f, None)) for f in cls.FIELDS)
        return cls(**kwargs)

    def options(self, backend=None):
        return ChangeOptions(self.variant, self.mode, self.order, backend)


def _record(operation, inputs, family, result, status):
    eq_sets = None
    if family is not None:
        eq_sets = [[render(a) for a in eq] for eq in family]
    return {'operation': operation, 'inputs': inputs, 'eq_sets': eq_sets,
            'result': result, 'status': status}


def _emit(config, out, record, result_base=None):
    if config.format == 'records':
        out.write(json.dumps(record, sort_keys=True) + '\n')
        return
    if record['eq_sets'] is not None:
        for i, eq in enumerate(record['eq_sets'], 1):
            out.write('EQ{} = {{{}}}\n'.format(i, ', '.join(eq)))
    out.write('result: {}\n'.format(record['result']))
    if config.models and result_base is not None:
        for m in models(result_base.formulas, result_base.vocab):
            out.write('model: {}\n'.format(m))


def _status(result, backend):
    return 'ok' if result.is_consistent(backend=backend) else 'inconsistent'


def _change(config, out, backend):
    kb = BeliefBase.from_file(config.kb)
    alpha = parse(config.formula)
    opts = config.options(backend)
    inputs = {'kb': render(kb.formula), 'formula': render(alpha)}

    if config.command == 'contract':
        b = contraction_scenario(kb, alpha)
        result = contract(kb, alpha, opts)
    elif config.ic_consistency or config.ic_entailment or config.dynamic:
        ic = IntegrityConstraints(
            read_formulas(config.ic_consistency) if config.ic_consistency else (),
            read_formulas(config.ic_entailment) if config.ic_entailment else (),
            read_formulas(config.dynamic, allow_primed=True) if config.dynamic else ())
        b = ic_scenario(kb, alpha, ic)
        result = revise_ic(kb, alpha, ic, opts)
        inputs['ic_k'] = [render(f) for f in ic.ic_k]
        inputs['ic_r'] = [render(f) for f in ic.ic_r]
        inputs['dynamic'] = [render(f) for f in ic.dynamic]
    else:
        b = revision_scenario(kb, alpha)
        result = revise(kb, alpha, opts)

    family = family_for(b, opts) if config.show_eq else None
    status = _status(result, backend)
    _emit(config, out, _record(config.command, inputs, family, render(result.formula), status), result)
    return EXIT_OK if status == 'ok' else EXIT_INCONSISTENT


def _update(config, out, backend):
    kb = BeliefBase.from_file(config.kb)
    alpha = parse(config.formula)
    result = update(kb, alpha, mode=config.mode, backend=backend)
    status = _status(result, backend)
    inputs = {'kb': render(kb.formula), 'formula': render(alpha)}
    _emit(config, out, _record('update', inputs, None, render(result.formula), status), result)
    return EXIT_OK if status == 'ok' else EXIT_INCONSISTENT


def _query(config, out, backend):
    kb = BeliefBase.from_file(config.kb)
    alpha, beta = parse(config.formula), parse(config.beta)
    opts = config.options(backend)
    answer = query(kb, alpha, beta, opts)
    family = family_for(revision_scenario(kb, alpha), opts) if config.show_eq else None
    inputs = {'kb': render(kb.formula), 'formula': render(alpha), 'beta': render(beta)}
    status = 'true' if answer else 'false'
    _emit(config, out, _record('query', inputs, family, status, status))
    return EXIT_OK if answer else EXIT_FALSE


def _extensions(config, out, backend):
    kb = BeliefBase.from_file(config.kb)
    alpha = parse(config.formula)
    if config.contraction:
        b = contraction_scenario(kb, alpha)
    else:
        b = revision_scenario(kb, alpha)
    family = max_eq(b, config.mode, ALL, config.options().strategy, backend)
    inputs = {'kb': render(kb.formula), 'formula': render(alpha),
              'scenario': 'contraction' if config.contraction else 'revision'}
    reps = [render(f) for f in family.representatives()]
    status = 'ok' if family else 'inconsistent'
    if config.format == 'records':
        _emit(config, out, _record('extensions', inputs, family, reps, status))
    else:
        family.print_ascii(out)
    return EXIT_OK if family else EXIT_INCONSISTENT


def _laws(config, out, backend):
    grid = laws.make_grid(config.grid, samples=config.samples, seed=config.seed)
    opts = ChangeOptions(config.variant, backend=backend)
    reports = []
    suites = SUITES if config.suite in (None, 'all') else (config.suite,)
    for suite in suites:
        logging.info('Running {} suite on {} grid'.format(suite, grid.description))
        if suite == 'revision':
            reports += laws.check_revision_postulates(laws.operator(revise, opts), grid)
        elif suite == 'contraction':
            expected = laws.CHOICE_CONTRACTION_EXPECTED if config.variant == CHOICE else None
            reports += laws.check_contraction_postulates(laws.operator(contract, opts), grid, expected)
        elif suite == 'identities':
            reports += laws.check_identities(grid, laws.operator(revise, opts),
                                             laws.operator(contract, opts))
        elif suite == 'dp':
            reports += laws.check_dp(grid, laws.operator(revise, opts))
        elif suite == 'update':
            reports += laws.check_update_postulates(
                lambda k, a: update(k, a, backend=backend), grid)

    if config.format == 'records':
        for r in reports:
            out.write(json.dumps(r.to_record(), sort_keys=True) + '\n')
    else:
        out.write(laws.reports_to_df(reports).to_string(index=False) + '\n')
    return EXIT_OK


COMMANDS = {'revise': _change,
            'contract': _change,
            'update': _update,
            'query': _query,
            'extensions': _extensions,
            'laws': _laws}


def run(config, out=None):
    """Executes one invocation and returns its exit status.

    0 on success, 2 when a query is false, 3 when the result is inconsistent.
    """
    if out is None:
        out = sys.stdout
    if config.config:
        load_config(config.config)
    backend = get_backend(config.backend)
    return COMMANDS[config.command](config, out, backend)


def main(argv=None, out=None):
    try:
        config = RunConfig.from_args(build_parser().parse_args(argv))
    except UsageError as e:
        print('beliefchange: usage error: {}'.format(e), file=sys.stderr)
        return EXIT_USAGE

    initLogging(config.logfile, level=logging.DEBUG if config.verbose else logging.WARNING)
    try:
        return run(config, out)
    except FormulaSyntaxError as e:
        message = 'parse error: {}'.format(e)
    except PrimedAtomError as e:
        message = 'primed atom not allowed: {}'.format(e)
    except EnumerationLimitError as e:
        message = 'enumeration limit exceeded: {}'.format(e)
    except (IOError, OSError) as e:
        message = 'cannot read input: {}'.format(e)
    except ValueError as e:
        message = 'error: {}'.format(e)
    print('beliefchange: {}'.format(message), file=sys.stderr)
    return EXIT_USAGE
