from __future__ import print_function, division

import logging

from .config import on_rtd, get_setting
from .formula import (Atom, Top, Bottom, Not, And, Or, Implies, Iff,
                      vocab, assignment_table, evaluate_rows, check_limit)

if not on_rtd:
    import numpy as np
    from pysat.formula import IDPool
    from pysat.solvers import Solver


class SatBackend(object):
    """Base class for satisfiability oracles.

    Subclasses implement :func:`SatBackend._solve`, which returns a model
    as a dict mapping every atom of the input to a bool, or ``None`` when
    the input is unsatisfiable.  Every call is counted in ``n_calls``.
    """
    name = None

    def __init__(self):
        self.n_calls = 0

    def solve(self, formulas):
        formulas = list(formulas)
        self.n_calls += 1
        model = self._solve(formulas)
        logging.debug('{} call #{} on {} formulas: {}'.format(
            self.name, self.n_calls, len(formulas),
            'SAT' if model is not None else 'UNSAT'))
        return model

    def _solve(self, formulas):
        raise NotImplementedError

    def satisfiable(self, formulas):
        return self.solve(formulas) is not None

    def reset(self):
        self.n_calls = 0

    def __repr__(self):
        return '<{}: {} calls>'.format(type(self).__name__, self.n_calls)


class EnumerationBackend(SatBackend):
    """Truth-table search, evaluated chunkwise with numpy.

    :param limit:
        Largest vocabulary accepted; defaults to the ``enumeration_limit``
        setting.

    :param chunk:
        Number of assignments evaluated per numpy pass.
    """
    name = 'enumerate'

    def __init__(self, limit=None, chunk=2**16):
        super(EnumerationBackend, self).__init__()
        self.limit = limit
        self.chunk = chunk

    def _solve(self, formulas):
        atoms = sorted(vocab(formulas))
        n = len(atoms)
        check_limit(n, self.limit)
        for start in range(0, 2**n, self.chunk):
            stop = min(start + self.chunk, 2**n)
            table = assignment_table(n, start, stop)
            ok = np.flatnonzero(evaluate_rows(formulas, atoms, table))
            if len(ok):
                row = table[ok[0]]
                return {a: bool(v) for a, v in zip(atoms, row)}
        return None


class PySATBackend(SatBackend):
    """CDCL solving through python-sat, after a Tseitin translation to CNF.

    A fresh solver is created for every call.

    :param solver:
        python-sat solver name (e.g. ``'g3'``, ``'m22'``, ``'cd'``);
        defaults to the ``pysat_solver`` setting.
    """
    name = 'pysat'

    def __init__(self, solver=None):
        super(PySATBackend, self).__init__()
        if solver is None:
            solver = get_setting('pysat_solver')
        self.solver = solver

    def _solve(self, formulas):
        pool = IDPool()
        clauses = []
        done = {}
        for f in formulas:
            clauses.append([self._encode(f, pool, clauses, done)])

        with Solver(name=self.solver, bootstrap_with=clauses) as s:
            if not s.solve():
                return None
            model = set(lit for lit in s.get_model() if lit > 0)
        return {a: pool.id(a) in model for a in vocab(formulas)}

    def _encode(self, f, pool, clauses, done):
        """Returns a literal equivalent to f, adding defining clauses."""
        if isinstance(f, Atom):
            return pool.id(f)
        if isinstance(f, (Top, Bottom)):
            t = pool.id('__top__')
            if '__top__' not in done:
                clauses.append([t])
                done['__top__'] = t
            return t if isinstance(f, Top) else -t
        if isinstance(f, Not):
            return -self._encode(f.arg, pool, clauses, done)
        if f in done:
            return done[f]

        lits = [self._encode(c, pool, clauses, done) for c in f.children]
        v = pool.id(f)
        if isinstance(f, And):
            for c in lits:
                clauses.append([-v, c])
            clauses.append([v] + [-c for c in lits])
        elif isinstance(f, Or):
            for c in lits:
                clauses.append([v, -c])
            clauses.append([-v] + lits)
        elif isinstance(f, Implies):
            a, b = lits
            clauses.extend([[-v, -a, b], [v, a], [v, -b]])
        elif isinstance(f, Iff):
            a, b = lits
            clauses.extend([[-v, -a, b], [-v, a, -b], [v, a, b], [v, -a, -b]])
        else:
            raise TypeError('Cannot encode {!r}'.format(f))
        done[f] = v
        return v


class AutoBackend(SatBackend):
    """Truth tables for small inputs, python-sat for everything larger.

    :param threshold:
        Largest vocabulary still decided by enumeration.

    :param solver:
        python-sat solver name, passed to :class:`PySATBackend`.
    """
    name = 'auto'

    def __init__(self, threshold=12, solver=None):
        super(AutoBackend, self).__init__()
        self.threshold = threshold
        self.enumeration = EnumerationBackend(limit=threshold)
        self.sat = PySATBackend(solver)

    def _solve(self, formulas):
        if len(vocab(formulas)) <= self.threshold:
            return self.enumeration._solve(formulas)
        return self.sat._solve(formulas)


BACKENDS = {'enumerate': EnumerationBackend,
            'pysat': PySATBackend,
            'auto': AutoBackend}


def get_backend(name=None, **kwargs):
    """Returns a new backend by name (``'enumerate'``, ``'pysat'`` or ``'auto'``).

    With no name, the ``backend`` setting is used.
    """
    if name is None:
        name = get_setting('backend')
    try:
        return BACKENDS[name](**kwargs)
    except KeyError:
        raise ValueError('Unknown satisfiability backend: {}'.format(name))


def default_backend():
    """New backend following the current ``backend`` setting.

    Backends count their calls, so operations that are not handed one get
    their own.
    """
    return get_backend()


def resolve_backend(backend=None):
    if backend is None:
        return default_backend()
    elif isinstance(backend, SatBackend):
        return backend
    return get_backend(backend)
