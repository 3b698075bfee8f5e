"""Postulate auditing over grids of small instances.

A grid hands out tuples of semantic classes, each encoded as an integer
bitmask over the rows of the truth table of its atoms.  Operators are run
on the canonical DNF of each class and their results are read back as
masks, so every set relation between belief sets becomes a bit test.
Verdicts are grid-relative: ``HOLDS-ON-GRID`` never means proved.
"""
from __future__ import print_function, division

import itertools
import logging

from .config import on_rtd, get_setting
from .formula import (Atom, BeliefBase, Not, Interpretation, conjoin, disjoin,
                      from_models, truth_table, assignment_table, render, vocab)
from .renaming import forget
from .change import revise, contract

if not on_rtd:
    import numpy as np
    import pandas as pd

HOLDS = 'HOLDS-ON-GRID'
VIOLATED = 'VIOLATED'

ATOM_NAMES = 'pqrstuvw'


class Grid(object):
    """Base class for instance generators over the first n atoms p, q, r, ...
    """
    def __init__(self, n):
        if not 0 < n <= len(ATOM_NAMES):
            raise ValueError('Grids span 1 to {} atoms.'.format(len(ATOM_NAMES)))
        self.n = n
        self.atoms = [Atom(c) for c in ATOM_NAMES[:n]]
        self.n_rows = 2**n
        self.full = (1 << self.n_rows) - 1
        self._rows = assignment_table(n)
        self._formulas = {}
        self._masks = {}

    seed = None

    @property
    def description(self):
        raise NotImplementedError

    def instances(self, arity):
        raise NotImplementedError

    def formula(self, mask):
        """Canonical DNF of a class (``false`` for the empty one)."""
        try:
            return self._formulas[mask]
        except KeyError:
            models = [Interpretation(self.atoms, [a for a, v in zip(self.atoms, self._rows[i]) if v])
                      for i in range(self.n_rows) if (mask >> i) & 1]
            f = from_models(models, self.atoms)
            self._formulas[mask] = f
            return f

    def variant(self, mask):
        """CNF with the same models as the class, for syntax-independence checks."""
        clauses = [disjoin([Not(a) if v else a for a, v in zip(self.atoms, self._rows[i])])
                   for i in range(self.n_rows) if not (mask >> i) & 1]
        return conjoin(clauses)

    def mask(self, f):
        try:
            return self._masks[f]
        except KeyError:
            table = truth_table([f], self.atoms)
            m = sum(1 << int(i) for i in np.flatnonzero(table))
            self._masks[f] = m
            return m

    def __repr__(self):
        return '<{}>'.format(self.description)


class ExhaustiveGrid(Grid):
    """Every tuple of semantic classes over n atoms (16 classes for n = 2)."""
    def __init__(self, n=2):
        super(ExhaustiveGrid, self).__init__(n)

    @property
    def description(self):
        return 'exhaustive {}-atom'.format(self.n)

    def instances(self, arity):
        return itertools.product(range(self.full + 1), repeat=arity)


class RandomGrid(Grid):
    """Seeded random tuples of classes over n atoms; each truth-table row is a fair coin.

    :param samples:
        Tuples per law; defaults to the ``grid_samples`` setting.

    :param seed:
        Random seed, recorded in every report; defaults to ``grid_seed``.
    """
    def __init__(self, n=3, samples=None, seed=None):
        super(RandomGrid, self).__init__(n)
        self.samples = get_setting('grid_samples') if samples is None else samples
        self.seed = get_setting('grid_seed') if seed is None else seed

    @property
    def description(self):
        return 'random {}-atom ({} samples, seed {})'.format(self.n, self.samples, self.seed)

    def instances(self, arity):
        rs = np.random.RandomState(self.seed)
        for _ in range(self.samples):
            bits = rs.randint(0, 2, size=(arity, self.n_rows))
            yield tuple(sum(1 << int(i) for i in np.flatnonzero(row)) for row in bits)


def make_grid(n=2, samples=None, seed=None):
    """Exhaustive grid up to two atoms, random beyond."""
    if n <= 2:
        return ExhaustiveGrid(n)
    return RandomGrid(n, samples=samples, seed=seed)


class Context(object):
    """Operators under audit, memoized on class masks."""
    def __init__(self, grid, revise_op=None, contract_op=None, update_op=None):
        self.grid = grid
        self.full = grid.full
        self._ops = {'R': revise_op, 'C': contract_op, 'U': update_op}
        self._memo = {}
        self._foreign = {}

    def _run(self, name, k, a):
        key = (name, k, a)
        try:
            return self._memo[key]
        except KeyError:
            pass
        op = self._ops[name]
        if op is None:
            raise ValueError('No operator {} under audit.'.format(name))
        result = op(BeliefBase([self.grid.formula(k)]), self.grid.formula(a))
        m = self._read(result, key)
        self._memo[key] = m
        return m

    def _read(self, result, key=None):
        f = result.formula
        extra = vocab(f) - frozenset(self.grid.atoms)
        if extra:
            if key is not None:
                self._foreign[key] = extra
            f = forget(f, extra)
        return self.grid.mask(f)

    def R(self, k, a):
        return self._run('R', k, a)

    def C(self, k, a):
        return self._run('C', k, a)

    def U(self, k, a):
        return self._run('U', k, a)

    def foreign(self, name, k, a):
        """Atoms of an operator's result that lie outside the grid language."""
        self._run(name, k, a)
        return self._foreign.get((name, k, a), frozenset())

    def syntactic(self, name, k, a):
        """Runs an operator on the CNF variants of both arguments, unmemoized."""
        result = self._ops[name](BeliefBase([self.grid.variant(k)]), self.grid.variant(a))
        return self._read(result)

    def neg(self, m):
        return self.full & ~m


def entails(a, b):
    return a & ~b == 0


class Law(object):
    """A postulate checked instance by instance.

    ``check(ctx, *masks)`` returns ``None`` when the instance satisfies the
    law (or falls outside it) and otherwise a dict naming the masks that
    show the violation.  An optional ``witness(ctx, *masks)`` flags
    instances where an inclusion is strict.
    """
    def __init__(self, id, arity, relation, check, expected=HOLDS, witness=None):
        self.id = id
        self.arity = arity
        self.relation = relation
        self.check = check
        self.expected = expected
        self.witness = witness

    def __repr__(self):
        return '<Law {}: {}>'.format(self.id, self.relation)


class Violation(object):
    def __init__(self, law, masks, observed, grid):
        self.law = law
        self.masks = tuple(masks)
        self.inputs = tuple(grid.formula(m) for m in masks)
        self.observed = dict((k, grid.formula(m)) for k, m in observed.items())

    def to_record(self):
        return {'law': self.law.id,
                'inputs': [render(f) for f in self.inputs],
                'relation': self.law.relation,
                'observed': dict((k, render(f)) for k, f in sorted(self.observed.items()))}

    def __repr__(self):
        return '<Violation of {} at ({})>'.format(
            self.law.id, ', '.join(render(f) for f in self.inputs))


class LawReport(object):
    """Outcome of one law on one grid."""
    def __init__(self, law, grid, ctx, n_instances, violations, witnesses=()):
        self.law = law
        self.grid = grid
        self.ctx = ctx
        self.n_instances = n_instances
        self.violations = list(violations)
        self.witnesses = [tuple(grid.formula(m) for m in w) for w in witnesses]

    @property
    def id(self):
        return self.law.id

    @property
    def expected(self):
        return self.law.expected

    @property
    def seed(self):
        return self.grid.seed

    @property
    def verdict(self):
        return VIOLATED if self.violations else HOLDS

    @property
    def as_expected(self):
        return self.expected is None or self.expected == self.verdict

    def replay(self):
        """Re-checks every recorded violation; True if each one still fails."""
        return all(self.law.check(self.ctx, *v.masks) is not None for v in self.violations)

    def rerun(self):
        return run_law(self.law, self.ctx)

    def to_record(self):
        example = ''
        if self.violations:
            example = ', '.join(render(f) for f in self.violations[0].inputs)
        elif self.witnesses:
            example = ', '.join(render(f) for f in self.witnesses[0])
        return {'law': self.id,
                'relation': self.law.relation,
                'grid': self.grid.description,
                'seed': self.seed,
                'instances': self.n_instances,
                'violations': len(self.violations),
                'witnesses': len(self.witnesses),
                'verdict': self.verdict,
                'expected': self.expected or '',
                'example': example}

    def __repr__(self):
        return '<LawReport {}: {} ({} instances)>'.format(self.id, self.verdict, self.n_instances)


def run_law(law, ctx):
    violations = []
    witnesses = []
    n = 0
    for masks in ctx.grid.instances(law.arity):
        n += 1
        observed = law.check(ctx, *masks)
        if observed is not None:
            violations.append(Violation(law, masks, observed, ctx.grid))
        if law.witness is not None and law.witness(ctx, *masks):
            witnesses.append(masks)
    report = LawReport(law, ctx.grid, ctx, n, violations, witnesses)
    if not report.as_expected:
        logging.warning('{} on {} grid: {} (expected {}), e.g. {}'.format(
            law.id, ctx.grid.description, report.verdict, law.expected,
            violations[0] if violations else None))
    else:
        logging.info('{}: {} over {} instances'.format(law.id, report.verdict, n))
    return report


def _fail(**observed):
    return observed


##### revision (K, alpha, beta)

def _closed(name):
    def check(ctx, k, a):
        if ctx.foreign(name, k, a):
            return _fail(result=ctx._run(name, k, a))
    return check


def _r2(ctx, k, a):
    r = ctx.R(k, a)
    if not entails(r, a):
        return _fail(result=r)


def _r3(ctx, k, a):
    r = ctx.R(k, a)
    if not entails(k & a, r):
        return _fail(result=r)


def _r4(ctx, k, a):
    r = ctx.R(k, a)
    if k & a and not entails(r, k & a):
        return _fail(result=r)


def _r5(ctx, k, a):
    r = ctx.R(k, a)
    if (r == 0) != (a == 0):
        return _fail(result=r)


def _r5w(ctx, k, a):
    r = ctx.R(k, a)
    if (r == 0) != (k == 0 or a == 0):
        return _fail(result=r)


def _r6(ctx, k, a):
    r = ctx.R(k, a)
    s = ctx.syntactic('R', k, a)
    if r != s:
        return _fail(result=r, variant_result=s)


def _r7(ctx, k, a, b):
    r_ab = ctx.R(k, a & b)
    r_a = ctx.R(k, a)
    if not entails(r_a & b, r_ab):
        return _fail(revised_by_conjunction=r_ab, revised_then_expanded=r_a & b)


def _r8(ctx, k, a, b):
    r_ab = ctx.R(k, a & b)
    r_a = ctx.R(k, a)
    if r_a & b and not entails(r_ab, r_a & b):
        return _fail(revised_by_conjunction=r_ab, revised_then_expanded=r_a & b)


def revision_laws(expected=None):
    expected_ = dict(REVISION_EXPECTED)
    expected_.update(expected or {})
    specs = [('K*1', 1, 'result is a belief set', _closed('R'), 2),
             ('K*2', 2, 'K * a |= a', _r2, 2),
             ('K*3', 3, 'K & a |= K * a', _r3, 2),
             ('K*4', 4, 'if K & a is consistent then K * a |= K & a', _r4, 2),
             ('K*5', 5, 'K * a is inconsistent iff a is', _r5, 2),
             ('K*5w', '5w', 'K * a is inconsistent iff K or a is', _r5w, 2),
             ('K*6', 6, 'equivalent inputs give equivalent results', _r6, 2),
             ('K*7', 7, '(K * a) & b |= K * (a & b)', _r7, 3),
             ('K*8', 8, 'if (K * a) & b is consistent then K * (a & b) |= (K * a) & b', _r8, 3)]
    return [Law(id, arity, rel, check, expected_[key])
            for id, key, rel, check, arity in specs]


REVISION_EXPECTED = {1: HOLDS, 2: HOLDS, 3: HOLDS, 4: HOLDS, 5: VIOLATED,
                     '5w': HOLDS, 6: HOLDS, 7: HOLDS, 8: None}


def check_revision_postulates(op, grid, expected=None):
    """Audits a revision operator ``op(k, alpha) -> BeliefBase``.

    :param expected:
        Overrides of the expected verdicts, keyed by postulate number
        (``'5w'`` for the weakened fifth postulate).
    """
    ctx = Context(grid, revise_op=op)
    return [run_law(law, ctx) for law in revision_laws(expected)]


##### contraction (K, alpha, beta)

def _c2(ctx, k, a):
    c = ctx.C(k, a)
    if not entails(k, c):
        return _fail(result=c)


def _c3(ctx, k, a):
    c = ctx.C(k, a)
    if not entails(k, a) and c != k:
        return _fail(result=c)


def _c4(ctx, k, a):
    # an inconsistent K is kept unchanged, so the law is checked on consistent K
    c = ctx.C(k, a)
    if k and a != ctx.full and entails(c, a):
        return _fail(result=c)


def _c5(ctx, k, a):
    c = ctx.C(k, a)
    if not entails(c & a, k):
        return _fail(result=c)


def _c6(ctx, k, a):
    c = ctx.C(k, a)
    s = ctx.syntactic('C', k, a)
    if c != s:
        return _fail(result=c, variant_result=s)


def _c7(ctx, k, a, b):
    c_ab = ctx.C(k, a & b)
    c_a, c_b = ctx.C(k, a), ctx.C(k, b)
    if not entails(c_ab, c_a | c_b):
        return _fail(contracted_by_conjunction=c_ab, first=c_a, second=c_b)


def _c8(ctx, k, a, b):
    c_ab = ctx.C(k, a & b)
    c_a = ctx.C(k, a)
    if not entails(c_ab, a) and not entails(c_a, c_ab):
        return _fail(contracted_by_conjunction=c_ab, contracted_by_first=c_a)


CONTRACTION_EXPECTED = {1: HOLDS, 2: HOLDS, 3: HOLDS, 4: HOLDS, 5: VIOLATED,
                        6: HOLDS, 7: HOLDS, 8: None}

CHOICE_CONTRACTION_EXPECTED = dict(CONTRACTION_EXPECTED)
CHOICE_CONTRACTION_EXPECTED[7] = None


def contraction_laws(expected=None):
    expected_ = dict(CONTRACTION_EXPECTED)
    expected_.update(expected or {})
    specs = [('K-1', 1, 'result is a belief set', _closed('C'), 2),
             ('K-2', 2, 'K |= K - a', _c2, 2),
             ('K-3', 3, 'if K does not entail a then K - a = K', _c3, 2),
             ('K-4', 4, 'if a is not valid then K - a does not entail a (consistent K)', _c4, 2),
             ('K-5', 5, '(K - a) & a |= K (recovery)', _c5, 2),
             ('K-6', 6, 'equivalent inputs give equivalent results', _c6, 2),
             ('K-7', 7, 'K - (a & b) |= (K - a) | (K - b)', _c7, 3),
             ('K-8', 8, 'if K - (a & b) does not entail a then K - a |= K - (a & b)', _c8, 3)]
    return [Law(id, arity, rel, check, expected_[key])
            for id, key, rel, check, arity in specs]


def check_contraction_postulates(op, grid, expected=None):
    """Audits a contraction operator ``op(k, alpha) -> BeliefBase``."""
    ctx = Context(grid, contract_op=op)
    return [run_law(law, ctx) for law in contraction_laws(expected)]


##### identities

def _levi(ctx, k, a):
    r = ctx.R(k, a)
    levi = ctx.C(k, ctx.neg(a)) & a
    if r != levi:
        return _fail(revision=r, contract_then_expand=levi)


def _harper(ctx, k, a):
    c = ctx.C(k, a)
    if not entails(k | ctx.R(k, ctx.neg(a)), c):
        return _fail(contraction=c, harper=k | ctx.R(k, ctx.neg(a)))


def _harper_strict(ctx, k, a):
    return ctx.C(k, a) != k | ctx.R(k, ctx.neg(a))


def _iterated(ctx, a, b):
    left = ctx.R(ctx.R(a, b), a)
    right = ctx.R(b, a)
    if left != right:
        return _fail(iterated=left, direct=right)


def check_identities(grid, revise_op=None, contract_op=None):
    """Levi, partial Harper (with strictness witnesses) and the iterated identity.

    Operators default to skeptical inclusion-mode revision and contraction.
    """
    ctx = Context(grid, revise_op=revise_op or revise, contract_op=contract_op or contract)
    laws = [Law('Levi', 2, 'K * a = (K - ~a) + a', _levi),
            Law('Harper', 2, '(K | K * ~a) |= K - a', _harper, witness=_harper_strict),
            Law('Iterated', 2, '(a * b) * a = b * a', _iterated)]
    return [run_law(law, ctx) for law in laws]


##### iterated revision (K, mu, alpha)

def _dp1(ctx, k, mu, a):
    if entails(a, mu):
        left, right = ctx.R(ctx.R(k, mu), a), ctx.R(k, a)
        if left != right:
            return _fail(iterated=left, direct=right)


def _dp2(ctx, k, mu, a):
    if entails(a, ctx.neg(mu)):
        left, right = ctx.R(ctx.R(k, mu), a), ctx.R(k, a)
        if left != right:
            return _fail(iterated=left, direct=right)


def _dp3(ctx, k, mu, a):
    if entails(ctx.R(k, a), mu):
        left = ctx.R(ctx.R(k, mu), a)
        if not entails(left, mu):
            return _fail(iterated=left)


def _dp4(ctx, k, mu, a):
    if not entails(ctx.R(k, a), ctx.neg(mu)):
        left = ctx.R(ctx.R(k, mu), a)
        if entails(left, ctx.neg(mu)):
            return _fail(iterated=left)


def _conj(ctx, k, a, b):
    if a & b:
        left, right = ctx.R(ctx.R(k, a), b), ctx.R(k, a & b)
        if left != right:
            return _fail(iterated=left, direct=right)


def check_dp(grid, op=None):
    """Darwiche-Pearl C1-C4 and Nayak's Conj, with the belief base as epistemic state."""
    ctx = Context(grid, revise_op=op or revise)
    laws = [Law('C1', 3, 'if a |= mu then (K * mu) * a = K * a', _dp1, VIOLATED),
            Law('C2', 3, 'if a |= ~mu then (K * mu) * a = K * a', _dp2, VIOLATED),
            Law('C3', 3, 'if K * a |= mu then (K * mu) * a |= mu', _dp3, None),
            Law('C4', 3, 'if K * a does not entail ~mu then neither does (K * mu) * a', _dp4, None),
            Law('Conj', 3, 'if a & b is consistent then (K * a) * b = K * (a & b)', _conj, None)]
    return [run_law(law, ctx) for law in laws]


##### update (K, mu, phi)

def _u1(ctx, k, mu):
    r = ctx.U(k, mu)
    if not entails(r, mu):
        return _fail(result=r)


def _u2(ctx, k, mu):
    r = ctx.U(k, mu)
    if entails(k, mu) and r != k:
        return _fail(result=r)


def _u3(ctx, k, mu):
    r = ctx.U(k, mu)
    if k and mu and not r:
        return _fail(result=r)


def _u4(ctx, k, mu):
    r = ctx.U(k, mu)
    s = ctx.syntactic('U', k, mu)
    if r != s:
        return _fail(result=r, variant_result=s)


def _u5(ctx, k, mu, phi):
    r = ctx.U(k, mu)
    r2 = ctx.U(k, mu & phi)
    if not entails(r & phi, r2):
        return _fail(updated_then_expanded=r & phi, updated_by_conjunction=r2)


def _u6(ctx, k, m1, m2):
    r1, r2 = ctx.U(k, m1), ctx.U(k, m2)
    if entails(r1, m2) and entails(r2, m1) and r1 != r2:
        return _fail(first=r1, second=r2)


def _u7(ctx, k, m1, m2):
    if bin(k).count('1') != 1:
        return None
    r1, r2, r12 = ctx.U(k, m1), ctx.U(k, m2), ctx.U(k, m1 | m2)
    if not entails(r1 & r2, r12):
        return _fail(first=r1, second=r2, disjunction=r12)


def _u8(ctx, k1, k2, mu):
    joint = ctx.U(k1 | k2, mu)
    split = ctx.U(k1, mu) | ctx.U(k2, mu)
    if joint != split:
        return _fail(joint=joint, split=split)


def check_update_postulates(op, grid):
    """Audits an update operator against the Katsuno-Mendelzon postulates U1-U8."""
    ctx = Context(grid, update_op=op)
    laws = [Law('U1', 2, 'K <> mu |= mu', _u1),
            Law('U2', 2, 'if K |= mu then K <> mu = K', _u2),
            Law('U3', 2, 'if K and mu are consistent so is K <> mu', _u3),
            Law('U4', 2, 'equivalent inputs give equivalent results', _u4),
            Law('U5', 3, '(K <> mu) & phi |= K <> (mu & phi)', _u5),
            Law('U6', 3, 'mutually entailing updates are equal', _u6),
            Law('U7', 3, 'for complete K, (K <> m1) & (K <> m2) |= K <> (m1 | m2)', _u7),
            Law('U8', 3, '(K1 | K2) <> mu = (K1 <> mu) | (K2 <> mu)', _u8)]
    return [run_law(law, ctx) for law in laws]


def operator(fn, opts=None):
    """Binds change options to ``fn(k, alpha, opts)`` for auditing."""
    def op(k, alpha):
        return fn(k, alpha, opts)
    op.__name__ = getattr(fn, '__name__', 'op')
    return op


def reports_to_df(reports):
    """Summary table of law reports, one row per law."""
    return pd.DataFrame([r.to_record() for r in reports],
                        columns=['law', 'verdict', 'expected', 'instances', 'violations',
                                 'witnesses', 'grid', 'seed', 'relation', 'example'])
