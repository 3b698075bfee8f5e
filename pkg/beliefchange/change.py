from __future__ import print_function, division

import logging

from .formula import (BeliefBase, Not, conjoin, disjoin, has_primed,
                      satisfiable, render, INCONSISTENT, PrimedAtomError)
from .scenario import (Scenario, max_eq, flipped_base, forgotten_base,
                       renamed_base, INCLUSION, MODES, ALL, CHOICE,
                       SelectionStrategy, DEFAULT_STRATEGY)

SKEPTICAL = 'skeptical'
VARIANTS = (SKEPTICAL, CHOICE)


class ChangeOptions(object):
    """How a change operator aggregates the extension family.

    :param variant:
        ``SKEPTICAL`` intersects all extensions (disjunction of their
        representatives); ``CHOICE`` keeps the one picked by ``strategy``.

    :param mode:
        ``INCLUSION`` or ``CARDINALITY`` maximality of EQ sets.

    :param strategy:
        :class:`SelectionStrategy`, or comma-separated atom names.

    :param backend:
        Satisfiability backend (instance or name); ``None`` for the default.
    """
    def __init__(self, variant=SKEPTICAL, mode=INCLUSION, strategy=None, backend=None):
        if variant not in VARIANTS:
            raise ValueError('Unknown variant: {}'.format(variant))
        if mode not in MODES:
            raise ValueError('Unknown maximality mode: {}'.format(mode))
        if strategy is None:
            strategy = DEFAULT_STRATEGY
        elif not isinstance(strategy, SelectionStrategy):
            strategy = SelectionStrategy(strategy)
        self.variant = variant
        self.mode = mode
        self.strategy = strategy
        self.backend = backend

    @property
    def is_choice(self):
        return self.variant == CHOICE

    def __repr__(self):
        return 'ChangeOptions({}, {}, {})'.format(self.variant, self.mode, self.strategy)


class IntegrityConstraints(object):
    """Constraints carried through a revision.

    ``ic_k`` must stay consistent with the result, ``ic_r`` must be entailed
    by it, and ``dynamic`` formulas relate the old state (primed atoms) to
    the new one.
    """
    def __init__(self, ic_k=(), ic_r=(), dynamic=()):
        self.ic_k = tuple(ic_k)
        self.ic_r = tuple(ic_r)
        self.dynamic = tuple(dynamic)
        if has_primed(self.ic_k) or has_primed(self.ic_r):
            raise PrimedAtomError('Integrity constraints may not mention primed atoms; '
                                  'use dynamic constraints instead.')
        for f in self.dynamic:
            if not has_primed(f):
                logging.warning('Dynamic constraint {} mentions no primed atom.'.format(render(f)))


def _as_base(k):
    if isinstance(k, BeliefBase):
        return k
    return BeliefBase(k)


def _check_unprimed(*formulas):
    for f in formulas:
        if has_primed(f):
            raise PrimedAtomError('{} mentions primed atoms.'.format(render(f)))


def revision_scenario(k, alpha):
    _check_unprimed(alpha)
    return Scenario(_as_base(k), [alpha])


def contraction_scenario(k, alpha):
    _check_unprimed(alpha)
    return Scenario(_as_base(k), [], [Not(alpha)])


def ic_scenario(k, alpha, ic):
    _check_unprimed(alpha)
    return Scenario(_as_base(k), [alpha] + list(ic.ic_r), list(ic.ic_k) + list(ic.dynamic))


def family_for(b, opts=None):
    opts = opts or ChangeOptions()
    return max_eq(b, opts.mode, CHOICE if opts.is_choice else ALL,
                  opts.strategy, opts.backend)


def _extension_base(b, eq):
    """K-part of the extension representative, without U."""
    if b.is_revision:
        return flipped_base(b, eq)
    return renamed_base(b, eq)


def _aggregate(b, family, base_fn):
    return BeliefBase([conjoin([disjoin([base_fn(b, eq) for eq in family])] + list(b.U))])


def expand(k, alpha, backend=None):
    """K + alpha; the inconsistent base when K and alpha clash."""
    k = _as_base(k)
    formulas = list(k.formulas) + [alpha]
    if not satisfiable(formulas, backend=backend):
        return INCONSISTENT
    return BeliefBase([conjoin(formulas)])


def revise(k, alpha, opts=None):
    """Revises k by alpha.

    Each extension is represented by K with the atoms outside its EQ set
    negated, so a choice result is no longer than K and alpha together.

    :returns:
        :class:`BeliefBase` holding a single formula, or ``INCONSISTENT``
        when k is inconsistent or alpha unsatisfiable.
    """
    opts = opts or ChangeOptions()
    b = revision_scenario(k, alpha)
    family = family_for(b, opts)
    if not family:
        logging.info('No consistent extension revising {} by {}.'.format(b.K, render(alpha)))
        return INCONSISTENT
    result = _aggregate(b, family, _extension_base)
    logging.info('{} * {} = {}'.format(b.K, render(alpha), result))
    return result


def contract(k, alpha, opts=None):
    """Contracts alpha from k.

    Extensions forget the atoms outside their EQ set.  When alpha is valid
    or k inconsistent there is no extension and k is returned unchanged.
    """
    opts = opts or ChangeOptions()
    k = _as_base(k)
    b = contraction_scenario(k, alpha)
    family = family_for(b, opts)
    if not family:
        logging.info('No consistent extension contracting {} from {}; keeping it.'.format(
            render(alpha), k))
        return k
    result = _aggregate(b, family, forgotten_base)
    logging.info('{} - {} = {}'.format(k, render(alpha), result))
    return result


def revise_ic(k, alpha, ic, opts=None):
    """Revision by alpha under integrity constraints ``ic``."""
    opts = opts or ChangeOptions()
    b = ic_scenario(k, alpha, ic)
    family = family_for(b, opts)
    if not family:
        logging.info('No consistent extension under the integrity constraints.')
        return INCONSISTENT
    return _aggregate(b, family, _extension_base)


def query(k, alpha, beta, opts=None):
    """Whether revising k by alpha entails beta.

    For the choice variant this costs the greedy pass plus one
    entailment check.
    """
    opts = opts or ChangeOptions()
    _check_unprimed(beta)
    revised = revise(k, alpha, opts)
    return revised.entails(beta, backend=opts.backend)
