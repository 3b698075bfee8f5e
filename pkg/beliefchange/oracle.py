"""Brute-force reference operators over explicit model sets.

Models are handled as integer bitmasks over the sorted working vocabulary
(first atom is the most significant bit), and differences between models
as xor masks.  Nothing here calls the EQ-set machinery, so agreement with
it is an independent check.
"""
from __future__ import print_function, division

import logging

from .config import on_rtd, get_setting
from .formula import (Atom, BeliefBase, Formula, Interpretation, vocab,
                      substitute, truth_table, from_models, check_limit, render)
from .renaming import EqSet
from .scenario import ExtensionFamily, full_pool, INCLUSION, CARDINALITY

if not on_rtd:
    import numpy as np


class OracleDomainError(ValueError):
    pass


class DiffSet(frozenset):
    """Atoms on which two interpretations differ."""
    @property
    def atoms(self):
        return frozenset(self)

    def __repr__(self):
        return '{{{}}}'.format(', '.join(render(a) for a in sorted(self)))


def _formulas(k):
    if isinstance(k, BeliefBase):
        return list(k.formulas)
    elif isinstance(k, Formula):
        return [k]
    return list(k)


def _atoms(mask, vocabulary):
    n = len(vocabulary)
    return [a for j, a in enumerate(vocabulary) if (mask >> (n - 1 - j)) & 1]


def _popcount(masks, n):
    masks = np.asarray(masks, dtype=np.int64)
    return ((masks[..., None] >> np.arange(n)) & 1).sum(axis=-1)


def _minimal(masks):
    """Subset-minimal masks, sorted."""
    masks = sorted(set(int(m) for m in masks))
    return [m for m in masks if not any(o != m and (o & m) == o for o in masks)]


def _setup(k, alpha, limit=None):
    kf = _formulas(k)
    vocabulary = sorted(vocab(kf) | vocab(alpha))
    check_limit(len(vocabulary), limit)
    k_models = np.flatnonzero(truth_table(kf, vocabulary))
    a_models = np.flatnonzero(truth_table([alpha], vocabulary))
    if len(k_models) == 0:
        raise OracleDomainError('Oracle needs a satisfiable belief base.')
    if len(a_models) == 0:
        raise OracleDomainError('Oracle needs a satisfiable formula; {} is not.'.format(render(alpha)))
    return vocabulary, k_models, a_models


def _result(masks, vocabulary):
    models = [Interpretation(vocabulary, _atoms(m, vocabulary)) for m in sorted(set(int(m) for m in masks))]
    return BeliefBase([from_models(models, vocabulary)])


def delta_min(alpha, k, limit=None):
    """Subset-minimal differences between models of alpha and models of k.

    :returns: sorted list of :class:`DiffSet`.
    """
    vocabulary, k_models, a_models = _setup(k, alpha, limit)
    diffs = np.bitwise_xor.outer(a_models, k_models).ravel()
    return [DiffSet(_atoms(m, vocabulary)) for m in _minimal(diffs)]


def satoh_revise(k, alpha, limit=None):
    """Models of alpha at a subset-minimal difference from some model of k."""
    vocabulary, k_models, a_models = _setup(k, alpha, limit)
    diffs = np.bitwise_xor.outer(a_models, k_models)
    mins = _minimal(diffs.ravel())
    keep = np.isin(diffs, mins).any(axis=1)
    return _result(a_models[keep], vocabulary)


def dalal_revise(k, alpha, limit=None):
    """Models of alpha at minimum Hamming distance from the models of k."""
    vocabulary, k_models, a_models = _setup(k, alpha, limit)
    dist = _popcount(np.bitwise_xor.outer(a_models, k_models), len(vocabulary))
    closest = dist.min(axis=1)
    return _result(a_models[closest == closest.min()], vocabulary)


def winslett_update(k, alpha, limit=None):
    """For each model of k, the models of alpha whose change is subset-minimal."""
    vocabulary, k_models, a_models = _setup(k, alpha, limit)
    keep = []
    for m in k_models:
        diffs = np.bitwise_xor(a_models, m)
        mins = _minimal(diffs)
        keep.extend(a_models[np.isin(diffs, mins)])
    return _result(keep, vocabulary)


def forbus_update(k, alpha, limit=None):
    """For each model of k, the models of alpha at minimum Hamming distance."""
    vocabulary, k_models, a_models = _setup(k, alpha, limit)
    keep = []
    for m in k_models:
        dist = _popcount(np.bitwise_xor(a_models, m), len(vocabulary))
        keep.extend(a_models[dist == dist.min()])
    return _result(keep, vocabulary)


def naive_max_eq(b, mode=INCLUSION, limit=None):
    """Maximal consistent EQ sets by trying every subset of the full pool.

    :raises EnumerationLimitError: if the pool exceeds ``naive_limit``.
    """
    if limit is None:
        limit = get_setting('naive_limit')
    pool = sorted(full_pool(b))
    n = len(pool)
    check_limit(n, limit, what='EQ candidates')

    shadow = lambda a: Atom(a.name, True)
    base = ([substitute(f, shadow) for f in b.K.formulas] +
            list(b.U) + list(b.V))
    vocabulary = sorted(set(pool) | set(shadow(p) for p in pool) | vocab(base))
    check_limit(len(vocabulary), None)
    ok = np.flatnonzero(truth_table(base, vocabulary))

    index = {a: len(vocabulary) - 1 - j for j, a in enumerate(vocabulary)}
    eq_masks = set()
    for row in ok:
        mask = 0
        for i, p in enumerate(pool):
            if ((row >> index[p]) & 1) == ((row >> index[shadow(p)]) & 1):
                mask |= 1 << i
        eq_masks.add(mask)

    consistent = [s for s in range(2**n)
                  if any((e & s) == s for e in eq_masks)]
    maximal = [s for s in consistent
               if not any(t != s and (t & s) == s for t in consistent)]
    if mode == CARDINALITY and maximal:
        sizes = [bin(s).count('1') for s in maximal]
        maximal = [s for s, c in zip(maximal, sizes) if c == max(sizes)]

    eq_sets = [EqSet([p for i, p in enumerate(pool) if (s >> i) & 1], pool)
               for s in maximal]
    logging.debug('Brute-force EQ family for {}: {}'.format(b, eq_sets))
    return ExtensionFamily(eq_sets, b, mode)
