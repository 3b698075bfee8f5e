"""Belief update: change every possible world of K separately.

K is split into its prime implicates (minimal consistent literal sets that
entail K; the dual of the usual prime implicates, often called prime
implicants), each one is revised on its own, and the results are joined
model-wise: the update is the disjunction of the per-implicate revisions.
"""
from __future__ import print_function, division

import itertools
import logging

from .config import on_rtd
from .formula import (Atom, BeliefBase, Not, conjoin, disjoin, vocab,
                      assignment_table, truth_table, check_limit, render,
                      INCONSISTENT)
from .change import ChangeOptions, revise, _as_base, _check_unprimed
from .scenario import INCLUSION

if not on_rtd:
    import numpy as np


class LiteralSet(frozenset):
    """Consistent set of ``(atom, polarity)`` pairs over unprimed atoms."""
    def __new__(cls, literals=()):
        self = super(LiteralSet, cls).__new__(cls, literals)
        seen = {}
        for atom, pol in self:
            if not isinstance(atom, Atom) or atom.primed:
                raise ValueError('Literals must be over unprimed atoms: {!r}'.format(atom))
            if seen.setdefault(atom, pol) != pol:
                raise ValueError('{} appears with both polarities.'.format(render(atom)))
        return self

    @property
    def atoms(self):
        return frozenset(a for a, _ in self)

    def sorted(self):
        return sorted(self, key=lambda lit: (lit[0].sort_key, not lit[1]))

    def sort_key(self):
        return (len(self), tuple((a.sort_key, not pol) for a, pol in self.sorted()))

    def as_formula(self):
        return conjoin([a if pol else Not(a) for a, pol in self.sorted()])

    def as_base(self):
        return BeliefBase([self.as_formula()])

    def completions(self, atoms, limit=None):
        """Every extension of the set by a value for each atom it leaves open.

        :raises EnumerationLimitError: if too many atoms are left open.
        """
        free = sorted(set(atoms) - self.atoms)
        check_limit(len(free), limit, what='atoms to complete')
        for values in itertools.product((False, True), repeat=len(free)):
            yield LiteralSet(self | set(zip(free, values)))

    def __repr__(self):
        return '{{{}}}'.format(', '.join(render(a) if pol else '~' + render(a)
                                         for a, pol in self.sorted()))


def prime_implicates(k, limit=None):
    """Minimal consistent literal sets entailing k, shortest first.

    Terms are tried by increasing size over the sorted vocabulary of k and
    kept when every assignment they allow satisfies k and no kept term is
    a subset.  Unsatisfiable k has none; a valid k has the empty set only.

    :raises EnumerationLimitError: if k has too many atoms.
    """
    k = _as_base(k)
    atoms = sorted(k.vocab)
    n = len(atoms)
    check_limit(n, limit)
    table = truth_table(k.formulas, atoms)
    if not table.any():
        return []
    rows = assignment_table(n)

    found = []
    for size in range(n + 1):
        for idx in itertools.combinations(range(n), size):
            for pols in itertools.product((True, False), repeat=size):
                lits = LiteralSet((atoms[j], pol) for j, pol in zip(idx, pols))
                if any(f <= lits for f in found):
                    continue
                mask = np.ones(len(rows), dtype=bool)
                for j, pol in zip(idx, pols):
                    mask &= rows[:, j] == pol
                if table[mask].all():
                    found.append(lits)
    found.sort(key=LiteralSet.sort_key)
    logging.debug('Prime implicates of {}: {}'.format(k, found))
    return found


def update(k, alpha, mode=INCLUSION, refine=True, backend=None):
    """Updates k by alpha.

    :param mode:
        Maximality mode of the per-implicate revisions.

    :param refine:
        Complete each prime implicate on the atoms of alpha it leaves open
        before revising.  Without it, an implicate silent about an atom of
        alpha lets that atom move in every world at once, and the result
        no longer matches a per-world minimal change.
    """
    k = _as_base(k)
    _check_unprimed(alpha)
    implicates = prime_implicates(k)
    if not implicates:
        return INCONSISTENT

    terms = []
    for lits in implicates:
        for term in (lits.completions(vocab(alpha)) if refine else [lits]):
            if term not in terms:
                terms.append(term)

    opts = ChangeOptions(mode=mode, backend=backend)
    results = [revise(term.as_base(), alpha, opts) for term in terms]
    if all(r is INCONSISTENT for r in results):
        return INCONSISTENT
    result = BeliefBase([disjoin([r.formula for r in results])])
    logging.info('{} <> {} = {}'.format(k, render(alpha), result))
    return result
