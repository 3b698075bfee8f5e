from __future__ import print_function, division

import itertools

from .formula import (Atom, Not, Iff, Top, Bottom, TOP, BOTTOM, Formula,
                      substitute, vocab, disjoin, fold_constants, has_primed,
                      check_limit, render, PrimedAtomError)


def primed(p):
    return Atom(p.name, True)


def unprimed(p):
    return Atom(p.name, False)


def prime(f):
    """Renames every atom p of f to its shadow p'.

    :raises PrimedAtomError: if f already mentions a primed atom.
    """
    if has_primed(f):
        raise PrimedAtomError('Cannot prime {}: it already mentions primed atoms.'.format(render(f)))
    return substitute(f, primed)


def unprime(f):
    return substitute(f, unprimed)


def rename(f, mapping):
    """Applies an atom-to-formula mapping; atoms not in mapping are kept."""
    return substitute(f, lambda a: mapping.get(a, a))


def flip_subst(f, atoms):
    """Replaces each listed atom by its negation.

    A negation chain over a flipped atom gains or loses one ``~``, pairing
    depths 0 and 1, 2 and 3, and so on; flipping twice gives back f.
    """
    return _flip(f, frozenset(atoms))


def _flip(f, atoms):
    depth, g = 0, f
    while isinstance(g, Not):
        depth += 1
        g = g.arg
    if isinstance(g, Atom):
        if g not in atoms:
            return f
        depth += 1 if depth % 2 == 0 else -1
    elif isinstance(g, (Top, Bottom)):
        return f
    else:
        g = g.rebuild([_flip(c, atoms) for c in g.children])
    for _ in range(depth):
        g = Not(g)
    return g


def _constant(v):
    if isinstance(v, Formula):
        if v not in (TOP, BOTTOM):
            raise ValueError('Expected true or false, got {}'.format(render(v)))
        return v
    return TOP if v else BOTTOM


def truth_subst(f, assignment):
    """Replaces each assigned atom by ``true``/``false``; no simplification."""
    assignment = {a: _constant(v) for a, v in assignment.items()}
    return substitute(f, lambda a: assignment.get(a, a))


def forget(f, atoms, limit=None, fold=True):
    """Disjunction of f under every truth assignment to atoms.

    Assignments are taken in lexicographic order (false before true) over
    the sorted atoms that occur in f.  With ``fold``, each disjunct is
    constant-folded, ``false`` disjuncts are dropped, and a ``true``
    disjunct makes the whole result ``true``.

    :raises EnumerationLimitError: if too many atoms are to be forgotten.
    """
    atoms = sorted(frozenset(atoms) & vocab(f))
    check_limit(len(atoms), limit, what='atoms to forget')
    if not atoms:
        return fold_constants(f) if fold else f

    disjuncts = []
    for values in itertools.product((False, True), repeat=len(atoms)):
        g = truth_subst(f, dict(zip(atoms, values)))
        if fold:
            g = fold_constants(g)
            if g == TOP:
                return TOP
            elif g == BOTTOM or g in disjuncts:
                continue
        disjuncts.append(g)
    return disjoin(disjuncts)


def equivalence(p):
    """The formula p <-> p'."""
    return Iff(p, primed(p))


class EqSet(object):
    """Atoms assumed to keep their old value, out of a candidate pool.

    :param included:
        Unprimed atoms p for which p <-> p' is assumed.

    :param candidates:
        The pool the set was drawn from; :func:`EqSet.complement` is
        taken relative to it.
    """
    __slots__ = ('included', 'candidates')

    def __init__(self, included, candidates):
        included = frozenset(included)
        candidates = frozenset(candidates)
        if any(a.primed for a in candidates):
            raise PrimedAtomError('EQ candidates must be unprimed atoms.')
        if not included <= candidates:
            raise ValueError('EQ set {} is not drawn from {}'.format(
                sorted(included - candidates), sorted(candidates)))
        self.included = included
        self.candidates = candidates

    def complement(self):
        return self.candidates - self.included

    def as_formulas(self):
        return [equivalence(p) for p in sorted(self.included)]

    def with_atom(self, p):
        return EqSet(self.included | {p}, self.candidates)

    def __len__(self):
        return len(self.included)

    def __contains__(self, p):
        return p in self.included

    def __iter__(self):
        return iter(sorted(self.included))

    def __eq__(self, other):
        if not isinstance(other, EqSet):
            return NotImplemented
        return self.included == other.included and self.candidates == other.candidates

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.included, self.candidates))

    def __str__(self):
        return '{{{}}}'.format(', '.join(render(a) for a in sorted(self.included)))

    def __repr__(self):
        return 'EqSet({})'.format(self)
