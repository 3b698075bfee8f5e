from __future__ import print_function, division

import logging

from .config import on_rtd

if not on_rtd:
    from asciitree import LeftAligned, Traversal
    from asciitree.drawing import BoxStyle, BOX_DOUBLE
else:
    class Traversal(object):
        pass

    class LeftAligned(object):
        pass

from .formula import (Atom, BeliefBase, Formula, conjoin, disjoin, vocab, render,
                      has_primed, PrimedAtomError)
from .renaming import (EqSet, prime, rename, forget, flip_subst, primed,
                       unprimed, equivalence)
from .solvers import resolve_backend

INCLUSION = 'inclusion'
CARDINALITY = 'cardinality'
MODES = (INCLUSION, CARDINALITY)

ALL = 'all'
CHOICE = 'choice'


def _formulas(fs):
    if isinstance(fs, Formula):
        return (fs,)
    elif isinstance(fs, BeliefBase):
        return fs.formulas
    return tuple(fs)


class Scenario(object):
    """A belief change scenario (K, U, V).

    K is changed so that every formula of U holds afterwards and V stays
    consistent with the result.  V may mention primed atoms, which refer
    to the state before the change.
    """
    def __init__(self, K, U=(), V=()):
        if not isinstance(K, BeliefBase):
            K = BeliefBase(K)
        self.K = K
        self.U = _formulas(U)
        self.V = _formulas(V)
        if has_primed(self.U):
            raise PrimedAtomError('Formulas that must hold after the change may not mention primed atoms.')

    @property
    def is_revision(self):
        return len(self.V) == 0

    def __repr__(self):
        return 'Scenario(K={}, U=[{}], V=[{}])'.format(
            render(self.K.formula), ', '.join(render(f) for f in self.U),
            ', '.join(render(f) for f in self.V))


def full_pool(b):
    """Every unprimed atom the scenario can mention."""
    return frozenset(vocab(b.K.formulas) | vocab(b.U) |
                     set(unprimed(a) for a in vocab(b.V)))


def candidates(b, restricted=True):
    """Atoms whose equivalence p <-> p' is up for grabs.

    Unrestricted, this is the full pool.  Restricted, an atom is contested
    only when both its old (primed) and new (unprimed) copy can occur in
    the consistency check; every other atom is forced into each EQ set.
    """
    pool = full_pool(b)
    if not restricted:
        return pool
    v_atoms = vocab(b.V)
    old = vocab(b.K.formulas) | set(unprimed(a) for a in v_atoms if a.primed)
    new = vocab(b.U) | set(a for a in v_atoms if not a.primed)
    return frozenset(old & new)


def forced(b):
    return full_pool(b) - candidates(b, restricted=True)


class SelectionStrategy(object):
    """Total order on atoms used to pick one EQ set out of many.

    Atoms named in ``ordering`` come first, in the given order; all others
    follow lexicographically.  The greedy choice pass scans candidates in
    this order, and :func:`SelectionStrategy.select` picks, from a family,
    the member a greedy scan in this order would produce.
    """
    def __init__(self, ordering=None):
        if isinstance(ordering, str):
            ordering = [s.strip() for s in ordering.split(',') if s.strip()]
        self.ordering = tuple(a.name if isinstance(a, Atom) else a
                              for a in (ordering or ()))
        self._rank = {name: i for i, name in enumerate(self.ordering)}

    def order(self, atoms):
        n = len(self._rank)
        return sorted(atoms, key=lambda a: (self._rank.get(a.name, n), a.sort_key))

    def key(self, eq):
        return tuple(a not in eq for a in self.order(eq.candidates))

    def select(self, family):
        family = list(family)
        if not family:
            return None
        return min(family, key=self.key)

    def __eq__(self, other):
        return isinstance(other, SelectionStrategy) and self.ordering == other.ordering

    def __hash__(self):
        return hash(self.ordering)

    def __repr__(self):
        return 'SelectionStrategy({})'.format(','.join(self.ordering))


DEFAULT_STRATEGY = SelectionStrategy()


def _canonical_key(eq):
    return tuple(a not in eq for a in sorted(eq.candidates))


class FamilyTraversal(Traversal):
    """Traverses an ExtensionFamily for ascii printing."""
    def get_children(self, node):
        if isinstance(node, ExtensionFamily):
            return list(node)
        return []

    def get_root(self, node):
        return node

    def get_text(self, node):
        if isinstance(node, ExtensionFamily):
            return '{} ({} mode, {} EQ sets)'.format(node.scenario, node.mode, len(node))
        text = 'EQ = {}'.format(node)
        rep = getattr(node, 'rep', None)
        if rep is not None:
            text += ': {}'.format(render(rep))
        return text


class _Member(EqSet):
    """EqSet annotated with its representative, for printing."""
    __slots__ = ('rep',)

    def __init__(self, eq, rep):
        super(_Member, self).__init__(eq.included, eq.candidates)
        self.rep = rep


class FamilyLeftAligned(LeftAligned):
    def __init__(self, **kwargs):
        self.traverse = FamilyTraversal()
        super(FamilyLeftAligned, self).__init__(**kwargs)


class ExtensionFamily(object):
    """Mode-maximal consistent EQ sets of a scenario, in canonical order.

    Canonical order sorts by the complement's characteristic vector over
    the sorted pool, so for complements {q} and {p} the set leaving out q
    comes first.
    """
    def __init__(self, eq_sets, scenario, mode=INCLUSION):
        unique = []
        for eq in eq_sets:
            if eq not in unique:
                unique.append(eq)
        self.eq_sets = sorted(unique, key=_canonical_key)
        self.scenario = scenario
        self.mode = mode

    def __len__(self):
        return len(self.eq_sets)

    def __iter__(self):
        return iter(self.eq_sets)

    def __getitem__(self, i):
        return self.eq_sets[i]

    def __bool__(self):
        return len(self.eq_sets) > 0

    __nonzero__ = __bool__

    def __eq__(self, other):
        if isinstance(other, ExtensionFamily):
            other = other.eq_sets
        return self.eq_sets == list(other)

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def complements(self):
        return [eq.complement() for eq in self.eq_sets]

    def representatives(self):
        return [_extension_rep(self.scenario, eq) for eq in self.eq_sets]

    def print_ascii(self, fout=None):
        tree = ExtensionFamily([], self.scenario, self.mode)
        tree.eq_sets = [_Member(eq, rep) for eq, rep in zip(self.eq_sets, self.representatives())]
        box_tr = FamilyLeftAligned(draw=BoxStyle(gfx=BOX_DOUBLE, horiz_len=1))
        if fout is None:
            print(box_tr(tree))
        else:
            fout.write(box_tr(tree) + '\n')

    def __repr__(self):
        return '[{}]'.format(', '.join(str(eq) for eq in self.eq_sets))


def _base_formulas(b):
    return [prime(f) for f in b.K.formulas] + list(b.U) + list(b.V)


def eq_consistent(b, eq, backend=None):
    """Whether prime(K), the equivalences of eq, U and V are jointly satisfiable.
    """
    if eq.candidates != full_pool(b):
        raise ValueError('EQ set {} is not drawn from the candidates of {}'.format(eq, b))
    backend = resolve_backend(backend)
    return backend.satisfiable(_base_formulas(b) + eq.as_formulas())


def _grow(base, start, order, backend, known_consistent=False):
    """Greedily adds equivalences in order; None if start itself is inconsistent."""
    current = start
    ok = known_consistent
    for p in order:
        if p in current:
            continue
        trial = current.with_atom(p)
        if backend.satisfiable(base + trial.as_formulas()):
            current = trial
            ok = True
    if not ok and not backend.satisfiable(base + current.as_formulas()):
        return None
    return current


def _enumerate(base, pool, forced_atoms, contested, order, backend):
    """All inclusion-maximal EQ sets, by greedy growth and blocking."""
    found = []
    blocks = []
    forced_eqs = EqSet(forced_atoms, pool).as_formulas()
    while True:
        model = backend.solve(base + forced_eqs + blocks)
        if model is None:
            break
        seed = set(forced_atoms)
        for p in contested:
            if model.get(p, False) == model.get(primed(p), False):
                seed.add(p)
        eq = _grow(base, EqSet(seed, pool), order, backend, known_consistent=True)
        logging.debug('Found maximal EQ set {}'.format(eq))
        found.append(eq)
        comp = eq.complement()
        if not comp:
            break
        blocks.append(disjoin([equivalence(p) for p in sorted(comp)]))
    return found


def max_eq(b, mode=INCLUSION, variant=ALL, strategy=None, backend=None):
    """Maximal consistent EQ sets of a scenario.

    :param mode:
        ``INCLUSION`` (subset-maximal) or ``CARDINALITY`` (maximum size).

    :param variant:
        ``ALL`` for the whole family; ``CHOICE`` for the single member
        picked by ``strategy``.  Inclusion-mode choice is one greedy pass
        with one satisfiability check per contested atom.

    :returns:
        :class:`ExtensionFamily`, possibly empty when prime(K), U and V
        are already jointly unsatisfiable.
    """
    if mode not in MODES:
        raise ValueError('Unknown maximality mode: {}'.format(mode))
    if variant not in (ALL, CHOICE):
        raise ValueError('Unknown variant: {}'.format(variant))
    strategy = strategy or DEFAULT_STRATEGY
    backend = resolve_backend(backend)

    pool = full_pool(b)
    contested = candidates(b, restricted=True)
    forced_atoms = pool - contested
    order = strategy.order(contested)
    base = _base_formulas(b)

    if variant == CHOICE and mode == INCLUSION:
        eq = _grow(base, EqSet(forced_atoms, pool), order, backend)
        logging.debug('Choice EQ set for {}: {}'.format(b, eq))
        return ExtensionFamily([eq] if eq is not None else [], b, mode)

    family = _enumerate(base, pool, forced_atoms, contested, order, backend)
    if mode == CARDINALITY and family:
        best = max(len(eq) for eq in family)
        family = [eq for eq in family if len(eq) == best]
    if variant == CHOICE and family:
        family = [strategy.select(family)]
    family = ExtensionFamily(family, b, mode)
    logging.debug('EQ family for {}: {}'.format(b, family))
    return family


def renamed_base(b, eq):
    """Primed K with the atoms of eq renamed back and all other primed atoms forgotten."""
    k = prime(b.K.formula)
    renamed = rename(k, {primed(p): p for p in eq.included})
    rest = [a for a in vocab(renamed) if a.primed]
    return forget(renamed, rest)


def _extension_rep(b, eq):
    return conjoin([renamed_base(b, eq)] + list(b.U))


def extension_rep(b, eq, backend=None):
    """Unprimed formula axiomatizing the extension determined by eq.

    K is primed, atoms of eq are renamed back, the remaining primed atoms
    are forgotten and U is conjoined.  V only enters the consistency check.
    """
    if not eq_consistent(b, eq, backend=backend):
        raise ValueError('EQ set {} is not consistent with {}'.format(eq, b))
    return _extension_rep(b, eq)


def flipped_base(b, eq):
    """K with every atom outside eq negated, formula by formula."""
    comp = eq.complement()
    return conjoin([flip_subst(s, comp) for s in b.K.formulas])


def flip_rep(b, eq):
    return conjoin([flipped_base(b, eq)] + list(b.U))


def forgotten_base(b, eq):
    """K with every atom outside eq forgotten."""
    return forget(b.K.formula, eq.complement())


def enumeration_rep(b, eq):
    return conjoin([forgotten_base(b, eq)] + list(b.U))
