import io

import pytest

from beliefchange.formula import (Atom, BeliefBase, Not, parse, equivalent,
                                  PrimedAtomError)
from beliefchange.renaming import EqSet
from beliefchange.scenario import (Scenario, candidates, forced, full_pool,
                                   eq_consistent, max_eq, extension_rep,
                                   flip_rep, enumeration_rep, SelectionStrategy,
                                   INCLUSION, CARDINALITY, CHOICE)
from beliefchange.solvers import EnumerationBackend
from beliefchange.oracle import naive_max_eq
from beliefchange.laws import ExhaustiveGrid, RandomGrid

p, q, r = Atom('p'), Atom('q'), Atom('r')


def _revision(k, alpha):
    return Scenario(BeliefBase([parse(k)]), [parse(alpha)])


def _contraction(k, alpha):
    return Scenario(BeliefBase([parse(k)]), [], [Not(parse(alpha))])


def test_candidates():
    b = _revision('p & q', '~q')
    assert candidates(b) == {q}
    assert forced(b) == {p}
    assert candidates(b, restricted=False) == {p, q}

    b = _revision('~p', 'p | q')
    assert candidates(b) == {p}
    assert forced(b) == {q}

    b = Scenario(BeliefBase([parse('p & q')]))
    assert candidates(b) == set()
    assert forced(b) == {p, q}


def test_candidates_dynamic():
    # c only occurs primed in V, yet its old value can still clash
    b = Scenario(BeliefBase([parse('a')]), [parse('~c')],
                 [parse("~c'", allow_primed=True)])
    assert full_pool(b) == {Atom('a'), Atom('c')}
    assert candidates(b) == {Atom('c')}


def test_eq_consistent():
    b = _revision('p & q', '~q')
    assert eq_consistent(b, EqSet({p}, {p, q}))
    assert not eq_consistent(b, EqSet({p, q}, {p, q}))

    b = _revision('p & q', '~p | ~q')
    assert eq_consistent(b, EqSet({p}, {p, q}))
    assert eq_consistent(b, EqSet({q}, {p, q}))
    assert not eq_consistent(b, EqSet({p, q}, {p, q}))
    assert eq_consistent(b, EqSet(set(), {p, q}))

    with pytest.raises(ValueError):
        eq_consistent(b, EqSet({p}, {p}))


def test_revision_families():
    assert _family('p & q', '~q') == [{p}]
    assert _family('~p <-> q', '~q') == [{p, q}]
    assert _family('p | q', '~p | ~q') == [{p, q}]
    assert _family('p & q', '~p | ~q') == [{p}, {q}]


def test_contraction_families():
    assert _family('p & q', 'q', contraction=True) == [{p}]
    assert _family('p & q & r', 'p | q', contraction=True) == [{r}]
    assert _family('p & q & r', 'r', contraction=True) == [{p, q}]
    assert _family('p & q', 'p & q', contraction=True) == [{p}, {q}]


def test_choice():
    b = _revision('p & q', '~p | ~q')
    assert [set(eq) for eq in max_eq(b, variant=CHOICE)] == [{p}]
    assert [set(eq) for eq in max_eq(b, variant=CHOICE, strategy=SelectionStrategy('q'))] == [{q}]

    family = max_eq(b)
    assert SelectionStrategy().select(family) == family[0]
    assert SelectionStrategy(['q', 'p']).select(family) == family[1]
    assert SelectionStrategy().select([]) is None


def test_choice_call_count():
    backend = EnumerationBackend()
    b = _revision('p & q & r', '~p | ~q | ~r')
    family = max_eq(b, variant=CHOICE, backend=backend)
    assert backend.n_calls == len(candidates(b))
    assert len(family) == 1

    backend.reset()
    b = _revision('p & ~p', 'q')
    assert not max_eq(b, variant=CHOICE, backend=backend)
    assert backend.n_calls == len(candidates(b)) + 1


def test_choice_is_maximal():
    grid = ExhaustiveGrid(2)
    for k, a in grid.instances(2):
        b = Scenario(BeliefBase([grid.formula(k)]), [grid.formula(a)])
        for eq in max_eq(b, variant=CHOICE):
            for atom in eq.complement():
                assert not eq_consistent(b, eq.with_atom(atom))


def test_cardinality():
    b = _revision('p & q & r', '(~p & ~q) | ~r')
    assert _sets(max_eq(b, INCLUSION)) == [{p, q}, {r}]
    assert _sets(max_eq(b, CARDINALITY)) == [{p, q}]
    assert _sets(max_eq(b, CARDINALITY, CHOICE)) == [{p, q}]


def test_empty_family():
    assert not max_eq(_revision('p', 'q & ~q'))
    assert not max_eq(_revision('p & ~p', 'q'))
    assert not max_eq(_contraction('p', 'p | ~p'))


def test_no_change_requested():
    b = Scenario(BeliefBase([parse('p & q')]))
    assert _sets(max_eq(b)) == [{p, q}]


def test_extension_rep():
    b = _revision('p & q', '~q')
    assert equivalent(extension_rep(b, EqSet({p}, {p, q})), parse('p & ~q'))
    with pytest.raises(ValueError):
        extension_rep(b, EqSet({p, q}, {p, q}))

    b = _contraction('p & q', 'q')
    assert equivalent(extension_rep(b, EqSet({p}, {p, q})), p)

    b = _contraction('p & q & r', 'p | q')
    assert equivalent(extension_rep(b, EqSet({r}, {p, q, r})), r)


def test_flip_representation_example():
    # extensions of K = {p & q} revised by ~p | ~q
    b = _revision('p & q', '~p | ~q')
    eq1, eq2 = max_eq(b)
    assert flip_rep(b, eq1) == parse('(p & ~q) & (~p | ~q)')
    assert flip_rep(b, eq2) == parse('(~p & q) & (~p | ~q)')
    for eq in (eq1, eq2):
        assert equivalent(flip_rep(b, eq), extension_rep(b, eq))


def test_print_ascii():
    b = _revision('p & q', '~p | ~q')
    out = io.StringIO()
    max_eq(b).print_ascii(out)
    text = out.getvalue()
    assert 'EQ = {p}' in text and 'EQ = {q}' in text


def test_primed_u_rejected():
    with pytest.raises(PrimedAtomError):
        Scenario(BeliefBase([parse('p')]), [parse("p'", allow_primed=True)])


def test_restricted_matches_brute_force_exhaustive():
    _check_grid(ExhaustiveGrid(2))


def test_restricted_matches_brute_force_random():
    _check_grid(RandomGrid(3, samples=1000, seed=1))


def test_flip_and_enumeration_forms_exhaustive():
    _check_forms(ExhaustiveGrid(2))


def test_flip_and_enumeration_forms_random():
    _check_forms(RandomGrid(3, samples=1000, seed=2))


##########

def _sets(family):
    return [set(eq) for eq in family]


def _family(k, alpha, contraction=False):
    b = _contraction(k, alpha) if contraction else _revision(k, alpha)
    family = max_eq(b)
    assert family == naive_max_eq(b)
    return _sets(family)


def _check_forms(grid):
    for k, a in grid.instances(2):
        K, alpha = grid.formula(k), grid.formula(a)
        rev = Scenario(BeliefBase([K]), [alpha])
        for eq in max_eq(rev):
            assert equivalent(flip_rep(rev, eq), extension_rep(rev, eq))
        con = Scenario(BeliefBase([K]), [], [Not(alpha)])
        for eq in max_eq(con):
            assert equivalent(enumeration_rep(con, eq), extension_rep(con, eq))


def _check_grid(grid):
    for k, a in grid.instances(2):
        K, alpha = grid.formula(k), grid.formula(a)
        for b in (Scenario(BeliefBase([K]), [alpha]),
                  Scenario(BeliefBase([K]), [], [Not(alpha)])):
            for mode in (INCLUSION, CARDINALITY):
                family = max_eq(b, mode)
                naive = naive_max_eq(b, mode)
                assert family == naive, (b, mode)
                if mode == CARDINALITY:
                    assert len(set(len(eq) for eq in family)) <= 1
                    assert all(eq in max_eq(b) for eq in family)
                for eq in naive:
                    assert forced(b) <= eq.included
