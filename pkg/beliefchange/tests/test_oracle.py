import pytest

from beliefchange.formula import (BeliefBase, parse, EnumerationLimitError)
from beliefchange.change import (revise, revision_scenario, ChangeOptions)
from beliefchange.scenario import Scenario, max_eq, CARDINALITY
from beliefchange.oracle import (delta_min, satoh_revise, dalal_revise,
                                 winslett_update, forbus_update, naive_max_eq,
                                 OracleDomainError, DiffSet)
from beliefchange.laws import ExhaustiveGrid, RandomGrid
from beliefchange.tests.strategies import ATOMS

p, q, r = ATOMS


def test_delta_min():
    diffs = delta_min(parse('~p | ~q'), _kb('p & q'))
    assert set(diffs) == {DiffSet([p]), DiffSet([q])}
    assert delta_min(parse('p'), _kb('p & q')) == [DiffSet()]
    assert delta_min(p, _kb('~p')) == [DiffSet([p])]
    assert satoh_revise(_kb('~p'), p) == _kb('p')
    assert repr(DiffSet([q, p])) == '{p, q}'


def test_satoh():
    assert satoh_revise(_kb('p & q'), parse('~p | ~q')) == _kb('p <-> ~q')
    assert satoh_revise(_kb('p & q & r'), parse('(~p & ~q) | ~r')) == \
        _kb('(p & q & ~r) | (~p & ~q & r)')


def test_dalal():
    assert dalal_revise(_kb('p & q & r'), parse('~p | ~q')) == _kb('(p <-> ~q) & r')
    assert dalal_revise(_kb('p & q'), parse('~p & ~q')) == _kb('~p & ~q')
    assert dalal_revise(_kb('p & q & r'), parse('(~p & ~q) | ~r')) == _kb('p & q & ~r')


def test_winslett_forbus():
    k, alpha = _kb('p & q & r'), parse('(~p & ~q) | ~r')
    assert winslett_update(k, alpha) == _kb('(p & q & ~r) | (~p & ~q & r)')
    assert forbus_update(k, alpha) == _kb('p & q & ~r')
    assert winslett_update(_kb('p | q'), parse('~p')) == _kb('~p')


def test_domain():
    with pytest.raises(OracleDomainError):
        satoh_revise(_kb('p & ~p'), q)
    with pytest.raises(OracleDomainError):
        dalal_revise(_kb('p'), parse('q & ~q'))


def test_naive_max_eq():
    b = revision_scenario(_kb('p & q'), parse('~p | ~q'))
    assert [set(eq) for eq in naive_max_eq(b)] == [{p}, {q}]
    b = Scenario(_kb('p & q'))
    assert [set(eq) for eq in naive_max_eq(b)] == [{p, q}]


def test_naive_limit():
    b = revision_scenario(_kb('p & q'), parse('~q'))
    with pytest.raises(EnumerationLimitError):
        naive_max_eq(b, limit=1)


def test_complements_are_minimal_differences_exhaustive():
    _check_grid(ExhaustiveGrid(2))


def test_complements_are_minimal_differences_random():
    _check_grid(RandomGrid(3, samples=1000, seed=0))


def test_revise_matches_model_based_exhaustive():
    _check_model_based(ExhaustiveGrid(2))


def test_revise_matches_model_based_random():
    _check_model_based(RandomGrid(3, samples=1000, seed=3))


##########

def _kb(text):
    return BeliefBase([parse(text)])


def _check_model_based(grid):
    for k, a in grid.instances(2):
        if not k or not a:
            continue
        K, alpha = BeliefBase([grid.formula(k)]), grid.formula(a)
        assert revise(K, alpha) == satoh_revise(K, alpha), (K, alpha)
        assert revise(K, alpha, ChangeOptions(mode=CARDINALITY)) == dalal_revise(K, alpha)


def _check_grid(grid):
    for k, a in grid.instances(2):
        if not k or not a:
            continue
        K, alpha = BeliefBase([grid.formula(k)]), grid.formula(a)
        family = max_eq(revision_scenario(K, alpha))
        expected = set(frozenset(d) for d in delta_min(alpha, K))
        assert set(family.complements()) == expected, (K, alpha)
