import os

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from beliefchange.formula import (Atom, Not, And, Or, Implies, Iff, TOP, BOTTOM,
                                  parse, render, vocab, size, models, from_models,
                                  fold_constants, conjoin, disjoin, read_formulas,
                                  satisfiable, entails, equivalent, Interpretation,
                                  BeliefBase, INCONSISTENT, FormulaSyntaxError,
                                  PrimedAtomError, EnumerationLimitError)
from beliefchange.tests.strategies import formulas, ATOMS

FOLDER = os.path.abspath(os.path.dirname(__file__))

p, q, r = ATOMS


def test_parse_precedence():
    assert parse('~p & q | r') == Or(And(Not(p), q), r)
    assert parse('p | q & r') == Or(p, And(q, r))
    assert parse('p -> q -> r') == Implies(p, Implies(q, r))
    assert parse('p <-> q <-> r') == Iff(Iff(p, q), r)
    assert parse('p -> q <-> r') == Iff(Implies(p, q), r)
    assert parse('p & q & r') == And(p, q, r)
    assert parse('(p & q) & r') == And(And(p, q), r)
    assert parse('~~p') == Not(Not(p))
    assert parse('true | false') == Or(TOP, BOTTOM)


def test_primed_atoms():
    with pytest.raises(PrimedAtomError):
        parse("p' -> p")
    f = parse("p' -> p", allow_primed=True)
    assert f == Implies(Atom('p', True), p)
    assert render(f) == "p' -> p"
    assert Atom('p', True) in vocab(f)


def test_syntax_errors():
    with pytest.raises(FormulaSyntaxError) as e:
        parse('p & & q')
    assert (e.value.line, e.value.column) == (1, 5)

    with pytest.raises(FormulaSyntaxError) as e:
        parse('p &')
    assert e.value.at_end
    assert 'end of input' in str(e.value)

    with pytest.raises(FormulaSyntaxError) as e:
        parse('(p | q')
    assert e.value.at_end

    with pytest.raises(FormulaSyntaxError) as e:
        parse('p $ q')
    assert e.value.column == 3

    with pytest.raises(FormulaSyntaxError):
        parse('')


def test_atoms_interned():
    assert Atom('p') is Atom('p')
    assert Atom('p') is not Atom('p', True)
    assert sorted([Atom('q'), Atom('p', True), Atom('p')]) == [p, Atom('p', True), q]
    with pytest.raises(ValueError):
        Atom('true')


@given(formulas())
def test_render_roundtrip(f):
    assert parse(render(f)) == f


def test_size():
    assert size(parse('p & q')) == 3
    assert size(parse('~p & ~q')) == 3
    assert size(parse('p & q & r')) == 5
    assert size(parse('p <-> ~q')) == 3
    assert size(TOP) == 1


def test_models_order():
    ms = models([parse('p | q')], [p, q])
    assert ms == [Interpretation([p, q], [q]),
                  Interpretation([p, q], [p]),
                  Interpretation([p, q], [p, q])]
    assert models([BOTTOM], [p]) == []
    assert models([], []) == [Interpretation([], [])]
    with pytest.raises(ValueError):
        models([parse('p & r')], [p])


def test_enumeration_limit():
    many = conjoin([Atom('a{}'.format(i)) for i in range(6)])
    with pytest.raises(EnumerationLimitError):
        models([many], vocab(many), limit=5)


@settings(max_examples=50)
@given(formulas())
def test_from_models(f):
    ms = models([f], ATOMS)
    g = from_models(ms, ATOMS)
    assert models([g], ATOMS) == ms
    assert equivalent(f, g)


@given(formulas())
def test_fold_constants(f):
    g = fold_constants(f)
    assert equivalent(f, g)
    assert g in (TOP, BOTTOM) or not ({TOP, BOTTOM} & set(_subformulas(g)))


def test_conjoin_disjoin_units():
    assert conjoin([]) == TOP
    assert disjoin([]) == BOTTOM
    assert conjoin([p]) == p
    assert disjoin([p, q]) == Or(p, q)


def test_entailment():
    assert satisfiable([parse('p | q'), parse('~p')])
    assert not satisfiable([parse('p & ~p')])
    assert entails([parse('p & q')], p)
    assert not entails([parse('p | q')], p)
    assert equivalent(parse('p -> q'), parse('~p | q'))
    assert entails([BOTTOM], p)


def test_belief_base():
    k = BeliefBase([parse('p'), parse('q'), parse('p')])
    assert len(k) == 2
    assert k == BeliefBase([parse('p & q')])
    assert k != BeliefBase([p])
    assert k.entails(q)
    assert not INCONSISTENT.is_consistent()
    assert BeliefBase().formula == TOP
    with pytest.raises(PrimedAtomError):
        BeliefBase([Atom('p', True)])


def test_read_formulas():
    k = BeliefBase.from_file(os.path.join(FOLDER, 'kb1', 'kb.txt'))
    assert k.formulas == (parse('p & q'),)

    fs = read_formulas(os.path.join(FOLDER, 'kb2', 'kb.txt'))
    assert fs == [p, parse('q | r')]

    dyn = read_formulas(os.path.join(FOLDER, 'kb3', 'dynamic.txt'), allow_primed=True)
    assert dyn == [Implies(Atom('p', True), p)]

    with pytest.raises(FormulaSyntaxError) as e:
        read_formulas(os.path.join(FOLDER, 'kb3', 'bad.txt'))
    assert e.value.line == 2


@given(formulas(), st.lists(st.booleans(), min_size=3, max_size=3))
def test_evaluate_matches_interpretation(f, values):
    m = Interpretation(ATOMS, [a for a, v in zip(ATOMS, values) if v])
    assert m.satisfies(f) == (m in models([f], ATOMS))


##########

def _subformulas(f):
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(g.children)
