import hypothesis.strategies as st

from beliefchange.formula import Atom, Not, And, Or, Implies, Iff, TOP, BOTTOM

ATOMS = [Atom('p'), Atom('q'), Atom('r')]


def formulas(atoms=ATOMS, max_leaves=8, constants=True):
    leaves = st.sampled_from(list(atoms))
    if constants:
        leaves = st.one_of(leaves, st.sampled_from([TOP, BOTTOM]))

    def extend(children):
        return st.one_of(children.map(Not),
                         st.lists(children, min_size=2, max_size=3).map(lambda cs: And(*cs)),
                         st.lists(children, min_size=2, max_size=3).map(lambda cs: Or(*cs)),
                         st.tuples(children, children).map(lambda t: Implies(*t)),
                         st.tuples(children, children).map(lambda t: Iff(*t)))

    return st.recursive(leaves, extend, max_leaves=max_leaves)
