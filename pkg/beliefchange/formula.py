from __future__ import print_function, division

import re
import logging
from collections import namedtuple
from functools import reduce

from .config import on_rtd, get_setting

if not on_rtd:
    import numpy as np


_NAME = re.compile(r'[A-Za-z_][A-Za-z0-9_]*$')
KEYWORDS = ('true', 'false')


class FormulaSyntaxError(ValueError):
    """Malformed formula text.

    ``line`` and ``column`` are 1-based and point at the offending token,
    or just past the last character when ``at_end`` is set.
    """
    def __init__(self, message, line=1, column=1, at_end=False):
        self.line = line
        self.column = column
        self.at_end = at_end
        self.reason = message
        if at_end:
            full = '{} at end of input'.format(message)
        else:
            full = '{} at line {}, column {}'.format(message, line, column)
        super(FormulaSyntaxError, self).__init__(full)


class PrimedAtomError(ValueError):
    pass


class EnumerationLimitError(ValueError):
    pass


def check_limit(n, limit=None, what='atoms'):
    if limit is None:
        limit = get_setting('enumeration_limit')
    if n > limit:
        raise EnumerationLimitError('{} {} exceeds the enumeration limit ({}).'.format(n, what, limit))


class Formula(object):
    """Base class for propositional formulas.

    Formulas are immutable trees; equality and hashing are structural.
    ``&``, ``|`` and ``~`` build conjunctions, disjunctions and negations.
    """
    __slots__ = ('_hash',)
    precedence = 6

    @property
    def children(self):
        return ()

    def rebuild(self, children):
        return self

    def _key(self):
        return self.children

    def evaluate(self, env):
        raise NotImplementedError

    def __eq__(self, other):
        if not isinstance(other, Formula):
            return NotImplemented
        return type(self) is type(other) and self._key() == other._key()

    def __ne__(self, other):
        eq = self.__eq__(other)
        if eq is NotImplemented:
            return eq
        return not eq

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            self._hash = hash((type(self).__name__, self._key()))
            return self._hash

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)

    def implies(self, other):
        return Implies(self, other)

    def iff(self, other):
        return Iff(self, other)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return '{}({!r})'.format(type(self).__name__, render(self))


class Top(Formula):
    __slots__ = ()

    def evaluate(self, env):
        return True


class Bottom(Formula):
    __slots__ = ()

    def evaluate(self, env):
        return False


TOP = Top()
BOTTOM = Bottom()


class Atom(Formula):
    """A propositional letter, optionally primed (member of the shadow alphabet).

    Atoms are interned: ``Atom('p') is Atom('p')``.  They sort by
    ``(name, primed)``.
    """
    __slots__ = ('name', 'primed')
    _interned = {}

    def __new__(cls, name, primed=False):
        key = (name, bool(primed))
        try:
            return cls._interned[key]
        except KeyError:
            pass
        if not isinstance(name, str) or not _NAME.match(name) or name in KEYWORDS:
            raise ValueError('Invalid atom name: {!r}'.format(name))
        self = object.__new__(cls)
        self.name = name
        self.primed = bool(primed)
        return cls._interned.setdefault(key, self)

    def __getnewargs__(self):
        return (self.name, self.primed)

    def _key(self):
        return (self.name, self.primed)

    @property
    def sort_key(self):
        return (self.name, self.primed)

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __le__(self, other):
        return self.sort_key <= other.sort_key

    def __gt__(self, other):
        return self.sort_key > other.sort_key

    def __ge__(self, other):
        return self.sort_key >= other.sort_key

    def evaluate(self, env):
        return env[self]


class Not(Formula):
    __slots__ = ('arg',)
    precedence = 5

    def __init__(self, arg):
        self.arg = arg

    @property
    def children(self):
        return (self.arg,)

    def rebuild(self, children):
        return Not(children[0])

    def evaluate(self, env):
        return np.logical_not(self.arg.evaluate(env))


class _NAry(Formula):
    __slots__ = ('args',)
    _ufunc = None

    def __init__(self, *args):
        if len(args) < 2:
            raise ValueError('{} needs at least two operands.'.format(type(self).__name__))
        self.args = tuple(args)

    @property
    def children(self):
        return self.args

    def rebuild(self, children):
        return type(self)(*children)

    def evaluate(self, env):
        return reduce(self._ufunc, [a.evaluate(env) for a in self.args])


class And(_NAry):
    __slots__ = ()
    precedence = 4
    _ufunc = np.logical_and if not on_rtd else None


class Or(_NAry):
    __slots__ = ()
    precedence = 3
    _ufunc = np.logical_or if not on_rtd else None


class _Binary(Formula):
    __slots__ = ('left', 'right')

    def __init__(self, left, right):
        self.left = left
        self.right = right

    @property
    def children(self):
        return (self.left, self.right)

    def rebuild(self, children):
        return type(self)(*children)


class Implies(_Binary):
    __slots__ = ()
    precedence = 2

    def evaluate(self, env):
        return np.logical_or(np.logical_not(self.left.evaluate(env)),
                             self.right.evaluate(env))


class Iff(_Binary):
    __slots__ = ()
    precedence = 1

    def evaluate(self, env):
        return np.equal(self.left.evaluate(env), self.right.evaluate(env))


def conjoin(formulas):
    formulas = list(formulas)
    if len(formulas) == 0:
        return TOP
    elif len(formulas) == 1:
        return formulas[0]
    return And(*formulas)


def disjoin(formulas):
    formulas = list(formulas)
    if len(formulas) == 0:
        return BOTTOM
    elif len(formulas) == 1:
        return formulas[0]
    return Or(*formulas)


def walk(f):
    """Iterates over all subformulas of f (pre-order)."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


def _as_list(fs):
    if isinstance(fs, Formula):
        return [fs]
    elif isinstance(fs, BeliefBase):
        return list(fs.formulas)
    return list(fs)


def vocab(fs):
    """Returns the frozenset of atoms occurring in a formula or collection of formulas.
    """
    atoms = set()
    for f in _as_list(fs):
        for node in walk(f):
            if isinstance(node, Atom):
                atoms.add(node)
    return frozenset(atoms)


def has_primed(fs):
    return any(a.primed for a in vocab(fs))


def substitute(f, fn):
    """Replaces every atom a of f by fn(a); constants are kept.
    """
    if isinstance(f, Atom):
        return fn(f)
    elif isinstance(f, (Top, Bottom)):
        return f
    return f.rebuild([substitute(c, fn) for c in f.children])


def size(f):
    """Length of f: atoms, constants and binary connectives (negation is free).
    """
    n = 0
    for node in walk(f):
        if isinstance(node, (Atom, Top, Bottom)):
            n += 1
        elif isinstance(node, _NAry):
            n += len(node.args) - 1
        elif isinstance(node, _Binary):
            n += 1
    return n


def fold_constants(f):
    """Simplifies away occurrences of ``true``/``false``; nothing else is rewritten.
    """
    if isinstance(f, (Atom, Top, Bottom)):
        return f
    children = [fold_constants(c) for c in f.children]

    if isinstance(f, Not):
        c = children[0]
        if c == TOP:
            return BOTTOM
        elif c == BOTTOM:
            return TOP
        return Not(c)

    if isinstance(f, And):
        if BOTTOM in children:
            return BOTTOM
        return conjoin([c for c in children if c != TOP])

    if isinstance(f, Or):
        if TOP in children:
            return TOP
        return disjoin([c for c in children if c != BOTTOM])

    left, right = children
    if isinstance(f, Implies):
        if left == BOTTOM or right == TOP:
            return TOP
        elif left == TOP:
            return right
        elif right == BOTTOM:
            return fold_constants(Not(left))
        return Implies(left, right)

    # Iff
    for a, b in ((left, right), (right, left)):
        if a == TOP:
            return b
        elif a == BOTTOM:
            return fold_constants(Not(b))
    return Iff(left, right)


##### rendering & parsing

def _wrap(f, paren):
    s = render(f)
    return '({})'.format(s) if paren else s


def render(f):
    """Renders f in the concrete grammar; ``parse(render(f)) == f``.
    """
    if isinstance(f, Atom):
        return f.name + ("'" if f.primed else '')
    elif isinstance(f, Top):
        return 'true'
    elif isinstance(f, Bottom):
        return 'false'
    elif isinstance(f, Not):
        return '~' + _wrap(f.arg, f.arg.precedence < Not.precedence)
    elif isinstance(f, _NAry):
        sep = ' & ' if isinstance(f, And) else ' | '
        return sep.join(_wrap(a, a.precedence <= f.precedence) for a in f.args)
    elif isinstance(f, Implies):
        return '{} -> {}'.format(_wrap(f.left, f.left.precedence <= Implies.precedence),
                                 _wrap(f.right, f.right.precedence < Implies.precedence))
    elif isinstance(f, Iff):
        return '{} <-> {}'.format(_wrap(f.left, f.left.precedence < Iff.precedence),
                                  _wrap(f.right, f.right.precedence <= Iff.precedence))
    raise TypeError('Not a formula: {!r}'.format(f))


_Token = namedtuple('_Token', ['kind', 'value', 'line', 'column'])

_TOKEN = re.compile(r"(?P<op><->|->|[~&|()])|(?P<name>[A-Za-z_][A-Za-z0-9_]*)(?P<prime>')?")
_SPACE = re.compile(r'\s*')


def _position(text, pos):
    line = text.count('\n', 0, pos) + 1
    column = pos - (text.rfind('\n', 0, pos) + 1) + 1
    return line, column


def _tokenize(text):
    pos = _SPACE.match(text, 0).end()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        line, column = _position(text, pos)
        if m is None:
            raise FormulaSyntaxError('Unexpected character {!r}'.format(text[pos]),
                                     line, column)
        if m.group('op'):
            yield _Token('op', m.group('op'), line, column)
        else:
            name = m.group('name')
            if m.group('prime'):
                yield _Token('primed', name, line, column)
            else:
                yield _Token('name', name, line, column)
        pos = _SPACE.match(text, m.end()).end()


class _Parser(object):
    """Recursive descent over the grammar

        iff   := imp ('<->' imp)*
        imp   := or ('->' imp)?
        or    := and ('|' and)*
        and   := unary ('&' unary)*
        unary := '~' unary | '(' iff ')' | 'true' | 'false' | NAME | NAME "'"
    """
    def __init__(self, text, allow_primed=False):
        self.text = text
        self.tokens = list(_tokenize(text))
        self.i = 0
        self.allow_primed = allow_primed

    def peek(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i]

    def advance(self):
        tok = self.peek()
        self.i += 1
        return tok

    def at(self, value):
        tok = self.peek()
        return tok is not None and tok.kind == 'op' and tok.value == value

    def error(self, message, tok=None):
        if tok is None:
            line, column = _position(self.text, len(self.text))
            return FormulaSyntaxError(message, line, column, at_end=True)
        return FormulaSyntaxError(message, tok.line, tok.column)

    def parse(self):
        if not self.tokens:
            raise self.error('Empty formula')
        f = self.iff()
        tok = self.peek()
        if tok is not None:
            raise self.error('Unexpected {!r}'.format(tok.value), tok)
        return f

    def iff(self):
        left = self.imp()
        while self.at('<->'):
            self.advance()
            left = Iff(left, self.imp())
        return left

    def imp(self):
        left = self.disj()
        if self.at('->'):
            self.advance()
            return Implies(left, self.imp())
        return left

    def disj(self):
        items = [self.conj()]
        while self.at('|'):
            self.advance()
            items.append(self.conj())
        return disjoin(items)

    def conj(self):
        items = [self.unary()]
        while self.at('&'):
            self.advance()
            items.append(self.unary())
        return conjoin(items)

    def unary(self):
        tok = self.advance()
        if tok is None:
            raise self.error('Expected a formula')
        if tok.kind == 'op':
            if tok.value == '~':
                return Not(self.unary())
            elif tok.value == '(':
                f = self.iff()
                close = self.advance()
                if close is None:
                    raise self.error("Expected ')'")
                if close.kind != 'op' or close.value != ')':
                    raise self.error("Expected ')' but found {!r}".format(close.value), close)
                return f
            raise self.error('Unexpected {!r}'.format(tok.value), tok)

        if tok.value in KEYWORDS:
            if tok.kind == 'primed':
                raise self.error("Constant {!r} cannot be primed".format(tok.value), tok)
            return TOP if tok.value == 'true' else BOTTOM
        if tok.kind == 'primed':
            if not self.allow_primed:
                raise PrimedAtomError("Primed atom {}' not allowed here (line {}, column {})"
                                      .format(tok.value, tok.line, tok.column))
            return Atom(tok.value, True)
        return Atom(tok.value)


def parse(text, allow_primed=False):
    """Parses text in the concrete grammar.

    Connectives, loosest first: ``<->`` (left-assoc), ``->`` (right-assoc),
    ``|``, ``&``, ``~``.  Constants are ``true`` and ``false``.  Primed atoms
    (``p'``) are only accepted with ``allow_primed=True``.

    :raises FormulaSyntaxError: on malformed input.
    :raises PrimedAtomError: on a primed atom when not allowed.
    """
    return _Parser(text, allow_primed=allow_primed).parse()


def read_formulas(filename, allow_primed=False):
    """Reads a knowledge-base file: one formula per line, ``#`` comments.
    """
    formulas = []
    with open(filename, encoding='utf-8') as f:
        for lineno, line in enumerate(f, 1):
            line = line.split('#', 1)[0].rstrip()
            if not line.strip():
                continue
            try:
                formulas.append(parse(line, allow_primed=allow_primed))
            except FormulaSyntaxError as e:
                raise FormulaSyntaxError('{}: {}'.format(filename, e.reason),
                                         lineno, e.column)
    logging.debug('Read {} formulas from {}'.format(len(formulas), filename))
    return formulas


##### semantics

def assignment_table(n, start=0, stop=None):
    """Rows ``start..stop`` of the truth table over n atoms.

    Row i assigns the j-th atom the j-th most significant bit of i, so
    rows come in lexicographic order (false before true).
    """
    if stop is None:
        stop = 2**n
    rows = np.arange(start, stop, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((rows[:, None] >> shifts) & 1).astype(bool)


def evaluate_rows(fs, vocabulary, table):
    """Truth value of the conjunction of fs on every row of table.
    """
    env = {a: table[:, j] for j, a in enumerate(vocabulary)}
    values = [f.evaluate(env) for f in fs]
    ok = reduce(np.logical_and, values, True)
    return np.broadcast_to(ok, (table.shape[0],))


def truth_table(fs, vocabulary, limit=None):
    """Boolean array over all assignments to the (sorted) vocabulary."""
    fs = _as_list(fs)
    vocabulary = sorted(set(vocabulary))
    check_limit(len(vocabulary), limit)
    missing = vocab(fs) - set(vocabulary)
    if missing:
        raise ValueError('Vocabulary does not cover {}'.format(sorted(missing)))
    return evaluate_rows(fs, vocabulary, assignment_table(len(vocabulary)))


class Interpretation(object):
    """Total assignment over a stated vocabulary, identified with its true atoms.
    """
    __slots__ = ('vocabulary', 'true_atoms')

    def __init__(self, vocabulary, true_atoms=()):
        self.vocabulary = tuple(sorted(set(vocabulary)))
        self.true_atoms = frozenset(true_atoms)
        if not self.true_atoms <= set(self.vocabulary):
            raise ValueError('True atoms must belong to the vocabulary.')

    def __getitem__(self, atom):
        if atom not in self.vocabulary:
            raise KeyError(atom)
        return atom in self.true_atoms

    def __eq__(self, other):
        if not isinstance(other, Interpretation):
            return NotImplemented
        return self.vocabulary == other.vocabulary and self.true_atoms == other.true_atoms

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.vocabulary, self.true_atoms))

    def satisfies(self, f):
        return bool(f.evaluate({a: a in self.true_atoms for a in self.vocabulary}))

    def as_formula(self):
        return conjoin([a if a in self.true_atoms else Not(a) for a in self.vocabulary])

    def __repr__(self):
        return '{{{}}}'.format(', '.join(render(a) if a in self.true_atoms
                                         else '~' + render(a) for a in self.vocabulary))


def models(fs, vocabulary, limit=None):
    """All interpretations over vocabulary satisfying every formula of fs.

    Returned in canonical (lexicographic) order.

    :raises EnumerationLimitError: if the vocabulary is too large.
    """
    vocabulary = sorted(set(vocabulary))
    ok = truth_table(fs, vocabulary, limit=limit)
    table = assignment_table(len(vocabulary))[ok]
    return [Interpretation(vocabulary, [a for a, v in zip(vocabulary, row) if v])
            for row in table]


def from_models(interpretations, vocabulary=None):
    """DNF formula whose models over the vocabulary are exactly those given."""
    interpretations = list(interpretations)
    if vocabulary is not None:
        interpretations = [Interpretation(vocabulary, m.true_atoms) for m in interpretations]
    return disjoin([m.as_formula() for m in interpretations])


def satisfiable(fs, backend=None):
    """Whether some interpretation satisfies every formula of fs.

    :param backend:
        A :class:`solvers.SatBackend`, a backend name, or ``None`` for the
        configured default.
    """
    from .solvers import resolve_backend
    return resolve_backend(backend).satisfiable(_as_list(fs))


def entails(sigma, phi, backend=None):
    return not satisfiable(_as_list(sigma) + [Not(phi)], backend=backend)


def equivalent(f, g, backend=None):
    return entails([f], g, backend=backend) and entails([g], f, backend=backend)


class BeliefBase(object):
    """Finite set of unprimed formulas standing for its deductive closure.

    Equality is logical equivalence of the conjunctions, so belief bases
    are not hashable.
    """
    __hash__ = None

    def __init__(self, formulas=()):
        if isinstance(formulas, Formula):
            formulas = [formulas]
        seen = []
        for f in formulas:
            if not isinstance(f, Formula):
                raise TypeError('Not a formula: {!r}'.format(f))
            if f not in seen:
                seen.append(f)
        if has_primed(seen):
            raise PrimedAtomError('Belief bases may not mention primed atoms.')
        self.formulas = tuple(seen)

    @classmethod
    def from_text(cls, text):
        return cls([parse(line) for line in text.splitlines()
                    if line.split('#', 1)[0].strip()])

    @classmethod
    def from_file(cls, filename):
        return cls(read_formulas(filename))

    @property
    def formula(self):
        return conjoin(self.formulas)

    @property
    def vocab(self):
        return vocab(self.formulas)

    def is_consistent(self, backend=None):
        return satisfiable(self.formulas, backend=backend)

    def entails(self, phi, backend=None):
        return entails(self.formulas, phi, backend=backend)

    def equivalent(self, other, backend=None):
        if not isinstance(other, BeliefBase):
            other = BeliefBase(other)
        return equivalent(self.formula, other.formula, backend=backend)

    def __eq__(self, other):
        if not isinstance(other, (BeliefBase, Formula)):
            return NotImplemented
        return self.equivalent(other)

    def __ne__(self, other):
        eq = self.__eq__(other)
        if eq is NotImplemented:
            return eq
        return not eq

    def __iter__(self):
        return iter(self.formulas)

    def __len__(self):
        return len(self.formulas)

    def __str__(self):
        return render(self.formula)

    def __repr__(self):
        return 'BeliefBase([{}])'.format(', '.join(repr(render(f)) for f in self.formulas))


INCONSISTENT = BeliefBase([BOTTOM])
