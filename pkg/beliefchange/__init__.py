__version__ = '0.1.0dev'

try:
    __BELIEFCHANGE_SETUP__
except NameError:
    __BELIEFCHANGE_SETUP__ = False

if not __BELIEFCHANGE_SETUP__:
    __all__ = ['parse', 'BeliefBase', 'Scenario', 'max_eq', 'ChangeOptions',
               'IntegrityConstraints', 'revise', 'contract', 'revise_ic',
               'query', 'expand', 'update', 'get_backend']
    from .formula import parse, BeliefBase
    from .scenario import Scenario, max_eq
    from .change import (ChangeOptions, IntegrityConstraints, revise, contract,
                         revise_ic, query, expand)
    from .update import update
    from .solvers import get_backend
