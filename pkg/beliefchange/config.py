import os
import logging

from configobj import ConfigObj

on_rtd = os.environ.get('READTHEDOCS') == 'True'

BELIEFCHANGE = os.getenv('BELIEFCHANGE',
                         os.path.expanduser(os.path.join('~','.beliefchange')))

CONFIG_FILE = os.path.join(BELIEFCHANGE, 'config.ini')

DEFAULTS = {'enumeration_limit': 24,
            'naive_limit': 16,
            'backend': 'auto',
            'pysat_solver': 'g3',
            'grid_samples': 1000,
            'grid_seed': 0}

CONFIG = dict(DEFAULTS)


def load_config(filename=None):
    """(Re)loads settings from a configobj ini file.

    Missing keys fall back to ``DEFAULTS``; values are cast to the type
    of the default.  With no ``filename``, ``$BELIEFCHANGE/config.ini``
    is read if it exists.
    """
    if filename is None:
        filename = CONFIG_FILE
        if not os.path.exists(filename):
            CONFIG.clear()
            CONFIG.update(DEFAULTS)
            return CONFIG
    elif not os.path.exists(filename):
        raise ValueError('Config file {} does not exist.'.format(filename))

    c = ConfigObj(filename)
    settings = dict(DEFAULTS)
    for k, v in c.items():
        if k not in DEFAULTS:
            logging.warning('Unknown setting {} in {}; ignored.'.format(k, filename))
            continue
        try:
            settings[k] = type(DEFAULTS[k])(v)
        except (TypeError, ValueError):
            raise ValueError('Bad value for {} in {}: {}'.format(k, filename, v))

    logging.debug('Settings loaded from {}: {}'.format(filename, settings))
    CONFIG.clear()
    CONFIG.update(settings)
    return CONFIG


def get_setting(name):
    return CONFIG[name]


load_config()
