# -*- coding: utf-8 -*-
#
# beliefchange documentation build configuration file.

import sys
import os, os.path

sys.path.insert(0, os.path.abspath('..'))

os.environ.setdefault('READTHEDOCS', 'True')
import beliefchange

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.viewcode',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'beliefchange'
copyright = u'2026, beliefchange developers'

version = beliefchange.__version__
release = beliefchange.__version__

exclude_patterns = ['_build']
add_function_parentheses = True
pygments_style = 'sphinx'

html_theme = 'scrolls'
html_static_path = ['_static']
htmlhelp_basename = 'beliefchangedoc'

latex_documents = [
  ('index', 'beliefchange.tex', u'beliefchange Documentation',
   u'beliefchange developers', 'manual'),
]

man_pages = [
    ('index', 'beliefchange', u'beliefchange Documentation',
     [u'beliefchange developers'], 1)
]
