# Configuration file for the Sphinx documentation builder.

import os
import sys
sys.path.insert(0, os.path.abspath('..'))

from recommonmark.transform import AutoStructify

project = u'LocalEps'
copyright = u'2026, The localEps developers'
author = u'The localEps developers'
release = u'0.1.0'

extensions = [
    'recommonmark',
    'sphinx.ext.autosummary',
    'sphinx.ext.napoleon',
    'sphinx.ext.viewcode',
    'sphinx_rtd_theme',
    'sphinx.ext.autodoc',
]

autodoc_default_options = {
    'member-order': 'bysource',
    'undoc-members': True,
}

autosummary_generate = True
source_suffix = ['.rst', '.md']
master_doc = 'index'
exclude_patterns = [u'_build']
html_theme = 'sphinx_rtd_theme'
htmlhelp_basename = 'LocalEpsdoc'

man_pages = [
    (master_doc, 'localeps', u'LocalEps Documentation', [author], 1)
]


def setup(app):
    app.add_config_value('recommonmark_config', {
        'auto_toc_tree_section': 'Contents'}, True)
    app.add_transform(AutoStructify)
