# Sphinx configuration for the pynct documentation.
#
# Build with ``sphinx-build -b html docs_source/source docs`` from the repository root.

import os
import sys

import sphinx

sys.path.insert(0, os.path.abspath("../.."))


def monkeypatch(cls):
    """Replace a method on ``cls``, passing the original as the first argument."""
    def decorator(f):
        method = f.__name__
        old_method = getattr(cls, method)
        setattr(cls, method, lambda self, *args, **kwargs: f(old_method, self, *args, **kwargs))
    return decorator


# m2r still calls add_source_parser with the old (suffix, parser) signature.
@monkeypatch(sphinx.registry.SphinxComponentRegistry)
def add_source_parser(_old_add_source_parser, self, *args, **kwargs):
    if isinstance(args[0], str):
        args = args[1:]
    return _old_add_source_parser(self, *args, **kwargs)


project = "pynct"
copyright = "2026, pynct developers"
author = "pynct developers"
version = "0.1"
release = "0.1.0"

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
    "sphinx.ext.githubpages",
    "sphinx.ext.napoleon",
    "m2r",
]

# numpy docstrings only; Google style is not used anywhere in the package.
napoleon_google_docstring = False
autodoc_member_order = "bysource"

source_suffix = ".rst"
master_doc = "index"
exclude_patterns = ["tests/"]

html_theme = "nature"
html_static_path = []
htmlhelp_basename = "pynctdoc"
