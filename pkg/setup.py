"""Builds the optional compiled kernel.

The package works without it (a pure-Python twin is selected at import
time); `python setup.py build_ext --inplace` or a normal pip install
compiles the Cython extension when cython + a C toolchain are present.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/revlab/_kernels_cy.pyx"],
        compiler_directives={"language_level": "3", "boundscheck": False},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
