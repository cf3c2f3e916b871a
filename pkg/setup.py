"""Build hook for the optional compiled kernels.

If Cython or a C compiler is missing the package still installs and
``linlog.kernels`` falls back to the pure-Python implementations.
"""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("linlog._speedups", ["src/linlog/_speedups.pyx"], optional=True)],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        quiet=True,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
