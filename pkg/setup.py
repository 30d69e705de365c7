"""Build script: compiles the optional C extension for the hot kernels.

The package works without the extension (a numpy/pure-Python fallback is
selected at import time), so a failed compile degrades to a warning.
"""
import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/campana/_kernels.pyx"],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except Exception as exc:  # pragma: no cover
    print(f"campana: skipping C extension build ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
