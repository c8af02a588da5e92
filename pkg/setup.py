"""Best-effort build of the compiled kernel extension.

The package is fully functional without it; `backend` falls back to the
pure-Python kernels when the extension is missing.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("DL_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/dividing_lines/_kernels_c.pyx"],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
