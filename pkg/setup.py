import os

from setuptools import setup

ext_modules = []
if not os.environ.get("BAYESROC_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/bayesroc/_mc.pyx"],
            language_level="3",
        )
    except ImportError:
        # No Cython available: install with the pure-Python simulation backend.
        ext_modules = []

setup(ext_modules=ext_modules)
