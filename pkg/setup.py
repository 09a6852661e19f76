import os

from setuptools import setup

ext_modules = []
if os.environ.get("BFSYZ_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "bfsyz.exactalg._speedups",
                    sources=["src/bfsyz/exactalg/_speedups.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # no Cython available: install pure-Python, the fallback kernel is used
        ext_modules = []

setup(ext_modules=ext_modules)
