"""Build the optional Cython extension; the package still works without it."""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("GROWSCHED_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:  # pragma: no cover - Cython missing
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "growsched._speedups",
                    ["src/growsched/_speedups.pyx"],
                    language="c++",
                )
            ],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )

setup(ext_modules=ext_modules)
