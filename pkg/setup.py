"""Build script: compiles the optional fast search kernels.

The package is fully functional without the extension (a pure-Python
backend is selected at import time), so a failed compile only costs speed.
"""
import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("pgcodes.kernels._speed", ["src/pgcodes/kernels/_speed.pyx"])],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except Exception as exc:  # pragma: no cover - build-host specific
    sys.stderr.write(f"pgcodes: skipping compiled kernels ({exc}); pure backend will be used\n")

setup(ext_modules=ext_modules)
