"""Build script: compiles the optional closure kernel extension.

The package is fully functional without the extension; a pure-Python
fallback is selected at import time when the compiled module is missing.
"""
import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/bwstab/kernels/_closure.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"warning: building without compiled kernels ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
