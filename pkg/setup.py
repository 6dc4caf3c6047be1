"""Build the optional compiled kernels; the package falls back to pure Python without them."""

import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # no Cython: ship the pure-Python kernels only
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("QMSEG_NO_EXT"):
    ext_modules = cythonize(
        [
            Extension(
                "qmseg._speedups",
                ["src/qmseg/_speedups.pyx"],
                # keep float results bit-identical to the numpy fallback
                extra_compile_args=["-O2", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": 3, "embedsignature": True},
    )

setup(ext_modules=ext_modules)
