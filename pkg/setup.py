"""Build script.

The compiled kernel extension is optional: if Cython or a C compiler is
unavailable the package installs pure-Python and selects the numpy fallback
kernels at import time.
"""

import warnings

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "ttforms._kernels._core",
                sources=["src/ttforms/_kernels/_core.pyx"],
                # -fcx-limited-range: inline complex multiply/divide instead
                # of the checked __muldc3/__divdc3 library calls
                extra_compile_args=["-O3", "-fcx-limited-range", "-fno-math-errno"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except Exception as exc:  # pragma: no cover - depends on build host
    warnings.warn(f"compiled kernels skipped ({exc}); numpy fallback will be used")

setup(ext_modules=ext_modules)
