"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a pure NumPy fallback is selected
at import time), so a missing compiler or Cython installation must not fail
the install.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "trendindex.kernels._ckernels",
                ["src/trendindex/kernels/_ckernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
    for ext in extensions:
        ext.optional = True
except ImportError:
    extensions = []

setup(ext_modules=extensions)
