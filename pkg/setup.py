"""Build script: compiles the optional Cython core.

The package is fully functional without the extension (a pure-Python
fallback is selected at import time), so any failure here downgrades to
a source-only build instead of aborting the install.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [
            Extension(
                "bnhecke._core",
                ["src/bnhecke/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
