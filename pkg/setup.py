"""Build script: compiles the optional bitmask kernel extension.

The package works without the extension (a pure-Python fallback is selected
at import time), so a failed or skipped compile is not fatal.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "symbiont._ckernels",
                ["src/symbiont/_ckernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
