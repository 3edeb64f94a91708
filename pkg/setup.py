"""Builds the optional compiled kernel extension.

The package works without it: degres._backend falls back to the pure-Python
kernels when the compiled module is missing or fails to build.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "degres._kernels",
                ["src/degres/_kernels.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    extensions = []

setup(ext_modules=extensions)
